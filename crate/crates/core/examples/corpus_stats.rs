//! Loads an annotated corpus and prints its size and label distribution.
//!
//! ```bash
//! cargo run -p jrnn-keyphrase --example corpus_stats [path/to/corpus.conll]
//! ```

use std::path::PathBuf;

use jrnn_keyphrase::corpus::{corpus_stats, load_corpus, Kp3, LabelScheme};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/banking_train.conll")
        });
    let corpus = load_corpus(&path, LabelScheme::Kp3)?;
    let stats = corpus_stats(&corpus);

    println!("{}", path.display());
    println!("  tweets               {}", stats.tweets);
    println!("  words                {}", stats.words);
    println!("  keyphrases           {}", stats.keyphrases);
    println!("  keyphrases per tweet {:.2}", stats.mean_keyphrases());
    for class in Kp3::ALL {
        println!(
            "  class {}              {}",
            class.symbol(),
            stats.class_counts[class.index()]
        );
    }
    Ok(())
}
