//! Synonym-replacement augmentation: every tweet gets three variants.
//!
//! ```bash
//! cargo run -p jrnn-keyphrase --example augment_corpus
//! ```

use std::path::Path;

use jrnn_keyphrase::augment::{augment_corpus, load_stopwords, load_synsets, AugmentConfig};
use jrnn_keyphrase::corpus::{load_corpus, LabelScheme};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let corpus = load_corpus(fixtures.join("banking_small.conll"), LabelScheme::Kp3)?;
    let synsets = load_synsets(fixtures.join("synsets.txt"))?;
    let stopwords = load_stopwords(fixtures.join("stopwords.txt"))?;

    let config = AugmentConfig {
        n: 3,
        m: 3,
        seed: 42,
    };
    let augmented = augment_corpus(&corpus, &synsets, &stopwords, &config)?;
    println!("{} tweets -> {} tweets", corpus.len(), augmented.len());

    let original = &corpus.tweets()[0];
    let forms = |t: &jrnn_keyphrase::corpus::Tweet| t.forms().collect::<Vec<_>>().join(" ");
    println!("{:<16} {}", original.id, forms(original));
    for variant in augmented
        .tweets()
        .iter()
        .filter(|t| t.id.starts_with(&format!("{}#", original.id)))
    {
        println!("{:<16} {}", variant.id, forms(variant));
    }
    Ok(())
}
