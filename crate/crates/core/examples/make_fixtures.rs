//! Regenerates the synthetic fixture files under `fixtures/`.
//!
//! ```bash
//! cargo run -p jrnn-keyphrase --example make_fixtures
//! ```

use std::fs;
use std::path::Path;

use jrnn_keyphrase::synthetic;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    fs::create_dir_all(&dir)?;

    synthetic::corpus(100, 1).save(dir.join("banking_train.conll"))?;
    synthetic::corpus(40, 2).save(dir.join("banking_test.conll"))?;
    synthetic::corpus(10, 3).save(dir.join("banking_small.conll"))?;
    synthetic::embeddings(20, 42)?.save(dir.join("embeddings.txt"))?;
    fs::write(dir.join("synsets.txt"), synthetic::synsets().to_text())?;

    let mut stop = String::from("# Indonesian function words used by the synthetic corpora\n");
    let mut words: Vec<&str> = synthetic::FUNCTION_WORDS.iter().map(|w| w.0).collect();
    words.sort_unstable();
    for w in words {
        stop.push_str(w);
        stop.push('\n');
    }
    fs::write(dir.join("stopwords.txt"), stop)?;

    println!("fixtures written to {}", dir.display());
    Ok(())
}
