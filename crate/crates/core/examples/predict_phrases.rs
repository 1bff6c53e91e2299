//! Tags raw tweets with a freshly trained model and prints the keyphrases.
//!
//! ```bash
//! cargo run --release -p jrnn-keyphrase --example predict_phrases
//! ```

use std::path::Path;

use jrnn_keyphrase::corpus::{decode_phrases, load_corpus, Label, LabelScheme, Token, Tweet};
use jrnn_keyphrase::features::{load_embeddings, FeatureConfig};
use jrnn_keyphrase::network::{train, TrainConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let corpus = load_corpus(fixtures.join("banking_train.conll"), LabelScheme::Kp3)?;
    let table = load_embeddings(fixtures.join("embeddings.txt"))?;
    let features = FeatureConfig::embeddings_only(3)?;
    let config = TrainConfig {
        hidden1: 32,
        hidden2: 32,
        max_epochs: 20,
        ..TrainConfig::default()
    };
    let model = train(&corpus, &corpus, &table, &features, &config)?;

    for text in [
        "saya kecewa di mobile banking BCA",
        "mesin atm di sana error lagi",
    ] {
        let tweet = Tweet {
            id: text.into(),
            tokens: text
                .split_whitespace()
                .map(|w| Token::bare(w, LabelScheme::Kp3.outside()))
                .collect(),
        };
        let labels: Vec<_> = model
            .predict(&table, &tweet)?
            .into_iter()
            .map(Label::to_kp3)
            .collect();
        let phrases: Vec<String> = decode_phrases(&labels)
            .iter()
            .map(|s| {
                let words: Vec<&str> = tweet.tokens[s.start..=s.end]
                    .iter()
                    .map(|t| t.form.as_str())
                    .collect();
                format!("\"{}\"", words.join(" "))
            })
            .collect();
        println!("{text}\n  -> {}", phrases.join(", "));
    }
    Ok(())
}
