//! Runs RAKE, the RNN/LSTM/JRNN5 baselines and the JRNN3 feature variants,
//! including synonym augmentation, and prints one row per method.
//!
//! ```bash
//! cargo run --release -p jrnn-keyphrase --example compare_methods
//! ```

use std::path::Path;

use jrnn_keyphrase::augment::{load_stopwords, load_synsets};
use jrnn_keyphrase::corpus::{load_corpus, split_train_val, LabelScheme};
use jrnn_keyphrase::eval::{Experiment, Method};
use jrnn_keyphrase::features::load_embeddings;
use jrnn_keyphrase::network::TrainConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let corpus = load_corpus(fixtures.join("banking_train.conll"), LabelScheme::Kp3)?;
    let test = load_corpus(fixtures.join("banking_test.conll"), LabelScheme::Kp3)?;
    let table = load_embeddings(fixtures.join("embeddings.txt"))?;
    let stopwords = load_stopwords(fixtures.join("stopwords.txt"))?;
    let synsets = load_synsets(fixtures.join("synsets.txt"))?;
    let (train_set, val_set) = split_train_val(&corpus, 0.1, 42)?;

    let mut experiment = Experiment::new(&train_set, &val_set, &test, &table, 3);
    experiment.stopwords = Some(&stopwords);
    experiment.synsets = Some(&synsets);

    let base = TrainConfig {
        hidden1: 32,
        hidden2: 32,
        max_epochs: 10,
        ..TrainConfig::default()
    };
    let report = experiment.compare(&base, &Method::table_rows())?;
    print!("{}", report.to_table());
    for row in report.rows.iter().filter(|r| r.train_examples.is_some()) {
        println!(
            "{:<34} trained on {} tweets",
            row.name,
            row.train_examples.unwrap()
        );
    }
    Ok(())
}
