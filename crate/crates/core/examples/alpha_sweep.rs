//! Trains one JRNN3 per value of alpha and prints the comparison table.
//!
//! ```bash
//! cargo run --release -p jrnn-keyphrase --example alpha_sweep
//! ```

use std::path::Path;

use jrnn_keyphrase::corpus::{load_corpus, split_train_val, LabelScheme};
use jrnn_keyphrase::eval::{Experiment, DEFAULT_ALPHAS};
use jrnn_keyphrase::features::{load_embeddings, FeatureFlags};
use jrnn_keyphrase::network::TrainConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let corpus = load_corpus(fixtures.join("banking_train.conll"), LabelScheme::Kp3)?;
    let test = load_corpus(fixtures.join("banking_test.conll"), LabelScheme::Kp3)?;
    let table = load_embeddings(fixtures.join("embeddings.txt"))?;
    let (train_set, val_set) = split_train_val(&corpus, 0.1, 42)?;

    let base = TrainConfig {
        hidden1: 32,
        hidden2: 32,
        max_epochs: 15,
        ..TrainConfig::default()
    };
    let experiment = Experiment::new(&train_set, &val_set, &test, &table, 3);
    let report = experiment.alpha_sweep(FeatureFlags::ALL, &base, &DEFAULT_ALPHAS)?;
    print!("{}", report.to_table());
    Ok(())
}
