//! Trains a JRNN3 tagger with POS, NE and dependency features on the
//! synthetic banking corpus, saves it and reloads it.
//!
//! ```bash
//! cargo run --release -p jrnn-keyphrase --example train_jrnn
//! ```

use std::path::Path;

use jrnn_keyphrase::corpus::{load_corpus, split_train_val, LabelScheme};
use jrnn_keyphrase::eval::{evaluate, format_metric, ModelLabeler};
use jrnn_keyphrase::features::{load_embeddings, FeatureConfig, FeatureFlags};
use jrnn_keyphrase::network::{load_model, save_model, train, TrainConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let corpus = load_corpus(fixtures.join("banking_train.conll"), LabelScheme::Kp3)?;
    let test = load_corpus(fixtures.join("banking_test.conll"), LabelScheme::Kp3)?;
    let table = load_embeddings(fixtures.join("embeddings.txt"))?;

    let (train_set, val_set) = split_train_val(&corpus, 0.1, 42)?;
    let features = FeatureConfig::from_corpus(&train_set, FeatureFlags::ALL, 3)?;
    // smaller layers than the 300/300 default keep the example fast
    let config = TrainConfig {
        hidden1: 32,
        hidden2: 32,
        max_epochs: 30,
        ..TrainConfig::default()
    };
    let model = train(&train_set, &val_set, &table, &features, &config)?;
    for r in &model.history {
        println!(
            "epoch {:>2}  loss {:.4}  val F1 {}",
            r.epoch,
            r.train_loss,
            format_metric(r.validation.f1)
        );
    }

    let path = std::env::temp_dir().join("jrnn3-banking.jrkp");
    save_model(&model, &path)?;
    let reloaded = load_model(&path)?;
    let m = evaluate(
        &ModelLabeler {
            model: &reloaded,
            table: &table,
        },
        &test,
    )?;
    println!(
        "test  P {}  R {}  F1 {}  Acc {}",
        format_metric(m.precision),
        format_metric(m.recall),
        format_metric(m.f1),
        format_metric(m.accuracy)
    );
    println!("model saved to {}", path.display());
    Ok(())
}
