mod common;

use jrnn_keyphrase::augment::{load_stopwords, load_synsets};
use jrnn_keyphrase::corpus::split_train_val;
use jrnn_keyphrase::eval::{compare_methods, Experiment, Method, DEFAULT_ALPHAS};
use jrnn_keyphrase::features::FeatureFlags;
use jrnn_keyphrase::network::TrainConfig;

fn small_config() -> TrainConfig {
    TrainConfig {
        hidden1: 16,
        hidden2: 16,
        max_epochs: 4,
        patience: 2,
        ..TrainConfig::default()
    }
}

#[test]
fn alpha_sweep_has_one_row_per_alpha() {
    let (train, val) = split_train_val(&common::banking("banking_small.conll"), 0.2, 1).unwrap();
    let test = common::banking("banking_small.conll");
    let table = common::embeddings();
    let exp = Experiment::new(&train, &val, &test, &table, 3);
    let report = exp
        .alpha_sweep(FeatureFlags::ALL, &small_config(), &DEFAULT_ALPHAS)
        .unwrap();
    let names: Vec<&str> = report.rows.iter().map(|r| r.name.as_str()).collect();
    assert_eq!(names, ["0.1", "0.3", "0.5", "0.7", "0.9"]);
    assert_eq!(report.key_header, "alpha");
    let best_f1 = report
        .rows
        .iter()
        .map(|r| r.metrics.f1)
        .fold(f64::MIN, f64::max);
    let marked: Vec<_> = report
        .rows
        .iter()
        .filter(|r| r.marks.iter().any(|m| m == "best-F1"))
        .collect();
    assert_eq!(marked.len(), 1);
    assert_eq!(marked[0].metrics.f1, best_f1);
    assert_eq!(
        report.to_tsv(),
        exp.alpha_sweep(FeatureFlags::ALL, &small_config(), &DEFAULT_ALPHAS)
            .unwrap()
            .to_tsv()
    );

    let single = exp
        .alpha_sweep(FeatureFlags::ALL, &small_config(), &[0.5])
        .unwrap();
    assert_eq!(single.len(), 1);
    assert_eq!(single.rows[0].marks, ["best-F1", "best-Acc"]);
    assert!(exp
        .alpha_sweep(FeatureFlags::ALL, &small_config(), &[])
        .is_err());
    assert!(exp
        .alpha_sweep(FeatureFlags::ALL, &small_config(), &[1.5])
        .is_err());
}

#[test]
fn compare_reports_requested_methods_in_order() {
    let (train, val) = split_train_val(&common::banking("banking_small.conll"), 0.2, 1).unwrap();
    let test = common::banking("banking_small.conll");
    let table = common::embeddings();
    let stop = load_stopwords(common::fixture("stopwords.txt")).unwrap();
    let db = load_synsets(common::fixture("synsets.txt")).unwrap();
    let mut exp = Experiment::new(&train, &val, &test, &table, 3);
    exp.stopwords = Some(&stop);
    exp.synsets = Some(&db);

    let report = compare_methods(&exp, &small_config(), &["RAKE", "JRNN3-WE"]).unwrap();
    assert_eq!(report.key_header, "Method");
    assert_eq!(
        report
            .rows
            .iter()
            .map(|r| r.name.as_str())
            .collect::<Vec<_>>(),
        ["RAKE", "JRNN3-WE"]
    );
    assert_eq!(report.rows[0].train_examples, None);
    assert_eq!(report.rows[1].train_examples, Some(train.len()));

    // each augmented tweet brings n variants of itself
    let aug = compare_methods(&exp, &small_config(), &["JRNN3-WE-NE-POS-DS-Augmentation"]).unwrap();
    assert_eq!(
        aug.rows[0].train_examples,
        Some(train.len() * (exp.augment.n + 1))
    );

    assert!(compare_methods(&exp, &small_config(), &["GRU"]).is_err());
    exp.stopwords = None;
    assert!(compare_methods(&exp, &small_config(), &["RAKE"]).is_err());
}

#[test]
fn full_table_is_deterministic() {
    let (train, val) = split_train_val(&common::banking("banking_small.conll"), 0.2, 1).unwrap();
    let test = common::banking("banking_small.conll");
    let table = common::embeddings();
    let stop = load_stopwords(common::fixture("stopwords.txt")).unwrap();
    let db = load_synsets(common::fixture("synsets.txt")).unwrap();
    let mut exp = Experiment::new(&train, &val, &test, &table, 3);
    exp.stopwords = Some(&stop);
    exp.synsets = Some(&db);
    let config = TrainConfig {
        max_epochs: 2,
        ..small_config()
    };
    let a = exp.compare(&config, &Method::table_rows()).unwrap();
    assert_eq!(a.len(), 13);
    assert_eq!(a.rows[0].name, "RAKE");
    assert_eq!(a.rows[12].name, "JRNN3-WE-NE-POS-DS-Augmentation");
    assert_eq!(
        a.to_tsv(),
        exp.compare(&config, &Method::table_rows())
            .unwrap()
            .to_tsv()
    );
    let other = exp
        .compare(&TrainConfig { seed: 7, ..config }, &Method::table_rows())
        .unwrap();
    assert_eq!(other.rows[0], a.rows[0]);
}
