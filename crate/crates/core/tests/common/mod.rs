#![allow(dead_code)]

use std::path::PathBuf;

use jrnn_keyphrase::corpus::{load_corpus, Corpus, LabelScheme};
use jrnn_keyphrase::features::{load_embeddings, EmbeddingTable};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn banking(name: &str) -> Corpus {
    load_corpus(fixture(name), LabelScheme::Kp3).unwrap()
}

pub fn embeddings() -> EmbeddingTable {
    load_embeddings(fixture("embeddings.txt")).unwrap()
}

/// Label column of a corpus file read line by line, one Vec per tweet.
pub fn scan_labels(text: &str) -> Vec<Vec<String>> {
    let mut tweets = Vec::new();
    let mut current = Vec::new();
    for line in text.lines() {
        if line.trim().is_empty() {
            if !current.is_empty() {
                tweets.push(std::mem::take(&mut current));
            }
        } else if !line.starts_with('#') {
            current.push(line.rsplit('\t').next().unwrap().to_string());
        }
    }
    if !current.is_empty() {
        tweets.push(current);
    }
    tweets
}

pub fn rake_fixture() -> Corpus {
    load_corpus(fixture("rake_deep_learning.conll"), LabelScheme::Kp3).unwrap()
}
