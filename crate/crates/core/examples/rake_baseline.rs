//! RAKE on the classic "deep learning and deep models" sentence, then as a
//! tagger on the synthetic test corpus.
//!
//! ```bash
//! cargo run -p jrnn-keyphrase --example rake_baseline
//! ```

use std::path::Path;

use jrnn_keyphrase::augment::{load_stopwords, StopwordSet};
use jrnn_keyphrase::corpus::{load_corpus, LabelScheme};
use jrnn_keyphrase::eval::{evaluate, format_metric, RakeLabeler};
use jrnn_keyphrase::rake::{rake_candidates, rake_extract, rake_scores, RakeConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let sentence = load_corpus(fixtures.join("rake_deep_learning.conll"), LabelScheme::Kp3)?;
    let tweet = &sentence.tweets()[0];
    let stop = StopwordSet::new(["and"]);

    let scores = rake_scores(&rake_candidates(tweet, &stop), tweet);
    let mut words: Vec<_> = scores.word_scores.iter().collect();
    words.sort_by(|a, b| a.0.cmp(b.0));
    for (w, s) in words {
        println!("word   {w:<10} {s}");
    }
    let out = rake_extract(tweet, &RakeConfig::new(stop))?;
    for p in &out.ranked {
        let mark = if out.selected.contains(&p.span) {
            "selected"
        } else {
            ""
        };
        println!("phrase {:<16} {}  {mark}", p.words.join(" "), p.score);
    }

    let test = load_corpus(fixtures.join("banking_test.conll"), LabelScheme::Kp3)?;
    let config = RakeConfig::new(load_stopwords(fixtures.join("stopwords.txt"))?);
    let m = evaluate(&RakeLabeler(&config), &test)?;
    println!(
        "banking test  F1 {}  Acc {}",
        format_metric(m.f1),
        format_metric(m.accuracy)
    );
    Ok(())
}
