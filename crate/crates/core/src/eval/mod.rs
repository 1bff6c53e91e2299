//! Word-level evaluation and the comparison / alpha-sweep experiment harness.

mod experiments;
mod metrics;
mod report;

pub use experiments::{alpha_sweep, compare_methods, Experiment, Method, DEFAULT_ALPHAS};
pub use metrics::{confusion_counts, metrics, ConfusionCounts, MetricsReport};
pub use report::{format_metric, Report, ReportRow};

use crate::corpus::{Corpus, Kp3, Tweet};
use crate::error::Result;
use crate::features::EmbeddingTable;
use crate::network::Model;
use crate::rake::{rake_extract, RakeConfig};

/// Anything that assigns a KP3 label to every token of a tweet.
pub trait Labeler: Sync {
    fn label(&self, tweet: &Tweet) -> Result<Vec<Kp3>>;
}

impl<F> Labeler for F
where
    F: Fn(&Tweet) -> Result<Vec<Kp3>> + Sync,
{
    fn label(&self, tweet: &Tweet) -> Result<Vec<Kp3>> {
        self(tweet)
    }
}

pub struct ModelLabeler<'a> {
    pub model: &'a Model,
    pub table: &'a EmbeddingTable,
}

impl Labeler for ModelLabeler<'_> {
    fn label(&self, tweet: &Tweet) -> Result<Vec<Kp3>> {
        self.model.predict_kp3(self.table, tweet)
    }
}

pub struct RakeLabeler<'a>(pub &'a RakeConfig);

impl Labeler for RakeLabeler<'_> {
    fn label(&self, tweet: &Tweet) -> Result<Vec<Kp3>> {
        Ok(rake_extract(tweet, self.0)?.labels)
    }
}

pub fn evaluate_counts<L: Labeler + ?Sized>(
    labeler: &L,
    tweets: &[Tweet],
) -> Result<ConfusionCounts> {
    let mut counts = ConfusionCounts::default();
    for tweet in tweets {
        counts += confusion_counts(&labeler.label(tweet)?, &tweet.kp3_labels())?;
    }
    Ok(counts)
}

/// Micro-averaged metrics: counts are summed over every word of the corpus
/// before P, R, F1 and accuracy are computed.
pub fn evaluate<L: Labeler + ?Sized>(labeler: &L, corpus: &Corpus) -> Result<MetricsReport> {
    metrics(evaluate_counts(labeler, corpus.tweets())?)
}

/// Same result as [`evaluate`], with tweets spread over `threads` workers.
pub fn evaluate_parallel<L: Labeler + ?Sized>(
    labeler: &L,
    corpus: &Corpus,
    threads: usize,
) -> Result<MetricsReport> {
    let tweets = corpus.tweets();
    let threads = threads.max(1);
    if threads == 1 || tweets.len() < 2 {
        return evaluate(labeler, corpus);
    }
    let chunk = tweets.len().div_ceil(threads);
    let partials: Vec<Result<ConfusionCounts>> = std::thread::scope(|scope| {
        let handles: Vec<_> = tweets
            .chunks(chunk)
            .map(|part| scope.spawn(move || evaluate_counts(labeler, part)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("evaluation worker panicked"))
            .collect()
    });
    let mut counts = ConfusionCounts::default();
    for p in partials {
        counts += p?;
    }
    metrics(counts)
}
