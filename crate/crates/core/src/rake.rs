//! RAKE keyword extraction on a single tweet.
//!
//! Candidates are maximal runs of tokens that are neither stopwords nor
//! punctuation. A word scores `deg(w) / freq(w)`, where `freq` counts its
//! occurrences inside candidates and `deg` sums the lengths of the candidates
//! it occurs in. A phrase scores the sum of its word scores.

use std::collections::HashMap;

use crate::augment::StopwordSet;
use crate::corpus::{encode_phrases, Kp3, PhraseSpan, Tweet};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Selection {
    /// Keep `ceil(fraction * candidates)` phrases.
    TopFraction(f64),
    TopN(usize),
}

impl Selection {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Selection::TopFraction(f) if !(f > 0.0 && f <= 1.0) => Err(Error::InvalidArgument(
                format!("selection fraction {f} outside (0, 1]"),
            )),
            Selection::TopN(0) => Err(Error::InvalidArgument("top-N must be at least 1".into())),
            _ => Ok(()),
        }
    }

    fn count(&self, n: usize) -> usize {
        match *self {
            Selection::TopFraction(f) => ((f * n as f64) - 1e-9).ceil().max(0.0) as usize,
            Selection::TopN(k) => k,
        }
        .min(n)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RakeConfig {
    pub stopwords: StopwordSet,
    pub selection: Selection,
}

impl RakeConfig {
    /// Top third of the candidates.
    pub fn new(stopwords: StopwordSet) -> RakeConfig {
        RakeConfig {
            stopwords,
            selection: Selection::TopFraction(1.0 / 3.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoredPhrase {
    pub span: PhraseSpan,
    /// Lowercased member words.
    pub words: Vec<String>,
    pub score: f64,
}

fn is_punctuation(form: &str) -> bool {
    !form.chars().any(char::is_alphanumeric)
}

pub fn rake_candidates(tweet: &Tweet, stopwords: &StopwordSet) -> Vec<PhraseSpan> {
    let mut spans = Vec::new();
    let mut start = None;
    for (i, form) in tweet.forms().enumerate() {
        let delimiter = stopwords.contains(form) || is_punctuation(form);
        match (delimiter, start) {
            (true, Some(s)) => {
                spans.push(PhraseSpan::new(s, i - 1));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        spans.push(PhraseSpan::new(s, tweet.len() - 1));
    }
    spans
}

#[derive(Debug, Clone, PartialEq)]
pub struct RakeScores {
    pub word_scores: HashMap<String, f64>,
    /// Candidates in their original order.
    pub phrases: Vec<ScoredPhrase>,
}

pub fn rake_scores(candidates: &[PhraseSpan], tweet: &Tweet) -> RakeScores {
    let words_of = |span: &PhraseSpan| -> Vec<String> {
        tweet.tokens[span.start..=span.end]
            .iter()
            .map(|t| t.form.to_lowercase())
            .collect()
    };
    let mut freq: HashMap<String, usize> = HashMap::new();
    let mut degree: HashMap<String, usize> = HashMap::new();
    for span in candidates {
        let words = words_of(span);
        for w in &words {
            *freq.entry(w.clone()).or_default() += 1;
            *degree.entry(w.clone()).or_default() += words.len();
        }
    }
    let word_scores: HashMap<String, f64> = freq
        .iter()
        .map(|(w, &f)| (w.clone(), degree[w] as f64 / f as f64))
        .collect();
    let phrases = candidates
        .iter()
        .map(|span| {
            let words = words_of(span);
            let score = words.iter().map(|w| word_scores[w]).sum();
            ScoredPhrase {
                span: *span,
                words,
                score,
            }
        })
        .collect();
    RakeScores {
        word_scores,
        phrases,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RakeOutput {
    /// All candidates by descending score; ties keep sentence order.
    pub ranked: Vec<ScoredPhrase>,
    /// Selected spans in sentence order.
    pub selected: Vec<PhraseSpan>,
    pub labels: Vec<Kp3>,
}

pub fn rake_extract(tweet: &Tweet, config: &RakeConfig) -> Result<RakeOutput> {
    config.selection.validate()?;
    let candidates = rake_candidates(tweet, &config.stopwords);
    let mut ranked = rake_scores(&candidates, tweet).phrases;
    ranked.sort_by(|a, b| b.score.total_cmp(&a.score));
    let keep = config.selection.count(ranked.len());
    let mut selected: Vec<PhraseSpan> = ranked[..keep].iter().map(|p| p.span).collect();
    selected.sort();
    let labels = encode_phrases(&selected, tweet.len())?;
    Ok(RakeOutput {
        ranked,
        selected,
        labels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Kp3, Label, Token};

    fn tweet(forms: &[&str]) -> Tweet {
        Tweet {
            id: "t".into(),
            tokens: forms
                .iter()
                .map(|f| Token::bare(*f, Label::Kp3(Kp3::Outside)))
                .collect(),
        }
    }

    #[test]
    fn candidate_runs() {
        let stop = StopwordSet::new(["di"]);
        assert_eq!(
            rake_candidates(&tweet(&["di", "bank", "bagus"]), &stop),
            vec![PhraseSpan::new(1, 2)]
        );
        assert!(rake_candidates(&tweet(&["di", "di"]), &stop).is_empty());
        assert_eq!(
            rake_candidates(&tweet(&["bank", "bagus"]), &stop),
            vec![PhraseSpan::new(0, 1)]
        );
        assert_eq!(
            rake_candidates(&tweet(&["bank", ",", "bagus", "!"]), &stop),
            vec![PhraseSpan::new(0, 0), PhraseSpan::new(2, 2)]
        );
    }

    #[test]
    fn deep_learning_scores() {
        let t = tweet(&["deep", "learning", "and", "deep", "models"]);
        let stop = StopwordSet::new(["and"]);
        let scores = rake_scores(&rake_candidates(&t, &stop), &t);
        assert_eq!(scores.word_scores["deep"], 2.0);
        assert_eq!(scores.word_scores["learning"], 2.0);
        assert_eq!(scores.word_scores["models"], 2.0);
        let phrase_scores: Vec<f64> = scores.phrases.iter().map(|p| p.score).collect();
        assert_eq!(phrase_scores, vec![4.0, 4.0]);

        let out = rake_extract(&t, &RakeConfig::new(stop)).unwrap();
        assert_eq!(out.selected, vec![PhraseSpan::new(0, 1)]);
    }

    #[test]
    fn single_word_candidate() {
        let t = tweet(&["bank"]);
        let s = rake_scores(&[PhraseSpan::new(0, 0)], &t);
        assert_eq!(s.phrases[0].score, 1.0);
    }

    #[test]
    fn scoring_is_lowercased() {
        let t = tweet(&["Bank", "x", "bank"]);
        let stop = StopwordSet::new(["x"]);
        let s = rake_scores(&rake_candidates(&t, &stop), &t);
        assert_eq!(s.word_scores.len(), 1);
        assert_eq!(s.word_scores["bank"], 1.0);
    }

    #[test]
    fn equal_scores_select_earliest_third() {
        let t = tweet(&["a", "x", "b", "x", "c"]);
        let out = rake_extract(&t, &RakeConfig::new(StopwordSet::new(["x"]))).unwrap();
        assert_eq!(out.selected, vec![PhraseSpan::new(0, 0)]);
        assert_eq!(
            out.labels,
            vec![
                Kp3::Begin,
                Kp3::Outside,
                Kp3::Outside,
                Kp3::Outside,
                Kp3::Outside
            ]
        );
    }

    #[test]
    fn no_candidates_no_labels() {
        let t = tweet(&["x", "y"]);
        let out = rake_extract(&t, &RakeConfig::new(StopwordSet::new(["x", "y"]))).unwrap();
        assert!(out.selected.is_empty());
        assert_eq!(out.labels, vec![Kp3::Outside; 2]);
    }

    #[test]
    fn top_n_selection() {
        let t = tweet(&["a", "b", "x", "c"]);
        let config = RakeConfig {
            stopwords: StopwordSet::new(["x"]),
            selection: Selection::TopN(5),
        };
        let out = rake_extract(&t, &config).unwrap();
        assert_eq!(out.selected.len(), 2);
        assert_eq!(out.ranked[0].span, PhraseSpan::new(0, 1));
        assert!(Selection::TopN(0).validate().is_err());
        assert!(Selection::TopFraction(0.0).validate().is_err());
    }
}
