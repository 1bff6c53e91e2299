//! Annotated tweet corpora in a six-column, blank-line-delimited text format.
//!
//! ```text
//! # id = tweet-1
//! Bank	NNP	ORG	1	nsubj	1
//! A	NNP	ORG	2	flat	2
//! jelek	JJ	O	_	root	0
//! ```
//!
//! Columns are FORM, POS, NE, HEAD (0-based index, `_` for the root), DEPREL
//! and LABEL.

mod labels;

use std::collections::HashSet;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use labels::{
    decode_phrases, encode_phrases, encode_phrases_kp5, kp3_to_kp5, kp5_to_kp3, to_binary_labels,
    Kp3, Kp5, Label, LabelScheme, PhraseSpan,
};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub form: String,
    pub pos: String,
    pub ne: String,
    /// `None` marks the root of the dependency tree.
    pub head: Option<usize>,
    pub deprel: String,
    pub label: Label,
}

impl Token {
    /// A token with placeholder annotations, handy for tests and raw input.
    pub fn bare(form: impl Into<String>, label: Label) -> Token {
        Token {
            form: form.into(),
            pos: "_".into(),
            ne: "_".into(),
            head: None,
            deprel: "_".into(),
            label,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tweet {
    pub id: String,
    pub tokens: Vec<Token>,
}

impl Tweet {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn forms(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().map(|t| t.form.as_str())
    }

    pub fn labels(&self) -> Vec<Label> {
        self.tokens.iter().map(|t| t.label).collect()
    }

    /// Gold labels viewed through the three-class scheme.
    pub fn kp3_labels(&self) -> Vec<Kp3> {
        self.tokens.iter().map(|t| t.label.to_kp3()).collect()
    }

    pub fn phrases(&self) -> Vec<PhraseSpan> {
        decode_phrases(&self.kp3_labels())
    }

    /// Re-expresses the gold labels in another scheme. KP3 to KP5 goes through
    /// the decoded spans.
    pub fn to_scheme(&self, scheme: LabelScheme) -> Tweet {
        let labels: Vec<Label> = match scheme {
            LabelScheme::Kp3 => self.kp3_labels().into_iter().map(Label::Kp3).collect(),
            LabelScheme::Kp5 => match self.tokens.first().map(|t| t.label.scheme()) {
                Some(LabelScheme::Kp5) => self.labels(),
                _ => kp3_to_kp5(&self.kp3_labels())
                    .into_iter()
                    .map(Label::Kp5)
                    .collect(),
            },
        };
        let tokens = self
            .tokens
            .iter()
            .zip(labels)
            .map(|(t, label)| Token { label, ..t.clone() })
            .collect();
        Tweet {
            id: self.id.clone(),
            tokens,
        }
    }

    fn validate(&self, scheme: LabelScheme) -> std::result::Result<(), (usize, String)> {
        if self.tokens.is_empty() {
            return Err((0, format!("tweet `{}` has no tokens", self.id)));
        }
        for (i, token) in self.tokens.iter().enumerate() {
            if token.form.is_empty() {
                return Err((i, "empty form".into()));
            }
            if token.label.scheme() != scheme {
                return Err((
                    i,
                    format!("label `{}` is not a {scheme} label", token.label),
                ));
            }
            if let Some(h) = token.head {
                if h >= self.tokens.len() {
                    return Err((
                        i,
                        format!(
                            "head {h} out of range for tweet of {} tokens",
                            self.tokens.len()
                        ),
                    ));
                }
                if h == i {
                    return Err((i, "token is its own head".into()));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    scheme: LabelScheme,
    tweets: Vec<Tweet>,
}

impl Corpus {
    pub fn new(scheme: LabelScheme, tweets: Vec<Tweet>) -> Result<Corpus> {
        let mut ids = HashSet::new();
        for tweet in &tweets {
            tweet.validate(scheme).map_err(|(i, msg)| {
                Error::InvalidArgument(format!("tweet `{}`, token {i}: {msg}", tweet.id))
            })?;
            if !ids.insert(tweet.id.as_str()) {
                return Err(Error::InvalidArgument(format!(
                    "duplicate tweet id `{}`",
                    tweet.id
                )));
            }
        }
        Ok(Corpus { scheme, tweets })
    }

    pub fn empty(scheme: LabelScheme) -> Corpus {
        Corpus {
            scheme,
            tweets: Vec::new(),
        }
    }

    pub fn scheme(&self) -> LabelScheme {
        self.scheme
    }

    pub fn tweets(&self) -> &[Tweet] {
        &self.tweets
    }

    pub fn into_tweets(self) -> Vec<Tweet> {
        self.tweets
    }

    pub fn len(&self) -> usize {
        self.tweets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tweets.is_empty()
    }

    pub fn total_words(&self) -> usize {
        self.tweets.iter().map(Tweet::len).sum()
    }

    pub fn to_scheme(&self, scheme: LabelScheme) -> Corpus {
        if scheme == self.scheme {
            return self.clone();
        }
        Corpus {
            scheme,
            tweets: self.tweets.iter().map(|t| t.to_scheme(scheme)).collect(),
        }
    }

    /// Serializes in the column format read by [`load_corpus`].
    pub fn to_conll_string(&self) -> String {
        let mut out = String::new();
        for tweet in &self.tweets {
            writeln!(out, "# id = {}", tweet.id).unwrap();
            for t in &tweet.tokens {
                let head = t.head.map_or_else(|| "_".to_string(), |h| h.to_string());
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    t.form, t.pos, t.ne, head, t.deprel, t.label
                )
                .unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut file = File::create(path).map_err(|e| Error::io(path, e))?;
        file.write_all(self.to_conll_string().as_bytes())
            .map_err(|e| Error::io(path, e))
    }
}

pub fn load_corpus(path: impl AsRef<Path>, scheme: LabelScheme) -> Result<Corpus> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_corpus(BufReader::new(file), path, scheme, false)
}

/// Like [`load_corpus`], but a `_` in the LABEL column is accepted and read as
/// the outside label. Used for inputs that are about to be tagged.
pub fn load_unlabeled_corpus(path: impl AsRef<Path>, scheme: LabelScheme) -> Result<Corpus> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_corpus(BufReader::new(file), path, scheme, true)
}

pub fn parse_corpus(text: &str, scheme: LabelScheme) -> Result<Corpus> {
    read_corpus(text.as_bytes(), Path::new("<memory>"), scheme, false)
}

pub fn read_corpus<R: BufRead>(
    reader: R,
    source: &Path,
    scheme: LabelScheme,
    allow_unlabeled: bool,
) -> Result<Corpus> {
    let mut tweets = Vec::new();
    let mut ids = HashSet::new();
    let mut pending_id: Option<String> = None;
    // (token, line number) for the tweet being read
    let mut current: Vec<(Token, usize)> = Vec::new();

    let mut finish = |id: Option<String>,
                      rows: &mut Vec<(Token, usize)>,
                      tweets: &mut Vec<Tweet>|
     -> Result<()> {
        if rows.is_empty() {
            return Ok(());
        }
        let id = id.unwrap_or_else(|| format!("tweet-{}", tweets.len() + 1));
        let first_line = rows[0].1;
        if !ids.insert(id.clone()) {
            return Err(Error::parse(
                source,
                first_line,
                format!("duplicate tweet id `{id}`"),
            ));
        }
        let lines: Vec<usize> = rows.iter().map(|(_, l)| *l).collect();
        let tweet = Tweet {
            id,
            tokens: rows.drain(..).map(|(t, _)| t).collect(),
        };
        tweet
            .validate(scheme)
            .map_err(|(i, msg)| Error::parse(source, lines[i.min(lines.len() - 1)], msg))?;
        tweets.push(tweet);
        Ok(())
    };

    for (n, line) in reader.lines().enumerate() {
        let line_no = n + 1;
        let line = line.map_err(|e| Error::io(source, e))?;
        let line = line.trim_end_matches(['\r', '\n']);
        if line.trim().is_empty() {
            finish(pending_id.take(), &mut current, &mut tweets)?;
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(id) = comment.trim().strip_prefix("id") {
                if let Some(id) = id.trim_start().strip_prefix('=') {
                    if !current.is_empty() {
                        finish(pending_id.take(), &mut current, &mut tweets)?;
                    }
                    pending_id = Some(id.trim().to_string());
                }
            }
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 6 {
            return Err(Error::parse(
                source,
                line_no,
                format!("expected 6 tab-separated columns, found {}", cols.len()),
            ));
        }
        let form = cols[0].trim();
        if form.is_empty() {
            return Err(Error::parse(source, line_no, "empty FORM column"));
        }
        let head = match cols[3].trim() {
            "_" => None,
            h => Some(
                h.parse::<usize>()
                    .map_err(|_| Error::parse(source, line_no, format!("invalid HEAD `{h}`")))?,
            ),
        };
        let label_sym = cols[5].trim();
        let label = if allow_unlabeled && label_sym == "_" {
            scheme.outside()
        } else {
            scheme.parse_label(label_sym).ok_or_else(|| {
                Error::parse(
                    source,
                    line_no,
                    format!("unknown {scheme} label `{label_sym}`"),
                )
            })?
        };
        current.push((
            Token {
                form: form.to_string(),
                pos: cols[1].trim().to_string(),
                ne: cols[2].trim().to_string(),
                head,
                deprel: cols[4].trim().to_string(),
                label,
            },
            line_no,
        ));
    }
    finish(pending_id.take(), &mut current, &mut tweets)?;
    Ok(Corpus { scheme, tweets })
}

/// Random tweet-level split into (train, validation). The validation part holds
/// `round(fraction * N)` tweets; both parts keep the original tweet order.
pub fn split_train_val(corpus: &Corpus, fraction: f64, seed: u64) -> Result<(Corpus, Corpus)> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "validation fraction {fraction} outside (0, 1)"
        )));
    }
    let n = corpus.len();
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 tweets to split, found {n}"
        )));
    }
    let n_val = (fraction * n as f64).round() as usize;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut is_val = vec![false; n];
    for &i in &order[..n_val] {
        is_val[i] = true;
    }
    let (mut train, mut val) = (Vec::new(), Vec::new());
    for (tweet, v) in corpus.tweets.iter().zip(is_val) {
        if v {
            val.push(tweet.clone());
        } else {
            train.push(tweet.clone());
        }
    }
    Ok((
        Corpus {
            scheme: corpus.scheme,
            tweets: train,
        },
        Corpus {
            scheme: corpus.scheme,
            tweets: val,
        },
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusStats {
    pub tweets: usize,
    pub keyphrases: usize,
    pub words: usize,
    /// Word count per class index of the corpus scheme.
    pub class_counts: Vec<usize>,
}

impl CorpusStats {
    /// Exact mean number of keyphrases per tweet (0 for an empty corpus).
    pub fn mean_keyphrases(&self) -> f64 {
        if self.tweets == 0 {
            0.0
        } else {
            self.keyphrases as f64 / self.tweets as f64
        }
    }
}

pub fn corpus_stats(corpus: &Corpus) -> CorpusStats {
    let mut class_counts = vec![0; corpus.scheme.n_classes()];
    let mut keyphrases = 0;
    for tweet in &corpus.tweets {
        keyphrases += tweet.phrases().len();
        for t in &tweet.tokens {
            class_counts[t.label.index()] += 1;
        }
    }
    CorpusStats {
        tweets: corpus.len(),
        keyphrases,
        words: corpus.total_words(),
        class_counts,
    }
}
