//! Synonym-replacement data augmentation.
//!
//! Every training tweet yields `n` variants. A variant starts from the
//! original tweet and replaces the forms at up to `m` candidate positions
//! (non-stopwords with at least one synonym) by a random synonym. All other
//! columns, including the gold label, are copied from the parent.

use std::collections::{HashMap, HashSet};
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{Corpus, Tweet};
use crate::error::{Error, Result};
use crate::seed::derive_seed;

/// Stopwords, matched case-insensitively.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StopwordSet {
    words: HashSet<String>,
}

impl StopwordSet {
    pub fn new<I, S>(words: I) -> StopwordSet
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        StopwordSet {
            words: words
                .into_iter()
                .map(|w| w.as_ref().to_lowercase())
                .collect(),
        }
    }

    pub fn contains(&self, form: &str) -> bool {
        self.words.contains(&form.to_lowercase())
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// One word per line; blank lines and lines starting with `#` are skipped.
pub fn load_stopwords(path: impl AsRef<Path>) -> Result<StopwordSet> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut words = Vec::new();
    for line in BufReader::new(file).lines() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let w = line.trim();
        if !w.is_empty() && !w.starts_with('#') {
            words.push(w.to_string());
        }
    }
    Ok(StopwordSet::new(words))
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SynsetDb {
    entries: HashMap<String, Vec<Vec<String>>>,
}

impl SynsetDb {
    pub fn new(entries: HashMap<String, Vec<Vec<String>>>) -> Result<SynsetDb> {
        for (word, synsets) in &entries {
            if synsets
                .iter()
                .any(|s| s.is_empty() || s.iter().any(|m| m.trim().is_empty()))
            {
                return Err(Error::InvalidArgument(format!(
                    "empty synset or member for `{word}`"
                )));
            }
        }
        Ok(SynsetDb { entries })
    }

    /// Synsets of `word`; empty when the word is absent.
    pub fn synsets(&self, word: &str) -> &[Vec<String>] {
        self.entries.get(word).map_or(&[], Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Serialized in the format read by [`load_synsets`], headwords sorted.
    pub fn to_text(&self) -> String {
        let mut words: Vec<&String> = self.entries.keys().collect();
        words.sort();
        let mut out = String::new();
        for w in words {
            let sets: Vec<String> = self.entries[w].iter().map(|s| s.join(",")).collect();
            out.push_str(&format!("{w}\t{}\n", sets.join("|")));
        }
        out
    }

    /// Synsets of `form` that offer at least one member different from `form`.
    fn replacement_sets(&self, form: &str) -> Vec<&Vec<String>> {
        self.synsets(form)
            .iter()
            .filter(|s| s.iter().any(|m| m != form))
            .collect()
    }
}

pub fn load_synsets(path: impl AsRef<Path>) -> Result<SynsetDb> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_synsets(BufReader::new(file), path)
}

/// Lines are `word<TAB>a,b|c`: synsets separated by `|`, members by `,`.
pub fn read_synsets<R: BufRead>(reader: R, source: &Path) -> Result<SynsetDb> {
    let mut entries: HashMap<String, Vec<Vec<String>>> = HashMap::new();
    let mut first_seen: HashMap<String, usize> = HashMap::new();
    for (n, line) in reader.lines().enumerate() {
        let line_no = n + 1;
        let line = line.map_err(|e| Error::io(source, e))?;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let (word, rest) = line
            .split_once('\t')
            .ok_or_else(|| Error::parse(source, line_no, "expected `word<TAB>synsets`"))?;
        let word = word.trim();
        if word.is_empty() {
            return Err(Error::parse(source, line_no, "empty headword"));
        }
        let mut synsets = Vec::new();
        for set in rest.split('|') {
            let members: Vec<String> = set.split(',').map(|m| m.trim().to_string()).collect();
            if members.iter().any(String::is_empty) {
                return Err(Error::parse(
                    source,
                    line_no,
                    format!("empty synset member for `{word}`"),
                ));
            }
            synsets.push(members);
        }
        if let Some(prev) = first_seen.insert(word.to_string(), line_no) {
            return Err(Error::parse(
                source,
                line_no,
                format!("duplicate headword `{word}` (first defined on line {prev})"),
            ));
        }
        entries.insert(word.to_string(), synsets);
    }
    Ok(SynsetDb { entries })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AugmentConfig {
    /// Variants generated per tweet.
    pub n: usize,
    /// Replacement positions per variant.
    pub m: usize,
    pub seed: u64,
}

impl Default for AugmentConfig {
    fn default() -> Self {
        AugmentConfig {
            n: 3,
            m: 3,
            seed: 42,
        }
    }
}

impl AugmentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::InvalidArgument("m must be at least 1".into()));
        }
        Ok(())
    }
}

/// Positions, in sentence order, of non-stopword tokens that have a synonym
/// differing from their own form.
pub fn candidate_positions(tweet: &Tweet, db: &SynsetDb, stopwords: &StopwordSet) -> Vec<usize> {
    tweet
        .tokens
        .iter()
        .enumerate()
        .filter(|(_, t)| !stopwords.contains(&t.form) && !db.replacement_sets(&t.form).is_empty())
        .map(|(i, _)| i)
        .collect()
}

/// `config.n` variants of `tweet`, each edited independently from the original.
pub fn augment_example<R: Rng>(
    tweet: &Tweet,
    db: &SynsetDb,
    stopwords: &StopwordSet,
    config: &AugmentConfig,
    rng: &mut R,
) -> Vec<Tweet> {
    let candidates = candidate_positions(tweet, db, stopwords);
    (1..=config.n)
        .map(|k| {
            let mut variant = tweet.clone();
            variant.id = format!("{}#aug{k}", tweet.id);
            let chosen: Vec<usize> = if candidates.len() <= config.m {
                candidates.clone()
            } else {
                let mut picked: Vec<usize> = index::sample(rng, candidates.len(), config.m)
                    .into_iter()
                    .map(|i| candidates[i])
                    .collect();
                picked.sort_unstable();
                picked
            };
            for pos in chosen {
                let form = &tweet.tokens[pos].form;
                let sets = db.replacement_sets(form);
                let set = sets.choose(rng).expect("candidate has a usable synset");
                let options: Vec<&String> = set.iter().filter(|m| *m != form).collect();
                let replacement = options.choose(rng).expect("synset has another member");
                variant.tokens[pos].form = (*replacement).clone();
            }
            variant
        })
        .collect()
}

/// The original tweets followed by the variants of each tweet in corpus order.
/// Each tweet draws from its own generator seeded by `config.seed` and its id,
/// so the result does not depend on processing order.
pub fn augment_corpus(
    corpus: &Corpus,
    db: &SynsetDb,
    stopwords: &StopwordSet,
    config: &AugmentConfig,
) -> Result<Corpus> {
    config.validate()?;
    let mut tweets = corpus.tweets().to_vec();
    for tweet in corpus.tweets() {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(config.seed, &tweet.id));
        tweets.extend(augment_example(tweet, db, stopwords, config, &mut rng));
    }
    Corpus::new(corpus.scheme(), tweets)
}
