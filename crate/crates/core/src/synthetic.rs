//! Deterministic synthetic corpora in the style of Indonesian banking tweets.
//!
//! Keyphrases are drawn from a fixed product/service list and are always
//! separated by at least one non-keyphrase word, so the gold label of every
//! token is a function of the token and its left neighbour. That makes the
//! corpora learnable to 100% by any of the taggers, which is what the
//! overfitting checks rely on.

use std::collections::HashMap;

use ndarray::Array1;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::augment::{StopwordSet, SynsetDb};
use crate::corpus::{Corpus, Kp3, Label, LabelScheme, Token, Tweet};
use crate::error::Result;
use crate::features::EmbeddingTable;
use crate::seed::derive_seed;

const BANKS: &[&str] = &["BCA", "BNI", "BRI", "Mandiri", "CIMB"];

const PHRASES: &[&[&str]] = &[
    &["kartu", "kredit"],
    &["kartu", "debit"],
    &["mobile", "banking"],
    &["internet", "banking"],
    &["mesin", "atm"],
    &["layanan", "nasabah"],
    &["customer", "service"],
    &["transfer", "antar", "bank"],
    &["bunga", "pinjaman"],
    &["biaya", "admin"],
    &["saldo"],
    &["atm"],
    &["aplikasi"],
    &["teller"],
];

/// Stopwords with their POS tag and dependency relation.
pub const FUNCTION_WORDS: &[(&str, &str, &str)] = &[
    ("di", "IN", "case"),
    ("ke", "IN", "case"),
    ("dari", "IN", "case"),
    ("yang", "SC", "mark"),
    ("dan", "CC", "cc"),
    ("ini", "PR", "det"),
    ("itu", "PR", "det"),
    ("saya", "PRP", "nsubj"),
    ("tidak", "NEG", "advmod"),
    ("sudah", "MD", "aux"),
    ("lagi", "RB", "advmod"),
    ("sangat", "RB", "advmod"),
];

const CONTENT_WORDS: &[(&str, &str, &str)] = &[
    ("jelek", "JJ", "amod"),
    ("lambat", "JJ", "amod"),
    ("bagus", "JJ", "amod"),
    ("cepat", "JJ", "amod"),
    ("ramah", "JJ", "amod"),
    ("kecewa", "VB", "xcomp"),
    ("error", "VB", "xcomp"),
    ("gagal", "VB", "xcomp"),
    ("mantap", "JJ", "amod"),
];

const PUNCT: &[&str] = &["!", ".", ","];

const SYNSETS: &[(&str, &[&[&str]])] = &[
    ("jelek", &[&["buruk", "parah"]]),
    ("lambat", &[&["lelet", "lama"]]),
    ("bagus", &[&["baik", "oke"], &["mantap"]]),
    ("cepat", &[&["kilat", "sigap"]]),
    ("ramah", &[&["sopan"]]),
    ("kecewa", &[&["kesal", "sebal"]]),
    ("gagal", &[&["error"]]),
    ("error", &[&["gagal", "rusak"]]),
    ("kartu", &[&["kartu"]]),
    ("aplikasi", &[&["app", "apk"]]),
    ("layanan", &[&["pelayanan"]]),
    ("biaya", &[&["ongkos", "tarif"]]),
    ("saldo", &[&["dana"]]),
    ("di", &[&["pada"]]),
    ("sangat", &[&["amat", "banget"]]),
];

/// The Indonesian stopwords used by the synthetic corpora.
pub fn stopwords() -> StopwordSet {
    StopwordSet::new(FUNCTION_WORDS.iter().map(|(w, _, _)| *w))
}

pub fn synsets() -> SynsetDb {
    let entries: HashMap<String, Vec<Vec<String>>> = SYNSETS
        .iter()
        .map(|(w, sets)| {
            let sets = sets
                .iter()
                .map(|s| s.iter().map(|m| m.to_string()).collect())
                .collect();
            (w.to_string(), sets)
        })
        .collect();
    SynsetDb::new(entries).expect("built-in synsets are well formed")
}

/// Every form the generator or the synonym table can produce, sorted.
pub fn vocabulary() -> Vec<String> {
    let mut words: Vec<String> = BANKS
        .iter()
        .copied()
        .chain(PHRASES.iter().flat_map(|p| p.iter().copied()))
        .chain(FUNCTION_WORDS.iter().map(|w| w.0))
        .chain(CONTENT_WORDS.iter().map(|w| w.0))
        .chain(PUNCT.iter().copied())
        .chain(
            SYNSETS
                .iter()
                .flat_map(|(_, sets)| sets.iter().flat_map(|s| s.iter().copied())),
        )
        .map(str::to_string)
        .collect();
    words.sort();
    words.dedup();
    words
}

/// Random vectors for [`vocabulary`], uniform in (-1, 1).
pub fn embeddings(dim: usize, seed: u64) -> Result<EmbeddingTable> {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, "embeddings"));
    let entries = vocabulary()
        .into_iter()
        .map(|w| {
            let v = Array1::from_shape_fn(dim, |_| rng.gen_range(-1.0..1.0));
            (w, v)
        })
        .collect();
    EmbeddingTable::new(dim, entries)
}

struct Draft {
    tokens: Vec<Token>,
    /// Index of the first token of each keyphrase.
    phrase_heads: Vec<usize>,
}

impl Draft {
    fn push_filler(&mut self, rng: &mut ChaCha8Rng) {
        let (form, pos, deprel) = if rng.gen_bool(0.5) {
            *FUNCTION_WORDS.choose(rng).unwrap()
        } else {
            *CONTENT_WORDS.choose(rng).unwrap()
        };
        self.push(form, pos, "O", deprel, Kp3::Outside);
    }

    fn push_phrase(&mut self, rng: &mut ChaCha8Rng) {
        self.phrase_heads.push(self.tokens.len());
        if rng.gen_bool(0.25) {
            let bank = *BANKS.choose(rng).unwrap();
            self.push(bank, "NNP", "ORG", "obj", Kp3::Begin);
            return;
        }
        let phrase = *PHRASES.choose(rng).unwrap();
        for (k, w) in phrase.iter().enumerate() {
            let (label, deprel) = if k == 0 {
                (Kp3::Begin, "obj")
            } else {
                (Kp3::Tail, "compound")
            };
            self.push(w, "NN", "O", deprel, label);
        }
    }

    fn push(&mut self, form: &str, pos: &str, ne: &str, deprel: &str, label: Kp3) {
        self.tokens.push(Token {
            form: form.into(),
            pos: pos.into(),
            ne: ne.into(),
            head: None,
            deprel: deprel.into(),
            label: Label::Kp3(label),
        });
    }

    /// Root is the first keyphrase; phrase-internal words attach to their
    /// phrase head and everything else attaches to the root.
    fn into_tweet(mut self, id: String) -> Tweet {
        let root = self.phrase_heads[0];
        let mut current_head = root;
        for i in 0..self.tokens.len() {
            if self.phrase_heads.contains(&i) {
                current_head = i;
            }
            let t = &mut self.tokens[i];
            t.head = if i == root {
                t.deprel = "root".into();
                None
            } else if t.label == Label::Kp3(Kp3::Tail) {
                Some(current_head)
            } else {
                Some(root)
            };
        }
        Tweet {
            id,
            tokens: self.tokens,
        }
    }
}

fn generate_tweet(rng: &mut ChaCha8Rng, id: String) -> Tweet {
    let mut draft = Draft {
        tokens: Vec::new(),
        phrase_heads: Vec::new(),
    };
    let n_phrases = rng.gen_range(1..=3);
    for _ in 0..n_phrases {
        for _ in 0..rng.gen_range(1..=3) {
            draft.push_filler(rng);
        }
        draft.push_phrase(rng);
    }
    for _ in 0..rng.gen_range(0..=2) {
        draft.push_filler(rng);
    }
    if rng.gen_bool(0.5) {
        let p = *PUNCT.choose(rng).unwrap();
        draft.push(p, "Z", "O", "punct", Kp3::Outside);
    }
    draft.into_tweet(id)
}

/// `n` KP3 tweets with ids `syn-0000`, `syn-0001`, ...
pub fn corpus(n: usize, seed: u64) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, "corpus"));
    let tweets = (0..n)
        .map(|i| generate_tweet(&mut rng, format!("syn-{i:04}")))
        .collect();
    Corpus::new(LabelScheme::Kp3, tweets).expect("generated tweets are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::decode_phrases;

    #[test]
    fn deterministic() {
        assert_eq!(corpus(20, 7), corpus(20, 7));
        assert_ne!(corpus(20, 7), corpus(20, 8));
    }

    #[test]
    fn keyphrases_are_separated() {
        for t in corpus(200, 1).tweets() {
            let labels = t.kp3_labels();
            assert_eq!(labels[0], Kp3::Outside);
            for w in labels.windows(2) {
                assert!(!(w[0] == Kp3::Outside && w[1] == Kp3::Tail));
            }
            let spans = decode_phrases(&labels);
            assert!((1..=3).contains(&spans.len()));
            for pair in spans.windows(2) {
                assert!(pair[1].start > pair[0].end + 1);
            }
        }
    }

    #[test]
    fn exactly_one_root() {
        for t in corpus(100, 3).tweets() {
            assert_eq!(t.tokens.iter().filter(|t| t.head.is_none()).count(), 1);
        }
    }

    #[test]
    fn vocabulary_is_covered() {
        let table = embeddings(8, 1).unwrap();
        for t in corpus(100, 2).tweets() {
            for f in t.forms() {
                assert!(table.get(f).is_some(), "{f}");
            }
        }
    }
}
