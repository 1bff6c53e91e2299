//! Keyphrase extraction from short social-media texts with a joint-layer
//! recurrent tagger.
//!
//! The first recurrent layer predicts whether a word belongs to a keyphrase
//! and the second, stacked on top of it, predicts the keyphrase position
//! (KP3: outside / begin / tail, or KP5: O/B/M/E/S). Inputs are a window of
//! word embeddings optionally concatenated with POS, named-entity and
//! dependency one-hots. Around the tagger the crate provides synonym
//! augmentation, RAKE and plain RNN/LSTM baselines, word-level metrics and
//! a small experiment harness.
//!
//! ```no_run
//! use jrnn_keyphrase::corpus::{load_corpus, LabelScheme};
//! use jrnn_keyphrase::features::{load_embeddings, FeatureConfig, FeatureFlags};
//! use jrnn_keyphrase::network::{train, TrainConfig};
//!
//! let corpus = load_corpus("train.conll", LabelScheme::Kp3)?;
//! let table = load_embeddings("vectors.txt")?;
//! let features = FeatureConfig::from_corpus(&corpus, FeatureFlags::ALL, 3)?;
//! let model = train(&corpus, &corpus, &table, &features, &TrainConfig::default())?;
//! let labels = model.predict(&table, &corpus.tweets()[0])?;
//! # Ok::<(), jrnn_keyphrase::Error>(())
//! ```

pub mod augment;
pub mod cli;
pub mod corpus;
mod error;
pub mod eval;
pub mod features;
pub mod network;
pub mod rake;
pub mod seed;
pub mod synthetic;

pub use error::{Error, Result};
