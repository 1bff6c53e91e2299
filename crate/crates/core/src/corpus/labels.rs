//! Label alphabets and the conversions between tag sequences and keyphrase spans.
//!
//! Two schemes are supported. `Kp3` is the three-class scheme used by the main
//! tagger: 0 marks a non-keyphrase word, 1 the first word of a keyphrase and 2
//! any following word of the same keyphrase. `Kp5` is the original five-class
//! scheme (outside, begin, middle, end, single).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kp3 {
    Outside = 0,
    Begin = 1,
    Tail = 2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kp5 {
    O = 0,
    B = 1,
    M = 2,
    E = 3,
    S = 4,
}

impl Kp3 {
    pub const ALL: [Kp3; 3] = [Kp3::Outside, Kp3::Begin, Kp3::Tail];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Kp3> {
        Kp3::ALL.get(i).copied()
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Kp3::Outside => "0",
            Kp3::Begin => "1",
            Kp3::Tail => "2",
        }
    }

    pub fn is_keyphrase(self) -> bool {
        self != Kp3::Outside
    }
}

impl Kp5 {
    pub const ALL: [Kp5; 5] = [Kp5::O, Kp5::B, Kp5::M, Kp5::E, Kp5::S];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Kp5> {
        Kp5::ALL.get(i).copied()
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Kp5::O => "O",
            Kp5::B => "B",
            Kp5::M => "M",
            Kp5::E => "E",
            Kp5::S => "S",
        }
    }

    /// Middle and end collapse into the tail class; a single-word phrase is a beginning.
    pub fn to_kp3(self) -> Kp3 {
        match self {
            Kp5::O => Kp3::Outside,
            Kp5::B | Kp5::S => Kp3::Begin,
            Kp5::M | Kp5::E => Kp3::Tail,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LabelScheme {
    Kp3,
    Kp5,
}

impl LabelScheme {
    pub fn n_classes(self) -> usize {
        match self {
            LabelScheme::Kp3 => 3,
            LabelScheme::Kp5 => 5,
        }
    }

    pub fn parse_label(self, symbol: &str) -> Option<Label> {
        match self {
            LabelScheme::Kp3 => Kp3::ALL
                .into_iter()
                .find(|l| l.symbol() == symbol)
                .map(Label::Kp3),
            LabelScheme::Kp5 => Kp5::ALL
                .into_iter()
                .find(|l| l.symbol() == symbol)
                .map(Label::Kp5),
        }
    }

    pub fn label_from_index(self, i: usize) -> Option<Label> {
        match self {
            LabelScheme::Kp3 => Kp3::from_index(i).map(Label::Kp3),
            LabelScheme::Kp5 => Kp5::from_index(i).map(Label::Kp5),
        }
    }

    pub fn outside(self) -> Label {
        match self {
            LabelScheme::Kp3 => Label::Kp3(Kp3::Outside),
            LabelScheme::Kp5 => Label::Kp5(Kp5::O),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LabelScheme::Kp3 => "kp3",
            LabelScheme::Kp5 => "kp5",
        }
    }
}

impl fmt::Display for LabelScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LabelScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "kp3" | "3" => Ok(LabelScheme::Kp3),
            "kp5" | "5" => Ok(LabelScheme::Kp5),
            other => Err(Error::InvalidArgument(format!(
                "unknown label scheme `{other}`"
            ))),
        }
    }
}

/// A gold or predicted tag under either scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Kp3(Kp3),
    Kp5(Kp5),
}

impl Label {
    pub fn scheme(self) -> LabelScheme {
        match self {
            Label::Kp3(_) => LabelScheme::Kp3,
            Label::Kp5(_) => LabelScheme::Kp5,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Label::Kp3(l) => l.index(),
            Label::Kp5(l) => l.index(),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Label::Kp3(l) => l.symbol(),
            Label::Kp5(l) => l.symbol(),
        }
    }

    pub fn to_kp3(self) -> Kp3 {
        match self {
            Label::Kp3(l) => l,
            Label::Kp5(l) => l.to_kp3(),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// An inclusive token range `[start, end]` covering one keyphrase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhraseSpan {
    pub start: usize,
    pub end: usize,
}

impl PhraseSpan {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        PhraseSpan { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, i: usize) -> bool {
        self.start <= i && i <= self.end
    }
}

impl fmt::Display for PhraseSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.start, self.end)
    }
}

/// Layer-1 targets: 1 for every keyphrase word, 0 elsewhere.
pub fn to_binary_labels(labels: &[Kp3]) -> Vec<u8> {
    labels.iter().map(|l| l.is_keyphrase() as u8).collect()
}

pub fn kp5_to_kp3(labels: &[Kp5]) -> Vec<Kp3> {
    labels.iter().map(|l| l.to_kp3()).collect()
}

/// Reads keyphrase spans off a KP3 sequence. A tail with no open span starts a new one.
pub fn decode_phrases(labels: &[Kp3]) -> Vec<PhraseSpan> {
    let mut spans = Vec::new();
    let mut open: Option<usize> = None;
    for (i, label) in labels.iter().enumerate() {
        match label {
            Kp3::Outside => {
                if let Some(start) = open.take() {
                    spans.push(PhraseSpan::new(start, i - 1));
                }
            }
            Kp3::Begin => {
                if let Some(start) = open.replace(i) {
                    spans.push(PhraseSpan::new(start, i - 1));
                }
            }
            Kp3::Tail => {
                if open.is_none() {
                    open = Some(i);
                }
            }
        }
    }
    if let Some(start) = open {
        spans.push(PhraseSpan::new(start, labels.len() - 1));
    }
    spans
}

fn check_spans(spans: &[PhraseSpan], length: usize) -> Result<()> {
    let mut previous_end: Option<usize> = None;
    for span in spans {
        if span.start > span.end || span.end >= length {
            return Err(Error::InvalidArgument(format!(
                "span {span} out of range for length {length}"
            )));
        }
        if let Some(prev) = previous_end {
            if span.start <= prev {
                return Err(Error::InvalidArgument(format!(
                    "span {span} overlaps or precedes a previous span"
                )));
            }
        }
        previous_end = Some(span.end);
    }
    Ok(())
}

/// Inverse of [`decode_phrases`] for sorted, disjoint spans.
pub fn encode_phrases(spans: &[PhraseSpan], length: usize) -> Result<Vec<Kp3>> {
    check_spans(spans, length)?;
    let mut labels = vec![Kp3::Outside; length];
    for span in spans {
        labels[span.start] = Kp3::Begin;
        for l in &mut labels[span.start + 1..=span.end] {
            *l = Kp3::Tail;
        }
    }
    Ok(labels)
}

/// Five-class encoding of the same spans: single-word phrases become `S`,
/// longer ones `B M* E`.
pub fn encode_phrases_kp5(spans: &[PhraseSpan], length: usize) -> Result<Vec<Kp5>> {
    check_spans(spans, length)?;
    let mut labels = vec![Kp5::O; length];
    for span in spans {
        if span.start == span.end {
            labels[span.start] = Kp5::S;
        } else {
            labels[span.start] = Kp5::B;
            for l in &mut labels[span.start + 1..span.end] {
                *l = Kp5::M;
            }
            labels[span.end] = Kp5::E;
        }
    }
    Ok(labels)
}

/// Goes through the decoded spans, so ill-formed input is repaired the same way
/// [`decode_phrases`] repairs it.
pub fn kp3_to_kp5(labels: &[Kp3]) -> Vec<Kp5> {
    encode_phrases_kp5(&decode_phrases(labels), labels.len())
        .expect("decoded spans are always valid")
}
