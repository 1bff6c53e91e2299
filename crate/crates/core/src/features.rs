//! Numeric inputs for the taggers: a window of word embeddings around each
//! token, followed by one-hot POS, NE and dependency features of the token itself.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use ndarray::{s, Array1, Array2};

use crate::corpus::{Corpus, Token, Tweet};
use crate::error::{Error, Result};

pub const UNK: &str = "<UNK>";

/// Pre-trained word vectors. Lookups are case-sensitive.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingTable {
    dim: usize,
    entries: HashMap<String, Array1<f64>>,
}

impl EmbeddingTable {
    pub fn new(dim: usize, entries: HashMap<String, Array1<f64>>) -> Result<EmbeddingTable> {
        if dim == 0 {
            return Err(Error::InvalidArgument(
                "embedding dimension must be positive".into(),
            ));
        }
        if entries.is_empty() {
            return Err(Error::InvalidArgument(
                "embedding vocabulary is empty".into(),
            ));
        }
        if let Some((w, v)) = entries.iter().find(|(_, v)| v.len() != dim) {
            return Err(Error::Dimension(format!(
                "vector for `{w}` has {} components, expected {dim}",
                v.len()
            )));
        }
        Ok(EmbeddingTable { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, form: &str) -> Option<&Array1<f64>> {
        self.entries.get(form)
    }

    /// Text form readable by [`load_embeddings`], rows sorted by word.
    pub fn to_text(&self) -> String {
        let mut words: Vec<&String> = self.entries.keys().collect();
        words.sort();
        let mut out = format!("{} {}\n", self.entries.len(), self.dim);
        for w in words {
            out.push_str(w);
            for x in &self.entries[w] {
                write!(out, " {x}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        File::create(path)
            .and_then(|mut f| f.write_all(self.to_text().as_bytes()))
            .map_err(|e| Error::io(path, e))
    }
}

pub fn load_embeddings(path: impl AsRef<Path>) -> Result<EmbeddingTable> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_embeddings(BufReader::new(file), path)
}

/// Reads the `count dim` header followed by one `word x1 .. xdim` row per entry.
pub fn read_embeddings<R: BufRead>(reader: R, source: &Path) -> Result<EmbeddingTable> {
    let mut lines = reader.lines().enumerate();
    let (count, dim) = loop {
        let Some((n, line)) = lines.next() else {
            return Err(Error::parse(source, 1, "missing `count dim` header"));
        };
        let line = line.map_err(|e| Error::io(source, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parsed = match fields.as_slice() {
            [c, d] => c.parse::<usize>().ok().zip(d.parse::<usize>().ok()),
            _ => None,
        };
        match parsed {
            Some((c, d)) if d > 0 => break (c, d),
            _ => return Err(Error::parse(source, n + 1, "malformed `count dim` header")),
        }
    };

    let mut entries = HashMap::with_capacity(count);
    let mut last_line = 1;
    for (n, line) in lines {
        let line_no = n + 1;
        last_line = line_no;
        let line = line.map_err(|e| Error::io(source, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let word = fields.next().expect("non-empty line").to_string();
        let values = fields
            .map(|f| {
                f.parse::<f64>()
                    .map_err(|_| Error::parse(source, line_no, format!("non-numeric value `{f}`")))
            })
            .collect::<Result<Vec<f64>>>()?;
        if values.len() != dim {
            return Err(Error::parse(
                source,
                line_no,
                format!(
                    "row for `{word}` has {} values, expected {dim}",
                    values.len()
                ),
            ));
        }
        if entries.len() == count {
            return Err(Error::parse(
                source,
                line_no,
                format!("more rows than the {count} declared in the header"),
            ));
        }
        if entries.insert(word.clone(), Array1::from(values)).is_some() {
            return Err(Error::parse(
                source,
                line_no,
                format!("duplicate word `{word}`"),
            ));
        }
    }
    if entries.len() != count {
        return Err(Error::parse(
            source,
            last_line,
            format!("header declares {count} rows, found {}", entries.len()),
        ));
    }
    EmbeddingTable::new(dim, entries)
}

/// The stored vector, or zeros for out-of-vocabulary forms.
pub fn embed_token(table: &EmbeddingTable, form: &str) -> Array1<f64> {
    table
        .get(form)
        .cloned()
        .unwrap_or_else(|| Array1::zeros(table.dim))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TagKind {
    Pos,
    Ne,
    Deprel,
}

impl TagKind {
    fn column<'a>(&self, token: &'a Token) -> &'a str {
        match self {
            TagKind::Pos => &token.pos,
            TagKind::Ne => &token.ne,
            TagKind::Deprel => &token.deprel,
        }
    }

    pub fn code(self) -> u8 {
        match self {
            TagKind::Pos => 0,
            TagKind::Ne => 1,
            TagKind::Deprel => 2,
        }
    }

    pub fn from_code(code: u8) -> Option<TagKind> {
        match code {
            0 => Some(TagKind::Pos),
            1 => Some(TagKind::Ne),
            2 => Some(TagKind::Deprel),
            _ => None,
        }
    }
}

/// Ordered tag list; index 0 is always the unknown-tag slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TagInventory {
    kind: TagKind,
    symbols: Vec<String>,
    index: HashMap<String, usize>,
}

impl TagInventory {
    /// `symbols` must start with [`UNK`] and hold no duplicates.
    pub fn from_symbols(kind: TagKind, symbols: Vec<String>) -> Result<TagInventory> {
        if symbols.first().map(String::as_str) != Some(UNK) {
            return Err(Error::InvalidArgument(format!(
                "tag inventory must start with {UNK}"
            )));
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::InvalidArgument(format!("duplicate tag `{s}`")));
            }
        }
        Ok(TagInventory {
            kind,
            symbols,
            index,
        })
    }

    pub fn kind(&self) -> TagKind {
        self.kind
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn position(&self, tag: &str) -> usize {
        self.index.get(tag).copied().unwrap_or(0)
    }
}

pub fn build_inventory(corpus: &Corpus, kind: TagKind) -> TagInventory {
    let mut symbols = vec![UNK.to_string()];
    let mut seen: HashSet<&str> = HashSet::from([UNK]);
    for tweet in corpus.tweets() {
        for token in &tweet.tokens {
            let tag = kind.column(token);
            if seen.insert(tag) {
                symbols.push(tag.to_string());
            }
        }
    }
    TagInventory::from_symbols(kind, symbols).expect("symbols deduplicated above")
}

pub fn encode_tag(inventory: &TagInventory, tag: &str) -> Array1<f64> {
    let mut v = Array1::zeros(inventory.len());
    v[inventory.position(tag)] = 1.0;
    v
}

/// Relation one-hot followed by head direction: `[left, right, root]`.
pub fn encode_ds(inventory: &TagInventory, token: &Token, position: usize) -> Array1<f64> {
    let n = inventory.len();
    let mut v = Array1::zeros(n + 3);
    v[inventory.position(&token.deprel)] = 1.0;
    let direction = match token.head {
        None => 2,
        Some(h) if h < position => 0,
        Some(_) => 1,
    };
    v[n + direction] = 1.0;
    v
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FeatureFlags {
    pub pos: bool,
    pub ne: bool,
    pub ds: bool,
}

impl FeatureFlags {
    pub const NONE: FeatureFlags = FeatureFlags {
        pos: false,
        ne: false,
        ds: false,
    };
    pub const ALL: FeatureFlags = FeatureFlags {
        pos: true,
        ne: true,
        ds: true,
    };
}

/// Feature layout. A syntactic feature is enabled exactly when its inventory is present.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureConfig {
    pub window: usize,
    pub pos: Option<TagInventory>,
    pub ne: Option<TagInventory>,
    pub ds: Option<TagInventory>,
}

impl FeatureConfig {
    /// Embeddings only.
    pub fn embeddings_only(window: usize) -> Result<FeatureConfig> {
        let config = FeatureConfig {
            window,
            pos: None,
            ne: None,
            ds: None,
        };
        config.validate()?;
        Ok(config)
    }

    /// Freezes inventories for the enabled features from a training corpus.
    pub fn from_corpus(
        corpus: &Corpus,
        flags: FeatureFlags,
        window: usize,
    ) -> Result<FeatureConfig> {
        let config = FeatureConfig {
            window,
            pos: flags.pos.then(|| build_inventory(corpus, TagKind::Pos)),
            ne: flags.ne.then(|| build_inventory(corpus, TagKind::Ne)),
            ds: flags.ds.then(|| build_inventory(corpus, TagKind::Deprel)),
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.window == 0 || self.window.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "window must be odd and positive, got {}",
                self.window
            )));
        }
        let kinds = [
            (&self.pos, TagKind::Pos),
            (&self.ne, TagKind::Ne),
            (&self.ds, TagKind::Deprel),
        ];
        for (inv, kind) in kinds {
            if let Some(inv) = inv {
                if inv.kind() != kind {
                    return Err(Error::InvalidArgument(format!(
                        "inventory of kind {:?} used for {:?}",
                        inv.kind(),
                        kind
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn flags(&self) -> FeatureFlags {
        FeatureFlags {
            pos: self.pos.is_some(),
            ne: self.ne.is_some(),
            ds: self.ds.is_some(),
        }
    }

    /// Width of every `x_t` for embeddings of dimension `embed_dim`.
    pub fn input_dim(&self, embed_dim: usize) -> usize {
        self.window * embed_dim
            + self.pos.as_ref().map_or(0, TagInventory::len)
            + self.ne.as_ref().map_or(0, TagInventory::len)
            + self.ds.as_ref().map_or(0, |i| i.len() + 3)
    }
}

/// One row per token.
#[derive(Debug, Clone, PartialEq)]
pub struct InputSequence {
    pub vectors: Array2<f64>,
}

impl InputSequence {
    pub fn len(&self) -> usize {
        self.vectors.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.nrows() == 0
    }

    pub fn dim(&self) -> usize {
        self.vectors.ncols()
    }
}

pub fn build_input_sequence(
    tweet: &Tweet,
    table: &EmbeddingTable,
    config: &FeatureConfig,
) -> InputSequence {
    let d = table.dim();
    let half = config.window / 2;
    let n = tweet.len();
    let embedded: Vec<Array1<f64>> = tweet.forms().map(|f| embed_token(table, f)).collect();
    let mut vectors = Array2::zeros((n, config.input_dim(d)));

    for (t, mut row) in vectors.rows_mut().into_iter().enumerate() {
        for slot in 0..config.window {
            let j = t as isize + slot as isize - half as isize;
            if j >= 0 && (j as usize) < n {
                row.slice_mut(s![slot * d..(slot + 1) * d])
                    .assign(&embedded[j as usize]);
            }
        }
        let token = &tweet.tokens[t];
        let mut offset = config.window * d;
        let mut put = |v: Array1<f64>| {
            row.slice_mut(s![offset..offset + v.len()]).assign(&v);
            offset += v.len();
        };
        if let Some(inv) = &config.pos {
            put(encode_tag(inv, &token.pos));
        }
        if let Some(inv) = &config.ne {
            put(encode_tag(inv, &token.ne));
        }
        if let Some(inv) = &config.ds {
            put(encode_ds(inv, token, t));
        }
    }
    InputSequence { vectors }
}
