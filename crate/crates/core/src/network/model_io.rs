//! Versioned binary model container.
//!
//! Layout, all integers and floats little-endian:
//!
//! ```text
//! magic        4 bytes  "JRKP"
//! version      u16
//! arch u8, scheme u8, loss u8
//! dims         u32 x4   input, hidden1, hidden2 (0 for baselines), classes
//! embed_dim    u32
//! window       u32
//! config       alpha f64, lr f64, hidden1 u32, hidden2 u32, max_epochs u32,
//!              patience u32, clip f64, seed u64
//! inventories  u8 count, then per inventory: kind u8, u32 n, n x (u32 len, utf-8)
//! history      u32 n, n x (epoch u32, loss f64, P f64, R f64, F1 f64, Acc f64)
//! tensors      u32 n, n x (u32 len, len x f64)
//! ```

use std::fs;
use std::path::Path;

use super::jrnn::{JrnnDims, JrnnParams};
use super::lstm::LstmParams;
use super::rnn::RnnParams;
use super::{Arch, EpochRecord, LossKind, Model, Network, ParamSet, TrainConfig};
use crate::corpus::LabelScheme;
use crate::error::{Error, Result};
use crate::eval::MetricsReport;
use crate::features::{FeatureConfig, TagInventory, TagKind};

pub const MODEL_MAGIC: &[u8; 4] = b"JRKP";
pub const MODEL_VERSION: u16 = 1;

struct Writer(Vec<u8>);

impl Writer {
    fn u8(&mut self, v: u8) {
        self.0.push(v);
    }
    fn u16(&mut self, v: u16) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }
    fn u32(&mut self, v: usize) {
        self.0.extend_from_slice(&(v as u32).to_le_bytes());
    }
    fn u64(&mut self, v: u64) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }
    fn f64(&mut self, v: f64) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }
    fn str(&mut self, s: &str) {
        self.u32(s.len());
        self.0.extend_from_slice(s.as_bytes());
    }
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.buf.len() - self.pos < n {
            return Err(Error::CorruptModel(format!(
                "unexpected end of data at byte {}",
                self.pos
            )));
        }
        let s = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }
    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }
    fn u16(&mut self) -> Result<u16> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
    }
    fn u32(&mut self) -> Result<usize> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()) as usize)
    }
    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
    fn str(&mut self) -> Result<String> {
        let n = self.u32()?;
        String::from_utf8(self.take(n)?.to_vec())
            .map_err(|_| Error::CorruptModel("invalid UTF-8 in tag inventory".into()))
    }
}

fn scheme_code(s: LabelScheme) -> u8 {
    match s {
        LabelScheme::Kp3 => 3,
        LabelScheme::Kp5 => 5,
    }
}

fn loss_code(k: LossKind) -> u8 {
    match k {
        LossKind::CrossEntropy => 0,
        LossKind::SquaredEuclidean => 1,
    }
}

pub fn write_model(model: &Model) -> Vec<u8> {
    let mut w = Writer(Vec::new());
    w.0.extend_from_slice(MODEL_MAGIC);
    w.u16(MODEL_VERSION);
    w.u8(model.network.arch().code());
    w.u8(scheme_code(model.scheme));
    w.u8(loss_code(model.config.loss_kind));
    let (input, h1, h2, classes) = model.network.dims();
    for d in [input, h1, h2, classes] {
        w.u32(d);
    }
    w.u32(model.embedding_dim);
    w.u32(model.features.window);

    let c = &model.config;
    w.f64(c.alpha);
    w.f64(c.learning_rate);
    w.u32(c.hidden1);
    w.u32(c.hidden2);
    w.u32(c.max_epochs);
    w.u32(c.patience);
    w.f64(c.grad_clip_norm);
    w.u64(c.seed);

    let inventories: Vec<&TagInventory> =
        [&model.features.pos, &model.features.ne, &model.features.ds]
            .into_iter()
            .flatten()
            .collect();
    w.u8(inventories.len() as u8);
    for inv in inventories {
        w.u8(inv.kind().code());
        w.u32(inv.len());
        for s in inv.symbols() {
            w.str(s);
        }
    }

    w.u32(model.history.len());
    for r in &model.history {
        w.u32(r.epoch);
        w.f64(r.train_loss);
        let m = r.validation;
        for v in [m.precision, m.recall, m.f1, m.accuracy] {
            w.f64(v);
        }
    }

    let tensors = model.network.tensors();
    w.u32(tensors.len());
    for t in tensors {
        w.u32(t.len());
        for &x in t {
            w.f64(x);
        }
    }
    w.0
}

pub fn read_model(bytes: &[u8]) -> Result<Model> {
    let mut r = Reader { buf: bytes, pos: 0 };
    if r.take(4)? != MODEL_MAGIC {
        return Err(Error::CorruptModel("bad magic bytes".into()));
    }
    let version = r.u16()?;
    if version != MODEL_VERSION {
        return Err(Error::ModelVersion {
            found: version,
            expected: MODEL_VERSION,
        });
    }
    let arch = Arch::from_code(r.u8()?)
        .ok_or_else(|| Error::CorruptModel("unknown architecture code".into()))?;
    let scheme = match r.u8()? {
        3 => LabelScheme::Kp3,
        5 => LabelScheme::Kp5,
        _ => return Err(Error::CorruptModel("unknown label scheme code".into())),
    };
    let loss_kind = match r.u8()? {
        0 => LossKind::CrossEntropy,
        1 => LossKind::SquaredEuclidean,
        _ => return Err(Error::CorruptModel("unknown loss code".into())),
    };
    let (input, h1, h2, classes) = (r.u32()?, r.u32()?, r.u32()?, r.u32()?);
    let embedding_dim = r.u32()?;
    let window = r.u32()?;

    let config = TrainConfig {
        arch,
        alpha: r.f64()?,
        learning_rate: r.f64()?,
        hidden1: r.u32()?,
        hidden2: r.u32()?,
        max_epochs: r.u32()?,
        patience: r.u32()?,
        grad_clip_norm: r.f64()?,
        loss_kind,
        seed: r.u64()?,
        scheme,
    };

    let mut features = FeatureConfig {
        window,
        pos: None,
        ne: None,
        ds: None,
    };
    let n_inv = r.u8()?;
    for _ in 0..n_inv {
        let kind = TagKind::from_code(r.u8()?)
            .ok_or_else(|| Error::CorruptModel("unknown inventory kind".into()))?;
        let n = r.u32()?;
        let symbols = (0..n).map(|_| r.str()).collect::<Result<Vec<_>>>()?;
        let inv = TagInventory::from_symbols(kind, symbols)
            .map_err(|e| Error::CorruptModel(e.to_string()))?;
        let slot = match kind {
            TagKind::Pos => &mut features.pos,
            TagKind::Ne => &mut features.ne,
            TagKind::Deprel => &mut features.ds,
        };
        *slot = Some(inv);
    }
    features
        .validate()
        .map_err(|e| Error::CorruptModel(e.to_string()))?;
    if features.input_dim(embedding_dim) != input {
        return Err(Error::CorruptModel(format!(
            "feature layout gives width {}, network expects {input}",
            features.input_dim(embedding_dim)
        )));
    }

    let n_hist = r.u32()?;
    let mut history = Vec::with_capacity(n_hist.min(1 << 16));
    for _ in 0..n_hist {
        history.push(EpochRecord {
            epoch: r.u32()?,
            train_loss: r.f64()?,
            validation: MetricsReport {
                precision: r.f64()?,
                recall: r.f64()?,
                f1: r.f64()?,
                accuracy: r.f64()?,
            },
        });
    }

    let shape_err = |e: Error| Error::CorruptModel(e.to_string());
    let mut network = match arch {
        Arch::Jrnn => Network::Jrnn(
            JrnnParams::zeros(JrnnDims {
                input,
                hidden1: h1,
                hidden2: h2,
                classes,
            })
            .map_err(shape_err)?,
        ),
        Arch::Rnn => Network::Rnn(RnnParams::zeros(input, h1, classes).map_err(shape_err)?),
        Arch::Lstm => Network::Lstm(LstmParams::zeros(input, h1, classes).map_err(shape_err)?),
    };
    if classes != scheme.n_classes() {
        return Err(Error::CorruptModel(format!(
            "{classes} output classes for scheme {scheme}"
        )));
    }
    let n_tensors = r.u32()?;
    if n_tensors != network.tensors().len() {
        return Err(Error::CorruptModel(format!(
            "expected {} tensors, found {n_tensors}",
            network.tensors().len()
        )));
    }
    for t in network.tensors_mut() {
        let len = r.u32()?;
        if len != t.len() {
            return Err(Error::CorruptModel(format!(
                "tensor of {len} values where {} expected",
                t.len()
            )));
        }
        for x in t.iter_mut() {
            *x = r.f64()?;
        }
    }
    if r.pos != bytes.len() {
        return Err(Error::CorruptModel(format!(
            "{} trailing bytes",
            bytes.len() - r.pos
        )));
    }

    Ok(Model {
        network,
        features,
        embedding_dim,
        scheme,
        config,
        history,
    })
}

pub fn save_model(model: &Model, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, write_model(model)).map_err(|e| Error::io(path, e))
}

pub fn load_model(path: impl AsRef<Path>) -> Result<Model> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    read_model(&bytes)
}
