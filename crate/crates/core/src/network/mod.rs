//! Recurrent taggers trained with hand-written backpropagation through time.
//!
//! [`jrnn`] is the two-layer joint network: the first recurrent layer predicts
//! whether a word belongs to a keyphrase, the second (stacked on the first)
//! predicts the keyphrase tag, and the two losses are mixed by `alpha`.
//! [`rnn`] and [`lstm`] are single-layer baselines that predict the tag directly.
//! All three implement [`SequenceTagger`] and are wrapped by [`Network`].

pub mod gradcheck;
pub mod jrnn;
pub mod lstm;
pub(crate) mod math;
mod model_io;
mod optim;
pub mod rnn;
mod train;

use std::fmt;
use std::str::FromStr;

use ndarray::Array1;
use rand::Rng;

use crate::corpus::Label;
use crate::error::{Error, Result};
use crate::features::InputSequence;

pub use gradcheck::{grad_check, GradCheckConfig};
pub use jrnn::{JrnnDims, JrnnParams};
pub use lstm::LstmParams;
pub use model_io::{load_model, read_model, save_model, write_model, MODEL_MAGIC, MODEL_VERSION};
pub use optim::{global_norm, sgd_step};
pub use rnn::RnnParams;
pub use train::{train, EpochRecord, Model, TrainConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LossKind {
    CrossEntropy,
    SquaredEuclidean,
}

impl LossKind {
    pub fn name(self) -> &'static str {
        match self {
            LossKind::CrossEntropy => "xent",
            LossKind::SquaredEuclidean => "euclid",
        }
    }
}

impl FromStr for LossKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "xent" | "cross-entropy" => Ok(LossKind::CrossEntropy),
            "euclid" | "squared-euclidean" => Ok(LossKind::SquaredEuclidean),
            other => Err(Error::InvalidArgument(format!(
                "unknown loss kind `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Objective {
    pub alpha: f64,
    pub kind: LossKind,
}

impl Objective {
    pub fn new(alpha: f64, kind: LossKind) -> Result<Objective> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InvalidArgument(format!(
                "alpha {alpha} outside [0, 1]"
            )));
        }
        Ok(Objective { alpha, kind })
    }
}

/// `joint = alpha * importance + (1 - alpha) * tagging` for the joint network;
/// single-layer taggers report `importance = 0` and `joint = tagging`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossParts {
    pub joint: f64,
    pub importance: f64,
    pub tagging: f64,
}

/// Per-step class targets for one sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Targets {
    /// Tag class index for the output layer.
    pub tags: Vec<usize>,
    /// 1 for keyphrase words, 0 otherwise (first layer of the joint network).
    pub importance: Vec<usize>,
}

impl Targets {
    pub fn from_labels(labels: &[Label]) -> Targets {
        Targets {
            tags: labels.iter().map(|l| l.index()).collect(),
            importance: labels
                .iter()
                .map(|l| l.to_kp3().is_keyphrase() as usize)
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }
}

/// A fixed collection of named real tensors, visited in declaration order.
pub trait ParamSet: Clone {
    fn tensor_names(&self) -> &'static [&'static str];
    fn tensors(&self) -> Vec<&[f64]>;
    fn tensors_mut(&mut self) -> Vec<&mut [f64]>;

    fn num_params(&self) -> usize {
        self.tensors().iter().map(|t| t.len()).sum()
    }

    fn zeros_like(&self) -> Self {
        let mut z = self.clone();
        for t in z.tensors_mut() {
            t.fill(0.0);
        }
        z
    }

    /// `self += scale * other`.
    fn add_scaled(&mut self, other: &Self, scale: f64) {
        for (a, b) in self.tensors_mut().into_iter().zip(other.tensors()) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += scale * y;
            }
        }
    }

    fn is_finite(&self) -> bool {
        self.tensors()
            .iter()
            .all(|t| t.iter().all(|x| x.is_finite()))
    }
}

/// Weights uniform in `[-scale, scale]`, biases (tensors named `b_*`) zero.
pub(crate) fn init_uniform<P: ParamSet, R: Rng>(params: &mut P, scale: f64, rng: &mut R) {
    let names = params.tensor_names();
    for (name, t) in names.iter().zip(params.tensors_mut()) {
        if name.starts_with("b_") {
            t.fill(0.0);
        } else {
            for x in t.iter_mut() {
                *x = rng.gen_range(-scale..=scale);
            }
        }
    }
}

macro_rules! impl_param_set {
    ($ty:ty; $($field:ident),+ $(,)?) => {
        impl $crate::network::ParamSet for $ty {
            fn tensor_names(&self) -> &'static [&'static str] {
                &[$(stringify!($field)),+]
            }

            fn tensors(&self) -> Vec<&[f64]> {
                vec![$(self.$field.as_slice().expect("standard layout")),+]
            }

            fn tensors_mut(&mut self) -> Vec<&mut [f64]> {
                vec![$(self.$field.as_slice_mut().expect("standard layout")),+]
            }
        }
    };
}
pub(crate) use impl_param_set;

/// Common interface of the joint network and the baselines.
pub trait SequenceTagger: ParamSet {
    fn input_dim(&self) -> usize;

    fn n_classes(&self) -> usize;

    /// Distribution over tag classes at every step.
    fn tag_distributions(&self, inputs: &InputSequence) -> Result<Vec<Array1<f64>>>;

    fn loss(
        &self,
        inputs: &InputSequence,
        targets: &Targets,
        objective: Objective,
    ) -> Result<LossParts>;

    /// Loss and its exact gradient, shaped like `self`.
    fn loss_and_gradient(
        &self,
        inputs: &InputSequence,
        targets: &Targets,
        objective: Objective,
    ) -> Result<(LossParts, Self)>;

    /// Arg-max class per step, lowest index on ties.
    fn predict_classes(&self, inputs: &InputSequence) -> Result<Vec<usize>> {
        Ok(self
            .tag_distributions(inputs)?
            .iter()
            .map(math::argmax)
            .collect())
    }
}

pub(crate) fn check_sequence(
    inputs: &InputSequence,
    input_dim: usize,
    targets: Option<&Targets>,
) -> Result<()> {
    if inputs.dim() != input_dim {
        return Err(Error::Dimension(format!(
            "input width {} does not match network input {input_dim}",
            inputs.dim()
        )));
    }
    if let Some(t) = targets {
        if t.tags.len() != inputs.len() || t.importance.len() != inputs.len() {
            return Err(Error::Dimension(format!(
                "{} targets for a sequence of {} steps",
                t.tags.len(),
                inputs.len()
            )));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Arch {
    Jrnn,
    Rnn,
    Lstm,
}

impl Arch {
    pub fn code(self) -> u8 {
        match self {
            Arch::Jrnn => 0,
            Arch::Rnn => 1,
            Arch::Lstm => 2,
        }
    }

    pub fn from_code(code: u8) -> Option<Arch> {
        match code {
            0 => Some(Arch::Jrnn),
            1 => Some(Arch::Rnn),
            2 => Some(Arch::Lstm),
            _ => None,
        }
    }
}

impl fmt::Display for Arch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Arch::Jrnn => "jrnn",
            Arch::Rnn => "rnn",
            Arch::Lstm => "lstm",
        })
    }
}

impl FromStr for Arch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "jrnn" => Ok(Arch::Jrnn),
            "rnn" => Ok(Arch::Rnn),
            "lstm" => Ok(Arch::Lstm),
            other => Err(Error::InvalidArgument(format!(
                "unknown architecture `{other}`"
            ))),
        }
    }
}

/// Any of the three taggers.
#[derive(Debug, Clone, PartialEq)]
pub enum Network {
    Jrnn(JrnnParams),
    Rnn(RnnParams),
    Lstm(LstmParams),
}

macro_rules! dispatch {
    ($self:expr, $p:ident => $body:expr) => {
        match $self {
            Network::Jrnn($p) => $body,
            Network::Rnn($p) => $body,
            Network::Lstm($p) => $body,
        }
    };
}

impl Network {
    /// Freshly initialized network of the given architecture. `hidden2` is
    /// ignored by the single-layer baselines.
    pub fn init(
        arch: Arch,
        input_dim: usize,
        hidden1: usize,
        hidden2: usize,
        n_classes: usize,
        seed: u64,
    ) -> Result<Network> {
        Ok(match arch {
            Arch::Jrnn => Network::Jrnn(jrnn::init_params(
                input_dim, hidden1, hidden2, n_classes, seed,
            )?),
            Arch::Rnn => Network::Rnn(rnn::init_params(input_dim, hidden1, n_classes, seed)?),
            Arch::Lstm => Network::Lstm(lstm::init_params(input_dim, hidden1, n_classes, seed)?),
        })
    }

    pub fn arch(&self) -> Arch {
        match self {
            Network::Jrnn(_) => Arch::Jrnn,
            Network::Rnn(_) => Arch::Rnn,
            Network::Lstm(_) => Arch::Lstm,
        }
    }

    /// (input, hidden1, hidden2, classes); hidden2 is 0 for single-layer taggers.
    pub fn dims(&self) -> (usize, usize, usize, usize) {
        match self {
            Network::Jrnn(p) => {
                let d = p.dims();
                (d.input, d.hidden1, d.hidden2, d.classes)
            }
            Network::Rnn(p) => (p.input_dim(), p.hidden(), 0, p.n_classes()),
            Network::Lstm(p) => (p.input_dim(), p.hidden(), 0, p.n_classes()),
        }
    }
}

impl ParamSet for Network {
    fn tensor_names(&self) -> &'static [&'static str] {
        dispatch!(self, p => p.tensor_names())
    }

    fn tensors(&self) -> Vec<&[f64]> {
        dispatch!(self, p => p.tensors())
    }

    fn tensors_mut(&mut self) -> Vec<&mut [f64]> {
        dispatch!(self, p => p.tensors_mut())
    }
}

impl SequenceTagger for Network {
    fn input_dim(&self) -> usize {
        dispatch!(self, p => p.input_dim())
    }

    fn n_classes(&self) -> usize {
        dispatch!(self, p => p.n_classes())
    }

    fn tag_distributions(&self, inputs: &InputSequence) -> Result<Vec<Array1<f64>>> {
        dispatch!(self, p => p.tag_distributions(inputs))
    }

    fn loss(
        &self,
        inputs: &InputSequence,
        targets: &Targets,
        objective: Objective,
    ) -> Result<LossParts> {
        dispatch!(self, p => p.loss(inputs, targets, objective))
    }

    fn loss_and_gradient(
        &self,
        inputs: &InputSequence,
        targets: &Targets,
        objective: Objective,
    ) -> Result<(LossParts, Self)> {
        Ok(match self {
            Network::Jrnn(p) => {
                let (l, g) = p.loss_and_gradient(inputs, targets, objective)?;
                (l, Network::Jrnn(g))
            }
            Network::Rnn(p) => {
                let (l, g) = p.loss_and_gradient(inputs, targets, objective)?;
                (l, Network::Rnn(g))
            }
            Network::Lstm(p) => {
                let (l, g) = p.loss_and_gradient(inputs, targets, objective)?;
                (l, Network::Lstm(g))
            }
        })
    }
}

pub(crate) fn check_dims(dims: &[usize]) -> Result<()> {
    if dims.contains(&0) {
        return Err(Error::InvalidArgument(format!(
            "network dimensions must be positive, got {dims:?}"
        )));
    }
    Ok(())
}
