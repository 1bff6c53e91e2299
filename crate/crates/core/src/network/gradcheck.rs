//! Central finite-difference verification of the analytic gradients.

use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Arch, LossKind, Network, Objective, ParamSet, SequenceTagger, Targets};
use crate::error::{Error, Result};
use crate::features::InputSequence;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GradCheckConfig {
    pub arch: Arch,
    pub input_dim: usize,
    pub hidden1: usize,
    /// Ignored by the single-layer architectures.
    pub hidden2: usize,
    pub n_classes: usize,
    pub sequence_length: usize,
    pub epsilon: f64,
    pub alpha: f64,
    pub loss_kind: LossKind,
    pub seed: u64,
    /// Perturbs the analytic gradient; only useful for testing the harness itself.
    pub corrupt_analytic: bool,
}

impl Default for GradCheckConfig {
    fn default() -> Self {
        GradCheckConfig {
            arch: Arch::Jrnn,
            input_dim: 8,
            hidden1: 6,
            hidden2: 6,
            n_classes: 3,
            sequence_length: 5,
            epsilon: 1e-5,
            alpha: 0.5,
            loss_kind: LossKind::CrossEntropy,
            seed: 42,
            corrupt_analytic: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GradCheckReport {
    pub max_relative_error: f64,
    /// Tensor holding the worst entry.
    pub worst_tensor: &'static str,
    pub n_params: usize,
}

/// Scale of the random parameters used for checking. Larger than the training
/// initialization so that every gradient entry is comfortably above round-off.
const CHECK_SCALE: f64 = 0.5;

/// Builds a random network, inputs and targets from `seed`, then compares
/// every analytic gradient entry with `(J(θ+ε) − J(θ−ε)) / 2ε`. The error of
/// one entry is `|a − n| / max(|a| + |n|, 1e-12)`.
pub fn grad_check(config: &GradCheckConfig) -> Result<GradCheckReport> {
    if config.input_dim > 16 || config.hidden1 > 16 || config.hidden2 > 16 {
        return Err(Error::InvalidArgument(
            "gradient check dimensions are limited to 16".into(),
        ));
    }
    if !(config.epsilon > 0.0) {
        return Err(Error::InvalidArgument("epsilon must be positive".into()));
    }
    let objective = Objective::new(config.alpha, config.loss_kind)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let mut network = Network::init(
        config.arch,
        config.input_dim,
        config.hidden1,
        config.hidden2,
        config.n_classes,
        0,
    )?;
    for t in network.tensors_mut() {
        for x in t.iter_mut() {
            *x = rng.gen_range(-CHECK_SCALE..=CHECK_SCALE);
        }
    }
    let inputs = InputSequence {
        vectors: Array2::from_shape_fn((config.sequence_length, config.input_dim), |_| {
            rng.gen_range(-1.0..=1.0)
        }),
    };
    let tags: Vec<usize> = (0..config.sequence_length)
        .map(|_| rng.gen_range(0..config.n_classes))
        .collect();
    let targets = Targets {
        importance: tags.iter().map(|&c| (c != 0) as usize).collect(),
        tags,
    };

    let (_, mut analytic) = network.loss_and_gradient(&inputs, &targets, objective)?;
    if config.corrupt_analytic {
        for t in analytic.tensors_mut() {
            if let Some(x) = t.first_mut() {
                *x = *x * 1.5 + 1e-2;
            }
        }
    }

    let names = network.tensor_names();
    let shapes: Vec<usize> = network.tensors().iter().map(|t| t.len()).collect();
    let eps = config.epsilon;
    let mut report = GradCheckReport {
        max_relative_error: 0.0,
        worst_tensor: names[0],
        n_params: network.num_params(),
    };
    for (k, &len) in shapes.iter().enumerate() {
        for i in 0..len {
            let original = network.tensors()[k][i];
            network.tensors_mut()[k][i] = original + eps;
            let plus = network.loss(&inputs, &targets, objective)?.joint;
            network.tensors_mut()[k][i] = original - eps;
            let minus = network.loss(&inputs, &targets, objective)?.joint;
            network.tensors_mut()[k][i] = original;

            let numeric = (plus - minus) / (2.0 * eps);
            let a = analytic.tensors()[k][i];
            let err = (a - numeric).abs() / (a.abs() + numeric.abs()).max(1e-12);
            if err > report.max_relative_error {
                report.max_relative_error = err;
                report.worst_tensor = names[k];
            }
        }
    }
    Ok(report)
}
