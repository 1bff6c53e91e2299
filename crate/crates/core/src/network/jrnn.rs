//! Joint-layer recurrent network.
//!
//! ```text
//! h1_t = tanh(W_in_h1 x_t + W_h1_h1 h1_{t-1} + b_h1)      h1_0 = 0
//! h2_t = tanh(W_h1_h2 h1_t + W_h2_h2 h2_{t-1} + b_h2)     h2_0 = 0
//! y1_t = softmax(W_h1_y1 h1_t + b_y1)                    2 classes
//! y2_t = softmax(W_h2_y2 h2_t + b_y2)                    3 or 5 classes
//! J    = alpha * mean_t dist(y1_t, .) + (1 - alpha) * mean_t dist(y2_t, .)
//! ```

use ndarray::{Array1, Array2};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::math::{add_outer, softmax, step_logit_grad, step_loss};
use super::{
    check_dims, check_sequence, impl_param_set, init_uniform, LossKind, LossParts, Objective,
    SequenceTagger, Targets,
};
use crate::error::{Error, Result};
use crate::features::InputSequence;

pub const INIT_SCALE: f64 = 0.08;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JrnnDims {
    pub input: usize,
    pub hidden1: usize,
    pub hidden2: usize,
    pub classes: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct JrnnParams {
    pub w_in_h1: Array2<f64>,
    pub w_h1_h1: Array2<f64>,
    pub b_h1: Array1<f64>,
    pub w_h1_y1: Array2<f64>,
    pub b_y1: Array1<f64>,
    pub w_h1_h2: Array2<f64>,
    pub w_h2_h2: Array2<f64>,
    pub b_h2: Array1<f64>,
    pub w_h2_y2: Array2<f64>,
    pub b_y2: Array1<f64>,
}

impl_param_set!(JrnnParams; w_in_h1, w_h1_h1, b_h1, w_h1_y1, b_y1, w_h1_h2, w_h2_h2, b_h2, w_h2_y2, b_y2);

impl JrnnParams {
    pub fn zeros(dims: JrnnDims) -> Result<JrnnParams> {
        let JrnnDims {
            input,
            hidden1: h1,
            hidden2: h2,
            classes,
        } = dims;
        check_dims(&[input, h1, h2, classes])?;
        Ok(JrnnParams {
            w_in_h1: Array2::zeros((h1, input)),
            w_h1_h1: Array2::zeros((h1, h1)),
            b_h1: Array1::zeros(h1),
            w_h1_y1: Array2::zeros((2, h1)),
            b_y1: Array1::zeros(2),
            w_h1_h2: Array2::zeros((h2, h1)),
            w_h2_h2: Array2::zeros((h2, h2)),
            b_h2: Array1::zeros(h2),
            w_h2_y2: Array2::zeros((classes, h2)),
            b_y2: Array1::zeros(classes),
        })
    }

    pub fn dims(&self) -> JrnnDims {
        JrnnDims {
            input: self.w_in_h1.ncols(),
            hidden1: self.w_in_h1.nrows(),
            hidden2: self.w_h1_h2.nrows(),
            classes: self.w_h2_y2.nrows(),
        }
    }
}

/// Weights uniform in ±0.08 from a seeded generator, biases zero.
pub fn init_params(
    input_dim: usize,
    h1_size: usize,
    h2_size: usize,
    n_classes: usize,
    seed: u64,
) -> Result<JrnnParams> {
    let mut p = JrnnParams::zeros(JrnnDims {
        input: input_dim,
        hidden1: h1_size,
        hidden2: h2_size,
        classes: n_classes,
    })?;
    init_uniform(&mut p, INIT_SCALE, &mut ChaCha8Rng::seed_from_u64(seed));
    Ok(p)
}

/// Activations of one forward pass, indexed by time step.
#[derive(Debug, Clone, PartialEq)]
pub struct ForwardCache {
    pub pre_h1: Vec<Array1<f64>>,
    pub h1: Vec<Array1<f64>>,
    pub pre_h2: Vec<Array1<f64>>,
    pub h2: Vec<Array1<f64>>,
    pub y1: Vec<Array1<f64>>,
    pub y2: Vec<Array1<f64>>,
}

impl ForwardCache {
    pub fn len(&self) -> usize {
        self.h1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h1.is_empty()
    }
}

pub fn forward(params: &JrnnParams, inputs: &InputSequence) -> Result<ForwardCache> {
    let dims = params.dims();
    check_sequence(inputs, dims.input, None)?;
    let n = inputs.len();
    let mut cache = ForwardCache {
        pre_h1: Vec::with_capacity(n),
        h1: Vec::with_capacity(n),
        pre_h2: Vec::with_capacity(n),
        h2: Vec::with_capacity(n),
        y1: Vec::with_capacity(n),
        y2: Vec::with_capacity(n),
    };
    let mut h1_prev = Array1::zeros(dims.hidden1);
    let mut h2_prev = Array1::zeros(dims.hidden2);
    for x in inputs.vectors.rows() {
        let a1 = params.w_in_h1.dot(&x) + params.w_h1_h1.dot(&h1_prev) + &params.b_h1;
        let h1 = a1.mapv(f64::tanh);
        let a2 = params.w_h1_h2.dot(&h1) + params.w_h2_h2.dot(&h2_prev) + &params.b_h2;
        let h2 = a2.mapv(f64::tanh);
        cache
            .y1
            .push(softmax(&(params.w_h1_y1.dot(&h1) + &params.b_y1)));
        cache
            .y2
            .push(softmax(&(params.w_h2_y2.dot(&h2) + &params.b_y2)));
        cache.pre_h1.push(a1);
        cache.pre_h2.push(a2);
        h1_prev = h1.clone();
        h2_prev = h2.clone();
        cache.h1.push(h1);
        cache.h2.push(h2);
    }
    Ok(cache)
}

fn mean_loss(ps: &[Array1<f64>], targets: &[usize], kind: LossKind) -> f64 {
    if ps.is_empty() {
        return 0.0;
    }
    ps.iter()
        .zip(targets)
        .map(|(p, &y)| step_loss(p, y, kind))
        .sum::<f64>()
        / ps.len() as f64
}

/// Per-layer costs averaged over time and their `alpha` mix.
pub fn loss_joint(
    cache: &ForwardCache,
    targets1: &[usize],
    targets2: &[usize],
    alpha: f64,
    kind: LossKind,
) -> Result<LossParts> {
    let objective = Objective::new(alpha, kind)?;
    if targets1.len() != cache.len() || targets2.len() != cache.len() {
        return Err(Error::Dimension(format!(
            "targets of length {}/{} for a sequence of {} steps",
            targets1.len(),
            targets2.len(),
            cache.len()
        )));
    }
    let j1 = mean_loss(&cache.y1, targets1, objective.kind);
    let j2 = mean_loss(&cache.y2, targets2, objective.kind);
    Ok(LossParts {
        joint: alpha * j1 + (1.0 - alpha) * j2,
        importance: j1,
        tagging: j2,
    })
}

/// Exact gradient of [`loss_joint`] by backpropagation through time over the full sequence.
#[allow(clippy::too_many_arguments)]
pub fn backward(
    params: &JrnnParams,
    inputs: &InputSequence,
    cache: &ForwardCache,
    targets1: &[usize],
    targets2: &[usize],
    alpha: f64,
    kind: LossKind,
) -> Result<JrnnParams> {
    let dims = params.dims();
    check_sequence(inputs, dims.input, None)?;
    Objective::new(alpha, kind)?;
    let n = cache.len();
    if inputs.len() != n || targets1.len() != n || targets2.len() != n {
        return Err(Error::Dimension("sequence lengths disagree".into()));
    }
    let mut g = JrnnParams::zeros(dims)?;
    if n == 0 {
        return Ok(g);
    }
    let w1 = alpha / n as f64;
    let w2 = (1.0 - alpha) / n as f64;

    // gradients flowing into a1_{t+1} and a2_{t+1}
    let mut da1_next: Array1<f64> = Array1::zeros(dims.hidden1);
    let mut da2_next: Array1<f64> = Array1::zeros(dims.hidden2);
    let zeros1 = Array1::zeros(dims.hidden1);
    let zeros2 = Array1::zeros(dims.hidden2);

    for t in (0..n).rev() {
        let h1 = &cache.h1[t];
        let h2 = &cache.h2[t];
        let h1_prev = if t > 0 { &cache.h1[t - 1] } else { &zeros1 };
        let h2_prev = if t > 0 { &cache.h2[t - 1] } else { &zeros2 };

        let dz1 = step_logit_grad(&cache.y1[t], targets1[t], kind) * w1;
        let dz2 = step_logit_grad(&cache.y2[t], targets2[t], kind) * w2;

        add_outer(&mut g.w_h1_y1, &dz1, h1.view());
        g.b_y1 += &dz1;
        add_outer(&mut g.w_h2_y2, &dz2, h2.view());
        g.b_y2 += &dz2;

        let dh2 = params.w_h2_y2.t().dot(&dz2) + params.w_h2_h2.t().dot(&da2_next);
        let da2 = dh2 * &h2.mapv(|v| 1.0 - v * v);
        add_outer(&mut g.w_h1_h2, &da2, h1.view());
        add_outer(&mut g.w_h2_h2, &da2, h2_prev.view());
        g.b_h2 += &da2;

        let dh1 = params.w_h1_y1.t().dot(&dz1)
            + params.w_h1_h2.t().dot(&da2)
            + params.w_h1_h1.t().dot(&da1_next);
        let da1 = dh1 * &h1.mapv(|v| 1.0 - v * v);
        add_outer(&mut g.w_in_h1, &da1, inputs.vectors.row(t));
        add_outer(&mut g.w_h1_h1, &da1, h1_prev.view());
        g.b_h1 += &da1;

        da1_next = da1;
        da2_next = da2;
    }
    Ok(g)
}

impl SequenceTagger for JrnnParams {
    fn input_dim(&self) -> usize {
        self.w_in_h1.ncols()
    }

    fn n_classes(&self) -> usize {
        self.w_h2_y2.nrows()
    }

    fn tag_distributions(&self, inputs: &InputSequence) -> Result<Vec<Array1<f64>>> {
        Ok(forward(self, inputs)?.y2)
    }

    fn loss(
        &self,
        inputs: &InputSequence,
        targets: &Targets,
        objective: Objective,
    ) -> Result<LossParts> {
        check_sequence(inputs, self.input_dim(), Some(targets))?;
        let cache = forward(self, inputs)?;
        loss_joint(
            &cache,
            &targets.importance,
            &targets.tags,
            objective.alpha,
            objective.kind,
        )
    }

    fn loss_and_gradient(
        &self,
        inputs: &InputSequence,
        targets: &Targets,
        objective: Objective,
    ) -> Result<(LossParts, Self)> {
        check_sequence(inputs, self.input_dim(), Some(targets))?;
        let cache = forward(self, inputs)?;
        let loss = loss_joint(
            &cache,
            &targets.importance,
            &targets.tags,
            objective.alpha,
            objective.kind,
        )?;
        let grad = backward(
            self,
            inputs,
            &cache,
            &targets.importance,
            &targets.tags,
            objective.alpha,
            objective.kind,
        )?;
        Ok((loss, grad))
    }
}
