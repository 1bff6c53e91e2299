//! Single-layer tanh RNN baseline.

use ndarray::{Array1, Array2};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::jrnn::INIT_SCALE;
use super::math::{add_outer, softmax, step_logit_grad, step_loss};
use super::{
    check_dims, check_sequence, impl_param_set, init_uniform, LossParts, Objective, ParamSet,
    SequenceTagger, Targets,
};
use crate::error::Result;
use crate::features::InputSequence;

#[derive(Debug, Clone, PartialEq)]
pub struct RnnParams {
    pub w_in_h: Array2<f64>,
    pub w_h_h: Array2<f64>,
    pub b_h: Array1<f64>,
    pub w_h_y: Array2<f64>,
    pub b_y: Array1<f64>,
}

impl_param_set!(RnnParams; w_in_h, w_h_h, b_h, w_h_y, b_y);

impl RnnParams {
    pub fn zeros(input_dim: usize, hidden: usize, n_classes: usize) -> Result<RnnParams> {
        check_dims(&[input_dim, hidden, n_classes])?;
        Ok(RnnParams {
            w_in_h: Array2::zeros((hidden, input_dim)),
            w_h_h: Array2::zeros((hidden, hidden)),
            b_h: Array1::zeros(hidden),
            w_h_y: Array2::zeros((n_classes, hidden)),
            b_y: Array1::zeros(n_classes),
        })
    }

    pub fn hidden(&self) -> usize {
        self.w_h_h.nrows()
    }

    fn forward(&self, inputs: &InputSequence) -> (Vec<Array1<f64>>, Vec<Array1<f64>>) {
        let mut hs = Vec::with_capacity(inputs.len());
        let mut ys = Vec::with_capacity(inputs.len());
        let mut h_prev = Array1::zeros(self.hidden());
        for x in inputs.vectors.rows() {
            let h = (self.w_in_h.dot(&x) + self.w_h_h.dot(&h_prev) + &self.b_h).mapv(f64::tanh);
            ys.push(softmax(&(self.w_h_y.dot(&h) + &self.b_y)));
            h_prev = h.clone();
            hs.push(h);
        }
        (hs, ys)
    }
}

pub fn init_params(
    input_dim: usize,
    hidden: usize,
    n_classes: usize,
    seed: u64,
) -> Result<RnnParams> {
    let mut p = RnnParams::zeros(input_dim, hidden, n_classes)?;
    init_uniform(&mut p, INIT_SCALE, &mut ChaCha8Rng::seed_from_u64(seed));
    Ok(p)
}

fn tagging_only(j: f64) -> LossParts {
    LossParts {
        joint: j,
        importance: 0.0,
        tagging: j,
    }
}

impl SequenceTagger for RnnParams {
    fn input_dim(&self) -> usize {
        self.w_in_h.ncols()
    }

    fn n_classes(&self) -> usize {
        self.w_h_y.nrows()
    }

    fn tag_distributions(&self, inputs: &InputSequence) -> Result<Vec<Array1<f64>>> {
        check_sequence(inputs, self.input_dim(), None)?;
        Ok(self.forward(inputs).1)
    }

    fn loss(
        &self,
        inputs: &InputSequence,
        targets: &Targets,
        objective: Objective,
    ) -> Result<LossParts> {
        check_sequence(inputs, self.input_dim(), Some(targets))?;
        let (_, ys) = self.forward(inputs);
        if ys.is_empty() {
            return Ok(tagging_only(0.0));
        }
        let j = ys
            .iter()
            .zip(&targets.tags)
            .map(|(p, &y)| step_loss(p, y, objective.kind))
            .sum::<f64>()
            / ys.len() as f64;
        Ok(tagging_only(j))
    }

    fn loss_and_gradient(
        &self,
        inputs: &InputSequence,
        targets: &Targets,
        objective: Objective,
    ) -> Result<(LossParts, Self)> {
        let loss = self.loss(inputs, targets, objective)?;
        let (hs, ys) = self.forward(inputs);
        let mut g = self.zeros_like();
        let n = hs.len();
        if n == 0 {
            return Ok((loss, g));
        }
        let scale = 1.0 / n as f64;
        let zeros = Array1::zeros(self.hidden());
        let mut da_next: Array1<f64> = Array1::zeros(self.hidden());
        for t in (0..n).rev() {
            let h = &hs[t];
            let h_prev = if t > 0 { &hs[t - 1] } else { &zeros };
            let dz = step_logit_grad(&ys[t], targets.tags[t], objective.kind) * scale;
            add_outer(&mut g.w_h_y, &dz, h.view());
            g.b_y += &dz;
            let dh = self.w_h_y.t().dot(&dz) + self.w_h_h.t().dot(&da_next);
            let da = dh * &h.mapv(|v| 1.0 - v * v);
            add_outer(&mut g.w_in_h, &da, inputs.vectors.row(t));
            add_outer(&mut g.w_h_h, &da, h_prev.view());
            g.b_h += &da;
            da_next = da;
        }
        Ok((loss, g))
    }
}
