//! Single-layer LSTM baseline.
//!
//! Gate rows are stacked as `[input; forget; output; candidate]` in `w_in`,
//! `w_h` and `b`:
//!
//! ```text
//! i = σ(z_i)  f = σ(z_f)  o = σ(z_o)  g = tanh(z_g)     z = w_in x_t + w_h h_{t-1} + b
//! c_t = f ⊙ c_{t-1} + i ⊙ g
//! h_t = o ⊙ tanh(c_t)
//! ```

use ndarray::{s, Array1, Array2};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::jrnn::INIT_SCALE;
use super::math::{add_outer, sigmoid, softmax, step_logit_grad, step_loss};
use super::{
    check_dims, check_sequence, impl_param_set, init_uniform, LossParts, Objective, ParamSet,
    SequenceTagger, Targets,
};
use crate::error::Result;
use crate::features::InputSequence;

#[derive(Debug, Clone, PartialEq)]
pub struct LstmParams {
    pub w_in: Array2<f64>,
    pub w_h: Array2<f64>,
    pub b_gates: Array1<f64>,
    pub w_h_y: Array2<f64>,
    pub b_y: Array1<f64>,
}

impl_param_set!(LstmParams; w_in, w_h, b_gates, w_h_y, b_y);

struct Step {
    i: Array1<f64>,
    f: Array1<f64>,
    o: Array1<f64>,
    g: Array1<f64>,
    c: Array1<f64>,
    tanh_c: Array1<f64>,
    h: Array1<f64>,
    y: Array1<f64>,
}

impl LstmParams {
    pub fn zeros(input_dim: usize, hidden: usize, n_classes: usize) -> Result<LstmParams> {
        check_dims(&[input_dim, hidden, n_classes])?;
        Ok(LstmParams {
            w_in: Array2::zeros((4 * hidden, input_dim)),
            w_h: Array2::zeros((4 * hidden, hidden)),
            b_gates: Array1::zeros(4 * hidden),
            w_h_y: Array2::zeros((n_classes, hidden)),
            b_y: Array1::zeros(n_classes),
        })
    }

    pub fn hidden(&self) -> usize {
        self.w_h.ncols()
    }

    fn forward(&self, inputs: &InputSequence) -> Vec<Step> {
        let hd = self.hidden();
        let mut steps: Vec<Step> = Vec::with_capacity(inputs.len());
        let mut h_prev = Array1::zeros(hd);
        let mut c_prev = Array1::zeros(hd);
        for x in inputs.vectors.rows() {
            let z = self.w_in.dot(&x) + self.w_h.dot(&h_prev) + &self.b_gates;
            let i = z.slice(s![0..hd]).mapv(sigmoid);
            let f = z.slice(s![hd..2 * hd]).mapv(sigmoid);
            let o = z.slice(s![2 * hd..3 * hd]).mapv(sigmoid);
            let g = z.slice(s![3 * hd..]).mapv(f64::tanh);
            let c = &f * &c_prev + &i * &g;
            let tanh_c = c.mapv(f64::tanh);
            let h = &o * &tanh_c;
            let y = softmax(&(self.w_h_y.dot(&h) + &self.b_y));
            h_prev = h.clone();
            c_prev = c.clone();
            steps.push(Step {
                i,
                f,
                o,
                g,
                c,
                tanh_c,
                h,
                y,
            });
        }
        steps
    }
}

pub fn init_params(
    input_dim: usize,
    hidden: usize,
    n_classes: usize,
    seed: u64,
) -> Result<LstmParams> {
    let mut p = LstmParams::zeros(input_dim, hidden, n_classes)?;
    init_uniform(&mut p, INIT_SCALE, &mut ChaCha8Rng::seed_from_u64(seed));
    Ok(p)
}

impl SequenceTagger for LstmParams {
    fn input_dim(&self) -> usize {
        self.w_in.ncols()
    }

    fn n_classes(&self) -> usize {
        self.w_h_y.nrows()
    }

    fn tag_distributions(&self, inputs: &InputSequence) -> Result<Vec<Array1<f64>>> {
        check_sequence(inputs, self.input_dim(), None)?;
        Ok(self.forward(inputs).into_iter().map(|s| s.y).collect())
    }

    fn loss(
        &self,
        inputs: &InputSequence,
        targets: &Targets,
        objective: Objective,
    ) -> Result<LossParts> {
        check_sequence(inputs, self.input_dim(), Some(targets))?;
        let steps = self.forward(inputs);
        let j = if steps.is_empty() {
            0.0
        } else {
            steps
                .iter()
                .zip(&targets.tags)
                .map(|(s, &y)| step_loss(&s.y, y, objective.kind))
                .sum::<f64>()
                / steps.len() as f64
        };
        Ok(LossParts {
            joint: j,
            importance: 0.0,
            tagging: j,
        })
    }

    fn loss_and_gradient(
        &self,
        inputs: &InputSequence,
        targets: &Targets,
        objective: Objective,
    ) -> Result<(LossParts, Self)> {
        let loss = self.loss(inputs, targets, objective)?;
        let steps = self.forward(inputs);
        let mut grad = self.zeros_like();
        let n = steps.len();
        if n == 0 {
            return Ok((loss, grad));
        }
        let hd = self.hidden();
        let scale = 1.0 / n as f64;
        let zeros = Array1::zeros(hd);
        let mut dh_next: Array1<f64> = Array1::zeros(hd);
        let mut dc_next: Array1<f64> = Array1::zeros(hd);
        let mut dz = Array1::zeros(4 * hd);

        for t in (0..n).rev() {
            let st = &steps[t];
            let (h_prev, c_prev) = if t > 0 {
                (&steps[t - 1].h, &steps[t - 1].c)
            } else {
                (&zeros, &zeros)
            };
            let dy = step_logit_grad(&st.y, targets.tags[t], objective.kind) * scale;
            add_outer(&mut grad.w_h_y, &dy, st.h.view());
            grad.b_y += &dy;

            let dh = self.w_h_y.t().dot(&dy) + &dh_next;
            let dc = &dh * &st.o * &st.tanh_c.mapv(|v| 1.0 - v * v) + &dc_next;
            let d_o = &dh * &st.tanh_c;
            let d_i = &dc * &st.g;
            let d_g = &dc * &st.i;
            let d_f = &dc * c_prev;

            dz.slice_mut(s![0..hd])
                .assign(&(&d_i * &st.i.mapv(|v| v * (1.0 - v))));
            dz.slice_mut(s![hd..2 * hd])
                .assign(&(&d_f * &st.f.mapv(|v| v * (1.0 - v))));
            dz.slice_mut(s![2 * hd..3 * hd])
                .assign(&(&d_o * &st.o.mapv(|v| v * (1.0 - v))));
            dz.slice_mut(s![3 * hd..])
                .assign(&(&d_g * &st.g.mapv(|v| 1.0 - v * v)));

            add_outer(&mut grad.w_in, &dz, inputs.vectors.row(t));
            add_outer(&mut grad.w_h, &dz, h_prev.view());
            grad.b_gates += &dz;

            dh_next = self.w_h.t().dot(&dz);
            dc_next = dc * &st.f;
        }
        Ok((loss, grad))
    }
}
