use ndarray::{Array1, Array2, ArrayView1};

use super::LossKind;

pub fn softmax(z: &Array1<f64>) -> Array1<f64> {
    let max = z.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let e = z.mapv(|v| (v - max).exp());
    let sum = e.sum();
    e / sum
}

pub fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// Index of the largest entry; ties go to the lowest index.
pub fn argmax(v: &Array1<f64>) -> usize {
    let mut best = 0;
    for (i, &x) in v.iter().enumerate() {
        if x > v[best] {
            best = i;
        }
    }
    best
}

/// Distance between a predicted distribution and the one-hot `target`.
pub fn step_loss(p: &Array1<f64>, target: usize, kind: LossKind) -> f64 {
    match kind {
        LossKind::CrossEntropy => -p[target].ln(),
        LossKind::SquaredEuclidean => p
            .iter()
            .enumerate()
            .map(|(k, &pk)| {
                let d = pk - if k == target { 1.0 } else { 0.0 };
                d * d
            })
            .sum(),
    }
}

/// Derivative of [`step_loss`] with respect to the softmax logits.
pub fn step_logit_grad(p: &Array1<f64>, target: usize, kind: LossKind) -> Array1<f64> {
    match kind {
        LossKind::CrossEntropy => {
            let mut g = p.clone();
            g[target] -= 1.0;
            g
        }
        LossKind::SquaredEuclidean => {
            // dL/dp = 2 (p - e); pulled back through the softmax Jacobian.
            let mut dp = p * 2.0;
            dp[target] -= 2.0;
            let dot = dp.dot(p);
            Array1::from_iter(p.iter().zip(dp.iter()).map(|(&pj, &gj)| pj * (gj - dot)))
        }
    }
}

/// `g += a ⊗ b`.
pub fn add_outer(g: &mut Array2<f64>, a: &Array1<f64>, b: ArrayView1<f64>) {
    for (row, &ai) in g.rows_mut().into_iter().zip(a.iter()) {
        if ai != 0.0 {
            let mut row = row;
            row.scaled_add(ai, &b);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn softmax_of_zeros_is_uniform() {
        let p = softmax(&Array1::zeros(3));
        for &x in &p {
            assert!((x - 1.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn softmax_is_stable_for_large_logits() {
        let p = softmax(&array![1000.0, 1000.0]);
        assert_eq!(p, array![0.5, 0.5]);
    }

    #[test]
    fn argmax_tie_goes_low() {
        assert_eq!(argmax(&array![0.2, 0.4, 0.4]), 1);
        assert_eq!(argmax(&array![0.5, 0.5]), 0);
    }

    #[test]
    fn logit_gradients_match_differences() {
        let z = array![0.3, -0.7, 1.1];
        for kind in [LossKind::CrossEntropy, LossKind::SquaredEuclidean] {
            let g = step_logit_grad(&softmax(&z), 2, kind);
            for k in 0..3 {
                let mut zp = z.clone();
                let mut zm = z.clone();
                zp[k] += 1e-6;
                zm[k] -= 1e-6;
                let num =
                    (step_loss(&softmax(&zp), 2, kind) - step_loss(&softmax(&zm), 2, kind)) / 2e-6;
                assert!((num - g[k]).abs() < 1e-8, "{kind:?} {k}: {num} vs {}", g[k]);
            }
        }
    }
}
