use super::ParamSet;
use crate::error::{Error, Result};

/// L2 norm of all tensors concatenated.
pub fn global_norm<P: ParamSet>(p: &P) -> f64 {
    p.tensors()
        .iter()
        .flat_map(|t| t.iter())
        .map(|x| x * x)
        .sum::<f64>()
        .sqrt()
}

/// Plain SGD with global-norm clipping: gradients whose norm exceeds
/// `grad_clip_norm` are rescaled to that norm before `params -= lr * grads`.
/// Returns the norm of the applied (post-clipping) gradient.
pub fn sgd_step<P: ParamSet>(
    params: &mut P,
    grads: &P,
    learning_rate: f64,
    grad_clip_norm: f64,
) -> Result<f64> {
    if !(learning_rate > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "learning rate must be positive, got {learning_rate}"
        )));
    }
    if !(grad_clip_norm > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "gradient clip norm must be positive, got {grad_clip_norm}"
        )));
    }
    let norm = global_norm(grads);
    let scale = if norm > grad_clip_norm {
        grad_clip_norm / norm
    } else {
        1.0
    };
    params.add_scaled(grads, -learning_rate * scale);
    Ok(norm * scale)
}
