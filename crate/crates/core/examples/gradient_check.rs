//! Finite-difference check of the analytic gradients of every architecture.
//!
//! ```bash
//! cargo run --release -p jrnn-keyphrase --example gradient_check
//! ```

use jrnn_keyphrase::network::{grad_check, Arch, GradCheckConfig, LossKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (name, arch, classes) in [
        ("JRNN3", Arch::Jrnn, 3),
        ("JRNN5", Arch::Jrnn, 5),
        ("RNN", Arch::Rnn, 3),
        ("LSTM", Arch::Lstm, 3),
    ] {
        for loss in [LossKind::CrossEntropy, LossKind::SquaredEuclidean] {
            let report = grad_check(&GradCheckConfig {
                arch,
                n_classes: classes,
                loss_kind: loss,
                ..GradCheckConfig::default()
            })?;
            println!(
                "{name:<6} {:<7} {:>4} params  max rel error {:.2e} ({})",
                loss.name(),
                report.n_params,
                report.max_relative_error,
                report.worst_tensor
            );
        }
    }

    let broken = grad_check(&GradCheckConfig {
        corrupt_analytic: true,
        ..GradCheckConfig::default()
    })?;
    println!(
        "corrupted gradient -> max rel error {:.2e}",
        broken.max_relative_error
    );
    Ok(())
}
