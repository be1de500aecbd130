//! Linear and nonlinear simultaneous protocols against the independent one.

use qmetro::fisher_bounds::{qcrb_independent, qcrb_linear, qcrb_nonlinear, qfim_linear_unchecked};
use qmetro::{Parity, StateParams};

fn main() -> qmetro::Result<()> {
    println!(
        "{:>6} {:>3} {:>12} {:>12} {:>12}",
        "|a|^2", "n", "independent", "linear", "nonlinear"
    );
    for x in [0.5, 1.0, 2.0, 5.0, 8.0] {
        for n in [0, 7] {
            let p = StateParams::from_alpha_sq(x, n, 5, Parity::Symmetric)?;
            println!(
                "{x:6.2} {n:3} {:12.6} {:12.6} {:12.6}",
                qcrb_independent(&p)?.value,
                qcrb_linear(&p)?.value,
                qcrb_nonlinear(&p)?.value
            );
        }
    }

    // the closed-form matrix is I*(diag-off) + J*off; its spectrum shows
    // where the linear bound has no matrix behind it
    let p = StateParams::from_alpha_sq(1.0, 1, 5, Parity::Symmetric)?;
    let fisher = qfim_linear_unchecked(&p)?;
    println!(
        "\nQFIM eigenvalues at |alpha|^2=1, n=1, d=5: {:.4?}",
        fisher.eigenvalues()
    );
    Ok(())
}
