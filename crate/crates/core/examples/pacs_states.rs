//! Photon-added coherent states in a truncated Fock basis.

use qmetro::fisher_bounds::mean_photon_pacs;
use qmetro::states::{adequate_cutoff, ghz_norm, ghz_pacs_state, pacs_fock};
use qmetro::{Complex64, Parity, StateParams};

fn main() -> qmetro::Result<()> {
    let alpha = Complex64::new(2.0, 0.0);
    for n in [0, 1, 4, 10] {
        let cutoff = adequate_cutoff(alpha, n);
        let state = pacs_fock(alpha, n, cutoff)?;
        let mean: f64 = state
            .coefficients()
            .iter()
            .enumerate()
            .map(|(k, c)| k as f64 * c.norm_sqr())
            .sum();
        println!(
            "n={n:2} cutoff={cutoff:3} norm={:.12} <a^dag a>={mean:.6} closed form={:.6}",
            state.norm_sqr(),
            mean_photon_pacs(4.0, n)
        );
    }

    let params = StateParams::from_alpha_sq(1.0, 2, 3, Parity::Antisymmetric)?;
    let ghz = ghz_pacs_state(&params, None)?;
    println!(
        "GHZ superposition: {} modes, {} branches, norm {:.12}, N_GHZ = {:.6}",
        ghz.mode_count(),
        ghz.branches().len(),
        ghz.norm_sqr(),
        ghz_norm(&params)?
    );
    Ok(())
}
