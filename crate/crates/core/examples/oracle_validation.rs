//! Cross-check the closed-form single-phase QFI against a brute-force
//! Fock-space computation.

use qmetro::fisher_bounds::qfi_independent;
use qmetro::fock_oracle::{
    compatibility_check, generators_on_modes, qfim_numeric, ModeObservable, Spectrum,
};
use qmetro::states::ghz_pacs_state;
use qmetro::{Parity, StateParams};

fn main() -> qmetro::Result<()> {
    for x in [0.5, 1.0, 4.0] {
        for n in [0, 1, 4] {
            let p = StateParams::from_alpha_sq(x, n, 2, Parity::Symmetric)?;
            let state = ghz_pacs_state(&p, None)?;
            let numeric = qfim_numeric(&state, &[ModeObservable::number(0)])?.get(0, 0);
            let closed = qfi_independent(&p)?;
            println!(
                "|alpha|^2={x:3} n={n}  closed {closed:14.9}  oracle {numeric:14.9}  rel {:.1e}",
                (closed - numeric).abs() / numeric
            );
        }
    }

    let p = StateParams::from_alpha_sq(1.0, 4, 5, Parity::Symmetric)?;
    let state = ghz_pacs_state(&p, None)?;
    let gens = generators_on_modes(1..=5, Spectrum::Number);
    let fisher = qfim_numeric(&state, &gens)?;
    println!(
        "\nFock-space QFIM, d=5: diag {:.6} off {:.6}",
        fisher.get(0, 0),
        fisher.get(0, 1)
    );
    println!(
        "max |Im<H_p H_q>| = {:.1e}",
        compatibility_check(&state, &generators_on_modes(0..=5, Spectrum::Number))?
    );
    Ok(())
}
