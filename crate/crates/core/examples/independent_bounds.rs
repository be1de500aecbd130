//! Estimating each phase on its own: bound, limits and photon budget.

use qmetro::fisher_bounds::{
    heisenberg_limit, independent_phase_uncertainty, mean_photon_pacs, qcrb_independent,
    standard_quantum_limit,
};
use qmetro::{Parity, StateParams};

fn main() -> qmetro::Result<()> {
    let nbar = mean_photon_pacs(4.0, 4);
    println!("|alpha|^2=4, n=4: mean photons {nbar:.4}");
    println!("  Heisenberg limit        {:.4}", heisenberg_limit(nbar)?);
    println!(
        "  standard quantum limit  {:.4}",
        standard_quantum_limit(nbar)?
    );
    let single = StateParams::from_alpha_sq(4.0, 4, 1, Parity::Symmetric)?;
    println!(
        "  phase uncertainty       {:.4}",
        independent_phase_uncertainty(&single)?
    );

    println!("\ntotal variance for d phases at |alpha|^2=4");
    for d in [1, 4, 8, 12] {
        let row: Vec<String> = [0, 4, 10]
            .iter()
            .map(|&n| {
                let p = StateParams::from_alpha_sq(4.0, n, d, Parity::Symmetric).unwrap();
                format!("n={n}: {:.4}", qcrb_independent(&p).unwrap().value)
            })
            .collect();
        println!("  d={d:2}  {}", row.join("  "));
    }
    Ok(())
}
