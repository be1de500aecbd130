//! NOON and entangled coherent states as baselines for simultaneous estimation.

use qmetro::fock_oracle::{reference_bounds, ReferenceConstruction};

fn main() -> qmetro::Result<()> {
    for d in [2, 5] {
        for construction in [
            ReferenceConstruction::Noon { photons: 10 },
            ReferenceConstruction::Ecs { alpha_sq: 2.0 },
        ] {
            let b = reference_bounds(construction, d)?;
            println!(
                "{:4} d={d}  N={:.3}  linear {:.5} vs {:.5}  nonlinear {:.5} vs {:.5}",
                construction.label(),
                b.mean_photons,
                b.simultaneous_linear,
                b.independent_linear,
                b.simultaneous_nonlinear,
                b.independent_nonlinear
            );
        }
    }
    Ok(())
}
