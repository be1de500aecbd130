//! Homodyne readout: amplitudes, the joint density and error propagation.

use qmetro::homodyne::{
    error_propagation, quad_pacs, variance_homodyne, MarginalParams, PhaseProbe, QuadratureGrid,
};
use qmetro::{Complex64, Parity, StateParams};

fn main() -> qmetro::Result<()> {
    let alpha = Complex64::new(1.0, 0.0);
    for p in [-1.0, 0.0, 1.0] {
        println!("<p|alpha=1, n=2> at p={p:4}: {:.6}", quad_pacs(p, alpha, 2));
    }

    // a single coherent mode gives 1/(4|alpha|^2 cos^2 phi)
    let probe = PhaseProbe::single_mode(Complex64::new(2.0, 0.0), 0);
    let grid = QuadratureGrid::sized_for(4.0 * 2f64.sqrt(), 1, 1.0)?;
    println!(
        "coherent probe, |alpha|^2=4: {:.8} (expect 0.0625)",
        error_propagation(&probe, 0.0, &grid)?
    );

    let params = StateParams::from_alpha_sq(1.0, 1, 2, Parity::Symmetric)?;
    let probe = PhaseProbe::ghz(&params)?;
    let grid = QuadratureGrid::for_joint(&params)?;
    let moments = probe.joint_moments(0.4, &grid);
    // the GHZ probe has definite total parity, so its mean quadrature never moves
    println!(
        "GHZ probe at phi=0.4: mass {:.10}, <p_tot> {:.2e}",
        moments.norm, moments.mean
    );
    match variance_homodyne(&MarginalParams::new(params, 0.4)?, &grid) {
        Ok(b) => println!("variance {:.6}", b.value),
        Err(e) => println!("variance: {e}"),
    }
    Ok(())
}
