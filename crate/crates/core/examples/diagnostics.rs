//! Summarise where the closed forms and the brute-force oracle part ways.

use qmetro::diagnostics::compute_diagnostics;

fn main() {
    let report = compute_diagnostics();
    let s = &report.summary;
    println!(
        "{} points, {} with an indefinite closed-form QFIM",
        s.points, s.indefinite_closed_form
    );
    println!(
        "max |linear - Tr F^-1| / Tr F^-1: {:.3e}",
        s.max_linear_vs_trace_inverse_deviation
    );
    println!("max compatibility: {:.1e}", s.max_compatibility);
    println!(
        "max |joint mass - 1|: {:.1e}",
        s.max_joint_normalization_error
    );
    for p in report.points.iter().take(4) {
        let oracle = &p.oracle[0];
        println!(
            "|alpha|^2={:.1} n={} d={} l={}: closed diag {:.4} vs oracle {:.4}",
            p.alpha_sq,
            p.n,
            p.d,
            p.l,
            p.closed_form_diagonal.unwrap_or(f64::NAN),
            oracle.diagonal_mean
        );
    }
}
