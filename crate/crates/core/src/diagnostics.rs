//! Closed form vs brute force, point by point.
//!
//! The report puts side by side the quantities whose agreement is not
//! guaranteed: the linear total-variance formula against the trace of the
//! inverse closed-form QFIM, the closed-form QFIM against the Fock-space QFIM
//! for two generator placements, and the printed slice marginal against the
//! one built from exact amplitudes.

use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::fisher_bounds::{
    qcrb_linear, qfim_linear_unchecked, trace_inverse_unchecked, FisherMatrix,
};
use crate::fock_oracle::{compatibility_check, generators_on_modes, qfim_numeric, Spectrum};
use crate::homodyne::{slice_mass, MarginalParams, MarginalVariant, PhaseProbe, QuadratureGrid};
use crate::states::{ghz_pacs_state, Parity, StateParams};
use crate::sweep::{write_output, SweepError};
use crate::Result;

/// Default grid: `|alpha|^2 x n x d x l`.
pub const ALPHA_SQ_GRID: [f64; 3] = [0.5, 1.0, 4.0];
pub const N_GRID: [u32; 3] = [0, 1, 4];
pub const D_GRID: [usize; 2] = [2, 5];
pub const L_GRID: [u8; 2] = [0, 1];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleComparison {
    /// Which modes carry the `d` generators.
    pub placement: &'static str,
    pub trace_inverse: Option<f64>,
    pub diagonal_mean: f64,
    pub offdiagonal_mean: f64,
    pub diagonal_deviation: f64,
    pub offdiagonal_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagnosticPoint {
    pub alpha_sq: f64,
    pub n: u32,
    pub d: usize,
    pub l: u8,
    pub qcrb_linear: Option<f64>,
    pub closed_form_trace_inverse: Option<f64>,
    pub linear_vs_trace_inverse_deviation: Option<f64>,
    pub closed_form_min_eigenvalue: Option<f64>,
    pub closed_form_diagonal: Option<f64>,
    pub closed_form_offdiagonal: Option<f64>,
    pub oracle: Vec<OracleComparison>,
    pub compatibility: Option<f64>,
    pub joint_normalization: Option<f64>,
    pub slice_mass_oracle: Option<f64>,
    pub slice_mass_printed: Option<f64>,
    pub errors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagnosticsSummary {
    pub points: usize,
    pub indefinite_closed_form: usize,
    pub max_linear_vs_trace_inverse_deviation: f64,
    pub max_compatibility: f64,
    pub max_joint_normalization_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagnosticsReport {
    pub summary: DiagnosticsSummary,
    pub points: Vec<DiagnosticPoint>,
}

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn record<T>(errors: &mut Vec<String>, what: &str, value: Result<T>) -> Option<T> {
    value.map_err(|e| errors.push(format!("{what}: {e}"))).ok()
}

fn oracle_comparison(
    placement: &'static str,
    fisher: &FisherMatrix,
    closed: Option<(f64, f64)>,
) -> OracleComparison {
    let d = fisher.dim();
    let diagonal_mean = (0..d).map(|p| fisher.get(p, p)).sum::<f64>() / d as f64;
    let off: Vec<f64> = (0..d)
        .flat_map(|p| (0..d).filter(move |&q| q != p).map(move |q| (p, q)))
        .map(|(p, q)| fisher.get(p, q))
        .collect();
    let offdiagonal_mean = if off.is_empty() {
        0.0
    } else {
        off.iter().sum::<f64>() / off.len() as f64
    };
    let (diag, offd) = closed.unwrap_or((f64::NAN, f64::NAN));
    OracleComparison {
        placement,
        trace_inverse: trace_inverse_unchecked(fisher).ok(),
        diagonal_mean,
        offdiagonal_mean,
        diagonal_deviation: relative(diag, diagonal_mean),
        offdiagonal_deviation: relative(offd, offdiagonal_mean),
    }
}

pub fn diagnose_point(params: &StateParams) -> DiagnosticPoint {
    let mut errors = Vec::new();
    let d = params.d;
    let qcrb = record(
        &mut errors,
        "qcrb_linear",
        qcrb_linear(params).map(|b| b.value),
    );
    let closed = record(
        &mut errors,
        "closed-form QFIM",
        qfim_linear_unchecked(params),
    );
    let closed_trace = closed.as_ref().and_then(|f| {
        record(
            &mut errors,
            "closed-form trace inverse",
            trace_inverse_unchecked(f),
        )
    });
    let closed_entries = closed
        .as_ref()
        .map(|f| (f.get(0, 0), if d > 1 { f.get(0, 1) } else { 0.0 }));

    let mut oracle = Vec::new();
    let mut compatibility = None;
    if let Some(state) = record(&mut errors, "Fock state", ghz_pacs_state(params, None)) {
        for (placement, modes) in [("modes_1_to_d", 1..d + 1), ("modes_0_to_d_minus_1", 0..d)] {
            let gens = generators_on_modes(modes, Spectrum::Number);
            if let Some(f) = record(&mut errors, placement, qfim_numeric(&state, &gens)) {
                oracle.push(oracle_comparison(placement, &f, closed_entries));
            }
        }
        compatibility = record(
            &mut errors,
            "compatibility",
            compatibility_check(&state, &generators_on_modes(0..=d, Spectrum::Number)),
        );
    }

    let marginal = MarginalParams {
        state: *params,
        phi: 0.0,
    };
    let joint = QuadratureGrid::for_joint(params)
        .and_then(|grid| Ok(PhaseProbe::ghz(params)?.joint_moments(0.0, &grid).norm));
    let slice = |variant| {
        QuadratureGrid::for_slice(params).and_then(|grid| slice_mass(&marginal, &grid, variant))
    };

    DiagnosticPoint {
        alpha_sq: params.alpha_sq(),
        n: params.n,
        d,
        l: params.parity.index(),
        qcrb_linear: qcrb,
        closed_form_trace_inverse: closed_trace,
        linear_vs_trace_inverse_deviation: qcrb.zip(closed_trace).map(|(a, b)| relative(a, b)),
        closed_form_min_eigenvalue: closed.as_ref().map(|f| f.eigenvalues()[0]),
        closed_form_diagonal: closed_entries.map(|e| e.0),
        closed_form_offdiagonal: closed_entries.map(|e| e.1),
        oracle,
        compatibility,
        joint_normalization: record(&mut errors, "joint normalisation", joint),
        slice_mass_oracle: record(&mut errors, "oracle slice", slice(MarginalVariant::Oracle)),
        slice_mass_printed: record(
            &mut errors,
            "printed slice",
            slice(MarginalVariant::Printed),
        ),
        errors,
    }
}

fn default_grid() -> Vec<StateParams> {
    let mut grid = Vec::new();
    for &alpha_sq in &ALPHA_SQ_GRID {
        for &n in &N_GRID {
            for &d in &D_GRID {
                for &l in &L_GRID {
                    let parity = if l == 0 {
                        Parity::Symmetric
                    } else {
                        Parity::Antisymmetric
                    };
                    grid.push(
                        StateParams::from_alpha_sq(alpha_sq, n, d, parity)
                            .expect("grid parameters are valid"),
                    );
                }
            }
        }
    }
    grid
}

pub fn compute_diagnostics() -> DiagnosticsReport {
    let points: Vec<DiagnosticPoint> = default_grid().par_iter().map(diagnose_point).collect();
    let max = |f: &dyn Fn(&DiagnosticPoint) -> Option<f64>| {
        points.iter().filter_map(f).fold(0.0, f64::max)
    };
    let summary = DiagnosticsSummary {
        points: points.len(),
        indefinite_closed_form: points
            .iter()
            .filter(|p| p.closed_form_min_eigenvalue.is_some_and(|e| e < 0.0))
            .count(),
        max_linear_vs_trace_inverse_deviation: max(&|p| p.linear_vs_trace_inverse_deviation),
        max_compatibility: max(&|p| p.compatibility),
        max_joint_normalization_error: max(&|p| p.joint_normalization.map(|v| (v - 1.0).abs())),
    };
    DiagnosticsReport { summary, points }
}

/// Computes the report and writes it as JSON to `out` (`-` for stdout).
pub fn run_diagnostics(out: &Path) -> std::result::Result<DiagnosticsReport, SweepError> {
    let report = compute_diagnostics();
    let mut bytes = serde_json::to_vec_pretty(&report).expect("report serialises");
    bytes.push(b'\n');
    write_output(&bytes, out)?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point_report() {
        let params = StateParams::from_alpha_sq(1.0, 1, 2, Parity::Symmetric).unwrap();
        let point = diagnose_point(&params);
        assert!(point.errors.is_empty(), "{:?}", point.errors);
        assert!(point.linear_vs_trace_inverse_deviation.is_some());
        assert!(point.compatibility.unwrap() <= 1e-10);
        assert!((point.joint_normalization.unwrap() - 1.0).abs() <= 1e-8);
        assert_eq!(point.oracle.len(), 2);
        // Placing a generator on the photon-added mode changes the matrix.
        let a = &point.oracle[0];
        let b = &point.oracle[1];
        assert!((a.diagonal_mean - b.diagonal_mean).abs() > 1e-6);
    }
}
