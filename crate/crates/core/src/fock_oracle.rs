//! Brute-force expectation values and QFIMs from truncated Fock states.
//!
//! Every observable in scope is diagonal in the Fock basis, so for a
//! [`BranchProductState`] `sum_b w_b prod_m |m_b>` an expectation reduces to
//! `sum_{a,b} conj(w_a) w_b prod_m <m_a| O_m |m_b>`. Nothing here relies on
//! the closed forms in [`crate::fisher_bounds`]; the two are checked against
//! each other in the test suites.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fisher_bounds::{qcrb_trace_inverse, FisherMatrix};
use crate::states::{ecs_state, noon_state, BranchProductState};

/// Diagonal action `k -> f(k)` on the Fock basis.
#[derive(Debug, Clone, Copy)]
pub enum Spectrum {
    /// `a^dag a`
    Number,
    /// `(a^dag a)^2`
    NumberSquared,
    Custom(fn(usize) -> f64),
}

impl Spectrum {
    pub fn eval(&self, k: usize) -> f64 {
        match self {
            Spectrum::Number => k as f64,
            Spectrum::NumberSquared => (k * k) as f64,
            Spectrum::Custom(f) => f(k),
        }
    }
}

/// A Fock-diagonal observable acting on one mode.
#[derive(Debug, Clone, Copy)]
pub struct ModeObservable {
    pub mode: usize,
    pub spectrum: Spectrum,
}

impl ModeObservable {
    pub fn number(mode: usize) -> Self {
        Self {
            mode,
            spectrum: Spectrum::Number,
        }
    }

    pub fn number_squared(mode: usize) -> Self {
        Self {
            mode,
            spectrum: Spectrum::NumberSquared,
        }
    }
}

/// `n_1, ..., n_d` (or their squares): one generator per non-reference mode.
pub fn generators_on_modes(
    modes: impl IntoIterator<Item = usize>,
    spectrum: Spectrum,
) -> Vec<ModeObservable> {
    modes
        .into_iter()
        .map(|mode| ModeObservable { mode, spectrum })
        .collect()
}

/// `<psi| prod obs |psi>`, unnormalised.
pub fn branch_expectation(state: &BranchProductState, obs: &[ModeObservable]) -> Result<Complex64> {
    let modes = state.mode_count();
    if let Some(bad) = obs.iter().find(|o| o.mode >= modes) {
        return Err(Error::IndexOutOfRange {
            index: bad.mode,
            modes,
        });
    }
    let spectrum_on = |m: usize, k: usize| -> f64 {
        obs.iter()
            .filter(|o| o.mode == m)
            .map(|o| o.spectrum.eval(k))
            .product()
    };
    let branches = state.branches();
    let mut total = Complex64::new(0.0, 0.0);
    for a in branches {
        for b in branches {
            let mut term = a.weight.conj() * b.weight;
            for (m, (ma, mb)) in a.modes.iter().zip(&b.modes).enumerate() {
                term *= ma.diagonal_element(mb, |k| spectrum_on(m, k));
                if term == Complex64::new(0.0, 0.0) {
                    break;
                }
            }
            total += term;
        }
    }
    Ok(total)
}

/// Second-moment matrix `<H_p H_q>` and means `<H_p>`, normalised by `<psi|psi>`.
fn moments(
    state: &BranchProductState,
    generators: &[ModeObservable],
) -> Result<(DMatrix<Complex64>, Vec<Complex64>)> {
    let norm = state.norm_sqr();
    let d = generators.len();
    let mut means = Vec::with_capacity(d);
    for g in generators {
        means.push(branch_expectation(state, std::slice::from_ref(g))? / norm);
    }
    let mut second = DMatrix::from_element(d, d, Complex64::new(0.0, 0.0));
    for p in 0..d {
        for q in p..d {
            let v = branch_expectation(state, &[generators[p], generators[q]])? / norm;
            second[(p, q)] = v;
            second[(q, p)] = v;
        }
    }
    Ok((second, means))
}

/// `F_pq = 4 (<H_p H_q> - <H_p><H_q>)` for commuting Fock-diagonal generators.
pub fn qfim_numeric(
    state: &BranchProductState,
    generators: &[ModeObservable],
) -> Result<FisherMatrix> {
    if generators.is_empty() {
        return Err(Error::InvalidParameter {
            name: "generators",
            reason: "at least one generator is required".into(),
        });
    }
    let (second, means) = moments(state, generators)?;
    let d = generators.len();
    Ok(FisherMatrix::Dense(DMatrix::from_fn(d, d, |p, q| {
        4.0 * (second[(p, q)] - means[p] * means[q]).re
    })))
}

/// `max_{p,q} |Im <H_p H_q>|`; vanishes for commuting Hermitian generators.
pub fn compatibility_check(
    state: &BranchProductState,
    generators: &[ModeObservable],
) -> Result<f64> {
    let (second, _) = moments(state, generators)?;
    Ok(second.iter().map(|z| z.im.abs()).fold(0.0, f64::max))
}

/// Total mean photon number `sum_m <n_m>`.
pub fn total_mean_photons(state: &BranchProductState) -> Result<f64> {
    let norm = state.norm_sqr();
    let mut total = 0.0;
    for m in 0..state.mode_count() {
        total += branch_expectation(state, &[ModeObservable::number(m)])?.re / norm;
    }
    Ok(total)
}

/// Which reference state family to compare against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReferenceConstruction {
    /// Generalised NOON state with `photons` photons in total.
    Noon { photons: usize },
    /// Entangled coherent state `sum_k |alpha>_k |0>_rest` with real `alpha`.
    Ecs { alpha_sq: f64 },
}

impl ReferenceConstruction {
    pub fn label(&self) -> &'static str {
        match self {
            ReferenceConstruction::Noon { .. } => "noon",
            ReferenceConstruction::Ecs { .. } => "ecs",
        }
    }

    pub fn state(&self, d: usize) -> Result<BranchProductState> {
        match *self {
            ReferenceConstruction::Noon { photons } => noon_state(photons, d, None),
            ReferenceConstruction::Ecs { alpha_sq } => {
                ecs_state(Complex64::new(alpha_sq.sqrt(), 0.0), d, None)
            }
        }
    }
}

/// Oracle bounds for a reference construction.
///
/// Simultaneous bounds are `Tr(F^{-1})` of the `(d+1)`-mode state with
/// generators on modes `1..=d`. Independent bounds split the same total mean
/// photon number evenly over `d` two-mode probes of the same family, each
/// estimating one phase: `d / F_probe`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceBounds {
    pub mean_photons: f64,
    pub simultaneous_linear: f64,
    pub simultaneous_nonlinear: f64,
    pub independent_linear: f64,
    pub independent_nonlinear: f64,
}

pub fn reference_bounds(construction: ReferenceConstruction, d: usize) -> Result<ReferenceBounds> {
    let state = construction.state(d)?;
    let mean_photons = total_mean_photons(&state)?;
    let simultaneous = |spectrum| -> Result<f64> {
        let gens = generators_on_modes(1..=d, spectrum);
        Ok(qcrb_trace_inverse(&qfim_numeric(&state, &gens)?)?.value)
    };
    let probe = equal_resource_probe(construction, mean_photons, d)?;
    let independent = |spectrum| -> Result<f64> {
        let gens = generators_on_modes([1], spectrum);
        let f = qfim_numeric(&probe, &gens)?.get(0, 0);
        if !(f > 0.0) {
            return Err(Error::DivisionByZero("probe QFI"));
        }
        Ok(d as f64 / f)
    };
    Ok(ReferenceBounds {
        mean_photons,
        simultaneous_linear: simultaneous(Spectrum::Number)?,
        simultaneous_nonlinear: simultaneous(Spectrum::NumberSquared)?,
        independent_linear: independent(Spectrum::Number)?,
        independent_nonlinear: independent(Spectrum::NumberSquared)?,
    })
}

/// Two-mode probe of the same family carrying `total / d` mean photons.
fn equal_resource_probe(
    construction: ReferenceConstruction,
    total: f64,
    d: usize,
) -> Result<BranchProductState> {
    let target = total / d as f64;
    match construction {
        ReferenceConstruction::Noon { photons } => {
            if photons % d != 0 {
                return Err(Error::InvalidParameter {
                    name: "photons",
                    reason: format!("{photons} photons cannot be split evenly over {d} probes"),
                });
            }
            noon_state(photons / d, 1, None)
        }
        ReferenceConstruction::Ecs { .. } => {
            let photons_of = |alpha_sq: f64| -> Result<f64> {
                total_mean_photons(&ReferenceConstruction::Ecs { alpha_sq }.state(1)?)
            };
            // Mean photon number of the two-mode ECS is increasing in |beta|^2
            // and never exceeds it, so [target, 2 target + 1] brackets the root.
            let (mut lo, mut hi) = (target, 2.0 * target + 1.0);
            while photons_of(hi)? < target {
                hi *= 2.0;
            }
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if photons_of(mid)? < target {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if hi - lo <= 1e-14 * hi {
                    break;
                }
            }
            ReferenceConstruction::Ecs {
                alpha_sq: 0.5 * (lo + hi),
            }
            .state(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fisher_bounds::qfi_independent;
    use crate::states::{
        coherent_fock, ghz_pacs_state, pacs_fock, Branch, Parity, SingleModeFock, StateParams,
    };
    use approx::assert_relative_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    /// Expand a branch state into the full tensor-product amplitude vector.
    /// Mode 0 is the most significant digit.
    fn dense_tensor(state: &BranchProductState) -> (Vec<Complex64>, Vec<usize>) {
        let dims: Vec<usize> = state.branches()[0]
            .modes
            .iter()
            .map(|m| m.cutoff() + 1)
            .collect();
        let size: usize = dims.iter().product();
        let mut psi = vec![c(0.0); size];
        for branch in state.branches() {
            for (idx, amp) in psi.iter_mut().enumerate() {
                let mut rem = idx;
                let mut term = branch.weight;
                for (m, dim) in dims.iter().enumerate().rev() {
                    let k = rem % dim;
                    rem /= dim;
                    term *= branch.modes[m].coefficients()[k];
                }
                *amp += term;
            }
        }
        (psi, dims)
    }

    fn dense_expectation(state: &BranchProductState, obs: &[ModeObservable]) -> Complex64 {
        let (psi, dims) = dense_tensor(state);
        psi.iter()
            .enumerate()
            .map(|(idx, amp)| {
                let mut rem = idx;
                let mut weight = 1.0;
                for (m, dim) in dims.iter().enumerate().rev() {
                    let k = rem % dim;
                    rem /= dim;
                    for o in obs.iter().filter(|o| o.mode == m) {
                        weight *= o.spectrum.eval(k);
                    }
                }
                amp.norm_sqr() * weight
            })
            .sum::<f64>()
            .into()
    }

    #[test]
    fn vacuum_and_coherent_expectations() {
        let vac = BranchProductState::new(vec![Branch {
            weight: c(1.0),
            modes: vec![SingleModeFock::vacuum(5); 3],
        }])
        .unwrap();
        for m in 0..3 {
            assert_eq!(
                branch_expectation(&vac, &[ModeObservable::number(m)]).unwrap(),
                c(0.0)
            );
        }
        assert_eq!(
            compatibility_check(&vac, &generators_on_modes(0..3, Spectrum::Number)).unwrap(),
            0.0
        );

        let coh = BranchProductState::new(vec![Branch {
            weight: c(1.0),
            modes: vec![coherent_fock(c(2.0), 50).unwrap()],
        }])
        .unwrap();
        let n = branch_expectation(&coh, &[ModeObservable::number(0)]).unwrap();
        assert!((n.re - 4.0).abs() <= 1e-10);
    }

    #[test]
    fn out_of_range_mode() {
        let p = StateParams::from_alpha_sq(1.0, 0, 2, Parity::Symmetric).unwrap();
        let s = ghz_pacs_state(&p, None).unwrap();
        assert!(matches!(
            branch_expectation(&s, &[ModeObservable::number(3)]),
            Err(Error::IndexOutOfRange { index: 3, modes: 3 })
        ));
    }

    #[test]
    fn ghz_reference_mode_mean_matches_closed_form() {
        let x: f64 = 1.0;
        let n = 1;
        let p = StateParams::from_alpha_sq(x, n, 2, Parity::Symmetric).unwrap();
        let s = ghz_pacs_state(&p, None).unwrap();
        let numeric = branch_expectation(&s, &[ModeObservable::number(0)]).unwrap();
        // <n_0> = 2C^2/L_1(-x) {[2 L_2(-x) - L_1(-x)] + e^{-6x}[2 L_2(x) - L_1(x)]}
        let l1 = |y: f64| 1.0 - y;
        let l2 = |y: f64| 1.0 - 2.0 * y + y * y / 2.0;
        let c_sq = 1.0 / (2.0 + 2.0 * (-6.0 * x).exp() * l1(x) / l1(-x));
        let closed = 2.0 * c_sq / l1(-x)
            * ((2.0 * l2(-x) - l1(-x)) + (-6.0 * x).exp() * (2.0 * l2(x) - l1(x)));
        assert!((numeric.re - closed).abs() <= 1e-8 * closed);
    }

    #[test]
    fn coherent_product_qfim_is_diagonal() {
        let alpha = c(1.5);
        let coherent = coherent_fock(alpha, 60).unwrap();
        let s = BranchProductState::new(vec![Branch {
            weight: c(1.0),
            modes: vec![coherent; 4],
        }])
        .unwrap();
        let f = qfim_numeric(&s, &generators_on_modes(1..4, Spectrum::Number)).unwrap();
        for p in 0..3 {
            for q in 0..3 {
                let expected = if p == q { 4.0 * 2.25 } else { 0.0 };
                assert!(
                    (f.get(p, q) - expected).abs() <= 1e-9,
                    "({p},{q}) = {}",
                    f.get(p, q)
                );
            }
        }
    }

    #[test]
    fn ghz_single_generator_matches_independent_qfi() {
        let p = StateParams::from_alpha_sq(1.0, 0, 2, Parity::Symmetric).unwrap();
        let s = ghz_pacs_state(&p, None).unwrap();
        let f = qfim_numeric(&s, &[ModeObservable::number(0)]).unwrap();
        let closed = qfi_independent(&p).unwrap();
        assert!((f.get(0, 0) - closed).abs() <= 1e-8 * closed);
    }

    #[test]
    fn noon_qfim_matches_dense_three_mode_tensor() {
        let s = noon_state(1, 2, Some(2)).unwrap();
        let gens = generators_on_modes(1..=2, Spectrum::Number);
        let f = qfim_numeric(&s, &gens).unwrap();
        for p in 0..2 {
            for q in 0..2 {
                let pq = dense_expectation(&s, &[gens[p], gens[q]]).re;
                let mp = dense_expectation(&s, &[gens[p]]).re;
                let mq = dense_expectation(&s, &[gens[q]]).re;
                assert!((f.get(p, q) - 4.0 * (pq - mp * mq)).abs() <= 1e-14);
            }
        }
        // Closed form for this case: 4 [delta/3 - 1/9].
        assert_relative_eq!(f.get(0, 0), 8.0 / 9.0, max_relative = 1e-14);
        assert_relative_eq!(f.get(0, 1), -4.0 / 9.0, max_relative = 1e-14);
    }

    #[test]
    fn factorisation_matches_dense_two_mode_tensor() {
        for (alpha, n, parity) in [
            (c(0.5), 1, Parity::Symmetric),
            (Complex64::new(0.4, 0.3), 2, Parity::Antisymmetric),
            (c(0.6), 0, Parity::Antisymmetric),
        ] {
            let p = StateParams::new(alpha, n, 1, parity).unwrap();
            let s = ghz_pacs_state(&p, Some(12)).unwrap();
            let obs_sets: [&[ModeObservable]; 4] = [
                &[ModeObservable::number(0)],
                &[ModeObservable::number(1)],
                &[ModeObservable::number(0), ModeObservable::number(1)],
                &[ModeObservable::number_squared(0), ModeObservable::number(1)],
            ];
            for obs in obs_sets {
                let fact = branch_expectation(&s, obs).unwrap();
                let dense = dense_expectation(&s, obs);
                assert!((fact - dense).norm() <= 1e-12, "{obs:?}: {fact} vs {dense}");
            }
        }
    }

    #[test]
    fn hermitian_expectations_are_real() {
        let p = StateParams::from_alpha_sq(2.0, 3, 3, Parity::Antisymmetric).unwrap();
        let s = ghz_pacs_state(&p, None).unwrap();
        for m in 0..4 {
            let v = branch_expectation(&s, &[ModeObservable::number_squared(m)]).unwrap();
            assert!(v.im.abs() <= 1e-12);
        }
    }

    #[test]
    fn compatibility_for_complex_amplitude() {
        let p = StateParams::new(Complex64::new(1.0, 0.5), 1, 2, Parity::Antisymmetric).unwrap();
        let s = ghz_pacs_state(&p, None).unwrap();
        let gens = generators_on_modes(0..3, Spectrum::Number);
        assert!(compatibility_check(&s, &gens).unwrap() <= 1e-10);
    }

    #[test]
    fn truncation_convergence() {
        let p = StateParams::from_alpha_sq(2.0, 4, 2, Parity::Symmetric).unwrap();
        let base = ghz_pacs_state(&p, None).unwrap();
        let cut = base.branches()[0].modes[0].cutoff();
        let doubled = ghz_pacs_state(&p, Some(2 * cut)).unwrap();
        for obs in [ModeObservable::number(0), ModeObservable::number_squared(1)] {
            let a = branch_expectation(&base, &[obs]).unwrap().re;
            let b = branch_expectation(&doubled, &[obs]).unwrap().re;
            assert!((a - b).abs() <= 1e-10 * b.abs(), "{obs:?}: {a} vs {b}");
        }
    }

    #[test]
    fn mode_permutation_leaves_symmetric_sets_unchanged() {
        let p = StateParams::from_alpha_sq(1.5, 2, 3, Parity::Symmetric).unwrap();
        let s = ghz_pacs_state(&p, None).unwrap();
        let permuted = s.permute_modes(&[0, 3, 1, 2]).unwrap();
        let gens = generators_on_modes(1..=3, Spectrum::Number);
        let a = qfim_numeric(&s, &gens).unwrap();
        let b = qfim_numeric(&permuted, &gens).unwrap();
        assert!((a.to_dense() - b.to_dense()).norm() <= 1e-12);
    }

    #[test]
    fn pacs_mode_helper_consistency() {
        // A single PACS mode as a one-branch state reproduces its mean photon number.
        let alpha = c(2.0);
        let s = BranchProductState::new(vec![Branch {
            weight: c(1.0),
            modes: vec![pacs_fock(alpha, 4, 80).unwrap()],
        }])
        .unwrap();
        let n = total_mean_photons(&s).unwrap();
        assert!((n - crate::fisher_bounds::mean_photon_pacs(4.0, 4)).abs() <= 1e-10);
    }

    #[test]
    fn reference_simultaneous_beats_independent() {
        for d in [2, 5] {
            let noon = reference_bounds(ReferenceConstruction::Noon { photons: 10 }, d).unwrap();
            assert!(noon.simultaneous_linear < noon.independent_linear);
            // NOON closed forms: d(d+1)/(2N^2) and d^3/N^2.
            let n_sq = 100.0;
            let d_f = d as f64;
            assert_relative_eq!(
                noon.simultaneous_linear,
                d_f * (d_f + 1.0) / (2.0 * n_sq),
                max_relative = 1e-10
            );
            assert_relative_eq!(
                noon.independent_linear,
                d_f.powi(3) / n_sq,
                max_relative = 1e-10
            );

            let ecs = reference_bounds(ReferenceConstruction::Ecs { alpha_sq: 4.0 }, d).unwrap();
            assert!(ecs.simultaneous_linear < ecs.independent_linear);
        }
        assert!(reference_bounds(ReferenceConstruction::Noon { photons: 7 }, 2).is_err());
    }
}
