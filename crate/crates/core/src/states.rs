//! Coherent, photon-added and GHZ-type states.
//!
//! Closed-form quantities (normalisation constants, overlaps) live next to
//! truncated Fock-basis representations used by [`crate::fock_oracle`].
//! Multimode states are stored as a [`BranchProductState`]: a weighted sum of
//! mode-factorised products, which is exact for every state built here.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special_poly::{laguerre, log_factorial};

/// Tail mass `sum_{k>K} |c_k|^2` tolerated by the default constructors.
pub const TAIL_TOLERANCE: f64 = 1e-12;

/// Bracket values at or below this are treated as a vanishing state.
const DEGENERATE_TOLERANCE: f64 = 1e-12;

/// Sign of the second GHZ branch: `e^{i l pi}` with `l` in `{0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Parity {
    Symmetric,
    Antisymmetric,
}

impl Parity {
    /// `cos(l pi)`.
    pub fn sign(self) -> f64 {
        match self {
            Parity::Symmetric => 1.0,
            Parity::Antisymmetric => -1.0,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Parity::Symmetric => 0,
            Parity::Antisymmetric => 1,
        }
    }
}

impl TryFrom<u8> for Parity {
    type Error = Error;

    fn try_from(l: u8) -> Result<Self> {
        match l {
            0 => Ok(Parity::Symmetric),
            1 => Ok(Parity::Antisymmetric),
            other => Err(Error::InvalidParameter {
                name: "l",
                reason: format!("parity must be 0 or 1, got {other}"),
            }),
        }
    }
}

impl From<Parity> for u8 {
    fn from(p: Parity) -> u8 {
        p.index()
    }
}

/// The `(alpha, n, d, l)` tuple every state and bound is parameterised by.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateParams {
    /// Coherent amplitude.
    pub alpha: Complex64,
    /// Photon-addition order on the reference mode.
    pub n: u32,
    /// Number of estimated phases (non-reference modes).
    pub d: usize,
    pub parity: Parity,
}

impl StateParams {
    pub fn new(alpha: Complex64, n: u32, d: usize, parity: Parity) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParameter {
                name: "d",
                reason: "at least one estimated phase is required".into(),
            });
        }
        if !alpha.re.is_finite() || !alpha.im.is_finite() {
            return Err(Error::InvalidParameter {
                name: "alpha",
                reason: format!("amplitude must be finite, got {alpha}"),
            });
        }
        Ok(Self {
            alpha,
            n,
            d,
            parity,
        })
    }

    /// Real amplitude `alpha = sqrt(alpha_sq)`.
    pub fn from_alpha_sq(alpha_sq: f64, n: u32, d: usize, parity: Parity) -> Result<Self> {
        if !(alpha_sq >= 0.0) || !alpha_sq.is_finite() {
            return Err(Error::InvalidParameter {
                name: "alpha_sq",
                reason: format!("|alpha|^2 must be finite and non-negative, got {alpha_sq}"),
            });
        }
        Self::new(Complex64::new(alpha_sq.sqrt(), 0.0), n, d, parity)
    }

    pub fn alpha_sq(&self) -> f64 {
        self.alpha.norm_sqr()
    }
}

/// Truncated Fock-basis coefficients of one optical mode, `c_0 ..= c_K`.
#[derive(Debug, Clone, PartialEq)]
pub struct SingleModeFock {
    coefficients: Vec<Complex64>,
}

impl SingleModeFock {
    /// Wrap raw coefficients without any normalisation or tail check.
    pub fn from_coefficients(coefficients: Vec<Complex64>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidParameter {
                name: "coefficients",
                reason: "at least the vacuum coefficient is required".into(),
            });
        }
        Ok(Self { coefficients })
    }

    /// The Fock state `|k>` at the given cutoff.
    pub fn number_state(k: usize, cutoff: usize) -> Result<Self> {
        if k > cutoff {
            return Err(Error::InvalidParameter {
                name: "cutoff",
                reason: format!("cutoff {cutoff} cannot hold |{k}>"),
            });
        }
        let mut coefficients = vec![Complex64::new(0.0, 0.0); cutoff + 1];
        coefficients[k] = Complex64::new(1.0, 0.0);
        Ok(Self { coefficients })
    }

    pub fn vacuum(cutoff: usize) -> Self {
        Self::number_state(0, cutoff).expect("vacuum fits any cutoff")
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn cutoff(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coefficients.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `<self|other>`, over the common support.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.coefficients
            .iter()
            .zip(&other.coefficients)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `<self| f(n) |other>` for an observable diagonal in the Fock basis.
    pub fn diagonal_element(&self, other: &Self, spectrum: impl Fn(usize) -> f64) -> Complex64 {
        self.coefficients
            .iter()
            .zip(&other.coefficients)
            .enumerate()
            .map(|(k, (a, b))| a.conj() * b * spectrum(k))
            .sum()
    }

    fn check_tail(self, tolerance: f64) -> Result<Self> {
        // The closed-form coefficients are exactly normalised over the full
        // Fock space, so the missing mass is what the cutoff dropped.
        let tail = (1.0 - self.norm_sqr()).max(0.0);
        if tail > tolerance {
            return Err(Error::InsufficientTruncation {
                cutoff: self.cutoff(),
                tail,
                tolerance,
            });
        }
        Ok(self)
    }
}

/// Default cutoff: `n + ceil(|alpha|^2 + 10 sqrt(|alpha|^2 + 1))`.
pub fn default_cutoff(alpha_sq: f64, n: u32) -> usize {
    n as usize + (alpha_sq + 10.0 * (alpha_sq + 1.0).sqrt()).ceil() as usize
}

/// Smallest cutoff at or above [`default_cutoff`] whose PACS tail mass is
/// below [`TAIL_TOLERANCE`].
pub fn adequate_cutoff(alpha: Complex64, n: u32) -> usize {
    let mut cutoff = default_cutoff(alpha.norm_sqr(), n);
    loop {
        match pacs_fock_with_tolerance(alpha, n, cutoff, TAIL_TOLERANCE) {
            Err(Error::InsufficientTruncation { .. }) => cutoff += 4,
            _ => return cutoff,
        }
    }
}

/// Coherent state `|alpha>` truncated at `cutoff`.
pub fn coherent_fock(alpha: Complex64, cutoff: usize) -> Result<SingleModeFock> {
    pacs_fock(alpha, 0, cutoff)
}

/// Photon-added coherent state `|alpha, n>` truncated at `cutoff`.
pub fn pacs_fock(alpha: Complex64, n: u32, cutoff: usize) -> Result<SingleModeFock> {
    pacs_fock_with_tolerance(alpha, n, cutoff, TAIL_TOLERANCE)
}

pub fn pacs_fock_with_tolerance(
    alpha: Complex64,
    n: u32,
    cutoff: usize,
    tolerance: f64,
) -> Result<SingleModeFock> {
    let n_us = n as usize;
    if cutoff < n_us {
        return Err(Error::InsufficientTruncation {
            cutoff,
            tail: 1.0,
            tolerance,
        });
    }
    let x = alpha.norm_sqr();
    let mut coefficients = vec![Complex64::new(0.0, 0.0); cutoff + 1];
    if x == 0.0 {
        coefficients[n_us] = Complex64::new(1.0, 0.0);
        return SingleModeFock { coefficients }.check_tail(tolerance);
    }
    let (r, theta) = alpha.to_polar();
    let log_prefactor = -0.5 * x - 0.5 * (log_factorial(n) + laguerre(n, -x).ln());
    for k in 0..=(cutoff - n_us) {
        let kk = k as u32;
        let log_mag = log_prefactor + f64::from(kk) * r.ln() + 0.5 * log_factorial(kk + n)
            - log_factorial(kk);
        coefficients[k + n_us] = Complex64::from_polar(log_mag.exp(), f64::from(kk) * theta);
    }
    SingleModeFock { coefficients }.check_tail(tolerance)
}

/// `<-alpha, n | alpha, n> = e^{-2|alpha|^2} L_n(|alpha|^2) / L_n(-|alpha|^2)`.
pub fn pacs_overlap_opposite(alpha: Complex64, n: u32) -> f64 {
    let x = alpha.norm_sqr();
    (-2.0 * x).exp() * laguerre(n, x) / laguerre(n, -x)
}

/// Bracket `2 + 2 cos(l pi) e^{-2(d+1)|alpha|^2} L_n(|alpha|^2)/L_n(-|alpha|^2)`.
fn ghz_bracket(params: &StateParams) -> f64 {
    let x = params.alpha_sq();
    let d = params.d as f64;
    2.0 + 2.0 * params.parity.sign() * (-2.0 * (d + 1.0) * x).exp() * laguerre(params.n, x)
        / laguerre(params.n, -x)
}

/// Normalisation `N_l(alpha, n, d)` of the multimode GHZ-type PACS.
pub fn ghz_norm(params: &StateParams) -> Result<f64> {
    let bracket = ghz_bracket(params);
    if bracket <= DEGENERATE_TOLERANCE {
        return Err(Error::DegenerateState(format!(
            "GHZ normalisation bracket {bracket:.3e} vanishes (alpha={}, n={}, d={}, l={})",
            params.alpha,
            params.n,
            params.d,
            params.parity.index()
        )));
    }
    Ok(bracket.powf(-0.5))
}

/// One term of a [`BranchProductState`].
#[derive(Debug, Clone, PartialEq)]
pub struct Branch {
    pub weight: Complex64,
    pub modes: Vec<SingleModeFock>,
}

/// Superposition of mode-factorised product states.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchProductState {
    branches: Vec<Branch>,
}

impl BranchProductState {
    pub fn new(branches: Vec<Branch>) -> Result<Self> {
        let Some(first) = branches.first() else {
            return Err(Error::InvalidParameter {
                name: "branches",
                reason: "at least one branch is required".into(),
            });
        };
        let modes = first.modes.len();
        if modes == 0 {
            return Err(Error::InvalidParameter {
                name: "branches",
                reason: "branches must contain at least one mode".into(),
            });
        }
        if let Some(bad) = branches.iter().find(|b| b.modes.len() != modes) {
            return Err(Error::InvalidParameter {
                name: "branches",
                reason: format!("mode count mismatch: {} vs {}", bad.modes.len(), modes),
            });
        }
        Ok(Self { branches })
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn mode_count(&self) -> usize {
        self.branches[0].modes.len()
    }

    /// `<branch_a | branch_b>` without weights.
    pub fn branch_overlap(&self, a: usize, b: usize) -> Complex64 {
        self.branches[a]
            .modes
            .iter()
            .zip(&self.branches[b].modes)
            .map(|(ma, mb)| ma.inner(mb))
            .product()
    }

    /// `<psi|psi>` including all cross-branch overlaps.
    pub fn norm_sqr(&self) -> f64 {
        let mut total = Complex64::new(0.0, 0.0);
        for (a, ba) in self.branches.iter().enumerate() {
            for (b, bb) in self.branches.iter().enumerate() {
                total += ba.weight.conj() * bb.weight * self.branch_overlap(a, b);
            }
        }
        total.re
    }

    /// Rescale all weights so that `<psi|psi> = 1`.
    pub fn normalized(mut self) -> Result<Self> {
        let norm = self.norm_sqr();
        if !(norm > DEGENERATE_TOLERANCE) {
            return Err(Error::DegenerateState(format!(
                "branch superposition has norm^2 {norm:.3e}"
            )));
        }
        let scale = norm.sqrt().recip();
        for b in &mut self.branches {
            b.weight *= scale;
        }
        Ok(self)
    }

    /// Reorder modes in every branch: new mode `i` is old mode `order[i]`.
    pub fn permute_modes(&self, order: &[usize]) -> Result<Self> {
        let modes = self.mode_count();
        let mut seen = vec![false; modes];
        if order.len() != modes {
            return Err(Error::InvalidParameter {
                name: "order",
                reason: format!("expected {modes} indices, got {}", order.len()),
            });
        }
        for &i in order {
            if i >= modes || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidParameter {
                    name: "order",
                    reason: format!("{order:?} is not a permutation of 0..{modes}"),
                });
            }
        }
        let branches = self
            .branches
            .iter()
            .map(|b| Branch {
                weight: b.weight,
                modes: order.iter().map(|&i| b.modes[i].clone()).collect(),
            })
            .collect();
        Ok(Self { branches })
    }
}

/// `N_l [ |alpha,n>_0 |alpha>^d + e^{i l pi} |-alpha,n>_0 |-alpha>^d ]`.
///
/// With `cutoff = None` each mode gets [`adequate_cutoff`].
pub fn ghz_pacs_state(params: &StateParams, cutoff: Option<usize>) -> Result<BranchProductState> {
    let norm = ghz_norm(params)?;
    let alpha = params.alpha;
    let pacs_cut = cutoff.unwrap_or_else(|| adequate_cutoff(alpha, params.n));
    let coh_cut = cutoff.unwrap_or_else(|| adequate_cutoff(alpha, 0));
    let branch = |amp: Complex64, weight: Complex64| -> Result<Branch> {
        let mut modes = Vec::with_capacity(params.d + 1);
        modes.push(pacs_fock(amp, params.n, pacs_cut)?);
        let coherent = coherent_fock(amp, coh_cut)?;
        modes.extend(std::iter::repeat_n(coherent, params.d));
        Ok(Branch { weight, modes })
    };
    BranchProductState::new(vec![
        branch(alpha, Complex64::new(norm, 0.0))?,
        branch(-alpha, Complex64::new(norm * params.parity.sign(), 0.0))?,
    ])
}

/// `(d+1)`-mode generalised NOON state: `sum_k |N>_k |0>_rest`, uniformly weighted.
///
/// This is a reference construction for comparison curves.
pub fn noon_state(photons: usize, d: usize, cutoff: Option<usize>) -> Result<BranchProductState> {
    if photons == 0 {
        return Err(Error::InvalidParameter {
            name: "photons",
            reason: "NOON state needs at least one photon".into(),
        });
    }
    if d == 0 {
        return Err(Error::InvalidParameter {
            name: "d",
            reason: "at least one estimated phase is required".into(),
        });
    }
    let cutoff = cutoff.unwrap_or(photons);
    let excited = SingleModeFock::number_state(photons, cutoff)?;
    let vacuum = SingleModeFock::vacuum(cutoff);
    excitation_superposition(d, &excited, &vacuum)
}

/// `(d+1)`-mode entangled coherent state: `sum_k |alpha>_k |0>_rest`, with
/// the overlap-corrected normalisation.
///
/// This is a reference construction for comparison curves.
pub fn ecs_state(alpha: Complex64, d: usize, cutoff: Option<usize>) -> Result<BranchProductState> {
    if alpha.norm_sqr() <= DEGENERATE_TOLERANCE {
        return Err(Error::DegenerateState(
            "entangled coherent state with alpha = 0 has no excitation".into(),
        ));
    }
    if d == 0 {
        return Err(Error::InvalidParameter {
            name: "d",
            reason: "at least one estimated phase is required".into(),
        });
    }
    let cutoff = cutoff.unwrap_or_else(|| adequate_cutoff(alpha, 0));
    let excited = coherent_fock(alpha, cutoff)?;
    let vacuum = SingleModeFock::vacuum(cutoff);
    excitation_superposition(d, &excited, &vacuum)
}

fn excitation_superposition(
    d: usize,
    excited: &SingleModeFock,
    vacuum: &SingleModeFock,
) -> Result<BranchProductState> {
    let branches = (0..=d)
        .map(|k| Branch {
            weight: Complex64::new(1.0, 0.0),
            modes: (0..=d)
                .map(|m| {
                    if m == k {
                        excited.clone()
                    } else {
                        vacuum.clone()
                    }
                })
                .collect(),
        })
        .collect();
    BranchProductState::new(branches)?.normalized()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn coherent_vacuum() {
        let s = coherent_fock(c(0.0), 8).unwrap();
        assert_eq!(s.coefficients()[0], c(1.0));
        assert!(s.coefficients()[1..].iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn coherent_ground_amplitude_and_norm() {
        let s = coherent_fock(c(1.0), 40).unwrap();
        assert_relative_eq!(
            s.coefficients()[0].re,
            (-0.5f64).exp(),
            max_relative = 1e-14
        );
        let s = coherent_fock(c(2.0), 40).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn coherent_rejects_short_cutoff() {
        assert!(matches!(
            coherent_fock(c(3.0), 10),
            Err(Error::InsufficientTruncation { cutoff: 10, .. })
        ));
    }

    #[test]
    fn pacs_order_zero_is_coherent() {
        let alpha = Complex64::new(0.7, -1.1);
        assert_eq!(
            pacs_fock(alpha, 0, 50).unwrap(),
            coherent_fock(alpha, 50).unwrap()
        );
    }

    #[test]
    fn pacs_on_vacuum_is_number_state() {
        let s = pacs_fock(c(0.0), 3, 8).unwrap();
        assert_eq!(s, SingleModeFock::number_state(3, 8).unwrap());
    }

    #[test]
    fn pacs_normalisation() {
        let s = pacs_fock(c(1.0), 2, 60).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn pacs_support_starts_at_n() {
        let s = pacs_fock(Complex64::new(1.3, 0.4), 4, 60).unwrap();
        assert!(s.coefficients()[..4].iter().all(|z| z.norm() == 0.0));
        assert!(s.coefficients()[4].norm() > 0.0);
    }

    #[test]
    fn overlap_examples() {
        assert_relative_eq!(pacs_overlap_opposite(c(0.0), 5), 1.0);
        assert_relative_eq!(
            pacs_overlap_opposite(c(1.0), 0),
            (-2.0f64).exp(),
            max_relative = 1e-15
        );
        assert_eq!(pacs_overlap_opposite(c(1.0), 1), 0.0);
    }

    #[test]
    fn closed_form_overlap_matches_fock_inner_product() {
        for &x in &[0.25, 1.0, 4.0] {
            for &n in &[0, 1, 4] {
                let a = c(f64::sqrt(x));
                let cut = adequate_cutoff(a, n);
                let minus = pacs_fock(-a, n, cut).unwrap();
                let plus = pacs_fock(a, n, cut).unwrap();
                let numeric = minus.inner(&plus);
                assert!((numeric.re - pacs_overlap_opposite(a, n)).abs() <= 1e-10);
                assert!(numeric.im.abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn ghz_norm_examples() {
        let far = StateParams::from_alpha_sq(50.0, 0, 2, Parity::Symmetric).unwrap();
        assert!((ghz_norm(&far).unwrap() - 0.5f64.sqrt()).abs() <= 1e-10);
        let origin = StateParams::from_alpha_sq(0.0, 0, 2, Parity::Symmetric).unwrap();
        assert_relative_eq!(ghz_norm(&origin).unwrap(), 0.5);
        for n in [0, 3] {
            for d in [1, 4] {
                let p = StateParams::from_alpha_sq(0.0, n, d, Parity::Antisymmetric).unwrap();
                assert!(matches!(ghz_norm(&p), Err(Error::DegenerateState(_))));
            }
        }
    }

    #[test]
    fn ghz_norm_reduces_to_three_mode_coherent_constant() {
        for parity in [Parity::Symmetric, Parity::Antisymmetric] {
            for &x in &[0.3, 1.0, 2.5] {
                let p = StateParams::from_alpha_sq(x, 0, 2, parity).unwrap();
                let three_mode = (2.0 + 2.0 * (-6.0 * x).exp() * parity.sign()).powf(-0.5);
                assert_relative_eq!(ghz_norm(&p).unwrap(), three_mode, max_relative = 1e-14);
            }
        }
    }

    #[test]
    fn ghz_norm_approaches_half_root() {
        let target = 0.5f64.sqrt();
        for parity in [Parity::Symmetric, Parity::Antisymmetric] {
            // n = 0: the bracket 2 +- 2 e^{-6x} is monotone.
            let mut prev_gap = f64::INFINITY;
            for i in 1..=40 {
                let x = 0.1 * f64::from(i);
                let p = StateParams::from_alpha_sq(x, 0, 2, parity).unwrap();
                let gap = (ghz_norm(&p).unwrap() - target).abs();
                assert!(gap <= prev_gap, "parity {parity:?} x={x}");
                prev_gap = gap;
            }
            // n >= 1: L_n(x) changes sign, so the approach can cross 1/sqrt(2),
            // but the limit is the same.
            for n in [1, 2, 7] {
                let p = StateParams::from_alpha_sq(8.0, n, 2, parity).unwrap();
                assert!((ghz_norm(&p).unwrap() - target).abs() < 1e-12);
            }
        }
        let crossing = StateParams::from_alpha_sq(0.7, 2, 2, Parity::Symmetric).unwrap();
        assert!(ghz_norm(&crossing).unwrap() > target);
    }

    #[test]
    fn ghz_state_is_normalised() {
        let p = StateParams::from_alpha_sq(1.0, 0, 2, Parity::Symmetric).unwrap();
        let s = ghz_pacs_state(&p, Some(40)).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() <= 1e-10);
        assert_eq!(s.mode_count(), 3);
    }

    #[test]
    fn ghz_state_reference_mode_support() {
        let p = StateParams::from_alpha_sq(1.0, 2, 1, Parity::Antisymmetric).unwrap();
        let s = ghz_pacs_state(&p, Some(60)).unwrap();
        let mode0 = &s.branches()[0].modes[0];
        assert!(mode0.coefficients()[..2].iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn ghz_branch_overlap_matches_closed_form() {
        let p = StateParams::from_alpha_sq(4.0, 1, 3, Parity::Symmetric).unwrap();
        let s = ghz_pacs_state(&p, Some(60)).unwrap();
        let expected = (-32.0f64).exp() * laguerre(1, 4.0) / laguerre(1, -4.0);
        let got = s.branch_overlap(1, 0);
        assert!((got.re - expected).abs() <= 1e-12);
        assert!(got.im.abs() <= 1e-12);
    }

    #[test]
    fn noon_and_ecs_constructions() {
        let noon = noon_state(1, 1, None).unwrap();
        assert_eq!(noon.mode_count(), 2);
        assert!((noon.norm_sqr() - 1.0).abs() <= 1e-14);
        assert_relative_eq!(
            noon.branches()[0].weight.re,
            0.5f64.sqrt(),
            max_relative = 1e-14
        );

        for d in [1, 3] {
            assert!(matches!(
                ecs_state(c(0.0), d, None),
                Err(Error::DegenerateState(_))
            ));
        }
        let ecs = ecs_state(c(2.0), 2, None).unwrap();
        assert!((ecs.norm_sqr() - 1.0).abs() <= 1e-10);
        // Overlap-corrected weight: 1/sqrt((d+1)(1 + d e^{-|alpha|^2})).
        let expected = (3.0 * (1.0 + 2.0 * (-4.0f64).exp())).powf(-0.5);
        assert_relative_eq!(ecs.branches()[0].weight.re, expected, max_relative = 1e-10);
    }

    #[test]
    fn parity_conversions() {
        assert_eq!(Parity::try_from(0).unwrap(), Parity::Symmetric);
        assert_eq!(Parity::try_from(1).unwrap(), Parity::Antisymmetric);
        assert!(Parity::try_from(2).is_err());
        assert_eq!(Parity::Antisymmetric.sign(), -1.0);
    }

    #[test]
    fn params_validation() {
        assert!(StateParams::from_alpha_sq(1.0, 0, 0, Parity::Symmetric).is_err());
        assert!(StateParams::from_alpha_sq(-1.0, 0, 1, Parity::Symmetric).is_err());
        assert!(StateParams::from_alpha_sq(f64::NAN, 0, 1, Parity::Symmetric).is_err());
    }

    #[test]
    fn permutation_validation() {
        let p = StateParams::from_alpha_sq(1.0, 1, 2, Parity::Symmetric).unwrap();
        let s = ghz_pacs_state(&p, None).unwrap();
        assert!(s.permute_modes(&[0, 2, 1]).is_ok());
        assert!(s.permute_modes(&[0, 1, 1]).is_err());
        assert!(s.permute_modes(&[0, 1]).is_err());
    }
}
