//! Homodyne readout of the phase on mode 0.
//!
//! Quadrature wavefunctions use `<p|k> = (-i)^k psi_k(p)`, with `psi_k` the
//! normalised Hermite functions. In that convention
//!
//! ```text
//! <p|alpha>   = pi^{-1/4} exp(-p^2/2 - i sqrt2 p alpha + alpha^2/2 - |alpha|^2/2)
//! <p|alpha,n> = [n! L_n(-|alpha|^2)]^{-1/2} (-i/sqrt2)^n H_n(p + i alpha/sqrt2) <p|alpha>
//! ```
//!
//! The `*_printed` functions keep an alternative sign convention,
//! `+|alpha|^2/2` in the exponent and `(i/sqrt2)^n`, which is not normalised.
//! They exist only for side-by-side comparison.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};
use std::num::NonZeroUsize;

use gauss_quad::GaussHermite;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fisher_bounds::{BoundResult, Protocol};
use crate::special_poly::{
    hermite, hermite_derivative, hermite_functions, laguerre, log_factorial,
};
use crate::states::{ghz_norm, StateParams};

/// Finite-difference step for the phase derivative of the signal.
pub const DERIVATIVE_STEP: f64 = 1e-4;
/// Relative shift tolerated when the grid density is doubled.
pub const GRID_TOLERANCE: f64 = 1e-8;
/// The first-order marginal may dip this far below zero before it is reported.
pub const NEGATIVITY_TOLERANCE: f64 = 1e-9;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Nodes and weights for `int f(p) dp` where `f` carries a Gaussian envelope.
///
/// A grid with `m` nodes built for envelope `s` integrates
/// `exp(-s p^2) q(p)` exactly for polynomials `q` of degree `< 2m`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    points: Vec<f64>,
    weights: Vec<f64>,
    envelope: f64,
}

impl QuadratureGrid {
    /// Gauss-Hermite grid with `nodes` points for the envelope `exp(-p^2)`.
    pub fn gauss_hermite(nodes: usize) -> Result<Self> {
        Self::with_envelope(nodes, 1.0)
    }

    /// Gauss-Hermite grid rescaled to the envelope `exp(-envelope p^2)`.
    pub fn with_envelope(nodes: usize, envelope: f64) -> Result<Self> {
        let count = NonZeroUsize::new(nodes).ok_or_else(|| Error::InvalidParameter {
            name: "nodes",
            reason: "a quadrature grid needs at least one node".into(),
        })?;
        if !(envelope.is_finite() && envelope > 0.0) {
            return Err(Error::InvalidParameter {
                name: "envelope",
                reason: format!("envelope width must be positive and finite, got {envelope}"),
            });
        }
        let rule = GaussHermite::new(count);
        let scale = envelope.sqrt();
        let mut points = Vec::with_capacity(nodes);
        let mut weights = Vec::with_capacity(nodes);
        for &t in rule.nodes() {
            // Christoffel weight times e^{t^2}, from Hermite functions so that
            // it keeps full relative precision in the tails.
            let christoffel: f64 = hermite_functions(nodes - 1, t).iter().map(|v| v * v).sum();
            points.push(t / scale);
            weights.push(1.0 / (christoffel * scale));
        }
        Ok(Self {
            points,
            weights,
            envelope,
        })
    }

    /// Grid sized for cross-branch oscillations at amplitude `alpha` and
    /// Hermite degree `n` under the given envelope.
    ///
    /// `frequency` is the angular frequency of the fastest oscillating term
    /// in the unscaled variable.
    pub fn sized_for(frequency: f64, n: u32, envelope: f64) -> Result<Self> {
        let k = frequency / envelope.sqrt();
        let nodes = 48 + 2 * n as usize + (0.25 * k * k + 3.0 * k).ceil() as usize;
        Self::with_envelope(nodes, envelope)
    }

    /// Grid for single-mode integrals of a branch pair (envelope `exp(-p^2)`).
    pub fn for_joint(params: &StateParams) -> Result<Self> {
        Self::sized_for(2.0 * SQRT_2 * params.alpha.norm(), params.n + 1, 1.0)
    }

    /// Grid for the equal-`p` slice over `d+1` modes (envelope `exp(-(1+d) p^2)`).
    pub fn for_slice(params: &StateParams) -> Result<Self> {
        let modes = params.d as f64 + 1.0;
        Self::sized_for(
            2.0 * SQRT_2 * modes * params.alpha.norm(),
            params.n + 1,
            modes,
        )
    }

    /// Same envelope, twice the nodes.
    pub fn refined(&self) -> Result<Self> {
        Self::with_envelope(2 * self.points.len(), self.envelope)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn envelope(&self) -> f64 {
        self.envelope
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(&p, &w)| w * f(p))
            .sum()
    }

    pub fn integrate_complex(&self, f: impl Fn(f64) -> Complex64) -> Complex64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(&p, &w)| w * f(p))
            .sum()
    }
}

/// `<p|alpha>`.
pub fn quad_coherent(p: f64, alpha: Complex64) -> Complex64 {
    let exponent =
        -0.5 * p * p - I * SQRT_2 * p * alpha + 0.5 * alpha * alpha - 0.5 * alpha.norm_sqr();
    PI.powf(-0.25) * exponent.exp()
}

/// `<p|alpha>` with `+|alpha|^2/2` in the exponent.
pub fn quad_coherent_printed(p: f64, alpha: Complex64) -> Complex64 {
    let exponent =
        -0.5 * p * p - I * SQRT_2 * p * alpha + 0.5 * alpha * alpha + 0.5 * alpha.norm_sqr();
    PI.powf(-0.25) * exponent.exp()
}

fn pacs_prefactor(alpha: Complex64, n: u32) -> f64 {
    let x = alpha.norm_sqr();
    (-0.5 * (log_factorial(n) + laguerre(n, -x).ln())).exp()
}

/// `<p|alpha,n>`, photon-added coherent state.
pub fn quad_pacs(p: f64, alpha: Complex64, n: u32) -> Complex64 {
    let raise = (-I * FRAC_1_SQRT_2).powu(n);
    pacs_prefactor(alpha, n)
        * raise
        * hermite(n, p + I * alpha * FRAC_1_SQRT_2)
        * quad_coherent(p, alpha)
}

/// `<p|alpha,n>` with `(i/sqrt2)^n` and the printed coherent amplitude.
pub fn quad_pacs_printed(p: f64, alpha: Complex64, n: u32) -> Complex64 {
    let raise = (I * FRAC_1_SQRT_2).powu(n);
    pacs_prefactor(alpha, n)
        * raise
        * hermite(n, p + I * alpha * FRAC_1_SQRT_2)
        * quad_coherent_printed(p, alpha)
}

/// A state parameter set plus the phase on mode 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarginalParams {
    pub state: StateParams,
    pub phi: f64,
}

impl MarginalParams {
    pub fn new(state: StateParams, phi: f64) -> Result<Self> {
        if !phi.is_finite() {
            return Err(Error::InvalidParameter {
                name: "phi",
                reason: format!("phase must be finite, got {phi}"),
            });
        }
        Ok(Self { state, phi })
    }
}

/// One branch of a product of single-mode Gaussian-type states: a PACS on
/// mode 0 and coherent states on the remaining modes.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeBranch {
    pub weight: Complex64,
    pub alpha: Complex64,
    pub n: u32,
    pub reference: Vec<Complex64>,
}

/// Superposition of [`ProbeBranch`]es; the phase `phi` acts as
/// `exp(i phi a_0^dag a_0)` on mode 0.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseProbe {
    branches: Vec<ProbeBranch>,
}

impl PhaseProbe {
    pub fn new(branches: Vec<ProbeBranch>) -> Result<Self> {
        let Some(first) = branches.first() else {
            return Err(Error::InvalidParameter {
                name: "branches",
                reason: "a probe needs at least one branch".into(),
            });
        };
        let modes = first.reference.len();
        if let Some(bad) = branches.iter().find(|b| b.reference.len() != modes) {
            return Err(Error::DimensionMismatch {
                expected: modes,
                actual: bad.reference.len(),
            });
        }
        Ok(Self { branches })
    }

    /// `N_l [ |alpha,n>_0 |alpha>^d + e^{i l pi} |-alpha,n>_0 |-alpha>^d ]`.
    pub fn ghz(params: &StateParams) -> Result<Self> {
        let norm = ghz_norm(params)?;
        let branch = |alpha: Complex64, weight: f64| ProbeBranch {
            weight: Complex64::new(weight, 0.0),
            alpha,
            n: params.n,
            reference: vec![alpha; params.d],
        };
        Self::new(vec![
            branch(params.alpha, norm),
            branch(-params.alpha, norm * params.parity.sign()),
        ])
    }

    /// A single mode holding `|alpha, n>`.
    pub fn single_mode(alpha: Complex64, n: u32) -> Self {
        Self {
            branches: vec![ProbeBranch {
                weight: Complex64::new(1.0, 0.0),
                alpha,
                n,
                reference: Vec::new(),
            }],
        }
    }

    pub fn branches(&self) -> &[ProbeBranch] {
        &self.branches
    }

    pub fn mode_count(&self) -> usize {
        self.branches[0].reference.len() + 1
    }

    fn amplitude(branch: &ProbeBranch, mode: usize, p: f64, phi: f64) -> Complex64 {
        if mode == 0 {
            let rotated = branch.alpha * Complex64::from_polar(1.0, phi);
            Complex64::from_polar(1.0, f64::from(branch.n) * phi) * quad_pacs(p, rotated, branch.n)
        } else {
            quad_coherent(p, branch.reference[mode - 1])
        }
    }

    /// `<p, p, ..., p | Psi(phi)>`.
    pub fn slice_amplitude(&self, p: f64, phi: f64) -> Complex64 {
        let modes = self.mode_count();
        self.branches
            .iter()
            .map(|b| {
                b.weight
                    * (0..modes)
                        .map(|m| Self::amplitude(b, m, p, phi))
                        .product::<Complex64>()
            })
            .sum()
    }

    /// Equal-`p` slice density `|<p, ..., p | Psi(phi)>|^2`.
    pub fn slice_density(&self, p: f64, phi: f64) -> f64 {
        self.slice_amplitude(p, phi).norm_sqr()
    }

    /// Norm, `<p_tot>` and `<p_tot^2>` of the full joint quadrature density.
    ///
    /// Each branch pair factorises into single-mode integrals
    /// `int p^k conj(psi_a) psi_b dp` with `k = 0, 1, 2`.
    pub fn joint_moments(&self, phi: f64, grid: &QuadratureGrid) -> JointMoments {
        let modes = self.mode_count();
        let tabulated: Vec<Vec<Vec<Complex64>>> = self
            .branches
            .iter()
            .map(|b| {
                (0..modes)
                    .map(|m| {
                        grid.points()
                            .iter()
                            .map(|&p| Self::amplitude(b, m, p, phi))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mut norm = Complex64::new(0.0, 0.0);
        let mut first = Complex64::new(0.0, 0.0);
        let mut second = Complex64::new(0.0, 0.0);
        for (a, wa) in self.branches.iter().enumerate() {
            for (b, wb) in self.branches.iter().enumerate() {
                let mut moments = vec![[Complex64::new(0.0, 0.0); 3]; modes];
                for (m, slot) in moments.iter_mut().enumerate() {
                    for (i, (&p, &w)) in grid.points().iter().zip(grid.weights()).enumerate() {
                        let base = w * tabulated[a][m][i].conj() * tabulated[b][m][i];
                        slot[0] += base;
                        slot[1] += base * p;
                        slot[2] += base * p * p;
                    }
                }
                let weight = wa.weight.conj() * wb.weight;
                let overlap_except = |skip: &[usize]| -> Complex64 {
                    (0..modes)
                        .filter(|m| !skip.contains(m))
                        .map(|m| moments[m][0])
                        .product()
                };
                norm += weight * overlap_except(&[]);
                for m in 0..modes {
                    first += weight * moments[m][1] * overlap_except(&[m]);
                    second += weight * moments[m][2] * overlap_except(&[m]);
                    for k in (0..modes).filter(|&k| k != m) {
                        second += weight * moments[m][1] * moments[k][1] * overlap_except(&[m, k]);
                    }
                }
            }
        }
        JointMoments {
            norm: norm.re,
            mean: first.re / norm.re,
            second: second.re / norm.re,
        }
    }
}

/// Moments of `p_tot = sum_m p_m` under the joint density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointMoments {
    /// Total probability; 1 for a normalised probe.
    pub norm: f64,
    pub mean: f64,
    pub second: f64,
}

impl JointMoments {
    pub fn variance(&self) -> f64 {
        self.second - self.mean * self.mean
    }
}

/// Equal-`p` slice density from exact wavefunctions.
pub fn marginal_oracle(p: f64, params: &MarginalParams) -> Result<f64> {
    Ok(PhaseProbe::ghz(&params.state)?.slice_density(p, params.phi))
}

fn require_real_alpha(state: &StateParams) -> Result<f64> {
    if state.alpha.im != 0.0 {
        return Err(Error::InvalidParameter {
            name: "alpha",
            reason: format!(
                "the first-order marginal assumes real alpha, got {}",
                state.alpha
            ),
        });
    }
    Ok(state.alpha.re)
}

/// First-order-in-phi marginal in the printed closed form, prefactor included.
pub fn marginal_printed(p: f64, params: &MarginalParams) -> Result<f64> {
    let state = &params.state;
    let alpha = require_real_alpha(state)?;
    let n = state.n;
    let d = state.d as f64;
    let phi = params.phi;
    let x = alpha * alpha;
    let norm = ghz_norm(state)?;
    let c_sq = norm
        * norm
        * PI.powf(-(1.0 + d) / 2.0)
        * 2f64.powi(-(n as i32))
        * (-(log_factorial(n) + laguerre(n, -x).ln())).exp()
        * (2.0 * x * (1.0 + d)).exp();
    let shift = alpha * FRAC_1_SQRT_2;
    let h = |z: f64| hermite(n, Complex64::new(z, 0.0)).re;
    let dh = |z: f64| hermite_derivative(n, Complex64::new(z, 0.0)).re;
    let (hm, hp) = (h(p - shift), h(p + shift));
    let lpi = f64::from(state.parity.index()) * PI;
    let arg = lpi + 2.0 * SQRT_2 * p * alpha * (1.0 + d);
    let drift = 2.0 * SQRT_2 * p * alpha * phi;
    let bracket = drift.exp() * hm * hm + (-drift).exp() * hp * hp + 2.0 * arg.cos() * hm * hp
        - SQRT_2
            * f64::from(n)
            * alpha
            * phi
            * arg.sin()
            * (dh(p - shift) * hp + hm * dh(p + shift));
    Ok(c_sq * (-p * p * (1.0 + d)).exp() * bracket)
}

/// Reports the first grid point where the printed first-order marginal is
/// negative beyond [`NEGATIVITY_TOLERANCE`].
pub fn check_printed_nonnegative(params: &MarginalParams, grid: &QuadratureGrid) -> Result<()> {
    for &p in grid.points() {
        let value = marginal_printed(p, params)?;
        if value < -NEGATIVITY_TOLERANCE {
            return Err(Error::NegativeMarginal { p, value });
        }
    }
    Ok(())
}

/// Which slice density feeds the signal integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarginalVariant {
    Oracle,
    Printed,
}

fn slice_integral(
    params: &MarginalParams,
    grid: &QuadratureGrid,
    variant: MarginalVariant,
    moment: i32,
) -> Result<f64> {
    match variant {
        MarginalVariant::Oracle => {
            let probe = PhaseProbe::ghz(&params.state)?;
            Ok(grid.integrate(|p| p.powi(moment) * probe.slice_density(p, params.phi)))
        }
        MarginalVariant::Printed => {
            let mut total = 0.0;
            for (&p, &w) in grid.points().iter().zip(grid.weights()) {
                total += w * p.powi(moment) * marginal_printed(p, params)?;
            }
            Ok(total)
        }
    }
}

fn grid_stable(coarse: f64, fine: f64) -> Result<f64> {
    let shift = (fine - coarse).abs();
    if shift > GRID_TOLERANCE * fine.abs().max(1.0) {
        return Err(Error::GridInadequate { shift });
    }
    Ok(coarse)
}

/// `int P(p|phi) dp` over the equal-`p` slice.
pub fn slice_mass(
    params: &MarginalParams,
    grid: &QuadratureGrid,
    variant: MarginalVariant,
) -> Result<f64> {
    let coarse = slice_integral(params, grid, variant, 0)?;
    let fine = slice_integral(params, &grid.refined()?, variant, 0)?;
    grid_stable(coarse, fine)
}

/// `<p_tot> = (1+d) int p P(p|phi) dp` over the equal-`p` slice.
pub fn signal_mean(params: &MarginalParams, grid: &QuadratureGrid) -> Result<f64> {
    signal_mean_with(params, grid, MarginalVariant::Oracle)
}

pub fn signal_mean_with(
    params: &MarginalParams,
    grid: &QuadratureGrid,
    variant: MarginalVariant,
) -> Result<f64> {
    let scale = 1.0 + params.state.d as f64;
    let coarse = scale * slice_integral(params, grid, variant, 1)?;
    let fine = scale * slice_integral(params, &grid.refined()?, variant, 1)?;
    grid_stable(coarse, fine)
}

/// Central difference with one Richardson step: `(4 D(h/2) - D(h)) / 3`.
fn richardson_derivative(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let central = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    (4.0 * central(0.5 * h) - central(h)) / 3.0
}

/// Error-propagation variance `Var(p_tot) / |d<p_tot>/dphi|^2` for an
/// arbitrary probe, from the joint quadrature density.
pub fn error_propagation(probe: &PhaseProbe, phi: f64, grid: &QuadratureGrid) -> Result<f64> {
    let at = probe.joint_moments(phi, grid);
    let variance = at.variance();
    let slope = richardson_derivative(|x| probe.joint_moments(x, grid).mean, phi, DERIVATIVE_STEP);
    if slope.abs() <= 1e-8 * (1.0 + variance.abs().sqrt()) {
        return Err(Error::ZeroDerivative { derivative: slope });
    }
    Ok(variance / (slope * slope))
}

/// Homodyne error-propagation bound for the GHZ-type PACS probe.
pub fn variance_homodyne(params: &MarginalParams, grid: &QuadratureGrid) -> Result<BoundResult> {
    let probe = PhaseProbe::ghz(&params.state)?;
    let value = error_propagation(&probe, params.phi, grid)?;
    Ok(BoundResult {
        protocol: Protocol::Homodyne,
        value,
        params: Some(params.state),
    })
}

fn asymptotic_prefactor(params: &StateParams) -> Result<(f64, f64, f64)> {
    if params.n == 0 {
        return Err(Error::InvalidParameter {
            name: "n",
            reason: "the asymptotic homodyne variances need n >= 1".into(),
        });
    }
    let alpha = params.alpha.norm();
    if alpha == 0.0 {
        return Err(Error::DivisionByZero("alpha"));
    }
    let norm = ghz_norm(params)?;
    let d = params.d as f64;
    let n = f64::from(params.n);
    Ok((PI.powf(0.5 * d) / (norm * norm * n * n), alpha, 1.0 + d))
}

/// Small-`alpha` asymptote `N^{-2} pi^{d/2} (2n+1) / (alpha^4 n^2) (1+d)^{1/2}`.
pub fn variance_small_alpha(params: &StateParams) -> Result<f64> {
    let (pre, alpha, modes) = asymptotic_prefactor(params)?;
    Ok(pre * (2.0 * f64::from(params.n) + 1.0) / alpha.powi(4) * modes.sqrt())
}

/// Large-`alpha` asymptote `N^{-2} pi^{d/2} / (alpha^{4n} n^2) (1+d)^{3/2}`.
pub fn variance_large_alpha(params: &StateParams) -> Result<f64> {
    let (pre, alpha, modes) = asymptotic_prefactor(params)?;
    Ok(pre / alpha.powf(4.0 * f64::from(params.n)) * modes.powf(1.5))
}
