//! Closed-form quantum Fisher information and Cramér–Rao bounds.
//!
//! All photon-added moments are built from `(n+k)!/n! * L_{n+k}(-+|alpha|^2)`
//! (see [`crate::special_poly::scaled_laguerre_tail`]), so the `n!` prefactors
//! cancel analytically and nothing overflows for the orders used here.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::special_poly::{laguerre, log_factorial, scaled_laguerre_tail};
use crate::states::{ghz_norm, Parity, StateParams};

/// Relative tolerance of the positive-semidefinite check.
pub const PSD_TOLERANCE: f64 = 1e-10;
/// Relative eigenvalue floor below which a QFIM is treated as singular.
pub const SINGULAR_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Protocol {
    Independent,
    Linear,
    Nonlinear,
    Homodyne,
    #[serde(rename = "oracle")]
    OracleTraceInverse,
}

impl Protocol {
    pub const ALL: [Protocol; 5] = [
        Protocol::Independent,
        Protocol::Linear,
        Protocol::Nonlinear,
        Protocol::Homodyne,
        Protocol::OracleTraceInverse,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Protocol::Independent => "independent",
            Protocol::Linear => "linear",
            Protocol::Nonlinear => "nonlinear",
            Protocol::Homodyne => "homodyne",
            Protocol::OracleTraceInverse => "oracle",
        }
    }
}

impl std::str::FromStr for Protocol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Protocol::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter {
                name: "protocols",
                reason: format!("unknown protocol `{s}`"),
            })
    }
}

impl std::fmt::Display for Protocol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Total variance `|delta phi|^2` produced by one protocol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundResult {
    pub protocol: Protocol,
    pub value: f64,
    pub params: Option<StateParams>,
}

/// Real symmetric QFIM.
///
/// The closed-form simultaneous QFIM has the two-value form `A*I + B*J`
/// (`J` the all-ones matrix) and is kept structured; oracle QFIMs are dense.
#[derive(Debug, Clone, PartialEq)]
pub enum FisherMatrix {
    Structured {
        dim: usize,
        diagonal: f64,
        offdiagonal: f64,
    },
    Dense(DMatrix<f64>),
}

impl FisherMatrix {
    pub fn structured(dim: usize, diagonal: f64, offdiagonal: f64) -> Self {
        FisherMatrix::Structured {
            dim,
            diagonal,
            offdiagonal,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            FisherMatrix::Structured { dim, .. } => *dim,
            FisherMatrix::Dense(m) => m.nrows(),
        }
    }

    pub fn get(&self, p: usize, q: usize) -> f64 {
        match self {
            FisherMatrix::Structured {
                diagonal,
                offdiagonal,
                ..
            } => {
                if p == q {
                    *diagonal
                } else {
                    *offdiagonal
                }
            }
            FisherMatrix::Dense(m) => m[(p, q)],
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        match self {
            FisherMatrix::Dense(m) => m.clone(),
            _ => {
                let d = self.dim();
                DMatrix::from_fn(d, d, |p, q| self.get(p, q))
            }
        }
    }

    /// Eigenvalues in ascending order.
    ///
    /// For `A*I + B*J` they are `A + d*B` (once) and `A` (`d-1` times), where
    /// `A = diagonal - offdiagonal` and `B = offdiagonal`.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut values = match self {
            FisherMatrix::Structured {
                dim,
                diagonal,
                offdiagonal,
            } => {
                let a = diagonal - offdiagonal;
                let mut v = vec![a; dim - 1];
                v.push(a + *dim as f64 * offdiagonal);
                v
            }
            FisherMatrix::Dense(m) => m.clone().symmetric_eigenvalues().iter().copied().collect(),
        };
        values.sort_by(f64::total_cmp);
        values
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        match self {
            FisherMatrix::Structured {
                dim,
                diagonal,
                offdiagonal,
            } => {
                let d = *dim as f64;
                (d * diagonal * diagonal + d * (d - 1.0) * offdiagonal * offdiagonal).sqrt()
            }
            FisherMatrix::Dense(m) => m.norm(),
        }
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|p| self.get(p, p)).sum()
    }

    /// Fails with [`Error::PsdViolation`] when an eigenvalue is below
    /// `-PSD_TOLERANCE * ||F||`.
    pub fn check_psd(&self) -> Result<()> {
        let min = self.eigenvalues()[0];
        if min < -PSD_TOLERANCE * self.norm() {
            return Err(Error::PsdViolation {
                min_eigenvalue: min,
            });
        }
        Ok(())
    }
}

/// `Tr(F^{-1})`.
pub fn qcrb_trace_inverse(fisher: &FisherMatrix) -> Result<BoundResult> {
    fisher.check_psd()?;
    Ok(BoundResult {
        protocol: Protocol::OracleTraceInverse,
        value: trace_inverse_unchecked(fisher)?,
        params: None,
    })
}

/// `Tr(F^{-1})` for any invertible symmetric `F`, definite or not.
///
/// Only used to report how far an indefinite closed-form QFIM is from the
/// published bounds; bounds themselves go through [`qcrb_trace_inverse`].
pub fn trace_inverse_unchecked(fisher: &FisherMatrix) -> Result<f64> {
    let eigen = fisher.eigenvalues();
    let min_abs = eigen.iter().map(|v| v.abs()).fold(f64::INFINITY, f64::min);
    if !(min_abs > SINGULAR_TOLERANCE * fisher.norm()) {
        return Err(Error::SingularMatrix {
            min_abs_eigenvalue: min_abs,
        });
    }
    match fisher {
        FisherMatrix::Structured {
            dim,
            diagonal,
            offdiagonal,
        } => {
            let d = *dim as f64;
            let a = diagonal - offdiagonal;
            Ok((d - 1.0) / a + 1.0 / (a + d * offdiagonal))
        }
        FisherMatrix::Dense(m) => {
            m.clone()
                .try_inverse()
                .map(|inv| inv.trace())
                .ok_or(Error::SingularMatrix {
                    min_abs_eigenvalue: min_abs,
                })
        }
    }
}

/// `det(F)/Tr(F)` for two-parameter problems.
pub fn effective_qfi(fisher: &FisherMatrix) -> Result<f64> {
    if fisher.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            actual: fisher.dim(),
        });
    }
    let det = fisher.get(0, 0) * fisher.get(1, 1) - fisher.get(0, 1) * fisher.get(1, 0);
    Ok(det / fisher.trace())
}

/// Laguerre combinations shared by every moment, evaluated at `-|alpha|^2`
/// (direct terms) and `+|alpha|^2` (cross-branch terms), scaled by `1/n!`.
struct ScaledLaguerre {
    direct: Vec<f64>,
    cross: Vec<f64>,
    /// `L_n(-|alpha|^2)`.
    base: f64,
}

impl ScaledLaguerre {
    fn new(alpha_sq: f64, n: u32, extra: u32) -> Self {
        Self {
            direct: scaled_laguerre_tail(n, extra, -alpha_sq),
            cross: scaled_laguerre_tail(n, extra, alpha_sq),
            base: laguerre(n, -alpha_sq),
        }
    }

    /// `sum_k coeffs[k] * ((n+k)!/n!) L_{n+k}`, direct + weighted cross.
    fn combine(&self, coeffs: &[f64], cross_weight: f64) -> f64 {
        let dot = |v: &[f64]| coeffs.iter().zip(v).map(|(c, l)| c * l).sum::<f64>();
        dot(&self.direct) + cross_weight * dot(&self.cross)
    }
}

// a^n f(a^dag a) a^dag^n in anti-normal order:
//   n    -> (n+1)!L_{n+1} - n!L_n
//   n^2  -> (n+2)!L_{n+2} - 3(n+1)!L_{n+1} + n!L_n
//   n^4  -> (n+4)!L_{n+4} - 10(n+3)!L_{n+3} + 25(n+2)!L_{n+2} - 15(n+1)!L_{n+1} + n!L_n
const FIRST_MOMENT: [f64; 2] = [-1.0, 1.0];
const SECOND_MOMENT: [f64; 3] = [1.0, -3.0, 1.0];
const FOURTH_MOMENT: [f64; 5] = [1.0, -15.0, 25.0, -10.0, 1.0];

/// Single-parameter QFI of the three-mode GHZ-type PACS with `H = a^dag a`
/// on the photon-added mode.
pub fn qfi_independent(params: &StateParams) -> Result<f64> {
    let x = params.alpha_sq();
    let three_mode = StateParams { d: 2, ..*params };
    let c_sq = ghz_norm(&three_mode)?.powi(2);
    let lag = ScaledLaguerre::new(x, params.n, 2);
    let cross = params.parity.sign() * (-6.0 * x).exp();
    let prefactor = 2.0 * c_sq / lag.base;
    let second = prefactor * lag.combine(&SECOND_MOMENT, cross);
    let first = prefactor * lag.combine(&FIRST_MOMENT, cross);
    Ok(4.0 * (second - first * first))
}

/// `d / F`.
pub fn qcrb_independent(params: &StateParams) -> Result<BoundResult> {
    let qfi = qfi_independent(params)?;
    if !(qfi > 0.0) {
        return Err(Error::DivisionByZero("qfi_independent"));
    }
    Ok(BoundResult {
        protocol: Protocol::Independent,
        value: params.d as f64 / qfi,
        params: Some(*params),
    })
}

/// Single-phase uncertainty `delta phi = F^{-1/2}`, the quantity that is
/// compared against `1/N` and `1/sqrt(N)`.
pub fn independent_phase_uncertainty(params: &StateParams) -> Result<f64> {
    let single = StateParams { d: 1, ..*params };
    Ok(qcrb_independent(&single)?.value.sqrt())
}

/// The `b`, `g`, `h` quantities of the simultaneous linear protocol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bgh {
    pub b: f64,
    pub g: f64,
    pub h: f64,
}

/// `b`, `g` and `h` with the `n!` factors divided out: `b*n!`, `g/n!`, `h/n!`.
/// Products `b*g`, `b*h` and ratios `h/g` are unchanged.
fn scaled_bgh(params: &StateParams) -> Result<Bgh> {
    let x = params.alpha_sq();
    let norm_sq = ghz_norm(params)?.powi(2);
    let lag = ScaledLaguerre::new(x, params.n, 2);
    let cross = params.parity.sign() * (-2.0 * params.d as f64 * x).exp();
    Ok(Bgh {
        b: 2.0 * norm_sq / lag.base,
        g: lag.combine(&SECOND_MOMENT, cross),
        h: lag.combine(&FIRST_MOMENT, cross),
    })
}

pub fn bgh(params: &StateParams) -> Result<Bgh> {
    let scaled = scaled_bgh(params)?;
    let n_fact = log_factorial(params.n).exp();
    Ok(Bgh {
        b: scaled.b / n_fact,
        g: scaled.g * n_fact,
        h: scaled.h * n_fact,
    })
}

/// `F_pq = 4 [delta_pq b g - b^2 h^2]`.
///
/// Returns [`Error::PsdViolation`] in regimes where this matrix is indefinite.
pub fn qfim_linear(params: &StateParams) -> Result<FisherMatrix> {
    let fisher = qfim_linear_unchecked(params)?;
    fisher.check_psd()?;
    Ok(fisher)
}

/// [`qfim_linear`] without the semidefiniteness check, for diagnostics.
pub fn qfim_linear_unchecked(params: &StateParams) -> Result<FisherMatrix> {
    let Bgh { b, g, h } = scaled_bgh(params)?;
    let bh_sq = (b * h).powi(2);
    Ok(FisherMatrix::structured(
        params.d,
        4.0 * (b * g - bh_sq),
        -4.0 * bh_sq,
    ))
}

/// `d (sqrt(d)+1)^2 h^2 / (4 g^2)`.
pub fn qcrb_linear(params: &StateParams) -> Result<BoundResult> {
    let Bgh { g, h, .. } = scaled_bgh(params)?;
    if g == 0.0 {
        return Err(Error::DivisionByZero("g"));
    }
    Ok(BoundResult {
        protocol: Protocol::Linear,
        value: simultaneous_prefactor(params.d) * (h / g).powi(2),
        params: Some(*params),
    })
}

fn simultaneous_prefactor(d: usize) -> f64 {
    let d = d as f64;
    d * (d.sqrt() + 1.0).powi(2) / 4.0
}

/// `r` and `s` of the nonlinear protocol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rs {
    pub r: f64,
    pub s: f64,
}

fn scaled_rs(params: &StateParams) -> Result<Rs> {
    ghz_norm(params)?;
    let x = params.alpha_sq();
    let lag = ScaledLaguerre::new(x, params.n, 4);
    let cross = params.parity.sign() * (-2.0 * params.d as f64 * x).exp();
    Ok(Rs {
        r: lag.combine(&FOURTH_MOMENT, cross),
        s: lag.combine(&SECOND_MOMENT, cross),
    })
}

pub fn rs(params: &StateParams) -> Result<Rs> {
    let scaled = scaled_rs(params)?;
    let n_fact = log_factorial(params.n).exp();
    Ok(Rs {
        r: scaled.r * n_fact,
        s: scaled.s * n_fact,
    })
}

/// `d (sqrt(d)+1)^2 s^2 / (4 r^2)`.
pub fn qcrb_nonlinear(params: &StateParams) -> Result<BoundResult> {
    let Rs { r, s } = scaled_rs(params)?;
    if r == 0.0 {
        return Err(Error::DivisionByZero("r"));
    }
    Ok(BoundResult {
        protocol: Protocol::Nonlinear,
        value: simultaneous_prefactor(params.d) * (s / r).powi(2),
        params: Some(*params),
    })
}

/// Mean photon number of a single PACS mode,
/// `(n+1) L_{n+1}(-|alpha|^2) / L_n(-|alpha|^2) - 1`.
pub fn mean_photon_pacs(alpha_sq: f64, n: u32) -> f64 {
    f64::from(n + 1) * laguerre(n + 1, -alpha_sq) / laguerre(n, -alpha_sq) - 1.0
}

fn positive_photons(mean_photons: f64) -> Result<f64> {
    if !(mean_photons > 0.0) {
        return Err(Error::InvalidParameter {
            name: "mean_photons",
            reason: format!("must be positive, got {mean_photons}"),
        });
    }
    Ok(mean_photons)
}

/// `1 / N`.
pub fn heisenberg_limit(mean_photons: f64) -> Result<f64> {
    Ok(positive_photons(mean_photons)?.recip())
}

/// `1 / sqrt(N)`.
pub fn standard_quantum_limit(mean_photons: f64) -> Result<f64> {
    Ok(positive_photons(mean_photons)?.sqrt().recip())
}

/// Convenience: parity from the integer `l`.
pub fn parity(l: u8) -> Result<Parity> {
    Parity::try_from(l)
}
