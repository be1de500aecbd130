//! Quantum Cramér–Rao bounds for multiple-phase estimation with photon-added
//! GHZ-type coherent states.
//!
//! The crate is organised bottom-up:
//!
//! - [`special_poly`]: Laguerre/Hermite polynomials and log-factorials.
//! - [`states`]: coherent, photon-added and GHZ-type states, both as closed
//!   forms and as truncated Fock-basis branch products.
//! - [`fisher_bounds`]: closed-form QFI/QFIM and the independent, linear and
//!   nonlinear total-variance bounds.
//! - [`fock_oracle`]: brute-force expectation values and QFIMs computed from
//!   the truncated Fock representation.
//! - [`homodyne`]: p-quadrature amplitudes, marginals and error propagation.
//! - [`sweep`]: parameter sweeps, figure presets and CSV/JSON output.
//! - [`diagnostics`]: closed-form vs brute-force comparison reports.
//!
//! The `qmetro` binary is a thin command-line layer over the last two.

pub mod diagnostics;
pub mod error;
pub mod fisher_bounds;
pub mod fock_oracle;
pub mod homodyne;
pub mod special_poly;
pub mod states;
pub mod sweep;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use states::{Parity, StateParams};
