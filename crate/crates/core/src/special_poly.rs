//! Laguerre and Hermite polynomials and log-factorials.
//!
//! Everything here is evaluated by three-term recurrence. Factorial ratios
//! elsewhere in the crate go through [`log_factorial`] so that `(n+4)!`-sized
//! terms never overflow.

use std::sync::OnceLock;

use num_complex::Complex64;

const LOG_FACTORIAL_TABLE: usize = 512;

fn log_factorial_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = Vec::with_capacity(LOG_FACTORIAL_TABLE);
        let mut acc = 0.0_f64;
        table.push(0.0);
        for k in 1..LOG_FACTORIAL_TABLE {
            acc += (k as f64).ln();
            table.push(acc);
        }
        table
    })
}

/// `ln(k!)`, accumulated exactly term by term.
pub fn log_factorial(k: u32) -> f64 {
    let table = log_factorial_table();
    match table.get(k as usize) {
        Some(&v) => v,
        None => {
            let mut acc = table[LOG_FACTORIAL_TABLE - 1];
            for j in LOG_FACTORIAL_TABLE as u32..=k {
                acc += f64::from(j).ln();
            }
            acc
        }
    }
}

/// Laguerre polynomial `L_n(x)` via `(k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}`.
pub fn laguerre(n: u32, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut curr = 1.0 - x;
    for k in 1..n {
        let k = f64::from(k);
        let next = ((2.0 * k + 1.0 - x) * curr - k * prev) / (k + 1.0);
        prev = curr;
        curr = next;
    }
    curr
}

/// All of `L_0(x) ..= L_n(x)` from a single recurrence pass.
pub fn laguerre_sequence(n: u32, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(1.0);
    if n == 0 {
        return out;
    }
    out.push(1.0 - x);
    for k in 1..n as usize {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * out[k] - kf * out[k - 1]) / (kf + 1.0);
        out.push(next);
    }
    out
}

/// Physicists' Hermite polynomial `H_n(z)` for complex argument.
pub fn hermite(n: u32, z: Complex64) -> Complex64 {
    let mut prev = Complex64::new(1.0, 0.0);
    if n == 0 {
        return prev;
    }
    let mut curr = 2.0 * z;
    for k in 1..n {
        let next = 2.0 * z * curr - 2.0 * f64::from(k) * prev;
        prev = curr;
        curr = next;
    }
    curr
}

/// `H'_n(z) = 2n H_{n-1}(z)`.
pub fn hermite_derivative(n: u32, z: Complex64) -> Complex64 {
    if n == 0 {
        return Complex64::new(0.0, 0.0);
    }
    2.0 * f64::from(n) * hermite(n - 1, z)
}

/// Normalised Hermite functions `psi_0(x) ..= psi_kmax(x)`,
/// `psi_k = (2^k k! sqrt(pi))^{-1/2} H_k(x) e^{-x^2/2}`.
///
/// Uses the orthonormal recurrence, which stays finite where `H_k` alone
/// would overflow.
pub fn hermite_functions(kmax: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(kmax + 1);
    out.push(std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp());
    if kmax == 0 {
        return out;
    }
    out.push(std::f64::consts::SQRT_2 * x * out[0]);
    for k in 1..kmax {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
        out.push(next);
    }
    out
}

/// `(n+k)!/n! * L_{n+k}(x)` for `k = 0..=extra`.
///
/// These shifted-and-scaled Laguerre values are the building blocks of every
/// photon-added moment; scaling by `n!` keeps them finite for large `n`.
pub fn scaled_laguerre_tail(n: u32, extra: u32, x: f64) -> Vec<f64> {
    let seq = laguerre_sequence(n + extra, x);
    let ln_n = log_factorial(n);
    (0..=extra)
        .map(|k| {
            let order = n + k;
            (log_factorial(order) - ln_n).exp() * seq[order as usize]
        })
        .collect()
}
