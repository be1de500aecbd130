//! Laguerre and Hermite values used throughout the bounds.

use qmetro::special_poly::{hermite, hermite_functions, laguerre, laguerre_sequence};
use qmetro::Complex64;

fn main() {
    println!("L_n(-4) for n = 0..=10:");
    for (n, v) in laguerre_sequence(10, -4.0).iter().enumerate() {
        println!("  n={n:2}  {v:.6}");
    }
    println!("L_7(1) = {:.9}", laguerre(7, 1.0));

    let z = Complex64::new(0.3, 0.8);
    println!("H_5({z}) = {:.6}", hermite(5, z));

    // orthonormal oscillator functions at the origin; odd orders vanish
    let psi = hermite_functions(6, 0.0);
    println!("psi_k(0) = {psi:.6?}");
}
