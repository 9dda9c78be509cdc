#![allow(dead_code)] // each integration test pulls a different subset

use heun_core::params::HeunParameters;
use num_complex::Complex64;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn ci(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The Table-1 benchmark parameter set: t=9/2, q=-1, α=1, β=-3/2, γ=-0.14,
/// δ=4.32, ε from the Fuchs relation (= -3.68).
pub fn table1_params() -> HeunParameters {
    HeunParameters::new_fuchs(c(4.5), c(-1.0), c(1.0), c(-1.5), c(-0.14), c(4.32)).unwrap()
}

/// Degenerate family whose only solution with H0=1, H0'=0 is the constant 1:
/// q = 0, αβ = 0, γ = δ = ε = 0.
pub fn constant_params() -> HeunParameters {
    HeunParameters::new(c(2.0), c(0.0), c(0.0), c(1.0), c(0.0), c(0.0), c(0.0)).unwrap()
}

/// ε = 0, q = αβt reduction to the hypergeometric equation:
/// t=2, α=1, β=1/2, γ=1, δ=3/2, so ₂F₁(1, 1/2; 1; z) = (1−z)^{-1/2}.
pub fn hyp_params() -> HeunParameters {
    HeunParameters::new(c(2.0), c(1.0), c(1.0), c(0.5), c(1.0), c(1.5), c(0.0)).unwrap()
}

pub fn max_dev(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .fold(0.0f64, |m, (x, y)| m.max((x - y).norm()))
}
