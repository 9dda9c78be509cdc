//! Frobenius seeding of the regular local solution at z = 0, the branch with
//! H(0) = 1 and H'(0) = q/(γt).

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::HeunError;
use crate::params::{CauchyData, HeunParameters};

/// Default truncation order used by the higher-level entry points.
pub const DEFAULT_SEED_TERMS: usize = 24;

/// Series coefficients c_0 .. c_{n_terms-1} of the regular solution at 0,
/// from the three-term recurrence
///
/// ```text
/// t(n+1)(n+γ) c_{n+1} = [ (1+t)n(n−1) + (γ(1+t)+δt+ε)n + q ] c_n
///                       − [ (n−1)(n−2) + (γ+δ+ε)(n−1) + αβ ] c_{n−1}
/// ```
///
/// with c_0 = 1, c_1 = q/(γt) (D2; gated on the ODE-residual check in the
/// test suite, not trusted as transcribed).
pub fn series_coefficients(
    p: &HeunParameters,
    n_terms: usize,
) -> Result<Vec<Complex64>, HeunError> {
    if n_terms < 2 {
        return Err(HeunError::InvalidArgument("seed needs n_terms >= 2"));
    }
    if (p.gamma * p.t).norm() == 0.0 {
        return Err(HeunError::InvalidSeed {
            reason: "gamma * t = 0, the regular seed H'(0) = q/(gamma t) is undefined",
        });
    }
    let one = Complex64::new(1.0, 0.0);
    let mut c = Vec::with_capacity(n_terms);
    c.push(one);
    c.push(p.q / (p.gamma * p.t));
    for n in 1..n_terms - 1 {
        let nf = Complex64::new(n as f64, 0.0);
        let a = (one + p.t) * nf * (nf - one)
            + (p.gamma * (one + p.t) + p.delta * p.t + p.epsilon) * nf
            + p.q;
        let b = (nf - one) * (nf - 2.0)
            + (p.gamma + p.delta + p.epsilon) * (nf - one)
            + p.alpha * p.beta;
        let denom = p.t * (nf + one) * (nf + p.gamma);
        if denom.norm() == 0.0 {
            // γ a nonpositive integer: the regular Frobenius branch breaks down
            return Err(HeunError::InvalidSeed {
                reason: "recurrence denominator vanished (gamma is a nonpositive integer)",
            });
        }
        let next = (a * c[n] - b * c[n - 1]) / denom;
        c.push(next);
    }
    Ok(c)
}

/// Evaluates the truncated regular series and its derivative at z0 and
/// packages the result as Cauchy data anchored there.
pub fn local_series_seed(
    p: &HeunParameters,
    z0: Complex64,
    n_terms: usize,
) -> Result<CauchyData, HeunError> {
    let r = z0.norm();
    if r >= f64::min(1.0, p.t.norm()) {
        return Err(HeunError::InvalidSeed {
            reason: "z0 outside the disc of convergence of the local solution at 0",
        });
    }
    let c = series_coefficients(p, n_terms)?;
    // Horner for H and H'
    let n = c.len();
    let mut h = c[n - 1];
    let mut hp = Complex64::new(0.0, 0.0);
    for k in (0..n - 1).rev() {
        hp = hp * z0 + h;
        h = h * z0 + c[k];
    }
    // divergence check on the term magnitudes |c_k z0^k|
    if n >= 4 && r > 0.0 {
        let mut terms = Vec::with_capacity(n);
        let mut zp = 1.0;
        for ck in &c {
            terms.push(ck.norm() * zp);
            zp *= r;
        }
        let last = terms[n - 1];
        if last > 0.0 && last >= terms[n - 4] {
            return Err(HeunError::SeedDivergence);
        }
    }
    Ok(CauchyData { z0, h0: h, h0p: hp })
}
