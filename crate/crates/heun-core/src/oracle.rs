//! Independent references used by the test suite and the convergence
//! command: a classical 4th-order stepper for the Heun ODE, the Gauss
//! hypergeometric series, and Richardson error/order estimation.
//!
//! The stepper shares only the B1/B2 evaluators with the main path and uses
//! none of the Volterra machinery (D13), so agreement is a genuine
//! cross-check of the path-sum assembly.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::coeffs::{coeff_b1, coeff_b2};
use crate::error::HeunError;
use crate::grid::SegmentGrid;
use crate::params::{CauchyData, HeunParameters};
use crate::pathsum::SolutionTable;

/// Summary of a comparison between runs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleReport {
    pub max_abs_deviation: f64,
    /// log2 error ratio between successive halvings; `None` when the finer
    /// difference sits at machine level and no order can be read off.
    pub observed_order: Option<f64>,
    pub points_compared: usize,
}

#[inline]
fn rhs(
    z: Complex64,
    u: Complex64,
    v: Complex64,
    p: &HeunParameters,
) -> Result<(Complex64, Complex64), HeunError> {
    Ok((v, coeff_b1(z, p)? * v + coeff_b2(z, p)? * u))
}

/// Classical 4th-order initial-value integration of u' = v,
/// v' = B1(z)v + B2(z)u along the grid, with `substeps` fixed steps per grid
/// interval. Global error O((Δz/substeps)⁴).
pub fn rk_reference(
    p: &HeunParameters,
    cauchy: &CauchyData,
    grid: &SegmentGrid,
    substeps: usize,
) -> Result<SolutionTable, HeunError> {
    if substeps < 1 {
        return Err(HeunError::InvalidArgument("substeps must be >= 1"));
    }
    let n = grid.n_points;
    let mut h = Vec::with_capacity(n);
    let mut hp = Vec::with_capacity(n);
    let mut u = cauchy.h0;
    let mut v = cauchy.h0p;
    h.push(u);
    hp.push(v);
    for i in 1..n {
        let step = (grid.points[i] - grid.points[i - 1]) / (substeps as f64);
        let mut z = grid.points[i - 1];
        for _ in 0..substeps {
            let (k1u, k1v) = rhs(z, u, v, p)?;
            let zh = z + step * 0.5;
            let (k2u, k2v) = rhs(zh, u + step * 0.5 * k1u, v + step * 0.5 * k1v, p)?;
            let (k3u, k3v) = rhs(zh, u + step * 0.5 * k2u, v + step * 0.5 * k2v, p)?;
            let zf = z + step;
            let (k4u, k4v) = rhs(zf, u + step * k3u, v + step * k3v, p)?;
            let sixth = step / 6.0;
            u += sixth * (k1u + (k2u + k3u) * 2.0 + k4u);
            v += sixth * (k1v + (k2v + k3v) * 2.0 + k4v);
            z = zf;
        }
        h.push(u);
        hp.push(v);
    }
    Ok(SolutionTable {
        points: grid.points.clone(),
        h,
        hp,
        params: *p,
        error_estimate: None,
        n1: 1,
        n2: n,
    })
}

/// Gauss hypergeometric series ₂F₁(a,b;c;z) = Σ (a)_k(b)_k/((c)_k k!) z^k,
/// summed until the last term drops below tol·|sum|, capped at 10000 terms
/// (D14).
pub fn hyp2f1_series(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    z: Complex64,
    tol: f64,
) -> Result<Complex64, HeunError> {
    if z.norm() >= 1.0 {
        return Err(HeunError::InvalidArgument("hyp2f1_series requires |z| < 1"));
    }
    if c.im == 0.0 && c.re <= 0.0 && libm::fabs(c.re - libm::round(c.re)) < 1e-12 {
        return Err(HeunError::InvalidArgument("c must not be a nonpositive integer"));
    }
    let one = Complex64::new(1.0, 0.0);
    let mut term = one;
    let mut sum = one;
    for k in 0..10_000usize {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
        if term.norm() <= tol * sum.norm() {
            return Ok(sum);
        }
    }
    Err(HeunError::SlowConvergence)
}

fn aligned_deviation(
    coarse: &SolutionTable,
    fine: &SolutionTable,
) -> Result<(f64, usize), HeunError> {
    let nc = coarse.points.len();
    if fine.points.len() != 2 * nc - 1 {
        return Err(HeunError::GridMismatch);
    }
    let mut max_dev = 0.0f64;
    for i in 0..nc {
        let zc = coarse.points[i];
        let zf = fine.points[2 * i];
        if (zc - zf).norm() > 1e-12 * (1.0 + zc.norm()) {
            return Err(HeunError::GridMismatch);
        }
        max_dev = max_dev.max((coarse.h[i] - fine.h[2 * i]).norm());
    }
    Ok((max_dev, nc))
}

/// Richardson error estimate of the fine table from a coarse/fine pair at
/// steps Δz and Δz/2: max |H_fine − H_coarse|/(2² − 1) over shared points.
pub fn richardson_error(
    coarse: &SolutionTable,
    fine: &SolutionTable,
) -> Result<OracleReport, HeunError> {
    let (max_dev, n) = aligned_deviation(coarse, fine)?;
    Ok(OracleReport {
        max_abs_deviation: max_dev / 3.0,
        observed_order: None,
        points_compared: n,
    })
}

/// Observed convergence order from a step triple Δz, Δz/2, Δz/4:
/// p = log2(e1/e2) with e1 = max|H_coarse − H_mid|, e2 = max|H_mid − H_fine|.
pub fn richardson_order(
    coarse: &SolutionTable,
    mid: &SolutionTable,
    fine: &SolutionTable,
) -> Result<OracleReport, HeunError> {
    let (e1, _) = aligned_deviation(coarse, mid)?;
    let (e2, n) = aligned_deviation(mid, fine)?;
    let scale = mid
        .h
        .iter()
        .fold(0.0f64, |m, v| m.max(v.norm()));
    let order = if e2 > 1e-14 * (1.0 + scale) && e1 > 0.0 {
        Some(libm::log2(e1 / e2))
    } else {
        None
    };
    Ok(OracleReport {
        max_abs_deviation: e2 / 3.0,
        observed_order: order,
        points_compared: n,
    })
}
