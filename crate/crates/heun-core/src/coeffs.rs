//! Scalar ingredients of the kernels: the coefficient functions B1, B2 of
//! the first-order system, the combination X, and the exponential weight w.

use num_complex::Complex64;

use crate::error::HeunError;
use crate::params::{HeunParameters, POLE_GUARD};

fn guard(z: Complex64, p: &HeunParameters, tol: f64) -> Result<(), HeunError> {
    if let Some(s) = p.near_singularity(z, tol) {
        return Err(HeunError::PoleEvaluation { z, singularity: s });
    }
    Ok(())
}

/// B1(z) = −γ/z − δ/(z−1) − ε/(z−t).
pub fn coeff_b1(z: Complex64, p: &HeunParameters) -> Result<Complex64, HeunError> {
    coeff_b1_with_guard(z, p, POLE_GUARD)
}

/// [`coeff_b1`] with a caller-chosen pole-guard tolerance.
pub fn coeff_b1_with_guard(
    z: Complex64,
    p: &HeunParameters,
    tol: f64,
) -> Result<Complex64, HeunError> {
    guard(z, p, tol)?;
    let one = Complex64::new(1.0, 0.0);
    Ok(-p.gamma / z - p.delta / (z - one) - p.epsilon / (z - p.t))
}

/// B2(z) = −(αβz − q)/(z(z−1)(z−t)).
pub fn coeff_b2(z: Complex64, p: &HeunParameters) -> Result<Complex64, HeunError> {
    coeff_b2_with_guard(z, p, POLE_GUARD)
}

/// [`coeff_b2`] with a caller-chosen pole-guard tolerance.
pub fn coeff_b2_with_guard(
    z: Complex64,
    p: &HeunParameters,
    tol: f64,
) -> Result<Complex64, HeunError> {
    guard(z, p, tol)?;
    let one = Complex64::new(1.0, 0.0);
    Ok(-(p.alpha * p.beta * z - p.q) / (z * (z - one) * (z - p.t)))
}

/// X(z) = (q − αβz)/((z−1)z(z−t)) − ε/(z−t) − γ/z − δ/(z−1) − 1,
/// i.e. X = B1 + B2 − 1.
///
/// The sign of the ε term is fixed so that X agrees with B1 + B2 − 1; with
/// the opposite sign the assembled solution fails every differential-equation
/// cross-check, so that variant is rejected.
pub fn eval_x(z: Complex64, p: &HeunParameters) -> Result<Complex64, HeunError> {
    let one = Complex64::new(1.0, 0.0);
    Ok(coeff_b1(z, p)? + coeff_b2(z, p)? - one)
}

/// One principal-branch power factor of the weight, with the exact special
/// cases the invariants rely on.
fn pow_principal(base: Complex64, exp: Complex64) -> Result<Complex64, HeunError> {
    if exp.re == 0.0 && exp.im == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if base.re == 0.0 && base.im == 0.0 {
        if exp.re > 0.0 && exp.im == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        return Err(HeunError::PoleEvaluation {
            z: base,
            singularity: base,
        });
    }
    Ok(base.powc(exp))
}

/// w(ζ) = ζ^γ (ζ−1)^δ (t−ζ)^ε e^ζ, each power on the principal branch (D1).
pub fn weight_w(zeta: Complex64, p: &HeunParameters) -> Result<Complex64, HeunError> {
    Ok(weight_w0(zeta, p)? * zeta.exp())
}

/// The algebraic part w0(ζ) = ζ^γ (ζ−1)^δ (t−ζ)^ε of the weight.
pub fn weight_w0(zeta: Complex64, p: &HeunParameters) -> Result<Complex64, HeunError> {
    let one = Complex64::new(1.0, 0.0);
    let f1 = pow_principal(zeta, p.gamma)?;
    let f2 = pow_principal(zeta - one, p.delta)?;
    let f3 = pow_principal(p.t - zeta, p.epsilon)?;
    Ok(f1 * f2 * f3)
}
