use num_complex::Complex64;

use crate::error::HeunError;

/// Default minimum allowed distance between evaluation points and the finite
/// singularities {0, 1, t}.
pub const DEFAULT_PUNCTURE_RADIUS: f64 = 1e-4;

/// Relative tolerance defining "within machine distance of a pole" (D3).
pub const POLE_GUARD: f64 = 1e-13;

/// Tolerance on the Fuchs relation ε = 1 + α + β − γ − δ (warn-only, D4).
pub const FUCHS_TOL: f64 = 1e-12;

/// The seven complex constants of the general Heun equation
///
/// ```text
/// H'' + (γ/z + δ/(z-1) + ε/(z-t)) H' + (αβz - q)/(z(z-1)(z-t)) H = 0.
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeunParameters {
    pub t: Complex64,
    pub q: Complex64,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
    pub delta: Complex64,
    pub epsilon: Complex64,
    fuchs_satisfied: bool,
}

impl HeunParameters {
    /// Builds and validates a parameter set. Rejects t ∈ {0, 1}; a violated
    /// Fuchs relation only clears the `fuchs_satisfied` flag.
    pub fn new(
        t: Complex64,
        q: Complex64,
        alpha: Complex64,
        beta: Complex64,
        gamma: Complex64,
        delta: Complex64,
        epsilon: Complex64,
    ) -> Result<Self, HeunError> {
        let one = Complex64::new(1.0, 0.0);
        if t.norm() < POLE_GUARD || (t - one).norm() < POLE_GUARD * 2.0 {
            return Err(HeunError::DegenerateSingularity { t });
        }
        let fuchs = one + alpha + beta - gamma - delta;
        let fuchs_satisfied = (epsilon - fuchs).norm() <= FUCHS_TOL * (1.0 + epsilon.norm());
        Ok(HeunParameters {
            t,
            q,
            alpha,
            beta,
            gamma,
            delta,
            epsilon,
            fuchs_satisfied,
        })
    }

    /// Same as [`HeunParameters::new`] with ε fixed from the Fuchs relation.
    pub fn new_fuchs(
        t: Complex64,
        q: Complex64,
        alpha: Complex64,
        beta: Complex64,
        gamma: Complex64,
        delta: Complex64,
    ) -> Result<Self, HeunError> {
        let epsilon = Complex64::new(1.0, 0.0) + alpha + beta - gamma - delta;
        Self::new(t, q, alpha, beta, gamma, delta, epsilon)
    }

    /// True iff |ε − (1 + α + β − γ − δ)| ≤ 1e−12·(1 + |ε|).
    pub fn fuchs_satisfied(&self) -> bool {
        self.fuchs_satisfied
    }

    /// The three finite singular points 0, 1, t.
    pub fn singularities(&self) -> [Complex64; 3] {
        [
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            self.t,
        ]
    }

    /// Returns the singularity within `tol·(1+|s|)` of `z`, if any.
    pub fn near_singularity(&self, z: Complex64, tol: f64) -> Option<Complex64> {
        self.singularities()
            .into_iter()
            .find(|s| (z - s).norm() < tol * (1.0 + s.norm()))
    }
}

/// Re-validates an existing parameter set (recomputes the Fuchs flag).
pub fn validate_params(p: &HeunParameters) -> Result<HeunParameters, HeunError> {
    HeunParameters::new(p.t, p.q, p.alpha, p.beta, p.gamma, p.delta, p.epsilon)
}

/// An anchor point with the solution value and derivative there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CauchyData {
    pub z0: Complex64,
    pub h0: Complex64,
    pub h0p: Complex64,
}

impl CauchyData {
    /// Builds Cauchy data, rejecting anchors at a singular point.
    pub fn new(
        z0: Complex64,
        h0: Complex64,
        h0p: Complex64,
        p: &HeunParameters,
    ) -> Result<Self, HeunError> {
        if let Some(s) = p.near_singularity(z0, POLE_GUARD) {
            return Err(HeunError::PoleEvaluation { z: z0, singularity: s });
        }
        Ok(CauchyData { z0, h0, h0p })
    }
}
