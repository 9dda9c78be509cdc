//! Numerical evaluation of general Heun functions from their integral-series
//! (path-sum) representation.
//!
//! The general Heun equation
//!
//! ```text
//! H'' + (γ/z + δ/(z-1) + ε/(z-t)) H' + (αβz - q)/(z(z-1)(z-t)) H = 0
//! ```
//!
//! has regular singular points at 0, 1, t and ∞. This crate evaluates the
//! solution of the associated Cauchy problem along straight segments in the
//! complex plane by reducing the unconditionally convergent integral series
//! for the evolution operator to triangular linear solves over a discretized
//! Volterra composition algebra. The discretization uses the trapezoidal rule
//! throughout and converges with an error scaling of O(Δz²).
//!
//! The crate is `no_std` (with `alloc`); all IO, file formats and the command
//! line front end live in the companion `heun-cli` crate.
//!
//! Modules:
//! - [`params`]: Heun parameter set and Cauchy data.
//! - [`grid`]: uniform discretization of straight complex segments.
//! - [`coeffs`]: the scalar coefficient functions B1, B2, X and the weight w.
//! - [`seed`]: Frobenius series seeding of the regular solution at 0.
//! - [`volterra`]: triangular kernel matrices, ∗-products, ∗-resolvents.
//! - [`pathsum`]: kernel assembly and segment/interval evaluation.
//! - [`oracle`]: independent reference implementations (Runge-Kutta stepper,
//!   Gauss hypergeometric series, Richardson error estimation).

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod coeffs;
pub mod error;
pub mod grid;
pub mod oracle;
pub mod params;
pub mod pathsum;
pub mod seed;
pub mod volterra;

pub use error::HeunError;
pub use grid::SegmentGrid;
pub use params::{CauchyData, HeunParameters, DEFAULT_PUNCTURE_RADIUS};
pub use pathsum::{RefineConfig, SolutionTable};

/// Complex double precision scalar used throughout.
pub type C64 = num_complex::Complex64;
