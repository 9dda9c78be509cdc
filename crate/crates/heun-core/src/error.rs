use core::fmt;

use num_complex::Complex64;

/// Error type shared by the whole crate.
///
/// Every failure mode carries enough context to print a one-line diagnostic;
/// the CLI maps these onto process exit codes.
#[derive(Debug, Clone, PartialEq)]
pub enum HeunError {
    /// t ∈ {0, 1}: the Heun equation degenerates to fewer singular points.
    DegenerateSingularity { t: Complex64 },
    /// A coefficient function was evaluated within machine distance of a
    /// singular point.
    PoleEvaluation {
        z: Complex64,
        singularity: Complex64,
    },
    /// The Frobenius seed is unavailable (γt = 0) or was requested outside
    /// the disc of convergence of the local solution at 0.
    InvalidSeed { reason: &'static str },
    /// The seed series terms stopped decreasing: z0 is too far from 0 for
    /// the requested truncation order.
    SeedDivergence,
    /// A diagonal entry of the trapezoid resolvent system fell below the
    /// 1e-12 magnitude threshold; a smaller Δz separates the diagonal from 0.
    NearSingularDiagonal { index: usize },
    /// Kernel/vector dimensions or steps disagree.
    DimensionMismatch { left: usize, right: usize },
    /// Two solution tables could not be aligned on shared grid points.
    GridMismatch,
    /// evaluate_segment was handed a grid whose first point is not the
    /// Cauchy anchor.
    SegmentAnchorMismatch {
        z0: Complex64,
        grid_start: Complex64,
    },
    /// The requested straight segment passes within the puncture radius of a
    /// singular point.
    SegmentCrossesSingularity {
        singularity: Complex64,
        distance: f64,
    },
    /// A series oracle hit its term cap before reaching the tolerance.
    SlowConvergence,
    /// A precondition on plain arguments failed (documented per operation).
    InvalidArgument(&'static str),
}

impl fmt::Display for HeunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeunError::DegenerateSingularity { t } => write!(
                f,
                "degenerate singularity: t = {} coincides with 0 or 1",
                t
            ),
            HeunError::PoleEvaluation { z, singularity } => write!(
                f,
                "coefficient evaluated at z = {} within machine distance of the singular point {}",
                z, singularity
            ),
            HeunError::InvalidSeed { reason } => {
                write!(f, "invalid Frobenius seed: {}", reason)
            }
            HeunError::SeedDivergence => write!(
                f,
                "seed series terms do not decrease; move z0 closer to 0 or lower n_terms"
            ),
            HeunError::NearSingularDiagonal { index } => write!(
                f,
                "near-singular resolvent diagonal at index {}; retry with a smaller step",
                index
            ),
            HeunError::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {} vs {}", left, right)
            }
            HeunError::GridMismatch => {
                write!(f, "solution tables do not share aligned grid points")
            }
            HeunError::SegmentAnchorMismatch { z0, grid_start } => write!(
                f,
                "grid starts at {} but the Cauchy data is anchored at {}",
                grid_start, z0
            ),
            HeunError::SegmentCrossesSingularity {
                singularity,
                distance,
            } => write!(
                f,
                "segment passes within {:e} of the singular point {}",
                distance, singularity
            ),
            HeunError::SlowConvergence => {
                write!(f, "series oracle hit its term cap before converging")
            }
            HeunError::InvalidArgument(msg) => write!(f, "invalid argument: {}", msg),
        }
    }
}
