//! The discretized Volterra ∗-algebra: lower-triangular kernel matrices,
//! trapezoid-corrected ∗-products, and ∗-resolvents by forward substitution.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::HeunError;
use crate::grid::SegmentGrid;

/// Magnitude floor for resolvent diagonal entries (D5).
pub const DIAGONAL_FLOOR: f64 = 1e-12;

/// Lower-triangular sampling F[i][j] = f̃(z_i, z_j), i ≥ j, of a two-variable
/// kernel on a uniform grid. Stored packed row-major (N(N+1)/2 entries);
/// everything above the diagonal is identically zero by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangularKernel {
    pub dim: usize,
    pub step: Complex64,
    data: Vec<Complex64>,
}

#[inline]
fn tri_index(i: usize, j: usize) -> usize {
    i * (i + 1) / 2 + j
}

impl TriangularKernel {
    /// Zero kernel.
    pub fn zeros(dim: usize, step: Complex64) -> Self {
        TriangularKernel {
            dim,
            step,
            data: vec![Complex64::new(0.0, 0.0); dim * (dim + 1) / 2],
        }
    }

    /// Fills the lower triangle from `f(i, j)`, i ≥ j.
    pub fn from_fn<F>(dim: usize, step: Complex64, mut f: F) -> Result<Self, HeunError>
    where
        F: FnMut(usize, usize) -> Result<Complex64, HeunError>,
    {
        let mut k = Self::zeros(dim, step);
        for i in 0..dim {
            for j in 0..=i {
                let v = f(i, j)?;
                k.data[tri_index(i, j)] = v;
            }
        }
        Ok(k)
    }

    /// Same-shape kernel over a grid (convenience for tests).
    pub fn from_grid_fn<F>(grid: &SegmentGrid, f: F) -> Result<Self, HeunError>
    where
        F: FnMut(usize, usize) -> Result<Complex64, HeunError>,
    {
        Self::from_fn(grid.n_points, grid.step, f)
    }

    /// Entry (i, j); zero above the diagonal.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        if j > i {
            Complex64::new(0.0, 0.0)
        } else {
            self.data[tri_index(i, j)]
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        debug_assert!(j <= i);
        self.data[tri_index(i, j)] = v;
    }

    /// Diagonal entry dF[i].
    #[inline]
    pub fn diag(&self, i: usize) -> Complex64 {
        self.data[tri_index(i, i)]
    }
}

/// Trapezoid-rule discrete Volterra composition
///
/// ```text
/// F ∗ L = (Δz/2)(F − dF)·L + (Δz/2)F·(L − dL),
/// ```
///
/// which converges to ∫_z^{z'} f̃(z',ζ) l̃(ζ,z) dζ with O(Δz²) error on
/// smooth kernels. O(N³) dense triple loop; the evaluator never calls this —
/// it exists for the algebra itself and its property tests (D7).
pub fn star_product(
    f: &TriangularKernel,
    l: &TriangularKernel,
) -> Result<TriangularKernel, HeunError> {
    if f.dim != l.dim || f.step != l.step {
        return Err(HeunError::DimensionMismatch {
            left: f.dim,
            right: l.dim,
        });
    }
    let n = f.dim;
    let dz = f.step;
    let half = dz * 0.5;
    let mut out = TriangularKernel::zeros(n, dz);
    for i in 0..n {
        for j in 0..=i {
            // full trapezoid sum over the chain index k = j..=i with half
            // weights at both ends: Δz·Σ F_ik L_kj − (Δz/2)(F_ii L_ij + F_ij L_jj)
            let mut acc = Complex64::new(0.0, 0.0);
            for k in j..=i {
                acc += f.get(i, k) * l.get(k, j);
            }
            let v = dz * acc - half * (f.diag(i) * l.get(i, j) + f.get(i, j) * l.diag(j));
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// Solves (Id − ΔzK + (Δz/2)dK)·x = v by forward substitution; no inverse is
/// ever formed. This is the discrete ∗-resolvent of K up to the 1/Δz
/// prefactor, which callers strip when extracting G columns.
pub fn resolvent_solve(k: &TriangularKernel, rhs: &[Complex64]) -> Result<Vec<Complex64>, HeunError> {
    let n = k.dim;
    if rhs.len() != n {
        return Err(HeunError::DimensionMismatch {
            left: n,
            right: rhs.len(),
        });
    }
    let dz = k.step;
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for i in 0..n {
        let mut acc = rhs[i];
        for j in 0..i {
            acc += dz * k.get(i, j) * x[j];
        }
        let d = Complex64::new(1.0, 0.0) - dz * 0.5 * k.diag(i);
        if d.norm() <= DIAGONAL_FLOOR {
            return Err(HeunError::NearSingularDiagonal { index: i });
        }
        x[i] = acc / d;
    }
    Ok(x)
}

/// Cumulative trapezoid integral along the grid: g[0] = 0,
/// g[i] = g[i−1] + (Δz/2)(f[i] + f[i−1]).
pub fn cumulative_integral(
    f: &[Complex64],
    grid: &SegmentGrid,
) -> Result<Vec<Complex64>, HeunError> {
    if f.len() != grid.n_points {
        return Err(HeunError::DimensionMismatch {
            left: f.len(),
            right: grid.n_points,
        });
    }
    Ok(cumtrapz(f, grid.step))
}

/// [`cumulative_integral`] on a bare slice with the given uniform step.
pub fn cumtrapz(f: &[Complex64], step: Complex64) -> Vec<Complex64> {
    let mut g = Vec::with_capacity(f.len());
    let mut acc = Complex64::new(0.0, 0.0);
    g.push(acc);
    let half = step * 0.5;
    for w in f.windows(2) {
        acc += half * (w[0] + w[1]);
        g.push(acc);
    }
    g
}
