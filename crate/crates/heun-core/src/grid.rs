use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::HeunError;
use crate::params::HeunParameters;

/// Uniform discretization of the straight segment [za, zb] with N2 points.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentGrid {
    pub za: Complex64,
    pub zb: Complex64,
    pub n_points: usize,
    pub step: Complex64,
    pub points: Vec<Complex64>,
}

impl SegmentGrid {
    /// Builds the grid z_j = za + j·Δz, Δz = (zb − za)/(N2 − 1), and checks
    /// that no grid point lies within `puncture_radius` of {0, 1, t}.
    pub fn new(
        za: Complex64,
        zb: Complex64,
        n_points: usize,
        p: &HeunParameters,
        puncture_radius: f64,
    ) -> Result<Self, HeunError> {
        let grid = Self::new_unchecked(za, zb, n_points)?;
        for &z in &grid.points {
            for s in p.singularities() {
                let d = (z - s).norm();
                if d < puncture_radius {
                    return Err(HeunError::SegmentCrossesSingularity {
                        singularity: s,
                        distance: d,
                    });
                }
            }
        }
        Ok(grid)
    }

    /// Grid construction without the singularity-clearance check; used
    /// internally where the segment has already been validated.
    pub fn new_unchecked(
        za: Complex64,
        zb: Complex64,
        n_points: usize,
    ) -> Result<Self, HeunError> {
        if n_points < 2 {
            return Err(HeunError::InvalidArgument("grid needs at least 2 points"));
        }
        if (zb - za).norm() == 0.0 {
            return Err(HeunError::InvalidArgument("segment endpoints coincide"));
        }
        let step = (zb - za) / ((n_points - 1) as f64);
        let mut points = Vec::with_capacity(n_points);
        for j in 0..n_points {
            points.push(za + step * (j as f64));
        }
        // pin the far end exactly
        points[n_points - 1] = zb;
        Ok(SegmentGrid {
            za,
            zb,
            n_points,
            step,
            points,
        })
    }
}

/// Distance from the point `s` to the straight segment [za, zb].
pub fn segment_distance(s: Complex64, za: Complex64, zb: Complex64) -> f64 {
    let d = zb - za;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (s - za).norm();
    }
    // projection parameter of s onto the line through za, zb
    let v = s - za;
    let tau = (v.re * d.re + v.im * d.im) / len2;
    let tau = tau.clamp(0.0, 1.0);
    (s - (za + d * tau)).norm()
}
