//! Polar evaluation grids on the unit disk.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest admitted grid radius; evaluations are gated by tail bounds and the
/// series truncation, both of which degrade quickly beyond this.
pub const MAX_RADIUS: f64 = 0.995;

/// Polar grid: `n_circles` concentric radii and `n_spokes` equally spaced
/// angles, plus the center point. Node count is `n_circles * n_spokes + 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    radius: f64,
    n_circles: usize,
    n_spokes: usize,
}

impl GridSpec {
    pub fn new(radius: f64, n_circles: usize, n_spokes: usize) -> Result<Self> {
        if !(radius > 0.0 && radius <= MAX_RADIUS) {
            return Err(Error::GridRadius(radius));
        }
        if n_circles < 1 || n_spokes < 3 {
            return Err(Error::GridResolution { circles: n_circles, spokes: n_spokes });
        }
        Ok(GridSpec { radius, n_circles, n_spokes })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn n_circles(&self) -> usize {
        self.n_circles
    }

    pub fn n_spokes(&self) -> usize {
        self.n_spokes
    }

    /// Radius of circle `i` (1-based ring index `i = 1..=n_circles`).
    pub fn ring_radius(&self, i: usize) -> f64 {
        self.radius * i as f64 / self.n_circles as f64
    }

    /// Angle of spoke `j` in radians.
    pub fn spoke_angle(&self, j: usize) -> f64 {
        2.0 * std::f64::consts::PI * j as f64 / self.n_spokes as f64
    }

    /// Grid node on ring `i` (1-based), spoke `j` (0-based).
    pub fn node(&self, i: usize, j: usize) -> Complex64 {
        Complex64::from_polar(self.ring_radius(i), self.spoke_angle(j))
    }

    /// All nodes: the center first, then ring-major order.
    pub fn nodes(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.n_circles * self.n_spokes + 1);
        out.push(Complex64::ZERO);
        for i in 1..=self.n_circles {
            for j in 0..self.n_spokes {
                out.push(self.node(i, j));
            }
        }
        out
    }
}
