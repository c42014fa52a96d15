use serde::Serialize;

use super::SpectralError;

/// Smallest points-per-axis accepted by [`GridSpec::new`].
pub const MIN_POINTS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Dirichlet,
}

/// A uniform Dirichlet box [−L, L]^d with N interior nodes per axis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GridSpec {
    pub dim: usize,
    pub half_width: f64,
    pub points: usize,
    pub boundary: Boundary,
}

impl GridSpec {
    pub fn new(dim: usize, half_width: f64, points: usize) -> Result<Self, SpectralError> {
        if points < MIN_POINTS {
            return Err(SpectralError::InvalidGrid(format!(
                "need at least {MIN_POINTS} points per axis, got {points}"
            )));
        }
        Self::with_any_size(dim, half_width, points)
    }

    /// Like [`GridSpec::new`] but accepts any N ≥ 1; meant for stencil checks
    /// and dense cross-validation on tiny grids.
    pub fn with_any_size(dim: usize, half_width: f64, points: usize) -> Result<Self, SpectralError> {
        if dim != 2 && dim != 4 {
            return Err(SpectralError::InvalidGrid(format!(
                "dimension must be 2 or 4, got {dim}"
            )));
        }
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(SpectralError::InvalidGrid(format!(
                "half-width must be positive, got {half_width}"
            )));
        }
        if points == 0 {
            return Err(SpectralError::InvalidGrid("need at least one point per axis".into()));
        }
        if points.checked_pow(dim as u32).is_none() {
            return Err(SpectralError::InvalidGrid("grid size overflows".into()));
        }
        Ok(Self {
            dim,
            half_width,
            points,
            boundary: Boundary::Dirichlet,
        })
    }

    /// Default box for field strength μ: L = 6/√μ.
    pub fn default_half_width(mu: f64) -> f64 {
        6.0 / mu.sqrt()
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.points as f64 + 1.0)
    }

    /// Total number of nodes N^d.
    pub fn len(&self) -> usize {
        self.points.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Coordinate of node index `i` along one axis.
    pub fn coordinate(&self, i: usize) -> f64 {
        -self.half_width + (i as f64 + 1.0) * self.spacing()
    }

    /// Per-axis indices of a flat node index (axis 0 varies fastest).
    pub fn unflatten(&self, mut idx: usize, out: &mut [usize]) {
        for o in out.iter_mut().take(self.dim) {
            *o = idx % self.points;
            idx /= self.points;
        }
    }

    pub fn stride(&self, axis: usize) -> usize {
        self.points.pow(axis as u32)
    }

    /// Rough peak memory for assembly plus an eigensolve with `basis` Krylov vectors.
    pub fn estimated_bytes(&self, basis: usize) -> u128 {
        let n = self.len() as u128;
        let nnz = n * (2 * self.dim as u128 + 1);
        nnz * (16 + 8) + (n + 1) * 8 + (basis as u128 + 8) * n * 16
    }
}
