//! Radial meshes for the outward/inward sweeps.
//!
//! Two schemes are supported: uniform in r, and uniform in x = ln r. The log
//! mesh resolves power-law behavior near the origin with a fraction of the
//! points a uniform mesh would need, at the cost of a variable change in the
//! integrator (see [`crate::integrator`]).

use crate::error::{Result, SolverError};

/// Mesh spacing rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridScheme {
    /// r_i = r_min + i h
    Uniform,
    /// x_i = ln r_min + i dx, r_i = e^{x_i}
    LogUniform,
}

/// Sorted strictly positive abscissae with uniform spacing in the scheme's
/// native variable.
#[derive(Debug, Clone)]
pub struct RadialGrid {
    scheme: GridScheme,
    r: Vec<f64>,
    /// Step in the native variable: h for `Uniform`, dx for `LogUniform`.
    step: f64,
}

/// Smallest point count that leaves room for the matching window.
pub const MIN_POINTS: usize = 64;

impl RadialGrid {
    pub fn new(scheme: GridScheme, r_min: f64, r_max: f64, n: usize) -> Result<Self> {
        if !(r_min > 0.0) || !r_min.is_finite() {
            return Err(SolverError::NonPositiveRadius { r: r_min });
        }
        if !(r_max > r_min) || !r_max.is_finite() {
            return Err(SolverError::InvalidGrid(format!(
                "need 0 < r_min < r_max, got [{r_min}, {r_max}]"
            )));
        }
        if n < MIN_POINTS {
            return Err(SolverError::InvalidGrid(format!(
                "need at least {MIN_POINTS} points, got {n}"
            )));
        }
        let (r, step) = match scheme {
            GridScheme::Uniform => {
                let h = (r_max - r_min) / (n - 1) as f64;
                ((0..n).map(|i| r_min + i as f64 * h).collect(), h)
            }
            GridScheme::LogUniform => {
                let (a, b) = (r_min.ln(), r_max.ln());
                let dx = (b - a) / (n - 1) as f64;
                ((0..n).map(|i| (a + i as f64 * dx).exp()).collect(), dx)
            }
        };
        Ok(Self { scheme, r, step })
    }

    pub fn uniform(r_min: f64, r_max: f64, n: usize) -> Result<Self> {
        Self::new(GridScheme::Uniform, r_min, r_max, n)
    }

    pub fn log_uniform(r_min: f64, r_max: f64, n: usize) -> Result<Self> {
        Self::new(GridScheme::LogUniform, r_min, r_max, n)
    }

    #[must_use]
    pub fn scheme(&self) -> GridScheme {
        self.scheme
    }

    /// Abscissae, strictly increasing.
    #[must_use]
    pub fn r(&self) -> &[f64] {
        &self.r
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.r.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Step in the native variable (h for uniform, dx = d ln r for log).
    #[must_use]
    pub fn step(&self) -> f64 {
        self.step
    }

    #[must_use]
    pub fn r_min(&self) -> f64 {
        self.r[0]
    }

    #[must_use]
    pub fn r_max(&self) -> f64 {
        *self.r.last().unwrap()
    }

    /// Trapezoid weights for integrals in dr on this mesh.
    #[must_use]
    pub fn trapezoid(&self, f: &[f64]) -> f64 {
        assert_eq!(f.len(), self.r.len());
        let mut acc = 0.0;
        for i in 1..f.len() {
            acc += 0.5 * (f[i] + f[i - 1]) * (self.r[i] - self.r[i - 1]);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn uniform_spacing_is_constant() {
        let g = RadialGrid::uniform(0.5, 10.0, 100).unwrap();
        for w in g.r().windows(2) {
            assert_relative_eq!(w[1] - w[0], g.step(), max_relative = 1e-12);
        }
        assert_eq!(g.len(), 100);
        assert_relative_eq!(g.r_max(), 10.0);
    }

    #[test]
    fn log_spacing_is_constant_in_ln_r() {
        let g = RadialGrid::log_uniform(1e-6, 80.0, 2000).unwrap();
        for w in g.r().windows(2) {
            assert_relative_eq!(w[1].ln() - w[0].ln(), g.step(), max_relative = 1e-9);
        }
        assert_relative_eq!(g.r_min(), 1e-6, max_relative = 1e-12);
        assert_relative_eq!(g.r_max(), 80.0, max_relative = 1e-12);
    }

    #[test]
    fn rejects_degenerate_grids() {
        assert!(RadialGrid::uniform(0.0, 1.0, 100).is_err());
        assert!(RadialGrid::uniform(-1.0, 1.0, 100).is_err());
        assert!(RadialGrid::uniform(1.0, 0.5, 100).is_err());
        assert!(RadialGrid::uniform(0.1, 1.0, 8).is_err());
    }

    #[test]
    fn trapezoid_integrates_linear_exactly() {
        let g = RadialGrid::uniform(1.0, 3.0, 201).unwrap();
        let f: Vec<f64> = g.r().iter().map(|r| 2.0 * r + 1.0).collect();
        // integral of 2r+1 over [1,3] = (9+3)-(1+1) = 10
        assert_relative_eq!(g.trapezoid(&f), 10.0, max_relative = 1e-12);
    }
}
