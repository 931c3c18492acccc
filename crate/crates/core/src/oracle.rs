//! Independent cross-check path: dense finite-difference discretization with
//! Dirichlet walls at both ends, eigenvalues by Sturm-sequence bisection.
//!
//! This path shares no numerics with the propagation solver: the origin
//! condition u(0) = 0 enters as a plain row deletion at r = 0, the boundary
//! at r_max is a wall rather than a decay match, and eigenvalues come from
//! matrix inertia instead of shooting. Agreement between the two routes is
//! therefore evidence, not tautology.

use crate::error::{Result, SolverError};
use crate::grid::GridScheme;
use crate::integrator::RadialProblem;
use crate::origin::BoundaryMode;
use crate::par::map_cells;

/// Symmetric tridiagonal discretization of (−d²/dr² + l(l+1)/r² + 2mV)/(2m)
/// on a uniform mesh r_i = (i+1)·h, with u = 0 at r = 0 and r = r_max.
#[derive(Debug, Clone)]
pub struct FdMatrix {
    pub h: f64,
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl FdMatrix {
    #[must_use]
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Gershgorin interval containing the whole spectrum.
    #[must_use]
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let mut radius = 0.0;
            if i > 0 {
                radius += self.offdiag[i - 1].abs();
            }
            if i + 1 < n {
                radius += self.offdiag[i].abs();
            }
            lo = lo.min(self.diag[i] - radius);
            hi = hi.max(self.diag[i] + radius);
        }
        (lo, hi)
    }
}

/// Builds the cross-check matrix. Requires the strict origin mode and a
/// uniform mesh whose first point equals the spacing, so the mesh is exactly
/// the interior of [0, r_max]. For l ≥ 1 the first interior point is also
/// dropped: the centrifugal wall makes u vanish there faster than any
/// polynomial, and keeping the 1/r² sample at r = h would dominate the row.
pub fn fd_matrix(problem: &RadialProblem) -> Result<FdMatrix> {
    if !matches!(problem.mode, BoundaryMode::U0Strict) {
        return Err(SolverError::ModeUnavailable(
            "the finite-difference cross-check covers the strict origin mode only".into(),
        ));
    }
    let grid = &problem.grid;
    let r = grid.r();
    let h = grid.step();
    if grid.scheme() != GridScheme::Uniform || (r[0] - h).abs() > 1e-12 * h {
        return Err(SolverError::OracleGrid);
    }
    let mass = problem.channel.mass;
    let lam = problem.channel.centrifugal();
    let offset = if lam == 0.0 { 0 } else { 1 };
    // last mesh point is the wall at r_max
    let dim = grid.len() - 1 - offset;
    if dim < 2 {
        return Err(SolverError::InvalidGrid("too few interior points for the cross-check".into()));
    }
    let inv = 1.0 / (2.0 * mass * h * h);
    let mut diag = Vec::with_capacity(dim);
    for i in 0..dim {
        let ri = r[i + offset];
        let v = problem.potential.evaluate(mass, ri)?;
        diag.push(2.0 * inv + lam / (2.0 * mass * ri * ri) + v);
    }
    let offdiag = vec![-inv; dim - 1];
    Ok(FdMatrix { h, diag, offdiag })
}

/// Number of eigenvalues strictly below `e`, by the inertia of T − e·I
/// (Sturm sequence on the LDLᵀ pivots, with an underflow guard).
#[must_use]
pub fn inertia_count(matrix: &FdMatrix, e: f64) -> usize {
    let pivmin = f64::MIN_POSITIVE
        * matrix.offdiag.iter().fold(1.0f64, |a, &b| a.max(b * b));
    let mut count = 0;
    let mut q = 1.0;
    for (k, &d) in matrix.diag.iter().enumerate() {
        q = if k == 0 {
            d - e
        } else {
            let off = matrix.offdiag[k - 1];
            d - e - off * off / q
        };
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `k` lowest eigenvalues, each isolated by bisection on the inertia
/// count inside the Gershgorin interval.
pub fn fd_spectrum(problem: &RadialProblem, k: usize) -> Result<Vec<f64>> {
    let matrix = fd_matrix(problem)?;
    if k > matrix.dim() {
        return Err(SolverError::TooManyEigenvalues { k, dim: matrix.dim() });
    }
    let (glo, ghi) = matrix.gershgorin();
    let eigen_at = |j: usize| -> f64 {
        let (mut lo, mut hi) = (glo, ghi);
        for _ in 0..200 {
            if hi - lo <= 1e-14 * (lo.abs() + hi.abs() + 1.0) {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if inertia_count(&matrix, mid) >= j + 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    };
    Ok(map_cells(k, eigen_at))
}
