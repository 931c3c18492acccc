//! Numerov integration of the radial equation u'' = f(r) u.
//!
//! f(r) = l(l+1)/r^2 + 2 m (V(r) - E). Outward sweeps start from the origin
//! series, inward sweeps from a WKB tail, and the two meet at a matching
//! index near the outermost classical turning point. On log-uniform grids the
//! substitution x = ln r, v = u/sqrt(r) restores a uniform mesh: v'' = g v
//! with g = 1/4 + r^2 f(r).

use crate::error::{Result, SolverError};
use crate::grid::{GridScheme, RadialGrid};
use crate::origin::{self, BoundaryMode, Classification, IndicialReport};
use crate::potentials::PotentialSpec;

/// Largest allowed Numerov stiffness dx^2 |g| / 12; beyond it the recurrence
/// coefficients change sign and the sweep oscillates spuriously.
const MAX_STIFFNESS: f64 = 0.9;

/// Magnitude at which a sweep renormalizes its swept prefix to dodge overflow.
const RESCALE_LIMIT: f64 = 1e100;

/// A fully assembled problem: who moves (channel), in what (potential),
/// under which origin rule (mode), sampled where (grid).
#[derive(Debug, Clone)]
pub struct RadialProblem {
    pub channel: origin::Channel,
    pub potential: PotentialSpec,
    pub mode: BoundaryMode,
    pub grid: RadialGrid,
}

impl RadialProblem {
    /// Validates the combination: mixing parameters must be sane, and the
    /// strict origin rule cannot be imposed on a fall-to-center channel.
    pub fn new(
        channel: origin::Channel,
        potential: PotentialSpec,
        mode: BoundaryMode,
        grid: RadialGrid,
    ) -> Result<Self> {
        mode.validate()?;
        let report = origin::indicial(channel, potential.origin_coefficients());
        if report.classification == Classification::FallToCenter {
            return Err(SolverError::FallToCenter { discriminant: report.discriminant });
        }
        Ok(Self { channel, potential, mode, grid })
    }

    #[must_use]
    pub fn indicial_report(&self) -> IndicialReport {
        origin::indicial(self.channel, self.potential.origin_coefficients())
    }

    /// f(r) = l(l+1)/r^2 + 2 m (V(r) - E).
    pub fn effective_f(&self, e: f64, r: f64) -> Result<f64> {
        let v = self.potential.evaluate(self.channel.mass, r)?;
        Ok(self.channel.centrifugal() / (r * r) + 2.0 * self.channel.mass * (v - e))
    }

    /// Start values (u(r[0]), u(r[1])) from the truncated origin series.
    pub fn start_values(&self, e: f64) -> Result<(f64, f64)> {
        let report = self.indicial_report();
        origin::series_start(
            &report,
            self.potential.origin_coefficients(),
            self.channel,
            e,
            self.mode,
            self.grid.r()[0],
            self.grid.r()[1],
        )
    }
}

/// One directional sweep: physical u samples filled on [first..=last] of the
/// grid (zero elsewhere), with the number of overflow renormalizations.
#[derive(Debug, Clone)]
pub struct HalfSolution {
    pub u: Vec<f64>,
    pub first: usize,
    pub last: usize,
    pub rescales: u32,
}

/// A matched, assembled solution on the full grid.
#[derive(Debug, Clone)]
pub struct RadialSolution {
    pub grid: RadialGrid,
    pub u: Vec<f64>,
    pub nodes: usize,
    pub match_index: usize,
    pub logderiv_left: f64,
    pub logderiv_right: f64,
}

/// Which one-sided stencil a log-derivative uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Samples at i, i-1, i-2 (end of an outward sweep).
    Left,
    /// Samples at i, i+1, i+2 (end of an inward sweep).
    Right,
}

/// Numerov coefficient samples in the native integration variable over
/// [lo..=hi]: uniform grids integrate u directly (g = f), log grids integrate
/// v = u/sqrt(r) (g = 1/4 + r^2 f).
fn g_samples(problem: &RadialProblem, e: f64, lo: usize, hi: usize) -> Result<Vec<f64>> {
    let r = problem.grid.r();
    let mass = problem.channel.mass;
    let cent = problem.channel.centrifugal();
    let mut g = Vec::with_capacity(hi - lo + 1);
    match problem.grid.scheme() {
        GridScheme::Uniform => {
            for &ri in &r[lo..=hi] {
                let v = problem.potential.evaluate(mass, ri)?;
                g.push(cent / (ri * ri) + 2.0 * mass * (v - e));
            }
        }
        GridScheme::LogUniform => {
            for &ri in &r[lo..=hi] {
                let v = problem.potential.evaluate(mass, ri)?;
                g.push(0.25 + cent + 2.0 * mass * ri * ri * (v - e));
            }
        }
    }
    let dx = problem.grid.step();
    let sigma = g.iter().fold(0.0f64, |m, x| m.max(x.abs())) * dx * dx / 12.0;
    if sigma >= MAX_STIFFNESS {
        return Err(SolverError::InvalidGrid(format!(
            "step too coarse for this energy: stiffness {sigma:.3} >= {MAX_STIFFNESS} \
             (shrink r_max or raise the point count)"
        )));
    }
    Ok(g)
}

fn to_native(scheme: GridScheme, u: f64, r: f64) -> f64 {
    match scheme {
        GridScheme::Uniform => u,
        GridScheme::LogUniform => u / r.sqrt(),
    }
}

fn to_physical(scheme: GridScheme, w: f64, r: f64) -> f64 {
    match scheme {
        GridScheme::Uniform => w,
        GridScheme::LogUniform => w * r.sqrt(),
    }
}

/// Integrates outward from the first two grid points up to `stop` (inclusive).
///
/// `start` are physical u values at r[0] and r[1], typically from the origin
/// series. The swept prefix is renormalized whenever it threatens overflow;
/// ratios and log-derivatives are unaffected.
pub fn numerov_outward(
    problem: &RadialProblem,
    e: f64,
    start: (f64, f64),
    stop: usize,
) -> Result<HalfSolution> {
    let grid = &problem.grid;
    let n = grid.len();
    assert!(stop < n && stop >= 2, "stop index {stop} out of range for {n} points");
    if start.0 == 0.0 && start.1 == 0.0 {
        return Err(SolverError::StartValuesZero);
    }
    if !start.0.is_finite() || !start.1.is_finite() {
        return Err(SolverError::InvalidGrid(format!("non-finite start values {start:?}")));
    }
    let g = g_samples(problem, e, 0, stop)?;
    let scheme = grid.scheme();
    let r = grid.r();
    let dx2 = grid.step() * grid.step();
    let c = |i: usize| 1.0 - dx2 * g[i] / 12.0;
    let mut w = vec![0.0; n];
    w[0] = to_native(scheme, start.0, r[0]);
    w[1] = to_native(scheme, start.1, r[1]);
    let mut rescales = 0;
    for i in 1..stop {
        w[i + 1] = ((12.0 - 10.0 * c(i)) * w[i] - c(i - 1) * w[i - 1]) / c(i + 1);
        if w[i + 1].abs() > RESCALE_LIMIT {
            let s = 1.0 / w[i + 1].abs();
            for x in &mut w[..=i + 1] {
                *x *= s;
            }
            rescales += 1;
        }
    }
    for i in 0..=stop {
        w[i] = to_physical(scheme, w[i], r[i]);
    }
    Ok(HalfSolution { u: w, first: 0, last: stop, rescales })
}

/// Integrates inward from the last two grid points down to `stop` (inclusive).
///
/// `tail` are physical u values at r[n-1] and r[n-2], typically from
/// [`tail_start`].
pub fn numerov_inward(
    problem: &RadialProblem,
    e: f64,
    tail: (f64, f64),
    stop: usize,
) -> Result<HalfSolution> {
    let grid = &problem.grid;
    let n = grid.len();
    assert!(stop + 2 < n, "stop index {stop} leaves no room for tail values in {n} points");
    if tail.0 == 0.0 && tail.1 == 0.0 {
        return Err(SolverError::StartValuesZero);
    }
    if !tail.0.is_finite() || !tail.1.is_finite() {
        return Err(SolverError::InvalidGrid(format!("non-finite tail values {tail:?}")));
    }
    let g = g_samples(problem, e, stop, n - 1)?;
    let scheme = grid.scheme();
    let r = grid.r();
    let dx2 = grid.step() * grid.step();
    let c = |i: usize| 1.0 - dx2 * g[i - stop] / 12.0;
    let mut w = vec![0.0; n];
    w[n - 1] = to_native(scheme, tail.0, r[n - 1]);
    w[n - 2] = to_native(scheme, tail.1, r[n - 2]);
    let mut rescales = 0;
    for i in (stop + 1..n - 1).rev() {
        w[i - 1] = ((12.0 - 10.0 * c(i)) * w[i] - c(i + 1) * w[i + 1]) / c(i - 1);
        if w[i - 1].abs() > RESCALE_LIMIT {
            let s = 1.0 / w[i - 1].abs();
            for x in &mut w[i - 1..] {
                *x *= s;
            }
            rescales += 1;
        }
    }
    for i in stop..n {
        w[i] = to_physical(scheme, w[i], r[i]);
    }
    Ok(HalfSolution { u: w, first: stop, last: n - 1, rescales })
}

/// WKB-style start pair (u(r[n-1]), u(r[n-2])) for the inward sweep:
/// u(r[n-2])/u(r[n-1]) = exp(kappa h), kappa = sqrt(2m (V(r_max) - E)).
///
/// Requires the boundary to be classically forbidden; otherwise reports how
/// far out the grid would need to extend.
pub fn tail_start(problem: &RadialProblem, e: f64) -> Result<(f64, f64)> {
    let r = problem.grid.r();
    let n = r.len();
    let mass = problem.channel.mass;
    let r_max = r[n - 1];
    let v_at_rmax = problem.potential.evaluate(mass, r_max)?;
    if e >= v_at_rmax {
        return Err(SolverError::RMaxTooSmall { e, v_at_rmax, suggested: suggest_rmax(problem, e)? });
    }
    let kappa = (2.0 * mass * (v_at_rmax - e)).sqrt();
    let h_eff = r_max - r[n - 2];
    Ok((1.0, (kappa * h_eff).exp()))
}

/// Smallest doubling of r_max that is classically forbidden at energy `e`,
/// or infinity when no finite extension helps (e at or above the threshold).
fn suggest_rmax(problem: &RadialProblem, e: f64) -> Result<f64> {
    let mut r = problem.grid.r_max();
    for _ in 0..60 {
        r *= 2.0;
        if problem.potential.evaluate(problem.channel.mass, r)? > e {
            return Ok(r);
        }
    }
    Ok(f64::INFINITY)
}

/// Index where outward and inward sweeps meet: the outermost classical
/// turning point (largest i with f(r[i]) <= 0), clamped only as far as the
/// one-sided slope stencils require. Moving the match away from the turning
/// point puts it in a forbidden region where the sweep arriving from the far
/// side carries exponentially amplified rounding noise in its log-derivative,
/// so the index must track the turning point wherever it lands. Energies
/// entirely above the effective potential (possible for origin-dominated
/// states under the loose boundary rule) have no turning point and match at
/// the grid center.
pub fn match_index(problem: &RadialProblem, e: f64) -> Result<usize> {
    let r = problem.grid.r();
    let n = r.len();
    let mut turning = None;
    for i in (0..n).rev() {
        if problem.effective_f(e, r[i])? <= 0.0 {
            turning = Some(i);
            break;
        }
    }
    Ok(match turning {
        Some(i) => i.clamp(4, n - 5),
        None => n / 2,
    })
}

/// Strict interior sign changes: zeros are skipped, every change of sign
/// between consecutive nonzero samples counts.
#[must_use]
pub fn count_nodes(u: &[f64]) -> usize {
    let mut prev = 0.0f64;
    let mut count = 0;
    for &x in u {
        if x == 0.0 {
            continue;
        }
        if prev != 0.0 && (x > 0.0) != (prev > 0.0) {
            count += 1;
        }
        prev = x;
    }
    count
}

/// Sign changes with grazing protection: samples below `rel_tol * max|u|` are
/// zero touches, not crossings. Meant for assembled, normalized solutions;
/// raw sweeps span hundreds of orders of magnitude and must use the strict
/// count instead.
#[must_use]
pub fn count_nodes_thresholded(u: &[f64], rel_tol: f64) -> usize {
    let peak = u.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if peak == 0.0 {
        return 0;
    }
    let tol = rel_tol * peak;
    let mut prev = 0.0f64;
    let mut count = 0;
    for &x in u {
        if x.abs() <= tol {
            continue;
        }
        if prev != 0.0 && (x > 0.0) != (prev > 0.0) {
            count += 1;
        }
        prev = x;
    }
    count
}

/// (u, du/dr) at index `i` from a one-sided three-point stencil in the native
/// integration variable, so uniform and log grids get the same formal
/// accuracy. Well defined even where u vanishes.
#[must_use]
pub fn value_and_slope(grid: &RadialGrid, u: &[f64], i: usize, side: Side) -> (f64, f64) {
    let r = grid.r();
    let h = grid.step();
    let native = |j: usize| to_native(grid.scheme(), u[j], r[j]);
    let w0 = native(i);
    let dw = match side {
        Side::Left => (3.0 * w0 - 4.0 * native(i - 1) + native(i - 2)) / (2.0 * h),
        Side::Right => (-3.0 * w0 + 4.0 * native(i + 1) - native(i + 2)) / (2.0 * h),
    };
    match grid.scheme() {
        GridScheme::Uniform => (w0, dw),
        // u = sqrt(r) v, x = ln r: du/dr = (v/2 + dv/dx) / sqrt(r)
        GridScheme::LogUniform => (w0 * r[i].sqrt(), (0.5 * w0 + dw) / r[i].sqrt()),
    }
}

/// d(ln u)/dr at index `i`; see [`value_and_slope`].
#[must_use]
pub fn logderiv(grid: &RadialGrid, u: &[f64], i: usize, side: Side) -> f64 {
    let (v, s) = value_and_slope(grid, u, i, side);
    s / v
}
