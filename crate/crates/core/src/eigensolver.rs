//! Bound-state energies by node-count bracketing plus derivative matching.
//!
//! The outward sweep's interior node count is monotone in E (its start data
//! do not depend on E beyond the series truncation), so bisection on the
//! count isolates the energy window holding exactly the target number of
//! nodes. Inside that window the matched eigenvalue is the root of the
//! scaled Wronskian of the outward and inward half-solutions at the matching
//! index; unlike the log-derivative difference, the Wronskian has no poles,
//! so a hybrid secant/bisection closes in without bracketing surprises.

use crate::error::{Result, SolverError};
use crate::integrator::{self, RadialProblem, RadialSolution, Side};
use crate::origin::BoundaryMode;
use crate::par::map_cells;
use crate::potentials::TailKind;

/// Default energy tolerance: below the discretization error of default grids.
pub const DEFAULT_TOL_E: f64 = 1e-10;
/// Largest acceptable normalized log-derivative mismatch of a converged state.
pub const MISMATCH_TOL: f64 = 1e-8;
/// Iteration budget across bracketing and root refinement.
pub const MAX_ITER: usize = 200;
/// Samples below this fraction of the peak count as zero touches, not
/// crossings, when node-checking assembled solutions.
const NODE_ZERO_TOL: f64 = 1e-14;

/// One converged bound state.
#[derive(Debug, Clone)]
pub struct EigenvalueResult {
    pub e: f64,
    pub n_radial: usize,
    pub mode: BoundaryMode,
    pub mismatch_residual: f64,
    pub iterations: usize,
    pub solution: RadialSolution,
}

/// Interior node count of the full outward sweep at energy `e`.
pub fn outward_node_count(problem: &RadialProblem, e: f64) -> Result<usize> {
    let start = problem.start_values(e)?;
    let last = problem.grid.len() - 1;
    let half = integrator::numerov_outward(problem, e, start, last)?;
    Ok(integrator::count_nodes(&half.u))
}

/// Energy below which every bound state must lie... and above which none can.
fn threshold(problem: &RadialProblem) -> Result<f64> {
    match problem.potential.tail_kind() {
        TailKind::Decaying => Ok(0.0),
        TailKind::Confining => {
            problem.potential.evaluate(problem.channel.mass, problem.grid.r_max())
        }
    }
}

/// Grid minimum of V(r) + l(l+1)/(2 m r^2), the classical floor for states
/// obeying the strict origin rule.
fn min_v_eff(problem: &RadialProblem) -> Result<f64> {
    let mass = problem.channel.mass;
    let cent = problem.channel.centrifugal() / (2.0 * mass);
    let mut min = f64::INFINITY;
    for &r in problem.grid.r() {
        let v = problem.potential.evaluate(mass, r)? + cent / (r * r);
        min = min.min(v);
    }
    Ok(min)
}

/// Walks the lower bracket endpoint down (doubling its distance below the
/// threshold) until the node count drops to `n` or below. `cap` is the
/// classical floor when one applies; the loose origin rule places states
/// below the classical floor, so it descends uncapped.
fn descend_floor(
    problem: &RadialProblem,
    th: f64,
    n: usize,
    cap: Option<f64>,
    iters: &mut usize,
) -> Result<(f64, usize)> {
    let mut cand = th - th.abs().max(1.0);
    if let Some(c) = cap {
        cand = cand.max(c);
    }
    loop {
        let count = outward_node_count(problem, cand)?;
        *iters += 1;
        if count <= n {
            return Ok((cand, count));
        }
        let mut next = th - 2.0 * (th - cand);
        if let Some(c) = cap {
            next = next.max(c);
        }
        if next == cand {
            return Err(SolverError::WrongNodeCount { expected: n, found: count, e: cand });
        }
        if *iters > 80 {
            return Err(SolverError::NonConvergence { max_iter: 80, e_lo: next, e_hi: th });
        }
        cand = next;
    }
}

fn bracket_with_counts(
    problem: &RadialProblem,
    n: usize,
    iters: &mut usize,
) -> Result<(f64, usize, f64, usize)> {
    let th = threshold(problem)?;
    let loose = matches!(problem.mode, BoundaryMode::L2Only { theta, .. } if theta != 0.0);
    let cap = if loose {
        None
    } else {
        let floor = min_v_eff(problem)?;
        if floor >= th {
            // no classically allowed region below the threshold
            return Err(SolverError::NoSuchState { n });
        }
        Some(floor)
    };
    let hi = th - 1e-9 * th.abs().max(1.0);
    let c_hi = outward_node_count(problem, hi)?;
    *iters += 1;
    if c_hi < n + 1 {
        return Err(SolverError::NoSuchState { n });
    }
    let (lo, c_lo) = descend_floor(problem, th, n, cap, iters)?;
    if lo >= hi {
        return Err(SolverError::NoSuchState { n });
    }
    Ok((lo, c_lo, hi, c_hi))
}

/// Energy bracket for the state with `n` interior nodes: the outward count is
/// at most `n` at the low end and at least `n + 1` at the high end.
pub fn bracket_state(problem: &RadialProblem, n: usize) -> Result<(f64, f64)> {
    let mut iters = 0;
    let (lo, _, hi, _) = bracket_with_counts(problem, n, &mut iters)?;
    Ok((lo, hi))
}

/// Bisects the node-count transition `target` inside [lo, hi] down to width
/// `stop`, maintaining count(lo) < target <= count(hi).
fn bisect_transition(
    problem: &RadialProblem,
    mut lo: f64,
    mut hi: f64,
    mut c_hi: usize,
    target: usize,
    stop: f64,
    iters: &mut usize,
) -> Result<(f64, f64, usize)> {
    while hi - lo > stop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let c = outward_node_count(problem, mid)?;
        *iters += 1;
        if *iters > MAX_ITER {
            return Err(SolverError::NonConvergence { max_iter: MAX_ITER, e_lo: lo, e_hi: hi });
        }
        if c >= target {
            hi = mid;
            c_hi = c;
        } else {
            lo = mid;
        }
    }
    Ok((lo, hi, c_hi))
}

/// Matching data at a fixed matching index: scaled Wronskian (pole-free, same
/// zeros as the mismatch) and the normalized log-derivative mismatch itself.
fn match_quantities(problem: &RadialProblem, e: f64, m: usize) -> Result<(f64, f64)> {
    let start = problem.start_values(e)?;
    let left = integrator::numerov_outward(problem, e, start, m)?;
    let tail = integrator::tail_start(problem, e)?;
    let right = integrator::numerov_inward(problem, e, tail, m)?;
    let grid = &problem.grid;
    let (ul, dul) = integrator::value_and_slope(grid, &left.u, m, Side::Left);
    let (ur, dur) = integrator::value_and_slope(grid, &right.u, m, Side::Right);
    let rm = grid.r()[m];
    let sl = 1.0 / ul.hypot(rm * dul);
    let sr = 1.0 / ur.hypot(rm * dur);
    let w = (dul * ur - dur * ul) * sl * sr * rm;
    let (ldl, ldr) = (dul / ul, dur / ur);
    let delta = (ldl - ldr) / (ldl.abs() + ldr.abs() + 1.0 / rm);
    Ok((w, delta))
}

/// Normalized log-derivative mismatch
/// (ld_left - ld_right) / (|ld_left| + |ld_right| + 1/r_match)
/// at the classical matching index. Zero exactly at bound-state energies;
/// continuous in E between node-count transitions.
pub fn mismatch(problem: &RadialProblem, e: f64) -> Result<f64> {
    let m = integrator::match_index(problem, e)?;
    Ok(match_quantities(problem, e, m)?.1)
}

/// Finds the bound state with exactly `n` interior nodes.
pub fn solve_state(problem: &RadialProblem, n: usize, tol_e: f64) -> Result<EigenvalueResult> {
    if !(tol_e > 0.0) {
        return Err(SolverError::InvalidConfig(format!("tolerance must be positive, got {tol_e}")));
    }
    let mut iters = 0;
    let (lo, c_lo, hi, c_hi) = bracket_with_counts(problem, n, &mut iters)?;
    let node_stop = tol_e.max(1e-9 * (hi - lo));
    // lower window edge: smallest energy whose outward count is exactly n
    let (e1, c1) = if c_lo >= n {
        (lo, c_lo)
    } else {
        let (_, b, cb) = bisect_transition(problem, lo, hi, c_hi, n, node_stop, &mut iters)?;
        (b, cb)
    };
    if c1 != n {
        return Err(SolverError::WrongNodeCount { expected: n, found: c1, e: e1 });
    }
    // upper edge: just past the energy where the (n+1)th node appears
    let (_, e2, c2) = bisect_transition(problem, e1, hi, c_hi, n + 1, node_stop, &mut iters)?;
    if c2 != n + 1 {
        return Err(SolverError::WrongNodeCount { expected: n + 1, found: c2, e: e2 });
    }
    // freeze the matching index across the window so the Wronskian is
    // continuous in E while the root is cornered
    let m = integrator::match_index(problem, 0.5 * (e1 + e2))?;
    let (mut a, mut b) = (e1, e2);
    let (mut fa, _) = match_quantities(problem, a, m)?;
    let (mut fb, _) = match_quantities(problem, b, m)?;
    iters += 2;
    if fa == 0.0 {
        b = a;
    } else if fb == 0.0 {
        a = b;
    } else if (fa > 0.0) == (fb > 0.0) {
        // The matched root usually sits within the node window, but the wall
        // and decaying-tail discretizations shift it differently, so it can
        // land slightly above the transition. Walk the upper endpoint out
        // (never past the next node transition) until the sign flips.
        let mut prev = b;
        let mut fprev = fb;
        let mut step = 4.0 * node_stop;
        let mut flipped = false;
        // the inward sweep needs a classically forbidden boundary, so never
        // probe at or above V(r_max)
        let v_rmax =
            problem.potential.evaluate(problem.channel.mass, problem.grid.r_max())?;
        let cap = hi.min(v_rmax - 1e-12 * v_rmax.abs().max(1.0));
        for _ in 0..60 {
            let probe = (prev + step).min(cap);
            if probe <= prev || iters + 2 > MAX_ITER {
                break;
            }
            step *= 2.0;
            let count = outward_node_count(problem, probe)?;
            let (fp, _) = match_quantities(problem, probe, m)?;
            iters += 2;
            if count > n + 1 {
                break;
            }
            if fp == 0.0 || (fp > 0.0) != (fprev > 0.0) {
                a = prev;
                fa = fprev;
                b = probe;
                fb = fp;
                flipped = true;
                break;
            }
            prev = probe;
            fprev = fp;
        }
        if !flipped {
            return Err(SolverError::NonConvergence { max_iter: iters, e_lo: e1, e_hi: prev });
        }
    }
    let mut use_secant = true;
    while b - a > tol_e {
        if iters >= MAX_ITER {
            return Err(SolverError::NonConvergence { max_iter: MAX_ITER, e_lo: a, e_hi: b });
        }
        let mut cand = if use_secant && fb != fa {
            b - fb * (b - a) / (fb - fa)
        } else {
            0.5 * (a + b)
        };
        // alternate with bisection so a stagnant secant endpoint cannot stall
        use_secant = !use_secant;
        if !(cand > a && cand < b) {
            cand = 0.5 * (a + b);
        }
        if cand <= a || cand >= b {
            break; // interval no longer splittable in floating point
        }
        let (fc, _) = match_quantities(problem, cand, m)?;
        iters += 1;
        if fc == 0.0 {
            a = cand;
            b = cand;
            break;
        }
        if (fc > 0.0) == (fa > 0.0) {
            a = cand;
            fa = fc;
        } else {
            b = cand;
            fb = fc;
        }
    }
    let e_star = if fa.abs() <= fb.abs() { a } else { b };
    assemble(problem, e_star, n, m, iters)
}

/// Glues the half-solutions at the matching index, normalizes, and checks the
/// node count and residual mismatch of the final state.
fn assemble(
    problem: &RadialProblem,
    e: f64,
    n: usize,
    m: usize,
    iterations: usize,
) -> Result<EigenvalueResult> {
    let start = problem.start_values(e)?;
    let left = integrator::numerov_outward(problem, e, start, m)?;
    let tail = integrator::tail_start(problem, e)?;
    let right = integrator::numerov_inward(problem, e, tail, m)?;
    let grid = &problem.grid;
    let (ul, dul) = integrator::value_and_slope(grid, &left.u, m, Side::Left);
    let (ur, dur) = integrator::value_and_slope(grid, &right.u, m, Side::Right);
    let rm = grid.r()[m];
    let (ldl, ldr) = (dul / ul, dur / ur);
    let delta = (ldl - ldr) / (ldl.abs() + ldr.abs() + 1.0 / rm);
    if !(delta.abs() <= MISMATCH_TOL) {
        return Err(SolverError::NonConvergence { max_iter: iterations, e_lo: e, e_hi: e });
    }
    let scale = ul / ur;
    if !scale.is_finite() || scale == 0.0 {
        return Err(SolverError::NonConvergence { max_iter: iterations, e_lo: e, e_hi: e });
    }
    let mut u = left.u;
    for i in m + 1..grid.len() {
        u[i] = right.u[i] * scale;
    }
    let sq: Vec<f64> = u.iter().map(|x| x * x).collect();
    let norm = grid.trapezoid(&sq);
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(SolverError::NonConvergence { max_iter: iterations, e_lo: e, e_hi: e });
    }
    let inv = 1.0 / norm.sqrt();
    for x in &mut u {
        *x *= inv;
    }
    let nodes = integrator::count_nodes_thresholded(&u, NODE_ZERO_TOL);
    if nodes != n {
        return Err(SolverError::WrongNodeCount { expected: n, found: nodes, e });
    }
    Ok(EigenvalueResult {
        e,
        n_radial: n,
        mode: problem.mode,
        mismatch_residual: delta,
        iterations,
        solution: RadialSolution {
            grid: grid.clone(),
            u,
            nodes,
            match_index: m,
            logderiv_left: ldl,
            logderiv_right: ldr,
        },
    })
}

/// States n = 0..=n_max in order; truncates at the first missing state.
/// Cells run independently (in parallel with the `parallel` feature) and the
/// output order never depends on scheduling.
pub fn spectrum(problem: &RadialProblem, n_max: usize) -> Result<Vec<EigenvalueResult>> {
    let cells = map_cells(n_max + 1, |n| solve_state(problem, n, DEFAULT_TOL_E));
    let mut out = Vec::with_capacity(n_max + 1);
    for cell in cells {
        match cell {
            Ok(state) => out.push(state),
            Err(SolverError::NoSuchState { .. }) => break,
            Err(err) => return Err(err),
        }
    }
    Ok(out)
}

/// Spectra across a grid of mixing strengths under the loose origin rule.
///
/// Requires a channel whose subdominant solution is square integrable;
/// otherwise there is nothing to mix and the scan reports the mode as
/// unavailable.
pub fn sae_scan(
    problem: &RadialProblem,
    thetas: &[f64],
    n_max: usize,
) -> Result<Vec<(f64, Vec<EigenvalueResult>)>> {
    let report = problem.indicial_report();
    let Some((_, s_minus)) = report.real_exponents() else {
        return Err(SolverError::ModeUnavailable(
            "complex origin exponents admit no power-law mixing".into(),
        ));
    };
    if s_minus <= -0.5 {
        return Err(SolverError::ModeUnavailable(format!(
            "subdominant origin exponent {s_minus} is not square integrable"
        )));
    }
    let r0 = match problem.mode {
        BoundaryMode::L2Only { r0, .. } => r0,
        BoundaryMode::U0Strict => 1.0,
    };
    let cells = map_cells(thetas.len(), |i| {
        let mut cell = problem.clone();
        cell.mode = BoundaryMode::L2Only { theta: thetas[i], r0 };
        spectrum(&cell, n_max).map(|s| (thetas[i], s))
    });
    cells.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::RadialGrid;
    use crate::origin::Channel;
    use crate::potentials::PotentialSpec;
    use approx::assert_relative_eq;

    fn coulomb(grid: RadialGrid) -> RadialProblem {
        RadialProblem::new(
            Channel::new(0, 1.0).unwrap(),
            PotentialSpec::Coulomb { z: 1.0 },
            BoundaryMode::U0Strict,
            grid,
        )
        .unwrap()
    }

    fn small_log_grid() -> RadialGrid {
        RadialGrid::log_uniform(1e-6, 40.0, 4000).unwrap()
    }


    #[test]
    fn mismatch_is_deterministic_and_discriminating() {
        let p = coulomb(small_log_grid());
        let d1 = mismatch(&p, -0.3).unwrap();
        let d2 = mismatch(&p, -0.3).unwrap();
        assert_eq!(d1.to_bits(), d2.to_bits());
        assert!(d1.abs() > 1e-3, "off-eigenvalue mismatch too small: {d1}");
        let at = mismatch(&p, -0.5).unwrap();
        assert!(at.abs() < 1e-4, "near-eigenvalue mismatch too large: {at}");
    }

    #[test]
    fn bracket_contains_known_states() {
        let p = coulomb(small_log_grid());
        let (lo, hi) = bracket_state(&p, 0).unwrap();
        assert!(lo < -0.5 && -0.5 < hi, "bracket ({lo}, {hi}) misses -0.5");

        let g = RadialGrid::log_uniform(1e-6, 12.0, 4000).unwrap();
        let h = RadialProblem::new(
            Channel::new(0, 1.0).unwrap(),
            PotentialSpec::Harmonic { omega: 1.0 },
            BoundaryMode::U0Strict,
            g,
        )
        .unwrap();
        let (lo, hi) = bracket_state(&h, 1).unwrap();
        assert!(lo < 3.5 && 3.5 < hi, "bracket ({lo}, {hi}) misses 3.5");
    }

    #[test]
    fn purely_repulsive_potential_has_no_strict_states() {
        let p = RadialProblem::new(
            Channel::new(0, 1.0).unwrap(),
            PotentialSpec::Coulomb { z: -1.0 },
            BoundaryMode::U0Strict,
            small_log_grid(),
        )
        .unwrap();
        assert!(matches!(bracket_state(&p, 0), Err(SolverError::NoSuchState { n: 0 })));
    }

    #[test]
    fn hydrogen_ground_state_on_a_small_grid() {
        let p = coulomb(small_log_grid());
        let state = solve_state(&p, 0, 1e-10).unwrap();
        assert_relative_eq!(state.e, -0.5, max_relative = 1e-4);
        assert_eq!(state.n_radial, 0);
        assert!(state.mismatch_residual.abs() <= MISMATCH_TOL);
        assert!(state.iterations <= MAX_ITER);
        // normalized on the grid
        let sq: Vec<f64> = state.solution.u.iter().map(|x| x * x).collect();
        assert_relative_eq!(p.grid.trapezoid(&sq), 1.0, max_relative = 1e-8);
    }

    #[test]
    fn harmonic_spectrum_is_ordered_orthogonal_and_counted() {
        let g = RadialGrid::log_uniform(1e-6, 12.0, 4000).unwrap();
        let p = RadialProblem::new(
            Channel::new(0, 1.0).unwrap(),
            PotentialSpec::Harmonic { omega: 1.0 },
            BoundaryMode::U0Strict,
            g.clone(),
        )
        .unwrap();
        let states = spectrum(&p, 2).unwrap();
        assert_eq!(states.len(), 3);
        for (i, s) in states.iter().enumerate() {
            assert_relative_eq!(s.e, 1.5 + 2.0 * i as f64, max_relative = 1e-5);
            assert_eq!(s.solution.nodes, i);
        }
        for i in 0..3 {
            for j in i + 1..3 {
                let prod: Vec<f64> = states[i]
                    .solution
                    .u
                    .iter()
                    .zip(&states[j].solution.u)
                    .map(|(a, b)| a * b)
                    .collect();
                let overlap = g.trapezoid(&prod);
                assert!(overlap.abs() < 1e-6, "states {i},{j} overlap {overlap}");
            }
        }
    }

    #[test]
    fn spectrum_truncates_when_states_run_out() {
        // shallow well: keep only what exists
        let g = RadialGrid::log_uniform(1e-4, 30.0, 3000).unwrap();
        let p = RadialProblem::new(
            Channel::new(0, 1.0).unwrap(),
            PotentialSpec::Coulomb { z: 0.05 },
            BoundaryMode::U0Strict,
            g,
        )
        .unwrap();
        // Z=0.05: E_n = -0.00125/(n+1)^2; the grid tail cuts the tower off
        let states = spectrum(&p, 8).unwrap();
        assert!(states.len() < 9, "expected truncation, got {}", states.len());
        for w in states.windows(2) {
            assert!(w[0].e < w[1].e);
        }
    }

    #[test]
    fn loose_mode_with_zero_mixing_matches_strict_mode() {
        let mut p = coulomb(small_log_grid());
        let strict = solve_state(&p, 0, 1e-10).unwrap();
        p.mode = BoundaryMode::L2Only { theta: 0.0, r0: 1.0 };
        let loose = solve_state(&p, 0, 1e-10).unwrap();
        assert_eq!(strict.e.to_bits(), loose.e.to_bits());
    }

    #[test]
    fn non_normalizable_mixing_is_rejected_in_solve() {
        let g = small_log_grid();
        let p = RadialProblem::new(
            Channel::new(1, 1.0).unwrap(),
            PotentialSpec::Coulomb { z: 1.0 },
            BoundaryMode::L2Only { theta: 0.5, r0: 1.0 },
            g,
        )
        .unwrap();
        assert!(matches!(
            solve_state(&p, 0, 1e-10),
            Err(SolverError::NonNormalizable { .. })
        ));
    }

    #[test]
    fn sae_scan_requires_a_square_integrable_second_solution() {
        let g = small_log_grid();
        let p = RadialProblem::new(
            Channel::new(1, 1.0).unwrap(),
            PotentialSpec::Coulomb { z: 1.0 },
            BoundaryMode::U0Strict,
            g,
        )
        .unwrap();
        assert!(matches!(
            sae_scan(&p, &[0.5, 1.0], 0),
            Err(SolverError::ModeUnavailable(_))
        ));
    }
}
