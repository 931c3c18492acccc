//! Weak-form verification of the origin boundary term.
//!
//! Writing R(r) = u(r)/r and applying the radial Laplacian, the reduced
//! equation picks up a distributional term proportional to u(0)·δ(r) unless
//! u vanishes at the origin. This module measures that term directly: for a
//! Gaussian test function φ_w the defect
//!
//!   D(w) = 4π·[ ∫ u·(r·φ_w)'' dr − ∫ u''·r·φ_w dr ]
//!
//! equals −4π·u(0)·φ_w(0) exactly, for every width w, by integration by
//! parts. A trial with u(0) = 0 has zero defect; the excluded constant-u
//! solution carries the full −4π. Solutions admitted by a square-
//! integrability-only rule can even diverge at the origin, which the
//! boundary-value extrapolation reports explicitly.

use crate::error::{Result, SolverError};
use crate::grid::{GridScheme, RadialGrid};
use crate::integrator::{RadialProblem, RadialSolution};
use crate::par::map_cells;
use crate::quad;

const FOUR_PI: f64 = 4.0 * std::f64::consts::PI;

/// Absolute quadrature error allowed in D, per unit of (1 + |reference|).
const PRECISION_GATE: f64 = 1e-8;

/// Gaussian test function φ_w(r) = exp(−r² / (2w²)); φ_w(0) = 1.
#[must_use]
pub fn test_function(r: f64, w: f64) -> f64 {
    (-r * r / (2.0 * w * w)).exp()
}

/// Second derivative (r·φ_w)'' = (r³/w⁴ − 3r/w²)·φ_w.
fn r_phi_pp(r: f64, w: f64) -> f64 {
    let w2 = w * w;
    (r * r * r / (w2 * w2) - 3.0 * r / w2) * test_function(r, w)
}

/// φ_w'(r) = −(r/w²)·φ_w.
fn phi_prime(r: f64, w: f64) -> f64 {
    -(r / (w * w)) * test_function(r, w)
}

/// Origin value of a grid-sampled trial, from a power-law fit u ≈ c·rˢ on
/// the innermost decade of the mesh.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryValue {
    /// s > 0.05: the trial vanishes at the origin.
    Zero,
    /// |s| ≤ 0.05: the trial tends to the fitted amplitude.
    Finite(f64),
    /// s < −0.05: the trial diverges at the origin.
    Divergent { slope: f64 },
}

impl BoundaryValue {
    /// u(0) when it exists.
    #[must_use]
    pub fn value(&self) -> Option<f64> {
        match self {
            BoundaryValue::Zero => Some(0.0),
            BoundaryValue::Finite(c) => Some(*c),
            BoundaryValue::Divergent { .. } => None,
        }
    }
}

/// A trial u(r) together with its second derivative and boundary value.
pub enum TrialFunction {
    /// Closed-form pair (u, u'').
    Analytic {
        u: Box<dyn Fn(f64) -> f64 + Send + Sync>,
        u_pp: Box<dyn Fn(f64) -> f64 + Send + Sync>,
        u0: f64,
    },
    /// Grid samples with u'' reconstructed through the radial equation.
    Sampled {
        grid: RadialGrid,
        u: Vec<f64>,
        u_pp: Vec<f64>,
        /// Power-law amplitude and exponent fitted on the innermost decade.
        fit_amplitude: f64,
        fit_slope: f64,
        boundary: BoundaryValue,
    },
}

impl std::fmt::Debug for TrialFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TrialFunction::Analytic { u0, .. } => {
                f.debug_struct("Analytic").field("u0", u0).finish_non_exhaustive()
            }
            TrialFunction::Sampled { boundary, fit_slope, .. } => f
                .debug_struct("Sampled")
                .field("boundary", boundary)
                .field("fit_slope", fit_slope)
                .finish_non_exhaustive(),
        }
    }
}

impl TrialFunction {
    /// Closed-form trial from (u, u'', u(0)).
    pub fn analytic(
        u: impl Fn(f64) -> f64 + Send + Sync + 'static,
        u_pp: impl Fn(f64) -> f64 + Send + Sync + 'static,
        u0: f64,
    ) -> Self {
        TrialFunction::Analytic { u: Box::new(u), u_pp: Box::new(u_pp), u0 }
    }

    /// u = e^{−r}; u(0) = 1.
    #[must_use]
    pub fn exp_decay() -> Self {
        Self::analytic(|r| (-r).exp(), |r| (-r).exp(), 1.0)
    }

    /// u = r·e^{−r}; u(0) = 0.
    #[must_use]
    pub fn r_exp_decay() -> Self {
        Self::analytic(|r| r * (-r).exp(), |r| (r - 2.0) * (-r).exp(), 0.0)
    }

    /// u = (1 + 2r)·e^{−r}; u(0) = 1.
    #[must_use]
    pub fn poly_exp() -> Self {
        Self::analytic(
            |r| (1.0 + 2.0 * r) * (-r).exp(),
            |r| (2.0 * r - 3.0) * (-r).exp(),
            1.0,
        )
    }

    /// u ≡ 1: the reduced form of the R ~ 1/r solution that the origin
    /// condition excludes. u'' = 0 and the full defect −4π survives.
    #[must_use]
    pub fn constant() -> Self {
        Self::analytic(|_| 1.0, |_| 0.0, 1.0)
    }

    /// Wraps a converged grid solution at energy `e`. The second derivative
    /// is reconstructed through the radial equation (u'' = f·u), and the
    /// origin value is extrapolated by a power-law fit on the innermost
    /// decade of the mesh.
    pub fn from_solution(
        problem: &RadialProblem,
        e: f64,
        solution: &RadialSolution,
    ) -> Result<Self> {
        let grid = solution.grid.clone();
        let r = grid.r();
        let u = solution.u.clone();
        if u.len() != r.len() {
            return Err(SolverError::InvalidConfig(format!(
                "solution has {} samples on a {}-point grid",
                u.len(),
                r.len()
            )));
        }
        let mut u_pp = Vec::with_capacity(u.len());
        for (i, &ri) in r.iter().enumerate() {
            u_pp.push(problem.effective_f(e, ri)? * u[i]);
        }
        let (fit_amplitude, fit_slope, boundary) = fit_origin_power(r, &u)?;
        Ok(TrialFunction::Sampled { grid, u, u_pp, fit_amplitude, fit_slope, boundary })
    }

    /// Boundary value of the trial.
    #[must_use]
    pub fn boundary(&self) -> BoundaryValue {
        match self {
            TrialFunction::Analytic { u0, .. } => BoundaryValue::Finite(*u0),
            TrialFunction::Sampled { boundary, .. } => *boundary,
        }
    }
}

/// Least-squares power-law fit ln|u| = ln|c| + s·ln r over the innermost
/// decade, classified into the three origin behaviors.
fn fit_origin_power(r: &[f64], u: &[f64]) -> Result<(f64, f64, BoundaryValue)> {
    let r0 = r[0];
    let mut count = r.iter().take_while(|&&ri| ri <= 10.0 * r0).count();
    count = count.max(4).min(r.len());
    let window_u = &u[..count];
    let peak = window_u.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if peak == 0.0 {
        return Ok((0.0, 1.0, BoundaryValue::Zero));
    }
    let sign = window_u[0].signum();
    if window_u.iter().any(|&v| v == 0.0 || v.signum() != sign) {
        return Err(SolverError::OriginFit(
            "trial changes sign inside the innermost decade; no power law".into(),
        ));
    }
    // least squares in (ln r, ln |u|)
    let n = count as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for i in 0..count {
        let x = r[i].ln();
        let y = window_u[i].abs().ln();
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let denom = n * sxx - sx * sx;
    if denom.abs() < f64::EPSILON * n * sxx.abs().max(1.0) {
        return Err(SolverError::OriginFit("degenerate abscissae in origin fit".into()));
    }
    let s = (n * sxy - sx * sy) / denom;
    let intercept = (sy - s * sx) / n;
    let c = sign * intercept.exp();
    // power-law credibility: rms residual of the log fit
    let mut rss = 0.0;
    for i in 0..count {
        let pred = intercept + s * r[i].ln();
        let d = window_u[i].abs().ln() - pred;
        rss += d * d;
    }
    let rms = (rss / n).sqrt();
    if rms > 0.1 {
        return Err(SolverError::OriginFit(format!(
            "innermost-decade samples deviate from a power law (rms {rms:.2e})"
        )));
    }
    let boundary = if s > 0.05 {
        BoundaryValue::Zero
    } else if s >= -0.05 {
        BoundaryValue::Finite(c)
    } else {
        BoundaryValue::Divergent { slope: s }
    };
    Ok((c, s, boundary))
}

/// Weak-form defect D(w) = 4π·[∫ u·(r·φ_w)'' dr − ∫ u''·r·φ_w dr].
///
/// Integration by parts gives D(w) = −4π·u(0)·φ_w(0) for every width, so
/// this measures the boundary term itself, not a limit. A sampled trial that
/// diverges at the origin returns the correspondingly signed infinity.
pub fn weak_defect(trial: &TrialFunction, w: f64) -> Result<f64> {
    if !(w > 0.0) || !w.is_finite() {
        return Err(SolverError::InvalidConfig(format!("width must be positive, got {w}")));
    }
    match trial {
        TrialFunction::Analytic { u, u_pp, u0 } => {
            let integrand = |r: f64| u(r) * r_phi_pp(r, w) - u_pp(r) * r * test_function(r, w);
            let r_cut = quad::decay_cutoff(&integrand, 8.0 * w.max(1.0));
            let reference = -FOUR_PI * u0;
            let gate = PRECISION_GATE * (1.0 + reference.abs());
            let (integral, est) = quad::adaptive_gk(&integrand, 0.0, r_cut, 0.1 * gate / FOUR_PI);
            if est * FOUR_PI > gate {
                return Err(SolverError::QuadraturePrecision { estimate: est * FOUR_PI });
            }
            Ok(FOUR_PI * integral)
        }
        TrialFunction::Sampled { grid, u, u_pp, fit_amplitude, fit_slope, boundary } => {
            let r = grid.r();
            // integrate in the mesh's native variable (Jacobian r on the log mesh)
            let samples: Vec<f64> = (0..r.len())
                .map(|i| {
                    let ri = r[i];
                    let g = u[i] * r_phi_pp(ri, w) - u_pp[i] * ri * test_function(ri, w);
                    match grid.scheme() {
                        GridScheme::Uniform => g,
                        GridScheme::LogUniform => g * ri,
                    }
                })
                .collect();
            let (body, est) = quad::simpson_checked(&samples, grid.step());
            // [0, r_min] closure from the fitted power law:
            // ∫₀^{r₁} (u·(rφ)'' − u''·rφ) dr = F(r₁) − u(0)·φ(0),
            // F(r) = u·(φ + r·φ') − u'·r·φ with u = c·rˢ
            let r1 = r[0];
            let (c, s) = (*fit_amplitude, *fit_slope);
            let f_r1 = c * r1.powf(s)
                * ((1.0 - s) * test_function(r1, w) + r1 * phi_prime(r1, w));
            let u0 = match boundary {
                BoundaryValue::Zero => 0.0,
                BoundaryValue::Finite(v) => *v,
                BoundaryValue::Divergent { .. } => {
                    return Ok(if c >= 0.0 { f64::NEG_INFINITY } else { f64::INFINITY });
                }
            };
            let reference = -FOUR_PI * u0;
            let gate = PRECISION_GATE * (1.0 + reference.abs());
            if est * FOUR_PI > gate {
                return Err(SolverError::QuadraturePrecision { estimate: est * FOUR_PI });
            }
            Ok(FOUR_PI * (body + f_r1 - u0))
        }
    }
}

/// Verdict of the boundary-term check on a converged solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Compatibility {
    /// |D(w*)| within tolerance: the solution solves the full equation.
    Compatible { defect: f64 },
    /// A residual boundary term remains (infinite when u diverges at 0).
    Incompatible { defect: f64 },
}

impl Compatibility {
    #[must_use]
    pub fn is_compatible(&self) -> bool {
        matches!(self, Compatibility::Compatible { .. })
    }

    /// The measured defect D(w*), either way.
    #[must_use]
    pub fn defect(&self) -> f64 {
        match self {
            Compatibility::Compatible { defect } | Compatibility::Incompatible { defect } => {
                *defect
            }
        }
    }
}

/// Runs the weak-form check on a converged solution at the default width
/// w* = median mesh radius. Compatible iff |D(w*)| ≤ `tol`.
pub fn check_compatibility(
    problem: &RadialProblem,
    e: f64,
    solution: &RadialSolution,
    tol: f64,
) -> Result<Compatibility> {
    if !(tol > 0.0) {
        return Err(SolverError::InvalidConfig(format!("tolerance must be positive, got {tol}")));
    }
    let trial = TrialFunction::from_solution(problem, e, solution)?;
    let w_star = solution.grid.r()[solution.grid.len() / 2];
    let defect = weak_defect(&trial, w_star)?;
    if defect.abs() <= tol {
        Ok(Compatibility::Compatible { defect })
    } else {
        Ok(Compatibility::Incompatible { defect })
    }
}

/// Defects of two trials at the same width; the defect functional is linear,
/// so combinations of the pair obey D(a·u₁ + b·u₂) = a·D(u₁) + b·D(u₂).
pub fn linearity_probe(t1: &TrialFunction, t2: &TrialFunction, w: f64) -> Result<(f64, f64)> {
    Ok((weak_defect(t1, w)?, weak_defect(t2, w)?))
}

/// Defect of one trial across a family of widths, against the reference
/// −4π·u(0) that the identity predicts for every width.
#[derive(Debug, Clone)]
pub struct DeltaResidualReport {
    pub widths: Vec<f64>,
    pub defects: Vec<f64>,
    pub reference: f64,
    pub max_abs_error: f64,
}

/// Evaluates D(w) over `widths` (in parallel when enabled) and compares each
/// value against the width-independent reference.
pub fn residual_report(trial: &TrialFunction, widths: &[f64]) -> Result<DeltaResidualReport> {
    if widths.is_empty() {
        return Err(SolverError::InvalidConfig("need at least one width".into()));
    }
    for (i, &w) in widths.iter().enumerate() {
        if !(w > 0.0) || !w.is_finite() {
            return Err(SolverError::InvalidConfig(format!("width must be positive, got {w}")));
        }
        if widths[..i].contains(&w) {
            return Err(SolverError::InvalidConfig(format!("duplicate width {w}")));
        }
    }
    let u0 = trial.boundary().value().ok_or_else(|| {
        SolverError::OriginFit("divergent boundary value has no finite reference".into())
    })?;
    let reference = -FOUR_PI * u0;
    let cells = map_cells(widths.len(), |i| weak_defect(trial, widths[i]));
    let mut defects = Vec::with_capacity(widths.len());
    for cell in cells {
        defects.push(cell?);
    }
    let max_abs_error =
        defects.iter().fold(0.0f64, |m, &d| m.max((d - reference).abs()));
    Ok(DeltaResidualReport { widths: widths.to_vec(), defects, reference, max_abs_error })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::origin::{BoundaryMode, Channel};
    use crate::potentials::PotentialSpec;

    /// Independent oracle: plain adaptive Simpson, sharing no code with the
    /// Gauss-Kronrod path, evaluating the two defect integrals separately.
    fn simpson_oracle<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let coarse = (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
        let (m1, m2) = (0.5 * (a + m), 0.5 * (m + b));
        let left = (m - a) / 6.0 * (f(a) + 4.0 * f(m1) + f(m));
        let right = (b - m) / 6.0 * (f(m) + 4.0 * f(m2) + f(b));
        let fine = left + right;
        if depth == 0 || (fine - coarse).abs() <= 15.0 * tol {
            fine + (fine - coarse) / 15.0
        } else {
            simpson_oracle(f, a, m, 0.5 * tol, depth - 1)
                + simpson_oracle(f, m, b, 0.5 * tol, depth - 1)
        }
    }

    #[test]
    fn exp_trial_reproduces_minus_four_pi_at_every_width() {
        let t = TrialFunction::exp_decay();
        for &w in &[0.1, 0.5, 1.0, 2.0] {
            let d = weak_defect(&t, w).unwrap();
            assert!(
                (d + FOUR_PI).abs() < 1e-6,
                "w = {w}: D = {d}, expected {}",
                -FOUR_PI
            );
        }
    }

    #[test]
    fn vanishing_boundary_trial_has_zero_defect() {
        let t = TrialFunction::r_exp_decay();
        let d = weak_defect(&t, 1.0).unwrap();
        assert!(d.abs() < 1e-8, "D = {d}");
    }

    #[test]
    fn poly_exp_trial_agrees_with_independent_quadrature() {
        let t = TrialFunction::poly_exp();
        let w = 0.7;
        let d = weak_defect(&t, w).unwrap();
        assert!((d + FOUR_PI).abs() < 1e-6, "D = {d}");

        // brute-force both integrals separately with the Simpson oracle;
        // panels split by hand so the initial samples see the integrand bulk
        let edges = [0.0, 1.0, 2.0, 4.0, 8.0, 16.0, 60.0];
        let panels = |f: &dyn Fn(f64) -> f64| -> f64 {
            edges.windows(2).map(|p| simpson_oracle(&f, p[0], p[1], 1e-14, 40)).sum()
        };
        let u = |r: f64| (1.0 + 2.0 * r) * (-r).exp();
        let upp = |r: f64| (2.0 * r - 3.0) * (-r).exp();
        let i1 = panels(&|r| u(r) * r_phi_pp(r, w));
        let i2 = panels(&|r| upp(r) * r * test_function(r, w));
        let oracle = FOUR_PI * (i1 - i2);
        assert!((d - oracle).abs() < 1e-9, "D = {d}, oracle = {oracle}");
    }

    #[test]
    fn constant_trial_carries_the_full_defect() {
        let t = TrialFunction::constant();
        let d = weak_defect(&t, 1.0).unwrap();
        assert!((d + FOUR_PI).abs() < 1e-6, "D = {d}");
    }

    #[test]
    fn defect_is_width_independent() {
        let t = TrialFunction::exp_decay();
        let widths = [0.05, 0.1, 0.3, 1.0, 2.0, 5.0];
        let report = residual_report(&t, &widths).unwrap();
        let d1 = weak_defect(&t, 1.0).unwrap();
        for &d in &report.defects {
            assert!((d - d1).abs() <= 1e-6 * (1.0 + d1.abs()), "spread {}", (d - d1).abs());
        }
        assert!((report.reference + FOUR_PI).abs() < 1e-12);
    }

    #[test]
    fn defect_is_linear() {
        let t1 = TrialFunction::exp_decay();
        let t2 = TrialFunction::analytic(
            |r| 2.0 * (-r).exp(),
            |r| 2.0 * (-r).exp(),
            2.0,
        );
        let (d1, d2) = linearity_probe(&t1, &t2, 0.8).unwrap();
        assert!((d2 - 2.0 * d1).abs() < 1e-8, "homogeneity: {d1} vs {d2}");

        // additivity with a zero-defect partner
        let sum = TrialFunction::analytic(
            |r| (1.0 + r) * (-r).exp(),
            |r| ((-r).exp()) + (r - 2.0) * (-r).exp(),
            1.0,
        );
        let ds = weak_defect(&sum, 0.8).unwrap();
        assert!((ds - d1).abs() < 1e-8, "additivity: {ds} vs {d1}");
    }

    #[test]
    fn three_term_combination_is_additive() {
        let rates = [0.8, 1.0, 1.7];
        let coefs = [0.7, -1.3, 2.1];
        let mut separate = 0.0;
        for k in 0..3 {
            let (a, b) = (coefs[k], rates[k]);
            let t = TrialFunction::analytic(
                move |r| a * (-b * r).exp(),
                move |r| a * b * b * (-b * r).exp(),
                a,
            );
            separate += weak_defect(&t, 1.3).unwrap();
        }
        let combo = TrialFunction::analytic(
            move |r| {
                (0..3).map(|k| coefs[k] * (-rates[k] * r).exp()).sum()
            },
            move |r| {
                (0..3)
                    .map(|k| coefs[k] * rates[k] * rates[k] * (-rates[k] * r).exp())
                    .sum()
            },
            coefs.iter().sum(),
        );
        let dc = weak_defect(&combo, 1.3).unwrap();
        assert!((dc - separate).abs() < 1e-8, "combo {dc} vs sum {separate}");
    }

    fn coulomb_problem(n: usize) -> RadialProblem {
        RadialProblem::new(
            Channel::new(0, 1.0).unwrap(),
            PotentialSpec::Coulomb { z: 1.0 },
            BoundaryMode::U0Strict,
            RadialGrid::log_uniform(1e-6, 40.0, n).unwrap(),
        )
        .unwrap()
    }

    fn hand_built_solution(grid: RadialGrid, u: Vec<f64>) -> RadialSolution {
        let m = grid.len() / 2;
        RadialSolution {
            grid,
            u,
            nodes: 0,
            match_index: m,
            logderiv_left: 0.0,
            logderiv_right: 0.0,
        }
    }

    #[test]
    fn sampled_ground_state_is_compatible() {
        // hydrogen 1s: u = r·e^{−r} solves the equation at E = −1/2, so the
        // reconstructed u'' is the true one
        let problem = coulomb_problem(2000);
        let grid = problem.grid.clone();
        let norm = (0.25f64).sqrt(); // ∫ r² e^{−2r} dr = 1/4
        let u: Vec<f64> = grid.r().iter().map(|&r| r * (-r).exp() / norm).collect();
        let sol = hand_built_solution(grid, u);
        let verdict = check_compatibility(&problem, -0.5, &sol, 1e-6).unwrap();
        assert!(verdict.is_compatible(), "defect {}", verdict.defect());
        assert!(verdict.defect().abs() < 1e-6);
    }

    #[test]
    fn constant_sampled_solution_is_incompatible_with_full_defect() {
        // V = 0, l = 0, E = 0: u ≡ 1 solves u'' = 0 but leaves the boundary
        // term; the check must report D ≈ −4π
        let grid = RadialGrid::log_uniform(1e-6, 40.0, 4000).unwrap();
        let problem = RadialProblem::new(
            Channel::new(0, 1.0).unwrap(),
            PotentialSpec::InverseSquare { alpha: 0.0 },
            BoundaryMode::U0Strict,
            grid.clone(),
        )
        .unwrap();
        let sol = hand_built_solution(grid, vec![1.0; 4000]);
        let verdict = check_compatibility(&problem, 0.0, &sol, 1e-6).unwrap();
        assert!(!verdict.is_compatible());
        assert!(
            (verdict.defect() + FOUR_PI).abs() < 1e-4,
            "defect {}",
            verdict.defect()
        );
    }

    #[test]
    fn divergent_samples_are_flagged() {
        let grid = RadialGrid::log_uniform(1e-6, 40.0, 2000).unwrap();
        let problem = RadialProblem::new(
            Channel::new(0, 1.0).unwrap(),
            PotentialSpec::InverseSquare { alpha: 0.25 },
            BoundaryMode::U0Strict,
            grid.clone(),
        )
        .unwrap();
        let u: Vec<f64> = grid.r().iter().map(|&r| r.powf(-0.3) * (-r).exp()).collect();
        let sol = hand_built_solution(grid, u);
        let trial = TrialFunction::from_solution(&problem, -0.1, &sol).unwrap();
        assert!(matches!(
            trial.boundary(),
            BoundaryValue::Divergent { slope } if (slope + 0.3).abs() < 0.02
        ));
        let verdict = check_compatibility(&problem, -0.1, &sol, 1e-6).unwrap();
        assert!(!verdict.is_compatible());
        assert!(verdict.defect().is_infinite() && verdict.defect() < 0.0);
    }

    #[test]
    fn sign_changing_origin_window_is_a_fit_error() {
        let grid = RadialGrid::log_uniform(1e-6, 40.0, 2000).unwrap();
        let problem = coulomb_problem(2000);
        let u: Vec<f64> = grid
            .r()
            .iter()
            .enumerate()
            .map(|(i, &r)| if i % 2 == 0 { r } else { -r })
            .collect();
        let sol = hand_built_solution(grid, u);
        match TrialFunction::from_solution(&problem, -0.5, &sol) {
            Err(SolverError::OriginFit(_)) => {}
            other => panic!("expected origin-fit error, got {other:?}"),
        }
    }
}
