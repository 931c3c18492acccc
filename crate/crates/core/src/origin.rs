//! Behavior of solutions at r = 0: indicial exponents, singularity class,
//! and series start values for outward integration.
//!
//! Near the origin the radial equation u'' = [l(l+1)/r^2 + 2 m (V - E)] u is
//! dominated by r^{-2} terms, so solutions behave like powers r^s with
//! s(s-1) = l(l+1) + 2 m c2. The choice of which powers are acceptable is the
//! boundary condition, and this module makes the two candidate rules explicit:
//! `U0Strict` keeps only the dominant power (u(0) = 0 with u/r bounded by
//! r^{s_plus - 1}), while `L2Only` also admits the subdominant power whenever
//! it is square integrable.

use crate::error::{Result, SolverError};
use crate::potentials::OriginCoefficients;

/// Angular momentum and mass of a radial channel (hbar = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Channel {
    pub l: u32,
    pub mass: f64,
}

impl Channel {
    pub fn new(l: u32, mass: f64) -> Result<Self> {
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(SolverError::InvalidChannel { mass });
        }
        Ok(Self { l, mass })
    }

    #[must_use]
    pub fn centrifugal(&self) -> f64 {
        let l = f64::from(self.l);
        l * (l + 1.0)
    }
}

/// How solutions can behave at the origin for a given channel and potential.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    /// Only the dominant power vanishes at 0; the boundary condition is forced.
    Standard,
    /// Both powers vanish at 0 and both are square integrable, so a boundary
    /// condition must still be chosen to pin down the solution.
    LimitCircleWindow,
    /// Degenerate exponents (discriminant exactly zero).
    Critical,
    /// Complex exponents: the particle falls to the center, no ground state.
    FallToCenter,
}

/// The two indicial exponents, real when the discriminant allows it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IndicialExponents {
    Real { s_plus: f64, s_minus: f64 },
    /// Exponents (1/2) +- i*im; reported for diagnostics only.
    Complex { re: f64, im: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndicialReport {
    pub lambda_eff: f64,
    pub discriminant: f64,
    pub exponents: IndicialExponents,
    pub classification: Classification,
}

impl IndicialReport {
    /// Real exponent pair (s_plus, s_minus), absent in the fall-to-center case.
    #[must_use]
    pub fn real_exponents(&self) -> Option<(f64, f64)> {
        match self.exponents {
            IndicialExponents::Real { s_plus, s_minus } => Some((s_plus, s_minus)),
            IndicialExponents::Complex { .. } => None,
        }
    }
}

/// Boundary condition imposed at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryMode {
    /// u(0) = 0 with the dominant power only: the full boundary condition.
    U0Strict,
    /// Square integrability alone: admits a mixture with the subdominant
    /// power, weighted by `theta` and anchored at radius `r0` so that theta
    /// stays dimensionless. theta = 0 reproduces `U0Strict` exactly.
    L2Only { theta: f64, r0: f64 },
}

impl BoundaryMode {
    pub fn validate(&self) -> Result<()> {
        if let BoundaryMode::L2Only { theta, r0 } = self {
            if !(*r0 > 0.0) || !r0.is_finite() || !theta.is_finite() {
                return Err(SolverError::InvalidConfig(format!(
                    "mixing parameters must be finite with r0 > 0, got theta={theta}, r0={r0}"
                )));
            }
        }
        Ok(())
    }
}

/// Solves the indicial equation s(s-1) = l(l+1) + 2 m c2 and classifies the
/// origin. Total: complex exponents are reported, not errored.
#[must_use]
pub fn indicial(channel: Channel, coeffs: OriginCoefficients) -> IndicialReport {
    let lambda_eff = channel.centrifugal() + 2.0 * channel.mass * coeffs.c2;
    let discriminant = 0.25 + lambda_eff;
    if discriminant < 0.0 {
        return IndicialReport {
            lambda_eff,
            discriminant,
            exponents: IndicialExponents::Complex { re: 0.5, im: (-discriminant).sqrt() },
            classification: Classification::FallToCenter,
        };
    }
    let s_plus = 0.5 + discriminant.sqrt();
    // computed as 1 - s_plus so the pair sums to 1 exactly in floating point
    let s_minus = 1.0 - s_plus;
    let classification = if discriminant == 0.0 {
        Classification::Critical
    } else if s_minus <= 0.0 {
        Classification::Standard
    } else {
        Classification::LimitCircleWindow
    };
    IndicialReport {
        lambda_eff,
        discriminant,
        exponents: IndicialExponents::Real { s_plus, s_minus },
        classification,
    }
}

/// The set of origin exponents a boundary mode accepts, with a flag raised
/// when the strict rule is silently resolving a genuine ambiguity (both
/// powers vanish at 0, yet only the dominant one is kept).
#[derive(Debug, Clone, PartialEq)]
pub struct AdmissibleExponents {
    pub exponents: Vec<f64>,
    pub ambiguous: bool,
}

/// Which exponents each mode admits. Empty for fall-to-center channels, where
/// no real power solves the indicial equation.
#[must_use]
pub fn admissible(report: &IndicialReport, mode: BoundaryMode) -> AdmissibleExponents {
    let Some((s_plus, s_minus)) = report.real_exponents() else {
        return AdmissibleExponents { exponents: Vec::new(), ambiguous: false };
    };
    match mode {
        BoundaryMode::U0Strict => AdmissibleExponents {
            exponents: vec![s_plus],
            ambiguous: report.classification == Classification::LimitCircleWindow,
        },
        BoundaryMode::L2Only { .. } => {
            let mut exponents = vec![s_plus];
            if s_minus > -0.5 && s_minus != s_plus {
                exponents.push(s_minus);
            }
            AdmissibleExponents { exponents, ambiguous: false }
        }
    }
}

/// Relative scale of the first series order the start values omit, evaluated
/// at radius `r1`. The series carries r^2, so the omitted orders are r^3
/// (Coulomb cross terms) and r^4 (energy squared). Potential structure beyond
/// c2/r^2 + c1/r + c0 enters at the same orders and is not visible here, so
/// treat the result as a scale for choosing r1, not a certificate.
#[must_use]
pub fn truncation_bound(
    report: &IndicialReport,
    coeffs: OriginCoefficients,
    channel: Channel,
    e: f64,
    r1: f64,
) -> f64 {
    let s_plus = match report.exponents {
        IndicialExponents::Real { s_plus, .. } => s_plus,
        IndicialExponents::Complex { re, .. } => re,
    };
    let drive = 2.0 * channel.mass * (coeffs.c0 - e);
    let b = second_order(coeffs, channel, e, s_plus);
    let cubic = if coeffs.c1 == 0.0 {
        0.0
    } else {
        let mc1 = channel.mass * coeffs.c1;
        (2.0 * mc1 * b + drive * mc1 / s_plus) / (6.0 * s_plus + 6.0)
    };
    let quartic = drive * b / (8.0 * s_plus + 12.0);
    let r2 = r1 * r1;
    (cubic * r2 * r1).abs().max((quartic * r2 * r2).abs())
}

/// Second-order series coefficient for the branch r^s (1 + a r + b r^2):
/// b = [2 (m c1)^2 / s + 2 m (c0 - E)] / (4 s + 2). The cross term vanishes
/// with c1, which also dodges the 0/0 of the s = 0 free subdominant branch.
/// The denominator can only vanish at s = -1/2, which is never admitted.
fn second_order(coeffs: OriginCoefficients, channel: Channel, e: f64, s: f64) -> f64 {
    let cross = if coeffs.c1 == 0.0 {
        0.0
    } else {
        let mc1 = channel.mass * coeffs.c1;
        2.0 * mc1 * mc1 / s
    };
    (cross + 2.0 * channel.mass * (coeffs.c0 - e)) / (4.0 * s + 2.0)
}

/// Start values (u(r1), u(r2)) of the truncated origin series under `mode`.
///
/// Each branch carries its series through second order,
/// u = r^s (1 + a r + b r^2) with a = mass c1 / s and b from [`second_order`];
/// for hydrogen 1s this reproduces r (1 - r + r^2/2), the exact expansion of
/// r e^{-r}. Keeping the r^2 (energy) term matters most for mixed starts:
/// the subdominant branch amplifies start errors by (r/r1)^{s_plus - s_minus}
/// downstream, so the series must stay accurate at r1 values large enough
/// that rounding noise cannot bury the dominant admixture.
///
/// The `L2Only` mixture subtracts theta (r/r0)^{s_minus} r0^{s_plus}
/// (1 + a_minus r + b_minus r^2); the subtraction orientation makes positive
/// theta the direction that produces extra bound states for repulsive r^{-2}
/// cores. When 2 s_plus sits on a non-negative integer and c1 is nonzero the
/// subdominant corrections collide with the dominant series (a logarithm
/// appears), so the mixing term falls back to its pure leading power.
pub fn series_start(
    report: &IndicialReport,
    coeffs: OriginCoefficients,
    channel: Channel,
    e: f64,
    mode: BoundaryMode,
    r1: f64,
    r2: f64,
) -> Result<(f64, f64)> {
    debug_assert!(e.is_finite());
    mode.validate()?;
    if !(0.0 < r1 && r1 < r2) {
        return Err(SolverError::InvalidGrid(format!(
            "start radii must satisfy 0 < r1 < r2, got r1={r1}, r2={r2}"
        )));
    }
    let Some((s_plus, s_minus)) = report.real_exponents() else {
        return Err(SolverError::FallToCenter { discriminant: report.discriminant });
    };
    let a_plus = if coeffs.c1 == 0.0 { 0.0 } else { channel.mass * coeffs.c1 / s_plus };
    let b_plus = second_order(coeffs, channel, e, s_plus);
    let dominant = |r: f64| r.powf(s_plus) * (1.0 + (a_plus + b_plus * r) * r);
    match mode {
        BoundaryMode::U0Strict => Ok((dominant(r1), dominant(r2))),
        BoundaryMode::L2Only { theta, r0 } => {
            if theta == 0.0 {
                return Ok((dominant(r1), dominant(r2)));
            }
            if s_minus <= -0.5 {
                return Err(SolverError::NonNormalizable { s_minus });
            }
            let two_s = 2.0 * s_plus;
            let log_collision = coeffs.c1 != 0.0 && (two_s - two_s.round()).abs() <= 1e-9;
            let (a_minus, b_minus) = if log_collision {
                (0.0, 0.0)
            } else {
                let a = if coeffs.c1 == 0.0 { 0.0 } else { channel.mass * coeffs.c1 / s_minus };
                (a, second_order(coeffs, channel, e, s_minus))
            };
            let u = |r: f64| {
                dominant(r)
                    - theta
                        * (r / r0).powf(s_minus)
                        * r0.powf(s_plus)
                        * (1.0 + (a_minus + b_minus * r) * r)
            };
            Ok((u(r1), u(r2)))
        }
    }
}
