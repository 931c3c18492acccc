//! Central potentials V(r) and their behavior at the two ends of the axis.
//!
//! Every potential exposes the origin expansion V(r) = c2/r^2 + c1/r + c0 + o(1),
//! which is all the indicial analysis needs, and a tail kind that decides the
//! dissociation threshold (0 for decaying tails, V(r_max) for confining ones).

use crate::error::{Result, SolverError};

/// Coefficients of the origin expansion V(r) = c2/r^2 + c1/r + c0 + o(1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OriginCoefficients {
    pub c2: f64,
    pub c1: f64,
    pub c0: f64,
}

impl OriginCoefficients {
    #[must_use]
    pub fn singular_part(&self, r: f64) -> f64 {
        self.c2 / (r * r) + self.c1 / r + self.c0
    }
}

/// Tail behavior past the outermost information we have about V.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailKind {
    /// V tends to 0 from either side; threshold for bound states is 0.
    Decaying,
    /// V keeps growing; every state below V(r_max) is bound.
    Confining,
}

/// Extrapolation rule for a tabulated potential beyond its last sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailFit {
    /// V ~ c/r, least-squares fit over the outer sample window.
    Decaying { c: f64 },
    /// V ~ a + b r + c r^2 over the outer sample window.
    Confining { a: f64, b: f64, c: f64 },
}

/// Number of innermost samples used for the origin fit of tabulated data.
pub const DEFAULT_FIT_WINDOW: usize = 8;

/// Monotone piecewise-cubic interpolant of sampled (r, V) data.
///
/// Slopes follow the Fritsch-Carlson construction, so the interpolant never
/// overshoots between samples and reproduces every sample exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedPotential {
    r: Vec<f64>,
    v: Vec<f64>,
    slope: Vec<f64>,
    origin_fit: OriginCoefficients,
    tail: TailFit,
}

impl TabulatedPotential {
    fn new(r: Vec<f64>, v: Vec<f64>, fit_window: usize) -> Result<Self> {
        if r.len() < 4 {
            return Err(SolverError::InsufficientSamples { needed: 4, got: r.len() });
        }
        let slope = pchip_slopes(&r, &v);
        let origin_fit = fit_origin(&r, &v, fit_window.clamp(4, r.len()));
        let tail = fit_tail(&r, &v);
        Ok(Self { r, v, slope, origin_fit, tail })
    }

    #[must_use]
    pub fn samples(&self) -> (&[f64], &[f64]) {
        (&self.r, &self.v)
    }

    #[must_use]
    pub fn origin_fit(&self) -> OriginCoefficients {
        self.origin_fit
    }

    #[must_use]
    pub fn tail_fit(&self) -> TailFit {
        self.tail
    }

    fn eval(&self, r: f64) -> f64 {
        let n = self.r.len();
        if r < self.r[0] {
            return self.origin_fit.singular_part(r);
        }
        if r > self.r[n - 1] {
            return match self.tail {
                TailFit::Decaying { c } => c / r,
                TailFit::Confining { a, b, c } => a + b * r + c * r * r,
            };
        }
        // rightmost interval with r[i] <= r
        let i = match self.r.binary_search_by(|x| x.partial_cmp(&r).unwrap()) {
            Ok(i) => return self.v[i],
            Err(i) => i - 1,
        };
        let h = self.r[i + 1] - self.r[i];
        let t = (r - self.r[i]) / h;
        let (y0, y1) = (self.v[i], self.v[i + 1]);
        let (m0, m1) = (self.slope[i] * h, self.slope[i + 1] * h);
        let t2 = t * t;
        let t3 = t2 * t;
        (2.0 * t3 - 3.0 * t2 + 1.0) * y0
            + (t3 - 2.0 * t2 + t) * m0
            + (-2.0 * t3 + 3.0 * t2) * y1
            + (t3 - t2) * m1
    }
}

/// A central potential, either from the closed-form catalog or tabulated.
#[derive(Debug, Clone, PartialEq)]
pub enum PotentialSpec {
    /// V = -Z/r
    Coulomb { z: f64 },
    /// V = (1/2) m omega^2 r^2; the mass is taken from the channel at evaluation.
    Harmonic { omega: f64 },
    /// V = alpha/r^2
    InverseSquare { alpha: f64 },
    /// Pointwise sum of members; construction flattens nested sums.
    SumOf(Vec<PotentialSpec>),
    Tabulated(TabulatedPotential),
}

impl PotentialSpec {
    /// Flattens nested sums and rejects empty sums or tabulated members with
    /// mismatched abscissae.
    pub fn sum_of(members: Vec<PotentialSpec>) -> Result<Self> {
        let mut flat = Vec::new();
        fn push(dst: &mut Vec<PotentialSpec>, p: PotentialSpec) {
            match p {
                PotentialSpec::SumOf(v) => v.into_iter().for_each(|m| push(dst, m)),
                other => dst.push(other),
            }
        }
        members.into_iter().for_each(|m| push(&mut flat, m));
        if flat.is_empty() {
            return Err(SolverError::EmptySum);
        }
        let mut tab_grid: Option<&[f64]> = None;
        for m in &flat {
            if let PotentialSpec::Tabulated(t) = m {
                match tab_grid {
                    None => tab_grid = Some(&t.r),
                    Some(g) if g == t.r.as_slice() => {}
                    Some(_) => return Err(SolverError::MismatchedGrids),
                }
            }
        }
        if flat.len() == 1 {
            return Ok(flat.pop().unwrap());
        }
        Ok(PotentialSpec::SumOf(flat))
    }

    /// Builds a tabulated potential from strictly increasing positive samples.
    pub fn tabulated(samples: Vec<(f64, f64)>, fit_window: usize) -> Result<Self> {
        for (i, &(r, v)) in samples.iter().enumerate() {
            if !r.is_finite() || !v.is_finite() {
                return Err(SolverError::TabulatedParse {
                    line: i + 1,
                    message: "non-finite sample".into(),
                });
            }
            if r <= 0.0 {
                return Err(SolverError::NonPositiveRadius { r });
            }
            if i > 0 && samples[i - 1].0 >= r {
                return Err(SolverError::TabulatedParse {
                    line: i + 1,
                    message: format!("abscissae must increase strictly ({} then {r})", samples[i - 1].0),
                });
            }
        }
        let (r, v) = samples.into_iter().unzip();
        Ok(PotentialSpec::Tabulated(TabulatedPotential::new(r, v, fit_window)?))
    }

    /// V(r) in energy units. `mass` only matters for the harmonic member.
    pub fn evaluate(&self, mass: f64, r: f64) -> Result<f64> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(SolverError::NonPositiveRadius { r });
        }
        Ok(self.eval_unchecked(mass, r))
    }

    pub(crate) fn eval_unchecked(&self, mass: f64, r: f64) -> f64 {
        match self {
            Self::Coulomb { z } => -z / r,
            Self::Harmonic { omega } => 0.5 * mass * omega * omega * r * r,
            Self::InverseSquare { alpha } => alpha / (r * r),
            Self::SumOf(ms) => ms.iter().map(|m| m.eval_unchecked(mass, r)).sum(),
            Self::Tabulated(t) => t.eval(r),
        }
    }

    /// Coefficients of V(r) = c2/r^2 + c1/r + c0 + o(1) near the origin.
    #[must_use]
    pub fn origin_coefficients(&self) -> OriginCoefficients {
        match self {
            Self::Coulomb { z } => OriginCoefficients { c2: 0.0, c1: -z, c0: 0.0 },
            Self::Harmonic { .. } => OriginCoefficients { c2: 0.0, c1: 0.0, c0: 0.0 },
            Self::InverseSquare { alpha } => OriginCoefficients { c2: *alpha, c1: 0.0, c0: 0.0 },
            Self::SumOf(ms) => {
                let mut acc = OriginCoefficients { c2: 0.0, c1: 0.0, c0: 0.0 };
                for m in ms {
                    let c = m.origin_coefficients();
                    acc.c2 += c.c2;
                    acc.c1 += c.c1;
                    acc.c0 += c.c0;
                }
                acc
            }
            Self::Tabulated(t) => t.origin_fit,
        }
    }

    /// Whether the tail binds everything below V(r_max) or only below 0.
    #[must_use]
    pub fn tail_kind(&self) -> TailKind {
        match self {
            Self::Coulomb { .. } | Self::InverseSquare { .. } => TailKind::Decaying,
            Self::Harmonic { .. } => TailKind::Confining,
            Self::SumOf(ms) => {
                if ms.iter().any(|m| m.tail_kind() == TailKind::Confining) {
                    TailKind::Confining
                } else {
                    TailKind::Decaying
                }
            }
            Self::Tabulated(t) => match t.tail {
                TailFit::Decaying { .. } => TailKind::Decaying,
                TailFit::Confining { .. } => TailKind::Confining,
            },
        }
    }
}

/// Parses two-column CSV text (`r,V` per line, `#` comments allowed) into a
/// tabulated potential. Errors name the offending 1-based line.
pub fn load_tabulated(text: &str, fit_window: usize) -> Result<PotentialSpec> {
    let mut samples = Vec::new();
    let mut prev_r = 0.0f64;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let mut fields = s.split(',');
        let (a, b) = match (fields.next(), fields.next(), fields.next()) {
            (Some(a), Some(b), None) => (a.trim(), b.trim()),
            _ => {
                return Err(SolverError::TabulatedParse {
                    line,
                    message: format!("expected two comma-separated columns, got {s:?}"),
                })
            }
        };
        let parse = |f: &str, what: &str| -> Result<f64> {
            let x: f64 = f.parse().map_err(|_| SolverError::TabulatedParse {
                line,
                message: format!("{what} {f:?} is not a number"),
            })?;
            if !x.is_finite() {
                return Err(SolverError::TabulatedParse {
                    line,
                    message: format!("{what} {f:?} is not finite"),
                });
            }
            Ok(x)
        };
        let r = parse(a, "radius")?;
        let v = parse(b, "value")?;
        if r <= 0.0 {
            return Err(SolverError::TabulatedParse {
                line,
                message: format!("radius must be positive, got {r}"),
            });
        }
        if r <= prev_r {
            return Err(SolverError::TabulatedParse {
                line,
                message: format!("radii must increase strictly ({prev_r} then {r})"),
            });
        }
        prev_r = r;
        samples.push((r, v));
    }
    if samples.len() < 4 {
        return Err(SolverError::InsufficientSamples { needed: 4, got: samples.len() });
    }
    PotentialSpec::tabulated(samples, fit_window)
}

/// Fritsch-Carlson monotonicity-preserving slopes for cubic Hermite data.
fn pchip_slopes(r: &[f64], v: &[f64]) -> Vec<f64> {
    let n = r.len();
    let h: Vec<f64> = (0..n - 1).map(|i| r[i + 1] - r[i]).collect();
    let d: Vec<f64> = (0..n - 1).map(|i| (v[i + 1] - v[i]) / h[i]).collect();
    let mut m = vec![0.0; n];
    for i in 1..n - 1 {
        if d[i - 1] * d[i] <= 0.0 {
            m[i] = 0.0;
        } else {
            let w1 = 2.0 * h[i] + h[i - 1];
            let w2 = h[i] + 2.0 * h[i - 1];
            m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    m[0] = edge_slope(h[0], h[1], d[0], d[1]);
    m[n - 1] = edge_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
    m
}

/// One-sided three-point slope estimate, clamped so the end interval stays
/// monotone.
fn edge_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    if d0 == 0.0 {
        return 0.0;
    }
    let m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if m.signum() != d0.signum() {
        0.0
    } else if d0.signum() != d1.signum() && m.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        m
    }
}

/// Least-squares fit of r^2 V(r) = c2 + c1 r + c0 r^2 over the innermost
/// `window` samples; much better conditioned than fitting V directly.
fn fit_origin(r: &[f64], v: &[f64], window: usize) -> OriginCoefficients {
    let k = window.min(r.len());
    let g: Vec<f64> = (0..k).map(|i| r[i] * r[i] * v[i]).collect();
    let c = polyfit2(&r[..k], &g);
    OriginCoefficients { c2: c[0], c1: c[1], c0: c[2] }
}

fn fit_tail(r: &[f64], v: &[f64]) -> TailFit {
    let n = r.len();
    let w = (n / 10).max(3).min(n);
    let (rw, vw) = (&r[n - w..], &v[n - w..]);
    let increasing = vw[w - 1] > vw[0];
    if increasing && vw[w - 1] > 0.0 {
        let c = polyfit2(rw, vw);
        TailFit::Confining { a: c[0], b: c[1], c: c[2] }
    } else {
        // V ~ c/r: minimize sum (v - c/r)^2 -> c = sum(v/r)/sum(1/r^2)
        let num: f64 = rw.iter().zip(vw).map(|(r, v)| v / r).sum();
        let den: f64 = rw.iter().map(|r| 1.0 / (r * r)).sum();
        TailFit::Decaying { c: num / den }
    }
}

/// Least-squares coefficients (a0, a1, a2) of y = a0 + a1 x + a2 x^2.
fn polyfit2(x: &[f64], y: &[f64]) -> [f64; 3] {
    let mut m = [[0.0f64; 3]; 3];
    let mut b = [0.0f64; 3];
    for (&xi, &yi) in x.iter().zip(y) {
        let basis = [1.0, xi, xi * xi];
        for j in 0..3 {
            for k in 0..3 {
                m[j][k] += basis[j] * basis[k];
            }
            b[j] += basis[j] * yi;
        }
    }
    solve3(m, b)
}

/// 3x3 linear solve with partial pivoting.
fn solve3(mut m: [[f64; 3]; 3], mut b: [f64; 3]) -> [f64; 3] {
    for col in 0..3 {
        let piv = (col..3).max_by(|&a, &c| m[a][col].abs().total_cmp(&m[c][col].abs())).unwrap();
        m.swap(col, piv);
        b.swap(col, piv);
        let p = m[col][col];
        for row in col + 1..3 {
            let f = m[row][col] / p;
            for k in col..3 {
                m[row][k] -= f * m[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let mut acc = b[row];
        for k in row + 1..3 {
            acc -= m[row][k] * x[k];
        }
        x[row] = acc / m[row][row];
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn log_samples(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> Vec<(f64, f64)> {
        (0..n)
            .map(|i| {
                let r = a * (b / a).powf(i as f64 / (n - 1) as f64);
                (r, f(r))
            })
            .collect()
    }

    #[test]
    fn catalog_values() {
        let c = PotentialSpec::Coulomb { z: 1.0 };
        assert_relative_eq!(c.evaluate(1.0, 2.0).unwrap(), -0.5);
        let h = PotentialSpec::Harmonic { omega: 1.0 };
        assert_relative_eq!(h.evaluate(1.0, 2.0).unwrap(), 2.0);
        let q = PotentialSpec::InverseSquare { alpha: 0.25 };
        assert_relative_eq!(q.evaluate(1.0, 0.5).unwrap(), 1.0);
        assert!(c.evaluate(1.0, 0.0).is_err());
        assert!(c.evaluate(1.0, -1.0).is_err());
    }

    #[test]
    fn sum_is_pointwise_additive_and_flat() {
        let inner = PotentialSpec::sum_of(vec![
            PotentialSpec::Coulomb { z: 1.0 },
            PotentialSpec::InverseSquare { alpha: 0.1 },
        ])
        .unwrap();
        let s = PotentialSpec::sum_of(vec![inner, PotentialSpec::Harmonic { omega: 2.0 }]).unwrap();
        match &s {
            PotentialSpec::SumOf(ms) => assert_eq!(ms.len(), 3),
            other => panic!("expected flat sum, got {other:?}"),
        }
        let r = 1.7;
        let direct = -1.0 / r + 0.1 / (r * r) + 0.5 * 4.0 * r * r;
        assert_relative_eq!(s.evaluate(1.0, r).unwrap(), direct, max_relative = 1e-14);
        assert!(PotentialSpec::sum_of(vec![]).is_err());
    }

    #[test]
    fn origin_coefficients_match_catalog() {
        let s = PotentialSpec::sum_of(vec![
            PotentialSpec::Coulomb { z: 2.0 },
            PotentialSpec::InverseSquare { alpha: -0.1 },
            PotentialSpec::Harmonic { omega: 1.0 },
        ])
        .unwrap();
        let c = s.origin_coefficients();
        assert_relative_eq!(c.c2, -0.1);
        assert_relative_eq!(c.c1, -2.0);
        assert_relative_eq!(c.c0, 0.0);
    }

    #[test]
    fn singular_part_captures_origin_behavior() {
        // evaluate - singular_part must vanish as r -> 0
        let pots = [
            PotentialSpec::Coulomb { z: 1.0 },
            PotentialSpec::InverseSquare { alpha: 0.3 },
            PotentialSpec::Harmonic { omega: 1.0 },
        ];
        for p in &pots {
            let c = p.origin_coefficients();
            for &r in &[1e-3, 1e-4, 1e-5] {
                let diff = p.evaluate(1.0, r).unwrap() - c.singular_part(r);
                assert!(diff.abs() <= 1e-5, "{p:?} at r={r}: residual {diff}");
            }
        }
    }

    #[test]
    fn tabulated_reproduces_samples_exactly() {
        let samples = log_samples(|r| -1.0 / r, 0.01, 10.0, 64);
        let p = PotentialSpec::tabulated(samples.clone(), DEFAULT_FIT_WINDOW).unwrap();
        for &(r, v) in &samples {
            assert_relative_eq!(p.evaluate(1.0, r).unwrap(), v, max_relative = 1e-14);
        }
    }

    #[test]
    fn tabulated_interpolation_stays_between_monotone_samples() {
        let samples = log_samples(|r| -1.0 / r, 0.05, 5.0, 40);
        let p = PotentialSpec::tabulated(samples.clone(), DEFAULT_FIT_WINDOW).unwrap();
        for w in samples.windows(2) {
            let (r0, v0) = w[0];
            let (r1, v1) = w[1];
            for k in 1..8 {
                let r = r0 + (r1 - r0) * k as f64 / 8.0;
                let v = p.evaluate(1.0, r).unwrap();
                let (lo, hi) = if v0 < v1 { (v0, v1) } else { (v1, v0) };
                assert!(v >= lo - 1e-12 && v <= hi + 1e-12, "overshoot at r={r}");
            }
        }
    }

    #[test]
    fn origin_fit_recovers_inverse_square() {
        let p = PotentialSpec::tabulated(log_samples(|r| 1.0 / (r * r), 0.01, 10.0, 64), 8).unwrap();
        let c = p.origin_coefficients();
        assert_abs_diff_eq!(c.c2, 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(c.c1, 0.0, epsilon = 1e-8);
        assert_abs_diff_eq!(c.c0, 0.0, epsilon = 1e-6);
    }

    #[test]
    fn origin_fit_recovers_coulomb() {
        let p = PotentialSpec::tabulated(log_samples(|r| -2.0 / r, 0.01, 10.0, 64), 8).unwrap();
        let c = p.origin_coefficients();
        assert_abs_diff_eq!(c.c2, 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(c.c1, -2.0, epsilon = 1e-8);
    }

    #[test]
    fn tail_classification() {
        let conf = PotentialSpec::tabulated(log_samples(|r| r * r, 0.1, 20.0, 80), 8).unwrap();
        assert_eq!(conf.tail_kind(), TailKind::Confining);
        // extrapolation should continue ~ r^2
        assert_relative_eq!(conf.evaluate(1.0, 25.0).unwrap(), 625.0, max_relative = 1e-3);

        let dec = PotentialSpec::tabulated(log_samples(|r| -1.0 / r, 0.1, 20.0, 80), 8).unwrap();
        assert_eq!(dec.tail_kind(), TailKind::Decaying);
        assert_relative_eq!(dec.evaluate(1.0, 40.0).unwrap(), -0.025, max_relative = 1e-6);
    }

    #[test]
    fn sum_tail_confining_wins() {
        let s = PotentialSpec::sum_of(vec![
            PotentialSpec::Coulomb { z: 1.0 },
            PotentialSpec::Harmonic { omega: 1.0 },
        ])
        .unwrap();
        assert_eq!(s.tail_kind(), TailKind::Confining);
    }

    #[test]
    fn csv_happy_path_and_comments() {
        let text = "# radial samples\n0.5,-2.0\n1.0,-1.0\n2.0,-0.5\n4.0,-0.25\n";
        let p = load_tabulated(text, 4).unwrap();
        assert_relative_eq!(p.evaluate(1.0, 2.0).unwrap(), -0.5);
    }

    #[test]
    fn csv_errors_name_the_line() {
        let bad_number = "0.5,-2.0\n1.0,-1.0\nbroken,-0.5\n4.0,-0.25\n";
        match load_tabulated(bad_number, 4) {
            Err(SolverError::TabulatedParse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        let non_monotone = "0.5,-2.0\n1.0,-1.0\n0.9,-0.5\n4.0,-0.25\n";
        match load_tabulated(non_monotone, 4) {
            Err(SolverError::TabulatedParse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        match load_tabulated("1.0,1.0\n2.0,2.0\n", 4) {
            Err(SolverError::InsufficientSamples { got, .. }) => assert_eq!(got, 2),
            other => panic!("expected insufficient samples, got {other:?}"),
        }
    }

    #[test]
    fn sum_of_mismatched_tabulated_grids_rejected() {
        let a = PotentialSpec::tabulated(log_samples(|r| -1.0 / r, 0.1, 10.0, 16), 4).unwrap();
        let b = PotentialSpec::tabulated(log_samples(|r| -1.0 / r, 0.1, 10.0, 17), 4).unwrap();
        assert!(matches!(
            PotentialSpec::sum_of(vec![a.clone(), b]),
            Err(SolverError::MismatchedGrids)
        ));
        assert!(PotentialSpec::sum_of(vec![a.clone(), a]).is_ok());
    }
}
