//! Numerical quadrature used by the weak-form defect check: an adaptive
//! Gauss-Kronrod rule for analytic integrands and a composite Simpson rule
//! (with a coarse-grid error estimate) for grid-sampled integrands.

/// 15-point Kronrod abscissae on [-1, 1], positive half, outermost first.
/// Odd indices are the embedded 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

/// Kronrod weights matching `XGK`.
const WGK: [f64; 8] = [
    0.022_935_322_010_529_2,
    0.063_092_092_629_978_6,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

/// Embedded 7-point Gauss weights for `XGK[1]`, `XGK[3]`, `XGK[5]`, `XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One Gauss-Kronrod panel: returns the 15-point estimate and the magnitude
/// of its difference from the embedded 7-point Gauss estimate.
fn gk_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let hl = 0.5 * (b - a);
    let fc = f(c);
    let mut resk = WGK[7] * fc;
    let mut resg = WG[3] * fc;
    for j in 0..7 {
        let x = hl * XGK[j];
        let s = f(c - x) + f(c + x);
        resk += WGK[j] * s;
        if j % 2 == 1 {
            resg += WG[j / 2] * s;
        }
    }
    (resk * hl, (resk - resg).abs() * hl)
}

/// Adaptive Gauss-Kronrod integration of `f` over [a, b]. Panels whose
/// Gauss/Kronrod discrepancy exceeds their share of `tol` are bisected.
/// Returns the integral and the accumulated error estimate; the caller
/// decides whether the estimate is acceptable.
#[must_use]
pub fn adaptive_gk<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    if !(b > a) {
        return (0.0, 0.0);
    }
    let span = b - a;
    let (k0, e0) = gk_panel(f, a, b);
    let mut stack = vec![(a, b, k0, e0)];
    let mut value = 0.0;
    let mut err = 0.0;
    let mut splits = 0usize;
    const MAX_SPLITS: usize = 20_000;
    while let Some((a1, b1, k1, e1)) = stack.pop() {
        let width = b1 - a1;
        let local_tol = tol * width / span;
        let converged = e1 <= local_tol.max(f64::EPSILON * k1.abs());
        if converged || splits >= MAX_SPLITS || width < 1e-14 * span {
            value += k1;
            err += e1;
        } else {
            splits += 1;
            let m = 0.5 * (a1 + b1);
            let (kl, el) = gk_panel(f, a1, m);
            let (kr, er) = gk_panel(f, m, b1);
            stack.push((a1, m, kl, el));
            stack.push((m, b1, kr, er));
        }
    }
    (value, err)
}

/// Upper integration limit for a decaying integrand: doubles outward until
/// the most recent band's magnitude is below 1e-16 of the running peak.
#[must_use]
pub fn decay_cutoff<F: Fn(f64) -> f64>(f: &F, start: f64) -> f64 {
    let band_max = |lo: f64, hi: f64| -> f64 {
        let mut m = 0.0f64;
        for i in 0..=32 {
            let r = lo + (hi - lo) * f64::from(i) / 32.0;
            let v = f(r).abs();
            if v.is_finite() {
                m = m.max(v);
            }
        }
        m
    };
    let mut lo = 0.0;
    let mut hi = start.max(1.0);
    let mut peak = 0.0f64;
    for _ in 0..60 {
        let band = band_max(lo, hi);
        peak = peak.max(band);
        if band <= 1e-16 * peak {
            return hi;
        }
        lo = hi;
        hi *= 2.0;
    }
    hi
}

/// Composite Simpson rule for uniformly spaced samples `y` with spacing `h`.
/// An odd interval count is closed with the 3/8 rule on the last three
/// intervals, keeping the whole estimate fourth order.
#[must_use]
pub fn simpson(y: &[f64], h: f64) -> f64 {
    let n = y.len();
    match n {
        0 | 1 => 0.0,
        2 => 0.5 * h * (y[0] + y[1]),
        3 => h / 3.0 * (y[0] + 4.0 * y[1] + y[2]),
        _ => {
            let intervals = n - 1;
            if intervals % 2 == 0 {
                let mut s = y[0] + y[intervals];
                for (i, &yi) in y.iter().enumerate().take(intervals).skip(1) {
                    s += if i % 2 == 1 { 4.0 * yi } else { 2.0 * yi };
                }
                s * h / 3.0
            } else {
                // even prefix + 3/8 closure
                let main = simpson(&y[..n - 3], h);
                let tail = 3.0 * h / 8.0
                    * (y[n - 4] + 3.0 * y[n - 3] + 3.0 * y[n - 2] + y[n - 1]);
                main + tail
            }
        }
    }
}

/// Composite Simpson value together with a stride-doubling error estimate:
/// the integral is recomputed from every other sample and the fourth-order
/// Richardson factor 1/15 converts the difference into an error estimate.
#[must_use]
pub fn simpson_checked(y: &[f64], h: f64) -> (f64, f64) {
    let n = y.len();
    let total = simpson(y, h);
    if n < 5 {
        return (total, total.abs());
    }
    // largest prefix with an even interval count, so the strided copy spans it
    let m = if n % 2 == 1 { n } else { n - 1 };
    let fine = simpson(&y[..m], h);
    let strided: Vec<f64> = y[..m].iter().step_by(2).copied().collect();
    let coarse = simpson(&strided, 2.0 * h);
    (total, (fine - coarse).abs() / 15.0)
}
