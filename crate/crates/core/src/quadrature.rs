//! Adaptive Gauss–Kronrod integration and bracketing root search.
//!
//! Every integral in the crate goes through [`integrate`] or
//! [`integrate_with_breakpoints`]: the time averages behind the speed-limit
//! rates and the frequency integral of the dephasing factor.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{QslError, Result};

// Gauss–Kronrod 7/15 abscissae and weights (positive half, centre last).
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

// Gauss weights for XGK[1], XGK[3], XGK[5] and the centre.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSettings {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-9,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureSettings {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize) -> Result<Self> {
        let s = Self {
            abs_tol,
            rel_tol,
            max_subdivisions,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) {
            return Err(QslError::InvalidParameter {
                name: "abs_tol",
                value: self.abs_tol,
                reason: "must be positive",
            });
        }
        if !(self.rel_tol > 0.0) {
            return Err(QslError::InvalidParameter {
                name: "rel_tol",
                value: self.rel_tol,
                reason: "must be positive",
            });
        }
        if self.max_subdivisions < 1 {
            return Err(QslError::InvalidParameter {
                name: "max_subdivisions",
                value: self.max_subdivisions as f64,
                reason: "must be at least 1",
            });
        }
        Ok(())
    }

    /// Same settings with both tolerances scaled by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            abs_tol: self.abs_tol * factor,
            rel_tol: self.rel_tol * factor,
            max_subdivisions: self.max_subdivisions,
        }
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureOutcome {
    pub value: f64,
    pub error_estimate: f64,
    pub subdivisions_used: usize,
    pub converged: bool,
}

impl QuadratureOutcome {
    /// Converts a non-converged outcome into [`QslError::QuadratureNotConverged`].
    pub fn require_converged(self, a: f64, b: f64) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(QslError::QuadratureNotConverged {
                a,
                b,
                value: self.value,
                error_estimate: self.error_estimate,
                subdivisions: self.subdivisions_used,
            })
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    // Largest error first; ties broken by position so the order is total.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        let min_err = 50.0 * f64::EPSILON * res_abs;
        if min_err > scaled {
            scaled = min_err;
        }
    }
    scaled
}

fn kronrod15<F>(f: &F, a: f64, b: f64) -> Result<Panel>
where
    F: Fn(f64) -> f64,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval = |x: f64| -> Result<f64> {
        let y = f(x);
        if y.is_nan() {
            Err(QslError::NanIntegrand(x))
        } else {
            Ok(y)
        }
    };

    let f_center = eval(center)?;
    let mut res_k = f_center * WGK[7];
    let mut res_g = f_center * WG[3];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];

    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let scale = half.abs();
    let value = res_k * half;
    let error = rescale_error((res_k - res_g) * half, res_abs * scale, res_asc * scale);
    Ok(Panel { a, b, value, error })
}

/// Adaptive 7/15-point Gauss–Kronrod quadrature of `f` over `[a, b]`.
///
/// Non-convergence is not an error: the outcome carries `converged = false`
/// and the best available value. A NaN from `f` aborts with
/// [`QslError::NanIntegrand`].
pub fn integrate<F>(f: F, a: f64, b: f64, settings: &QuadratureSettings) -> Result<QuadratureOutcome>
where
    F: Fn(f64) -> f64,
{
    integrate_with_breakpoints(f, &[a, b], settings)
}

/// As [`integrate`], but starts from the panels delimited by `points`
/// (sorted, first and last are the limits). Use this to split at kinks or
/// oscillation periods.
pub fn integrate_with_breakpoints<F>(
    f: F,
    points: &[f64],
    settings: &QuadratureSettings,
) -> Result<QuadratureOutcome>
where
    F: Fn(f64) -> f64,
{
    settings.validate()?;
    if points.len() < 2 {
        return Err(QslError::InvalidParameter {
            name: "points",
            value: points.len() as f64,
            reason: "need at least the two integration limits",
        });
    }
    for w in points.windows(2) {
        if !(w[0] <= w[1]) {
            return Err(QslError::InvalidParameter {
                name: "points",
                value: w[1],
                reason: "breakpoints must be finite and non-decreasing",
            });
        }
    }

    let mut heap = BinaryHeap::new();
    let mut value = 0.0;
    let mut error = 0.0;
    for w in points.windows(2) {
        if w[0] == w[1] {
            continue;
        }
        let p = kronrod15(&f, w[0], w[1])?;
        value += p.value;
        error += p.error;
        heap.push(p);
    }
    let mut subdivisions = heap.len();

    while error > settings.target(value) && subdivisions < settings.max_subdivisions {
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval can no longer be split in floating point.
            heap.push(worst);
            break;
        }
        let left = kronrod15(&f, worst.a, mid)?;
        let right = kronrod15(&f, mid, worst.b)?;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        subdivisions += 1;
    }

    // Re-sum to drop drift from the running updates.
    let (value, error) = heap
        .iter()
        .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error));
    let converged = error <= settings.target(value);

    Ok(QuadratureOutcome {
        value,
        error_estimate: error,
        subdivisions_used: subdivisions,
        converged,
    })
}

const ROOT_MAX_ITERATIONS: usize = 200;

/// Brent's bracketing root search on `[lo, hi]`.
///
/// Requires `f(lo)` and `f(hi)` of opposite sign (an exact zero at either end
/// is returned directly). Terminates when the bracket is narrower than `tol`
/// or `f` vanishes exactly.
pub fn find_root<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(tol > 0.0) {
        return Err(QslError::InvalidParameter {
            name: "tol",
            value: tol,
            reason: "must be positive",
        });
    }
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa.is_nan() {
        return Err(QslError::NanIntegrand(a));
    }
    if fb.is_nan() {
        return Err(QslError::NanIntegrand(b));
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(QslError::NoSignChange {
            lo,
            hi,
            f_lo: fa,
            f_hi: fb,
        });
    }

    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;

    for _ in 0..ROOT_MAX_ITERATIONS {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }

        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }

        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol1 * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }

        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(m) };
        fb = f(b);
        if fb.is_nan() {
            return Err(QslError::NanIntegrand(b));
        }
    }
    Err(QslError::RootNotConverged(ROOT_MAX_ITERATIONS))
}

/// Locates every sign change of `f` on `[lo, hi]` visible on a uniform grid
/// of `samples` intervals, refining each with [`find_root`].
pub fn sign_changes<F>(f: F, lo: f64, hi: f64, samples: usize, tol: f64) -> Result<Vec<f64>>
where
    F: Fn(f64) -> f64,
{
    let samples = samples.max(1);
    let step = (hi - lo) / samples as f64;
    let mut roots = Vec::new();
    let mut x_prev = lo;
    let mut f_prev = f(lo);
    for i in 1..=samples {
        let x = if i == samples { hi } else { lo + step * i as f64 };
        let fx = f(x);
        if f_prev != 0.0 && fx != 0.0 && f_prev.signum() != fx.signum() {
            roots.push(find_root(&f, x_prev, x, tol)?);
        } else if fx == 0.0 && i < samples {
            roots.push(x);
        }
        x_prev = x;
        f_prev = fx;
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tight() -> QuadratureSettings {
        QuadratureSettings::new(1e-14, 1e-13, 2000).unwrap()
    }

    #[test]
    fn polynomial() {
        let out = integrate(|x| x * x, 0.0, 1.0, &QuadratureSettings::default()).unwrap();
        assert!(out.converged);
        assert!((out.value - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn gamma_two_truncated() {
        let out = integrate(|w| w * (-w).exp(), 0.0, 50.0, &tight()).unwrap();
        assert!((out.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn kinked_integrand_with_breakpoint() {
        let half_pi = std::f64::consts::FRAC_PI_2;
        let exact = 2.0 - 3f64.sin();
        let out = integrate_with_breakpoints(|t: f64| t.cos().abs(), &[0.0, half_pi, 3.0], &tight()).unwrap();
        assert!((out.value - exact).abs() < 1e-13);
        // Without the breakpoint adaptivity still copes, just with more panels.
        let plain = integrate(|t: f64| t.cos().abs(), 0.0, 3.0, &tight()).unwrap();
        assert!(plain.converged);
        assert!((plain.value - exact).abs() < 1e-12);
        assert!(plain.subdivisions_used > out.subdivisions_used);
    }

    #[test]
    fn reports_non_convergence() {
        let s = QuadratureSettings::new(1e-15, 1e-15, 3).unwrap();
        let out = integrate(|x: f64| x.sqrt(), 0.0, 1.0, &s).unwrap();
        assert!(!out.converged);
        assert!(out.subdivisions_used <= 3);
        assert!(matches!(
            out.require_converged(0.0, 1.0),
            Err(QslError::QuadratureNotConverged { .. })
        ));
    }

    #[test]
    fn nan_aborts() {
        let err = integrate(|x: f64| if x > 0.5 { f64::NAN } else { x }, 0.0, 1.0, &tight()).unwrap_err();
        assert!(matches!(err, QslError::NanIntegrand(_)));
    }

    #[test]
    fn empty_interval_is_zero() {
        let out = integrate(|x| x, 2.0, 2.0, &tight()).unwrap();
        assert_eq!(out.value, 0.0);
        assert!(out.converged);
    }

    #[test]
    fn rejects_bad_settings() {
        assert!(QuadratureSettings::new(0.0, 1e-9, 10).is_err());
        assert!(QuadratureSettings::new(1e-9, -1.0, 10).is_err());
        assert!(QuadratureSettings::new(1e-9, 1e-9, 0).is_err());
    }

    #[test]
    fn root_examples() {
        let r = find_root(|x| x - 1.0, 0.0, 2.0, 1e-14).unwrap();
        assert!((r - 1.0).abs() < 1e-14);
        let r = find_root(|x| x * x * x - 2.0, 1.0, 2.0, 1e-14).unwrap();
        assert!((r - 2f64.cbrt()).abs() < 1e-13);
        let r = find_root(|s| (s * 3f64.atan()).sin(), 2.0, 3.0, 1e-14).unwrap();
        assert!((r - std::f64::consts::PI / 3f64.atan()).abs() < 1e-13);
    }

    #[test]
    fn root_requires_bracket() {
        let err = find_root(|x| x * x + 1.0, -1.0, 1.0, 1e-12).unwrap_err();
        assert!(matches!(err, QslError::NoSignChange { .. }));
    }

    #[test]
    fn finds_all_sign_changes() {
        let roots = sign_changes(|x: f64| x.sin(), 0.5, 10.0, 64, 1e-14).unwrap();
        assert_eq!(roots.len(), 3);
        for (k, r) in roots.iter().enumerate() {
            assert!((r - std::f64::consts::PI * (k + 1) as f64).abs() < 1e-12);
        }
    }
}
