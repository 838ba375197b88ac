//! Adaptive quadrature building blocks for the oracle integrals.
//!
//! The workhorse is a 15-point Gauss-Kronrod rule inside a worst-interval
//! bisection loop. Endpoint singularities integrable in the tanh-sinh sense
//! are handled by a double-exponential rule on the unit interval, and
//! integrals over half-lines are mapped onto the unit interval first.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::EvalError;

/// Tolerances and budget for adaptive quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Absolute error target.
    pub abs_tol: f64,
    /// Relative error target; the effective target is
    /// `max(abs_tol, rel_tol * |estimate|)`.
    pub rel_tol: f64,
    /// Maximum number of interval bisections.
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            abs_tol: 1e-10,
            rel_tol: 1e-8,
            max_subdivisions: 2000,
        }
    }
}

// 15-point Kronrod abscissae on [-1, 1] (positive half) with the embedded
// 7-point Gauss rule; the classical QUADPACK constants.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.000_000_000_000_000_0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// QUADPACK-style rescaling of the raw Kronrod-Gauss difference into a
/// conservative error estimate.
fn rescale_error(err: f64, result_abs: f64, result_asc: f64) -> f64 {
    let mut err = err.abs();
    if result_asc != 0.0 && err != 0.0 {
        err = result_asc * 1.0_f64.min((200.0 * err / result_asc).powf(1.5));
    }
    if result_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * result_abs);
    }
    err
}

/// One 15-point Gauss-Kronrod panel on `[a, b]`; returns the Kronrod value
/// and its error estimate.
fn qk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    let mut result_gauss = WG[3] * f_center;
    let mut result_kronrod = WGK[7] * f_center;
    let mut result_abs = WGK[7] * f_center.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];

    for j in 0..7 {
        let offset = half * XGK[j];
        let above = f(center + offset);
        let below = f(center - offset);
        fv1[j] = above;
        fv2[j] = below;
        let pair = above + below;
        result_kronrod += WGK[j] * pair;
        result_abs += WGK[j] * (above.abs() + below.abs());
        if j % 2 == 1 {
            result_gauss += WG[j / 2] * pair;
        }
    }

    let mean = 0.5 * result_kronrod;
    let mut result_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        result_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let value = result_kronrod * half;
    let err = rescale_error(
        (result_kronrod - result_gauss) * half,
        result_abs * half.abs(),
        result_asc * half.abs(),
    );
    (value, err)
}

#[derive(Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Adaptive Gauss-Kronrod integration of `f` on the finite interval `[a, b]`.
///
/// Bisects the worst panel until the summed error estimate meets the spec or
/// the subdivision budget is exhausted (reported as `NoConvergence`).
/// Returns the estimate with its error bound.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64), EvalError> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(EvalError::Quadrature(
            "integrate expects finite endpoints; map half-lines first".into(),
        ));
    }
    if a == b {
        return Ok((0.0, 0.0));
    }
    let (v, e) = qk15(&f, a, b);
    if !v.is_finite() {
        return Err(EvalError::Quadrature(format!(
            "integrand not finite on [{a}, {b}]"
        )));
    }
    let mut heap = BinaryHeap::new();
    heap.push(Panel { a, b, value: v, err: e });
    let mut total_value = v;
    let mut total_err = e;
    let mut splits = 0usize;
    while total_err > spec.abs_tol.max(spec.rel_tol * total_value.abs()) {
        if splits >= spec.max_subdivisions {
            return Err(EvalError::NoConvergence {
                terms: splits,
                abs_err: total_err,
            });
        }
        let worst = heap.pop().expect("non-empty heap while error is positive");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval at floating point resolution; accept its estimate.
            total_err = (total_err - worst.err).max(0.0);
            continue;
        }
        let (lv, le) = qk15(&f, worst.a, mid);
        let (rv, re) = qk15(&f, mid, worst.b);
        if !(lv.is_finite() && rv.is_finite()) {
            return Err(EvalError::Quadrature(format!(
                "integrand not finite near [{:.6e}, {:.6e}]",
                worst.a, worst.b
            )));
        }
        total_value += lv + rv - worst.value;
        total_err += le + re - worst.err;
        heap.push(Panel { a: worst.a, b: mid, value: lv, err: le });
        heap.push(Panel { a: mid, b: worst.b, value: rv, err: re });
        splits += 1;
    }
    Ok((total_value, total_err))
}

/// Integral of `f` over `[origin, inf)` through the map
/// `y = origin + scale * t / (1 - t)`.
///
/// `scale` sets where the half-line is sampled densest; pick it near the
/// decay scale of the integrand.
pub fn integrate_to_inf<F: Fn(f64) -> f64>(
    f: F,
    origin: f64,
    scale: f64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64), EvalError> {
    debug_assert!(scale > 0.0);
    let g = |t: f64| {
        let om = 1.0 - t;
        let y = origin + scale * t / om;
        let jacobian = scale / (om * om);
        if !jacobian.is_finite() {
            return 0.0;
        }
        let fy = f(y);
        // Decaying integrands reach zero before the Jacobian blows up; treat
        // the product as zero once the value underflows.
        if fy == 0.0 {
            0.0
        } else {
            fy * jacobian
        }
    };
    integrate(g, 0.0, 1.0, spec)
}

/// Double-exponential (tanh-sinh) quadrature of a complex-valued integrand on
/// the open unit interval `(0, 1)`.
///
/// The integrand receives the node `u` and `1 - u` separately so that
/// endpoint factors like `(1-u)^(c-a-1)` can be formed without cancellation.
/// Handles endpoint singularities that are integrable in the double
/// exponential sense (any power stronger than -1).
pub fn tanh_sinh_01<F: Fn(f64, f64) -> Complex64>(
    f: F,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<(Complex64, f64, usize), EvalError> {
    // Beyond |t| ~ 4 the weights underflow for every integrand of interest.
    const T_MAX: f64 = 4.0;
    const MAX_LEVEL: u32 = 12;

    let node = |t: f64| -> (f64, f64, f64) {
        // u = (1 + tanh(pi/2 sinh t)) / 2 computed through exponentials so
        // both u and 1 - u stay accurate near the endpoints.
        let s = std::f64::consts::FRAC_PI_2 * t.sinh();
        let e2 = (-2.0 * s).exp();
        let u = 1.0 / (1.0 + e2);
        let one_minus = e2 / (1.0 + e2);
        let weight = std::f64::consts::FRAC_PI_2 * t.cosh() / (s.cosh() * s.cosh()) * 0.5;
        (u, one_minus, weight)
    };

    let eval = |t: f64| -> Complex64 {
        let (u, om, w) = node(t);
        if w == 0.0 || !w.is_finite() {
            return Complex64::new(0.0, 0.0);
        }
        let v = f(u, om);
        v * w
    };

    let mut h = 1.0;
    let mut sum = eval(0.0);
    let mut k = 1;
    while (k as f64) * h <= T_MAX {
        let t = k as f64 * h;
        sum += eval(t) + eval(-t);
        k += 1;
    }
    let mut estimate = sum * h;
    let mut previous = estimate;
    let mut evaluations = 2 * k - 1;

    for level in 1..=MAX_LEVEL {
        h *= 0.5;
        // New nodes are the odd multiples of the refined step.
        let mut j = 1;
        while (j as f64) * h <= T_MAX {
            let t = j as f64 * h;
            sum += eval(t) + eval(-t);
            evaluations += 2;
            j += 2;
        }
        previous = estimate;
        estimate = sum * h;
        if !estimate.is_finite() {
            return Err(EvalError::Quadrature(
                "tanh-sinh nodes produced a non-finite integrand".into(),
            ));
        }
        let diff = (estimate - previous).norm();
        if level >= 3 && diff <= abs_tol.max(rel_tol * estimate.norm()) {
            return Ok((estimate, diff + f64::EPSILON * estimate.norm(), evaluations));
        }
    }
    Err(EvalError::NoConvergence {
        terms: evaluations,
        abs_err: (estimate - previous).norm(),
    })
}
