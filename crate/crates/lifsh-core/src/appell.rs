//! Two-variable hypergeometric functions: Appell `F1`, `F2`, `F4` and Horn
//! `H4`.
//!
//! Double series are summed along anti-diagonals `k + n = d` so that one
//! stopping rule sees whole blocks. Each function also carries the reduction
//! and continuation routes used by the cross checks: an Euler integral for
//! `F1` outside the unit polydisc, a single Gauss-series representation of
//! `H4` with closed-form inner functions, and the `F2` and `F4` relations
//! for `H4`.

use num_complex::Complex64;

use crate::error::EvalError;
use crate::gamma::{is_nonpos_int, ln_gamma};
use crate::quad::tanh_sinh_01;
use crate::series::{eval_2f1, term_cap, SeriesResult};

/// Sum a double series along anti-diagonals.
///
/// `ratio_k` maps the term at `(k, n)` to the one at `(k+1, n)` and `ratio_n`
/// to the one at `(k, n+1)`; the term at the origin is 1. `rho` is the
/// asymptotic block ratio used for the tail bound.
fn sum_anti_diagonals(
    ratio_k: impl Fn(usize, usize) -> f64,
    ratio_n: impl Fn(usize, usize) -> f64,
    rho: f64,
    tol: f64,
) -> Result<SeriesResult, EvalError> {
    let cap = term_cap();
    let mut row = vec![1.0f64];
    let mut sum = 1.0;
    let mut sum_abs = 1.0;
    let mut terms = 1usize;
    let mut small_streak = 0usize;
    let mut growth_streak = 0usize;
    let mut previous_block = 1.0f64;
    let mut d = 0usize;
    loop {
        let mut next = vec![0.0; row.len() + 1];
        for (k, &t) in row.iter().enumerate() {
            next[k] = t * ratio_n(k, d - k);
        }
        next[row.len()] = row[d] * ratio_k(d, 0);
        let block: f64 = next.iter().sum();
        let block_abs: f64 = next.iter().map(|t| t.abs()).sum();
        sum += block;
        sum_abs += block_abs;
        terms += next.len();
        d += 1;
        row = next;
        if !sum.is_finite() {
            return Err(EvalError::NoConvergence {
                terms,
                abs_err: f64::INFINITY,
            });
        }
        if block.abs() <= tol * sum.abs() {
            small_streak += 1;
            if small_streak >= 3 {
                break;
            }
        } else {
            small_streak = 0;
        }
        if block_abs > previous_block && d > 24 {
            growth_streak += 1;
            if growth_streak >= 16 {
                return Err(EvalError::NoConvergence {
                    terms,
                    abs_err: block_abs,
                });
            }
        } else {
            growth_streak = 0;
        }
        previous_block = block_abs;
        if terms >= cap {
            return Err(EvalError::NoConvergence {
                terms,
                abs_err: block_abs,
            });
        }
    }
    let last: f64 = row.iter().map(|t| t.abs()).sum();
    let tail = if rho < 1.0 { last * rho / (1.0 - rho) } else { last };
    Ok(SeriesResult {
        value: Complex64::new(sum, 0.0),
        abs_err: 2.0 * tail + 4.0 * f64::EPSILON * sum_abs,
        terms_used: terms,
        converged: true,
    })
}

fn check_lower(name: &str, value: f64) -> Result<(), EvalError> {
    if is_nonpos_int(value) {
        Err(EvalError::Pole(format!(
            "lower parameter {name} = {value} is a non-positive integer"
        )))
    } else {
        Ok(())
    }
}

/// Appell function `F1(a; b, b'; c; x, y)` for real arguments.
///
/// Exact one-variable reductions are applied first (`b = 0`, `b' = 0`,
/// `x = y`, `c = a`); inside the unit polydisc the double series is summed;
/// outside it, the one-dimensional Euler integral takes over when `c > a > 0`
/// and both arguments stay left of 1.
pub fn eval_f1(
    a: f64,
    b: f64,
    bp: f64,
    c: f64,
    x: f64,
    y: f64,
    tol: f64,
) -> Result<SeriesResult, EvalError> {
    if b == 0.0 {
        return eval_2f1(a, bp, c, Complex64::new(y, 0.0), tol);
    }
    if bp == 0.0 {
        return eval_2f1(a, b, c, Complex64::new(x, 0.0), tol);
    }
    // A vanishing argument removes its whole summation index exactly.
    if y == 0.0 {
        return eval_2f1(a, b, c, Complex64::new(x, 0.0), tol);
    }
    if x == 0.0 {
        return eval_2f1(a, bp, c, Complex64::new(y, 0.0), tol);
    }
    if x == y {
        return eval_2f1(a, b + bp, c, Complex64::new(x, 0.0), tol);
    }
    if c == a {
        // Binomial product: each variable factorizes.
        if x >= 1.0 || y >= 1.0 {
            return Err(EvalError::Domain(format!(
                "the binomial reduction of F1 needs x < 1 and y < 1, got x = {x}, y = {y}"
            )));
        }
        let value = (1.0 - x).powf(-b) * (1.0 - y).powf(-bp);
        return Ok(SeriesResult::exact(Complex64::new(value, 0.0)));
    }
    check_lower("c", c)?;
    if x.abs() < 1.0 && y.abs() < 1.0 {
        let ratio_k = |k: usize, n: usize| {
            let (kf, nf) = (k as f64, n as f64);
            (a + kf + nf) * (b + kf) / ((c + kf + nf) * (kf + 1.0)) * x
        };
        let ratio_n = |k: usize, n: usize| {
            let (kf, nf) = (k as f64, n as f64);
            (a + kf + nf) * (bp + nf) / ((c + kf + nf) * (nf + 1.0)) * y
        };
        return sum_anti_diagonals(ratio_k, ratio_n, x.abs().max(y.abs()), tol);
    }
    if c > a && a > 0.0 && x < 1.0 && y < 1.0 {
        return f1_euler(a, b, bp, c, x, y, tol);
    }
    Err(EvalError::Domain(format!(
        "F1 arguments ({x}, {y}) are outside the polydisc and the Euler route needs c > a > 0"
    )))
}

/// One-dimensional Euler integral for `F1`, valid for `c > a > 0` with both
/// arguments left of 1 so the integrand poles stay off the path.
fn f1_euler(
    a: f64,
    b: f64,
    bp: f64,
    c: f64,
    x: f64,
    y: f64,
    tol: f64,
) -> Result<SeriesResult, EvalError> {
    let prefactor = (ln_gamma(c) - ln_gamma(a) - ln_gamma(c - a)).exp();
    let integrand = |u: f64, one_minus: f64| {
        let base = u.powf(a - 1.0) * one_minus.powf(c - a - 1.0);
        Complex64::new(
            base * (1.0 - u * x).powf(-b) * (1.0 - u * y).powf(-bp),
            0.0,
        )
    };
    let (value, err, evals) = tanh_sinh_01(integrand, tol * 0.1, tol * 0.1)?;
    let scaled = prefactor * value.re;
    Ok(SeriesResult {
        value: Complex64::new(scaled, 0.0),
        abs_err: prefactor * err + 8.0 * f64::EPSILON * scaled.abs(),
        terms_used: evals,
        converged: true,
    })
}

/// Appell function `F2(a; b, b'; c, c'; x, y)` inside `|x| + |y| < 1`.
pub fn eval_f2(
    a: f64,
    b: f64,
    bp: f64,
    c: f64,
    cp: f64,
    x: f64,
    y: f64,
    tol: f64,
) -> Result<SeriesResult, EvalError> {
    check_lower("c", c)?;
    check_lower("c'", cp)?;
    if x.abs() + y.abs() >= 1.0 {
        return Err(EvalError::Domain(format!(
            "F2 needs |x| + |y| < 1, got {}",
            x.abs() + y.abs()
        )));
    }
    let ratio_k = |k: usize, n: usize| {
        let (kf, nf) = (k as f64, n as f64);
        (a + kf + nf) * (b + kf) / ((c + kf) * (kf + 1.0)) * x
    };
    let ratio_n = |k: usize, n: usize| {
        let (kf, nf) = (k as f64, n as f64);
        (a + kf + nf) * (bp + nf) / ((cp + nf) * (nf + 1.0)) * y
    };
    sum_anti_diagonals(ratio_k, ratio_n, x.abs() + y.abs(), tol)
}

/// Appell function `F4(a, b; c, c'; x, y)` inside
/// `sqrt(|x|) + sqrt(|y|) < 1`.
pub fn eval_f4(
    a: f64,
    b: f64,
    c: f64,
    cp: f64,
    x: f64,
    y: f64,
    tol: f64,
) -> Result<SeriesResult, EvalError> {
    check_lower("c", c)?;
    check_lower("c'", cp)?;
    let gauge = x.abs().sqrt() + y.abs().sqrt();
    if gauge >= 1.0 {
        return Err(EvalError::Domain(format!(
            "F4 needs sqrt|x| + sqrt|y| < 1, got {gauge}"
        )));
    }
    let ratio_k = |k: usize, n: usize| {
        let (kf, nf) = (k as f64, n as f64);
        (a + kf + nf) * (b + kf + nf) / ((c + kf) * (kf + 1.0)) * x
    };
    let ratio_n = |k: usize, n: usize| {
        let (kf, nf) = (k as f64, n as f64);
        (a + kf + nf) * (b + kf + nf) / ((cp + nf) * (nf + 1.0)) * y
    };
    sum_anti_diagonals(ratio_k, ratio_n, gauge * gauge, tol)
}

/// Horn function `H4(alpha, beta; gamma, delta; x, y)` by its double series
/// inside `2 sqrt(|x|) + |y| < 1`, falling back to the single-series route
/// of [`h4_single_series`] when the first argument is non-positive and the
/// series in the second variable still converges.
pub fn eval_h4(
    alpha: f64,
    beta: f64,
    gamma: f64,
    delta: f64,
    x: f64,
    y: f64,
    tol: f64,
) -> Result<SeriesResult, EvalError> {
    check_lower("gamma", gamma)?;
    check_lower("delta", delta)?;
    let gauge = 2.0 * x.abs().sqrt() + y.abs();
    if gauge < 1.0 {
        let ratio_k = |k: usize, n: usize| {
            let (kf, nf) = (k as f64, n as f64);
            (alpha + 2.0 * kf + nf) * (alpha + 2.0 * kf + nf + 1.0)
                / ((gamma + kf) * (kf + 1.0))
                * x
        };
        let ratio_n = |k: usize, n: usize| {
            let (kf, nf) = (k as f64, n as f64);
            (alpha + 2.0 * kf + nf) * (beta + nf) / ((delta + nf) * (nf + 1.0)) * y
        };
        return sum_anti_diagonals(ratio_k, ratio_n, gauge, tol);
    }
    h4_single_series(alpha, beta, gamma, delta, x, y, tol)
}

/// Maximum modulus of the second argument for which the single-series route
/// of `H4` converges at first argument `x`.
fn h4_outer_radius(x: f64) -> f64 {
    if x <= 0.0 {
        // Inner values decay like (1 + 4|x|)^(-n/2).
        (1.0 - 4.0 * x).sqrt()
    } else {
        // Inner values grow like (1 - 2 sqrt x)^(-n).
        1.0 - 2.0 * x.sqrt()
    }
}

/// Horn function `H4` as a single series of Gauss functions,
/// `sum_n (alpha)_n (beta)_n / ((delta)_n n!) 2F1((n+alpha)/2, (n+alpha+1)/2;
/// gamma; 4x) y^n`.
///
/// For `gamma = 1/2` or `3/2` the inner functions collapse to closed-form
/// powers with one complex division per step, which keeps the route stable
/// for any `x < 0`; this covers second arguments all the way to the
/// conditional boundary, in particular `y = -1`. For `y` close to -1 the
/// raw sum must agree with its Aitken-accelerated limit to ten significant
/// digits, otherwise the route reports no convergence.
pub fn h4_single_series(
    alpha: f64,
    beta: f64,
    gamma: f64,
    delta: f64,
    x: f64,
    y: f64,
    tol: f64,
) -> Result<SeriesResult, EvalError> {
    check_lower("gamma", gamma)?;
    check_lower("delta", delta)?;
    if x == 0.0 {
        return eval_2f1(alpha, beta, delta, Complex64::new(y, 0.0), tol);
    }
    if x > 0.25 {
        return Err(EvalError::Domain(format!(
            "the inner Gauss functions have their branch point at 4x = 1, got x = {x}"
        )));
    }
    if y.abs() >= h4_outer_radius(x) {
        return Err(EvalError::Domain(format!(
            "outer series in y diverges: |y| = {} is not below {}",
            y.abs(),
            h4_outer_radius(x)
        )));
    }

    let half = (gamma - 0.5).abs() < 1e-12;
    let three_half = (gamma - 1.5).abs() < 1e-12;
    // z with z^2 = 4x; imaginary for x < 0, where the two power bases are
    // complex conjugates and every inner value is manifestly real.
    let z = Complex64::new(4.0 * x, 0.0).sqrt();
    let base_plus = Complex64::new(1.0, 0.0) + z;
    let base_minus = Complex64::new(1.0, 0.0) - z;

    // Running powers for the closed-form inner functions.
    let mut wp = base_plus.powf(if half { -alpha } else { 1.0 - alpha });
    let mut wm = base_minus.powf(if half { -alpha } else { 1.0 - alpha });

    let cap = term_cap().min(200_000);
    let accelerate = y <= -0.9;
    let mut recent: Vec<f64> = Vec::new();
    const RING: usize = 17;

    let mut coeff = 1.0f64;
    let mut power = 1.0f64;
    let mut sum = 0.0f64;
    let mut sum_abs = 0.0f64;
    let mut inner_err = 0.0f64;
    let mut small_streak = 0usize;
    let mut last_term;
    let mut n = 0usize;
    loop {
        let nf = n as f64;
        let inner = if half {
            0.5 * (wp + wm).re
        } else if three_half {
            let nu = alpha + nf - 1.0;
            if nu.abs() < 1e-9 {
                // Limit of the closed form: atanh(z)/z continued to complex z.
                let l = ((Complex64::new(1.0, 0.0) + z).ln()
                    - (Complex64::new(1.0, 0.0) - z).ln())
                    / (2.0 * z);
                l.re
            } else {
                ((wm - wp) / (2.0 * z * nu)).re
            }
        } else {
            let f = eval_2f1(
                (nf + alpha) / 2.0,
                (nf + alpha + 1.0) / 2.0,
                gamma,
                Complex64::new(4.0 * x, 0.0),
                tol,
            )?;
            inner_err += coeff.abs() * power.abs() * f.abs_err;
            f.value.re
        };
        let term = coeff * inner * power;
        sum += term;
        sum_abs += term.abs();
        last_term = term.abs();
        if accelerate {
            if recent.len() == RING {
                recent.remove(0);
            }
            recent.push(sum);
        }
        if !sum.is_finite() {
            return Err(EvalError::NoConvergence {
                terms: n + 1,
                abs_err: f64::INFINITY,
            });
        }
        if term.abs() <= tol * sum.abs() {
            small_streak += 1;
            if small_streak >= 3 {
                n += 1;
                break;
            }
        } else {
            small_streak = 0;
        }
        n += 1;
        if n >= cap {
            return Err(EvalError::NoConvergence {
                terms: n,
                abs_err: term.abs(),
            });
        }
        coeff *= (alpha + nf) * (beta + nf) / ((delta + nf) * (nf + 1.0));
        power *= y;
        wp /= base_plus;
        wm /= base_minus;
    }

    let rho = y.abs() / h4_outer_radius(x);
    let mut abs_err = 2.0 * last_term * rho / (1.0 - rho)
        + inner_err
        + 4.0 * f64::EPSILON * sum_abs;
    if accelerate && recent.len() >= 5 {
        let accelerated = aitken_limit(&recent);
        let drift = (accelerated - sum).abs();
        if drift > (1e-10 * sum.abs()).max(10.0 * tol * sum.abs()) {
            return Err(EvalError::NoConvergence {
                terms: n,
                abs_err: drift,
            });
        }
        abs_err = abs_err.max(drift);
    }
    Ok(SeriesResult {
        value: Complex64::new(sum, 0.0),
        abs_err,
        terms_used: n,
        converged: true,
    })
}

/// Iterated Aitken delta-squared limit of a tail of partial sums.
fn aitken_limit(partials: &[f64]) -> f64 {
    let mut values = partials.to_vec();
    while values.len() >= 3 {
        let mut next = Vec::with_capacity(values.len() - 2);
        for window in values.windows(3) {
            let (s0, s1, s2) = (window[0], window[1], window[2]);
            let d1 = s1 - s0;
            let d2 = s2 - s1;
            let denom = d2 - d1;
            if denom.abs() <= f64::EPSILON * (s2.abs() + 1.0) {
                next.push(s2);
            } else {
                next.push(s2 - d2 * d2 / denom);
            }
        }
        values = next;
    }
    *values.last().expect("non-empty accelerated tail")
}

/// `H4` through the Appell `F2` relation,
/// `H4 = (1 + 2 sqrt x)^(-alpha) F2(alpha; beta, gamma - 1/2; delta,
/// 2 gamma - 1; y / (1 + 2 sqrt x), 4 sqrt x / (1 + 2 sqrt x))`,
/// defined for `x >= 0` with the mapped pair inside the `F2` domain.
pub fn h4_via_f2(
    alpha: f64,
    beta: f64,
    gamma: f64,
    delta: f64,
    x: f64,
    y: f64,
    tol: f64,
) -> Result<SeriesResult, EvalError> {
    if x < 0.0 {
        return Err(EvalError::Domain(
            "the F2 relation needs a non-negative first argument".into(),
        ));
    }
    let stretch = 1.0 + 2.0 * x.sqrt();
    let inner = eval_f2(
        alpha,
        beta,
        gamma - 0.5,
        delta,
        2.0 * gamma - 1.0,
        y / stretch,
        4.0 * x.sqrt() / stretch,
        tol,
    )?;
    let prefactor = stretch.powf(-alpha);
    Ok(SeriesResult {
        value: inner.value * prefactor,
        abs_err: inner.abs_err * prefactor,
        terms_used: inner.terms_used,
        converged: true,
    })
}

/// `H4` at `gamma = alpha - beta + 1` through the Appell `F4` relation with
/// `lambda = (1 + sqrt(1 - 4x)) / 2`:
/// `H4 = lambda^(-alpha) F4(alpha, beta; delta, alpha - beta + 1;
/// y / lambda, (1 - R) / (1 + R))`, `R = sqrt(1 - 4x)`, for `x <= 1/4`.
pub fn h4_via_f4(
    alpha: f64,
    beta: f64,
    delta: f64,
    x: f64,
    y: f64,
    tol: f64,
) -> Result<SeriesResult, EvalError> {
    if x > 0.25 {
        return Err(EvalError::Domain(
            "the F4 relation needs x <= 1/4 for a real square root".into(),
        ));
    }
    let root = (1.0 - 4.0 * x).sqrt();
    let lambda = 0.5 * (1.0 + root);
    let inner = eval_f4(
        alpha,
        beta,
        delta,
        alpha - beta + 1.0,
        y / lambda,
        (1.0 - root) / (1.0 + root),
        tol,
    )?;
    let prefactor = lambda.powf(-alpha);
    Ok(SeriesResult {
        value: inner.value * prefactor,
        abs_err: inner.abs_err * prefactor,
        terms_used: inner.terms_used,
        converged: true,
    })
}

/// Both sides of the quadratic transformation that links the `F1` with
/// root-reciprocal arguments to an `F1` with rational arguments:
/// `F1(a; b, b; 2a; 1/r_minus, 1/r_plus) = ((x+y)/(2x))^(-2b)
/// F1(b; a, b - a + 1/2; a + 1/2; -1/(x+y)^2, ((x-y)/(x+y))^2)` where
/// `r_minus r_plus = -x^2` and `r_minus + r_plus = 1 + y^2 - x^2`.
///
/// Returns `(left, right)` evaluated independently: the left through the
/// Euler route (one reciprocal root is negative), the right through the
/// double series. Requires `a > 0` and `x, y > 0` with `x + y > 1`.
pub fn f1_quadratic_transform_pair(
    a: f64,
    b: f64,
    x: f64,
    y: f64,
    tol: f64,
) -> Result<(SeriesResult, SeriesResult), EvalError> {
    if a <= 0.0 || x <= 0.0 || y <= 0.0 {
        return Err(EvalError::Domain(
            "the transform pair needs a > 0 and positive x, y".into(),
        ));
    }
    if x + y <= 1.0 {
        return Err(EvalError::Domain(
            "the rational side needs x + y > 1 to stay inside the polydisc".into(),
        ));
    }
    let trace = 1.0 + y * y - x * x;
    let disc = (trace * trace + 4.0 * x * x).sqrt();
    // The roots straddle zero with product -x^2; recover the small one from
    // the product to avoid cancellation.
    let r_plus = 0.5 * (trace + disc);
    let r_minus = -x * x / r_plus;
    let left = eval_f1(a, b, b, 2.0 * a, 1.0 / r_minus, 1.0 / r_plus, tol)?;
    let ratio = (x - y) / (x + y);
    let right_inner = eval_f1(
        b,
        a,
        b - a + 0.5,
        a + 0.5,
        -1.0 / ((x + y) * (x + y)),
        ratio * ratio,
        tol,
    )?;
    let prefactor = ((x + y) / (2.0 * x)).powf(-2.0 * b);
    let right = SeriesResult {
        value: right_inner.value * prefactor,
        abs_err: right_inner.abs_err * prefactor,
        terms_used: right_inner.terms_used,
        converged: true,
    };
    Ok((left, right))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(actual: f64, expected: f64, tol: f64) {
        let scale = expected.abs().max(1.0);
        assert!(
            (actual - expected).abs() <= tol * scale,
            "got {actual}, want {expected} (diff {:.3e})",
            (actual - expected).abs()
        );
    }

    // Reference values in this module were computed with mpmath at 40
    // significant digits (brute-force double sums for H4).

    #[test]
    fn f1_series_matches_reference_values() {
        let cases = [
            (0.5, 0.3, 0.7, 1.9, 0.35, -0.45, 0.957_514_737_792_644_97),
            (1.0, 1.0, 0.5, 1.5, -0.8, 0.6, 0.872_045_737_296_805_81),
        ];
        for (a, b, bp, c, x, y, expected) in cases {
            let got = eval_f1(a, b, bp, c, x, y, 1e-15).unwrap();
            assert_close(got.value.re, expected, 1e-13);
        }
    }

    #[test]
    fn f1_exact_reductions() {
        let same = eval_f1(2.0, 0.4, 0.9, 2.5, 0.25, 0.25, 1e-15).unwrap();
        assert_close(same.value.re, 1.344_799_776_125_859_1, 1e-13);
        let no_second = eval_f1(0.7, 0.2, 0.0, 1.1, 0.55, 0.9, 1e-15).unwrap();
        assert_close(no_second.value.re, 1.099_917_853_682_365_2, 1e-13);
        let binomial = eval_f1(1.5, 0.6, 0.8, 1.5, 0.3, -0.2, 1e-15).unwrap();
        assert_close(binomial.value.re, 1.070_523_435_514_571_6, 1e-13);
    }

    #[test]
    fn f1_euler_route_outside_polydisc() {
        let cases = [
            (1.0, 1.0, 1.5, 2.0, -6.0, 0.4, 0.420_890_343_630_403_47),
            (0.5, 1.0, 1.0, 2.0, -30.0, 0.85, 0.335_848_689_024_912_82),
            (1.0, 0.5, 0.5, 2.0, -3.0, -7.0, 0.368_747_802_614_076_67),
            (0.5, 1.0, 0.25, 1.2, 0.6, -2.5, 1.209_887_930_499_259_2),
        ];
        for (a, b, bp, c, x, y, expected) in cases {
            let got = eval_f1(a, b, bp, c, x, y, 1e-13).unwrap();
            assert_close(got.value.re, expected, 1e-11);
        }
    }

    #[test]
    fn f1_rejects_unreachable_points() {
        let err = eval_f1(3.0, 0.5, 0.5, 1.0, -2.0, 0.5, 1e-12).unwrap_err();
        assert!(matches!(err, EvalError::Domain(_)));
        let err = eval_f1(0.5, 0.5, 0.5, -1.0, 0.3, 0.5, 1e-12).unwrap_err();
        assert!(matches!(err, EvalError::Pole(_)));
    }

    #[test]
    fn f2_series_matches_reference_values() {
        let cases = [
            (0.5, 0.3, 0.7, 1.9, 1.2, 0.35, -0.45, 0.917_217_784_318_614_7),
            (1.0, 1.0, 0.5, 1.5, 2.5, -0.3, 0.6, 0.949_650_186_786_649_33),
            (1.4, 0.7, 0.2, 1.1, 0.9, 0.25, 0.55, 1.925_194_110_544_988_2),
        ];
        for (a, b, bp, c, cp, x, y, expected) in cases {
            let got = eval_f2(a, b, bp, c, cp, x, y, 1e-15).unwrap();
            assert_close(got.value.re, expected, 1e-12);
        }
        assert!(matches!(
            eval_f2(1.0, 1.0, 1.0, 2.0, 2.0, 0.6, 0.5, 1e-12),
            Err(EvalError::Domain(_))
        ));
    }

    #[test]
    fn f4_series_matches_reference_values() {
        let cases = [
            (0.5, 0.3, 1.9, 1.2, 0.2, -0.2, 0.989_147_013_635_189_45),
            (1.0, 0.8, 1.5, 2.5, -0.15, 0.12, 0.956_230_388_176_076_09),
            (1.4, 0.7, 1.1, 0.9, 0.08, 0.3, 1.933_823_211_261_234_2),
        ];
        for (a, b, c, cp, x, y, expected) in cases {
            let got = eval_f4(a, b, c, cp, x, y, 1e-15).unwrap();
            assert_close(got.value.re, expected, 1e-12);
        }
    }

    #[test]
    fn h4_series_matches_reference_values() {
        let cases = [
            (0.5, 0.3, 1.9, 1.2, 0.04, -0.2, 0.991_994_424_955_325_64),
            (1.0, 0.8, 1.5, 2.5, -0.05, 0.3, 1.032_378_344_880_940_3),
            (1.4, 0.7, 1.1, 0.9, 0.02, 0.45, 2.359_852_909_278_974_1),
            (2.0, 1.0, 0.5, 1.6, -0.09, 0.25, 0.295_194_063_687_153_17),
        ];
        for (alpha, beta, gamma, delta, x, y, expected) in cases {
            let got = eval_h4(alpha, beta, gamma, delta, x, y, 1e-15).unwrap();
            assert_close(got.value.re, expected, 1e-12);
        }
    }

    #[test]
    fn h4_single_series_agrees_with_double_sum() {
        // In-domain point, generic gamma: both routes available.
        let double = eval_h4(1.3, 0.7, 1.9, 1.1, 0.03, 0.4, 1e-15).unwrap();
        let single = h4_single_series(1.3, 0.7, 1.9, 1.1, 0.03, 0.4, 1e-15).unwrap();
        assert_close(single.value.re, double.value.re, 1e-12);
        assert_close(single.value.re, 1.715_120_650_595_487_4, 1e-12);
    }

    #[test]
    fn h4_single_series_reaches_negative_unit_y() {
        // Far outside the double-series domain; gamma = 3/2 closed forms.
        let got = h4_single_series(1.5, 1.0, 1.5, 1.5, -0.29, -1.0, 1e-14).unwrap();
        assert_close(got.value.re, 0.385_027_614_325_362_65, 1e-12);
        let got = h4_single_series(0.5, 1.0, 1.5, 2.5, -1.0, -1.0, 1e-14).unwrap();
        assert_close(got.value.re, 0.723_762_082_330_007_18, 1e-12);
        // gamma = 1/2 with large negative x.
        let got = h4_single_series(1.2, 0.9, 0.5, 1.4, -0.6, 0.7, 1e-14).unwrap();
        assert_close(got.value.re, 0.043_539_001_653_735_626, 1e-11);
        // generic gamma stays on the inner 2F1 route.
        let got = h4_single_series(1.2, 0.9, 2.2, 1.4, 0.04, 0.5, 1e-14).unwrap();
        assert_close(got.value.re, 2.015_366_018_263_695, 1e-11);
    }

    #[test]
    fn h4_relation_routes_agree() {
        let reference = 1.715_120_650_595_487_4;
        let via_f2 = h4_via_f2(1.3, 0.7, 1.9, 1.1, 0.03, 0.4, 1e-15).unwrap();
        assert_close(via_f2.value.re, reference, 1e-12);
        // gamma = alpha - beta + 1 = 1.6 for the F4 relation.
        let dbl = eval_h4(1.3, 0.7, 1.6, 1.1, 0.03, 0.4, 1e-15).unwrap();
        let via_f4 = h4_via_f4(1.3, 0.7, 1.1, 0.03, 0.4, 1e-15).unwrap();
        assert_close(via_f4.value.re, dbl.value.re, 1e-12);
    }

    #[test]
    fn f1_transform_sides_agree() {
        for (a, b, x, y) in [(1.0, 1.5, 1.0, 1.0), (0.8, 0.9, 1.3, 0.7), (1.2, 0.55, 0.6, 0.9)] {
            let (left, right) = f1_quadratic_transform_pair(a, b, x, y, 1e-13).unwrap();
            assert_close(left.value.re, right.value.re, 1e-10);
        }
        // Frozen value for one configuration.
        let (left, _) = f1_quadratic_transform_pair(0.8, 0.9, 1.3, 0.7, 1e-13).unwrap();
        assert_close(left.value.re, 1.470_802_139_891_023_6, 1e-10);
    }
}
