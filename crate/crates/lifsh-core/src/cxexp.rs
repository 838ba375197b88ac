//! Real and imaginary parts of the Gauss function at a complex argument
//! `z = x + iy`, through several independent rearrangements.
//!
//! Every route works in real (or explicitly split) arithmetic so it can be
//! cross-checked against the complex ladder in [`crate::series::eval_2f1`]:
//!
//! * a polar term recurrence of the plain series,
//! * trigonometrically weighted Gauss series in the single real variable
//!   `|z|^2 / x`,
//! * a nested expansion whose coefficients are `3F2` values,
//! * a Laplace-type integral with a `2F2` kernel,
//! * Horn `H4` bridges for unit second numerator parameter, together with
//!   the power-weighted closing form used by the Feynman assembly,
//! * closed `H4` evaluations at third parameter 1/2 or 3/2 that wrap the
//!   complex Gauss ladder.

use num_complex::Complex64;

use crate::appell::{eval_h4, h4_single_series};
use crate::error::EvalError;
use crate::quad::{integrate, QuadratureSpec};
use crate::series::{eval_2f1, eval_pfq, term_cap, SeriesResult};

/// Complex argument `z = x + iy` split into Cartesian parts, carrying the
/// squared modulus and the principal phase because every representation in
/// this module keeps reusing them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CartesianArg {
    /// Real part of `z`.
    pub x: f64,
    /// Imaginary part of `z`.
    pub y: f64,
    /// Cached `x^2 + y^2`.
    pub mod2: f64,
    /// Principal phase of `z`.
    pub phi: f64,
}

impl CartesianArg {
    pub fn new(x: f64, y: f64) -> Self {
        CartesianArg {
            x,
            y,
            mod2: x * x + y * y,
            phi: y.atan2(x),
        }
    }
}

fn sanitize_tol(tol: f64) -> f64 {
    if tol.is_finite() && tol > 0.0 {
        tol.max(f64::EPSILON)
    } else {
        1e-14
    }
}

/// Real and imaginary part of `2F1(a, b; c; x + iy)` by summing the series
/// with the term modulus and phase tracked separately. Needs `|z| < 1`.
pub fn re_im_polar(
    a: f64,
    b: f64,
    c: f64,
    z: CartesianArg,
    tol: f64,
) -> Result<(SeriesResult, SeriesResult), EvalError> {
    let tol = sanitize_tol(tol);
    let modulus = z.mod2.sqrt();
    if modulus >= 1.0 {
        return Err(EvalError::Domain(format!(
            "polar summation needs |z| < 1, got {modulus}"
        )));
    }
    let cap = term_cap();
    // Unit phase of z, advanced by angle addition each step.
    let (cos_t, sin_t) = if modulus == 0.0 {
        (1.0, 0.0)
    } else {
        (z.x / modulus, z.y / modulus)
    };
    let mut coeff = 1.0f64;
    let mut radius = 1.0f64;
    let (mut cos_k, mut sin_k) = (1.0f64, 0.0f64);
    let (mut sum_re, mut sum_im) = (0.0f64, 0.0f64);
    let mut sum_abs = 0.0f64;
    let mut small_streak = 0usize;
    let mut k = 0usize;
    loop {
        let size = coeff * radius;
        sum_re += size * cos_k;
        sum_im += size * sin_k;
        sum_abs += size.abs();
        let scale = sum_re.hypot(sum_im);
        if size.abs() <= tol * scale {
            small_streak += 1;
            if small_streak >= 3 {
                k += 1;
                break;
            }
        } else {
            small_streak = 0;
        }
        k += 1;
        if k >= cap {
            return Err(EvalError::NoConvergence {
                terms: k,
                abs_err: size.abs(),
            });
        }
        let kf = (k - 1) as f64;
        coeff *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0));
        radius *= modulus;
        let next_cos = cos_k * cos_t - sin_k * sin_t;
        sin_k = sin_k * cos_t + cos_k * sin_t;
        cos_k = next_cos;
    }
    let last = (coeff * radius).abs();
    let tail = last * modulus / (1.0 - modulus);
    let abs_err = 2.0 * tail + 4.0 * f64::EPSILON * sum_abs;
    let done = |v: f64| SeriesResult {
        value: Complex64::new(v, 0.0),
        abs_err,
        terms_used: k,
        converged: true,
    };
    Ok((done(sum_re), done(sum_im)))
}

/// Shared state for the trigonometric Gauss-series routes: the series runs
/// over `w^k` with `w = |z|^2 / x`, and each term carries a damped
/// Chebyshev-like angular factor built from `v = y / x`.
struct TrigFrame {
    w: f64,
    v: f64,
    u: f64,
    modulus: f64,
}

fn trig_frame(z: CartesianArg) -> Result<TrigFrame, EvalError> {
    if z.x == 0.0 {
        return Err(EvalError::Domain(
            "the trigonometric series expand around the real part and need x != 0".into(),
        ));
    }
    let modulus = z.mod2.sqrt();
    if modulus >= 1.0 {
        return Err(EvalError::Domain(format!(
            "the trigonometric series need |z| < 1, got {modulus}"
        )));
    }
    let v = z.y / z.x;
    Ok(TrigFrame {
        w: z.mod2 / z.x,
        v,
        u: 1.0 / (1.0 + v * v).sqrt(),
        modulus,
    })
}

/// Real part of `2F1(a, b; c; x + iy)` as a single Gauss-coefficient series
/// in `|z|^2 / x` with damped cosine weights, summed entirely in real
/// arithmetic.
pub fn re_2f1_gauss_series(
    a: f64,
    b: f64,
    c: f64,
    z: CartesianArg,
    tol: f64,
) -> Result<SeriesResult, EvalError> {
    let tol = sanitize_tol(tol);
    let frame = trig_frame(z)?;
    let cap = term_cap();
    // cos(k phi) and sin(k phi) with phi = atan(v), advanced by angle
    // addition; the damping u^k keeps the product at |z|^k overall.
    let (cos_p, sin_p) = (frame.u, frame.v * frame.u);
    let (mut cos_k, mut sin_k) = (1.0f64, 0.0f64);
    let mut scale = 1.0f64;
    let mut coeff = 1.0f64;
    let mut sum = 0.0f64;
    let mut sum_abs = 0.0f64;
    let mut small_streak = 0usize;
    let mut k = 0usize;
    loop {
        let term = coeff * scale * cos_k;
        sum += term;
        sum_abs += term.abs();
        if term.abs() <= tol * sum.abs() {
            small_streak += 1;
            if small_streak >= 3 {
                k += 1;
                break;
            }
        } else {
            small_streak = 0;
        }
        k += 1;
        if k >= cap {
            return Err(EvalError::NoConvergence {
                terms: k,
                abs_err: term.abs(),
            });
        }
        let kf = (k - 1) as f64;
        coeff *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0));
        scale *= frame.w * frame.u;
        let next_cos = cos_k * cos_p - sin_k * sin_p;
        sin_k = sin_k * cos_p + cos_k * sin_p;
        cos_k = next_cos;
    }
    let last = (coeff * scale).abs();
    let tail = last * frame.modulus / (1.0 - frame.modulus);
    Ok(SeriesResult {
        value: Complex64::new(sum, 0.0),
        abs_err: 2.0 * tail + 4.0 * f64::EPSILON * sum_abs,
        terms_used: k,
        converged: true,
    })
}

/// Imaginary part of `2F1(a, b; c; x + iy)` as the companion series with
/// damped `sin((k+1) phi) / ((k+1) v)` weights; exactly zero at `y = 0`.
pub fn im_2f1_gauss_series(
    a: f64,
    b: f64,
    c: f64,
    z: CartesianArg,
    tol: f64,
) -> Result<SeriesResult, EvalError> {
    let tol = sanitize_tol(tol);
    if z.y == 0.0 {
        // The whole series carries the prefactor y.
        let _ = trig_frame(z)?;
        return Ok(SeriesResult::exact(Complex64::new(0.0, 0.0)));
    }
    let frame = trig_frame(z)?;
    let cap = term_cap();
    let prefactor = z.y * frame.w / z.x * (a * b / c);
    let (cos_p, sin_p) = (frame.u, frame.v * frame.u);
    // sin((k+1) phi) starts at sin(phi) = v u.
    let (mut cos_k1, mut sin_k1) = (cos_p, sin_p);
    let damp = frame.u;
    let mut scale = 1.0f64;
    let mut coeff = 1.0f64;
    let mut sum = 0.0f64;
    let mut sum_abs = 0.0f64;
    let mut small_streak = 0usize;
    let mut k = 0usize;
    loop {
        let kf = k as f64;
        let angular = damp * sin_k1 / ((kf + 1.0) * frame.v);
        let term = coeff * scale * angular;
        sum += term;
        sum_abs += term.abs();
        if term.abs() <= tol * sum.abs().max(f64::MIN_POSITIVE) {
            small_streak += 1;
            if small_streak >= 3 {
                k += 1;
                break;
            }
        } else {
            small_streak = 0;
        }
        k += 1;
        if k >= cap {
            return Err(EvalError::NoConvergence {
                terms: k,
                abs_err: (prefactor * term).abs(),
            });
        }
        coeff *= (a + 1.0 + kf) * (b + 1.0 + kf) / ((c + 1.0 + kf) * (kf + 1.0));
        scale *= frame.w * frame.u;
        let next_cos = cos_k1 * cos_p - sin_k1 * sin_p;
        sin_k1 = sin_k1 * cos_p + cos_k1 * sin_p;
        cos_k1 = next_cos;
    }
    let last = (coeff * scale * damp).abs();
    let tail = last * frame.modulus / (1.0 - frame.modulus);
    let value = prefactor * sum;
    Ok(SeriesResult {
        value: Complex64::new(value, 0.0),
        abs_err: prefactor.abs() * (2.0 * tail + 4.0 * f64::EPSILON * sum_abs),
        terms_used: k,
        converged: true,
    })
}

/// Real and imaginary part of `2F1(a, b; c; x + iy)` from one nested
/// expansion whose coefficients are `3F2` values.
///
/// The outer variable is chosen around the larger of the two parts: around
/// `x` the inner argument is `|z|^2 / x` and the outer ratio `iy / x`,
/// around `y` the roles rotate into the imaginary direction. Either way the
/// inner argument must stay inside the unit disc, and the terms must
/// actually decay; persistent growth is reported as no convergence since the
/// expansion only converges on part of the unit disc.
pub fn re_im_2f1_3f2_series(
    a: f64,
    b: f64,
    c: f64,
    z: CartesianArg,
    tol: f64,
) -> Result<(SeriesResult, SeriesResult), EvalError> {
    let tol = sanitize_tol(tol);
    let (u, ratio) = if z.y.abs() <= z.x.abs() {
        if z.x == 0.0 {
            return Err(EvalError::Domain("the expansion needs z != 0".into()));
        }
        (
            Complex64::new(z.mod2 / z.x, 0.0),
            Complex64::new(0.0, z.y / z.x),
        )
    } else {
        (
            Complex64::new(0.0, z.mod2 / z.y),
            Complex64::new(0.0, -z.x / z.y),
        )
    };
    if u.norm() >= 1.0 {
        return Err(EvalError::Domain(format!(
            "inner argument modulus {} is not below 1",
            u.norm()
        )));
    }
    let lead = u * (a * b / c);
    let cap = term_cap().min(20_000);
    let mut power = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(1.0, 0.0);
    let mut sum_abs = 1.0f64;
    let mut inner_err = 0.0f64;
    let mut small_streak = 0usize;
    let mut growth_streak = 0usize;
    let mut previous = f64::INFINITY;
    let mut terms = 1usize;
    let mut last;
    let mut k = 0usize;
    loop {
        let kf = k as f64;
        let f = eval_pfq(
            &[a + 1.0, b + 1.0, kf + 1.0],
            &[c + 1.0, 2.0],
            u,
            tol,
        )?;
        let term = lead * power * f.value;
        inner_err += (lead * power).norm() * f.abs_err;
        sum += term;
        sum_abs += term.norm();
        terms += f.terms_used;
        last = term.norm();
        if !sum.is_finite() {
            return Err(EvalError::NoConvergence {
                terms,
                abs_err: f64::INFINITY,
            });
        }
        if last <= tol * sum.norm() {
            small_streak += 1;
            if small_streak >= 3 {
                break;
            }
        } else {
            small_streak = 0;
        }
        if last > previous && k > 24 {
            growth_streak += 1;
            if growth_streak >= 16 {
                return Err(EvalError::NoConvergence {
                    terms,
                    abs_err: last,
                });
            }
        } else {
            growth_streak = 0;
        }
        previous = last;
        k += 1;
        if k >= cap {
            return Err(EvalError::NoConvergence { terms, abs_err: last });
        }
        power *= ratio;
    }
    let rho = ratio.norm().min(0.99);
    let abs_err = 2.0 * last * rho / (1.0 - rho)
        + inner_err
        + 4.0 * f64::EPSILON * sum_abs;
    let out = |v: f64| SeriesResult {
        value: Complex64::new(v, 0.0),
        abs_err,
        terms_used: terms,
        converged: true,
    };
    Ok((out(sum.re), out(sum.im)))
}

/// Real part alone from the nested `3F2` expansion.
pub fn re_2f1_3f2_series(
    a: f64,
    b: f64,
    c: f64,
    z: CartesianArg,
    tol: f64,
) -> Result<SeriesResult, EvalError> {
    re_im_2f1_3f2_series(a, b, c, z, tol).map(|(re, _)| re)
}

/// Imaginary part alone from the nested `3F2` expansion.
pub fn im_2f1_3f2_series(
    a: f64,
    b: f64,
    c: f64,
    z: CartesianArg,
    tol: f64,
) -> Result<SeriesResult, EvalError> {
    re_im_2f1_3f2_series(a, b, c, z, tol).map(|(_, im)| im)
}

/// Real and imaginary part of `2F1(a, b; c; x + iy)` from the Laplace-type
/// integral with a `2F2` kernel, `1 + |z|^2 (ab/c) int_0^inf e^(-xt)
/// (cos yt, sin yt) 2F2(a+1, b+1; c+1, 2; |z|^2 t) dt`.
///
/// The kernel grows like `e^(|z|^2 t)`, so the representability condition is
/// `x > |z|^2`; the margin is also what sets the truncation point.
pub fn re_im_2f1_laplace(
    a: f64,
    b: f64,
    c: f64,
    z: CartesianArg,
    tol: f64,
) -> Result<(SeriesResult, SeriesResult), EvalError> {
    let tol = sanitize_tol(tol);
    let norm2 = z.mod2;
    let decay = z.x - norm2;
    if decay <= 1e-4 {
        return Err(EvalError::Domain(format!(
            "the integral needs x - |z|^2 > 1e-4 for damping, got {decay}"
        )));
    }
    if norm2 == 0.0 || a * b == 0.0 {
        // Either z = 0 or the series is the constant 1.
        return Ok((
            SeriesResult::exact(Complex64::new(1.0, 0.0)),
            SeriesResult::exact(Complex64::new(0.0, 0.0)),
        ));
    }
    // Truncate where the damped kernel is far below the target accuracy.
    let mut upper = (tol.ln().min(-30.0).abs() + 30.0) / decay;
    // The kernel itself must stay representable; 2F2 at argument 650 is
    // around 1e258 and the damping has it covered long before that.
    if norm2 * upper > 650.0 {
        upper = 650.0 / norm2;
        if (-decay * upper).exp() > 1e-20 {
            return Err(EvalError::Domain(
                "too close to the convergence boundary x = |z|^2 to damp the kernel".into(),
            ));
        }
    }
    let evaluations = std::cell::Cell::new(0usize);
    let kernel = |t: f64| -> Result<f64, EvalError> {
        evaluations.set(evaluations.get() + 1);
        let f = eval_pfq(
            &[a + 1.0, b + 1.0],
            &[c + 1.0, 2.0],
            Complex64::new(norm2 * t, 0.0),
            1e-15,
        )?;
        Ok(f.value.re * (-z.x * t).exp())
    };
    // The adaptive driver takes plain closures; propagate kernel failures
    // through a NaN marker that the driver rejects.
    let spec = QuadratureSpec {
        abs_tol: (tol * 0.1).max(1e-14),
        rel_tol: (tol * 0.1).max(1e-14),
        max_subdivisions: 2000,
    };
    let cos_part = integrate(
        |t| kernel(t).map_or(f64::NAN, |k| k * (z.y * t).cos()),
        0.0,
        upper,
        &spec,
    )?;
    let sin_part = integrate(
        |t| kernel(t).map_or(f64::NAN, |k| k * (z.y * t).sin()),
        0.0,
        upper,
        &spec,
    )?;
    let lead = norm2 * (a * b / c);
    let tail = kernel(upper).unwrap_or(0.0).abs() / decay;
    let build = |integral: f64, err: f64, offset: f64| SeriesResult {
        value: Complex64::new(offset + lead * integral, 0.0),
        abs_err: lead.abs() * (err + tail)
            + 4.0 * f64::EPSILON * (offset.abs() + (lead * integral).abs()),
        terms_used: evaluations.get(),
        converged: true,
    };
    Ok((
        build(cos_part.0, cos_part.1, 1.0),
        build(sin_part.0, sin_part.1, 0.0),
    ))
}

/// Real part alone from the Laplace-type integral.
pub fn re_2f1_laplace(
    a: f64,
    b: f64,
    c: f64,
    z: CartesianArg,
    tol: f64,
) -> Result<SeriesResult, EvalError> {
    re_im_2f1_laplace(a, b, c, z, tol).map(|(re, _)| re)
}

/// Imaginary part alone from the Laplace-type integral.
pub fn im_2f1_laplace(
    a: f64,
    b: f64,
    c: f64,
    z: CartesianArg,
    tol: f64,
) -> Result<SeriesResult, EvalError> {
    re_im_2f1_laplace(a, b, c, z, tol).map(|(_, im)| im)
}

/// Evaluate `H4` by whichever route covers the point: the double series
/// inside its convergence lens, the single Gauss series otherwise.
fn h4_any(
    alpha: f64,
    beta: f64,
    gamma: f64,
    delta: f64,
    x: f64,
    y: f64,
    tol: f64,
) -> Result<SeriesResult, EvalError> {
    if 2.0 * x.abs().sqrt() + y.abs() < 1.0 {
        eval_h4(alpha, beta, gamma, delta, x, y, tol)
    } else {
        h4_single_series(alpha, beta, gamma, delta, x, y, tol)
    }
}

/// Real part of `2F1(a, 1; c; x + iy)` through the Horn `H4` bridge
/// `1 + (a/c)(|z|^2/x) H4(1, a+1; 1/2, c+1; -y^2/(4x^2), |z|^2/x)`.
/// Needs `x > 0` and `|z| < 1`.
pub fn re_2f1_b1_h4(
    a: f64,
    c: f64,
    z: CartesianArg,
    tol: f64,
) -> Result<SeriesResult, EvalError> {
    let (s, t) = bridge_arguments(z)?;
    let h = h4_any(1.0, a + 1.0, 0.5, c + 1.0, s, t, tol)?;
    let lead = (a / c) * t;
    Ok(SeriesResult {
        value: Complex64::new(1.0 + lead * h.value.re, 0.0),
        abs_err: lead.abs() * h.abs_err
            + 4.0 * f64::EPSILON * (1.0 + (lead * h.value.re).abs()),
        terms_used: h.terms_used,
        converged: true,
    })
}

/// Imaginary part of `2F1(a, 1; c; x + iy)` through the companion bridge
/// `(a/c) (y |z|^2 / x^2) H4(2, a+1; 3/2, c+1; -y^2/(4x^2), |z|^2/x)`.
pub fn im_2f1_b1_h4(
    a: f64,
    c: f64,
    z: CartesianArg,
    tol: f64,
) -> Result<SeriesResult, EvalError> {
    let (s, t) = bridge_arguments(z)?;
    if z.y == 0.0 {
        return Ok(SeriesResult::exact(Complex64::new(0.0, 0.0)));
    }
    let h = h4_any(2.0, a + 1.0, 1.5, c + 1.0, s, t, tol)?;
    let lead = (a / c) * z.y * z.mod2 / (z.x * z.x);
    Ok(SeriesResult {
        value: Complex64::new(lead * h.value.re, 0.0),
        abs_err: lead.abs() * h.abs_err
            + 4.0 * f64::EPSILON * (lead * h.value.re).abs(),
        terms_used: h.terms_used,
        converged: true,
    })
}

fn bridge_arguments(z: CartesianArg) -> Result<(f64, f64), EvalError> {
    if z.x <= 0.0 {
        return Err(EvalError::Domain(
            "the H4 bridges expand around the real part and need x > 0".into(),
        ));
    }
    if z.mod2 >= 1.0 {
        return Err(EvalError::Domain(format!(
            "the H4 bridges need |z| < 1, got |z|^2 = {}",
            z.mod2
        )));
    }
    Ok((-z.y * z.y / (4.0 * z.x * z.x), z.mod2 / z.x))
}

/// The power-weighted combination `Re[z^a 2F1(a, b; c; z)]` as a single
/// `H4` value, `(|z|^2/x)^a H4(a, b; 1/2, c; -y^2/(4x^2), |z|^2/x)`, for
/// `x > 0`. This is the form the anisotropy integral consumes.
pub fn re_za_2f1_h4(
    a: f64,
    b: f64,
    c: f64,
    z: CartesianArg,
    tol: f64,
) -> Result<SeriesResult, EvalError> {
    let (s, t) = bridge_arguments(z)?;
    let h = h4_any(a, b, 0.5, c, s, t, tol)?;
    let lead = t.powf(a);
    Ok(SeriesResult {
        value: Complex64::new(lead * h.value.re, 0.0),
        abs_err: lead.abs() * h.abs_err + 4.0 * f64::EPSILON * (lead * h.value.re).abs(),
        terms_used: h.terms_used,
        converged: true,
    })
}

fn check_sign(sign: f64) -> Result<(), EvalError> {
    if sign == 1.0 || sign == -1.0 {
        Ok(())
    } else {
        Err(EvalError::Domain(format!(
            "branch selector must be +1 or -1, got {sign}"
        )))
    }
}

/// `H4(alpha, beta; 1/2, delta; -x, y)` for `x > 0` folded into one complex
/// Gauss value, `Re[(1 + 2 i s sqrt(x))^(-alpha) 2F1(alpha, beta; delta;
/// y / (1 + 2 i s sqrt(x)))]` with branch selector `s = +-1`; both branches
/// agree by conjugation.
pub fn h4_gamma_half(
    alpha: f64,
    beta: f64,
    delta: f64,
    x: f64,
    y: f64,
    sign: f64,
    tol: f64,
) -> Result<SeriesResult, EvalError> {
    check_sign(sign)?;
    if x <= 0.0 {
        return Err(EvalError::Domain(
            "the folded form needs x > 0 so the square root is imaginary".into(),
        ));
    }
    let den = Complex64::new(1.0, sign * 2.0 * x.sqrt());
    let f = eval_2f1(alpha, beta, delta, Complex64::new(y, 0.0) / den, tol)?;
    let head = den.powf(-alpha);
    let value = (head * f.value).re;
    Ok(SeriesResult {
        value: Complex64::new(value, 0.0),
        abs_err: head.norm() * f.abs_err + 4.0 * f64::EPSILON * value.abs(),
        terms_used: f.terms_used,
        converged: true,
    })
}

/// `H4(alpha, beta; 3/2, delta; -x, y)` for `x > 0` from the companion
/// folded form `(-s) Im[(1 + 2 i s sqrt(x))^(1-alpha) 2F1(alpha - 1, beta;
/// delta; y / (1 + 2 i s sqrt(x)))] / (2 (alpha - 1) sqrt(x))`.
/// The parameter shift divides by `alpha - 1`, so `alpha` near 1 is out.
pub fn h4_gamma_three_half(
    alpha: f64,
    beta: f64,
    delta: f64,
    x: f64,
    y: f64,
    sign: f64,
    tol: f64,
) -> Result<SeriesResult, EvalError> {
    check_sign(sign)?;
    if x <= 0.0 {
        return Err(EvalError::Domain(
            "the folded form needs x > 0 so the square root is imaginary".into(),
        ));
    }
    if (alpha - 1.0).abs() < 1e-9 {
        return Err(EvalError::Domain(
            "the folded form divides by alpha - 1; use the series route at alpha = 1".into(),
        ));
    }
    let den = Complex64::new(1.0, sign * 2.0 * x.sqrt());
    let f = eval_2f1(alpha - 1.0, beta, delta, Complex64::new(y, 0.0) / den, tol)?;
    let head = den.powf(1.0 - alpha);
    let scale = -sign / (2.0 * (alpha - 1.0) * x.sqrt());
    let value = scale * (head * f.value).im;
    Ok(SeriesResult {
        value: Complex64::new(value, 0.0),
        abs_err: scale.abs() * head.norm() * f.abs_err + 4.0 * f64::EPSILON * value.abs(),
        terms_used: f.terms_used,
        converged: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::eval_2f1;

    fn assert_close(actual: f64, expected: f64, tol: f64) {
        let scale = expected.abs().max(1.0);
        assert!(
            (actual - expected).abs() <= tol * scale,
            "got {actual}, want {expected} (diff {:.3e})",
            (actual - expected).abs()
        );
    }

    fn reference(a: f64, b: f64, c: f64, x: f64, y: f64) -> Complex64 {
        eval_2f1(a, b, c, Complex64::new(x, y), 1e-15)
            .unwrap()
            .value
    }

    #[test]
    fn cartesian_arg_caches_modulus_and_phase() {
        let z = CartesianArg::new(0.3, -0.4);
        assert_eq!(z.mod2, 0.25);
        assert_close(z.phi, (-0.4f64).atan2(0.3), 1e-15);
    }

    #[test]
    fn polar_route_matches_complex_ladder() {
        for (x, y) in [(0.4, 0.3), (-0.5, 0.2), (0.05, -0.7), (0.6, 0.0)] {
            let want = reference(0.7, 1.3, 2.1, x, y);
            let (re, im) =
                re_im_polar(0.7, 1.3, 2.1, CartesianArg::new(x, y), 1e-15).unwrap();
            assert_close(re.value.re, want.re, 1e-13);
            assert_close(im.value.re, want.im, 1e-13);
        }
    }

    #[test]
    fn gauss_series_match_complex_ladder() {
        for (x, y) in [(0.4, 0.3), (0.1, 0.6), (-0.45, 0.35), (0.7, -0.2)] {
            let z = CartesianArg::new(x, y);
            let want = reference(0.8, 0.9, 2.3, x, y);
            let re = re_2f1_gauss_series(0.8, 0.9, 2.3, z, 1e-15).unwrap();
            let im = im_2f1_gauss_series(0.8, 0.9, 2.3, z, 1e-15).unwrap();
            assert_close(re.value.re, want.re, 1e-12);
            assert_close(im.value.re, want.im, 1e-12);
        }
        let zero =
            im_2f1_gauss_series(0.8, 0.9, 2.3, CartesianArg::new(0.5, 0.0), 1e-15).unwrap();
        assert_eq!(zero.value.re, 0.0);
    }

    #[test]
    fn nested_3f2_route_matches_on_its_domain() {
        // Around the real part: |z|^2 < x and moderate phase.
        for (x, y) in [(0.5, 0.2), (0.7, 0.15), (0.4, -0.1)] {
            let z = CartesianArg::new(x, y);
            let want = reference(0.7, 1.3, 2.1, x, y);
            let re = re_2f1_3f2_series(0.7, 1.3, 2.1, z, 1e-14).unwrap();
            let im = im_2f1_3f2_series(0.7, 1.3, 2.1, z, 1e-14).unwrap();
            assert_close(re.value.re, want.re, 1e-11);
            assert_close(im.value.re, want.im, 1e-11);
        }
        // Around the imaginary part.
        for (x, y) in [(0.1, 0.6), (-0.08, 0.5)] {
            let want = reference(0.7, 1.3, 2.1, x, y);
            let (re, im) =
                re_im_2f1_3f2_series(0.7, 1.3, 2.1, CartesianArg::new(x, y), 1e-14).unwrap();
            assert_close(re.value.re, want.re, 1e-11);
            assert_close(im.value.re, want.im, 1e-11);
        }
    }

    #[test]
    fn nested_3f2_route_reports_divergence() {
        // |y/x| well above 1 - |z|^2/x: terms grow without bound.
        let err = re_im_2f1_3f2_series(0.7, 1.3, 2.1, CartesianArg::new(0.3, 0.29), 1e-14)
            .unwrap_err();
        assert!(matches!(err, EvalError::NoConvergence { .. } | EvalError::Domain(_)));
    }

    #[test]
    fn laplace_route_matches_complex_ladder() {
        for (x, y) in [(0.7, 0.2), (0.5, 0.4), (0.9, 0.1), (0.6, -0.3)] {
            let z = CartesianArg::new(x, y);
            let want = reference(0.7, 1.3, 2.1, x, y);
            let re = re_2f1_laplace(0.7, 1.3, 2.1, z, 1e-12).unwrap();
            let im = im_2f1_laplace(0.7, 1.3, 2.1, z, 1e-12).unwrap();
            assert_close(re.value.re, want.re, 1e-9);
            assert_close(im.value.re, want.im, 1e-9);
        }
        assert!(matches!(
            re_im_2f1_laplace(0.7, 1.3, 2.1, CartesianArg::new(0.3, 0.6), 1e-12),
            Err(EvalError::Domain(_))
        ));
        // A vanishing numerator parameter short-circuits to the constant 1.
        let (re, im) =
            re_im_2f1_laplace(0.0, 1.3, 2.1, CartesianArg::new(0.7, 0.2), 1e-12).unwrap();
        assert_eq!(re.value.re, 1.0);
        assert_eq!(im.value.re, 0.0);
    }

    #[test]
    fn unit_parameter_bridges_match_complex_ladder() {
        for (x, y) in [(0.4, 0.3), (0.2, 0.5), (0.65, -0.25), (0.3, 0.0)] {
            let z = CartesianArg::new(x, y);
            let want = reference(0.9, 1.0, 1.8, x, y);
            let re = re_2f1_b1_h4(0.9, 1.8, z, 1e-14).unwrap();
            let im = im_2f1_b1_h4(0.9, 1.8, z, 1e-14).unwrap();
            assert_close(re.value.re, want.re, 1e-11);
            assert_close(im.value.re, want.im, 1e-11);
        }
    }

    #[test]
    fn power_weighted_bridge_matches_complex_ladder() {
        for (a, b, c, x, y) in [
            (0.6, 1.0, 1.6, 0.4, 0.3),
            (1.2, 0.8, 2.0, 0.3, -0.45),
            (0.9, 1.1, 1.4, 0.55, 0.2),
        ] {
            let z = Complex64::new(x, y);
            let want = (z.powf(a) * reference(a, b, c, x, y)).re;
            let got = re_za_2f1_h4(a, b, c, CartesianArg::new(x, y), 1e-14).unwrap();
            assert_close(got.value.re, want, 1e-11);
        }
    }

    #[test]
    fn folded_h4_forms_match_series_routes() {
        // Reference values from a 40-digit brute-force H4 sum.
        let half = h4_gamma_half(0.8, 0.6, 1.7, 0.9, 0.5, 1.0, 1e-15).unwrap();
        assert_close(half.value.re, 0.332_701_732_274_314_82, 1e-13);
        let three = h4_gamma_three_half(0.8, 0.6, 1.7, 0.9, 0.5, 1.0, 1e-15).unwrap();
        assert_close(three.value.re, 0.702_502_591_967_141_63, 1e-13);
        for sign in [1.0, -1.0] {
            let h = h4_gamma_half(0.8, 0.6, 1.7, 0.9, 0.5, sign, 1e-15).unwrap();
            let s = h4_single_series(0.8, 0.6, 0.5, 1.7, -0.9, 0.5, 1e-15).unwrap();
            assert_close(h.value.re, s.value.re, 1e-12);
            let h = h4_gamma_three_half(0.8, 0.6, 1.7, 0.9, 0.5, sign, 1e-15).unwrap();
            let s = h4_single_series(0.8, 0.6, 1.5, 1.7, -0.9, 0.5, 1e-15).unwrap();
            assert_close(h.value.re, s.value.re, 1e-12);
        }
        // Inside the double-series lens the folded forms must agree with it.
        let h = h4_gamma_half(1.3, 0.7, 1.1, 0.04, 0.3, -1.0, 1e-15).unwrap();
        let d = eval_h4(1.3, 0.7, 0.5, 1.1, -0.04, 0.3, 1e-15).unwrap();
        assert_close(h.value.re, d.value.re, 1e-12);
    }

    #[test]
    fn folded_h4_rejects_bad_selectors() {
        assert!(matches!(
            h4_gamma_half(0.8, 0.6, 1.7, 0.9, 0.5, 0.0, 1e-12),
            Err(EvalError::Domain(_))
        ));
        assert!(matches!(
            h4_gamma_three_half(1.0, 0.6, 1.7, 0.9, 0.5, 1.0, 1e-12),
            Err(EvalError::Domain(_))
        ));
    }
}
