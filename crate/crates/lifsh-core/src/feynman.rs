//! Assembly of the two-loop anisotropic propagator integral and its one-loop
//! building blocks.
//!
//! The central quantity is the reduced integral `Ihat(p, q)` for an
//! `m`-dimensional quartic line coupled to a one-dimensional quadratic line,
//! with `eps_hat = m/2 - 1` as the natural dimension parameter. The full
//! integral is `C1(eps_hat) * Ihat`. Everything reduces to a Gauss function
//! of the complex combination `z = q^2 - 2ip`, with dedicated branches for
//! the axes, the near-axis region, and the removable singularity at `m = 4`.
//!
//! The one-loop two-point functions `J_D` come in several equivalent forms
//! (elementary closed forms at `D = 1, 2, 3`, an Appell `F1` form in
//! continuous dimension, a zero-mass reduction, and a second `F1`
//! representation with reciprocal-root arguments) so they can be played
//! against each other in tests.

use std::f64::consts::{FRAC_PI_2, LN_2, PI};

use num_complex::Complex64;

use crate::appell::{eval_f1, h4_single_series};
use crate::error::EvalError;
use crate::gamma::{gamma_real, is_nonpos_int, recip_gamma};
use crate::series::eval_2f1;

/// Evaluation point for the two-loop integral: anisotropy dimension `m` and
/// the two external momentum magnitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralPoint {
    /// Dimension of the quartic momentum line, in `[2, 6]`.
    pub m: f64,
    /// Momentum along the quadratic direction, nonnegative.
    pub p: f64,
    /// Momentum along the quartic directions, nonnegative.
    pub q: f64,
}

impl IntegralPoint {
    pub fn new(m: f64, p: f64, q: f64) -> Self {
        IntegralPoint { m, p, q }
    }

    /// The dimension parameter `m/2 - 1` that all closed forms run on.
    pub fn eps_hat(&self) -> f64 {
        0.5 * self.m - 1.0
    }
}

/// Mass pair `(kappa1, kappa2)` of a one-loop two-point function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassPair {
    pub kappa1: f64,
    pub kappa2: f64,
}

impl MassPair {
    pub fn new(kappa1: f64, kappa2: f64) -> Self {
        MassPair { kappa1, kappa2 }
    }

    /// Mass sum, the decay scale of every bubble built on the pair.
    pub fn sum(&self) -> f64 {
        self.kappa1 + self.kappa2
    }
}

/// A value together with its error estimate and the evaluation route that
/// produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RouteValue {
    pub value: f64,
    pub abs_err: f64,
    pub route: &'static str,
}

fn sanitize_tol(tol: f64) -> f64 {
    if tol.is_finite() && tol > 0.0 {
        tol.max(f64::EPSILON)
    } else {
        1e-14
    }
}

/// Overall normalization `16^(-e) pi^(-1-e) Gamma(2-e) / e` relating the
/// reduced integral to the full one, for `e = eps_hat` in `(0, 2)`. The
/// factor diverges at both window ends.
pub fn c1_constant(eps_hat: f64) -> Result<f64, EvalError> {
    if !(eps_hat > 0.0 && eps_hat < 2.0) {
        return Err(EvalError::Domain(format!(
            "normalization needs 0 < eps_hat < 2, got {eps_hat}"
        )));
    }
    Ok(16f64.powf(-eps_hat) * PI.powf(-1.0 - eps_hat) * gamma_real(2.0 - eps_hat) / eps_hat)
}

/// One-loop two-point function at `D = 1`,
/// `(k1 + k2) / (2 k1 k2 (p^2 + (k1 + k2)^2))`.
pub fn inner_j1(p: f64, masses: MassPair) -> Result<f64, EvalError> {
    let MassPair { kappa1, kappa2 } = masses;
    if kappa1 <= 0.0 || kappa2 <= 0.0 {
        return Err(EvalError::Domain(format!(
            "the one-dimensional bubble needs positive masses, got ({kappa1}, {kappa2})"
        )));
    }
    let s = masses.sum();
    Ok(s / (2.0 * kappa1 * kappa2 * (p * p + s * s)))
}

/// One-loop two-point function at `D = 2`, a logarithm of the Kallen-type
/// combination. The difference `A - g` is formed as `p^2 + (k1 - k2)^2`
/// so nearby masses at small momentum lose nothing to cancellation; the
/// coincident limit `p = 0`, `k1 = k2` is filled in by continuity.
pub fn inner_j2(p: f64, masses: MassPair) -> Result<f64, EvalError> {
    let MassPair { kappa1, kappa2 } = masses;
    if kappa1 <= 0.0 || kappa2 <= 0.0 {
        return Err(EvalError::Domain(format!(
            "the two-dimensional bubble needs positive masses, got ({kappa1}, {kappa2})"
        )));
    }
    let a = p * p + kappa1 * kappa1 + kappa2 * kappa2;
    let g = 2.0 * kappa1 * kappa2;
    let diff = p * p + (kappa1 - kappa2) * (kappa1 - kappa2);
    let s = (diff * (a + g)).sqrt();
    if s == 0.0 {
        return Ok(1.0 / (2.0 * PI * a));
    }
    Ok(((diff + s) / g).ln_1p() / (2.0 * PI * s))
}

/// One-loop two-point function at `D = 3`, `arctan(p / (k1 + k2)) / (4 pi p)`,
/// with a Taylor branch for small `p / (k1 + k2)` where the quotient loses
/// digits.
pub fn inner_j3(p: f64, masses: MassPair) -> Result<f64, EvalError> {
    let MassPair { kappa1, kappa2 } = masses;
    if kappa1 < 0.0 || kappa2 < 0.0 {
        return Err(EvalError::Domain(format!(
            "the three-dimensional bubble needs nonnegative masses, got ({kappa1}, {kappa2})"
        )));
    }
    let s = masses.sum();
    if s == 0.0 {
        if p > 0.0 {
            return Ok(1.0 / (8.0 * p));
        }
        return Err(EvalError::Domain(
            "the three-dimensional bubble needs p > 0 or a positive mass sum".into(),
        ));
    }
    if p < 1e-4 * s {
        let u = p / s;
        let u2 = u * u;
        return Ok((1.0 - u2 / 3.0 + u2 * u2 / 5.0) / (4.0 * PI * s));
    }
    Ok((p / s).atan() / (4.0 * PI * p))
}

fn gamma_prefactor(d: f64) -> Result<f64, EvalError> {
    if is_nonpos_int(2.0 - 0.5 * d) {
        return Err(EvalError::Pole(format!(
            "gamma prefactor has a pole at dimension {d}"
        )));
    }
    if !(d > 0.0 && d < 4.0) {
        return Err(EvalError::Domain(format!(
            "the bubble reductions cover 0 < D < 4, got {d}"
        )));
    }
    Ok((4.0 * PI).powf(-0.5 * d) * gamma_real(2.0 - 0.5 * d))
}

/// One-loop two-point function in continuous dimension `0 < D < 4` as an
/// Appell `F1` value over mean and difference of the masses.
pub fn inner_jd_f1(d: f64, p: f64, masses: MassPair) -> Result<f64, EvalError> {
    let MassPair { kappa1, kappa2 } = masses;
    if kappa1 <= 0.0 || kappa2 <= 0.0 {
        return Err(EvalError::Domain(format!(
            "the continuous-dimension bubble needs positive masses, got ({kappa1}, {kappa2})"
        )));
    }
    let lead = gamma_prefactor(d)?;
    let s = masses.sum();
    let x = -p * p / (s * s);
    let y = (kappa2 - kappa1) * (kappa2 - kappa1) / (s * s);
    let f = eval_f1(2.0 - 0.5 * d, 1.0, 1.5 - 0.5 * d, 1.5, x, y, 1e-14)?;
    Ok(lead * (0.5 * s).powf(d - 4.0) * f.value.re)
}

/// One-loop two-point function with one massless propagator,
/// `-(4 pi)^(-D/2) Gamma(1 - D/2) kappa^(D-4) 2F1(2 - D/2, 1; D/2; -p^2/kappa^2)`.
///
/// For `D <= 2` the defining momentum integral diverges at the origin and
/// the value is its continuation in the dimension; the formula has a genuine
/// pole at `D = 2`.
pub fn inner_jd_zero_mass(d: f64, p: f64, kappa: f64) -> Result<f64, EvalError> {
    if kappa <= 0.0 {
        return Err(EvalError::Domain(format!(
            "the zero-mass bubble needs kappa > 0, got {kappa}"
        )));
    }
    if is_nonpos_int(1.0 - 0.5 * d) {
        return Err(EvalError::Pole(format!(
            "the zero-mass bubble has a gamma pole at dimension {d}"
        )));
    }
    if !(d > 0.0 && d < 4.0) {
        return Err(EvalError::Domain(format!(
            "the bubble reductions cover 0 < D < 4, got {d}"
        )));
    }
    let lead = -(4.0 * PI).powf(-0.5 * d) * gamma_real(1.0 - 0.5 * d);
    let arg = Complex64::new(-p * p / (kappa * kappa), 0.0);
    let f = eval_2f1(2.0 - 0.5 * d, 1.0, 0.5 * d, arg, 1e-14)?;
    Ok(lead * kappa.powf(d - 4.0) * f.value.re)
}

/// One-loop two-point function as the second `F1` representation, with
/// reciprocal quadratic roots as arguments. The roots straddle `[0, 1]`, so
/// both reciprocals stay inside the integral representation's reach; the
/// smaller root is recovered from the exact product `r- r+ = -k1^2/p^2` to
/// dodge the cancellation in the quadratic formula.
pub fn inner_jd_kss(d: f64, p: f64, masses: MassPair) -> Result<f64, EvalError> {
    let MassPair { kappa1, kappa2 } = masses;
    if kappa1 <= 0.0 || kappa2 <= 0.0 {
        return Err(EvalError::Domain(format!(
            "the root-based bubble needs positive masses, got ({kappa1}, {kappa2})"
        )));
    }
    // The distance of the second argument from 1 scales with kappa2^2, so
    // evaluate the decomposition with the larger mass in that slot; the
    // represented bubble is mass symmetric.
    let (kappa1, kappa2) = if kappa1 <= kappa2 {
        (kappa1, kappa2)
    } else {
        (kappa2, kappa1)
    };
    if p <= 0.0 {
        return Err(EvalError::Domain(format!(
            "the root-based bubble needs p > 0, got {p}"
        )));
    }
    let lead = gamma_prefactor(d)?;
    let b = p * p + kappa2 * kappa2 - kappa1 * kappa1;
    let disc = (b * b + 4.0 * kappa1 * kappa1 * p * p).sqrt();
    let (r_minus, r_plus) = if b >= 0.0 {
        let r_plus = (b + disc) / (2.0 * p * p);
        (-kappa1 * kappa1 / (p * p * r_plus), r_plus)
    } else {
        let r_minus = (b - disc) / (2.0 * p * p);
        (r_minus, -kappa1 * kappa1 / (p * p * r_minus))
    };
    let f = eval_f1(
        1.0,
        2.0 - 0.5 * d,
        2.0 - 0.5 * d,
        2.0,
        1.0 / r_minus,
        1.0 / r_plus,
        1e-14,
    )?;
    Ok(lead * kappa1.powf(d - 4.0) * f.value.re)
}

const B_PRIME_AT_ONE: f64 = 0.351_133_161_054_033_52;
const B_SECOND_AT_ONE: f64 = -0.116_244_184_659_767_89;

/// Reduced integral on the `q` axis at `q = 1`, as a function of `eps_hat`.
/// The closed gamma form is 0/0 at `eps_hat = 1`; a short Taylor series
/// around the `ln 2` limit bridges the cancellation window.
fn q_axis_constant(eps_hat: f64) -> f64 {
    let delta = eps_hat - 1.0;
    if delta.abs() < 1e-5 {
        return LN_2 + delta * (B_PRIME_AT_ONE + 0.5 * delta * B_SECOND_AT_ONE);
    }
    let numer = eps_hat - PI.sqrt() * gamma_real(1.0 + eps_hat) * recip_gamma(eps_hat - 0.5);
    numer / (2.0 * (1.0 - eps_hat))
}

/// The ratio `sin(pi d / 2) / d` underlying the `p`-axis value; entire in
/// `d`, with the removable point filled in exactly.
fn p_axis_factor(delta: f64) -> f64 {
    if delta == 0.0 {
        FRAC_PI_2
    } else {
        (FRAC_PI_2 * delta).sin() / delta
    }
}

fn check_m_window(m: f64) -> Result<f64, EvalError> {
    if !(2.0..=6.0).contains(&m) {
        return Err(EvalError::Domain(format!(
            "the closed forms cover 2 <= m <= 6, got m = {m}"
        )));
    }
    Ok(0.5 * m - 1.0)
}

/// Reduced integral on the `q` axis, `Ihat(0, q) = q^(2 eps_hat - 4) B(eps_hat)`.
pub fn i1m_q_axis(m: f64, q: f64) -> Result<f64, EvalError> {
    let eps_hat = check_m_window(m)?;
    if q <= 0.0 {
        return Err(EvalError::Domain(format!(
            "the q-axis value needs q > 0, got {q}"
        )));
    }
    Ok((q * q).powf(eps_hat - 2.0) * q_axis_constant(eps_hat))
}

/// Reduced integral on the `p` axis,
/// `Ihat(p, 0) = (2p)^(eps_hat - 2) sin(pi (eps_hat - 1) / 2) / (eps_hat - 1)`.
pub fn i1m_p_axis(m: f64, p: f64) -> Result<f64, EvalError> {
    let eps_hat = check_m_window(m)?;
    if p <= 0.0 {
        return Err(EvalError::Domain(format!(
            "the p-axis value needs p > 0, got {p}"
        )));
    }
    Ok((2.0 * p).powf(eps_hat - 2.0) * p_axis_factor(eps_hat - 1.0))
}

/// The generic route: `Ihat = Im[z^(eps_hat - 1) 2F1(1, 1 - eps_hat;
/// 1 + eps_hat; -q^2/z)] / (2 (1 - eps_hat) p)` with `z = q^2 - 2ip` on the
/// principal branch. The divisor makes this unusable near `eps_hat = 1`.
fn direct_value(eps_hat: f64, p: f64, q: f64, tol: f64) -> Result<(f64, f64), EvalError> {
    let z = Complex64::new(q * q, -2.0 * p);
    let arg = -Complex64::new(q * q, 0.0) / z;
    let f = eval_2f1(1.0, 1.0 - eps_hat, 1.0 + eps_hat, arg, tol)?;
    let head = z.powf(eps_hat - 1.0);
    let full = head * f.value;
    let scale = 2.0 * (1.0 - eps_hat) * p;
    let value = full.im / scale;
    let abs_err = (head.norm() * f.abs_err + 8.0 * f64::EPSILON * full.norm()) / scale.abs();
    Ok((value, abs_err))
}

/// The `m = 4` limit of the generic route, where the Gauss function
/// collapses to logarithms: `Ihat = Im[((1 - y)/y) ln(1 - y) - ln z] / (2p)`
/// with `y = -q^2/z`. Small `|y|` (large `p/q^2`) goes through the series of
/// `((1 - y)/y) ln(1 - y)` to keep its leading cancellation exact.
fn m4_limit_value(p: f64, q: f64) -> (f64, f64) {
    let z = Complex64::new(q * q, -2.0 * p);
    let y = -Complex64::new(q * q, 0.0) / z;
    let combo = if y.norm() < 1e-4 {
        let mut acc = Complex64::new(-1.0, 0.0);
        let mut power = y;
        for n in 2..=5u32 {
            acc += power / ((n * (n - 1)) as f64);
            power *= y;
        }
        acc
    } else {
        (1.0 - y) / y * (1.0 - y).ln()
    };
    let log_z = z.ln();
    let value = (combo - log_z).im / (2.0 * p);
    let abs_err = 16.0 * f64::EPSILON * (combo.norm() + log_z.norm()) / (2.0 * p);
    (value, abs_err)
}

/// Near-axis value for `p` far below `q^2`: the imaginary part degrades as
/// `p/q^2` shrinks, but the limit combination
/// `q^(2 eps_hat - 4) [2F1(1, 1-e; 1+e; -1) - 2F1(2, 2-e; 2+e; -1)/(1+e)]`
/// is exact on the axis and off by `O((2p/q^2)^2)` relative nearby.
fn small_p_value(eps_hat: f64, p: f64, q: f64, tol: f64) -> Result<(f64, f64), EvalError> {
    let minus_one = Complex64::new(-1.0, 0.0);
    let f0 = eval_2f1(1.0, 1.0 - eps_hat, 1.0 + eps_hat, minus_one, tol)?;
    let f1 = eval_2f1(2.0, 2.0 - eps_hat, 2.0 + eps_hat, minus_one, tol)?;
    let combo = f0.value.re - f1.value.re / (1.0 + eps_hat);
    let w = 2.0 * p / (q * q);
    let scale = (q * q).powf(eps_hat - 2.0);
    let value = scale * combo;
    let abs_err =
        scale * (f0.abs_err + f1.abs_err + (w * w + 4.0 * f64::EPSILON) * combo.abs());
    Ok((value, abs_err))
}

/// Taylor continuation across the `m = 4` window: the exact limit value plus
/// first and second dimension derivatives of the generic route, the first
/// Richardson-extrapolated from steps 0.05 and 0.025.
fn stitch_value(eps_hat: f64, p: f64, q: f64) -> Result<(f64, f64), EvalError> {
    let (base, base_err) = m4_limit_value(p, q);
    let delta = eps_hat - 1.0;
    let h = 0.05;
    let eval = |e: f64| direct_value(e, p, q, 1e-14).map(|(v, _)| v);
    let up_wide = eval(1.0 + h)?;
    let down_wide = eval(1.0 - h)?;
    let up_half = eval(1.0 + 0.5 * h)?;
    let down_half = eval(1.0 - 0.5 * h)?;
    let d_wide = (up_wide - down_wide) / (2.0 * h);
    let d_half = (up_half - down_half) / h;
    let d1 = (4.0 * d_half - d_wide) / 3.0;
    let d2 = (up_wide + down_wide - 2.0 * base) / (h * h);
    let value = base + delta * d1 + 0.5 * delta * delta * d2;
    let scale = d1.abs().max(d2.abs()).max(value.abs());
    let abs_err = base_err + (delta * delta * h * h + delta.abs().powi(3)) * scale;
    Ok((value, abs_err))
}

/// Reduced two-loop integral `Ihat(p, q)` with the route that produced the
/// value. Covers `m` in the closed window `[2, 6]`; the endpoints are the
/// finite limits of the reduced form even though the overall normalization
/// diverges there.
pub fn i1m_hat_detail(point: IntegralPoint, tol: f64) -> Result<RouteValue, EvalError> {
    let IntegralPoint { m, p, q } = point;
    let eps_hat = check_m_window(m)?;
    if p < 0.0 || q < 0.0 {
        return Err(EvalError::Domain(format!(
            "momenta are magnitudes and must be nonnegative, got p = {p}, q = {q}"
        )));
    }
    if p == 0.0 && q == 0.0 {
        return Err(EvalError::Domain(
            "the integral diverges at p = q = 0".into(),
        ));
    }
    let tol = sanitize_tol(tol);
    if q == 0.0 {
        let value = i1m_p_axis(m, p)?;
        return Ok(RouteValue {
            value,
            abs_err: 4.0 * f64::EPSILON * value.abs(),
            route: "p-axis",
        });
    }
    if p == 0.0 {
        let value = i1m_q_axis(m, q)?;
        return Ok(RouteValue {
            value,
            abs_err: 4.0 * f64::EPSILON * value.abs(),
            route: "q-axis",
        });
    }
    if p < 1e-3 * q * q {
        let (value, abs_err) = small_p_value(eps_hat, p, q, tol)?;
        return Ok(RouteValue {
            value,
            abs_err,
            route: "small-p",
        });
    }
    let delta = eps_hat - 1.0;
    if delta == 0.0 {
        let (value, abs_err) = m4_limit_value(p, q);
        return Ok(RouteValue {
            value,
            abs_err,
            route: "m4-limit",
        });
    }
    if delta.abs() < 5e-4 {
        let (value, abs_err) = stitch_value(eps_hat, p, q)?;
        return Ok(RouteValue {
            value,
            abs_err,
            route: "stitch",
        });
    }
    let (value, abs_err) = direct_value(eps_hat, p, q, tol)?;
    Ok(RouteValue {
        value,
        abs_err,
        route: "direct",
    })
}

/// Reduced two-loop integral `Ihat(p, q)`.
pub fn i1m_hat(point: IntegralPoint, tol: f64) -> Result<f64, EvalError> {
    i1m_hat_detail(point, tol).map(|r| r.value)
}

/// Full two-loop integral `I(p, q) = C1(eps_hat) Ihat(p, q)`, with the route
/// label of the reduced evaluation. Needs `m` strictly inside `(2, 6)`
/// because the normalization diverges at the window ends.
pub fn i1m_detail(point: IntegralPoint, tol: f64) -> Result<RouteValue, EvalError> {
    let lead = c1_constant(point.eps_hat())?;
    let reduced = i1m_hat_detail(point, tol)?;
    Ok(RouteValue {
        value: lead * reduced.value,
        abs_err: lead.abs() * reduced.abs_err,
        route: reduced.route,
    })
}

/// Full two-loop integral `I(p, q)`.
pub fn i1m(point: IntegralPoint, tol: f64) -> Result<f64, EvalError> {
    i1m_detail(point, tol).map(|r| r.value)
}

fn check_special_point(p: f64, q: f64) -> Result<(), EvalError> {
    if p < 0.0 || q < 0.0 {
        return Err(EvalError::Domain(format!(
            "momenta are magnitudes and must be nonnegative, got p = {p}, q = {q}"
        )));
    }
    if p == 0.0 && q == 0.0 {
        return Err(EvalError::Domain(
            "the integral diverges at p = q = 0".into(),
        ));
    }
    Ok(())
}

/// `Ihat` at `m = 2`: the elementary value `1 / (4 (p^2 + q^4))`.
pub fn special_m2(p: f64, q: f64) -> Result<f64, EvalError> {
    check_special_point(p, q)?;
    Ok(0.25 / (p * p + q * q * q * q))
}

/// `Ihat` at `m = 3`: a single logarithm of nested square roots. The closed
/// form divides by `p q`, so either momentum near zero hands over to the
/// matching axis limit before the logarithm cancels to noise.
pub fn special_m3(p: f64, q: f64) -> Result<f64, EvalError> {
    check_special_point(p, q)?;
    if p <= 1e-6 * q * q {
        return Ok(0.5 / (q * q * q));
    }
    if q <= 1e-6 * p.sqrt() {
        return Ok(2f64.sqrt() * (2.0 * p).powf(-1.5));
    }
    let root = (4.0 * p * p + q * q * q * q).sqrt();
    let numer = q * q * root + p * p - p * q * 2f64.sqrt() * (root + q * q).sqrt();
    let denom = p * p + q * q * q * q;
    Ok(-(numer / denom).ln() / (4.0 * p * q))
}

/// `Ihat` at `m = 4`: logarithm plus arctangent, grouped so both terms stay
/// finite on approach to either axis.
pub fn special_m4(p: f64, q: f64) -> Result<f64, EvalError> {
    check_special_point(p, q)?;
    if q == 0.0 {
        return Ok(PI / (4.0 * p));
    }
    if p == 0.0 {
        return Ok(LN_2 / (q * q));
    }
    let q4 = q * q * q * q;
    let log_term = ((0.75 * q4) / (p * p + 0.25 * q4)).ln_1p() / (2.0 * q * q);
    let atan_term = (2.0 * p * p * p / (q * q * (3.0 * p * p + q4))).atan() / (2.0 * p);
    Ok(log_term + atan_term)
}

/// `Ihat` at `m = 5`: real part of a complex square-root and logarithm
/// combination in `u = p/q^2`. Both extremes of `u` hand over to the axis
/// values, the lower one because the formula divides by `u`, the upper one
/// because the real-part extraction loses roughly `eps * u` of accuracy.
pub fn special_m5(p: f64, q: f64) -> Result<f64, EvalError> {
    check_special_point(p, q)?;
    if q == 0.0 {
        return Ok(1.0 / p.sqrt());
    }
    let u = p / (q * q);
    if u < 1e-6 {
        return Ok(q_axis_constant(1.5) / q);
    }
    if u > 4e7 {
        return Ok(1.0 / p.sqrt());
    }
    let zeta = Complex64::new(1.0, -2.0 * u);
    let root = zeta.sqrt();
    let head = Complex64::new(1.0, -u);
    let combo = root
        - head * head / u * ((root + Complex64::i()) / (root - Complex64::i())).ln();
    Ok(-0.75 / q * combo.re)
}

/// `Ihat` at `m = 6`: identically one.
pub fn special_m6(p: f64, q: f64) -> Result<f64, EvalError> {
    check_special_point(p, q)?;
    Ok(1.0)
}

/// Full integral `I(p, q)` by the Horn-function route,
/// `C1 q^(2 eps_hat - 4) H4(2 - eps_hat, 1; 3/2, 1 + eps_hat; -p^2/q^4, -1)`.
/// The `H4` argument pair sits on the closure of the convergence lens, which
/// the single-series route covers for nonpositive first argument.
pub fn i1m_via_h4(point: IntegralPoint, tol: f64) -> Result<f64, EvalError> {
    let IntegralPoint { m, p, q } = point;
    let eps_hat = check_m_window(m)?;
    let lead = c1_constant(eps_hat)?;
    if q <= 0.0 {
        return Err(EvalError::Domain(format!(
            "the Horn route expands around the q axis and needs q > 0, got {q}"
        )));
    }
    if p < 0.0 {
        return Err(EvalError::Domain(format!(
            "momenta are magnitudes and must be nonnegative, got p = {p}"
        )));
    }
    let tol = sanitize_tol(tol);
    let x = -p * p / (q * q * q * q);
    let h = h4_single_series(2.0 - eps_hat, 1.0, 1.5, 1.0 + eps_hat, x, -1.0, tol)?;
    Ok(lead * (q * q).powf(eps_hat - 2.0) * h.value.re)
}

/// Two-loop integral with a quadratic (not quartic) `m`-dimensional line,
/// in the window `0 <= m < 2` where its `y` integral converges:
/// `8 (16 pi)^(-e3) Gamma(2 - e3) (4p^2 + q^4)^(e3/2 - 1)
///  2F1(1 - e3/2, e3/2; 3/2; 4p^2/(4p^2 + q^4))` with `e3 = m/2 + 1`.
pub fn i3m(m: f64, p: f64, q: f64) -> Result<f64, EvalError> {
    if !(0.0..2.0).contains(&m) {
        return Err(EvalError::Domain(format!(
            "the quadratic-line integral converges for 0 <= m < 2, got m = {m}"
        )));
    }
    check_special_point(p, q)?;
    let e3 = 0.5 * m + 1.0;
    let s = 4.0 * p * p + q * q * q * q;
    let arg = Complex64::new(4.0 * p * p / s, 0.0);
    let f = eval_2f1(1.0 - 0.5 * e3, 0.5 * e3, 1.5, arg, 1e-14)?;
    Ok(8.0 * (16.0 * PI).powf(-e3) * gamma_real(2.0 - e3) * s.powf(0.5 * e3 - 1.0)
        * f.value.re)
}

/// Closed form of the mixed integral with a two-dimensional quadratic line
/// at `p = 1`, as a function of `q`.
pub fn i21_closed(q: f64) -> Result<f64, EvalError> {
    if q < 0.0 {
        return Err(EvalError::Domain(format!(
            "momenta are magnitudes and must be nonnegative, got q = {q}"
        )));
    }
    let q4 = q * q * q * q;
    let w = 4.0 / ((1.0 + q4) * (1.0 + q4) * (4.0 + q4));
    let f = eval_2f1(0.25, 0.25, 1.0, Complex64::new(w, 0.0), 1e-14)?;
    Ok(w.powf(0.25) / (4.0 * 2f64.sqrt()) * f.value.re)
}

/// Closed form of the mixed integral with a three-dimensional quadratic
/// line at `p = 1`. The textbook form subtracts `q^2` under the outer square
/// root; multiplying through by the conjugate turns it into the division
/// below, which is exact for all `q`.
pub fn i31_closed(q: f64) -> Result<f64, EvalError> {
    if q < 0.0 {
        return Err(EvalError::Domain(format!(
            "momenta are magnitudes and must be nonnegative, got q = {q}"
        )));
    }
    let q4 = q * q * q * q;
    Ok(1.0 / (4.0 * PI * 2f64.sqrt()) / ((4.0 + q4).sqrt() + q * q).sqrt())
}

/// Closed form of the full quartic-line integral at `m = 4`, `p = 1`, as a
/// function of `q`: the `m = 4` special case times the normalization.
pub fn i14_closed(q: f64) -> Result<f64, EvalError> {
    if q < 0.0 {
        return Err(EvalError::Domain(format!(
            "momenta are magnitudes and must be nonnegative, got q = {q}"
        )));
    }
    if q == 0.0 {
        return Ok(1.0 / (64.0 * PI));
    }
    let q4 = q * q * q * q;
    let atan_term = (2.0 / (q * q * (3.0 + q4))).atan();
    let log_term = ((0.75 * q4) / (1.0 + 0.25 * q4)).ln_1p() / (q * q);
    Ok((atan_term + log_term) / (32.0 * PI * PI))
}
