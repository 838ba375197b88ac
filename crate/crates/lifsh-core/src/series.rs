//! Generalized hypergeometric series and the Gauss function `2F1` of complex
//! argument.
//!
//! `pFq` is summed by the term-ratio recurrence with a stopping rule of three
//! consecutive terms below tolerance and an explicit tail estimate. `2F1`
//! adds a transformation ladder (Pfaff map, branch-point summation and the
//! connection formula around `z = 1`) so that every argument with a
//! convergent analytic continuation reachable by those maps is covered.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::EvalError;
use crate::gamma::{gamma_real, is_nonpos_int, recip_gamma};

/// Default cap on the number of series terms, overridable through the
/// `LIFSH_MAX_TERMS` environment variable.
const DEFAULT_MAX_TERMS: usize = 1_000_000;

/// Per-process term budget for series summation.
///
/// Reads `LIFSH_MAX_TERMS` once; malformed values fall back to the default.
pub fn term_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("LIFSH_MAX_TERMS")
            .ok()
            .and_then(|raw| raw.parse::<usize>().ok())
            .filter(|&cap| cap > 0)
            .unwrap_or(DEFAULT_MAX_TERMS)
    })
}

/// Value of a summed series together with convergence diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    /// The accumulated value. Real-valued routes store it in the real part.
    pub value: Complex64,
    /// Estimated absolute error: geometric or parametric tail bound plus a
    /// rounding floor proportional to the sum of term magnitudes, so
    /// cancellation-heavy sums report honestly degraded accuracy.
    pub abs_err: f64,
    /// Number of terms (or nodes) actually consumed.
    pub terms_used: usize,
    /// True when the stopping rule was met within budget. `Ok` results always
    /// have it set; it exists so reports can carry it through serialization.
    pub converged: bool,
}

impl SeriesResult {
    pub(crate) fn exact(value: Complex64) -> Self {
        SeriesResult {
            value,
            abs_err: 4.0 * f64::EPSILON * value.norm(),
            terms_used: 1,
            converged: true,
        }
    }

    /// Real part, the payload of the Feynman-side evaluators.
    pub fn re(&self) -> f64 {
        self.value.re
    }
}

/// Index of the last nonzero term when a numerator parameter is a
/// non-positive integer, making the series a polynomial.
fn termination_index(numer: &[f64]) -> Option<usize> {
    numer
        .iter()
        .copied()
        .filter(|&a| is_nonpos_int(a))
        .map(|a| (-a) as usize)
        .min()
}

/// Sum the generalized hypergeometric series `pFq(numer; denom; z)`.
///
/// Stops once three consecutive terms fall below `tol` relative to the
/// running sum. Convergence requirements: `p <= q` anywhere, `p = q + 1`
/// inside the unit disc or on the circle with positive parametric excess,
/// and any argument when a numerator parameter truncates the series to a
/// polynomial. Everything else is reported as a domain error; exhausted
/// budgets and overflow surface as `NoConvergence`.
pub fn eval_pfq(
    numer: &[f64],
    denom: &[f64],
    z: Complex64,
    tol: f64,
) -> Result<SeriesResult, EvalError> {
    let tol = sanitize_tol(tol);
    let truncation = termination_index(numer);
    for &b in denom {
        if is_nonpos_int(b) {
            let pole_at = (-b) as usize;
            let saved = matches!(truncation, Some(last) if last <= pole_at);
            if !saved {
                return Err(EvalError::Pole(format!(
                    "denominator parameter {b} is a non-positive integer"
                )));
            }
        }
    }
    if z.norm() == 0.0 {
        return Ok(SeriesResult::exact(Complex64::new(1.0, 0.0)));
    }

    if let Some(last) = truncation {
        return sum_polynomial(numer, denom, z, last);
    }

    let modulus = z.norm();
    let on_circle = (modulus - 1.0).abs() <= 1e-12;
    if numer.len() > denom.len() + 1 {
        return Err(EvalError::Domain(
            "series with more than one excess numerator parameter diverges for nonzero argument"
                .into(),
        ));
    }
    let excess: f64 = denom.iter().sum::<f64>() - numer.iter().sum::<f64>();
    if numer.len() == denom.len() + 1 {
        if modulus > 1.0 + 1e-12 {
            return Err(EvalError::Domain(format!(
                "argument modulus {modulus:.6} lies outside the closed unit disc"
            )));
        }
        if on_circle && excess <= 0.0 {
            return Err(EvalError::Domain(format!(
                "on the unit circle the series needs positive parametric excess, got {excess:.6}"
            )));
        }
    }

    let cap = term_cap();
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut sum_abs = 1.0;
    let mut small_streak = 0usize;
    let mut n = 0usize;
    loop {
        let mut factor = 1.0 / (n as f64 + 1.0);
        for &a in numer {
            factor *= a + n as f64;
        }
        for &b in denom {
            factor /= b + n as f64;
        }
        term *= z * factor;
        sum += term;
        sum_abs += term.norm();
        n += 1;
        if !sum.is_finite() {
            return Err(EvalError::NoConvergence {
                terms: n,
                abs_err: f64::INFINITY,
            });
        }
        if term.norm() <= tol * sum.norm() {
            small_streak += 1;
            if small_streak >= 3 {
                break;
            }
        } else {
            small_streak = 0;
        }
        if n >= cap {
            return Err(EvalError::NoConvergence {
                terms: n,
                abs_err: term.norm(),
            });
        }
    }

    let last = term.norm();
    let tail = if numer.len() == denom.len() + 1 {
        if on_circle {
            // Terms decay like n^(-1 - excess); bound the remainder by the
            // integral of that power law.
            last * (n as f64) / excess
        } else {
            last * modulus / (1.0 - modulus)
        }
    } else {
        // Factorial decay: the next term already dominates the remainder.
        last
    };
    Ok(SeriesResult {
        value: sum,
        abs_err: 2.0 * tail + 4.0 * f64::EPSILON * sum_abs,
        terms_used: n + 1,
        converged: true,
    })
}

fn sum_polynomial(
    numer: &[f64],
    denom: &[f64],
    z: Complex64,
    last: usize,
) -> Result<SeriesResult, EvalError> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut sum_abs = 1.0;
    for n in 0..last {
        let mut factor = 1.0 / (n as f64 + 1.0);
        for &a in numer {
            factor *= a + n as f64;
        }
        for &b in denom {
            factor /= b + n as f64;
        }
        term *= z * factor;
        sum += term;
        sum_abs += term.norm();
    }
    if !sum.is_finite() {
        return Err(EvalError::NoConvergence {
            terms: last + 1,
            abs_err: f64::INFINITY,
        });
    }
    Ok(SeriesResult {
        value: sum,
        abs_err: 4.0 * f64::EPSILON * sum_abs,
        terms_used: last + 1,
        converged: true,
    })
}

fn sanitize_tol(tol: f64) -> f64 {
    if tol.is_finite() && tol > 0.0 {
        tol.max(f64::EPSILON)
    } else {
        1e-14
    }
}

/// Where the argument ends up after the route chosen by [`eval_2f1`].
///
/// Exposed for diagnostics; the comfortable summation region is `<= 0.8`,
/// direct or Pfaff-mapped.
pub fn gauss_route_modulus(z: Complex64) -> f64 {
    let direct = z.norm();
    let mapped = (z / (z - 1.0)).norm();
    direct.min(mapped)
}

/// Gauss hypergeometric function `2F1(a, b; c; z)` for real parameters and
/// complex argument.
///
/// Route order: polynomial truncation, branch-point summation at `z = 1`,
/// direct series for `|z| <= 0.8`, Pfaff map `w = z / (z - 1)` for
/// `|w| <= 0.8` (this covers the whole negative real axis), the `1 - z`
/// connection formula for non-integer `c - a - b`, then slow direct or mapped
/// series when a disc still contains the argument. Anything else is a domain
/// error.
pub fn eval_2f1(
    a: f64,
    b: f64,
    c: f64,
    z: Complex64,
    tol: f64,
) -> Result<SeriesResult, EvalError> {
    if is_nonpos_int(c) {
        let pole_at = (-c) as usize;
        let saved = matches!(termination_index(&[a, b]), Some(last) if last <= pole_at);
        if !saved {
            return Err(EvalError::Pole(format!(
                "lower parameter c = {c} is a non-positive integer"
            )));
        }
    }
    if is_nonpos_int(a) || is_nonpos_int(b) {
        return eval_pfq(&[a, b], &[c], z, tol);
    }
    let modulus = z.norm();
    if modulus <= 0.8 {
        return eval_pfq(&[a, b], &[c], z, tol);
    }
    let one_minus = Complex64::new(1.0, 0.0) - z;
    if one_minus.norm() <= 1e-12 {
        return gauss_summation(a, b, c);
    }
    let w = z / (z - 1.0);
    if w.norm() <= 0.8 {
        return pfaff_mapped(a, b, c, one_minus, w, tol);
    }
    let excess = c - a - b;
    let excess_is_int = (excess - excess.round()).abs() < 1e-8;
    if one_minus.norm() <= 0.75 && !excess_is_int {
        return connection_at_one(a, b, c, one_minus, excess, tol);
    }
    if modulus < 1.0 - 1e-12 {
        return eval_pfq(&[a, b], &[c], z, tol);
    }
    if w.norm() < 1.0 - 1e-12 {
        return pfaff_mapped(a, b, c, one_minus, w, tol);
    }
    if one_minus.norm() < 1.0 && !excess_is_int {
        return connection_at_one(a, b, c, one_minus, excess, tol);
    }
    Err(EvalError::Domain(format!(
        "no convergent 2F1 route for argument {z} (try parameters with non-integer c - a - b)"
    )))
}

/// Value at the branch point `z = 1`, defined for positive excess
/// `c - a - b` as `Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b))`.
fn gauss_summation(a: f64, b: f64, c: f64) -> Result<SeriesResult, EvalError> {
    let excess = c - a - b;
    if excess <= 0.0 {
        return Err(EvalError::Domain(format!(
            "2F1 diverges at z = 1 for non-positive excess c - a - b = {excess:.6}"
        )));
    }
    let value = gamma_real(c) * gamma_real(excess) * recip_gamma(c - a) * recip_gamma(c - b);
    Ok(SeriesResult {
        value: Complex64::new(value, 0.0),
        abs_err: 8.0 * f64::EPSILON * value.abs(),
        terms_used: 1,
        converged: true,
    })
}

fn pfaff_mapped(
    a: f64,
    b: f64,
    c: f64,
    one_minus: Complex64,
    w: Complex64,
    tol: f64,
) -> Result<SeriesResult, EvalError> {
    // 2F1(a,b;c;z) = (1-z)^(-a) 2F1(a, c-b; c; w). Prefer the variant whose
    // mapped series terminates.
    let (head, tail) = if is_nonpos_int(c - b) {
        (a, c - b)
    } else if is_nonpos_int(c - a) {
        (b, c - a)
    } else {
        (a, c - b)
    };
    let inner = eval_pfq(&[head, tail], &[c], w, tol)?;
    let prefactor = one_minus.powf(-head);
    Ok(SeriesResult {
        value: prefactor * inner.value,
        abs_err: prefactor.norm() * inner.abs_err
            + 4.0 * f64::EPSILON * (prefactor * inner.value).norm(),
        terms_used: inner.terms_used,
        converged: true,
    })
}

/// Connection formula around `z = 1` for non-integer excess `s = c - a - b`:
/// two series in `1 - z` glued by gamma prefactors. Poles of `Gamma` in the
/// denominators drop their term through the entire reciprocal gamma.
fn connection_at_one(
    a: f64,
    b: f64,
    c: f64,
    one_minus: Complex64,
    excess: f64,
    tol: f64,
) -> Result<SeriesResult, EvalError> {
    let lead = gamma_real(c) * gamma_real(excess) * recip_gamma(c - a) * recip_gamma(c - b);
    let sub = gamma_real(c) * gamma_real(-excess) * recip_gamma(a) * recip_gamma(b);
    let mut value = Complex64::new(0.0, 0.0);
    let mut abs_err = 0.0;
    let mut terms = 0usize;
    if lead != 0.0 {
        let f = eval_pfq(&[a, b], &[1.0 - excess], one_minus, tol)?;
        value += lead * f.value;
        abs_err += lead.abs() * f.abs_err;
        terms += f.terms_used;
    }
    if sub != 0.0 {
        let f = eval_pfq(&[c - a, c - b], &[1.0 + excess], one_minus, tol)?;
        let prefactor = one_minus.powf(excess);
        value += sub * prefactor * f.value;
        abs_err += sub.abs() * prefactor.norm() * f.abs_err;
        terms += f.terms_used;
    }
    abs_err += 8.0 * f64::EPSILON * value.norm();
    Ok(SeriesResult {
        value,
        abs_err,
        terms_used: terms.max(1),
        converged: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::pochhammer;
    use approx::assert_relative_eq;

    fn assert_close(actual: Complex64, re: f64, im: f64, tol: f64) {
        let expected = Complex64::new(re, im);
        let scale = expected.norm().max(1.0);
        assert!(
            (actual - expected).norm() <= tol * scale,
            "got {actual}, want {expected} (diff {:.3e})",
            (actual - expected).norm()
        );
    }

    // Reference values in this module were computed with mpmath at 40
    // significant digits.

    #[test]
    fn gauss_series_direct_region() {
        let cases = [
            (0.5, 1.5, 2.25, 0.3, 0.4, 1.066_866_018_074_143_3, 0.179_173_404_237_314_27),
            (1.0, 0.5, 1.5, -0.6, 0.25, 0.846_371_625_039_391_52, 0.046_544_534_821_752_282),
            (2.0, -1.5, 3.0, 0.7, -0.55, 0.321_408_670_850_638_12, 0.388_860_515_917_321_78),
            (1.0, 1.0, 2.0, 0.5, 0.5, 1.131_971_753_677_421, 0.438_824_573_117_475_65),
            (0.3, 0.7, 1.1, -0.2, 0.78, 0.930_053_045_717_230_37, 0.107_912_069_032_234_83),
        ];
        for (a, b, c, zr, zi, re, im) in cases {
            let got = eval_2f1(a, b, c, Complex64::new(zr, zi), 1e-15).unwrap();
            assert_close(got.value, re, im, 1e-13);
            assert!(got.converged);
            assert!(got.abs_err < 1e-10);
        }
    }

    #[test]
    fn gauss_series_pfaff_region() {
        // Negative real axis and large complex arguments go through the map
        // w = z / (z - 1).
        let cases = [
            (1.0, 0.5, 1.5, -3.0, 0.0, 0.604_599_788_078_072_62, 0.0),
            (1.0, -0.5, 2.5, -0.9, -0.43, 1.164_518_450_612_539_3, 0.070_198_657_682_565_51),
            (0.75, 1.25, 0.5, -12.0, 5.0, -0.053_059_294_458_291_094, -0.004_832_092_095_770_712_7),
        ];
        for (a, b, c, zr, zi, re, im) in cases {
            let got = eval_2f1(a, b, c, Complex64::new(zr, zi), 1e-15).unwrap();
            assert_close(got.value, re, im, 1e-13);
        }
    }

    #[test]
    fn gauss_series_polynomial_any_argument() {
        let got = eval_2f1(-3.0, 2.2, 0.7, Complex64::new(5.0, -2.0), 1e-15).unwrap();
        assert_close(got.value, -271.606_909_430_438_84, 970.670_401_493_930_91, 1e-13);
        assert_eq!(got.terms_used, 4);
    }

    #[test]
    fn gauss_series_near_and_at_branch_point() {
        let near = eval_2f1(0.25, 0.25, 1.0, Complex64::new(0.95, 0.0), 1e-15).unwrap();
        assert_close(near.value, 1.126_448_548_882_770_4, 0.0, 1e-12);
        let very_near = eval_2f1(0.5, 0.5, 1.5, Complex64::new(0.999_999_9, 0.0), 1e-15).unwrap();
        assert_close(very_near.value, 1.570_480_177_547_620_2, 0.0, 1e-9);
        let at = eval_2f1(0.25, 0.75, 1.5, Complex64::new(1.0, 0.0), 1e-15).unwrap();
        assert_close(at.value, 2.0_f64.sqrt(), 0.0, 1e-14);
    }

    #[test]
    fn gauss_series_rejects_divergent_points() {
        // Integer excess and argument outside both discs: no route.
        let err = eval_2f1(1.0, 1.0, 2.0, Complex64::new(2.5, 0.0), 1e-12).unwrap_err();
        assert!(matches!(err, EvalError::Domain(_)));
        // Lower-parameter pole.
        let err = eval_2f1(0.5, 0.7, -2.0, Complex64::new(0.1, 0.0), 1e-12).unwrap_err();
        assert!(matches!(err, EvalError::Pole(_)));
        // Unit circle with non-positive excess.
        let err = eval_pfq(&[1.0, 1.5], &[2.0], Complex64::new(0.0, 1.0), 1e-12).unwrap_err();
        assert!(matches!(err, EvalError::Domain(_)));
    }

    #[test]
    fn polynomial_beats_denominator_pole() {
        // Numerator truncation at n = 2 hits before the (c)_n zero at n = 4.
        let got = eval_2f1(-2.0, 1.3, -3.0, Complex64::new(0.4, 0.0), 1e-15).unwrap();
        // 1 + (-2)(1.3)/(-3) * 0.4 + (-2)(-1)(1.3)(2.3)/((-3)(-2) 2) * 0.16
        let expected = 1.0 + 2.6 / 3.0 * 0.4 + (2.0 * 1.3 * 2.3 / 12.0) * 0.16;
        assert_relative_eq!(got.value.re, expected, max_relative = 1e-14);
    }

    #[test]
    fn other_series_families() {
        let got = eval_pfq(
            &[1.5, 2.0],
            &[2.5, 2.0],
            Complex64::new(0.7, -1.2),
            1e-15,
        )
        .unwrap();
        assert_close(got.value, 1.052_595_742_292_332_5, -1.037_290_805_156_685_2, 1e-13);

        let got = eval_pfq(&[1.5, 2.0], &[2.5, 2.0], Complex64::new(40.0, 0.0), 1e-15).unwrap();
        assert_close(got.value, 8_715_176_179_167_039.5, 0.0, 1e-12);

        let got = eval_pfq(
            &[1.2, 0.8, 3.0],
            &[2.2, 2.0],
            Complex64::new(0.65, 0.0),
            1e-15,
        )
        .unwrap();
        assert_close(got.value, 1.992_680_666_509_435_6, 0.0, 1e-13);

        let got = eval_pfq(
            &[1.2, 0.8, 5.0],
            &[2.2, 2.0],
            Complex64::new(0.0, 0.55),
            1e-15,
        )
        .unwrap();
        assert_close(got.value, 0.722_476_750_205_475_35, 0.408_252_474_435_759_13, 1e-13);

        let got = eval_pfq(&[0.5], &[1.8], Complex64::new(-8.0, 3.0), 1e-15).unwrap();
        assert_close(got.value, 0.343_750_135_185_744_35, 0.059_762_606_774_905_75, 1e-12);

        let got = eval_pfq(&[], &[1.3], Complex64::new(2.0, -1.0), 1e-15).unwrap();
        assert_close(got.value, 3.065_513_625_435_760_2, -1.649_062_792_313_840_3, 1e-13);
    }

    #[test]
    fn term_recurrence_matches_pochhammer_products() {
        // The running term after n steps must equal the closed-form
        // coefficient; accumulate the recurrence and compare.
        let (a, b, c) = (0.8, 1.7, 2.3);
        let z = Complex64::new(0.31, -0.22);
        let mut term = Complex64::new(1.0, 0.0);
        for n in 0..40 {
            let factor = (a + n as f64) * (b + n as f64) / ((c + n as f64) * (n as f64 + 1.0));
            term *= z * factor;
        }
        let n = 40;
        let closed = pochhammer(a, n) * pochhammer(b, n)
            / (pochhammer(c, n) * pochhammer(1.0, n));
        let direct = z.powu(n as u32) * closed;
        assert!((term - direct).norm() <= 1e-12 * direct.norm());
    }

    #[test]
    fn conjugate_argument_gives_conjugate_value() {
        let z = Complex64::new(0.4, 0.37);
        let plus = eval_2f1(0.9, 1.4, 2.2, z, 1e-15).unwrap().value;
        let minus = eval_2f1(0.9, 1.4, 2.2, z.conj(), 1e-15).unwrap().value;
        assert!((plus.conj() - minus).norm() <= 1e-15 * plus.norm());
    }
}
