//! Brute-force quadrature of the defining momentum integrals.
//!
//! Everything here recomputes quantities the rest of the crate obtains from
//! closed forms, using nothing beyond adaptive Gauss-Kronrod panels and the
//! elementary one-loop bubbles. The point is independence, not speed: a
//! disagreement between an oracle and a closed form localizes a defect to one
//! side or the other.
//!
//! All oracles return [`SeriesResult`] with the integrand evaluation count in
//! `terms_used` and a combined error bound in `abs_err` (outer panel estimates
//! plus the tolerance handed to nested levels).

use std::cell::Cell;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::EvalError;
use crate::feynman::{inner_j1, inner_j2, inner_j3, MassPair};
use crate::gamma::gamma_real;
use crate::quad::{integrate, integrate_to_inf, QuadratureSpec};
use crate::series::SeriesResult;

/// Below this squared-distance threshold a quartic mass is treated as an
/// exact zero; the affected node contributes nothing instead of overflowing.
const MASS_FLOOR: f64 = 1e-280;

fn nested_spec(spec: &QuadratureSpec) -> QuadratureSpec {
    QuadratureSpec {
        abs_tol: 0.05 * spec.abs_tol,
        rel_tol: 0.05 * spec.rel_tol,
        max_subdivisions: spec.max_subdivisions,
    }
}

fn oracle_result(value: f64, outer_err: f64, spec: &QuadratureSpec, evals: usize) -> SeriesResult {
    // Nested levels were integrated to a twentieth of the requested
    // tolerances; fold that allowance into the reported bound.
    let abs_err = outer_err + 0.05 * (spec.abs_tol + spec.rel_tol * value.abs());
    SeriesResult {
        value: Complex64::new(value, 0.0),
        abs_err,
        terms_used: evals,
        converged: true,
    }
}

fn check_momentum(p: f64) -> Result<(), EvalError> {
    if p < 0.0 || !p.is_finite() {
        return Err(EvalError::Domain(format!(
            "momenta are magnitudes and must be nonnegative, got p = {p}"
        )));
    }
    Ok(())
}

/// One-loop bubble `J_D(p; k1, k2)` at `D` in `{1, 2, 3}` by direct
/// quadrature of the momentum integral, with no recourse to the closed forms.
///
/// `D = 1` and `D = 2` need both masses positive; `D = 3` needs a positive
/// mass sum (one massless propagator stays integrable there).
pub fn quad_jd(
    d: f64,
    p: f64,
    masses: MassPair,
    spec: &QuadratureSpec,
) -> Result<SeriesResult, EvalError> {
    check_momentum(p)?;
    let MassPair { kappa1, kappa2 } = masses;
    if d == 1.0 || d == 2.0 {
        if kappa1 <= 0.0 || kappa2 <= 0.0 {
            return Err(EvalError::Domain(format!(
                "the D = {d} bubble integral needs positive masses, got ({kappa1}, {kappa2})"
            )));
        }
    } else if d == 3.0 {
        if kappa1 < 0.0 || kappa2 < 0.0 || kappa1 + kappa2 <= 0.0 {
            return Err(EvalError::Domain(format!(
                "the D = 3 bubble integral needs a positive mass sum, got ({kappa1}, {kappa2})"
            )));
        }
    } else {
        return Err(EvalError::Domain(format!(
            "direct bubble quadrature covers D in {{1, 2, 3}}, got {d}"
        )));
    }
    let evals = Cell::new(0usize);
    let scale = (p + masses.sum()).max(1.0);
    if d == 1.0 {
        let f = |k: f64| {
            evals.set(evals.get() + 1);
            1.0 / ((k * k + kappa1 * kappa1) * ((k - p) * (k - p) + kappa2 * kappa2))
        };
        let (v_low, e_low) = integrate_to_inf(|u| f(-u), 0.0, scale, spec)?;
        let (v_mid, e_mid) = integrate(f, 0.0, p, spec)?;
        let (v_high, e_high) = integrate_to_inf(f, p, scale, spec)?;
        let value = (v_low + v_mid + v_high) / (2.0 * PI);
        let err = (e_low + e_mid + e_high) / (2.0 * PI);
        return Ok(oracle_result(value, err, spec, evals.get()));
    }
    let inner = nested_spec(spec);
    if d == 2.0 {
        let outer = |k: f64| {
            let angular = integrate(
                |theta: f64| {
                    evals.set(evals.get() + 1);
                    1.0 / (k * k + 2.0 * k * p * theta.cos() + p * p + kappa2 * kappa2)
                },
                0.0,
                PI,
                &inner,
            )
            .map(|(v, _)| v)
            .unwrap_or(f64::NAN);
            k / (k * k + kappa1 * kappa1) * angular
        };
        let (v_low, e_low) = integrate(outer, 0.0, scale, spec)?;
        let (v_high, e_high) = integrate_to_inf(outer, scale, scale, spec)?;
        let value = (v_low + v_high) / (2.0 * PI * PI);
        let err = (e_low + e_high) / (2.0 * PI * PI);
        return Ok(oracle_result(value, err, spec, evals.get()));
    }
    let outer = |k: f64| {
        let angular = integrate(
            |theta: f64| {
                evals.set(evals.get() + 1);
                theta.sin() / (k * k + 2.0 * k * p * theta.cos() + p * p + kappa2 * kappa2)
            },
            0.0,
            PI,
            &inner,
        )
        .map(|(v, _)| v)
        .unwrap_or(f64::NAN);
        k * k / (k * k + kappa1 * kappa1) * angular
    };
    let (v_low, e_low) = integrate(outer, 0.0, scale, spec)?;
    let (v_high, e_high) = integrate_to_inf(outer, scale, scale, spec)?;
    let value = (v_low + v_high) / (4.0 * PI * PI);
    let err = (e_low + e_high) / (4.0 * PI * PI);
    Ok(oracle_result(value, err, spec, evals.get()))
}

/// Two-loop integral `I_{1,m}(p, q)` at integer `m` in `{3, 4, 5}` by direct
/// quadrature over the quartic loop momentum.
///
/// The quadratic loop is integrated analytically into the elementary
/// one-dimensional bubble; the remaining `m`-dimensional integral runs in
/// spherical coordinates, folded onto the half sphere by mass symmetry, with
/// the radial line split at the kinematic point `y = q/2`.
pub fn quad_i1m(
    m: f64,
    p: f64,
    q: f64,
    spec: &QuadratureSpec,
) -> Result<SeriesResult, EvalError> {
    if !(m == 3.0 || m == 4.0 || m == 5.0) {
        return Err(EvalError::Domain(format!(
            "direct two-loop quadrature covers m in {{3, 4, 5}}, got {m}"
        )));
    }
    if !(p > 0.0) || !(q > 0.0) {
        return Err(EvalError::Domain(format!(
            "direct two-loop quadrature needs p > 0 and q > 0, got p = {p}, q = {q}"
        )));
    }
    // Solid angle of the fixed-polar-angle sphere over the momentum measure.
    let s_factor = 2.0 * PI.powf(0.5 * (m - 1.0)) / gamma_real(0.5 * (m - 1.0))
        / (2.0 * PI).powf(m);
    let evals = Cell::new(0usize);
    let inner = nested_spec(spec);
    let angular_power = m - 2.0;
    let radial = |y: f64| {
        let half = integrate(
            |theta: f64| {
                evals.set(evals.get() + 1);
                // Quartic masses of the two propagators, grouped so both
                // stay nonnegative without cancellation.
                let shift = 2.0 * y * q * (0.5 * theta).sin().powi(2);
                let k1 = (y - 0.5 * q) * (y - 0.5 * q) + shift;
                let k2 = (y + 0.5 * q) * (y + 0.5 * q) - shift;
                if k1 <= MASS_FLOOR || k2 <= MASS_FLOOR {
                    return 0.0;
                }
                let bubble = inner_j1(p, MassPair::new(k1, k2)).unwrap_or(f64::NAN);
                theta.sin().powf(angular_power) * bubble
            },
            0.0,
            0.5 * PI,
            &inner,
        )
        .map(|(v, _)| v)
        .unwrap_or(f64::NAN);
        2.0 * y.powf(m - 1.0) * half
    };
    let (v_low, e_low) = integrate(radial, 0.0, 0.5 * q, spec)?;
    let (v_high, e_high) = integrate_to_inf(radial, 0.5 * q, q.max(1.0), spec)?;
    let value = s_factor * (v_low + v_high);
    let err = s_factor * (e_low + e_high);
    Ok(oracle_result(value, err, spec, evals.get()))
}

/// Mixed integral `I_{D,1}(p, q)` (a `D`-dimensional quadratic loop against a
/// one-dimensional quartic line) at `D` in `{2, 3}` by direct quadrature.
///
/// The quadratic loop becomes the elementary `D`-dimensional bubble; the
/// quartic line integral folds onto the half line by mass symmetry and splits
/// at `y = q/2`, where one quartic mass vanishes.
pub fn quad_idm_m1(
    d: f64,
    p: f64,
    q: f64,
    spec: &QuadratureSpec,
) -> Result<SeriesResult, EvalError> {
    if !(d == 2.0 || d == 3.0) {
        return Err(EvalError::Domain(format!(
            "direct mixed-integral quadrature covers D in {{2, 3}}, got {d}"
        )));
    }
    if !(p > 0.0) || !(q > 0.0) {
        return Err(EvalError::Domain(format!(
            "direct mixed-integral quadrature needs p > 0 and q > 0, got p = {p}, q = {q}"
        )));
    }
    let evals = Cell::new(0usize);
    let line = |y: f64| {
        evals.set(evals.get() + 1);
        let k1 = (y - 0.5 * q) * (y - 0.5 * q);
        let k2 = (y + 0.5 * q) * (y + 0.5 * q);
        if d == 2.0 {
            // The logarithmic blowup of the bubble at a vanishing mass is
            // integrable in y; skip only the exactly singular node.
            if k1 <= MASS_FLOOR || k2 <= MASS_FLOOR {
                return 0.0;
            }
            inner_j2(p, MassPair::new(k1, k2)).unwrap_or(f64::NAN)
        } else {
            inner_j3(p, MassPair::new(k1, k2)).unwrap_or(f64::NAN)
        }
    };
    let (v_low, e_low) = integrate(&line, 0.0, 0.5 * q, spec)?;
    let (v_high, e_high) = integrate_to_inf(&line, 0.5 * q, q.max(1.0), spec)?;
    let value = (v_low + v_high) / PI;
    let err = (e_low + e_high) / PI;
    Ok(oracle_result(value, err, spec, evals.get()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feynman::{
        c1_constant, i14_closed, i1m_hat, i21_closed, i31_closed, i3m, inner_jd_f1,
        IntegralPoint,
    };

    fn assert_rel(actual: f64, expected: f64, tol: f64) {
        assert!(
            (actual - expected).abs() <= tol * expected.abs().max(1e-300),
            "got {actual}, want {expected} (rel {:.3e})",
            (actual - expected).abs() / expected.abs()
        );
    }

    #[test]
    fn bubble_quadrature_matches_the_elementary_forms() {
        let spec = QuadratureSpec::default();
        let masses = MassPair::new(0.6, 1.1);
        let p = 0.8;
        let cases = [
            (1.0, inner_j1(p, masses).unwrap()),
            (2.0, inner_j2(p, masses).unwrap()),
            (3.0, inner_j3(p, masses).unwrap()),
        ];
        for (d, want) in cases {
            let got = quad_jd(d, p, masses, &spec).unwrap();
            assert_rel(got.value.re, want, 1e-7);
            assert!(got.abs_err < 1e-6);
            assert!(got.terms_used > 0);
        }
    }

    #[test]
    fn bubble_quadrature_confirms_the_continuous_dimension_form() {
        // Integer dimensions are the only ones the momentum integral can
        // check; the interpolating form must agree there too.
        let spec = QuadratureSpec::default();
        let masses = MassPair::new(1.4, 0.5);
        for d in [1.0, 2.0, 3.0] {
            let got = quad_jd(d, 0.45, masses, &spec).unwrap();
            let want = inner_jd_f1(d, 0.45, masses).unwrap();
            assert_rel(got.value.re, want, 1e-7);
        }
    }

    #[test]
    fn bubble_quadrature_is_symmetric_and_tolerance_consistent() {
        let spec = QuadratureSpec::default();
        let a = quad_jd(2.0, 0.7, MassPair::new(0.4, 1.3), &spec).unwrap();
        let b = quad_jd(2.0, 0.7, MassPair::new(1.3, 0.4), &spec).unwrap();
        assert!((a.value.re - b.value.re).abs() <= a.abs_err + b.abs_err);
        assert_rel(a.value.re, b.value.re, 1e-8);
        // Halving the tolerances may only move the value within the bounds.
        let tight = QuadratureSpec {
            abs_tol: 0.5 * spec.abs_tol,
            rel_tol: 0.5 * spec.rel_tol,
            max_subdivisions: spec.max_subdivisions,
        };
        let c = quad_jd(2.0, 0.7, MassPair::new(0.4, 1.3), &tight).unwrap();
        assert!((a.value.re - c.value.re).abs() <= a.abs_err + c.abs_err);
        assert!(a.value.re > 0.0);
    }

    #[test]
    fn bubble_quadrature_rejects_bad_input() {
        let spec = QuadratureSpec::default();
        assert!(matches!(
            quad_jd(4.0, 0.5, MassPair::new(1.0, 1.0), &spec),
            Err(EvalError::Domain(_))
        ));
        assert!(matches!(
            quad_jd(1.0, 0.5, MassPair::new(0.0, 1.0), &spec),
            Err(EvalError::Domain(_))
        ));
        assert!(matches!(
            quad_jd(3.0, 0.5, MassPair::new(0.0, 0.0), &spec),
            Err(EvalError::Domain(_))
        ));
        assert!(quad_jd(3.0, 0.5, MassPair::new(0.0, 0.8), &spec).is_ok());
    }

    #[test]
    fn two_loop_quadrature_matches_the_closed_form() {
        let spec = QuadratureSpec::default();
        let table = [
            (3.0, 0.7, 1.3, 0.015_293_777_729_582_379),
            (4.0, 1.0, 1.0, 0.002_956_207_767_758_559_5),
            (5.0, 1.0, 1.0, 0.000_763_879_488_094_994_24),
        ];
        for (m, p, q, want) in table {
            let got = quad_i1m(m, p, q, &spec).unwrap();
            assert_rel(got.value.re, want, 1e-6);
            let closed = c1_constant(0.5 * m - 1.0).unwrap()
                * i1m_hat(IntegralPoint::new(m, p, q), 1e-13).unwrap();
            assert_rel(got.value.re, closed, 1e-6);
        }
        assert!(matches!(
            quad_i1m(6.0, 1.0, 1.0, &spec),
            Err(EvalError::Domain(_))
        ));
        assert!(matches!(
            quad_i1m(4.0, 0.0, 1.0, &spec),
            Err(EvalError::Domain(_))
        ));
    }

    #[test]
    fn mixed_integral_quadrature_matches_the_closed_forms() {
        let spec = QuadratureSpec::default();
        let got = quad_idm_m1(2.0, 1.0, 1.0, &spec).unwrap();
        assert_rel(got.value.re, i21_closed(1.0).unwrap(), 1e-7);
        let got = quad_idm_m1(3.0, 1.0, 1.0, &spec).unwrap();
        assert_rel(got.value.re, i31_closed(1.0).unwrap(), 1e-7);
        assert_rel(got.value.re, 0.031_279_969_447_149_454, 1e-7);
        // At m = 1 the quadratic-line family is the same integral, which
        // gives its Gauss closed form an independent check away from p = 1.
        let got = quad_idm_m1(3.0, 0.7, 1.1, &spec).unwrap();
        assert_rel(got.value.re, i3m(1.0, 0.7, 1.1).unwrap(), 1e-7);
        assert_rel(got.value.re, 0.032_165_013_935_194_995, 1e-7);
        assert!(matches!(
            quad_idm_m1(1.0, 1.0, 1.0, &spec),
            Err(EvalError::Domain(_))
        ));
        assert!(matches!(
            quad_idm_m1(3.0, 1.0, 0.0, &spec),
            Err(EvalError::Domain(_))
        ));
    }

    #[test]
    fn i14_closed_form_is_the_m4_quadrature_at_unit_p() {
        let spec = QuadratureSpec::default();
        for q in [0.5, 2.0] {
            let got = quad_i1m(4.0, 1.0, q, &spec).unwrap();
            assert_rel(got.value.re, i14_closed(q).unwrap(), 1e-6);
        }
    }
}
