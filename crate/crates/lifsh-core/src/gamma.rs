//! Real gamma function, reciprocal gamma and Pochhammer symbols.
//!
//! The implementation uses the Lanczos approximation with the coefficient set
//! from Pugh's thesis (g = 10.900511, eleven terms), which keeps the relative
//! error near machine precision over the range exercised here. Arguments left
//! of 1/2 go through the reflection formula.

use std::f64::consts::{E, PI};

const GAMMA_R: f64 = 10.900511;

const GAMMA_DK: [f64; 11] = [
    2.485_740_891_387_535_5e-5,
    1.051_423_785_817_219_7,
    -3.456_870_972_220_162_5,
    4.512_277_094_668_948,
    -2.982_852_253_235_766_4,
    1.056_397_115_771_267,
    -1.954_287_731_916_458_7e-1,
    1.709_705_434_044_412e-2,
    -5.719_261_174_043_057e-4,
    4.633_994_733_599_057e-6,
    -2.719_949_084_886_077_2e-9,
];

/// The constant `2 sqrt(e / pi)` appearing in Pugh's form of the series.
const TWO_SQRT_E_OVER_PI: f64 = 1.860_382_734_205_265_7;

/// Whether `x` is zero or a negative integer, the pole set of the gamma
/// function.
pub fn is_nonpos_int(x: f64) -> bool {
    x <= 0.0 && x == x.floor() && x.is_finite()
}

fn lanczos_sum(shifted: impl Fn(usize) -> f64) -> f64 {
    GAMMA_DK
        .iter()
        .enumerate()
        .skip(1)
        .fold(GAMMA_DK[0], |sum, (i, dk)| sum + dk / shifted(i))
}

/// Gamma function for real arguments. Returns `inf` or `nan` on the poles at
/// zero and the negative integers; use [`recip_gamma`] when a pole must map
/// to an exact zero.
pub fn gamma_real(x: f64) -> f64 {
    if is_nonpos_int(x) {
        return f64::NAN;
    }
    if x < 0.5 {
        let s = lanczos_sum(|i| i as f64 - x);
        PI / ((PI * x).sin() * s * TWO_SQRT_E_OVER_PI * ((0.5 - x + GAMMA_R) / E).powf(0.5 - x))
    } else {
        let s = lanczos_sum(|i| x + i as f64 - 1.0);
        s * TWO_SQRT_E_OVER_PI * ((x - 0.5 + GAMMA_R) / E).powf(x - 0.5)
    }
}

/// Natural logarithm of the gamma function, restricted to `x > 0` where the
/// gamma function is positive.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0, "ln_gamma needs a positive argument, got {x}");
    if x < 0.5 {
        let s = lanczos_sum(|i| i as f64 - x);
        PI.ln()
            - (PI * x).sin().ln()
            - s.ln()
            - TWO_SQRT_E_OVER_PI.ln()
            - (0.5 - x) * ((0.5 - x + GAMMA_R) / E).ln()
    } else {
        let s = lanczos_sum(|i| x + i as f64 - 1.0);
        s.ln() + TWO_SQRT_E_OVER_PI.ln() + (x - 0.5) * ((x - 0.5 + GAMMA_R) / E).ln()
    }
}

/// Reciprocal gamma function `1 / Gamma(x)`. This is entire: the poles of the
/// gamma function become exact zeros, which lets connection formulas drop
/// terms that a naive `1.0 / gamma_real(x)` would turn into `nan`.
pub fn recip_gamma(x: f64) -> f64 {
    if is_nonpos_int(x) {
        0.0
    } else {
        1.0 / gamma_real(x)
    }
}

/// Pochhammer symbol (rising factorial) `(lambda)_n`.
pub fn pochhammer(lambda: f64, n: usize) -> f64 {
    let mut product = 1.0;
    for k in 0..n {
        product *= lambda + k as f64;
    }
    product
}
