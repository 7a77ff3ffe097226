//! Chambers–Mallows–Stuck sampling for alpha-stable laws.
//!
//! Parameterization: characteristic function
//!
//! ```text
//! alpha != 1:  exp{ i a w - gamma |w|^alpha (1 + i beta sign(w) tan(pi alpha / 2)) }
//! alpha == 1:  exp{ i a w - gamma |w| (1 - 2 i beta sign(w) ln|w| / pi) }
//! ```
//!
//! This is the Samorodnitsky–Taqqu `S_alpha(sigma, beta', mu)` family with
//! `sigma = gamma^(1/alpha)`, `mu = a` and the skew sign flipped,
//! `beta' = -beta`. At `alpha = 2` the law is Gaussian with variance
//! `2 gamma`; at `alpha = 1, beta = 0` it is Cauchy with scale `gamma`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Exp1, Open01};

/// `|alpha - 1|` below which the dedicated `alpha = 1` branch is used.
pub const ALPHA_ONE_TOLERANCE: f64 = 1e-8;

pub(crate) fn sample<R: Rng + ?Sized>(alpha: f64, beta: f64, gamma: f64, a: f64, rng: &mut R) -> f64 {
    let u: f64 = rng.sample(Open01);
    let v = PI * (u - 0.5);
    let w: f64 = rng.sample(Exp1);
    let skew = -beta;

    if (alpha - 1.0).abs() < ALPHA_ONE_TOLERANCE {
        let sigma = gamma;
        let shifted = FRAC_PI_2 + skew * v;
        let x = (shifted * v.tan() - skew * ((FRAC_PI_2 * w * v.cos()) / shifted).ln()) / FRAC_PI_2;
        sigma * x + skew * sigma * sigma.ln() / FRAC_PI_2 + a
    } else {
        let sigma = gamma.powf(1.0 / alpha);
        let t = skew * (PI * alpha / 2.0).tan();
        let b = t.atan() / alpha;
        let s = (1.0 + t * t).powf(1.0 / (2.0 * alpha));
        let arg = alpha * (v + b);
        let x = s * arg.sin() / v.cos().powf(1.0 / alpha)
            * ((v - arg).cos() / w).powf((1.0 - alpha) / alpha);
        sigma * x + a
    }
}

/// The characteristic function in the parameterization above.
pub fn characteristic_function(alpha: f64, beta: f64, gamma: f64, a: f64, omega: f64) -> Complex64 {
    let sign = if omega > 0.0 {
        1.0
    } else if omega < 0.0 {
        -1.0
    } else {
        0.0
    };
    let abs = omega.abs();
    let exponent = if (alpha - 1.0).abs() < ALPHA_ONE_TOLERANCE {
        let log = if abs > 0.0 { abs.ln() } else { 0.0 };
        Complex64::new(0.0, a * omega) - gamma * abs * Complex64::new(1.0, -2.0 * beta * sign * log / PI)
    } else {
        Complex64::new(0.0, a * omega)
            - gamma * abs.powf(alpha) * Complex64::new(1.0, beta * sign * (alpha * PI / 2.0).tan())
    };
    exponent.exp()
}
