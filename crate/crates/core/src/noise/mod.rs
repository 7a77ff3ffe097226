//! Additive channel noise.
//!
//! Four families are supported: Gaussian, uniform and Laplace (all finite
//! variance) and alpha-stable. Closed-form CDFs exist for every family
//! except stable laws other than the Gaussian (`alpha = 2`) and symmetric
//! Cauchy (`alpha = 1, beta = 0`) cases; those fall back to an empirical CDF
//! built from a seeded sample.

mod stable;

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::rng::stream;
use crate::{Error, Result};

pub use stable::{characteristic_function, ALPHA_ONE_TOLERANCE};

/// Default sample count for empirical CDFs.
pub const DEFAULT_CDF_SAMPLES: usize = 1_000_000;
/// Default seed for empirical CDFs.
pub const DEFAULT_CDF_SEED: u64 = 0x5eed_cdf0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields, try_from = "RawNoise")]
pub enum NoiseModel {
    Gaussian { mu: f64, sigma: f64 },
    Uniform { mu: f64, half_width: f64 },
    Laplace { mu: f64, scale: f64 },
    AlphaStable { alpha: f64, beta: f64, gamma: f64, a: f64 },
}

// Unvalidated mirror used only for deserialization.
#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawNoise {
    Gaussian { mu: f64, sigma: f64 },
    Uniform { mu: f64, half_width: f64 },
    Laplace { mu: f64, scale: f64 },
    AlphaStable { alpha: f64, beta: f64, gamma: f64, a: f64 },
}

impl TryFrom<RawNoise> for NoiseModel {
    type Error = Error;

    fn try_from(raw: RawNoise) -> Result<Self> {
        let model = match raw {
            RawNoise::Gaussian { mu, sigma } => NoiseModel::Gaussian { mu, sigma },
            RawNoise::Uniform { mu, half_width } => NoiseModel::Uniform { mu, half_width },
            RawNoise::Laplace { mu, scale } => NoiseModel::Laplace { mu, scale },
            RawNoise::AlphaStable { alpha, beta, gamma, a } => {
                NoiseModel::AlphaStable { alpha, beta, gamma, a }
            }
        };
        model.validate()?;
        Ok(model)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseClass {
    FiniteVariance,
    InfiniteVarianceStable,
}

impl NoiseModel {
    pub fn gaussian(mu: f64, sigma: f64) -> Result<Self> {
        Self::Gaussian { mu, sigma }.validated()
    }

    pub fn uniform(mu: f64, half_width: f64) -> Result<Self> {
        Self::Uniform { mu, half_width }.validated()
    }

    pub fn laplace(mu: f64, scale: f64) -> Result<Self> {
        Self::Laplace { mu, scale }.validated()
    }

    pub fn alpha_stable(alpha: f64, beta: f64, gamma: f64, a: f64) -> Result<Self> {
        Self::AlphaStable { alpha, beta, gamma, a }.validated()
    }

    /// Symmetric Cauchy with location `a` and dispersion `gamma`.
    pub fn cauchy(a: f64, gamma: f64) -> Result<Self> {
        Self::alpha_stable(1.0, 0.0, gamma, a)
    }

    fn validated(self) -> Result<Self> {
        self.validate().map(|()| self)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |name: &str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidNoise(format!("{name} must be finite, got {v}")))
            }
        };
        let positive = |name: &str, v: f64| {
            finite(name, v)?;
            if v > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidNoise(format!("{name} must be > 0, got {v}")))
            }
        };
        match *self {
            Self::Gaussian { mu, sigma } => {
                finite("mu", mu)?;
                positive("sigma", sigma)
            }
            Self::Uniform { mu, half_width } => {
                finite("mu", mu)?;
                positive("half_width", half_width)
            }
            Self::Laplace { mu, scale } => {
                finite("mu", mu)?;
                positive("scale", scale)
            }
            Self::AlphaStable { alpha, beta, gamma, a } => {
                finite("a", a)?;
                positive("gamma", gamma)?;
                if !(alpha > 0.0 && alpha <= 2.0) {
                    return Err(Error::InvalidNoise(format!("alpha must lie in (0, 2], got {alpha}")));
                }
                if !(-1.0..=1.0).contains(&beta) {
                    return Err(Error::InvalidNoise(format!("beta must lie in [-1, 1], got {beta}")));
                }
                Ok(())
            }
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            Self::Gaussian { .. } => "gaussian",
            Self::Uniform { .. } => "uniform",
            Self::Laplace { .. } => "laplace",
            Self::AlphaStable { .. } => "alpha_stable",
        }
    }

    pub fn classify(&self) -> NoiseClass {
        match *self {
            Self::AlphaStable { alpha, .. } if alpha < 2.0 => NoiseClass::InfiniteVarianceStable,
            _ => NoiseClass::FiniteVariance,
        }
    }

    /// Mean for finite-variance models, location for stable ones.
    pub fn center(&self) -> f64 {
        match *self {
            Self::Gaussian { mu, .. } | Self::Uniform { mu, .. } | Self::Laplace { mu, .. } => mu,
            Self::AlphaStable { a, .. } => a,
        }
    }

    /// Variance for finite-variance models (including `alpha = 2`),
    /// dispersion `gamma` otherwise.
    pub fn dispersion_measure(&self) -> f64 {
        match *self {
            Self::Gaussian { sigma, .. } => sigma * sigma,
            Self::Uniform { half_width, .. } => half_width * half_width / 3.0,
            Self::Laplace { scale, .. } => 2.0 * scale * scale,
            Self::AlphaStable { alpha, gamma, .. } if alpha >= 2.0 => 2.0 * gamma,
            Self::AlphaStable { gamma, .. } => gamma,
        }
    }

    /// The family's free scale parameter: `sigma`, `half_width`, `scale` or `gamma`.
    pub fn spread(&self) -> f64 {
        match *self {
            Self::Gaussian { sigma, .. } => sigma,
            Self::Uniform { half_width, .. } => half_width,
            Self::Laplace { scale, .. } => scale,
            Self::AlphaStable { gamma, .. } => gamma,
        }
    }

    /// Same family and center with a different scale parameter.
    pub fn with_spread(&self, spread: f64) -> Result<Self> {
        let mut m = *self;
        match &mut m {
            Self::Gaussian { sigma, .. } => *sigma = spread,
            Self::Uniform { half_width, .. } => *half_width = spread,
            Self::Laplace { scale, .. } => *scale = spread,
            Self::AlphaStable { gamma, .. } => *gamma = spread,
        }
        m.validated()
    }

    /// Same family and scale with a different center.
    pub fn with_center(&self, center: f64) -> Result<Self> {
        let mut m = *self;
        match &mut m {
            Self::Gaussian { mu, .. } | Self::Uniform { mu, .. } | Self::Laplace { mu, .. } => {
                *mu = center
            }
            Self::AlphaStable { a, .. } => *a = center,
        }
        m.validated()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            Self::Gaussian { mu, sigma } => {
                let z: f64 = rng.sample(StandardNormal);
                mu + sigma * z
            }
            Self::Uniform { mu, half_width } => {
                let u: f64 = rng.random();
                mu + half_width * (2.0 * u - 1.0)
            }
            Self::Laplace { mu, scale } => {
                let u: f64 = rng.random::<f64>() - 0.5;
                mu - scale * u.signum() * (1.0 - 2.0 * u.abs()).ln()
            }
            Self::AlphaStable { alpha, beta, gamma, a } => stable::sample(alpha, beta, gamma, a, rng),
        }
    }

    /// Closed-form `P{N <= x}`, if this model has one.
    pub fn closed_form_cdf(&self, x: f64) -> Option<f64> {
        let p = match *self {
            Self::Gaussian { mu, sigma } => normal_cdf((x - mu) / sigma),
            Self::Uniform { mu, half_width } => ((x - mu + half_width) / (2.0 * half_width)).clamp(0.0, 1.0),
            Self::Laplace { mu, scale } => {
                let z = (x - mu) / scale;
                if z < 0.0 {
                    0.5 * z.exp()
                } else {
                    1.0 - 0.5 * (-z).exp()
                }
            }
            Self::AlphaStable { alpha: 2.0, gamma, a, .. } => {
                normal_cdf((x - a) / (2.0 * gamma).sqrt())
            }
            Self::AlphaStable { alpha, beta, gamma, a }
                if (alpha - 1.0).abs() < ALPHA_ONE_TOLERANCE && beta == 0.0 =>
            {
                0.5 + ((x - a) / gamma).atan() / PI
            }
            Self::AlphaStable { .. } => return None,
        };
        Some(p)
    }

    pub fn has_closed_form_cdf(&self) -> bool {
        self.closed_form_cdf(0.0).is_some()
    }

    /// A CDF evaluator: closed form when available, otherwise an empirical
    /// CDF built from `options.samples` seeded draws.
    pub fn cdf_with(&self, options: &EmpiricalCdfOptions) -> Cdf {
        if self.has_closed_form_cdf() {
            return Cdf::Closed(*self);
        }
        let mut rng = stream(options.seed, 0);
        let mut sorted: Vec<f64> = (0..options.samples.max(1)).map(|_| self.sample(&mut rng)).collect();
        sorted.sort_unstable_by(f64::total_cmp);
        Cdf::Empirical { model: *self, sorted }
    }

    /// `P{N <= x}` with default empirical options. Models without a closed
    /// form rebuild their empirical table on every call; use [`Self::cdf_with`]
    /// for repeated evaluation.
    pub fn cdf(&self, x: f64) -> CdfValue {
        match self.closed_form_cdf(x) {
            Some(p) => CdfValue { p, samples: None },
            None => self.cdf_with(&EmpiricalCdfOptions::default()).eval(x),
        }
    }
}

/// Standard normal CDF.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z * FRAC_1_SQRT_2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EmpiricalCdfOptions {
    pub samples: usize,
    pub seed: u64,
}

impl Default for EmpiricalCdfOptions {
    fn default() -> Self {
        Self {
            samples: DEFAULT_CDF_SAMPLES,
            seed: DEFAULT_CDF_SEED,
        }
    }
}

/// A CDF value; `samples` is set when it is an empirical estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CdfValue {
    pub p: f64,
    pub samples: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cdf {
    Closed(NoiseModel),
    Empirical { model: NoiseModel, sorted: Vec<f64> },
}

impl Cdf {
    pub fn model(&self) -> &NoiseModel {
        match self {
            Cdf::Closed(m) | Cdf::Empirical { model: m, .. } => m,
        }
    }

    pub fn samples(&self) -> Option<usize> {
        match self {
            Cdf::Closed(_) => None,
            Cdf::Empirical { sorted, .. } => Some(sorted.len()),
        }
    }

    pub fn eval(&self, x: f64) -> CdfValue {
        match self {
            Cdf::Closed(m) => CdfValue {
                p: m.closed_form_cdf(x).expect("closed-form model"),
                samples: None,
            },
            Cdf::Empirical { sorted, .. } => CdfValue {
                p: sorted.partition_point(|&v| v <= x) as f64 / sorted.len() as f64,
                samples: Some(sorted.len()),
            },
        }
    }
}
