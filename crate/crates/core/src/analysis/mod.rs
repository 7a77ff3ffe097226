//! Teleportation fidelity: closed form, Monte Carlo estimates, noise sweeps,
//! optimal-noise search and small-noise limit checks.

mod montecarlo;
mod optimum;
mod sweep;

use serde::{Deserialize, Serialize};

use crate::qstate::PauliWeights;
use crate::{Error, Result};

pub use montecarlo::{estimate_fidelity, simulate_trial, TrialRecord};
pub use optimum::{find_optimal_noise, theorem_limit_check, LimitReport, OptimalNoise, OptimumMode};
pub use sweep::{
    default_scales, linear_scales, moving_average, sweep, SweepMetadata, SweepResult, SweepRow,
    SweepSpec, CSV_HEADER, DEFAULT_RUNS, DEFAULT_TRIALS_PER_RUN, DEFAULT_WINDOW,
};

/// The fidelity of teleportation without a quantum channel.
pub const CLASSICAL_LIMIT: f64 = 2.0 / 3.0;

/// Werner-like shared entanglement: a perfect ebit with probability
/// `werner_f`, the maximally mixed two-qubit state otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, try_from = "RawResource")]
pub struct EntanglementResource {
    werner_f: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawResource {
    werner_f: f64,
}

impl TryFrom<RawResource> for EntanglementResource {
    type Error = Error;

    fn try_from(raw: RawResource) -> Result<Self> {
        Self::new(raw.werner_f)
    }
}

impl Default for EntanglementResource {
    fn default() -> Self {
        Self::PERFECT
    }
}

impl EntanglementResource {
    pub const PERFECT: Self = Self { werner_f: 1.0 };

    pub fn new(werner_f: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&werner_f) {
            Ok(Self { werner_f })
        } else {
            Err(Error::InvalidResource(werner_f))
        }
    }

    pub fn werner_f(&self) -> f64 {
        self.werner_f
    }

    /// Mixes a perfect-ebit fidelity with the completely mixed outcome.
    pub fn mix(&self, perfect_fidelity: f64) -> f64 {
        self.werner_f * perfect_fidelity + (1.0 - self.werner_f) / 2.0
    }
}

/// `F = 1/2 + F_W P (qx + qz + qxz P) / 2`.
pub fn analytic_fidelity(weights: &PauliWeights, p: f64, resource: &EntanglementResource) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    Ok(0.5 + resource.werner_f * p * (weights.qx + weights.qz + weights.qxz * p) / 2.0)
}
