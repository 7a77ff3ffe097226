//! Run configuration: a JSON file validated up front into core types.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use teleport_sr::analysis::{default_scales, linear_scales, SweepSpec, DEFAULT_RUNS, DEFAULT_TRIALS_PER_RUN, DEFAULT_WINDOW};
use teleport_sr::noise::EmpiricalCdfOptions;
use teleport_sr::analysis::EntanglementResource;
use teleport_sr::channel::ChannelConfig;
use teleport_sr::noise::NoiseModel;
use teleport_sr::qstate::QubitState;
use teleport_sr::qstate::Normalization;

use crate::error::CliError;

const DEFAULT_GRID_POINTS: usize = 60;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Amplitude {
    Real(f64),
    Complex([f64; 2]),
}

impl Amplitude {
    fn value(&self) -> Complex64 {
        match *self {
            Amplitude::Real(re) => Complex64::new(re, 0.0),
            Amplitude::Complex([re, im]) => Complex64::new(re, im),
        }
    }
}

/// A named preset or explicit amplitudes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateSpec {
    Preset(String),
    Amplitudes { alpha: Amplitude, beta: Amplitude },
}

impl Default for StateSpec {
    fn default() -> Self {
        StateSpec::Preset("plus".into())
    }
}

impl StateSpec {
    pub fn resolve(&self, policy: Normalization) -> Result<QubitState, CliError> {
        match self {
            StateSpec::Preset(name) => match name.as_str() {
                "zero" => Ok(QubitState::zero()),
                "one" => Ok(QubitState::one()),
                "plus" => Ok(QubitState::plus()),
                "minus" => Ok(QubitState::minus()),
                "i-plus" => Ok(QubitState::i_plus()),
                other => Err(CliError::Config(format!(
                    "state: unknown preset {other:?} (expected zero, one, plus, minus, i-plus)"
                ))),
            },
            StateSpec::Amplitudes { alpha, beta } => {
                QubitState::with_normalization(alpha.value(), beta.value(), policy)
                    .map_err(|e| CliError::Config(format!("state: {e}")))
            }
        }
    }
}

/// Noise descriptor. The scale parameter may be omitted for commands that
/// sweep or search over it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum NoiseSpec {
    Gaussian {
        #[serde(default)]
        mu: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sigma: Option<f64>,
    },
    Uniform {
        #[serde(default)]
        mu: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        half_width: Option<f64>,
    },
    Laplace {
        #[serde(default)]
        mu: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        scale: Option<f64>,
    },
    AlphaStable {
        alpha: f64,
        #[serde(default)]
        beta: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        gamma: Option<f64>,
        #[serde(default)]
        a: f64,
    },
}

impl NoiseSpec {
    fn spread(&self) -> Option<f64> {
        match *self {
            NoiseSpec::Gaussian { sigma, .. } => sigma,
            NoiseSpec::Uniform { half_width, .. } => half_width,
            NoiseSpec::Laplace { scale, .. } => scale,
            NoiseSpec::AlphaStable { gamma, .. } => gamma,
        }
    }

    fn with_spread(&self, spread: f64) -> Result<NoiseModel, teleport_sr::Error> {
        match *self {
            NoiseSpec::Gaussian { mu, .. } => NoiseModel::gaussian(mu, spread),
            NoiseSpec::Uniform { mu, .. } => NoiseModel::uniform(mu, spread),
            NoiseSpec::Laplace { mu, .. } => NoiseModel::laplace(mu, spread),
            NoiseSpec::AlphaStable { alpha, beta, a, .. } => NoiseModel::alpha_stable(alpha, beta, spread, a),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scales: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runs: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SimulateSection {
    pub trials: usize,
}

impl Default for SimulateSection {
    fn default() -> Self {
        Self { trials: 100_000 }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    /// Closed form when the family has one, empirical otherwise.
    #[default]
    Auto,
    Analytic,
    Empirical,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OptimumSection {
    pub bounds: [f64; 2],
    pub mode: SearchMode,
}

impl Default for OptimumSection {
    fn default() -> Self {
        Self {
            bounds: [1e-3, 10.0],
            mode: SearchMode::Auto,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TheoremSection {
    pub scales: Vec<f64>,
    pub tolerance: f64,
}

impl Default for TheoremSection {
    fn default() -> Self {
        Self {
            scales: vec![1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6],
            tolerance: 1e-5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dir: Option<PathBuf>,
    pub stem: String,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self {
            dir: None,
            stem: "sweep".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub state: StateSpec,
    #[serde(default)]
    pub normalize: bool,
    pub channel: ChannelConfig,
    pub noise: NoiseSpec,
    #[serde(default)]
    pub resource: EntanglementResource,
    #[serde(default)]
    pub sweep: SweepSection,
    #[serde(default)]
    pub simulate: SimulateSection,
    #[serde(default)]
    pub optimum: OptimumSection,
    #[serde(default)]
    pub theorem_check: TheoremSection,
    #[serde(default)]
    pub empirical_cdf: EmpiricalCdfOptions,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output: OutputSection,
}

/// A config that has passed every invariant check.
#[derive(Clone, Debug)]
pub struct Validated {
    pub raw: RunConfig,
    pub state: QubitState,
    pub channel: ChannelConfig,
    /// Family with its configured scale, or scale 1 as a placeholder.
    pub family: NoiseModel,
    /// The concrete model, present when the config gives a scale.
    pub noise: Option<NoiseModel>,
    pub resource: EntanglementResource,
    pub scales: Vec<f64>,
    pub seed: u64,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn validate(self, seed_override: Option<u64>) -> Result<Validated, CliError> {
        let policy = if self.normalize {
            Normalization::Normalize
        } else {
            Normalization::Reject
        };
        let state = self.state.resolve(policy)?;
        let noise_err = |e: teleport_sr::Error| CliError::Config(format!("noise: {e}"));
        let noise = self.noise.spread().map(|s| self.noise.with_spread(s)).transpose().map_err(noise_err)?;
        let family = match noise {
            Some(m) => m,
            None => self.noise.with_spread(1.0).map_err(noise_err)?,
        };

        let sweep = &self.sweep;
        let scales = match (&sweep.scales, sweep.bounds) {
            (Some(_), Some(_)) => {
                return Err(CliError::Config("sweep: give either scales or bounds, not both".into()))
            }
            (Some(s), None) => s.clone(),
            (None, Some([lo, hi])) => {
                if !(lo > 0.0 && hi > lo) {
                    return Err(CliError::Config(format!("sweep: bounds must satisfy 0 < lo < hi, got [{lo}, {hi}]")));
                }
                linear_scales(lo, hi, sweep.count.unwrap_or(DEFAULT_GRID_POINTS))
            }
            (None, None) => default_scales(),
        };
        if scales.is_empty() {
            return Err(CliError::Config("sweep: empty scale grid".into()));
        }
        if scales.iter().any(|s| !(s.is_finite() && *s > 0.0)) || scales.windows(2).any(|w| w[1] <= w[0]) {
            return Err(CliError::Config("sweep: scales must be positive and strictly increasing".into()));
        }
        let window = sweep.window.unwrap_or(DEFAULT_WINDOW);
        if window == 0 || window.is_multiple_of(2) {
            return Err(CliError::Config(format!("sweep: window must be odd and >= 1, got {window}")));
        }
        if sweep.runs == Some(0) || sweep.trials == Some(0) || self.simulate.trials == 0 {
            return Err(CliError::Config("runs and trials must be >= 1".into()));
        }
        if self.empirical_cdf.samples == 0 {
            return Err(CliError::Config("empirical_cdf: samples must be >= 1".into()));
        }
        let [lo, hi] = self.optimum.bounds;
        if !(lo > 0.0 && hi > lo && hi.is_finite()) {
            return Err(CliError::Config(format!("optimum: bounds must satisfy 0 < lo < hi, got [{lo}, {hi}]")));
        }
        let th = &self.theorem_check.scales;
        if th.is_empty() || th.iter().any(|s| !(*s > 0.0)) || th.windows(2).any(|w| w[1] >= w[0]) {
            return Err(CliError::Config("theorem_check: scales must be positive and descend toward 0".into()));
        }

        Ok(Validated {
            state,
            channel: self.channel,
            family,
            noise,
            resource: self.resource,
            scales,
            seed: seed_override.unwrap_or(self.seed),
            raw: self,
        })
    }
}

impl Validated {
    pub fn require_noise(&self) -> Result<NoiseModel, CliError> {
        self.noise.ok_or_else(|| {
            CliError::Config("noise: this command needs the scale parameter (sigma, half_width, scale or gamma)".into())
        })
    }

    pub fn sweep_spec(&self) -> SweepSpec {
        let mut spec = SweepSpec::new(self.state, self.channel, self.family);
        spec.scales = self.scales.clone();
        spec.runs = self.raw.sweep.runs.unwrap_or(DEFAULT_RUNS);
        spec.trials_per_run = self.raw.sweep.trials.unwrap_or(DEFAULT_TRIALS_PER_RUN);
        spec.window = self.raw.sweep.window.unwrap_or(DEFAULT_WINDOW);
        spec.resource = self.resource;
        spec.seed = self.seed;
        spec.empirical_cdf = self.raw.empirical_cdf;
        spec
    }

    /// The effective config (with the seed override applied) as canonical JSON.
    pub fn canonical_json(&self) -> String {
        let mut raw = self.raw.clone();
        raw.seed = self.seed;
        serde_json::to_string(&raw).expect("config is serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use teleport_sr::analysis::sweep;

    const PAPER: &str = r#"{
        "state": "plus",
        "channel": {"amplitude": 1.1, "threshold": 1.6},
        "noise": {"kind": "gaussian", "mu": 0.0, "sigma": 1.42}
    }"#;

    #[test]
    fn parses_minimal_config() {
        let v = RunConfig::parse(PAPER).unwrap().validate(None).unwrap();
        assert_eq!(v.state, QubitState::plus());
        assert_eq!(v.noise, Some(NoiseModel::gaussian(0.0, 1.42).unwrap()));
        assert_eq!(v.scales.len(), 60);
        assert_eq!(v.sweep_spec().runs, 100);
    }

    #[test]
    fn rejects_unknown_keys() {
        let bad = PAPER.replacen("\"state\"", "\"colour\": 1, \"state\"", 1);
        assert!(matches!(RunConfig::parse(&bad), Err(CliError::Config(_))));
        let bad = PAPER.replace("\"threshold\": 1.6", "\"threshold\": 1.6, \"gain\": 2");
        assert!(RunConfig::parse(&bad).is_err());
    }

    #[test]
    fn invariant_violations_are_named() {
        let bad = PAPER.replace("\"amplitude\": 1.1", "\"amplitude\": 2.0");
        let msg = RunConfig::parse(&bad).unwrap_err().to_string();
        assert!(msg.contains("threshold"), "{msg}");

        let bad = PAPER.replace("\"plus\"", r#"{"alpha": 1.0, "beta": 1.0}"#);
        let msg = RunConfig::parse(&bad).unwrap().validate(None).unwrap_err().to_string();
        assert!(msg.contains("not normalized"), "{msg}");

        let ok = bad.replace("\"state\"", "\"normalize\": true, \"state\"");
        let v = RunConfig::parse(&ok).unwrap().validate(None).unwrap();
        assert!((v.state.alpha().re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);

        let bad = PAPER.replace("\"sigma\": 1.42", "\"sigma\": -1");
        assert!(RunConfig::parse(&bad).unwrap().validate(None).unwrap_err().to_string().contains("sigma"));
    }

    #[test]
    fn complex_amplitudes_and_missing_scale() {
        let text = r#"{
            "state": {"alpha": [0.6, 0.0], "beta": [0.0, 0.8]},
            "channel": {"amplitude": 1.1, "threshold": 1.6},
            "noise": {"kind": "alpha_stable", "alpha": 1.0, "a": 0.7},
            "sweep": {"bounds": [0.1, 2.0], "count": 5}
        }"#;
        let v = RunConfig::parse(text).unwrap().validate(Some(9)).unwrap();
        assert_eq!(v.state.beta(), Complex64::new(0.0, 0.8));
        assert!(v.noise.is_none() && v.require_noise().is_err());
        assert_eq!(v.family.center(), 0.7);
        assert_eq!(v.scales.len(), 5);
        assert_eq!(v.seed, 9);
    }

    #[test]
    fn sweep_metadata_round_trips_into_a_config() {
        let v = RunConfig::parse(PAPER).unwrap().validate(None).unwrap();
        let mut spec = v.sweep_spec();
        spec.runs = 1;
        spec.trials_per_run = 1;
        let result = sweep(&spec).unwrap();
        let meta: serde_json::Value = serde_json::from_str(&result.to_json()).unwrap();
        let m = &meta["metadata"];
        let text = serde_json::json!({
            "state": m["state"],
            "channel": m["channel"],
            "noise": m["noise_family"],
            "resource": {"werner_f": m["werner_f"]},
            "seed": m["seed"],
        })
        .to_string();
        let back = RunConfig::parse(&text).unwrap().validate(None).unwrap();
        assert_eq!(back.state, v.state);
        assert_eq!(back.channel, v.channel);
        assert_eq!(back.noise, v.noise);
        let again = RunConfig::parse(&v.canonical_json()).unwrap();
        assert_eq!(again, v.raw);
    }
}
