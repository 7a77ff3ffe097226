//! Noise sweeps: closed-form fidelity plus `runs` independent Monte Carlo
//! estimates at each scale, summarised as mean, min, max and a centered
//! moving average of the mean.
//!
//! Each `(scale index, run)` cell draws from its own stream derived from
//! the master seed, so the output is bit-identical whatever the number of
//! worker threads.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::analysis::montecarlo::estimate_with_weights;
use crate::analysis::{analytic_fidelity, EntanglementResource};
use crate::channel::{detection_probabilities_with, ChannelConfig};
use crate::noise::{EmpiricalCdfOptions, NoiseModel};
use crate::qstate::QubitState;
use crate::rng::{cell_stream_id, stream};
use crate::{Error, Result};

pub const CSV_HEADER: &str = "scale,scale_squared,analytic_f,mc_mean,mc_min,mc_max,mc_smoothed";
pub const DEFAULT_RUNS: usize = 100;
pub const DEFAULT_TRIALS_PER_RUN: usize = 10_000;
pub const DEFAULT_WINDOW: usize = 5;
pub const DEFAULT_SCALE_MIN: f64 = 0.01;
pub const DEFAULT_SCALE_MAX: f64 = 3.0;
pub const DEFAULT_SCALE_COUNT: usize = 60;

/// `count` evenly spaced points from `lo` to `hi` inclusive.
pub fn linear_scales(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![hi],
        _ => (0..count)
            .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
            .collect(),
    }
}

/// 60 points from 0.01 to 3.0.
pub fn default_scales() -> Vec<f64> {
    linear_scales(DEFAULT_SCALE_MIN, DEFAULT_SCALE_MAX, DEFAULT_SCALE_COUNT)
}

/// Centered moving average over an odd `window`, truncated at the edges.
pub fn moving_average(values: &[f64], window: usize) -> Result<Vec<f64>> {
    if window == 0 || window.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "smoothing window must be odd and >= 1, got {window}"
        )));
    }
    let half = window / 2;
    Ok((0..values.len())
        .map(|i| {
            let lo = i.saturating_sub(half);
            let hi = (i + half + 1).min(values.len());
            values[lo..hi].iter().sum::<f64>() / (hi - lo) as f64
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub state: QubitState,
    pub channel: ChannelConfig,
    /// Family and center; its scale parameter is replaced by each grid value.
    pub family: NoiseModel,
    pub scales: Vec<f64>,
    pub runs: usize,
    pub trials_per_run: usize,
    pub resource: EntanglementResource,
    pub window: usize,
    pub seed: u64,
    pub empirical_cdf: EmpiricalCdfOptions,
}

impl SweepSpec {
    /// Default grid, 100 runs of 10 000 trials, window 5.
    pub fn new(state: QubitState, channel: ChannelConfig, family: NoiseModel) -> Self {
        Self {
            state,
            channel,
            family,
            scales: default_scales(),
            runs: DEFAULT_RUNS,
            trials_per_run: DEFAULT_TRIALS_PER_RUN,
            resource: EntanglementResource::PERFECT,
            window: DEFAULT_WINDOW,
            seed: 0,
            empirical_cdf: EmpiricalCdfOptions::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.scales.is_empty() {
            return Err(Error::InvalidGrid("empty scale grid".into()));
        }
        if self.scales.iter().any(|s| !(s.is_finite() && *s > 0.0)) {
            return Err(Error::InvalidGrid("scales must be finite and positive".into()));
        }
        if self.scales.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidGrid("scales must be strictly increasing".into()));
        }
        if self.runs == 0 || self.trials_per_run == 0 {
            return Err(Error::InvalidArgument("runs and trials must be >= 1".into()));
        }
        if self.window == 0 || self.window.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "smoothing window must be odd and >= 1, got {}",
                self.window
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub scale: f64,
    pub scale_squared: f64,
    pub analytic_f: f64,
    pub mc_mean: f64,
    pub mc_min: f64,
    pub mc_max: f64,
    pub mc_smoothed: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepMetadata {
    pub channel: ChannelConfig,
    pub noise_family: NoiseModel,
    pub state: QubitState,
    pub werner_f: f64,
    pub runs: usize,
    pub trials_per_run: usize,
    pub seed: u64,
    pub smoothing_window: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub empirical_cdf_samples: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepResult {
    pub metadata: SweepMetadata,
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.rows.len() + 1));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.scale, r.scale_squared, r.analytic_f, r.mc_mean, r.mc_min, r.mc_max, r.mc_smoothed
            );
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sweep result is always serializable")
    }

    /// Row with the largest smoothed Monte Carlo fidelity.
    pub fn smoothed_peak(&self) -> Option<&SweepRow> {
        self.rows.iter().max_by(|a, b| a.mc_smoothed.total_cmp(&b.mc_smoothed))
    }

    /// Row with the largest closed-form fidelity.
    pub fn analytic_peak(&self) -> Option<&SweepRow> {
        self.rows.iter().max_by(|a, b| a.analytic_f.total_cmp(&b.analytic_f))
    }
}

#[cfg(feature = "parallel")]
fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

pub fn sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let models = spec
        .scales
        .iter()
        .map(|&s| spec.family.with_spread(s))
        .collect::<Result<Vec<_>>>()?;
    let weights = spec.state.pauli_weights();

    let analytic = map_indexed(models.len(), |i| {
        let cdf = models[i].cdf_with(&spec.empirical_cdf);
        let stats = detection_probabilities_with(&spec.channel, &cdf);
        analytic_fidelity(&weights, stats.p(), &spec.resource).map(|f| (f, stats.empirical_samples()))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let runs = spec.runs;
    let estimates = map_indexed(models.len() * runs, |cell| {
        let (i, run) = (cell / runs, cell % runs);
        let mut rng = stream(spec.seed, cell_stream_id(i, run));
        estimate_with_weights(&weights, &spec.channel, &models[i], &spec.resource, spec.trials_per_run, &mut rng)
    });

    let mut rows = Vec::with_capacity(models.len());
    for (i, &scale) in spec.scales.iter().enumerate() {
        let per_run = &estimates[i * runs..(i + 1) * runs];
        let mean = per_run.iter().sum::<f64>() / runs as f64;
        let min = per_run.iter().copied().fold(f64::INFINITY, f64::min);
        let max = per_run.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        rows.push(SweepRow {
            scale,
            scale_squared: scale * scale,
            analytic_f: analytic[i].0,
            mc_mean: mean,
            mc_min: min,
            mc_max: max,
            mc_smoothed: 0.0,
        });
    }
    let means: Vec<f64> = rows.iter().map(|r| r.mc_mean).collect();
    for (row, s) in rows.iter_mut().zip(moving_average(&means, spec.window)?) {
        row.mc_smoothed = s;
    }

    Ok(SweepResult {
        metadata: SweepMetadata {
            channel: spec.channel,
            noise_family: spec.family,
            state: spec.state,
            werner_f: spec.resource.werner_f(),
            runs,
            trials_per_run: spec.trials_per_run,
            seed: spec.seed,
            smoothing_window: spec.window,
            empirical_cdf_samples: analytic.iter().find_map(|(_, n)| *n),
        },
        rows,
    })
}
