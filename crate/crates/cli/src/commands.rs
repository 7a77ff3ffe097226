use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use teleport_sr::analysis::{
    analytic_fidelity, estimate_fidelity, find_optimal_noise, sweep, theorem_limit_check, OptimumMode, SweepRow,
    CLASSICAL_LIMIT,
};
use teleport_sr::channel::{detection_probabilities_with, forbidden_interval, sr_predicted};
use teleport_sr::rng::stream;

use crate::config::{SearchMode, Validated};
use crate::error::CliError;
use crate::output::{object, render, tidy_value, write_atomic, Format};
use crate::svg;

/// What a command prints and the exit code it ends with.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }
}

pub struct SweepOptions {
    pub out: Option<PathBuf>,
    pub svg: bool,
}

pub fn config_hash(cfg: &Validated) -> String {
    Sha256::digest(cfg.canonical_json().as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn weights(cfg: &Validated, format: Format) -> Outcome {
    let w = cfg.state.pauli_weights();
    let v = tidy_value(json!({"qx": w.qx, "qz": w.qz, "qxz": w.qxz}));
    Outcome::ok(render(&v, format))
}

pub fn check_interval(cfg: &Validated, format: Format) -> Outcome {
    let fi = forbidden_interval(&cfg.channel);
    let predicted = sr_predicted(&cfg.channel, &cfg.family).ok();
    let v = tidy_value(json!({
        "interval": [fi.lo, fi.hi],
        "center": cfg.family.center(),
        "sr_predicted": predicted,
    }));
    Outcome::ok(render(&v, format))
}

pub fn probs(cfg: &Validated, format: Format) -> Result<Outcome, CliError> {
    let noise = cfg.require_noise()?;
    let stats = detection_probabilities_with(&cfg.channel, &noise.cdf_with(&cfg.raw.empirical_cdf));
    let mut v = object([
        ("p00", stats.p00().into()),
        ("p01", stats.p01().into()),
        ("p10", stats.p10().into()),
        ("p11", stats.p11().into()),
        ("p", stats.p().into()),
    ]);
    if let Some(n) = stats.empirical_samples() {
        v["empirical_samples"] = n.into();
    }
    Ok(Outcome::ok(render(&tidy_value(v), format)))
}

pub fn simulate(cfg: &Validated, format: Format) -> Result<Outcome, CliError> {
    let noise = cfg.require_noise()?;
    let trials = cfg.raw.simulate.trials;
    let mut rng = stream(cfg.seed, 0);
    let estimate = estimate_fidelity(&cfg.state, &cfg.channel, &noise, &cfg.resource, trials, &mut rng)?;
    let stats = detection_probabilities_with(&cfg.channel, &noise.cdf_with(&cfg.raw.empirical_cdf));
    let analytic = analytic_fidelity(&cfg.state.pauli_weights(), stats.p(), &cfg.resource)?;
    let v = object([
        ("estimate", estimate.into()),
        ("analytic", analytic.into()),
        ("trials", trials.into()),
        ("seed", cfg.seed.into()),
    ]);
    Ok(Outcome::ok(render(&v, format)))
}

fn peak_json(row: Option<&SweepRow>, value: impl Fn(&SweepRow) -> f64) -> Value {
    row.map_or(Value::Null, |r| json!({"scale": r.scale, "fidelity": value(r)}))
}

pub fn sweep_cmd(cfg: &Validated, opts: &SweepOptions, format: Format) -> Result<Outcome, CliError> {
    let spec = cfg.sweep_spec();
    let result = sweep(&spec)?;

    let dir = opts.out.clone().or_else(|| cfg.raw.output.dir.clone()).unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let stem = &cfg.raw.output.stem;
    let path = |ext: &str| dir.join(format!("{stem}.{ext}"));
    let hash = config_hash(cfg);

    let csv = result.to_csv();
    write_atomic(&path("csv"), csv.as_bytes())?;
    write_atomic(&path("json"), format!("{}\n", result.to_json()).as_bytes())?;
    let svg_path = if opts.svg {
        let p = path("svg");
        write_atomic(&p, svg::render(&result, &hash).as_bytes())?;
        Some(p)
    } else {
        None
    };

    let stdout = match format {
        Format::Csv => csv,
        Format::Json => {
            let show = |p: &Path| Value::from(p.display().to_string());
            let v = json!({
                "csv": show(&path("csv")),
                "json": show(&path("json")),
                "svg": svg_path.as_deref().map(show),
                "config_sha256": hash,
                "rows": result.rows.len(),
                "smoothed_peak": peak_json(result.smoothed_peak(), |r| r.mc_smoothed),
                "analytic_peak": peak_json(result.analytic_peak(), |r| r.analytic_f),
            });
            format!("{v}\n")
        }
    };
    Ok(Outcome::ok(stdout))
}

pub fn optimum(cfg: &Validated, format: Format) -> Result<Outcome, CliError> {
    let family = &cfg.family;
    let mode = match cfg.raw.optimum.mode {
        SearchMode::Analytic => OptimumMode::Analytic,
        SearchMode::Empirical => OptimumMode::Empirical(cfg.raw.empirical_cdf),
        SearchMode::Auto if family.has_closed_form_cdf() => OptimumMode::Analytic,
        SearchMode::Auto => OptimumMode::Empirical(cfg.raw.empirical_cdf),
    };
    let [lo, hi] = cfg.raw.optimum.bounds;
    match find_optimal_noise(&cfg.state, &cfg.channel, family, &cfg.resource, (lo, hi), mode) {
        Ok(best) => {
            let mut v = object([
                ("family", family.family_name().into()),
                ("scale_opt", best.scale.into()),
                ("f_opt", best.fidelity.into()),
                ("p", best.p.into()),
                ("exceeds_classical", (best.fidelity > CLASSICAL_LIMIT).into()),
                ("iterations", best.iterations.into()),
                ("mode", if matches!(mode, OptimumMode::Analytic) { "analytic" } else { "empirical" }.into()),
            ]);
            if let Some(n) = best.empirical_samples {
                v["empirical_samples"] = n.into();
            }
            Ok(Outcome::ok(render(&v, format)))
        }
        Err(teleport_sr::Error::MonotoneRegime { center, lo, hi }) => {
            let v = tidy_value(json!({"regime": "monotone", "center": center, "interval": [lo, hi]}));
            Ok(Outcome {
                stdout: render(&v, format),
                code: 4,
            })
        }
        Err(e) => Err(e.into()),
    }
}

pub fn theorem_check(cfg: &Validated, format: Format) -> Result<Outcome, CliError> {
    let section = &cfg.raw.theorem_check;
    let report = theorem_limit_check(
        &cfg.state,
        &cfg.channel,
        &cfg.family,
        &cfg.resource,
        &section.scales,
        section.tolerance,
    )?;
    let v = serde_json::to_value(&report).expect("report is serializable");
    Ok(Outcome::ok(render(&v, format)))
}
