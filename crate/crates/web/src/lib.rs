//! Browser bindings. Every export takes plain numbers and returns a JSON
//! string; the `*_json` functions hold the logic and run natively in tests.

use serde_json::{json, Value};
use teleport_sr::analysis::{
    analytic_fidelity, find_optimal_noise, linear_scales, sweep, EntanglementResource, OptimumMode, SweepSpec,
};
use teleport_sr::channel::{detection_probabilities, forbidden_interval, sr_predicted, ChannelConfig};
use teleport_sr::noise::NoiseModel;
use teleport_sr::qstate::QubitState;
use wasm_bindgen::prelude::*;

/// Shared inputs of every demo call.
#[derive(Clone, Copy, Debug)]
pub struct Setup {
    pub state: QubitState,
    pub channel: ChannelConfig,
    pub family: NoiseModel,
    pub resource: EntanglementResource,
}

impl Setup {
    /// `family` is one of gaussian, cauchy, uniform, laplace; the state is
    /// given by Bloch angles.
    pub fn new(
        family: &str,
        center: f64,
        amplitude: f64,
        threshold: f64,
        werner_f: f64,
        theta: f64,
        phi: f64,
    ) -> Result<Self, String> {
        let family = match family {
            "gaussian" => NoiseModel::gaussian(center, 1.0),
            "cauchy" => NoiseModel::cauchy(center, 1.0),
            "uniform" => NoiseModel::uniform(center, 1.0),
            "laplace" => NoiseModel::laplace(center, 1.0),
            other => return Err(format!("unknown noise family {other:?}")),
        }
        .map_err(|e| e.to_string())?;
        Ok(Self {
            state: QubitState::from_bloch(theta, phi),
            channel: ChannelConfig::new(amplitude, threshold).map_err(|e| e.to_string())?,
            family,
            resource: EntanglementResource::new(werner_f).map_err(|e| e.to_string())?,
        })
    }
}

pub fn curve_json(setup: &Setup, lo: f64, hi: f64, count: usize) -> Result<String, String> {
    if !(lo > 0.0 && hi > lo) || count < 2 {
        return Err(format!("need 0 < lo < hi and count >= 2, got {lo}, {hi}, {count}"));
    }
    let weights = setup.state.pauli_weights();
    let scales = linear_scales(lo, hi, count);
    let fidelity = scales
        .iter()
        .map(|&s| {
            let noise = setup.family.with_spread(s)?;
            analytic_fidelity(&weights, detection_probabilities(&setup.channel, &noise).p(), &setup.resource)
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let fi = forbidden_interval(&setup.channel);
    Ok(json!({
        "scales": scales,
        "fidelity": fidelity,
        "interval": [fi.lo, fi.hi],
        "sr_predicted": sr_predicted(&setup.channel, &setup.family).map_err(|e| e.to_string())?,
        "weights": {"qx": weights.qx, "qz": weights.qz, "qxz": weights.qxz},
    })
    .to_string())
}

#[allow(clippy::too_many_arguments)]
pub fn monte_carlo_json(
    setup: &Setup,
    lo: f64,
    hi: f64,
    count: usize,
    runs: usize,
    trials: usize,
    window: usize,
    seed: u64,
) -> Result<String, String> {
    let mut spec = SweepSpec::new(setup.state, setup.channel, setup.family);
    spec.scales = linear_scales(lo, hi, count);
    spec.runs = runs;
    spec.trials_per_run = trials;
    spec.window = window;
    spec.resource = setup.resource;
    spec.seed = seed;
    sweep(&spec).map(|r| r.to_json()).map_err(|e| e.to_string())
}

pub fn optimum_json(setup: &Setup, lo: f64, hi: f64) -> Result<String, String> {
    let found = find_optimal_noise(
        &setup.state,
        &setup.channel,
        &setup.family,
        &setup.resource,
        (lo, hi),
        OptimumMode::Analytic,
    );
    let v: Value = match found {
        Ok(best) => json!({"scale_opt": best.scale, "f_opt": best.fidelity, "p": best.p}),
        Err(teleport_sr::Error::MonotoneRegime { center, lo, hi }) => {
            json!({"regime": "monotone", "center": center, "interval": [lo, hi]})
        }
        Err(e) => return Err(e.to_string()),
    };
    Ok(v.to_string())
}

fn js<T>(r: Result<T, String>) -> Result<T, JsError> {
    r.map_err(|e| JsError::new(&e))
}

/// Closed-form fidelity over `count` scales in `[lo, hi]`.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn fidelity_curve(
    family: &str,
    center: f64,
    amplitude: f64,
    threshold: f64,
    werner_f: f64,
    theta: f64,
    phi: f64,
    lo: f64,
    hi: f64,
    count: usize,
) -> Result<String, JsError> {
    let setup = js(Setup::new(family, center, amplitude, threshold, werner_f, theta, phi))?;
    js(curve_json(&setup, lo, hi, count))
}

/// Monte Carlo sweep as the JSON of a sweep result.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn monte_carlo_sweep(
    family: &str,
    center: f64,
    amplitude: f64,
    threshold: f64,
    werner_f: f64,
    theta: f64,
    phi: f64,
    lo: f64,
    hi: f64,
    count: usize,
    runs: usize,
    trials: usize,
    window: usize,
    seed: u64,
) -> Result<String, JsError> {
    let setup = js(Setup::new(family, center, amplitude, threshold, werner_f, theta, phi))?;
    js(monte_carlo_json(&setup, lo, hi, count, runs, trials, window, seed))
}

/// Best noise scale in `[lo, hi]`, or a monotone-regime notice.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn optimum(
    family: &str,
    center: f64,
    amplitude: f64,
    threshold: f64,
    werner_f: f64,
    theta: f64,
    phi: f64,
    lo: f64,
    hi: f64,
) -> Result<String, JsError> {
    let setup = js(Setup::new(family, center, amplitude, threshold, werner_f, theta, phi))?;
    js(optimum_json(&setup, lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn paper(family: &str, center: f64) -> Setup {
        Setup::new(family, center, 1.1, 1.6, 1.0, FRAC_PI_2, 0.0).unwrap()
    }

    #[test]
    fn curve_peaks_near_the_optimum() {
        let v: Value = serde_json::from_str(&curve_json(&paper("gaussian", 0.0), 0.01, 3.0, 300).unwrap()).unwrap();
        let f = v["fidelity"].as_array().unwrap();
        let (i, best) = f.iter().map(|x| x.as_f64().unwrap()).enumerate().fold((0, 0.0), |b, (i, x)| if x > b.1 { (i, x) } else { b });
        let at = v["scales"][i].as_f64().unwrap();
        assert!((at - 1.4448).abs() < 0.01 && (best - 0.6669).abs() < 1e-4, "{at} {best}");
        assert_eq!(v["sr_predicted"], true);
        assert!((v["weights"]["qx"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn optimum_and_monotone_notice() {
        let v: Value = serde_json::from_str(&optimum_json(&paper("cauchy", 0.0), 1e-3, 10.0).unwrap()).unwrap();
        assert!((v["scale_opt"].as_f64().unwrap() - 1.1619).abs() < 1e-3);
        let v: Value = serde_json::from_str(&optimum_json(&paper("gaussian", 0.7), 1e-3, 10.0).unwrap()).unwrap();
        assert_eq!(v["regime"], "monotone");
    }

    #[test]
    fn monte_carlo_is_deterministic() {
        let s = paper("laplace", 0.0);
        let a = monte_carlo_json(&s, 0.1, 2.0, 5, 2, 100, 3, 5).unwrap();
        assert_eq!(a, monte_carlo_json(&s, 0.1, 2.0, 5, 2, 100, 3, 5).unwrap());
        assert!(monte_carlo_json(&s, 0.1, 2.0, 5, 2, 100, 2, 5).is_err());
    }

    #[test]
    fn rejects_bad_setups() {
        assert!(Setup::new("student", 0.0, 1.1, 1.6, 1.0, 0.0, 0.0).is_err());
        assert!(Setup::new("gaussian", 0.0, 2.0, 1.6, 1.0, 0.0, 0.0).is_err());
        assert!(Setup::new("gaussian", 0.0, 1.1, 1.6, 1.5, 0.0, 0.0).is_err());
        assert!(curve_json(&paper("uniform", 0.0), 1.0, 0.5, 10).is_err());
    }
}
