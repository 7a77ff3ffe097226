use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::analysis::EntanglementResource;
use crate::channel::{transmit_bit, ChannelConfig};
use crate::noise::NoiseModel;
use crate::qstate::{bell_measure, BellBits, PauliWeights, QubitState};
use crate::{Error, Result};

/// One protocol run: Alice's Bell bits, Bob's detected bits and the
/// fidelity of Bob's corrected qubit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub sent: BellBits,
    pub detected: BellBits,
    pub fidelity: f64,
}

/// Runs the protocol once. The fidelity is the exact conditional value
/// `F_W |<psi|psi_(y xor s)>|^2 + (1 - F_W)/2`; Bob's qubit is never sampled.
pub fn simulate_trial<R: Rng + ?Sized>(
    state: &QubitState,
    channel: &ChannelConfig,
    noise: &NoiseModel,
    resource: &EntanglementResource,
    rng: &mut R,
) -> TrialRecord {
    trial(&state.pauli_weights(), channel, noise, resource, rng)
}

#[inline]
fn trial<R: Rng + ?Sized>(
    weights: &PauliWeights,
    channel: &ChannelConfig,
    noise: &NoiseModel,
    resource: &EntanglementResource,
    rng: &mut R,
) -> TrialRecord {
    let sent = bell_measure(rng);
    let detected = BellBits::new(
        transmit_bit(sent.x_flip, channel, noise, rng),
        transmit_bit(sent.z_flip, channel, noise, rng),
    );
    let fidelity = resource.mix(weights.overlap(sent.xor(detected)));
    TrialRecord {
        sent,
        detected,
        fidelity,
    }
}

/// Mean per-trial fidelity over `trials` independent runs.
pub fn estimate_fidelity<R: Rng + ?Sized>(
    state: &QubitState,
    channel: &ChannelConfig,
    noise: &NoiseModel,
    resource: &EntanglementResource,
    trials: usize,
    rng: &mut R,
) -> Result<f64> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be >= 1".into()));
    }
    Ok(estimate_with_weights(&state.pauli_weights(), channel, noise, resource, trials, rng))
}

pub(crate) fn estimate_with_weights<R: Rng + ?Sized>(
    weights: &PauliWeights,
    channel: &ChannelConfig,
    noise: &NoiseModel,
    resource: &EntanglementResource,
    trials: usize,
    rng: &mut R,
) -> f64 {
    let mut sum = 0.0;
    for _ in 0..trials {
        sum += trial(weights, channel, noise, resource, rng).fidelity;
    }
    sum / trials as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::analytic_fidelity;
    use crate::channel::detection_probabilities;
    use crate::qstate::corrected_state;
    use crate::rng::stream;
    use rand::Rng;

    fn paper_channel() -> ChannelConfig {
        ChannelConfig::new(1.1, 1.6).unwrap()
    }

    #[test]
    fn noiseless_channel_detects_nothing() {
        let psi = QubitState::from_bloch(1.2, 0.3);
        let noise = NoiseModel::gaussian(0.0, 1e-12).unwrap();
        let mut rng = stream(1, 0);
        let n = 200_000;
        let mut sum = 0.0;
        for _ in 0..n {
            let t = simulate_trial(&psi, &paper_channel(), &noise, &EntanglementResource::PERFECT, &mut rng);
            assert_eq!(t.detected, BellBits::default());
            let bob = corrected_state(&psi, t.sent, t.detected);
            assert!((t.fidelity - psi.overlap_sqr(&bob)).abs() < 1e-12);
            sum += t.fidelity;
        }
        // Expectation (1 + qx + qz + qxz)/4 = 1/2; per-trial values are in [0, 1].
        assert!((sum / n as f64 - 0.5).abs() < 4.0 * 0.5 / (n as f64).sqrt());
    }

    #[test]
    fn completely_mixed_resource_gives_half() {
        let mut rng = stream(2, 0);
        let noise = NoiseModel::gaussian(0.0, 1.42).unwrap();
        let r = EntanglementResource::new(0.0).unwrap();
        for _ in 0..1000 {
            let t = simulate_trial(&QubitState::plus(), &paper_channel(), &noise, &r, &mut rng);
            assert_eq!(t.fidelity, 0.5);
        }
        let est = estimate_fidelity(&QubitState::from_bloch(0.3, 0.1), &paper_channel(), &noise, &r, 12_345, &mut rng).unwrap();
        assert_eq!(est, 0.5);
    }

    #[test]
    fn correct_detection_gives_unit_fidelity() {
        // A strongly suprathreshold channel with tiny noise decodes every bit.
        let c = ChannelConfig::with_override(10.0, 1.0).unwrap();
        let noise = NoiseModel::gaussian(0.0, 1e-6).unwrap();
        let mut rng = stream(3, 0);
        for _ in 0..1000 {
            let t = simulate_trial(&QubitState::from_bloch(2.0, -1.0), &c, &noise, &EntanglementResource::PERFECT, &mut rng);
            assert_eq!(t.sent, t.detected);
            assert_eq!(t.fidelity, 1.0);
        }
    }

    #[test]
    fn zero_trials_rejected() {
        let mut rng = stream(0, 0);
        let noise = NoiseModel::gaussian(0.0, 1.0).unwrap();
        assert!(estimate_fidelity(&QubitState::plus(), &paper_channel(), &noise, &EntanglementResource::PERFECT, 0, &mut rng).is_err());
    }

    #[test]
    fn estimates_converge_to_closed_form() {
        let c = paper_channel();
        let psi = QubitState::plus();
        let g = NoiseModel::gaussian(0.0, 1.42).unwrap();
        let est = estimate_fidelity(&psi, &c, &g, &EntanglementResource::PERFECT, 1_000_000, &mut stream(10, 0)).unwrap();
        assert!((est - 0.6669).abs() < 0.002, "gaussian {est}");

        let cauchy = NoiseModel::cauchy(0.0, 1.11).unwrap();
        let est = estimate_fidelity(&psi, &c, &cauchy, &EntanglementResource::PERFECT, 1_000_000, &mut stream(11, 0)).unwrap();
        assert!((est - 0.6206).abs() < 0.002, "cauchy {est}");
    }

    // |estimate - analytic| <= 4 (1/2) / sqrt(trials) in at least 95 of 100
    // randomized scenarios.
    #[test]
    fn randomized_scenarios_within_clt_band() {
        let mut meta = stream(99, 0);
        let trials = 20_000;
        let band = 4.0 * 0.5 / (trials as f64).sqrt();
        let mut hits = 0;
        for k in 0..100 {
            let psi = QubitState::from_bloch(meta.random_range(0.0..std::f64::consts::PI), meta.random_range(-3.0..3.0));
            let a = meta.random_range(0.1..1.5);
            let c = ChannelConfig::new(a, a + meta.random_range(0.05..1.5)).unwrap();
            let mu = meta.random_range(-1.0..3.0);
            let s = meta.random_range(0.1..3.0);
            let noise = match k % 4 {
                0 => NoiseModel::gaussian(mu, s),
                1 => NoiseModel::uniform(mu, s),
                2 => NoiseModel::laplace(mu, s),
                _ => NoiseModel::cauchy(mu, s),
            }
            .unwrap();
            let r = EntanglementResource::new(meta.random_range(0.0..=1.0)).unwrap();
            let exact = analytic_fidelity(&psi.pauli_weights(), detection_probabilities(&c, &noise).p(), &r).unwrap();
            let est = estimate_fidelity(&psi, &c, &noise, &r, trials, &mut stream(1000 + k, 0)).unwrap();
            if (est - exact).abs() <= band {
                hits += 1;
            }
        }
        assert!(hits >= 95, "{hits}/100 within band");
    }
}
