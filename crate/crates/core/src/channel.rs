//! The classical leg: bits are sent as `-A` / `+A`, corrupted by additive
//! noise and read back by a hard threshold at `theta`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::noise::{Cdf, EmpiricalCdfOptions, NoiseModel};
use crate::{Error, Result};

const PROB_TOLERANCE: f64 = 1e-12;

/// Signal amplitude and detection threshold.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, try_from = "RawChannel")]
pub struct ChannelConfig {
    amplitude: f64,
    threshold: f64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    allow_suprathreshold: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChannel {
    amplitude: f64,
    threshold: f64,
    #[serde(default)]
    allow_suprathreshold: bool,
}

impl TryFrom<RawChannel> for ChannelConfig {
    type Error = Error;

    fn try_from(raw: RawChannel) -> Result<Self> {
        Self::build(raw.amplitude, raw.threshold, raw.allow_suprathreshold)
    }
}

impl ChannelConfig {
    /// A subthreshold channel, `0 < amplitude < threshold`.
    pub fn new(amplitude: f64, threshold: f64) -> Result<Self> {
        Self::build(amplitude, threshold, false)
    }

    /// Any positive amplitude, including `amplitude >= threshold`.
    pub fn with_override(amplitude: f64, threshold: f64) -> Result<Self> {
        Self::build(amplitude, threshold, true)
    }

    fn build(amplitude: f64, threshold: f64, allow_suprathreshold: bool) -> Result<Self> {
        if !amplitude.is_finite() || !threshold.is_finite() {
            return Err(Error::InvalidChannel(format!(
                "amplitude {amplitude} and threshold {threshold} must be finite"
            )));
        }
        if amplitude <= 0.0 {
            return Err(Error::InvalidChannel(format!("amplitude must be > 0, got {amplitude}")));
        }
        if !allow_suprathreshold && amplitude >= threshold {
            return Err(Error::Suprathreshold { amplitude, threshold });
        }
        Ok(Self {
            amplitude,
            threshold,
            allow_suprathreshold,
        })
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn allow_suprathreshold(&self) -> bool {
        self.allow_suprathreshold
    }

    pub fn is_subthreshold(&self) -> bool {
        self.amplitude < self.threshold
    }
}

/// Conditional detection probabilities `p(y|s)` of one channel use.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DetectionStats {
    p00: f64,
    p01: f64,
    p10: f64,
    p11: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    empirical_samples: Option<usize>,
}

impl DetectionStats {
    /// Argument `p<y><s>` is `p(y|s)`. Each column `s` must sum to one and
    /// `p(0|0) >= p(0|1)`.
    pub fn new(p00: f64, p01: f64, p10: f64, p11: f64) -> Result<Self> {
        let all = [p00, p01, p10, p11];
        if all.iter().any(|p| !p.is_finite() || *p < -PROB_TOLERANCE || *p > 1.0 + PROB_TOLERANCE) {
            return Err(Error::InvalidDistribution(format!(
                "probabilities must lie in [0, 1], got {all:?}"
            )));
        }
        if (p00 + p10 - 1.0).abs() > PROB_TOLERANCE {
            return Err(Error::InvalidDistribution(format!(
                "p(0|0) + p(1|0) = {}",
                p00 + p10
            )));
        }
        if (p01 + p11 - 1.0).abs() > PROB_TOLERANCE {
            return Err(Error::InvalidDistribution(format!(
                "p(0|1) + p(1|1) = {}",
                p01 + p11
            )));
        }
        if p00 - p01 < -PROB_TOLERANCE {
            return Err(Error::InvalidDistribution(format!(
                "p(0|0) - p(0|1) = {} is negative",
                p00 - p01
            )));
        }
        Ok(Self {
            p00,
            p01,
            p10,
            p11,
            empirical_samples: None,
        })
    }

    /// From `F(theta + A)` and `F(theta - A)`.
    fn from_cdf_values(upper: f64, lower: f64, empirical_samples: Option<usize>) -> Self {
        Self {
            p00: upper,
            p01: lower,
            p10: 1.0 - upper,
            p11: 1.0 - lower,
            empirical_samples,
        }
    }

    /// `p(y|s)`.
    pub fn conditional(&self, y: bool, s: bool) -> f64 {
        match (y, s) {
            (false, false) => self.p00,
            (false, true) => self.p01,
            (true, false) => self.p10,
            (true, true) => self.p11,
        }
    }

    pub fn p00(&self) -> f64 {
        self.p00
    }

    pub fn p01(&self) -> f64 {
        self.p01
    }

    pub fn p10(&self) -> f64 {
        self.p10
    }

    pub fn p11(&self) -> f64 {
        self.p11
    }

    /// `p(0|0) - p(0|1)`, the only channel quantity the fidelity depends on.
    pub fn p(&self) -> f64 {
        (self.p00 - self.p01).clamp(0.0, 1.0)
    }

    /// Sample count behind an empirical-CDF estimate, `None` for closed forms.
    pub fn empirical_samples(&self) -> Option<usize> {
        self.empirical_samples
    }
}

/// `0 -> -A`, `1 -> +A`.
pub fn encode(bit: bool, config: &ChannelConfig) -> f64 {
    if bit {
        config.amplitude
    } else {
        -config.amplitude
    }
}

/// Strictly above threshold reads as 1; a tie reads as 0.
pub fn detect(received: f64, config: &ChannelConfig) -> bool {
    received > config.threshold
}

pub fn transmit_bit<R: Rng + ?Sized>(
    bit: bool,
    config: &ChannelConfig,
    noise: &NoiseModel,
    rng: &mut R,
) -> bool {
    detect(encode(bit, config) + noise.sample(rng), config)
}

/// Detection probabilities from the noise CDF:
/// `p(0|0) = F(theta + A)`, `p(0|1) = F(theta - A)`.
pub fn detection_probabilities(config: &ChannelConfig, noise: &NoiseModel) -> DetectionStats {
    if noise.has_closed_form_cdf() {
        detection_probabilities_with(config, &Cdf::Closed(*noise))
    } else {
        detection_probabilities_with(config, &noise.cdf_with(&EmpiricalCdfOptions::default()))
    }
}

/// As [`detection_probabilities`] with a prebuilt CDF.
pub fn detection_probabilities_with(config: &ChannelConfig, cdf: &Cdf) -> DetectionStats {
    let upper = cdf.eval(config.threshold + config.amplitude);
    let lower = cdf.eval(config.threshold - config.amplitude);
    DetectionStats::from_cdf_values(upper.p, lower.p, cdf.samples())
}

/// The open interval `(theta - A, theta + A)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ForbiddenInterval {
    pub lo: f64,
    pub hi: f64,
}

impl ForbiddenInterval {
    /// Open-interval membership; the endpoints are outside.
    pub fn contains(&self, x: f64) -> bool {
        self.lo < x && x < self.hi
    }
}

pub fn forbidden_interval(config: &ChannelConfig) -> ForbiddenInterval {
    ForbiddenInterval {
        lo: config.threshold - config.amplitude,
        hi: config.threshold + config.amplitude,
    }
}

/// Whether the noise-benefit effect is predicted: the noise center lies
/// outside the forbidden interval. Only defined for subthreshold channels.
pub fn sr_predicted(config: &ChannelConfig, noise: &NoiseModel) -> Result<bool> {
    if !config.is_subthreshold() {
        return Err(Error::Suprathreshold {
            amplitude: config.amplitude,
            threshold: config.threshold,
        });
    }
    Ok(!forbidden_interval(config).contains(noise.center()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noise::normal_cdf;
    use crate::rng::stream;
    use proptest::prelude::*;

    fn paper_channel() -> ChannelConfig {
        ChannelConfig::new(1.1, 1.6).unwrap()
    }

    #[test]
    fn construction_enforces_subthreshold() {
        assert!(matches!(ChannelConfig::new(2.0, 1.6), Err(Error::Suprathreshold { .. })));
        assert!(ChannelConfig::new(1.6, 1.6).is_err());
        assert!(ChannelConfig::new(0.0, 1.6).is_err());
        assert!(ChannelConfig::new(-1.0, 1.6).is_err());
        let c = ChannelConfig::with_override(2.0, 1.6).unwrap();
        assert!(!c.is_subthreshold());
        let noise = NoiseModel::gaussian(0.0, 1.0).unwrap();
        assert!(matches!(sr_predicted(&c, &noise), Err(Error::Suprathreshold { .. })));
    }

    #[test]
    fn config_json() {
        let c: ChannelConfig = serde_json::from_str(r#"{"amplitude":1.1,"threshold":1.6}"#).unwrap();
        assert_eq!(c, paper_channel());
        assert!(serde_json::from_str::<ChannelConfig>(r#"{"amplitude":2,"threshold":1.6}"#).is_err());
        let c: ChannelConfig =
            serde_json::from_str(r#"{"amplitude":2,"threshold":1.6,"allow_suprathreshold":true}"#).unwrap();
        assert!(c.allow_suprathreshold());
        assert!(serde_json::from_str::<ChannelConfig>(r#"{"amplitude":1,"threshold":2,"gain":1}"#).is_err());
    }

    #[test]
    fn encode_examples() {
        let c = paper_channel();
        assert_eq!(encode(false, &c), -1.1);
        assert_eq!(encode(true, &c), 1.1);
        let tiny = ChannelConfig::with_override(0.0001, 1.6).unwrap();
        assert_eq!(encode(true, &tiny), 0.0001);
    }

    #[test]
    fn detect_examples() {
        let c = paper_channel();
        assert!(detect(1.7, &c));
        assert!(!detect(1.6, &c));
        assert!(!detect(-0.2, &c));
    }

    #[test]
    fn noiseless_subthreshold_signals_never_cross() {
        let c = paper_channel();
        let noise = NoiseModel::gaussian(0.0, 1e-12).unwrap();
        let mut rng = stream(1, 0);
        for i in 0..1000 {
            assert!(!transmit_bit(i % 2 == 0, &c, &noise, &mut rng));
        }
        let stats = detection_probabilities(&c, &noise);
        assert_eq!((stats.p00(), stats.p01(), stats.p()), (1.0, 1.0, 0.0));
    }

    #[test]
    fn transmit_frequencies_match_normal_oracle() {
        let c = paper_channel();
        let noise = NoiseModel::gaussian(0.0, 1.42).unwrap();
        let n = 1_000_000;
        let mut rng = stream(77, 0);
        let ones_given_one = (0..n).filter(|_| transmit_bit(true, &c, &noise, &mut rng)).count();
        let ones_given_zero = (0..n).filter(|_| transmit_bit(false, &c, &noise, &mut rng)).count();
        let p11 = 1.0 - normal_cdf(0.5 / 1.42);
        let p10 = 1.0 - normal_cdf(2.7 / 1.42);
        assert!((p11 - 0.3624).abs() < 1e-4 && (p10 - 0.0286).abs() < 1e-4);
        assert!((ones_given_one as f64 / n as f64 - p11).abs() < 0.002);
        assert!((ones_given_zero as f64 / n as f64 - p10).abs() < 0.002);
    }

    #[test]
    fn detection_probability_examples() {
        let c = paper_channel();
        let g = detection_probabilities(&c, &NoiseModel::gaussian(0.0, 1.42).unwrap());
        assert!((g.p() - 0.3337).abs() < 2e-4);
        assert!((g.p() - (normal_cdf(2.7 / 1.42) - normal_cdf(0.5 / 1.42))).abs() < 1e-15);
        assert_eq!(g.empirical_samples(), None);

        let cauchy = detection_probabilities(&c, &NoiseModel::cauchy(0.0, 1.11).unwrap());
        let oracle = ((2.7f64 / 1.11).atan() - (0.5f64 / 1.11).atan()) / std::f64::consts::PI;
        assert!((cauchy.p() - oracle).abs() < 1e-14);
        assert!((cauchy.p() - 0.2412).abs() < 1e-4);
    }

    #[test]
    fn empirical_stats_carry_sample_count() {
        let c = paper_channel();
        let stable = NoiseModel::alpha_stable(1.5, 0.0, 1.0, 0.0).unwrap();
        let cdf = stable.cdf_with(&EmpiricalCdfOptions { samples: 20_000, seed: 4 });
        let stats = detection_probabilities_with(&c, &cdf);
        assert_eq!(stats.empirical_samples(), Some(20_000));
        assert!(stats.p() > 0.0 && stats.p() < 1.0);
    }

    #[test]
    fn invalid_conditionals_rejected() {
        assert!(DetectionStats::new(0.7, 0.2, 0.4, 0.8).is_err());
        assert!(DetectionStats::new(0.7, 0.2, 0.3, 0.7).is_err());
        assert!(DetectionStats::new(0.2, 0.7, 0.8, 0.3).is_err());
        assert!(DetectionStats::new(1.2, 0.0, -0.2, 1.0).is_err());
        assert!(DetectionStats::new(0.7, 0.2, 0.3, 0.8).is_ok());
    }

    #[test]
    fn forbidden_interval_examples() {
        let fi = forbidden_interval(&paper_channel());
        assert!((fi.lo - 0.5).abs() < 1e-15 && (fi.hi - 2.7).abs() < 1e-15);
        let theta = 3.0;
        let fi = forbidden_interval(&ChannelConfig::new(theta / 2.0, theta).unwrap());
        assert_eq!((fi.lo, fi.hi), (theta / 2.0, 1.5 * theta));
        let fi = forbidden_interval(&ChannelConfig::new(1e-9, 1.6).unwrap());
        assert!((fi.hi - fi.lo) < 3e-9 && (fi.lo - 1.6).abs() < 2e-9);
    }

    #[test]
    fn sr_prediction_examples() {
        let c = paper_channel();
        assert!(sr_predicted(&c, &NoiseModel::gaussian(0.0, 1.0).unwrap()).unwrap());
        assert!(!sr_predicted(&c, &NoiseModel::gaussian(0.7, 1.0).unwrap()).unwrap());
        assert!(!sr_predicted(&c, &NoiseModel::cauchy(0.7, 1.0).unwrap()).unwrap());
        let fi = forbidden_interval(&c);
        assert!(sr_predicted(&c, &NoiseModel::cauchy(fi.hi, 1.0).unwrap()).unwrap());
        assert!(sr_predicted(&c, &NoiseModel::gaussian(fi.lo, 1.0).unwrap()).unwrap());
    }

    #[test]
    fn prediction_flips_only_at_endpoints() {
        let c = paper_channel();
        let fi = forbidden_interval(&c);
        let mut flips = Vec::new();
        let mut prev = None;
        for i in 0..=4000 {
            let center = -1.0 + 5.0 * i as f64 / 4000.0;
            let pred = sr_predicted(&c, &NoiseModel::gaussian(center, 1.0).unwrap()).unwrap();
            assert_eq!(pred, center <= fi.lo || center >= fi.hi);
            if prev.is_some_and(|p| p != pred) {
                flips.push(center);
            }
            prev = Some(pred);
        }
        assert_eq!(flips.len(), 2);
        assert!((flips[0] - fi.lo).abs() <= 5.0 / 4000.0 + 1e-12);
        assert!((flips[1] - fi.hi).abs() <= 5.0 / 4000.0 + 1e-12);
    }

    #[test]
    fn empirical_frequencies_within_binomial_bands() {
        let c = paper_channel();
        let models = [
            NoiseModel::gaussian(0.0, 1.42).unwrap(),
            NoiseModel::uniform(0.3, 2.5).unwrap(),
            NoiseModel::laplace(-0.2, 0.9).unwrap(),
            NoiseModel::cauchy(0.0, 1.11).unwrap(),
        ];
        let n = 1_000_000;
        for (k, noise) in models.iter().enumerate() {
            let stats = detection_probabilities(&c, noise);
            for bit in [false, true] {
                let mut rng = stream(300 + k as u64, u64::from(bit));
                let ones = (0..n).filter(|_| transmit_bit(bit, &c, noise, &mut rng)).count();
                let p = stats.conditional(true, bit);
                let band = 4.0 * (p * (1.0 - p) / n as f64).sqrt() + 1e-9;
                assert!((ones as f64 / n as f64 - p).abs() <= band, "{noise:?} bit {bit}");
            }
        }
    }

    proptest! {
        #[test]
        fn p_is_consistent(a in 0.01..1.5f64, extra in 0.01..2.0f64, mu in -3.0..3.0f64, s in 0.05..4.0f64, family in 0usize..4) {
            let c = ChannelConfig::new(a, a + extra).unwrap();
            let noise = match family {
                0 => NoiseModel::gaussian(mu, s),
                1 => NoiseModel::uniform(mu, s),
                2 => NoiseModel::laplace(mu, s),
                _ => NoiseModel::cauchy(mu, s),
            }.unwrap();
            let st = detection_probabilities(&c, &noise);
            prop_assert!((0.0..=1.0).contains(&st.p()));
            prop_assert!((st.p00() - st.p01() - (st.p11() - st.p10())).abs() < 1e-12);
            prop_assert!(DetectionStats::new(st.p00(), st.p01(), st.p10(), st.p11()).is_ok());
        }

        #[test]
        fn p_nondecreasing_in_amplitude(theta in 0.5..3.0f64, mu in -2.0..4.0f64, s in 0.05..3.0f64, family in 0usize..4) {
            let noise = match family {
                0 => NoiseModel::gaussian(mu, s),
                1 => NoiseModel::uniform(mu, s),
                2 => NoiseModel::laplace(mu, s),
                _ => NoiseModel::cauchy(mu, s),
            }.unwrap();
            let mut prev = 0.0;
            for i in 1..50 {
                let a = theta * i as f64 / 50.0;
                let p = detection_probabilities(&ChannelConfig::new(a, theta).unwrap(), &noise).p();
                prop_assert!(p >= prev - 1e-15);
                prev = p;
            }
        }
    }
}
