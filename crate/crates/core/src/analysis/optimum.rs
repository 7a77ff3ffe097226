use serde::{Deserialize, Serialize};

use crate::analysis::{analytic_fidelity, EntanglementResource};
use crate::channel::{detection_probabilities_with, forbidden_interval, sr_predicted, ChannelConfig};
use crate::noise::{Cdf, EmpiricalCdfOptions, NoiseModel};
use crate::optimize::golden_section_max;
use crate::qstate::QubitState;
use crate::{Error, Result};

/// Relative tolerance on the optimal scale.
pub const OPTIMUM_REL_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum OptimumMode {
    /// Closed-form CDFs only.
    Analytic,
    /// Empirical CDFs rebuilt from the same seed at every scale.
    Empirical(EmpiricalCdfOptions),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimalNoise {
    pub scale: f64,
    pub fidelity: f64,
    pub p: f64,
    pub iterations: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub empirical_samples: Option<usize>,
}

fn cdf_at(family: &NoiseModel, scale: f64, mode: &OptimumMode) -> Result<Cdf> {
    let model = family.with_spread(scale)?;
    Ok(match mode {
        OptimumMode::Analytic => Cdf::Closed(model),
        OptimumMode::Empirical(opts) => model.cdf_with(opts),
    })
}

/// Noise scale maximizing the closed-form fidelity within `bounds`.
///
/// The fidelity is nondecreasing in `P`, so the search maximizes `P(scale)`.
/// Fails with [`Error::MonotoneRegime`] when the noise center lies inside the
/// forbidden interval: the best scale is then the zero-noise boundary.
pub fn find_optimal_noise(
    state: &QubitState,
    channel: &ChannelConfig,
    family: &NoiseModel,
    resource: &EntanglementResource,
    bounds: (f64, f64),
    mode: OptimumMode,
) -> Result<OptimalNoise> {
    if !sr_predicted(channel, family)? {
        let fi = forbidden_interval(channel);
        return Err(Error::MonotoneRegime {
            center: family.center(),
            lo: fi.lo,
            hi: fi.hi,
        });
    }
    if mode == OptimumMode::Analytic && !family.has_closed_form_cdf() {
        return Err(Error::NoClosedForm(format!("{family:?}")));
    }
    if !(bounds.0 > 0.0) {
        return Err(Error::InvalidArgument(format!("scale bounds must be positive, got {bounds:?}")));
    }

    let mut failure = None;
    let best = golden_section_max(
        |scale| match cdf_at(family, scale, &mode) {
            Ok(cdf) => detection_probabilities_with(channel, &cdf).p(),
            Err(e) => {
                failure.get_or_insert(e);
                f64::NEG_INFINITY
            }
        },
        bounds.0,
        bounds.1,
        OPTIMUM_REL_TOL,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    let cdf = cdf_at(family, best.x, &mode)?;
    let stats = detection_probabilities_with(channel, &cdf);
    Ok(OptimalNoise {
        scale: best.x,
        fidelity: analytic_fidelity(&state.pauli_weights(), stats.p(), resource)?,
        p: stats.p(),
        iterations: best.iterations,
        empirical_samples: stats.empirical_samples(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitReport {
    pub center: f64,
    pub interval: (f64, f64),
    pub sr_predicted: bool,
    /// `(scale, analytic fidelity)` along the descending grid.
    pub rows: Vec<(f64, f64)>,
    /// `1/2` outside the interval, `1/2 + F_W (qx + qz + qxz)/2` inside;
    /// `None` when the center sits exactly on an endpoint.
    pub expected_limit: Option<f64>,
    pub final_gap: Option<f64>,
    pub tolerance: f64,
    pub holds: Option<bool>,
}

/// Closed-form fidelity along a grid of shrinking noise scales, compared to
/// the zero-noise limit the forbidden-interval condition predicts.
pub fn theorem_limit_check(
    state: &QubitState,
    channel: &ChannelConfig,
    family: &NoiseModel,
    resource: &EntanglementResource,
    small_scales: &[f64],
    tolerance: f64,
) -> Result<LimitReport> {
    if small_scales.is_empty() {
        return Err(Error::InvalidGrid("empty scale grid".into()));
    }
    if small_scales.iter().any(|s| !(s.is_finite() && *s > 0.0)) {
        return Err(Error::InvalidGrid("scales must be finite and positive".into()));
    }
    if small_scales.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidGrid("scales must descend toward zero".into()));
    }
    if !family.has_closed_form_cdf() {
        return Err(Error::NoClosedForm(format!("{family:?}")));
    }
    let predicted = sr_predicted(channel, family)?;
    let weights = state.pauli_weights();
    let rows = small_scales
        .iter()
        .map(|&s| {
            let stats = detection_probabilities_with(channel, &Cdf::Closed(family.with_spread(s)?));
            Ok((s, analytic_fidelity(&weights, stats.p(), resource)?))
        })
        .collect::<Result<Vec<_>>>()?;

    let fi = forbidden_interval(channel);
    let center = family.center();
    let expected_limit = if center == fi.lo || center == fi.hi {
        None
    } else if predicted {
        Some(0.5)
    } else {
        Some(analytic_fidelity(&weights, 1.0, resource)?)
    };
    let last = rows.last().map(|r| r.1).expect("non-empty grid");
    let final_gap = expected_limit.map(|e| (last - e).abs());
    Ok(LimitReport {
        center,
        interval: (fi.lo, fi.hi),
        sr_predicted: predicted,
        rows,
        expected_limit,
        final_gap,
        tolerance,
        holds: final_gap.map(|g| g <= tolerance),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::CLASSICAL_LIMIT;
    use crate::noise::normal_cdf;

    fn paper_channel() -> ChannelConfig {
        ChannelConfig::new(1.1, 1.6).unwrap()
    }

    /// Dense grid search over `P(scale)`, independent of the bracket search.
    fn grid_argmax(p: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> f64 {
        (0..=n)
            .map(|i| lo + (hi - lo) * i as f64 / n as f64)
            .max_by(|a, b| p(*a).total_cmp(&p(*b)))
            .unwrap()
    }

    #[test]
    fn gaussian_optimum_matches_stationarity() {
        // d/ds [Phi(u/s) - Phi(l/s)] = 0  =>  s^2 = (u^2 - l^2) / (2 ln(u/l)).
        let (l, u) = (0.5f64, 2.7f64);
        let closed = ((u * u - l * l) / (2.0 * (u / l).ln())).sqrt();
        assert!((closed - 1.4448).abs() < 1e-4);
        let grid = grid_argmax(|s| normal_cdf(u / s) - normal_cdf(l / s), 0.5, 3.0, 250_000);
        assert!((grid - closed).abs() < 1e-4);

        let opt = find_optimal_noise(
            &QubitState::plus(),
            &paper_channel(),
            &NoiseModel::gaussian(0.0, 1.0).unwrap(),
            &EntanglementResource::PERFECT,
            (1e-3, 10.0),
            OptimumMode::Analytic,
        )
        .unwrap();
        assert!((opt.scale - closed).abs() < 1e-4, "{}", opt.scale);
        assert!((opt.fidelity - 0.6669).abs() < 1e-4);
        assert!(opt.fidelity > CLASSICAL_LIMIT);
    }

    #[test]
    fn cauchy_optimum_matches_stationarity() {
        // d/dg [atan(u/g) - atan(l/g)] = 0  =>  g^2 = l u.
        let (l, u) = (0.5f64, 2.7f64);
        let closed = (l * u).sqrt();
        let grid = grid_argmax(|g| (u / g).atan() - (l / g).atan(), 0.5, 3.0, 250_000);
        assert!((grid - closed).abs() < 1e-4);

        let opt = find_optimal_noise(
            &QubitState::plus(),
            &paper_channel(),
            &NoiseModel::cauchy(0.0, 1.0).unwrap(),
            &EntanglementResource::PERFECT,
            (1e-3, 10.0),
            OptimumMode::Analytic,
        )
        .unwrap();
        assert!((opt.scale - 1.1619).abs() < 1e-4);
        assert!((opt.fidelity - 0.6206).abs() < 1e-4);
        assert!(opt.fidelity < CLASSICAL_LIMIT);
    }

    #[test]
    fn inside_interval_is_monotone_regime() {
        let err = find_optimal_noise(
            &QubitState::plus(),
            &paper_channel(),
            &NoiseModel::gaussian(0.7, 1.0).unwrap(),
            &EntanglementResource::PERFECT,
            (1e-3, 10.0),
            OptimumMode::Analytic,
        )
        .unwrap_err();
        assert!(matches!(err, Error::MonotoneRegime { .. }));
    }

    #[test]
    fn analytic_mode_needs_closed_form() {
        let stable = NoiseModel::alpha_stable(1.5, 0.0, 1.0, 0.0).unwrap();
        let args = (&QubitState::plus(), &paper_channel(), &stable, &EntanglementResource::PERFECT);
        assert!(matches!(
            find_optimal_noise(args.0, args.1, args.2, args.3, (0.01, 5.0), OptimumMode::Analytic),
            Err(Error::NoClosedForm(_))
        ));
        let opts = EmpiricalCdfOptions { samples: 50_000, seed: 8 };
        let opt = find_optimal_noise(args.0, args.1, args.2, args.3, (0.01, 5.0), OptimumMode::Empirical(opts)).unwrap();
        assert_eq!(opt.empirical_samples, Some(50_000));
        assert!(opt.scale > 0.1 && opt.scale < 5.0 && opt.fidelity > 0.5);
    }

    #[test]
    fn empirical_mode_agrees_with_closed_form_for_cauchy_like_stable() {
        // alpha slightly off 1 has no closed form but is nearly Cauchy.
        let near = NoiseModel::alpha_stable(1.0 + 1e-3, 0.0, 1.0, 0.0).unwrap();
        let opts = EmpiricalCdfOptions { samples: 400_000, seed: 5 };
        let opt = find_optimal_noise(
            &QubitState::plus(),
            &paper_channel(),
            &near,
            &EntanglementResource::PERFECT,
            (0.2, 5.0),
            OptimumMode::Empirical(opts),
        )
        .unwrap();
        assert!((opt.fidelity - 0.6206).abs() < 0.003, "{opt:?}");
    }

    #[test]
    fn limit_examples() {
        let c = paper_channel();
        let psi = QubitState::plus();
        let r = EntanglementResource::PERFECT;
        let g0 = theorem_limit_check(&psi, &c, &NoiseModel::gaussian(0.0, 1.0).unwrap(), &r, &[0.1, 0.01, 1e-3], 1e-9).unwrap();
        let f = g0.rows.last().unwrap().1;
        assert!((0.5..=0.5 + 1e-9).contains(&f));
        assert_eq!(g0.holds, Some(true));

        let g7 = theorem_limit_check(&psi, &c, &NoiseModel::gaussian(0.7, 1.0).unwrap(), &r, &[0.1, 1e-3], 1e-9).unwrap();
        assert!(g7.rows.last().unwrap().1 >= 1.0 - 1e-9);
        assert_eq!(g7.expected_limit, Some(1.0));
        assert_eq!(g7.holds, Some(true));

        let c0 = theorem_limit_check(&psi, &c, &NoiseModel::cauchy(0.0, 1.0).unwrap(), &r, &[1e-3, 1e-6], 1e-5).unwrap();
        let f = c0.rows.last().unwrap().1;
        assert!(f <= 0.5 + 1e-5);
        // P ~ gamma (1/l - 1/u) / pi for small gamma.
        let approx = 0.5 + 1e-6 * (1.0 / 0.5 - 1.0 / 2.7) / std::f64::consts::PI / 2.0;
        assert!((f - approx).abs() < 1e-10);
    }

    #[test]
    fn limit_with_werner_resource() {
        let r = EntanglementResource::new(0.6).unwrap();
        let rep = theorem_limit_check(
            &QubitState::from_bloch(0.8, 0.2),
            &paper_channel(),
            &NoiseModel::laplace(1.6, 1.0).unwrap(),
            &r,
            &[1e-2, 1e-4],
            1e-6,
        )
        .unwrap();
        assert!((rep.expected_limit.unwrap() - 0.8).abs() < 1e-12);
        assert_eq!(rep.holds, Some(true));
    }

    #[test]
    fn limit_grid_must_descend() {
        let c = paper_channel();
        let g = NoiseModel::gaussian(0.0, 1.0).unwrap();
        let go = |s: &[f64]| theorem_limit_check(&QubitState::plus(), &c, &g, &EntanglementResource::PERFECT, s, 1e-5);
        assert!(go(&[]).is_err());
        assert!(go(&[1e-3, 1e-2]).is_err());
        assert!(go(&[1e-3, -1.0]).is_err());
        let endpoint = theorem_limit_check(
            &QubitState::plus(),
            &c,
            &NoiseModel::gaussian(0.5, 1.0).unwrap(),
            &EntanglementResource::PERFECT,
            &[1e-3],
            1e-5,
        )
        .unwrap();
        assert!(endpoint.expected_limit.is_none() && endpoint.holds.is_none());
    }
}
