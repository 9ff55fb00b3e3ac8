//! Per-round outage probabilities of incremental-redundancy HARQ.
//!
//! After `m` rounds the receiver has a combined code of cumulative length
//! `l` and rate `R = K/l`; the probability that decoding still fails is
//!
//! `Omega = int_0^inf e^{-x} Q(W(x)) dx`
//!
//! with `W` the normal-approximation argument from [`crate::channel`].
//! The integral has no closed form, so this module offers four
//! interchangeable routes:
//!
//! - [`outage_oracle`]: adaptive quadrature with an analytic tail bound
//!   (the reference the others are judged against)
//! - [`outage_high_snr`]: alternating series from partial integration with
//!   the dispersion denominator dropped (tight at medium/high SNR)
//! - [`outage_linearized`]: closed form from a piecewise-linear surrogate
//!   of `Q(W(x))` around the gain threshold (tight at all SNRs)
//! - [`outage_bounds`]: analytic lower/upper bounds, the upper minimized
//!   over a free parameter grid

use crate::channel::{conditional_error_prob_continuous, ChannelSpec};
use crate::error::{Error, Result};
use crate::quad::adaptive_quadrature;
use crate::special::{erfc, ln_q, ln_upper_gamma, q};

/// Geometry of one HARQ round: cumulative length, payload, and the derived
/// threshold parameters. The length is real-valued so that exact equal
/// splits of odd parent codewords can be analyzed; concrete schemes use
/// integer lengths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundGeometry {
    cumulative_length: f64,
    nats: f64,
}

impl RoundGeometry {
    /// `cumulative_length >= 1` channel uses carrying `nats > 0`.
    pub fn new(cumulative_length: f64, nats: f64) -> Result<Self> {
        if !(cumulative_length >= 1.0) || !cumulative_length.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "cumulative length must be >= 1, got {cumulative_length}"
            )));
        }
        if !(nats > 0.0) || !nats.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "nats must be positive and finite, got {nats}"
            )));
        }
        Ok(Self {
            cumulative_length,
            nats,
        })
    }

    pub fn cumulative_length(&self) -> f64 {
        self.cumulative_length
    }

    pub fn nats(&self) -> f64 {
        self.nats
    }

    /// Combined rate `R = K / l` in nats per channel use.
    pub fn rate(&self) -> f64 {
        self.nats / self.cumulative_length
    }

    /// Gain threshold `theta = (e^R - 1)/P`: the fading gain at which the
    /// asymptotic capacity meets the combined rate.
    pub fn theta(&self, spec: ChannelSpec) -> f64 {
        self.rate().exp_m1() / spec.snr()
    }

    /// Slope `b = sqrt(l P^2 / (e^{2R} - 1))` of the dispersion argument at
    /// the gain threshold; `1/b` is the width of the decode transition.
    pub fn slope(&self, spec: ChannelSpec) -> f64 {
        spec.snr() * (self.cumulative_length / (2.0 * self.rate()).exp_m1()).sqrt()
    }
}

/// Which route produced an outage estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutageMethod {
    Oracle,
    HighSnrSeries,
    Linearized,
    LowerBound,
    UpperBound,
}

impl OutageMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            OutageMethod::Oracle => "oracle",
            OutageMethod::HighSnrSeries => "high-snr",
            OutageMethod::Linearized => "linearized",
            OutageMethod::LowerBound => "lower-bound",
            OutageMethod::UpperBound => "upper-bound",
        }
    }
}

/// Method-specific evaluation details.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Diagnostics {
    Quadrature {
        /// Estimated absolute error including the tail bound.
        abs_error: f64,
        /// Analytic bound on the truncated tail.
        tail_bound: f64,
        evaluations: usize,
        subdivisions: usize,
        /// Segment budget the adaptive pass was allowed.
        budget: usize,
    },
    Series {
        /// Index after which the series was truncated.
        truncation_index: usize,
        /// Largest intermediate |term| / |final sum|.
        peak_to_sum: f64,
        /// Relative precision lost to cancellation.
        cancellation_estimate: f64,
    },
    Linearized {
        /// True when the surrogate window was clipped at zero gain.
        window_truncated: bool,
    },
    Bound {
        /// Chosen free parameter (upper bound only).
        epsilon: Option<f64>,
    },
}

/// An outage probability estimate tagged with its method.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutageEstimate {
    /// Estimate clamped to [0, 1].
    pub value: f64,
    /// Unclamped value, kept so tests can detect formula errors that
    /// clamping would mask.
    pub raw: f64,
    pub method: OutageMethod,
    pub diagnostics: Diagnostics,
}

fn clamp01(x: f64) -> f64 {
    x.clamp(0.0, 1.0)
}

/// Segment budget for the oracle's adaptive pass.
const ORACLE_MAX_SEGMENTS: usize = 4000;

/// Reference outage probability by adaptive quadrature of
/// `e^{-x} Q(W(x))` on `[0, x_max]`, with the analytic tail bound
/// `e^{-x_max}` folded into the error budget. `x_max` is chosen so the
/// tail sits below `tol * 1e-3` (and is pushed further out when the
/// integral itself is small, to keep the estimate relative).
///
/// `tol` is a relative tolerance in `(0, 1e-3]`.
pub fn outage_oracle(geom: RoundGeometry, spec: ChannelSpec, tol: f64) -> Result<OutageEstimate> {
    if !(tol > 0.0 && tol <= 1e-3) {
        return Err(Error::InvalidParameter(format!(
            "oracle tolerance must be in (0, 1e-3], got {tol}"
        )));
    }
    let (length, rate) = (geom.cumulative_length(), geom.rate());
    let f = |x: f64| {
        (-x).exp()
            * conditional_error_prob_continuous(length, rate, spec, x)
                .expect("grid gains are valid")
    };
    let theta = geom.theta(spec);
    let width = 1.0 / geom.slope(spec);

    let mut x_max = (2e3 / tol).ln();
    let mut points: Vec<f64> = [
        0.0,
        0.5 * theta,
        theta,
        theta + 3.0 * width,
        theta + 10.0 * width,
        theta + 1.0,
        2.0 * theta + 2.0,
    ]
    .iter()
    .copied()
    .filter(|&x| x > 0.0 && x < x_max)
    .collect();
    points.insert(0, 0.0);
    points.push(x_max);
    points.sort_by(|a, b| a.partial_cmp(b).unwrap());
    points.dedup();

    let mut result = adaptive_quadrature(&f, &points, 0.5 * tol, 0.0, ORACLE_MAX_SEGMENTS);
    let mut tail = (-x_max).exp();

    // The first pass pins down the magnitude; if the tail bound is not small
    // relative to it, extend the interval (the tail shrinks exponentially).
    if result.value > 0.0 && tail > 0.25 * tol * result.value {
        let x_ext = -(0.25 * tol * result.value).ln() + 1.0;
        if x_ext > x_max {
            let ext = adaptive_quadrature(
                &f,
                &[x_max, 0.5 * (x_max + x_ext), x_ext],
                0.5 * tol,
                0.25 * tol * result.value,
                256,
            );
            result.value += ext.value;
            result.abs_error += ext.abs_error;
            result.evaluations += ext.evaluations;
            result.subdivisions += ext.subdivisions;
            x_max = x_ext;
            tail = (-x_max).exp();
        }
    }

    let abs_error = result.abs_error + tail;
    let diagnostics = Diagnostics::Quadrature {
        abs_error,
        tail_bound: tail,
        evaluations: result.evaluations,
        subdivisions: result.subdivisions,
        budget: ORACLE_MAX_SEGMENTS,
    };
    if !result.converged || abs_error > tol * result.value.abs().max(f64::MIN_POSITIVE) {
        return Err(Error::NonConvergence {
            error_estimate: abs_error,
            target: tol * result.value.abs(),
            evaluations: result.evaluations,
        });
    }
    Ok(OutageEstimate {
        value: clamp01(result.value),
        raw: result.value,
        method: OutageMethod::Oracle,
        diagnostics,
    })
}

/// Hard cap multiplier guarding the alternating series against the
/// asymptotic divergence of its tail.
fn series_index_cap(geom: RoundGeometry) -> usize {
    let l = geom.cumulative_length();
    (geom.nats() + 20.0 * (2.0 * l).sqrt()).ceil() as usize
}

/// Medium/high-SNR outage approximation: drop the dispersion denominator,
/// integrate by parts and expand `e^{-t e^R / P}`, which yields
///
/// `Omega = A - (e^{1/P}/2) sum_i (-rho)^i/i! e^{i^2/(2l)} erfc(-(K+i)/sqrt(2l))`
///
/// with `A = erfc(-K/sqrt(2l))/2` and `rho = e^R/P`. The sum is asymptotic
/// (its far tail diverges), so it is truncated once terms stay below
/// `series_tol` relative to the partial sum; terms are built in
/// log-magnitude + sign form and accumulated with compensated summation.
///
/// Fails with [`Error::SeriesUnstable`] when a term overflows, when the
/// peak term exceeds `1e12` times the final sum, or when the cancellation
/// estimate exceeds `series_tol`; callers should fall back to
/// [`outage_oracle`] or [`outage_linearized`].
pub fn outage_high_snr(
    geom: RoundGeometry,
    spec: ChannelSpec,
    series_tol: f64,
) -> Result<OutageEstimate> {
    if !(series_tol > 0.0 && series_tol <= 1e-2) {
        return Err(Error::InvalidParameter(format!(
            "series tolerance must be in (0, 1e-2], got {series_tol}"
        )));
    }
    let p = spec.snr();
    let k = geom.nats();
    let l = geom.cumulative_length();
    let sql = (2.0 * l).sqrt();
    let ln_rho = geom.rate() - p.ln();

    let head = 0.5 * erfc(-k / sql);

    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64; // Kahan compensation
    let mut max_term = 0.0_f64;
    let mut ln_fact = 0.0_f64;
    let mut consecutive_small = 0;
    let mut truncation_index = 0;
    let cap = series_index_cap(geom);

    for i in 0..=cap {
        if i > 0 {
            ln_fact += (i as f64).ln();
        }
        let i_f = i as f64;
        let ln_mag = i_f * ln_rho - ln_fact + i_f * i_f / (2.0 * l);
        if ln_mag > 700.0 {
            return Err(Error::SeriesUnstable(format!(
                "term {i} magnitude exp({ln_mag:.1}) exceeds the overflow guard"
            )));
        }
        let term = ln_mag.exp() * erfc(-(k + i_f) / sql);
        let signed = if i % 2 == 0 { term } else { -term };
        let y = signed - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        max_term = max_term.max(term);
        truncation_index = i;
        if term < series_tol * sum.abs() {
            consecutive_small += 1;
            if consecutive_small >= 5 {
                break;
            }
        } else {
            consecutive_small = 0;
        }
    }

    let raw = head - (1.0 / p).exp() * 0.5 * sum;
    let peak_to_sum = if sum != 0.0 {
        max_term / sum.abs()
    } else {
        f64::INFINITY
    };
    let cancellation_estimate = f64::EPSILON * peak_to_sum;
    if peak_to_sum > 1e12 {
        return Err(Error::SeriesUnstable(format!(
            "peak term is {peak_to_sum:.2e} times the final sum"
        )));
    }
    if cancellation_estimate > series_tol {
        return Err(Error::SeriesUnstable(format!(
            "cancellation estimate {cancellation_estimate:.2e} exceeds tolerance {series_tol:.2e}"
        )));
    }
    Ok(OutageEstimate {
        value: clamp01(raw),
        raw,
        method: OutageMethod::HighSnrSeries,
        diagnostics: Diagnostics::Series {
            truncation_index,
            peak_to_sum,
            cancellation_estimate,
        },
    })
}

/// Closed-form outage from the piecewise-linear surrogate of `Q(W(x))`
/// tangent at the gain threshold: for window half-width
/// `w = sqrt(pi/(2 b^2))`,
///
/// `Omega = 1 - (b/sqrt(2 pi)) e^{-theta} (e^w - e^{-w})`
///
/// when the window lies inside `x >= 0`. When `theta < w` the window is
/// clipped at zero and the integral of the surrogate over
/// `[0, theta + w]` is used instead:
/// `Omega = 1/2 + (theta + e^{-(theta+w)} - 1) / (2 w)`.
pub fn outage_linearized(geom: RoundGeometry, spec: ChannelSpec) -> OutageEstimate {
    let theta = geom.theta(spec);
    let b = geom.slope(spec);
    let w = (std::f64::consts::PI / 2.0).sqrt() / b;

    let (raw, truncated) = if theta >= w {
        // (b/sqrt(2pi))(e^w - e^{-w}) e^{-theta} = e^{w-theta}(1 - e^{-2w})/(2w)
        let raw = 1.0 - (w - theta).exp() * (-(-2.0 * w).exp_m1()) / (2.0 * w);
        (raw, false)
    } else {
        let raw = 0.5 + (theta + (-(theta + w)).exp() - 1.0) / (2.0 * w);
        (raw, true)
    };
    OutageEstimate {
        value: clamp01(raw),
        raw,
        method: OutageMethod::Linearized,
        diagnostics: Diagnostics::Linearized {
            window_truncated: truncated,
        },
    }
}

/// Default free-parameter grid for the upper bound: 32 log-spaced points
/// in `[1e-6, 1]`.
pub fn default_eps_grid() -> Vec<f64> {
    (0..32)
        .map(|i| 10f64.powf(-6.0 + 6.0 * i as f64 / 31.0))
        .collect()
}

/// Analytic lower bound: replace `W(x)` by its tangent at the gain
/// threshold (valid because `W` is concave and `Q` decreasing), giving
///
/// `v = Q(-b theta) - e^{1/(2b^2) - theta} Q((1 - b^2 theta)/b)`.
fn lower_bound_raw(geom: RoundGeometry, spec: ChannelSpec) -> f64 {
    let theta = geom.theta(spec);
    let b = geom.slope(spec);
    let z = 1.0 / b - b * theta;
    // exponent + ln Q(z) cancels catastrophically when z is large; in that
    // regime substitute ln Q(z) = -z^2/2 + ln(erfcx(z/sqrt2)/2) and use
    // 1/(2b^2) - theta - z^2/2 = -b^2 theta^2 / 2 exactly.
    let exponent = if z > 8.0 {
        -0.5 * (b * theta) * (b * theta) + ln_q(z) + 0.5 * z * z
    } else {
        0.5 / (b * b) - theta + ln_q(z)
    };
    q(-b * theta) - exponent.exp()
}

/// Upper bound for one value of the free parameter `eps`:
///
/// `u = 1 - (e^{-theta} + e^{-psi})/2
///      + (1/2) e^{alpha} P^{-eps l} Gamma(1 - eps l, psi + 1/P)`
///
/// with `psi = (e^{R + eps/2} - 1)/P` and `alpha = 1/P + K eps + l eps^2/2`.
fn upper_bound_raw(geom: RoundGeometry, spec: ChannelSpec, eps: f64) -> Result<f64> {
    let p = spec.snr();
    let l = geom.cumulative_length();
    let k = geom.nats();
    let theta = geom.theta(spec);
    let psi = (geom.rate() + 0.5 * eps).exp_m1() / p;
    let alpha = 1.0 / p + k * eps + 0.5 * l * eps * eps;
    let gamma = ln_upper_gamma(1.0 - eps * l, psi + 1.0 / p)?;
    debug_assert_eq!(gamma.sign, 1);
    let ln_term = alpha - eps * l * p.ln() + gamma.ln_abs - std::f64::consts::LN_2;
    Ok(1.0 - 0.5 * ((-theta).exp() + (-psi).exp()) + ln_term.exp())
}

/// Lower and upper outage bounds. The lower bound has no free parameter;
/// the upper bound is minimized over `eps_grid` (ties broken toward the
/// smaller `eps`, which is recorded in the diagnostics).
pub fn outage_bounds(
    geom: RoundGeometry,
    spec: ChannelSpec,
    eps_grid: &[f64],
) -> Result<(OutageEstimate, OutageEstimate)> {
    if eps_grid.is_empty() || eps_grid.iter().any(|&e| !(e > 0.0)) {
        return Err(Error::InvalidParameter(
            "eps grid must be non-empty with positive entries".into(),
        ));
    }
    let raw_lower = lower_bound_raw(geom, spec);

    let mut best: Option<(f64, f64)> = None;
    let mut any_converged = false;
    let mut grid: Vec<f64> = eps_grid.to_vec();
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for &eps in &grid {
        match upper_bound_raw(geom, spec, eps) {
            Ok(u) => {
                any_converged = true;
                if best.is_none_or(|(b, _)| u < b) {
                    best = Some((u, eps));
                }
            }
            Err(Error::GammaKernelFailure) => continue,
            Err(e) => return Err(e),
        }
    }
    if !any_converged {
        return Err(Error::GammaKernelFailure);
    }
    let (raw_upper, eps_star) = best.expect("at least one converged");

    let lower = OutageEstimate {
        value: clamp01(raw_lower),
        raw: raw_lower,
        method: OutageMethod::LowerBound,
        diagnostics: Diagnostics::Bound { epsilon: None },
    };
    let upper_value = clamp01(raw_upper).max(lower.value); // fp guard: lower <= upper
    let upper = OutageEstimate {
        value: upper_value,
        raw: raw_upper,
        method: OutageMethod::UpperBound,
        diagnostics: Diagnostics::Bound {
            epsilon: Some(eps_star),
        },
    };
    Ok((lower, upper))
}

/// Default relative tolerance used when the oracle backs other surfaces.
pub const DEFAULT_ORACLE_TOL: f64 = 1e-8;
/// Default truncation tolerance for the high-SNR series.
pub const DEFAULT_SERIES_TOL: f64 = 1e-9;

/// Evaluate the outage probability by the requested method with default
/// tolerances.
pub fn estimate(
    geom: RoundGeometry,
    spec: ChannelSpec,
    method: OutageMethod,
) -> Result<OutageEstimate> {
    match method {
        OutageMethod::Oracle => outage_oracle(geom, spec, DEFAULT_ORACLE_TOL),
        OutageMethod::HighSnrSeries => outage_high_snr(geom, spec, DEFAULT_SERIES_TOL),
        OutageMethod::Linearized => Ok(outage_linearized(geom, spec)),
        OutageMethod::LowerBound => outage_bounds(geom, spec, &default_eps_grid()).map(|(l, _)| l),
        OutageMethod::UpperBound => outage_bounds(geom, spec, &default_eps_grid()).map(|(_, u)| u),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geom(l: f64, k: f64) -> RoundGeometry {
        RoundGeometry::new(l, k).unwrap()
    }

    fn spec(p: f64) -> ChannelSpec {
        ChannelSpec::rayleigh(p).unwrap()
    }

    #[test]
    fn geometry_internal_consistency() {
        // theta * b == sqrt(l) (e^R - 1) / sqrt(e^{2R} - 1)
        for (l, k, p) in [
            (300.0, 600.0, 10.0),
            (150.0, 300.0, 2.0),
            (600.0, 50.0, 31.6),
        ] {
            let g = geom(l, k);
            let s = spec(p);
            let lhs = g.theta(s) * g.slope(s);
            let r = g.rate();
            let rhs = l.sqrt() * r.exp_m1() / (2.0 * r).exp_m1().sqrt();
            assert!(
                ((lhs - rhs) / rhs).abs() < 1e-12,
                "l={l} k={k} p={p}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn oracle_frozen_regression_value() {
        // frozen from a tol=1e-10 run, cross-checked with 40-digit quadrature
        let est = outage_oracle(geom(600.0, 600.0), spec(10.0), 1e-10).unwrap();
        let want = 0.1580478309476374;
        assert!(
            ((est.value - want) / want).abs() < 1e-10,
            "got {:.16}",
            est.value
        );
    }

    #[test]
    fn oracle_zero_rate_limit() {
        // K -> 0+: under the decode model the outage shrinks to the
        // finite-length floor of order 1/(l P), not to zero: the dispersion
        // near zero gain keeps Q(W) ~ Q(sqrt(l P x / 2)) alive
        let est = outage_oracle(geom(600.0, 1e-6), spec(10.0), 1e-6).unwrap();
        let floor = 1.0 / (600.0 * 10.0);
        assert!(est.value < 2.0 * floor, "got {}", est.value);
        assert!(est.value > 0.5 * floor, "got {}", est.value);
    }

    #[test]
    fn oracle_asymptotic_step_limit() {
        // l -> inf at fixed rate: Omega -> 1 - e^{-theta}
        let g = geom(100_000.0, 100_000.0); // R = 1
        let s = spec(10.0);
        let want = -(-g.theta(s)).exp_m1();
        let est = outage_oracle(g, s, 1e-9).unwrap();
        assert!(((est.value - want) / want).abs() < 0.01);
    }

    #[test]
    fn oracle_self_consistency_on_tolerance_halving() {
        let g = geom(300.0, 600.0);
        let s = spec(10.0);
        let coarse = outage_oracle(g, s, 1e-6).unwrap();
        let fine = outage_oracle(g, s, 5e-7).unwrap();
        let reported = match coarse.diagnostics {
            Diagnostics::Quadrature { abs_error, .. } => abs_error,
            _ => unreachable!(),
        };
        assert!((coarse.value - fine.value).abs() <= reported.max(1e-15));
    }

    #[test]
    fn high_snr_series_matches_oracle_at_derived_points() {
        // (K=600, l=600, P=10 dB -> 10): within 2% relative
        let s10 = spec(10.0);
        let est = outage_high_snr(geom(600.0, 600.0), s10, 1e-9).unwrap();
        let oracle = outage_oracle(geom(600.0, 600.0), s10, 1e-9).unwrap();
        assert!(((est.value - oracle.value) / oracle.value).abs() < 0.02);

        // (K=300, l=300, P=100): within 2% relative
        let s100 = spec(100.0);
        let est = outage_high_snr(geom(300.0, 300.0), s100, 1e-9).unwrap();
        let oracle = outage_oracle(geom(300.0, 300.0), s100, 1e-9).unwrap();
        assert!(((est.value - oracle.value) / oracle.value).abs() < 0.02);
    }

    #[test]
    fn high_snr_series_flags_instability_at_low_snr() {
        // rho = e^4 is huge relative to P = 1: cancellation destroys the sum
        let err = outage_high_snr(geom(150.0, 600.0), spec(1.0), 1e-9);
        assert!(matches!(err, Err(Error::SeriesUnstable(_))), "{err:?}");
    }

    #[test]
    fn linearized_frozen_and_oracle_agreement() {
        // frozen from the closed form after oracle validation
        let est = outage_linearized(geom(300.0, 300.0), spec(5.0));
        let want = 0.2906692474434875;
        assert!(((est.value - want) / want).abs() < 1e-12, "{}", est.value);
        let oracle = outage_oracle(geom(300.0, 300.0), spec(5.0), 1e-9).unwrap();
        assert!(((est.value - oracle.value) / oracle.value).abs() < 0.01);

        // (K=600, l=600, P=2): low SNR, still within 1%
        let est = outage_linearized(geom(600.0, 600.0), spec(2.0));
        assert!(((est.value - 0.5761789960760886) / 0.5761789960760886).abs() < 1e-12);
        let oracle = outage_oracle(geom(600.0, 600.0), spec(2.0), 1e-9).unwrap();
        assert!(((est.value - oracle.value) / oracle.value).abs() < 0.01);
    }

    #[test]
    fn linearized_window_limit_is_step_outage() {
        // b -> inf: surrogate collapses to a step at theta
        let g = geom(10_000_000.0, 10_000_000.0); // R = 1, huge l
        let s = spec(10.0);
        let est = outage_linearized(g, s);
        let want = -(-g.theta(s)).exp_m1();
        assert!(((est.value - want) / want).abs() < 1e-4);
        assert!(matches!(
            est.diagnostics,
            Diagnostics::Linearized {
                window_truncated: false
            }
        ));
    }

    #[test]
    fn linearized_truncated_window_stays_in_range() {
        // tiny theta with a wide window forces the clipped branch
        let g = geom(100.0, 1.0); // R = 0.01
        let s = spec(100.0);
        let est = outage_linearized(g, s);
        assert!(matches!(
            est.diagnostics,
            Diagnostics::Linearized {
                window_truncated: true
            }
        ));
        assert!(est.raw >= 0.0 && est.raw <= 1.0);
        // oracle comparison: the surrogate is coarse here but must bracket 0..1
        let oracle = outage_oracle(g, s, 1e-8).unwrap();
        assert!(est.value <= 1.0 && oracle.value <= 1.0);
    }

    #[test]
    fn bounds_sandwich_oracle() {
        for (l, k, p) in [
            (600.0, 600.0, 10.0),
            (300.0, 600.0, 10.0),
            (600.0, 300.0, 1.0),
            (150.0, 600.0, 100.0),
            (150.0, 300.0, 2.0),
            (450.0, 600.0, 31.6),
            (600.0, 300.0, 0.316), // sub-0 dB
            (102.5, 300.0, 6.31),  // fractional equal-split length
        ] {
            let g = geom(l, k);
            let s = spec(p);
            let (lo, hi) = outage_bounds(g, s, &default_eps_grid()).unwrap();
            let oracle = outage_oracle(g, s, 1e-9).unwrap();
            assert!(
                lo.value <= oracle.value + 1e-9,
                "l={l} k={k} p={p}: v={} oracle={}",
                lo.value,
                oracle.value
            );
            assert!(
                oracle.value <= hi.value + 1e-9,
                "l={l} k={k} p={p}: oracle={} u={}",
                oracle.value,
                hi.value
            );
            assert!(lo.value <= hi.value);
            assert!(matches!(
                hi.diagnostics,
                Diagnostics::Bound { epsilon: Some(e) } if e > 0.0
            ));
        }
    }

    #[test]
    fn lower_bound_extreme_slope_regime() {
        // b*theta >> 1: v approaches the asymptotic outage and stays <= 1
        let g = geom(100_000.0, 200_000.0); // R = 2
        let s = spec(1.0);
        let v = lower_bound_raw(g, s);
        let asym = -(-g.theta(s)).exp_m1();
        assert!(v <= 1.0);
        assert!((v - asym).abs() < 1e-2, "v={v} asym={asym}");
    }

    #[test]
    fn monotone_nesting_across_methods() {
        // Omega must be non-increasing in cumulative length at fixed K
        let s = spec(5.0);
        let lengths = [150.0_f64, 300.0, 450.0, 600.0];
        for method in [
            OutageMethod::Oracle,
            OutageMethod::Linearized,
            OutageMethod::LowerBound,
            OutageMethod::UpperBound,
        ] {
            let vals: Vec<f64> = lengths
                .iter()
                .map(|&l| estimate(geom(l, 300.0), s, method).unwrap().value)
                .collect();
            for w in vals.windows(2) {
                assert!(w[1] <= w[0] + 1e-12, "{method:?}: {vals:?}");
            }
        }
    }

    #[test]
    fn all_methods_reach_asymptote_at_large_length() {
        let g = geom(100_000.0, 100_000.0); // R = 1
        let s = spec(10.0);
        let want = -(-g.theta(s)).exp_m1();
        for method in [
            OutageMethod::Oracle,
            OutageMethod::HighSnrSeries,
            OutageMethod::Linearized,
            OutageMethod::LowerBound,
            OutageMethod::UpperBound,
        ] {
            let est = estimate(g, s, method).unwrap();
            assert!(
                ((est.value - want) / want).abs() < 0.01,
                "{method:?}: {} vs {want}",
                est.value
            );
        }
    }

    #[test]
    fn bad_inputs_rejected() {
        assert!(RoundGeometry::new(0.0, 100.0).is_err());
        assert!(RoundGeometry::new(f64::NAN, 100.0).is_err());
        assert!(RoundGeometry::new(100.0, 0.0).is_err());
        assert!(RoundGeometry::new(100.0, f64::NAN).is_err());
        assert!(outage_oracle(geom(100.0, 100.0), spec(1.0), 0.0).is_err());
        assert!(outage_oracle(geom(100.0, 100.0), spec(1.0), 1e-2).is_err());
        assert!(outage_bounds(geom(100.0, 100.0), spec(1.0), &[]).is_err());
        assert!(outage_bounds(geom(100.0, 100.0), spec(1.0), &[0.0]).is_err());
    }
}
