//! Channel and decode-error model: quasi-static Rayleigh fading with the
//! normal-approximation error probability for finite-length codewords.
//!
//! All rates are in nats per channel use and all logarithms are natural.

use crate::error::{Error, Result};
use crate::special;

/// Fading model for the channel gain `g = |h|^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Fading {
    /// `h ~ CN(0,1)`, so the gain pdf is `f_g(x) = e^{-x}` for `x >= 0`.
    #[default]
    RayleighUnitMean,
}

/// Transmit SNR and fading model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSpec {
    snr: f64,
    fading: Fading,
}

impl ChannelSpec {
    /// Rayleigh channel at the given linear SNR (`P > 0`, finite).
    pub fn rayleigh(snr: f64) -> Result<Self> {
        if !(snr > 0.0) || !snr.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "snr must be positive and finite, got {snr}"
            )));
        }
        Ok(Self {
            snr,
            fading: Fading::RayleighUnitMean,
        })
    }

    /// Linear transmit SNR `P`.
    pub fn snr(&self) -> f64 {
        self.snr
    }

    pub fn fading(&self) -> Fading {
        self.fading
    }
}

/// A codeword (or combined sub-codeword prefix): `length` channel uses
/// carrying `length * rate` nats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CodeBlock {
    length: u64,
    rate: f64,
}

impl CodeBlock {
    /// Block of `length >= 1` channel uses at `rate >= 0` nats per use.
    pub fn new(length: u64, rate: f64) -> Result<Self> {
        if length == 0 {
            return Err(Error::InvalidParameter(
                "block length must be at least 1".into(),
            ));
        }
        if !(rate >= 0.0) || !rate.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "rate must be finite and >= 0, got {rate}"
            )));
        }
        Ok(Self { length, rate })
    }

    /// Block carrying `nats` information nats over `length` channel uses.
    pub fn from_nats(length: u64, nats: f64) -> Result<Self> {
        if length == 0 {
            return Err(Error::InvalidParameter(
                "block length must be at least 1".into(),
            ));
        }
        Self::new(length, nats / length as f64)
    }

    pub fn length(&self) -> u64 {
        self.length
    }

    /// Rate in nats per channel use.
    pub fn rate(&self) -> f64 {
        self.rate
    }

    /// Information nats `K = L * R`.
    pub fn nats(&self) -> f64 {
        self.length as f64 * self.rate
    }
}

/// Normal-approximation argument
///
/// `W = sqrt(L) (ln(1 + gP) - R) / sqrt(1 - (1 + gP)^{-2})`
///
/// for a rate-`R` length-`L` code at fading gain `g`. The decode error
/// probability given `g` is `Q(W)`.
///
/// Limit conventions at `gain = 0`: `-inf` when `R > 0` (the numerator is
/// negative and the dispersion vanishes) and `+inf` when `R = 0` (a
/// zero-rate code always succeeds).
pub fn dispersion_argument(block: CodeBlock, spec: ChannelSpec, gain: f64) -> Result<f64> {
    dispersion_argument_continuous(block.length() as f64, block.rate(), spec, gain)
}

/// [`dispersion_argument`] with a real-valued length. The analysis layer
/// evaluates geometries at fractional cumulative lengths (exact equal
/// splits of odd parent codewords); the formula is continuous in `L`.
pub fn dispersion_argument_continuous(
    length: f64,
    rate: f64,
    spec: ChannelSpec,
    gain: f64,
) -> Result<f64> {
    if !gain.is_finite() || gain < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "gain must be finite and >= 0, got {gain}"
        )));
    }
    let s = gain * spec.snr();
    if s == 0.0 {
        return Ok(if rate > 0.0 {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        });
    }
    // (1+s)/sqrt(s(s+2)) == sqrt(1 + 1/(s(s+2))): stable for both tiny and
    // huge s (the product may overflow to inf, which correctly yields 1).
    let factor = (1.0 + 1.0 / (s * (s + 2.0))).sqrt();
    Ok(length.sqrt() * (s.ln_1p() - rate) * factor)
}

/// Conditional decode-error probability `Q(W)` of the block at gain `g`.
///
/// Non-increasing in `g`, and non-increasing in `L` at fixed `K = L R`.
pub fn conditional_error_prob(block: CodeBlock, spec: ChannelSpec, gain: f64) -> Result<f64> {
    Ok(special::q(dispersion_argument(block, spec, gain)?))
}

/// [`conditional_error_prob`] with a real-valued length.
pub fn conditional_error_prob_continuous(
    length: f64,
    rate: f64,
    spec: ChannelSpec,
    gain: f64,
) -> Result<f64> {
    Ok(special::q(dispersion_argument_continuous(
        length, rate, spec, gain,
    )?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(p: f64) -> ChannelSpec {
        ChannelSpec::rayleigh(p).unwrap()
    }

    /// Brute-force Gaussian tail by composite-Simpson refinement, independent
    /// of the erfc implementation in `special`.
    fn q_reference(x: f64) -> f64 {
        if x <= -40.0 {
            return 1.0;
        }
        if x >= 40.0 {
            return 0.0;
        }
        let pdf = |t: f64| (-0.5 * t * t).exp() / (2.0 * std::f64::consts::PI).sqrt();
        let (a, b) = (x, 40.0);
        let mut prev = 0.0;
        let mut n = 1024;
        loop {
            let h = (b - a) / n as f64;
            let mut s = pdf(a) + pdf(b);
            for i in 1..n {
                let w = if i % 2 == 1 { 4.0 } else { 2.0 };
                s += w * pdf(a + i as f64 * h);
            }
            let val = s * h / 3.0;
            if (val - prev).abs() < 1e-13 * val.abs() && n > 2048 {
                return val;
            }
            prev = val;
            n *= 2;
            if n > 1 << 22 {
                return val;
            }
        }
    }

    #[test]
    fn zero_numerator_at_threshold_gain() {
        // W = 0 exactly when gP = e^R - 1
        let p = 10.0;
        for r in [0.5f64, 1.0, 2.0] {
            let g = (r.exp() - 1.0) / p;
            let block = CodeBlock::new(100, r).unwrap();
            let w = dispersion_argument(block, spec(p), g).unwrap();
            assert!(w.abs() < 1e-10, "W = {w}");
            let eps = conditional_error_prob(block, spec(p), g).unwrap();
            assert!((eps - 0.5).abs() < 1e-10);
        }
    }

    #[test]
    fn zero_gain_limits() {
        let block = CodeBlock::new(250, 1.0).unwrap();
        assert_eq!(
            dispersion_argument(block, spec(5.0), 0.0).unwrap(),
            f64::NEG_INFINITY
        );
        assert_eq!(conditional_error_prob(block, spec(5.0), 0.0).unwrap(), 1.0);

        let zero_rate = CodeBlock::new(250, 0.0).unwrap();
        assert_eq!(
            dispersion_argument(zero_rate, spec(5.0), 0.0).unwrap(),
            f64::INFINITY
        );
        assert_eq!(
            conditional_error_prob(zero_rate, spec(5.0), 0.0).unwrap(),
            0.0
        );
    }

    #[test]
    fn frozen_reference_point() {
        // independent 40-digit evaluation of the formula
        let block = CodeBlock::new(300, 1.0).unwrap();
        let w = dispersion_argument(block, spec(10.0), 1.0).unwrap();
        assert!((w - 24.312931458338982).abs() < 1e-11, "W = {w:.15}");
    }

    #[test]
    fn error_prob_cross_checked_against_simpson_tail() {
        let block = CodeBlock::from_nats(300, 600.0).unwrap();
        let w = dispersion_argument(block, spec(10.0), 2.0).unwrap();
        assert!((w - 18.112_206_353_770_37).abs() < 1e-11, "W = {w:.15}");
        let eps = conditional_error_prob(block, spec(10.0), 2.0).unwrap();
        // reference: 1.276538669637992e-73
        assert!((eps - 1.276538669637992e-73).abs() / 1.276538669637992e-73 < 1e-12);

        // Simpson oracle at probabilities large enough to integrate directly
        for g in [0.5, 0.7, 0.9, 1.2] {
            let eps = conditional_error_prob(block, spec(10.0), g).unwrap();
            let w = dispersion_argument(block, spec(10.0), g).unwrap();
            let want = q_reference(w);
            assert!(
                (eps - want).abs() <= 1e-10 * want,
                "g={g}: eps={eps:e} want={want:e}"
            );
        }
    }

    #[test]
    fn monotone_in_gain_and_nested_in_length() {
        let p = spec(10.0);
        let k = 600.0;
        let short = CodeBlock::from_nats(300, k).unwrap();
        let long = CodeBlock::from_nats(600, k).unwrap();
        let mut prev = f64::INFINITY;
        for i in 0..=1000 {
            let g = 5.0 * i as f64 / 1000.0;
            let e_short = conditional_error_prob(short, p, g).unwrap();
            let e_long = conditional_error_prob(long, p, g).unwrap();
            assert!((0.0..=1.0).contains(&e_short));
            assert!((0.0..=1.0).contains(&e_long));
            // non-increasing in gain
            assert!(e_short <= prev + 1e-15, "g={g}");
            prev = e_short;
            // non-increasing in L at fixed K (the nested-decoding fact)
            assert!(e_long <= e_short + 1e-15, "g={g}");
        }
    }

    #[test]
    fn rejects_invalid_inputs() {
        let block = CodeBlock::new(100, 1.0).unwrap();
        assert!(dispersion_argument(block, spec(1.0), f64::NAN).is_err());
        assert!(dispersion_argument(block, spec(1.0), f64::INFINITY).is_err());
        assert!(dispersion_argument(block, spec(1.0), -0.5).is_err());
        assert!(ChannelSpec::rayleigh(0.0).is_err());
        assert!(ChannelSpec::rayleigh(f64::NAN).is_err());
        assert!(CodeBlock::new(0, 1.0).is_err());
        assert!(CodeBlock::new(10, -1.0).is_err());
    }
}
