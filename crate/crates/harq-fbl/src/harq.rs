//! Protocol-level accounting: schemes, expected channel uses, delivered
//! nats, and renewal-reward throughput including feedback delay.

use crate::channel::ChannelSpec;
use crate::error::{Error, Result};
use crate::outage::{estimate, OutageMethod, RoundGeometry};

/// Default floor on sub-codeword lengths; below ~100 channel uses the
/// normal-approximation decode model is no longer trustworthy.
pub const DEFAULT_MIN_SUBCODEWORD: u64 = 100;

/// An incremental-redundancy HARQ configuration: `K` nats encoded into a
/// parent codeword split into `M` sub-codewords of the given lengths, with
/// an ACK/NACK feedback delay of `D` channel uses after every round but
/// the last.
#[derive(Debug, Clone, PartialEq)]
pub struct HarqScheme {
    nats: f64,
    lengths: Vec<u64>,
    feedback_delay: f64,
}

impl HarqScheme {
    /// Scheme with the default sub-codeword length floor of 100.
    pub fn new(nats: f64, lengths: Vec<u64>, feedback_delay: f64) -> Result<Self> {
        Self::with_min_length(nats, lengths, feedback_delay, DEFAULT_MIN_SUBCODEWORD)
    }

    /// Scheme with an explicit sub-codeword length floor (>= 1). Analysis
    /// constructs such as the delay threshold need floors below 100.
    pub fn with_min_length(
        nats: f64,
        lengths: Vec<u64>,
        feedback_delay: f64,
        min_subcodeword: u64,
    ) -> Result<Self> {
        if !(nats > 0.0) || !nats.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "nats must be positive and finite, got {nats}"
            )));
        }
        if lengths.is_empty() {
            return Err(Error::InvalidParameter(
                "a scheme needs at least one round".into(),
            ));
        }
        let floor = min_subcodeword.max(1);
        if let Some(&bad) = lengths.iter().find(|&&l| l < floor) {
            return Err(Error::InvalidParameter(format!(
                "sub-codeword length {bad} below the floor of {floor}"
            )));
        }
        if !(feedback_delay >= 0.0) || !feedback_delay.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "feedback delay must be finite and >= 0, got {feedback_delay}"
            )));
        }
        Ok(Self {
            nats,
            lengths,
            feedback_delay,
        })
    }

    /// Maximum number of transmissions `M`.
    pub fn max_rounds(&self) -> usize {
        self.lengths.len()
    }

    /// Information payload `K` in nats.
    pub fn nats(&self) -> f64 {
        self.nats
    }

    /// Per-round sub-codeword lengths `l_1..l_M`.
    pub fn lengths(&self) -> &[u64] {
        &self.lengths
    }

    /// Feedback delay `D` in channel uses.
    pub fn feedback_delay(&self) -> f64 {
        self.feedback_delay
    }

    /// Cumulative length `l_(m) = l_1 + ... + l_m` (1-based `m`).
    pub fn cumulative_length(&self, m: usize) -> u64 {
        self.lengths[..m].iter().sum()
    }

    /// Parent codeword length `l_(M)`.
    pub fn parent_length(&self) -> u64 {
        self.cumulative_length(self.max_rounds())
    }

    /// Combined rate after round `m`: `R_(m) = K / l_(m)` (npcu).
    pub fn rate(&self, m: usize) -> f64 {
        self.nats / self.cumulative_length(m) as f64
    }

    /// Relative delay `D^f = D / l_(M)`.
    pub fn relative_delay(&self) -> f64 {
        self.feedback_delay / self.parent_length() as f64
    }

    /// Geometry of the combined code after round `m` (1-based).
    pub fn round_geometry(&self, m: usize) -> Result<RoundGeometry> {
        self.check_round(m)?;
        RoundGeometry::new(self.cumulative_length(m) as f64, self.nats)
    }

    fn check_round(&self, m: usize) -> Result<()> {
        if m == 0 || m > self.max_rounds() {
            return Err(Error::RoundIndexOutOfRange {
                index: m,
                max_rounds: self.max_rounds(),
            });
        }
        Ok(())
    }
}

/// Per-round outage estimates `Omega_1..Omega_M` tagged with the method
/// that produced them; `Omega_0 = 1` is materialized by [`OutageVector::omega`].
#[derive(Debug, Clone, PartialEq)]
pub struct OutageVector {
    values: Vec<f64>,
    method: OutageMethod,
}

impl OutageVector {
    pub fn new(values: Vec<f64>, method: OutageMethod) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameter("empty outage vector".into()));
        }
        if let Some(&bad) = values.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::InvalidParameter(format!(
                "outage probability {bad} outside [0, 1]"
            )));
        }
        Ok(Self { values, method })
    }

    /// `Omega_m`, with the `Omega_0 = 1` convention.
    pub fn omega(&self, m: usize) -> f64 {
        if m == 0 {
            1.0
        } else {
            self.values[m - 1]
        }
    }

    /// Number of rounds `M`.
    pub fn rounds(&self) -> usize {
        self.values.len()
    }

    /// Packet outage probability `Omega_M`.
    pub fn final_outage(&self) -> f64 {
        *self.values.last().unwrap()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn method(&self) -> OutageMethod {
        self.method
    }

    /// Non-increasing check; a violation means an estimator bug upstream,
    /// so it is rejected rather than silently sorted.
    pub(crate) fn check_monotone(&self) -> Result<()> {
        for (i, w) in self.values.windows(2).enumerate() {
            if w[1] > w[0] {
                return Err(Error::NonMonotoneOutage {
                    round: i + 2,
                    prev: w[0],
                    next: w[1],
                });
            }
        }
        Ok(())
    }
}

/// Compute the full outage vector of a scheme by one estimation method.
pub fn outage_vector(
    scheme: &HarqScheme,
    spec: ChannelSpec,
    method: OutageMethod,
) -> Result<OutageVector> {
    let values = (1..=scheme.max_rounds())
        .map(|m| Ok(estimate(scheme.round_geometry(m)?, spec, method)?.value))
        .collect::<Result<Vec<f64>>>()?;
    OutageVector::new(values, method)
}

/// Everything [`throughput`] knows about one operating point.
#[derive(Debug, Clone, PartialEq)]
pub struct ThroughputReport {
    /// Throughput in nats per channel use.
    pub eta: f64,
    /// Packet outage probability `Omega_M`.
    pub outage: f64,
    /// Expected channel uses per packet transmission period.
    pub expected_uses: f64,
    /// Expected delivered information nats per packet.
    pub expected_nats: f64,
    /// The per-round outage estimates the report was built from.
    pub omegas: OutageVector,
    /// Total channel uses if transmission stops at round m, `tau_(1..M)`.
    pub per_round_uses: Vec<f64>,
}

/// Total channel uses when transmission stops at the end of round `m`
/// (1-based): `l_(m) + m D` before the last round, `l_(M) + (M-1) D` at the
/// last round (no feedback after the final transmission).
pub fn stop_time(scheme: &HarqScheme, m: usize) -> Result<f64> {
    scheme.check_round(m)?;
    let rounds = scheme.max_rounds();
    let cumulative = scheme.cumulative_length(m) as f64;
    let feedbacks = if m == rounds { rounds - 1 } else { m };
    Ok(cumulative + feedbacks as f64 * scheme.feedback_delay())
}

fn check_compatible(scheme: &HarqScheme, omegas: &OutageVector) -> Result<()> {
    if omegas.rounds() != scheme.max_rounds() {
        return Err(Error::InvalidParameter(format!(
            "outage vector has {} rounds, scheme has {}",
            omegas.rounds(),
            scheme.max_rounds()
        )));
    }
    omegas.check_monotone()
}

/// Expected channel uses per packet transmission period:
///
/// `T = sum_{m=1}^M l_m Omega_{m-1} + D sum_{m=1}^{M-1} Omega_{m-1}`
pub fn expected_uses(scheme: &HarqScheme, omegas: &OutageVector) -> Result<f64> {
    check_compatible(scheme, omegas)?;
    let mut uses = 0.0;
    for (m, &len) in scheme.lengths().iter().enumerate() {
        uses += len as f64 * omegas.omega(m);
    }
    let mut feedback_weight = 0.0;
    for m in 1..scheme.max_rounds() {
        feedback_weight += omegas.omega(m - 1);
    }
    Ok(uses + scheme.feedback_delay() * feedback_weight)
}

/// Renewal-reward throughput `eta = K (1 - Omega_M) / T` with the full
/// per-round breakdown.
pub fn throughput(scheme: &HarqScheme, omegas: &OutageVector) -> Result<ThroughputReport> {
    let uses = expected_uses(scheme, omegas)?;
    let outage = omegas.final_outage();
    let expected_nats = scheme.nats() * (1.0 - outage);
    let per_round_uses = (1..=scheme.max_rounds())
        .map(|m| stop_time(scheme, m))
        .collect::<Result<Vec<f64>>>()?;
    Ok(ThroughputReport {
        eta: expected_nats / uses,
        outage,
        expected_uses: uses,
        expected_nats,
        omegas: omegas.clone(),
        per_round_uses,
    })
}

/// The same throughput written in terms of reciprocal rates and the
/// relative delay:
///
/// `eta = (1 - Omega_M) /
///        (sum_m (1/R_(m) - 1/R_(m-1)) Omega_{m-1} + (D^f/R_(M)) sum_{m<M} Omega_{m-1})`
///
/// with `1/R_(0) = 0`. Algebraically identical to [`throughput`]; kept as
/// an independent route so the identity can be checked.
pub fn throughput_rate_form(scheme: &HarqScheme, omegas: &OutageVector) -> Result<f64> {
    check_compatible(scheme, omegas)?;
    let k = scheme.nats();
    let mut denom = 0.0;
    let mut prev_inv_rate = 0.0; // 1/R_(0) = 0
    for m in 1..=scheme.max_rounds() {
        let inv_rate = scheme.cumulative_length(m) as f64 / k;
        denom += (inv_rate - prev_inv_rate) * omegas.omega(m - 1);
        prev_inv_rate = inv_rate;
    }
    let mut feedback_weight = 0.0;
    for m in 1..scheme.max_rounds() {
        feedback_weight += omegas.omega(m - 1);
    }
    let inv_final_rate = scheme.parent_length() as f64 / k;
    denom += scheme.relative_delay() * inv_final_rate * feedback_weight;
    Ok((1.0 - omegas.final_outage()) / denom)
}

/// Throughput of one-shot (open-loop) transmission of the whole parent
/// codeword: `eta = K (1 - Omega_M) / l_(M)`.
pub fn open_loop_throughput(length: u64, nats: f64, omega_m: f64) -> Result<f64> {
    if length == 0 {
        return Err(Error::InvalidParameter("length must be positive".into()));
    }
    if !(0.0..=1.0).contains(&omega_m) {
        return Err(Error::InvalidParameter(format!(
            "outage probability {omega_m} outside [0, 1]"
        )));
    }
    Ok(nats * (1.0 - omega_m) / length as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::ChannelSpec;
    use crate::outage::outage_oracle;
    use proptest::prelude::*;

    fn scheme(k: f64, lengths: &[u64], d: f64) -> HarqScheme {
        HarqScheme::new(k, lengths.to_vec(), d).unwrap()
    }

    fn omegas(values: &[f64]) -> OutageVector {
        OutageVector::new(values.to_vec(), OutageMethod::Oracle).unwrap()
    }

    #[test]
    fn stop_time_examples() {
        let s = scheme(600.0, &[300, 300], 60.0);
        assert_eq!(stop_time(&s, 1).unwrap(), 360.0);
        assert_eq!(stop_time(&s, 2).unwrap(), 660.0);
        let one_round = scheme(600.0, &[500], 1234.0);
        assert_eq!(stop_time(&one_round, 1).unwrap(), 500.0);
        assert!(stop_time(&s, 0).is_err());
        assert!(stop_time(&s, 3).is_err());
    }

    #[test]
    fn expected_uses_examples() {
        // always decode in round 1
        let s = scheme(600.0, &[300, 300], 0.0);
        assert_eq!(expected_uses(&s, &omegas(&[0.0, 0.0])).unwrap(), 300.0);
        // always use both rounds
        assert_eq!(expected_uses(&s, &omegas(&[1.0, 0.5])).unwrap(), 600.0);
        // direct substitution with delay
        let s = scheme(600.0, &[300, 300], 60.0);
        let uses = expected_uses(&s, &omegas(&[0.25, 0.1])).unwrap();
        assert_eq!(uses, 300.0 + 300.0 * 0.25 + 60.0);
        // range bounds
        assert!((300.0..=660.0).contains(&uses));
    }

    #[test]
    fn throughput_direct_substitution() {
        let s = scheme(600.0, &[300, 300], 0.0);
        let report = throughput(&s, &omegas(&[0.25, 0.01])).unwrap();
        assert_eq!(report.expected_uses, 375.0);
        assert!((report.eta - 600.0 * 0.99 / 375.0).abs() < 1e-15);
        assert_eq!(report.outage, 0.01);
        assert_eq!(report.per_round_uses, vec![300.0, 600.0]);
        assert!((report.eta - 1.584).abs() < 1e-12);
    }

    #[test]
    fn single_round_collapses_to_open_loop_bitwise() {
        for d in [0.0, 17.0, 500.0] {
            for om in [0.0, 0.3, 0.776542, 1.0] {
                let s = scheme(600.0, &[450], d);
                let report = throughput(&s, &omegas(&[om])).unwrap();
                let open = open_loop_throughput(450, 600.0, om).unwrap();
                assert_eq!(report.eta.to_bits(), open.to_bits());
            }
        }
    }

    #[test]
    fn open_loop_edges() {
        assert_eq!(open_loop_throughput(600, 600.0, 0.0).unwrap(), 1.0);
        assert_eq!(open_loop_throughput(600, 600.0, 1.0).unwrap(), 0.0);
        assert!(open_loop_throughput(600, 600.0, 1.5).is_err());
        assert!(open_loop_throughput(0, 600.0, 0.5).is_err());
    }

    #[test]
    fn open_loop_frozen_oracle_point() {
        // eta = R (1 - Omega) at K=600, L=600, P=10 with the oracle outage
        let spec = ChannelSpec::rayleigh(10.0).unwrap();
        let geom = crate::outage::RoundGeometry::new(600.0, 600.0).unwrap();
        let om = outage_oracle(geom, spec, 1e-10).unwrap().value;
        let eta = open_loop_throughput(600, 600.0, om).unwrap();
        let want = 0.8419521690523626;
        assert!(((eta - want) / want).abs() < 1e-9, "eta={eta:.15}");
    }

    #[test]
    fn non_monotone_omegas_rejected() {
        let s = scheme(600.0, &[300, 300], 0.0);
        let bad = omegas(&[0.2, 0.3]);
        assert!(matches!(
            expected_uses(&s, &bad),
            Err(Error::NonMonotoneOutage { round: 2, .. })
        ));
        assert!(throughput(&s, &bad).is_err());
        // equal adjacent entries are allowed (non-increasing, not strict)
        assert!(expected_uses(&s, &omegas(&[0.3, 0.3])).is_ok());
    }

    #[test]
    fn scheme_validation() {
        assert!(HarqScheme::new(600.0, vec![99, 300], 0.0).is_err());
        assert!(HarqScheme::new(600.0, vec![], 0.0).is_err());
        assert!(HarqScheme::new(0.0, vec![300], 0.0).is_err());
        assert!(HarqScheme::new(600.0, vec![300], -1.0).is_err());
        assert!(HarqScheme::with_min_length(600.0, vec![50, 50], 0.0, 50).is_ok());
        let s = scheme(600.0, &[100, 200, 300], 10.0);
        assert_eq!(s.parent_length(), 600);
        assert_eq!(s.cumulative_length(2), 300);
        assert!((s.rate(2) - 2.0).abs() < 1e-15);
        assert!((s.relative_delay() - 10.0 / 600.0).abs() < 1e-15);
    }

    prop_compose! {
        fn arb_case()(
            rounds in 1usize..=5,
            k in 50.0f64..4000.0,
            d in 0.0f64..500.0,
        )(
            lengths in proptest::collection::vec(100u64..2000, rounds),
            raw in proptest::collection::vec(0.0f64..=1.0, rounds),
            k in Just(k),
            d in Just(d),
        ) -> (HarqScheme, OutageVector) {
            let mut sorted = raw.clone();
            sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
            (
                HarqScheme::new(k, lengths, d).unwrap(),
                OutageVector::new(sorted, OutageMethod::Oracle).unwrap(),
            )
        }
    }

    proptest! {
        #[test]
        fn rate_form_identity((scheme, om) in arb_case()) {
            let report = throughput(&scheme, &om).unwrap();
            let eq5 = throughput_rate_form(&scheme, &om).unwrap();
            let denom = report.eta.abs().max(1e-300);
            prop_assert!(((report.eta - eq5) / denom).abs() < 1e-12,
                "direct {} vs rate-form {}", report.eta, eq5);
        }

        #[test]
        fn delay_strictly_decreases_throughput((scheme, om) in arb_case()) {
            prop_assume!(scheme.max_rounds() >= 2);
            let slower = HarqScheme::new(
                scheme.nats(),
                scheme.lengths().to_vec(),
                scheme.feedback_delay() + 50.0,
            ).unwrap();
            let eta_fast = throughput(&scheme, &om).unwrap().eta;
            let eta_slow = throughput(&slower, &om).unwrap().eta;
            // Omega_0 = 1 makes the feedback weight strictly positive
            prop_assert!(eta_slow < eta_fast);
        }

        #[test]
        fn expected_uses_in_range((scheme, om) in arb_case()) {
            let uses = expected_uses(&scheme, &om).unwrap();
            let max = scheme.parent_length() as f64
                + (scheme.max_rounds() - 1) as f64 * scheme.feedback_delay();
            prop_assert!(uses >= scheme.lengths()[0] as f64 - 1e-9);
            prop_assert!(uses <= max + 1e-9);
        }

        /// HARQ and one-shot share the packet outage, so HARQ wins exactly
        /// when its expected delay stays at or below the parent length.
        #[test]
        fn equal_outage_comparison((scheme, om) in arb_case()) {
            let report = throughput(&scheme, &om).unwrap();
            let open = open_loop_throughput(
                scheme.parent_length(),
                scheme.nats(),
                om.final_outage(),
            ).unwrap();
            let parent = scheme.parent_length() as f64;
            if report.expected_uses <= parent {
                prop_assert!(report.eta >= open * (1.0 - 1e-12));
            } else {
                prop_assert!(report.eta <= open * (1.0 + 1e-12));
            }
        }
    }
}
