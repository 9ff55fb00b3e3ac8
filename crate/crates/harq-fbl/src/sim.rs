//! Reproducible Monte Carlo validation of the HARQ analysis.
//!
//! Each packet draws one fading gain (quasi-static: the gain holds for all
//! rounds of that packet) and one uniform decode variable. The per-round
//! decode events must be nested — failing at a longer combined code implies
//! failing at every shorter prefix — so a single uniform `u` is compared
//! against the non-increasing conditional error probabilities
//! `eps_1 >= eps_2 >= ...`: the packet decodes at the first round with
//! `u >= eps_m`. This coupling makes `Pr(undecoded after m) = E[eps_m]`
//! exactly, sample by sample.
//!
//! Randomness is counter-based: packet `i` reads ChaCha8 streams `2i` (gain)
//! and `2i + 1` (decode), both derived from the run seed, so any degree of
//! parallelism produces bit-identical statistics.

use crate::channel::{conditional_error_prob, ChannelSpec, CodeBlock};
use crate::error::{Error, Result};
use crate::harq::{stop_time, HarqScheme};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Monte Carlo run configuration.
#[derive(Debug, Clone)]
pub struct SimConfig {
    pub scheme: HarqScheme,
    pub spec: ChannelSpec,
    /// Number of simulated packet transmissions.
    pub packets: u64,
    /// RNG seed; fixing it makes the output bit-identical for any worker count.
    pub seed: u64,
    /// Worker threads; 0 means the rayon default.
    pub workers: usize,
}

/// Aggregated simulation outcome. Every field is a deterministic function
/// of the per-round decode counts, so equality is exact across reruns.
#[derive(Debug, Clone, PartialEq)]
pub struct SimStats {
    /// Packets first decoded at round m (index m-1).
    pub decoded_at: Vec<u64>,
    /// Packets never decoded.
    pub outage_count: u64,
    pub packets: u64,
    pub seed: u64,
    /// Empirical `Omega_m` for m = 1..M.
    pub empirical_omegas: Vec<f64>,
    /// 95% confidence half-widths of the empirical omegas.
    pub omega_half_widths: Vec<f64>,
    /// Delivered nats / total channel uses (feedback included).
    pub empirical_throughput: f64,
    /// 95% confidence half-width of the throughput (ratio-estimator delta
    /// method).
    pub throughput_half_width: f64,
    /// Total channel uses across all packets.
    pub total_channel_uses: f64,
    /// Total delivered information nats.
    pub delivered_nats: f64,
}

const Z_95: f64 = 1.959963984540054;

/// Stopping class of one packet: `Some(m)` (1-based round) or `None` for
/// outage.
fn run_packet(
    blocks: &[CodeBlock],
    spec: ChannelSpec,
    base: &ChaCha8Rng,
    index: u64,
) -> Option<usize> {
    let mut gain_rng = base.clone();
    gain_rng.set_stream(2 * index);
    let ug: f64 = gain_rng.random();
    // inverse-CDF exponential sample, g = -ln(1 - u)
    let gain = -(-ug).ln_1p();

    let mut decode_rng = base.clone();
    decode_rng.set_stream(2 * index + 1);
    let u: f64 = decode_rng.random();

    for (m, block) in blocks.iter().enumerate() {
        let eps = conditional_error_prob(*block, spec, gain).expect("gain is finite");
        if u >= eps {
            return Some(m + 1);
        }
    }
    None
}

fn merge(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

/// Run the simulation described by `config`.
pub fn simulate(config: &SimConfig) -> Result<SimStats> {
    if config.packets == 0 {
        return Err(Error::InvalidParameter(
            "simulation needs at least one packet".into(),
        ));
    }
    let scheme = &config.scheme;
    let rounds = scheme.max_rounds();
    let blocks: Vec<CodeBlock> = (1..=rounds)
        .map(|m| CodeBlock::from_nats(scheme.cumulative_length(m), scheme.nats()))
        .collect::<Result<_>>()?;
    let base = ChaCha8Rng::seed_from_u64(config.seed);

    // slot `rounds` counts outages; u64 addition keeps the reduction exact
    // and associative, hence independent of work splitting
    let count_classes = |range: std::ops::Range<u64>| -> Vec<u64> {
        range
            .into_par_iter()
            .fold(
                || vec![0u64; rounds + 1],
                |mut acc, i| {
                    match run_packet(&blocks, config.spec, &base, i) {
                        Some(m) => acc[m - 1] += 1,
                        None => acc[rounds] += 1,
                    }
                    acc
                },
            )
            .reduce(|| vec![0u64; rounds + 1], merge)
    };

    let counts = if config.workers > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?
            .install(|| count_classes(0..config.packets))
    } else {
        count_classes(0..config.packets)
    };

    let decoded_at = counts[..rounds].to_vec();
    let outage_count = counts[rounds];
    debug_assert_eq!(
        decoded_at.iter().sum::<u64>() + outage_count,
        config.packets
    );

    Ok(assemble_stats(
        scheme,
        decoded_at,
        outage_count,
        config.packets,
        config.seed,
    ))
}

/// All statistics derive from the integer counts alone.
fn assemble_stats(
    scheme: &HarqScheme,
    decoded_at: Vec<u64>,
    outage_count: u64,
    packets: u64,
    seed: u64,
) -> SimStats {
    let rounds = scheme.max_rounds();
    let n = packets as f64;

    let mut empirical_omegas = Vec::with_capacity(rounds);
    let mut omega_half_widths = Vec::with_capacity(rounds);
    let mut survivors = packets;
    for &c in &decoded_at {
        survivors -= c;
        let om = survivors as f64 / n;
        empirical_omegas.push(om);
        omega_half_widths.push(Z_95 * (om * (1.0 - om) / n).sqrt());
    }

    let taus: Vec<f64> = (1..=rounds)
        .map(|m| stop_time(scheme, m).expect("round in range"))
        .collect();
    let mut total_uses = 0.0;
    for (m, &c) in decoded_at.iter().enumerate() {
        total_uses += c as f64 * taus[m];
    }
    total_uses += outage_count as f64 * taus[rounds - 1];

    let delivered = scheme.nats() * (packets - outage_count) as f64;
    let eta = delivered / total_uses;

    // delta method for the ratio estimator: per-packet residual
    // z = delivered - eta * uses has mean zero by construction
    let mut var_z = 0.0;
    for (m, &c) in decoded_at.iter().enumerate() {
        let z = scheme.nats() - eta * taus[m];
        var_z += c as f64 * z * z;
    }
    let z_out = -eta * taus[rounds - 1];
    var_z += outage_count as f64 * z_out * z_out;
    var_z /= n;
    let mean_uses = total_uses / n;
    let eta_half = Z_95 * (var_z / n).sqrt() / mean_uses;

    SimStats {
        decoded_at,
        outage_count,
        packets,
        seed,
        empirical_omegas,
        omega_half_widths,
        empirical_throughput: eta,
        throughput_half_width: eta_half,
        total_channel_uses: total_uses,
        delivered_nats: delivered,
    }
}
