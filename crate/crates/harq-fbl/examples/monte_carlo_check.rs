//! Validate the analysis by simulation: a million packets against the
//! quadrature predictions, with confidence intervals.
//!
//! ```sh
//! cargo run --release --example monte_carlo_check
//! ```

use harq_fbl::harq::{outage_vector, throughput};
use harq_fbl::outage::OutageMethod;
use harq_fbl::sim::{simulate, SimConfig};
use harq_fbl::{ChannelSpec, HarqScheme, Result};

fn main() -> Result<()> {
    let scheme = HarqScheme::new(600.0, vec![300, 300], 60.0)?;
    let spec = ChannelSpec::rayleigh(10.0)?; // 10 dB
    let packets = 1_000_000;

    let omegas = outage_vector(&scheme, spec, OutageMethod::Oracle)?;
    let analytic = throughput(&scheme, &omegas)?;

    let stats = simulate(&SimConfig {
        scheme,
        spec,
        packets,
        seed: 2024,
        workers: 0,
    })?;

    println!("K = 600, lengths [300, 300], D = 60 uses, SNR = 10 dB, {packets} packets\n");
    for m in 0..stats.empirical_omegas.len() {
        println!(
            "Omega_{}: analytic {:.6}   empirical {:.6} +/- {:.6}",
            m + 1,
            omegas.omega(m + 1),
            stats.empirical_omegas[m],
            stats.omega_half_widths[m]
        );
    }
    println!(
        "eta:     analytic {:.6}   empirical {:.6} +/- {:.6}",
        analytic.eta, stats.empirical_throughput, stats.throughput_half_width
    );
    println!(
        "\nstopping rounds: {:?} decoded, {} undecodable",
        stats.decoded_at, stats.outage_count
    );
    println!(
        "channel uses {:.3e} total, {:.3e} nats delivered",
        stats.total_channel_uses, stats.delivered_nats
    );
    Ok(())
}
