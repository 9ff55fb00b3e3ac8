//! Throughput gain of optimized variable-length HARQ over the optimized
//! one-shot baseline across SNR, at a fixed payload.
//!
//! ```sh
//! cargo run --release --example throughput_gain
//! ```

use harq_fbl::optim::throughput_gain;
use harq_fbl::{ChannelSpec, Result};

fn main() -> Result<()> {
    let nats = 600.0;
    println!("K = {nats} nats, M = 2, free feedback (D^f = 0)");
    println!(
        "{:>7} {:>12} {:>12} {:>8} {:>18}",
        "SNR", "eta HARQ", "eta 1-shot", "gain", "HARQ lengths"
    );
    for snr_db in (0..=20).step_by(2) {
        let spec = ChannelSpec::rayleigh(10f64.powf(snr_db as f64 / 10.0))?;
        let gain = throughput_gain(spec, 2, 0.0, nats)?;
        println!(
            "{snr_db:>5} dB {:>12.6} {:>12.6} {:>7.2}% {:>18}",
            gain.variable.1.eta,
            gain.open_loop.1.eta,
            gain.delta_percent,
            format!("{:?}", gain.variable.0.lengths())
        );
    }
    Ok(())
}
