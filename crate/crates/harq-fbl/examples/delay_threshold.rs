//! The largest relative feedback delay for which two-round HARQ is still
//! guaranteed to beat one-shot transmission, with its analytic sandwich.
//!
//! ```sh
//! cargo run --release --example delay_threshold
//! ```

use harq_fbl::optim::delay_threshold;
use harq_fbl::outage::OutageMethod;
use harq_fbl::{ChannelSpec, Result};

fn main() -> Result<()> {
    println!("M = 2, fixed-length rounds at the one-shot-optimal parent length");
    println!(
        "{:>7} {:>6} {:>8} {:>10} {:>10} {:>10}",
        "SNR", "K", "parent", "r_lower", "r", "r_upper"
    );
    for snr_db in (0..=20).step_by(4) {
        let spec = ChannelSpec::rayleigh(10f64.powf(snr_db as f64 / 10.0))?;
        for nats in [300.0, 600.0] {
            let report = delay_threshold(spec, 2, nats, OutageMethod::Oracle)?;
            println!(
                "{snr_db:>5} dB {nats:>6.0} {:>8} {:>10.6} {:>10.6} {:>10.6}",
                report.open_loop_length, report.r_lower, report.r, report.r_upper
            );
        }
    }
    println!("\nfeedback arriving within r * parent-length channel uses keeps HARQ ahead");
    Ok(())
}
