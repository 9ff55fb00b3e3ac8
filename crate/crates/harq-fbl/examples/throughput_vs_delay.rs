//! How feedback delay eats into HARQ throughput: sweep the relative delay
//! of a fixed two-round scheme and print the renewal-reward throughput
//! next to the one-shot baseline with the same outage.
//!
//! ```sh
//! cargo run --release --example throughput_vs_delay
//! ```

use harq_fbl::harq::{open_loop_throughput, outage_vector, throughput};
use harq_fbl::outage::OutageMethod;
use harq_fbl::{ChannelSpec, HarqScheme, Result};

fn main() -> Result<()> {
    let nats = 600.0;
    let lengths = vec![300u64, 300];
    let parent: u64 = lengths.iter().sum();
    let spec = ChannelSpec::rayleigh(10.0)?; // 10 dB

    println!("K = {nats}, lengths {lengths:?}, SNR = 10 dB");
    println!(
        "{:>6} {:>10} {:>12} {:>12}",
        "D^f", "D (uses)", "eta (npcu)", "uses"
    );

    let mut open_loop = 0.0;
    for df in [0.0, 0.01, 0.02, 0.05, 0.1, 0.2, 0.5] {
        let delay = df * parent as f64;
        let scheme = HarqScheme::new(nats, lengths.clone(), delay)?;
        let omegas = outage_vector(&scheme, spec, OutageMethod::Oracle)?;
        let report = throughput(&scheme, &omegas)?;
        if df == 0.0 {
            open_loop = open_loop_throughput(parent, nats, report.outage)?;
        }
        println!(
            "{df:>6.2} {delay:>10.0} {:>12.6} {:>12.2}{}",
            report.eta,
            report.expected_uses,
            if report.eta < open_loop {
                "   <- one-shot wins"
            } else {
                ""
            }
        );
    }
    println!("one-shot baseline at the same parent length: {open_loop:.6} npcu");
    Ok(())
}
