//! Optimize the payload and sub-codeword lengths at a few SNR points in
//! both search modes and show what the extra freedom of variable-length
//! rounds buys.
//!
//! ```sh
//! cargo run --release --example optimize_scheme
//! ```

use harq_fbl::optim::optimize_throughput;
use harq_fbl::{ChannelSpec, OptimizationProblem, Result, SearchMode};

fn main() -> Result<()> {
    println!("M = 2, D^f = 0, K fixed at 600 nats");
    println!(
        "{:>7} {:>22} {:>12} {:>22} {:>12}",
        "SNR", "variable lengths", "eta", "fixed lengths", "eta"
    );
    for snr_db in [5.0, 10.0, 15.0, 20.0] {
        let spec = ChannelSpec::rayleigh(10f64.powf(snr_db / 10.0))?;
        let base =
            OptimizationProblem::new(spec, 2, SearchMode::VariableLength).with_fixed_nats(600.0);

        let (var_scheme, var_report) = optimize_throughput(&base)?;
        let mut fixed = base.clone();
        fixed.mode = SearchMode::FixedLength;
        let (fix_scheme, fix_report) = optimize_throughput(&fixed)?;

        println!(
            "{snr_db:>5} dB {:>22} {:>12.6} {:>22} {:>12.6}",
            format!("{:?}", var_scheme.lengths()),
            var_report.eta,
            format!("{:?}", fix_scheme.lengths()),
            fix_report.eta
        );
    }

    // freeing the payload as well (the full two-dimensional search)
    let spec = ChannelSpec::rayleigh(10.0)?;
    let free = OptimizationProblem::new(spec, 2, SearchMode::VariableLength);
    let (scheme, report) = optimize_throughput(&free)?;
    println!(
        "\n10 dB with K free: K = {:.0} nats, lengths {:?}, eta = {:.6} npcu, outage = {:.4}",
        scheme.nats(),
        scheme.lengths(),
        report.eta,
        report.outage
    );
    Ok(())
}
