//! Compare every outage estimator on one HARQ configuration.
//!
//! ```sh
//! cargo run --release --example outage_methods
//! ```

use harq_fbl::outage::{
    default_eps_grid, outage_bounds, outage_high_snr, outage_linearized, outage_oracle,
    Diagnostics, RoundGeometry,
};
use harq_fbl::{ChannelSpec, Result};

fn main() -> Result<()> {
    let nats = 600.0;
    let lengths = [300u64, 300];
    let snr_db = 10.0;
    let spec = ChannelSpec::rayleigh(10f64.powf(snr_db / 10.0))?;

    println!("K = {nats} nats, sub-codewords {lengths:?}, SNR = {snr_db} dB");
    println!(
        "{:>3} {:>14} {:>14} {:>14} {:>14} {:>14}",
        "m", "oracle", "high-snr", "linearized", "lower", "upper"
    );

    let mut cumulative = 0;
    for (m, &l) in lengths.iter().enumerate() {
        cumulative += l;
        let geom = RoundGeometry::new(cumulative as f64, nats)?;

        let oracle = outage_oracle(geom, spec, 1e-9)?;
        let series = outage_high_snr(geom, spec, 1e-9)
            .map(|e| format!("{:.10}", e.value))
            .unwrap_or_else(|_| "unstable".into());
        let lin = outage_linearized(geom, spec);
        let (lo, hi) = outage_bounds(geom, spec, &default_eps_grid())?;

        println!(
            "{:>3} {:>14.10} {:>14} {:>14.10} {:>14.10} {:>14.10}",
            m + 1,
            oracle.value,
            series,
            lin.value,
            lo.value,
            hi.value
        );
        if let Diagnostics::Bound { epsilon: Some(eps) } = hi.diagnostics {
            println!("    upper bound minimized at eps = {eps:.4e}");
        }
    }
    Ok(())
}
