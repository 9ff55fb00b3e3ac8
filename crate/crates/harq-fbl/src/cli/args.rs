//! Argument structures, the SNR axis grammar, and the key=value config file.
//!
//! Precedence: command-line flags override config-file entries, which
//! override built-in defaults.

use crate::error::{Error, Result};
use crate::outage::OutageMethod;
use clap::{Args, Parser, Subcommand};
use std::collections::BTreeMap;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "harq-fbl",
    version,
    about = "Finite-blocklength INR-HARQ throughput analysis over Rayleigh fading",
    after_help = "Set HARQFBL_LOG=debug for diagnostic output."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Per-round outage probabilities by every estimator, with bounds
    Outage(OutageArgs),
    /// HARQ throughput of a fixed scheme, feedback delay included
    Throughput(ThroughputArgs),
    /// One-shot (no-feedback) throughput of a single codeword
    Openloop(OpenloopArgs),
    /// Optimize payload and sub-codeword lengths; also drives the bundled
    /// figure sweeps
    Optimize(OptimizeArgs),
    /// Largest relative feedback delay for which HARQ still beats one-shot
    #[command(name = "delay-threshold")]
    DelayThreshold(DelayThresholdArgs),
    /// Monte Carlo validation of the analysis
    Simulate(SimulateArgs),
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// SNR axis in dB: a value ("10"), a list ("0,5,10"), or start:stop:step
    /// ("0:20:1"); negative dB is fine
    #[arg(long = "snr-db", allow_hyphen_values = true)]
    pub snr_db: Option<String>,
    /// Output CSV path (default: stdout)
    #[arg(long = "out")]
    pub out: Option<PathBuf>,
    /// key=value config file; flags override its entries
    #[arg(long = "config")]
    pub config: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct OutageArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Information payload K in nats
    #[arg(long)]
    pub k: Option<f64>,
    /// Comma-separated sub-codeword lengths, e.g. 300,300 (M is inferred)
    #[arg(long)]
    pub lengths: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct ThroughputArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long)]
    pub k: Option<f64>,
    #[arg(long)]
    pub lengths: Option<String>,
    /// Relative feedback delay D^f = D / parent length
    #[arg(long)]
    pub df: Option<f64>,
    /// Absolute feedback delay D in channel uses (overrides --df)
    #[arg(long)]
    pub d: Option<f64>,
    /// Outage estimator: oracle | high-snr | linearized | lower-bound | upper-bound
    #[arg(long)]
    pub method: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct OpenloopArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long)]
    pub k: Option<f64>,
    /// Single codeword length
    #[arg(long)]
    pub lengths: Option<String>,
    #[arg(long)]
    pub method: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Fix the payload K (nats); omitted: K is optimized over [50, 4000]
    #[arg(long)]
    pub k: Option<f64>,
    /// Maximum number of transmissions M
    #[arg(short = 'M', long = "max-rounds")]
    pub max_rounds: Option<usize>,
    /// Relative feedback delay D^f
    #[arg(long)]
    pub df: Option<f64>,
    /// variable | fixed | openloop | fig1a | fig1b | fig1c
    #[arg(long)]
    pub mode: Option<String>,
    /// Estimator driving the search (the result is re-evaluated with the
    /// oracle either way)
    #[arg(long)]
    pub method: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct DelayThresholdArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Payload K in nats; repeat or comma-separate for several curves
    #[arg(long)]
    pub k: Vec<String>,
    #[arg(short = 'M', long = "max-rounds")]
    pub max_rounds: Option<usize>,
    #[arg(long)]
    pub method: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long)]
    pub k: Option<f64>,
    #[arg(long)]
    pub lengths: Option<String>,
    /// Absolute feedback delay D in channel uses
    #[arg(long)]
    pub d: Option<f64>,
    /// Packets to simulate
    #[arg(long)]
    pub packets: Option<u64>,
    /// RNG seed; same seed and config give bit-identical output
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads (0 = all cores); does not affect the output
    #[arg(long)]
    pub workers: Option<usize>,
}

/// Parsed key=value config file.
#[derive(Debug, Default, Clone)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: Option<&PathBuf>, known_keys: &[&str]) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)?;
        let mut entries = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Usage(format!(
                    "{}:{}: expected key=value, got {line:?}",
                    path.display(),
                    lineno + 1
                )));
            };
            let key = key.trim().to_string();
            if !known_keys.contains(&key.as_str()) {
                return Err(Error::Usage(format!(
                    "{}:{}: unknown key {key:?} (known: {})",
                    path.display(),
                    lineno + 1,
                    known_keys.join(", ")
                )));
            }
            entries.insert(key, value.trim().to_string());
        }
        Ok(Self { entries })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    /// flag value if present, else config value parsed with `parse`, else default.
    pub fn resolve<T, F>(&self, flag: Option<T>, key: &str, parse: F, default: T) -> Result<T>
    where
        F: Fn(&str) -> Result<T>,
    {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.get(key) {
            Some(raw) => parse(raw),
            None => Ok(default),
        }
    }
}

pub fn parse_f64(s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|e| Error::Usage(format!("bad number {s:?}: {e}")))
}

pub fn parse_u64(s: &str) -> Result<u64> {
    s.trim()
        .parse::<u64>()
        .map_err(|e| Error::Usage(format!("bad integer {s:?}: {e}")))
}

pub fn parse_usize(s: &str) -> Result<usize> {
    s.trim()
        .parse::<usize>()
        .map_err(|e| Error::Usage(format!("bad integer {s:?}: {e}")))
}

/// Comma-separated sub-codeword lengths; M is the element count.
pub fn parse_lengths(s: &str) -> Result<Vec<u64>> {
    let lengths = s.split(',').map(parse_u64).collect::<Result<Vec<u64>>>()?;
    if lengths.is_empty() {
        return Err(Error::Usage("--lengths must not be empty".into()));
    }
    if lengths.contains(&0) {
        return Err(Error::Usage("sub-codeword lengths must be positive".into()));
    }
    Ok(lengths)
}

/// Payloads must be positive and finite.
pub fn validate_nats(k: f64) -> Result<f64> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::Usage(format!(
            "payload must be positive and finite, got {k}"
        )));
    }
    Ok(k)
}

/// The SNR axis: single value, comma list, or start:stop:step (inclusive).
pub fn parse_snr_axis(s: &str) -> Result<Vec<f64>> {
    let s = s.trim();
    let values: Vec<f64> = if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Usage(format!("expected start:stop:step, got {s:?}")));
        }
        let start = parse_f64(parts[0])?;
        let stop = parse_f64(parts[1])?;
        let step = parse_f64(parts[2])?;
        if !(step > 0.0) || stop < start {
            return Err(Error::Usage(format!(
                "need stop >= start and step > 0 in {s:?}"
            )));
        }
        let n = ((stop - start) / step + 0.5).floor() as usize;
        let mut v: Vec<f64> = (0..=n).map(|i| start + i as f64 * step).collect();
        if let Some(last) = v.last_mut() {
            if (*last - stop).abs() < 1e-9 {
                *last = stop;
            }
        }
        v.retain(|&x| x <= stop + 1e-9);
        v
    } else if s.contains(',') {
        s.split(',').map(parse_f64).collect::<Result<Vec<f64>>>()?
    } else {
        vec![parse_f64(s)?]
    };
    if values.is_empty() {
        return Err(Error::Usage("empty SNR axis".into()));
    }
    for w in values.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::Usage(format!(
                "SNR axis must be strictly increasing, got {} after {}",
                w[1], w[0]
            )));
        }
    }
    Ok(values)
}

/// dB to linear power ratio, exact on multiples of 10 dB (0 dB -> 1,
/// 10 dB -> 10, ...).
pub fn db_to_linear(db: f64) -> f64 {
    let e = db / 10.0;
    if e.fract() == 0.0 && e.abs() <= 30.0 {
        10f64.powi(e as i32)
    } else {
        10f64.powf(e)
    }
}

pub fn parse_method(s: &str) -> Result<OutageMethod> {
    match s.trim() {
        "oracle" => Ok(OutageMethod::Oracle),
        "high-snr" => Ok(OutageMethod::HighSnrSeries),
        "linearized" => Ok(OutageMethod::Linearized),
        "lower-bound" => Ok(OutageMethod::LowerBound),
        "upper-bound" => Ok(OutageMethod::UpperBound),
        other => Err(Error::Usage(format!(
            "unknown method {other:?} (oracle, high-snr, linearized, lower-bound, upper-bound)"
        ))),
    }
}

/// `--k` values for delay-threshold: repeatable flags and comma lists.
pub fn parse_k_list(raw: &[String]) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for item in raw {
        for tok in item.split(',') {
            out.push(parse_f64(tok)?);
        }
    }
    Ok(out)
}
