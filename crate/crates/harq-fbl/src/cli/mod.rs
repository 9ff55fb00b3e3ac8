//! Command-line surface: single points, sweeps, optimization, the delay
//! threshold, and Monte Carlo runs, all emitted as CSV (plus gnuplot
//! scripts for the bundled figure sweeps).
//!
//! Exit codes: 0 success, 1 usage error, 2 numerical failure (the failing
//! point is named on stderr). Diagnostic verbosity is controlled by the
//! `HARQFBL_LOG` environment variable.

mod args;
mod output;

pub use args::{db_to_linear, parse_snr_axis};
pub use output::fmt_sig;

use crate::channel::ChannelSpec;
use crate::error::{Error, Result};
use crate::harq::{open_loop_throughput, outage_vector, throughput, HarqScheme};
use crate::optim::{
    delay_threshold, optimize_throughput, throughput_gain, OptimizationProblem, SearchMode,
};
use crate::outage::{
    default_eps_grid, estimate, outage_bounds, outage_high_snr, outage_linearized, outage_oracle,
    Diagnostics, OutageMethod, RoundGeometry, DEFAULT_ORACLE_TOL, DEFAULT_SERIES_TOL,
};
use crate::sim::{simulate, SimConfig};
use args::*;
use clap::Parser;
use log::warn;
use output::{join_list, write_plot_script, Csv, FIG1A_PLOT, FIG1B_PLOT, FIG1C_PLOT};
use rayon::prelude::*;
use std::path::PathBuf;

/// Parse `std::env::args` and run; returns the process exit code.
pub fn run() -> i32 {
    let _ =
        env_logger::Builder::from_env(env_logger::Env::default().filter_or("HARQFBL_LOG", "warn"))
            .format_timestamp(None)
            .try_init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };

    let result = match cli.command {
        Command::Outage(a) => cmd_outage(a),
        Command::Throughput(a) => cmd_throughput(a),
        Command::Openloop(a) => cmd_openloop(a),
        Command::Optimize(a) => cmd_optimize(a),
        Command::DelayThreshold(a) => cmd_delay_threshold(a),
        Command::Simulate(a) => cmd_simulate(a),
    };
    match result {
        Ok(()) => 0,
        Err(Error::Usage(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn spec_at(db: f64) -> Result<ChannelSpec> {
    ChannelSpec::rayleigh(db_to_linear(db))
}

fn at_point(db: f64, detail: &str, e: Error) -> Error {
    match e {
        Error::Usage(m) => Error::Usage(m),
        Error::InvalidParameter(m) => {
            Error::InvalidParameter(format!("at snr_db={db}{detail}: {m}"))
        }
        other => Error::InvalidParameter(format!("at snr_db={db}{detail}: {other}")),
    }
}

fn require<T>(value: Option<T>, what: &str) -> Result<T> {
    value.ok_or_else(|| Error::Usage(format!("{what} is required (flag or config file)")))
}

fn resolve_axis(
    cfg: &ConfigFile,
    flag: Option<String>,
    default: Option<&str>,
) -> Result<(String, Vec<f64>)> {
    let raw = match flag {
        Some(s) => s,
        None => match cfg.get("snr-db") {
            Some(s) => s.to_string(),
            None => match default {
                Some(d) => d.to_string(),
                None => return Err(Error::Usage("--snr-db is required".into())),
            },
        },
    };
    let axis = parse_snr_axis(&raw)?;
    Ok((raw, axis))
}

// ---------------------------------------------------------------------------
// outage
// ---------------------------------------------------------------------------

const OUTAGE_HEADER: &str =
    "snr_db,m,omega_oracle,omega_high_snr,omega_linearized,v_m,u_m,eps_star";

fn cmd_outage(args: OutageArgs) -> Result<()> {
    let cfg = ConfigFile::load(
        args.common.config.as_ref(),
        &["snr-db", "k", "lengths", "out"],
    )?;
    let (raw_axis, axis) = resolve_axis(&cfg, args.common.snr_db, None)?;
    let k = validate_nats(require(
        args.k.or(cfg.get("k").map(parse_f64).transpose()?),
        "--k",
    )?)?;
    let lengths_str = require(
        args.lengths
            .or_else(|| cfg.get("lengths").map(String::from)),
        "--lengths",
    )?;
    let lengths = parse_lengths(&lengths_str)?;
    let out = args
        .common
        .out
        .or_else(|| cfg.get("out").map(PathBuf::from));

    let cumulative: Vec<u64> = lengths
        .iter()
        .scan(0u64, |acc, &l| {
            *acc += l;
            Some(*acc)
        })
        .collect();

    let rows: Vec<Vec<String>> = axis
        .par_iter()
        .map(|&db| {
            let mut point_rows = Vec::new();
            let spec = spec_at(db).expect("positive linear SNR");
            for (m, &cum) in cumulative.iter().enumerate() {
                let mut fields = vec![fmt_sig(db), (m + 1).to_string()];
                match RoundGeometry::new(cum as f64, k) {
                    Ok(geom) => {
                        fields.push(field_or_empty(
                            outage_oracle(geom, spec, DEFAULT_ORACLE_TOL).map(|e| e.value),
                            db,
                            m + 1,
                            "oracle",
                        ));
                        fields.push(field_or_empty(
                            outage_high_snr(geom, spec, DEFAULT_SERIES_TOL).map(|e| e.value),
                            db,
                            m + 1,
                            "high-snr",
                        ));
                        fields.push(fmt_sig(outage_linearized(geom, spec).value));
                        match outage_bounds(geom, spec, &default_eps_grid()) {
                            Ok((lo, hi)) => {
                                fields.push(fmt_sig(lo.value));
                                fields.push(fmt_sig(hi.value));
                                let eps = match hi.diagnostics {
                                    Diagnostics::Bound { epsilon: Some(e) } => fmt_sig(e),
                                    _ => String::new(),
                                };
                                fields.push(eps);
                            }
                            Err(e) => {
                                warn!("snr_db={db} m={} bounds: {e}", m + 1);
                                fields.extend([String::new(), String::new(), String::new()]);
                            }
                        }
                    }
                    Err(e) => {
                        warn!("snr_db={db} m={}: {e}", m + 1);
                        fields.extend(std::iter::repeat_n(String::new(), 6));
                    }
                }
                point_rows.push(fields);
            }
            point_rows
        })
        .flatten()
        .collect();

    let mut csv = Csv::new("outage-v1", OUTAGE_HEADER);
    csv.config("snr-db", raw_axis)
        .config("k", fmt_sig(k))
        .config("lengths", join_list(&lengths, u64::to_string));
    for row in rows {
        csv.row(row);
    }
    csv.write(out.as_ref())
}

fn field_or_empty(res: Result<f64>, db: f64, m: usize, what: &str) -> String {
    match res {
        Ok(v) => fmt_sig(v),
        Err(e) => {
            warn!("snr_db={db} m={m} {what}: {e}");
            String::new()
        }
    }
}

// ---------------------------------------------------------------------------
// throughput
// ---------------------------------------------------------------------------

const THROUGHPUT_HEADER: &str =
    "snr_db,k,lengths,d,df,method,eta,outage,expected_uses,expected_nats,per_round_uses";

fn cmd_throughput(args: ThroughputArgs) -> Result<()> {
    let cfg = ConfigFile::load(
        args.common.config.as_ref(),
        &["snr-db", "k", "lengths", "df", "d", "method", "out"],
    )?;
    let (raw_axis, axis) = resolve_axis(&cfg, args.common.snr_db, None)?;
    let k = validate_nats(require(
        args.k.or(cfg.get("k").map(parse_f64).transpose()?),
        "--k",
    )?)?;
    let lengths_str = require(
        args.lengths
            .or_else(|| cfg.get("lengths").map(String::from)),
        "--lengths",
    )?;
    let lengths = parse_lengths(&lengths_str)?;
    let df = cfg.resolve(args.df, "df", parse_f64, 0.0)?;
    let d_flag = match args.d {
        Some(d) => Some(d),
        None => cfg.get("d").map(parse_f64).transpose()?,
    };
    let method = parse_method(&cfg.resolve(
        args.method,
        "method",
        |s| Ok(s.to_string()),
        "oracle".to_string(),
    )?)?;
    let out = args
        .common
        .out
        .or_else(|| cfg.get("out").map(PathBuf::from));

    let parent: u64 = lengths.iter().sum();
    let d = d_flag.unwrap_or(df * parent as f64);
    let scheme = HarqScheme::new(k, lengths.clone(), d).map_err(|e| Error::Usage(e.to_string()))?;

    let rows: Vec<Vec<String>> = axis
        .par_iter()
        .map(|&db| -> Result<Vec<String>> {
            let spec = spec_at(db)?;
            let omegas = outage_vector(&scheme, spec, method).map_err(|e| at_point(db, "", e))?;
            let report = throughput(&scheme, &omegas).map_err(|e| at_point(db, "", e))?;
            Ok(vec![
                fmt_sig(db),
                fmt_sig(k),
                join_list(&lengths, u64::to_string),
                fmt_sig(d),
                fmt_sig(scheme.relative_delay()),
                method.as_str().to_string(),
                fmt_sig(report.eta),
                fmt_sig(report.outage),
                fmt_sig(report.expected_uses),
                fmt_sig(report.expected_nats),
                join_list(&report.per_round_uses, |t| fmt_sig(*t)),
            ])
        })
        .collect::<Result<_>>()?;

    let mut csv = Csv::new("throughput-v1", THROUGHPUT_HEADER);
    csv.config("snr-db", raw_axis)
        .config("k", fmt_sig(k))
        .config("lengths", join_list(&lengths, u64::to_string))
        .config("d", fmt_sig(d))
        .config("df", fmt_sig(scheme.relative_delay()))
        .config("method", method.as_str());
    for row in rows {
        csv.row(row);
    }
    csv.write(out.as_ref())
}

// ---------------------------------------------------------------------------
// openloop
// ---------------------------------------------------------------------------

const OPENLOOP_HEADER: &str = "snr_db,k,length,method,eta,outage";

fn cmd_openloop(args: OpenloopArgs) -> Result<()> {
    let cfg = ConfigFile::load(
        args.common.config.as_ref(),
        &["snr-db", "k", "lengths", "method", "out"],
    )?;
    let (raw_axis, axis) = resolve_axis(&cfg, args.common.snr_db, None)?;
    let k = validate_nats(require(
        args.k.or(cfg.get("k").map(parse_f64).transpose()?),
        "--k",
    )?)?;
    let lengths_str = require(
        args.lengths
            .or_else(|| cfg.get("lengths").map(String::from)),
        "--lengths",
    )?;
    let lengths = parse_lengths(&lengths_str)?;
    if lengths.len() != 1 {
        return Err(Error::Usage(
            "openloop takes a single codeword length (one --lengths entry)".into(),
        ));
    }
    let length = lengths[0];
    let method = parse_method(&cfg.resolve(
        args.method,
        "method",
        |s| Ok(s.to_string()),
        "oracle".to_string(),
    )?)?;
    let out = args
        .common
        .out
        .or_else(|| cfg.get("out").map(PathBuf::from));

    let geom = RoundGeometry::new(length as f64, k).map_err(|e| Error::Usage(e.to_string()))?;
    let rows: Vec<Vec<String>> = axis
        .par_iter()
        .map(|&db| -> Result<Vec<String>> {
            let spec = spec_at(db)?;
            let omega = estimate(geom, spec, method)
                .map_err(|e| at_point(db, "", e))?
                .value;
            let eta = open_loop_throughput(length, k, omega)?;
            Ok(vec![
                fmt_sig(db),
                fmt_sig(k),
                length.to_string(),
                method.as_str().to_string(),
                fmt_sig(eta),
                fmt_sig(omega),
            ])
        })
        .collect::<Result<_>>()?;

    let mut csv = Csv::new("openloop-v1", OPENLOOP_HEADER);
    csv.config("snr-db", raw_axis)
        .config("k", fmt_sig(k))
        .config("length", length.to_string())
        .config("method", method.as_str());
    for row in rows {
        csv.row(row);
    }
    csv.write(out.as_ref())
}

// ---------------------------------------------------------------------------
// optimize (point sweeps and the bundled figure panels)
// ---------------------------------------------------------------------------

const OPTIMIZE_HEADER: &str = "snr_db,mode,k,lengths,df,eta,outage,expected_uses,expected_nats";
const FIG1A_HEADER: &str =
    "snr_db,eta_variable,k_variable,lengths_variable,eta_fixed,k_fixed,lengths_fixed";
const FIG1B_HEADER: &str = "snr_db,eta_variable,eta_openloop,gain_percent";
const FIG1C_HEADER: &str = "snr_db,k,m_max,open_loop_length,r,r_lower,r_upper";

fn cmd_optimize(args: OptimizeArgs) -> Result<()> {
    let cfg = ConfigFile::load(
        args.common.config.as_ref(),
        &["snr-db", "k", "max-rounds", "df", "mode", "method", "out"],
    )?;
    let mode_str = cfg.resolve(
        args.mode,
        "mode",
        |s| Ok(s.to_string()),
        "variable".to_string(),
    )?;
    let max_rounds = cfg.resolve(args.max_rounds, "max-rounds", parse_usize, 2)?;
    let df = cfg.resolve(args.df, "df", parse_f64, 0.0)?;
    let k_flag = match args.k {
        Some(k) => Some(k),
        None => cfg.get("k").map(parse_f64).transpose()?,
    }
    .map(validate_nats)
    .transpose()?;
    let method_flag = match args.method {
        Some(m) => Some(m),
        None => cfg.get("method").map(String::from),
    };
    // search modes default to the fast linearized estimator; the
    // delay-threshold panel defaults to the oracle like the standalone
    // delay-threshold command
    let method = parse_method(method_flag.as_deref().unwrap_or("linearized"))?;

    match mode_str.as_str() {
        "fig1a" | "fig1b" | "fig1c" => {
            let (raw_axis, axis) = resolve_axis(&cfg, args.common.snr_db, Some("0:20:1"))?;
            let out = args
                .common
                .out
                .or_else(|| cfg.get("out").map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from(format!("{mode_str}.csv")));
            match mode_str.as_str() {
                "fig1a" => fig1a(&raw_axis, &axis, k_flag, max_rounds, df, method, &out),
                "fig1b" => fig1b(
                    &raw_axis,
                    &axis,
                    k_flag.unwrap_or(600.0),
                    max_rounds,
                    df,
                    &out,
                ),
                _ => {
                    let ks = match k_flag {
                        Some(k) => vec![k],
                        None => vec![300.0, 600.0],
                    };
                    let method = parse_method(method_flag.as_deref().unwrap_or("oracle"))?;
                    fig1c(&raw_axis, &axis, &ks, max_rounds, method, &out)
                }
            }
        }
        "variable" | "fixed" | "openloop" => {
            let mode = match mode_str.as_str() {
                "variable" => SearchMode::VariableLength,
                "fixed" => SearchMode::FixedLength,
                _ => SearchMode::OpenLoop,
            };
            let (raw_axis, axis) = resolve_axis(&cfg, args.common.snr_db, None)?;
            let out = args
                .common
                .out
                .or_else(|| cfg.get("out").map(PathBuf::from));
            let rows: Vec<Vec<String>> = axis
                .par_iter()
                .map(|&db| -> Result<Vec<String>> {
                    let mut problem = OptimizationProblem::new(spec_at(db)?, max_rounds, mode)
                        .with_relative_delay(df)
                        .with_estimator(method);
                    if let Some(k) = k_flag {
                        problem = problem.with_fixed_nats(k);
                    }
                    let (scheme, report) =
                        optimize_throughput(&problem).map_err(|e| at_point(db, "", e))?;
                    Ok(vec![
                        fmt_sig(db),
                        mode_str.clone(),
                        fmt_sig(scheme.nats()),
                        join_list(scheme.lengths(), u64::to_string),
                        fmt_sig(df),
                        fmt_sig(report.eta),
                        fmt_sig(report.outage),
                        fmt_sig(report.expected_uses),
                        fmt_sig(report.expected_nats),
                    ])
                })
                .collect::<Result<_>>()?;
            let mut csv = Csv::new("optimize-v1", OPTIMIZE_HEADER);
            csv.config("snr-db", raw_axis)
                .config("mode", &mode_str)
                .config(
                    "k",
                    k_flag.map(fmt_sig).unwrap_or_else(|| "optimized".into()),
                )
                .config("max-rounds", max_rounds.to_string())
                .config("df", fmt_sig(df))
                .config("method", method.as_str());
            for row in rows {
                csv.row(row);
            }
            csv.write(out.as_ref())
        }
        other => Err(Error::Usage(format!(
            "unknown mode {other:?} (variable, fixed, openloop, fig1a, fig1b, fig1c)"
        ))),
    }
}

fn fig1a(
    raw_axis: &str,
    axis: &[f64],
    k_flag: Option<f64>,
    max_rounds: usize,
    df: f64,
    method: OutageMethod,
    out: &PathBuf,
) -> Result<()> {
    let rows: Vec<Vec<String>> = axis
        .par_iter()
        .map(|&db| -> Result<Vec<String>> {
            let spec = spec_at(db)?;
            let make = |mode| {
                let mut p = OptimizationProblem::new(spec, max_rounds, mode)
                    .with_relative_delay(df)
                    .with_estimator(method);
                if let Some(k) = k_flag {
                    p = p.with_fixed_nats(k);
                }
                optimize_throughput(&p)
            };
            let (vs, vr) =
                make(SearchMode::VariableLength).map_err(|e| at_point(db, " variable", e))?;
            let (fs, fr) = make(SearchMode::FixedLength).map_err(|e| at_point(db, " fixed", e))?;
            Ok(vec![
                fmt_sig(db),
                fmt_sig(vr.eta),
                fmt_sig(vs.nats()),
                join_list(vs.lengths(), u64::to_string),
                fmt_sig(fr.eta),
                fmt_sig(fs.nats()),
                join_list(fs.lengths(), u64::to_string),
            ])
        })
        .collect::<Result<_>>()?;

    let mut csv = Csv::new("fig1a-v1", FIG1A_HEADER);
    csv.config("snr-db", raw_axis)
        .config(
            "k",
            k_flag.map(fmt_sig).unwrap_or_else(|| "optimized".into()),
        )
        .config("max-rounds", max_rounds.to_string())
        .config("df", fmt_sig(df))
        .config("method", method.as_str());
    for row in rows {
        csv.row(row);
    }
    csv.write(Some(out))?;
    let gp = write_plot_script(out, FIG1A_PLOT)?;
    log::info!("wrote {} and {}", out.display(), gp.display());
    Ok(())
}

fn fig1b(
    raw_axis: &str,
    axis: &[f64],
    k: f64,
    max_rounds: usize,
    df: f64,
    out: &PathBuf,
) -> Result<()> {
    let rows: Vec<Vec<String>> = axis
        .par_iter()
        .map(|&db| -> Result<Vec<String>> {
            let spec = spec_at(db)?;
            let gain = throughput_gain(spec, max_rounds, df, k).map_err(|e| at_point(db, "", e))?;
            Ok(vec![
                fmt_sig(db),
                fmt_sig(gain.variable.1.eta),
                fmt_sig(gain.open_loop.1.eta),
                fmt_sig(gain.delta_percent),
            ])
        })
        .collect::<Result<_>>()?;

    let mut csv = Csv::new("fig1b-v1", FIG1B_HEADER);
    csv.config("snr-db", raw_axis)
        .config("k", fmt_sig(k))
        .config("max-rounds", max_rounds.to_string())
        .config("df", fmt_sig(df));
    for row in rows {
        csv.row(row);
    }
    csv.write(Some(out))?;
    let gp = write_plot_script(out, FIG1B_PLOT)?;
    log::info!("wrote {} and {}", out.display(), gp.display());
    Ok(())
}

fn fig1c(
    raw_axis: &str,
    axis: &[f64],
    ks: &[f64],
    max_rounds: usize,
    method: OutageMethod,
    out: &PathBuf,
) -> Result<()> {
    let rows = delay_threshold_rows(axis, ks, max_rounds, method)?;
    let mut csv = Csv::new("fig1c-v1", FIG1C_HEADER);
    csv.config("snr-db", raw_axis)
        .config("k", join_list(ks, |k| fmt_sig(*k)))
        .config("max-rounds", max_rounds.to_string())
        .config("method", method.as_str());
    for row in rows {
        csv.row(row);
    }
    csv.write(Some(out))?;
    let gp = write_plot_script(out, FIG1C_PLOT)?;
    log::info!("wrote {} and {}", out.display(), gp.display());
    Ok(())
}

fn delay_threshold_rows(
    axis: &[f64],
    ks: &[f64],
    max_rounds: usize,
    method: OutageMethod,
) -> Result<Vec<Vec<String>>> {
    axis.par_iter()
        .map(|&db| -> Result<Vec<Vec<String>>> {
            let spec = spec_at(db)?;
            let mut point_rows = Vec::new();
            for &k in ks {
                let report = delay_threshold(spec, max_rounds, k, method)
                    .map_err(|e| at_point(db, &format!(" k={k}"), e))?;
                point_rows.push(vec![
                    fmt_sig(db),
                    fmt_sig(k),
                    max_rounds.to_string(),
                    report.open_loop_length.to_string(),
                    fmt_sig(report.r),
                    fmt_sig(report.r_lower),
                    fmt_sig(report.r_upper),
                ]);
            }
            Ok(point_rows)
        })
        .collect::<Result<Vec<_>>>()
        .map(|nested| nested.into_iter().flatten().collect())
}

// ---------------------------------------------------------------------------
// delay-threshold
// ---------------------------------------------------------------------------

fn cmd_delay_threshold(args: DelayThresholdArgs) -> Result<()> {
    let cfg = ConfigFile::load(
        args.common.config.as_ref(),
        &["snr-db", "k", "max-rounds", "method", "out"],
    )?;
    let (raw_axis, axis) = resolve_axis(&cfg, args.common.snr_db, None)?;
    let ks = if args.k.is_empty() {
        match cfg.get("k") {
            Some(raw) => parse_k_list(&[raw.to_string()])?,
            None => vec![300.0, 600.0],
        }
    } else {
        parse_k_list(&args.k)?
    };
    for &k in &ks {
        validate_nats(k)?;
    }
    let max_rounds = cfg.resolve(args.max_rounds, "max-rounds", parse_usize, 2)?;
    let method = parse_method(&cfg.resolve(
        args.method,
        "method",
        |s| Ok(s.to_string()),
        "oracle".to_string(),
    )?)?;
    let out = args
        .common
        .out
        .or_else(|| cfg.get("out").map(PathBuf::from));

    let rows = delay_threshold_rows(&axis, &ks, max_rounds, method)?;
    let mut csv = Csv::new("delay-threshold-v1", FIG1C_HEADER);
    csv.config("snr-db", raw_axis)
        .config("k", join_list(&ks, |k| fmt_sig(*k)))
        .config("max-rounds", max_rounds.to_string())
        .config("method", method.as_str());
    for row in rows {
        csv.row(row);
    }
    csv.write(out.as_ref())
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

const SIMULATE_HEADER: &str = "snr_db,k,lengths,d,packets,seed,decoded_at,outage_count,\
empirical_omegas,omega_half_widths,eta,eta_half_width";

fn cmd_simulate(args: SimulateArgs) -> Result<()> {
    let cfg = ConfigFile::load(
        args.common.config.as_ref(),
        &[
            "snr-db", "k", "lengths", "d", "packets", "seed", "workers", "out",
        ],
    )?;
    let (raw_axis, axis) = resolve_axis(&cfg, args.common.snr_db, None)?;
    let k = validate_nats(require(
        args.k.or(cfg.get("k").map(parse_f64).transpose()?),
        "--k",
    )?)?;
    let lengths_str = require(
        args.lengths
            .or_else(|| cfg.get("lengths").map(String::from)),
        "--lengths",
    )?;
    let lengths = parse_lengths(&lengths_str)?;
    let d = cfg.resolve(args.d, "d", parse_f64, 0.0)?;
    let packets = cfg.resolve(args.packets, "packets", parse_u64, 100_000)?;
    let seed = cfg.resolve(args.seed, "seed", parse_u64, 0)?;
    let workers = cfg.resolve(args.workers, "workers", parse_usize, 0)?;
    let out = args
        .common
        .out
        .or_else(|| cfg.get("out").map(PathBuf::from));

    let scheme = HarqScheme::new(k, lengths.clone(), d).map_err(|e| Error::Usage(e.to_string()))?;

    // points run sequentially; each simulation is internally packet-parallel
    let mut rows = Vec::new();
    for &db in &axis {
        let config = SimConfig {
            scheme: scheme.clone(),
            spec: spec_at(db)?,
            packets,
            seed,
            workers,
        };
        let stats = simulate(&config).map_err(|e| at_point(db, "", e))?;
        rows.push(vec![
            fmt_sig(db),
            fmt_sig(k),
            join_list(&lengths, u64::to_string),
            fmt_sig(d),
            packets.to_string(),
            seed.to_string(),
            join_list(&stats.decoded_at, u64::to_string),
            stats.outage_count.to_string(),
            join_list(&stats.empirical_omegas, |v| fmt_sig(*v)),
            join_list(&stats.omega_half_widths, |v| fmt_sig(*v)),
            fmt_sig(stats.empirical_throughput),
            fmt_sig(stats.throughput_half_width),
        ]);
    }

    // `workers` is intentionally not echoed: output bytes must not depend
    // on the degree of parallelism
    let mut csv = Csv::new("simulate-v1", SIMULATE_HEADER);
    csv.config("snr-db", raw_axis)
        .config("k", fmt_sig(k))
        .config("lengths", join_list(&lengths, u64::to_string))
        .config("d", fmt_sig(d))
        .config("packets", packets.to_string())
        .config("seed", seed.to_string());
    for row in rows {
        csv.row(row);
    }
    csv.write(out.as_ref())
}
