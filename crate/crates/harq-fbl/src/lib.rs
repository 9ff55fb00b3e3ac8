//! Throughput analysis of incremental-redundancy HARQ with finite-length
//! codewords over quasi-static Rayleigh fading.
//!
//! The library computes per-round outage probabilities under the
//! normal-approximation decode model (by numerical integration, two
//! closed-form approximations, and analytic lower/upper bounds), turns them
//! into renewal-reward throughput including the cost of feedback delay,
//! optimizes information payload and sub-codeword lengths, derives the
//! largest relative feedback delay for which HARQ still beats one-shot
//! transmission, and validates everything by Monte Carlo simulation.
//!
//! Entry points:
//! - [`channel`]: fading model and conditional decode-error probability
//! - [`outage`]: per-round outage estimators and bounds
//! - [`harq`]: scheme accounting and throughput
//! - [`optim`]: throughput optimization and the feedback-delay threshold
//! - [`sim`]: reproducible parallel Monte Carlo
//! - [`cli`]: the `harq-fbl` command-line tool
//!
//! See the `examples/` directory for one runnable example per capability.

// `!(x > 0.0)` and friends deliberately reject NaN alongside the
// out-of-range values; the positive comparison would let NaN through
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod cli;
pub mod error;
pub mod harq;
pub mod optim;
pub mod outage;
pub mod quad;
pub mod sim;
pub mod special;

pub use channel::{ChannelSpec, CodeBlock, Fading};
pub use error::{Error, Result};
pub use harq::{HarqScheme, OutageVector, ThroughputReport};
pub use optim::{DelayThresholdReport, OptimizationProblem, SearchMode};
pub use outage::{OutageEstimate, OutageMethod, RoundGeometry};
pub use sim::{SimConfig, SimStats};
