//! Throughput optimization over payload and sub-codeword lengths, the
//! open-loop baseline, the variable-length gain, and the feedback-delay
//! usefulness threshold.
//!
//! The search is a coarse grid over `(K, l_1..l_{M-1}, l_(M))` followed by
//! integer coordinate descent down to step 1. It is deterministic: grid
//! order is fixed and ties are broken toward the smaller parent length,
//! then the smaller payload. No global-optimality claim is made.

use crate::channel::ChannelSpec;
use crate::error::{Error, Result};
use crate::harq::{
    open_loop_throughput, outage_vector, throughput, HarqScheme, OutageVector, ThroughputReport,
};
use crate::outage::{default_eps_grid, outage_bounds, OutageMethod, RoundGeometry};

/// What the search is allowed to vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// All `M` sub-codeword lengths free.
    VariableLength,
    /// Equal-length rounds: only the parent length is free.
    FixedLength,
    /// One-shot transmission: a single codeword, no feedback.
    OpenLoop,
}

/// Search space and evaluation settings for [`optimize_throughput`].
#[derive(Debug, Clone)]
pub struct OptimizationProblem {
    pub spec: ChannelSpec,
    /// Maximum number of transmissions `M` (ignored in open-loop mode).
    pub max_rounds: usize,
    pub mode: SearchMode,
    /// Relative feedback delay `D^f`; the absolute delay of a candidate is
    /// `D^f * l_(M)`.
    pub relative_delay: f64,
    /// Inclusive payload range in nats; make both ends equal to fix `K`.
    pub k_range: (f64, f64),
    /// Inclusive parent-length range in channel uses.
    pub length_range: (u64, u64),
    /// Coarse grid resolution along `K`.
    pub k_grid: usize,
    /// Coarse grid resolution along the parent length.
    pub length_grid: usize,
    /// Coarse split fractions per free sub-codeword (variable-length mode).
    pub split_grid: usize,
    /// Floor on each sub-codeword length.
    pub min_subcodeword: u64,
    /// Outage estimator driving the search. The incumbent is always
    /// re-evaluated with the quadrature oracle and the reported throughput
    /// is the oracle value.
    pub estimator: OutageMethod,
}

impl OptimizationProblem {
    /// Defaults bracketing the operating points of interest:
    /// `K` in [50, 4000] nats, parent length up to 10^4 uses, length floor
    /// 100, linearized estimator for the search.
    pub fn new(spec: ChannelSpec, max_rounds: usize, mode: SearchMode) -> Self {
        Self {
            spec,
            max_rounds,
            mode,
            relative_delay: 0.0,
            k_range: (50.0, 4000.0),
            length_range: (100, 10_000),
            k_grid: 16,
            length_grid: 24,
            split_grid: 7,
            min_subcodeword: 100,
            estimator: OutageMethod::Linearized,
        }
    }

    /// Fix the payload to a single value.
    pub fn with_fixed_nats(mut self, nats: f64) -> Self {
        self.k_range = (nats, nats);
        self
    }

    pub fn with_relative_delay(mut self, df: f64) -> Self {
        self.relative_delay = df;
        self
    }

    pub fn with_estimator(mut self, estimator: OutageMethod) -> Self {
        self.estimator = estimator;
        self
    }

    fn rounds(&self) -> usize {
        match self.mode {
            SearchMode::OpenLoop => 1,
            _ => self.max_rounds,
        }
    }

    fn min_parent(&self) -> u64 {
        self.length_range
            .0
            .max(self.min_subcodeword * self.rounds() as u64)
    }
}

/// A point in the search space.
#[derive(Debug, Clone, PartialEq)]
struct Candidate {
    nats: f64,
    lengths: Vec<u64>,
}

impl Candidate {
    fn parent(&self) -> u64 {
        self.lengths.iter().sum()
    }

    /// Deterministic tie-break key: smaller parent length, then smaller
    /// payload, then lexicographically smaller lengths.
    fn tie_key(&self) -> (u64, f64, &[u64]) {
        (self.parent(), self.nats, &self.lengths)
    }
}

fn tie_prefers(new: &Candidate, old: &Candidate) -> bool {
    let (lp_n, k_n, ls_n) = new.tie_key();
    let (lp_o, k_o, ls_o) = old.tie_key();
    (lp_n, k_n, ls_n) < (lp_o, k_o, ls_o)
}

fn build_scheme(problem: &OptimizationProblem, cand: &Candidate) -> Result<HarqScheme> {
    let delay = problem.relative_delay * cand.parent() as f64;
    HarqScheme::with_min_length(
        cand.nats,
        cand.lengths.clone(),
        delay,
        problem.min_subcodeword,
    )
}

/// Equal-length split with the rounding remainder assigned to the last
/// round; the parent length stays exactly `total`. With many rounds and a
/// short parent the last entry can saturate to zero, which downstream
/// validation rejects.
fn fixed_split(total: u64, rounds: usize) -> Vec<u64> {
    let base = (total as f64 / rounds as f64).round() as u64;
    let mut lengths = vec![base; rounds];
    lengths[rounds - 1] = total.saturating_sub(base * (rounds as u64 - 1));
    lengths
}

struct Search<'a> {
    problem: &'a OptimizationProblem,
    best: Option<(f64, Candidate)>,
}

impl<'a> Search<'a> {
    fn new(problem: &'a OptimizationProblem) -> Self {
        Self {
            problem,
            best: None,
        }
    }

    fn valid(&self, cand: &Candidate) -> bool {
        let p = self.problem;
        let (kmin, kmax) = p.k_range;
        cand.nats >= kmin
            && cand.nats <= kmax
            && cand.lengths.len() == p.rounds()
            && cand.lengths.iter().all(|&l| l >= p.min_subcodeword)
            && cand.parent() >= p.length_range.0.max(p.rounds() as u64)
            && cand.parent() <= p.length_range.1
    }

    fn eta(&mut self, cand: &Candidate) -> Result<f64> {
        let scheme = build_scheme(self.problem, cand)?;
        let omegas = outage_vector(&scheme, self.problem.spec, self.problem.estimator)?;
        Ok(throughput(&scheme, &omegas)?.eta)
    }

    /// Evaluate and fold into the incumbent with the deterministic
    /// tie-break. Estimator failures (an unstable series, say) skip the
    /// candidate rather than aborting the search.
    fn consider(&mut self, cand: Candidate) -> Result<bool> {
        if !self.valid(&cand) {
            return Ok(false);
        }
        let eta = match self.eta(&cand) {
            Ok(v) => v,
            Err(Error::SeriesUnstable(_)) | Err(Error::NonConvergence { .. }) => return Ok(false),
            Err(e) => return Err(e),
        };
        match &self.best {
            None => {
                self.best = Some((eta, cand));
                Ok(true)
            }
            Some((best_eta, best_cand)) => {
                let improved = eta > best_eta * (1.0 + 1e-12);
                let tied = !improved && eta >= best_eta * (1.0 - 1e-12);
                if improved || (tied && tie_prefers(&cand, best_cand)) {
                    self.best = Some((eta, cand));
                    Ok(improved)
                } else {
                    Ok(false)
                }
            }
        }
    }
}

fn log_grid_f64(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if lo >= hi || n <= 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
        .collect()
}

fn log_grid_u64(lo: u64, hi: u64, n: usize) -> Vec<u64> {
    let mut grid: Vec<u64> = log_grid_f64(lo as f64, hi as f64, n)
        .into_iter()
        .map(|x| (x.round() as u64).clamp(lo, hi))
        .collect();
    grid.push(hi);
    grid.sort_unstable();
    grid.dedup();
    grid
}

/// Enumerate coarse length vectors for one parent length.
fn coarse_splits(problem: &OptimizationProblem, parent: u64) -> Vec<Vec<u64>> {
    let rounds = problem.rounds();
    match problem.mode {
        SearchMode::OpenLoop => vec![vec![parent]],
        SearchMode::FixedLength => vec![fixed_split(parent, rounds)],
        SearchMode::VariableLength => {
            if rounds == 1 {
                return vec![vec![parent]];
            }
            let g = problem.split_grid.max(1);
            let fracs: Vec<f64> = (1..=g).map(|j| j as f64 / (g + 1) as f64).collect();
            let mut out = Vec::new();
            let mut idx = vec![0usize; rounds - 1];
            loop {
                let mut lengths: Vec<u64> = Vec::with_capacity(rounds);
                let mut used = 0u64;
                let mut ok = true;
                for &i in &idx {
                    let l = (fracs[i] * parent as f64).round() as u64;
                    if l < problem.min_subcodeword || used + l >= parent {
                        ok = false;
                        break;
                    }
                    lengths.push(l);
                    used += l;
                }
                if ok {
                    let last = parent - used;
                    if last >= problem.min_subcodeword {
                        lengths.push(last);
                        out.push(lengths);
                    }
                }
                // odometer increment
                let mut j = 0;
                loop {
                    if j == idx.len() {
                        return out;
                    }
                    idx[j] += 1;
                    if idx[j] < fracs.len() {
                        break;
                    }
                    idx[j] = 0;
                    j += 1;
                }
            }
        }
    }
}

/// Neighbour moves of one coordinate at the given step.
fn neighbours(problem: &OptimizationProblem, cand: &Candidate, step: u64) -> Vec<Candidate> {
    let mut moves = Vec::new();
    let fstep = step as f64;
    // payload coordinate
    for dk in [fstep, -fstep] {
        let k = cand.nats + dk;
        if k >= problem.k_range.0 && k <= problem.k_range.1 {
            moves.push(Candidate {
                nats: k,
                lengths: cand.lengths.clone(),
            });
        }
    }
    match problem.mode {
        SearchMode::VariableLength => {
            for i in 0..cand.lengths.len() {
                for sign in [1i64, -1] {
                    let delta = sign * step as i64;
                    let new_len = cand.lengths[i] as i64 + delta;
                    if new_len < problem.min_subcodeword as i64 {
                        continue;
                    }
                    let mut lengths = cand.lengths.clone();
                    lengths[i] = new_len as u64;
                    moves.push(Candidate {
                        nats: cand.nats,
                        lengths,
                    });
                }
            }
        }
        SearchMode::FixedLength | SearchMode::OpenLoop => {
            let parent = cand.parent() as i64;
            for sign in [1i64, -1] {
                let new_parent = parent + sign * step as i64;
                if new_parent < problem.min_parent() as i64 {
                    continue;
                }
                moves.push(Candidate {
                    nats: cand.nats,
                    lengths: fixed_split(new_parent as u64, problem.rounds()),
                });
            }
        }
    }
    moves
}

/// Maximize throughput over the problem's search space. Returns the best
/// scheme found together with its oracle-evaluated throughput report.
pub fn optimize_throughput(
    problem: &OptimizationProblem,
) -> Result<(HarqScheme, ThroughputReport)> {
    if problem.rounds() == 0 {
        return Err(Error::InvalidParameter("max_rounds must be >= 1".into()));
    }
    if !(problem.relative_delay >= 0.0) || !problem.relative_delay.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "relative delay must be finite and >= 0, got {}",
            problem.relative_delay
        )));
    }
    let lo = problem.min_parent();
    let hi = problem.length_range.1;
    if lo > hi {
        return Err(Error::EmptyFeasibleSet(format!(
            "parent length range [{lo}, {hi}] is empty with {} rounds of at least {} uses",
            problem.rounds(),
            problem.min_subcodeword
        )));
    }
    if problem.k_range.0 > problem.k_range.1 || problem.k_range.0 <= 0.0 {
        return Err(Error::EmptyFeasibleSet(format!(
            "payload range [{}, {}] is empty",
            problem.k_range.0, problem.k_range.1
        )));
    }

    let k_values = if problem.k_range.0 == problem.k_range.1 {
        vec![problem.k_range.0]
    } else {
        log_grid_f64(problem.k_range.0, problem.k_range.1, problem.k_grid.max(2))
    };
    // open-loop search is one-dimensional in length: scan it exhaustively
    let parent_values = match problem.mode {
        SearchMode::OpenLoop if hi - lo <= 20_000 => (lo..=hi).collect(),
        _ => log_grid_u64(lo, hi, problem.length_grid.max(2)),
    };

    let mut search = Search::new(problem);
    for &k in &k_values {
        for &parent in &parent_values {
            for lengths in coarse_splits(problem, parent) {
                search.consider(Candidate { nats: k, lengths })?;
            }
        }
    }
    let Some((_, mut incumbent)) = search.best.clone() else {
        return Err(Error::EmptyFeasibleSet(
            "no candidate inside the bounds survived evaluation".into(),
        ));
    };

    // integer coordinate descent, shrinking the step down to 1
    let coarse_gap = ((hi - lo) as f64 / problem.length_grid.max(2) as f64 / 2.0).ceil() as u64;
    let mut step = coarse_gap.max(1);
    loop {
        let mut moved = true;
        while moved {
            moved = false;
            for next in neighbours(problem, &incumbent, step) {
                if search.consider(next.clone())? {
                    incumbent = next;
                    moved = true;
                }
            }
        }
        if step == 1 {
            break;
        }
        step = (step / 4).max(1);
    }

    let (_, best) = search.best.clone().expect("incumbent exists");
    let scheme = build_scheme(problem, &best)?;
    let omegas = outage_vector(&scheme, problem.spec, OutageMethod::Oracle)?;
    let report = throughput(&scheme, &omegas)?;
    Ok((scheme, report))
}

/// Variable-length HARQ against the open-loop baseline at the same payload.
#[derive(Debug, Clone)]
pub struct GainReport {
    /// `100 (eta - eta_open_loop) / eta_open_loop`.
    pub delta_percent: f64,
    pub variable: (HarqScheme, ThroughputReport),
    pub open_loop: (HarqScheme, ThroughputReport),
}

/// Throughput gain of variable-length HARQ over the open-loop scheme, both
/// optimized at the same fixed payload `K`. The open-loop baseline
/// optimizes its own packet length.
pub fn throughput_gain(
    spec: ChannelSpec,
    max_rounds: usize,
    relative_delay: f64,
    nats: f64,
) -> Result<GainReport> {
    let variable = optimize_throughput(
        &OptimizationProblem::new(spec, max_rounds, SearchMode::VariableLength)
            .with_fixed_nats(nats)
            .with_relative_delay(relative_delay),
    )?;
    let open_loop = optimize_throughput(
        &OptimizationProblem::new(spec, 1, SearchMode::OpenLoop).with_fixed_nats(nats),
    )?;
    let delta_percent = 100.0 * (variable.1.eta - open_loop.1.eta) / open_loop.1.eta;
    Ok(GainReport {
        delta_percent,
        variable,
        open_loop,
    })
}

/// The feedback-delay usefulness threshold and its analytic bounds.
#[derive(Debug, Clone)]
pub struct DelayThresholdReport {
    /// Largest relative delay for which fixed-length HARQ is guaranteed to
    /// beat the open-loop scheme: `D^f <= r` implies `eta >= eta_open_loop`.
    pub r: f64,
    /// Lower end from the upper outage bounds.
    pub r_lower: f64,
    /// Upper end from the lower outage bounds.
    pub r_upper: f64,
    /// The fixed-length scheme the threshold refers to.
    pub scheme: HarqScheme,
    /// `Omega_1..Omega_{M-1}` used in the threshold.
    pub omegas: OutageVector,
    /// Open-loop-optimal parent length.
    pub open_loop_length: u64,
    /// Open-loop throughput at that length (oracle outage).
    pub open_loop_eta: f64,
}

/// Sufficient condition for HARQ usefulness: optimize the packet length for
/// open-loop throughput, split it into `M` equal-length rounds, and find
/// the largest relative delay `r` keeping the expected HARQ delay at or
/// below the one-shot length:
///
/// `r = (1 - (1/M) sum_{m=1}^{M} Omega_{m-1}) / sum_{m=1}^{M-1} Omega_{m-1}`
///
/// with `Omega_0 = 1`. The ends of the reported interval replace the
/// omegas by their analytic upper/lower bounds (the threshold decreases in
/// every `Omega_m`, so the bounds sandwich `r`).
///
/// The omegas are evaluated at the exact equal split — cumulative lengths
/// `m l_(M) / M`, fractional when `M` does not divide the parent — so that
/// the threshold, its bounds, and the throughput comparison it certifies
/// are mutually consistent. The reported scheme is the integer realization
/// (rounding remainder on the last round, length floor relaxed: the
/// construction is dictated by the open-loop optimum, which may sit below
/// twice the usual floor).
pub fn delay_threshold(
    spec: ChannelSpec,
    max_rounds: usize,
    nats: f64,
    estimator: OutageMethod,
) -> Result<DelayThresholdReport> {
    if max_rounds < 2 {
        return Err(Error::InvalidParameter(
            "the delay threshold needs at least two rounds".into(),
        ));
    }
    let open_problem = OptimizationProblem::new(spec, 1, SearchMode::OpenLoop)
        .with_fixed_nats(nats)
        .with_estimator(estimator);
    let (open_scheme, open_report) = optimize_throughput(&open_problem)?;
    let parent = open_scheme.parent_length();

    let scheme = HarqScheme::with_min_length(nats, fixed_split(parent, max_rounds), 0.0, 1)?;

    let round_geom =
        |m: usize| RoundGeometry::new(m as f64 * parent as f64 / max_rounds as f64, nats);
    let mut omegas = Vec::with_capacity(max_rounds - 1);
    for m in 1..max_rounds {
        omegas.push(crate::outage::estimate(round_geom(m)?, spec, estimator)?.value);
    }
    let omega_vec = OutageVector::new(omegas.clone(), estimator)?;

    // r from the measured omegas, Omega_0 = 1
    let m = max_rounds as f64;
    let sum_all: f64 = 1.0 + omegas.iter().sum::<f64>(); // Omega_0..Omega_{M-1}
    let sum_fb: f64 = 1.0 + omegas[..max_rounds - 2].iter().sum::<f64>(); // Omega_0..Omega_{M-2}
    let r = (1.0 - sum_all / m) / sum_fb;

    // bound ends: u_m lowers r, v_m raises it
    let mut sum_u = 0.0;
    let mut sum_u_head = 0.0;
    let mut sum_v = 0.0;
    let mut sum_v_head = 0.0;
    let eps_grid = default_eps_grid();
    for round in 1..max_rounds {
        let (lo, hi) = outage_bounds(round_geom(round)?, spec, &eps_grid)?;
        sum_u += hi.value;
        sum_v += lo.value;
        if round <= max_rounds - 2 {
            sum_u_head += hi.value;
            sum_v_head += lo.value;
        }
    }
    let r_lower = (m - 1.0 - sum_u) / (m * (1.0 + sum_u_head));
    let r_upper = (m - 1.0 - sum_v) / (m * (1.0 + sum_v_head));

    Ok(DelayThresholdReport {
        r,
        r_lower,
        r_upper,
        scheme,
        omegas: omega_vec,
        open_loop_length: parent,
        open_loop_eta: open_report.eta,
    })
}

/// Renewal-reward throughput of the exact `rounds`-way equal split of
/// `parent` at relative delay `df`, from per-round outage estimates
/// `Omega_1..Omega_M` taken at the same fractional cumulative lengths.
/// This is the quantity the delay threshold reasons about.
pub fn equal_split_throughput(
    parent: u64,
    rounds: usize,
    nats: f64,
    df: f64,
    omegas: &OutageVector,
) -> Result<f64> {
    if omegas.rounds() != rounds || rounds == 0 {
        return Err(Error::InvalidParameter(format!(
            "need {rounds} outage entries, got {}",
            omegas.rounds()
        )));
    }
    omegas.check_monotone()?;
    let sub = parent as f64 / rounds as f64;
    let mut uses = 0.0;
    let mut feedback_weight = 0.0;
    for m in 1..=rounds {
        uses += sub * omegas.omega(m - 1);
        if m < rounds {
            feedback_weight += omegas.omega(m - 1);
        }
    }
    uses += df * parent as f64 * feedback_weight;
    Ok(nats * (1.0 - omegas.final_outage()) / uses)
}

/// Open-loop throughput of a given length with the oracle outage, used by
/// consistency checks against the threshold.
pub fn open_loop_eta_at(spec: ChannelSpec, length: u64, nats: f64) -> Result<f64> {
    let geom = crate::outage::RoundGeometry::new(length as f64, nats)?;
    let omega = crate::outage::estimate(geom, spec, OutageMethod::Oracle)?.value;
    open_loop_throughput(length, nats, omega)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(p: f64) -> ChannelSpec {
        ChannelSpec::rayleigh(p).unwrap()
    }

    #[test]
    fn fixed_split_assigns_remainder_to_last() {
        assert_eq!(fixed_split(600, 2), vec![300, 300]);
        assert_eq!(fixed_split(205, 2), vec![103, 102]);
        assert_eq!(fixed_split(301, 3), vec![100, 100, 101]);
        assert_eq!(fixed_split(299, 3), vec![100, 100, 99]);
        assert_eq!(fixed_split(500, 1), vec![500]);
        // rounding up with many rounds saturates instead of wrapping; the
        // zero length is rejected by scheme validation downstream
        assert_eq!(fixed_split(20, 8).last(), Some(&0));
    }

    #[test]
    fn delay_threshold_three_rounds() {
        let report = delay_threshold(spec(10.0), 3, 600.0, OutageMethod::Linearized).unwrap();
        assert!(report.r_lower <= report.r && report.r <= report.r_upper);
        assert!(report.r >= 0.0 && report.r <= 2.0 / 3.0);
        assert_eq!(report.omegas.rounds(), 2);
        assert_eq!(report.scheme.max_rounds(), 3);
        // too many rounds for the optimal parent is a clean error
        assert!(delay_threshold(spec(10.0), 500, 600.0, OutageMethod::Linearized).is_err());
    }

    #[test]
    fn fixed_one_round_reduces_to_open_loop() {
        let s = spec(10.0);
        let fixed = OptimizationProblem::new(s, 1, SearchMode::FixedLength).with_fixed_nats(600.0);
        let open = OptimizationProblem::new(s, 1, SearchMode::OpenLoop).with_fixed_nats(600.0);
        let (scheme_f, report_f) = optimize_throughput(&fixed).unwrap();
        let (scheme_o, report_o) = optimize_throughput(&open).unwrap();
        assert_eq!(scheme_f.lengths(), scheme_o.lengths());
        assert_eq!(report_f.eta, report_o.eta);
    }

    #[test]
    fn variable_dominates_fixed_at_high_snr() {
        let s = spec(100.0);
        let base =
            OptimizationProblem::new(s, 2, SearchMode::VariableLength).with_fixed_nats(600.0);
        let (_, var) = optimize_throughput(&base).unwrap();
        let mut fixed = base.clone();
        fixed.mode = SearchMode::FixedLength;
        let (_, fix) = optimize_throughput(&fixed).unwrap();
        assert!(
            var.eta >= fix.eta,
            "variable {} < fixed {}",
            var.eta,
            fix.eta
        );
        assert!(fix.eta > 0.0);
    }

    #[test]
    fn optimizer_is_deterministic() {
        let problem = OptimizationProblem::new(spec(10.0), 2, SearchMode::VariableLength)
            .with_fixed_nats(600.0);
        let (a_scheme, a_report) = optimize_throughput(&problem).unwrap();
        let (b_scheme, b_report) = optimize_throughput(&problem).unwrap();
        assert_eq!(a_scheme, b_scheme);
        assert_eq!(a_report.eta.to_bits(), b_report.eta.to_bits());
    }

    #[test]
    fn gain_is_zero_for_single_round() {
        let report = throughput_gain(spec(10.0), 1, 0.0, 600.0).unwrap();
        assert!(
            report.delta_percent.abs() < 1e-9,
            "delta = {}",
            report.delta_percent
        );
    }

    #[test]
    fn gain_positive_at_high_snr_and_negative_with_huge_delay() {
        let up = throughput_gain(spec(100.0), 2, 0.0, 600.0).unwrap();
        assert!(up.delta_percent > 0.0, "delta = {}", up.delta_percent);
        let down = throughput_gain(spec(100.0), 2, 50.0, 600.0).unwrap();
        assert!(down.delta_percent < 0.0, "delta = {}", down.delta_percent);
    }

    #[test]
    fn empty_bounds_are_rejected() {
        let mut p = OptimizationProblem::new(spec(10.0), 2, SearchMode::VariableLength);
        p.length_range = (100, 150); // cannot fit two rounds of >= 100
        assert!(matches!(
            optimize_throughput(&p),
            Err(Error::EmptyFeasibleSet(_))
        ));
    }

    #[test]
    fn delay_threshold_limits() {
        // near-perfect round-1 decoding: r -> (M-1)/M
        let perfect = delay_threshold(spec(1e8), 2, 300.0, OutageMethod::Linearized).unwrap();
        assert!(
            (perfect.r - 0.5).abs() < 1e-3,
            "r = {} (expected ~1/2)",
            perfect.r
        );
        // hopeless channel: round 1 always fails, r -> 0
        let hopeless = delay_threshold(spec(1e-4), 2, 600.0, OutageMethod::Linearized).unwrap();
        assert!(hopeless.r < 1e-6, "r = {}", hopeless.r);
    }

    #[test]
    fn delay_threshold_sandwich_and_m1_rejection() {
        let report = delay_threshold(spec(10.0), 2, 600.0, OutageMethod::Oracle).unwrap();
        assert!(
            report.r_lower <= report.r && report.r <= report.r_upper,
            "{} <= {} <= {}",
            report.r_lower,
            report.r,
            report.r_upper
        );
        assert!(delay_threshold(spec(10.0), 1, 600.0, OutageMethod::Oracle).is_err());
    }
}
