//! Minimum distance of CSS codes.
//!
//! The X distance is the least weight of a vector in `ker H_Z` outside
//! `rowspace H_X`; the Z distance swaps the roles. Two tools are provided:
//!
//! * [`estimate_distance`]: randomized information sets. Every trial picks a
//!   random column order, brings a kernel basis to reduced echelon form with
//!   pivots taken in that order, and inspects each reduced row and each sum of
//!   two rows. The result is an upper bound with a witness.
//! * [`exact_distance`]: a proof of the minimum. The default engine grows
//!   candidate supports one qubit at a time, always branching on a violated
//!   check, with iterative deepening on the weight. Completing depth `w`
//!   proves that no logical of weight `≤ w` exists. A Brouwer–Zimmermann
//!   enumeration over disjoint information sets is available as an alternate.
//!
//! Stabilizer membership inside the hot loops uses pairings with the opposite
//! logical operators: a kernel vector lies in the stabilizer row space iff it
//! commutes with every opposite logical. Reported witnesses are rechecked by
//! elimination before being returned.

use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codegen::{logical_basis, Certainty, CodeParameters, StabilizerCode};
use crate::gf2::{BitMatrix, BitVec, Echelon};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DistanceError {
    #[error("no logical qubits (k = 0)")]
    NoLogicals,
    #[error("trial count must be at least 1")]
    ZeroTrials,
}

/// Which logical type is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// X-type logicals: `ker H_Z \ rowspace H_X`.
    X,
    /// Z-type logicals: `ker H_X \ rowspace H_Z`.
    Z,
    /// Smaller of the two.
    Min,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::X => "X",
            Side::Z => "Z",
            Side::Min => "min",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceResult {
    /// Exact value, or the bound named by `certainty`.
    pub value: usize,
    pub certainty: Certainty,
    /// Best proven lower bound (1 when nothing was proven).
    pub lower: usize,
    /// Weight of the best logical found, if any.
    pub upper: Option<usize>,
    /// Column indices of a logical operator of weight `upper`.
    pub witness: Option<Vec<usize>>,
    /// Side the witness belongs to (X or Z, also for `Side::Min` queries).
    pub side: Side,
    pub trials_used: usize,
    pub nodes_explored: u64,
    pub seed: u64,
}

impl DistanceResult {
    fn from_bounds(
        side: Side,
        lower: usize,
        upper: Option<(usize, BitVec)>,
        trials_used: usize,
        nodes: u64,
        seed: u64,
    ) -> Self {
        let (value, certainty) = match &upper {
            Some((u, _)) if *u <= lower => (*u, Certainty::Exact),
            Some((u, _)) => (*u, Certainty::UpperBound),
            None => (lower, Certainty::LowerBound),
        };
        let lower = match certainty {
            Certainty::Exact => value,
            _ => lower,
        };
        DistanceResult {
            value,
            certainty,
            lower,
            upper: upper.as_ref().map(|(u, _)| *u),
            witness: upper.map(|(_, w)| w.ones().collect()),
            side,
            trials_used,
            nodes_explored: nodes,
            seed,
        }
    }

    pub fn witness_vec(&self, n: usize) -> Option<BitVec> {
        self.witness
            .as_ref()
            .map(|idx| BitVec::from_indices(n, idx.iter().copied()))
    }
}

/// The matrices describing one side: logicals live in `ker(opposite)` and are
/// trivial when in `rowspace(same)`; `dual` holds opposite-type logicals.
struct Problem<'a> {
    side: Side,
    same: &'a BitMatrix,
    opposite: &'a BitMatrix,
    dual: Vec<BitVec>,
}

impl<'a> Problem<'a> {
    fn new(code: &'a StabilizerCode, side: Side) -> Result<Self, DistanceError> {
        let basis = logical_basis(code.h_x(), code.h_z()).map_err(|_| DistanceError::NoLogicals)?;
        Ok(match side {
            Side::X => Problem {
                side,
                same: code.h_x(),
                opposite: code.h_z(),
                dual: basis.z,
            },
            Side::Z => Problem {
                side,
                same: code.h_z(),
                opposite: code.h_x(),
                dual: basis.x,
            },
            Side::Min => unreachable!("split before constructing a problem"),
        })
    }

    fn n(&self) -> usize {
        self.same.num_cols()
    }

    /// Bit `i` set iff `v` anticommutes with the `i`-th dual logical.
    fn syndrome(&self, v: &BitVec) -> BitVec {
        let bits: Vec<bool> = self.dual.iter().map(|d| d.dot(v)).collect();
        BitVec::from_bools(&bits)
    }

    fn confirm(&self, v: &BitVec) -> bool {
        self.opposite.mul_vec(v).map(|s| s.is_zero()).unwrap_or(false)
            && !self.same.in_rowspace(v).unwrap_or(true)
    }
}

fn sides(side: Side) -> &'static [Side] {
    match side {
        Side::X => &[Side::X],
        Side::Z => &[Side::Z],
        Side::Min => &[Side::X, Side::Z],
    }
}

fn combine_min(results: Vec<DistanceResult>, query: Side) -> DistanceResult {
    if results.len() == 1 || query != Side::Min {
        return results.into_iter().next().expect("one result");
    }
    let lower = results.iter().map(|r| r.lower).min().unwrap_or(1);
    let best = results
        .iter()
        .filter(|r| r.upper.is_some())
        .min_by_key(|r| r.upper)
        .cloned();
    let trials = results.iter().map(|r| r.trials_used).sum();
    let nodes = results.iter().map(|r| r.nodes_explored).sum();
    let seed = results[0].seed;
    match best {
        Some(b) => {
            let u = b.upper.expect("filtered");
            let exact = u <= lower;
            DistanceResult {
                value: u,
                certainty: if exact {
                    Certainty::Exact
                } else {
                    Certainty::UpperBound
                },
                lower: if exact { u } else { lower },
                trials_used: trials,
                nodes_explored: nodes,
                ..b
            }
        }
        None => DistanceResult {
            value: lower,
            certainty: Certainty::LowerBound,
            lower,
            upper: None,
            witness: None,
            side: Side::Min,
            trials_used: trials,
            nodes_explored: nodes,
            seed,
        },
    }
}

// ---------------------------------------------------------------------------
// Randomized information sets

/// Per-trial generator, a pure function of `(seed, trial)`.
fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

struct Estimator<'a> {
    problem: Problem<'a>,
    basis: Vec<BitVec>,
}

impl Estimator<'_> {
    /// Lightest logical seen in one trial, skipping anything heavier than `cap`.
    fn trial(&self, seed: u64, trial: usize, cap: usize) -> Option<(usize, BitVec)> {
        let n = self.problem.n();
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut trial_rng(seed, trial));
        let ech = Echelon::from_rows_in_order(n, self.basis.clone(), order);
        let rows = ech.rows();
        let syn: Vec<BitVec> = rows.iter().map(|r| self.problem.syndrome(r)).collect();
        let weights: Vec<usize> = rows.iter().map(BitVec::weight).collect();
        let mut best: Option<(usize, usize, usize)> = None;
        let mut limit = cap;
        for i in 0..rows.len() {
            if !syn[i].is_zero() && weights[i] <= limit && best.is_none_or(|b| weights[i] < b.0) {
                best = Some((weights[i], i, i));
                limit = weights[i];
            }
        }
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                if syn[i] == syn[j] {
                    continue;
                }
                let w = rows[i].xor_weight(&rows[j]);
                if w <= limit && best.is_none_or(|b| w < b.0) {
                    best = Some((w, i, j));
                    limit = w;
                }
            }
        }
        best.map(|(w, i, j)| {
            let v = if i == j {
                rows[i].clone()
            } else {
                rows[i].xor(&rows[j])
            };
            (w, v)
        })
    }

    fn run(&self, trials: usize, seed: u64) -> Option<(usize, usize, BitVec)> {
        let global = AtomicUsize::new(usize::MAX);
        (0..trials)
            .into_par_iter()
            .filter_map(|t| {
                let cap = global.load(Ordering::Relaxed);
                let (w, v) = self.trial(seed, t, cap)?;
                global.fetch_min(w, Ordering::Relaxed);
                Some((w, t, v))
            })
            .min_by_key(|(w, t, _)| (*w, *t))
    }
}

fn estimate_side(
    code: &StabilizerCode,
    side: Side,
    trials: usize,
    seed: u64,
) -> Result<DistanceResult, DistanceError> {
    let problem = Problem::new(code, side)?;
    let basis = problem.opposite.nullspace_basis();
    let est = Estimator { problem, basis };
    let found = est.run(trials, seed).map(|(w, _, v)| {
        debug_assert!(est.problem.confirm(&v));
        (w, v)
    });
    if let Some((_, v)) = &found {
        assert!(est.problem.confirm(v), "estimator witness failed verification");
    }
    Ok(DistanceResult::from_bounds(side, 1, found, trials, 0, seed))
}

/// Upper bound on the distance from `trials` randomized information sets.
///
/// The result depends only on `(code, side, trials, seed)`, not on the number
/// of worker threads, and never increases when `trials` grows.
pub fn estimate_distance(
    code: &StabilizerCode,
    side: Side,
    trials: usize,
    seed: u64,
) -> Result<DistanceResult, DistanceError> {
    if trials == 0 {
        return Err(DistanceError::ZeroTrials);
    }
    if code.k() == 0 {
        return Err(DistanceError::NoLogicals);
    }
    let results = sides(side)
        .iter()
        .map(|&s| estimate_side(code, s, trials, seed))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(combine_min(results, side))
}

// ---------------------------------------------------------------------------
// Exact search

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExactMethod {
    /// Support growth along violated checks with iterative deepening.
    #[default]
    CheckGuided,
    /// Enumeration over disjoint information sets.
    BrouwerZimmermann,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactConfig {
    pub method: ExactMethod,
    /// Stop before starting a level once this many nodes have been explored.
    /// Checked only between levels, so the outcome does not depend on timing.
    pub max_nodes: Option<u64>,
    /// Wall-clock limit, also checked inside a level. Results cut short by it
    /// depend on machine speed.
    pub max_time: Option<Duration>,
    /// Estimator trials run first to obtain an upper bound (0 disables).
    pub trials: usize,
    pub seed: u64,
}

impl Default for ExactConfig {
    fn default() -> Self {
        Self {
            method: ExactMethod::CheckGuided,
            max_nodes: None,
            max_time: None,
            trials: 200,
            seed: 0,
        }
    }
}

struct Deadline {
    end: Option<Instant>,
    hit: AtomicBool,
}

impl Deadline {
    fn new(limit: Option<Duration>) -> Self {
        Self {
            end: limit.map(|d| Instant::now() + d),
            hit: AtomicBool::new(false),
        }
    }

    fn expired(&self) -> bool {
        if self.hit.load(Ordering::Relaxed) {
            return true;
        }
        if self.end.is_some_and(|e| Instant::now() >= e) {
            self.hit.store(true, Ordering::Relaxed);
            return true;
        }
        false
    }
}

/// Sparse view of the opposite check matrix plus per-qubit dual pairings.
struct Graph {
    n: usize,
    check_qubits: Vec<Vec<u32>>,
    qubit_checks: Vec<Vec<u32>>,
    max_degree: usize,
    /// `dual_words` words per qubit: bit `i` set iff dual logical `i` touches the qubit.
    dual_mask: Vec<u64>,
    dual_words: usize,
    check_words: usize,
}

impl Graph {
    fn new(problem: &Problem) -> Self {
        let n = problem.n();
        let check_qubits: Vec<Vec<u32>> = problem
            .opposite
            .rows()
            .iter()
            .map(|r| r.ones().map(|q| q as u32).collect())
            .collect();
        let mut qubit_checks = vec![Vec::new(); n];
        for (c, qs) in check_qubits.iter().enumerate() {
            for &q in qs {
                qubit_checks[q as usize].push(c as u32);
            }
        }
        let max_degree = qubit_checks.iter().map(Vec::len).max().unwrap_or(0).max(1);
        let dual_words = problem.dual.len().div_ceil(64).max(1);
        let mut dual_mask = vec![0u64; n * dual_words];
        for (i, d) in problem.dual.iter().enumerate() {
            for q in d.ones() {
                dual_mask[q * dual_words + i / 64] |= 1 << (i % 64);
            }
        }
        Graph {
            n,
            check_words: check_qubits.len().div_ceil(64).max(1),
            check_qubits,
            qubit_checks,
            max_degree,
            dual_mask,
            dual_words,
        }
    }
}

/// Depth-first state for one root qubit.
struct Walker<'g> {
    g: &'g Graph,
    in_set: Vec<bool>,
    blocked: Vec<bool>,
    set: Vec<u32>,
    syndrome: Vec<u64>,
    unsat: usize,
    dual: Vec<u64>,
    nodes: u64,
    deadline: &'g Deadline,
    aborted: bool,
}

impl<'g> Walker<'g> {
    fn new(g: &'g Graph, root: usize, deadline: &'g Deadline) -> Self {
        let mut blocked = vec![false; g.n];
        blocked[..root].fill(true);
        let mut w = Walker {
            g,
            in_set: vec![false; g.n],
            blocked,
            set: Vec::new(),
            syndrome: vec![0; g.check_words],
            unsat: 0,
            dual: vec![0; g.dual_words],
            nodes: 0,
            deadline,
            aborted: false,
        };
        w.toggle(root);
        w
    }

    fn toggle(&mut self, q: usize) {
        let adding = !self.in_set[q];
        self.in_set[q] = adding;
        if adding {
            self.set.push(q as u32);
        } else {
            self.set.pop();
        }
        for &c in &self.g.qubit_checks[q] {
            let (word, bit) = (c as usize / 64, 1u64 << (c % 64));
            self.syndrome[word] ^= bit;
            if self.syndrome[word] & bit != 0 {
                self.unsat += 1;
            } else {
                self.unsat -= 1;
            }
        }
        let base = q * self.g.dual_words;
        for (d, m) in self.dual.iter_mut().zip(&self.g.dual_mask[base..]) {
            *d ^= m;
        }
    }

    fn available(&self, q: u32) -> bool {
        !self.in_set[q as usize] && !self.blocked[q as usize]
    }

    /// Violated check with the fewest qubits still free to add.
    fn branch_check(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for (wi, &word) in self.syndrome.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let c = wi * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let free = self.g.check_qubits[c]
                    .iter()
                    .filter(|&&q| self.available(q))
                    .count();
                if best.is_none_or(|(_, f)| free < f) {
                    best = Some((c, free));
                    if free <= 1 {
                        return best;
                    }
                }
            }
        }
        best
    }

    /// Searches supersets of the current set with weight at most `limit`.
    fn search(&mut self, limit: usize) -> bool {
        self.nodes += 1;
        if self.nodes & 0xfff == 0 && self.deadline.expired() {
            self.aborted = true;
        }
        if self.aborted {
            return false;
        }
        if self.unsat == 0 {
            return self.dual.iter().any(|&d| d != 0);
        }
        let need = self.unsat.div_ceil(self.g.max_degree);
        if self.set.len() + need > limit {
            return false;
        }
        let Some((check, free)) = self.branch_check() else {
            return false;
        };
        if free == 0 {
            return false;
        }
        let candidates: Vec<u32> = self.g.check_qubits[check]
            .iter()
            .copied()
            .filter(|&q| self.available(q))
            .collect();
        let mut blocked_here = 0;
        let mut found = false;
        for &q in &candidates {
            self.toggle(q as usize);
            found = self.search(limit);
            if found {
                break;
            }
            self.toggle(q as usize);
            self.blocked[q as usize] = true;
            blocked_here += 1;
        }
        for &q in &candidates[..blocked_here] {
            self.blocked[q as usize] = false;
        }
        found
    }
}

struct LevelOutcome {
    witness: Option<BitVec>,
    nodes: u64,
    aborted: bool,
}

fn check_guided_level(g: &Graph, limit: usize, deadline: &Deadline) -> LevelOutcome {
    let per_root: Vec<(Option<BitVec>, u64, bool)> = (0..g.n)
        .into_par_iter()
        .map(|root| {
            let mut w = Walker::new(g, root, deadline);
            let found = w.search(limit);
            let witness = (found && !w.aborted)
                .then(|| BitVec::from_indices(g.n, w.set.iter().map(|&q| q as usize)));
            (witness, w.nodes, w.aborted)
        })
        .collect();
    LevelOutcome {
        nodes: per_root.iter().map(|r| r.1).sum(),
        aborted: per_root.iter().any(|r| r.2),
        witness: per_root.into_iter().find_map(|r| r.0),
    }
}

fn exact_check_guided(
    problem: &Problem,
    upper: Option<(usize, BitVec)>,
    cfg: &ExactConfig,
) -> (usize, Option<(usize, BitVec)>, u64) {
    let g = Graph::new(problem);
    let deadline = Deadline::new(cfg.max_time);
    let mut nodes = 0u64;
    let mut lower = 1;
    loop {
        if upper.as_ref().is_some_and(|(u, _)| *u <= lower) {
            return (lower, upper, nodes);
        }
        if cfg.max_nodes.is_some_and(|m| nodes >= m) || deadline.expired() {
            return (lower, upper, nodes);
        }
        let level = check_guided_level(&g, lower, &deadline);
        nodes += level.nodes;
        if let Some(w) = level.witness {
            return (lower, Some((lower, w)), nodes);
        }
        if level.aborted {
            return (lower, upper, nodes);
        }
        lower += 1;
    }
}

/// Reduced generator whose pivots avoid columns used by earlier sets where possible.
struct InfoSet {
    rows: Vec<BitVec>,
    syndromes: Vec<BitVec>,
    /// Pivots outside all earlier information sets.
    fresh: usize,
}

fn exact_brouwer_zimmermann(
    problem: &Problem,
    mut upper: Option<(usize, BitVec)>,
    cfg: &ExactConfig,
) -> (usize, Option<(usize, BitVec)>, u64) {
    let n = problem.n();
    let basis = problem.opposite.nullspace_basis();
    let kc = basis.len();
    let mut used = vec![false; n];
    let mut sets = Vec::new();
    loop {
        let order: Vec<usize> = (0..n)
            .filter(|&c| !used[c])
            .chain((0..n).filter(|&c| used[c]))
            .collect();
        let ech = Echelon::from_rows_in_order(n, basis.clone(), order);
        let fresh = ech.pivots().iter().filter(|&&p| !used[p]).count();
        if fresh == 0 {
            break;
        }
        for &p in ech.pivots() {
            used[p] = true;
        }
        let rows = ech.rows().to_vec();
        let syndromes = rows.iter().map(|r| problem.syndrome(r)).collect();
        sets.push(InfoSet {
            rows,
            syndromes,
            fresh,
        });
    }
    let deadline = Deadline::new(cfg.max_time);
    let mut nodes = 0u64;
    let mut lower = 1;
    for t in 1..=kc {
        if upper.as_ref().is_some_and(|(u, _)| *u <= lower) {
            break;
        }
        if cfg.max_nodes.is_some_and(|m| nodes >= m) || deadline.expired() {
            break;
        }
        let mut aborted = false;
        for set in &sets {
            let mut acc = BitVec::zeros(n);
            let mut syn = BitVec::zeros(problem.dual.len());
            enumerate_combinations(set, t, 0, &mut acc, &mut syn, &mut upper, &mut nodes, &deadline);
            if deadline.expired() {
                aborted = true;
                break;
            }
        }
        if aborted {
            break;
        }
        let bound: usize = sets
            .iter()
            .map(|s| (t + 1).saturating_sub(kc - s.fresh))
            .sum();
        lower = lower.max(bound);
    }
    (lower, upper, nodes)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_combinations(
    set: &InfoSet,
    remaining: usize,
    start: usize,
    acc: &mut BitVec,
    syn: &mut BitVec,
    best: &mut Option<(usize, BitVec)>,
    nodes: &mut u64,
    deadline: &Deadline,
) {
    if remaining == 0 {
        *nodes += 1;
        if *nodes & 0xfff == 0 && deadline.expired() {
            return;
        }
        if !syn.is_zero() {
            let w = acc.weight();
            if best.as_ref().is_none_or(|(b, _)| w < *b) {
                *best = Some((w, acc.clone()));
            }
        }
        return;
    }
    for i in start..set.rows.len() {
        if set.rows.len() - i < remaining || deadline.hit.load(Ordering::Relaxed) {
            return;
        }
        acc.xor_assign(&set.rows[i]);
        syn.xor_assign(&set.syndromes[i]);
        enumerate_combinations(set, remaining - 1, i + 1, acc, syn, best, nodes, deadline);
        acc.xor_assign(&set.rows[i]);
        syn.xor_assign(&set.syndromes[i]);
    }
}

fn exact_side(
    code: &StabilizerCode,
    side: Side,
    cfg: &ExactConfig,
) -> Result<DistanceResult, DistanceError> {
    let problem = Problem::new(code, side)?;
    let mut trials = 0;
    let mut upper = None;
    if cfg.trials > 0 {
        let est = estimate_side(code, side, cfg.trials, cfg.seed)?;
        trials = est.trials_used;
        upper = est.upper.zip(est.witness_vec(code.n()));
    }
    let (lower, upper, nodes) = match cfg.method {
        ExactMethod::CheckGuided => exact_check_guided(&problem, upper, cfg),
        ExactMethod::BrouwerZimmermann => exact_brouwer_zimmermann(&problem, upper, cfg),
    };
    if let Some((_, v)) = &upper {
        assert!(problem.confirm(v), "exact witness failed verification");
    }
    Ok(DistanceResult::from_bounds(
        problem.side,
        lower,
        upper,
        trials,
        nodes,
        cfg.seed,
    ))
}

/// Exact distance, or the best `(lower, upper)` pair when the budget runs out.
pub fn exact_distance(
    code: &StabilizerCode,
    side: Side,
    cfg: &ExactConfig,
) -> Result<DistanceResult, DistanceError> {
    if code.k() == 0 {
        return Err(DistanceError::NoLogicals);
    }
    let results = sides(side)
        .iter()
        .map(|&s| exact_side(code, s, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(combine_min(results, side))
}

/// Distance options for [`code_distance`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceOptions {
    pub trials: usize,
    pub seed: u64,
    /// Run the exact search after estimating; `None` keeps the estimate.
    pub exact: Option<ExactConfig>,
}

/// Fills in `d` for the code: estimate per side, optionally confirm, take the minimum.
pub fn code_distance(
    code: &StabilizerCode,
    opts: &DistanceOptions,
) -> Result<(CodeParameters, DistanceResult), DistanceError> {
    let result = match &opts.exact {
        Some(cfg) => {
            let cfg = ExactConfig {
                trials: opts.trials,
                seed: opts.seed,
                ..cfg.clone()
            };
            exact_distance(code, Side::Min, &cfg)?
        }
        None => estimate_distance(code, Side::Min, opts.trials, opts.seed)?,
    };
    let mut params = code.params();
    params.d = match result.certainty {
        Certainty::Exact => Some((result.value, Certainty::Exact)),
        _ => match result.upper {
            Some(u) => Some((u, Certainty::UpperBound)),
            None => Some((result.lower, Certainty::LowerBound)),
        },
    };
    Ok((params, result))
}
