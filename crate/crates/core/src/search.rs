//! Tile search: enumerate X tiles of a given box and weight, build each code
//! on a fixed layout, screen by `k`, estimate `d`, and rank by `k·d²/n`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codegen::{build_code, CodegenError};
use crate::distance::{estimate_distance, Side};
use crate::layouts::{Layout, LayoutError, LayoutSpec};
use crate::tiles::{binomial, box_edges, tile_rank, Tile, TileEnumerator, TileError, TilePair};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("invalid search configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Tile(#[from] TileError),
    #[error(transparent)]
    Layout(#[from] LayoutError),
    #[error("table entry {index}: {source}")]
    Entry { index: usize, source: CodegenError },
}

/// Exact non-negative rational, kept in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ratio {
    pub num: u128,
    pub den: u128,
}

impl Ratio {
    pub fn new(num: u128, den: u128) -> Self {
        assert!(den > 0, "zero denominator");
        let g = gcd(num, den);
        Ratio {
            num: num / g,
            den: den / g,
        }
    }

    /// `k·d²/n`.
    pub fn efficiency(n: usize, k: usize, d: usize) -> Self {
        Ratio::new(k as u128 * (d as u128).pow(2), n as u128)
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl Serialize for Ratio {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Ratio {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        let parse = |t: &str| t.trim().parse::<u128>().map_err(serde::de::Error::custom);
        match text.split_once('/') {
            Some((a, b)) => {
                let den = parse(b)?;
                if den == 0 {
                    return Err(serde::de::Error::custom("zero denominator"));
                }
                Ok(Ratio::new(parse(a)?, den))
            }
            None => Ok(Ratio::new(parse(&text)?, 1)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum SearchMode {
    Exhaustive,
    Random { samples: u64 },
}

impl std::str::FromStr for SearchMode {
    type Err = String;

    /// `exhaustive` or `random:N`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "exhaustive" {
            return Ok(SearchMode::Exhaustive);
        }
        let n = s
            .strip_prefix("random:")
            .ok_or_else(|| format!("expected `exhaustive` or `random:N`, got `{s}`"))?;
        let samples = n
            .parse()
            .map_err(|_| format!("bad sample count `{n}`"))?;
        Ok(SearchMode::Random { samples })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub width: i32,
    pub height: i32,
    pub weight: usize,
    pub layout: LayoutSpec,
    pub mode: SearchMode,
    /// Estimator trials used to screen every candidate.
    pub coarse_trials: usize,
    /// Trials used for the refined estimate of the leading candidates.
    pub fine_trials: usize,
    pub seed: u64,
    /// Entries kept in the report.
    pub top_count: usize,
    /// Candidates with fewer logical qubits are dropped.
    pub min_k: usize,
}

impl SearchConfig {
    pub fn new(width: i32, height: i32, weight: usize, layout: LayoutSpec) -> Self {
        SearchConfig {
            width,
            height,
            weight,
            layout,
            mode: SearchMode::Exhaustive,
            coarse_trials: 60,
            fine_trials: 2000,
            seed: 0,
            top_count: 20,
            min_k: 1,
        }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        let bad = |m: String| Err(SearchError::Config(m));
        if self.width < 1 || self.height < 1 {
            return bad(format!("box {}x{} is empty", self.width, self.height));
        }
        let max = 2 * (self.width * self.height) as usize;
        if self.weight == 0 || self.weight > max {
            return bad(format!("weight {} outside 1..={max}", self.weight));
        }
        if matches!(self.mode, SearchMode::Random { samples: 0 }) {
            return bad("random mode needs at least one sample".into());
        }
        if self.coarse_trials == 0 || self.fine_trials == 0 {
            return bad("trial counts must be positive".into());
        }
        if self.min_k == 0 {
            return bad("min_k must be at least 1".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchEntry {
    /// Position of the X tile in the exhaustive enumeration.
    pub rank: u128,
    pub x_tile: Tile,
    pub n: usize,
    pub k: usize,
    /// Estimated distance (an upper bound).
    pub d_hat: usize,
    pub efficiency: Ratio,
    /// The build removed qubits or checks.
    pub trimmed: bool,
    /// Rank of the X tile obtained by exchanging the X and Z roles.
    pub swap_rank: u128,
}

impl SearchEntry {
    /// Report order: efficiency, then `d̂` (both descending), then rank.
    pub fn report_order(&self, other: &Self) -> Ordering {
        other
            .efficiency
            .cmp(&self.efficiency)
            .then(other.d_hat.cmp(&self.d_hat))
            .then(self.rank.cmp(&other.rank))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub format_version: u32,
    pub examined: u128,
    pub passed_k: u64,
    pub refined: u64,
    /// Refined candidates tied with the leader on efficiency and `d̂`.
    pub best_count: u64,
    pub best_efficiency: Option<Ratio>,
    pub coarse_trials: usize,
    pub fine_trials: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub entries: Vec<SearchEntry>,
    pub summary: SearchSummary,
}

impl SearchReport {
    /// One JSON object per entry, then a final `{"summary": ...}` line.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&serde_json::to_string(e).expect("entry serializes"));
            out.push('\n');
        }
        let summary = serde_json::json!({ "summary": self.summary });
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }
}

/// Evaluates one X tile; `None` when the build fails or `k < min_k`.
fn evaluate(
    tile: Tile,
    rank: u128,
    layout: &Layout,
    trials: usize,
    seed: u64,
    min_k: usize,
) -> Option<SearchEntry> {
    let pair = TilePair::from_x_tile(tile);
    let code = build_code(&pair, layout).ok()?;
    let (n, k) = (code.n(), code.k());
    if k < min_k {
        return None;
    }
    let d_hat = estimate_distance(&code, Side::Min, trials, seed).ok()?.value;
    let trimmed = code.trim_stats().qubits_removed > 0 || code.trim_stats().checks_removed() > 0;
    Some(SearchEntry {
        rank,
        swap_rank: tile_rank(pair.z_tile()),
        x_tile: pair.x_tile().clone(),
        n,
        k,
        d_hat,
        efficiency: Ratio::efficiency(n, k, d_hat),
        trimmed,
    })
}

const CHUNK: u128 = 256;

fn candidate_ranks(cfg: &SearchConfig) -> Vec<u128> {
    let m = 2 * (cfg.width * cfg.height) as usize;
    match cfg.mode {
        SearchMode::Exhaustive => Vec::new(),
        SearchMode::Random { samples } => {
            let edges = box_edges(cfg.width, cfg.height);
            let mut ranks = BTreeSet::new();
            for i in 0..samples {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                rng.set_stream(i);
                let chosen = sample(&mut rng, m, cfg.weight);
                let tile = Tile::from_edges(cfg.width, cfg.height, chosen.iter().map(|j| edges[j]))
                    .expect("sampled edges lie in the box");
                ranks.insert(tile_rank(&tile));
            }
            ranks.into_iter().collect()
        }
    }
}

/// Runs the two-stage search. The report depends only on `cfg`.
pub fn run_search(cfg: &SearchConfig) -> Result<SearchReport, SearchError> {
    cfg.validate()?;
    let layout = cfg.layout.build(cfg.width, cfg.height)?;
    let total = binomial(2 * (cfg.width * cfg.height) as u64, cfg.weight as u64);
    let eval = |tile: Tile, rank: u128| {
        evaluate(tile, rank, &layout, cfg.coarse_trials, cfg.seed, cfg.min_k)
    };

    let (examined, mut screened): (u128, Vec<SearchEntry>) = match cfg.mode {
        SearchMode::Exhaustive => {
            let chunks = total.div_ceil(CHUNK) as u64;
            let found = (0..chunks)
                .into_par_iter()
                .flat_map_iter(|c| {
                    let start = c as u128 * CHUNK;
                    TileEnumerator::starting_at(cfg.width, cfg.height, cfg.weight, start)
                        .expect("validated configuration")
                        .take(CHUNK as usize)
                        .filter_map(|(rank, tile)| eval(tile, rank))
                        .collect::<Vec<_>>()
                })
                .collect();
            (total, found)
        }
        SearchMode::Random { .. } => {
            let ranks = candidate_ranks(cfg);
            let found = ranks
                .par_iter()
                .filter_map(|&rank| {
                    let (_, tile) =
                        TileEnumerator::starting_at(cfg.width, cfg.height, cfg.weight, rank)
                            .expect("validated configuration")
                            .next()?;
                    eval(tile, rank)
                })
                .collect();
            (ranks.len() as u128, found)
        }
    };
    let passed_k = screened.len() as u64;
    screened.sort_by(SearchEntry::report_order);

    // The leading decile, and never fewer than the report size, gets the fine budget.
    let refine = screened.len().div_ceil(10).max(cfg.top_count).min(screened.len());
    screened.truncate(refine);
    let mut refined: Vec<SearchEntry> = if cfg.fine_trials > cfg.coarse_trials {
        screened
            .into_par_iter()
            .filter_map(|e| {
                evaluate(e.x_tile, e.rank, &layout, cfg.fine_trials, cfg.seed, cfg.min_k)
            })
            .collect()
    } else {
        screened
    };
    refined.sort_by(SearchEntry::report_order);

    let best_count = refined
        .first()
        .map(|b| {
            refined
                .iter()
                .take_while(|e| e.efficiency == b.efficiency && e.d_hat == b.d_hat)
                .count() as u64
        })
        .unwrap_or(0);
    let summary = SearchSummary {
        format_version: 1,
        examined,
        passed_k,
        refined: refined.len() as u64,
        best_count,
        best_efficiency: refined.first().map(|e| e.efficiency),
        coarse_trials: cfg.coarse_trials,
        fine_trials: cfg.fine_trials.max(cfg.coarse_trials),
        seed: cfg.seed,
    };
    refined.truncate(cfg.top_count);
    Ok(SearchReport {
        entries: refined,
        summary,
    })
}

// ---------------------------------------------------------------------------
// Known-table verification

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedParams {
    pub n: usize,
    pub k: usize,
    pub d: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub x_tile: Tile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z_tile: Option<Tile>,
}

/// A list of tile pairs claimed to reach the same parameters on one layout.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDocument {
    pub format_version: u32,
    pub layout: LayoutSpec,
    pub expected: ExpectedParams,
    pub trials: usize,
    pub seed: u64,
    pub pairs: Vec<TableEntry>,
}

impl TableDocument {
    pub fn parse(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn tile_pairs(&self) -> Result<Vec<TilePair>, TileError> {
        self.pairs
            .iter()
            .map(|e| match &e.z_tile {
                Some(z) => TilePair::new(e.x_tile.clone(), z.clone()),
                None => Ok(TilePair::from_x_tile(e.x_tile.clone())),
            })
            .collect()
    }
}

/// Bundled weight-6 pairs reaching `[[288,8,12]]`.
pub const TABLE_WEIGHT6: &str = include_str!("../data/table_weight6.json");
/// Bundled weight-8 pairs reaching `[[288,8,14]]`.
pub const TABLE_WEIGHT8: &str = include_str!("../data/table_weight8.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCheck {
    pub index: usize,
    pub n: usize,
    pub k: usize,
    /// Not estimated when `(n, k)` already mismatch.
    pub d_hat: Option<usize>,
    pub pass: bool,
}

/// Rebuilds every pair and compares `(n, k, d̂)` with the expectation.
pub fn verify_table(
    pairs: &[TilePair],
    layout: &Layout,
    expected: ExpectedParams,
    trials: usize,
    seed: u64,
) -> Result<Vec<TableCheck>, SearchError> {
    pairs
        .iter()
        .enumerate()
        .map(|(index, pair)| {
            let code =
                build_code(pair, layout).map_err(|source| SearchError::Entry { index, source })?;
            let (n, k) = (code.n(), code.k());
            let d_hat = if (n, k) == (expected.n, expected.k) {
                estimate_distance(&code, Side::Min, trials, seed)
                    .ok()
                    .map(|r| r.value)
            } else {
                None
            };
            Ok(TableCheck {
                index,
                n,
                k,
                d_hat,
                pass: d_hat == Some(expected.d),
            })
        })
        .collect()
}

/// Parses a table document and verifies it.
pub fn verify_table_document(doc: &TableDocument) -> Result<Vec<TableCheck>, SearchError> {
    let pairs = doc.tile_pairs()?;
    let (w, h) = pairs
        .first()
        .map(|p| (p.width(), p.height()))
        .ok_or_else(|| SearchError::Config("table has no pairs".into()))?;
    let layout = doc.layout.build(w, h)?;
    verify_table(&pairs, &layout, doc.expected, doc.trials, doc.seed)
}
