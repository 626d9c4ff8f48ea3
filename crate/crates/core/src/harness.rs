//! Exhaustive enumeration, randomized search and the 2-king Monte Carlo
//! experiment.
//!
//! Labeled oriented graphs on `n` vertices are numbered by their
//! [`OrientationIndex`]: the `m = n(n-1)/2` pairs `i < j` in lexicographic
//! order are base-3 digits, pair `k` carrying weight `3^k`, with digit 0 for
//! no arc, 1 for `i → j` and 2 for `j → i`. Tournaments use the same pair
//! order as bits: bit `k` clear means `i → j`, set means `j → i`.
//!
//! Batches are split into contiguous index ranges and run on a rayon pool.
//! Counts and failure lists are merged and sorted by index, so reports do
//! not depend on the thread count.

use std::fmt;
use std::fs;
use std::io;
use std::ops::Range;
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::is_two_king;
use crate::checks::{evaluate, Check, Outcome};
use crate::format::{parse_arclist, write_arclist, write_digraph6, FormatError};
use crate::generators::{gen_random_oriented, GenError, GenSpec, Instance};
use crate::graph::{Digraph, VertexSet};
use crate::rng::{trial_seed, PRNG_NAME};

/// Enumerations are limited to this many pairs, so indices fit in a `u64`.
pub const MAX_PAIRS: usize = 40;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarnessError {
    #[error("space with {pairs} pairs is too large to enumerate (limit {MAX_PAIRS})")]
    SpaceTooLarge { pairs: usize },
    #[error("range {lo}..{hi} is not inside 0..{total}")]
    InvalidRange { lo: u64, hi: u64, total: u64 },
    #[error("index {index} out of range for {total} graphs")]
    IndexOutOfRange { index: u64, total: u64 },
    #[error("invalid probability {0}")]
    InvalidProbability(f64),
    #[error("order must be at least 2, got {0}")]
    OrderTooSmall(usize),
    #[error("trial count must be positive")]
    NoTrials,
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Gen(#[from] GenError),
}

fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

fn checked_pairs(n: usize) -> Result<usize, HarnessError> {
    let m = pair_count(n);
    if m > MAX_PAIRS {
        return Err(HarnessError::SpaceTooLarge { pairs: m });
    }
    Ok(m)
}

/// Position of a labeled oriented graph in the enumeration of its order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrientationIndex {
    pub n: usize,
    pub index: u64,
}

impl OrientationIndex {
    pub fn encode(d: &Digraph) -> Result<Self, HarnessError> {
        let n = d.order();
        checked_pairs(n)?;
        let mut index = 0u64;
        let mut weight = 1u64;
        for (i, j) in pairs(n) {
            if d.has_arc(i, j) {
                index += weight;
            } else if d.has_arc(j, i) {
                index += 2 * weight;
            }
            weight *= 3;
        }
        Ok(OrientationIndex { n, index })
    }

    pub fn decode(&self) -> Result<Digraph, HarnessError> {
        Space::Oriented.graph(self.n, self.index)
    }
}

/// Which labeled graphs an enumeration runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Space {
    Oriented,
    Tournaments,
}

impl Space {
    /// Number of labeled graphs of order `n`.
    pub fn size(self, n: usize) -> Result<u64, HarnessError> {
        let m = checked_pairs(n)? as u32;
        Ok(match self {
            Space::Oriented => 3u64.pow(m),
            Space::Tournaments => 1u64 << m,
        })
    }

    pub fn graph(self, n: usize, index: u64) -> Result<Digraph, HarnessError> {
        let total = self.size(n)?;
        if index >= total {
            return Err(HarnessError::IndexOutOfRange { index, total });
        }
        let mut rows = vec![VertexSet::new(); n];
        let mut rest = index;
        for (i, j) in pairs(n) {
            let digit = match self {
                Space::Oriented => {
                    let d = rest % 3;
                    rest /= 3;
                    d
                }
                Space::Tournaments => {
                    let d = (rest & 1) + 1;
                    rest >>= 1;
                    d
                }
            };
            match digit {
                1 => {
                    rows[i].insert(j);
                }
                2 => {
                    rows[j].insert(i);
                }
                _ => {}
            }
        }
        Ok(Digraph::from_rows_unchecked(rows))
    }

    /// The oriented-graph index of graph `index` of this space.
    pub fn orientation_index(self, n: usize, index: u64) -> Result<OrientationIndex, HarnessError> {
        match self {
            Space::Oriented => Ok(OrientationIndex { n, index }),
            Space::Tournaments => OrientationIndex::encode(&self.graph(n, index)?),
        }
    }

    fn describe(self, n: usize) -> String {
        match self {
            Space::Oriented => format!("all labeled oriented graphs on {n} vertices"),
            Space::Tournaments => format!("all labeled tournaments on {n} vertices"),
        }
    }
}

/// Iterator over a range of an enumeration, in index order.
#[derive(Debug, Clone)]
pub struct Enumeration {
    space: Space,
    n: usize,
    range: Range<u64>,
}

impl Enumeration {
    /// Restricts to the indices `lo..hi` of the full space.
    pub fn range(self, lo: u64, hi: u64) -> Result<Self, HarnessError> {
        let total = self.space.size(self.n)?;
        check_range(lo, hi, total)?;
        Ok(Enumeration {
            range: lo..hi,
            ..self
        })
    }
}

impl Iterator for Enumeration {
    type Item = Digraph;

    fn next(&mut self) -> Option<Digraph> {
        let index = self.range.next()?;
        Some(self.space.graph(self.n, index).expect("index checked on construction"))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.range.size_hint()
    }
}

impl ExactSizeIterator for Enumeration {}

pub fn enumerate_oriented(n: usize) -> Result<Enumeration, HarnessError> {
    enumerate(Space::Oriented, n)
}

pub fn enumerate_tournaments(n: usize) -> Result<Enumeration, HarnessError> {
    enumerate(Space::Tournaments, n)
}

fn enumerate(space: Space, n: usize) -> Result<Enumeration, HarnessError> {
    let total = space.size(n)?;
    Ok(Enumeration {
        space,
        n,
        range: 0..total,
    })
}

fn check_range(lo: u64, hi: u64, total: u64) -> Result<(), HarnessError> {
    if lo > hi || hi > total {
        return Err(HarnessError::InvalidRange { lo, hi, total });
    }
    Ok(())
}

/// One instance of a batch, with what is needed to regenerate it.
#[derive(Debug, Clone)]
pub struct Trial {
    pub instance: Instance,
    pub seed: Option<u64>,
    pub orientation_index: Option<OrientationIndex>,
}

impl From<Instance> for Trial {
    fn from(instance: Instance) -> Self {
        Trial {
            instance,
            seed: None,
            orientation_index: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepOptions {
    pub threads: usize,
    /// Failures kept in the report; all are counted.
    pub max_failures: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            threads: 1,
            max_failures: 100,
        }
    }
}

impl SweepOptions {
    pub fn with_threads(threads: usize) -> Self {
        SweepOptions {
            threads,
            ..Self::default()
        }
    }
}

/// A failing instance, self-contained enough to replay.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub check: Check,
    pub details: String,
    /// Position of the instance in its batch.
    pub index: u64,
    pub seed: Option<u64>,
    pub orientation_index: Option<OrientationIndex>,
    pub split_x: Option<VertexSet>,
    pub arclist: String,
    pub digraph6: String,
}

#[derive(Debug, Error)]
pub enum ReplayError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("archive header: {0}")]
    Header(String),
}

impl FailureRecord {
    fn new(check: Check, index: u64, trial: &Trial, details: String, split_x: Option<VertexSet>) -> Self {
        let g = &trial.instance.graph;
        FailureRecord {
            check,
            details,
            index,
            seed: trial.seed,
            orientation_index: trial.orientation_index,
            split_x: split_x.or(trial.instance.split_x),
            arclist: write_arclist(g),
            digraph6: String::from_utf8(write_digraph6(g)).expect("digraph6 is ASCII"),
        }
    }

    pub fn instance(&self) -> Result<Instance, FormatError> {
        Ok(Instance {
            graph: parse_arclist(&self.arclist)?,
            split_x: self.split_x,
        })
    }

    /// Re-runs the check on the stored graph alone.
    pub fn replay(&self) -> Result<Outcome, FormatError> {
        Ok(evaluate(self.check, &self.instance()?))
    }

    /// Arc-list text with the record's metadata as `#` comment lines.
    pub fn to_archive(&self) -> String {
        let mut out = format!("# check: {}\n", self.check);
        for line in self.details.lines() {
            out.push_str(&format!("# details: {line}\n"));
        }
        out.push_str(&format!("# index: {}\n", self.index));
        if let Some(seed) = self.seed {
            out.push_str(&format!("# seed: {seed}\n"));
        }
        if let Some(oi) = self.orientation_index {
            out.push_str(&format!("# orientation-index: {} {}\n", oi.n, oi.index));
        }
        if let Some(x) = self.split_x {
            let ids: Vec<String> = x.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("# split-x: {}\n", ids.join(" ")));
        }
        out.push_str(&format!("# digraph6: {}\n", self.digraph6));
        out.push_str(&self.arclist);
        out
    }

    pub fn from_archive(text: &str) -> Result<Self, ReplayError> {
        let graph = parse_arclist(text)?;
        let mut check = None;
        let mut details = Vec::new();
        let mut index = 0;
        let mut seed = None;
        let mut orientation_index = None;
        let mut split_x = None;
        let bad = |what: &str| ReplayError::Header(format!("bad {what}"));
        for line in text.lines() {
            let Some((key, value)) = line.strip_prefix("# ").and_then(|l| l.split_once(": ")) else {
                continue;
            };
            match key {
                "check" => check = Some(value.parse::<Check>().map_err(|e| ReplayError::Header(e.to_string()))?),
                "details" => details.push(value.to_string()),
                "index" => index = value.parse().map_err(|_| bad("index"))?,
                "seed" => seed = Some(value.parse().map_err(|_| bad("seed"))?),
                "orientation-index" => {
                    let (n, i) = value.split_once(' ').ok_or_else(|| bad("orientation-index"))?;
                    orientation_index = Some(OrientationIndex {
                        n: n.parse().map_err(|_| bad("orientation-index"))?,
                        index: i.parse().map_err(|_| bad("orientation-index"))?,
                    });
                }
                "split-x" => {
                    let x: Result<VertexSet, _> = value.split_whitespace().map(str::parse::<usize>).collect();
                    split_x = Some(x.map_err(|_| bad("split-x"))?);
                }
                _ => {}
            }
        }
        let check = check.ok_or_else(|| ReplayError::Header("missing check".into()))?;
        Ok(FailureRecord {
            check,
            details: details.join("\n"),
            index,
            seed,
            orientation_index,
            split_x,
            arclist: write_arclist(&graph),
            digraph6: String::from_utf8(write_digraph6(&graph)).expect("digraph6 is ASCII"),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckTally {
    pub check: Check,
    pub applicable: u64,
    pub failures: u64,
}

/// Where a report's instances came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub prng: String,
    pub spec: Option<GenSpec>,
    pub space: Option<Space>,
    pub n: Option<usize>,
    pub range: Option<[u64; 2]>,
}

impl Provenance {
    pub fn new() -> Self {
        Provenance {
            prng: PRNG_NAME.to_string(),
            spec: None,
            space: None,
            n: None,
            range: None,
        }
    }
}

impl Default for Provenance {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub family: String,
    pub checks: Vec<Check>,
    pub instances_checked: u64,
    pub per_check: Vec<CheckTally>,
    pub failure_count: u64,
    /// The first failures in index order, at most `max_failures` of them.
    pub failures: Vec<FailureRecord>,
    pub provenance: Provenance,
    /// Wall-clock time; the only field that varies between identical runs.
    pub timing_elapsed_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    /// Number of instances a check applied to.
    pub fn applicable(&self, check: Check) -> u64 {
        self.per_check
            .iter()
            .find(|t| t.check == check)
            .map_or(0, |t| t.applicable)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "family: {}", self.family)?;
        writeln!(
            f,
            "{} instances checked, {} failures",
            self.instances_checked, self.failure_count
        )?;
        for t in &self.per_check {
            writeln!(f, "  {}: {} applicable, {} failed", t.check, t.applicable, t.failures)?;
        }
        for r in &self.failures {
            writeln!(f, "FAIL {} at index {}: {}", r.check, r.index, r.details)?;
            writeln!(f, "  digraph6 {}", r.digraph6)?;
        }
        write!(f, "elapsed: {} ms", self.timing_elapsed_ms)
    }
}

/// Writes each kept failure to `dir` as an archive file and returns the paths.
pub fn archive_failures(report: &VerificationReport, dir: &Path) -> io::Result<Vec<PathBuf>> {
    if report.failures.is_empty() {
        return Ok(Vec::new());
    }
    fs::create_dir_all(dir)?;
    report
        .failures
        .iter()
        .map(|r| {
            let path = dir.join(format!("{}-{}.txt", r.check, r.index));
            fs::write(&path, r.to_archive())?;
            Ok(path)
        })
        .collect()
}

#[derive(Debug, Default)]
struct Tally {
    checked: u64,
    applicable: Vec<u64>,
    failed: Vec<u64>,
    failures: Vec<FailureRecord>,
    error: Option<(u64, HarnessError)>,
}

impl Tally {
    fn new(checks: usize) -> Self {
        Tally {
            applicable: vec![0; checks],
            failed: vec![0; checks],
            ..Default::default()
        }
    }

    fn merge(mut self, other: Tally, keep: usize, order: &[Check]) -> Tally {
        self.checked += other.checked;
        for (a, b) in self.applicable.iter_mut().zip(&other.applicable) {
            *a += b;
        }
        for (a, b) in self.failed.iter_mut().zip(&other.failed) {
            *a += b;
        }
        self.failures.extend(other.failures);
        let pos = |c: Check| order.iter().position(|&o| o == c);
        self.failures.sort_by_key(|r| (r.index, pos(r.check)));
        self.failures.truncate(keep);
        self.error = match (self.error, other.error) {
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }
}

/// Splits `lo..hi` into contiguous shards and folds them on `threads` workers.
fn run_sharded<T, F, M>(lo: u64, hi: u64, threads: usize, shard: F, merge: M) -> Result<T, HarnessError>
where
    T: Send,
    F: Fn(u64, u64) -> T + Sync,
    M: Fn(T, T) -> T + Sync,
{
    let threads = threads.max(1);
    if threads == 1 || hi - lo < 2 {
        return Ok(shard(lo, hi));
    }
    let count = (threads as u64 * 8).min(hi - lo);
    let step = (hi - lo).div_ceil(count);
    let bounds: Vec<(u64, u64)> = (0..count)
        .map(|k| (lo + k * step, (lo + (k + 1) * step).min(hi)))
        .filter(|(a, b)| a < b)
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| HarnessError::ThreadPool(e.to_string()))?;
    let merged = pool.install(|| {
        bounds
            .into_par_iter()
            .map(|(a, b)| shard(a, b))
            .reduce_with(&merge)
    });
    Ok(merged.expect("at least one shard"))
}

/// Applies `checks` to the trials `lo..hi` produced by `make`.
pub fn run_batch<F>(
    family: String,
    checks: &[Check],
    lo: u64,
    hi: u64,
    opts: &SweepOptions,
    mut provenance: Provenance,
    make: F,
) -> Result<VerificationReport, HarnessError>
where
    F: Fn(u64) -> Result<Trial, HarnessError> + Sync,
{
    let start = Instant::now();
    let keep = opts.max_failures;
    let shard = |a: u64, b: u64| {
        let mut t = Tally::new(checks.len());
        for index in a..b {
            let trial = match make(index) {
                Ok(trial) => trial,
                Err(e) => {
                    t.error = Some((index, e));
                    break;
                }
            };
            t.checked += 1;
            for (k, &check) in checks.iter().enumerate() {
                match evaluate(check, &trial.instance) {
                    Outcome::NotApplicable => {}
                    Outcome::Pass => t.applicable[k] += 1,
                    Outcome::Fail(f) => {
                        t.applicable[k] += 1;
                        t.failed[k] += 1;
                        if t.failures.len() < keep {
                            t.failures
                                .push(FailureRecord::new(check, index, &trial, f.details, f.split_x));
                        }
                    }
                }
            }
        }
        t
    };
    let tally = run_sharded(lo, hi, opts.threads, shard, |a, b| a.merge(b, keep, checks))?;
    if let Some((_, e)) = tally.error {
        return Err(e);
    }
    if provenance.range.is_none() {
        provenance.range = Some([lo, hi]);
    }
    Ok(VerificationReport {
        family,
        checks: checks.to_vec(),
        instances_checked: tally.checked,
        per_check: checks
            .iter()
            .enumerate()
            .map(|(k, &check)| CheckTally {
                check,
                applicable: tally.applicable[k],
                failures: tally.failed[k],
            })
            .collect(),
        failure_count: tally.failed.iter().sum(),
        failures: tally.failures,
        provenance,
        timing_elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Runs `checks` over every graph of `space` with order `n`, or over the
/// index range `range` of it.
pub fn exhaustive_check(
    space: Space,
    n: usize,
    checks: &[Check],
    range: Option<(u64, u64)>,
    opts: &SweepOptions,
) -> Result<VerificationReport, HarnessError> {
    let total = space.size(n)?;
    let (lo, hi) = range.unwrap_or((0, total));
    check_range(lo, hi, total)?;
    let mut provenance = Provenance::new();
    provenance.space = Some(space);
    provenance.n = Some(n);
    run_batch(space.describe(n), checks, lo, hi, opts, provenance, |index| {
        Ok(Trial {
            instance: space.graph(n, index)?.into(),
            seed: None,
            orientation_index: Some(space.orientation_index(n, index)?),
        })
    })
}

/// Runs `checks` over every split graph made of `x_size` independent
/// vertices joined to the tournament `yt` in all `3^(x_size·|Y|)` ways.
///
/// `Y` keeps the labels of `yt` and `X` is `|Y|..|Y|+x_size`. Pattern digit
/// `x·|Y| + y` (weight `3^(x·|Y| + y)`) is 0 for no arc, 1 for `x → y` and 2
/// for `y → x`.
pub fn exhaustive_split_check(
    yt: &Digraph,
    y_label: &str,
    x_size: usize,
    checks: &[Check],
    opts: &SweepOptions,
) -> Result<VerificationReport, HarnessError> {
    let ny = yt.order();
    let digits = x_size * ny;
    if digits > MAX_PAIRS {
        return Err(HarnessError::SpaceTooLarge { pairs: digits });
    }
    if !yt.is_tournament(&yt.vertices()) {
        return Err(GenError::NotATournament.into());
    }
    let n = ny + x_size;
    if n > crate::graph::MAX_VERTICES {
        return Err(GenError::Graph(crate::graph::GraphError::TooManyVertices(n)).into());
    }
    let total = 3u64.pow(digits as u32);
    let x: VertexSet = (ny..n).collect();
    let family = format!("split graphs: |X| = {x_size} over {y_label}, all {total} cross patterns");
    run_batch(family, checks, 0, total, opts, Provenance::new(), |index| {
        let mut rows: Vec<VertexSet> = (0..ny).map(|y| yt.out_neighbors(y)).collect();
        rows.resize(n, VertexSet::new());
        let mut rest = index;
        for xv in ny..n {
            for y in 0..ny {
                match rest % 3 {
                    1 => {
                        rows[xv].insert(y);
                    }
                    2 => {
                        rows[y].insert(xv);
                    }
                    _ => {}
                }
                rest /= 3;
            }
        }
        Ok(Instance {
            graph: Digraph::from_rows_unchecked(rows),
            split_x: Some(x),
        }
        .into())
    })
}

/// Runs `checks` on trials `0..trials` of `spec`; trial `i` is generated
/// from `trial_seed(spec.seed, i)`.
pub fn random_search(
    spec: &GenSpec,
    trials: u64,
    checks: &[Check],
    opts: &SweepOptions,
) -> Result<VerificationReport, HarnessError> {
    spec.validate()?;
    let mut provenance = Provenance::new();
    provenance.spec = Some(spec.clone());
    run_batch(describe_spec(spec), checks, 0, trials, opts, provenance, |index| {
        let seed = trial_seed(spec.seed, index);
        Ok(Trial {
            instance: spec.generate_with_seed(seed)?,
            seed: Some(seed),
            orientation_index: None,
        })
    })
}

fn describe_spec(spec: &GenSpec) -> String {
    use crate::generators::Family::*;
    let params = match &spec.family {
        OrientedRandom { n, p } => format!("n = {n}, p = {p}"),
        TournamentRandom { n } | CirculantRegular { n } | AlmostRegular { n } | PlanarOrientation { n } => {
            format!("n = {n}")
        }
        Split {
            x_size,
            y_size,
            y_kind,
            cross,
        } => format!(
            "|X| = {x_size}, |Y| = {y_size}, Y {y_kind:?}, cross none/x->y/y->x = {}/{}/{}",
            cross.none, cross.x_to_y, cross.y_to_x
        ),
        CompleteSplit {
            x_size,
            y_size,
            y_kind,
            x_to_y,
        } => format!("|X| = {x_size}, |Y| = {y_size}, Y {y_kind:?}, x->y = {x_to_y}"),
        BipartiteOrientation { n1, n2, p } => format!("parts {n1} + {n2}, p = {p}"),
    };
    format!("{} ({params}), seed {}", spec.family.tag(), spec.seed)
}

fn check_markov_args(n: usize, p: f64) -> Result<(), HarnessError> {
    if n < 2 {
        return Err(HarnessError::OrderTooSmall(n));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(HarnessError::InvalidProbability(p));
    }
    Ok(())
}

/// Expected number of vertices outside `{u} ∪ N+(u) ∪ N++(u)` in the random
/// oriented graph model: `(n-1)(1-p/2)(1-p²/4)^(n-2)`, in double precision.
/// The endpoints `p = 0` and `p = 1` are accepted.
pub fn markov_expectation(n: usize, p: f64) -> Result<f64, HarnessError> {
    check_markov_args(n, p)?;
    Ok((n - 1) as f64 * (1.0 - p / 2.0) * (1.0 - p * p / 4.0).powi(n as i32 - 2))
}

/// The same expectation computed exactly over the rationals, treating `p`
/// as the exact binary fraction it holds.
pub fn markov_expectation_exact(n: usize, p: f64) -> Result<BigRational, HarnessError> {
    check_markov_args(n, p)?;
    let p = BigRational::from_float(p).ok_or(HarnessError::InvalidProbability(p))?;
    let one = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    let four = BigRational::from_integer(BigInt::from(4));
    let base = &one - &p * &p / four;
    let mut power = BigRational::one();
    for _ in 0..n - 2 {
        power *= &base;
    }
    Ok(BigRational::from_integer(BigInt::from(n - 1)) * (&one - &p / two) * power)
}

/// Converts an exact rational to the nearest `f64`.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloResult {
    pub n: usize,
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
    /// Trials in which vertex 0 is not a 2-king.
    pub no_2king_from_u_count: u64,
    /// `no_2king_from_u_count / trials`.
    pub empirical_p_no_2king: f64,
    /// The expectation bounding that probability.
    pub markov_bound: f64,
    /// Binomial standard error of the empirical frequency.
    pub std_error: f64,
    /// Trials in which no vertex at all is a 2-king.
    pub graphs_without_2king: u64,
    pub empirical_p_graph_no_2king: f64,
    /// `empirical_p_no_2king <= markov_bound + 4 · std_error`.
    pub within_bound: bool,
}

/// Samples `trials` graphs of the random oriented graph model and counts
/// how often vertex 0 fails to be a 2-king. Trial `i` uses seed
/// `trial_seed(seed, i)`.
pub fn montecarlo_2king(
    n: usize,
    p: f64,
    trials: u64,
    seed: u64,
    threads: usize,
) -> Result<MonteCarloResult, HarnessError> {
    let markov_bound = markov_expectation(n, p)?;
    if trials == 0 {
        return Err(HarnessError::NoTrials);
    }
    let (from_u, whole) = run_sharded(
        0,
        trials,
        threads,
        |a, b| {
            let (mut from_u, mut whole) = (0u64, 0u64);
            for i in a..b {
                let g = gen_random_oriented(n, p, trial_seed(seed, i)).expect("arguments validated");
                if !is_two_king(&g, 0) {
                    from_u += 1;
                    if !(1..n).any(|v| is_two_king(&g, v)) {
                        whole += 1;
                    }
                }
            }
            (from_u, whole)
        },
        |a, b| (a.0 + b.0, a.1 + b.1),
    )?;
    let empirical = from_u as f64 / trials as f64;
    let std_error = (empirical * (1.0 - empirical) / trials as f64).sqrt();
    Ok(MonteCarloResult {
        n,
        p,
        trials,
        seed,
        no_2king_from_u_count: from_u,
        empirical_p_no_2king: empirical,
        markov_bound,
        std_error,
        graphs_without_2king: whole,
        empirical_p_graph_no_2king: whole as f64 / trials as f64,
        within_bound: empirical <= markov_bound + 4.0 * std_error,
    })
}
