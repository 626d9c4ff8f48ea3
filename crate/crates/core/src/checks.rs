//! Named predicates applied to single instances by the sweeps.
//!
//! Each check either does not apply to an instance, passes, or fails with
//! a description. Checks about split graphs use the instance's recorded
//! split side when it has one; otherwise they try every valid `(X, Y)`
//! partition of graphs with at most [`PARTITION_SCAN_LIMIT`] vertices.
//! Vertices returned by constructive finders are re-verified here with
//! direct arc lookups rather than trusted.

use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::analysis::{
    is_triangle_free_underlying, seymour_vertices, sources, sullivan_vertices,
    triangle_stats, tt_sufficiency, two_kings,
};
use crate::generators::Instance;
use crate::graph::{Digraph, VertexSet};
use crate::split::{
    ar_second_degree_formulas, check_sum_identities, complete_split_sullivan,
    is_almost_regular_on, is_regular_on, new_split, regular_split_report,
    set_degree_bound_check, single_x_2king, verify_ar_seymour, verify_ar_sullivan, SplitDigraph,
};

/// Largest order for which split checks scan all partitions.
pub const PARTITION_SCAN_LIMIT: usize = 16;

/// Largest order for which the set-degree check visits every subset.
pub const SUBSET_SCAN_LIMIT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    /// Some vertex has `d++ >= d-`.
    SullivanExists,
    /// Some vertex has `d++ >= d+`.
    SeymourExists,
    /// `tt + Σ w_u = Σ d-(u) d+(u)`.
    TtIdentity,
    /// `tt < |A|` implies a Sullivan vertex.
    TtSufficiency,
    /// Every 2-king is a Sullivan vertex.
    KingSullivan,
    /// Orientations of triangle-free graphs have a Sullivan vertex.
    TriangleFreeSullivan,
    /// `tt < |A|` and a Sullivan vertex exists; meant for planar families.
    PlanarSullivan,
    /// Almost regular tournaments: `|V+| = |V-| = d`, and `d++ - d-` is 0
    /// at 2-kings and -1 elsewhere.
    ArBalance,
    /// Almost regular tournaments: the case formula for `d++ - d+`.
    ArSeymourFormula,
    /// Almost regular tournaments: `|d+(S) - d-(S)| <= |S|`, tight exactly
    /// on subsets of `V+` or `V-`.
    ArSetDegree,
    /// The two `X`/`Y` degree-sum identities.
    SplitSums,
    /// Source-free split graphs with `|X| = 1` have a 2-king in `Y`.
    SplitSingleKing,
    /// Complete split graphs have a Sullivan vertex.
    CompleteSplitSullivan,
    /// The six degree statements over a regular `Y`.
    RegularSplit,
    /// A Sullivan vertex exists when `Y` is almost regular.
    ArSplitSullivan,
    /// A Seymour vertex exists when `Y` is almost regular.
    ArSplitSeymour,
}

impl Check {
    pub const ALL: [Check; 16] = [
        Check::SullivanExists,
        Check::SeymourExists,
        Check::TtIdentity,
        Check::TtSufficiency,
        Check::KingSullivan,
        Check::TriangleFreeSullivan,
        Check::PlanarSullivan,
        Check::ArBalance,
        Check::ArSeymourFormula,
        Check::ArSetDegree,
        Check::SplitSums,
        Check::SplitSingleKing,
        Check::CompleteSplitSullivan,
        Check::RegularSplit,
        Check::ArSplitSullivan,
        Check::ArSplitSeymour,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::SullivanExists => "sullivan-exists",
            Check::SeymourExists => "seymour-exists",
            Check::TtIdentity => "tt-identity",
            Check::TtSufficiency => "tt-sufficiency",
            Check::KingSullivan => "king-sullivan",
            Check::TriangleFreeSullivan => "triangle-free-sullivan",
            Check::PlanarSullivan => "planar-sullivan",
            Check::ArBalance => "ar-balance",
            Check::ArSeymourFormula => "ar-seymour-formula",
            Check::ArSetDegree => "ar-set-degree",
            Check::SplitSums => "split-sums",
            Check::SplitSingleKing => "split-single-king",
            Check::CompleteSplitSullivan => "complete-split-sullivan",
            Check::RegularSplit => "regular-split",
            Check::ArSplitSullivan => "ar-split-sullivan",
            Check::ArSplitSeymour => "ar-split-seymour",
        }
    }

    /// Short names kept for compatibility with existing job scripts.
    fn alias(name: &str) -> Option<Check> {
        Some(match name {
            "prop14" => Check::KingSullivan,
            "triangle-free" => Check::TriangleFreeSullivan,
            "planar-corollary" => Check::PlanarSullivan,
            "prop46" => Check::ArBalance,
            "prop49" => Check::ArSeymourFormula,
            "obs47" => Check::ArSetDegree,
            "lemma41" => Check::SplitSums,
            "thm43" => Check::SplitSingleKing,
            "thm44" => Check::CompleteSplitSullivan,
            "thm45" => Check::RegularSplit,
            "thm48" => Check::ArSplitSullivan,
            "thm410" => Check::ArSplitSeymour,
            _ => return None,
        })
    }

    /// Parses a comma-separated list of check names.
    pub fn parse_list(list: &str) -> Result<Vec<Check>, UnknownCheck> {
        list.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::parse)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown check `{0}`")]
pub struct UnknownCheck(pub String);

impl FromStr for Check {
    type Err = UnknownCheck;

    fn from_str(s: &str) -> Result<Self, UnknownCheck> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .or_else(|| Check::alias(s))
            .ok_or_else(|| UnknownCheck(s.to_string()))
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Check {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Check {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let name = String::deserialize(d)?;
        name.parse().map_err(serde::de::Error::custom)
    }
}

/// A failed check, with the split side it failed on when relevant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub details: String,
    pub split_x: Option<VertexSet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    NotApplicable,
    Pass,
    Fail(Failure),
}

impl Outcome {
    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail(_))
    }

    fn fail(details: impl Into<String>) -> Self {
        Outcome::Fail(Failure {
            details: details.into(),
            split_x: None,
        })
    }

    fn from_bool(ok: bool, details: impl FnOnce() -> String) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::fail(details())
        }
    }
}

/// Runs `check` on `inst`. A panic inside the library (a broken
/// postcondition) is reported as a failure rather than propagated.
pub fn evaluate(check: Check, inst: &Instance) -> Outcome {
    match catch_unwind(AssertUnwindSafe(|| evaluate_inner(check, inst))) {
        Ok(outcome) => outcome,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "non-string panic".into());
            Outcome::fail(format!("panic: {msg}"))
        }
    }
}

fn evaluate_inner(check: Check, inst: &Instance) -> Outcome {
    let g = &inst.graph;
    match check {
        Check::SullivanExists => Outcome::from_bool(g.order() == 0 || !sullivan_vertices(g).is_empty(), || {
            "no Sullivan vertex".into()
        }),
        Check::SeymourExists => Outcome::from_bool(g.order() == 0 || !seymour_vertices(g).is_empty(), || {
            "no Seymour vertex".into()
        }),
        Check::TtIdentity => tt_identity(g),
        Check::TtSufficiency => {
            let s = tt_sufficiency(g);
            if !s.guaranteed {
                return Outcome::NotApplicable;
            }
            Outcome::from_bool(s.has_sullivan_vertex, || {
                format!("tt = {} < |A| = {} but no Sullivan vertex", s.tt, s.arcs)
            })
        }
        Check::KingSullivan => {
            let bad = two_kings(g) - sullivan_vertices(g);
            Outcome::from_bool(bad.is_empty(), || format!("2-kings {bad} are not Sullivan vertices"))
        }
        Check::TriangleFreeSullivan => {
            if !is_triangle_free_underlying(g) {
                return Outcome::NotApplicable;
            }
            Outcome::from_bool(g.order() == 0 || !sullivan_vertices(g).is_empty(), || {
                "triangle-free orientation without a Sullivan vertex".into()
            })
        }
        Check::PlanarSullivan => {
            let s = tt_sufficiency(g);
            let has = g.order() == 0 || s.has_sullivan_vertex;
            Outcome::from_bool(s.tt < s.arcs && has, || {
                format!(
                    "tt = {}, |A| = {}, Sullivan vertex {}",
                    s.tt,
                    s.arcs,
                    if has { "present" } else { "missing" }
                )
            })
        }
        Check::ArBalance => ar_balance(g),
        Check::ArSeymourFormula => {
            if !is_ar_tournament(g) {
                return Outcome::NotApplicable;
            }
            let report = match ar_second_degree_formulas(g) {
                Ok(r) => r,
                Err(e) => return Outcome::fail(e.to_string()),
            };
            let bad: Vec<String> = report
                .records
                .iter()
                .filter(|r| r.dpp_minus_dp != r.expected_dpp_minus_dp)
                .map(|r| {
                    format!(
                        "vertex {}: d++ - d+ = {}, expected {}",
                        r.vertex, r.dpp_minus_dp, r.expected_dpp_minus_dp
                    )
                })
                .collect();
            Outcome::from_bool(bad.is_empty(), || bad.join("; "))
        }
        Check::ArSetDegree => ar_set_degree(g),
        Check::SplitSums => over_partitions(inst, |_| true, |s| {
            let r = check_sum_identities(s);
            ok_or(r.ok, || {
                format!(
                    "second-degree sums {} vs {}, first-degree sums {} vs {}",
                    r.lhs1, r.rhs1, r.lhs2, r.rhs2
                )
            })
        }),
        Check::SplitSingleKing => over_partitions(
            inst,
            |s| s.x().len() == 1 && sources(s.graph()).is_empty(),
            |s| {
                let k = single_x_2king(s).map_err(|e| e.to_string())?;
                if !s.y().contains(k) {
                    return Err(format!("returned vertex {k} is not in Y"));
                }
                ok_or(naive_is_two_king(s.graph(), k), || {
                    format!("returned vertex {k} is not a 2-king")
                })
            },
        ),
        Check::CompleteSplitSullivan => over_partitions(
            inst,
            |s| s.is_complete() && s.graph().order() > 0,
            |s| {
                let v = complete_split_sullivan(s).map_err(|e| e.to_string())?;
                ok_or(naive_is_sullivan(s.graph(), v), || {
                    format!("returned vertex {v} is not a Sullivan vertex")
                })
            },
        ),
        Check::RegularSplit => over_partitions(
            inst,
            |s| is_regular_on(s.graph(), &s.y()),
            |s| {
                let r = regular_split_report(s).map_err(|e| e.to_string())?;
                let failed: Vec<&str> = [
                    (r.a1, "A1"),
                    (r.a2, "A2"),
                    (r.b1, "B1"),
                    (r.b2, "B2"),
                    (r.c1, "C1"),
                    (r.c2, "C2"),
                ]
                .into_iter()
                .filter(|(ok, _)| !ok)
                .map(|(_, name)| name)
                .collect();
                ok_or(failed.is_empty(), || {
                    format!(
                        "statements {} fail (A1 violators {}, A2 violators {})",
                        failed.join(", "),
                        r.a1_violations,
                        r.a2_violations
                    )
                })
            },
        ),
        Check::ArSplitSullivan => over_partitions(inst, ar_y, |s| {
            let r = verify_ar_sullivan(s).map_err(|e| e.to_string())?;
            ok_or(r.passed, || "no Sullivan vertex".into())
        }),
        Check::ArSplitSeymour => over_partitions(inst, ar_y, |s| {
            let r = verify_ar_seymour(s).map_err(|e| e.to_string())?;
            ok_or(r.passed, || "no Seymour vertex".into())
        }),
    }
}

fn ok_or(ok: bool, details: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(details())
    }
}

fn ar_y(s: &SplitDigraph) -> bool {
    s.y().len() >= 2 && is_almost_regular_on(s.graph(), &s.y())
}

fn is_ar_tournament(g: &Digraph) -> bool {
    g.order() >= 2 && is_almost_regular_on(g, &g.vertices())
}

fn tt_identity(g: &Digraph) -> Outcome {
    let stats = triangle_stats(g);
    let rhs: i64 = (0..g.order())
        .map(|u| (g.in_degree(u) * g.out_degree(u)) as i64)
        .sum();
    let w: i64 = stats.w.iter().map(|&w| w as i64).sum();
    let lhs = stats.tt_total as i64 + w;
    Outcome::from_bool(lhs == rhs, || {
        format!("tt + Σw = {} + {} = {lhs}, Σ d-d+ = {rhs}", stats.tt_total, w)
    })
}

fn ar_balance(g: &Digraph) -> Outcome {
    if !is_ar_tournament(g) {
        return Outcome::NotApplicable;
    }
    let n = g.order();
    let surplus = (0..n).filter(|&v| g.out_degree(v) > g.in_degree(v)).count();
    let d = (0..n).map(|v| g.out_degree(v)).max().unwrap_or(0);
    if 2 * d != n || surplus != d {
        return Outcome::fail(format!(
            "n = {n}, d = {d}, |V+| = {surplus}, |V-| = {}",
            n - surplus
        ));
    }
    let report = match ar_second_degree_formulas(g) {
        Ok(r) => r,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    let bad: Vec<String> = report
        .records
        .iter()
        .filter(|r| r.dpp_minus_dm != r.expected_dpp_minus_dm)
        .map(|r| {
            format!(
                "vertex {}: d++ - d- = {}, expected {}",
                r.vertex, r.dpp_minus_dm, r.expected_dpp_minus_dm
            )
        })
        .collect();
    Outcome::from_bool(bad.is_empty(), || bad.join("; "))
}

fn ar_set_degree(g: &Digraph) -> Outcome {
    if !is_ar_tournament(g) || g.order() > SUBSET_SCAN_LIMIT {
        return Outcome::NotApplicable;
    }
    let n = g.order();
    for mask in 0u64..1 << n {
        let s: VertexSet = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        match set_degree_bound_check(g, &s) {
            Ok(r) if r.ok => {}
            Ok(r) => {
                return Outcome::fail(format!(
                    "S = {s}: d+(S) - d-(S) = {}, in V+ {}, in V- {}",
                    r.diff, r.subset_of_plus, r.subset_of_minus
                ))
            }
            Err(e) => return Outcome::fail(e.to_string()),
        }
    }
    Outcome::Pass
}

/// Every valid split partition of the instance, or `None` when the graph is
/// too large to scan and carries no split side.
fn partitions(inst: &Instance) -> Option<Vec<SplitDigraph>> {
    let g = &inst.graph;
    if let Some(x) = inst.split_x {
        return Some(new_split(g.clone(), x).ok().into_iter().collect());
    }
    let n = g.order();
    if n > PARTITION_SCAN_LIMIT {
        return None;
    }
    let all = g.vertices();
    Some(
        (0u32..1 << n)
            .filter_map(|mask| {
                let x: VertexSet = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                let independent = x.iter().all(|v| g.out_neighbors(v).is_disjoint(&x));
                if !independent || !g.is_tournament(&(all - x)) {
                    return None;
                }
                new_split(g.clone(), x).ok()
            })
            .collect(),
    )
}

fn over_partitions(
    inst: &Instance,
    applies: impl Fn(&SplitDigraph) -> bool,
    run: impl Fn(&SplitDigraph) -> Result<(), String>,
) -> Outcome {
    let Some(parts) = partitions(inst) else {
        return Outcome::NotApplicable;
    };
    let mut applied = false;
    for s in parts.iter().filter(|s| applies(s)) {
        applied = true;
        if let Err(details) = run(s) {
            return Outcome::Fail(Failure {
                details: format!("X = {}: {details}", s.x()),
                split_x: Some(s.x()),
            });
        }
    }
    if applied {
        Outcome::Pass
    } else {
        Outcome::NotApplicable
    }
}

/// Vertices at distance exactly two from `u`, by arc lookups alone.
pub fn naive_second_out_degree(g: &Digraph, u: usize) -> usize {
    let n = g.order();
    (0..n)
        .filter(|&v| {
            v != u && !g.has_arc(u, v) && (0..n).any(|w| g.has_arc(u, w) && g.has_arc(w, v))
        })
        .count()
}

pub fn naive_is_two_king(g: &Digraph, u: usize) -> bool {
    let n = g.order();
    (0..n).all(|v| {
        v == u || g.has_arc(u, v) || (0..n).any(|w| g.has_arc(u, w) && g.has_arc(w, v))
    })
}

pub fn naive_is_sullivan(g: &Digraph, u: usize) -> bool {
    let in_degree = (0..g.order()).filter(|&v| g.has_arc(v, u)).count();
    naive_second_out_degree(g, u) >= in_degree
}
