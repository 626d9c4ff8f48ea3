//! Oriented split graphs: an independent set `X` joined to a tournament `Y`.
//!
//! Besides the validated [`SplitDigraph`] type this module provides
//!
//! * the two degree-sum identities between `X` and `Y`
//!   ([`check_sum_identities`]),
//! * constructive finders for a 2-king when `|X| = 1`
//!   ([`single_x_2king`]) and a Sullivan vertex when every `X`–`Y` pair is
//!   adjacent ([`complete_split_sullivan`]),
//! * literal evaluation of the six degree statements that hold when `Y`
//!   induces a regular tournament ([`regular_split_report`]),
//! * the surplus/deficit partition of an almost regular tournament and its
//!   second-degree case formulas ([`ar_partition`],
//!   [`ar_second_degree_formulas`], [`set_degree_bound_check`]),
//! * brute-force existence checks for Sullivan and Seymour vertices when `Y`
//!   is almost regular ([`verify_ar_sullivan`], [`verify_ar_seymour`]).

use serde::Serialize;
use thiserror::Error;

use crate::analysis::{self, is_two_king, max_out_degree_vertex, AnalysisError};
use crate::graph::{Digraph, GraphError, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplitError {
    #[error("X is not independent: arc {0}->{1}")]
    NotIndependent(usize, usize),
    #[error("Y = V∖X does not induce a tournament")]
    NotTournamentOnY,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("split graph is not complete: {0} and {1} are not adjacent")]
    NotCompleteSplit(usize, usize),
    #[error("vertex {0} is not in X")]
    VertexNotInX(usize),
    #[error("Y does not induce a regular tournament")]
    NotRegularTournamentOnY,
    #[error("Y does not induce an almost regular tournament")]
    NotAlmostRegularOnY,
    #[error("digraph is not an almost regular tournament")]
    NotAlmostRegular,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

/// A digraph together with a validated split partition `(X, Y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitDigraph {
    graph: Digraph,
    x: VertexSet,
    y: VertexSet,
}

/// Validates `x` as the independent side; `Y` is the complement.
pub fn new_split(graph: Digraph, x: VertexSet) -> Result<SplitDigraph, SplitError> {
    graph.check_subset(&x)?;
    if let Some((u, v)) = x
        .iter()
        .find_map(|u| (graph.out_neighbors(u) & x).first().map(|v| (u, v)))
    {
        return Err(SplitError::NotIndependent(u, v));
    }
    let y = graph.vertices() - x;
    if !graph.is_tournament(&y) {
        return Err(SplitError::NotTournamentOnY);
    }
    Ok(SplitDigraph { graph, x, y })
}

impl SplitDigraph {
    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn x(&self) -> VertexSet {
        self.x
    }

    pub fn y(&self) -> VertexSet {
        self.y
    }

    pub fn into_graph(self) -> Digraph {
        self.graph
    }

    /// Every `X`–`Y` pair is joined by an arc.
    pub fn is_complete(&self) -> bool {
        self.first_missing_cross_pair().is_none()
    }

    fn first_missing_cross_pair(&self) -> Option<(usize, usize)> {
        self.x.iter().find_map(|x| {
            let adj = self.graph.out_neighbors(x) | self.graph.in_neighbors(x);
            (self.y - adj).first().map(|y| (x, y))
        })
    }

    /// `D[Y]` with its labelling.
    pub fn tournament(&self) -> crate::graph::InducedSubgraph {
        self.graph.induced_subgraph(&self.y)
    }
}

/// Both sides of both `X`/`Y` degree-sum identities:
///
/// ```text
/// Σ_{x∈X} d--_Y(x) = Σ_{y∈Y} d++_X(y)      (lhs1 = rhs1)
/// Σ_{x∈X} d-_Y(x)  = Σ_{y∈Y} d+_X(y)       (lhs2 = rhs2)
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SumIdentities {
    pub lhs1: usize,
    pub rhs1: usize,
    pub lhs2: usize,
    pub rhs2: usize,
    pub ok: bool,
}

pub fn check_sum_identities(s: &SplitDigraph) -> SumIdentities {
    let g = &s.graph;
    let lhs1 = s.x.iter().map(|x| (g.second_in(x) & s.y).len()).sum();
    let rhs1 = s.y.iter().map(|y| (g.second_out(y) & s.x).len()).sum();
    let lhs2 = s.x.iter().map(|x| (g.in_neighbors(x) & s.y).len()).sum();
    let rhs2 = s.y.iter().map(|y| (g.out_neighbors(y) & s.x).len()).sum();
    SumIdentities {
        lhs1,
        rhs1,
        lhs2,
        rhs2,
        ok: lhs1 == rhs1 && lhs2 == rhs2,
    }
}

/// A 2-king of the whole digraph lying in `Y`, for a source-free split graph
/// with `|X| = 1`.
///
/// Takes the smallest in-neighbour `y` of `x`; if `y` is not already a 2-king
/// of `D[Y]`, a 2-king of `D[Y]` dominating `y` is used instead. Either way
/// the result reaches `x` through `y` within two steps.
pub fn single_x_2king(s: &SplitDigraph) -> Result<usize, SplitError> {
    if s.x.len() != 1 {
        return Err(SplitError::PreconditionViolated(format!(
            "|X| = {}, expected 1",
            s.x.len()
        )));
    }
    if let Some(src) = analysis::sources(&s.graph).first() {
        return Err(SplitError::PreconditionViolated(format!(
            "vertex {src} is a source"
        )));
    }
    let x = s.x.first().expect("|X| = 1");
    let sub = s.tournament();
    let y = (s.graph.in_neighbors(x) & s.y)
        .first()
        .expect("x is not a source");
    let y_local = sub.to_new[y].expect("y in Y");
    let king_local = if is_two_king(&sub.graph, y_local) {
        y_local
    } else {
        analysis::dominating_2king(&sub.graph, y_local)?
    };
    let king = sub.to_old[king_local];
    assert!(
        s.y.contains(king) && is_two_king(&s.graph, king),
        "vertex {king} is not a 2-king in Y"
    );
    Ok(king)
}

/// A Sullivan vertex of a complete oriented split graph.
///
/// Let `v` maximise the out-degree inside `D[Y]`. If some `u ∈ N-_X(v)` is
/// missing from `N++(v)`, that `u` (smallest such) is returned, otherwise `v`.
/// With `Y` empty every vertex is an isolated source and the first is returned.
pub fn complete_split_sullivan(s: &SplitDigraph) -> Result<usize, SplitError> {
    if let Some((x, y)) = s.first_missing_cross_pair() {
        return Err(SplitError::NotCompleteSplit(x, y));
    }
    let g = &s.graph;
    let chosen = match max_out_degree_vertex(g, &s.y) {
        None => s
            .x
            .first()
            .ok_or(SplitError::Analysis(AnalysisError::EmptyGraph))?,
        Some(v) => {
            let missing = (g.in_neighbors(v) & s.x) - g.second_out(v);
            missing.first().unwrap_or(v)
        }
    };
    assert!(
        analysis::is_sullivan_vertex(g, chosen),
        "vertex {chosen} of a complete split graph is not a Sullivan vertex"
    );
    Ok(chosen)
}

/// The sets the regular/almost-regular arguments attach to a vertex `x ∈ X`.
///
/// * `a = N+(x)` (a subset of `Y` since `X` is independent)
/// * `b = N++(x) ∩ Y`
/// * `c = Y ∖ (a ∪ b)`; every vertex of `c` dominates every vertex of `a`
/// * `c_prime = Y ∖ (N-(x) ∪ N--(x))`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VertexContext {
    pub x: usize,
    pub a: VertexSet,
    pub b: VertexSet,
    pub c: VertexSet,
    pub c_prime: VertexSet,
}

impl VertexContext {
    /// `c → (a ∩ Y)`.
    pub fn c_dominates_a(&self, g: &Digraph) -> bool {
        self.c.iter().all(|v| self.a.is_subset(&g.out_neighbors(v)))
    }
}

pub fn vertex_context(s: &SplitDigraph, x: usize) -> Result<VertexContext, SplitError> {
    if !s.x.contains(x) {
        return Err(SplitError::VertexNotInX(x));
    }
    let g = &s.graph;
    let a = g.out_neighbors(x);
    let b = g.second_out(x) & s.y;
    let c = s.y - a - b;
    let c_prime = s.y - g.in_neighbors(x) - g.second_in(x);
    Ok(VertexContext {
        x,
        a,
        b,
        c,
        c_prime,
    })
}

/// `D[s]` is a tournament in which every vertex has equal in- and out-degree.
pub fn is_regular_on(g: &Digraph, s: &VertexSet) -> bool {
    g.is_tournament(s)
        && s.iter()
            .all(|v| (g.out_neighbors(v) & *s).len() == (g.in_neighbors(v) & *s).len())
}

/// `D[s]` is a tournament in which every vertex has `|d+ - d-| = 1`.
pub fn is_almost_regular_on(g: &Digraph, s: &VertexSet) -> bool {
    g.is_tournament(s)
        && s.iter().all(|v| {
            let (p, m) = (
                (g.out_neighbors(v) & *s).len(),
                (g.in_neighbors(v) & *s).len(),
            );
            p.abs_diff(m) == 1
        })
}

/// Literal truth values of the six statements for split graphs over a
/// regular tournament. Degrees without a subscript are taken in the whole
/// digraph.
///
/// * `a1`: every `x ∈ X` has `d++_Y(x) >= d+(x)` or `d++_Y(x) >= d-(x)`
/// * `a2`: every `x ∈ X` has `d--_Y(x) >= d-(x)` or `d--_Y(x) >= d+(x)`
/// * `b1`: some `x'` has `d++_Y(x') >= d+(x')`, or all `x` have `d--_Y(x) >= d-(x)`
/// * `b2`: some `x'` has `d++_Y(x') >= d-(x')`, or all `x` have `d--_Y(x) >= d+(x)`
/// * `c1`: some vertex has `d++ >= d+` (a Seymour vertex)
/// * `c2`: some vertex has `d++ >= d-` (a Sullivan vertex)
///
/// For the empty digraph `c1` and `c2` hold vacuously.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularSplitReport {
    pub a1: bool,
    pub a2: bool,
    pub b1: bool,
    pub b2: bool,
    pub c1: bool,
    pub c2: bool,
    /// Vertices of `X` violating (A1) / (A2).
    pub a1_violations: VertexSet,
    pub a2_violations: VertexSet,
    /// The `x'` satisfying the existential half of (B1) / (B2), if any.
    pub b1_witness: Option<usize>,
    pub b2_witness: Option<usize>,
    pub c1_witness: Option<usize>,
    pub c2_witness: Option<usize>,
}

impl RegularSplitReport {
    pub fn all_hold(&self) -> bool {
        self.a1 && self.a2 && self.b1 && self.b2 && self.c1 && self.c2
    }
}

pub fn regular_split_report(s: &SplitDigraph) -> Result<RegularSplitReport, SplitError> {
    if !is_regular_on(&s.graph, &s.y) {
        return Err(SplitError::NotRegularTournamentOnY);
    }
    let g = &s.graph;
    struct XDeg {
        x: usize,
        plus: usize,
        minus: usize,
        pp_y: usize,
        mm_y: usize,
    }
    let xs: Vec<XDeg> = s
        .x
        .iter()
        .map(|x| XDeg {
            x,
            plus: g.out_degree(x),
            minus: g.in_degree(x),
            pp_y: (g.second_out(x) & s.y).len(),
            mm_y: (g.second_in(x) & s.y).len(),
        })
        .collect();

    let a1_violations: VertexSet = xs
        .iter()
        .filter(|d| !(d.pp_y >= d.plus || d.pp_y >= d.minus))
        .map(|d| d.x)
        .collect();
    let a2_violations: VertexSet = xs
        .iter()
        .filter(|d| !(d.mm_y >= d.minus || d.mm_y >= d.plus))
        .map(|d| d.x)
        .collect();
    let b1_witness = xs.iter().find(|d| d.pp_y >= d.plus).map(|d| d.x);
    let b2_witness = xs.iter().find(|d| d.pp_y >= d.minus).map(|d| d.x);
    let b1 = b1_witness.is_some() || xs.iter().all(|d| d.mm_y >= d.minus);
    let b2 = b2_witness.is_some() || xs.iter().all(|d| d.mm_y >= d.plus);
    let c1_witness = analysis::seymour_vertices(g).first();
    let c2_witness = analysis::sullivan_vertices(g).first();
    let empty = g.order() == 0;
    Ok(RegularSplitReport {
        a1: a1_violations.is_empty(),
        a2: a2_violations.is_empty(),
        b1,
        b2,
        c1: empty || c1_witness.is_some(),
        c2: empty || c2_witness.is_some(),
        a1_violations,
        a2_violations,
        b1_witness,
        b2_witness,
        c1_witness,
        c2_witness,
    })
}

/// Surplus (`d+ = d- + 1`) and deficit (`d- = d+ + 1`) classes of an almost
/// regular tournament of order `2d`. Both classes have exactly `d` vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ArPartition {
    pub d: usize,
    pub v_plus: VertexSet,
    pub v_minus: VertexSet,
}

pub fn ar_partition(t: &Digraph) -> Result<ArPartition, SplitError> {
    if !is_almost_regular_on(t, &t.vertices()) {
        return Err(SplitError::NotAlmostRegular);
    }
    let v_plus: VertexSet = (0..t.order())
        .filter(|&v| t.out_degree(v) > t.in_degree(v))
        .collect();
    let v_minus = t.vertices() - v_plus;
    let d = (0..t.order()).map(|v| t.out_degree(v)).max().unwrap_or(0);
    assert!(
        v_plus.len() == d && v_minus.len() == d,
        "almost regular tournament with |V+| = {}, |V-| = {}, d = {d}",
        v_plus.len(),
        v_minus.len()
    );
    Ok(ArPartition { d, v_plus, v_minus })
}

/// Second-degree differences at one vertex of an almost regular tournament
/// next to their predicted values:
///
/// ```text
/// d++ - d- =  0   if v is a 2-king
///            -1   otherwise
/// d++ - d+ = +1   if v is a 2-king and d-(v) = d
///            -1   if d+(v) = d
///             0   otherwise
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ArVertexRecord {
    pub vertex: usize,
    pub is_2king: bool,
    pub dpp_minus_dm: i64,
    pub dpp_minus_dp: i64,
    pub expected_dpp_minus_dm: i64,
    pub expected_dpp_minus_dp: i64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArFormulaReport {
    pub partition: ArPartition,
    pub records: Vec<ArVertexRecord>,
    pub ok: bool,
}

pub fn ar_second_degree_formulas(t: &Digraph) -> Result<ArFormulaReport, SplitError> {
    let partition = ar_partition(t)?;
    let d = partition.d;
    let records: Vec<ArVertexRecord> = (0..t.order())
        .map(|v| {
            let king = is_two_king(t, v);
            let pp = t.second_out(v).len() as i64;
            let (plus, minus) = (t.out_degree(v), t.in_degree(v));
            let expected_dm = if king { 0 } else { -1 };
            let expected_dp = if king && minus == d {
                1
            } else if plus == d {
                -1
            } else {
                0
            };
            let dpp_minus_dm = pp - minus as i64;
            let dpp_minus_dp = pp - plus as i64;
            ArVertexRecord {
                vertex: v,
                is_2king: king,
                dpp_minus_dm,
                dpp_minus_dp,
                expected_dpp_minus_dm: expected_dm,
                expected_dpp_minus_dp: expected_dp,
                ok: dpp_minus_dm == expected_dm && dpp_minus_dp == expected_dp,
            }
        })
        .collect();
    let ok = records.iter().all(|r| r.ok);
    Ok(ArFormulaReport {
        partition,
        records,
        ok,
    })
}

/// `d+(S) - d-(S)` inside an almost regular tournament against the bound
/// `|S|`, with the tightness cases compared to `S ⊆ V+` / `S ⊆ V-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SetDegreeBound {
    pub diff: i64,
    pub tight_plus: bool,
    pub tight_minus: bool,
    pub subset_of_plus: bool,
    pub subset_of_minus: bool,
    /// `|diff| <= |S|` and both tightness cases match their subset tests.
    pub ok: bool,
}

pub fn set_degree_bound_check(t: &Digraph, s: &VertexSet) -> Result<SetDegreeBound, SplitError> {
    let partition = ar_partition(t)?;
    let all = t.vertices();
    let diff = t.set_out_degree(s, &all)? as i64 - t.set_in_degree(s, &all)? as i64;
    let size = s.len() as i64;
    let tight_plus = diff == size;
    let tight_minus = -diff == size;
    let subset_of_plus = s.is_subset(&partition.v_plus);
    let subset_of_minus = s.is_subset(&partition.v_minus);
    Ok(SetDegreeBound {
        diff,
        tight_plus,
        tight_minus,
        subset_of_plus,
        subset_of_minus,
        ok: diff.abs() <= size && tight_plus == subset_of_plus && tight_minus == subset_of_minus,
    })
}

/// Result of an exhaustive vertex scan for a Sullivan or Seymour vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub property: &'static str,
    pub witness: Option<usize>,
    pub passed: bool,
}

pub fn verify_ar_sullivan(s: &SplitDigraph) -> Result<WitnessReport, SplitError> {
    scan_for_witness(s, "sullivan", analysis::sullivan_vertices)
}

pub fn verify_ar_seymour(s: &SplitDigraph) -> Result<WitnessReport, SplitError> {
    scan_for_witness(s, "seymour", analysis::seymour_vertices)
}

fn scan_for_witness(
    s: &SplitDigraph,
    property: &'static str,
    scan: fn(&Digraph) -> VertexSet,
) -> Result<WitnessReport, SplitError> {
    if !is_almost_regular_on(&s.graph, &s.y) {
        return Err(SplitError::NotAlmostRegularOnY);
    }
    let witness = scan(&s.graph).first();
    Ok(WitnessReport {
        property,
        witness,
        passed: witness.is_some() || s.graph.order() == 0,
    })
}
