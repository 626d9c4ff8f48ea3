//! Sullivan, Seymour and 2-king vertices, and transitive-triangle counting.
//!
//! A vertex `u` is a *Sullivan vertex* when `|N++(u)| >= |N-(u)|`, a *Seymour
//! vertex* when `|N++(u)| >= |N+(u)|`, and a *2-king* when every vertex is
//! within distance two of it. Every 2-king is a Sullivan vertex because its
//! in-neighbours must all lie in its second out-neighbourhood.
//!
//! Functions that return a single vertex break ties by smallest index.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Digraph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("digraph is not a tournament")]
    NotATournament,
    #[error("digraph has no vertices")]
    EmptyGraph,
    #[error("vertex {0} is already a 2-king")]
    AlreadyKing(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
}

pub fn is_sullivan_vertex(d: &Digraph, u: usize) -> bool {
    d.second_out(u).len() >= d.in_degree(u)
}

pub fn is_seymour_vertex(d: &Digraph, u: usize) -> bool {
    d.second_out(u).len() >= d.out_degree(u)
}

pub fn is_two_king(d: &Digraph, u: usize) -> bool {
    let mut reach = d.out_neighbors(u) | d.second_out(u);
    reach.insert(u);
    reach == d.vertices()
}

/// `{ u : d++(u) >= d-(u) }`.
pub fn sullivan_vertices(d: &Digraph) -> VertexSet {
    (0..d.order()).filter(|&u| is_sullivan_vertex(d, u)).collect()
}

/// `{ u : d++(u) >= d+(u) }`.
pub fn seymour_vertices(d: &Digraph) -> VertexSet {
    (0..d.order()).filter(|&u| is_seymour_vertex(d, u)).collect()
}

pub fn two_kings(d: &Digraph) -> VertexSet {
    (0..d.order()).filter(|&u| is_two_king(d, u)).collect()
}

/// Vertices with no in-arcs.
pub fn sources(d: &Digraph) -> VertexSet {
    (0..d.order()).filter(|&u| d.in_degree(u) == 0).collect()
}

/// Vertices with no out-arcs.
pub fn sinks(d: &Digraph) -> VertexSet {
    (0..d.order()).filter(|&u| d.out_degree(u) == 0).collect()
}

/// A vertex of maximum out-degree of a tournament, which is always a 2-king.
pub fn tournament_2king(d: &Digraph) -> Result<usize, AnalysisError> {
    if !d.is_tournament(&d.vertices()) {
        return Err(AnalysisError::NotATournament);
    }
    let king = max_out_degree_vertex(d, &d.vertices()).ok_or(AnalysisError::EmptyGraph)?;
    assert!(
        is_two_king(d, king),
        "max out-degree vertex {king} of a tournament is not a 2-king"
    );
    Ok(king)
}

/// Smallest-index vertex of `s` maximising `|N+(v) ∩ s|`.
pub(crate) fn max_out_degree_vertex(d: &Digraph, s: &VertexSet) -> Option<usize> {
    let mut best: Option<(usize, usize)> = None;
    for v in s.iter() {
        let deg = (d.out_neighbors(v) & *s).len();
        if best.is_none_or(|(_, b)| deg > b) {
            best = Some((v, deg));
        }
    }
    best.map(|(v, _)| v)
}

/// A 2-king of the tournament `d` that dominates `x` and all of `N+(x)`.
///
/// With `U = V ∖ (N+[x] ∪ N++(x))` non-empty (because `x` is not a king),
/// every vertex of `U` beats all of `N+[x]`, and a 2-king of `D[U]` reaches
/// the rest of `U` within two steps, so it is a 2-king of `d`.
pub fn dominating_2king(d: &Digraph, x: usize) -> Result<usize, AnalysisError> {
    if x >= d.order() {
        return Err(AnalysisError::VertexOutOfRange {
            vertex: x,
            n: d.order(),
        });
    }
    if !d.is_tournament(&d.vertices()) {
        return Err(AnalysisError::NotATournament);
    }
    let mut closed = d.out_neighbors(x);
    closed.insert(x);
    let rest = d.vertices() - closed - d.second_out(x);
    if rest.is_empty() {
        return Err(AnalysisError::AlreadyKing(x));
    }
    let sub = d.induced_subgraph(&rest);
    let local = tournament_2king(&sub.graph)?;
    let king = sub.to_old[local];
    assert!(
        closed.is_subset(&d.out_neighbors(king)),
        "vertex {king} does not dominate N+[{x}]"
    );
    assert!(is_two_king(d, king), "vertex {king} is not a 2-king");
    Ok(king)
}

/// Transitive-triangle counts.
///
/// `tt_per_vertex[u]` counts transitive triangles with source `u`, i.e. the
/// arcs inside `N+(u)`; `w[u]` counts arcs from `N+(u)` into `N++(u)`. The
/// per-vertex identity `Σ_{v ∈ N+(u)} d+(v) = tt_u + w_u` sums to
/// `tt(D) + Σ w_u = Σ d-(u)·d+(u)`; `identity_residual` is the difference
/// of the two sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleStats {
    pub tt_total: u64,
    pub tt_per_vertex: Vec<u64>,
    pub w: Vec<u64>,
    pub identity_residual: i64,
}

/// Panics if the counting identity fails, which would indicate a bug.
pub fn triangle_stats(d: &Digraph) -> TriangleStats {
    let n = d.order();
    let mut tt_per_vertex = vec![0u64; n];
    let mut w = vec![0u64; n];
    let mut degree_products = 0i64;
    for u in 0..n {
        let out = d.out_neighbors(u);
        let second = d.second_out(u);
        for v in out.iter() {
            let row = d.out_neighbors(v);
            tt_per_vertex[u] += (row & out).len() as u64;
            w[u] += (row & second).len() as u64;
        }
        degree_products += (d.in_degree(u) * d.out_degree(u)) as i64;
    }
    let tt_total: u64 = tt_per_vertex.iter().sum();
    let w_total: u64 = w.iter().sum();
    let identity_residual = degree_products - tt_total as i64 - w_total as i64;
    assert_eq!(
        identity_residual, 0,
        "tt(D) + Σw_u = Σd-(u)d+(u) violated on {d:?}"
    );
    TriangleStats {
        tt_total,
        tt_per_vertex,
        w,
        identity_residual,
    }
}

/// Outcome of the transitive-triangle sufficient condition: `tt(D) < |A|`
/// guarantees a Sullivan vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TtSufficiency {
    pub guaranteed: bool,
    pub tt: u64,
    pub arcs: u64,
    pub has_sullivan_vertex: bool,
}

impl TtSufficiency {
    /// `guaranteed ⟹ has_sullivan_vertex`.
    pub fn holds(&self) -> bool {
        !self.guaranteed || self.has_sullivan_vertex
    }
}

pub fn tt_sufficiency(d: &Digraph) -> TtSufficiency {
    let tt = triangle_stats(d).tt_total;
    let arcs = d.arc_count() as u64;
    TtSufficiency {
        guaranteed: tt < arcs,
        tt,
        arcs,
        has_sullivan_vertex: !sullivan_vertices(d).is_empty(),
    }
}

/// `true` iff the underlying undirected graph contains no triangle.
pub fn is_triangle_free_underlying(d: &Digraph) -> bool {
    let nbr: Vec<VertexSet> = (0..d.order())
        .map(|u| d.out_neighbors(u) | d.in_neighbors(u))
        .collect();
    (0..d.order()).all(|u| {
        nbr[u]
            .iter()
            .filter(|&v| v > u)
            .all(|v| (nbr[u] & nbr[v]).is_empty())
    })
}

/// Every conjecture-relevant vertex class of one digraph.
///
/// On the empty digraph both conjectures are taken to hold vacuously.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureStatus {
    pub sullivan_vertices: VertexSet,
    pub seymour_vertices: VertexSet,
    pub two_kings: VertexSet,
    pub sources: VertexSet,
    pub holds_sullivan: bool,
    pub holds_seymour: bool,
}

pub fn conjecture_status(d: &Digraph) -> ConjectureStatus {
    let mut status = ConjectureStatus {
        sullivan_vertices: VertexSet::new(),
        seymour_vertices: VertexSet::new(),
        two_kings: VertexSet::new(),
        sources: VertexSet::new(),
        holds_sullivan: true,
        holds_seymour: true,
    };
    let all = d.vertices();
    for u in 0..d.order() {
        let out = d.out_neighbors(u);
        let second = d.second_out(u);
        let (d_pp, d_minus) = (second.len(), d.in_degree(u));
        if d_pp >= d_minus {
            status.sullivan_vertices.insert(u);
        }
        if d_pp >= out.len() {
            status.seymour_vertices.insert(u);
        }
        let mut reach = out | second;
        reach.insert(u);
        if reach == all {
            status.two_kings.insert(u);
        }
        if d_minus == 0 {
            status.sources.insert(u);
        }
    }
    if d.order() > 0 {
        status.holds_sullivan = !status.sullivan_vertices.is_empty();
        status.holds_seymour = !status.seymour_vertices.is_empty();
    }
    status
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    fn path3() -> Digraph {
        Digraph::new(3, [(0, 1), (1, 2)]).unwrap()
    }

    fn cycle3() -> Digraph {
        Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn transitive(n: usize) -> Digraph {
        Digraph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    fn r5() -> Digraph {
        Digraph::new(5, (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, (i + 2) % 5)])).unwrap()
    }

    #[test]
    fn sullivan_examples() {
        assert_eq!(sullivan_vertices(&path3()), set(&[0]));
        assert_eq!(sullivan_vertices(&cycle3()), set(&[0, 1, 2]));
        assert!(!sullivan_vertices(&r5()).is_empty());
        assert!(!sullivan_vertices(&transitive(6)).is_empty());
    }

    #[test]
    fn seymour_examples() {
        assert_eq!(seymour_vertices(&path3()), set(&[0, 2]));
        assert_eq!(seymour_vertices(&cycle3()), set(&[0, 1, 2]));
        let star_in = Digraph::new(4, [(0, 3), (1, 3), (2, 3)]).unwrap();
        assert!(seymour_vertices(&star_in).contains(3));
    }

    #[test]
    fn two_king_examples() {
        let kings = two_kings(&transitive(3));
        assert!(kings.contains(0) && !kings.contains(1) && !kings.contains(2));
        assert_eq!(two_kings(&cycle3()), set(&[0, 1, 2]));
        assert_eq!(two_kings(&r5()), r5().vertices());
    }

    #[test]
    fn tournament_king_examples() {
        assert_eq!(tournament_2king(&transitive(3)), Ok(0));
        assert_eq!(tournament_2king(&r5()), Ok(0));
        assert_eq!(tournament_2king(&Digraph::empty(1).unwrap()), Ok(0));
        assert_eq!(
            tournament_2king(&path3()),
            Err(AnalysisError::NotATournament)
        );
        assert_eq!(
            tournament_2king(&Digraph::empty(0).unwrap()),
            Err(AnalysisError::EmptyGraph)
        );
    }

    #[test]
    fn dominating_king_examples() {
        assert_eq!(dominating_2king(&transitive(3), 2), Ok(0));
        assert_eq!(dominating_2king(&transitive(4), 3), Ok(0));
        assert_eq!(dominating_2king(&r5(), 0), Err(AnalysisError::AlreadyKing(0)));
        assert_eq!(
            dominating_2king(&path3(), 2),
            Err(AnalysisError::NotATournament)
        );
        assert!(matches!(
            dominating_2king(&r5(), 7),
            Err(AnalysisError::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn triangle_stats_examples() {
        let s = triangle_stats(&transitive(3));
        assert_eq!(s.tt_total, 1);
        assert_eq!(s.tt_per_vertex, vec![1, 0, 0]);
        assert_eq!(s.w, vec![0, 0, 0]);
        assert_eq!(s.identity_residual, 0);

        assert_eq!(triangle_stats(&cycle3()).tt_total, 0);

        let r = r5();
        let s = triangle_stats(&r);
        assert_eq!(s.tt_total, 5);
        for u in 0..5 {
            let k = r.out_degree(u) as u64;
            assert_eq!(s.tt_per_vertex[u], k * (k - 1) / 2);
        }
    }

    #[test]
    fn tt_sufficiency_examples() {
        let c = tt_sufficiency(&cycle3());
        assert!(c.guaranteed && c.has_sullivan_vertex && c.holds());
        let t = tt_sufficiency(&transitive(3));
        assert_eq!((t.tt, t.arcs, t.guaranteed), (1, 3, true));
        let t5 = tt_sufficiency(&transitive(5));
        assert_eq!((t5.tt, t5.arcs, t5.guaranteed), (10, 10, false));
        assert!(t5.has_sullivan_vertex && t5.holds());
    }

    #[test]
    fn triangle_free_examples() {
        assert!(!is_triangle_free_underlying(&cycle3()));
        assert!(is_triangle_free_underlying(&path3()));
        let bip = Digraph::new(6, [(0, 3), (4, 0), (1, 5), (2, 4), (5, 2)]).unwrap();
        assert!(is_triangle_free_underlying(&bip));
    }

    #[test]
    fn conjecture_status_examples() {
        let s = conjecture_status(&Digraph::empty(3).unwrap());
        assert_eq!(s.sources, set(&[0, 1, 2]));
        assert!(s.holds_sullivan && s.holds_seymour);

        let s = conjecture_status(&path3());
        assert_eq!(s.sources, set(&[0]));
        assert!(s.holds_sullivan && s.holds_seymour);

        let s = conjecture_status(&cycle3());
        assert_eq!(s.two_kings, set(&[0, 1, 2]));
        assert!(s.two_kings.is_subset(&s.sullivan_vertices));

        let s = conjecture_status(&Digraph::empty(0).unwrap());
        assert!(s.holds_sullivan && s.holds_seymour);
    }

    #[test]
    fn status_agrees_with_individual_predicates() {
        for d in [path3(), cycle3(), r5(), transitive(5)] {
            let s = conjecture_status(&d);
            assert_eq!(s.sullivan_vertices, sullivan_vertices(&d));
            assert_eq!(s.seymour_vertices, seymour_vertices(&d));
            assert_eq!(s.two_kings, two_kings(&d));
            assert_eq!(s.sources, sources(&d));
        }
    }
}
