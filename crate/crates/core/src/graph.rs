//! Oriented graphs stored as fixed-width bitset rows.
//!
//! Every vertex owns one [`VertexSet`] for its out-neighbourhood and one for
//! its in-neighbourhood, so the second neighbourhoods reduce to word-parallel
//! unions over selected rows:
//!
//! ```text
//! N++(u) = ( ⋃_{w ∈ N+(u)} N+(w) ) ∖ ( N+(u) ∪ {u} )
//! N--(u) = ( ⋃_{w ∈ N-(u)} N-(w) ) ∖ ( N-(u) ∪ {u} )
//! ```
//!
//! The vertex cap [`MAX_VERTICES`] is fixed at compile time (128 by default,
//! 256 or 512 with the `max-vertices-*` features).

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Not, Sub, SubAssign};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[cfg(feature = "max-vertices-512")]
const WORDS: usize = 8;
#[cfg(all(feature = "max-vertices-256", not(feature = "max-vertices-512")))]
const WORDS: usize = 4;
#[cfg(not(any(feature = "max-vertices-256", feature = "max-vertices-512")))]
const WORDS: usize = 2;

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = WORDS * 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("arcs {u}->{v} and {v}->{u} both present; oriented graphs forbid digons")]
    OrientationViolation { u: usize, v: usize },
    #[error("loop arc at vertex {0}")]
    LoopArc(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("{0} vertices requested, at most {MAX_VERTICES} supported")]
    TooManyVertices(usize),
}

/// A set of vertex ids below [`MAX_VERTICES`], stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet {
    words: [u64; WORDS],
}

impl VertexSet {
    pub const fn new() -> Self {
        VertexSet { words: [0; WORDS] }
    }

    /// The set `{0, 1, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "vertex count {n} exceeds {MAX_VERTICES}");
        let mut s = Self::new();
        let full_words = n / 64;
        for w in s.words.iter_mut().take(full_words) {
            *w = u64::MAX;
        }
        if !n.is_multiple_of(64) {
            s.words[full_words] = (1u64 << (n % 64)) - 1;
        }
        s
    }

    pub fn singleton(v: usize) -> Self {
        let mut s = Self::new();
        s.insert(v);
        s
    }

    /// Panics if `v >= MAX_VERTICES`.
    #[inline]
    pub fn insert(&mut self, v: usize) -> bool {
        let (w, b) = (v / 64, v % 64);
        let had = self.words[w] >> b & 1 == 1;
        self.words[w] |= 1 << b;
        !had
    }

    #[inline]
    pub fn remove(&mut self, v: usize) -> bool {
        if v >= MAX_VERTICES {
            return false;
        }
        let (w, b) = (v / 64, v % 64);
        let had = self.words[w] >> b & 1 == 1;
        self.words[w] &= !(1 << b);
        had
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < MAX_VERTICES && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    #[inline]
    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        (*self & *other).is_empty()
    }

    /// Smallest member.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Largest member plus one, or 0 for the empty set.
    pub fn upper_bound(&self) -> usize {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map_or(0, |(i, &w)| i * 64 + 64 - w.leading_zeros() as usize)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> Iter {
        Iter {
            words: self.words,
            idx: 0,
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

pub struct Iter {
    words: [u64; WORDS],
    idx: usize,
}

impl Iterator for Iter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        while self.idx < WORDS {
            let w = self.words[self.idx];
            if w != 0 {
                self.words[self.idx] = w & (w - 1);
                return Some(self.idx * 64 + w.trailing_zeros() as usize);
            }
            self.idx += 1;
        }
        None
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl IntoIterator for &VertexSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

macro_rules! set_binop {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign:ident) => {
        impl $trait for VertexSet {
            type Output = VertexSet;
            #[inline]
            fn $method(mut self, rhs: VertexSet) -> VertexSet {
                self.$assign(rhs);
                self
            }
        }
        impl $assign_trait for VertexSet {
            #[inline]
            fn $assign(&mut self, rhs: VertexSet) {
                for (a, b) in self.words.iter_mut().zip(rhs.words.iter()) {
                    a.$assign(*b);
                }
            }
        }
    };
}

set_binop!(BitOr, bitor, BitOrAssign, bitor_assign);
set_binop!(BitAnd, bitand, BitAndAssign, bitand_assign);

impl Sub for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn sub(mut self, rhs: VertexSet) -> VertexSet {
        self -= rhs;
        self
    }
}

impl SubAssign for VertexSet {
    #[inline]
    fn sub_assign(&mut self, rhs: VertexSet) {
        for (a, b) in self.words.iter_mut().zip(rhs.words.iter()) {
            *a &= !*b;
        }
    }
}

/// Complement with respect to the whole id range `0..MAX_VERTICES`;
/// intersect with [`VertexSet::full`] to complement within a graph.
impl Not for VertexSet {
    type Output = VertexSet;
    fn not(mut self) -> VertexSet {
        for w in self.words.iter_mut() {
            *w = !*w;
        }
        self
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let ids = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&bad) = ids.iter().find(|&&v| v >= MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!(
                "vertex {bad} exceeds the {MAX_VERTICES}-vertex cap"
            )));
        }
        Ok(ids.into_iter().collect())
    }
}

/// An immutable oriented graph on the vertices `0..n`.
///
/// Construction rejects loops and digons, so at most one arc joins any pair.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    out: Vec<VertexSet>,
    inn: Vec<VertexSet>,
    arc_count: usize,
}

impl Digraph {
    /// Builds a digraph from an arc list. Repeated arcs are merged.
    pub fn new<I>(n: usize, arcs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut out = vec![VertexSet::new(); n];
        for (u, v) in arcs {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::LoopArc(u));
            }
            if out[v].contains(u) {
                return Err(GraphError::OrientationViolation { u, v });
            }
            out[u].insert(v);
        }
        Ok(Self::from_rows_unchecked(out))
    }

    /// The digraph on `n` vertices with no arcs.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        Self::new(n, std::iter::empty())
    }

    /// Builds a digraph from its out-neighbourhood rows, validating them.
    pub fn from_out_neighborhoods(out: Vec<VertexSet>) -> Result<Self, GraphError> {
        let n = out.len();
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let all = VertexSet::full(n);
        for (u, row) in out.iter().enumerate() {
            if let Some(v) = (*row - all).first() {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if row.contains(u) {
                return Err(GraphError::LoopArc(u));
            }
            if let Some(v) = row.iter().find(|&v| out[v].contains(u)) {
                return Err(GraphError::OrientationViolation { u, v });
            }
        }
        Ok(Self::from_rows_unchecked(out))
    }

    /// Caller guarantees rows are in range, loop-free and digon-free.
    pub(crate) fn from_rows_unchecked(out: Vec<VertexSet>) -> Self {
        let n = out.len();
        let mut inn = vec![VertexSet::new(); n];
        let mut arc_count = 0;
        for (u, row) in out.iter().enumerate() {
            debug_assert!(!row.contains(u));
            for v in row.iter() {
                debug_assert!(v < n && !out[v].contains(u));
                inn[v].insert(u);
                arc_count += 1;
            }
        }
        Digraph {
            n,
            out,
            inn,
            arc_count,
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && self.out[u].contains(v)
    }

    /// `true` when `u` and `v` are joined by an arc in either direction.
    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    /// All arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().map(move |v| (u, v)))
    }

    pub fn check_vertex(&self, u: usize) -> Result<(), GraphError> {
        if u < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: u,
                n: self.n,
            })
        }
    }

    pub fn check_subset(&self, s: &VertexSet) -> Result<(), GraphError> {
        match (*s - self.vertices()).first() {
            None => Ok(()),
            Some(v) => Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            }),
        }
    }

    /// `N+(u)`. Panics if `u` is out of range.
    #[inline]
    pub fn out_neighbors(&self, u: usize) -> VertexSet {
        self.out[u]
    }

    /// `N-(u)`. Panics if `u` is out of range.
    #[inline]
    pub fn in_neighbors(&self, u: usize) -> VertexSet {
        self.inn[u]
    }

    #[inline]
    pub fn out_degree(&self, u: usize) -> usize {
        self.out[u].len()
    }

    #[inline]
    pub fn in_degree(&self, u: usize) -> usize {
        self.inn[u].len()
    }

    /// `N++(u)`, the vertices at distance exactly two from `u`.
    pub fn second_out_neighborhood(&self, u: usize) -> Result<VertexSet, GraphError> {
        self.check_vertex(u)?;
        Ok(self.second_out(u))
    }

    /// `N--(u)`, the vertices at distance exactly two to `u`.
    pub fn second_in_neighborhood(&self, u: usize) -> Result<VertexSet, GraphError> {
        self.check_vertex(u)?;
        Ok(self.second_in(u))
    }

    /// Unchecked [`Self::second_out_neighborhood`]; panics if `u` is out of range.
    #[inline]
    pub fn second_out(&self, u: usize) -> VertexSet {
        two_hop(&self.out, u)
    }

    /// Unchecked [`Self::second_in_neighborhood`]; panics if `u` is out of range.
    #[inline]
    pub fn second_in(&self, u: usize) -> VertexSet {
        two_hop(&self.inn, u)
    }

    /// Degree counts of `u`, optionally also restricted to `restrict`.
    pub fn degree_profile(
        &self,
        u: usize,
        restrict: Option<&VertexSet>,
    ) -> Result<DegreeProfile, GraphError> {
        self.check_vertex(u)?;
        if let Some(s) = restrict {
            self.check_subset(s)?;
        }
        let (out, inn) = (self.out[u], self.inn[u]);
        let (pp, mm) = (self.second_out(u), self.second_in(u));
        Ok(DegreeProfile {
            vertex: u,
            d_plus: out.len(),
            d_minus: inn.len(),
            d_pp: pp.len(),
            d_mm: mm.len(),
            restricted: restrict.map(|&s| RestrictedDegrees {
                set: s,
                d_plus: (out & s).len(),
                d_minus: (inn & s).len(),
                d_pp: (pp & s).len(),
                d_mm: (mm & s).len(),
            }),
        })
    }

    /// `Σ_{v ∈ S} |N+(v) ∩ T|`.
    pub fn set_out_degree(&self, s: &VertexSet, t: &VertexSet) -> Result<usize, GraphError> {
        self.check_subset(s)?;
        self.check_subset(t)?;
        Ok(s.iter().map(|v| (self.out[v] & *t).len()).sum())
    }

    /// `Σ_{v ∈ S} |N-(v) ∩ T|`.
    pub fn set_in_degree(&self, s: &VertexSet, t: &VertexSet) -> Result<usize, GraphError> {
        self.check_subset(s)?;
        self.check_subset(t)?;
        Ok(s.iter().map(|v| (self.inn[v] & *t).len()).sum())
    }

    /// `D[S]`, relabelled to `0..|S|` in increasing order of old id.
    /// Members of `s` outside the graph are ignored.
    pub fn induced_subgraph(&self, s: &VertexSet) -> InducedSubgraph {
        let s = *s & self.vertices();
        let to_old = s.to_vec();
        let mut to_new = vec![None; self.n];
        for (new, &old) in to_old.iter().enumerate() {
            to_new[old] = Some(new);
        }
        let rows = to_old
            .iter()
            .map(|&old| {
                (self.out[old] & s)
                    .iter()
                    .map(|v| to_new[v].expect("member of s"))
                    .collect()
            })
            .collect();
        InducedSubgraph {
            graph: Digraph::from_rows_unchecked(rows),
            to_old,
            to_new,
        }
    }

    /// `true` iff every pair of distinct vertices of `s` is joined by exactly one arc.
    pub fn is_tournament(&self, s: &VertexSet) -> bool {
        let s = *s & self.vertices();
        s.iter().all(|v| {
            let mut others = s;
            others.remove(v);
            others.is_subset(&(self.out[v] | self.inn[v]))
        })
    }

    /// `true` iff no arc has both ends in `s`.
    pub fn is_independent(&self, s: &VertexSet) -> bool {
        let s = *s & self.vertices();
        s.iter().all(|v| self.out[v].is_disjoint(&s))
    }

    /// The digraph with every arc reversed.
    pub fn reverse(&self) -> Digraph {
        Digraph {
            n: self.n,
            out: self.inn.clone(),
            inn: self.out.clone(),
            arc_count: self.arc_count,
        }
    }
}

#[inline]
fn two_hop(rows: &[VertexSet], u: usize) -> VertexSet {
    let first = rows[u];
    let mut reach = VertexSet::new();
    for w in first.iter() {
        reach |= rows[w];
    }
    // u cannot be reached in two steps without a digon; removed anyway so the
    // routine stays correct on arbitrary adjacency rows.
    reach -= first;
    reach.remove(u);
    reach
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph")
            .field("n", &self.n)
            .field("arcs", &self.arcs().collect::<Vec<_>>())
            .finish()
    }
}

/// Result of [`Digraph::induced_subgraph`].
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: Digraph,
    /// `to_old[new] = old`.
    pub to_old: Vec<usize>,
    /// `to_new[old]`, `None` for vertices outside the subset.
    pub to_new: Vec<Option<usize>>,
}

impl InducedSubgraph {
    pub fn lift(&self, set: &VertexSet) -> VertexSet {
        set.iter().map(|v| self.to_old[v]).collect()
    }
}

/// First and second in/out degrees of one vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub vertex: usize,
    pub d_plus: usize,
    pub d_minus: usize,
    pub d_pp: usize,
    pub d_mm: usize,
    pub restricted: Option<RestrictedDegrees>,
}

/// Degrees counted only inside `set`, e.g. `d+_S(u) = |N+(u) ∩ S|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RestrictedDegrees {
    pub set: VertexSet,
    pub d_plus: usize,
    pub d_minus: usize,
    pub d_pp: usize,
    pub d_mm: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Digraph {
        Digraph::new(3, [(0, 1), (1, 2)]).unwrap()
    }

    fn r5() -> Digraph {
        Digraph::new(5, (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, (i + 2) % 5)])).unwrap()
    }

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn vertex_set_basics() {
        let mut s = VertexSet::full(70);
        assert_eq!(s.len(), 70);
        assert!(s.contains(69) && !s.contains(70));
        assert_eq!(s.upper_bound(), 70);
        s.remove(0);
        assert_eq!(s.first(), Some(1));
        let t = set(&[1, 65, 100]);
        assert_eq!((s & t).to_vec(), vec![1, 65]);
        assert_eq!((t - s).to_vec(), vec![100]);
        assert!(set(&[1, 65]).is_subset(&s));
        assert_eq!(format!("{t}"), "{1, 65, 100}");
        assert_eq!(VertexSet::full(0), VertexSet::new());
        assert_eq!(VertexSet::full(MAX_VERTICES).len(), MAX_VERTICES);
    }

    #[test]
    fn single_arc() {
        let d = Digraph::new(2, [(0, 1), (0, 1)]).unwrap();
        assert_eq!(d.arc_count(), 1);
        assert_eq!(d.out_neighbors(0), set(&[1]));
        assert_eq!(d.in_neighbors(1), set(&[0]));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Digraph::new(3, [(0, 1), (1, 0)]),
            Err(GraphError::OrientationViolation { u: 1, v: 0 })
        );
        assert_eq!(Digraph::new(3, [(2, 2)]), Err(GraphError::LoopArc(2)));
        assert_eq!(
            Digraph::new(3, [(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(
            Digraph::empty(MAX_VERTICES + 1),
            Err(GraphError::TooManyVertices(MAX_VERTICES + 1))
        );
        let rows = vec![set(&[1]), set(&[0])];
        assert!(matches!(
            Digraph::from_out_neighborhoods(rows),
            Err(GraphError::OrientationViolation { .. })
        ));
    }

    #[test]
    fn three_cycle_degrees() {
        let d = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        for u in 0..3 {
            assert_eq!(d.out_degree(u), 1);
            assert_eq!(d.in_degree(u), 1);
        }
        assert_eq!(d.second_out_neighborhood(0).unwrap(), set(&[2]));
        assert_eq!(d.second_out(0), d.in_neighbors(0));
    }

    #[test]
    fn second_neighbourhoods() {
        let p = path3();
        assert_eq!(p.second_out_neighborhood(0).unwrap(), set(&[2]));
        assert_eq!(p.second_in_neighborhood(2).unwrap(), set(&[0]));
        let tt = Digraph::new(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        assert!(tt.second_out_neighborhood(0).unwrap().is_empty());
        assert!(tt.second_in_neighborhood(2).unwrap().is_empty());
        assert_eq!(
            p.second_out_neighborhood(3),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn two_hop_removes_origin_on_digon_rows() {
        // Not a valid oriented graph; exercises the defensive removal directly.
        let rows = vec![set(&[1]), set(&[0, 2]), VertexSet::new()];
        assert_eq!(two_hop(&rows, 0), set(&[2]));
    }

    #[test]
    fn degree_profiles() {
        let r = r5();
        let p = r.degree_profile(0, None).unwrap();
        assert_eq!((p.d_plus, p.d_minus, p.d_pp, p.d_mm), (2, 2, 2, 2));
        let p = path3().degree_profile(1, None).unwrap();
        assert_eq!((p.d_plus, p.d_minus, p.d_pp, p.d_mm), (1, 1, 0, 0));
        let empty = VertexSet::new();
        let p = r.degree_profile(3, Some(&empty)).unwrap();
        let rd = p.restricted.unwrap();
        assert_eq!((rd.d_plus, rd.d_minus, rd.d_pp, rd.d_mm), (0, 0, 0, 0));
        let all = r.vertices();
        let rd = r.degree_profile(3, Some(&all)).unwrap().restricted.unwrap();
        assert_eq!((rd.d_plus, rd.d_minus, rd.d_pp, rd.d_mm), (2, 2, 2, 2));
        assert!(r.degree_profile(0, Some(&set(&[9]))).is_err());
    }

    #[test]
    fn set_degrees() {
        let r = r5();
        assert_eq!(r.set_out_degree(&set(&[0, 1]), &r.vertices()).unwrap(), 4);
        assert_eq!(r.set_out_degree(&VertexSet::new(), &r.vertices()).unwrap(), 0);
        let all = r.vertices();
        assert_eq!(r.set_out_degree(&all, &all).unwrap(), 5 * 4 / 2);
        assert_eq!(r.set_in_degree(&all, &all).unwrap(), 10);
        assert!(r.set_out_degree(&set(&[5]), &all).is_err());
    }

    #[test]
    fn induced_subgraphs() {
        let r = r5();
        let sub = r.induced_subgraph(&set(&[0, 1, 2]));
        assert_eq!(
            sub.graph.arcs().collect::<Vec<_>>(),
            vec![(0, 1), (0, 2), (1, 2)]
        );
        let whole = r.induced_subgraph(&r.vertices());
        assert_eq!(whole.graph, r);
        assert_eq!(whole.to_old, vec![0, 1, 2, 3, 4]);
        let none = r.induced_subgraph(&VertexSet::new());
        assert_eq!(none.graph.order(), 0);
        let sub = r.induced_subgraph(&set(&[1, 3]));
        assert_eq!(sub.to_new[3], Some(1));
        assert_eq!(sub.lift(&set(&[1])), set(&[3]));
    }

    #[test]
    fn structural_predicates() {
        let r = r5();
        assert!(r.is_tournament(&r.vertices()));
        let p = path3();
        assert!(p.is_independent(&set(&[0, 2])));
        assert!(!p.is_tournament(&p.vertices()));
        assert!(!p.is_independent(&p.vertices()));
        assert!(p.is_tournament(&set(&[1])));
        assert!(p.is_tournament(&VertexSet::new()));
    }

    #[test]
    fn reversal() {
        let p = path3();
        let rp = p.reverse();
        assert_eq!(rp.arcs().collect::<Vec<_>>(), vec![(1, 0), (2, 1)]);
        assert_eq!(rp.reverse(), p);
        for u in 0..3 {
            assert_eq!(rp.out_degree(u), p.in_degree(u));
        }
    }

    #[test]
    fn degenerate_orders() {
        for n in 0..2 {
            let d = Digraph::empty(n).unwrap();
            assert_eq!(d.arc_count(), 0);
            for u in 0..n {
                assert!(d.second_out(u).is_empty() && d.second_in(u).is_empty());
            }
        }
    }

    #[test]
    fn vertex_set_serde() {
        let s = set(&[0, 3, 64]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "[0,3,64]");
        let back: VertexSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<VertexSet>(&format!("[{MAX_VERTICES}]")).is_err());
    }
}
