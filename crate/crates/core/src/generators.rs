//! Deterministic and seeded random graph families.
//!
//! Random families take a `u64` seed and draw from [`Prng`]; identical
//! `(spec, seed)` pairs always produce identical graphs. Pairs `i < j` are
//! visited in lexicographic order and consume one draw each.
//!
//! Split graphs label the tournament side first: `Y = 0..|Y|`,
//! `X = |Y|..|Y|+|X|`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Digraph, GraphError, VertexSet, MAX_VERTICES};
use crate::rng::{trial_seed, Prng};
use crate::split::{new_split, SplitDigraph, SplitError};

const SUM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("invalid probability: {0}")]
    InvalidProbability(String),
    #[error("circulant regular tournaments need odd order, got {0}")]
    EvenOrder(usize),
    #[error("almost regular tournaments need even order, got {0}")]
    OddOrder(usize),
    #[error("order {n} too small, need at least {min}")]
    TooSmall { n: usize, min: usize },
    #[error("Y must be a tournament")]
    NotATournament,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl From<SplitError> for GenError {
    fn from(e: SplitError) -> Self {
        match e {
            SplitError::Graph(g) => GenError::Graph(g),
            _ => GenError::NotATournament,
        }
    }
}

fn check_probability(name: &str, p: f64) -> Result<(), GenError> {
    if p.is_finite() && (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(GenError::InvalidProbability(format!("{name} = {p}")))
    }
}

fn check_order(n: usize) -> Result<(), GenError> {
    if n > MAX_VERTICES {
        Err(GraphError::TooManyVertices(n).into())
    } else {
        Ok(())
    }
}

/// How each `X`–`Y` pair is wired: no arc, `x → y`, or `y → x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossDistribution {
    pub none: f64,
    pub x_to_y: f64,
    pub y_to_x: f64,
}

impl CrossDistribution {
    pub const UNIFORM: CrossDistribution = CrossDistribution {
        none: 1.0 / 3.0,
        x_to_y: 1.0 / 3.0,
        y_to_x: 1.0 / 3.0,
    };

    pub fn new(none: f64, x_to_y: f64, y_to_x: f64) -> Result<Self, GenError> {
        let c = CrossDistribution {
            none,
            x_to_y,
            y_to_x,
        };
        c.validate()?;
        Ok(c)
    }

    /// Complete split graphs: every pair adjacent, `x → y` with probability `x_to_y`.
    pub fn complete(x_to_y: f64) -> Result<Self, GenError> {
        check_probability("x_to_y", x_to_y)?;
        Self::new(0.0, x_to_y, 1.0 - x_to_y)
    }

    pub fn validate(&self) -> Result<(), GenError> {
        check_probability("q_none", self.none)?;
        check_probability("q_xy", self.x_to_y)?;
        check_probability("q_yx", self.y_to_x)?;
        let sum = self.none + self.x_to_y + self.y_to_x;
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(GenError::InvalidProbability(format!(
                "cross probabilities sum to {sum}"
            )));
        }
        Ok(())
    }
}

/// How the tournament side of a split graph is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum YKind {
    Random,
    Regular,
    AlmostRegular,
}

/// A graph family with its size and probability parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    OrientedRandom {
        n: usize,
        p: f64,
    },
    TournamentRandom {
        n: usize,
    },
    CirculantRegular {
        n: usize,
    },
    AlmostRegular {
        n: usize,
    },
    Split {
        x_size: usize,
        y_size: usize,
        y_kind: YKind,
        cross: CrossDistribution,
    },
    CompleteSplit {
        x_size: usize,
        y_size: usize,
        y_kind: YKind,
        x_to_y: f64,
    },
    PlanarOrientation {
        n: usize,
    },
    BipartiteOrientation {
        n1: usize,
        n2: usize,
        p: f64,
    },
}

impl Family {
    /// Tags accepted on the command line.
    pub const TAGS: [&'static str; 8] = [
        "oriented-random",
        "tournament-random",
        "circulant-regular",
        "almost-regular",
        "split",
        "complete-split",
        "planar-orientation",
        "bipartite-orientation",
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            Family::OrientedRandom { .. } => "oriented-random",
            Family::TournamentRandom { .. } => "tournament-random",
            Family::CirculantRegular { .. } => "circulant-regular",
            Family::AlmostRegular { .. } => "almost-regular",
            Family::Split { .. } => "split",
            Family::CompleteSplit { .. } => "complete-split",
            Family::PlanarOrientation { .. } => "planar-orientation",
            Family::BipartiteOrientation { .. } => "bipartite-orientation",
        }
    }
}

/// A family plus the seed that drives it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    #[serde(flatten)]
    pub family: Family,
    pub seed: u64,
}

/// A generated digraph, with its split side when the family has one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Digraph,
    pub split_x: Option<VertexSet>,
}

impl From<Digraph> for Instance {
    fn from(graph: Digraph) -> Self {
        Instance {
            graph,
            split_x: None,
        }
    }
}

impl From<SplitDigraph> for Instance {
    fn from(s: SplitDigraph) -> Self {
        let split_x = Some(s.x());
        Instance {
            graph: s.into_graph(),
            split_x,
        }
    }
}

impl GenSpec {
    pub fn new(family: Family, seed: u64) -> Self {
        GenSpec { family, seed }
    }

    /// Checks sizes and probabilities without generating anything.
    pub fn validate(&self) -> Result<(), GenError> {
        match self.family {
            Family::OrientedRandom { n, p } => {
                check_order(n)?;
                check_probability("p", p)
            }
            Family::TournamentRandom { n } | Family::PlanarOrientation { n } => {
                check_order(n)?;
                if matches!(self.family, Family::PlanarOrientation { .. }) && n < 3 {
                    return Err(GenError::TooSmall { n, min: 3 });
                }
                Ok(())
            }
            Family::CirculantRegular { n } => {
                check_order(n)?;
                if n.is_multiple_of(2) {
                    return Err(GenError::EvenOrder(n));
                }
                Ok(())
            }
            Family::AlmostRegular { n } => check_almost_regular_order(n),
            Family::Split {
                x_size,
                y_size,
                y_kind,
                cross,
            } => {
                check_y(y_kind, y_size)?;
                check_order(x_size + y_size)?;
                cross.validate()
            }
            Family::CompleteSplit {
                x_size,
                y_size,
                y_kind,
                x_to_y,
            } => {
                check_y(y_kind, y_size)?;
                check_order(x_size + y_size)?;
                check_probability("x_to_y", x_to_y)
            }
            Family::BipartiteOrientation { n1, n2, p } => {
                check_order(n1 + n2)?;
                check_probability("p", p)
            }
        }
    }

    /// The instance for this spec's own seed.
    pub fn generate(&self) -> Result<Instance, GenError> {
        self.generate_with_seed(self.seed)
    }

    /// Trial `index` of a batch: generated from `trial_seed(seed, index)`.
    pub fn trial(&self, index: u64) -> Result<Instance, GenError> {
        self.generate_with_seed(trial_seed(self.seed, index))
    }

    pub fn generate_with_seed(&self, seed: u64) -> Result<Instance, GenError> {
        self.validate()?;
        let mut rng = Prng::seed_from_u64(seed);
        Ok(match self.family {
            Family::OrientedRandom { n, p } => random_oriented_with(n, p, &mut rng)?.into(),
            Family::TournamentRandom { n } => random_oriented_with(n, 1.0, &mut rng)?.into(),
            Family::CirculantRegular { n } => gen_circulant_regular(n)?.into(),
            Family::AlmostRegular { n } => gen_almost_regular(n)?.into(),
            Family::Split {
                x_size,
                y_size,
                y_kind,
                cross,
            } => {
                let yt = y_tournament(y_kind, y_size, &mut rng)?;
                split_with(x_size, &yt, cross, &mut rng)?.into()
            }
            Family::CompleteSplit {
                x_size,
                y_size,
                y_kind,
                x_to_y,
            } => {
                let yt = y_tournament(y_kind, y_size, &mut rng)?;
                let cross = CrossDistribution::complete(x_to_y)?;
                split_with(x_size, &yt, cross, &mut rng)?.into()
            }
            Family::PlanarOrientation { n } => planar_with(n, &mut rng)?.into(),
            Family::BipartiteOrientation { n1, n2, p } => bipartite_with(n1, n2, p, &mut rng)?.into(),
        })
    }
}

fn check_y(kind: YKind, size: usize) -> Result<(), GenError> {
    check_order(size)?;
    match kind {
        YKind::Random => Ok(()),
        YKind::Regular if size.is_multiple_of(2) => Err(GenError::EvenOrder(size)),
        YKind::Regular => Ok(()),
        YKind::AlmostRegular => check_almost_regular_order(size),
    }
}

fn check_almost_regular_order(n: usize) -> Result<(), GenError> {
    check_order(n)?;
    if n % 2 == 1 {
        return Err(GenError::OddOrder(n));
    }
    if n == 0 {
        return Err(GenError::TooSmall { n, min: 2 });
    }
    Ok(())
}

fn y_tournament(kind: YKind, size: usize, rng: &mut Prng) -> Result<Digraph, GenError> {
    match kind {
        YKind::Random => random_oriented_with(size, 1.0, rng),
        YKind::Regular => gen_circulant_regular(size),
        YKind::AlmostRegular => gen_almost_regular(size),
    }
}

/// A sample of the random oriented graph model: each pair is adjacent with
/// probability `p`, and an adjacent pair is oriented either way with
/// probability 1/2 (so each direction has probability `p/2`).
pub fn gen_random_oriented(n: usize, p: f64, seed: u64) -> Result<Digraph, GenError> {
    random_oriented_with(n, p, &mut Prng::seed_from_u64(seed))
}

/// A uniformly random labelled tournament.
pub fn gen_random_tournament(n: usize, seed: u64) -> Result<Digraph, GenError> {
    random_oriented_with(n, 1.0, &mut Prng::seed_from_u64(seed))
}

pub(crate) fn random_oriented_with(n: usize, p: f64, rng: &mut Prng) -> Result<Digraph, GenError> {
    check_order(n)?;
    check_probability("p", p)?;
    let half = p / 2.0;
    let mut rows = vec![VertexSet::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            let r = rng.next_f64();
            if r < half {
                rows[i].insert(j);
            } else if r < p {
                rows[j].insert(i);
            }
        }
    }
    Ok(Digraph::from_rows_unchecked(rows))
}

/// The circulant tournament with arcs `i → i+j (mod n)` for `j = 1..(n-1)/2`.
pub fn gen_circulant_regular(n: usize) -> Result<Digraph, GenError> {
    check_order(n)?;
    if n.is_multiple_of(2) {
        return Err(GenError::EvenOrder(n));
    }
    let rows = (0..n)
        .map(|i| (1..=(n - 1) / 2).map(|j| (i + j) % n).collect())
        .collect();
    Ok(Digraph::from_rows_unchecked(rows))
}

/// An almost regular tournament on `n = 2d` vertices: arcs `i → i+j (mod n)`
/// for `j = 1..d-1`, plus `i → i+d` for `i < d`. Vertices `0..d` have
/// out-degree `d`, the rest `d - 1`.
pub fn gen_almost_regular(n: usize) -> Result<Digraph, GenError> {
    check_almost_regular_order(n)?;
    let d = n / 2;
    let rows = (0..n)
        .map(|i| {
            let mut row: VertexSet = (1..d).map(|j| (i + j) % n).collect();
            if i < d {
                row.insert(i + d);
            }
            row
        })
        .collect();
    Ok(Digraph::from_rows_unchecked(rows))
}

/// Joins `x_size` fresh independent vertices to the tournament `yt`, drawing
/// each cross pair from `cross`.
pub fn gen_split(
    x_size: usize,
    yt: &Digraph,
    cross: CrossDistribution,
    seed: u64,
) -> Result<SplitDigraph, GenError> {
    split_with(x_size, yt, cross, &mut Prng::seed_from_u64(seed))
}

fn split_with(
    x_size: usize,
    yt: &Digraph,
    cross: CrossDistribution,
    rng: &mut Prng,
) -> Result<SplitDigraph, GenError> {
    cross.validate()?;
    if !yt.is_tournament(&yt.vertices()) {
        return Err(GenError::NotATournament);
    }
    let ny = yt.order();
    let n = ny + x_size;
    check_order(n)?;
    let mut rows: Vec<VertexSet> = (0..ny).map(|y| yt.out_neighbors(y)).collect();
    rows.resize(n, VertexSet::new());
    let none_or_xy = cross.none + cross.x_to_y;
    for x in ny..n {
        for y in 0..ny {
            let r = rng.next_f64();
            if r < cross.none {
            } else if r < none_or_xy {
                rows[x].insert(y);
            } else {
                rows[y].insert(x);
            }
        }
    }
    let graph = Digraph::from_rows_unchecked(rows);
    let x: VertexSet = (ny..n).collect();
    Ok(new_split(graph, x)?)
}

/// A uniformly oriented stacked triangulation on `n >= 3` vertices.
///
/// Starts from the triangle `{0, 1, 2}` with its two faces; vertex `k` is
/// placed in a uniformly chosen face and joined to its three corners. Edges
/// are then oriented by a fair coin each, in insertion order. The underlying
/// graph is maximal planar with `3n - 6` edges.
pub fn gen_planar_orientation(n: usize, seed: u64) -> Result<Digraph, GenError> {
    planar_with(n, &mut Prng::seed_from_u64(seed))
}

fn planar_with(n: usize, rng: &mut Prng) -> Result<Digraph, GenError> {
    check_order(n)?;
    if n < 3 {
        return Err(GenError::TooSmall { n, min: 3 });
    }
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 1, 2]];
    let mut edges: Vec<(usize, usize)> = vec![(0, 1), (0, 2), (1, 2)];
    for k in 3..n {
        let f = rng.below(faces.len());
        let [a, b, c] = faces[f];
        edges.extend([(a, k), (b, k), (c, k)]);
        faces[f] = [a, b, k];
        faces.push([b, c, k]);
        faces.push([a, c, k]);
    }
    let mut rows = vec![VertexSet::new(); n];
    for (u, v) in edges {
        if rng.coin() {
            rows[u].insert(v);
        } else {
            rows[v].insert(u);
        }
    }
    Ok(Digraph::from_rows_unchecked(rows))
}

/// A random orientation of a random bipartite graph with parts `0..n1` and
/// `n1..n1+n2`; each cross pair is adjacent with probability `p` and oriented
/// either way with probability 1/2.
pub fn gen_bipartite_orientation(n1: usize, n2: usize, p: f64, seed: u64) -> Result<Digraph, GenError> {
    bipartite_with(n1, n2, p, &mut Prng::seed_from_u64(seed))
}

fn bipartite_with(n1: usize, n2: usize, p: f64, rng: &mut Prng) -> Result<Digraph, GenError> {
    check_probability("p", p)?;
    let n = n1 + n2;
    check_order(n)?;
    let half = p / 2.0;
    let mut rows = vec![VertexSet::new(); n];
    for a in 0..n1 {
        for b in n1..n {
            let r = rng.next_f64();
            if r < half {
                rows[a].insert(b);
            } else if r < p {
                rows[b].insert(a);
            }
        }
    }
    Ok(Digraph::from_rows_unchecked(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{is_triangle_free_underlying, sullivan_vertices, triangle_stats, tt_sufficiency};
    use crate::split::{ar_partition, is_regular_on};

    #[test]
    fn random_oriented_extremes() {
        for seed in 0..5 {
            assert_eq!(gen_random_oriented(10, 0.0, seed).unwrap().arc_count(), 0);
            let t = gen_random_oriented(10, 1.0, seed).unwrap();
            assert!(t.is_tournament(&t.vertices()));
        }
        assert!(matches!(
            gen_random_oriented(5, 1.5, 0),
            Err(GenError::InvalidProbability(_))
        ));
        assert!(gen_random_oriented(5, f64::NAN, 0).is_err());
    }

    #[test]
    fn random_oriented_direction_frequency() {
        // Each ordered pair should carry an arc with probability p/2.
        let (n, p, samples) = (30usize, 0.5, 10_000u64);
        let spec = GenSpec::new(Family::OrientedRandom { n, p }, 11);
        let mut forward = 0u64;
        for i in 0..samples {
            let d = spec.trial(i).unwrap().graph;
            forward += (0..n)
                .map(|u| (d.out_neighbors(u) - VertexSet::full(u + 1)).len() as u64)
                .sum::<u64>();
        }
        let pairs = (n * (n - 1) / 2) as u64 * samples;
        let freq = forward as f64 / pairs as f64;
        assert!((freq - 0.25).abs() < 0.01, "{freq}");
    }

    #[test]
    fn circulant_examples() {
        let c3 = gen_circulant_regular(3).unwrap();
        assert_eq!(c3.arcs().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 0)]);
        for n in [5, 7] {
            let r = gen_circulant_regular(n).unwrap();
            assert!(r.is_tournament(&r.vertices()));
            assert!((0..n).all(|v| r.out_degree(v) == (n - 1) / 2 && r.in_degree(v) == (n - 1) / 2));
        }
        assert_eq!(gen_circulant_regular(4), Err(GenError::EvenOrder(4)));
    }

    #[test]
    fn circulant_regular_up_to_31() {
        for n in (1..=31).step_by(2) {
            let r = gen_circulant_regular(n).unwrap();
            assert!(is_regular_on(&r, &r.vertices()), "n = {n}");
        }
    }

    #[test]
    fn almost_regular_examples() {
        let t2 = gen_almost_regular(2).unwrap();
        assert_eq!(t2.arcs().collect::<Vec<_>>(), vec![(0, 1)]);
        let t4 = gen_almost_regular(4).unwrap();
        let expected = Digraph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]).unwrap();
        assert_eq!(t4, expected);
        let p = ar_partition(&gen_almost_regular(6).unwrap()).unwrap();
        assert_eq!((p.v_plus.len(), p.v_minus.len()), (3, 3));
        assert_eq!(gen_almost_regular(5), Err(GenError::OddOrder(5)));
        assert!(matches!(gen_almost_regular(0), Err(GenError::TooSmall { .. })));
    }

    #[test]
    fn almost_regular_up_to_30() {
        for n in (2..=30).step_by(2) {
            let p = ar_partition(&gen_almost_regular(n).unwrap()).unwrap();
            assert_eq!(p.v_plus, VertexSet::full(n / 2), "n = {n}");
        }
    }

    #[test]
    fn split_examples() {
        let r5 = gen_circulant_regular(5).unwrap();
        let isolated = gen_split(3, &r5, CrossDistribution::new(1.0, 0.0, 0.0).unwrap(), 1).unwrap();
        for x in isolated.x().iter() {
            let g = isolated.graph();
            assert_eq!(g.out_degree(x) + g.in_degree(x), 0);
        }
        let complete = gen_split(3, &r5, CrossDistribution::complete(0.5).unwrap(), 1).unwrap();
        assert!(complete.is_complete());
        let s = gen_split(4, &r5, CrossDistribution::UNIFORM, 7).unwrap();
        assert_eq!(s.x().to_vec(), vec![5, 6, 7, 8]);
        assert_eq!(s.y(), VertexSet::full(5));

        let path = Digraph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            gen_split(1, &path, CrossDistribution::UNIFORM, 0),
            Err(GenError::NotATournament)
        );
        assert!(CrossDistribution::new(0.5, 0.5, 0.5).is_err());
        assert!(CrossDistribution::new(-0.1, 0.6, 0.5).is_err());
    }

    #[test]
    fn planar_examples() {
        let t = gen_planar_orientation(3, 0).unwrap();
        assert_eq!(t.arc_count(), 3);
        assert_eq!(gen_planar_orientation(10, 5).unwrap().arc_count(), 24);
        let d = gen_planar_orientation(50, 9).unwrap();
        let s = tt_sufficiency(&d);
        assert!(s.guaranteed && s.has_sullivan_vertex);
        assert_eq!(gen_planar_orientation(2, 0), Err(GenError::TooSmall { n: 2, min: 3 }));
    }

    #[test]
    fn planar_edge_count_and_triangle_bound() {
        for n in 3..60 {
            let d = gen_planar_orientation(n, n as u64).unwrap();
            assert_eq!(d.arc_count(), 3 * n - 6);
            // Each inserted vertex adds exactly three triangles: 3n - 8 in total.
            assert!(triangle_stats(&d).tt_total <= 3 * n as u64 - 8);
        }
    }

    #[test]
    fn planar_tt_can_exceed_face_count() {
        // All 7 triangles of a 5-vertex stacked triangulation become transitive
        // under an acyclic orientation, more than its 2n - 4 = 6 faces, while
        // tt < m = 9 still holds.
        let d = gen_planar_orientation(5, 0).unwrap();
        let acyclic = Digraph::new(
            5,
            d.arcs().map(|(u, v)| (u.min(v), u.max(v))),
        )
        .unwrap();
        let tt = triangle_stats(&acyclic).tt_total;
        assert_eq!(tt, 7);
        assert!(tt > 6 && tt < acyclic.arc_count() as u64);
    }

    #[test]
    fn bipartite_examples() {
        for seed in 0..10 {
            let d = gen_bipartite_orientation(6, 7, 0.6, seed).unwrap();
            assert!(is_triangle_free_underlying(&d));
            assert_eq!(triangle_stats(&d).tt_total, 0);
        }
        let d = gen_bipartite_orientation(8, 8, 0.5, 4).unwrap();
        assert!(!sullivan_vertices(&d).is_empty());
        assert!(gen_bipartite_orientation(2, 2, 2.0, 0).is_err());
    }

    #[test]
    fn determinism() {
        let specs = [
            GenSpec::new(Family::OrientedRandom { n: 20, p: 0.4 }, 3),
            GenSpec::new(
                Family::Split {
                    x_size: 4,
                    y_size: 6,
                    y_kind: YKind::AlmostRegular,
                    cross: CrossDistribution::UNIFORM,
                },
                3,
            ),
            GenSpec::new(Family::PlanarOrientation { n: 30 }, 3),
        ];
        for spec in specs {
            assert_eq!(spec.generate().unwrap(), spec.generate().unwrap());
            assert_eq!(spec.trial(5).unwrap(), spec.trial(5).unwrap());
            assert_ne!(spec.trial(5).unwrap(), spec.trial(6).unwrap());
        }
    }

    #[test]
    fn spec_validation() {
        let bad = [
            Family::CirculantRegular { n: 4 },
            Family::AlmostRegular { n: 3 },
            Family::PlanarOrientation { n: 2 },
            Family::OrientedRandom { n: 4, p: -1.0 },
            Family::TournamentRandom { n: MAX_VERTICES + 1 },
            Family::Split {
                x_size: 1,
                y_size: 4,
                y_kind: YKind::Regular,
                cross: CrossDistribution::UNIFORM,
            },
        ];
        for family in bad {
            assert!(GenSpec::new(family, 0).validate().is_err());
        }
    }

    #[test]
    fn gen_spec_serde_shape() {
        let spec = GenSpec::new(Family::OrientedRandom { n: 12, p: 0.5 }, 9);
        let json = serde_json::to_value(&spec).unwrap();
        assert_eq!(json["family"], "oriented-random");
        assert_eq!(json["n"], 12);
        assert_eq!(json["seed"], 9);
        let back: GenSpec = serde_json::from_value(json).unwrap();
        assert_eq!(back, spec);
    }
}
