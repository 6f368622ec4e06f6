//! The order-`k` bicolored Voronoi graph of a configuration, assembled
//! purely combinatorially.
//!
//! Walk the sphere and keep the multiset of your `k` nearest dots: the
//! locus where it is ambiguous is a graph. Its vertices are centers of
//! circles through three dots — *White* when `k-2` dots are strictly
//! nearer than the tied triple, *Black* when `k-1` are — its edges are
//! arcs of two-dot bisectors, and its faces are the separable `k`-subsets.
//! No coordinates are needed beyond the side predicates: a vertex is a
//! `(triple, orientation)` pair, an edge a `(pair, strictly-nearer-set)`
//! pair, and incidences follow from the counting rules below.
//!
//! Construction is strict: if an edge key does not collect exactly two
//! vertices the input or the mathematics is broken, and we abort with
//! `InternalInconsistency` rather than patch the graph.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::circles::oriented_incident_closed_form;
use crate::dotset::DotSet;
use crate::geom::{DotConfig, Sign, SpherePoint};
use crate::separable::enumerate_separable;
use crate::Error;

/// Orientation of a circle through a sorted triple: `Canonical` traverses
/// the triple in increasing index order, `Reversed` the other way. The two
/// orientations have antipodal left centers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CircleOrientation {
    Canonical,
    Reversed,
}

impl CircleOrientation {
    pub fn flipped(self) -> CircleOrientation {
        match self {
            CircleOrientation::Canonical => CircleOrientation::Reversed,
            CircleOrientation::Reversed => CircleOrientation::Canonical,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexColor {
    White,
    Black,
}

impl VertexColor {
    pub fn flipped(self) -> VertexColor {
        match self {
            VertexColor::White => VertexColor::Black,
            VertexColor::Black => VertexColor::White,
        }
    }
}

/// A graph vertex: the left center of the circle through `triple` (sorted
/// increasing) under the given orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexKey {
    pub triple: [usize; 3],
    pub orientation: CircleOrientation,
}

/// What the vertex knows: the set of dots strictly nearer than the tied
/// triple (size `k-2` for White, `k-1` for Black).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexData {
    pub near_set: DotSet,
    pub color: VertexColor,
}

/// An edge stratum: points tied between the two dots of `pair` with
/// exactly `near_set` (size `k-1`) strictly nearer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeKey {
    pub pair: [usize; 2],
    pub near_set: DotSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeData {
    /// The two endpoint vertices, in key order.
    pub endpoints: [VertexKey; 2],
}

impl EdgeKey {
    /// The two regions this edge borders: the near set plus either tied dot.
    pub fn bordering_regions(&self) -> [DotSet; 2] {
        [
            self.near_set.with(self.pair[0]),
            self.near_set.with(self.pair[1]),
        ]
    }
}

/// Vertex/edge/region tallies, split by color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StrataCounts {
    pub white_vertices: u64,
    pub black_vertices: u64,
    pub edges: u64,
    pub regions: u64,
}

impl StrataCounts {
    /// What the counts must be for any general-position configuration:
    /// White and Black vertex counts are the oriented incident counts at
    /// `k-2` and `k-1`, edges are `3·(2nk - 2k² - n)`, and regions (faces)
    /// are `2nk - 2k² - n + 2`.
    pub fn closed_form(k: usize, n: usize) -> StrataCounts {
        let m = 2 * (n as u64) * (k as u64) - 2 * (k as u64) * (k as u64) - n as u64;
        StrataCounts {
            white_vertices: if k >= 2 {
                oriented_incident_closed_form(k - 2, n)
            } else {
                0
            },
            black_vertices: oriented_incident_closed_form(k - 1, n),
            edges: 3 * m,
            regions: m + 2,
        }
    }

    pub fn total_vertices(&self) -> u64 {
        self.white_vertices + self.black_vertices
    }

    /// `V - E + F`; must be `2` for a graph drawn on the sphere.
    pub fn euler_characteristic(&self) -> i64 {
        self.total_vertices() as i64 - self.edges as i64 + self.regions as i64
    }
}

/// The assembled graph. All containers are ordered, so iteration (and every
/// serialization downstream) is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoronoiGraph {
    pub n: usize,
    pub k: usize,
    pub vertices: BTreeMap<VertexKey, VertexData>,
    pub edges: BTreeMap<EdgeKey, EdgeData>,
    pub regions: BTreeSet<DotSet>,
}

/// Build the order-`k` graph of a certified configuration, `0 < k < n`,
/// `n ≥ 4`.
pub fn build_graph(cfg: &DotConfig, k: usize) -> Result<VoronoiGraph, Error> {
    let n = cfg.n();
    if n < 4 {
        return Err(Error::TooFewDots { n, min: 4 });
    }
    if k == 0 || k >= n {
        return Err(Error::IndexOutOfRange { index: k, bound: n });
    }
    cfg.require_general_position()?;

    let full = DotSet::full(n);
    let mut vertices: BTreeMap<VertexKey, VertexData> = BTreeMap::new();
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                let triple = [a, b, c];
                let triple_set = DotSet::from_indices(triple);
                let mut left = DotSet::EMPTY;
                for d in 0..n {
                    if d == a || d == b || d == c {
                        continue;
                    }
                    match cfg.orient_dots(a, b, c, d) {
                        Sign::Positive => left = left.with(d),
                        Sign::Negative => {}
                        Sign::Zero => return Err(Error::NotGeneralPosition([a, b, c, d])),
                    }
                }
                let reversed_left = full.minus(triple_set).minus(left);
                for (orientation, near_set) in [
                    (CircleOrientation::Canonical, left),
                    (CircleOrientation::Reversed, reversed_left),
                ] {
                    // Left center is a White vertex when k-2 dots are
                    // strictly nearer, Black when k-1 are.
                    let color = if near_set.len() + 2 == k {
                        VertexColor::White
                    } else if near_set.len() + 1 == k {
                        VertexColor::Black
                    } else {
                        continue;
                    };
                    vertices.insert(
                        VertexKey {
                            triple,
                            orientation,
                        },
                        VertexData { near_set, color },
                    );
                }
            }
        }
    }

    // Each vertex meets three edge strata, one per pair inside its triple.
    // White vertices sit where the third dot is about to become nearer, so
    // the stratum's near set gains it; at Black vertices the third dot is
    // about to leave, so the near set is the vertex's own.
    let mut edge_groups: BTreeMap<EdgeKey, Vec<VertexKey>> = BTreeMap::new();
    for (key, data) in &vertices {
        let [a, b, c] = key.triple;
        for (pair, third) in [([a, b], c), ([a, c], b), ([b, c], a)] {
            let near_set = match data.color {
                VertexColor::White => data.near_set.with(third),
                VertexColor::Black => data.near_set,
            };
            edge_groups
                .entry(EdgeKey { pair, near_set })
                .or_default()
                .push(*key);
        }
    }

    let mut edges: BTreeMap<EdgeKey, EdgeData> = BTreeMap::new();
    for (key, mut group) in edge_groups {
        if group.len() != 2 {
            return Err(Error::InternalInconsistency(format!(
                "edge stratum {key:?} is bounded by {} vertices, expected 2",
                group.len()
            )));
        }
        group.sort();
        edges.insert(
            key,
            EdgeData {
                endpoints: [group[0], group[1]],
            },
        );
    }

    let regions = enumerate_separable(cfg, k)?;
    for key in edges.keys() {
        for region in key.bordering_regions() {
            if !regions.contains(&region) {
                return Err(Error::InternalInconsistency(format!(
                    "edge {key:?} borders {region:?}, which is not a separable {k}-subset"
                )));
            }
        }
    }

    Ok(VoronoiGraph {
        n,
        k,
        vertices,
        edges,
        regions,
    })
}

impl VoronoiGraph {
    pub fn strata_counts(&self) -> StrataCounts {
        let white = self
            .vertices
            .values()
            .filter(|v| v.color == VertexColor::White)
            .count() as u64;
        StrataCounts {
            white_vertices: white,
            black_vertices: self.vertices.len() as u64 - white,
            edges: self.edges.len() as u64,
            regions: self.regions.len() as u64,
        }
    }

    /// Breadth-first reachability over edges; the graph of a certified
    /// configuration is connected.
    pub fn is_connected(&self) -> bool {
        let Some(start) = self.vertices.keys().next().copied() else {
            return true;
        };
        let mut adjacency: BTreeMap<VertexKey, Vec<VertexKey>> = BTreeMap::new();
        for data in self.edges.values() {
            let [p, q] = data.endpoints;
            adjacency.entry(p).or_default().push(q);
            adjacency.entry(q).or_default().push(p);
        }
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for w in adjacency.get(&v).into_iter().flatten() {
                if seen.insert(*w) {
                    queue.push_back(*w);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    /// For `n = 2k`, verify that the antipodal map is a color-swapping
    /// automorphism: vertices `(T, o, B) ↦ (T, ō, complement of B∪T)`,
    /// edges `(pair, A) ↦ (pair, complement of A∪pair)`, regions
    /// `S ↦ complement of S`.
    pub fn antipodal_check(&self) -> Result<bool, Error> {
        if self.n != 2 * self.k {
            return Err(Error::WrongOrder {
                n: self.n,
                k: self.k,
            });
        }
        for (key, data) in &self.vertices {
            let partner_key = VertexKey {
                triple: key.triple,
                orientation: key.orientation.flipped(),
            };
            let expected_near = data
                .near_set
                .union(DotSet::from_indices(key.triple))
                .complement_in(self.n);
            match self.vertices.get(&partner_key) {
                Some(partner)
                    if partner.near_set == expected_near
                        && partner.color == data.color.flipped() => {}
                _ => return Ok(false),
            }
        }
        for (key, data) in &self.edges {
            let partner_key = EdgeKey {
                pair: key.pair,
                near_set: key
                    .near_set
                    .union(DotSet::from_indices(key.pair))
                    .complement_in(self.n),
            };
            let Some(partner) = self.edges.get(&partner_key) else {
                return Ok(false);
            };
            // Endpoint vertices must map to the partner's endpoints.
            let mut mapped: Vec<VertexKey> = data
                .endpoints
                .iter()
                .map(|v| VertexKey {
                    triple: v.triple,
                    orientation: v.orientation.flipped(),
                })
                .collect();
            mapped.sort();
            if mapped != partner.endpoints.to_vec() {
                return Ok(false);
            }
        }
        for region in &self.regions {
            if !self.regions.contains(&region.complement_in(self.n)) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Exact near/far split of the dots as seen from `p`: `near` is the `k`
/// nearest dots and `far` the `n-k` farthest, each extended across a tie by
/// the boundary. Off every bisector the two are a partition; on a stratum
/// of the order-`k` graph they overlap in the tied dots.
pub fn near_far_split(
    cfg: &DotConfig,
    k: usize,
    p: &SpherePoint,
) -> Result<(DotSet, DotSet), Error> {
    let n = cfg.n();
    if k == 0 || k >= n {
        return Err(Error::IndexOutOfRange { index: k, bound: n });
    }
    // Spherical distance shrinks as the inner product grows.
    let products: Vec<crate::rat::Rat> = (0..n).map(|i| p.dot(cfg.dot(i))).collect();
    let mut sorted = products.clone();
    sorted.sort_by(|a, b| b.cmp(a));
    let near_threshold = &sorted[k - 1];
    let far_threshold = &sorted[k];
    let mut near = DotSet::EMPTY;
    let mut far = DotSet::EMPTY;
    for (i, value) in products.iter().enumerate() {
        if value >= near_threshold {
            near = near.with(i);
        }
        if value <= far_threshold {
            far = far.with(i);
        }
    }
    Ok((near, far))
}

/// Count check tying the spherical picture to the planar one: the White
/// vertex count at order `k` must equal the number of incident circles with
/// `k-2` dots in their planar interior plus those with `n-k-1` — every
/// oriented circle with `k-2` dots on the left has either its interior or
/// its exterior of that size. Requires `2 ≤ k ≤ n-1`.
pub fn gluing_count_check(cfg: &DotConfig, k: usize) -> Result<bool, Error> {
    let n = cfg.n();
    if k < 2 || k >= n {
        return Err(Error::IndexOutOfRange { index: k, bound: n });
    }
    let whites = crate::circles::count_oriented_incident(cfg, k - 2)?;
    let hist = crate::circles::planar_interior_histogram(cfg)?;
    let lookup = |m: usize| hist.get(&m).copied().unwrap_or(0);
    Ok(whites == lookup(k - 2) + lookup(n - k - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::sample_config;

    fn counts(n: usize, k: usize, seed: u64) -> StrataCounts {
        build_graph(&sample_config(n, seed).unwrap(), k)
            .unwrap()
            .strata_counts()
    }

    #[test]
    fn classical_voronoi_of_four_dots() {
        // Order 1 is the ordinary Voronoi diagram: for four dots it is the
        // tetrahedron skeleton's dual with 4 all-Black vertices, 6 edges,
        // 4 regions.
        let c = counts(4, 1, 5);
        assert_eq!(
            c,
            StrataCounts {
                white_vertices: 0,
                black_vertices: 4,
                edges: 6,
                regions: 4
            }
        );
        assert_eq!(c, StrataCounts::closed_form(1, 4));
    }

    #[test]
    fn known_strata_counts() {
        for (n, k, white, black, edges, regions) in [
            (4, 2, 4u64, 4u64, 12u64, 6u64),
            (6, 2, 8, 12, 30, 12),
            (6, 3, 12, 12, 36, 14),
        ] {
            for seed in [2, 71] {
                let c = counts(n, k, seed);
                assert_eq!(
                    (c.white_vertices, c.black_vertices, c.edges, c.regions),
                    (white, black, edges, regions),
                    "(n, k) = ({n}, {k})"
                );
                assert_eq!(c, StrataCounts::closed_form(k, n));
                assert_eq!(c.euler_characteristic(), 2);
            }
        }
    }

    #[test]
    fn graphs_are_connected_and_three_regular() {
        let graph = build_graph(&sample_config(7, 19).unwrap(), 3).unwrap();
        assert!(graph.is_connected());
        let mut degree: BTreeMap<VertexKey, usize> = BTreeMap::new();
        for data in graph.edges.values() {
            for v in data.endpoints {
                *degree.entry(v).or_default() += 1;
            }
        }
        assert_eq!(degree.len(), graph.vertices.len());
        assert!(degree.values().all(|&d| d == 3));
    }

    #[test]
    fn edge_regions_are_regions() {
        let graph = build_graph(&sample_config(6, 8).unwrap(), 2).unwrap();
        let mut bordered = BTreeSet::new();
        for key in graph.edges.keys() {
            for region in key.bordering_regions() {
                assert!(graph.regions.contains(&region));
                bordered.insert(region);
            }
        }
        // Every region has a boundary.
        assert_eq!(bordered, graph.regions);
    }

    #[test]
    fn antipodal_symmetry_at_half_order() {
        for seed in [1, 2, 3] {
            let graph = build_graph(&sample_config(6, seed).unwrap(), 3).unwrap();
            assert!(graph.antipodal_check().unwrap());
        }
        let lopsided = build_graph(&sample_config(6, 1).unwrap(), 2).unwrap();
        assert!(matches!(
            lopsided.antipodal_check(),
            Err(Error::WrongOrder { n: 6, k: 2 })
        ));
    }

    #[test]
    fn near_far_split_honors_ties() {
        // Dots 0 and 1 are planar mirror images across the v-axis, so the
        // south pole (lift of the origin) is equidistant from them.
        let cfg = DotConfig::parse_planar(&[
            ("2", "1"),
            ("-2", "1"),
            ("1/3", "-1"),
            ("5", "2"),
            ("-1", "-3"),
        ])
        .unwrap();
        assert!(cfg.is_general_position().is_certified());
        let p = crate::geom::PlanarPoint::new(crate::rat::Rat::zero(), crate::rat::Rat::zero())
            .lift();
        // Rank the dots from p by brute force to find where the tie sits.
        let mut order: Vec<usize> = (0..5).collect();
        order.sort_by(|&i, &j| p.dot(cfg.dot(j)).cmp(&p.dot(cfg.dot(i))));
        let tie_rank = order.iter().position(|&i| i == 0).unwrap();
        assert_eq!(order.iter().position(|&i| i == 1).unwrap(), tie_rank + 1);
        let k = tie_rank + 1; // boundary runs between the tied pair
        let (near, far) = near_far_split(&cfg, k, &p).unwrap();
        assert_eq!(near.len(), k + 1); // both tied dots included
        assert_eq!(far.len(), 5 - k + 1);
        assert_eq!(near.intersection(far), DotSet::from_indices([0, 1]));
        assert_eq!(near.union(far), DotSet::full(5));
    }

    #[test]
    fn near_far_split_partitions_generic_points() {
        let cfg = sample_config(6, 14).unwrap();
        let p = crate::geom::PlanarPoint::new(
            crate::rat::Rat::frac(17, 51000),
            crate::rat::Rat::frac(-23, 49999),
        )
        .lift();
        for k in 1..6 {
            let (near, far) = near_far_split(&cfg, k, &p).unwrap();
            assert_eq!(near.len(), k);
            assert_eq!(far.len(), 6 - k);
            assert!(near.intersection(far).is_empty());
        }
    }

    #[test]
    fn gluing_counts_agree_with_planar_interiors() {
        for (n, seed) in [(4, 4), (5, 9), (6, 12), (7, 0)] {
            let cfg = sample_config(n, seed).unwrap();
            for k in 2..n {
                assert!(
                    gluing_count_check(&cfg, k).unwrap(),
                    "(n, k) = ({n}, {k})"
                );
            }
        }
    }

    #[test]
    fn preconditions() {
        let cfg = sample_config(5, 1).unwrap();
        assert!(build_graph(&cfg, 0).is_err());
        assert!(build_graph(&cfg, 5).is_err());
        assert!(near_far_split(&cfg, 0, cfg.dot(0)).is_err());
        assert!(gluing_count_check(&cfg, 1).is_err());
    }
}
