//! Deformation of one configuration into another, with exact bookkeeping of
//! every instant at which the combinatorics changes.
//!
//! The deformation is a straight-line homotopy in the planar chart: dot `i`
//! travels from `start[i]` to `end[i]` with parameter `t ∈ [0, 1]`. For each
//! quadruple of dots the cocircularity condition is a polynomial in `t` of
//! degree at most four (a "wall"); the graph of order `k` can only change
//! when some wall polynomial changes sign. We isolate all wall roots with
//! Sturm sequences, narrow the isolating intervals until they are pairwise
//! disjoint, and read off the combinatorial change across each one by
//! rebuilding the graph at the two rational endpoints. Everything here is
//! exact; no floating point is involved at any stage.
//!
//! A path is usable if it stays in *semigeneral* position: at most one
//! quadruple cocircular at any instant, and both endpoints fully general.
//! Paths that violate this are rejected ([`Error::NotSemigeneral`]), and
//! [`move_sequence_with_retries`] recovers by jittering the target
//! configuration.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::dotset::DotSet;
use crate::geom::{DotConfig, PlanarPoint, Sign};
use crate::poly::{count_roots_between, isolate_roots, tighten, RatPoly};
use crate::rat::Rat;
use crate::sample::perturb_config;
use crate::voronoi::{build_graph, StrataCounts, VertexColor, VertexKey, VoronoiGraph};
use crate::Error;

/// A straight-line planar homotopy between two equal-sized configurations,
/// both certified to be in general position.
#[derive(Debug, Clone)]
pub struct Family {
    start: DotConfig,
    end: DotConfig,
}

/// Validate endpoints and wrap them as a family: equal sizes, at least four
/// dots, both in general position.
pub fn make_family(start: DotConfig, end: DotConfig) -> Result<Family, Error> {
    if start.n() != end.n() {
        return Err(Error::FamilySizeMismatch(start.n(), end.n()));
    }
    if start.n() < 4 {
        return Err(Error::TooFewDots {
            n: start.n(),
            min: 4,
        });
    }
    start.require_general_position()?;
    end.require_general_position()?;
    Ok(Family { start, end })
}

impl Family {
    pub fn n(&self) -> usize {
        self.start.n()
    }

    pub fn start(&self) -> &DotConfig {
        &self.start
    }

    pub fn end(&self) -> &DotConfig {
        &self.end
    }

    /// The configuration at parameter `t` (each planar coordinate
    /// interpolated linearly). Fails only if two dots collide at `t`, which
    /// can never happen at the evaluation points chosen by wall detection.
    pub fn at(&self, t: &Rat) -> Result<DotConfig, Error> {
        let points = self
            .start
            .planar()
            .iter()
            .zip(self.end.planar())
            .map(|(p, q)| {
                PlanarPoint::new(
                    &p.u + &((&q.u - &p.u) * t),
                    &p.v + &((&q.v - &p.v) * t),
                )
            })
            .collect();
        DotConfig::from_planar(points)
    }
}

/// The cocircularity polynomial of one quadruple along the family.
///
/// With `U_i(t), V_i(t)` the interpolated planar coordinates, this is the
/// negated in-circle determinant
/// `-det [U_i  V_i  U_i²+V_i²  1]` (rows in increasing index order),
/// which has degree at most four and — the reason for the sign — satisfies
/// `sign f(t) = orient(quadruple)` of the lifted configuration at `t`: the
/// lifted determinant equals the planar one times a positive factor.
fn wall_polynomial(family: &Family, quad: [usize; 4]) -> RatPoly {
    let rows: Vec<[RatPoly; 3]> = quad
        .iter()
        .map(|&i| {
            let p = &family.start.planar()[i];
            let q = &family.end.planar()[i];
            let u = RatPoly::linear(p.u.clone(), &q.u - &p.u);
            let v = RatPoly::linear(p.v.clone(), &q.v - &p.v);
            let w = &(&u * &u) + &(&v * &v);
            [u, v, w]
        })
        .collect();
    let mut det = RatPoly::zero();
    for r in 0..4 {
        let m: Vec<&[RatPoly; 3]> = (0..4).filter(|&s| s != r).map(|s| &rows[s]).collect();
        let minor = det3(m[0], m[1], m[2]);
        // Cofactor expansion along the all-ones column.
        det = if r % 2 == 0 {
            &det - &minor
        } else {
            &det + &minor
        };
    }
    -&det
}

fn det3(r0: &[RatPoly; 3], r1: &[RatPoly; 3], r2: &[RatPoly; 3]) -> RatPoly {
    let m00 = &(&r1[1] * &r2[2]) - &(&r1[2] * &r2[1]);
    let m01 = &(&r1[0] * &r2[2]) - &(&r1[2] * &r2[0]);
    let m02 = &(&r1[0] * &r2[1]) - &(&r1[1] * &r2[0]);
    &(&(&r0[0] * &m00) - &(&r0[1] * &m01)) + &(&r0[2] * &m02)
}

/// A wall crossing: the quadruple becomes cocircular once inside
/// `(t_lo, t_hi)` and its orientation differs at the two ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallEvent {
    pub quadruple: [usize; 4],
    pub t_lo: Rat,
    pub t_hi: Rat,
}

/// A grazing contact: the quadruple becomes cocircular once inside
/// `(t_lo, t_hi)` but its orientation is the same at both ends (an even
/// multiplicity root), so the combinatorics does not change.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentialTouch {
    pub quadruple: [usize; 4],
    pub t_lo: Rat,
    pub t_hi: Rat,
}

/// Everything wall detection finds, each list sorted by `t_lo`. Interval
/// guarantees: all intervals (crossings and touches together) are pairwise
/// disjoint, and no wall polynomial of the family vanishes at any interval
/// endpoint — so the configuration at every endpoint is in general position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallDetection {
    pub events: Vec<WallEvent>,
    pub touches: Vec<TangentialTouch>,
}

const MAX_REFINEMENT_ROUNDS: usize = 512;

struct IsolatedRoot {
    quad: [usize; 4],
    f: RatPoly,
    sf: RatPoly,
    lo: Rat,
    hi: Rat,
}

/// Locate every parameter where some quadruple is cocircular, verify the
/// path is semigeneral, and return disjoint isolating intervals with
/// certified-general endpoints.
pub fn detect_walls(family: &Family) -> Result<WallDetection, Error> {
    let n = family.n();
    let zero = Rat::zero();
    let one = Rat::one();

    let mut roots: Vec<IsolatedRoot> = Vec::new();
    let mut active_quads: Vec<([usize; 4], RatPoly)> = Vec::new();
    for quad in quadruples(n) {
        let f = wall_polynomial(family, quad);
        if f.is_zero() {
            return Err(Error::IdenticallyDegeneratePath(quad));
        }
        if f.sign_at(&zero).is_zero() || f.sign_at(&one).is_zero() {
            return Err(Error::InternalInconsistency(format!(
                "wall polynomial of {quad:?} vanishes at an endpoint of a certified family"
            )));
        }
        let sf = f.squarefree_part();
        let intervals = isolate_roots(&sf, &zero, &one)?;
        if !intervals.is_empty() {
            active_quads.push((quad, sf.clone()));
        }
        for (lo, hi) in intervals {
            roots.push(IsolatedRoot {
                quad,
                f: f.clone(),
                sf: sf.clone(),
                lo,
                hi,
            });
        }
    }

    // Semigenerality: no two distinct quadruples may be cocircular at the
    // same instant, i.e. no two wall polynomials share a root in (0, 1).
    for i in 0..active_quads.len() {
        for j in (i + 1)..active_quads.len() {
            let g = active_quads[i].1.gcd(&active_quads[j].1);
            if g.degree() >= Some(1) && count_roots_between(&g, &zero, &one)? > 0 {
                return Err(Error::NotSemigeneral(active_quads[i].0, active_quads[j].0));
            }
        }
    }

    // Narrow the intervals until they are pairwise disjoint and no wall
    // polynomial vanishes at any endpoint. Distinct roots separate after
    // finitely many halvings, so the bound is pure defensiveness.
    let mut settled = false;
    for _ in 0..MAX_REFINEMENT_ROUNDS {
        let mut needs_work: BTreeSet<usize> = BTreeSet::new();
        for i in 0..roots.len() {
            for j in (i + 1)..roots.len() {
                if roots[i].lo < roots[j].hi && roots[j].lo < roots[i].hi {
                    needs_work.insert(i);
                    needs_work.insert(j);
                }
            }
        }
        for i in 0..roots.len() {
            let endpoint_hits_wall = roots.iter().any(|other| {
                other.f.sign_at(&roots[i].lo).is_zero() || other.f.sign_at(&roots[i].hi).is_zero()
            });
            if endpoint_hits_wall {
                needs_work.insert(i);
            }
        }
        if needs_work.is_empty() {
            settled = true;
            break;
        }
        for i in needs_work {
            let (lo, hi) = tighten(&roots[i].sf, &roots[i].lo, &roots[i].hi)?;
            roots[i].lo = lo;
            roots[i].hi = hi;
        }
    }
    if !settled {
        return Err(Error::InternalInconsistency(
            "wall interval refinement failed to converge".into(),
        ));
    }

    roots.sort_by(|a, b| a.lo.cmp(&b.lo));
    let mut events = Vec::new();
    let mut touches = Vec::new();
    for root in roots {
        if root.f.sign_at(&root.lo) == root.f.sign_at(&root.hi) {
            touches.push(TangentialTouch {
                quadruple: root.quad,
                t_lo: root.lo,
                t_hi: root.hi,
            });
        } else {
            events.push(WallEvent {
                quadruple: root.quad,
                t_lo: root.lo,
                t_hi: root.hi,
            });
        }
    }
    Ok(WallDetection { events, touches })
}

fn quadruples(n: usize) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                for d in (c + 1)..n {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

/// How the order-`k` graph rearranges at one circle center when a wall is
/// crossed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MoveKind {
    /// Four vertices persist and all swap color; the quadrilateral of edges
    /// between them is re-braced.
    SquareMove,
    /// Two White vertices die and two different White vertices are born.
    WhiteReconnect,
    /// Two Black vertices die and two different Black vertices are born.
    BlackReconnect,
    /// The wall is crossed but no vertex near this center belongs to the
    /// order-`k` graph, so nothing changes.
    NoOp,
}

/// One wall crossing, classified. A crossing acts on the two antipodal
/// centers of the degenerate circle independently: `kind` is the move at
/// the center with the lexicographically smaller set of outside dots on its
/// left, `second_kind` the move at the other center. (With only four dots
/// the two centers cannot be told apart combinatorially and undergo the
/// same move; both fields then carry it.)
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveEvent {
    pub quadruple: [usize; 4],
    pub t_lo: Rat,
    pub t_hi: Rat,
    pub kind: MoveKind,
    pub second_kind: Option<MoveKind>,
    /// True when both centers change — for `n = 2k` the antipodal
    /// automorphism forces the two changes to mirror each other.
    pub antipodal_paired: bool,
    pub counts_before: StrataCounts,
    pub counts_after: StrataCounts,
}

/// The full record of a deformation: every classified crossing in parameter
/// order, plus the tangential touches that were detected and verified to
/// change nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveLog {
    pub moves: Vec<MoveEvent>,
    pub tangential: Vec<TangentialTouch>,
}

/// Deform `start` into `end` and classify every combinatorial change of the
/// order-`k` graph along the way.
///
/// The graph is rebuilt at both ends of every isolating interval and the
/// result is audited: graphs must agree across event-free stretches, vertex
/// changes must be local to the crossing quadruple, stratum counts must be
/// preserved, and the final graph must equal the one built directly from
/// `end`. Any violation is reported as [`Error::InternalInconsistency`]
/// rather than patched over.
pub fn move_sequence(start: &DotConfig, end: &DotConfig, k: usize) -> Result<MoveLog, Error> {
    let family = make_family(start.clone(), end.clone())?;
    let n = family.n();
    if k == 0 || k >= n {
        return Err(Error::IndexOutOfRange { index: k, bound: n });
    }
    let detection = detect_walls(&family)?;

    let mut prev = build_graph(family.start(), k)?;
    let mut moves = Vec::new();
    for event in &detection.events {
        let cfg_lo = family.at(&event.t_lo)?;
        let g_lo = build_graph(&cfg_lo, k)?;
        if g_lo != prev {
            return Err(Error::InternalInconsistency(format!(
                "graph changed on an event-free stretch before t = {}",
                event.t_lo
            )));
        }
        let g_hi = build_graph(&family.at(&event.t_hi)?, k)?;
        let counts_before = g_lo.strata_counts();
        let counts_after = g_hi.strata_counts();
        if counts_before != counts_after {
            return Err(Error::InternalInconsistency(format!(
                "stratum counts changed across the wall of {:?}",
                event.quadruple
            )));
        }
        let (kind, second_kind) = classify_crossing(&cfg_lo, &g_lo, &g_hi, event.quadruple)?;
        let antipodal_paired =
            kind != MoveKind::NoOp && second_kind.is_some_and(|s| s != MoveKind::NoOp);
        moves.push(MoveEvent {
            quadruple: event.quadruple,
            t_lo: event.t_lo.clone(),
            t_hi: event.t_hi.clone(),
            kind,
            second_kind,
            antipodal_paired,
            counts_before,
            counts_after,
        });
        prev = g_hi;
    }

    let final_graph = build_graph(family.end(), k)?;
    if final_graph != prev {
        return Err(Error::InternalInconsistency(
            "graph after the last crossing does not match the end configuration".into(),
        ));
    }
    Ok(MoveLog {
        moves,
        tangential: detection.touches,
    })
}

/// Like [`move_sequence`], but when the straight-line path is not
/// semigeneral, retry with the end configuration jittered (deterministically
/// from `seed`) until it is, up to `max_retries` times. Returns the log and
/// the end configuration actually reached.
pub fn move_sequence_with_retries(
    start: &DotConfig,
    end: &DotConfig,
    k: usize,
    max_retries: usize,
    seed: u64,
) -> Result<(MoveLog, DotConfig), Error> {
    let mut candidate = end.clone();
    let mut attempt = 0;
    loop {
        match move_sequence(start, &candidate, k) {
            Ok(log) => return Ok((log, candidate)),
            Err(Error::NotSemigeneral(..)) if attempt < max_retries => {
                candidate = perturb_config(end, seed.wrapping_add(attempt as u64))?;
                attempt += 1;
            }
            Err(Error::NotSemigeneral(..)) => return Err(Error::RetriesExhausted(max_retries)),
            Err(e) => return Err(e),
        }
    }
}

/// The set of dots outside `quad` strictly on the left of the oriented
/// circle of `key`. Near a wall this set is the same for the four oriented
/// triples whose centers approach the same center of the degenerate circle,
/// and complementary (within the outside dots) for the other four — it is
/// the combinatorial name of the center.
fn outside_left_set(
    cfg: &DotConfig,
    key: VertexKey,
    quad_set: DotSet,
) -> Result<DotSet, Error> {
    let [a, b, c] = key.triple;
    let mut left = DotSet::EMPTY;
    for d in 0..cfg.n() {
        if quad_set.contains(d) {
            continue;
        }
        let side = match key.orientation {
            crate::voronoi::CircleOrientation::Canonical => cfg.orient_dots(a, b, c, d),
            crate::voronoi::CircleOrientation::Reversed => cfg.orient_dots(a, b, c, d).flipped(),
        };
        match side {
            Sign::Positive => left = left.with(d),
            Sign::Negative => {}
            Sign::Zero => return Err(Error::NotGeneralPosition([a, b, c, d])),
        }
    }
    Ok(left)
}

fn classify_crossing(
    cfg_lo: &DotConfig,
    g_lo: &VoronoiGraph,
    g_hi: &VoronoiGraph,
    quad: [usize; 4],
) -> Result<(MoveKind, Option<MoveKind>), Error> {
    let quad_set = DotSet::from_indices(quad);

    // Every vertex change must involve a triple of the crossing quadruple;
    // with disjoint isolating intervals nothing else can move.
    let all_keys: BTreeSet<VertexKey> = g_lo
        .vertices
        .keys()
        .chain(g_hi.vertices.keys())
        .copied()
        .collect();
    for key in &all_keys {
        if g_lo.vertices.get(key) != g_hi.vertices.get(key)
            && !DotSet::from_indices(key.triple).is_subset_of(quad_set)
        {
            return Err(Error::NonLocalChange(quad));
        }
    }

    let mut keys = Vec::with_capacity(8);
    for skip in 0..4 {
        let mut triple = [0usize; 3];
        let mut w = 0;
        for (r, &i) in quad.iter().enumerate() {
            if r != skip {
                triple[w] = i;
                w += 1;
            }
        }
        for orientation in [
            crate::voronoi::CircleOrientation::Canonical,
            crate::voronoi::CircleOrientation::Reversed,
        ] {
            keys.push(VertexKey {
                triple,
                orientation,
            });
        }
    }

    if g_lo.n == 4 {
        // No outside dots: the eight oriented triples form a single class
        // and both centers undergo the same move.
        let kind = center_pattern(&keys, g_lo, g_hi, quad)?;
        return Ok((kind, Some(kind)));
    }

    let mut groups: BTreeMap<DotSet, Vec<VertexKey>> = BTreeMap::new();
    for key in keys {
        groups
            .entry(outside_left_set(cfg_lo, key, quad_set)?)
            .or_default()
            .push(key);
    }
    if groups.len() != 2 {
        return Err(Error::InternalInconsistency(format!(
            "oriented triples of {quad:?} split into {} centers instead of 2",
            groups.len()
        )));
    }
    let outside = quad_set.complement_in(g_lo.n);
    let entries: Vec<(&DotSet, &Vec<VertexKey>)> = groups.iter().collect();
    let ((s0, keys0), (s1, keys1)) = (entries[0], entries[1]);
    if keys0.len() != 4
        || keys1.len() != 4
        || s0.union(*s1) != outside
        || !s0.intersection(*s1).is_empty()
    {
        return Err(Error::InternalInconsistency(format!(
            "center grouping of {quad:?} is not a complementary 4+4 split"
        )));
    }
    let first = center_pattern(keys0, g_lo, g_hi, quad)?;
    let second = center_pattern(keys1, g_lo, g_hi, quad)?;
    Ok((first, Some(second)))
}

/// Match the before/after vertex pattern of one center against the three
/// legal local rearrangements.
fn center_pattern(
    group: &[VertexKey],
    g_lo: &VoronoiGraph,
    g_hi: &VoronoiGraph,
    quad: [usize; 4],
) -> Result<MoveKind, Error> {
    let lo: Vec<(VertexKey, VertexColor)> = group
        .iter()
        .filter_map(|key| g_lo.vertices.get(key).map(|d| (*key, d.color)))
        .collect();
    let hi: Vec<(VertexKey, VertexColor)> = group
        .iter()
        .filter_map(|key| g_hi.vertices.get(key).map(|d| (*key, d.color)))
        .collect();

    if lo.is_empty() && hi.is_empty() {
        return Ok(MoveKind::NoOp);
    }
    if lo.len() == group.len() && hi.len() == group.len() {
        // All vertices persist; a square move flips every color.
        let all_flipped = lo.iter().zip(&hi).all(|((k_lo, c_lo), (k_hi, c_hi))| {
            k_lo == k_hi && c_lo.flipped() == *c_hi
        });
        if all_flipped {
            return Ok(MoveKind::SquareMove);
        }
    } else if 2 * lo.len() == group.len() && 2 * hi.len() == group.len() {
        let lo_keys: BTreeSet<VertexKey> = lo.iter().map(|(k, _)| *k).collect();
        let disjoint = hi.iter().all(|(k, _)| !lo_keys.contains(k));
        let colors: BTreeSet<VertexColor> = lo
            .iter()
            .chain(&hi)
            .map(|(_, c)| *c)
            .collect();
        if disjoint && colors.len() == 1 {
            return match colors.into_iter().next().unwrap() {
                VertexColor::White => Ok(MoveKind::WhiteReconnect),
                VertexColor::Black => Ok(MoveKind::BlackReconnect),
            };
        }
    }
    Err(Error::InternalInconsistency(format!(
        "unrecognized local pattern at a center of {quad:?}: {} vertices before, {} after",
        lo.len(),
        hi.len()
    )))
}
