//! Incident circles: circles through three dots, classified by how the
//! remaining dots split across their two sides.
//!
//! For a configuration in general position the split counts are independent
//! of the configuration, which is what the closed forms at the bottom of the
//! module express; the counting routines here recount them from scratch so
//! the two can be checked against each other.

use std::collections::BTreeMap;

use crate::geom::{DotConfig, Sign, SpherePoint};
use crate::Error;

/// One circle through three dots, in canonical (increasing-index) order,
/// with the number of remaining dots strictly on its left side. The right
/// side holds the other `n - 3 - left_count` dots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IncidentRecord {
    pub triple: [usize; 3],
    pub left_count: usize,
}

impl IncidentRecord {
    pub fn right_count(&self, n: usize) -> usize {
        n - 3 - self.left_count
    }
}

/// Histogram of unordered side splits `{k, ℓ}` over all incident circles.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SideHistogram {
    counts: BTreeMap<(usize, usize), u64>,
}

impl SideHistogram {
    /// Count for the unordered pair `{k, ℓ}` (argument order irrelevant).
    pub fn get(&self, k: usize, l: usize) -> u64 {
        let key = (k.min(l), k.max(l));
        self.counts.get(&key).copied().unwrap_or(0)
    }

    fn bump(&mut self, k: usize, l: usize) {
        let key = (k.min(l), k.max(l));
        *self.counts.entry(key).or_insert(0) += 1;
    }

    /// Entries as `((k, ℓ), count)` with `k ≤ ℓ`, in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &u64)> {
        self.counts.iter()
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// The histogram a general-position configuration of `n` dots must have.
    pub fn closed_form(n: usize) -> SideHistogram {
        let mut hist = SideHistogram::default();
        if n < 3 {
            return hist;
        }
        for k in 0..=(n - 3) / 2 {
            let l = n - 3 - k;
            hist.counts.insert((k, l), incident_split_closed_form(k, l));
        }
        hist
    }
}

/// All incident circles with their left counts. Vacuously empty for `n < 3`.
pub fn enumerate_incident(cfg: &DotConfig) -> Result<Vec<IncidentRecord>, Error> {
    cfg.require_general_position()?;
    let n = cfg.n();
    let mut records = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                let mut left_count = 0;
                for d in 0..n {
                    if d == a || d == b || d == c {
                        continue;
                    }
                    match cfg.orient_dots(a, b, c, d) {
                        Sign::Positive => left_count += 1,
                        Sign::Negative => {}
                        Sign::Zero => return Err(Error::NotGeneralPosition([a, b, c, d])),
                    }
                }
                records.push(IncidentRecord {
                    triple: [a, b, c],
                    left_count,
                });
            }
        }
    }
    Ok(records)
}

/// Histogram of unordered splits `{left, right}` over all incident circles.
pub fn incident_histogram(cfg: &DotConfig) -> Result<SideHistogram, Error> {
    let n = cfg.n();
    let mut hist = SideHistogram::default();
    for rec in enumerate_incident(cfg)? {
        hist.bump(rec.left_count, rec.right_count(n));
    }
    Ok(hist)
}

/// Number of *oriented* incident circles with exactly `k` dots on the left.
/// Each unordered circle contributes its two orientations separately.
pub fn count_oriented_incident(cfg: &DotConfig, k: usize) -> Result<u64, Error> {
    let n = cfg.n();
    if n < 3 || k > n - 3 {
        return Err(Error::IndexOutOfRange {
            index: k,
            bound: n.saturating_sub(3),
        });
    }
    let mut count = 0;
    for rec in enumerate_incident(cfg)? {
        if rec.left_count == k {
            count += 1;
        }
        if rec.right_count(n) == k {
            count += 1;
        }
    }
    Ok(count)
}

/// Number of oriented circles with an empty left side — equivalently, faces
/// of the convex hull of the lifted dots (every dot lies on the hull, and
/// each hull face's plane leaves all other dots on one side).
pub fn hull_face_count(cfg: &DotConfig) -> Result<u64, Error> {
    let n = cfg.n();
    let mut count = 0;
    for rec in enumerate_incident(cfg)? {
        if rec.left_count == 0 {
            count += 1;
        }
        if rec.right_count(n) == 0 {
            count += 1;
        }
    }
    Ok(count)
}

/// Histogram `interior count → number of circles`, where the interior of an
/// incident circle is the side (in the planar chart) *not* containing the
/// projection pole. Errors with [`Error::PoleOnCircle`] if some circle runs
/// through the pole (= collinear planar preimages), because then that
/// circle's interior is undefined.
pub fn planar_interior_histogram(cfg: &DotConfig) -> Result<BTreeMap<usize, u64>, Error> {
    cfg.require_general_position()?;
    let n = cfg.n();
    let pole = SpherePoint::pole();
    let mut hist = BTreeMap::new();
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                let pole_side = crate::geom::orient(cfg.dot(a), cfg.dot(b), cfg.dot(c), &pole);
                let mut left = 0usize;
                let mut right = 0usize;
                for d in 0..n {
                    if d == a || d == b || d == c {
                        continue;
                    }
                    match cfg.orient_dots(a, b, c, d) {
                        Sign::Positive => left += 1,
                        Sign::Negative => right += 1,
                        Sign::Zero => return Err(Error::NotGeneralPosition([a, b, c, d])),
                    }
                }
                let interior = match pole_side {
                    // Pole on the left: the bounded side of the planar circle
                    // is the right side, and vice versa.
                    Sign::Positive => right,
                    Sign::Negative => left,
                    Sign::Zero => return Err(Error::PoleOnCircle([a, b, c])),
                };
                *hist.entry(interior).or_insert(0) += 1;
            }
        }
    }
    Ok(hist)
}

/// Closed form for the number of oriented incident circles with `k` dots on
/// the left: `2(k+1)(n-k-2)` for `0 ≤ k ≤ n-3`, zero outside that range.
pub fn oriented_incident_closed_form(k: usize, n: usize) -> u64 {
    if n < 3 || k > n - 3 {
        return 0;
    }
    2 * (k as u64 + 1) * (n as u64 - k as u64 - 2)
}

/// Closed form for the number of incident circles with split `{k, ℓ}` in a
/// configuration of `n = k + ℓ + 3` dots: `2(k+1)(ℓ+1)` for `k ≠ ℓ`,
/// `(k+1)²` for `k = ℓ`.
pub fn incident_split_closed_form(k: usize, l: usize) -> u64 {
    let (k, l) = (k as u64, l as u64);
    if k == l {
        (k + 1) * (k + 1)
    } else {
        2 * (k + 1) * (l + 1)
    }
}

/// Closed form for the number of unordered avoidant splits `{k, ℓ}` of
/// `n = k + ℓ ≥ 4` dots (`k, ℓ ≥ 1`): `2kℓ - k - ℓ + 2` for `k ≠ ℓ`,
/// `k² - k + 1` for `k = ℓ`.
pub fn avoidant_split_closed_form(k: usize, l: usize) -> u64 {
    let (k, l) = (k as u64, l as u64);
    if k == l {
        k * k - k + 1
    } else {
        2 * k * l - k - l + 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::sample_config;

    #[test]
    fn closed_forms_at_small_values() {
        // Spot values, worked out by hand from the formulas' definitions.
        assert_eq!(oriented_incident_closed_form(0, 6), 8);
        assert_eq!(oriented_incident_closed_form(1, 6), 12);
        assert_eq!(oriented_incident_closed_form(0, 4), 4);
        assert_eq!(oriented_incident_closed_form(5, 6), 0); // out of range
        assert_eq!(incident_split_closed_form(1, 1), 4);
        assert_eq!(incident_split_closed_form(0, 2), 6);
        assert_eq!(incident_split_closed_form(0, 0), 1);
        assert_eq!(avoidant_split_closed_form(3, 3), 7);
        assert_eq!(avoidant_split_closed_form(2, 2), 3);
        assert_eq!(avoidant_split_closed_form(1, 3), 4);
    }

    #[test]
    fn five_dots_always_split_four_and_six() {
        // n = 5: four circles with a {1,1} split, six with {0,2} — on any
        // general-position configuration whatsoever.
        for seed in [1, 17, 99] {
            let cfg = sample_config(5, seed).unwrap();
            let hist = incident_histogram(&cfg).unwrap();
            assert_eq!(hist.get(1, 1), 4);
            assert_eq!(hist.get(0, 2), 6);
            assert_eq!(hist.total(), 10);
            assert_eq!(hist, SideHistogram::closed_form(5));
        }
    }

    #[test]
    fn oriented_counts_and_hull_faces() {
        let cfg = sample_config(6, 3).unwrap();
        assert_eq!(count_oriented_incident(&cfg, 0).unwrap(), 8);
        assert_eq!(count_oriented_incident(&cfg, 1).unwrap(), 12);
        assert_eq!(hull_face_count(&cfg).unwrap(), 8); // 2n - 4
        assert!(count_oriented_incident(&cfg, 4).is_err());
    }

    #[test]
    fn triangle_with_center_interior_histogram() {
        // One circumcircle holds the central dot; the three circles through
        // the center and two corners hold nothing.
        let cfg = DotConfig::parse_planar(&[
            ("0", "0"),
            ("0", "1"),
            ("1", "-1"),
            ("-1", "-1"),
        ])
        .unwrap();
        let hist = planar_interior_histogram(&cfg).unwrap();
        assert_eq!(hist, BTreeMap::from([(0, 3), (1, 1)]));
    }

    #[test]
    fn kite_interior_histogram() {
        // Two overlapping circles, each holding one of the narrow-axis dots.
        let cfg = DotConfig::parse_planar(&[
            ("1", "0"),
            ("-1", "0"),
            ("0", "1/2"),
            ("0", "-1/2"),
        ])
        .unwrap();
        let hist = planar_interior_histogram(&cfg).unwrap();
        assert_eq!(hist, BTreeMap::from([(0, 2), (1, 2)]));
    }

    #[test]
    fn collinear_planar_points_make_the_interior_undefined() {
        let cfg = DotConfig::parse_planar(&[
            ("0", "0"),
            ("1", "0"),
            ("2", "0"),
            ("0", "1"),
        ])
        .unwrap();
        assert!(matches!(
            planar_interior_histogram(&cfg),
            Err(Error::PoleOnCircle([0, 1, 2]))
        ));
    }

    #[test]
    fn degenerate_configs_are_rejected() {
        let square = DotConfig::parse_planar(&[
            ("1", "0"),
            ("0", "1"),
            ("-1", "0"),
            ("0", "-1"),
        ])
        .unwrap();
        assert!(matches!(
            incident_histogram(&square),
            Err(Error::NotGeneralPosition([0, 1, 2, 3]))
        ));
    }
}
