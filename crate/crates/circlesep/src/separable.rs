//! Avoidant circles, seen combinatorially: a subset `S` of dots is
//! *separable* when some circle has exactly `S` strictly inside its left
//! side and everything else strictly on the right. Separable `k`-subsets are
//! the oriented avoidant classes at order `k`, and they double as the region
//! keys of the order-`k` Voronoi graph.
//!
//! Two independent deciders live here on purpose:
//!
//! * [`enumerate_separable`] sweeps witness triples: any separating circle
//!   can be deformed until it touches three dots, and each touching dot can
//!   then be tilted to either side. So every separable set arises from some
//!   triple's strict side plus a subset of the triple.
//! * [`oracle_separable`] asks the question as a strict linear feasibility
//!   problem over `(w, c) ∈ ℚ⁴` — `w·d > c` inside, `w·d < c` outside — and
//!   eliminates variables Fourier–Motzkin style, exactly.
//!
//! They must agree; the test suites hold them against each other. Don't
//! "simplify" one in terms of the other.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::circles::avoidant_split_closed_form;
use crate::dotset::DotSet;
use crate::geom::{DotConfig, Sign};
use crate::Error;

/// All separable `k`-subsets, `0 < k < n`, via the witness-triple sweep.
pub fn enumerate_separable(cfg: &DotConfig, k: usize) -> Result<BTreeSet<DotSet>, Error> {
    let n = cfg.n();
    if n < 4 {
        return Err(Error::TooFewDots { n, min: 4 });
    }
    if k == 0 || k >= n {
        return Err(Error::IndexOutOfRange { index: k, bound: n });
    }
    cfg.require_general_position()?;

    let mut found = BTreeSet::new();
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                let mut left = DotSet::EMPTY;
                let mut right = DotSet::EMPTY;
                for d in 0..n {
                    if d == a || d == b || d == c {
                        continue;
                    }
                    match cfg.orient_dots(a, b, c, d) {
                        Sign::Positive => left = left.with(d),
                        Sign::Negative => right = right.with(d),
                        Sign::Zero => return Err(Error::NotGeneralPosition([a, b, c, d])),
                    }
                }
                // Tilt each touching dot to either side: all 8 subsets of
                // the triple may join the strict side, for both orientations.
                for bits in 0..8u32 {
                    let mut extra = DotSet::EMPTY;
                    for (bit, idx) in [(1, a), (2, b), (4, c)] {
                        if bits & bit != 0 {
                            extra = extra.with(idx);
                        }
                    }
                    for base in [left, right] {
                        let candidate = base.union(extra);
                        if candidate.len() == k {
                            found.insert(candidate);
                        }
                    }
                }
            }
        }
    }
    Ok(found)
}

/// Number of unordered avoidant splits `{k, ℓ}`, `k + ℓ = n`: separable
/// `k`-subsets, with the `k = ℓ` case halved since `S` and its complement
/// then name the same split.
pub fn avoidant_partition_count(cfg: &DotConfig, k: usize, l: usize) -> Result<u64, Error> {
    let n = cfg.n();
    if k == 0 || l == 0 || k + l != n || n < 4 {
        return Err(Error::SizeMismatch { k, l, n });
    }
    let subsets = enumerate_separable(cfg, k)?;
    let count = subsets.len() as u64;
    if k == l {
        if count % 2 != 0 {
            return Err(Error::InternalInconsistency(format!(
                "odd number of separable {k}-subsets ({count}) for n = 2k; complements must pair up"
            )));
        }
        Ok(count / 2)
    } else {
        Ok(count)
    }
}

/// Does every avoidant split match its closed form? (Convenience for
/// reports and the verification CLI.)
pub fn avoidant_counts_match(cfg: &DotConfig) -> Result<bool, Error> {
    let n = cfg.n();
    for k in 1..=n / 2 {
        let l = n - k;
        if avoidant_partition_count(cfg, k, l)? != avoidant_split_closed_form(k, l) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact strict-feasibility oracle: is there a plane `w·x = c` with all of
/// `subset` strictly on the `w·x > c` side and all other dots strictly on
/// the other? Equivalent to separability of `subset` by a circle.
///
/// Decided by Fourier–Motzkin elimination over exact integers; independent
/// of the witness-triple sweep by design.
pub fn oracle_separable(cfg: &DotConfig, subset: DotSet) -> Result<bool, Error> {
    let n = cfg.n();
    if !subset.is_subset_of(DotSet::full(n)) {
        let stray = subset.minus(DotSet::full(n)).iter().next().unwrap_or(64);
        return Err(Error::IndexOutOfRange {
            index: stray,
            bound: n,
        });
    }
    if subset.is_empty() || subset.len() == n {
        return Err(Error::SizeMismatch {
            k: subset.len(),
            l: n - subset.len(),
            n,
        });
    }
    cfg.require_general_position()?;

    // One homogeneous strict row per dot over variables (w1, w2, w3, c):
    // inside  d:  x·w1 + y·w2 + z·w3 - c > 0
    // outside d: -x·w1 - y·w2 - z·w3 + c > 0
    // Denominators are cleared per row (positive factors preserve strictness).
    let mut rows: Vec<[BigInt; 4]> = Vec::with_capacity(n);
    for i in 0..n {
        let p = cfg.dot(i);
        let coords = [p.x(), p.y(), p.z()];
        let mut lcm = BigInt::from(1);
        for c in coords {
            lcm = lcm.lcm(c.denom());
        }
        let mut row = [BigInt::zero(), BigInt::zero(), BigInt::zero(), -&lcm];
        for (slot, c) in row.iter_mut().zip(coords) {
            *slot = c.numer() * (&lcm / c.denom());
        }
        if !subset.contains(i) {
            for slot in row.iter_mut() {
                *slot = -&*slot;
            }
        }
        rows.push(row);
    }
    Ok(strict_system_feasible(rows))
}

/// Fourier–Motzkin for a homogeneous system of strict inequalities
/// `row · x > 0`: eliminate the variables in order; the system is feasible
/// iff no (all-zero ⇒ `0 > 0`) row survives.
fn strict_system_feasible(mut rows: Vec<[BigInt; 4]>) -> bool {
    for col in 0..4 {
        let mut keep: Vec<[BigInt; 4]> = Vec::new();
        let mut pos: Vec<[BigInt; 4]> = Vec::new();
        let mut neg: Vec<[BigInt; 4]> = Vec::new();
        for row in rows {
            match row[col].sign() {
                num_bigint::Sign::Plus => pos.push(row),
                num_bigint::Sign::Minus => neg.push(row),
                num_bigint::Sign::NoSign => keep.push(row),
            }
        }
        // Rows with only a lower (or only an upper) bound on x_col are
        // always satisfiable by pushing x_col far enough; they drop out.
        for p in &pos {
            for q in &neg {
                // Positive combination cancelling column `col`:
                // (-q[col])·p + p[col]·q, both multipliers > 0.
                let mut combined = [
                    BigInt::zero(),
                    BigInt::zero(),
                    BigInt::zero(),
                    BigInt::zero(),
                ];
                for j in 0..4 {
                    combined[j] = -&q[col] * &p[j] + &p[col] * &q[j];
                }
                debug_assert!(combined[col].is_zero());
                if combined.iter().all(BigInt::is_zero) {
                    return false; // 0 > 0
                }
                normalize_row(&mut combined);
                keep.push(combined);
            }
        }
        keep.sort();
        keep.dedup();
        rows = keep;
    }
    // Every surviving row has zeros in all four columns: each says 0 > 0.
    rows.is_empty()
}

/// Divide a row by the gcd of its entries to curb coefficient growth.
fn normalize_row(row: &mut [BigInt; 4]) {
    let mut g = BigInt::zero();
    for entry in row.iter() {
        g = g.gcd(entry);
    }
    if !g.is_zero() && !g.is_one() {
        for entry in row.iter_mut() {
            *entry = &*entry / &g;
        }
    }
}
