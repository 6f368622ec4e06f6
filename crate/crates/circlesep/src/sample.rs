//! Seeded random configurations, exact rational rotations, and the jitter
//! used to rescue degenerate deformation paths.
//!
//! Everything here is deterministic in the seed: the same `(n, seed)` pair
//! yields the same configuration on every platform, which the CLI relies on
//! for byte-identical output files.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{DotConfig, PlanarPoint, SpherePoint};
use crate::rat::Rat;
use crate::Error;

/// Planar coordinates are drawn with numerators in `[-64, 64]` and
/// denominators in `[1, 64]`, then reduced.
const NUMERATOR_BOUND: i64 = 64;
const DENOMINATOR_BOUND: i64 = 64;

/// How many rejection rounds before giving up. Rejection is rare at the
/// sizes the toolkit targets, so hitting this indicates a bug.
const MAX_SAMPLE_ATTEMPTS: usize = 10_000;

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    let num = rng.gen_range(-NUMERATOR_BOUND..=NUMERATOR_BOUND);
    let den = rng.gen_range(1..=DENOMINATOR_BOUND);
    Rat::frac(num, den)
}

fn random_planar(rng: &mut ChaCha8Rng, n: usize) -> Vec<PlanarPoint> {
    (0..n)
        .map(|_| PlanarPoint::new(random_rat(rng), random_rat(rng)))
        .collect()
}

/// True iff no incident circle passes through the pole, i.e. no three planar
/// preimages are collinear. Sampled configurations satisfy this on top of
/// general position so that planar interior counts are always defined.
pub fn has_pole_free_circles(cfg: &DotConfig) -> bool {
    let pole = SpherePoint::pole();
    let n = cfg.n();
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                if crate::geom::orient(cfg.dot(a), cfg.dot(b), cfg.dot(c), &pole).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// Rejection-sample a certified general-position configuration of `n` dots.
///
/// Candidates are redrawn until the lift is in general position *and* the
/// planar preimages are (no duplicates, no three collinear), so every
/// counting routine in the crate accepts the result.
pub fn sample_config(n: usize, seed: u64) -> Result<DotConfig, Error> {
    if n > 64 {
        return Err(Error::UnsupportedSize(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_SAMPLE_ATTEMPTS {
        let Ok(cfg) = DotConfig::from_planar(random_planar(&mut rng, n)) else {
            continue; // duplicate coordinates; redraw
        };
        if !has_pole_free_circles(&cfg) {
            continue;
        }
        if !cfg.is_general_position().is_certified() {
            continue;
        }
        return Ok(cfg);
    }
    Err(Error::InternalInconsistency(format!(
        "rejection sampling did not certify a configuration of {n} dots in {MAX_SAMPLE_ATTEMPTS} rounds"
    )))
}

/// An exact rotation of the sphere, built from a rational quaternion. The
/// matrix entries are rational (the quaternion norm² divides out), so
/// rotating a rational sphere point is exact and stays on the sphere.
#[derive(Debug, Clone)]
pub struct RationalRotation {
    m: [[Rat; 3]; 3],
}

impl RationalRotation {
    /// Rotation associated to the quaternion `w + xi + yj + zk`.
    /// Panics on the zero quaternion.
    pub fn from_quaternion(w: Rat, x: Rat, y: Rat, z: Rat) -> RationalRotation {
        let n2 = &w * &w + &x * &x + &y * &y + &z * &z;
        assert!(!n2.is_zero(), "zero quaternion has no rotation");
        let two = Rat::from(2);
        let ww = &w * &w;
        let xx = &x * &x;
        let yy = &y * &y;
        let zz = &z * &z;
        let m = [
            [
                (&ww + &xx - &yy - &zz) / &n2,
                (&two * (&x * &y - &w * &z)) / &n2,
                (&two * (&x * &z + &w * &y)) / &n2,
            ],
            [
                (&two * (&x * &y + &w * &z)) / &n2,
                (&ww - &xx + &yy - &zz) / &n2,
                (&two * (&y * &z - &w * &x)) / &n2,
            ],
            [
                (&two * (&x * &z - &w * &y)) / &n2,
                (&two * (&y * &z + &w * &x)) / &n2,
                (&ww - &xx - &yy + &zz) / &n2,
            ],
        ];
        RationalRotation { m }
    }

    pub fn apply(&self, p: &SpherePoint) -> SpherePoint {
        let coords = [p.x(), p.y(), p.z()];
        let mut out = [Rat::zero(), Rat::zero(), Rat::zero()];
        for (row, slot) in self.m.iter().zip(out.iter_mut()) {
            *slot = row
                .iter()
                .zip(coords.iter())
                .fold(Rat::zero(), |acc, (m, c)| acc + m * *c);
        }
        let [x, y, z] = out;
        SpherePoint::new_unchecked(x, y, z)
    }

    /// Rotate a whole configuration. Fails with [`Error::DotAtPole`] if some
    /// dot lands exactly on the pole (the rotated configuration would have
    /// no planar provenance); callers typically resample the rotation.
    pub fn apply_config(&self, cfg: &DotConfig) -> Result<DotConfig, Error> {
        let rotated = cfg.dots().iter().map(|p| self.apply(p)).collect();
        DotConfig::from_sphere_points(rotated)
    }
}

/// Seeded random rotation with small quaternion entries.
pub fn sample_rotation(seed: u64) -> RationalRotation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut q = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
        for slot in q.iter_mut() {
            *slot = Rat::frac(rng.gen_range(-8..=8), rng.gen_range(1..=8));
        }
        if q.iter().any(|c| !c.is_zero()) {
            let [w, x, y, z] = q;
            return RationalRotation::from_quaternion(w, x, y, z);
        }
    }
}

/// Deterministic jitter used to rescue degenerate deformation endpoints:
/// each planar coordinate moves by ±1/2¹⁰, signs drawn from the seed, until
/// the perturbed configuration certifies.
pub fn perturb_config(cfg: &DotConfig, seed: u64) -> Result<DotConfig, Error> {
    let step = Rat::frac(1, 1 << 10);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_SAMPLE_ATTEMPTS {
        let jittered: Vec<PlanarPoint> = cfg
            .planar()
            .iter()
            .map(|p| {
                let du = if rng.gen::<bool>() { step.clone() } else { -&step };
                let dv = if rng.gen::<bool>() { step.clone() } else { -&step };
                PlanarPoint::new(&p.u + du, &p.v + dv)
            })
            .collect();
        let Ok(candidate) = DotConfig::from_planar(jittered) else {
            continue;
        };
        if candidate.is_general_position().is_certified() {
            return Ok(candidate);
        }
    }
    Err(Error::InternalInconsistency(
        "perturbation failed to reach general position".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::Rat;

    #[test]
    fn sampling_is_deterministic_and_certified() {
        let a = sample_config(7, 42).unwrap();
        let b = sample_config(7, 42).unwrap();
        assert_eq!(a, b);
        assert!(a.is_general_position().is_certified());
        assert!(has_pole_free_circles(&a));
        assert_ne!(a, sample_config(7, 43).unwrap());
    }

    #[test]
    fn sampled_coordinates_respect_the_bounds() {
        let bound = num_bigint::BigUint::from(64u32);
        let cfg = sample_config(10, 5).unwrap();
        for p in cfg.planar() {
            for coord in [&p.u, &p.v] {
                assert!(coord.numer().magnitude() <= &bound);
                assert!(coord.denom().magnitude() <= &bound);
            }
        }
    }

    #[test]
    fn oversized_requests_are_rejected() {
        assert!(matches!(
            sample_config(65, 0),
            Err(Error::UnsupportedSize(65))
        ));
    }

    #[test]
    fn rotations_are_exact_isometries() {
        let rot = sample_rotation(9);
        let cfg = sample_config(5, 1).unwrap();
        let rotated = rot.apply_config(&cfg).unwrap();
        // Pairwise inner products (hence all mutual spherical distances)
        // survive exactly.
        for i in 0..cfg.n() {
            for j in 0..cfg.n() {
                assert_eq!(
                    cfg.dot(i).dot(cfg.dot(j)),
                    rotated.dot(i).dot(rotated.dot(j))
                );
            }
        }
    }

    #[test]
    fn half_turn_about_z_negates_xy() {
        // Quaternion k = (0,0,0,1): a half turn about the z axis.
        let rot = RationalRotation::from_quaternion(
            Rat::zero(),
            Rat::zero(),
            Rat::zero(),
            Rat::one(),
        );
        let p = PlanarPoint::new(Rat::frac(1, 2), Rat::frac(1, 3)).lift();
        let q = rot.apply(&p);
        assert_eq!(q.x(), &-p.x());
        assert_eq!(q.y(), &-p.y());
        assert_eq!(q.z(), p.z());
    }

    #[test]
    fn perturbation_moves_by_exactly_one_1024th() {
        let cfg = sample_config(6, 2).unwrap();
        let jittered = perturb_config(&cfg, 77).unwrap();
        let step = Rat::frac(1, 1024);
        for (orig, new) in cfg.planar().iter().zip(jittered.planar()) {
            assert_eq!((&new.u - &orig.u).abs(), step);
            assert_eq!((&new.v - &orig.v).abs(), step);
        }
        assert!(jittered.is_general_position().is_certified());
    }
}
