//! Rational points on the unit sphere and the exact predicates over them.
//!
//! Everything combinatorial in this crate reduces to one question: on which
//! side of the circle through three dots does a fourth dot lie? That is the
//! sign of a 3×3 determinant over the rationals, so with rational dots every
//! predicate is decided exactly and the only floating point in the crate is
//! cosmetic (`circumcenter_numeric`, drawing).
//!
//! Rational sphere points come from rational planar points through the
//! inverse stereographic projection `lift`; the pole `(0,0,1)` is the
//! projection center and never a dot.

use serde::{Deserialize, Serialize};

use crate::rat::Rat;
use crate::Error;

/// Sign of an exact quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(value: &Rat) -> Sign {
        if value.is_positive() {
            Sign::Positive
        } else if value.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }
}

/// A point of the plane with exact rational coordinates.
///
/// The serialized form is `{"u": "p/q", "v": "p/q"}` with canonical rational
/// strings; this struct is the element type of the configuration file format.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanarPoint {
    pub u: Rat,
    pub v: Rat,
}

impl PlanarPoint {
    pub fn new(u: Rat, v: Rat) -> Self {
        PlanarPoint { u, v }
    }

    /// Inverse stereographic projection from the pole `(0,0,1)`.
    ///
    /// With `s = u² + v²`, the image is
    /// `(2u/(1+s), 2v/(1+s), (s-1)/(1+s))`, which is exactly on the unit
    /// sphere and never equals the pole itself.
    pub fn lift(&self) -> SpherePoint {
        let s = &self.u * &self.u + &self.v * &self.v;
        let denom = Rat::one() + &s;
        SpherePoint {
            x: (Rat::from(2) * &self.u) / &denom,
            y: (Rat::from(2) * &self.v) / &denom,
            z: (s - Rat::one()) / denom,
        }
    }
}

/// A rational point on the unit sphere (`x² + y² + z² = 1`, enforced).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpherePoint {
    x: Rat,
    y: Rat,
    z: Rat,
}

impl SpherePoint {
    /// Validating constructor; prefer [`PlanarPoint::lift`] where possible.
    pub fn new(x: Rat, y: Rat, z: Rat) -> Result<Self, Error> {
        let norm = &x * &x + &y * &y + &z * &z;
        if norm != Rat::one() {
            return Err(Error::NotOnSphere(
                x.to_string(),
                y.to_string(),
                z.to_string(),
            ));
        }
        Ok(SpherePoint { x, y, z })
    }

    /// Used internally when the invariant is guaranteed (lift, antipode,
    /// rotation by an exact orthogonal matrix).
    pub(crate) fn new_unchecked(x: Rat, y: Rat, z: Rat) -> Self {
        debug_assert_eq!(&x * &x + &y * &y + &z * &z, Rat::one());
        SpherePoint { x, y, z }
    }

    /// The stereographic projection center `(0, 0, 1)`.
    pub fn pole() -> SpherePoint {
        SpherePoint {
            x: Rat::zero(),
            y: Rat::zero(),
            z: Rat::one(),
        }
    }

    pub fn x(&self) -> &Rat {
        &self.x
    }

    pub fn y(&self) -> &Rat {
        &self.y
    }

    pub fn z(&self) -> &Rat {
        &self.z
    }

    pub fn is_pole(&self) -> bool {
        self.z == Rat::one()
    }

    /// Stereographic projection back to the plane, the exact inverse of
    /// [`PlanarPoint::lift`]. Fails only on the pole.
    pub fn project(&self) -> Result<PlanarPoint, Error> {
        if self.is_pole() {
            return Err(Error::PoleProjection);
        }
        let w = Rat::one() - &self.z;
        Ok(PlanarPoint {
            u: &self.x / &w,
            v: &self.y / &w,
        })
    }

    pub fn antipode(&self) -> SpherePoint {
        SpherePoint {
            x: -&self.x,
            y: -&self.y,
            z: -&self.z,
        }
    }

    pub fn dot(&self, other: &SpherePoint) -> Rat {
        &self.x * &other.x + &self.y * &other.y + &self.z * &other.z
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [self.x.to_f64(), self.y.to_f64(), self.z.to_f64()]
    }
}

/// Orientation of `d` against the plane spanned by `a`, `b`, `c`:
/// the sign of `det [b-a, c-a, d-a]`.
///
/// On the sphere this is simultaneously the cocircularity test (zero iff the
/// four points lie on a common circle) and the side predicate: `Positive`
/// means `d` lies on the *left* side of the circle through `(a, b, c)`
/// oriented in that order.
pub fn orient(a: &SpherePoint, b: &SpherePoint, c: &SpherePoint, d: &SpherePoint) -> Sign {
    let (bx, by, bz) = (&b.x - &a.x, &b.y - &a.y, &b.z - &a.z);
    let (cx, cy, cz) = (&c.x - &a.x, &c.y - &a.y, &c.z - &a.z);
    let (dx, dy, dz) = (&d.x - &a.x, &d.y - &a.y, &d.z - &a.z);
    let det = &bx * (&cy * &dz - &cz * &dy) - &by * (&cx * &dz - &cz * &dx)
        + &bz * (&cx * &dy - &cy * &dx);
    Sign::of(&det)
}

/// Which of `d1`, `d2` is nearer to `p` on the sphere: `Positive` if `d1`,
/// `Negative` if `d2`, `Zero` on the bisector. (Spherical distance decreases
/// as the inner product grows, so this is `sign(p·d1 - p·d2)`.)
pub fn nearer(p: &SpherePoint, d1: &SpherePoint, d2: &SpherePoint) -> Sign {
    let diff = p.dot(d1) - p.dot(d2);
    Sign::of(&diff)
}

/// Side of an oriented circle, as seen by a point not on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SideOfCircle {
    Left,
    Right,
    On,
}

impl From<Sign> for SideOfCircle {
    fn from(sign: Sign) -> SideOfCircle {
        match sign {
            Sign::Positive => SideOfCircle::Left,
            Sign::Negative => SideOfCircle::Right,
            Sign::Zero => SideOfCircle::On,
        }
    }
}

/// Outcome of the full general-position scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneralPositionCheck {
    /// No four dots are cocircular; every predicate downstream is decisive.
    Certified,
    /// The first offending quadruple, in increasing index order.
    Cocircular([usize; 4]),
}

impl GeneralPositionCheck {
    pub fn is_certified(&self) -> bool {
        matches!(self, GeneralPositionCheck::Certified)
    }
}

/// A configuration of distinct rational dots on the sphere, none at the pole,
/// indexed `0..n`. Carries the planar preimages; configurations are built
/// either from planar points directly or from sphere points that are then
/// projected back, so the provenance is always available.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DotConfig {
    dots: Vec<SpherePoint>,
    planar: Vec<PlanarPoint>,
}

impl DotConfig {
    /// Lift a planar configuration. Rejects duplicates and more than 64 dots
    /// (index sets are 64-bit masks).
    pub fn from_planar(points: Vec<PlanarPoint>) -> Result<Self, Error> {
        if points.len() > 64 {
            return Err(Error::UnsupportedSize(points.len()));
        }
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                if points[i] == points[j] {
                    return Err(Error::DuplicateDot(i, j));
                }
            }
        }
        let dots = points.iter().map(PlanarPoint::lift).collect();
        Ok(DotConfig {
            dots,
            planar: points,
        })
    }

    /// Adopt sphere points directly (e.g. after an exact rotation); the
    /// planar provenance is recovered by projection, so no dot may sit at
    /// the pole.
    pub fn from_sphere_points(points: Vec<SpherePoint>) -> Result<Self, Error> {
        if points.len() > 64 {
            return Err(Error::UnsupportedSize(points.len()));
        }
        let mut planar = Vec::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            planar.push(p.project().map_err(|_| Error::DotAtPole(i))?);
        }
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                if points[i] == points[j] {
                    return Err(Error::DuplicateDot(i, j));
                }
            }
        }
        Ok(DotConfig {
            dots: points,
            planar,
        })
    }

    /// Convenience for fixtures and examples: planar coordinates as
    /// canonical rational strings.
    pub fn parse_planar(pairs: &[(&str, &str)]) -> Result<Self, Error> {
        let points = pairs
            .iter()
            .map(|(u, v)| Ok(PlanarPoint::new(u.parse()?, v.parse()?)))
            .collect::<Result<Vec<_>, Error>>()?;
        DotConfig::from_planar(points)
    }

    pub fn n(&self) -> usize {
        self.dots.len()
    }

    pub fn dot(&self, i: usize) -> &SpherePoint {
        &self.dots[i]
    }

    pub fn dots(&self) -> &[SpherePoint] {
        &self.dots
    }

    pub fn planar(&self) -> &[PlanarPoint] {
        &self.planar
    }

    /// Orientation of the quadruple `(a, b, c, d)` of dot indices.
    pub fn orient_dots(&self, a: usize, b: usize, c: usize, d: usize) -> Sign {
        orient(&self.dots[a], &self.dots[b], &self.dots[c], &self.dots[d])
    }

    /// Side of dot `d` relative to the circle through `triple`, oriented in
    /// the order given.
    pub fn side_of_circle(&self, triple: [usize; 3], d: usize) -> SideOfCircle {
        self.orient_dots(triple[0], triple[1], triple[2], d).into()
    }

    /// Scan all quadruples for cocircularity. `Certified` is the license for
    /// every counting routine in the crate; a violation carries the witness.
    pub fn is_general_position(&self) -> GeneralPositionCheck {
        let n = self.n();
        for a in 0..n {
            for b in (a + 1)..n {
                for c in (b + 1)..n {
                    for d in (c + 1)..n {
                        if self.orient_dots(a, b, c, d).is_zero() {
                            return GeneralPositionCheck::Cocircular([a, b, c, d]);
                        }
                    }
                }
            }
        }
        GeneralPositionCheck::Certified
    }

    pub fn require_general_position(&self) -> Result<(), Error> {
        match self.is_general_position() {
            GeneralPositionCheck::Certified => Ok(()),
            GeneralPositionCheck::Cocircular(quad) => Err(Error::NotGeneralPosition(quad)),
        }
    }

    /// The configuration with dot `i` removed (indices above `i` shift down).
    pub fn without_dot(&self, i: usize) -> Result<DotConfig, Error> {
        if i >= self.n() {
            return Err(Error::IndexOutOfRange {
                index: i,
                bound: self.n(),
            });
        }
        let mut dots = self.dots.clone();
        let mut planar = self.planar.clone();
        dots.remove(i);
        planar.remove(i);
        Ok(DotConfig { dots, planar })
    }

    /// Floating-point left center of the circle through the ordered triple:
    /// the unit normal `(b-a)×(c-a) / |…|` of its plane. Swapping two triple
    /// entries yields the antipodal center. Export/drawing only — no
    /// predicate consumes this.
    pub fn circumcenter_numeric(&self, triple: [usize; 3]) -> [f64; 3] {
        let a = self.dots[triple[0]].to_f64();
        let b = self.dots[triple[1]].to_f64();
        let c = self.dots[triple[2]].to_f64();
        let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
        let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
        let normal = [
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        ];
        let len = (normal[0] * normal[0] + normal[1] * normal[1] + normal[2] * normal[2]).sqrt();
        [normal[0] / len, normal[1] / len, normal[2] / len]
    }
}
