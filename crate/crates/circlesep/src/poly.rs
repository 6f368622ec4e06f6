//! Dense univariate polynomials over the rationals, with just enough
//! machinery to isolate real roots exactly: Euclidean division, gcd,
//! squarefree parts, Sturm chains, and bisection that never leaves the
//! rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::geom::Sign;
use crate::rat::Rat;
use crate::Error;

/// Coefficients in increasing degree order; the zero polynomial is the
/// empty vector, and the leading coefficient is never zero.
#[derive(Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{i}")?,
            }
        }
        Ok(())
    }
}

impl RatPoly {
    pub fn zero() -> RatPoly {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> RatPoly {
        RatPoly::from_coeffs(vec![c])
    }

    /// `c·t + d` — the interpolating coordinates of a moving dot are built
    /// from these.
    pub fn linear(d: Rat, c: Rat) -> RatPoly {
        RatPoly::from_coeffs(vec![d, c])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> RatPoly {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &Rat) -> Sign {
        Sign::of(&self.eval(x))
    }

    pub fn derivative(&self) -> RatPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| Rat::from(i as i64) * c)
            .collect();
        RatPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, s: &Rat) -> RatPoly {
        RatPoly::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Divide by the leading coefficient; the zero polynomial stays zero.
    pub fn monic(&self) -> RatPoly {
        match self.coeffs.last() {
            None => RatPoly::zero(),
            Some(lead) => self.scale(&(Rat::one() / lead)),
        }
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    /// Panics on a zero divisor — callers guard that themselves.
    pub fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        let lead = d.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let factor = rem.last().unwrap() / lead;
            let shift = rem.len() - 1 - dd;
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[shift + i] = &rem[shift + i] - &(&factor * dc);
            }
            debug_assert!(rem.last().unwrap().is_zero());
            rem.pop();
            quot[shift] = factor;
            while rem.last().is_some_and(Rat::is_zero) && rem.len() > dd {
                rem.pop();
            }
        }
        (RatPoly::from_coeffs(quot), RatPoly::from_coeffs(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// The product of the distinct linear factors, with the same roots as
    /// `self` but all simple: `self / gcd(self, self')`.
    pub fn squarefree_part(&self) -> RatPoly {
        if self.is_zero() {
            return RatPoly::zero();
        }
        let g = self.gcd(&self.derivative());
        let (q, r) = self.div_rem(&g);
        debug_assert!(r.is_zero());
        q
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let mut coeffs = vec![Rat::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] = &coeffs[i] + c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] = &coeffs[i] + c;
        }
        RatPoly::from_coeffs(coeffs)
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        self + &(-rhs)
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        RatPoly::from_coeffs(coeffs)
    }
}

/// The Sturm chain of a squarefree polynomial: `p, p', -rem, -rem, …`
/// down to a nonzero constant.
pub fn sturm_chain(p: &RatPoly) -> Vec<RatPoly> {
    let mut chain = vec![p.clone()];
    let d = p.derivative();
    if d.is_zero() {
        return chain;
    }
    chain.push(d);
    loop {
        let len = chain.len();
        let (_, r) = chain[len - 2].div_rem(&chain[len - 1]);
        if r.is_zero() {
            return chain;
        }
        chain.push(-&r);
    }
}

fn sign_variations(chain: &[RatPoly], x: &Rat) -> usize {
    let mut variations = 0;
    let mut prev: Option<Sign> = None;
    for p in chain {
        let s = p.sign_at(x);
        if s.is_zero() {
            continue;
        }
        if let Some(q) = prev {
            if q != s {
                variations += 1;
            }
        }
        prev = Some(s);
    }
    variations
}

/// Number of roots of squarefree `p` in the open interval `(lo, hi)`.
/// The endpoints must not be roots.
pub fn count_roots_between(p: &RatPoly, lo: &Rat, hi: &Rat) -> Result<usize, Error> {
    if p.sign_at(lo).is_zero() || p.sign_at(hi).is_zero() {
        return Err(Error::InternalInconsistency(format!(
            "root counting requires non-root endpoints, got [{lo}, {hi}]"
        )));
    }
    let chain = sturm_chain(p);
    let at_lo = sign_variations(&chain, lo);
    let at_hi = sign_variations(&chain, hi);
    Ok(at_lo.saturating_sub(at_hi))
}

/// Isolating intervals for every root of squarefree `p` in `(lo, hi)`:
/// pairwise disjoint open intervals with non-root endpoints, one root each,
/// ordered left to right. Bisection; a midpoint that happens to be a root
/// gets a small punched-out interval of its own.
pub fn isolate_roots(p: &RatPoly, lo: &Rat, hi: &Rat) -> Result<Vec<(Rat, Rat)>, Error> {
    if p.is_zero() {
        return Err(Error::InternalInconsistency(
            "cannot isolate roots of the zero polynomial".into(),
        ));
    }
    let chain = sturm_chain(p);
    let mut out = Vec::new();
    isolate_rec(p, &chain, lo, hi, &mut out)?;
    Ok(out)
}

fn isolate_rec(
    p: &RatPoly,
    chain: &[RatPoly],
    lo: &Rat,
    hi: &Rat,
    out: &mut Vec<(Rat, Rat)>,
) -> Result<(), Error> {
    if p.sign_at(lo).is_zero() || p.sign_at(hi).is_zero() {
        return Err(Error::InternalInconsistency(format!(
            "root isolation requires non-root endpoints, got [{lo}, {hi}]"
        )));
    }
    let count = sign_variations(chain, lo).saturating_sub(sign_variations(chain, hi));
    match count {
        0 => Ok(()),
        1 => {
            out.push((lo.clone(), hi.clone()));
            Ok(())
        }
        _ => {
            let mid = (lo + hi) * Rat::frac(1, 2);
            if p.sign_at(&mid).is_zero() {
                // The midpoint is itself a root; punch out a hole around it
                // small enough to exclude every other root.
                let mut eps = (hi - lo) * Rat::frac(1, 8);
                loop {
                    let a = &mid - &eps;
                    let b = &mid + &eps;
                    if !p.sign_at(&a).is_zero()
                        && !p.sign_at(&b).is_zero()
                        && sign_variations(chain, &a).saturating_sub(sign_variations(chain, &b))
                            == 1
                    {
                        isolate_rec(p, chain, lo, &a, out)?;
                        out.push((a, b.clone()));
                        return isolate_rec(p, chain, &b, hi, out);
                    }
                    eps = eps * Rat::frac(1, 2);
                }
            }
            isolate_rec(p, chain, lo, &mid, out)?;
            isolate_rec(p, chain, &mid, hi, out)
        }
    }
}

/// Halve an isolating interval of squarefree `p` around its single root.
/// Requires a sign change across the interval (automatic for a simple
/// root); returns a strictly shorter interval with the same guarantees.
pub fn tighten(p: &RatPoly, lo: &Rat, hi: &Rat) -> Result<(Rat, Rat), Error> {
    let s_lo = p.sign_at(lo);
    let s_hi = p.sign_at(hi);
    if s_lo.is_zero() || s_hi.is_zero() || s_lo == s_hi {
        return Err(Error::InternalInconsistency(format!(
            "tighten requires a sign change across [{lo}, {hi}]"
        )));
    }
    let mid = (lo + hi) * Rat::frac(1, 2);
    let s_mid = p.sign_at(&mid);
    if s_mid.is_zero() {
        // The root is exactly the midpoint; keep a small symmetric window.
        let eps = (hi - lo) * Rat::frac(1, 8);
        return Ok((&mid - &eps, &mid + &eps));
    }
    if s_mid == s_lo {
        Ok((mid, hi.clone()))
    } else {
        Ok((lo.clone(), mid))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[(i64, i64)]) -> RatPoly {
        RatPoly::from_coeffs(coeffs.iter().map(|&(n, d)| Rat::frac(n, d)).collect())
    }

    fn ipoly(coeffs: &[i64]) -> RatPoly {
        RatPoly::from_coeffs(coeffs.iter().map(|&n| Rat::from(n)).collect())
    }

    /// Expand the monic polynomial with the given roots.
    fn from_roots(roots: &[Rat]) -> RatPoly {
        let mut p = RatPoly::constant(Rat::one());
        for r in roots {
            p = &p * &RatPoly::linear(-r, Rat::one());
        }
        p
    }

    #[test]
    fn evaluation_and_derivative() {
        // 3t^2 - t/2 + 1
        let p = poly(&[(1, 1), (-1, 2), (3, 1)]);
        assert_eq!(p.eval(&Rat::from(2)), Rat::from(12));
        assert_eq!(p.eval(&Rat::frac(1, 2)), Rat::frac(3, 2));
        assert_eq!(p.derivative(), poly(&[(-1, 2), (6, 1)]));
        assert_eq!(p.degree(), Some(2));
        assert_eq!(RatPoly::zero().degree(), None);
        assert_eq!(ipoly(&[7]).derivative(), RatPoly::zero());
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = RatPoly::from_coeffs(vec![Rat::one(), Rat::zero(), Rat::zero()]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(&p - &p, RatPoly::zero());
    }

    #[test]
    fn division_reassembles() {
        let f = ipoly(&[6, -5, -2, 1, 3]);
        let d = ipoly(&[1, -2, 1]);
        let (q, r) = f.div_rem(&d);
        assert!(r.degree() < d.degree());
        assert_eq!(&(&q * &d) + &r, f);

        // Exact division.
        let g = &from_roots(&[Rat::from(1), Rat::frac(1, 3)]) * &ipoly(&[2, 1]);
        let (q, r) = g.div_rem(&ipoly(&[2, 1]));
        assert!(r.is_zero());
        assert_eq!(q, from_roots(&[Rat::from(1), Rat::frac(1, 3)]));
    }

    #[test]
    fn gcd_extracts_common_roots() {
        let a = from_roots(&[Rat::from(1), Rat::from(2), Rat::from(3)]);
        let b = from_roots(&[Rat::from(2), Rat::from(5)]);
        assert_eq!(a.gcd(&b), from_roots(&[Rat::from(2)]));
        let c = from_roots(&[Rat::frac(1, 7)]);
        assert_eq!(c.gcd(&from_roots(&[Rat::frac(2, 7)])), ipoly(&[1]));
    }

    #[test]
    fn squarefree_part_keeps_each_root_once() {
        let double = from_roots(&[Rat::frac(1, 2), Rat::frac(1, 2), Rat::from(-2)]);
        let sf = double.squarefree_part().monic();
        assert_eq!(sf, from_roots(&[Rat::frac(1, 2), Rat::from(-2)]));
        // A squarefree input is (up to scale) its own squarefree part.
        let simple = from_roots(&[Rat::from(0), Rat::from(4)]).scale(&Rat::frac(-3, 5));
        assert_eq!(simple.squarefree_part().monic(), simple.monic());
    }

    #[test]
    fn sturm_counts_roots() {
        let p = from_roots(&[Rat::frac(1, 4), Rat::frac(1, 2), Rat::frac(3, 4)]);
        assert_eq!(
            count_roots_between(&p, &Rat::zero(), &Rat::one()).unwrap(),
            3
        );
        assert_eq!(
            count_roots_between(&p, &Rat::zero(), &Rat::frac(3, 8)).unwrap(),
            1
        );
        assert_eq!(
            count_roots_between(&p, &Rat::frac(7, 8), &Rat::one()).unwrap(),
            0
        );
        // No real roots at all.
        let q = ipoly(&[1, 0, 1]);
        assert_eq!(
            count_roots_between(&q, &Rat::from(-10), &Rat::from(10)).unwrap(),
            0
        );
        // Root endpoints are refused.
        assert!(count_roots_between(&p, &Rat::frac(1, 4), &Rat::one()).is_err());
    }

    #[test]
    fn isolation_separates_close_roots() {
        let roots = [
            Rat::frac(1, 5),
            Rat::frac(2, 5),
            Rat::frac(3, 5),
            Rat::frac(4, 5),
        ];
        let p = from_roots(&roots);
        let intervals = isolate_roots(&p, &Rat::zero(), &Rat::one()).unwrap();
        assert_eq!(intervals.len(), 4);
        for (root, (lo, hi)) in roots.iter().zip(&intervals) {
            assert!(lo < root && root < hi);
            assert_eq!(count_roots_between(&p, lo, hi).unwrap(), 1);
        }
        for pair in intervals.windows(2) {
            assert!(pair[0].1 <= pair[1].0);
        }
    }

    #[test]
    fn isolation_survives_a_root_at_the_midpoint() {
        // 1/2 is the exact midpoint of (0, 1) and a root.
        let p = from_roots(&[Rat::frac(1, 2), Rat::frac(1, 3)]);
        let intervals = isolate_roots(&p, &Rat::zero(), &Rat::one()).unwrap();
        assert_eq!(intervals.len(), 2);
        assert!(intervals[0].0 < Rat::frac(1, 3) && Rat::frac(1, 3) < intervals[0].1);
        assert!(intervals[1].0 < Rat::frac(1, 2) && Rat::frac(1, 2) < intervals[1].1);
        assert!(intervals[0].1 <= intervals[1].0);
    }

    #[test]
    fn double_root_has_no_sign_change_but_its_squarefree_part_does() {
        let touch = &from_roots(&[Rat::frac(1, 2)]) * &from_roots(&[Rat::frac(1, 2)]);
        let sf = touch.squarefree_part();
        let intervals = isolate_roots(&sf, &Rat::zero(), &Rat::one()).unwrap();
        assert_eq!(intervals.len(), 1);
        let (lo, hi) = &intervals[0];
        assert_eq!(touch.sign_at(lo), touch.sign_at(hi));
        assert_ne!(sf.sign_at(lo), sf.sign_at(hi));
    }

    #[test]
    fn tighten_halves_and_preserves_the_root() {
        let p = from_roots(&[Rat::frac(3, 7)]);
        let (mut lo, mut hi) = (Rat::zero(), Rat::one());
        for _ in 0..20 {
            let (a, b) = tighten(&p, &lo, &hi).unwrap();
            assert!(a < Rat::frac(3, 7) && Rat::frac(3, 7) < b);
            assert!(&b - &a <= (&hi - &lo) * Rat::frac(1, 2));
            lo = a;
            hi = b;
        }
        // The root lands exactly on a midpoint eventually or not; either
        // way the interval is now tiny.
        assert!(&hi - &lo <= Rat::frac(1, 1 << 20));
        assert!(tighten(&p, &Rat::frac(1, 2), &Rat::one()).is_err());
    }
}
