//! Index sets over the dots of one configuration, packed into a `u64`.
//!
//! Every subset the toolkit manipulates (strict sides of a circle, near/far
//! splits, Voronoi region keys) lives inside a single configuration of at
//! most 64 dots, so a bitmask is both the fastest and the most convenient
//! canonical form: equal sets are equal words, and the derived `Ord` gives
//! every container a deterministic iteration order.

use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DotSet(u64);

impl DotSet {
    pub const EMPTY: DotSet = DotSet(0);

    /// The full set `{0, 1, …, n-1}`.
    pub fn full(n: usize) -> DotSet {
        assert!(n <= 64, "DotSet supports at most 64 dots");
        if n == 64 {
            DotSet(u64::MAX)
        } else {
            DotSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> DotSet {
        DotSet::EMPTY.with(i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> DotSet {
        indices.into_iter().fold(DotSet::EMPTY, DotSet::with)
    }

    pub fn contains(self, i: usize) -> bool {
        debug_assert!(i < 64);
        self.0 & (1u64 << i) != 0
    }

    #[must_use]
    pub fn with(self, i: usize) -> DotSet {
        assert!(i < 64, "dot index {i} out of bitset range");
        DotSet(self.0 | (1u64 << i))
    }

    #[must_use]
    pub fn without(self, i: usize) -> DotSet {
        debug_assert!(i < 64);
        DotSet(self.0 & !(1u64 << i))
    }

    pub fn union(self, other: DotSet) -> DotSet {
        DotSet(self.0 | other.0)
    }

    pub fn intersection(self, other: DotSet) -> DotSet {
        DotSet(self.0 & other.0)
    }

    pub fn minus(self, other: DotSet) -> DotSet {
        DotSet(self.0 & !other.0)
    }

    /// Complement inside `{0, …, n-1}`.
    pub fn complement_in(self, n: usize) -> DotSet {
        DotSet::full(n).minus(self)
    }

    pub fn is_subset_of(self, other: DotSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn bits(self) -> u64 {
        self.0
    }
}

impl FromIterator<usize> for DotSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> DotSet {
        DotSet::from_indices(iter)
    }
}

impl fmt::Debug for DotSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (pos, i) in self.iter().enumerate() {
            if pos > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}
