use alloc::vec::Vec;
use core::fmt;

/// A set of share indices, stored 0-based as a bitmask. Displayed 1-based.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShareSet(pub u64);

pub const MAX_SHARES: usize = 64;

impl ShareSet {
    pub const EMPTY: ShareSet = ShareSet(0);

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            ShareSet(u64::MAX)
        } else {
            ShareSet((1u64 << n) - 1)
        }
    }

    /// `{1, .., t}`
    pub fn prefix(t: usize) -> Self {
        Self::full(t)
    }

    pub fn from_zero_based(idx: &[usize]) -> Self {
        ShareSet(idx.iter().fold(0, |acc, &i| acc | (1 << i)))
    }

    /// Panics on index 0.
    pub fn from_one_based(idx: &[usize]) -> Self {
        ShareSet(idx.iter().fold(0, |acc, &i| {
            assert!(i >= 1, "share indices are 1-based");
            acc | (1 << (i - 1))
        }))
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn complement(self, n: usize) -> Self {
        ShareSet(!self.0 & Self::full(n).0)
    }

    pub fn union(self, other: Self) -> Self {
        ShareSet(self.0 | other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn max_index(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    /// 0-based members in increasing order.
    pub fn indices(self) -> Vec<usize> {
        (0..64).filter(|&i| self.contains(i)).collect()
    }

    pub fn one_based(self) -> Vec<usize> {
        self.indices().into_iter().map(|i| i + 1).collect()
    }

    /// All `2^n` subsets of `{1..n}`, ordered by bitmask.
    pub fn all(n: usize) -> impl Iterator<Item = ShareSet> {
        assert!(n < 64);
        (0..1u64 << n).map(ShareSet)
    }

    /// All subsets of `self`.
    pub fn subsets(self) -> impl Iterator<Item = ShareSet> {
        let mask = self.0;
        let mut cur = Some(0u64);
        core::iter::from_fn(move || {
            let c = cur?;
            cur = if c == mask { None } else { Some(((c | !mask).wrapping_add(1)) & mask) };
            Some(ShareSet(c))
        })
    }
}

impl fmt::Debug for ShareSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ShareSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.one_based().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}
