use std::cmp::Ordering;
use std::fmt;

/// A subset of `{1, ..., 64}` stored as a bit mask.
///
/// Ordering is lexicographic on the ascending element lists, so `{1,4}` sorts
/// before `{2}` and `{1}` before `{1,2}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct IntSet(u64);

pub const MAX_ELEMENT: usize = 64;

impl IntSet {
    pub const EMPTY: IntSet = IntSet(0);

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ELEMENT);
        if n == 64 {
            IntSet(u64::MAX)
        } else {
            IntSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        debug_assert!((1..=MAX_ELEMENT).contains(&v));
        IntSet(1u64 << (v - 1))
    }

    /// Builds a set, returning `None` if an element is outside `1..=64`.
    pub fn try_from_iter<I: IntoIterator<Item = usize>>(items: I) -> Option<Self> {
        let mut bits = 0u64;
        for v in items {
            if !(1..=MAX_ELEMENT).contains(&v) {
                return None;
            }
            bits |= 1u64 << (v - 1);
        }
        Some(IntSet(bits))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_ELEMENT).contains(&v) && self.0 & (1u64 << (v - 1)) != 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    pub fn union(self, other: IntSet) -> IntSet {
        IntSet(self.0 | other.0)
    }

    pub fn intersection(self, other: IntSet) -> IntSet {
        IntSet(self.0 & other.0)
    }

    pub fn difference(self, other: IntSet) -> IntSet {
        IntSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: IntSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: IntSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Elements in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let v = bits.trailing_zeros() as usize + 1;
            bits &= bits - 1;
            Some(v)
        })
    }

    /// Position of `v` among the elements (0-based), if present.
    pub fn position(self, v: usize) -> Option<usize> {
        self.contains(v)
            .then(|| (self.0 & ((1u64 << (v - 1)) - 1)).count_ones() as usize)
    }

    /// The `idx`-th smallest element (0-based).
    pub fn nth(self, idx: usize) -> Option<usize> {
        self.iter().nth(idx)
    }
}

impl FromIterator<usize> for IntSet {
    /// Panics on elements outside `1..=64`; use [`IntSet::try_from_iter`]
    /// for untrusted input.
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        IntSet::try_from_iter(iter).expect("element outside 1..=64")
    }
}

impl Ord for IntSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for IntSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basics() {
        let s: IntSet = [4, 1, 6].into_iter().collect();
        assert_eq!(s.to_string(), "{1,4,6}");
        assert_eq!((s.min(), s.max(), s.len()), (Some(1), Some(6), 3));
        assert_eq!(s.position(4), Some(1));
        assert_eq!(s.position(5), None);
        assert_eq!(s.nth(2), Some(6));
        assert_eq!(IntSet::full(3).to_string(), "{1,2,3}");
        assert_eq!(IntSet::full(64).len(), 64);
        assert!(IntSet::try_from_iter([0]).is_none());
        assert!(IntSet::try_from_iter([65]).is_none());
    }

    #[test]
    fn lexicographic_order() {
        let a: IntSet = [1, 4].into_iter().collect();
        let b: IntSet = [2].into_iter().collect();
        let c: IntSet = [1].into_iter().collect();
        assert!(a < b);
        assert!(c < a);
    }

    proptest! {
        #[test]
        fn order_matches_sorted_vectors(a in prop::collection::btree_set(1usize..=64, 0..8),
                                        b in prop::collection::btree_set(1usize..=64, 0..8)) {
            let sa: IntSet = a.iter().copied().collect();
            let sb: IntSet = b.iter().copied().collect();
            let va: Vec<usize> = a.into_iter().collect();
            let vb: Vec<usize> = b.into_iter().collect();
            prop_assert_eq!(sa.cmp(&sb), va.cmp(&vb));
            prop_assert_eq!(sa.iter().collect::<Vec<_>>(), va);
        }
    }
}
