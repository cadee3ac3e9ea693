use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use serde::{Serialize, Serializer};

/// A subset of a universe of at most 64 elements, stored as a membership word.
///
/// The set remembers the size of its universe so that complement is
/// well-defined. Mixing sets from universes of different sizes is a logic
/// error and is caught by debug assertions.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ElementSet {
    bits: u64,
    size: u8,
}

#[inline]
fn mask(size: usize) -> u64 {
    if size >= 64 {
        u64::MAX
    } else {
        (1u64 << size) - 1
    }
}

impl ElementSet {
    pub fn empty(size: usize) -> Self {
        debug_assert!(size <= 64);
        ElementSet {
            bits: 0,
            size: size as u8,
        }
    }

    pub fn full(size: usize) -> Self {
        ElementSet {
            bits: mask(size),
            size: size as u8,
        }
    }

    /// Builds a set from a raw membership word; bits above `size` are dropped.
    pub fn from_bits(size: usize, bits: u64) -> Self {
        ElementSet {
            bits: bits & mask(size),
            size: size as u8,
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(size: usize, indices: I) -> Self {
        let mut set = ElementSet::empty(size);
        for i in indices {
            set.insert(i);
        }
        set
    }

    /// Every subset of a universe of `size` elements, in increasing word order.
    pub fn all_subsets(size: usize) -> impl Iterator<Item = ElementSet> {
        assert!(size < 64, "powerset of {size} elements is not enumerable");
        (0..1u64 << size).map(move |bits| ElementSet {
            bits,
            size: size as u8,
        })
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn universe_size(self) -> usize {
        self.size as usize
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.universe_size(), "index {i} outside universe");
        self.bits |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        if i < 64 {
            self.bits &= !(1 << i);
        }
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.bits & (1 << i) != 0
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn is_full(self) -> bool {
        self.bits == mask(self.universe_size())
    }

    #[inline]
    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        debug_assert_eq!(self.size, other.size);
        ElementSet {
            bits: self.bits | other.bits,
            size: self.size,
        }
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        debug_assert_eq!(self.size, other.size);
        ElementSet {
            bits: self.bits & other.bits,
            size: self.size,
        }
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        debug_assert_eq!(self.size, other.size);
        ElementSet {
            bits: self.bits & !other.bits,
            size: self.size,
        }
    }

    /// `U \ self`.
    #[inline]
    pub fn complement(self) -> Self {
        ElementSet {
            bits: !self.bits & mask(self.universe_size()),
            size: self.size,
        }
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        debug_assert_eq!(self.size, other.size);
        self.bits & !other.bits == 0
    }

    #[inline]
    pub fn is_superset(self, other: Self) -> bool {
        other.is_subset(self)
    }

    #[inline]
    pub fn is_strict_subset(self, other: Self) -> bool {
        self.is_subset(other) && self.bits != other.bits
    }

    #[inline]
    pub fn intersects(self, other: Self) -> bool {
        debug_assert_eq!(self.size, other.size);
        self.bits & other.bits != 0
    }

    /// Member indices in increasing order.
    pub fn iter(self) -> Members {
        Members { bits: self.bits }
    }
}

/// Iterator over the member indices of an [`ElementSet`].
#[derive(Clone)]
pub struct Members {
    bits: u64,
}

impl Iterator for Members {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.bits == 0 {
            return None;
        }
        let i = self.bits.trailing_zeros() as usize;
        self.bits &= self.bits - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.bits.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

impl IntoIterator for ElementSet {
    type Item = usize;
    type IntoIter = Members;

    fn into_iter(self) -> Members {
        self.iter()
    }
}

/// Canonical order: by cardinality, then lexicographically by the sorted list
/// of member indices.
impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size
            .cmp(&other.size)
            .then_with(|| self.len().cmp(&other.len()))
            .then_with(|| {
                let diff = self.bits ^ other.bits;
                if diff == 0 {
                    Ordering::Equal
                } else if self.bits & (diff & diff.wrapping_neg()) != 0 {
                    // self owns the smallest index where the two differ
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            })
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl BitOr for ElementSet {
    type Output = ElementSet;
    fn bitor(self, rhs: Self) -> Self {
        self.union(rhs)
    }
}

impl BitAnd for ElementSet {
    type Output = ElementSet;
    fn bitand(self, rhs: Self) -> Self {
        self.intersection(rhs)
    }
}

impl Sub for ElementSet {
    type Output = ElementSet;
    fn sub(self, rhs: Self) -> Self {
        self.difference(rhs)
    }
}

impl Not for ElementSet {
    type Output = ElementSet;
    fn not(self) -> Self {
        self.complement()
    }
}

/// Serializes as the list of member indices.
impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(size: usize, members: &[usize]) -> ElementSet {
        ElementSet::from_indices(size, members.iter().copied())
    }

    #[test]
    fn complement_examples() {
        // U = {a,b,c,d}, X = {a,c,d}
        assert_eq!(set(4, &[0, 2, 3]).complement(), set(4, &[1]));
        assert_eq!(ElementSet::empty(4).complement(), ElementSet::full(4));
        assert_eq!(ElementSet::full(4).complement(), ElementSet::empty(4));
    }

    #[test]
    fn full_word_universe() {
        let u = ElementSet::full(64);
        assert_eq!(u.len(), 64);
        assert!(u.complement().is_empty());
        assert!(u.is_full());
    }

    #[test]
    fn canonical_order() {
        let mut sets = vec![
            set(4, &[0, 2]),
            set(4, &[0, 1]),
            set(4, &[2]),
            ElementSet::empty(4),
            set(4, &[1, 2, 3]),
            set(4, &[0]),
        ];
        sets.sort();
        assert_eq!(
            sets,
            vec![
                ElementSet::empty(4),
                set(4, &[0]),
                set(4, &[2]),
                set(4, &[0, 1]),
                set(4, &[0, 2]),
                set(4, &[1, 2, 3]),
            ]
        );
    }

    #[test]
    fn laws_hold_exhaustively_up_to_four() {
        for n in 1..=4 {
            let u = ElementSet::full(n);
            let e = ElementSet::empty(n);
            for x in ElementSet::all_subsets(n) {
                assert_eq!(x.complement().complement(), x);
                assert!(x.is_subset(u));
                assert!(e.is_subset(x));
                for y in ElementSet::all_subsets(n) {
                    assert_eq!((x | y).complement(), x.complement() & y.complement());
                    assert_eq!((x & y).complement(), x.complement() | y.complement());
                }
            }
        }
    }

    fn sized_set() -> impl Strategy<Value = (ElementSet, ElementSet)> {
        (1usize..=64, any::<u64>(), any::<u64>())
            .prop_map(|(n, a, b)| (ElementSet::from_bits(n, a), ElementSet::from_bits(n, b)))
    }

    proptest! {
        #[test]
        fn de_morgan((x, y) in sized_set()) {
            prop_assert_eq!(!(x | y), !x & !y);
            prop_assert_eq!(!(x & y), !x | !y);
        }

        #[test]
        fn subset_agrees_with_members((x, y) in sized_set()) {
            let by_members = x.iter().all(|i| y.contains(i));
            prop_assert_eq!(x.is_subset(y), by_members);
            prop_assert_eq!(x.intersects(y), x.iter().any(|i| y.contains(i)));
        }

        #[test]
        fn order_matches_sorted_index_lists((x, y) in sized_set()) {
            let xs: Vec<usize> = x.iter().collect();
            let ys: Vec<usize> = y.iter().collect();
            let expected = xs.len().cmp(&ys.len()).then_with(|| xs.cmp(&ys));
            prop_assert_eq!(x.cmp(&y), expected);
        }
    }
}
