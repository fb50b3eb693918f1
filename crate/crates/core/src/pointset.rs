//! Subsets of a finite carrier as bitmasks.
//!
//! Every carrier in this crate is an ordered list of at most [`MAX_POINTS`]
//! points, so a subset fits in one machine word. Bit `i` stands for the
//! point at index `i` of the declared point order.

use std::cmp::Ordering;
use std::ops::{BitAnd, BitOr, Not, Sub};

/// Hard cap on carrier size. Keeps full open-set lattices (up to `2^n`
/// subsets) and the `2^n` scans that build them affordable.
pub const MAX_POINTS: usize = 20;

/// A subset of an indexed carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PointSet(pub u64);

pub const EMPTY: PointSet = PointSet(0);

impl PointSet {
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= 64);
        if n == 64 {
            PointSet(!0)
        } else {
            PointSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        PointSet(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut mask = 0u64;
        for i in indices {
            mask |= 1u64 << i;
        }
        PointSet(mask)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << i);
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: PointSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: PointSet) -> bool {
        self.0 & other.0 != 0
    }

    /// Members in ascending index order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// Canonical order on subsets of one carrier: first by cardinality, then
    /// lexicographically on the ascending member list. This is the order all
    /// serialized open-set lists use.
    pub fn canonical_cmp(self, other: PointSet) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 >> diff.trailing_zeros() & 1 == 1 {
                // The smallest differing index belongs to `self`, so `self`
                // comes first in member-list order.
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl BitOr for PointSet {
    type Output = PointSet;
    fn bitor(self, rhs: PointSet) -> PointSet {
        PointSet(self.0 | rhs.0)
    }
}

impl BitAnd for PointSet {
    type Output = PointSet;
    fn bitand(self, rhs: PointSet) -> PointSet {
        PointSet(self.0 & rhs.0)
    }
}

impl Sub for PointSet {
    type Output = PointSet;
    fn sub(self, rhs: PointSet) -> PointSet {
        PointSet(self.0 & !rhs.0)
    }
}

impl Not for PointSet {
    type Output = PointSet;
    /// Complement within a 64-bit universe; mask with `full(n)` afterwards.
    fn not(self) -> PointSet {
        PointSet(!self.0)
    }
}
