//! Bitmask sets of edge ids.

use std::fmt;

/// Identifier of an edge. Ids are small integers assigned in insertion
/// order and survive minor operations unchanged.
pub type EdgeId = usize;

/// Identifier of a vertex.
pub type VertexId = usize;

/// Largest number of distinct edge ids an [`EdgeSet`] can hold.
pub const MAX_EDGES: usize = 64;

/// A set of edge ids backed by a single `u64`.
#[derive(Copy, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet(u64);

impl EdgeSet {
    pub const fn empty() -> Self {
        EdgeSet(0)
    }

    pub const fn from_bits(bits: u64) -> Self {
        EdgeSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{0, 1, ..., n-1}`.
    pub fn prefix(n: usize) -> Self {
        assert!(n <= MAX_EDGES, "edge set limited to {MAX_EDGES} ids");
        if n == MAX_EDGES {
            EdgeSet(u64::MAX)
        } else {
            EdgeSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(e: EdgeId) -> Self {
        EdgeSet::empty().with(e)
    }

    pub fn contains(self, e: EdgeId) -> bool {
        e < MAX_EDGES && self.0 & (1 << e) != 0
    }

    pub fn insert(&mut self, e: EdgeId) {
        assert!(e < MAX_EDGES, "edge id {e} exceeds {MAX_EDGES}");
        self.0 |= 1 << e;
    }

    pub fn remove(&mut self, e: EdgeId) {
        if e < MAX_EDGES {
            self.0 &= !(1 << e);
        }
    }

    #[must_use]
    pub fn with(mut self, e: EdgeId) -> Self {
        self.insert(e);
        self
    }

    #[must_use]
    pub fn without(mut self, e: EdgeId) -> Self {
        self.remove(e);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        EdgeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        EdgeSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        EdgeSet(self.0 & !other.0)
    }

    pub fn symmetric_difference(self, other: Self) -> Self {
        EdgeSet(self.0 ^ other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Highest id in the set.
    pub fn max(self) -> Option<EdgeId> {
        if self.0 == 0 {
            None
        } else {
            Some(63 - self.0.leading_zeros() as usize)
        }
    }

    pub fn min(self) -> Option<EdgeId> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// Every subset of `self`, starting with the empty set.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }

    /// Number of subsets of `self`, i.e. `2^len`.
    pub fn subset_count(self) -> u64 {
        1u64 << self.len()
    }

    /// Maps the bits of `index` onto the members of `self` in increasing
    /// order, so that `0..subset_count()` enumerates all subsets.
    pub fn subset_by_index(self, index: u64) -> EdgeSet {
        let mut out = 0u64;
        let mut rest = self.0;
        let mut i = index;
        while rest != 0 && i != 0 {
            let low = rest & rest.wrapping_neg();
            if i & 1 == 1 {
                out |= low;
            }
            rest ^= low;
            i >>= 1;
        }
        EdgeSet(out)
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<EdgeId> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = EdgeId>>(iter: I) -> Self {
        let mut s = EdgeSet::empty();
        for e in iter {
            s.insert(e);
        }
        s
    }
}

impl IntoIterator for EdgeSet {
    type Item = EdgeId;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = EdgeId;

    fn next(&mut self) -> Option<EdgeId> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = EdgeSet;

    fn next(&mut self) -> Option<EdgeSet> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            Some(cur.wrapping_sub(self.mask) & self.mask)
        };
        Some(EdgeSet(cur))
    }
}
