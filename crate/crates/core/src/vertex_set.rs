use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported vertex label.
pub const MAX_VERTICES: usize = 64;

/// A set of vertices drawn from `1..=64`, stored as a bitmask (vertex `v` is bit `v - 1`).
///
/// The derived order is *not* the integer order of the mask: sets compare
/// lexicographically by their sorted element lists, which is the canonical
/// key used for cells. The integer order of the masks is the revlex order on
/// subsets, see [`VertexSet::revlex_cmp`].
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(v: usize) -> Self {
        debug_assert!((1..=MAX_VERTICES).contains(&v));
        VertexSet(1u64 << (v - 1))
    }

    /// All vertices `1..=n`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    /// Vertices strictly greater than `k`, up to 64.
    pub fn above(k: usize) -> Self {
        if k >= MAX_VERTICES {
            VertexSet(0)
        } else {
            VertexSet(u64::MAX << k)
        }
    }

    /// Vertices in the closed interval `lo..=hi`.
    pub fn range(lo: usize, hi: usize) -> Self {
        if lo > hi {
            return VertexSet::EMPTY;
        }
        VertexSet::full(hi).difference(VertexSet::full(lo - 1))
    }

    pub fn try_from_vertices(vertices: &[usize], n: usize) -> Result<Self> {
        let mut set = VertexSet::EMPTY;
        for &v in vertices {
            if v == 0 || v > n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            set.insert(v);
        }
        Ok(set)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, v: usize) -> bool {
        v >= 1 && v <= MAX_VERTICES && self.0 & (1u64 << (v - 1)) != 0
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << (v - 1);
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << (v - 1));
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | (1u64 << (v - 1)))
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << (v - 1)))
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn min_vertex(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn max_vertex(self) -> Option<usize> {
        (self.0 != 0).then(|| MAX_VERTICES - self.0.leading_zeros() as usize)
    }

    /// Elements in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize + 1;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// The `k`-th smallest element, 1-based.
    pub fn nth_smallest(self, k: usize) -> Option<usize> {
        self.iter().nth(k.checked_sub(1)?)
    }

    /// Revlex order on subsets: `F < G` iff the largest element of the
    /// symmetric difference lies in `G`. This coincides with the integer
    /// order of the bitmasks.
    pub fn revlex_cmp(self, other: Self) -> Ordering {
        self.0.cmp(&other.0)
    }

    /// All subsets of `self`, in increasing revlex order (starting with the empty set).
    pub fn subsets(self) -> impl Iterator<Item = VertexSet> {
        let mask = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some((cur | !mask).wrapping_add(1) & mask)
            };
            Some(VertexSet(cur))
        })
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        // lowest element on which the sorted lists first differ
        let p = diff.trailing_zeros();
        let higher = |bits: u64| p < 63 && bits >> (p + 1) != 0;
        if self.0 & (1u64 << p) != 0 {
            // self has p, other continues with something larger or ends
            if higher(other.0) {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        } else if higher(self.0) {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = VertexSet::EMPTY;
        for v in iter {
            set.insert(v);
        }
        set
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let vertices = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&bad) = vertices.iter().find(|&&v| v == 0 || v > MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!(
                "vertex {bad} outside 1..={MAX_VERTICES}"
            )));
        }
        Ok(vertices.into_iter().collect())
    }
}
