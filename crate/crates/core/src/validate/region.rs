//! Region sets as bitmasks, rotation orbits, and membership sets over them.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegionError {
    #[error("the {0} set has no rotation orbit of size n")]
    Trivial(&'static str),
}

/// Interior set of a region: bit `j` set means inside curve `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RegionSet(pub u32);

impl RegionSet {
    pub const EMPTY: RegionSet = RegionSet(0);

    pub fn full(n: usize) -> RegionSet {
        RegionSet(full_mask(n))
    }

    pub fn from_curves(curves: impl IntoIterator<Item = u8>) -> RegionSet {
        RegionSet(curves.into_iter().fold(0, |m, c| m | 1 << c))
    }

    #[inline]
    pub fn mask(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn cardinality(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub fn contains(self, curve: u8) -> bool {
        self.0 >> curve & 1 == 1
    }

    #[inline]
    pub fn with(self, curve: u8) -> RegionSet {
        RegionSet(self.0 | 1 << curve)
    }

    pub fn curves(self) -> impl Iterator<Item = u8> {
        (0..32u8).filter(move |&c| self.contains(c))
    }

    /// Relabels curve `c` as `c + by (mod n)`.
    #[inline]
    pub fn rotate(self, by: u32, n: usize) -> RegionSet {
        RegionSet(rotate_mask(self.0, by % n as u32, n))
    }

    /// Smallest mask among the `n` cyclic relabelings.
    pub fn rotation_canonical(self, n: usize) -> Result<RegionSet, RegionError> {
        if self.0 == 0 {
            return Err(RegionError::Trivial("empty"));
        }
        if self.0 == full_mask(n) {
            return Err(RegionError::Trivial("full"));
        }
        Ok(RegionSet(min_rotation(self.0, n)))
    }

    /// `n` characters, leftmost for curve 0.
    pub fn bitstring(self, n: usize) -> String {
        (0..n as u8).map(|c| if self.contains(c) { '1' } else { '0' }).collect()
    }

    pub fn hamming(self, other: RegionSet) -> u32 {
        (self.0 ^ other.0).count_ones()
    }
}

impl fmt::Display for RegionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.curves().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

/// Whether `labels` are pairwise distinct (labels below 64).
pub(crate) fn all_distinct(labels: &[u8]) -> bool {
    let mut seen = 0u64;
    for &c in labels {
        if seen >> c & 1 == 1 {
            return false;
        }
        seen |= 1 << c;
    }
    true
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

#[inline]
fn rotate_mask(mask: u32, by: u32, n: usize) -> u32 {
    if by == 0 {
        return mask;
    }
    ((mask << by) | (mask >> (n as u32 - by))) & full_mask(n)
}

#[inline]
fn min_rotation(mask: u32, n: usize) -> u32 {
    (1..n as u32).fold(mask, |best, k| best.min(rotate_mask(mask, k, n)))
}

/// Membership over `n`-bit masks: a dense bitmap for moderate `n`, a hash set beyond.
#[derive(Debug, Clone)]
pub enum MaskSet {
    Dense { bits: Vec<u64>, len: usize },
    Sparse(HashSet<u32>),
}

const DENSE_LIMIT: usize = 25;

impl MaskSet {
    pub fn new(n: usize) -> MaskSet {
        if n <= DENSE_LIMIT {
            MaskSet::Dense {
                bits: vec![0; (1usize << n).div_ceil(64)],
                len: 0,
            }
        } else {
            MaskSet::Sparse(HashSet::new())
        }
    }

    /// Returns `false` when the mask was already present.
    #[inline]
    pub fn insert(&mut self, mask: u32) -> bool {
        match self {
            MaskSet::Dense { bits, len } => {
                let (w, b) = (mask as usize / 64, mask % 64);
                let fresh = bits[w] >> b & 1 == 0;
                bits[w] |= 1 << b;
                *len += fresh as usize;
                fresh
            }
            MaskSet::Sparse(set) => set.insert(mask),
        }
    }

    #[inline]
    pub fn remove(&mut self, mask: u32) {
        match self {
            MaskSet::Dense { bits, len } => {
                let (w, b) = (mask as usize / 64, mask % 64);
                *len -= (bits[w] >> b & 1) as usize;
                bits[w] &= !(1 << b);
            }
            MaskSet::Sparse(set) => {
                set.remove(&mask);
            }
        }
    }

    #[inline]
    pub fn contains(&self, mask: u32) -> bool {
        match self {
            MaskSet::Dense { bits, .. } => bits[mask as usize / 64] >> (mask % 64) & 1 == 1,
            MaskSet::Sparse(set) => set.contains(&mask),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            MaskSet::Dense { len, .. } => *len,
            MaskSet::Sparse(set) => set.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

const TABLE_LIMIT: usize = 20;

/// Distinct rotation orbits seen so far.
///
/// Assumes labels in which the rotation acts as `c -> c + 1 (mod n)`.
#[derive(Debug, Clone)]
pub struct OrbitCensus {
    n: usize,
    seen: MaskSet,
    canonical: Option<Vec<u32>>,
}

impl OrbitCensus {
    pub fn new(n: usize) -> OrbitCensus {
        let canonical = (n <= TABLE_LIMIT).then(|| (0..1u32 << n).map(|m| min_rotation(m, n)).collect());
        OrbitCensus {
            n,
            seen: MaskSet::new(n),
            canonical,
        }
    }

    #[inline]
    pub fn canonical(&self, set: RegionSet) -> u32 {
        match &self.canonical {
            Some(table) => table[set.0 as usize],
            None => min_rotation(set.0, self.n),
        }
    }

    /// Records the orbit of `set`; `false` if the orbit was already present.
    #[inline]
    pub fn insert(&mut self, set: RegionSet) -> bool {
        let c = self.canonical(set);
        self.seen.insert(c)
    }

    /// Forgets the orbit of `set` (used when backtracking).
    #[inline]
    pub fn remove(&mut self, set: RegionSet) {
        let c = self.canonical(set);
        self.seen.remove(c);
    }

    pub fn len(&self) -> usize {
        self.seen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seen.is_empty()
    }
}
