use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_GROUND: usize = 64;

/// The ground set `{0, .., n-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct GroundSet {
    n: u8,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if !(1..=MAX_GROUND).contains(&n) {
            return Err(Error::GroundSize(n));
        }
        Ok(Self { n: n as u8 })
    }

    #[inline]
    pub fn size(self) -> usize {
        self.n as usize
    }

    /// The whole ground set `X`.
    #[inline]
    pub fn full(self) -> SubsetMask {
        if self.n as usize == MAX_GROUND {
            SubsetMask(u64::MAX)
        } else {
            SubsetMask((1u64 << self.n) - 1)
        }
    }

    #[inline]
    pub fn contains(self, mask: SubsetMask) -> bool {
        mask.0 & !self.full().0 == 0
    }

    #[inline]
    pub fn complement(self, mask: SubsetMask) -> SubsetMask {
        SubsetMask(self.full().0 & !mask.0)
    }

    pub fn elements(self) -> impl Iterator<Item = u32> {
        0..self.n as u32
    }
}

impl TryFrom<usize> for GroundSet {
    type Error = Error;

    fn try_from(n: usize) -> Result<Self> {
        GroundSet::new(n)
    }
}

impl From<GroundSet> for usize {
    fn from(g: GroundSet) -> usize {
        g.size()
    }
}

/// A subset of the ground set, one bit per element.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubsetMask(pub u64);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn from_elements<I: IntoIterator<Item = u32>>(elements: I) -> Self {
        SubsetMask(elements.into_iter().fold(0, |m, e| m | 1u64 << e))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, e: u32) -> bool {
        e < 64 && self.0 >> e & 1 == 1
    }

    #[inline]
    pub fn with(self, e: u32) -> Self {
        SubsetMask(self.0 | 1u64 << e)
    }

    #[inline]
    pub fn without(self, e: u32) -> Self {
        SubsetMask(self.0 & !(1u64 << e))
    }

    #[inline]
    pub fn is_subset(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_proper_subset(self, other: SubsetMask) -> bool {
        self != other && self.is_subset(other)
    }

    #[inline]
    pub fn is_comparable(self, other: SubsetMask) -> bool {
        self.is_subset(other) || other.is_subset(self)
    }

    #[inline]
    pub fn intersects(self, other: SubsetMask) -> bool {
        self.0 & other.0 != 0
    }

    #[inline]
    pub fn union(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    pub fn elements(self) -> impl Iterator<Item = u32> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let e = bits.trailing_zeros();
                bits &= bits - 1;
                Some(e)
            }
        })
    }

    /// Canonical sort key: cardinality, then numeric value.
    #[inline]
    pub fn canonical_key(self) -> (u32, u64) {
        (self.0.count_ones(), self.0)
    }
}

/// Renders as the family-file set syntax: `0,2,5`, or `-` for the empty set.
impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("-");
        }
        let mut first = true;
        for e in self.elements() {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}
