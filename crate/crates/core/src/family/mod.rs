//! Ground sets, subset masks, families, and the pair-relation taxonomy.

mod mask;
pub(crate) mod text;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use mask::{GroundSet, SubsetMask, MAX_GROUND};
pub use text::{parse_family, serialize_family, ParseWarning, ParsedFamily};

/// How two sets sit relative to each other.
///
/// Exactly one kind applies to any pair. `Crossing` and `WeakOnly` together make
/// up the weakly-crossing pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairRelation {
    /// All four Venn regions nonempty.
    Crossing,
    /// `A∩B`, `A\B`, `B\A` nonempty but `A∪B = X`.
    WeakOnly,
    /// One is a proper subset of the other (the empty set is comparable to everything).
    Comparable,
    /// Nonempty and disjoint.
    Disjoint,
    Equal,
}

impl PairRelation {
    pub fn is_weakly_crossing(self) -> bool {
        matches!(self, PairRelation::Crossing | PairRelation::WeakOnly)
    }

    pub fn name(self) -> &'static str {
        match self {
            PairRelation::Crossing => "crossing",
            PairRelation::WeakOnly => "weak_only",
            PairRelation::Comparable => "comparable",
            PairRelation::Disjoint => "disjoint",
            PairRelation::Equal => "equal",
        }
    }
}

impl fmt::Display for PairRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which relation counts as an edge of the crossing graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Strict,
    Weak,
}

impl Mode {
    #[inline]
    pub fn admits(self, rel: PairRelation) -> bool {
        match self {
            Mode::Strict => rel == PairRelation::Crossing,
            Mode::Weak => rel.is_weakly_crossing(),
        }
    }

    /// Bitwise test equivalent to `admits(classify_pair(a, b, ground))`.
    #[inline]
    pub fn crosses(self, a: SubsetMask, b: SubsetMask, ground: GroundSet) -> bool {
        let (a, b) = (a.bits(), b.bits());
        let weak = a & b != 0 && a & !b != 0 && b & !a != 0;
        match self {
            Mode::Weak => weak,
            Mode::Strict => weak && (a | b) != ground.full().bits(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::Strict => "strict",
            Mode::Weak => "weak",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(Mode::Strict),
            "weak" => Ok(Mode::Weak),
            other => Err(Error::InvalidArgument(format!("unknown mode '{other}'"))),
        }
    }
}

pub fn classify_pair(a: SubsetMask, b: SubsetMask, ground: GroundSet) -> PairRelation {
    if a == b {
        PairRelation::Equal
    } else if a.is_comparable(b) {
        PairRelation::Comparable
    } else if !a.intersects(b) {
        PairRelation::Disjoint
    } else if a.union(b) == ground.full() {
        PairRelation::WeakOnly
    } else {
        PairRelation::Crossing
    }
}

/// A set of subsets of one ground set, deduplicated and kept in canonical order
/// (ascending cardinality, ties by numeric value).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Family {
    ground: GroundSet,
    sets: Vec<SubsetMask>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyPredicates {
    pub is_chain: bool,
    pub is_continuous_chain: bool,
    pub is_antichain: bool,
    pub is_intersecting: bool,
    pub is_laminar: bool,
}

impl Family {
    /// Builds a family, silently merging duplicates.
    pub fn new<I: IntoIterator<Item = SubsetMask>>(ground: GroundSet, sets: I) -> Result<Self> {
        let mut sets: Vec<SubsetMask> = sets.into_iter().collect();
        if let Some(bad) = sets.iter().find(|s| !ground.contains(**s)) {
            return Err(Error::OutOfGround {
                mask: bad.bits(),
                n: ground.size(),
            });
        }
        sets.sort_by_key(|s| s.canonical_key());
        sets.dedup();
        Ok(Self { ground, sets })
    }

    pub fn empty(ground: GroundSet) -> Self {
        Self {
            ground,
            sets: Vec::new(),
        }
    }

    /// Convenience constructor from element lists.
    pub fn from_lists<S: AsRef<[u32]>>(n: usize, lists: &[S]) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        if let Some(e) = lists
            .iter()
            .flat_map(|l| l.as_ref().iter().copied())
            .find(|&e| e as usize >= n)
        {
            return Err(Error::InvalidArgument(format!("element {e} ≥ n={n}")));
        }
        Family::new(
            ground,
            lists
                .iter()
                .map(|l| SubsetMask::from_elements(l.as_ref().iter().copied())),
        )
    }

    /// All `2^n` subsets of the ground set.
    pub fn power_set(ground: GroundSet) -> Result<Self> {
        if ground.size() > 20 {
            return Err(Error::InvalidArgument(format!(
                "power set of a {}-element ground set is too large",
                ground.size()
            )));
        }
        Family::new(ground, (0..1u64 << ground.size()).map(SubsetMask))
    }

    #[inline]
    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    #[inline]
    pub fn sets(&self) -> &[SubsetMask] {
        &self.sets
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        self.sets.iter().copied()
    }

    pub fn index_of(&self, mask: SubsetMask) -> Option<usize> {
        self.sets
            .binary_search_by_key(&mask.canonical_key(), |s| s.canonical_key())
            .ok()
    }

    pub fn contains(&self, mask: SubsetMask) -> bool {
        self.index_of(mask).is_some()
    }

    /// The members at the given canonical indices.
    pub fn subfamily<I: IntoIterator<Item = usize>>(&self, indices: I) -> Family {
        Family {
            ground: self.ground,
            sets: {
                let mut v: Vec<SubsetMask> = indices.into_iter().map(|i| self.sets[i]).collect();
                v.sort_by_key(|s| s.canonical_key());
                v.dedup();
                v
            },
        }
    }

    pub fn filter<P: FnMut(SubsetMask) -> bool>(&self, mut keep: P) -> Family {
        Family {
            ground: self.ground,
            sets: self.sets.iter().copied().filter(|s| keep(*s)).collect(),
        }
    }

    pub fn predicates(&self) -> FamilyPredicates {
        let mut p = FamilyPredicates {
            is_chain: true,
            is_continuous_chain: true,
            is_antichain: true,
            is_intersecting: self.sets.iter().all(|s| !s.is_empty()),
            is_laminar: true,
        };
        for (i, &a) in self.sets.iter().enumerate() {
            for &b in &self.sets[i + 1..] {
                let comparable = a.is_comparable(b);
                p.is_chain &= comparable;
                p.is_antichain &= !comparable;
                p.is_intersecting &= a.intersects(b);
                p.is_laminar &= !Mode::Weak.crosses(a, b, self.ground);
            }
        }
        // canonical order lists a chain bottom-up
        p.is_continuous_chain = p.is_chain && self.sets.windows(2).all(|w| w[1].len() == w[0].len() + 1);
        p
    }

    /// `F ∪ {X\A : A ∈ F}`.
    pub fn complement_closure(&self) -> Family {
        let g = self.ground;
        Family::new(g, self.sets.iter().flat_map(|&a| [a, g.complement(a)]))
            .expect("complements stay inside the ground set")
    }

    /// Element lists in canonical order.
    pub fn to_lists(&self) -> Vec<Vec<u32>> {
        self.sets.iter().map(|s| s.elements().collect()).collect()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.sets.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{{{s}}}")?;
        }
        f.write_str("}")
    }
}

#[derive(Serialize, Deserialize)]
struct FamilyRepr {
    n: usize,
    sets: Vec<Vec<u32>>,
}

impl Serialize for Family {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FamilyRepr {
            n: self.ground.size(),
            sets: self.to_lists(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Family {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = FamilyRepr::deserialize(d)?;
        Family::from_lists(repr.n, &repr.sets).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> SubsetMask {
        SubsetMask::from_elements(e.iter().copied())
    }

    fn g(n: usize) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_pair(m(&[0, 1]), m(&[1, 2]), g(4)), PairRelation::Crossing);
        assert_eq!(classify_pair(m(&[0, 1]), m(&[1, 2]), g(3)), PairRelation::WeakOnly);
        assert_eq!(classify_pair(m(&[0, 1]), m(&[0, 1, 2]), g(4)), PairRelation::Comparable);
        assert_eq!(classify_pair(m(&[0]), m(&[1]), g(4)), PairRelation::Disjoint);
        assert_eq!(classify_pair(m(&[]), m(&[1]), g(4)), PairRelation::Comparable);
        assert_eq!(classify_pair(m(&[]), m(&[]), g(4)), PairRelation::Equal);
    }

    #[test]
    fn ground_bounds() {
        assert!(GroundSet::new(0).is_err());
        assert!(GroundSet::new(65).is_err());
        assert_eq!(GroundSet::new(64).unwrap().full().bits(), u64::MAX);
    }

    #[test]
    fn canonical_order_and_dedup() {
        let f = Family::from_lists(3, &[vec![0, 1], vec![2], vec![], vec![0, 1], vec![1]]).unwrap();
        assert_eq!(f.to_lists(), vec![vec![], vec![1], vec![2], vec![0, 1]]);
        assert_eq!(f.index_of(m(&[2])), Some(2));
        assert!(!f.contains(m(&[0])));
    }

    #[test]
    fn predicate_examples() {
        let f = Family::from_lists(2, &[vec![], vec![0], vec![0, 1]]).unwrap();
        let p = f.predicates();
        assert!(p.is_chain && p.is_continuous_chain && !p.is_antichain);
        assert!(!p.is_intersecting && p.is_laminar);

        let f = Family::from_lists(3, &[vec![0], vec![1], vec![2]]).unwrap();
        let p = f.predicates();
        assert!(p.is_antichain && p.is_laminar && !p.is_intersecting);

        let f = Family::from_lists(3, &[vec![0, 1], vec![1, 2]]).unwrap();
        let p = f.predicates();
        assert!(p.is_antichain && p.is_intersecting && !p.is_laminar);
    }

    #[test]
    fn chain_with_gap_is_not_continuous() {
        let f = Family::from_lists(3, &[vec![0], vec![0, 1, 2]]).unwrap();
        let p = f.predicates();
        assert!(p.is_chain && !p.is_continuous_chain);
    }

    #[test]
    fn complement_closure_examples() {
        let f = Family::from_lists(2, &[vec![0]]).unwrap();
        assert_eq!(f.complement_closure().to_lists(), vec![vec![0], vec![1]]);
        let f = Family::from_lists(3, &[vec![], vec![0, 1, 2]]).unwrap();
        assert_eq!(f.complement_closure(), f);
    }

    #[test]
    fn json_shape() {
        let f = Family::from_lists(3, &[vec![0, 1], vec![]]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"n":3,"sets":[[],[0,1]]}"#);
        let back: Family = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }
}
