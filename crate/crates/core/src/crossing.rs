//! Crossing graphs, pairwise-crossing witnesses, and the uniform-family bound.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::family::{Family, GroundSet, Mode, SubsetMask};
use crate::graph::SimpleGraph;

/// The graph on a family whose edges join (weakly) crossing members.
/// Vertex `i` is the `i`-th member in canonical order.
#[derive(Clone, Debug)]
pub struct CrossingGraph {
    family: Family,
    mode: Mode,
    graph: SimpleGraph,
}

impl CrossingGraph {
    pub fn new(family: &Family, mode: Mode) -> Self {
        let sets = family.sets();
        let ground = family.ground();
        let mut graph = SimpleGraph::new(sets.len());
        for (i, &a) in sets.iter().enumerate() {
            for (j, &b) in sets.iter().enumerate().skip(i + 1) {
                if mode.crosses(a, b, ground) {
                    graph.add_edge(i, j);
                }
            }
        }
        Self {
            family: family.clone(),
            mode,
            graph,
        }
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn witness_from_indices(&self, indices: &[usize]) -> Result<Witness> {
        Witness::new(
            indices.iter().map(|&i| self.family.sets()[i]).collect(),
            self.mode,
            self.family.ground(),
        )
    }

    /// Lexicographically least `k`-clique, as a witness.
    pub fn find_witness(&self, k: usize) -> Option<Witness> {
        self.find_witness_within(k, &BitSet::full(self.family.len()))
    }

    pub fn find_witness_within(&self, k: usize, within: &BitSet) -> Option<Witness> {
        let idx = self.graph.lex_least_clique_within(k, within)?;
        Some(
            self.witness_from_indices(&idx)
                .expect("clique search returns pairwise crossing members"),
        )
    }
}

/// `k` members that pairwise cross under `mode`. Checked on construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    mode: Mode,
    sets: Vec<SubsetMask>,
}

impl Witness {
    pub fn new(sets: Vec<SubsetMask>, mode: Mode, ground: GroundSet) -> Result<Self> {
        for (i, &a) in sets.iter().enumerate() {
            for &b in &sets[i + 1..] {
                if !mode.crosses(a, b, ground) {
                    return Err(Error::InvalidArgument(format!(
                        "{{{a}}} and {{{b}}} do not cross in {mode} mode"
                    )));
                }
            }
        }
        Ok(Self { mode, sets })
    }

    pub fn sets(&self) -> &[SubsetMask] {
        &self.sets
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Re-checks the pairwise relation against `ground`.
    pub fn verify(&self, ground: GroundSet) -> bool {
        Witness::new(self.sets.clone(), self.mode, ground).is_ok()
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.sets.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{{{s}}}")?;
        }
        Ok(())
    }
}

/// `k` pairwise crossing members of `family`, the lexicographically least under
/// canonical order, or `None` if the family is `k`-cross-free in `mode`.
pub fn find_pairwise_crossing_witness(family: &Family, k: usize, mode: Mode) -> Option<Witness> {
    assert!(k >= 2, "witness size must be at least 2");
    CrossingGraph::new(family, mode).find_witness(k)
}

pub fn is_cross_free(family: &Family, k: usize, mode: Mode) -> bool {
    find_pairwise_crossing_witness(family, k, mode).is_none()
}

/// A nonnegative rational kept in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0);
        let g = gcd(num, den);
        Self {
            num: num / g,
            den: den / g,
        }
    }

    /// `value < self`
    pub fn exceeded_by(self, value: u64) -> bool {
        value as u128 * self.den as u128 > self.num as u128
    }

    pub fn floor(self) -> u64 {
        self.num / self.den
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformBoundReport {
    pub is_uniform: bool,
    /// Common cardinality, when uniform.
    pub ell: Option<usize>,
    /// `(k-1)·n/ℓ`; absent unless uniform with `ℓ ≥ 1`.
    pub bound: Option<Ratio>,
    pub size: usize,
    pub violates: bool,
}

/// Compares an `ℓ`-uniform family against the `(k-1)·n/ℓ` cap that holds for
/// weakly-`k`-cross-free families.
pub fn uniform_bound_report(family: &Family, k: usize) -> UniformBoundReport {
    let size = family.len();
    let ell = family.sets().first().map(|s| s.len());
    let is_uniform = ell.is_some() && family.iter().all(|s| Some(s.len()) == ell);
    let bound = match ell {
        Some(l) if is_uniform && l > 0 => Some(Ratio::new(
            (k.saturating_sub(1) * family.ground().size()) as u64,
            l as u64,
        )),
        _ => None,
    };
    UniformBoundReport {
        is_uniform,
        ell: ell.filter(|_| is_uniform),
        bound,
        size,
        violates: bound.is_some_and(|b| b.exceeded_by(size as u64)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: usize, lists: &[&[u32]]) -> Family {
        Family::from_lists(n, lists).unwrap()
    }

    #[test]
    fn octahedron_pattern() {
        // all 2-sets of a 4-set; strict edges join 2-sets sharing exactly one element
        let f = fam(4, &[&[0, 1], &[0, 2], &[0, 3], &[1, 2], &[1, 3], &[2, 3]]);
        let cg = CrossingGraph::new(&f, Mode::Strict);
        let g = cg.graph();
        for u in 0..6 {
            assert_eq!(g.degree(u), 4);
            for v in 0..6 {
                let shared = f.sets()[u].intersection(f.sets()[v]).len();
                assert_eq!(g.has_edge(u, v), u != v && shared == 1);
            }
        }
        assert_eq!(g.edge_count(), 12);
    }

    #[test]
    fn no_strict_crossing_at_three() {
        let f = Family::power_set(GroundSet::new(3).unwrap()).unwrap();
        assert_eq!(CrossingGraph::new(&f, Mode::Strict).graph().edge_count(), 0);
        assert!(find_pairwise_crossing_witness(&f, 2, Mode::Strict).is_none());
    }

    #[test]
    fn single_vertex() {
        let f = fam(3, &[&[]]);
        for mode in [Mode::Strict, Mode::Weak] {
            let cg = CrossingGraph::new(&f, mode);
            assert_eq!(cg.graph().vertex_count(), 1);
            assert_eq!(cg.graph().edge_count(), 0);
        }
    }

    #[test]
    fn witness_examples() {
        let f = fam(4, &[&[0, 1], &[1, 2], &[0, 2]]);
        let w = find_pairwise_crossing_witness(&f, 3, Mode::Strict).unwrap();
        assert_eq!(w.sets(), f.sets());

        let f = fam(3, &[&[0, 1], &[1, 2], &[0, 2]]);
        assert!(find_pairwise_crossing_witness(&f, 3, Mode::Strict).is_none());
        let w = find_pairwise_crossing_witness(&f, 3, Mode::Weak).unwrap();
        assert_eq!(w.len(), 3);
        assert!(w.verify(f.ground()));
    }

    #[test]
    fn witness_rejects_non_crossing() {
        let g = GroundSet::new(4).unwrap();
        let a = SubsetMask::from_elements([0, 1]);
        let b = SubsetMask::from_elements([2, 3]);
        assert!(Witness::new(vec![a, b], Mode::Weak, g).is_err());
    }

    #[test]
    fn uniform_report_examples() {
        let r = uniform_bound_report(&fam(4, &[&[0, 1], &[2, 3]]), 2);
        assert!(r.is_uniform && !r.violates);
        assert_eq!(r.bound, Some(Ratio::new(2, 1)));
        assert_eq!(r.ell, Some(2));

        let f = fam(4, &[&[0, 1], &[1, 2], &[2, 3]]);
        let r = uniform_bound_report(&f, 2);
        assert!(r.violates);
        assert!(find_pairwise_crossing_witness(&f, 2, Mode::Weak).is_some());

        let r = uniform_bound_report(&fam(4, &[&[0], &[1, 2]]), 2);
        assert!(!r.is_uniform && r.bound.is_none() && !r.violates);
    }

    #[test]
    fn ratio_display() {
        assert_eq!(Ratio::new(4, 2).to_string(), "2");
        assert_eq!(Ratio::new(14, 4).to_string(), "7/2");
    }
}
