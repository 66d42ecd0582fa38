//! Minimum chain partitions of finite posets via bipartite matching.

use serde::{Deserialize, Serialize};

use crate::family::{Family, SubsetMask};

/// A partition of a family into chains, each listed bottom-up, together with an
/// antichain of the same size certifying that no smaller partition exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainDecomposition {
    pub chains: Vec<Vec<SubsetMask>>,
    pub max_antichain: Vec<SubsetMask>,
}

impl ChainDecomposition {
    pub fn chain_count(&self) -> usize {
        self.chains.len()
    }

    /// Every chain strictly increasing, chains disjoint and covering `family`,
    /// certificate an antichain of equal size.
    pub fn is_valid_for(&self, family: &Family) -> bool {
        let chains_ok = self
            .chains
            .iter()
            .all(|c| !c.is_empty() && c.windows(2).all(|w| w[0].is_proper_subset(w[1])));
        let mut all: Vec<SubsetMask> = self.chains.iter().flatten().copied().collect();
        let total = all.len();
        all.sort_by_key(|s| s.canonical_key());
        all.dedup();
        let covers = total == all.len() && all == family.sets();
        let anti = &self.max_antichain;
        let anti_ok = anti.len() == self.chains.len()
            && anti.iter().all(|s| family.contains(*s))
            && anti
                .iter()
                .enumerate()
                .all(|(i, a)| anti[i + 1..].iter().all(|b| !a.is_comparable(*b)));
        chains_ok && covers && anti_ok
    }
}

/// Exact minimum chain partition of `family` under inclusion.
pub fn dilworth_partition(family: &Family) -> ChainDecomposition {
    let sets = family.sets();
    let (chains, anti) = min_chain_cover(sets.len(), |u, v| sets[u].is_proper_subset(sets[v]));
    ChainDecomposition {
        chains: chains
            .into_iter()
            .map(|c| c.into_iter().map(|i| sets[i]).collect())
            .collect(),
        max_antichain: anti.into_iter().map(|i| sets[i]).collect(),
    }
}

/// Minimum chain cover of the strict partial order `less` on `0..n`.
///
/// `less` must be irreflexive and transitive. Returns the chains (each in
/// increasing order, chains sorted by first element) and a maximum antichain.
pub fn min_chain_cover<F: Fn(usize, usize) -> bool>(n: usize, less: F) -> (Vec<Vec<usize>>, Vec<usize>) {
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|u| (0..n).filter(|&v| u != v && less(u, v)).collect())
        .collect();

    // match_right[v] = u means u is followed by v in its chain
    let mut match_right: Vec<Option<usize>> = vec![None; n];
    let mut match_left: Vec<Option<usize>> = vec![None; n];
    for u in 0..n {
        let mut seen = vec![false; n];
        augment(u, &succ, &mut match_right, &mut match_left, &mut seen);
    }

    let mut chains = Vec::new();
    for (start, matched) in match_right.iter().enumerate() {
        if matched.is_some() {
            continue;
        }
        let mut chain = vec![start];
        let mut cur = start;
        while let Some(next) = match_left[cur] {
            chain.push(next);
            cur = next;
        }
        chains.push(chain);
    }

    // König: alternating reachability from unmatched left vertices
    let mut left_reached = vec![false; n];
    let mut right_reached = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&u| match_left[u].is_none()).collect();
    for &u in &stack {
        left_reached[u] = true;
    }
    while let Some(u) = stack.pop() {
        for &v in &succ[u] {
            if right_reached[v] || match_left[u] == Some(v) {
                continue;
            }
            right_reached[v] = true;
            if let Some(w) = match_right[v] {
                if !left_reached[w] {
                    left_reached[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    let antichain: Vec<usize> = (0..n).filter(|&x| left_reached[x] && !right_reached[x]).collect();
    debug_assert_eq!(antichain.len(), chains.len());
    (chains, antichain)
}

fn augment(
    u: usize,
    succ: &[Vec<usize>],
    match_right: &mut [Option<usize>],
    match_left: &mut [Option<usize>],
    seen: &mut [bool],
) -> bool {
    for &v in &succ[u] {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        let free = match match_right[v] {
            None => true,
            Some(w) => augment(w, succ, match_right, match_left, seen),
        };
        if free {
            match_right[v] = Some(u);
            match_left[u] = Some(v);
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_chain() {
        let f = Family::from_lists(2, &[vec![], vec![0], vec![0, 1]]).unwrap();
        let d = dilworth_partition(&f);
        assert_eq!(d.chain_count(), 1);
        assert!(d.is_valid_for(&f));
    }

    #[test]
    fn two_chains_with_certificate() {
        let f = Family::from_lists(3, &[vec![0, 1], vec![1, 2], vec![0, 1, 2]]).unwrap();
        let d = dilworth_partition(&f);
        assert_eq!(d.chain_count(), 2);
        assert_eq!(
            d.max_antichain,
            vec![SubsetMask::from_elements([0, 1]), SubsetMask::from_elements([1, 2])]
        );
        assert!(d.is_valid_for(&f));
    }

    #[test]
    fn empty_family() {
        let f = Family::from_lists::<Vec<u32>>(3, &[]).unwrap();
        let d = dilworth_partition(&f);
        assert_eq!(d.chain_count(), 0);
        assert!(d.is_valid_for(&f));
    }

    #[test]
    fn antichain_needs_one_chain_each() {
        let f = Family::from_lists(4, &[vec![0], vec![1], vec![2], vec![3]]).unwrap();
        let d = dilworth_partition(&f);
        assert_eq!(d.chain_count(), 4);
        assert!(d.is_valid_for(&f));
    }
}
