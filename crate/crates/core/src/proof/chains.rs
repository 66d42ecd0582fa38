//! Continuous chains and their collections.
//!
//! Chain file format: a family-file header, then one line per chain
//!
//! ```text
//! n 6
//! chain 0,1; 2,3
//! chain -; 4
//! ```
//!
//! where the part before `;` is the base set and the part after lists the added
//! elements in chain order.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::successor::successor_graph;
use crate::error::{parse_err, Error, Result};
use crate::family::text::{data_lines, parse_elements, parse_header, parse_set};
use crate::family::{Family, GroundSet, SubsetMask};

/// `A ⊂ A∪{x1} ⊂ A∪{x1,x2} ⊂ … ⊂ A∪{x1..xh}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Chain {
    pub base: SubsetMask,
    pub added: Vec<u32>,
}

impl Chain {
    pub fn new(base: SubsetMask, added: Vec<u32>) -> Self {
        Self { base, added }
    }

    pub fn h(&self) -> usize {
        self.added.len()
    }

    /// The `h + 1` members, smallest first.
    pub fn members(&self) -> Vec<SubsetMask> {
        let mut out = Vec::with_capacity(self.added.len() + 1);
        let mut cur = self.base;
        out.push(cur);
        for &x in &self.added {
            cur = cur.with(x);
            out.push(cur);
        }
        out
    }

    /// The added elements as a set.
    pub fn support(&self) -> SubsetMask {
        SubsetMask::from_elements(self.added.iter().copied())
    }

    pub fn smallest(&self) -> SubsetMask {
        self.base
    }

    pub fn largest(&self) -> SubsetMask {
        self.base.union(self.support())
    }

    pub fn min_size(&self) -> usize {
        self.base.len()
    }

    pub fn max_size(&self) -> usize {
        self.base.len() + self.added.len()
    }

    /// Position of `x` among the added elements.
    pub fn position(&self, x: u32) -> Option<usize> {
        self.added.iter().position(|&y| y == x)
    }

    /// The largest member not containing `x`, for `x` in the support.
    pub fn below(&self, x: u32) -> Option<SubsetMask> {
        let pos = self.position(x)?;
        Some(self.added[..pos].iter().fold(self.base, |acc, &y| acc.with(y)))
    }

    pub fn contains_member(&self, s: SubsetMask) -> bool {
        self.base.is_subset(s) && s.is_subset(self.largest()) && {
            let extra = s.difference(self.base).len();
            self.added[..extra].iter().all(|&y| s.contains(y))
        }
    }
}

/// Pairwise disjoint continuous chains over one ground set, indexed by position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainCollection {
    ground: GroundSet,
    chains: Vec<Chain>,
}

impl ChainCollection {
    pub fn new(ground: GroundSet, chains: Vec<Chain>) -> Result<Self> {
        let mut seen: HashSet<SubsetMask> = HashSet::new();
        for (i, c) in chains.iter().enumerate() {
            if !ground.contains(c.base) {
                return Err(Error::InvalidArgument(format!("chain {i}: base outside ground set")));
            }
            let mut acc = c.base;
            for &x in &c.added {
                if x as usize >= ground.size() || acc.contains(x) {
                    return Err(Error::InvalidArgument(format!(
                        "chain {i}: added element {x} is outside the ground set or already present"
                    )));
                }
                acc = acc.with(x);
            }
            for m in c.members() {
                if !seen.insert(m) {
                    return Err(Error::InvalidArgument(format!(
                        "chain {i}: member {{{m}}} already belongs to another chain"
                    )));
                }
            }
        }
        Ok(Self { ground, chains })
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn chains(&self) -> &[Chain] {
        &self.chains
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Chain> {
        self.chains.get(i)
    }

    /// Common chain length `h`, if all chains share one.
    pub fn uniform_h(&self) -> Option<usize> {
        let h = self.chains.first()?.h();
        self.chains.iter().all(|c| c.h() == h).then_some(h)
    }

    /// Largest chain length (0 for an empty collection).
    pub fn max_h(&self) -> usize {
        self.chains.iter().map(Chain::h).max().unwrap_or(0)
    }

    /// Union of all members, as a family.
    pub fn member_family(&self) -> Family {
        Family::new(self.ground, self.chains.iter().flat_map(Chain::members)).expect("members lie in the ground set")
    }
}

/// Greedily takes the lexicographically least directed path of length `h` in the
/// successor graph among unused members, until none remains.
pub fn extract_disjoint_chains(family: &Family, h: usize) -> Result<ChainCollection> {
    if h == 0 {
        return Err(Error::InvalidArgument("chain length h must be at least 1".into()));
    }
    let sets = family.sets();
    let g = successor_graph(family);
    let n = sets.len();
    let mut used = vec![false; n];
    let mut chains = Vec::new();
    loop {
        // reach[v] = longest unused path from v, capped at h; edges point to
        // larger canonical indices, so a reverse sweep sees successors first
        let mut reach = vec![0usize; n];
        for v in (0..n).rev() {
            if used[v] {
                continue;
            }
            reach[v] = g.out[v]
                .iter()
                .filter(|&&w| !used[w])
                .map(|&w| reach[w] + 1)
                .max()
                .unwrap_or(0)
                .min(h);
        }
        let Some(start) = (0..n).find(|&v| !used[v] && reach[v] >= h) else {
            break;
        };
        let mut path = vec![start];
        let mut cur = start;
        for remaining in (0..h).rev() {
            cur = *g.out[cur]
                .iter()
                .find(|&&w| !used[w] && reach[w] >= remaining)
                .expect("reach guarantees a continuation");
            path.push(cur);
        }
        for &v in &path {
            used[v] = true;
        }
        let base = sets[path[0]];
        let added = path
            .windows(2)
            .map(|w| {
                sets[w[1]]
                    .difference(sets[w[0]])
                    .elements()
                    .next()
                    .expect("successor adds one element")
            })
            .collect();
        chains.push(Chain::new(base, added));
    }
    ChainCollection::new(family.ground(), chains)
}

pub fn parse_chains(text: &str) -> Result<ChainCollection> {
    let mut lines = data_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header 'n <int>'"))?;
    let ground = parse_header(hline, header)?;
    let mut chains = Vec::new();
    for (line, content) in lines {
        let body = content
            .strip_prefix("chain")
            .filter(|r| r.starts_with(char::is_whitespace))
            .ok_or_else(|| parse_err(line, "expected 'chain <base>; <elements>'"))?;
        let (base, added) = body
            .split_once(';')
            .ok_or_else(|| parse_err(line, "missing ';' between base and added elements"))?;
        let base = parse_set(base, ground, line)?;
        let added = parse_elements(added, ground, line, false)?;
        if let Some(x) = added.iter().find(|&&x| base.contains(x)) {
            return Err(parse_err(line, format!("added element {x} already in base")));
        }
        chains.push(Chain::new(base, added));
    }
    ChainCollection::new(ground, chains).map_err(|e| match e {
        Error::InvalidArgument(m) => parse_err(hline, m),
        other => other,
    })
}

pub fn serialize_chains(cc: &ChainCollection) -> String {
    let mut out = format!("n {}\n", cc.ground().size());
    for c in cc.chains() {
        let added = if c.added.is_empty() {
            "-".to_string()
        } else {
            c.added.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        };
        out.push_str(&format!("chain {}; {}\n", c.base, added));
    }
    out
}
