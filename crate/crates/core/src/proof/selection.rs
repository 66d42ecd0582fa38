//! Filtering a chain collection down to indices satisfying the four conditions
//! C1–C4, and an exhaustive checker for them.
//!
//! * C1: chains sharing an added element `x` have comparable `C_i(x)`.
//! * C2: along each chain, elements are added in `≺`-increasing order.
//! * C3: chains with overlapping supports have separated member sizes.
//! * C4: every member has at least `multiplier · k · h` elements.

use std::collections::BTreeMap;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::chains::ChainCollection;
use super::ordering::Ordering;
use crate::constructions::rng;
use crate::dilworth::min_chain_cover;
use crate::error::{Error, Result};
use crate::graph::{GraphStats, SimpleGraph};

pub const DEFAULT_SIZE_MULTIPLIER: usize = 3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelectionTrace {
    /// Per element `x`: the number of chains in the minimum chain partition of
    /// `{C_i(x) ∪ {x}}`, and the chain indices `i` whose set landed in the drawn chain `D_x`.
    pub dilworth: BTreeMap<u32, DrawnChain>,
    pub ordering: Vec<u32>,
    pub i0: Vec<usize>,
    pub i1: Vec<usize>,
    pub i2: Vec<usize>,
    pub i3: Vec<usize>,
    pub i: Vec<usize>,
    pub conflict_graph: GraphStats,
    pub size_threshold: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrawnChain {
    pub partition_size: usize,
    pub drawn: usize,
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Selection {
    pub indices: Vec<usize>,
    pub ordering: Ordering,
    pub trace: SelectionTrace,
}

/// Runs the four filtering stages with randomness drawn from `seed`:
/// a random Dilworth chain `D_x` per element (C1), a random ordering (C2), a
/// greedy independent set of the size-conflict graph (C3), and the minimum-size
/// filter (C4).
pub fn select_conditioned_chains(
    cc: &ChainCollection,
    k: usize,
    size_multiplier: usize,
    seed: u64,
) -> Result<Selection> {
    let h = cc
        .uniform_h()
        .or(cc.is_empty().then_some(0))
        .ok_or_else(|| Error::InvalidArgument("chains must all have the same length".into()))?;
    let mut rng = rng(seed);
    let chains = cc.chains();
    let i0: Vec<usize> = (0..chains.len()).collect();

    // stage 1
    let mut dilworth = BTreeMap::new();
    let mut in_drawn = vec![vec![]; cc.ground().size()];
    for x in cc.ground().elements() {
        let items: Vec<(usize, _)> = i0
            .iter()
            .filter_map(|&i| chains[i].below(x).map(|b| (i, b.with(x))))
            .collect();
        if items.is_empty() {
            continue;
        }
        let (parts, _) = min_chain_cover(items.len(), |a, b| items[a].1.is_proper_subset(items[b].1));
        let drawn = rng.random_range(0..parts.len());
        let mut members: Vec<usize> = parts[drawn].iter().map(|&p| items[p].0).collect();
        members.sort_unstable();
        in_drawn[x as usize] = members.clone();
        dilworth.insert(
            x,
            DrawnChain {
                partition_size: parts.len(),
                drawn,
                members,
            },
        );
    }
    let i1: Vec<usize> = i0
        .iter()
        .copied()
        .filter(|&i| {
            chains[i]
                .added
                .iter()
                .all(|&x| in_drawn[x as usize].binary_search(&i).is_ok())
        })
        .collect();

    // stage 2
    let ordering = Ordering::random(cc.ground(), &mut rng);
    let i2: Vec<usize> = i1
        .iter()
        .copied()
        .filter(|&i| chains[i].added.windows(2).all(|w| ordering.precedes(w[0], w[1])))
        .collect();

    // stage 3
    let mut conflict = SimpleGraph::new(i2.len());
    for (a, &i) in i2.iter().enumerate() {
        for (b, &j) in i2.iter().enumerate().skip(a + 1) {
            if sizes_conflict(cc, i, j) {
                conflict.add_edge(a, b);
            }
        }
    }
    let i3: Vec<usize> = conflict.greedy_independent_set().into_iter().map(|a| i2[a]).collect();

    // stage 4
    let size_threshold = size_multiplier * k * h;
    let i: Vec<usize> = i3
        .iter()
        .copied()
        .filter(|&i| chains[i].min_size() >= size_threshold)
        .collect();

    Ok(Selection {
        indices: i.clone(),
        ordering: ordering.clone(),
        trace: SelectionTrace {
            dilworth,
            ordering: ordering.elements().to_vec(),
            i0,
            i1,
            i2,
            i3,
            i,
            conflict_graph: conflict.stats(),
            size_threshold,
        },
    })
}

/// Supports intersect and some members have equal size.
fn sizes_conflict(cc: &ChainCollection, i: usize, j: usize) -> bool {
    let (a, b) = (&cc.chains()[i], &cc.chains()[j]);
    a.support().intersects(b.support()) && a.min_size() <= b.max_size() && b.min_size() <= a.max_size()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub chains: Vec<usize>,
    pub elements: Vec<u32>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub passed: bool,
    pub violations: Vec<Violation>,
}

impl ConditionCheck {
    fn from(violations: Vec<Violation>) -> Self {
        Self {
            passed: violations.is_empty(),
            violations,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub size_threshold: usize,
    pub c1: ConditionCheck,
    pub c2: ConditionCheck,
    pub c3: ConditionCheck,
    pub c4: ConditionCheck,
}

impl ConditionReport {
    pub fn all_pass(&self) -> bool {
        self.c1.passed && self.c2.passed && self.c3.passed && self.c4.passed
    }

    pub fn failed(&self) -> Vec<&'static str> {
        [("C1", &self.c1), ("C2", &self.c2), ("C3", &self.c3), ("C4", &self.c4)]
            .into_iter()
            .filter(|(_, c)| !c.passed)
            .map(|(n, _)| n)
            .collect()
    }
}

/// Exhaustive pairwise check of C1–C4 over `indices`. The C4 threshold is
/// `size_multiplier · k · h` with `h` the longest chain length in `cc`.
pub fn check_conditions(
    cc: &ChainCollection,
    indices: &[usize],
    ord: &Ordering,
    k: usize,
    size_multiplier: usize,
) -> Result<ConditionReport> {
    if let Some(&bad) = indices.iter().find(|&&i| i >= cc.len()) {
        return Err(Error::InvalidArgument(format!(
            "chain index {bad} out of range (collection has {})",
            cc.len()
        )));
    }
    if !ord.fits(cc.ground()) {
        return Err(Error::InvalidArgument("ordering does not match ground set".into()));
    }
    let chains = cc.chains();
    let mut c1 = Vec::new();
    let mut c2 = Vec::new();
    let mut c3 = Vec::new();
    let mut c4 = Vec::new();
    let size_threshold = size_multiplier * k * cc.max_h();

    for (a, &i) in indices.iter().enumerate() {
        let ci = &chains[i];
        for (p, &x) in ci.added.iter().enumerate() {
            for &y in &ci.added[p + 1..] {
                // x is added before y, so C_i(x) ⊂ C_i(y); ≺ must agree
                if ord.precedes(y, x) {
                    c2.push(Violation {
                        chains: vec![i],
                        elements: vec![y, x],
                    });
                }
            }
        }
        if ci.min_size() < size_threshold {
            c4.push(Violation {
                chains: vec![i],
                elements: vec![],
            });
        }
        for &j in &indices[a + 1..] {
            let cj = &chains[j];
            let shared = ci.support().intersection(cj.support());
            if shared.is_empty() {
                continue;
            }
            let bad: Vec<u32> = shared
                .elements()
                .filter(|&x| {
                    let (p, q) = (ci.below(x).unwrap(), cj.below(x).unwrap());
                    !p.is_comparable(q)
                })
                .collect();
            if !bad.is_empty() {
                c1.push(Violation {
                    chains: vec![i, j],
                    elements: bad,
                });
            }
            if !(ci.max_size() < cj.min_size() || cj.max_size() < ci.min_size()) {
                c3.push(Violation {
                    chains: vec![i, j],
                    elements: shared.elements().collect(),
                });
            }
        }
    }
    Ok(ConditionReport {
        size_threshold,
        c1: ConditionCheck::from(c1),
        c2: ConditionCheck::from(c2),
        c3: ConditionCheck::from(c3),
        c4: ConditionCheck::from(c4),
    })
}
