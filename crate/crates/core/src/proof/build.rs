//! Level-by-level construction of cross-support trees from a conditioned chain
//! collection.
//!
//! Level 0 is a single-node tree per index. At level `ℓ`, each surviving index
//! `i` collects the labels `Y_i` on its root edges (its own support at level 1,
//! where trees have no edges) and keeps the `≺`-larger half `Z_i`. For every
//! element `x`, the indices with `x ∈ Z_j` are sorted by `C_j(x)` and the top
//! `pool` of them are reserved; the remaining indices become new roots. A new
//! root `i` takes, for each `x ∈ Z_i` from `≻`-largest down, an unused reserved
//! `j` with `C_i(x) ⊊ C_j(x)`, cuts the root edges of `j`'s tree labelled
//! `≻ x` so that `x` labels its leftmost edge, and hangs it under `i` by an
//! edge labelled `x`. Finally a chain of the leftmost sets `S` at every depth
//! is selected with a minimum chain partition and only those subtrees are kept.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::chains::ChainCollection;
use super::ordering::Ordering;
use super::tree::{prune_root_children, prune_root_children_by_label, validate_tree, CrossSupportTree};
use crate::dilworth::min_chain_cover;
use crate::error::{Error, Result};
use crate::family::SubsetMask;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildOptions {
    pub height: usize,
    /// Minimum number of children required at every non-leaf.
    pub branching: usize,
    /// Size of each reserved pool `J_x^top`; defaults to the chain length `h`.
    pub pool: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootTrace {
    /// `(x, j_x)` pairs, `≻`-largest `x` first.
    pub representatives: Vec<(u32, usize)>,
    /// Elements of `Z_i` with no free reserved index above `C_i(x)`.
    pub unmatched: Vec<u32>,
    pub q: Vec<u32>,
    /// Chain indices of the leftmost vertices `i_{d,x}` per depth `d`, for `x ∈ Q`.
    pub leftmost: Vec<Vec<usize>>,
    pub outcome: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelTrace {
    pub level: usize,
    pub y: BTreeMap<usize, Vec<u32>>,
    pub z: BTreeMap<usize, Vec<u32>>,
    pub j: BTreeMap<u32, Vec<usize>>,
    pub j_top: BTreeMap<u32, Vec<usize>>,
    /// Indices left after removing every reserved pool.
    pub candidates: Vec<usize>,
    pub roots: BTreeMap<usize, RootTrace>,
    /// Indices whose level tree validated and met the branching target.
    pub built: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildOutcome {
    /// Tree for the smallest surviving root, if any.
    pub tree: Option<CrossSupportTree>,
    pub roots: BTreeMap<usize, CrossSupportTree>,
    pub levels: Vec<LevelTrace>,
}

pub fn build_tree(
    cc: &ChainCollection,
    indices: &[usize],
    ord: &Ordering,
    opts: &BuildOptions,
) -> Result<BuildOutcome> {
    if let Some(&bad) = indices.iter().find(|&&i| i >= cc.len()) {
        return Err(Error::InvalidArgument(format!(
            "chain index {bad} out of range (collection has {})",
            cc.len()
        )));
    }
    if !ord.fits(cc.ground()) {
        return Err(Error::InvalidArgument("ordering does not match ground set".into()));
    }
    let pool = opts.pool.unwrap_or_else(|| cc.max_h()).max(1);
    let chains = cc.chains();
    let mut trees: BTreeMap<usize, CrossSupportTree> =
        indices.iter().map(|&i| (i, CrossSupportTree::single(i))).collect();
    let mut levels = Vec::new();

    for level in 1..=opts.height {
        let mut trace = LevelTrace {
            level,
            ..Default::default()
        };
        for (&i, t) in &trees {
            let mut y = if level == 1 {
                chains[i].added.clone()
            } else {
                t.root_labels()
            };
            y.sort_by_key(|&x| ord.rank(x));
            let z = y[y.len() / 2..].to_vec();
            trace.y.insert(i, y);
            trace.z.insert(i, z);
        }
        for (&i, z) in &trace.z {
            for &x in z {
                trace.j.entry(x).or_default().push(i);
            }
        }
        for (x, js) in trace.j.iter_mut() {
            js.sort_by_key(|&j| {
                let c = chains[j].below(*x).expect("x is added by chain j");
                (c.canonical_key(), j)
            });
            let top = js[js.len().saturating_sub(pool)..].to_vec();
            trace.j_top.insert(*x, top);
        }
        let reserved: BTreeSet<usize> = trace.j_top.values().flatten().copied().collect();
        trace.candidates = trees.keys().copied().filter(|i| !reserved.contains(i)).collect();

        let mut next = BTreeMap::new();
        for &i in &trace.candidates {
            let (tree, root_trace) = grow_root(cc, ord, &trees, &trace, i, level)?;
            if let Some(t) = tree {
                let report = validate_tree(&t, cc, ord)?;
                let branching_ok = t.min_branching().is_none_or(|b| b >= opts.branching);
                if report.is_valid() && branching_ok {
                    next.insert(i, t);
                    trace.roots.insert(
                        i,
                        RootTrace {
                            outcome: "built".into(),
                            ..root_trace
                        },
                    );
                } else {
                    let outcome = if !report.is_valid() {
                        let failed: Vec<&str> = report.failed_core().iter().map(|a| a.name()).collect();
                        format!("fails {}", failed.join(", "))
                    } else {
                        format!("branching below {}", opts.branching)
                    };
                    trace.roots.insert(i, RootTrace { outcome, ..root_trace });
                }
            } else {
                trace.roots.insert(i, root_trace);
            }
        }
        trace.built = next.keys().copied().collect();
        levels.push(trace);
        trees = next;
    }

    Ok(BuildOutcome {
        tree: trees.values().next().cloned(),
        roots: trees,
        levels,
    })
}

fn grow_root(
    cc: &ChainCollection,
    ord: &Ordering,
    trees: &BTreeMap<usize, CrossSupportTree>,
    trace: &LevelTrace,
    i: usize,
    level: usize,
) -> Result<(Option<CrossSupportTree>, RootTrace)> {
    let chains = cc.chains();
    let mut rt = RootTrace::default();
    let mut used = BTreeSet::new();
    let mut subtrees = Vec::new();
    for &x in trace.z[&i].iter().rev() {
        let ci = chains[i].below(x).expect("x ∈ Z_i ⊆ X_i");
        let pick = trace.j_top[&x]
            .iter()
            .rev()
            .copied()
            .find(|&j| !used.contains(&j) && ci.is_proper_subset(chains[j].below(x).expect("x ∈ Z_j")));
        let Some(j) = pick else {
            rt.unmatched.push(x);
            continue;
        };
        used.insert(j);
        rt.representatives.push((x, j));
        let sub = if level == 1 {
            trees[&j].clone()
        } else {
            prune_root_children_by_label(&trees[&j], |y| !ord.precedes(x, y))?
        };
        subtrees.push((x, sub));
    }
    if subtrees.is_empty() {
        rt.outcome = "no representatives".into();
        return Ok((None, rt));
    }
    let joined = CrossSupportTree::join(i, subtrees);

    // leftmost vertices of each subtree at every depth below the new root
    let starts: Vec<usize> = joined.children(0).to_vec();
    let paths: Vec<Vec<usize>> = starts.iter().map(|&c| joined.leftmost_path(c)).collect();
    let s_at = |v: usize| -> SubsetMask { joined.s(v, cc).expect("labels lie in supports") };
    let mut q: Vec<usize> = (0..starts.len()).collect();
    #[allow(clippy::needless_range_loop)]
    for d in 0..level {
        let sets: Vec<SubsetMask> = q.iter().map(|&p| s_at(paths[p][d])).collect();
        let (parts, _) = min_chain_cover(sets.len(), |a, b| {
            sets[a].is_proper_subset(sets[b]) || (sets[a] == sets[b] && a < b)
        });
        let best = parts
            .iter()
            .max_by(|a, b| a.len().cmp(&b.len()).then(b[0].cmp(&a[0])))
            .expect("q is nonempty");
        let mut keep: Vec<usize> = best.iter().map(|&a| q[a]).collect();
        keep.sort_unstable();
        q = keep;
    }
    rt.q = q.iter().map(|&p| rt.representatives[p].0).collect();
    rt.leftmost = (0..level)
        .map(|d| q.iter().map(|&p| joined.node(paths[p][d]).chain).collect())
        .collect();
    Ok((Some(prune_root_children(&joined, &q)?), rt))
}
