//! Random cross-support trees over nested-interval chain collections.
//!
//! Every node gets its own chain. All chains add the same label set `Λ` in
//! `≺`-increasing order, so `C_v(x) = B_v ∪ {y ∈ Λ : y ≺ x}` and tree axioms
//! reduce to conditions on the bases `B_v`, which are built from three
//! disjoint pieces:
//!
//! * a common core `K`, so all members intersect;
//! * a depth pad `D_d`, growing by `h` per level, so bases strictly grow from
//!   parent to child and `|S_v|` grows along every root-to-leaf path;
//! * a prefix of a fixed sequence `R`, whose length decreases left to right
//!   within a level (when `ordered` is set), so sets to the right are contained
//!   in sets to the left.
//!
//! Child labels are the parent's `φ` followed by smaller labels, so every label
//! inside a subtree is `≼` the label of the edge entering it.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng as _;

use super::chains::{Chain, ChainCollection};
use super::ordering::Ordering;
use super::tree::{CrossSupportTree, TreeJson};
use crate::constructions::rng;
use crate::error::{Error, Result};
use crate::family::{GroundSet, SubsetMask, MAX_GROUND};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SynthParams {
    pub height: usize,
    pub min_children: usize,
    pub max_children: usize,
    /// Chain length, the size of `Λ`.
    pub h: usize,
    pub core: usize,
    /// Extra elements added to each level's prefix bound.
    pub slack: usize,
    /// Prefix lengths decrease left to right; otherwise they are assigned in a
    /// random order per level, which usually breaks T5 but keeps T1–T4.
    pub ordered: bool,
}

impl SynthParams {
    /// Height `k`, exactly `k` children per non-leaf: the smallest setting from
    /// which `k` pairwise weakly-crossing sets can be read off.
    pub fn extractable(k: usize) -> Self {
        Self {
            height: k,
            min_children: k,
            max_children: k,
            h: min_labels(k, k),
            core: 1,
            slack: 0,
            ordered: true,
        }
    }
}

/// Smallest `|Λ|` for which every non-leaf can get `min_children` children.
pub fn min_labels(height: usize, min_children: usize) -> usize {
    if height == 0 {
        return 1;
    }
    // lo[d]: smallest label rank a depth-d node can carry and still branch
    let mut lo = 1;
    for _ in 1..height {
        lo += min_children.saturating_sub(1);
    }
    lo + min_children.saturating_sub(1)
}

#[derive(Clone, Debug)]
pub struct SynthTree {
    pub chains: ChainCollection,
    pub ordering: Ordering,
    pub tree: CrossSupportTree,
}

struct Shape {
    children: Vec<Vec<usize>>,
    label: Vec<Option<usize>>,
    depth: Vec<usize>,
}

pub fn synth_tree(params: &SynthParams, seed: u64) -> Result<SynthTree> {
    let p = params;
    if p.min_children == 0 || p.min_children > p.max_children || p.h == 0 || p.core == 0 {
        return Err(Error::InvalidArgument(
            "need 1 ≤ min_children ≤ max_children and positive h and core".into(),
        ));
    }
    if p.height > 0 && p.h < min_labels(p.height, p.min_children) {
        return Err(Error::InvalidArgument(format!(
            "h={} too small for height {} with {} children per node",
            p.h, p.height, p.min_children
        )));
    }
    let mut rng = rng(seed);

    // lo[d]: smallest label rank (1-based) usable by a depth-d node
    let mut lo = vec![1usize; p.height + 1];
    for d in (1..p.height).rev() {
        lo[d] = lo[d + 1] + p.min_children - 1;
    }

    // shape in preorder; labels are ranks into Λ
    let mut shape = Shape {
        children: vec![vec![]],
        label: vec![None],
        depth: vec![0],
    };
    grow(&mut shape, 0, p, &lo, &mut rng);
    let count = shape.depth.len();

    // per-level positions and prefix lengths
    let mut levels: Vec<Vec<usize>> = vec![vec![]; p.height + 1];
    for v in 0..count {
        levels[shape.depth[v]].push(v);
    }
    let mut pos = vec![0usize; count];
    for level in &levels {
        let mut order: Vec<usize> = (0..level.len()).collect();
        if !p.ordered {
            order.shuffle(&mut rng);
        }
        for (&v, &q) in level.iter().zip(&order) {
            pos[v] = q;
        }
    }
    let mut bound = vec![0usize; p.height + 1];
    bound[0] = p.slack;
    for d in 1..=p.height {
        let jump = levels[d]
            .iter()
            .map(|&u| {
                let parent = parent_of(&shape, u);
                pos[u].saturating_sub(pos[parent])
            })
            .max()
            .unwrap_or(0);
        bound[d] = bound[d - 1] + jump + p.slack;
    }
    let n = p.h + p.core + p.height * p.h + bound[p.height];
    if n > MAX_GROUND {
        return Err(Error::InvalidArgument(format!(
            "synthetic tree needs {n} elements, more than {MAX_GROUND}"
        )));
    }

    // roles: random relabelling of 0..n
    let mut ids: Vec<u32> = (0..n as u32).collect();
    ids.shuffle(&mut rng);
    let (lambda, rest) = ids.split_at(p.h);
    let (core, rest) = rest.split_at(p.core);
    let (pad, seq) = rest.split_at(p.height * p.h);

    let ground = GroundSet::new(n)?;
    let mut order: Vec<u32> = ids[p.h..].to_vec();
    order.shuffle(&mut rng);
    let mut lambda_sorted = lambda.to_vec();
    lambda_sorted.sort_unstable();
    // Λ at random positions of the ordering
    for &x in &lambda_sorted {
        let at = rng.random_range(0..=order.len());
        order.insert(at, x);
    }
    let ordering = Ordering::new(order)?;
    let mut lambda_ranked = lambda.to_vec();
    lambda_ranked.sort_by_key(|&x| ordering.rank(x));

    let core_mask = SubsetMask::from_elements(core.iter().copied());
    let chains: Vec<Chain> = (0..count)
        .map(|v| {
            let d = shape.depth[v];
            let base = core_mask
                .union(SubsetMask::from_elements(pad[..d * p.h].iter().copied()))
                .union(SubsetMask::from_elements(seq[..bound[d] - pos[v]].iter().copied()));
            Chain::new(base, lambda_ranked.clone())
        })
        .collect();
    let chains = ChainCollection::new(ground, chains)?;
    let tree = CrossSupportTree::from_json(&to_json(&shape, 0, &lambda_ranked))?;
    Ok(SynthTree { chains, ordering, tree })
}

fn parent_of(shape: &Shape, u: usize) -> usize {
    (0..u)
        .rev()
        .find(|&p| shape.children[p].contains(&u))
        .expect("non-root node has a parent")
}

fn grow(shape: &mut Shape, v: usize, p: &SynthParams, lo: &[usize], rng: &mut crate::constructions::Rng) {
    let d = shape.depth[v];
    if d == p.height {
        return;
    }
    let floor = lo[d + 1];
    // labels available to the children of v, largest first
    let (fixed, top) = match shape.label[v] {
        Some(t) => (Some(t), t - 1),
        None => (None, p.h),
    };
    let pool: Vec<usize> = (floor..=top).rev().collect();
    let extra_needed = p.min_children - usize::from(fixed.is_some());
    let extra_max = (p.max_children - usize::from(fixed.is_some())).min(pool.len());
    let extra = rng.random_range(extra_needed.min(extra_max)..=extra_max);
    let mut picked: Vec<usize> = pool.choose_multiple(rng, extra).copied().collect();
    picked.extend(fixed);
    picked.sort_unstable_by(|a, b| b.cmp(a));
    for t in picked {
        let u = shape.depth.len();
        shape.children.push(vec![]);
        shape.label.push(Some(t));
        shape.depth.push(d + 1);
        shape.children[v].push(u);
        grow(shape, u, p, lo, rng);
    }
}

fn to_json(shape: &Shape, v: usize, lambda: &[u32]) -> TreeJson {
    TreeJson {
        chain: v,
        edge_label_from_parent: shape.label[v].map(|t| lambda[t - 1]),
        children: shape.children[v].iter().map(|&u| to_json(shape, u, lambda)).collect(),
    }
}
