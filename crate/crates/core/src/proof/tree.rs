//! Cross-support trees: storage, JSON form, axiom validation, root pruning and
//! extraction of pairwise weakly-crossing sets.
//!
//! Nodes live in a preorder arena with the root at index 0. Every non-root node
//! carries the label of the edge from its parent; `φ(v)` is that label and
//! `S_v = C_v(φ(v))`. The root has neither.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::chains::ChainCollection;
use super::ordering::Ordering;
use crate::crossing::Witness;
use crate::error::{Error, Result};
use crate::family::{Mode, SubsetMask};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeNode {
    pub chain: usize,
    pub label: Option<u32>,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    pub depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossSupportTree {
    nodes: Vec<TreeNode>,
}

/// Nested JSON shape of a tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub chain: usize,
    pub edge_label_from_parent: Option<u32>,
    #[serde(default)]
    pub children: Vec<TreeJson>,
}

impl CrossSupportTree {
    pub fn single(chain: usize) -> Self {
        Self {
            nodes: vec![TreeNode {
                chain,
                label: None,
                parent: None,
                children: vec![],
                depth: 0,
            }],
        }
    }

    /// A new root over `children`, left to right, each with the label of its
    /// joining edge.
    pub fn join(root_chain: usize, children: Vec<(u32, CrossSupportTree)>) -> Self {
        let json = TreeJson {
            chain: root_chain,
            edge_label_from_parent: None,
            children: children
                .into_iter()
                .map(|(label, t)| {
                    let mut j = t.to_json();
                    j.edge_label_from_parent = Some(label);
                    j
                })
                .collect(),
        };
        Self::from_json(&json).expect("joined trees are well formed")
    }

    pub fn from_json(json: &TreeJson) -> Result<Self> {
        if json.edge_label_from_parent.is_some() {
            return Err(Error::MalformedTree("root must not carry an edge label".into()));
        }
        let mut nodes = Vec::new();
        flatten(json, None, 0, &mut nodes)?;
        Ok(Self { nodes })
    }

    pub fn to_json(&self) -> TreeJson {
        self.subtree_json(0)
    }

    fn subtree_json(&self, v: usize) -> TreeJson {
        let n = &self.nodes[v];
        TreeJson {
            chain: n.chain,
            edge_label_from_parent: n.label,
            children: n.children.iter().map(|&c| self.subtree_json(c)).collect(),
        }
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(text)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("tree serializes")
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn node(&self, v: usize) -> &TreeNode {
        &self.nodes[v]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root_chain(&self) -> usize {
        self.nodes[0].chain
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.nodes[v].children
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.nodes[v].children.is_empty()
    }

    /// Labels on the root's child edges, left to right.
    pub fn root_labels(&self) -> Vec<u32> {
        self.nodes[0]
            .children
            .iter()
            .map(|&c| self.nodes[c].label.expect("non-root node has a label"))
            .collect()
    }

    /// Leaf depths agree; `None` when they do not.
    pub fn height(&self) -> Option<usize> {
        let mut depths = self.nodes.iter().filter(|n| n.children.is_empty()).map(|n| n.depth);
        let h = depths.next()?;
        depths.all(|d| d == h).then_some(h)
    }

    pub fn max_depth(&self) -> usize {
        self.nodes.iter().map(|n| n.depth).max().unwrap_or(0)
    }

    /// Smallest number of children over non-leaf nodes (`None` for a single node).
    pub fn min_branching(&self) -> Option<usize> {
        self.nodes
            .iter()
            .filter(|n| !n.children.is_empty())
            .map(|n| n.children.len())
            .min()
    }

    pub fn phi(&self, v: usize) -> Option<u32> {
        self.nodes[v].label
    }

    /// `S_v = C_v(φ(v))`; `None` for the root or when `φ(v)` is not added by `v`'s chain.
    pub fn s(&self, v: usize, cc: &ChainCollection) -> Option<SubsetMask> {
        let x = self.phi(v)?;
        cc.get(self.nodes[v].chain)?.below(x)
    }

    /// Nodes reached from `v` by repeatedly taking the leftmost child, `v` included.
    pub fn leftmost_path(&self, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut cur = v;
        while let Some(&c) = self.nodes[cur].children.first() {
            out.push(c);
            cur = c;
        }
        out
    }

    /// Proper ancestors of `v`, nearest first.
    pub fn ancestors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = self.nodes[v].parent;
        while let Some(p) = cur {
            out.push(p);
            cur = self.nodes[p].parent;
        }
        out
    }

    fn is_leftmost_child(&self, v: usize) -> bool {
        self.nodes[v].parent.is_some_and(|p| self.nodes[p].children[0] == v)
    }
}

fn flatten(json: &TreeJson, parent: Option<usize>, depth: usize, out: &mut Vec<TreeNode>) -> Result<usize> {
    if parent.is_some() && json.edge_label_from_parent.is_none() {
        return Err(Error::MalformedTree(format!(
            "node {} (chain {}) has no edge label",
            out.len(),
            json.chain
        )));
    }
    let id = out.len();
    out.push(TreeNode {
        chain: json.chain,
        label: json.edge_label_from_parent,
        parent,
        children: vec![],
        depth,
    });
    for c in &json.children {
        let cid = flatten(c, Some(id), depth + 1, out)?;
        out[id].children.push(cid);
    }
    Ok(id)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Axiom {
    Perfect,
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
}

impl Axiom {
    pub const CORE: [Axiom; 6] = [Axiom::Perfect, Axiom::T1, Axiom::T2, Axiom::T3, Axiom::T4, Axiom::T5];
    pub const DERIVED: [Axiom; 3] = [Axiom::T6, Axiom::T7, Axiom::T8];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Perfect => "perfect",
            Axiom::T1 => "T1",
            Axiom::T2 => "T2",
            Axiom::T3 => "T3",
            Axiom::T4 => "T4",
            Axiom::T5 => "T5",
            Axiom::T6 => "T6",
            Axiom::T7 => "T7",
            Axiom::T8 => "T8",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeViolation {
    pub nodes: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub passed: bool,
    pub violations: Vec<TreeViolation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeReport {
    pub height: Option<usize>,
    pub checks: Vec<AxiomCheck>,
}

impl TreeReport {
    pub fn check(&self, axiom: Axiom) -> &AxiomCheck {
        self.checks
            .iter()
            .find(|c| c.axiom == axiom)
            .expect("every axiom is checked")
    }

    /// Perfection and T1–T5.
    pub fn is_valid(&self) -> bool {
        Axiom::CORE.iter().all(|&a| self.check(a).passed)
    }

    /// Perfection and T1–T4.
    pub fn passes_t1_to_t4(&self) -> bool {
        Axiom::CORE[..5].iter().all(|&a| self.check(a).passed)
    }

    pub fn derived_hold(&self) -> bool {
        Axiom::DERIVED.iter().all(|&a| self.check(a).passed)
    }

    pub fn failed_axioms(&self) -> Vec<Axiom> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.axiom).collect()
    }

    pub fn failed_core(&self) -> Vec<Axiom> {
        self.failed_axioms()
            .into_iter()
            .filter(|a| Axiom::CORE.contains(a))
            .collect()
    }
}

fn violation(nodes: Vec<usize>, detail: impl Into<String>) -> TreeViolation {
    TreeViolation {
        nodes,
        detail: detail.into(),
    }
}

/// Checks perfection, T1–T5 and the derived T6–T8 literally.
///
/// Dangling chain indices and an ordering over the wrong ground set are
/// malformed input and returned as errors. `S_v` is left undefined when `φ(v)`
/// is not in `X_v`; the T2 check reports that case and the set comparisons
/// that would need it are skipped.
pub fn validate_tree(t: &CrossSupportTree, cc: &ChainCollection, ord: &Ordering) -> Result<TreeReport> {
    if !ord.fits(cc.ground()) {
        return Err(Error::InvalidArgument("ordering does not match ground set".into()));
    }
    for (v, n) in t.nodes.iter().enumerate() {
        if n.chain >= cc.len() {
            return Err(Error::MalformedTree(format!(
                "node {v} refers to chain {} but the collection has {}",
                n.chain,
                cc.len()
            )));
        }
    }
    let nodes = &t.nodes;
    let chain = |v: usize| &cc.chains()[nodes[v].chain];
    let s: Vec<Option<SubsetMask>> = (0..nodes.len()).map(|v| t.s(v, cc)).collect();
    let ground = cc.ground();

    let mut perfect = Vec::new();
    if t.height().is_none() {
        let leaves: Vec<usize> = (0..nodes.len()).filter(|&v| t.is_leaf(v)).collect();
        let depths: BTreeSet<usize> = leaves.iter().map(|&v| nodes[v].depth).collect();
        perfect.push(violation(leaves, format!("leaves at depths {depths:?}")));
    }

    let mut t1 = Vec::new();
    for (v, n) in nodes.iter().enumerate() {
        if let Some(x) = n.label {
            if x as usize >= ground.size() {
                t1.push(violation(vec![v], format!("edge label {x} outside the ground set")));
            }
        }
    }

    let mut t2 = Vec::new();
    for (v, n) in nodes.iter().enumerate() {
        if let (Some(p), Some(x)) = (n.parent, n.label) {
            for end in [p, v] {
                if chain(end).position(x).is_none() {
                    t2.push(violation(
                        vec![p, v],
                        format!("edge label {x} not in the support of node {end}"),
                    ));
                }
            }
        }
        for w in n.children.windows(2) {
            let (a, b) = (nodes[w[0]].label.unwrap(), nodes[w[1]].label.unwrap());
            if !ord.precedes(b, a) {
                t2.push(violation(
                    vec![v, w[0], w[1]],
                    format!("child labels {a} then {b} are not ≻-decreasing"),
                ));
            }
        }
    }

    let mut t3 = Vec::new();
    for (v, n) in nodes.iter().enumerate() {
        if let (Some(x), Some(&u1)) = (n.label, n.children.first()) {
            let y = nodes[u1].label.unwrap();
            if x != y {
                t3.push(violation(
                    vec![v, u1],
                    format!("parent edge label {x} differs from leftmost child edge label {y}"),
                ));
            }
        }
    }

    let mut t4 = Vec::new();
    for (u, n) in nodes.iter().enumerate() {
        if let (Some(p), Some(x)) = (n.parent, n.label) {
            if let (Some(a), Some(b)) = (chain(p).below(x), chain(u).below(x)) {
                if !a.is_proper_subset(b) {
                    t4.push(violation(
                        vec![p, u],
                        format!("C({x}) of node {p} {{{a}}} not strictly inside {{{b}}} of node {u}"),
                    ));
                }
            }
        }
    }

    let mut by_depth: Vec<Vec<usize>> = vec![Vec::new(); t.max_depth() + 1];
    for (v, n) in nodes.iter().enumerate() {
        by_depth[n.depth].push(v);
    }
    let mut t5 = Vec::new();
    for level in &by_depth {
        for (a, &u) in level.iter().enumerate() {
            for &u2 in &level[a + 1..] {
                let v = branch_child(t, u, u2);
                let leftmost = {
                    let mut cur = u;
                    let mut ok = true;
                    while cur != v {
                        ok &= t.is_leftmost_child(cur);
                        cur = nodes[cur].parent.unwrap();
                    }
                    ok
                };
                if !leftmost {
                    continue;
                }
                if let (Some(su), Some(su2)) = (s[u], s[u2]) {
                    if !su2.is_subset(su) {
                        t5.push(violation(
                            vec![u, u2],
                            format!("S of node {u2} {{{su2}}} not inside S of node {u} {{{su}}}"),
                        ));
                    }
                }
            }
        }
    }

    let mut t6 = Vec::new();
    for v in 1..nodes.len() {
        let p = nodes[v].parent.unwrap();
        let x = nodes[v].label.unwrap();
        if let (Some(cp), Some(sv)) = (chain(p).below(x), s[v]) {
            if !cp.is_proper_subset(sv) {
                t6.push(violation(vec![p, v], format!("C({x}) of parent not strictly inside S")));
            }
        }
        for &u in &t.leftmost_path(v)[1..] {
            if nodes[u].label != Some(x) {
                t6.push(violation(vec![v, u], "φ differs along leftmost path"));
            } else if let (Some(sv), Some(su)) = (s[v], s[u]) {
                if !sv.is_proper_subset(su) {
                    t6.push(violation(vec![v, u], "S does not strictly grow along leftmost path"));
                }
            }
        }
    }

    let mut t7 = Vec::new();
    for u in 0..nodes.len() {
        for v in u..nodes.len() {
            // smallest members are contained in all others
            if !chain(u).base.intersects(chain(v).base) {
                t7.push(violation(vec![u, v], "disjoint chain members"));
            }
        }
    }

    let mut t8 = Vec::new();
    for u in 1..nodes.len() {
        for v in t.ancestors(u) {
            if v == 0 {
                continue;
            }
            if let (Some(sv), Some(su)) = (s[v], s[u]) {
                if sv.len() >= su.len() {
                    t8.push(violation(
                        vec![v, u],
                        format!("|S| of ancestor {} ≥ |S| of descendant {}", sv.len(), su.len()),
                    ));
                }
            }
        }
    }

    let checks = [
        (Axiom::Perfect, perfect),
        (Axiom::T1, t1),
        (Axiom::T2, t2),
        (Axiom::T3, t3),
        (Axiom::T4, t4),
        (Axiom::T5, t5),
        (Axiom::T6, t6),
        (Axiom::T7, t7),
        (Axiom::T8, t8),
    ]
    .into_iter()
    .map(|(axiom, violations)| AxiomCheck {
        axiom,
        passed: violations.is_empty(),
        violations,
    })
    .collect();
    Ok(TreeReport {
        height: t.height(),
        checks,
    })
}

/// For distinct same-depth `u`, `u2`: the child of their common ancestor that
/// lies on the path to `u`.
fn branch_child(t: &CrossSupportTree, u: usize, u2: usize) -> usize {
    let (mut a, mut b) = (u, u2);
    loop {
        let (pa, pb) = (t.nodes[a].parent.unwrap(), t.nodes[b].parent.unwrap());
        if pa == pb {
            return a;
        }
        a = pa;
        b = pb;
    }
}

/// Keeps the root children at the given left-to-right positions, with their subtrees.
pub fn prune_root_children(t: &CrossSupportTree, keep: &[usize]) -> Result<CrossSupportTree> {
    if keep.is_empty() {
        return Err(Error::InvalidArgument("must keep at least one root child".into()));
    }
    let root_children = t.children(0);
    let keep: BTreeSet<usize> = keep.iter().copied().collect();
    if let Some(&bad) = keep.iter().find(|&&p| p >= root_children.len()) {
        return Err(Error::InvalidArgument(format!(
            "root has {} children, cannot keep position {bad}",
            root_children.len()
        )));
    }
    let mut json = t.to_json();
    json.children = json
        .children
        .into_iter()
        .enumerate()
        .filter(|(p, _)| keep.contains(p))
        .map(|(_, c)| c)
        .collect();
    CrossSupportTree::from_json(&json)
}

/// Keeps the root children whose edge label satisfies `keep`.
pub fn prune_root_children_by_label<F: Fn(u32) -> bool>(t: &CrossSupportTree, keep: F) -> Result<CrossSupportTree> {
    let positions: Vec<usize> = t
        .root_labels()
        .into_iter()
        .enumerate()
        .filter(|&(_, x)| keep(x))
        .map(|(p, _)| p)
        .collect();
    prune_root_children(t, &positions)
}

/// Walks down from the root taking, at each level, the leftmost child that is
/// not the leftmost one and whose `φ` is new on the path, then returns the sets
/// `S_v ∪ {φ(v)}` along the path.
pub fn extract_k_crossing_from_tree(
    t: &CrossSupportTree,
    cc: &ChainCollection,
    ord: &Ordering,
    k: usize,
) -> Result<Witness> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("k must be at least 2, got {k}")));
    }
    let report = validate_tree(t, cc, ord)?;
    if !report.is_valid() {
        let failed: Vec<&str> = report.failed_core().iter().map(|a| a.name()).collect();
        return Err(Error::InvalidArgument(format!("tree fails {}", failed.join(", "))));
    }
    if t.height() != Some(k) {
        return Err(Error::InvalidArgument(format!(
            "tree height {} differs from k={k}",
            t.max_depth()
        )));
    }
    if let Some(b) = t.min_branching().filter(|&b| b < k) {
        return Err(Error::InvalidArgument(format!(
            "some non-leaf has {b} children, fewer than k={k}"
        )));
    }
    let mut used = BTreeSet::new();
    let mut sets = Vec::with_capacity(k);
    let mut v = 0;
    for _ in 0..k {
        let next = t.children(v)[1..]
            .iter()
            .copied()
            .find(|&c| !used.contains(&t.phi(c).unwrap()))
            .ok_or_else(|| Error::Extraction(format!("no admissible child below node {v}")))?;
        let x = t.phi(next).unwrap();
        used.insert(x);
        let s = t
            .s(next, cc)
            .ok_or_else(|| Error::Extraction(format!("S undefined at node {next}")))?;
        sets.push(s.with(x));
        v = next;
    }
    if sets.windows(2).any(|w| w[0].len() >= w[1].len()) {
        return Err(Error::Extraction(
            "set sizes do not strictly increase along the path".into(),
        ));
    }
    Witness::new(sets, Mode::Weak, cc.ground()).map_err(|e| Error::Extraction(e.to_string()))
}
