//! Undirected graphs on `0..n` stored as bit-set adjacency rows.

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<BitSet>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        Self {
            adj: vec![BitSet::new(n); n],
        }
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Self {
        let mut g = Self::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Self-loops are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitSet::count).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, row) in self.adj.iter().enumerate() {
            out.extend(row.iter().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn average_degree(&self) -> f64 {
        if self.adj.is_empty() {
            0.0
        } else {
            2.0 * self.edge_count() as f64 / self.adj.len() as f64
        }
    }

    pub fn stats(&self) -> GraphStats {
        GraphStats {
            vertices: self.vertex_count(),
            edges: self.edge_count(),
            max_degree: (0..self.vertex_count()).map(|v| self.degree(v)).max().unwrap_or(0),
            average_degree: self.average_degree(),
        }
    }

    pub fn is_independent(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| u != v && self.has_edge(u, v)))
    }

    /// Minimum-degree greedy: repeatedly take a vertex of least remaining degree
    /// (ties to the smallest index) and delete it with its neighbourhood.
    ///
    /// The result has at least `|V| / (d̄ + 1)` vertices, `d̄` the average degree.
    pub fn greedy_independent_set(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut alive = BitSet::full(n);
        let mut out = Vec::new();
        while !alive.is_empty() {
            let v = alive
                .iter()
                .min_by_key(|&v| (self.adj[v].intersection_count(&alive), v))
                .expect("alive is nonempty");
            out.push(v);
            alive.remove(v);
            alive.difference_with(&self.adj[v]);
        }
        out.sort_unstable();
        out
    }

    /// Number of colours used by sequential greedy colouring of `within`;
    /// an upper bound on the clique number of the induced subgraph.
    pub fn greedy_color_bound(&self, within: &BitSet) -> usize {
        let mut uncolored = within.clone();
        let mut colors = 0;
        while !uncolored.is_empty() {
            colors += 1;
            let mut candidates = uncolored.clone();
            while let Some(v) = candidates.first() {
                uncolored.remove(v);
                candidates.remove(v);
                candidates.difference_with(&self.adj[v]);
            }
        }
        colors
    }

    /// Vertices that survive iterated removal of vertices with fewer than `k - 1`
    /// neighbours; every `k`-clique lies inside.
    pub fn core_for_clique(&self, k: usize) -> BitSet {
        let n = self.vertex_count();
        let mut alive = BitSet::full(n);
        let need = k.saturating_sub(1);
        loop {
            let drop: Vec<usize> = alive
                .iter()
                .filter(|&v| self.adj[v].intersection_count(&alive) < need)
                .collect();
            if drop.is_empty() {
                return alive;
            }
            for v in drop {
                alive.remove(v);
            }
        }
    }

    /// The lexicographically least `k`-clique (as an ascending index list), if any.
    pub fn lex_least_clique(&self, k: usize) -> Option<Vec<usize>> {
        self.lex_least_clique_within(k, &BitSet::full(self.vertex_count()))
    }

    /// As [`lex_least_clique`](Self::lex_least_clique), restricted to `within`.
    pub fn lex_least_clique_within(&self, k: usize, within: &BitSet) -> Option<Vec<usize>> {
        if k == 0 {
            return Some(Vec::new());
        }
        let mut cand = self.core_for_clique(k);
        cand.intersect_with(within);
        let mut chosen = Vec::with_capacity(k);
        self.extend_clique(&mut chosen, &cand, k).then_some(chosen)
    }

    /// Whether `within` induces a `k`-clique, without the core pre-pass.
    pub fn has_clique_within(&self, k: usize, within: &BitSet) -> bool {
        let mut chosen = Vec::with_capacity(k);
        k == 0 || self.extend_clique(&mut chosen, within, k)
    }

    /// Depth-first in ascending index order, so the first clique found is the
    /// lexicographically least.
    fn extend_clique(&self, chosen: &mut Vec<usize>, cand: &BitSet, k: usize) -> bool {
        let need = k - chosen.len();
        if need == 0 {
            return true;
        }
        if cand.count() < need {
            return false;
        }
        if need == 1 {
            chosen.push(cand.first().expect("nonempty"));
            return true;
        }
        if self.greedy_color_bound(cand) < need {
            return false;
        }
        let mut rest = cand.clone();
        while let Some(v) = rest.first() {
            rest.remove(v);
            if rest.count() + 1 < need {
                break;
            }
            let next = rest.intersection(&self.adj[v]);
            chosen.push(v);
            if self.extend_clique(chosen, &next, k) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphStats {
    pub vertices: usize,
    pub edges: usize,
    pub max_degree: usize,
    pub average_degree: f64,
}
