use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::crossing::{find_pairwise_crossing_witness, CrossingGraph};
use crate::error::{Error, Result};
use crate::family::{Family, Mode};
use crate::graph::SimpleGraph;

pub const MAX_UNIVERSE: usize = 4096;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    /// Worker threads; 0 or 1 searches sequentially.
    pub threads: usize,
    /// Stop after this many search nodes; the result is then not proven optimal.
    pub node_limit: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub best: Family,
    pub size: usize,
    pub proven_optimal: bool,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

/// Largest subfamily of `universe` with no `k` pairwise crossing members.
///
/// Depth-first over the universe in canonical order, trying inclusion before
/// exclusion and replacing the incumbent only on strict improvement, so the
/// answer is the lexicographically least optimum (by canonical indices). A
/// node is cut when the chosen members plus an upper bound on the remaining
/// candidates cannot beat the incumbent; the bound is the smaller of a greedy
/// clique-partition bound (a clique of the crossing graph contributes at most
/// `k − 1`) and per-cardinality caps `(k − 1)·n / ℓ` for `ℓ`-uniform layers.
pub fn max_cross_free(universe: &Family, k: usize, mode: Mode, opts: &SearchOptions) -> Result<SearchResult> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("k must be at least 2, got {k}")));
    }
    if universe.len() > MAX_UNIVERSE {
        return Err(Error::UniverseTooLarge {
            size: universe.len(),
            limit: MAX_UNIVERSE,
        });
    }
    let start = Instant::now();
    let cg = CrossingGraph::new(universe, mode);
    let ctx = Context::new(universe, cg.graph(), k, mode);
    let m = universe.len();

    let (chosen, nodes, complete) = if opts.threads <= 1 {
        let mut s = Searcher::new(&ctx, opts.node_limit, None);
        s.run(Vec::new(), BitSet::full(m));
        (s.best, s.nodes, !s.stopped)
    } else {
        run_parallel(&ctx, opts)?
    };

    let best = universe.subfamily(chosen.iter().copied());
    if let Some(w) = find_pairwise_crossing_witness(&best, k, mode) {
        return Err(Error::InvalidArgument(format!("search produced crossing members {w}")));
    }
    Ok(SearchResult {
        size: best.len(),
        best,
        proven_optimal: complete,
        nodes_explored: nodes,
        elapsed: start.elapsed(),
    })
}

struct Context<'a> {
    graph: &'a SimpleGraph,
    k: usize,
    /// Cardinality of each universe member.
    level: Vec<usize>,
    /// Members per cardinality.
    levels: Vec<BitSet>,
    cap: Vec<usize>,
}

impl<'a> Context<'a> {
    fn new(universe: &Family, graph: &'a SimpleGraph, k: usize, mode: Mode) -> Self {
        let n = universe.ground().size();
        let m = universe.len();
        let level: Vec<usize> = universe.iter().map(|s| s.len()).collect();
        let mut levels = vec![BitSet::new(m); n + 1];
        for (i, &l) in level.iter().enumerate() {
            levels[l].insert(i);
        }
        let cap = (0..=n)
            .map(|l| {
                let denom = match mode {
                    Mode::Weak => l,
                    Mode::Strict => l.min(n - l),
                };
                ((k - 1) * n).checked_div(denom).unwrap_or(1)
            })
            .collect();
        Self {
            graph,
            k,
            level,
            levels,
            cap,
        }
    }

    /// Greedy partition of `within` into cliques, each worth at most `k − 1`.
    fn clique_bound(&self, within: &BitSet) -> usize {
        let mut rest = within.clone();
        let mut total = 0;
        while let Some(v) = rest.first() {
            rest.remove(v);
            let mut common = rest.intersection(self.graph.neighbors(v));
            let mut size = 1;
            while let Some(u) = common.first() {
                common.remove(u);
                common.intersect_with(self.graph.neighbors(u));
                rest.remove(u);
                size += 1;
            }
            total += size.min(self.k - 1);
        }
        total
    }

    fn level_bound(&self, cand: &BitSet, chosen_per_level: &[usize]) -> usize {
        self.levels
            .iter()
            .enumerate()
            .map(|(l, members)| {
                let c = members.intersection_count(cand);
                c.min(self.cap[l].saturating_sub(chosen_per_level[l]))
            })
            .sum()
    }

    /// Candidates that stay admissible once `v` joins `chosen` (which excludes `v`).
    fn filter_after(&self, v: usize, chosen: &BitSet, cand: &mut BitSet) {
        let nv = self.graph.neighbors(v);
        let affected: Vec<usize> = cand.intersection(nv).iter().collect();
        for u in affected {
            // u would close a k-clique with v and k − 2 chosen common neighbours
            let mut common = chosen.intersection(nv);
            common.intersect_with(self.graph.neighbors(u));
            if self.graph.has_clique_within(self.k - 2, &common) {
                cand.remove(u);
            }
        }
    }
}

struct Searcher<'c, 'a> {
    ctx: &'c Context<'a>,
    best: Vec<usize>,
    nodes: u64,
    limit: Option<u64>,
    stopped: bool,
    shared: Option<&'c AtomicUsize>,
    chosen_bits: BitSet,
    per_level: Vec<usize>,
}

impl<'c, 'a> Searcher<'c, 'a> {
    fn new(ctx: &'c Context<'a>, limit: Option<u64>, shared: Option<&'c AtomicUsize>) -> Self {
        let m = ctx.level.len();
        Self {
            ctx,
            best: Vec::new(),
            nodes: 0,
            limit,
            stopped: false,
            shared,
            chosen_bits: BitSet::new(m),
            per_level: vec![0; ctx.levels.len()],
        }
    }

    /// Searches below a fixed prefix of chosen members.
    fn run(&mut self, prefix: Vec<usize>, cand: BitSet) {
        for &v in &prefix {
            self.chosen_bits.insert(v);
            self.per_level[self.ctx.level[v]] += 1;
        }
        let mut chosen = prefix;
        self.dfs(&mut chosen, cand);
    }

    fn cannot_improve(&self, bound: usize) -> bool {
        // locally an equal size never replaces the incumbent; across workers an
        // equal size may still be the lexicographically earlier optimum
        bound <= self.best.len() || self.shared.is_some_and(|g| bound < g.load(AtomicOrdering::Relaxed))
    }

    fn dfs(&mut self, chosen: &mut Vec<usize>, mut cand: BitSet) {
        if self.stopped {
            return;
        }
        self.nodes += 1;
        if self.limit.is_some_and(|l| self.nodes > l) {
            self.stopped = true;
            return;
        }
        let Some(v) = cand.first() else {
            if chosen.len() > self.best.len() {
                self.best = chosen.clone();
                if let Some(g) = self.shared {
                    g.fetch_max(chosen.len(), AtomicOrdering::Relaxed);
                }
            }
            return;
        };
        let remaining = cand.count();
        if self.cannot_improve(chosen.len() + remaining) {
            return;
        }
        let bound = self
            .ctx
            .clique_bound(&cand)
            .min(self.ctx.level_bound(&cand, &self.per_level));
        if self.cannot_improve(chosen.len() + bound) {
            return;
        }
        cand.remove(v);

        let mut with = cand.clone();
        self.ctx.filter_after(v, &self.chosen_bits, &mut with);
        chosen.push(v);
        self.chosen_bits.insert(v);
        self.per_level[self.ctx.level[v]] += 1;
        self.dfs(chosen, with);
        self.per_level[self.ctx.level[v]] -= 1;
        self.chosen_bits.remove(v);
        chosen.pop();

        self.dfs(chosen, cand);
    }
}

/// Splits the first decisions into independent subproblems listed in search
/// order, solves them concurrently against a shared best size, and keeps the
/// first subproblem (in search order) attaining the maximum.
fn run_parallel(ctx: &Context<'_>, opts: &SearchOptions) -> Result<(Vec<usize>, u64, bool)> {
    let m = ctx.level.len();
    let depth = (usize::BITS - opts.threads.leading_zeros()) as usize + 3;
    let mut tasks: Vec<(Vec<usize>, BitSet)> = Vec::new();
    split(ctx, Vec::new(), BitSet::new(m), BitSet::full(m), depth, &mut tasks);
    let shared = AtomicUsize::new(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let per_task = opts.node_limit.map(|l| l / tasks.len().max(1) as u64 + 1);
    let results: Vec<(Vec<usize>, u64, bool)> = pool.install(|| {
        tasks
            .into_par_iter()
            .map(|(prefix, cand)| {
                let mut s = Searcher::new(ctx, per_task, Some(&shared));
                s.run(prefix, cand);
                (s.best, s.nodes, s.stopped)
            })
            .collect()
    });
    let mut best: Vec<usize> = Vec::new();
    let mut nodes = 0;
    let mut complete = true;
    for (b, n, stopped) in results {
        nodes += n;
        complete &= !stopped;
        if b.len() > best.len() {
            best = b;
        }
    }
    Ok((best, nodes, complete))
}

fn split(
    ctx: &Context<'_>,
    chosen: Vec<usize>,
    chosen_bits: BitSet,
    mut cand: BitSet,
    depth: usize,
    out: &mut Vec<(Vec<usize>, BitSet)>,
) {
    let Some(v) = cand.first().filter(|_| depth > 0) else {
        out.push((chosen, cand));
        return;
    };
    cand.remove(v);
    let mut with = cand.clone();
    ctx.filter_after(v, &chosen_bits, &mut with);
    let mut chosen_with = chosen.clone();
    chosen_with.push(v);
    let mut bits_with = chosen_bits.clone();
    bits_with.insert(v);
    split(ctx, chosen_with, bits_with, with, depth - 1, out);
    split(ctx, chosen, chosen_bits, cand, depth - 1, out);
}
