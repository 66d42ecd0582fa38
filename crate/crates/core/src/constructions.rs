//! Generators for structured and extremal families.
//!
//! Every seeded routine in this crate draws from [`rng`], a ChaCha8 stream seeded
//! with `ChaCha8Rng::seed_from_u64(seed)`. Shuffles use `rand`'s Fisher–Yates
//! (`SliceRandom::shuffle`), and uniform picks use `Rng::random_range`. Both are
//! pinned by `Cargo.lock`, so a seed always yields the same fixture.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{Family, GroundSet, Mode, SubsetMask};
use crate::graph::SimpleGraph;

pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `{start, start+1, .., start+length-1}` modulo `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicInterval {
    start: u32,
    length: u32,
    n: u32,
}

impl CyclicInterval {
    pub fn new(ground: GroundSet, start: u32, length: u32) -> Result<Self> {
        let n = ground.size() as u32;
        if start >= n || length > n {
            return Err(Error::InvalidArgument(format!(
                "interval start {start} length {length} does not fit n={n}"
            )));
        }
        // ∅ and X have a single canonical representative
        let start = if length == 0 || length == n { 0 } else { start };
        Ok(Self { start, length, n })
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn mask(&self) -> SubsetMask {
        SubsetMask::from_elements((0..self.length).map(|i| (self.start + i) % self.n))
    }
}

/// A laminar family of size `2n`: `∅`, all singletons, and every block of the
/// balanced binary splitting of `0..n` (left block takes `⌈m/2⌉`), including `X`.
pub fn gen_laminar_max(n: usize) -> Result<Family> {
    let ground = GroundSet::new(n)?;
    let mut sets = vec![SubsetMask::EMPTY];
    split_blocks(0, n as u32, &mut sets);
    Family::new(ground, sets)
}

fn split_blocks(lo: u32, hi: u32, out: &mut Vec<SubsetMask>) {
    out.push(SubsetMask::from_elements(lo..hi));
    let m = hi - lo;
    if m > 1 {
        let mid = lo + m.div_ceil(2);
        split_blocks(lo, mid, out);
        split_blocks(mid, hi, out);
    }
}

/// All `n(n-1)` nonempty proper cyclic intervals of `0..n`, plus `∅` and `X`
/// when `include_trivial` is set.
pub fn gen_cyclic_intervals(n: usize, include_trivial: bool) -> Result<Family> {
    let ground = GroundSet::new(n)?;
    let mut sets = Vec::new();
    for length in 1..n as u32 {
        for start in 0..n as u32 {
            sets.push(CyclicInterval::new(ground, start, length)?.mask());
        }
    }
    if include_trivial {
        sets.push(SubsetMask::EMPTY);
        sets.push(ground.full());
    }
    Family::new(ground, sets)
}

pub const RANDOM_GEN_MAX_N: usize = 16;

/// Randomized greedy: walk the `2^n` subsets in a seed-determined order and keep
/// each one that does not complete `k` pairwise crossing members.
pub fn gen_random_cross_free(n: usize, k: usize, mode: Mode, seed: u64) -> Result<Family> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("k must be at least 2, got {k}")));
    }
    if n > RANDOM_GEN_MAX_N {
        return Err(Error::InvalidArgument(format!(
            "random generation supports n ≤ {RANDOM_GEN_MAX_N}, got {n}"
        )));
    }
    let ground = GroundSet::new(n)?;
    let mut order: Vec<SubsetMask> = (0..1u64 << n).map(SubsetMask).collect();
    order.shuffle(&mut rng(seed));
    let mut kept = Vec::new();
    for s in order {
        if admits(&kept, s, k, mode, ground) {
            kept.push(s);
        }
    }
    Family::new(ground, kept)
}

/// As [`gen_random_cross_free`], but keeps only nonempty sets meeting every
/// kept set (an intersecting family) and stops at `max_size` members.
pub fn gen_random_intersecting(n: usize, k: usize, mode: Mode, max_size: usize, seed: u64) -> Result<Family> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("k must be at least 2, got {k}")));
    }
    if n > RANDOM_GEN_MAX_N {
        return Err(Error::InvalidArgument(format!(
            "random generation supports n ≤ {RANDOM_GEN_MAX_N}, got {n}"
        )));
    }
    let ground = GroundSet::new(n)?;
    let mut order: Vec<SubsetMask> = (1..1u64 << n).map(SubsetMask).collect();
    order.shuffle(&mut rng(seed));
    let mut kept: Vec<SubsetMask> = Vec::new();
    for s in order {
        if kept.len() >= max_size {
            break;
        }
        if kept.iter().all(|&t| t.intersects(s)) && admits(&kept, s, k, mode, ground) {
            kept.push(s);
        }
    }
    Family::new(ground, kept)
}

/// `count` distinct random `ell`-element subsets (fewer if `C(n, ell)` is smaller).
pub fn gen_random_uniform(n: usize, ell: usize, count: usize, seed: u64) -> Result<Family> {
    if n > RANDOM_GEN_MAX_N || ell > n {
        return Err(Error::InvalidArgument(format!(
            "need ell ≤ n ≤ {RANDOM_GEN_MAX_N}, got n={n}, ell={ell}"
        )));
    }
    let ground = GroundSet::new(n)?;
    let mut layer: Vec<SubsetMask> = (0..1u64 << n).map(SubsetMask).filter(|s| s.len() == ell).collect();
    layer.shuffle(&mut rng(seed));
    layer.truncate(count);
    Family::new(ground, layer)
}

/// Whether `candidate` can join `members` without creating `k` pairwise crossing sets.
pub fn admits(members: &[SubsetMask], candidate: SubsetMask, k: usize, mode: Mode, ground: GroundSet) -> bool {
    let nbrs: Vec<SubsetMask> = members
        .iter()
        .copied()
        .filter(|&m| mode.crosses(m, candidate, ground))
        .collect();
    if nbrs.len() < k - 1 {
        return true;
    }
    let mut g = SimpleGraph::new(nbrs.len());
    for (i, &a) in nbrs.iter().enumerate() {
        for (j, &b) in nbrs.iter().enumerate().skip(i + 1) {
            if mode.crosses(a, b, ground) {
                g.add_edge(i, j);
            }
        }
    }
    g.lex_least_clique(k - 1).is_none()
}
