use kcross_core::constructions::gen_cyclic_intervals;
use kcross_core::search::{bound_table, max_cross_free, table_row, SearchOptions, Universe};
use kcross_core::{find_pairwise_crossing_witness, Family, GroundSet, Mode, SubsetMask};
use proptest::prelude::*;

/// Pairwise crossing table and a `k`-clique test by brute force.
fn has_k_crossing(sets: &[SubsetMask], k: usize, mode: Mode, g: GroundSet) -> bool {
    fn rec(sets: &[SubsetMask], start: usize, cur: &mut Vec<SubsetMask>, k: usize, mode: Mode, g: GroundSet) -> bool {
        if cur.len() == k {
            return true;
        }
        for i in start..sets.len() {
            if cur.iter().all(|&c| mode.crosses(c, sets[i], g)) {
                cur.push(sets[i]);
                if rec(sets, i + 1, cur, k, mode, g) {
                    return true;
                }
                cur.pop();
            }
        }
        false
    }
    rec(sets, 0, &mut Vec::new(), k, mode, g)
}

/// Largest size over every subfamily, and the first subfamily (by canonical
/// index order) reaching it.
fn enumerate_best(f: &Family, k: usize, mode: Mode) -> (usize, Vec<SubsetMask>) {
    let sets = f.sets();
    let m = sets.len();
    let mut best: (usize, Vec<SubsetMask>) = (0, Vec::new());
    for mask in 0u32..1 << m {
        let size = mask.count_ones() as usize;
        if size < best.0 {
            continue;
        }
        let chosen: Vec<SubsetMask> = (0..m).filter(|i| mask & (1 << i) != 0).map(|i| sets[i]).collect();
        if has_k_crossing(&chosen, k, mode, f.ground()) {
            continue;
        }
        let idx: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
        let best_idx: Vec<usize> = best.1.iter().map(|s| f.index_of(*s).unwrap()).collect();
        if size > best.0 || idx < best_idx {
            best = (size, chosen);
        }
    }
    best
}

fn universe() -> impl Strategy<Value = Family> {
    (4usize..=6).prop_flat_map(|n| {
        prop::collection::vec(0u64..(1 << n), 1..=14)
            .prop_map(move |raw| Family::new(GroundSet::new(n).unwrap(), raw.into_iter().map(SubsetMask)).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn search_matches_enumeration(f in universe(), k in 2usize..=3, weak in any::<bool>()) {
        let mode = if weak { Mode::Weak } else { Mode::Strict };
        let r = max_cross_free(&f, k, mode, &SearchOptions::default()).unwrap();
        let (size, sets) = enumerate_best(&f, k, mode);
        prop_assert!(r.proven_optimal);
        prop_assert_eq!(r.size, size);
        prop_assert_eq!(r.best.sets(), &sets[..]);
        prop_assert!(find_pairwise_crossing_witness(&r.best, k, mode).is_none());
    }

    #[test]
    fn threads_do_not_change_the_answer(f in universe(), k in 2usize..=3) {
        let a = max_cross_free(&f, k, Mode::Strict, &SearchOptions::default()).unwrap();
        let b = max_cross_free(&f, k, Mode::Strict, &SearchOptions { threads: 3, node_limit: None }).unwrap();
        prop_assert_eq!(a.best, b.best);
    }
}

/// Sets of sizes 0, 1, n−1, n never cross anything strictly; the rest is
/// enumerated.
fn strict_pairs_oracle(n: usize) -> usize {
    let g = GroundSet::new(n).unwrap();
    let middle: Vec<SubsetMask> = (0..1u64 << n)
        .map(SubsetMask)
        .filter(|s| s.len() >= 2 && s.len() + 2 <= n)
        .collect();
    let fixed = (1 << n) - middle.len();
    let m = middle.len();
    let mut best = 0;
    for mask in 0u32..1 << m {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let ok = (0..m).all(|i| {
            mask & (1 << i) == 0
                || (i + 1..m).all(|j| mask & (1 << j) == 0 || !Mode::Strict.crosses(middle[i], middle[j], g))
        });
        if ok {
            best = size;
        }
    }
    fixed + best
}

#[test]
fn strict_two_cross_free_against_layer_enumeration() {
    assert_eq!(strict_pairs_oracle(4), 12);
    for n in 3..=5 {
        let all = Family::power_set(GroundSet::new(n).unwrap()).unwrap();
        let r = max_cross_free(&all, 2, Mode::Strict, &SearchOptions::default()).unwrap();
        assert_eq!(r.size, strict_pairs_oracle(n), "n={n}");
        assert!(r.size <= 4 * n - 2);
    }
}

#[test]
fn laminar_maximum_is_2n() {
    for n in 3..=5 {
        let all = Family::power_set(GroundSet::new(n).unwrap()).unwrap();
        let r = max_cross_free(&all, 2, Mode::Weak, &SearchOptions::default()).unwrap();
        assert_eq!(r.size, 2 * n);
        assert!(r.best.predicates().is_laminar);
    }
}

#[test]
fn interval_values() {
    for (n, k, expected) in [(4, 2, 10), (5, 2, 14), (6, 2, 18), (6, 3, 28)] {
        let f = gen_cyclic_intervals(n, false).unwrap();
        let r = max_cross_free(&f, k, Mode::Strict, &SearchOptions::default()).unwrap();
        assert_eq!(r.size, expected, "n={n} k={k}");
    }
}

#[test]
fn table_rows_are_monotone() {
    let opts = SearchOptions::default();
    for mode in [Mode::Strict, Mode::Weak] {
        let all = bound_table(3..=5, 2..=4, Universe::All, mode, &opts).unwrap();
        let iv = bound_table(3..=5, 2..=4, Universe::Intervals, mode, &opts).unwrap();
        for w in all.windows(2).filter(|w| w[0].n == w[1].n) {
            assert!(w[0].exact <= w[1].exact);
        }
        for (a, b) in all.iter().zip(&iv) {
            assert_eq!((a.n, a.k), (b.n, b.k));
            assert!(b.exact <= a.exact);
        }
    }
    let r = table_row(4, 3, Universe::All, Mode::Strict, &opts).unwrap();
    assert_eq!(r.exact, 14);
}
