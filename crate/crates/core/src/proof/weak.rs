use crate::crossing::find_pairwise_crossing_witness;
use crate::error::{Error, Result};
use crate::family::{Family, Mode};

/// Turns a strict `k`-cross-free family into a weakly-`k`-cross-free one of at
/// least half the size.
///
/// For an element `x`, the members avoiding `x` never cover `X` pairwise, so they
/// are weakly cross-free; if they are fewer than half, the complements of the
/// remaining members avoid `x` instead. Every `x` is tried and the largest result
/// kept; among equal sizes a subfamily of the input wins over a complemented one,
/// then the smallest `x`.
pub fn weak_reduce(family: &Family, k: usize) -> Result<Family> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("k must be at least 2, got {k}")));
    }
    if let Some(witness) = find_pairwise_crossing_witness(family, k, Mode::Strict) {
        return Err(Error::NotCrossFree { k, witness });
    }
    let ground = family.ground();
    let mut best: Option<((usize, bool), Family)> = None;
    for x in ground.elements() {
        let avoiding = family.filter(|a| !a.contains(x));
        let (candidate, kept) = if 2 * avoiding.len() >= family.len() {
            (avoiding, true)
        } else {
            let flipped = Family::new(
                ground,
                family.iter().filter(|a| a.contains(x)).map(|a| ground.complement(a)),
            )?;
            (flipped, false)
        };
        let key = (candidate.len(), kept);
        if best.as_ref().is_none_or(|(b, _)| key > *b) {
            best = Some((key, candidate));
        }
    }
    let (_, reduced) = best.expect("ground set is nonempty");
    if let Some(w) = find_pairwise_crossing_witness(&reduced, k, Mode::Weak) {
        return Err(Error::InvalidArgument(format!(
            "reduction left weakly crossing members {w}"
        )));
    }
    Ok(reduced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::GroundSet;

    #[test]
    fn power_set_of_three() {
        let f = Family::power_set(GroundSet::new(3).unwrap()).unwrap();
        let r = weak_reduce(&f, 2).unwrap();
        assert_eq!(r.to_lists(), vec![vec![], vec![1], vec![2], vec![1, 2]]);
        assert!(r.predicates().is_laminar);
    }

    #[test]
    fn singleton_family_is_kept() {
        let f = Family::from_lists(3, &[vec![0, 2]]).unwrap();
        assert_eq!(weak_reduce(&f, 2).unwrap(), f);
    }

    #[test]
    fn empty_and_full() {
        let f = Family::from_lists(2, &[vec![], vec![0, 1]]).unwrap();
        let r = weak_reduce(&f, 2).unwrap();
        assert_eq!(r.to_lists(), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn rejects_crossing_input() {
        let f = Family::from_lists(4, &[vec![0, 1], vec![1, 2]]).unwrap();
        match weak_reduce(&f, 2) {
            Err(Error::NotCrossFree { witness, .. }) => assert_eq!(witness.len(), 2),
            other => panic!("expected NotCrossFree, got {other:?}"),
        }
    }
}
