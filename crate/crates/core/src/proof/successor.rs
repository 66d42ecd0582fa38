use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::family::{Family, SubsetMask};

/// One-element extension edge `from → to` with `to = from ∪ {element}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuccessorEdge {
    pub from: usize,
    pub to: usize,
    pub element: u32,
}

/// Directed graph on a family's canonical indices with an edge `A → A ∪ {x}`
/// whenever both sets are members. A set is exceptional when it has two or more
/// out-neighbours.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuccessorGraph {
    pub edges: Vec<SuccessorEdge>,
    pub out: Vec<Vec<usize>>,
    pub into: Vec<Vec<usize>>,
    pub exceptional: Vec<bool>,
}

impl SuccessorGraph {
    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.into[v].len()
    }

    pub fn exceptional_indices(&self) -> Vec<usize> {
        (0..self.exceptional.len()).filter(|&v| self.exceptional[v]).collect()
    }
}

pub fn successor_graph(family: &Family) -> SuccessorGraph {
    let index: HashMap<SubsetMask, usize> = family.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let n = family.len();
    let mut out = vec![Vec::new(); n];
    let mut into = vec![Vec::new(); n];
    let mut edges = Vec::new();
    for (from, a) in family.iter().enumerate() {
        for x in family.ground().complement(a).elements() {
            if let Some(&to) = index.get(&a.with(x)) {
                edges.push(SuccessorEdge { from, to, element: x });
                out[from].push(to);
                into[to].push(from);
            }
        }
    }
    // canonical order puts supersets later, so targets come out sorted per source
    for list in out.iter_mut().chain(into.iter_mut()) {
        list.sort_unstable();
    }
    edges.sort_by_key(|e| (e.from, e.to));
    let exceptional = out.iter().map(|o| o.len() >= 2).collect();
    SuccessorGraph {
        edges,
        out,
        into,
        exceptional,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::gen_laminar_max;

    #[test]
    fn simple_chain() {
        let f = Family::from_lists(2, &[vec![], vec![0], vec![0, 1]]).unwrap();
        let g = successor_graph(&f);
        assert_eq!(
            g.edges.iter().map(|e| (e.from, e.to)).collect::<Vec<_>>(),
            vec![(0, 1), (1, 2)]
        );
        assert!(g.exceptional_indices().is_empty());
    }

    #[test]
    fn branching_root() {
        let f = Family::from_lists(2, &[vec![], vec![0], vec![1]]).unwrap();
        let g = successor_graph(&f);
        assert_eq!(g.edges.len(), 2);
        assert_eq!(g.exceptional_indices(), vec![0]);
    }

    #[test]
    fn laminar_four_against_pair_scan() {
        let f = gen_laminar_max(4).unwrap();
        let g = successor_graph(&f);
        let sets = f.sets();
        let mut expected = Vec::new();
        for (i, a) in sets.iter().enumerate() {
            for (j, b) in sets.iter().enumerate() {
                if a.is_subset(*b) && b.len() == a.len() + 1 {
                    expected.push((i, j));
                }
            }
        }
        let got: Vec<_> = g.edges.iter().map(|e| (e.from, e.to)).collect();
        assert_eq!(got, expected);
        let exc: Vec<usize> = (0..sets.len())
            .filter(|&i| expected.iter().filter(|e| e.0 == i).count() >= 2)
            .collect();
        assert_eq!(g.exceptional_indices(), exc);
        for e in &g.edges {
            assert_eq!(sets[e.to].len(), sets[e.from].len() + 1);
        }
    }
}
