//! The bundled example cross-support tree over nine elements, and single-field
//! mutations of it that break exactly one named requirement.

use super::chains::{parse_chains, Chain, ChainCollection};
use super::ordering::{parse_ordering, Ordering};
use super::tree::{Axiom, CrossSupportTree, TreeJson};
use crate::family::SubsetMask;

pub const FIG1_CHAINS: &str = include_str!("../../fixtures/fig1/chains.txt");
pub const FIG1_ORDERING: &str = include_str!("../../fixtures/fig1/ordering.txt");
pub const FIG1_TREE: &str = include_str!("../../fixtures/fig1/tree.json");

#[derive(Clone, Debug)]
pub struct TreeFixture {
    pub chains: ChainCollection,
    pub ordering: Ordering,
    pub tree: CrossSupportTree,
}

pub fn fig1() -> TreeFixture {
    TreeFixture {
        chains: parse_chains(FIG1_CHAINS).expect("bundled chains parse"),
        ordering: parse_ordering(FIG1_ORDERING).expect("bundled ordering parses"),
        tree: CrossSupportTree::parse_json(FIG1_TREE).expect("bundled tree parses"),
    }
}

#[derive(Clone, Debug)]
pub struct Mutation {
    pub name: &'static str,
    pub expected: Axiom,
    pub fixture: TreeFixture,
}

fn m(e: &[u32]) -> SubsetMask {
    SubsetMask::from_elements(e.iter().copied())
}

fn edit_tree(f: &TreeFixture, edit: impl FnOnce(&mut TreeJson)) -> TreeFixture {
    let mut json = f.tree.to_json();
    edit(&mut json);
    TreeFixture {
        tree: CrossSupportTree::from_json(&json).expect("mutation keeps labels"),
        ..f.clone()
    }
}

fn edit_chain(f: &TreeFixture, index: usize, chain: Chain) -> TreeFixture {
    let mut chains = f.chains.chains().to_vec();
    chains[index] = chain;
    TreeFixture {
        chains: ChainCollection::new(f.chains.ground(), chains).expect("mutated chains stay disjoint"),
        ..f.clone()
    }
}

/// Ten mutations of [`fig1`], each paired with the first requirement it breaks.
pub fn fig1_mutations() -> Vec<Mutation> {
    let f = fig1();
    let mut out = Vec::new();
    let mut push = |name, expected, fixture| {
        out.push(Mutation {
            name,
            expected,
            fixture,
        })
    };
    push(
        "swap root children",
        Axiom::T2,
        edit_tree(&f, |t| t.children.swap(0, 1)),
    );
    push(
        "swap children under node a",
        Axiom::T2,
        edit_tree(&f, |t| t.children[1].children.swap(0, 1)),
    );
    push(
        "swap children under node e",
        Axiom::T2,
        edit_tree(&f, |t| t.children[0].children.swap(0, 1)),
    );
    push(
        "edge e-f label 4 -> 5",
        Axiom::T2,
        edit_tree(&f, |t| t.children[0].children[1].edge_label_from_parent = Some(5)),
    );
    push(
        "edge root-a label 1 -> 3",
        Axiom::T2,
        edit_tree(&f, |t| t.children[1].edge_label_from_parent = Some(3)),
    );
    push(
        "edge a-c label 1 -> 8",
        Axiom::T2,
        edit_tree(&f, |t| t.children[1].children[0].edge_label_from_parent = Some(8)),
    );
    push(
        "chain f base drops 0",
        Axiom::T4,
        edit_chain(&f, 5, Chain::new(m(&[1, 3, 6]), vec![5, 4])),
    );
    push(
        "chain b base 3,4,5 -> 3,5,6",
        Axiom::T4,
        edit_chain(&f, 2, Chain::new(m(&[3, 5, 6]), vec![8, 0])),
    );
    push(
        "chain c base gains 2",
        Axiom::T5,
        edit_chain(&f, 3, Chain::new(m(&[0, 2, 3, 4, 5, 7]), vec![8, 1])),
    );
    push(
        "extra child under leaf g",
        Axiom::Perfect,
        edit_tree(&f, |t| {
            t.children[0].children[0].children.push(TreeJson {
                chain: 6,
                edge_label_from_parent: Some(2),
                children: vec![],
            })
        }),
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::tree::validate_tree;

    #[test]
    fn fig1_passes_core_axioms() {
        let f = fig1();
        assert_eq!(f.chains.len(), 7);
        assert_eq!(f.tree.len(), 7);
        let r = validate_tree(&f.tree, &f.chains, &f.ordering).unwrap();
        assert!(r.is_valid(), "{:?}", r.failed_axioms());
        assert_eq!(r.height, Some(2));
    }

    #[test]
    fn fig1_bold_sets() {
        // S_v from the drawing, shifted to 0-based
        let f = fig1();
        let s: Vec<_> = (1..7).map(|v| f.tree.s(v, &f.chains).unwrap()).collect();
        assert_eq!(
            s,
            vec![
                m(&[0, 1, 3, 4, 5]),
                m(&[0, 1, 3, 4, 5, 6, 7, 8]),
                m(&[0, 1, 3, 5, 6]),
                m(&[0, 3, 4]),
                m(&[0, 3, 4, 5, 7, 8]),
                m(&[3, 4, 5, 8]),
            ]
        );
    }

    #[test]
    fn every_mutation_names_its_axiom() {
        for mu in fig1_mutations() {
            let r = validate_tree(&mu.fixture.tree, &mu.fixture.chains, &mu.fixture.ordering).unwrap();
            let failed = r.failed_core();
            assert_eq!(failed.first(), Some(&mu.expected), "{}: {failed:?}", mu.name);
        }
    }
}
