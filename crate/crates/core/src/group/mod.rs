//! Permutation groups of discretized volumes: stabilizer chains, conjugacy
//! classes, subgroups of given index and Sunada triples.

mod chain;
mod perm;
mod permgroup;
mod subgroups;

pub use chain::StabChain;
pub use perm::Permutation;
pub use permgroup::{generator_name, word_rewrite, ClassMap, ConjugacyClass, PermutationGroup, ELEMENT_LIMIT};
pub use subgroups::{
    action_subgroup, coset_graph, is_sunada_triple, point_stabilizer, subgroup_from_generators, subgroups_of_index, SubgroupHandle,
    INDEX_LIMIT,
};

use crate::geometry::DiscretizedVolume;
use crate::label::Label;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("cannot parse cycle notation {0:?}")]
    Parse(String),
    #[error("generator {name} has degree {found}, expected {expected}")]
    DegreeMismatch { name: String, expected: usize, found: usize },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("group of order {order} exceeds the enumeration limit {limit}")]
    GroupTooLarge { order: u128, limit: u128 },
    #[error("index {index} exceeds the coset enumeration limit {limit}")]
    IndexTooLarge { index: usize, limit: usize },
    #[error("index {index} does not divide the group order {order}")]
    IndexDoesNotDivide { index: usize, order: u128 },
    #[error("{0} is not an element of the group")]
    NotInGroup(String),
    #[error("generator {0} is not an involution")]
    NotInvolution(String),
    #[error("coset graphs need at most three generators, got {0}")]
    TooManyGenerators(usize),
    #[error("graph error: {0}")]
    Graph(String),
}

/// Generator for each label: the product of the transpositions across
/// internal sides of that label. Copies whose side is on the boundary stay fixed.
pub fn group_from_dv(dv: &DiscretizedVolume) -> PermutationGroup {
    let n = dv.n_copies();
    let named = Label::ALL
        .iter()
        .map(|&l| {
            let mut images: Vec<usize> = (0..n).collect();
            for g in dv.internal_sides().iter().filter(|g| g.label == l) {
                images[g.a] = g.b;
                images[g.b] = g.a;
            }
            (l.letter().to_string(), Permutation::from_images(images).expect("disjoint transpositions"))
        })
        .collect();
    PermutationGroup::new(n, named).expect("generators share the degree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{apply_word, build_dv, Gluing, Tile};
    use crate::label::Label::*;

    #[test]
    fn generators_from_gluing() {
        let t = Tile::equilateral();
        let dv = apply_word(&t, &[Alpha]).unwrap();
        let g = group_from_dv(&dv);
        assert_eq!(g.generator("a").unwrap().to_string(), "(1,2)");
        assert!(g.generator("b").unwrap().is_identity());
        assert!(g.generator("c").unwrap().is_identity());
        let single = group_from_dv(&apply_word(&t, &[]).unwrap());
        assert!(single.generators().iter().all(|p| p.is_identity()));
        assert_eq!(single.order(), 1);
    }

    #[test]
    fn seven_path_generators() {
        let t = Tile::equilateral();
        let gl = [
            Gluing::new(0, 1, Gamma),
            Gluing::new(1, 2, Beta),
            Gluing::new(2, 3, Alpha),
            Gluing::new(3, 4, Gamma),
            Gluing::new(4, 5, Beta),
            Gluing::new(5, 6, Alpha),
        ];
        let g = group_from_dv(&build_dv(&t, &gl).unwrap());
        assert_eq!(g.generator("a").unwrap().to_string(), "(3,4)(6,7)");
        assert_eq!(g.generator("b").unwrap().to_string(), "(2,3)(5,6)");
        assert_eq!(g.generator("c").unwrap().to_string(), "(1,2)(4,5)");
        assert!(g.generators().iter().all(|p| p.is_involution()));
        assert_eq!(g.order(), 2520);
    }
}
