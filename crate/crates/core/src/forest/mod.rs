//! Multicolored trees and forests, dyadic bricks and permutations.

mod brick;
mod perm;
mod tree;

pub use brick::{bits_to_string, BrickAddress};
pub use perm::Permutation;
pub use tree::Tree;

use crate::error::{Error, Result};

/// An ordered list of trees. The domain has one copy of `C^S` per tree,
/// the range one copy per leaf.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Forest {
    trees: Vec<Tree>,
}

impl Forest {
    pub fn new(trees: Vec<Tree>) -> Self {
        assert!(!trees.is_empty(), "a forest has at least one tree");
        Forest { trees }
    }

    pub fn single(tree: Tree) -> Self {
        Forest { trees: vec![tree] }
    }

    pub fn identity(n: usize) -> Self {
        Forest::new(vec![Tree::Leaf; n])
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn domain_arity(&self) -> usize {
        self.trees.len()
    }

    pub fn range_arity(&self) -> usize {
        self.trees.iter().map(Tree::leaf_count).sum()
    }

    /// Leaves as `(root, address)`, left to right.
    pub fn leaves(&self) -> Vec<(usize, BrickAddress)> {
        self.trees
            .iter()
            .enumerate()
            .flat_map(|(r, t)| t.leaves().into_iter().map(move |a| (r, a)))
            .collect()
    }

    pub fn direct_sum(&self, other: &Forest) -> Forest {
        let mut trees = self.trees.clone();
        trees.extend_from_slice(&other.trees);
        Forest { trees }
    }

    /// `self ∘ inner`: the trees of `self` grafted onto the leaves of
    /// `inner` (so `inner` acts first).
    pub fn compose(&self, inner: &Forest) -> Result<Forest> {
        if inner.range_arity() != self.domain_arity() {
            return Err(Error::Arity(format!(
                "cannot compose: {} leaves against {} roots",
                inner.range_arity(),
                self.domain_arity()
            )));
        }
        let mut grafts = self.trees.iter().cloned();
        let trees = inner.trees.iter().map(|t| t.graft(&mut grafts)).collect();
        Ok(Forest { trees })
    }

    /// Locates global leaf `index` as `(tree, local index)`.
    pub fn locate(&self, mut index: usize) -> (usize, usize) {
        for (r, t) in self.trees.iter().enumerate() {
            let n = t.leaf_count();
            if index < n {
                return (r, index);
            }
            index -= n;
        }
        panic!("leaf index out of range");
    }

    pub fn split_leaf(&self, index: usize, color: crate::label::ColorId) -> Forest {
        let (r, i) = self.locate(index);
        let mut trees = self.trees.clone();
        trees[r] = trees[r].split_leaf(i, color);
        Forest { trees }
    }

    pub fn caret_at(&self, index: usize) -> Option<crate::label::ColorId> {
        let (r, i) = self.locate(index);
        if i + 1 >= self.trees[r].leaf_count() {
            return None;
        }
        self.trees[r].caret_at(i)
    }

    pub fn collapse_at(&self, index: usize) -> Forest {
        let (r, i) = self.locate(index);
        let mut trees = self.trees.clone();
        trees[r] = trees[r].collapse_at(i);
        Forest { trees }
    }
}

/// Forests `E`, `E'` and `σ` with `E ∘ T = p_σ ∘ E' ∘ T'`.
///
/// Leaf `j` of `E' ∘ T'` is the same brick as leaf `σ(j)` of `E ∘ T`.
/// The refinement is the meet of the two partitions: the tree grafted on a
/// leaf `ψ` of `T` is `T'` seen from inside `B(ψ)`, and symmetrically.
pub fn common_refinement(t: &Tree, t_prime: &Tree) -> (Forest, Forest, Permutation) {
    let left = t.leaves();
    let right = t_prime.leaves();
    let e = Forest::new(left.iter().map(|psi| t_prime.restrict(psi)).collect());
    let e_prime = Forest::new(right.iter().map(|phi| t.restrict(phi)).collect());
    let left_fine: Vec<BrickAddress> = e.compose(&Forest::single(t.clone())).expect("arity").leaves().into_iter().map(|(_, a)| a).collect();
    let right_fine: Vec<BrickAddress> =
        e_prime.compose(&Forest::single(t_prime.clone())).expect("arity").leaves().into_iter().map(|(_, a)| a).collect();
    let position: std::collections::HashMap<&BrickAddress, usize> =
        left_fine.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let images = right_fine.iter().map(|a| position[a]).collect();
    let sigma = Permutation::from_images(images).expect("both sides partition the same bricks");
    (e, e_prime, sigma)
}

/// [`common_refinement`] applied tree by tree to two forests with the same
/// domain arity.
pub fn common_refinement_forests(f: &Forest, f_prime: &Forest) -> Result<(Forest, Forest, Permutation)> {
    if f.domain_arity() != f_prime.domain_arity() {
        return Err(Error::Arity(format!(
            "forests with {} and {} roots cannot be refined together",
            f.domain_arity(),
            f_prime.domain_arity()
        )));
    }
    let mut e_trees = Vec::new();
    let mut e_prime_trees = Vec::new();
    let mut sigma = Permutation::identity(0);
    for (t, t_prime) in f.trees().iter().zip(f_prime.trees()) {
        let (e, e_prime, s) = common_refinement(t, t_prime);
        e_trees.extend_from_slice(e.trees());
        e_prime_trees.extend_from_slice(e_prime.trees());
        sigma = sigma.direct_sum(&s);
    }
    Ok((Forest::new(e_trees), Forest::new(e_prime_trees), sigma))
}

/// A tree with `B(ψ)` as a leaf, splitting color by color in increasing
/// order, and the 0-based index of that leaf.
pub fn tree_for_brick(psi: &BrickAddress) -> (Tree, usize) {
    let tree = Tree::refining(std::slice::from_ref(psi)).expect("a single brick");
    let index = tree.leaves().iter().position(|a| a == psi).expect("brick is a leaf");
    (tree, index)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::ColorId;

    const R: ColorId = ColorId(0);
    const B: ColorId = ColorId(1);

    #[test]
    fn cross_relation_refinement() {
        let (e, e_prime, sigma) = common_refinement(&Tree::caret(R), &Tree::caret(B));
        assert_eq!(e, Forest::new(vec![Tree::caret(B), Tree::caret(B)]));
        assert_eq!(e_prime, Forest::new(vec![Tree::caret(R), Tree::caret(R)]));
        assert_eq!(sigma.one_based(), vec![1, 3, 2, 4]);
    }

    #[test]
    fn refinement_of_equal_trees_is_trivial() {
        let (e, e_prime, sigma) = common_refinement(&Tree::caret(R), &Tree::caret(R));
        assert_eq!(e, Forest::identity(2));
        assert_eq!(e_prime, Forest::identity(2));
        assert!(sigma.is_identity());
    }

    #[test]
    fn refinement_against_a_leaf() {
        let t = Tree::node(R, Tree::caret(B), Tree::Leaf);
        let (e, e_prime, sigma) = common_refinement(&Tree::Leaf, &t);
        assert_eq!(e, Forest::single(t));
        assert_eq!(e_prime, Forest::identity(3));
        assert!(sigma.is_identity());
    }

    #[test]
    fn composition_examples() {
        let xr = Forest::single(Tree::caret(R));
        let bb = Forest::new(vec![Tree::caret(B), Tree::caret(B)]);
        let composite = bb.compose(&xr).unwrap();
        let leaves: Vec<_> = composite.leaves().into_iter().map(|(_, a)| a).collect();
        assert_eq!(
            leaves,
            vec![
                BrickAddress::from_strs(&[(0, "0"), (1, "0")]),
                BrickAddress::from_strs(&[(0, "0"), (1, "1")]),
                BrickAddress::from_strs(&[(0, "1"), (1, "0")]),
                BrickAddress::from_strs(&[(0, "1"), (1, "1")]),
            ]
        );
        assert_eq!(Forest::identity(2).compose(&xr).unwrap(), xr);
        let sum = Forest::single(Tree::caret(R)).direct_sum(&Forest::identity(1));
        assert_eq!((sum.domain_arity(), sum.range_arity()), (2, 3));
        assert!(bb.compose(&bb).is_err());
    }

    #[test]
    fn tree_for_brick_examples() {
        assert_eq!(tree_for_brick(&BrickAddress::whole()), (Tree::Leaf, 0));
        let (t, i) = tree_for_brick(&BrickAddress::from_strs(&[(0, "1"), (1, "0")]));
        assert_eq!(t.leaf_count(), 3);
        assert_eq!(i, 1);
        let (t, i) = tree_for_brick(&BrickAddress::from_strs(&[(0, "01")]));
        assert_eq!(t, Tree::node(R, Tree::caret(R), Tree::Leaf));
        assert_eq!(i, 1);
    }
}
