//! Distinguished subgroups of `SV_G` and constructive witnesses.

mod decompose;
mod gens;
mod witness;
mod wreath;

pub use decompose::{commutator, sk_commutator_decomposition, CommutatorPair};
pub use gens::{generating_set, v_generators};
pub use witness::{normal_generation_witness, ConjugacyWord, WitnessBase, WitnessOptions};
pub use wreath::{quasi_retract, section_zeta, wreath_multiply, zeta_generator, WreathElement};

use crate::element::Quadruple;
use crate::error::{Error, Result};
use crate::forest::{common_refinement, tree_for_brick, BrickAddress, Permutation, Tree};
use crate::label::{LabelElement, LabelOracle};

/// Whether `h` lies in the canonical kernel `SK_G`: every domain leaf is
/// mapped onto itself and every label acts trivially on `S`.
pub fn in_canonical_kernel<O: LabelOracle + ?Sized>(oracle: &O, h: &Quadruple) -> Result<bool> {
    if !h.is_group_element() {
        return Err(Error::NotGroupElement);
    }
    let domain = h.plus().leaves();
    let range = h.minus().leaves();
    for (i, (_, psi)) in domain.iter().enumerate() {
        if range[h.perm().apply(i)].1 != *psi || !oracle.acts_trivially(&h.labels()[i])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `h` rewritten as `[T, id, (k_1, …, k_n), T]`, if it lies in `SK_G`.
pub fn kernel_form<O: LabelOracle + ?Sized>(oracle: &O, h: &Quadruple) -> Result<(Tree, Vec<LabelElement>)> {
    if !in_canonical_kernel(oracle, h)? {
        return Err(Error::NotInKernel);
    }
    let labels = h.labels().iter().map(|g| oracle.normalize(g)).collect::<Result<_>>()?;
    Ok((h.plus().trees()[0].clone(), labels))
}

/// `h` acting inside `B(ψ)` through the canonical homeomorphism and as the
/// identity elsewhere.
pub fn defer_element(psi: &BrickAddress, h: &Quadruple) -> Result<Quadruple> {
    if !h.is_group_element() {
        return Err(Error::NotGroupElement);
    }
    let (tree, index) = tree_for_brick(psi);
    let n = tree.leaf_count();
    let graft = |inner: &Tree| {
        let mut grafts = (0..n).map(|i| if i == index { inner.clone() } else { Tree::Leaf });
        tree.graft(&mut grafts)
    };
    let plus = graft(&h.plus().trees()[0]);
    let minus = graft(&h.minus().trees()[0]);
    let m = h.leaf_count();
    let before = Permutation::identity(index);
    let after = Permutation::identity(n - index - 1);
    let perm = before.direct_sum(h.perm()).direct_sum(&after);
    let mut labels = vec![LabelElement::identity(); index];
    labels.extend_from_slice(h.labels());
    labels.extend(std::iter::repeat_n(LabelElement::identity(), n - index - 1));
    debug_assert_eq!(labels.len(), n - 1 + m);
    Quadruple::from_trees(minus, perm, labels, plus)
}

/// The deferment `D_{B(ψ)}(g)`.
pub fn deferment(psi: &BrickAddress, g: &LabelElement) -> Quadruple {
    defer_element(psi, &Quadruple::iota(g.clone())).expect("ι_∅(g) is a group element")
}

/// Whether `h` lies in the full deferment `D_U(SV_G)`: outside `⋃U`, `h`
/// fixes every point with germinal twist exactly `1`.
pub fn in_full_deferment<O: LabelOracle + ?Sized>(oracle: &O, h: &Quadruple, u: &[BrickAddress]) -> Result<bool> {
    if !h.is_group_element() {
        return Err(Error::NotGroupElement);
    }
    let cover = Tree::refining(u)?;
    let (e, _, _) = common_refinement(&h.plus().trees()[0], &cover);
    let fine = h.expand_domain_by(oracle, &e)?;
    let domain = fine.plus().leaves();
    let range = fine.minus().leaves();
    for (i, (_, psi)) in domain.iter().enumerate() {
        if u.iter().any(|b| b.contains(psi)) {
            continue;
        }
        if range[fine.perm().apply(i)].1 != *psi || !oracle.is_identity(&fine.labels()[i])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Builds `[T_-, σ, (1, …, 1), T_+]` from a prefix replacement map
/// `domain brick ↦ range brick`; both sides must be arboreal partitions.
pub fn from_brick_map(pairs: &[(BrickAddress, BrickAddress)]) -> Result<Quadruple> {
    let domain: Vec<BrickAddress> = pairs.iter().map(|p| p.0.clone()).collect();
    let range: Vec<BrickAddress> = pairs.iter().map(|p| p.1.clone()).collect();
    let plus = Tree::refining(&domain)?;
    let minus = Tree::refining(&range)?;
    let plus_leaves = plus.leaves();
    let minus_leaves = minus.leaves();
    if plus_leaves.len() != pairs.len() || minus_leaves.len() != pairs.len() {
        return Err(Error::Invalid("brick map sides must partition the cube".into()));
    }
    let images = plus_leaves
        .iter()
        .map(|d| {
            let j = domain.iter().position(|x| x == d).expect("leaf is a listed brick");
            minus_leaves.iter().position(|x| *x == range[j]).expect("leaf is a listed brick")
        })
        .collect();
    Quadruple::from_permutation(minus, Permutation::from_images(images)?, plus)
}
