use crate::element::Quadruple;
use crate::error::Result;
use crate::forest::{Permutation, Tree};
use crate::label::{ColorId, LabelElement, LabelOracle};

use super::kernel_form;

/// A pair `(c, d)` standing for the commutator `[c, d] = c d c⁻¹ d⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorPair {
    pub c: Quadruple,
    pub d: Quadruple,
}

impl CommutatorPair {
    pub fn evaluate<O: LabelOracle + ?Sized>(&self, oracle: &O) -> Result<Quadruple> {
        commutator(oracle, &self.c, &self.d)
    }
}

/// `[x, y] = x y x⁻¹ y⁻¹`.
pub fn commutator<O: LabelOracle + ?Sized>(oracle: &O, x: &Quadruple, y: &Quadruple) -> Result<Quadruple> {
    let xy = x.multiply(oracle, y)?;
    let xyx = xy.multiply(oracle, &x.inverse(oracle)?)?;
    xyx.multiply(oracle, &y.inverse(oracle)?)
}

/// `p x p⁻¹`.
fn conjugate<O: LabelOracle + ?Sized>(oracle: &O, p: &Quadruple, x: &Quadruple) -> Result<Quadruple> {
    p.multiply(oracle, x)?.multiply(oracle, &p.inverse(oracle)?)
}

fn vine(color: ColorId, leaves: usize) -> Tree {
    (1..leaves).fold(Tree::Leaf, |t, _| Tree::node(color, t, Tree::Leaf))
}

/// The permutation quadruples `a = [T'', α, 1, T']` and `b = [T', β, 1, T'']`
/// for a tree `T` with `n ≥ 2` leaves: `T'` splits the first leaf of `T`
/// into `n` pieces, `T''` splits every other leaf of `T` once.
fn shuffles(tree: &Tree, color: ColorId) -> Result<(Quadruple, Quadruple)> {
    let n = tree.leaf_count();
    let t1 = tree.graft(&mut (0..n).map(|i| if i == 0 { vine(color, n) } else { Tree::Leaf }));
    let t2 = tree.graft(&mut (0..n).map(|i| if i == 0 { Tree::Leaf } else { Tree::caret(color) }));
    // α: pieces of the first leaf go to the odd slots of T'', leaf j of T
    // to the first half of its split.
    let mut alpha: Vec<usize> = (0..n).map(|i| 2 * i).collect();
    alpha.extend((0..n - 1).map(|i| 2 * i + 1));
    // β: second halves go back to leaf j of T, everything else fills the
    // pieces of the first leaf in order.
    let mut beta = vec![0; 2 * n - 1];
    let mut next = 0;
    for (p, slot) in beta.iter_mut().enumerate() {
        if p >= 2 && p % 2 == 0 {
            *slot = n + p / 2 - 1;
        } else {
            *slot = next;
            next += 1;
        }
    }
    let a = Quadruple::from_permutation(t2.clone(), Permutation::from_images(alpha)?, t1.clone())?;
    let b = Quadruple::from_permutation(t1, Permutation::from_images(beta)?, t2)?;
    Ok((a, b))
}

/// For `v = [T, id, (1, k_2, …, k_n), T]` with labels in `K`, a pair with
/// `[c, d] = v`: `c = b v b⁻¹`, `d = b a b⁻¹`.
fn v_commutator<O: LabelOracle + ?Sized>(oracle: &O, v: &Quadruple, tree: &Tree, color: ColorId) -> Result<CommutatorPair> {
    let (a, b) = shuffles(tree, color)?;
    Ok(CommutatorPair { c: conjugate(oracle, &b, v)?, d: conjugate(oracle, &b, &a)? })
}

/// Writes `h ∈ SK_G` as a product of two commutators `[c₁, d₁][c₂, d₂]`.
///
/// `h = [T, id, (k_1, …, k_n), T]` splits as `(k_1, 1, …, 1)·(1, k_2, …, k_n)`;
/// the first factor is conjugate to `(1, k_1, 1, …, 1)` by the transposition
/// of the first two leaves, and each factor with trivial first label is a
/// single commutator of shuffle conjugates.
pub fn sk_commutator_decomposition<O: LabelOracle + ?Sized>(
    oracle: &O,
    h: &Quadruple,
) -> Result<(CommutatorPair, CommutatorPair)> {
    let (mut tree, mut labels) = kernel_form(oracle, h)?;
    let color = oracle
        .colors()
        .map(|c| c[0])
        .unwrap_or_else(|| {
            let mut used = Vec::new();
            tree.colors(&mut used);
            used.into_iter().min().unwrap_or(ColorId(0))
        });
    if labels.len() == 1 {
        tree = Tree::caret(color);
        labels = vec![labels[0].clone(), labels[0].clone()];
    }
    let n = labels.len();
    let one = LabelElement::identity();
    let mut u_labels = vec![one.clone(); n];
    u_labels[1] = labels[0].clone();
    let mut v_labels = labels.clone();
    v_labels[0] = one;
    let v_u = Quadruple::diagonal(tree.clone(), u_labels)?;
    let v = Quadruple::diagonal(tree.clone(), v_labels)?;
    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(0, 1);
    let p = Quadruple::from_permutation(tree.clone(), Permutation::from_images(swap)?, tree.clone())?;
    let p_inv = p.inverse(oracle)?;

    let first = v_commutator(oracle, &v_u, &tree, color)?;
    let first = CommutatorPair { c: conjugate(oracle, &p_inv, &first.c)?, d: conjugate(oracle, &p_inv, &first.d)? };
    let second = v_commutator(oracle, &v, &tree, color)?;
    Ok((first, second))
}
