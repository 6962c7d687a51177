use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::element::Quadruple;
use crate::error::{Error, Result};
use crate::forest::{tree_for_brick, BrickAddress, Permutation, Tree};
use crate::label::{ColorId, LabelElement, LabelOracle};

use super::{deferment, in_canonical_kernel};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessBase {
    H,
    HInverse,
}

/// A product of conjugates `u h^{±1} u⁻¹`, left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConjugacyWord {
    pub factors: Vec<(WitnessBase, Quadruple)>,
}

impl ConjugacyWord {
    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn concat(&self, other: &ConjugacyWord) -> ConjugacyWord {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        ConjugacyWord { factors }
    }

    pub fn inverse(&self) -> ConjugacyWord {
        let factors = self
            .factors
            .iter()
            .rev()
            .map(|(b, u)| {
                let b = match b {
                    WitnessBase::H => WitnessBase::HInverse,
                    WitnessBase::HInverse => WitnessBase::H,
                };
                (b, u.clone())
            })
            .collect();
        ConjugacyWord { factors }
    }

    /// Left-multiplies every conjugator by `x`.
    pub fn conjugate_by<O: LabelOracle + ?Sized>(&self, oracle: &O, x: &Quadruple) -> Result<ConjugacyWord> {
        let factors = self
            .factors
            .iter()
            .map(|(b, u)| Ok((*b, x.multiply(oracle, u)?)))
            .collect::<Result<_>>()?;
        Ok(ConjugacyWord { factors })
    }

    /// Substitutes `h` and multiplies out.
    pub fn evaluate<O: LabelOracle + ?Sized>(&self, oracle: &O, h: &Quadruple) -> Result<Quadruple> {
        let h_inv = h.inverse(oracle)?;
        let mut acc = Quadruple::identity();
        for (b, u) in &self.factors {
            let base = match b {
                WitnessBase::H => h,
                WitnessBase::HInverse => &h_inv,
            };
            let term = u.multiply(oracle, base)?.multiply(oracle, &u.inverse(oracle)?)?;
            acc = acc.multiply(oracle, &term)?;
        }
        Ok(acc)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct WitnessOptions {
    /// Maximal number of splits per color below a domain leaf of `h`.
    pub splits_per_color: usize,
    /// Maximal number of candidate bricks examined.
    pub max_states: usize,
}

impl Default for WitnessOptions {
    fn default() -> Self {
        WitnessOptions { splits_per_color: 16, max_states: 200_000 }
    }
}

fn complementary(a: &BrickAddress, b: &BrickAddress) -> bool {
    a.depth() == 1 && b.depth() == 1 && a.colors().eq(b.colors()) && a.is_disjoint(b)
}

/// A sub-brick `B` of a domain leaf with `h(B) = B'` a brick disjoint from
/// `B`, `B ∪ B' ≠ C^S`; returns `(B, B', twist)`.
fn find_moved_brick<O: LabelOracle + ?Sized>(
    oracle: &O,
    h: &Quadruple,
    options: WitnessOptions,
) -> Result<(BrickAddress, BrickAddress, LabelElement)> {
    let colors: Vec<ColorId> = match oracle.colors() {
        Some(c) => c,
        None => {
            let mut used = vec![ColorId(0)];
            h.plus().trees()[0].colors(&mut used);
            h.minus().trees()[0].colors(&mut used);
            let mut set: BTreeSet<ColorId> = used.iter().copied().collect();
            for g in h.labels() {
                for &s in &used {
                    set.insert(oracle.act(g, s)?);
                    set.insert(oracle.act_inverse(g, s)?);
                }
            }
            set.into_iter().collect()
        }
    };
    let domain = h.plus().leaves();
    let range = h.minus().leaves();
    let mut queue: VecDeque<(usize, BrickAddress)> = VecDeque::new();
    let mut seen = HashSet::new();
    for i in 0..domain.len() {
        queue.push_back((i, BrickAddress::whole()));
    }
    let mut examined = 0;
    while let Some((i, rel)) = queue.pop_front() {
        examined += 1;
        if examined > options.max_states {
            break;
        }
        let g = &h.labels()[i];
        let b = domain[i].1.concat(&rel);
        let image = range[h.perm().apply(i)].1.concat(&rel.permute(oracle, g)?);
        if b.is_disjoint(&image) && !complementary(&b, &image) {
            return Ok((b, image, g.clone()));
        }
        for &s in &colors {
            if rel.get(s).len() >= options.splits_per_color {
                continue;
            }
            let (x, y) = rel.split(s);
            for r in [x, y] {
                if seen.insert((i, r.clone())) {
                    queue.push_back((i, r));
                }
            }
        }
    }
    Err(Error::BudgetExhausted(format!(
        "no brick moved off itself within {} splits per color and {} candidates",
        options.splits_per_color, options.max_states
    )))
}

/// A tree having every brick of `bricks` as a leaf, with at least
/// `min_leaves` leaves; returns the tree and the leaf index of each brick.
fn tree_with(bricks: &[BrickAddress], min_leaves: usize, pad_color: ColorId) -> Result<(Tree, Vec<usize>)> {
    let mut tree = Tree::refining(bricks)?;
    while tree.leaf_count() < min_leaves {
        let leaves = tree.leaves();
        let free = leaves.iter().position(|l| !bricks.contains(l)).expect("a proper pair leaves room");
        tree = tree.split_leaf(free, pad_color);
    }
    let leaves = tree.leaves();
    let index = bricks.iter().map(|b| leaves.iter().position(|l| l == b).expect("brick is a leaf")).collect();
    Ok((tree, index))
}

/// An element of `SV` (trivial labels) sending `from[i]` onto `to[i]`
/// canonically. Both lists are disjoint bricks whose union is not `C^S`.
fn transport(from: &[BrickAddress], to: &[BrickAddress], pad_color: ColorId) -> Result<Quadruple> {
    let (t_from, _) = tree_with(from, 0, pad_color)?;
    let (t_to, _) = tree_with(to, 0, pad_color)?;
    let n = t_from.leaf_count().max(t_to.leaf_count());
    let (t_from, i_from) = tree_with(from, n, pad_color)?;
    let (t_to, i_to) = tree_with(to, n, pad_color)?;
    let mut images = vec![usize::MAX; n];
    for (a, b) in i_from.iter().zip(&i_to) {
        images[*a] = *b;
    }
    let mut rest = (0..n).filter(|j| !i_to.contains(j));
    for slot in images.iter_mut().filter(|x| **x == usize::MAX) {
        *slot = rest.next().expect("equal leaf counts");
    }
    Quadruple::from_permutation(t_to, Permutation::from_images(images)?, t_from)
}

struct Pipeline<'a, O: LabelOracle + ?Sized> {
    oracle: &'a O,
    moved: BrickAddress,
    image: BrickAddress,
    base: ConjugacyWord,
    pad_color: ColorId,
}

impl<O: LabelOracle + ?Sized> Pipeline<'_, O> {
    /// A word for `W(p, q; k) = D_p(k) D_q(k)⁻¹`, `p`, `q` disjoint with
    /// `p ∪ q ≠ C^S`.
    fn w(&self, p: &BrickAddress, q: &BrickAddress) -> Result<ConjugacyWord> {
        let u = transport(&[self.image.clone(), self.moved.clone()], &[p.clone(), q.clone()], self.pad_color)?;
        self.base.conjugate_by(self.oracle, &u)
    }
}

/// Expresses `D_{B(ψ)}(k)` as a product of conjugates of `h` and `h⁻¹`.
///
/// A brick `B` with `h(B) = B'` disjoint from `B` gives
/// `D_{B'}(gkg⁻¹) D_B(k)⁻¹ = h f h⁻¹ f⁻¹` for `f = D_B(k)`; conjugating by
/// `D_{B'}(g)⁻¹` yields `W(B', B) = D_{B'}(k) D_B(k)⁻¹`, which is then moved
/// to other brick pairs by label-free elements. With `A₀`, `A₁` the halves
/// of `B(ψ)` and `C` disjoint from `B(ψ)`,
/// `D_ψ(k) = W(C,ψ)⁻¹ W(A₀,C)⁻¹ W(C,ψ)⁻¹ W(A₁,C)⁻¹`.
pub fn normal_generation_witness<O: LabelOracle + ?Sized>(
    oracle: &O,
    h: &Quadruple,
    psi: &BrickAddress,
    k: &LabelElement,
    options: WitnessOptions,
) -> Result<ConjugacyWord> {
    if !h.is_group_element() {
        return Err(Error::NotGroupElement);
    }
    if in_canonical_kernel(oracle, h)? {
        return Err(Error::InKernel);
    }
    if !oracle.acts_trivially(k)? {
        return Err(Error::LabelNotInKernel);
    }
    if psi.is_whole() {
        return Err(Error::ImproperBrick);
    }
    let k = oracle.normalize(k)?;
    if k.is_empty() {
        return Ok(ConjugacyWord::default());
    }
    let (moved, image, g) = find_moved_brick(oracle, h, options)?;
    let f = deferment(&moved, &k);
    let x = deferment(&image, &g).inverse(oracle)?;
    let xf = x.multiply(oracle, &f)?;
    let base = ConjugacyWord { factors: vec![(WitnessBase::H, x), (WitnessBase::HInverse, xf)] };

    let pad_color = psi.colors().next().expect("proper brick");
    let pipeline = Pipeline { oracle, moved, image, base, pad_color };
    let (a0, a1) = psi.split(pad_color);
    let (outer, index) = tree_for_brick(psi);
    let other = outer.leaves().into_iter().enumerate().find(|&(j, _)| j != index).expect("proper brick").1;
    let c = other.split(pad_color).0;

    let w_c_psi = pipeline.w(&c, psi)?.inverse();
    let w_a0_c = pipeline.w(&a0, &c)?.inverse();
    let w_a1_c = pipeline.w(&a1, &c)?.inverse();
    Ok(w_c_psi.concat(&w_a0_c).concat(&w_c_psi).concat(&w_a1_c))
}
