//! Elements of `SV_G` as quadruples `[F_-, σ, (g_1, …, g_n), F_+]`.
//!
//! Domain leaf `i` of `F_+` is sent to range leaf `σ(i)` of `F_-` by the
//! canonical homeomorphism, after permuting coordinates by `g_i`.

mod point;

pub use point::{CantorPoint, Coordinate};

use crate::error::{Error, Result};
use crate::forest::{common_refinement_forests, BrickAddress, Forest, Permutation, Tree};
use crate::label::{ColorId, LabelElement, LabelOracle};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quadruple {
    minus: Forest,
    perm: Permutation,
    labels: Vec<LabelElement>,
    plus: Forest,
}

/// Where two elements first disagree on a common refinement of their
/// domain partitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub root: usize,
    pub domain: BrickAddress,
    pub left_range: (usize, BrickAddress),
    pub right_range: (usize, BrickAddress),
    pub left_label: LabelElement,
    pub right_label: LabelElement,
}

impl Quadruple {
    pub fn new(minus: Forest, perm: Permutation, labels: Vec<LabelElement>, plus: Forest) -> Result<Self> {
        let n = plus.range_arity();
        if minus.range_arity() != n || perm.len() != n || labels.len() != n {
            return Err(Error::Arity(format!(
                "F_- has {} leaves, F_+ has {n}, σ has size {}, {} labels",
                minus.range_arity(),
                perm.len(),
                labels.len()
            )));
        }
        Ok(Quadruple { minus, perm, labels, plus })
    }

    /// `[T_-, σ, labels, T_+]` for single trees.
    pub fn from_trees(minus: Tree, perm: Permutation, labels: Vec<LabelElement>, plus: Tree) -> Result<Self> {
        Quadruple::new(Forest::single(minus), perm, labels, Forest::single(plus))
    }

    pub fn identity() -> Self {
        Quadruple::iota(LabelElement::identity())
    }

    /// `ι_∅(g) = [·, id, g, ·]`.
    pub fn iota(g: LabelElement) -> Self {
        Quadruple {
            minus: Forest::identity(1),
            perm: Permutation::identity(1),
            labels: vec![g],
            plus: Forest::identity(1),
        }
    }

    /// `ι_1^s(g) = [x_s, id, (1, g), x_s]`.
    pub fn iota1(s: ColorId, g: LabelElement) -> Self {
        let x = Forest::single(Tree::caret(s));
        Quadruple { minus: x.clone(), perm: Permutation::identity(2), labels: vec![LabelElement::identity(), g], plus: x }
    }

    /// `[T, id, (k_1, …, k_n), T]`.
    pub fn diagonal(tree: Tree, labels: Vec<LabelElement>) -> Result<Self> {
        let n = tree.leaf_count();
        Quadruple::from_trees(tree.clone(), Permutation::identity(n), labels, tree)
    }

    /// `[T_-, σ, (1, …, 1), T_+]`.
    pub fn from_permutation(minus: Tree, perm: Permutation, plus: Tree) -> Result<Self> {
        let n = perm.len();
        Quadruple::from_trees(minus, perm, vec![LabelElement::identity(); n], plus)
    }

    pub fn minus(&self) -> &Forest {
        &self.minus
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn labels(&self) -> &[LabelElement] {
        &self.labels
    }

    pub fn plus(&self) -> &Forest {
        &self.plus
    }

    pub fn leaf_count(&self) -> usize {
        self.labels.len()
    }

    pub fn is_group_element(&self) -> bool {
        self.plus.domain_arity() == 1 && self.minus.domain_arity() == 1
    }

    fn require_group_element(&self) -> Result<()> {
        if self.is_group_element() {
            Ok(())
        } else {
            Err(Error::NotGroupElement)
        }
    }

    /// Replaces every label by its normal form.
    pub fn normalized<O: LabelOracle + ?Sized>(&self, oracle: &O) -> Result<Self> {
        let labels = self.labels.iter().map(|g| oracle.normalize(g)).collect::<Result<_>>()?;
        Ok(Quadruple { labels, ..self.clone() })
    }

    /// The `k`-th expansion with color `s` (`k` 0-based): domain leaf `k`
    /// splits in color `s`, range leaf `σ(k)` in color `g_k.s`.
    pub fn expand<O: LabelOracle + ?Sized>(&self, oracle: &O, k: usize, s: ColorId) -> Result<Self> {
        if k >= self.leaf_count() {
            return Err(Error::Index { index: k + 1, len: self.leaf_count() });
        }
        let g = &self.labels[k];
        let range_color = oracle.act(g, s)?;
        let mut labels = self.labels.clone();
        labels.insert(k + 1, g.clone());
        Ok(Quadruple {
            minus: self.minus.split_leaf(self.perm.apply(k), range_color),
            perm: self.perm.expand(k),
            labels,
            plus: self.plus.split_leaf(k, s),
        })
    }

    /// Splits range leaf `j` in color `c`, expanding the matching domain
    /// leaf in color `g⁻¹.c`.
    pub fn expand_range<O: LabelOracle + ?Sized>(&self, oracle: &O, j: usize, c: ColorId) -> Result<Self> {
        if j >= self.leaf_count() {
            return Err(Error::Index { index: j + 1, len: self.leaf_count() });
        }
        let k = self.perm.inverse().apply(j);
        let s = oracle.act_inverse(&self.labels[k], c)?;
        self.expand(oracle, k, s)
    }

    /// Expands so that `F_+` becomes `E ∘ F_+`.
    pub fn expand_domain_by<O: LabelOracle + ?Sized>(&self, oracle: &O, e: &Forest) -> Result<Self> {
        if e.domain_arity() != self.leaf_count() {
            return Err(Error::Arity("expansion forest does not match the domain leaves".into()));
        }
        let mut q = self.clone();
        for (k, tree) in e.trees().iter().enumerate().rev() {
            q = q.expand_tree(oracle, k, tree, false)?;
        }
        Ok(q)
    }

    /// Expands so that `F_-` becomes `E ∘ F_-`.
    pub fn expand_range_by<O: LabelOracle + ?Sized>(&self, oracle: &O, e: &Forest) -> Result<Self> {
        if e.domain_arity() != self.leaf_count() {
            return Err(Error::Arity("expansion forest does not match the range leaves".into()));
        }
        let mut q = self.clone();
        for (j, tree) in e.trees().iter().enumerate().rev() {
            q = q.expand_tree(oracle, j, tree, true)?;
        }
        Ok(q)
    }

    fn expand_tree<O: LabelOracle + ?Sized>(&self, oracle: &O, at: usize, tree: &Tree, range: bool) -> Result<Self> {
        match tree {
            Tree::Leaf => Ok(self.clone()),
            Tree::Split { color, children } => {
                let q = if range {
                    self.expand_range(oracle, at, *color)?
                } else {
                    self.expand(oracle, at, *color)?
                };
                let q = q.expand_tree(oracle, at + 1, &children[1], range)?;
                q.expand_tree(oracle, at, &children[0], range)
            }
        }
    }

    fn reducible_at<O: LabelOracle + ?Sized>(&self, oracle: &O, k: usize) -> Result<bool> {
        let Some(s) = self.plus.caret_at(k) else { return Ok(false) };
        let j = self.perm.apply(k);
        if self.perm.apply(k + 1) != j + 1 {
            return Ok(false);
        }
        if self.labels[k] != self.labels[k + 1] {
            return Ok(false);
        }
        Ok(self.minus.caret_at(j) == Some(oracle.act(&self.labels[k], s)?))
    }

    /// Undoes expansions greedily, leftmost first. Labels are normalized.
    pub fn reduce<O: LabelOracle + ?Sized>(&self, oracle: &O) -> Result<Self> {
        let mut q = self.normalized(oracle)?;
        let mut k = 0;
        while k + 1 < q.leaf_count() {
            if !q.reducible_at(oracle, k)? {
                k += 1;
                continue;
            }
            let j = q.perm.apply(k);
            let images = (0..q.leaf_count())
                .filter(|&i| i != k + 1)
                .map(|i| {
                    let t = q.perm.apply(i);
                    if t > j {
                        t - 1
                    } else {
                        t
                    }
                })
                .collect();
            let mut labels = q.labels.clone();
            labels.remove(k + 1);
            q = Quadruple {
                minus: q.minus.collapse_at(j),
                perm: Permutation::from_images(images).expect("collapse keeps a bijection"),
                labels,
                plus: q.plus.collapse_at(k),
            };
            k = 0;
        }
        Ok(q)
    }

    /// `self ∘ other` (`other` acts first), reduced.
    pub fn multiply<O: LabelOracle + ?Sized>(&self, oracle: &O, other: &Quadruple) -> Result<Self> {
        let (e, e_prime, pi) = common_refinement_forests(&self.plus, &other.minus)?;
        let a = self.expand_domain_by(oracle, &e)?;
        let b = other.expand_range_by(oracle, &e_prime)?;
        let through = pi.compose(&b.perm);
        let labels = (0..b.leaf_count())
            .map(|i| oracle.multiply(&a.labels[through.apply(i)], &b.labels[i]))
            .collect::<Result<_>>()?;
        let product = Quadruple { minus: a.minus, perm: a.perm.compose(&through), labels, plus: b.plus };
        product.reduce(oracle)
    }

    pub fn inverse<O: LabelOracle + ?Sized>(&self, oracle: &O) -> Result<Self> {
        let inv = self.perm.inverse();
        let labels = (0..self.leaf_count())
            .map(|j| oracle.inverse(&self.labels[inv.apply(j)]))
            .collect::<Result<_>>()?;
        Ok(Quadruple { minus: self.plus.clone(), perm: inv, labels, plus: self.minus.clone() })
    }

    /// `self^n` for any integer `n`.
    pub fn pow<O: LabelOracle + ?Sized>(&self, oracle: &O, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inverse(oracle)? } else { self.clone() };
        let mut acc = Quadruple::identity_like(self);
        for _ in 0..n.unsigned_abs() {
            acc = acc.multiply(oracle, &base)?;
        }
        acc.reduce(oracle)
    }

    fn identity_like(q: &Quadruple) -> Self {
        let n = q.plus.domain_arity();
        Quadruple {
            minus: Forest::identity(n),
            perm: Permutation::identity(n),
            labels: vec![LabelElement::identity(); n],
            plus: Forest::identity(n),
        }
    }

    /// First disagreement with `other`, or `None` if the elements are equal.
    pub fn compare<O: LabelOracle + ?Sized>(&self, oracle: &O, other: &Quadruple) -> Result<Option<Mismatch>> {
        if self.minus.domain_arity() != other.minus.domain_arity() {
            return Err(Error::Arity("elements with different range arity".into()));
        }
        let (e, e_prime, pi) = common_refinement_forests(&self.plus, &other.plus)?;
        let a = self.expand_domain_by(oracle, &e)?.normalized(oracle)?;
        let b = other.expand_domain_by(oracle, &e_prime)?.normalized(oracle)?;
        let domain = b.plus.leaves();
        let left_range = a.minus.leaves();
        let right_range = b.minus.leaves();
        for (j, (root, brick)) in domain.into_iter().enumerate() {
            let i = pi.apply(j);
            let l = &left_range[a.perm.apply(i)];
            let r = &right_range[b.perm.apply(j)];
            if l != r || a.labels[i] != b.labels[j] {
                return Ok(Some(Mismatch {
                    root,
                    domain: brick,
                    left_range: l.clone(),
                    right_range: r.clone(),
                    left_label: a.labels[i].clone(),
                    right_label: b.labels[j].clone(),
                }));
            }
        }
        Ok(None)
    }

    pub fn equal<O: LabelOracle + ?Sized>(&self, oracle: &O, other: &Quadruple) -> Result<bool> {
        Ok(self.compare(oracle, other)?.is_none())
    }

    /// A point where `self` and `other` differ in action or germinal twist.
    pub fn distinguishing_point<O: LabelOracle + ?Sized>(
        &self,
        oracle: &O,
        other: &Quadruple,
    ) -> Result<Option<CantorPoint>> {
        self.require_group_element()?;
        other.require_group_element()?;
        let Some(m) = self.compare(oracle, other)? else { return Ok(None) };
        let (l, r) = (&m.left_range.1, &m.right_range.1);
        if l == r {
            return Ok(Some(CantorPoint::brick_base(&m.domain)));
        }
        // A point of one range brick outside the other, pulled back.
        let (outside, inside, which) = if r.contains(l) { (r, l, other) } else { (l, r, self) };
        let q = point_outside(outside, inside);
        Ok(Some(which.inverse(oracle)?.act(oracle, &q)?))
    }

    fn domain_leaf(&self, point: &CantorPoint) -> (usize, BrickAddress) {
        let mut at = BrickAddress::whole();
        let mut offset = 0;
        let mut tree = &self.plus.trees()[0];
        while let Tree::Split { color, children } = tree {
            let bit = point.coordinate(*color).bit(at.get(*color).len());
            if bit {
                offset += children[0].leaf_count();
            }
            at = at.with_bit(*color, bit);
            tree = &children[bit as usize];
        }
        (offset, at)
    }

    /// `h(κ)`.
    pub fn act<O: LabelOracle + ?Sized>(&self, oracle: &O, point: &CantorPoint) -> Result<CantorPoint> {
        self.require_group_element()?;
        let (i, psi) = self.domain_leaf(point);
        let phi = &self.minus.leaves()[self.perm.apply(i)].1;
        Ok(point.strip(&psi).permute(oracle, &self.labels[i])?.prepend(phi))
    }

    /// The label of the domain leaf containing `κ`, normalized.
    pub fn germinal_twist<O: LabelOracle + ?Sized>(&self, oracle: &O, point: &CantorPoint) -> Result<LabelElement> {
        self.require_group_element()?;
        oracle.normalize(&self.labels[self.domain_leaf(point).0])
    }

    /// `(domain brick, range brick, label)` of the leaf containing `κ`.
    pub fn leaf_data(&self, point: &CantorPoint) -> Result<(BrickAddress, BrickAddress, LabelElement)> {
        self.require_group_element()?;
        let (i, psi) = self.domain_leaf(point);
        let phi = self.minus.leaves()[self.perm.apply(i)].1.clone();
        Ok((psi, phi, self.labels[i].clone()))
    }
}

/// A point of `B(outer)` outside `B(inner)`, assuming `inner ⊉ outer`.
fn point_outside(outer: &BrickAddress, inner: &BrickAddress) -> CantorPoint {
    let mut brick = outer.clone();
    for (s, b) in inner.iter() {
        let o = outer.get(s);
        if o.starts_with(b) {
            continue;
        }
        if b.starts_with(o) {
            brick = brick.with_bit(s, !b[o.len()]);
        }
        break;
    }
    CantorPoint::brick_base(&brick)
}
