use std::collections::BTreeMap;

use crate::element::{CantorPoint, Quadruple};
use crate::error::Result;
use crate::forest::{BrickAddress, Permutation, Tree};
use crate::label::{ColorId, LabelElement, LabelOracle};

/// An element `(v, g)` of `Z ≀_S G`; `v` has finite support and no zero
/// entries.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WreathElement {
    vector: BTreeMap<ColorId, i64>,
    label: LabelElement,
}

impl WreathElement {
    pub fn new(vector: impl IntoIterator<Item = (ColorId, i64)>, label: LabelElement) -> Self {
        let mut v = BTreeMap::new();
        for (s, x) in vector {
            *v.entry(s).or_insert(0) += x;
        }
        v.retain(|_, x| *x != 0);
        WreathElement { vector: v, label }
    }

    pub fn identity() -> Self {
        WreathElement::default()
    }

    pub fn vector(&self) -> &BTreeMap<ColorId, i64> {
        &self.vector
    }

    pub fn label(&self) -> &LabelElement {
        &self.label
    }

    pub fn get(&self, s: ColorId) -> i64 {
        self.vector.get(&s).copied().unwrap_or(0)
    }
}

/// `(v, g)(w, h) = (v + g·w, gh)` with `(g·w)(g.s) = w(s)`.
pub fn wreath_multiply<O: LabelOracle + ?Sized>(
    oracle: &O,
    a: &WreathElement,
    b: &WreathElement,
) -> Result<WreathElement> {
    let mut entries: Vec<(ColorId, i64)> = a.vector.iter().map(|(&s, &x)| (s, x)).collect();
    for (&s, &x) in &b.vector {
        entries.push((oracle.act(&a.label, s)?, x));
    }
    Ok(WreathElement::new(entries, oracle.multiply(&a.label, &b.label)?))
}

/// `ρ_κ(h)`: with `ψ ↦ φ` the leaf of `h` containing `κ` and `g` its
/// label, the vector `s ↦ |φ(s)| - |ψ(g⁻¹.s)|` paired with `g`.
pub fn quasi_retract<O: LabelOracle + ?Sized>(
    oracle: &O,
    h: &Quadruple,
    point: &CantorPoint,
) -> Result<WreathElement> {
    let (psi, phi, g) = h.leaf_data(point)?;
    let mut entries: Vec<(ColorId, i64)> = phi.iter().map(|(s, b)| (s, b.len() as i64)).collect();
    for (s, b) in psi.iter() {
        entries.push((oracle.act(&g, s)?, -(b.len() as i64)));
    }
    Ok(WreathElement::new(entries, oracle.normalize(&g)?))
}

/// `z_s`: the element of `V` in color `s` with `0ω ↦ 00ω`, `10ω ↦ 01ω`,
/// `11ω ↦ 1ω`.
pub fn zeta_generator(s: ColorId) -> Quadruple {
    let plus = Tree::node(s, Tree::Leaf, Tree::caret(s));
    let minus = Tree::node(s, Tree::caret(s), Tree::Leaf);
    debug_assert_eq!(plus.leaves()[0], BrickAddress::from_strs(&[(s.0, "0")]));
    Quadruple::from_permutation(minus, Permutation::identity(3), plus).expect("three leaves each")
}

/// The section `ζ(v, g) = (∏_s z_s^{v(s)}) · ι_∅(g)`.
pub fn section_zeta<O: LabelOracle + ?Sized>(oracle: &O, w: &WreathElement) -> Result<Quadruple> {
    let mut acc = Quadruple::identity();
    for (&s, &x) in &w.vector {
        acc = acc.multiply(oracle, &zeta_generator(s).pow(oracle, x)?)?;
    }
    acc.multiply(oracle, &Quadruple::iota(w.label.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::{parse_word, LabelGroup};

    const S: ColorId = ColorId(0);

    #[test]
    fn retract_examples() {
        let o = LabelGroup::cyclic_rotation(2).unwrap();
        let k0 = CantorPoint::basepoint();
        assert_eq!(quasi_retract(&o, &Quadruple::identity(), &k0).unwrap(), WreathElement::identity());
        let z = zeta_generator(S);
        assert_eq!(quasi_retract(&o, &z, &k0).unwrap(), WreathElement::new([(S, 1)], LabelElement::identity()));
        let g = parse_word(&o, "r").unwrap();
        assert_eq!(quasi_retract(&o, &Quadruple::iota(g.clone()), &k0).unwrap(), WreathElement::new([], g));
    }

    #[test]
    fn section_examples() {
        let o = LabelGroup::cyclic_rotation(2).unwrap();
        assert!(section_zeta(&o, &WreathElement::identity()).unwrap().equal(&o, &Quadruple::identity()).unwrap());
        let g = parse_word(&o, "r").unwrap();
        let q = section_zeta(&o, &WreathElement::new([], g.clone())).unwrap();
        assert!(q.equal(&o, &Quadruple::iota(g)).unwrap());
        let w = WreathElement::new([(S, -2), (ColorId(1), 3)], parse_word(&o, "r").unwrap());
        let q = section_zeta(&o, &w).unwrap();
        assert_eq!(quasi_retract(&o, &q, &CantorPoint::basepoint()).unwrap(), w);
    }

    #[test]
    fn wreath_law_examples() {
        let o = LabelGroup::cyclic_rotation(2).unwrap();
        let one = WreathElement::new([(S, 1)], LabelElement::identity());
        assert_eq!(wreath_multiply(&o, &WreathElement::identity(), &one).unwrap(), one);
        assert_eq!(
            wreath_multiply(&o, &one, &one).unwrap(),
            WreathElement::new([(S, 2)], LabelElement::identity())
        );
        let g = parse_word(&o, "r").unwrap();
        let moved = wreath_multiply(&o, &WreathElement::new([], g.clone()), &one).unwrap();
        assert_eq!(moved, WreathElement::new([(ColorId(1), 1)], g));
    }
}
