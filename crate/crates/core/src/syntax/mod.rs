//! Text formats for trees, bricks, points, words, elements and wreath
//! elements, and a small expression language for building elements.
//!
//! Colors and generators print with the oracle's names.

mod lexer;
mod parser;

use std::collections::BTreeMap;
use std::fmt;

pub use parser::{BrickExpr, ColorExpr, ElementExpr, PointExpr, TreeExpr, WordExpr};

use crate::element::{CantorPoint, Coordinate, Quadruple};
use crate::error::{Error, Result};
use crate::forest::{bits_to_string, BrickAddress, Permutation, Tree};
use crate::label::{format_word, ColorId, LabelElement, LabelOracle, Letter};
use crate::subgroups::{commutator, deferment, ConjugacyWord, WitnessBase, WreathElement};

use parser::Parser;

fn parse_with<T>(text: &str, f: impl FnOnce(&mut Parser) -> Result<T>) -> Result<T> {
    let mut p = Parser::new(text)?;
    let out = f(&mut p)?;
    p.finish()?;
    Ok(out)
}

pub fn parse_element(text: &str) -> Result<ElementExpr> {
    parse_with(text, |p| p.expression())
}

/// Parses and evaluates an element expression.
pub fn eval_element<O: LabelOracle + ?Sized>(oracle: &O, text: &str) -> Result<Quadruple> {
    parse_element(text)?.evaluate(oracle)
}

pub fn parse_tree<O: LabelOracle + ?Sized>(oracle: &O, text: &str) -> Result<Tree> {
    parse_with(text, |p| p.tree())?.resolve(oracle)
}

pub fn parse_brick<O: LabelOracle + ?Sized>(oracle: &O, text: &str) -> Result<BrickAddress> {
    parse_with(text, |p| p.brick())?.resolve(oracle)
}

pub fn parse_point<O: LabelOracle + ?Sized>(oracle: &O, text: &str) -> Result<CantorPoint> {
    parse_with(text, |p| p.point())?.resolve(oracle)
}

/// Parses a label word with the same tokens as the element language.
pub fn parse_label<O: LabelOracle + ?Sized>(oracle: &O, text: &str) -> Result<LabelElement> {
    parse_with(text, |p| p.word())?.resolve(oracle)
}

pub fn parse_permutation(text: &str) -> Result<Permutation> {
    Permutation::from_one_based(&parse_with(text, |p| p.perm())?)
}

pub fn parse_wreath<O: LabelOracle + ?Sized>(oracle: &O, text: &str) -> Result<WreathElement> {
    let (entries, w) = parse_with(text, |p| p.wreath())?;
    let mut v = Vec::new();
    for (c, x) in entries {
        v.push((c.resolve(oracle)?, x));
    }
    Ok(WreathElement::new(v, w.resolve(oracle)?))
}

impl ColorExpr {
    pub fn resolve<O: LabelOracle + ?Sized>(&self, oracle: &O) -> Result<ColorId> {
        oracle.parse_color(&self.0)
    }
}

impl WordExpr {
    pub fn resolve<O: LabelOracle + ?Sized>(&self, oracle: &O) -> Result<LabelElement> {
        let mut letters = Vec::new();
        for (name, e) in &self.0 {
            let g = oracle.generator_index(name).ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
            let l = Letter { generator: g, inverse: *e < 0 };
            letters.extend(std::iter::repeat_n(l, e.unsigned_abs() as usize));
        }
        oracle.normalize(&LabelElement::from_letters(letters))
    }
}

impl TreeExpr {
    pub fn resolve<O: LabelOracle + ?Sized>(&self, oracle: &O) -> Result<Tree> {
        Ok(match self {
            TreeExpr::Leaf => Tree::Leaf,
            TreeExpr::Node(c, a, b) => Tree::node(c.resolve(oracle)?, a.resolve(oracle)?, b.resolve(oracle)?),
        })
    }
}

fn bits(text: &str) -> Vec<bool> {
    text.chars().map(|c| c == '1').collect()
}

impl BrickExpr {
    pub fn resolve<O: LabelOracle + ?Sized>(&self, oracle: &O) -> Result<BrickAddress> {
        let mut map = BTreeMap::new();
        for (c, b) in &self.0 {
            let s = c.resolve(oracle)?;
            if map.insert(s, bits(b)).is_some() {
                return Err(Error::Invalid(format!("color `{}` given twice", c.0)));
            }
        }
        Ok(BrickAddress::from_map(map))
    }
}

impl PointExpr {
    pub fn resolve<O: LabelOracle + ?Sized>(&self, oracle: &O) -> Result<CantorPoint> {
        let mut coords = BTreeMap::new();
        for (c, pre, period) in &self.0 {
            let s = c.resolve(oracle)?;
            if coords.insert(s, Coordinate::new(bits(pre), bits(period))?).is_some() {
                return Err(Error::Invalid(format!("color `{}` given twice", c.0)));
            }
        }
        Ok(CantorPoint::from_coords(coords))
    }
}

impl ElementExpr {
    pub fn evaluate<O: LabelOracle + ?Sized>(&self, oracle: &O) -> Result<Quadruple> {
        let q = match self {
            ElementExpr::Id => Quadruple::identity(),
            ElementExpr::Iota(w) => Quadruple::iota(w.resolve(oracle)?),
            ElementExpr::Iota1(c, w) => Quadruple::iota1(c.resolve(oracle)?, w.resolve(oracle)?),
            ElementExpr::Defer(b, w) => deferment(&b.resolve(oracle)?, &w.resolve(oracle)?),
            ElementExpr::Quad { minus, perm, labels, plus } => {
                let labels = labels.iter().map(|w| w.resolve(oracle)).collect::<Result<Vec<_>>>()?;
                Quadruple::from_trees(
                    minus.resolve(oracle)?,
                    Permutation::from_one_based(perm)?,
                    labels,
                    plus.resolve(oracle)?,
                )?
            }
            ElementExpr::Product(a, b) => a.evaluate(oracle)?.multiply(oracle, &b.evaluate(oracle)?)?,
            ElementExpr::Power(a, n) => a.evaluate(oracle)?.pow(oracle, *n)?,
            ElementExpr::Commutator(a, b) => commutator(oracle, &a.evaluate(oracle)?, &b.evaluate(oracle)?)?,
            ElementExpr::Conj(a, b) => {
                let b = b.evaluate(oracle)?;
                b.multiply(oracle, &a.evaluate(oracle)?)?.multiply(oracle, &b.inverse(oracle)?)?
            }
        };
        if !q.is_group_element() {
            return Err(Error::NotGroupElement);
        }
        Ok(q)
    }

    /// The `quad(...)` expression of an element with single-tree forests.
    pub fn from_quadruple<O: LabelOracle + ?Sized>(oracle: &O, q: &Quadruple) -> Result<ElementExpr> {
        let (minus, plus) = match (q.minus().trees(), q.plus().trees()) {
            ([m], [p]) => (m, p),
            _ => return Err(Error::NotGroupElement),
        };
        Ok(ElementExpr::Quad {
            minus: TreeExpr::from_tree(oracle, minus),
            perm: q.perm().one_based(),
            labels: q.labels().iter().map(|g| WordExpr::from_label(oracle, g)).collect(),
            plus: TreeExpr::from_tree(oracle, plus),
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            ElementExpr::Product(..) => 0,
            ElementExpr::Power(..) => 1,
            _ => 2,
        }
    }
}

impl TreeExpr {
    pub fn from_tree<O: LabelOracle + ?Sized>(oracle: &O, t: &Tree) -> TreeExpr {
        match t {
            Tree::Leaf => TreeExpr::Leaf,
            Tree::Split { color, children } => TreeExpr::Node(
                ColorExpr(oracle.color_name(*color)),
                Box::new(TreeExpr::from_tree(oracle, &children[0])),
                Box::new(TreeExpr::from_tree(oracle, &children[1])),
            ),
        }
    }
}

impl WordExpr {
    pub fn from_label<O: LabelOracle + ?Sized>(oracle: &O, g: &LabelElement) -> WordExpr {
        WordExpr(
            g.letters()
                .iter()
                .map(|l| (oracle.generator_name(l.generator).to_string(), if l.inverse { -1 } else { 1 }))
                .collect(),
        )
    }
}

impl fmt::Display for ColorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for WordExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (name, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match e {
                1 => write!(f, "{name}")?,
                _ => write!(f, "{name}^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for TreeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeExpr::Leaf => f.write_str("."),
            TreeExpr::Node(c, a, b) => write!(f, "({c} {a} {b})"),
        }
    }
}

impl fmt::Display for BrickExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(c, b)| format!("{c}:{b}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl fmt::Display for ElementExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, e: &ElementExpr, min: u8| {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            ElementExpr::Id => f.write_str("id"),
            ElementExpr::Iota(w) => write!(f, "iota({w})"),
            ElementExpr::Iota1(c, w) => write!(f, "iota1({c}, {w})"),
            ElementExpr::Defer(b, w) => write!(f, "defer({b}, {w})"),
            ElementExpr::Quad { minus, perm, labels, plus } => {
                let perm: Vec<String> = perm.iter().map(usize::to_string).collect();
                let labels: Vec<String> = labels.iter().map(WordExpr::to_string).collect();
                write!(f, "quad({minus}, [{}], [{}], {plus})", perm.join(", "), labels.join(", "))
            }
            ElementExpr::Product(a, b) => {
                wrap(f, a, 0)?;
                f.write_str(" * ")?;
                wrap(f, b, 1)
            }
            ElementExpr::Power(a, n) => {
                wrap(f, a, 2)?;
                write!(f, "^{n}")
            }
            ElementExpr::Commutator(a, b) => write!(f, "[{a}, {b}]"),
            ElementExpr::Conj(a, b) => write!(f, "conj({a}, {b})"),
        }
    }
}

pub fn format_tree<O: LabelOracle + ?Sized>(oracle: &O, t: &Tree) -> String {
    TreeExpr::from_tree(oracle, t).to_string()
}

pub fn format_brick<O: LabelOracle + ?Sized>(oracle: &O, b: &BrickAddress) -> String {
    BrickExpr(b.iter().map(|(s, bits)| (ColorExpr(oracle.color_name(s)), bits_to_string(bits))).collect()).to_string()
}

pub fn format_point<O: LabelOracle + ?Sized>(oracle: &O, p: &CantorPoint) -> String {
    let parts: Vec<String> = p.iter().map(|(s, c)| format!("{}: {c}", oracle.color_name(s))).collect();
    format!("{{{}}}", parts.join(", "))
}

pub fn format_permutation(p: &Permutation) -> String {
    p.to_string()
}

/// `quad(T_-, [σ], [labels], T_+)`; forests with several roots print as
/// lists of quadruple-style trees in brackets.
pub fn format_element<O: LabelOracle + ?Sized>(oracle: &O, q: &Quadruple) -> String {
    match ElementExpr::from_quadruple(oracle, q) {
        Ok(e) => e.to_string(),
        Err(_) => {
            let forest = |ts: &[Tree]| ts.iter().map(|t| format_tree(oracle, t)).collect::<Vec<_>>().join(" ");
            let labels: Vec<String> = q.labels().iter().map(|g| format_word(oracle, g)).collect();
            format!(
                "quad([{}], {}, [{}], [{}])",
                forest(q.minus().trees()),
                q.perm(),
                labels.join(", "),
                forest(q.plus().trees())
            )
        }
    }
}

pub fn format_wreath<O: LabelOracle + ?Sized>(oracle: &O, w: &WreathElement) -> String {
    let parts: Vec<String> = w.vector().iter().map(|(&s, x)| format!("{}: {x}", oracle.color_name(s))).collect();
    format!("({{{}}}, {})", parts.join(", "), format_word(oracle, w.label()))
}

/// Factors `h^{u}` / `(h^-1)^{u}` standing for `u h u⁻¹`, joined by ` * `.
pub fn format_conjugacy_word<O: LabelOracle + ?Sized>(oracle: &O, w: &ConjugacyWord) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.factors
        .iter()
        .map(|(base, u)| {
            let b = match base {
                WitnessBase::H => "h",
                WitnessBase::HInverse => "(h^-1)",
            };
            format!("{b}^{{{}}}", format_element(oracle, u))
        })
        .collect::<Vec<_>>()
        .join(" * ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::{parse_word, LabelGroup};

    fn rb() -> LabelGroup {
        LabelGroup::cyclic_rotation(2).unwrap().with_color_names(&["r", "b"]).unwrap()
    }

    #[test]
    fn tree_and_brick_round_trip() {
        let o = rb();
        let text = "(r (b (r . .) .) (b (r . .) .))";
        let t = parse_tree(&o, text).unwrap();
        assert_eq!(t.leaf_count(), 6);
        assert_eq!(format_tree(&o, &t), text);
        let b = parse_brick(&o, "{r:10, b:0}").unwrap();
        assert_eq!(b, BrickAddress::from_strs(&[(0, "10"), (1, "0")]));
        assert_eq!(format_brick(&o, &b), "{r:10, b:0}");
        assert_eq!(format_brick(&o, &BrickAddress::whole()), "{}");
        assert!(parse_brick(&o, "{r:0, r:1}").is_err());
        assert!(parse_brick(&o, "{g:0}").is_err());
    }

    #[test]
    fn point_round_trip() {
        let o = rb();
        let p = parse_point(&o, "{r: 01(1), b: (0)}").unwrap();
        assert_eq!(format_point(&o, &p), "{r: 0(1)}");
        assert_eq!(parse_point(&o, &format_point(&o, &p)).unwrap(), p);
    }

    #[test]
    fn element_round_trip() {
        let o = rb();
        let q = eval_element(&o, "quad((r . .), [2, 1], [r, 1], (r . .))").unwrap();
        let text = format_element(&o, &q);
        assert!(eval_element(&o, &text).unwrap().equal(&o, &q).unwrap());
        let e = parse_element("(id * id) ^ 2 * (id * id)").unwrap();
        assert_eq!(e.to_string(), "(id * id)^2 * (id * id)");
    }

    #[test]
    fn evaluation_matches_constructors() {
        let o = rb();
        let r = parse_word(&o, "r").unwrap();
        let via_text = eval_element(&o, "defer({r:0}, r) * iota(r)^-1").unwrap();
        let direct = deferment(&BrickAddress::from_strs(&[(0, "0")]), &r)
            .multiply(&o, &Quadruple::iota(r.clone()).inverse(&o).unwrap())
            .unwrap();
        assert!(via_text.equal(&o, &direct).unwrap());
        let c = eval_element(&o, "conj(iota1(r, r), iota(r))").unwrap();
        let expected = Quadruple::iota(r.clone())
            .multiply(&o, &Quadruple::iota1(ColorId(0), r.clone()))
            .unwrap()
            .multiply(&o, &Quadruple::iota(r).inverse(&o).unwrap())
            .unwrap();
        assert!(c.equal(&o, &expected).unwrap());
    }

    #[test]
    fn bad_quadruples_are_rejected() {
        let o = rb();
        assert!(eval_element(&o, "quad((r . .), [1], [1], (r . .))").is_err());
        assert!(eval_element(&o, "quad((r . .), [1, 1], [1, 1], (r . .))").is_err());
    }

    #[test]
    fn wreath_round_trip() {
        let o = rb();
        let w = parse_wreath(&o, "({r: 2, b: -1}, r)").unwrap();
        assert_eq!(format_wreath(&o, &w), "({r: 2, b: -1}, r)");
        assert_eq!(parse_wreath(&o, "({}, 1)").unwrap(), WreathElement::identity());
    }
}
