use serde_json::json;

use svkit::element::{CantorPoint, Coordinate, Quadruple};
use svkit::forest::{BrickAddress, Permutation, Tree};
use svkit::label::{parse_word, ColorId, KernelSpec, LabelGroup, LabelOracle};
use svkit::sample::Sampler;
use svkit::subgroups::{quasi_retract, section_zeta};
use svkit::Result;

use crate::{Report, EXIT_NEGATIVE, EXIT_OK};

const R: ColorId = ColorId(0);
const B: ColorId = ColorId(1);
const G: ColorId = ColorId(2);

fn cross_relation() -> Result<bool> {
    let o = LabelGroup::trivial(2, &[])?;
    let minus = Tree::node(R, Tree::caret(B), Tree::caret(B));
    let plus = Tree::node(B, Tree::caret(R), Tree::caret(R));
    let h = Quadruple::from_permutation(minus, Permutation::from_one_based(&[1, 3, 2, 4])?, plus)?;
    h.equal(&o, &Quadruple::identity())
}

fn twist_relation() -> Result<bool> {
    let o = LabelGroup::sym(3)?;
    for name in ["s", "c", "s c", "c^-1 s"] {
        let g = parse_word(&o, name)?;
        for s in o.colors().unwrap_or_default() {
            let lhs = Quadruple::from_trees(Tree::caret(o.act(&g, s)?), Permutation::identity(2), vec![g.clone(); 2], Tree::caret(s))?;
            if !lhs.equal(&o, &Quadruple::iota(g.clone()))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn leaf_address() -> Result<bool> {
    let t = Tree::node(R, Tree::node(B, Tree::caret(G), Tree::Leaf), Tree::node(B, Tree::caret(R), Tree::Leaf));
    Ok(t.leaves()[3] == BrickAddress::from_strs(&[(0, "10"), (1, "0")]))
}

fn germinal_twist() -> Result<bool> {
    let o = LabelGroup::product_kernel(LabelGroup::trivial(3, &[])?, KernelSpec::Free { rank: 4 })?
        .with_generator_names(&["g1", "g2", "g3", "g4"])?;
    let plus = Tree::node(R, Tree::node(B, Tree::caret(R), Tree::Leaf), Tree::Leaf);
    let minus = Tree::node(R, Tree::caret(B), Tree::caret(G));
    let labels = ["g1", "g2", "g3", "g4"].iter().map(|n| parse_word(&o, n)).collect::<Result<_>>()?;
    let h = Quadruple::from_trees(minus, Permutation::from_one_based(&[3, 1, 4, 2])?, labels, plus)?;
    let kappa = CantorPoint::from_coords([
        (R, Coordinate::new(vec![false, true], vec![false])?),
        (B, Coordinate::new(vec![false], vec![true])?),
    ]);
    Ok(h.germinal_twist(&o, &kappa)? == parse_word(&o, "g2")?)
}

fn group_laws() -> Result<bool> {
    let o = LabelGroup::sym(3)?;
    let mut s = Sampler::new(&o, 11);
    for _ in 0..20 {
        let (a, b, c) = (s.element(&o)?, s.element(&o)?, s.element(&o)?);
        let left = a.multiply(&o, &b)?.multiply(&o, &c)?;
        let right = a.multiply(&o, &b.multiply(&o, &c)?)?;
        if !left.equal(&o, &right)? || !a.multiply(&o, &a.inverse(&o)?)?.equal(&o, &Quadruple::identity())? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn section_identity() -> Result<bool> {
    let o = LabelGroup::cyclic_rotation(3)?;
    let mut s = Sampler::new(&o, 12);
    for _ in 0..20 {
        let w = s.wreath(&o)?;
        let back = quasi_retract(&o, &section_zeta(&o, &w)?, &CantorPoint::basepoint())?;
        if back.vector() != w.vector() || !o.is_identity(&o.multiply(&o.inverse(back.label())?, w.label())?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn run() -> Report {
    type Check = (&'static str, fn() -> Result<bool>);
    let checks: [Check; 6] = [
        ("cross relation", cross_relation),
        ("twist relation", twist_relation),
        ("multicolored tree leaf address", leaf_address),
        ("germinal twist of the example element", germinal_twist),
        ("group laws on random elements", group_laws),
        ("retraction of the section", section_identity),
    ];
    let mut lines = Vec::new();
    let mut entries = Vec::new();
    let mut all = true;
    for (name, check) in checks {
        let passed = check().unwrap_or(false);
        all &= passed;
        lines.push(format!("{} {name}", if passed { "PASS" } else { "FAIL" }));
        entries.push(json!({"name": name, "passed": passed}));
    }
    Report {
        status: if all { EXIT_OK } else { EXIT_NEGATIVE },
        text: lines.join("\n"),
        json: json!({"checks": entries, "passed": all}),
    }
}
