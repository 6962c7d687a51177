use crate::element::Quadruple;
use crate::error::{Error, Result};
use crate::forest::BrickAddress;
use crate::label::{ColorId, LabelElement, LabelOracle};

use super::{defer_element, from_brick_map};

fn brick(s: ColorId, bits: &str) -> BrickAddress {
    BrickAddress::from_strs(&[(s.0, bits)])
}

fn brick_map(s: ColorId, pairs: &[(&str, &str)]) -> Quadruple {
    let pairs: Vec<_> = pairs.iter().map(|(d, r)| (brick(s, d), brick(s, r))).collect();
    from_brick_map(&pairs).expect("standard generators are arboreal")
}

/// A finite generating set of Thompson's group `V` acting on color `s`:
/// the generators `A`, `B`, `C` of `T` and the transpositions `π₀`, `π₁`.
pub fn v_generators(s: ColorId) -> Vec<Quadruple> {
    vec![
        brick_map(s, &[("0", "00"), ("10", "01"), ("11", "1")]),
        brick_map(s, &[("0", "0"), ("10", "100"), ("110", "101"), ("111", "11")]),
        brick_map(s, &[("0", "11"), ("10", "0"), ("11", "10")]),
        brick_map(s, &[("0", "10"), ("10", "0"), ("11", "11")]),
        brick_map(s, &[("0", "0"), ("10", "110"), ("110", "10"), ("111", "111")]),
    ]
}

/// A finite generating set of `SV_G` for finite `S`.
///
/// For every color, generators of `V` in that color; for every pair
/// `s < t`, the color change `[x_t, id, (1, 1), x_s]` and its deferment to
/// `B(s:0)`; for every generator `a` of `G`, `ι_∅(a)` and `ι_1^{s₀}(a)`
/// with `s₀` the smallest color.
pub fn generating_set<O: LabelOracle + ?Sized>(oracle: &O) -> Result<Vec<Quadruple>> {
    let colors = oracle
        .colors()
        .ok_or_else(|| Error::Unsupported("a finite generating set needs a finite color set".into()))?;
    let mut out = Vec::new();
    for &s in &colors {
        out.extend(v_generators(s));
    }
    for (i, &s) in colors.iter().enumerate() {
        for &t in &colors[i + 1..] {
            let change = from_brick_map(&[(brick(s, "0"), brick(t, "0")), (brick(s, "1"), brick(t, "1"))])?;
            out.push(defer_element(&brick(s, "0"), &change)?);
            out.push(change);
        }
    }
    let s0 = colors[0];
    for a in 0..oracle.generator_count() {
        let g = oracle.normalize(&LabelElement::generator(a))?;
        if g.is_empty() {
            continue;
        }
        out.push(Quadruple::iota(g.clone()));
        out.push(Quadruple::iota1(s0, g));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::CantorPoint;
    use crate::label::LabelGroup;

    #[test]
    fn v_generators_act_as_prefix_maps() {
        let o = LabelGroup::trivial(1, &[]).unwrap();
        let a = &v_generators(ColorId(0))[0];
        let p = CantorPoint::brick_base(&BrickAddress::from_strs(&[(0, "10")]));
        let q = a.act(&o, &p).unwrap();
        assert_eq!(q, CantorPoint::brick_base(&BrickAddress::from_strs(&[(0, "01")])));
    }

    #[test]
    fn trivial_one_color_gives_v() {
        let o = LabelGroup::trivial(1, &[]).unwrap();
        assert_eq!(generating_set(&o).unwrap().len(), 5);
    }

    #[test]
    fn cyclic_two_colors() {
        let o = LabelGroup::cyclic_rotation(2).unwrap();
        let gens = generating_set(&o).unwrap();
        assert_eq!(gens.len(), 5 + 5 + 2 + 2);
        let r = LabelElement::generator(0);
        assert!(gens.contains(&Quadruple::iota(r.clone())));
        assert!(gens.contains(&Quadruple::iota1(ColorId(0), r)));
    }

    #[test]
    fn infinite_colors_unsupported() {
        assert!(generating_set(&LabelGroup::translation_z()).is_err());
    }
}
