use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use svkit::element::{CantorPoint, Coordinate, Quadruple};
use svkit::forest::{common_refinement, BrickAddress, Forest, Permutation, Tree};
use svkit::kuznetsov::{decide_word, replay, Budget, FinitePresentation, Verdict};
use svkit::label::{free_reduce, KernelSpec, LabelGroup, LabelOracle, Letter};
use svkit::sample::Sampler;
use svkit::subgroups::{wreath_multiply, WreathElement};
use svkit::syntax::{eval_element, format_brick, format_element, format_point, parse_brick, parse_point};

fn oracles() -> Vec<LabelGroup> {
    vec![
        LabelGroup::sym(3).unwrap(),
        LabelGroup::translation_z(),
        LabelGroup::product_kernel(LabelGroup::cyclic_rotation(2).unwrap(), KernelSpec::Free { rank: 2 }).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printed_elements_parse_back(seed in any::<u64>()) {
        for o in oracles() {
            let mut s = Sampler::new(&o, seed);
            let q = s.element(&o).unwrap();
            let text = format_element(&o, &q);
            prop_assert!(eval_element(&o, &text).unwrap().equal(&o, &q).unwrap(), "{}", text);
        }
    }

    #[test]
    fn bricks_and_points_round_trip(seed in any::<u64>()) {
        let o = LabelGroup::sym(3).unwrap().with_color_names(&["r", "b", "g"]).unwrap();
        let mut s = Sampler::new(&o, seed);
        let b = s.brick(6);
        prop_assert_eq!(parse_brick(&o, &format_brick(&o, &b)).unwrap(), b);
        let p = s.point();
        prop_assert_eq!(parse_point(&o, &format_point(&o, &p)).unwrap(), p);
    }

    #[test]
    fn tree_leaves_partition_the_cube(seed in any::<u64>(), n in 1usize..12) {
        let o = LabelGroup::cyclic_rotation(3).unwrap();
        let mut s = Sampler::new(&o, seed);
        let leaves = s.tree(n).leaves();
        let total = leaves.iter().fold(BigRational::zero(), |acc, b| acc + b.measure());
        prop_assert!(total.is_one());
        for (i, a) in leaves.iter().enumerate() {
            for b in &leaves[..i] {
                prop_assert!(a.is_disjoint(b));
            }
        }
        let p = s.point();
        prop_assert_eq!(leaves.iter().filter(|b| p.in_brick(b)).count(), 1);
    }

    #[test]
    fn common_refinement_is_a_meet(seed in any::<u64>()) {
        let o = LabelGroup::sym(3).unwrap();
        let mut s = Sampler::new(&o, seed);
        let (t1, t2) = (s.tree(5), s.tree(5));
        let (e1, e2, sigma) = common_refinement(&t1, &t2);
        let fine = |e: &Forest, t: &Tree| -> Vec<BrickAddress> {
            e.compose(&Forest::single(t.clone())).unwrap().leaves().into_iter().map(|(_, b)| b).collect()
        };
        let (a, b) = (fine(&e1, &t1), fine(&e2, &t2));
        prop_assert_eq!(a.len(), b.len());
        for (j, leaf) in b.iter().enumerate() {
            prop_assert_eq!(&a[sigma.apply(j)], leaf);
        }
        // Every non-empty intersection of a leaf of t1 with a leaf of t2 is a fine leaf.
        let meet: Vec<BrickAddress> = t1
            .leaves()
            .iter()
            .flat_map(|x| t2.leaves().into_iter().filter_map(move |y| x.intersection(&y)))
            .collect();
        prop_assert_eq!(meet.len(), a.len());
        for m in &meet {
            prop_assert!(a.contains(m));
        }
    }

    #[test]
    fn permutation_laws(seed in any::<u64>(), n in 1usize..9) {
        let o = LabelGroup::sym(2).unwrap();
        let mut s = Sampler::new(&o, seed);
        let (p, q) = (s.permutation(n), s.permutation(n));
        prop_assert!(p.compose(&p.inverse()).is_identity());
        let pq = p.compose(&q);
        for i in 0..n {
            prop_assert_eq!(pq.apply(i), p.apply(q.apply(i)));
        }
        prop_assert_eq!(Permutation::from_one_based(&p.one_based()).unwrap(), p);
    }

    #[test]
    fn coordinates_normalize(pre in prop::collection::vec(any::<bool>(), 0..6),
                             period in prop::collection::vec(any::<bool>(), 1..5),
                             k in 0usize..8) {
        let c = Coordinate::new(pre.clone(), period.clone()).unwrap();
        let doubled: Vec<bool> = period.iter().chain(&period).copied().collect();
        prop_assert_eq!(&Coordinate::new(pre.clone(), doubled).unwrap(), &c);
        for i in 0..20 {
            let expected = if i < pre.len() { pre[i] } else { period[(i - pre.len()) % period.len()] };
            prop_assert_eq!(c.bit(i), expected);
            prop_assert_eq!(c.shift(k).bit(i), c.bit(i + k));
        }
    }

    #[test]
    fn action_is_a_left_action(seed in any::<u64>()) {
        for o in oracles() {
            let mut s = Sampler::new(&o, seed);
            let (a, b) = (s.element(&o).unwrap(), s.element(&o).unwrap());
            let p = s.point();
            let ab = a.multiply(&o, &b).unwrap();
            prop_assert_eq!(ab.act(&o, &p).unwrap(), a.act(&o, &b.act(&o, &p).unwrap()).unwrap());
            let back = a.inverse(&o).unwrap().act(&o, &a.act(&o, &p).unwrap()).unwrap();
            prop_assert_eq!(back, p);
        }
    }

    #[test]
    fn unequal_elements_have_a_witness_point(seed in any::<u64>()) {
        for o in oracles() {
            let mut s = Sampler::new(&o, seed);
            let (a, b) = (s.element(&o).unwrap(), s.element(&o).unwrap());
            match a.distinguishing_point(&o, &b).unwrap() {
                None => prop_assert!(a.equal(&o, &b).unwrap()),
                Some(p) => {
                    let differ = a.act(&o, &p).unwrap() != b.act(&o, &p).unwrap()
                        || !o.is_identity(&o.multiply(
                            &o.inverse(&a.germinal_twist(&o, &p).unwrap()).unwrap(),
                            &b.germinal_twist(&o, &p).unwrap(),
                        ).unwrap()).unwrap();
                    prop_assert!(differ);
                }
            }
        }
    }

    #[test]
    fn reduction_keeps_the_element(seed in any::<u64>()) {
        let o = LabelGroup::cyclic_rotation(3).unwrap();
        let mut s = Sampler::new(&o, seed);
        let q = s.element(&o).unwrap();
        let mut e = q.clone();
        for _ in 0..4 {
            e = s.expand(&o, &e).unwrap();
        }
        let r = e.reduce(&o).unwrap();
        prop_assert!(r.leaf_count() <= e.leaf_count());
        prop_assert!(r.equal(&o, &q).unwrap());
        prop_assert_eq!(r.reduce(&o).unwrap(), r);
    }

    #[test]
    fn wreath_product_is_associative(seed in any::<u64>()) {
        for o in oracles() {
            let mut s = Sampler::new(&o, seed);
            let (a, b, c) = (s.wreath(&o).unwrap(), s.wreath(&o).unwrap(), s.wreath(&o).unwrap());
            let left = wreath_multiply(&o, &wreath_multiply(&o, &a, &b).unwrap(), &c).unwrap();
            let right = wreath_multiply(&o, &a, &wreath_multiply(&o, &b, &c).unwrap()).unwrap();
            prop_assert_eq!(left.vector(), right.vector());
            let with_identity = wreath_multiply(&o, &a, &WreathElement::identity()).unwrap();
            prop_assert_eq!(with_identity.vector(), a.vector());
        }
    }

    #[test]
    fn free_reduction_is_idempotent(word in prop::collection::vec((0usize..3, any::<bool>()), 0..16)) {
        let w: Vec<Letter> = word.iter().map(|&(g, inverse)| Letter { generator: g, inverse }).collect();
        let r = free_reduce(&w);
        prop_assert_eq!(free_reduce(&r), r.clone());
        prop_assert!(r.windows(2).all(|p| p[0] != p[1].inv()));
    }

    #[test]
    fn kuznetsov_verdicts_are_stable(word in prop::collection::vec(any::<bool>(), 1..5), extra in 0usize..4) {
        let p = FinitePresentation::from_json(r#"{"generators":["a"],"relators":["a a a"]}"#).unwrap();
        let w: Vec<Letter> = word.iter().map(|&inverse| Letter { generator: 0, inverse }).collect();
        let small = decide_word(&p, &w, Budget::default()).unwrap();
        let large = decide_word(&p, &w, Budget { max_length: 24 + extra, max_states: 400_000 }).unwrap();
        let trivial = free_reduce(&w).iter().map(|l| if l.inverse { -1 } else { 1 }).sum::<i64>() % 3 == 0;
        match (&small, &large) {
            (Verdict::Trivial(d), Verdict::Trivial(_)) => prop_assert!(trivial && replay(d)),
            (Verdict::Nontrivial(ds), Verdict::Nontrivial(_)) => prop_assert!(!trivial && ds.iter().all(replay)),
            other => prop_assert!(false, "{:?}", other),
        }
    }
}

#[test]
fn basepoint_is_fixed_by_iota() {
    let o = LabelGroup::trivial(2, &["a"]).unwrap();
    let g = svkit::label::parse_word(&o, "a").unwrap();
    let p = CantorPoint::basepoint();
    assert_eq!(Quadruple::iota(g).act(&o, &p).unwrap(), p);
    assert!(BrickAddress::whole().is_whole());
}

#[test]
fn two_hundred_printed_elements_parse_back() {
    let o = LabelGroup::product_kernel(LabelGroup::sym(3).unwrap(), KernelSpec::Free { rank: 1 }).unwrap();
    let mut s = Sampler::new(&o, 200);
    for _ in 0..200 {
        let q = s.element(&o).unwrap();
        let text = format_element(&o, &q);
        assert!(eval_element(&o, &text).unwrap().equal(&o, &q).unwrap(), "{text}");
    }
}
