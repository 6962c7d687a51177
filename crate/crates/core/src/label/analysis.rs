use std::collections::{BTreeSet, HashSet, VecDeque};

use super::{ColorId, LabelElement, LabelOracle};
use crate::error::{Error, Result};

const MAX_ELEMENTS: usize = 100_000;
const MAX_TUPLES: usize = 2_000_000;

/// One orbit of `m`-element subsets of `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetOrbit {
    pub size: usize,
    pub representative: Vec<ColorId>,
    pub orbit_size: usize,
    pub setwise_stabilizer_order: usize,
    pub pointwise_stabilizer_order: usize,
}

/// Combinatorial data of a finite action `G ↷ S` relevant to the
/// `[A_n]` conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionReport {
    pub n: usize,
    pub group_order: usize,
    pub color_count: usize,
    pub kernel_order: usize,
    pub kernel_generators: Vec<LabelElement>,
    pub kernel_is_whole_group: bool,
    /// `orbit_counts[m-1]` is the number of `G`-orbits on `S^m`.
    pub orbit_counts: Vec<usize>,
    pub subset_orbits: Vec<SubsetOrbit>,
    /// Finite groups and their stabilizers are of type `F_∞`, so the
    /// finiteness clauses hold as soon as the orbit counts are finite.
    pub finiteness_clauses_hold: bool,
}

/// All elements of a finite `G` as normal forms, in breadth-first order
/// from the identity.
pub fn enumerate_group<O: LabelOracle + ?Sized>(oracle: &O) -> Result<Vec<LabelElement>> {
    if !oracle.is_finite_group() {
        return Err(Error::Unsupported("group enumeration needs a finite group".into()));
    }
    let gens: Vec<LabelElement> = (0..oracle.generator_count()).map(LabelElement::generator).collect();
    let mut seen = HashSet::from([LabelElement::identity()]);
    let mut order = vec![LabelElement::identity()];
    let mut queue = VecDeque::from([LabelElement::identity()]);
    while let Some(g) = queue.pop_front() {
        for a in &gens {
            let h = oracle.multiply(&g, a)?;
            if seen.insert(h.clone()) {
                if order.len() >= MAX_ELEMENTS {
                    return Err(Error::Unsupported(format!("group has more than {MAX_ELEMENTS} elements")));
                }
                order.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    Ok(order)
}

fn closure<O: LabelOracle + ?Sized>(oracle: &O, gens: &[LabelElement]) -> Result<HashSet<LabelElement>> {
    let mut seen = HashSet::from([LabelElement::identity()]);
    let mut queue = VecDeque::from([LabelElement::identity()]);
    while let Some(g) = queue.pop_front() {
        for a in gens {
            let h = oracle.multiply(&g, a)?;
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    Ok(seen)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Analyzes a finite action for `n ∈ {1, 2, 3}`.
pub fn analyze_finite_action<O: LabelOracle + ?Sized>(oracle: &O, n: usize) -> Result<ActionReport> {
    if !(1..=3).contains(&n) {
        return Err(Error::Invalid(format!("n must be 1, 2 or 3, got {n}")));
    }
    let colors = oracle
        .colors()
        .ok_or_else(|| Error::Unsupported("action analysis needs a finite color set".into()))?;
    let elements = enumerate_group(oracle)?;
    let d = colors.len();
    if d.checked_pow(n as u32).is_none_or(|t| t > MAX_TUPLES) {
        return Err(Error::Unsupported(format!("|S|^{n} exceeds {MAX_TUPLES} tuples")));
    }

    // Colors are 0..d for finite color sets.
    let images: Vec<Vec<usize>> = elements
        .iter()
        .map(|g| colors.iter().map(|&s| oracle.act(g, s).map(|t| t.0 as usize)).collect())
        .collect::<Result<_>>()?;
    let generator_images: Vec<Vec<usize>> = (0..oracle.generator_count())
        .map(|i| {
            let g = LabelElement::generator(i);
            colors.iter().map(|&s| oracle.act(&g, s).map(|t| t.0 as usize)).collect()
        })
        .collect::<Result<_>>()?;

    let kernel: Vec<LabelElement> = elements
        .iter()
        .zip(&images)
        .filter(|(_, img)| img.iter().enumerate().all(|(i, &j)| i == j))
        .map(|(g, _)| g.clone())
        .collect();
    let mut kernel_generators: Vec<LabelElement> = Vec::new();
    let mut generated = HashSet::from([LabelElement::identity()]);
    for k in &kernel {
        if !generated.contains(k) {
            kernel_generators.push(k.clone());
            generated = closure(oracle, &kernel_generators)?;
        }
    }

    let mut orbit_counts = Vec::new();
    for m in 1..=n {
        let total = d.pow(m as u32);
        let mut parent: Vec<usize> = (0..total).collect();
        for img in &generator_images {
            for t in 0..total {
                let mut rest = t;
                let mut image = 0;
                let mut place = 1;
                for _ in 0..m {
                    image += img[rest % d] * place;
                    rest /= d;
                    place *= d;
                }
                let (a, b) = (find(&mut parent, t), find(&mut parent, image));
                parent[a] = b;
            }
        }
        orbit_counts.push((0..total).filter(|&t| find(&mut parent, t) == t).count());
    }

    let mut subset_orbits = Vec::new();
    for size in 0..=n.min(d) {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        for subset in subsets(d, size) {
            if seen.contains(&subset) {
                continue;
            }
            let orbit: BTreeSet<Vec<usize>> = images
                .iter()
                .map(|img| {
                    let mut t: Vec<usize> = subset.iter().map(|&s| img[s]).collect();
                    t.sort_unstable();
                    t
                })
                .collect();
            let pointwise = images.iter().filter(|img| subset.iter().all(|&s| img[s] == s)).count();
            subset_orbits.push(SubsetOrbit {
                size,
                representative: subset.iter().map(|&s| ColorId(s as i64)).collect(),
                orbit_size: orbit.len(),
                setwise_stabilizer_order: elements.len() / orbit.len(),
                pointwise_stabilizer_order: pointwise,
            });
            seen.extend(orbit);
        }
    }

    Ok(ActionReport {
        n,
        group_order: elements.len(),
        color_count: d,
        kernel_order: kernel.len(),
        kernel_is_whole_group: kernel.len() == elements.len(),
        kernel_generators,
        orbit_counts,
        subset_orbits,
        finiteness_clauses_hold: true,
    })
}

fn subsets(d: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, d: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for s in start..d {
            cur.push(s);
            go(s + 1, d, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, d, size, &mut Vec::new(), &mut out);
    out
}
