//! Seeded random trees, labels, elements and points for property checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::element::{CantorPoint, Coordinate, Quadruple};
use crate::error::Result;
use crate::forest::{BrickAddress, Permutation, Tree};
use crate::label::{ColorId, LabelElement, LabelOracle, Letter};
use crate::subgroups::WreathElement;

/// Colors drawn when the oracle's color set is infinite.
pub const COLOR_WINDOW: std::ops::RangeInclusive<i64> = -2..=2;

pub struct Sampler {
    rng: ChaCha8Rng,
    colors: Vec<ColorId>,
    pub max_leaves: usize,
    pub max_word: usize,
}

impl Sampler {
    pub fn new<O: LabelOracle + ?Sized>(oracle: &O, seed: u64) -> Self {
        let colors = oracle.colors().unwrap_or_else(|| COLOR_WINDOW.map(ColorId).collect());
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), colors, max_leaves: 6, max_word: 4 }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn colors(&self) -> &[ColorId] {
        &self.colors
    }

    pub fn color(&mut self) -> ColorId {
        *self.colors.choose(&mut self.rng).expect("at least one color")
    }

    /// A tree with exactly `leaves` leaves, grown by splitting random leaves.
    pub fn tree(&mut self, leaves: usize) -> Tree {
        let mut t = Tree::Leaf;
        for n in 1..leaves.max(1) {
            let i = self.rng.gen_range(0..n);
            let c = self.color();
            t = t.split_leaf(i, c);
        }
        t
    }

    pub fn permutation(&mut self, n: usize) -> Permutation {
        let mut images: Vec<usize> = (0..n).collect();
        images.shuffle(&mut self.rng);
        Permutation::from_images(images).expect("a shuffle is a permutation")
    }

    fn word_over(&mut self, generators: &[usize], max_len: usize) -> Vec<Letter> {
        if generators.is_empty() {
            return Vec::new();
        }
        let len = self.rng.gen_range(0..=max_len);
        (0..len)
            .map(|_| Letter { generator: *generators.choose(&mut self.rng).unwrap(), inverse: self.rng.gen() })
            .collect()
    }

    pub fn label<O: LabelOracle + ?Sized>(&mut self, oracle: &O) -> Result<LabelElement> {
        let gens: Vec<usize> = (0..oracle.generator_count()).collect();
        let w = self.word_over(&gens, self.max_word);
        oracle.normalize(&LabelElement::from_letters(w))
    }

    /// A word in the generators that act trivially on the colors.
    pub fn kernel_label<O: LabelOracle + ?Sized>(&mut self, oracle: &O, max_len: usize) -> Result<LabelElement> {
        let mut gens = Vec::new();
        for g in 0..oracle.generator_count() {
            if oracle.acts_trivially(&LabelElement::generator(g))? {
                gens.push(g);
            }
        }
        let w = self.word_over(&gens, max_len);
        oracle.normalize(&LabelElement::from_letters(w))
    }

    pub fn element<O: LabelOracle + ?Sized>(&mut self, oracle: &O) -> Result<Quadruple> {
        let n = self.rng.gen_range(1..=self.max_leaves);
        let minus = self.tree(n);
        let plus = self.tree(n);
        let perm = self.permutation(n);
        let labels = (0..n).map(|_| self.label(oracle)).collect::<Result<_>>()?;
        Quadruple::from_trees(minus, perm, labels, plus)
    }

    /// `[T, id, (k_1, …, k_n), T]` with kernel labels.
    pub fn kernel_element<O: LabelOracle + ?Sized>(
        &mut self,
        oracle: &O,
        max_leaves: usize,
        max_len: usize,
    ) -> Result<Quadruple> {
        let n = self.rng.gen_range(1..=max_leaves.max(1));
        let tree = self.tree(n);
        let labels = (0..n).map(|_| self.kernel_label(oracle, max_len)).collect::<Result<_>>()?;
        Quadruple::diagonal(tree, labels)
    }

    fn bits(&mut self, max: usize) -> Vec<bool> {
        let len = self.rng.gen_range(0..=max);
        (0..len).map(|_| self.rng.gen()).collect()
    }

    pub fn point(&mut self) -> CantorPoint {
        let mut coords = Vec::new();
        for s in self.colors.clone() {
            if self.rng.gen_bool(0.25) {
                continue;
            }
            let pre = self.bits(5);
            let mut period = self.bits(3);
            if period.is_empty() {
                period.push(self.rng.gen());
            }
            coords.push((s, Coordinate::new(pre, period).expect("non-empty period")));
        }
        CantorPoint::from_coords(coords)
    }

    /// A proper brick of depth between 1 and `max_depth`.
    pub fn brick(&mut self, max_depth: usize) -> BrickAddress {
        let depth = self.rng.gen_range(1..=max_depth.max(1));
        let mut b = BrickAddress::whole();
        for _ in 0..depth {
            let s = self.color();
            let bit = self.rng.gen();
            b = b.with_bit(s, bit);
        }
        b
    }

    pub fn wreath<O: LabelOracle + ?Sized>(&mut self, oracle: &O) -> Result<WreathElement> {
        let mut v = Vec::new();
        for s in self.colors.clone() {
            if self.rng.gen_bool(0.5) {
                v.push((s, self.rng.gen_range(-3..=3)));
            }
        }
        Ok(WreathElement::new(v, self.label(oracle)?))
    }

    /// Expands `q` at a random domain leaf in a random color.
    pub fn expand<O: LabelOracle + ?Sized>(&mut self, oracle: &O, q: &Quadruple) -> Result<Quadruple> {
        let k = self.rng.gen_range(0..q.leaf_count());
        let s = self.color();
        q.expand(oracle, k, s)
    }
}
