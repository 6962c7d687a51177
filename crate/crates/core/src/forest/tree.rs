use crate::error::{Error, Result};
use crate::label::ColorId;

use super::BrickAddress;

/// A multicolored binary tree. Leaves are ordered child 0 before child 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tree {
    Leaf,
    Split { color: ColorId, children: Box<[Tree; 2]> },
}

impl Tree {
    /// The simple split `x_s`.
    pub fn caret(color: ColorId) -> Tree {
        Tree::node(color, Tree::Leaf, Tree::Leaf)
    }

    pub fn node(color: ColorId, child0: Tree, child1: Tree) -> Tree {
        Tree::Split { color, children: Box::new([child0, child1]) }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Tree::Leaf)
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Tree::Leaf => 1,
            Tree::Split { children, .. } => children[0].leaf_count() + children[1].leaf_count(),
        }
    }

    pub fn internal_count(&self) -> usize {
        self.leaf_count() - 1
    }

    /// Leaf addresses, left to right.
    pub fn leaves(&self) -> Vec<BrickAddress> {
        let mut out = Vec::with_capacity(self.leaf_count());
        self.collect_leaves(&BrickAddress::whole(), &mut out);
        out
    }

    fn collect_leaves(&self, at: &BrickAddress, out: &mut Vec<BrickAddress>) {
        match self {
            Tree::Leaf => out.push(at.clone()),
            Tree::Split { color, children } => {
                let (a, b) = at.split(*color);
                children[0].collect_leaves(&a, out);
                children[1].collect_leaves(&b, out);
            }
        }
    }

    /// Colors used by internal nodes.
    pub fn colors(&self, out: &mut Vec<ColorId>) {
        if let Tree::Split { color, children } = self {
            if !out.contains(color) {
                out.push(*color);
            }
            children[0].colors(out);
            children[1].colors(out);
        }
    }

    /// Replaces the leaves, left to right, by `grafts`.
    pub fn graft(&self, grafts: &mut impl Iterator<Item = Tree>) -> Tree {
        match self {
            Tree::Leaf => grafts.next().expect("one graft per leaf"),
            Tree::Split { color, children } => {
                Tree::node(*color, children[0].graft(grafts), children[1].graft(grafts))
            }
        }
    }

    /// Splits the leaf at 0-based `index` with `color`.
    pub fn split_leaf(&self, index: usize, color: ColorId) -> Tree {
        let mut i = 0;
        self.map_leaves(&mut |t| {
            let out = if i == index { Tree::caret(color) } else { t.clone() };
            i += 1;
            out
        })
    }

    fn map_leaves(&self, f: &mut impl FnMut(&Tree) -> Tree) -> Tree {
        match self {
            Tree::Leaf => f(self),
            Tree::Split { color, children } => {
                let a = children[0].map_leaves(f);
                let b = children[1].map_leaves(f);
                Tree::node(*color, a, b)
            }
        }
    }

    /// If leaves `index` and `index + 1` are the two children of one
    /// node, returns that node's color.
    pub fn caret_at(&self, index: usize) -> Option<ColorId> {
        fn go(t: &Tree, offset: usize, index: usize) -> Option<ColorId> {
            match t {
                Tree::Leaf => None,
                Tree::Split { color, children } => {
                    if offset == index && children[0].is_leaf() && children[1].is_leaf() {
                        return Some(*color);
                    }
                    let left = children[0].leaf_count();
                    if index < offset + left {
                        go(&children[0], offset, index)
                    } else {
                        go(&children[1], offset + left, index)
                    }
                }
            }
        }
        go(self, 0, index)
    }

    /// Collapses the caret whose leaves are `index`, `index + 1`.
    pub fn collapse_at(&self, index: usize) -> Tree {
        fn go(t: &Tree, offset: usize, index: usize) -> Tree {
            match t {
                Tree::Leaf => Tree::Leaf,
                Tree::Split { color, children } => {
                    if offset == index && children[0].is_leaf() && children[1].is_leaf() {
                        return Tree::Leaf;
                    }
                    let left = children[0].leaf_count();
                    if index < offset + left {
                        Tree::node(*color, go(&children[0], offset, index), children[1].clone())
                    } else {
                        Tree::node(*color, children[0].clone(), go(&children[1], offset + left, index))
                    }
                }
            }
        }
        go(self, 0, index)
    }

    /// The subtree of `self` seen from inside `B(ψ)`: its leaves, prefixed
    /// by `ψ`, are the non-empty intersections of `B(ψ)` with the leaves of
    /// `self`, in the left-to-right order of `self`.
    pub fn restrict(&self, psi: &BrickAddress) -> Tree {
        fn go(t: &Tree, psi: &BrickAddress, at: &BrickAddress) -> Tree {
            match t {
                Tree::Leaf => Tree::Leaf,
                Tree::Split { color, children } => {
                    let depth = at.get(*color).len();
                    let bits = psi.get(*color);
                    if depth < bits.len() {
                        let bit = bits[depth];
                        go(&children[bit as usize], psi, &at.with_bit(*color, bit))
                    } else {
                        let (x, y) = at.split(*color);
                        Tree::node(*color, go(&children[0], psi, &x), go(&children[1], psi, &y))
                    }
                }
            }
        }
        go(self, psi, &BrickAddress::whole())
    }

    /// A tree having each of the pairwise disjoint `bricks` as a leaf.
    /// Each node splits in the smallest color that every brick strictly
    /// inside it still extends, so no brick is ever cut.
    pub fn refining(bricks: &[BrickAddress]) -> Result<Tree> {
        for (i, a) in bricks.iter().enumerate() {
            for b in &bricks[..i] {
                if !a.is_disjoint(b) {
                    return Err(Error::OverlappingBricks(a.to_string(), b.to_string()));
                }
            }
        }
        fn go(at: &BrickAddress, bricks: &[BrickAddress]) -> Result<Tree> {
            let inside: Vec<&BrickAddress> = bricks.iter().filter(|b| at.contains(b)).collect();
            if inside.is_empty() || inside.contains(&at) {
                return Ok(Tree::Leaf);
            }
            let mut colors: Vec<ColorId> = inside.iter().flat_map(|b| b.colors()).collect();
            colors.sort();
            colors.dedup();
            let color = colors
                .into_iter()
                .find(|&s| inside.iter().all(|b| b.get(s).len() > at.get(s).len()))
                .ok_or_else(|| Error::Invalid(format!("the bricks inside {at} are not leaves of a common tree")))?;
            let (x, y) = at.split(color);
            Ok(Tree::node(color, go(&x, bricks)?, go(&y, bricks)?))
        }
        go(&BrickAddress::whole(), bricks)
    }
}
