//! Label groups: a group `G` acting on a color set `S`, exposed as an oracle.
//!
//! Everything above this module treats `G` abstractly. Equality of group
//! elements is only ever decided by comparing oracle normal forms, so the
//! exactness of the whole crate is relative to the oracle's word problem.

mod analysis;
mod config;
mod group;

use std::fmt;

use crate::error::{Error, Result};

pub use analysis::{analyze_finite_action, enumerate_group, ActionReport, SubsetOrbit};
pub use config::{KernelConfig, LabelGroupConfig};
pub use group::{KernelKind, KernelSpec, LabelGroup, OracleKind};

/// An element of the color set `S`.
///
/// Finite color sets use indices `0..|S|`; the translation action on the
/// integers uses the integer itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorId(pub i64);

impl fmt::Display for ColorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize) -> Self {
        Letter { generator, inverse: false }
    }

    pub fn inv(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }
}

/// A word in the oracle's generators. The empty word is the identity.
///
/// Words produced by an oracle (`normalize`, `multiply`, `inverse`) are in
/// normal form, so two such words are equal in `G` iff they are identical.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelElement {
    letters: Vec<Letter>,
}

impl LabelElement {
    pub fn identity() -> Self {
        LabelElement::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        LabelElement { letters }
    }

    pub fn generator(index: usize) -> Self {
        LabelElement { letters: vec![Letter::new(index)] }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// True for the empty word. Only meaningful on normalized words.
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &LabelElement) -> LabelElement {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        LabelElement { letters }
    }

    /// Formal inverse (reversed, letters flipped); not normalized.
    pub fn formal_inverse(&self) -> LabelElement {
        LabelElement { letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }
}

/// The oracle boundary for a group action `G ↷ S`.
///
/// Implementations must be pure and re-entrant. `act` must be a left
/// action: `act(g·h, s) = act(g, act(h, s))`.
pub trait LabelOracle {
    fn generator_count(&self) -> usize;
    fn generator_name(&self, index: usize) -> &str;
    fn generator_index(&self, name: &str) -> Option<usize>;

    fn normalize(&self, word: &LabelElement) -> Result<LabelElement>;

    fn multiply(&self, g: &LabelElement, h: &LabelElement) -> Result<LabelElement> {
        self.normalize(&g.concat(h))
    }

    fn inverse(&self, g: &LabelElement) -> Result<LabelElement> {
        self.normalize(&g.formal_inverse())
    }

    fn act(&self, g: &LabelElement, s: ColorId) -> Result<ColorId>;

    fn acts_trivially(&self, g: &LabelElement) -> Result<bool>;

    /// All colors when `S` is finite, `None` otherwise.
    fn colors(&self) -> Option<Vec<ColorId>>;

    fn contains_color(&self, s: ColorId) -> bool;

    fn color_name(&self, s: ColorId) -> String;

    fn parse_color(&self, text: &str) -> Result<ColorId>;

    /// Whether `G` is known to be finite (needed by the action analyzer).
    fn is_finite_group(&self) -> bool {
        false
    }

    /// `g⁻¹.s`, derived from the other capabilities.
    fn act_inverse(&self, g: &LabelElement, s: ColorId) -> Result<ColorId> {
        self.act(&self.inverse(g)?, s)
    }

    fn is_identity(&self, g: &LabelElement) -> Result<bool> {
        Ok(self.normalize(g)?.is_empty())
    }
}

/// Prints a word as space-separated generator names, `name^-1` for
/// inverses, and `1` for the identity.
pub fn format_word<O: LabelOracle + ?Sized>(oracle: &O, word: &LabelElement) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    word.letters()
        .iter()
        .map(|l| {
            let name = oracle.generator_name(l.generator);
            if l.inverse {
                format!("{name}^-1")
            } else {
                name.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parses a whitespace-separated word (`a b^-1 c^2`, `1` for identity) and
/// normalizes it.
pub fn parse_word<O: LabelOracle + ?Sized>(oracle: &O, text: &str) -> Result<LabelElement> {
    let mut letters = Vec::new();
    for token in text.split_whitespace() {
        if token == "1" {
            continue;
        }
        let (name, exponent) = match token.split_once('^') {
            Some((name, exp)) => {
                let e: i64 = exp
                    .parse()
                    .map_err(|_| Error::Invalid(format!("bad exponent in `{token}`")))?;
                (name, e)
            }
            None => (token, 1),
        };
        let index = oracle
            .generator_index(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        let letter = Letter { generator: index, inverse: exponent < 0 };
        for _ in 0..exponent.unsigned_abs() {
            letters.push(letter);
        }
    }
    oracle.normalize(&LabelElement::from_letters(letters))
}

/// Freely reduces a word (cancels adjacent `x x^-1`).
pub fn free_reduce(letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction_cancels_nested_pairs() {
        let a = Letter::new(0);
        let b = Letter::new(1);
        assert_eq!(free_reduce(&[a, b, b.inv(), a.inv(), b]), vec![b]);
        assert!(free_reduce(&[a, a.inv()]).is_empty());
    }
}
