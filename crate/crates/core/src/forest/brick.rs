use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::label::{ColorId, LabelElement, LabelOracle};
use crate::error::Result;

/// A dyadic brick `B(ψ)`: a finite map from colors to non-empty bit
/// strings. Missing colors carry the empty word.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BrickAddress {
    bits: BTreeMap<ColorId, Vec<bool>>,
}

impl BrickAddress {
    /// The whole cube `C^S`.
    pub fn whole() -> Self {
        BrickAddress::default()
    }

    /// Builds an address, dropping empty entries.
    pub fn from_map(map: BTreeMap<ColorId, Vec<bool>>) -> Self {
        BrickAddress { bits: map.into_iter().filter(|(_, b)| !b.is_empty()).collect() }
    }

    /// Convenience constructor from `(color, "0101")` pairs.
    pub fn from_strs(entries: &[(i64, &str)]) -> Self {
        let mut a = BrickAddress::whole();
        for &(s, bits) in entries {
            for c in bits.chars() {
                a = a.with_bit(ColorId(s), c == '1');
            }
        }
        a
    }

    pub fn is_whole(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, s: ColorId) -> &[bool] {
        self.bits.get(&s).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn iter(&self) -> impl Iterator<Item = (ColorId, &[bool])> {
        self.bits.iter().map(|(&s, b)| (s, b.as_slice()))
    }

    pub fn colors(&self) -> impl Iterator<Item = ColorId> + '_ {
        self.bits.keys().copied()
    }

    /// Total number of bits; the measure is `2^-depth`.
    pub fn depth(&self) -> usize {
        self.bits.values().map(Vec::len).sum()
    }

    pub fn measure(&self) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::one() << self.depth())
    }

    pub fn with_bit(&self, s: ColorId, bit: bool) -> Self {
        let mut out = self.clone();
        out.bits.entry(s).or_default().push(bit);
        out
    }

    /// The two halves of `B(ψ)` in color `s`.
    pub fn split(&self, s: ColorId) -> (Self, Self) {
        (self.with_bit(s, false), self.with_bit(s, true))
    }

    /// `B(self) ⊇ B(other)`.
    pub fn contains(&self, other: &BrickAddress) -> bool {
        self.bits.iter().all(|(s, b)| other.get(*s).starts_with(b))
    }

    pub fn is_disjoint(&self, other: &BrickAddress) -> bool {
        self.bits.iter().any(|(s, b)| {
            let c = other.get(*s);
            !(b.starts_with(c) || c.starts_with(b))
        })
    }

    /// `B(self) ∩ B(other)`, if non-empty.
    pub fn intersection(&self, other: &BrickAddress) -> Option<BrickAddress> {
        if self.is_disjoint(other) {
            return None;
        }
        let mut out = self.clone();
        for (s, b) in &other.bits {
            let e = out.bits.entry(*s).or_default();
            if b.len() > e.len() {
                *e = b.clone();
            }
        }
        Some(out)
    }

    /// The address of `B(inner)` transported into `B(self)` by the
    /// canonical homeomorphism (per-color concatenation).
    pub fn concat(&self, inner: &BrickAddress) -> BrickAddress {
        let mut out = self.clone();
        for (s, b) in &inner.bits {
            out.bits.entry(*s).or_default().extend_from_slice(b);
        }
        out
    }

    /// Inverse of [`concat`](Self::concat): the address of `B(inner)`
    /// relative to `B(self)`. Requires `self.contains(inner)`.
    pub fn strip(&self, inner: &BrickAddress) -> BrickAddress {
        debug_assert!(self.contains(inner));
        let map = inner
            .bits
            .iter()
            .map(|(s, b)| (*s, b[self.get(*s).len()..].to_vec()))
            .collect();
        BrickAddress::from_map(map)
    }

    /// Coordinate permutation by `g`: `(g·ψ)(g.s) = ψ(s)`.
    pub fn permute<O: LabelOracle + ?Sized>(&self, oracle: &O, g: &LabelElement) -> Result<BrickAddress> {
        let mut map = BTreeMap::new();
        for (s, b) in &self.bits {
            map.insert(oracle.act(g, *s)?, b.clone());
        }
        Ok(BrickAddress { bits: map })
    }
}

pub fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

impl fmt::Display for BrickAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.bits.iter().map(|(s, b)| format!("{s}:{}", bits_to_string(b))).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const R: ColorId = ColorId(0);
    const B: ColorId = ColorId(1);

    #[test]
    fn split_examples() {
        let (a, b) = BrickAddress::whole().split(R);
        assert_eq!(a, BrickAddress::from_strs(&[(0, "0")]));
        assert_eq!(b, BrickAddress::from_strs(&[(0, "1")]));

        let psi = BrickAddress::from_strs(&[(0, "1")]);
        let (a, b) = psi.split(B);
        assert_eq!(a, BrickAddress::from_strs(&[(0, "1"), (1, "0")]));
        assert_eq!(b, BrickAddress::from_strs(&[(0, "1"), (1, "1")]));
        let (a, b) = psi.split(R);
        assert_eq!(a, BrickAddress::from_strs(&[(0, "10")]));
        assert_eq!(b, BrickAddress::from_strs(&[(0, "11")]));
    }

    #[test]
    fn containment_and_disjointness() {
        let a = BrickAddress::from_strs(&[(0, "1")]);
        let b = BrickAddress::from_strs(&[(0, "10"), (1, "1")]);
        let c = BrickAddress::from_strs(&[(1, "0")]);
        assert!(a.contains(&b));
        assert!(!b.contains(&a));
        assert!(b.is_disjoint(&c));
        assert!(!a.is_disjoint(&c));
        assert_eq!(a.intersection(&c).unwrap(), BrickAddress::from_strs(&[(0, "1"), (1, "0")]));
        assert_eq!(a.concat(&a.strip(&b)), b);
    }

    #[test]
    fn measure_is_exact() {
        let b = BrickAddress::from_strs(&[(0, "10"), (1, "1")]);
        assert_eq!(b.measure(), BigRational::new(BigInt::from(1), BigInt::from(8)));
        assert_eq!(BrickAddress::whole().measure(), BigRational::one());
    }
}
