use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::forest::{bits_to_string, BrickAddress};
use crate::label::{ColorId, LabelElement, LabelOracle};

/// An eventually periodic binary sequence `pre · period^∞`, kept with the
/// shortest period and then the shortest preperiod.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coordinate {
    pre: Vec<bool>,
    period: Vec<bool>,
}

impl Coordinate {
    pub fn new(mut pre: Vec<bool>, mut period: Vec<bool>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Invalid("a periodic coordinate needs a non-empty period".into()));
        }
        let p = period.len();
        if let Some(d) = (1..=p).find(|&d| p.is_multiple_of(d) && (0..p).all(|i| period[i] == period[i % d])) {
            period.truncate(d);
        }
        while pre.last().is_some() && pre.last() == period.last() {
            pre.pop();
            period.rotate_right(1);
        }
        Ok(Coordinate { pre, period })
    }

    /// `0̄`.
    pub fn zero() -> Self {
        Coordinate { pre: Vec::new(), period: vec![false] }
    }

    pub fn is_zero(&self) -> bool {
        self.pre.is_empty() && self.period == [false]
    }

    pub fn pre(&self) -> &[bool] {
        &self.pre
    }

    pub fn period(&self) -> &[bool] {
        &self.period
    }

    pub fn bit(&self, i: usize) -> bool {
        if i < self.pre.len() {
            self.pre[i]
        } else {
            self.period[(i - self.pre.len()) % self.period.len()]
        }
    }

    pub fn starts_with(&self, bits: &[bool]) -> bool {
        bits.iter().enumerate().all(|(i, &b)| self.bit(i) == b)
    }

    /// Drops the first `k` bits.
    pub fn shift(&self, k: usize) -> Coordinate {
        if k <= self.pre.len() {
            return Coordinate { pre: self.pre[k..].to_vec(), period: self.period.clone() };
        }
        let mut period = self.period.clone();
        let r = (k - self.pre.len()) % period.len();
        period.rotate_left(r);
        Coordinate { pre: Vec::new(), period }
    }

    pub fn prepend(&self, bits: &[bool]) -> Coordinate {
        let mut pre = bits.to_vec();
        pre.extend_from_slice(&self.pre);
        Coordinate::new(pre, self.period.clone()).expect("non-empty period")
    }
}

impl fmt::Display for Coordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", bits_to_string(&self.pre), bits_to_string(&self.period))
    }
}

/// A point of `C^S` with finitely many coordinates other than `0̄`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CantorPoint {
    coords: BTreeMap<ColorId, Coordinate>,
}

impl CantorPoint {
    /// `κ₀`, every coordinate `0̄`.
    pub fn basepoint() -> Self {
        CantorPoint::default()
    }

    pub fn from_coords(coords: impl IntoIterator<Item = (ColorId, Coordinate)>) -> Self {
        CantorPoint { coords: coords.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// The point `ψ(s)·0̄` in every color: a canonical point of `B(ψ)`.
    pub fn brick_base(psi: &BrickAddress) -> Self {
        CantorPoint::from_coords(
            psi.iter().map(|(s, b)| (s, Coordinate::new(b.to_vec(), vec![false]).expect("period"))),
        )
    }

    pub fn coordinate(&self, s: ColorId) -> Coordinate {
        self.coords.get(&s).cloned().unwrap_or_else(Coordinate::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (ColorId, &Coordinate)> {
        self.coords.iter().map(|(&s, c)| (s, c))
    }

    pub fn with_coordinate(&self, s: ColorId, c: Coordinate) -> Self {
        let mut out = self.clone();
        if c.is_zero() {
            out.coords.remove(&s);
        } else {
            out.coords.insert(s, c);
        }
        out
    }

    pub fn in_brick(&self, psi: &BrickAddress) -> bool {
        psi.iter().all(|(s, b)| self.coordinate(s).starts_with(b))
    }

    /// The canonical homeomorphism `B(ψ) → C^S` applied to the point.
    pub fn strip(&self, psi: &BrickAddress) -> Self {
        let mut out = self.clone();
        for (s, b) in psi.iter() {
            out = out.with_coordinate(s, self.coordinate(s).shift(b.len()));
        }
        out
    }

    /// The canonical homeomorphism `C^S → B(φ)`.
    pub fn prepend(&self, phi: &BrickAddress) -> Self {
        let mut out = self.clone();
        for (s, b) in phi.iter() {
            out = out.with_coordinate(s, self.coordinate(s).prepend(b));
        }
        out
    }

    /// `(g·κ)(s) = κ(g⁻¹.s)`, i.e. the coordinate at `s` moves to `g.s`.
    pub fn permute<O: LabelOracle + ?Sized>(&self, oracle: &O, g: &LabelElement) -> Result<Self> {
        let mut coords = BTreeMap::new();
        for (s, c) in &self.coords {
            coords.insert(oracle.act(g, *s)?, c.clone());
        }
        Ok(CantorPoint { coords })
    }
}

impl fmt::Display for CantorPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|(s, c)| format!("{s}: {c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    fn coord(pre: &str, period: &str) -> Coordinate {
        Coordinate::new(bits(pre), bits(period)).unwrap()
    }

    #[test]
    fn normalization() {
        assert_eq!(coord("", "0101"), coord("", "01"));
        assert_eq!(coord("1", "01"), coord("", "10"));
        assert_eq!(coord("0", "0"), Coordinate::zero());
        assert_eq!(coord("0010", "10"), coord("00", "10"));
        assert!(Coordinate::new(vec![], vec![]).is_err());
    }

    #[test]
    fn shift_and_prepend_are_inverse() {
        let c = coord("110", "011");
        for k in 0..8 {
            let prefix: Vec<bool> = (0..k).map(|i| c.bit(i)).collect();
            assert_eq!(c.shift(k).prepend(&prefix), c);
        }
    }

    #[test]
    fn brick_membership() {
        let p = CantorPoint::from_coords([(ColorId(0), coord("01", "0")), (ColorId(1), coord("0", "1"))]);
        assert!(p.in_brick(&BrickAddress::from_strs(&[(0, "01"), (1, "011")])));
        assert!(!p.in_brick(&BrickAddress::from_strs(&[(0, "1")])));
        assert!(CantorPoint::basepoint().in_brick(&BrickAddress::from_strs(&[(3, "000")])));
    }
}
