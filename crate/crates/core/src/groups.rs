//! Finite abelian groups with elements encoded as integer indices.
//!
//! Two families are supported: the XOR group `Z_2^N`, where an element is
//! the integer whose binary digits are its coordinates and the product is
//! bitwise exclusive or, and the cyclic group `Z_n` under addition mod `n`.
//! In both the identity is index 0.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest XOR exponent accepted by the descriptor parser.
pub const MAX_XOR_EXPONENT: u32 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    /// `Z_2^N` under bitwise XOR; holds the exponent `N`.
    Xor(u32),
    /// `Z_n` under addition mod `n`; holds `n >= 1`.
    Cyclic(usize),
}

impl GroupSpec {
    pub fn xor(exponent: u32) -> Result<Self> {
        if exponent > MAX_XOR_EXPONENT {
            return Err(Error::InvalidGroup(format!("xor:{exponent}")));
        }
        Ok(GroupSpec::Xor(exponent))
    }

    pub fn cyclic(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidGroup("cyclic:0".into()));
        }
        Ok(GroupSpec::Cyclic(order))
    }

    pub fn order(&self) -> usize {
        match *self {
            GroupSpec::Xor(n) => 1usize << n,
            GroupSpec::Cyclic(n) => n,
        }
    }

    pub fn is_xor(&self) -> bool {
        matches!(self, GroupSpec::Xor(_))
    }

    /// The XOR exponent `N`, if this is `Z_2^N`.
    pub fn exponent(&self) -> Option<u32> {
        match *self {
            GroupSpec::Xor(n) => Some(n),
            GroupSpec::Cyclic(_) => None,
        }
    }

    pub const fn identity(&self) -> usize {
        0
    }

    pub fn check(&self, p: usize) -> Result<usize> {
        if p < self.order() {
            Ok(p)
        } else {
            Err(Error::InvalidElement {
                index: p,
                order: self.order(),
            })
        }
    }

    pub fn product(&self, p: usize, q: usize) -> Result<usize> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.op(p, q))
    }

    pub fn inverse(&self, p: usize) -> Result<usize> {
        self.check(p)?;
        Ok(self.inv(p))
    }

    /// Unchecked product for inner loops; indices must already be valid.
    #[inline]
    pub(crate) fn op(&self, p: usize, q: usize) -> usize {
        debug_assert!(p < self.order() && q < self.order());
        match *self {
            GroupSpec::Xor(_) => p ^ q,
            GroupSpec::Cyclic(n) => {
                let s = p + q;
                if s >= n {
                    s - n
                } else {
                    s
                }
            }
        }
    }

    #[inline]
    pub(crate) fn inv(&self, p: usize) -> usize {
        debug_assert!(p < self.order());
        match *self {
            GroupSpec::Xor(_) => p,
            GroupSpec::Cyclic(n) => {
                if p == 0 {
                    0
                } else {
                    n - p
                }
            }
        }
    }

    /// Pairs `(p, q)` with `p != e`, `q != e` and `pq != e`, row-major.
    pub fn interior(&self) -> Vec<(usize, usize)> {
        let n = self.order();
        (1..n)
            .flat_map(|p| (1..n).map(move |q| (p, q)))
            .filter(|&(p, q)| self.op(p, q) != 0)
            .collect()
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Xor(n) => write!(f, "xor:{n}"),
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidGroup(s.to_string());
        let (kind, arg) = s.trim().split_once(':').ok_or_else(bad)?;
        match kind {
            "xor" => GroupSpec::xor(arg.parse().map_err(|_| bad())?),
            "cyclic" => GroupSpec::cyclic(arg.parse().map_err(|_| bad())?),
            _ => Err(bad()),
        }
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_groups() -> Vec<GroupSpec> {
        let mut gs: Vec<_> = (0..=6).map(GroupSpec::Xor).collect();
        gs.extend((1..=12).map(GroupSpec::Cyclic));
        gs
    }

    #[test]
    fn product_examples() {
        assert_eq!(GroupSpec::Xor(3).product(5, 3).unwrap(), 6);
        assert_eq!(GroupSpec::Cyclic(5).product(3, 4).unwrap(), 2);
        for g in small_groups() {
            for p in 0..g.order() {
                assert_eq!(g.product(0, p).unwrap(), p);
            }
        }
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(GroupSpec::Xor(4).inverse(13).unwrap(), 13);
        assert_eq!(GroupSpec::Cyclic(5).inverse(3).unwrap(), 2);
        assert_eq!(GroupSpec::Cyclic(5).inverse(0).unwrap(), 0);
        assert_eq!(GroupSpec::Xor(0).inverse(0).unwrap(), 0);
    }

    #[test]
    fn out_of_range_is_rejected() {
        let g = GroupSpec::Cyclic(5);
        assert_eq!(
            g.product(5, 0),
            Err(Error::InvalidElement { index: 5, order: 5 })
        );
        assert!(g.inverse(7).is_err());
        assert!(GroupSpec::Xor(2).product(1, 4).is_err());
    }

    #[test]
    fn group_axioms_exhaustive() {
        for g in small_groups() {
            let n = g.order();
            for p in 0..n {
                assert_eq!(g.op(p, g.inv(p)), 0, "{g} inverse of {p}");
                assert_eq!(g.op(g.inv(p), p), 0);
                assert_eq!(g.op(p, 0), p);
                for q in 0..n {
                    assert_eq!(g.op(p, q), g.op(q, p));
                    for r in 0..n {
                        assert_eq!(g.op(g.op(p, q), r), g.op(p, g.op(q, r)));
                    }
                }
            }
        }
    }

    #[test]
    fn xor_elements_are_self_inverse() {
        let g = GroupSpec::Xor(6);
        assert!((0..g.order()).all(|p| g.inv(p) == p));
    }

    #[test]
    fn interior_examples() {
        assert!(GroupSpec::Cyclic(2).interior().is_empty());
        assert_eq!(GroupSpec::Cyclic(3).interior(), vec![(1, 1), (2, 2)]);
        let expected: Vec<_> = (1..4)
            .flat_map(|p| (1..4).map(move |q| (p, q)))
            .filter(|(p, q)| p != q)
            .collect();
        assert_eq!(GroupSpec::Xor(2).interior(), expected);
    }

    #[test]
    fn interior_is_exactly_the_nondegenerate_pairs() {
        for g in small_groups() {
            let interior = g.interior();
            let n = g.order();
            let mut count = 0;
            for p in 0..n {
                for q in 0..n {
                    let inside = p != 0 && q != 0 && g.op(p, q) != 0;
                    assert_eq!(interior.contains(&(p, q)), inside, "{g} ({p},{q})");
                    count += inside as usize;
                }
            }
            assert_eq!(count, interior.len());
        }
    }

    #[test]
    fn descriptor_round_trip() {
        for s in ["xor:0", "xor:4", "cyclic:1", "cyclic:5"] {
            let g: GroupSpec = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
        }
        for bad in ["xor", "xor:x", "cyclic:0", "dihedral:4", "xor:31"] {
            assert!(bad.parse::<GroupSpec>().is_err(), "{bad}");
        }
    }
}
