//! Sign functions ("twists") on a finite group.
//!
//! A twist assigns `±1` to every ordered pair of group elements and deforms
//! the group-algebra product to `i_p i_q = t(p, q) i_{pq}`. Tables are
//! materialized in full at construction and are immutable afterwards.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::GroupSpec;

/// Largest group order for which a table is materialized (`2^13`).
pub const MAX_TABLE_ORDER: usize = 1 << 13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwistKind {
    Trivial,
    Hadamard,
    CayleyDickson,
    Clifford,
    Custom,
}

impl TwistKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            TwistKind::Trivial => "trivial",
            TwistKind::Hadamard => "hadamard",
            TwistKind::CayleyDickson => "cayley_dickson",
            TwistKind::Clifford => "clifford",
            TwistKind::Custom => "custom",
        }
    }
}

impl fmt::Display for TwistKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TwistKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "trivial" => TwistKind::Trivial,
            "hadamard" => TwistKind::Hadamard,
            "cayley_dickson" | "cd" => TwistKind::CayleyDickson,
            "clifford" => TwistKind::Clifford,
            "custom" => TwistKind::Custom,
            _ => return Err(Error::Parse(format!("unknown twist kind `{s}`"))),
        })
    }
}

/// `(-1)^popcount(p AND q)`.
#[inline]
pub fn hadamard_sign(p: usize, q: usize) -> i8 {
    if (p & q).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Cayley-Dickson sign on `Z^+` from the doubling recursion
/// `cyd(2p+r, 2q+s) = cyd(p, q) A_pq(r, s)` with `cyd(0, 0) = 1`.
pub fn cayley_dickson_sign(mut p: usize, mut q: usize) -> i8 {
    let mut sign = 1i8;
    while p != 0 || q != 0 {
        let (r, s) = (p & 1, q & 1);
        p >>= 1;
        q >>= 1;
        sign *= doubling_block(p, q)[r][s];
    }
    sign
}

/// The 2x2 block `A_pq`, indexed `[r][s]`.
#[inline]
fn doubling_block(p: usize, q: usize) -> [[i8; 2]; 2] {
    if p == 0 {
        [[1, 1], [1, -1]]
    } else if p == q || q == 0 {
        [[1, -1], [1, 1]]
    } else {
        [[1, -1], [-1, -1]]
    }
}

/// Clifford sign: `clf(2p+r, 2q) = clf(p, q)` and
/// `clf(2p+r, 2q+1) = (-1)^popcount(p) clf(p, q)`.
///
/// Bit 0 is the lowest 1-blade `e_1`; moving it from the right factor past
/// the higher blades of the left factor costs one sign per blade.
pub fn clifford_sign(mut p: usize, mut q: usize) -> i8 {
    let mut flips = 0u32;
    while p != 0 || q != 0 {
        let s = q & 1;
        p >>= 1;
        q >>= 1;
        if s == 1 {
            flips += p.count_ones();
        }
    }
    if flips.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Law {
    Commutative,
    Associative,
    Invertive,
    Proper1,
    Proper2,
    Unital,
    AdjointLeft,
    AdjointRight,
    ConjugateReversal,
    TwistGroupClosure,
    TwistGroupIdentity,
    TwistGroupSelfInverse,
    TwistGroupCommutative,
}

impl Law {
    pub fn as_str(&self) -> &'static str {
        match self {
            Law::Commutative => "commutative",
            Law::Associative => "associative",
            Law::Invertive => "invertive",
            Law::Proper1 => "proper1",
            Law::Proper2 => "proper2",
            Law::Unital => "unital",
            Law::AdjointLeft => "adjoint_left",
            Law::AdjointRight => "adjoint_right",
            Law::ConjugateReversal => "conjugate_reversal",
            Law::TwistGroupClosure => "twist_group_closure",
            Law::TwistGroupIdentity => "twist_group_identity",
            Law::TwistGroupSelfInverse => "twist_group_self_inverse",
            Law::TwistGroupCommutative => "twist_group_commutative",
        }
    }
}

/// Outcome of a law check. `witness` is set iff the law fails and holds the
/// first failing tuple in scan order. For twist laws these are group
/// elements; element-level identities report the first differing
/// coefficient index (or nothing for scalar identities).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub law: Law,
    pub holds: bool,
    pub witness: Option<Vec<usize>>,
}

impl PropertyReport {
    pub fn from_witness(law: Law, witness: Option<Vec<usize>>) -> Self {
        PropertyReport {
            law,
            holds: witness.is_none(),
            witness,
        }
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(f, "{}: holds", self.law.as_str()),
            Some(w) => {
                let items: Vec<String> = w.iter().map(|v| v.to_string()).collect();
                write!(f, "{}: fails at ({})", self.law.as_str(), items.join(","))
            }
        }
    }
}

/// Both conditions of properness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProperReport {
    pub first: PropertyReport,
    pub second: PropertyReport,
}

impl ProperReport {
    pub fn holds(&self) -> bool {
        self.first.holds && self.second.holds
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwistTable {
    group: GroupSpec,
    kind: TwistKind,
    signs: Vec<i8>,
}

impl TwistTable {
    /// Builds a table from row-major signs, rejecting anything that is not
    /// `±1` or not unital.
    pub fn from_signs(group: GroupSpec, kind: TwistKind, signs: Vec<i8>) -> Result<Self> {
        let n = checked_order(group)?;
        if signs.len() != n * n {
            return Err(Error::TableSize {
                expected: n * n,
                actual: signs.len(),
            });
        }
        if let Some(i) = signs.iter().position(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidSign {
                p: i / n,
                q: i % n,
                value: signs[i] as i64,
            });
        }
        if let Some(w) = unital_witness(n, &signs) {
            return Err(Error::NotUnital { p: w.0, q: w.1 });
        }
        Ok(TwistTable { group, kind, signs })
    }

    pub fn from_rows(group: GroupSpec, kind: TwistKind, rows: &[Vec<i64>]) -> Result<Self> {
        let mut signs = Vec::with_capacity(rows.len() * rows.len());
        for (p, row) in rows.iter().enumerate() {
            for (q, &v) in row.iter().enumerate() {
                match v {
                    1 => signs.push(1),
                    -1 => signs.push(-1),
                    _ => return Err(Error::InvalidSign { p, q, value: v }),
                }
            }
            if row.len() != rows.len() {
                return Err(Error::TableSize {
                    expected: rows.len(),
                    actual: row.len(),
                });
            }
        }
        Self::from_signs(group, kind, signs)
    }

    fn generate(
        group: GroupSpec,
        kind: TwistKind,
        f: impl Fn(usize, usize) -> i8 + Sync,
    ) -> Result<Self> {
        let n = checked_order(group)?;
        let mut signs = vec![0i8; n * n];
        signs.par_chunks_mut(n).enumerate().for_each(|(p, row)| {
            for (q, s) in row.iter_mut().enumerate() {
                *s = f(p, q);
            }
        });
        Self::from_signs(group, kind, signs)
    }

    pub fn trivial(group: GroupSpec) -> Result<Self> {
        let n = checked_order(group)?;
        Ok(TwistTable {
            group,
            kind: TwistKind::Trivial,
            signs: vec![1; n * n],
        })
    }

    pub fn hadamard(exponent: u32) -> Result<Self> {
        Self::generate(
            GroupSpec::xor(exponent)?,
            TwistKind::Hadamard,
            hadamard_sign,
        )
    }

    pub fn cayley_dickson(exponent: u32) -> Result<Self> {
        Self::generate(
            GroupSpec::xor(exponent)?,
            TwistKind::CayleyDickson,
            cayley_dickson_sign,
        )
    }

    pub fn clifford(exponent: u32) -> Result<Self> {
        Self::generate(
            GroupSpec::xor(exponent)?,
            TwistKind::Clifford,
            clifford_sign,
        )
    }

    /// Builds a named twist; `trivial` accepts any group, the others require
    /// an XOR group.
    pub fn named(kind: TwistKind, group: GroupSpec) -> Result<Self> {
        let exponent = || {
            group.exponent().ok_or(Error::Unsupported {
                operation: "this twist",
                requirement: "an xor group",
            })
        };
        match kind {
            TwistKind::Trivial => Self::trivial(group),
            TwistKind::Hadamard => Self::hadamard(exponent()?),
            TwistKind::CayleyDickson => Self::cayley_dickson(exponent()?),
            TwistKind::Clifford => Self::clifford(exponent()?),
            TwistKind::Custom => Err(Error::Unsupported {
                operation: "custom twists",
                requirement: "an explicit sign table",
            }),
        }
    }

    pub fn group(&self) -> GroupSpec {
        self.group
    }

    pub fn kind(&self) -> TwistKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    #[inline]
    pub fn sign(&self, p: usize, q: usize) -> i8 {
        self.signs[p * self.order() + q]
    }

    pub fn get(&self, p: usize, q: usize) -> Result<i8> {
        self.group.check(p)?;
        self.group.check(q)?;
        Ok(self.sign(p, q))
    }

    pub fn row(&self, p: usize) -> &[i8] {
        let n = self.order();
        &self.signs[p * n..(p + 1) * n]
    }

    /// Copy of this table with entry `(p, q)` negated, labelled custom.
    pub fn with_flipped(&self, p: usize, q: usize) -> Result<Self> {
        let mut signs = self.signs.clone();
        let n = self.order();
        signs[self.group.check(p)? * n + self.group.check(q)?] *= -1;
        Self::from_signs(self.group, TwistKind::Custom, signs)
    }

    /// Pointwise product of two twists on the same group.
    pub fn product(&self, other: &TwistTable) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::GroupMismatch {
                left: self.group.to_string(),
                right: other.group.to_string(),
            });
        }
        let signs = self
            .signs
            .iter()
            .zip(&other.signs)
            .map(|(a, b)| a * b)
            .collect();
        let kind = if other.kind == TwistKind::Trivial {
            self.kind
        } else if self.kind == TwistKind::Trivial {
            other.kind
        } else {
            TwistKind::Custom
        };
        Ok(TwistTable {
            group: self.group,
            kind,
            signs,
        })
    }

    pub fn is_all_ones(&self) -> bool {
        self.signs.iter().all(|&s| s == 1)
    }

    pub fn check_unital(&self) -> PropertyReport {
        let w = unital_witness(self.order(), &self.signs).map(|(p, q)| vec![p, q]);
        PropertyReport::from_witness(Law::Unital, w)
    }

    pub fn check_commutative(&self) -> PropertyReport {
        self.scan_pairs(Law::Commutative)
    }

    pub fn check_invertive(&self) -> PropertyReport {
        let w = (0..self.order())
            .find(|&p| !self.holds_at(Law::Invertive, &[p]))
            .map(|p| vec![p]);
        PropertyReport::from_witness(Law::Invertive, w)
    }

    /// Exhaustive cocycle check over all triples. Rows are split across
    /// workers; the reported witness is the first in `(p, q, r)` order.
    pub fn check_associative(&self) -> PropertyReport {
        let n = self.order();
        let w = (0..n).into_par_iter().find_map_first(|p| {
            (0..n).find_map(|q| {
                (0..n)
                    .find(|&r| !self.holds_at(Law::Associative, &[p, q, r]))
                    .map(|r| vec![p, q, r])
            })
        });
        PropertyReport::from_witness(Law::Associative, w)
    }

    pub fn check_proper(&self) -> ProperReport {
        ProperReport {
            first: self.scan_pairs(Law::Proper1),
            second: self.scan_pairs(Law::Proper2),
        }
    }

    pub fn is_proper(&self) -> bool {
        self.check_proper().holds()
    }

    fn scan_pairs(&self, law: Law) -> PropertyReport {
        let n = self.order();
        let w = (0..n)
            .flat_map(|p| (0..n).map(move |q| (p, q)))
            .find(|&(p, q)| !self.holds_at(law, &[p, q]))
            .map(|(p, q)| vec![p, q]);
        PropertyReport::from_witness(law, w)
    }

    /// Evaluates a twist law at one tuple. Panics if the tuple has the wrong
    /// arity for the law or indices are out of range.
    pub fn holds_at(&self, law: Law, at: &[usize]) -> bool {
        let g = &self.group;
        let s = |p, q| self.sign(p, q);
        match (law, at) {
            (Law::Commutative, &[p, q]) => s(p, q) == s(q, p),
            (Law::Associative, &[p, q, r]) => {
                s(p, q) * s(g.op(p, q), r) == s(p, g.op(q, r)) * s(q, r)
            }
            (Law::Invertive, &[p]) => s(p, g.inv(p)) == s(g.inv(p), p),
            (Law::Proper1, &[p, q]) => {
                let qi = g.inv(q);
                s(p, q) * s(q, qi) == s(g.op(p, q), qi)
            }
            (Law::Proper2, &[p, q]) => {
                let pi = g.inv(p);
                s(pi, p) * s(p, q) == s(pi, g.op(p, q))
            }
            (Law::Unital, &[p, q]) => (p != 0 && q != 0) || s(p, q) == 1,
            _ => panic!("law {law:?} cannot be evaluated at {at:?}"),
        }
    }

    /// Row-major CSV of `±1`, no header, one row per line.
    pub fn to_csv(&self) -> String {
        let n = self.order();
        let mut out = String::with_capacity(n * n * 3);
        for p in 0..n {
            let row: Vec<&str> = self
                .row(p)
                .iter()
                .map(|&s| if s == 1 { "1" } else { "-1" })
                .collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(group: GroupSpec, kind: TwistKind, text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|line| {
                line.split(',')
                    .map(|v| {
                        v.trim()
                            .parse::<i64>()
                            .map_err(|e| Error::Parse(format!("`{v}`: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if rows.len() != group.order() {
            return Err(Error::TableSize {
                expected: group.order(),
                actual: rows.len(),
            });
        }
        Self::from_rows(group, kind, &rows)
    }

    /// Reads a table whose group is implied by its size: `Z_2^N` when the
    /// row count is a power of two, otherwise cyclic.
    pub fn from_csv_inferred(text: &str) -> Result<Self> {
        let n = text.lines().filter(|l| !l.trim().is_empty()).count();
        let group = if n.is_power_of_two() {
            GroupSpec::xor(n.trailing_zeros())?
        } else {
            GroupSpec::cyclic(n)?
        };
        Self::from_csv(group, TwistKind::Custom, text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&TableJson::from(self)).expect("table serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: TableJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        raw.try_into()
    }
}

fn checked_order(group: GroupSpec) -> Result<usize> {
    let n = group.order();
    if n > MAX_TABLE_ORDER {
        return Err(Error::GroupTooLarge {
            order: n,
            limit: MAX_TABLE_ORDER,
        });
    }
    Ok(n)
}

fn unital_witness(n: usize, signs: &[i8]) -> Option<(usize, usize)> {
    (0..n)
        .map(|q| (0, q))
        .chain((1..n).map(|p| (p, 0)))
        .find(|&(p, q)| signs[p * n + q] != 1)
}

/// JSON form `{group, name, signs: [[...]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableJson {
    pub group: GroupSpec,
    pub name: TwistKind,
    pub signs: Vec<Vec<i64>>,
}

impl From<&TwistTable> for TableJson {
    fn from(t: &TwistTable) -> Self {
        TableJson {
            group: t.group,
            name: t.kind,
            signs: (0..t.order())
                .map(|p| t.row(p).iter().map(|&s| s as i64).collect())
                .collect(),
        }
    }
}

impl TryFrom<TableJson> for TwistTable {
    type Error = Error;

    fn try_from(raw: TableJson) -> Result<Self> {
        if raw.signs.len() != raw.group.order() {
            return Err(Error::TableSize {
                expected: raw.group.order(),
                actual: raw.signs.len(),
            });
        }
        TwistTable::from_rows(raw.group, raw.name, &raw.signs)
    }
}

impl Serialize for TwistTable {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        TableJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TwistTable {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let raw = TableJson::deserialize(deserializer)?;
        raw.try_into().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOLDEN_CD4: &str = include_str!("../testdata/cayley_dickson_4.csv");

    /// The piecewise form of the doubling rules, written independently of
    /// the `A_pq` blocks.
    fn cyd_piecewise(a: usize, b: usize) -> i8 {
        if a == 0 || b == 0 {
            return 1;
        }
        let (p, q) = (a >> 1, b >> 1);
        match (a & 1, b & 1) {
            (0, 0) => cyd_piecewise(p, q),
            (1, 0) => cyd_piecewise(q, p),
            (0, 1) => {
                if p != 0 {
                    -cyd_piecewise(p, q)
                } else {
                    1
                }
            }
            _ => {
                if p != 0 {
                    cyd_piecewise(q, p)
                } else {
                    -1
                }
            }
        }
    }

    #[test]
    fn trivial_examples() {
        let t = TwistTable::trivial(GroupSpec::Cyclic(3)).unwrap();
        assert_eq!(t.signs(), &[1; 9]);
        let t0 = TwistTable::trivial(GroupSpec::Xor(0)).unwrap();
        assert_eq!(t0.signs(), &[1]);
        assert!(t.is_proper());
        assert!(t0.is_proper());
    }

    #[test]
    fn hadamard_examples() {
        assert_eq!(TwistTable::hadamard(1).unwrap().sign(1, 1), -1);
        assert_eq!(TwistTable::hadamard(2).unwrap().sign(3, 3), 1);
        let h = TwistTable::hadamard(4).unwrap();
        assert!((0..16).all(|p| h.sign(p, 0) == 1));
    }

    #[test]
    fn cayley_dickson_examples() {
        let t = TwistTable::cayley_dickson(4).unwrap();
        assert_eq!(t.sign(1, 2), 1);
        assert_eq!(t.sign(2, 1), -1);
        assert!((0..16).all(|p| t.sign(p, 0) == 1 && t.sign(0, p) == 1));
    }

    #[test]
    fn cayley_dickson_matches_golden_table() {
        let golden =
            TwistTable::from_csv(GroupSpec::Xor(4), TwistKind::CayleyDickson, GOLDEN_CD4).unwrap();
        let built = TwistTable::cayley_dickson(4).unwrap();
        assert_eq!(built, golden);
        assert_eq!(built.to_csv(), GOLDEN_CD4);
    }

    #[test]
    fn doubling_blocks_agree_with_piecewise_rules() {
        for p in 0..256 {
            for q in 0..256 {
                assert_eq!(cayley_dickson_sign(p, q), cyd_piecewise(p, q), "({p},{q})");
            }
        }
    }

    #[test]
    fn cayley_dickson_nests() {
        let small = TwistTable::cayley_dickson(3).unwrap();
        let big = TwistTable::cayley_dickson(5).unwrap();
        for p in 0..8 {
            for q in 0..8 {
                assert_eq!(small.sign(p, q), big.sign(p, q));
            }
        }
    }

    #[test]
    fn clifford_examples() {
        assert_eq!(clifford_sign(13, 6), -1);
        assert_eq!(clifford_sign(1, 1), 1);
        assert_eq!(clifford_sign(3, 3), -1);
        // e_2 e_1 = -e_12
        assert_eq!(clifford_sign(2, 1), -1);
        assert_eq!(clifford_sign(1, 2), 1);
    }

    #[test]
    fn clifford_diagonal_follows_grade() {
        // squares of g-blades: reversing g factors takes g(g-1)/2 swaps
        for p in 0..32usize {
            let g = p.count_ones();
            let expected = if (g * g.saturating_sub(1) / 2) % 2 == 0 {
                1
            } else {
                -1
            };
            assert_eq!(clifford_sign(p, p), expected, "p={p}");
        }
    }

    #[test]
    fn twist_product_examples() {
        let g = GroupSpec::Xor(2);
        let cd = TwistTable::cayley_dickson(2).unwrap();
        let triv = TwistTable::trivial(g).unwrap();
        assert_eq!(cd.product(&triv).unwrap(), cd);
        assert!(cd.product(&cd).unwrap().is_all_ones());
        let h = TwistTable::hadamard(2).unwrap();
        assert!(h.product(&h).unwrap().is_all_ones());
        let other = TwistTable::trivial(GroupSpec::Cyclic(4)).unwrap();
        assert!(matches!(
            cd.product(&other),
            Err(Error::GroupMismatch { .. })
        ));
    }

    #[test]
    fn commutativity_examples() {
        assert!(
            TwistTable::trivial(GroupSpec::Cyclic(7))
                .unwrap()
                .check_commutative()
                .holds
        );
        assert!(TwistTable::hadamard(3).unwrap().check_commutative().holds);
        let r = TwistTable::cayley_dickson(2).unwrap().check_commutative();
        assert_eq!(r.witness, Some(vec![1, 2]));
    }

    #[test]
    fn associativity_examples() {
        assert!(TwistTable::hadamard(3).unwrap().check_associative().holds);
        assert!(TwistTable::clifford(4).unwrap().check_associative().holds);
        let t = TwistTable::cayley_dickson(3).unwrap();
        let r = t.check_associative();
        let w = r.witness.clone().expect("octonions are not associative");
        assert!(!t.holds_at(Law::Associative, &w));
        assert!(w.iter().all(|&e| e != 0));
    }

    #[test]
    fn octonion_triplet_breaks_associativity() {
        let t = TwistTable::cayley_dickson(3).unwrap();
        assert!(!t.holds_at(Law::Associative, &[1, 2, 4]));
    }

    #[test]
    fn invertive_examples() {
        for n in 0..5 {
            assert!(
                TwistTable::cayley_dickson(n)
                    .unwrap()
                    .check_invertive()
                    .holds
            );
        }
        assert!(
            TwistTable::trivial(GroupSpec::Cyclic(5))
                .unwrap()
                .check_invertive()
                .holds
        );
        let mut signs = vec![1i8; 9];
        signs[3 + 2] = -1; // (1, 2) only
        let t = TwistTable::from_signs(GroupSpec::Cyclic(3), TwistKind::Custom, signs).unwrap();
        assert_eq!(t.check_invertive().witness, Some(vec![1]));
    }

    #[test]
    fn proper_examples() {
        for n in 0..=5 {
            assert!(TwistTable::cayley_dickson(n).unwrap().is_proper(), "cd {n}");
            assert!(TwistTable::clifford(n).unwrap().is_proper(), "clf {n}");
        }
        let flipped = TwistTable::cayley_dickson(2)
            .unwrap()
            .with_flipped(1, 2)
            .unwrap();
        let r = flipped.check_proper();
        assert!(!r.holds());
        // frozen from the scan
        assert_eq!(r.first.witness, Some(vec![1, 2]));
        assert_eq!(r.second.witness, Some(vec![1, 2]));
        assert!(!flipped.holds_at(Law::Proper1, &[1, 2]));
    }

    #[test]
    fn construction_rejects_bad_tables() {
        let g = GroupSpec::Xor(1);
        assert!(matches!(
            TwistTable::from_signs(g, TwistKind::Custom, vec![1, -1, 1, 1]),
            Err(Error::NotUnital { p: 0, q: 1 })
        ));
        assert!(matches!(
            TwistTable::from_signs(g, TwistKind::Custom, vec![1, 1, 1, 0]),
            Err(Error::InvalidSign {
                p: 1,
                q: 1,
                value: 0
            })
        ));
        assert!(matches!(
            TwistTable::from_signs(g, TwistKind::Custom, vec![1, 1, 1]),
            Err(Error::TableSize { .. })
        ));
        assert!(matches!(
            TwistTable::cayley_dickson(14),
            Err(Error::GroupTooLarge { .. })
        ));
    }

    #[test]
    fn json_and_csv_round_trip() {
        let t = TwistTable::clifford(3).unwrap();
        assert_eq!(TwistTable::from_json(&t.to_json()).unwrap(), t);
        let back = TwistTable::from_csv(t.group(), TwistKind::Clifford, &t.to_csv()).unwrap();
        assert_eq!(back, t);
        let inferred = TwistTable::from_csv_inferred(&t.to_csv()).unwrap();
        assert_eq!(inferred.signs(), t.signs());
        assert_eq!(inferred.group(), GroupSpec::Xor(3));
    }
}
