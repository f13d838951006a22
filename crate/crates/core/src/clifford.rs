//! Blade arithmetic for the Euclidean Clifford algebra.
//!
//! A blade `±e_{j1 j2 ... jk}` (1-indexed, ascending) corresponds to `±i_p`
//! where bit `j - 1` of `p` is set for each index `j`. Multiplication works
//! on the index lists directly, so it can be used to check the recursive
//! [`clifford_sign`](crate::twists::clifford_sign) table.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest 1-blade index representable in a `usize` basis index.
pub const MAX_BLADE_INDEX: u32 = usize::BITS;

pub fn grade(p: usize) -> u32 {
    p.count_ones()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Real,
    Imaginary,
}

/// Real blades satisfy `conj(i_p) = i_p`; imaginary ones flip sign. Grades
/// `1, 2 (mod 4)` are imaginary.
///
/// This is Clifford conjugation (reversion composed with grade involution).
/// It is not the twisted-algebra conjugate on a Clifford context, which
/// multiplies `i_p` by `clf(p, p)`, the sign of the square of `i_p`; the two
/// differ by `(-1)^grade`.
pub fn parity(p: usize) -> Parity {
    match grade(p) % 4 {
        1 | 2 => Parity::Imaginary,
        _ => Parity::Real,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BladeExpression {
    pub sign: i8,
    pub indices: Vec<u32>,
}

impl BladeExpression {
    pub fn new(sign: i8, indices: Vec<u32>) -> Result<Self> {
        let blade = BladeExpression { sign, indices };
        blade.validate()?;
        Ok(blade)
    }

    fn validate(&self) -> Result<()> {
        let bad = || Error::MalformedBlade(format!("{self:?}"));
        if self.sign != 1 && self.sign != -1 {
            return Err(bad());
        }
        if self.indices.iter().any(|&k| k == 0 || k > MAX_BLADE_INDEX) {
            return Err(bad());
        }
        if self.indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(bad());
        }
        Ok(())
    }

    pub fn unit() -> Self {
        BladeExpression {
            sign: 1,
            indices: Vec::new(),
        }
    }

    /// `i_to_e`: the positive blade whose index set is the set bits of `p`.
    pub fn from_index(p: usize) -> Self {
        BladeExpression {
            sign: 1,
            indices: (0..usize::BITS)
                .filter(|b| p >> b & 1 == 1)
                .map(|b| b + 1)
                .collect(),
        }
    }

    /// `e_to_i`: `(sign, p)` with `self = sign * i_p`.
    pub fn to_index(&self) -> (i8, usize) {
        let p = self
            .indices
            .iter()
            .fold(0usize, |acc, &k| acc | 1 << (k - 1));
        (self.sign, p)
    }

    pub fn grade(&self) -> usize {
        self.indices.len()
    }

    /// Product by factoring into 1-blades: each pair `(a_i, b_j)` with
    /// `a_i > b_j` costs one transposition, equal indices annihilate.
    pub fn multiply(&self, other: &BladeExpression) -> BladeExpression {
        let (a, b) = (&self.indices, &other.indices);
        let mut indices = Vec::with_capacity(a.len() + b.len());
        let mut swaps = 0usize;
        let mut i = 0;
        for &bj in b {
            while i < a.len() && a[i] < bj {
                indices.push(a[i]);
                i += 1;
            }
            // a[i..] are all >= bj; the strictly greater ones are passed
            let equal = i < a.len() && a[i] == bj;
            swaps += a.len() - i - equal as usize;
            if equal {
                i += 1;
            } else {
                indices.push(bj);
            }
        }
        indices.extend_from_slice(&a[i..]);
        let sign = self.sign * other.sign * if swaps.is_multiple_of(2) { 1 } else { -1 };
        BladeExpression { sign, indices }
    }

    pub fn conjugate(&self) -> BladeExpression {
        let flip = matches!(self.grade() % 4, 1 | 2);
        BladeExpression {
            sign: if flip { -self.sign } else { self.sign },
            indices: self.indices.clone(),
        }
    }

    pub fn parity(&self) -> Parity {
        parity(self.to_index().1)
    }

    pub fn neg(&self) -> BladeExpression {
        BladeExpression {
            sign: -self.sign,
            indices: self.indices.clone(),
        }
    }
}

impl fmt::Display for BladeExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            f.write_str("-")?;
        }
        if self.indices.is_empty() {
            return f.write_str("1");
        }
        if self.indices.iter().all(|&k| k <= 9) {
            f.write_str("e")?;
            for k in &self.indices {
                write!(f, "{k}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.indices.iter().map(|k| k.to_string()).collect();
            write!(f, "e[{}]", parts.join(","))
        }
    }
}

/// Grammar: optional sign, then `1` (unit), `e` followed by single digits
/// (`e134`), or `e[1,3,14]`. Indices must be strictly ascending.
impl FromStr for BladeExpression {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedBlade(s.to_string());
        let t = s.trim();
        let (sign, body) = match t.as_bytes().first() {
            Some(b'-') => (-1, &t[1..]),
            Some(b'+') => (1, &t[1..]),
            _ => (1, t),
        };
        if body == "1" {
            return BladeExpression::new(sign, Vec::new());
        }
        let rest = body.strip_prefix('e').ok_or_else(bad)?;
        let indices = if let Some(list) = rest.strip_prefix('[') {
            let list = list.strip_suffix(']').ok_or_else(bad)?;
            list.split(',')
                .map(|v| v.trim().parse::<u32>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?
        } else {
            if rest.is_empty() {
                return Err(bad());
            }
            rest.chars()
                .map(|c| c.to_digit(10).ok_or_else(bad))
                .collect::<Result<Vec<_>>>()?
        };
        BladeExpression::new(sign, indices).map_err(|_| bad())
    }
}
