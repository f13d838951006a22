//! The doubling construction on shuffled coefficient sequences.
//!
//! An element of `CD_{N+1}` is a pair `(x, y)` of elements of `CD_N`, stored
//! interleaved: `x_n` at index `2n` and `y_n` at index `2n + 1`. The pair
//! product below never consults a twist table, which makes it an
//! independent check of [`cayley_dickson_sign`].

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{AlgebraElement, Context};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::twists::{cayley_dickson_sign, TwistKind};

fn cd_exponent(ctx: &Arc<Context>) -> Result<u32> {
    match (ctx.table().kind(), ctx.group().exponent()) {
        (TwistKind::CayleyDickson, Some(n)) => Ok(n),
        _ => Err(Error::Unsupported {
            operation: "pair construction",
            requirement: "a Cayley-Dickson context",
        }),
    }
}

/// Interleaves two equal-length coefficient sequences.
pub fn shuffle_coeffs<S: Clone>(left: &[S], right: &[S]) -> Result<Vec<S>> {
    if left.len() != right.len() {
        return Err(Error::Dimension {
            expected: left.len(),
            actual: right.len(),
        });
    }
    Ok(left
        .iter()
        .zip(right)
        .flat_map(|(a, b)| [a.clone(), b.clone()])
        .collect())
}

/// Splits into even-indexed and odd-indexed halves.
pub fn unshuffle_coeffs<S: Clone>(z: &[S]) -> (Vec<S>, Vec<S>) {
    let left = z.iter().step_by(2).cloned().collect();
    let right = z.iter().skip(1).step_by(2).cloned().collect();
    (left, right)
}

fn pair_conjugate_coeffs<S: Scalar>(z: &[S]) -> Vec<S> {
    if z.len() == 1 {
        return z.to_vec();
    }
    let (a, b) = unshuffle_coeffs(z);
    let a = pair_conjugate_coeffs(&a);
    let b: Vec<S> = b.into_iter().map(|v| -v).collect();
    shuffle_coeffs(&a, &b).expect("halves have equal length")
}

fn add_coeffs<S: Scalar>(a: Vec<S>, b: Vec<S>) -> Vec<S> {
    a.into_iter().zip(b).map(|(u, v)| u + v).collect()
}

fn sub_coeffs<S: Scalar>(a: Vec<S>, b: Vec<S>) -> Vec<S> {
    a.into_iter().zip(b).map(|(u, v)| u - v).collect()
}

/// `(a, b)(c, d) = (ac - d conj(b), conj(a) d + cb)`, recursing down to
/// real multiplication.
fn pair_product_coeffs<S: Scalar>(u: &[S], v: &[S]) -> Vec<S> {
    if u.len() == 1 {
        return vec![u[0].clone() * v[0].clone()];
    }
    let (a, b) = unshuffle_coeffs(u);
    let (c, d) = unshuffle_coeffs(v);
    let left = sub_coeffs(
        pair_product_coeffs(&a, &c),
        pair_product_coeffs(&d, &pair_conjugate_coeffs(&b)),
    );
    let right = add_coeffs(
        pair_product_coeffs(&pair_conjugate_coeffs(&a), &d),
        pair_product_coeffs(&c, &b),
    );
    shuffle_coeffs(&left, &right).expect("halves have equal length")
}

/// A pair `(left, right)` of `CD_N` elements read as one `CD_{N+1}` element.
#[derive(Debug, Clone, PartialEq)]
pub struct ShuffledPair<S: Scalar> {
    pub left: AlgebraElement<S>,
    pub right: AlgebraElement<S>,
}

impl<S: Scalar> ShuffledPair<S> {
    pub fn join(&self) -> Result<AlgebraElement<S>> {
        shuffle(&self.left, &self.right)
    }

    pub fn split(z: &AlgebraElement<S>) -> Result<Self> {
        let (left, right) = unshuffle(z)?;
        Ok(ShuffledPair { left, right })
    }
}

/// Embeds `(x, y)` with `x, y` in `CD_N` as an element of `CD_{N+1}`.
pub fn shuffle<S: Scalar>(
    x: &AlgebraElement<S>,
    y: &AlgebraElement<S>,
) -> Result<AlgebraElement<S>> {
    let n = cd_exponent(x.context())?;
    if cd_exponent(y.context())? != n {
        return Err(Error::Dimension {
            expected: x.coeffs().len(),
            actual: y.coeffs().len(),
        });
    }
    let up = Context::cayley_dickson(n + 1)?;
    AlgebraElement::new(&up, shuffle_coeffs(x.coeffs(), y.coeffs())?)
}

pub fn unshuffle<S: Scalar>(
    z: &AlgebraElement<S>,
) -> Result<(AlgebraElement<S>, AlgebraElement<S>)> {
    let n = cd_exponent(z.context())?;
    if n == 0 {
        return Err(Error::Unsupported {
            operation: "unshuffle",
            requirement: "dimension at least 2",
        });
    }
    let down = Context::cayley_dickson(n - 1)?;
    let (a, b) = unshuffle_coeffs(z.coeffs());
    Ok((
        AlgebraElement::new(&down, a)?,
        AlgebraElement::new(&down, b)?,
    ))
}

/// Product by the recursive pair rule; independent of the twist table.
pub fn pair_product<S: Scalar>(
    x: &AlgebraElement<S>,
    y: &AlgebraElement<S>,
) -> Result<AlgebraElement<S>> {
    cd_exponent(x.context())?;
    if !x.context().same_as(y.context()) {
        return Err(Error::ContextMismatch);
    }
    AlgebraElement::new(x.context(), pair_product_coeffs(x.coeffs(), y.coeffs()))
}

/// `conj((x, y)) = (conj(x), -y)`.
pub fn pair_conjugate<S: Scalar>(x: &AlgebraElement<S>) -> Result<AlgebraElement<S>> {
    cd_exponent(x.context())?;
    AlgebraElement::new(x.context(), pair_conjugate_coeffs(x.coeffs()))
}

/// Triples `(p, q, pq)` of nonzero distinct elements with `i_p i_q = i_{pq}`,
/// one per cyclic class, rotated so the smallest element leads. Empty for
/// `exponent < 2`.
pub fn quaternion_triplets(exponent: u32) -> Vec<(usize, usize, usize)> {
    let n = 1usize << exponent;
    let mut out = Vec::new();
    for p in 1..n {
        for q in (p + 1)..n {
            let r = p ^ q;
            if r > p && cayley_dickson_sign(p, q) == 1 {
                out.push((p, q, r));
            }
        }
    }
    out
}

/// Factorization of `i_p` into Cayley-Dickson 1-blades `i_{2^b}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CdBladeFactors {
    pub index: usize,
    /// Set bit positions of `index`, ascending (0-based).
    pub bits: Vec<u32>,
    /// Sign of the left-nested product `i_{2^b1} (i_{2^b2} (... i_{2^bk}))`
    /// relative to `+i_p`.
    pub sign: i8,
}

impl CdBladeFactors {
    /// 1-indexed factor names, `e_k = i_{2^(k-1)}`.
    pub fn e_indices(&self) -> Vec<u32> {
        self.bits.iter().map(|b| b + 1).collect()
    }

    pub fn nested_expression(&self) -> String {
        if self.bits.is_empty() {
            return "1".into();
        }
        let names: Vec<String> = self.e_indices().iter().map(|k| format!("e{k}")).collect();
        let k = names.len();
        if k == 1 {
            return names[0].clone();
        }
        let mut expr = format!("{}{}", names[k - 2], names[k - 1]);
        for name in names[..k - 2].iter().rev() {
            expr = format!("{name}({expr})");
        }
        expr
    }
}

pub fn blade_factor_cd(p: usize) -> CdBladeFactors {
    let bits: Vec<u32> = (0..usize::BITS).filter(|b| p >> b & 1 == 1).collect();
    let mut acc = 0usize;
    let mut sign = 1i8;
    for &b in bits.iter().rev() {
        let unit = 1usize << b;
        sign *= cayley_dickson_sign(unit, acc);
        acc ^= unit;
    }
    debug_assert_eq!(acc, p);
    CdBladeFactors {
        index: p,
        bits,
        sign,
    }
}
