//! Elements of a twisted group algebra and the products defined on them.
//!
//! Three independent routes compute the product `xy`: the direct double sum
//! over the twist table, the left-multiplication ("standard") matrix of `x`
//! applied to `y`, and the Fourier expansion through inner products with
//! conjugates. The last one is only valid for proper twists.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_rational::BigRational;
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::groups::GroupSpec;
use crate::scalar::{abs_f64, format_rational, Scalar, ScalarMode};
use crate::twists::{Law, PropertyReport, TableJson, TwistKind, TwistTable};

/// A twist table plus lazily computed law flags shared by all elements.
#[derive(Debug)]
pub struct Context {
    table: TwistTable,
    invertive: OnceLock<bool>,
    proper: OnceLock<bool>,
}

impl Context {
    pub fn new(table: TwistTable) -> Arc<Self> {
        Arc::new(Context {
            table,
            invertive: OnceLock::new(),
            proper: OnceLock::new(),
        })
    }

    pub fn cayley_dickson(exponent: u32) -> Result<Arc<Self>> {
        TwistTable::cayley_dickson(exponent).map(Self::new)
    }

    pub fn clifford(exponent: u32) -> Result<Arc<Self>> {
        TwistTable::clifford(exponent).map(Self::new)
    }

    pub fn hadamard(exponent: u32) -> Result<Arc<Self>> {
        TwistTable::hadamard(exponent).map(Self::new)
    }

    pub fn table(&self) -> &TwistTable {
        &self.table
    }

    pub fn group(&self) -> GroupSpec {
        self.table.group()
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn is_invertive(&self) -> bool {
        *self
            .invertive
            .get_or_init(|| self.table.check_invertive().holds)
    }

    pub fn is_proper(&self) -> bool {
        *self.proper.get_or_init(|| self.table.is_proper())
    }

    fn require_invertive(&self, operation: &'static str) -> Result<()> {
        if self.is_invertive() {
            Ok(())
        } else {
            Err(Error::Unsupported {
                operation,
                requirement: "an invertive twist",
            })
        }
    }

    fn require_proper(&self, operation: &'static str) -> Result<()> {
        if self.is_proper() {
            Ok(())
        } else {
            Err(Error::Unsupported {
                operation,
                requirement: "a proper twist",
            })
        }
    }

    pub fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || self.table == other.table
    }
}

#[derive(Clone)]
pub struct AlgebraElement<S: Scalar> {
    ctx: Arc<Context>,
    coeffs: Vec<S>,
}

pub type ExactElement = AlgebraElement<BigRational>;
pub type FloatElement = AlgebraElement<f64>;

impl<S: Scalar> fmt::Debug for AlgebraElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraElement")
            .field("group", &self.ctx.group())
            .field("twist", &self.ctx.table.kind())
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

impl<S: Scalar> PartialEq for AlgebraElement<S> {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_as(&other.ctx) && self.coeffs == other.coeffs
    }
}

impl<S: Scalar> AlgebraElement<S> {
    pub fn new(ctx: &Arc<Context>, coeffs: Vec<S>) -> Result<Self> {
        if coeffs.len() != ctx.order() {
            return Err(Error::Dimension {
                expected: ctx.order(),
                actual: coeffs.len(),
            });
        }
        Ok(AlgebraElement {
            ctx: Arc::clone(ctx),
            coeffs,
        })
    }

    pub fn from_i64s(ctx: &Arc<Context>, values: &[i64]) -> Result<Self> {
        Self::new(ctx, values.iter().map(|&v| S::from_i64(v)).collect())
    }

    pub fn zero(ctx: &Arc<Context>) -> Self {
        AlgebraElement {
            ctx: Arc::clone(ctx),
            coeffs: vec![S::zero(); ctx.order()],
        }
    }

    pub fn one(ctx: &Arc<Context>) -> Self {
        Self::basis(ctx, 0).expect("identity is always in range")
    }

    /// Unit basis vector `i_p`.
    pub fn basis(ctx: &Arc<Context>, p: usize) -> Result<Self> {
        ctx.group().check(p)?;
        let mut x = Self::zero(ctx);
        x.coeffs[p] = S::one();
        Ok(x)
    }

    /// `c * i_0`.
    pub fn scalar(ctx: &Arc<Context>, c: S) -> Self {
        let mut x = Self::zero(ctx);
        x.coeffs[0] = c;
        x
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn coeff(&self, p: usize) -> &S {
        &self.coeffs[p]
    }

    pub fn mode(&self) -> ScalarMode {
        S::MODE
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn same_context(&self, other: &Self) -> Result<()> {
        if self.ctx.same_as(&other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn with_coeffs(&self, coeffs: Vec<S>) -> Self {
        AlgebraElement {
            ctx: Arc::clone(&self.ctx),
            coeffs,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_context(other)?;
        Ok(self.with_coeffs(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_context(other)?;
        Ok(self.with_coeffs(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        ))
    }

    pub fn neg(&self) -> Self {
        self.with_coeffs(self.coeffs.iter().map(|a| -a.clone()).collect())
    }

    pub fn scale(&self, c: &S) -> Self {
        self.with_coeffs(self.coeffs.iter().map(|a| c.clone() * a.clone()).collect())
    }

    pub fn halve(&self) -> Self {
        self.with_coeffs(self.coeffs.iter().map(Scalar::half).collect())
    }

    /// `xy = sum_{p,q} t(p,q) x_p y_q i_{pq}`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.same_context(other)?;
        Ok(self.with_coeffs(self.product_where(other, |_, _| true)))
    }

    /// Double sum restricted to pairs accepted by `keep`. Zero rows of `self`
    /// are skipped, so products with sparse left factors are cheap.
    fn product_where(&self, other: &Self, keep: impl Fn(usize, usize) -> bool) -> Vec<S> {
        let table = &self.ctx.table;
        let g = table.group();
        let n = self.coeffs.len();
        let mut out = vec![S::zero(); n];
        for (p, xp) in self.coeffs.iter().enumerate() {
            if xp.is_zero() {
                continue;
            }
            let row = table.row(p);
            for (q, yq) in other.coeffs.iter().enumerate() {
                if yq.is_zero() || !keep(p, q) {
                    continue;
                }
                let r = g.op(p, q);
                let term = (xp.clone() * yq.clone()).signed(row[q]);
                out[r] = std::mem::replace(&mut out[r], S::zero()) + term;
            }
        }
        out
    }

    pub fn standard_matrix(&self) -> StandardMatrix<S> {
        let table = &self.ctx.table;
        let g = table.group();
        let n = self.coeffs.len();
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for s in 0..n {
                let p = g.op(r, g.inv(s));
                entries.push(self.coeffs[p].clone().signed(table.sign(p, s)));
            }
        }
        StandardMatrix {
            ctx: Arc::clone(&self.ctx),
            entries,
        }
    }

    pub fn multiply_via_matrix(&self, other: &Self) -> Result<Self> {
        self.standard_matrix().apply(other)
    }

    /// `conj(x) = sum_p t(p^-1, p) x_{p^-1} i_p`; needs an invertive twist.
    pub fn conjugate(&self) -> Result<Self> {
        self.ctx.require_invertive("conjugate")?;
        let table = &self.ctx.table;
        let g = table.group();
        Ok(self.with_coeffs(
            (0..self.coeffs.len())
                .map(|p| {
                    let pi = g.inv(p);
                    self.coeffs[pi].clone().signed(table.sign(pi, p))
                })
                .collect(),
        ))
    }

    pub fn inner_product(&self, other: &Self) -> Result<S> {
        self.same_context(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
    }

    /// Product through the Fourier expansion; requires a proper twist.
    ///
    /// `Left` computes `sum_r <x, i_r conj(y)> i_r`, `Right` computes
    /// `sum_r <y, conj(x) i_r> i_r`.
    pub fn multiply_via_fourier(&self, other: &Self, form: FourierForm) -> Result<Self> {
        self.same_context(other)?;
        self.ctx.require_proper("Fourier product")?;
        let n = self.coeffs.len();
        let mut coeffs = Vec::with_capacity(n);
        match form {
            FourierForm::Left => {
                let y_bar = other.conjugate()?;
                for r in 0..n {
                    let probe = Self::basis(&self.ctx, r)?.multiply(&y_bar)?;
                    coeffs.push(self.inner_product(&probe)?);
                }
            }
            FourierForm::Right => {
                let x_bar = self.conjugate()?;
                for r in 0..n {
                    let probe = x_bar.multiply(&Self::basis(&self.ctx, r)?)?;
                    coeffs.push(other.inner_product(&probe)?);
                }
            }
        }
        Ok(self.with_coeffs(coeffs))
    }

    /// Sum over pairs with `t(p,q) = t(q,p)`.
    pub fn symmetric_product(&self, other: &Self) -> Result<Self> {
        self.same_context(other)?;
        let t = &self.ctx.table;
        Ok(self.with_coeffs(self.product_where(other, |p, q| t.sign(p, q) == t.sign(q, p))))
    }

    /// Sum over pairs with `t(p,q) != t(q,p)`.
    pub fn antisymmetric_product(&self, other: &Self) -> Result<Self> {
        self.same_context(other)?;
        let t = &self.ctx.table;
        Ok(self.with_coeffs(self.product_where(other, |p, q| t.sign(p, q) != t.sign(q, p))))
    }

    /// Splits `x ∨ y` into boundary terms and an interior sum, and `x ∧ y`
    /// into its interior sum. Requires an invertive twist.
    pub fn sas_decomposition(&self, other: &Self) -> Result<SasDecomposition<S>> {
        self.same_context(other)?;
        self.ctx
            .require_invertive("symmetric/antisymmetric decomposition")?;
        let t = &self.ctx.table;
        let g = t.group();
        let (x, y) = (&self.coeffs, &other.coeffs);
        let n = x.len();

        let xe_ye = x[0].clone() * y[0].clone();
        let inverse_pairs = (0..n).fold(S::zero(), |acc, p| {
            acc + (x[p].clone() * y[g.inv(p)].clone()).signed(t.sign(p, g.inv(p)))
        });
        let scalar = inverse_pairs - xe_ye.clone() - xe_ye;

        let mut sym = vec![S::zero(); n];
        let mut anti = vec![S::zero(); n];
        for (p, q) in g.interior() {
            let s = t.sign(p, q);
            let r = g.op(p, q);
            let (a, b) = (x[p].clone() * y[q].clone(), x[q].clone() * y[p].clone());
            if s == t.sign(q, p) {
                sym[r] = std::mem::replace(&mut sym[r], S::zero()) + (a + b).half().signed(s);
            } else {
                anti[r] = std::mem::replace(&mut anti[r], S::zero()) + (a - b).half().signed(s);
            }
        }

        Ok(SasDecomposition {
            scalar_part: Self::scalar(&self.ctx, scalar),
            left_term: other.scale(&x[0]),
            right_term: self.scale(&y[0]),
            interior_sym: self.with_coeffs(sym),
            interior_antisym: self.with_coeffs(anti),
        })
    }

    /// Checks `<xy, z> = <y, conj(x) z>` and `<x, yz> = <x conj(z), y>`.
    pub fn adjoint_check(&self, y: &Self, z: &Self) -> Result<(PropertyReport, PropertyReport)> {
        self.ctx.require_proper("adjoint check")?;
        let x = self;
        let left_lhs = x.multiply(y)?.inner_product(z)?;
        let left_rhs = y.inner_product(&x.conjugate()?.multiply(z)?)?;
        let right_lhs = x.inner_product(&y.multiply(z)?)?;
        let right_rhs = x.multiply(&z.conjugate()?)?.inner_product(y)?;
        let scale = x.max_abs() * y.max_abs() * z.max_abs() * x.coeffs.len() as f64;
        let report = |law, a: S, b: S| {
            PropertyReport::from_witness(law, (!a.close(&b, scale)).then(Vec::new))
        };
        Ok((
            report(Law::AdjointLeft, left_lhs, left_rhs),
            report(Law::AdjointRight, right_lhs, right_rhs),
        ))
    }

    /// Checks `conj(xy) = conj(y) conj(x)`.
    pub fn conjugate_reversal_check(&self, y: &Self) -> Result<PropertyReport> {
        self.ctx.require_proper("conjugate reversal check")?;
        let lhs = self.multiply(y)?.conjugate()?;
        let rhs = y.conjugate()?.multiply(&self.conjugate()?)?;
        Ok(PropertyReport::from_witness(
            Law::ConjugateReversal,
            lhs.first_difference(&rhs).map(|i| vec![i]),
        ))
    }

    /// `(1 - t(p,p)) <x, i_p x>`, which vanishes for proper twists on groups
    /// where every element is its own inverse.
    pub fn zero_theorem_value(&self, p: usize) -> Result<S> {
        if !self.ctx.group().is_xor() {
            return Err(Error::Unsupported {
                operation: "zero theorem check",
                requirement: "an xor group",
            });
        }
        self.ctx.require_proper("zero theorem check")?;
        let ip_x = Self::basis(&self.ctx, p)?.multiply(self)?;
        let ip = self.inner_product(&ip_x)?;
        Ok(if self.ctx.table.sign(p, p) == 1 {
            S::zero()
        } else {
            ip.clone() + ip
        })
    }

    /// `t(p, p^-1) i_{p^-1}`, the right inverse of `i_p`.
    pub fn basis_inverse(ctx: &Arc<Context>, p: usize) -> Result<Self> {
        let g = ctx.group();
        g.check(p)?;
        let pi = g.inv(p);
        let mut x = Self::zero(ctx);
        x.coeffs[pi] = S::one().signed(ctx.table.sign(p, pi));
        Ok(x)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(abs_f64).fold(0.0, f64::max)
    }

    /// Coefficient-wise comparison; exact for rationals, relative to the
    /// larger magnitude for floats.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.ctx.same_as(&other.ctx) && self.first_difference(other).is_none()
    }

    fn first_difference(&self, other: &Self) -> Option<usize> {
        let scale = self.max_abs().max(other.max_abs());
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| !a.close(b, scale))
    }

    pub fn to_json_value(&self) -> Value {
        serde_json::to_value(ElementJson {
            context: ContextJson::from(self.ctx.table()),
            mode: S::MODE,
            coeffs: self.coeffs.iter().map(Scalar::to_json).collect(),
        })
        .expect("element serializes")
    }

    /// Parses the JSON element form. The mode field must match `S`.
    pub fn from_json_value(v: &Value) -> Result<Self> {
        let raw: ElementJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        if raw.mode != S::MODE {
            return Err(Error::Parse(format!(
                "element mode {:?} does not match {:?}",
                raw.mode,
                S::MODE
            )));
        }
        let ctx = Context::new(raw.context.into_table()?);
        let coeffs = raw
            .coeffs
            .iter()
            .map(S::from_json)
            .collect::<Result<Vec<_>>>()?;
        Self::new(&ctx, coeffs)
    }

    /// Uses the context of `self` to rebuild an element from the JSON form,
    /// failing if the serialized context differs.
    pub fn from_json_in(ctx: &Arc<Context>, v: &Value) -> Result<Self> {
        let parsed = Self::from_json_value(v)?;
        if !ctx.same_as(&parsed.ctx) {
            return Err(Error::ContextMismatch);
        }
        Self::new(ctx, parsed.coeffs)
    }
}

impl FloatElement {
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }
}

impl ExactElement {
    /// Random element with coefficients `a/b`, `|a| <= 9`, `1 <= b <= 4`.
    pub fn random_small<R: Rng + ?Sized>(ctx: &Arc<Context>, rng: &mut R) -> Self {
        let coeffs = (0..ctx.order())
            .map(|_| {
                let num: i64 = rng.gen_range(-9..=9);
                let den: i64 = rng.gen_range(1..=4);
                BigRational::new(num.into(), den.into())
            })
            .collect();
        AlgebraElement {
            ctx: Arc::clone(ctx),
            coeffs,
        }
    }

    pub fn to_float(&self) -> FloatElement {
        AlgebraElement {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().map(Scalar::to_f64).collect(),
        }
    }
}

impl fmt::Display for ExactElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(String, usize)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
            .map(|(p, c)| (format_rational(c), p))
            .collect();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (c, p)) in terms.iter().enumerate() {
            let (neg, mag) = match c.strip_prefix('-') {
                Some(m) => (true, m),
                None => (false, c.as_str()),
            };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mag != "1" {
                write!(f, "{mag}*")?;
            }
            write!(f, "i{p}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FourierForm {
    Left,
    Right,
}

/// Left-multiplication matrix `[x](r, s) = t(r s^-1, s) x_{r s^-1}`.
#[derive(Debug, Clone)]
pub struct StandardMatrix<S: Scalar> {
    ctx: Arc<Context>,
    entries: Vec<S>,
}

impl<S: Scalar> StandardMatrix<S> {
    pub fn order(&self) -> usize {
        self.ctx.order()
    }

    pub fn get(&self, r: usize, s: usize) -> &S {
        &self.entries[r * self.order() + s]
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn apply(&self, y: &AlgebraElement<S>) -> Result<AlgebraElement<S>> {
        if !self.ctx.same_as(&y.ctx) {
            return Err(Error::ContextMismatch);
        }
        let n = self.order();
        let coeffs = self
            .entries
            .chunks(n)
            .map(|row| {
                row.iter()
                    .zip(&y.coeffs)
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect();
        AlgebraElement::new(&self.ctx, coeffs)
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if !self.ctx.same_as(&other.ctx) {
            return Err(Error::ContextMismatch);
        }
        let n = self.order();
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for s in 0..n {
                entries.push((0..n).fold(S::zero(), |acc, k| {
                    acc + self.get(r, k).clone() * other.get(k, s).clone()
                }));
            }
        }
        Ok(StandardMatrix {
            ctx: Arc::clone(&self.ctx),
            entries,
        })
    }
}

impl<S: Scalar> PartialEq for StandardMatrix<S> {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_as(&other.ctx) && self.entries == other.entries
    }
}

/// Pieces of the symmetric/antisymmetric expansion. Scalar terms are stored
/// as multiples of `i_0`.
#[derive(Debug, Clone)]
pub struct SasDecomposition<S: Scalar> {
    /// `sum_p t(p, p^-1) x_p y_{p^-1} - 2 x_e y_e`
    pub scalar_part: AlgebraElement<S>,
    /// `x_e y`
    pub left_term: AlgebraElement<S>,
    /// `y_e x`
    pub right_term: AlgebraElement<S>,
    pub interior_sym: AlgebraElement<S>,
    pub interior_antisym: AlgebraElement<S>,
}

impl<S: Scalar> SasDecomposition<S> {
    /// Sum of the four symmetric terms.
    pub fn symmetric(&self) -> AlgebraElement<S> {
        [&self.left_term, &self.right_term, &self.interior_sym]
            .into_iter()
            .try_fold(self.scalar_part.clone(), |acc, t| acc.add(t))
            .expect("terms share a context")
    }
}

/// How a context is named in JSON: a generated twist by name, or a full
/// table for custom twists.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TwistRef {
    Named(TwistKind),
    Table(TableJson),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ContextJson {
    pub group: GroupSpec,
    pub twist: TwistRef,
}

impl From<&TwistTable> for ContextJson {
    fn from(t: &TwistTable) -> Self {
        let twist = match t.kind() {
            TwistKind::Custom => TwistRef::Table(TableJson::from(t)),
            kind => TwistRef::Named(kind),
        };
        ContextJson {
            group: t.group(),
            twist,
        }
    }
}

impl ContextJson {
    pub fn into_table(self) -> Result<TwistTable> {
        match self.twist {
            TwistRef::Named(kind) => TwistTable::named(kind, self.group),
            TwistRef::Table(raw) => {
                if raw.group != self.group {
                    return Err(Error::GroupMismatch {
                        left: self.group.to_string(),
                        right: raw.group.to_string(),
                    });
                }
                raw.try_into()
            }
        }
    }
}

/// `{context: {group, twist}, mode, coeffs: [...]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ElementJson {
    pub context: ContextJson,
    pub mode: ScalarMode,
    pub coeffs: Vec<Value>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> BigRational {
        BigRational::from_i64(n)
    }

    fn basis(ctx: &Arc<Context>, p: usize) -> ExactElement {
        ExactElement::basis(ctx, p).unwrap()
    }

    fn elem(ctx: &Arc<Context>, v: &[i64]) -> ExactElement {
        ExactElement::from_i64s(ctx, v).unwrap()
    }

    #[test]
    fn basis_products_follow_the_table() {
        for ctx in [
            Context::cayley_dickson(3).unwrap(),
            Context::clifford(3).unwrap(),
            Context::new(TwistTable::trivial(GroupSpec::Cyclic(5)).unwrap()),
        ] {
            let n = ctx.order();
            let g = ctx.group();
            for p in 0..n {
                for r in 0..n {
                    let lhs = basis(&ctx, p).multiply(&basis(&ctx, r)).unwrap();
                    let rhs = basis(&ctx, g.op(p, r)).scale(&q(ctx.table().sign(p, r) as i64));
                    assert_eq!(lhs, rhs);
                    let ip = basis(&ctx, p).inner_product(&basis(&ctx, r)).unwrap();
                    assert_eq!(ip, q((p == r) as i64));
                }
                let x = basis(&ctx, p);
                assert_eq!(ExactElement::one(&ctx).multiply(&x).unwrap(), x);
                assert_eq!(x.multiply(&ExactElement::one(&ctx)).unwrap(), x);
            }
        }
    }

    #[test]
    fn small_cayley_dickson_products() {
        let cd2 = Context::cayley_dickson(2).unwrap();
        assert_eq!(
            basis(&cd2, 1).multiply(&basis(&cd2, 2)).unwrap(),
            basis(&cd2, 3)
        );
        let cd1 = Context::cayley_dickson(1).unwrap();
        assert_eq!(
            basis(&cd1, 1).multiply(&basis(&cd1, 1)).unwrap(),
            basis(&cd1, 0).neg()
        );
    }

    #[test]
    fn standard_matrix_examples() {
        let cd1 = Context::cayley_dickson(1).unwrap();
        let id = basis(&cd1, 0).standard_matrix();
        assert_eq!(id.entries(), &[q(1), q(0), q(0), q(1)]);
        let m = basis(&cd1, 1).standard_matrix();
        assert_eq!(m.entries(), &[q(0), q(-1), q(1), q(0)]);
    }

    #[test]
    fn standard_matrices_multiply_for_associative_twists() {
        for n in 0..=3 {
            let ctx = Context::clifford(n).unwrap();
            let ord = ctx.order();
            for p in 0..ord {
                for r in 0..ord {
                    let prod = basis(&ctx, p).multiply(&basis(&ctx, r)).unwrap();
                    let lhs = basis(&ctx, p)
                        .standard_matrix()
                        .matmul(&basis(&ctx, r).standard_matrix())
                        .unwrap();
                    assert_eq!(lhs, prod.standard_matrix(), "N={n} ({p},{r})");
                }
            }
        }
    }

    #[test]
    fn conjugate_examples() {
        let cd = Context::cayley_dickson(3).unwrap();
        assert_eq!(basis(&cd, 0).conjugate().unwrap(), basis(&cd, 0));
        for p in 1..8 {
            assert_eq!(basis(&cd, p).conjugate().unwrap(), basis(&cd, p).neg());
        }
        let clf = Context::clifford(2).unwrap();
        assert_eq!(basis(&clf, 3).conjugate().unwrap(), basis(&clf, 3).neg());
    }

    #[test]
    fn conjugate_needs_invertive_twist() {
        let mut signs = vec![1i8; 9];
        signs[3 + 2] = -1;
        let t = TwistTable::from_signs(GroupSpec::Cyclic(3), TwistKind::Custom, signs).unwrap();
        let ctx = Context::new(t);
        assert!(matches!(
            basis(&ctx, 1).conjugate(),
            Err(Error::Unsupported { .. })
        ));
        assert!(basis(&ctx, 1)
            .multiply_via_fourier(&basis(&ctx, 1), FourierForm::Left)
            .is_err());
    }

    #[test]
    fn inner_product_examples() {
        let cd2 = Context::cayley_dickson(2).unwrap();
        let x = elem(&cd2, &[1, 2, 3, 4]);
        assert_eq!(x.inner_product(&x).unwrap(), q(30));
        let f = x.to_float();
        assert!((f.norm() - 30f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn fourier_with_identity_is_orthonormal_expansion() {
        let cd = Context::cayley_dickson(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = ExactElement::random_small(&cd, &mut rng);
        let one = ExactElement::one(&cd);
        for form in [FourierForm::Left, FourierForm::Right] {
            assert_eq!(x.multiply_via_fourier(&one, form).unwrap(), x);
        }
    }

    #[test]
    fn fourier_agrees_on_all_quaternion_basis_pairs() {
        let cd = Context::cayley_dickson(2).unwrap();
        for p in 0..4 {
            for r in 0..4 {
                let (x, y) = (basis(&cd, p), basis(&cd, r));
                let direct = x.multiply(&y).unwrap();
                for form in [FourierForm::Left, FourierForm::Right] {
                    assert_eq!(x.multiply_via_fourier(&y, form).unwrap(), direct);
                }
            }
        }
    }

    #[test]
    fn symmetric_split_examples() {
        let ctx = Context::clifford(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let x = ExactElement::random_small(&ctx, &mut rng);
        let y = ExactElement::random_small(&ctx, &mut rng);
        let sym = x.symmetric_product(&y).unwrap();
        let anti = x.antisymmetric_product(&y).unwrap();
        assert_eq!(sym.add(&anti).unwrap(), x.multiply(&y).unwrap());
        assert!(x.antisymmetric_product(&x).unwrap().is_zero());
        let one = ExactElement::one(&ctx);
        assert_eq!(one.symmetric_product(&y).unwrap(), y);
        assert!(one.antisymmetric_product(&y).unwrap().is_zero());
    }

    #[test]
    fn sas_terms_reassemble() {
        let ctx = Context::clifford(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let x = ExactElement::random_small(&ctx, &mut rng);
            let y = ExactElement::random_small(&ctx, &mut rng);
            let d = x.sas_decomposition(&y).unwrap();
            assert_eq!(d.symmetric(), x.symmetric_product(&y).unwrap());
            assert_eq!(d.interior_antisym, x.antisymmetric_product(&y).unwrap());
        }
    }

    #[test]
    fn cayley_dickson_symmetric_product_formula() {
        let ctx = Context::cayley_dickson(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let x = ExactElement::random_small(&ctx, &mut rng);
        let y = ExactElement::random_small(&ctx, &mut rng);
        let expected = y
            .scale(x.coeff(0))
            .add(&x.scale(y.coeff(0)))
            .unwrap()
            .sub(&ExactElement::scalar(&ctx, x.inner_product(&y).unwrap()))
            .unwrap();
        assert_eq!(x.symmetric_product(&y).unwrap(), expected);
    }

    #[test]
    fn adjoint_and_reversal_with_identity() {
        let ctx = Context::cayley_dickson(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let y = ExactElement::random_small(&ctx, &mut rng);
        let z = ExactElement::random_small(&ctx, &mut rng);
        let one = ExactElement::one(&ctx);
        let (a, b) = one.adjoint_check(&y, &z).unwrap();
        assert!(a.holds && b.holds);
        assert!(y.conjugate_reversal_check(&one).unwrap().holds);
    }

    #[test]
    fn reversal_on_octonion_basis_pairs() {
        let ctx = Context::cayley_dickson(3).unwrap();
        for p in 0..8 {
            for r in 0..8 {
                let rep = basis(&ctx, p)
                    .conjugate_reversal_check(&basis(&ctx, r))
                    .unwrap();
                assert!(rep.holds, "({p},{r})");
            }
        }
    }

    #[test]
    fn zero_theorem_examples() {
        let cd = Context::cayley_dickson(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let x = ExactElement::random_small(&cd, &mut rng);
        assert_eq!(x.zero_theorem_value(0).unwrap(), q(0));
        for p in 1..8 {
            let ip = x
                .inner_product(&basis(&cd, p).multiply(&x).unwrap())
                .unwrap();
            assert_eq!(ip, q(0));
            assert_eq!(x.zero_theorem_value(p).unwrap(), q(0));
        }
        let clf = Context::clifford(2).unwrap();
        let y = ExactElement::random_small(&clf, &mut rng);
        assert_eq!(y.zero_theorem_value(1).unwrap(), q(0));
        let cyc = Context::new(TwistTable::trivial(GroupSpec::Cyclic(3)).unwrap());
        assert!(ExactElement::one(&cyc).zero_theorem_value(1).is_err());
    }

    #[test]
    fn basis_inverses() {
        for ctx in [
            Context::cayley_dickson(3).unwrap(),
            Context::new(TwistTable::trivial(GroupSpec::Cyclic(6)).unwrap()),
        ] {
            for p in 0..ctx.order() {
                let inv = ExactElement::basis_inverse(&ctx, p).unwrap();
                let x = basis(&ctx, p);
                assert_eq!(x.multiply(&inv).unwrap(), ExactElement::one(&ctx));
                assert_eq!(inv.multiply(&x).unwrap(), ExactElement::one(&ctx));
            }
        }
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = Context::cayley_dickson(2).unwrap();
        let b = Context::clifford(2).unwrap();
        let x = ExactElement::one(&a);
        let y = ExactElement::one(&b);
        assert_eq!(x.multiply(&y), Err(Error::ContextMismatch));
        assert_eq!(x.inner_product(&y), Err(Error::ContextMismatch));
        assert!(ExactElement::new(&a, vec![q(1)]).is_err());
        // separately built but identical tables are the same context
        let a2 = Context::cayley_dickson(2).unwrap();
        assert!(x.multiply(&ExactElement::one(&a2)).is_ok());
    }

    #[test]
    fn json_round_trip_and_display() {
        let ctx = Context::cayley_dickson(2).unwrap();
        let x = ExactElement::new(
            &ctx,
            vec![q(1), BigRational::new((-2).into(), 3.into()), q(0), q(-1)],
        )
        .unwrap();
        let v = x.to_json_value();
        assert_eq!(v["coeffs"][1], "-2/3");
        assert_eq!(v["context"]["twist"], "cayley_dickson");
        assert_eq!(ExactElement::from_json_value(&v).unwrap(), x);
        assert!(FloatElement::from_json_value(&v).is_err());
        assert_eq!(x.to_string(), "i0 - 2/3*i1 - i3");

        let custom = TwistTable::cayley_dickson(1)
            .unwrap()
            .with_flipped(1, 1)
            .unwrap();
        let cctx = Context::new(custom);
        let y = ExactElement::basis(&cctx, 1).unwrap();
        assert_eq!(
            ExactElement::from_json_value(&y.to_json_value()).unwrap(),
            y
        );
    }
}
