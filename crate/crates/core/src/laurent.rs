//! Exact arithmetic in `Z[t, t⁻¹]` and finitely supported matrices over it.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// A Laurent polynomial; zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c · t^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    pub fn t_pow(e: i64) -> Self {
        Self::monomial(1, e)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(terms: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(BigInt::is_one)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coefficient(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    /// Multiplies by `t^e`.
    pub fn shift(&self, e: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&k, c)| (k + e, c.clone())).collect() }
    }

    /// Evaluates at a nonzero rational point.
    pub fn evaluate(&self, t0: &BigRational) -> Result<BigRational> {
        if t0.is_zero() {
            return Err(Error::OutOfRange("cannot evaluate a Laurent polynomial at t = 0".into()));
        }
        let mut acc = BigRational::zero();
        for (&e, c) in &self.terms {
            let base = if e >= 0 { t0.clone() } else { t0.recip() };
            let mut pw = BigRational::one();
            for _ in 0..e.unsigned_abs() {
                pw *= &base;
            }
            acc += pw * BigRational::from_integer(c.clone());
        }
        Ok(acc)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (&e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let show_coeff = e == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An element of `GL(∞, Z[t, t⁻¹])`: a `dim × dim` block, identity beyond it.
///
/// Equality and hashing compare the trimmed block, so padding with identity
/// rows and columns does not change the element.
#[derive(Clone)]
pub struct LaurentMatrix {
    dim: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |r, c| if r == c { LaurentPoly::one() } else { LaurentPoly::zero() })
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> LaurentPoly) -> Self {
        let entries = (0..dim * dim).map(|i| f(i / dim.max(1), i % dim.max(1))).collect();
        LaurentMatrix { dim, entries }
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Invalid("matrix rows must form a square".into()));
        }
        Ok(LaurentMatrix { dim, entries: rows.into_iter().flatten().collect() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry `(r, c)`, 0-based; entries beyond the stored block are those of
    /// the identity.
    pub fn get(&self, r: usize, c: usize) -> LaurentPoly {
        if r < self.dim && c < self.dim {
            self.entries[r * self.dim + c].clone()
        } else if r == c {
            LaurentPoly::one()
        } else {
            LaurentPoly::zero()
        }
    }

    fn at(&self, r: usize, c: usize) -> &LaurentPoly {
        &self.entries[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: LaurentPoly) {
        if r >= self.dim || c >= self.dim {
            *self = self.pad(r.max(c) + 1);
        }
        let d = self.dim;
        self.entries[r * d + c] = v;
    }

    /// The same element written as a `dim × dim` block (`dim` never shrinks).
    pub fn pad(&self, dim: usize) -> Self {
        if dim <= self.dim {
            return self.clone();
        }
        Self::from_fn(dim, |r, c| self.get(r, c))
    }

    /// Smallest block size outside of which the matrix is the identity.
    pub fn minimal_dim(&self) -> usize {
        let d = self.dim;
        let mut m = d;
        while m > 0 {
            let k = m - 1;
            let clean = self.at(k, k).is_one() && (0..k).all(|x| self.at(k, x).is_zero() && self.at(x, k).is_zero());
            if !clean {
                break;
            }
            m -= 1;
        }
        m
    }

    pub fn trimmed(&self) -> Self {
        let m = self.minimal_dim();
        Self::from_fn(m, |r, c| self.get(r, c))
    }

    pub fn is_identity(&self) -> bool {
        self.minimal_dim() == 0
    }

    pub fn mul(&self, other: &LaurentMatrix) -> LaurentMatrix {
        let d = self.dim.max(other.dim);
        let a = self.pad(d);
        let b = other.pad(d);
        let mut entries = vec![LaurentPoly::zero(); d * d];
        for r in 0..d {
            for k in 0..d {
                let x = a.at(r, k);
                if x.is_zero() {
                    continue;
                }
                for c in 0..d {
                    let y = b.at(k, c);
                    if !y.is_zero() {
                        let slot = &mut entries[r * d + c];
                        *slot = &*slot + &(x * y);
                    }
                }
            }
        }
        LaurentMatrix { dim: d, entries }
    }

    pub fn product<'a, I: IntoIterator<Item = &'a LaurentMatrix>>(ms: I) -> LaurentMatrix {
        ms.into_iter().fold(LaurentMatrix::identity(0), |acc, m| acc.mul(m))
    }

    /// `1_k ⊕ self`.
    pub fn block_shift(&self, k: usize) -> LaurentMatrix {
        Self::from_fn(self.dim + k, |r, c| {
            if r < k || c < k {
                if r == c {
                    LaurentPoly::one()
                } else {
                    LaurentPoly::zero()
                }
            } else {
                self.get(r - k, c - k)
            }
        })
    }

    /// Entry-wise evaluation at `t0 ≠ 0`.
    pub fn specialize(&self, t0: &BigRational) -> Result<Vec<Vec<BigRational>>> {
        (0..self.dim).map(|r| (0..self.dim).map(|c| self.at(r, c).evaluate(t0)).collect()).collect()
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = (0..self.dim)
            .map(|r| {
                Value::Array(
                    (0..self.dim)
                        .map(|c| Value::Array(self.at(r, c).terms().map(|(e, k)| json!([e, k.to_string()])).collect()))
                        .collect(),
                )
            })
            .collect();
        json!({ "dim": self.dim, "entries": entries })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Invalid(format!("matrix JSON: {m}"));
        let dim = v.get("dim").and_then(Value::as_u64).ok_or_else(|| bad("missing dim"))? as usize;
        let rows = v.get("entries").and_then(Value::as_array).ok_or_else(|| bad("missing entries"))?;
        if rows.len() != dim {
            return Err(bad("row count differs from dim"));
        }
        let mut out = Vec::with_capacity(dim);
        for row in rows {
            let cells = row.as_array().ok_or_else(|| bad("row is not an array"))?;
            if cells.len() != dim {
                return Err(bad("column count differs from dim"));
            }
            let mut out_row = Vec::with_capacity(dim);
            for cell in cells {
                let terms = cell.as_array().ok_or_else(|| bad("entry is not an array"))?;
                let mut parsed = Vec::with_capacity(terms.len());
                for term in terms {
                    let pair = term.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("term is not a pair"))?;
                    let e = pair[0].as_i64().ok_or_else(|| bad("exponent is not an integer"))?;
                    let c: BigInt = pair[1]
                        .as_str()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| bad("coefficient is not a decimal string"))?;
                    parsed.push((e, c));
                }
                out_row.push(LaurentPoly::from_terms(parsed));
            }
            out.push(out_row);
        }
        LaurentMatrix::from_rows(out)
    }
}

impl PartialEq for LaurentMatrix {
    fn eq(&self, other: &Self) -> bool {
        let d = self.dim.max(other.dim);
        (0..d).all(|r| (0..d).all(|c| self.get(r, c) == other.get(r, c)))
    }
}

impl Eq for LaurentMatrix {}

impl Hash for LaurentMatrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let t = self.trimmed();
        t.dim.hash(state);
        t.entries.hash(state);
    }
}

impl fmt::Debug for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.dim {
            let cells: Vec<String> = (0..self.dim).map(|c| self.at(r, c).to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
