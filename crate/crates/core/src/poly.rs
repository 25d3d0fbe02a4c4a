//! Dense univariate polynomials over a field, and linearized (p-)polynomials
//! `sum c_i x^(p^i)` over a finite field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{FieldElement, GaloisField};
use crate::rational::Rational;

/// Coefficient domain for [`DensePolynomial`]: a field whose elements carry
/// enough context to produce their own zero and one.
pub trait Scalar:
    Clone + PartialEq + fmt::Debug + fmt::Display + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn inverse(&self) -> Option<Self>;
}

impl Scalar for FieldElement<'_> {
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn is_one(&self) -> bool {
        FieldElement::is_one(self)
    }
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
}

impl Scalar for Rational {
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn is_one(&self) -> bool {
        *self == Rational::one()
    }
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
}

/// Coefficients indexed by exponent, trimmed so the last one is nonzero.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq)]
pub struct DensePolynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> DensePolynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DensePolynomial { coeffs }
    }

    pub fn zero() -> Self {
        DensePolynomial { coeffs: Vec::new() }
    }

    /// `c x^n`
    pub fn monomial(c: T, n: usize) -> Self {
        let mut coeffs = vec![c.zero_like(); n];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, or `None` past the degree.
    pub fn coeff(&self, i: usize) -> Option<&T> {
        self.coeffs.get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Horner evaluation.
    pub fn evaluate(&self, x: &T) -> T {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// Long division. The divisor must be nonzero with an invertible leading
    /// coefficient; only its nonzero terms are visited, so sparse divisors
    /// such as subspace polynomials divide quickly.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::ZeroDivisor)?;
        let lead_inv = divisor.coeffs[dd].inverse().ok_or(Error::ZeroDivisor)?;
        let terms: Vec<(usize, T)> = divisor.coeffs[..dd]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let zero = lead_inv.zero_like();
        let mut quot = vec![zero.clone(); rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            if rem[top].is_zero() {
                continue;
            }
            let q = rem[top].clone() * lead_inv.clone();
            let shift = top - dd;
            for (i, c) in &terms {
                rem[shift + i] = rem[shift + i].clone() - q.clone() * c.clone();
            }
            rem[top] = zero.clone();
            quot[shift] = q;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Whether `self` divides `other`.
    pub fn divides(&self, other: &Self) -> Result<bool> {
        Ok(other.div_rem(self)?.1.is_zero())
    }

    /// Exact division by `x`; fails when the constant term is nonzero.
    pub fn divide_by_x(&self) -> Result<Self> {
        match self.coeffs.first() {
            None => Ok(Self::zero()),
            Some(c) if c.is_zero() => Ok(Self::new(self.coeffs[1..].to_vec())),
            Some(_) => Err(Error::Precondition("constant term is nonzero, x does not divide".into())),
        }
    }

    fn check_reciprocable(&self) -> Result<()> {
        match self.coeffs.first() {
            Some(c) if !c.is_zero() => Ok(()),
            _ => Err(Error::ZeroConstantTerm),
        }
    }

    /// `x^n f(1/x)`: the coefficient vector reversed. Requires a nonzero
    /// constant term, so the degree is preserved.
    pub fn reciprocal(&self) -> Result<Self> {
        self.check_reciprocable()?;
        Ok(Self::new(self.coeffs.iter().rev().cloned().collect()))
    }

    /// The scalar `lambda` with `a_i = lambda * a_(n-i)` for every `i`, if any.
    /// It is forced to be `a_n / a_0`, which is computed first and then checked
    /// against every coefficient.
    pub fn self_reciprocal_scalar(&self) -> Result<Option<T>> {
        self.check_reciprocable()?;
        let n = self.coeffs.len() - 1;
        let a0_inv = self.coeffs[0].inverse().ok_or(Error::ZeroConstantTerm)?;
        let lambda = self.coeffs[n].clone() * a0_inv;
        let ok = (0..=n).all(|i| self.coeffs[i] == lambda.clone() * self.coeffs[n - i].clone());
        Ok(ok.then_some(lambda))
    }

    pub fn is_self_reciprocal(&self) -> Result<bool> {
        Ok(self.self_reciprocal_scalar()?.is_some())
    }
}

impl<'a> DensePolynomial<FieldElement<'a>> {
    /// `x^(p^f) - x`, whose roots are exactly the field elements.
    pub fn field_polynomial(field: &'a GaloisField) -> Self {
        let q = field.order() as usize;
        let mut coeffs = vec![field.zero(); q + 1];
        coeffs[q] = field.one();
        coeffs[1] = -field.one();
        Self::new(coeffs)
    }

    /// True when every nonzero coefficient sits at an exponent `p^i`.
    pub fn is_p_polynomial(&self) -> bool {
        let Some(c) = self.coeffs.first() else {
            return true;
        };
        let p = c.field().p() as usize;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .all(|(e, _)| is_power_of(e, p))
    }

    /// Roots in the coefficient field, by scanning every element.
    pub fn roots(&self, field: &'a GaloisField) -> Vec<FieldElement<'a>> {
        field.elements().filter(|x| self.evaluate(x).is_zero()).collect()
    }
}

fn is_power_of(mut e: usize, p: usize) -> bool {
    if e == 0 {
        return false;
    }
    while e.is_multiple_of(p) {
        e /= p;
    }
    e == 1
}

fn zip_with<T: Scalar>(a: &[T], b: &[T], op: impl Fn(T, T) -> T) -> Vec<T> {
    let zero = a.first().or(b.first()).map(|c| c.zero_like());
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let z = zero.clone().expect("nonempty");
            op(a.get(i).cloned().unwrap_or(z.clone()), b.get(i).cloned().unwrap_or(z))
        })
        .collect()
}

impl<T: Scalar> Add for &DensePolynomial<T> {
    type Output = DensePolynomial<T>;
    fn add(self, rhs: Self) -> DensePolynomial<T> {
        DensePolynomial::new(zip_with(&self.coeffs, &rhs.coeffs, |a, b| a + b))
    }
}

impl<T: Scalar> Sub for &DensePolynomial<T> {
    type Output = DensePolynomial<T>;
    fn sub(self, rhs: Self) -> DensePolynomial<T> {
        DensePolynomial::new(zip_with(&self.coeffs, &rhs.coeffs, |a, b| a - b))
    }
}

impl<T: Scalar> Mul for &DensePolynomial<T> {
    type Output = DensePolynomial<T>;
    fn mul(self, rhs: Self) -> DensePolynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return DensePolynomial::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        DensePolynomial::new(out)
    }
}

fn format_terms<'t, T: fmt::Display + 't>(terms: impl Iterator<Item = (usize, &'t T, bool)>) -> String {
    let mut parts = Vec::new();
    for (e, c, one) in terms {
        let var = match e {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{e}"),
        };
        let c = c.to_string();
        parts.push(if e == 0 {
            c
        } else if one {
            var
        } else if !c.chars().all(|ch| ch.is_ascii_digit()) {
            format!("({c}){var}")
        } else {
            format!("{c}{var}")
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

impl<T: Scalar> fmt::Display for DensePolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e, c, c.is_one()));
        write!(f, "{}", format_terms(terms))
    }
}

impl<T: Scalar> fmt::Debug for DensePolynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DensePolynomial({self})")
    }
}

/// `{"coeffs": [...]}` with the constant term first.
impl<T: Serialize> Serialize for DensePolynomial<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("DensePolynomial", 1)?;
        s.serialize_field("coeffs", &self.coeffs)?;
        s.end()
    }
}

/// `sum_i c_i x^(p^i)` over a [`GaloisField`]; `qcoeffs[i]` multiplies `x^(p^i)`.
#[derive(Clone, PartialEq)]
pub struct LinearizedPolynomial<'a> {
    field: &'a GaloisField,
    qcoeffs: Vec<FieldElement<'a>>,
}

impl<'a> LinearizedPolynomial<'a> {
    pub fn new(field: &'a GaloisField, mut qcoeffs: Vec<FieldElement<'a>>) -> Result<Self> {
        if qcoeffs.iter().any(|c| c.field() != field) {
            return Err(Error::SpecMismatch);
        }
        while qcoeffs.last().is_some_and(|c| c.is_zero()) {
            qcoeffs.pop();
        }
        Ok(LinearizedPolynomial { field, qcoeffs })
    }

    pub fn zero(field: &'a GaloisField) -> Self {
        LinearizedPolynomial { field, qcoeffs: Vec::new() }
    }

    /// The polynomial `x`.
    pub fn identity(field: &'a GaloisField) -> Self {
        LinearizedPolynomial {
            field,
            qcoeffs: vec![field.one()],
        }
    }

    /// `c x^(p^i)`
    pub fn monomial(c: FieldElement<'a>, i: usize) -> Self {
        let field = c.field();
        let mut qcoeffs = vec![field.zero(); i];
        qcoeffs.push(c);
        Self::new(field, qcoeffs).expect("single field")
    }

    /// Recovers the q-coefficients of a dense p-polynomial.
    pub fn from_dense(field: &'a GaloisField, dense: &DensePolynomial<FieldElement<'a>>) -> Option<Self> {
        if !dense.is_p_polynomial() {
            return None;
        }
        let p = field.p() as usize;
        let mut qcoeffs = Vec::new();
        let mut e = 1usize;
        while let Some(c) = dense.coeff(e) {
            qcoeffs.push(*c);
            e *= p;
        }
        Self::new(field, qcoeffs).ok()
    }

    pub fn field(&self) -> &'a GaloisField {
        self.field
    }

    pub fn qcoeffs(&self) -> &[FieldElement<'a>] {
        &self.qcoeffs
    }

    pub fn is_zero(&self) -> bool {
        self.qcoeffs.is_empty()
    }

    /// Largest `i` with a nonzero coefficient at `x^(p^i)`.
    pub fn q_degree(&self) -> Option<usize> {
        self.qcoeffs.len().checked_sub(1)
    }

    /// Ordinary degree `p^q_degree`.
    pub fn degree(&self) -> Option<u64> {
        self.q_degree().map(|i| (self.field.p() as u64).pow(i as u32))
    }

    pub fn is_monic(&self) -> bool {
        self.qcoeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn evaluate(&self, x: &FieldElement<'a>) -> Result<FieldElement<'a>> {
        if x.field() != self.field {
            return Err(Error::SpecMismatch);
        }
        Ok(self.field.elem(self.evaluate_value(x.value())))
    }

    pub(crate) fn evaluate_value(&self, x: u32) -> u32 {
        let field = self.field;
        let p = field.p() as u64;
        let mut acc = 0;
        let mut power = x;
        for (i, c) in self.qcoeffs.iter().enumerate() {
            if i > 0 {
                power = field.pow_value(power, p);
            }
            acc = field.add_values(acc, field.mul_values(c.value(), power));
        }
        acc
    }

    pub fn to_dense(&self) -> DensePolynomial<FieldElement<'a>> {
        let Some(degree) = self.degree() else {
            return DensePolynomial::zero();
        };
        let mut coeffs = vec![self.field.zero(); degree as usize + 1];
        let mut e = 1usize;
        for c in &self.qcoeffs {
            coeffs[e] = *c;
            e *= self.field.p() as usize;
        }
        DensePolynomial::new(coeffs)
    }

    /// `self(other(x))`, via `(c x^(p^i)) o (d x^(p^j)) = c d^(p^i) x^(p^(i+j))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::SpecMismatch);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.field));
        }
        let mut out = vec![self.field.zero(); self.qcoeffs.len() + other.qcoeffs.len() - 1];
        for (i, c) in self.qcoeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, d) in other.qcoeffs.iter().enumerate() {
                out[i + j] = out[i + j] + *c * d.frobenius(i as u64);
            }
        }
        Self::new(self.field, out)
    }

    /// `self(x)^p = sum c_i^p x^(p^(i+1))`.
    pub fn pth_power(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut qcoeffs = Vec::with_capacity(self.qcoeffs.len() + 1);
        qcoeffs.push(self.field.zero());
        qcoeffs.extend(self.qcoeffs.iter().map(|c| c.frobenius(1)));
        LinearizedPolynomial {
            field: self.field,
            qcoeffs,
        }
    }

    pub fn scale(&self, c: &FieldElement<'a>) -> Self {
        let qcoeffs = self.qcoeffs.iter().map(|a| *a * *c).collect();
        Self::new(self.field, qcoeffs).expect("single field")
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::SpecMismatch);
        }
        let n = self.qcoeffs.len().max(other.qcoeffs.len());
        let zero = self.field.zero();
        let qcoeffs = (0..n)
            .map(|i| *self.qcoeffs.get(i).unwrap_or(&zero) - *other.qcoeffs.get(i).unwrap_or(&zero))
            .collect();
        Self::new(self.field, qcoeffs)
    }

    /// For a monic binomial `x^(p^r) + c x` with `r >= 1`, returns `(r, c)`.
    pub fn as_binomial(&self) -> Option<(usize, FieldElement<'a>)> {
        let r = self.q_degree()?;
        if r == 0 || !self.is_monic() || self.qcoeffs[0].is_zero() {
            return None;
        }
        if self.qcoeffs[1..r].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some((r, self.qcoeffs[0]))
    }
}

impl fmt::Display for LinearizedPolynomial<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.field.p() as usize;
        let terms = self
            .qcoeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (p.pow(i as u32), c, c.is_one()));
        write!(f, "{}", format_terms(terms))
    }
}

impl fmt::Debug for LinearizedPolynomial<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearizedPolynomial({self})")
    }
}

/// `{"qcoeffs": [...]}`, entry `i` being the coefficient of `x^(p^i)`.
impl Serialize for LinearizedPolynomial<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("LinearizedPolynomial", 1)?;
        s.serialize_field("qcoeffs", &self.qcoeffs)?;
        s.end()
    }
}
