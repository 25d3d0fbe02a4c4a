//! Arithmetic in GF(p^f) realised as Z_p[x]/(m(x)) for an explicit monic
//! irreducible modulus m.
//!
//! An element is stored as its coordinate vector with respect to the power
//! basis 1, z, z^2, ..., z^(f-1) (z the class of x), packed into one integer
//! as base-p digits with the constant coordinate least significant. For p = 2
//! the packing is the usual bit vector and addition is XOR. Fields small
//! enough get log/exp tables so products and inverses are O(1); the tables are
//! built from the schoolbook product, which remains available as a fallback.
//!
//! Subfields are never built as separate fields: GF(p^r) is the fixed set of
//! the r-th Frobenius power inside the ambient field.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::zp;

/// Fields up to this order get log/exp tables.
const TABLE_LIMIT: u64 = 1 << 22;
/// Odd-characteristic extension fields up to this order get an addition table.
const ADD_TABLE_LIMIT: u64 = 1024;

/// Description of a finite field: characteristic, degree and modulus.
///
/// The modulus lists coefficients from the constant term upward and includes
/// the leading 1, so it has `f + 1` entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub f: u32,
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.f)
    }
}

fn check_order(p: u64, f: u32) -> Result<()> {
    if f == 0 {
        return Err(Error::ZeroDegree);
    }
    if !zp::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    match p.checked_pow(f) {
        Some(q) if q <= u32::MAX as u64 => Ok(()),
        _ => Err(Error::OrderTooLarge { p, f }),
    }
}

/// Smallest monic irreducible polynomial of degree `f` over Z_p.
///
/// Candidates are ordered by their non-leading coefficients read from degree
/// `f - 1` down to the constant term, which is the same as counting through the
/// base-p integers whose digit `i` is the coefficient of `x^i`.
pub fn find_irreducible(p: u32, f: u32) -> Result<FieldSpec> {
    check_order(p as u64, f)?;
    let pp = p as u64;
    let count = pp.pow(f);
    for t in 0..count {
        let mut poly: Vec<u64> = (0..f).map(|i| t / pp.pow(i) % pp).collect();
        poly.push(1);
        if f > 1 && poly[0] == 0 {
            continue;
        }
        if zp::is_irreducible(&poly, pp) {
            return Ok(FieldSpec {
                p,
                f,
                modulus: poly.into_iter().map(|c| c as u32).collect(),
            });
        }
    }
    // Irreducible polynomials exist in every degree.
    unreachable!("no irreducible polynomial of degree {f} over GF({p})")
}

#[derive(Debug)]
struct LogTables {
    // exp has length 2(q-1) so that log a + log b never needs a reduction
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A concrete finite field. Elements borrow it, so build it once and share.
#[derive(Debug)]
pub struct GaloisField {
    spec: FieldSpec,
    order: u32,
    powers: Vec<u32>,
    tables: Option<LogTables>,
    // sum table, row-major by the first operand, and negation table
    add_table: Option<(Vec<u32>, Vec<u32>)>,
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for GaloisField {}

impl GaloisField {
    /// Validates `spec` (prime characteristic, monic irreducible modulus of
    /// the stated degree) and builds the field.
    pub fn new(spec: FieldSpec) -> Result<Self> {
        check_order(spec.p as u64, spec.f)?;
        let (p, f) = (spec.p, spec.f);
        if spec.modulus.len() != f as usize + 1 {
            return Err(Error::InvalidModulus(format!(
                "expected {} coefficients for degree {f}, got {}",
                f + 1,
                spec.modulus.len()
            )));
        }
        if let Some(c) = spec.modulus.iter().find(|&&c| c >= p) {
            return Err(Error::InvalidModulus(format!("coefficient {c} not reduced mod {p}")));
        }
        if spec.modulus[f as usize] != 1 {
            return Err(Error::InvalidModulus("modulus must be monic".into()));
        }
        let as_u64: Vec<u64> = spec.modulus.iter().map(|&c| c as u64).collect();
        if !zp::is_irreducible(&as_u64, p as u64) {
            return Err(Error::ReducibleModulus(spec.modulus.clone()));
        }
        let powers = (0..=f).map(|i| p.pow(i)).collect::<Vec<_>>();
        let order = (p as u64).pow(f) as u32;
        let mut field = GaloisField {
            spec,
            order,
            powers,
            tables: None,
            add_table: None,
        };
        if (order as u64) <= TABLE_LIMIT {
            field.tables = Some(field.build_tables());
        }
        if p != 2 && f > 1 && (order as u64) <= ADD_TABLE_LIMIT {
            let sums = (0..order)
                .flat_map(|a| (0..order).map(move |b| (a, b)))
                .map(|(a, b)| field.add_digits(a, b))
                .collect();
            let negs = (0..order).map(|a| field.scale_digits(p - 1, a)).collect();
            field.add_table = Some((sums, negs));
        }
        Ok(field)
    }

    /// GF(p^f) with the deterministic modulus from [`find_irreducible`].
    pub fn with_degree(p: u32, f: u32) -> Result<Self> {
        Self::new(find_irreducible(p, f)?)
    }

    fn build_tables(&self) -> LogTables {
        let q = self.order;
        let n = q - 1;
        let factors = zp::prime_factors(n as u64);
        let generator = (1..q)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| self.pow_slow(g, n as u64 / r) != 1)
            })
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = vec![0u32; 2 * n as usize];
        let mut log = vec![0u32; q as usize];
        let mut acc = 1u32;
        for i in 0..n {
            exp[i as usize] = acc;
            exp[(i + n) as usize] = acc;
            log[acc as usize] = i;
            acc = self.mul_schoolbook(acc, generator);
        }
        LogTables { exp, log }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn p(&self) -> u32 {
        self.spec.p
    }

    pub fn f(&self) -> u32 {
        self.spec.f
    }

    pub fn modulus(&self) -> &[u32] {
        &self.spec.modulus
    }

    pub fn order(&self) -> u64 {
        self.order as u64
    }

    pub fn zero(&self) -> FieldElement<'_> {
        FieldElement { field: self, value: 0 }
    }

    pub fn one(&self) -> FieldElement<'_> {
        FieldElement { field: self, value: 1 }
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> FieldElement<'_> {
        let p = self.spec.p as i64;
        FieldElement {
            field: self,
            value: n.rem_euclid(p) as u32,
        }
    }

    /// The class of x modulo the modulus.
    pub fn root(&self) -> FieldElement<'_> {
        let value = if self.spec.f == 1 {
            (self.spec.p - self.spec.modulus[0]) % self.spec.p
        } else {
            self.spec.p
        };
        FieldElement { field: self, value }
    }

    /// Element from its coordinates, constant coordinate first.
    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement<'_>> {
        if coeffs.len() != self.spec.f as usize {
            return Err(Error::InvalidElement(format!(
                "expected {} coordinates, got {}",
                self.spec.f,
                coeffs.len()
            )));
        }
        if let Some(c) = coeffs.iter().find(|&&c| c >= self.spec.p) {
            return Err(Error::InvalidElement(format!(
                "coordinate {c} not reduced mod {}",
                self.spec.p
            )));
        }
        Ok(FieldElement {
            field: self,
            value: self.pack(coeffs),
        })
    }

    /// Element from its packed base-p encoding.
    pub fn from_value(&self, value: u32) -> Result<FieldElement<'_>> {
        if value >= self.order {
            return Err(Error::InvalidElement(format!(
                "packed value {value} out of range for a field of order {}",
                self.order
            )));
        }
        Ok(FieldElement { field: self, value })
    }

    #[inline]
    pub(crate) fn elem(&self, value: u32) -> FieldElement<'_> {
        debug_assert!(value < self.order);
        FieldElement { field: self, value }
    }

    /// Every element, in increasing packed order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement<'_>> + '_ {
        (0..self.order).map(move |v| self.elem(v))
    }

    /// Elements fixed by the r-th Frobenius power, i.e. the subfield GF(p^r).
    /// Scans the whole field.
    pub fn subfield_elements(&self, r: u32) -> Result<Vec<FieldElement<'_>>> {
        self.check_divides(r)?;
        Ok(self
            .elements()
            .filter(|x| x.frobenius(r as u64) == *x)
            .collect())
    }

    pub(crate) fn check_divides(&self, r: u32) -> Result<()> {
        if r == 0 || !self.spec.f.is_multiple_of(r) {
            return Err(Error::NotADivisor { r, f: self.spec.f });
        }
        Ok(())
    }

    fn pack(&self, coeffs: &[u32]) -> u32 {
        coeffs
            .iter()
            .zip(&self.powers)
            .map(|(&c, &w)| c * w)
            .sum()
    }

    pub(crate) fn unpack(&self, value: u32) -> Vec<u32> {
        let p = self.spec.p;
        let mut v = value;
        (0..self.spec.f)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    #[inline]
    pub(crate) fn digit(&self, value: u32, i: usize) -> u32 {
        if self.spec.p == 2 {
            (value >> i) & 1
        } else {
            value / self.powers[i] % self.spec.p
        }
    }

    #[inline]
    pub(crate) fn add_values(&self, a: u32, b: u32) -> u32 {
        let p = self.spec.p;
        if p == 2 {
            return a ^ b;
        }
        if self.spec.f == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        if let Some((sums, _)) = &self.add_table {
            return sums[(a * self.order + b) as usize];
        }
        self.add_digits(a, b)
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        let p = self.spec.p;
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        for &w in &self.powers[..self.spec.f as usize] {
            out += (a % p + b % p) % p * w;
            a /= p;
            b /= p;
        }
        out
    }

    #[inline]
    pub(crate) fn neg_value(&self, a: u32) -> u32 {
        let p = self.spec.p;
        if p == 2 {
            return a;
        }
        if self.spec.f == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        if let Some((_, negs)) = &self.add_table {
            return negs[a as usize];
        }
        self.scale_digits(p - 1, a)
    }

    #[inline]
    pub(crate) fn sub_values(&self, a: u32, b: u32) -> u32 {
        if self.spec.f == 1 && self.spec.p != 2 {
            return if a >= b { a - b } else { a + self.spec.p - b };
        }
        self.add_values(a, self.neg_value(b))
    }

    /// Multiplies by an element `k` of Z_p.
    #[inline]
    pub(crate) fn scale_value(&self, k: u32, a: u32) -> u32 {
        let p = self.spec.p;
        let k = k % p;
        if k == 0 {
            return 0;
        }
        if k == 1 || p == 2 {
            return a;
        }
        if self.spec.f == 1 {
            return (k as u64 * a as u64 % p as u64) as u32;
        }
        self.scale_digits(k, a)
    }

    fn scale_digits(&self, k: u32, a: u32) -> u32 {
        let p = self.spec.p;
        let mut a = a;
        let mut out = 0;
        for &w in &self.powers[..self.spec.f as usize] {
            out += a % p * k % p * w;
            a /= p;
        }
        out
    }

    #[inline]
    pub(crate) fn mul_values(&self, a: u32, b: u32) -> u32 {
        match &self.tables {
            Some(t) => {
                if a == 0 || b == 0 {
                    0
                } else {
                    t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
                }
            }
            None => self.mul_schoolbook(a, b),
        }
    }

    /// Polynomial product of the coordinate vectors, reduced by the modulus.
    fn mul_schoolbook(&self, a: u32, b: u32) -> u32 {
        let p = self.spec.p as u64;
        let f = self.spec.f as usize;
        let da = self.unpack(a);
        let db = self.unpack(b);
        let mut prod = vec![0u64; 2 * f - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for k in (f..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            // x^k = x^(k-f) * x^f and x^f = -(m_0 + ... + m_{f-1} x^{f-1})
            for (i, &m) in self.spec.modulus[..f].iter().enumerate() {
                prod[k - f + i] = (prod[k - f + i] + (p - m as u64) * c) % p;
            }
            prod[k] = 0;
        }
        prod[..f]
            .iter()
            .zip(&self.powers)
            .map(|(&c, &w)| c as u32 * w)
            .sum()
    }

    fn pow_slow(&self, a: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_schoolbook(acc, base);
            }
            base = self.mul_schoolbook(base, base);
            e >>= 1;
        }
        acc
    }

    #[inline]
    pub(crate) fn pow_value(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        match &self.tables {
            Some(t) => {
                let n = (self.order - 1) as u64;
                let l = t.log[a as usize] as u64 * (e % n) % n;
                t.exp[l as usize]
            }
            None => self.pow_slow(a, e),
        }
    }

    /// Inverse of a nonzero packed value.
    #[inline]
    pub(crate) fn inv_value(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        Some(match &self.tables {
            Some(t) => {
                let n = self.order - 1;
                t.exp[((n - t.log[a as usize]) % n) as usize]
            }
            None => self.pow_slow(a, self.order as u64 - 2),
        })
    }

    /// a^(p^i): i successive p-th powers.
    pub(crate) fn frobenius_value(&self, a: u32, i: u64) -> u32 {
        let p = self.spec.p as u64;
        let mut x = a;
        for _ in 0..i % self.spec.f as u64 {
            x = self.pow_value(x, p);
        }
        x
    }

    /// Product computed without the log tables; used to cross-check them.
    pub fn mul_reference(&self, a: FieldElement<'_>, b: FieldElement<'_>) -> Result<FieldElement<'_>> {
        same_field(&a, &b)?;
        Ok(self.elem(self.mul_schoolbook(a.value, b.value)))
    }
}

#[inline]
fn same_field(a: &FieldElement<'_>, b: &FieldElement<'_>) -> Result<()> {
    if std::ptr::eq(a.field, b.field) || a.field.spec == b.field.spec {
        Ok(())
    } else {
        Err(Error::SpecMismatch)
    }
}

/// An element of a [`GaloisField`].
///
/// Equality and ordering are only meaningful within one field; elements of
/// different fields never compare equal. The `std::ops` impls panic on mixed
/// fields, the `checked_*` methods return [`Error::SpecMismatch`] instead.
#[derive(Clone, Copy)]
pub struct FieldElement<'a> {
    field: &'a GaloisField,
    value: u32,
}

impl<'a> FieldElement<'a> {
    #[inline]
    pub fn field(&self) -> &'a GaloisField {
        self.field
    }

    /// Packed base-p encoding of the coordinates.
    #[inline]
    pub fn value(&self) -> u32 {
        self.value
    }

    /// Coordinates with respect to the power basis, constant first.
    pub fn coeffs(&self) -> Vec<u32> {
        self.field.unpack(self.value)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.value == 1
    }

    /// True when the element lies in the prime field.
    pub fn is_prime_field(&self) -> bool {
        self.value < self.field.spec.p
    }

    #[inline]
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        same_field(self, other)?;
        Ok(self.field.elem(self.field.add_values(self.value, other.value)))
    }

    #[inline]
    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        same_field(self, other)?;
        Ok(self.field.elem(self.field.sub_values(self.value, other.value)))
    }

    #[inline]
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        same_field(self, other)?;
        Ok(self.field.elem(self.field.mul_values(self.value, other.value)))
    }

    #[inline]
    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        same_field(self, other)?;
        let inv = other.inv()?;
        Ok(self.field.elem(self.field.mul_values(self.value, inv.value)))
    }

    #[inline]
    pub fn inv(&self) -> Result<Self> {
        self.field
            .inv_value(self.value)
            .map(|v| self.field.elem(v))
            .ok_or(Error::ZeroInverse)
    }

    #[inline]
    pub fn pow(&self, e: u64) -> Self {
        self.field.elem(self.field.pow_value(self.value, e))
    }

    /// Multiplication by an integer, through its image in the prime field.
    #[inline]
    pub fn scale(&self, k: i64) -> Self {
        let k = k.rem_euclid(self.field.spec.p as i64) as u32;
        self.field.elem(self.field.scale_value(k, self.value))
    }

    /// `self^(p^i)`, computed by `i` successive p-th powers. Since the
    /// Frobenius has order f, `frobenius(f)` is the identity.
    pub fn frobenius(&self, i: u64) -> Self {
        self.field.elem(self.field.frobenius_value(self.value, i))
    }

    /// Whether the element lies in GF(p^r). Requires r | f.
    pub fn in_subfield(&self, r: u32) -> Result<bool> {
        self.field.check_divides(r)?;
        Ok(self.frobenius(r as u64) == *self)
    }

    /// Trace of GF(p^{2r}) over GF(p^r): `x + x^(p^r)`.
    pub fn quadratic_trace(&self, r: u32) -> Result<Self> {
        let f = self.field.spec.f;
        if r == 0 || !f.is_multiple_of(2 * r) {
            return Err(Error::NotADivisor { r: 2 * r, f });
        }
        if !self.in_subfield(2 * r)? {
            return Err(Error::NotInSubfield {
                p: self.field.spec.p,
                degree: 2 * r,
            });
        }
        Ok(*self + self.frobenius(r as u64))
    }
}

impl PartialEq for FieldElement<'_> {
    #[inline]
    fn eq(&self, other: &Self) -> bool {
        same_field(self, other).is_ok() && self.value == other.value
    }
}

impl Eq for FieldElement<'_> {}

impl Hash for FieldElement<'_> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.value.hash(state);
    }
}

impl PartialOrd for FieldElement<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement<'_> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value.cmp(&other.value)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a> $tr for FieldElement<'a> {
            type Output = FieldElement<'a>;
            #[inline]
            fn $method(self, rhs: Self) -> Self::Output {
                self.$checked(&rhs).expect("arithmetic on field elements")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl<'a> Neg for FieldElement<'a> {
    type Output = FieldElement<'a>;
    #[inline]
    fn neg(self) -> Self::Output {
        self.field.elem(self.field.neg_value(self.value))
    }
}

impl fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs())
    }
}

/// Prints elements as polynomials in `z`, the class of x.
impl fmt::Display for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.spec.f == 1 {
            return write!(f, "{}", self.value);
        }
        let coeffs = self.coeffs();
        let mut terms = Vec::new();
        for (i, &c) in coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let var = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => var,
                _ => format!("{c}{var}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

impl Serialize for FieldElement<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs().serialize(serializer)
    }
}
