//! Additive subgroups of GF(p^f), i.e. F_p-subspaces, held as reduced row
//! echelon bases so that equal subgroups have identical representations.
//!
//! Coordinates follow the field's power basis; the pivot of a row is its
//! lowest-index nonzero coordinate, pivots strictly increase down the rows,
//! every pivot entry is 1 and pivot columns are zero in all other rows.

use std::cmp::Ordering;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{FieldElement, GaloisField};
use crate::poly::LinearizedPolynomial;

/// Size limits for scans that touch every element or every subspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest set (field or subgroup) that may be scanned elementwise.
    pub max_field_size: u64,
    /// Largest number of subspaces an exhaustive enumeration may visit.
    pub max_subspaces: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_field_size: 1024,
            max_subspaces: 1 << 23,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_field_size: u64::MAX,
            max_subspaces: u64::MAX,
        }
    }

    pub(crate) fn check_elements(&self, count: u128) -> Result<()> {
        if count > self.max_field_size as u128 {
            return Err(Error::BudgetExceeded {
                what: "element count",
                actual: count,
                limit: self.max_field_size as u128,
            });
        }
        Ok(())
    }

    pub(crate) fn check_subspaces(&self, count: u128) -> Result<()> {
        if count > self.max_subspaces as u128 {
            return Err(Error::BudgetExceeded {
                what: "subspace count",
                actual: count,
                limit: self.max_subspaces as u128,
            });
        }
        Ok(())
    }
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    let (mut acc, mut base, mut e) = (1u64, a as u64, p as u64 - 2);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// Incremental reduced row echelon form over Z_p on digit vectors.
struct Echelon {
    p: u32,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn new(p: u32) -> Self {
        Echelon {
            p,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn reduce(&self, v: &mut [u32]) {
        let p = self.p;
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let k = v[c];
            if k != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = ((*x as u64 + (p - k) as u64 * r as u64) % p as u64) as u32;
                }
            }
        }
    }

    /// Adds `v` to the span; returns false if it was already there.
    fn insert(&mut self, mut v: Vec<u32>) -> bool {
        let p = self.p;
        self.reduce(&mut v);
        let Some(c) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let s = inv_mod_p(v[c], p);
        for x in v.iter_mut() {
            *x = (*x as u64 * s as u64 % p as u64) as u32;
        }
        for row in self.rows.iter_mut() {
            let k = row[c];
            if k != 0 {
                for (x, &r) in row.iter_mut().zip(&v) {
                    *x = ((*x as u64 + (p - k) as u64 * r as u64) % p as u64) as u32;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < c);
        self.pivots.insert(at, c);
        self.rows.insert(at, v);
        true
    }
}

/// An F_p-subspace of a finite field.
#[derive(Clone)]
pub struct AdditiveSubgroup<'a> {
    field: &'a GaloisField,
    rows: Vec<u32>,
    pivots: Vec<usize>,
}

impl<'a> AdditiveSubgroup<'a> {
    fn from_echelon(field: &'a GaloisField, e: Echelon) -> Self {
        let rows = e
            .rows
            .iter()
            .map(|r| field.element(r).expect("reduced digits").value())
            .collect();
        AdditiveSubgroup {
            field,
            rows,
            pivots: e.pivots,
        }
    }

    /// Canonical F_p-span of `generators`.
    pub fn span(field: &'a GaloisField, generators: &[FieldElement<'a>]) -> Result<Self> {
        if generators.iter().any(|g| g.field() != field) {
            return Err(Error::SpecMismatch);
        }
        let mut e = Echelon::new(field.p());
        for g in generators {
            e.insert(g.coeffs());
        }
        Ok(Self::from_echelon(field, e))
    }

    /// Span of coordinate rows, e.g. parsed from user input.
    pub fn from_rows(field: &'a GaloisField, rows: &[Vec<u32>]) -> Result<Self> {
        let gens = rows
            .iter()
            .map(|r| field.element(r))
            .collect::<Result<Vec<_>>>()?;
        Self::span(field, &gens)
    }

    fn from_values(field: &'a GaloisField, values: impl IntoIterator<Item = u32>) -> Self {
        let mut e = Echelon::new(field.p());
        for v in values {
            e.insert(field.unpack(v));
        }
        Self::from_echelon(field, e)
    }

    pub fn trivial(field: &'a GaloisField) -> Self {
        AdditiveSubgroup {
            field,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn whole(field: &'a GaloisField) -> Self {
        Self::from_values(field, (0..field.f()).map(|i| field.p().pow(i)))
    }

    /// The subfield GF(p^r), as the kernel of `x -> x^(p^r) - x`.
    pub fn subfield(field: &'a GaloisField, r: u32) -> Result<Self> {
        field.check_divides(r)?;
        Ok(Self::kernel_of(field, |x| {
            field.sub_values(field.frobenius_value(x, r as u64), x)
        }))
    }

    /// Trace-zero elements of GF(p^{2r}) over GF(p^r): the kernel of
    /// `x -> x^(p^r) + x`. Requires 2r | f.
    pub fn trace_zero_kernel(field: &'a GaloisField, r: u32) -> Result<Self> {
        if r == 0 || !field.f().is_multiple_of(2 * r) {
            return Err(Error::NotADivisor { r: 2 * r, f: field.f() });
        }
        Ok(Self::kernel_of(field, |x| {
            field.add_values(field.frobenius_value(x, r as u64), x)
        }))
    }

    /// Kernel of an F_p-linear map of the field, from the images of the
    /// power basis.
    fn kernel_of(field: &'a GaloisField, map: impl Fn(u32) -> u32) -> Self {
        let p = field.p();
        let f = field.f() as usize;
        // rows (image | unit vector); reducing the image half leaves the
        // kernel in the rows whose image vanished
        let mut aug: Vec<Vec<u32>> = (0..f)
            .map(|j| {
                let mut row = field.unpack(map(p.pow(j as u32)));
                row.extend((0..f).map(|i| u32::from(i == j)));
                row
            })
            .collect();
        let mut rank = 0;
        for col in 0..f {
            let Some(piv) = (rank..f).find(|&i| aug[i][col] != 0) else {
                continue;
            };
            aug.swap(rank, piv);
            let s = inv_mod_p(aug[rank][col], p);
            for x in aug[rank].iter_mut() {
                *x = (*x as u64 * s as u64 % p as u64) as u32;
            }
            let pivot_row = aug[rank].clone();
            for (i, row) in aug.iter_mut().enumerate() {
                let k = row[col];
                if i != rank && k != 0 {
                    for (x, &r) in row.iter_mut().zip(&pivot_row) {
                        *x = ((*x as u64 + (p - k) as u64 * r as u64) % p as u64) as u32;
                    }
                }
            }
            rank += 1;
        }
        let mut e = Echelon::new(p);
        for row in &aug[rank..] {
            e.insert(row[f..].to_vec());
        }
        Self::from_echelon(field, e)
    }

    /// Smallest subfield containing `generators`: close the span (with 1
    /// adjoined) under products of basis elements until it stabilises. In a
    /// finite field a subring is a subfield.
    pub fn generated_subfield(field: &'a GaloisField, generators: &[FieldElement<'a>]) -> Result<Self> {
        let mut gens = generators.to_vec();
        gens.push(field.one());
        let mut current = Self::span(field, &gens)?;
        loop {
            let next = current.with_products(&current);
            if next.dim() == current.dim() {
                return Ok(current);
            }
            current = next;
        }
    }

    fn with_products(&self, other: &Self) -> Self {
        let field = self.field;
        let mut e = Echelon::new(field.p());
        for &r in &self.rows {
            e.insert(field.unpack(r));
        }
        for &a in &self.rows {
            for &b in &other.rows {
                e.insert(field.unpack(field.mul_values(a, b)));
            }
        }
        Self::from_echelon(field, e)
    }

    /// F_p-span of all products `ab` with `a, b` in the subgroup. Products of
    /// basis elements suffice by bilinearity.
    pub fn product_set_span(&self) -> Self {
        let field = self.field;
        let values = self
            .rows
            .iter()
            .flat_map(|&a| self.rows.iter().map(move |&b| field.mul_values(a, b)))
            .collect::<Vec<_>>();
        Self::from_values(field, values)
    }

    pub fn field(&self) -> &'a GaloisField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn cardinality(&self) -> u128 {
        (self.field.p() as u128).pow(self.dim() as u32)
    }

    pub fn is_trivial(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Echelon rows as coordinate vectors.
    pub fn basis(&self) -> Vec<Vec<u32>> {
        self.rows.iter().map(|&r| self.field.unpack(r)).collect()
    }

    pub fn basis_elements(&self) -> Vec<FieldElement<'a>> {
        self.rows.iter().map(|&r| self.field.elem(r)).collect()
    }

    pub(crate) fn row_values(&self) -> &[u32] {
        &self.rows
    }

    pub fn contains(&self, x: &FieldElement<'_>) -> Result<bool> {
        if x.field() != self.field {
            return Err(Error::SpecMismatch);
        }
        Ok(self.contains_value(x.value()))
    }

    /// `x` lies in the span iff it equals the combination of rows read off at
    /// the pivot coordinates.
    #[inline]
    pub(crate) fn contains_value(&self, x: u32) -> bool {
        let field = self.field;
        let mut candidate = 0;
        if field.p() == 2 {
            for (&row, &c) in self.rows.iter().zip(&self.pivots) {
                if (x >> c) & 1 == 1 {
                    candidate ^= row;
                }
            }
        } else {
            for (&row, &c) in self.rows.iter().zip(&self.pivots) {
                let k = field.digit(x, c);
                if k != 0 {
                    candidate = field.add_values(candidate, field.scale_value(k, row));
                }
            }
        }
        candidate == x
    }

    /// All `p^dim` elements as packed values, in odometer order over the
    /// coefficients of the basis rows (first row fastest).
    pub(crate) fn values(&self) -> Values<'_> {
        Values {
            field: self.field,
            rows: &self.rows,
            digits: vec![0; self.rows.len()],
            current: 0,
            remaining: self.cardinality(),
        }
    }

    pub fn elements(&self, budget: &Budget) -> Result<impl Iterator<Item = FieldElement<'a>> + '_> {
        budget.check_elements(self.cardinality())?;
        let field = self.field;
        Ok(self.values().map(move |v| field.elem(v)))
    }

    /// Membership bitmap indexed by packed value.
    pub(crate) fn membership(&self) -> Vec<bool> {
        let mut mask = vec![false; self.field.order() as usize];
        for v in self.values() {
            mask[v as usize] = true;
        }
        mask
    }

    /// Whether `a^-1` lies in the subgroup for every nonzero `a` in it.
    pub fn is_inverse_closed_direct(&self, budget: &Budget) -> Result<bool> {
        budget.check_elements(self.cardinality())?;
        Ok(self.inverse_closed_unchecked())
    }

    pub(crate) fn inverse_closed_unchecked(&self) -> bool {
        let field = self.field;
        self.values().skip(1).all(|a| {
            let inv = field.inv_value(a).expect("nonzero");
            self.contains_value(inv)
        })
    }

    /// The monic p-polynomial whose roots are exactly the subgroup, by
    /// `f_{V+<b>}(x) = f_V(x)^p - f_V(b)^(p-1) f_V(x)` starting from `x`.
    pub fn subspace_polynomial(&self, budget: &Budget) -> Result<LinearizedPolynomial<'a>> {
        budget.check_elements(self.cardinality())?;
        Ok(self.subspace_polynomial_unchecked())
    }

    pub(crate) fn subspace_polynomial_unchecked(&self) -> LinearizedPolynomial<'a> {
        let field = self.field;
        let p = field.p() as u64;
        let mut poly = LinearizedPolynomial::identity(field);
        for &b in &self.rows {
            let at_b = field.elem(poly.evaluate_value(b));
            let scale = at_b.pow(p - 1);
            poly = poly
                .pth_power()
                .sub(&poly.scale(&scale))
                .expect("single field");
        }
        poly
    }

    /// Inverse-closedness read off the subspace polynomial: `f_A(x)/x` must
    /// be self-reciprocal. The trivial subgroup counts as inverse-closed.
    pub fn is_inverse_closed_poly(&self, budget: &Budget) -> Result<bool> {
        budget.check_elements(self.cardinality())?;
        Ok(self.inverse_closed_poly_unchecked())
    }

    pub(crate) fn inverse_closed_poly_unchecked(&self) -> bool {
        if self.is_trivial() {
            return true;
        }
        let fa = self.subspace_polynomial_unchecked().to_dense();
        let quotient = fa.divide_by_x().expect("0 is a root of f_A");
        quotient
            .is_self_reciprocal()
            .expect("roots of f_A are simple, so f_A(x)/x has nonzero constant term")
    }

    /// Contains 1 and is closed under products of basis elements.
    pub fn is_subfield(&self) -> bool {
        if !self.contains_value(1) {
            return false;
        }
        let field = self.field;
        self.rows
            .iter()
            .all(|&a| self.rows.iter().all(|&b| self.contains_value(field.mul_values(a, b))))
    }
}

pub(crate) struct Values<'s> {
    field: &'s GaloisField,
    rows: &'s [u32],
    digits: Vec<u32>,
    current: u32,
    remaining: u128,
}

impl Iterator for Values<'_> {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let out = self.current;
        let p = self.field.p();
        // every touched digit adds its row once; a wrap from p-1 to 0 adds
        // the p-th copy, which is zero
        for (k, &row) in self.rows.iter().enumerate() {
            self.current = self.field.add_values(self.current, row);
            self.digits[k] += 1;
            if self.digits[k] < p {
                break;
            }
            self.digits[k] = 0;
        }
        Some(out)
    }
}

impl PartialEq for AdditiveSubgroup<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.rows == other.rows
    }
}

impl Eq for AdditiveSubgroup<'_> {}

impl PartialOrd for AdditiveSubgroup<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Dimension first, then the basis rows.
impl Ord for AdditiveSubgroup<'_> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim()
            .cmp(&other.dim())
            .then_with(|| self.basis().cmp(&other.basis()))
    }
}

impl fmt::Debug for AdditiveSubgroup<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AdditiveSubgroup(dim={}, basis={:?})", self.dim(), self.basis())
    }
}

/// `{"dim": d, "basis": [[...], ...]}`
impl Serialize for AdditiveSubgroup<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("AdditiveSubgroup", 2)?;
        s.serialize_field("dim", &self.dim())?;
        s.serialize_field("basis", &self.basis())?;
        s.end()
    }
}

/// Number of `k`-dimensional subspaces of an `n`-dimensional space over
/// F_p, saturating at `u128::MAX`.
pub fn gaussian_binomial(n: u32, k: u32, p: u32) -> u128 {
    if k > n {
        return 0;
    }
    let p = p as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        let num = p.checked_pow(n - i).map(|x| x - 1);
        let den = p.pow(i + 1) - 1;
        // acc * num / den is again a Gaussian binomial, hence exact
        match num.and_then(|num| acc.checked_mul(num)) {
            Some(x) => acc = x / den,
            None => return u128::MAX,
        }
    }
    acc
}

pub fn total_subspaces(p: u32, f: u32) -> u128 {
    (0..=f).fold(0u128, |acc, k| acc.saturating_add(gaussian_binomial(f, k, p)))
}

/// `k`-subsets of `0..n` in lexicographic order.
pub fn pivot_sets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Every subspace with one fixed set of pivot columns. Free entries (the
/// non-pivot columns to the right of each row's pivot) run in odometer order,
/// the last free entry fastest.
pub struct PivotSetIter<'a> {
    field: &'a GaloisField,
    pivots: Vec<usize>,
    slots: Vec<(usize, usize)>,
    values: Vec<u32>,
    done: bool,
}

impl<'a> PivotSetIter<'a> {
    pub fn new(field: &'a GaloisField, pivots: Vec<usize>) -> Self {
        let f = field.f() as usize;
        let slots = pivots
            .iter()
            .enumerate()
            .flat_map(|(row, &c)| {
                let pivots = &pivots;
                (c + 1..f)
                    .filter(move |col| !pivots.contains(col))
                    .map(move |col| (row, col))
            })
            .collect::<Vec<_>>();
        PivotSetIter {
            field,
            values: vec![0; slots.len()],
            pivots,
            slots,
            done: false,
        }
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Number of subspaces this iterator yields in total.
    pub fn len_total(&self) -> u128 {
        (self.field.p() as u128).pow(self.slots.len() as u32)
    }
}

impl<'a> Iterator for PivotSetIter<'a> {
    type Item = AdditiveSubgroup<'a>;

    fn next(&mut self) -> Option<AdditiveSubgroup<'a>> {
        if self.done {
            return None;
        }
        let field = self.field;
        let mut rows: Vec<u32> = self.pivots.iter().map(|&c| field.p().pow(c as u32)).collect();
        for (&(row, col), &v) in self.slots.iter().zip(&self.values) {
            rows[row] += v * field.p().pow(col as u32);
        }
        let out = AdditiveSubgroup {
            field,
            rows,
            pivots: self.pivots.clone(),
        };
        let p = field.p();
        let mut i = self.values.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.values[i] += 1;
            if self.values[i] < p {
                break;
            }
            self.values[i] = 0;
        }
        Some(out)
    }
}

/// All subspaces of one dimension, pivot sets in lexicographic order.
pub struct SubgroupIterator<'a> {
    field: &'a GaloisField,
    dim: usize,
    parts: std::vec::IntoIter<PivotSetIter<'a>>,
    current: Option<PivotSetIter<'a>>,
}

impl<'a> SubgroupIterator<'a> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &'a GaloisField {
        self.field
    }

    /// Splits the remaining enumeration into disjoint per-pivot-set parts,
    /// in enumeration order.
    pub fn split(self) -> Vec<PivotSetIter<'a>> {
        self.current.into_iter().chain(self.parts).collect()
    }
}

impl<'a> Iterator for SubgroupIterator<'a> {
    type Item = AdditiveSubgroup<'a>;

    fn next(&mut self) -> Option<AdditiveSubgroup<'a>> {
        loop {
            if let Some(it) = self.current.as_mut() {
                if let Some(s) = it.next() {
                    return Some(s);
                }
            }
            self.current = Some(self.parts.next()?);
        }
    }
}

/// Every `dim`-dimensional subspace exactly once, via canonical echelon forms.
pub fn enumerate_subspaces<'a>(field: &'a GaloisField, dim: usize, budget: &Budget) -> Result<SubgroupIterator<'a>> {
    let f = field.f() as usize;
    if dim > f {
        return Err(Error::Precondition(format!("dimension {dim} exceeds degree {f}")));
    }
    budget.check_subspaces(gaussian_binomial(f as u32, dim as u32, field.p()))?;
    let parts: Vec<_> = pivot_sets(f, dim)
        .into_iter()
        .map(|ps| PivotSetIter::new(field, ps))
        .collect();
    Ok(SubgroupIterator {
        field,
        dim,
        parts: parts.into_iter(),
        current: None,
    })
}
