//! Classification of inverse-closed additive subgroups and the exhaustive
//! sweep over every subspace of a field.
//!
//! A non-trivial inverse-closed subgroup A of GF(p^f) has a subspace
//! polynomial of the form `x^(p^r) - x` (A is the subfield GF(p^r)) or
//! `x^(p^r) + x` (A is the trace-zero kernel of GF(p^{2r}) / GF(p^r)). Any other
//! shape is reported as a theorem violation and aborts the sweep.

mod identities;
pub mod monomial;
mod structure;

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, GaloisField};
use crate::subgroup::{enumerate_subspaces, total_subspaces, AdditiveSubgroup, Budget, PivotSetIter};
use crate::zp::divisors;

pub use identities::{
    char0_scalar_identity_check, hua_check, hua_exhaustive, hua_random_rationals, lemma_check, HuaOutcome, HuaTally,
    LemmaReport, LemmaViolation,
};
pub use monomial::{char2_counterexample_dimension, counterexample_span, CounterexampleSpan, Monomial, SquareFreeMonomialAlgebra};
pub use structure::{char2_theorem_check, product_set_subfield_check};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassificationKind {
    Trivial,
    Subfield(u32),
    TraceZeroKernel(u32),
    NotInverseClosed,
}

impl ClassificationKind {
    pub fn name(&self) -> &'static str {
        match self {
            ClassificationKind::Trivial => "Trivial",
            ClassificationKind::Subfield(_) => "Subfield",
            ClassificationKind::TraceZeroKernel(_) => "TraceZeroKernel",
            ClassificationKind::NotInverseClosed => "NotInverseClosed",
        }
    }

    /// The `r` of GF(p^r); 0 when not applicable.
    pub fn r(&self) -> u32 {
        match self {
            ClassificationKind::Subfield(r) | ClassificationKind::TraceZeroKernel(r) => *r,
            _ => 0,
        }
    }
}

impl fmt::Display for ClassificationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassificationKind::Subfield(r) | ClassificationKind::TraceZeroKernel(r) => {
                write!(f, "{}({r})", self.name())
            }
            _ => write!(f, "{}", self.name()),
        }
    }
}

fn violation(a: &AdditiveSubgroup<'_>, what: impl fmt::Display) -> Error {
    Error::TheoremViolation(format!(
        "{what}; subgroup {}",
        serde_json::to_string(a).expect("serializable")
    ))
}

pub fn classify(a: &AdditiveSubgroup<'_>, budget: &Budget) -> Result<ClassificationKind> {
    if a.is_trivial() {
        return Ok(ClassificationKind::Trivial);
    }
    if !a.is_inverse_closed_direct(budget)? {
        return Ok(ClassificationKind::NotInverseClosed);
    }
    classify_closed(a)
}

/// Classifies a subgroup already known to be non-trivial and inverse-closed.
pub(crate) fn classify_closed(a: &AdditiveSubgroup<'_>) -> Result<ClassificationKind> {
    let field = a.field();
    let fa = a.subspace_polynomial_unchecked();
    let Some((r, c)) = fa.as_binomial() else {
        return Err(violation(a, format_args!("f_A = {fa} is not a binomial x^(p^r) +- x")));
    };
    let r = r as u32;
    if c == -field.one() {
        let sub = AdditiveSubgroup::subfield(field, r).map_err(|e| violation(a, format_args!("f_A = {fa}: {e}")))?;
        if !a.is_subfield() || sub != *a {
            return Err(violation(a, format_args!("f_A = {fa} but A is not GF(p^{r})")));
        }
        Ok(ClassificationKind::Subfield(r))
    } else if c.is_one() {
        let kernel =
            AdditiveSubgroup::trace_zero_kernel(field, r).map_err(|e| violation(a, format_args!("f_A = {fa}: {e}")))?;
        if kernel != *a {
            return Err(violation(a, format_args!("f_A = {fa} but A is not the trace-zero kernel")));
        }
        Ok(ClassificationKind::TraceZeroKernel(r))
    } else {
        Err(violation(a, format_args!("f_A = {fa} has constant coefficient other than +-1")))
    }
}

/// Expected number of non-trivial inverse-closed subgroups of GF(p^f):
/// one subfield per divisor r of f, plus for odd p one trace-zero kernel per
/// r with 2r | f. The two families are disjoint for odd p since kernels miss 1.
/// This is a consequence of the classification, checked against enumeration.
pub fn predicted_count(p: u32, f: u32) -> u64 {
    let subfields = divisors(f).len() as u64;
    let kernels = if p != 2 && f.is_multiple_of(2) { divisors(f / 2).len() as u64 } else { 0 };
    subfields + kernels
}

pub const PREDICTED_NOTE: &str = "derived census: #{r : r | f} + (p odd ? #{r : 2r | f} : 0)";

/// One inverse-closed subgroup with its verdict.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ClassifiedSubgroup {
    pub dim: usize,
    pub basis: Vec<Vec<u32>>,
    pub kind: &'static str,
    pub r: u32,
}

impl ClassifiedSubgroup {
    fn new(a: &AdditiveSubgroup<'_>, kind: ClassificationKind) -> Self {
        ClassifiedSubgroup {
            dim: a.dim(),
            basis: a.basis(),
            kind: kind.name(),
            r: kind.r(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub kind: String,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<u32>>>,
}

/// Result of sweeping every subspace of one field.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub p: u32,
    pub f: u32,
    pub modulus: Vec<u32>,
    pub subspaces_scanned: u64,
    pub inverse_closed: Vec<ClassifiedSubgroup>,
    pub tallies: BTreeMap<&'static str, u64>,
    pub predicted: u64,
    pub predicted_note: &'static str,
    pub found: u64,
    pub violations: Vec<Violation>,
    /// Not serialized, so reports are reproducible byte for byte.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl VerificationReport {
    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.p,
            f: self.f,
            modulus: self.modulus.clone(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Default)]
struct Partial {
    scanned: u64,
    closed: Vec<ClassifiedSubgroup>,
    violations: Vec<Violation>,
}

fn scan_part(part: PivotSetIter<'_>) -> Result<Partial> {
    let mut out = Partial::default();
    for a in part {
        out.scanned += 1;
        let direct = a.inverse_closed_unchecked();
        let via_poly = a.inverse_closed_poly_unchecked();
        if direct != via_poly {
            out.violations.push(Violation {
                kind: "oracle_disagreement".into(),
                detail: format!("direct test says {direct}, polynomial test says {via_poly}"),
                dim: Some(a.dim()),
                basis: Some(a.basis()),
            });
        }
        if !direct {
            continue;
        }
        let kind = if a.is_trivial() {
            ClassificationKind::Trivial
        } else {
            classify_closed(&a)?
        };
        out.closed.push(ClassifiedSubgroup::new(&a, kind));
    }
    Ok(out)
}

/// Enumerates every subspace of `field`, tests inverse-closedness directly
/// and through the subspace polynomial, classifies the closed ones and
/// compares their number with [`predicted_count`].
///
/// Parts of the enumeration (one per pivot-column set) run on the current
/// rayon pool; results are merged and sorted, so the report does not depend
/// on the number of workers.
pub fn verify_theorem_finite(field: &GaloisField, budget: &Budget) -> Result<VerificationReport> {
    let start = Instant::now();
    budget.check_elements(field.order() as u128)?;
    budget.check_subspaces(total_subspaces(field.p(), field.f()))?;
    let f = field.f() as usize;
    let mut parts = Vec::new();
    for dim in 0..=f {
        parts.extend(enumerate_subspaces(field, dim, budget)?.split());
    }
    let partials = parts.into_par_iter().map(scan_part).collect::<Result<Vec<_>>>()?;

    let mut scanned = 0;
    let mut closed = Vec::new();
    let mut violations = Vec::new();
    for part in partials {
        scanned += part.scanned;
        closed.extend(part.closed);
        violations.extend(part.violations);
    }
    closed.sort();
    violations.sort();

    let mut tallies = BTreeMap::new();
    for c in &closed {
        *tallies.entry(c.kind).or_insert(0) += 1;
    }
    let found = closed.iter().filter(|c| c.kind != "Trivial").count() as u64;
    let predicted = predicted_count(field.p(), field.f());
    if found != predicted {
        violations.push(Violation {
            kind: "census_mismatch".into(),
            detail: format!("found {found} non-trivial inverse-closed subgroups, predicted {predicted}"),
            dim: None,
            basis: None,
        });
    }
    let spec = field.spec();
    Ok(VerificationReport {
        p: spec.p,
        f: spec.f,
        modulus: spec.modulus.clone(),
        subspaces_scanned: scanned,
        inverse_closed: closed,
        tallies,
        predicted,
        predicted_note: PREDICTED_NOTE,
        found,
        violations,
        wall_time: start.elapsed(),
    })
}
