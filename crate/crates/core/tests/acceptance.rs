//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Runs without the libtest harness so the summary lines are always shown.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::Instant;

use invclosed::cli::default_fields;
use invclosed::verifier::{
    char2_counterexample_dimension, char2_theorem_check, hua_exhaustive, hua_random_rationals, lemma_check,
    product_set_subfield_check, verify_theorem_finite, VerificationReport,
};
use invclosed::{enumerate_subspaces, AdditiveSubgroup, Budget, DensePolynomial, FieldElement, GaloisField};

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn name(field: &GaloisField) -> String {
    format!("GF({}^{})", field.p(), field.f())
}

/// Reports for every field of the default configuration, computed once.
struct Sweep {
    fields: Vec<GaloisField>,
    reports: Vec<VerificationReport>,
    seconds: f64,
}

impl Sweep {
    fn run() -> Result<Self, String> {
        let start = Instant::now();
        let budget = Budget::default();
        let mut fields = Vec::new();
        let mut reports = Vec::new();
        for (p, f) in default_fields(512) {
            let field = GaloisField::with_degree(p, f).map_err(|e| e.to_string())?;
            let report = verify_theorem_finite(&field, &budget).map_err(|e| format!("{}: {e}", name(&field)))?;
            fields.push(field);
            reports.push(report);
        }
        Ok(Sweep {
            fields,
            reports,
            seconds: start.elapsed().as_secs_f64(),
        })
    }

    fn closed_subgroups(&self) -> impl Iterator<Item = (&GaloisField, AdditiveSubgroup<'_>, &'static str, u32)> + '_ {
        self.fields.iter().zip(&self.reports).flat_map(|(field, report)| {
            report.inverse_closed.iter().map(move |c| {
                let a = AdditiveSubgroup::from_rows(field, &c.basis).expect("reported basis is valid");
                (field, a, c.kind, c.r)
            })
        })
    }
}

fn element_set<'a>(a: &AdditiveSubgroup<'a>) -> BTreeSet<FieldElement<'a>> {
    a.elements(&Budget::unlimited()).expect("unlimited").collect()
}

fn brute_inverse_closed(a: &AdditiveSubgroup<'_>) -> bool {
    let set = element_set(a);
    set.iter().filter(|x| !x.is_zero()).all(|x| set.contains(&x.inv().unwrap()))
}

fn count_divisors(n: u32) -> u64 {
    (1..=n).filter(|r| n.is_multiple_of(*r)).count() as u64
}

fn criterion_1(sweep: &Sweep) -> Check {
    let mut nontrivial = 0;
    for (field, a, kind, r) in sweep.closed_subgroups() {
        let (p, f) = (field.p(), field.f());
        ensure(brute_inverse_closed(&a), || format!("{}: reported subgroup is not inverse-closed", name(field)))?;
        let elems = element_set(&a);
        match kind {
            "Trivial" => ensure(a.is_trivial(), || "Trivial label on a non-trivial subgroup".into())?,
            "Subfield" => {
                ensure(r >= 1 && f % r == 0, || format!("{}: Subfield({r}) with r not dividing f", name(field)))?;
                let q = (p as u64).pow(r);
                let expected: BTreeSet<_> = field.elements().filter(|x| x.pow(q) == *x).collect();
                ensure(elems == expected, || format!("{}: Subfield({r}) does not match x^q = x", name(field)))?;
                nontrivial += 1;
            }
            "TraceZeroKernel" => {
                ensure(p != 2, || format!("{}: trace-zero kernel reported in characteristic 2", name(field)))?;
                ensure(r >= 1 && f % (2 * r) == 0, || format!("{}: TraceZeroKernel({r}) with 2r not dividing f", name(field)))?;
                let q = (p as u64).pow(r);
                let expected: BTreeSet<_> = field.elements().filter(|x| (x.pow(q) + *x).is_zero()).collect();
                ensure(elems == expected, || format!("{}: TraceZeroKernel({r}) does not match x^q = -x", name(field)))?;
                nontrivial += 1;
            }
            other => return Err(format!("{}: unexpected classification {other}", name(field))),
        }
    }
    for (field, report) in sweep.fields.iter().zip(&sweep.reports) {
        ensure(report.violations.is_empty(), || format!("{}: violations {:?}", name(field), report.violations))?;
    }
    Ok(format!(
        "{} fields, {} non-trivial inverse-closed subgroups, all classified; sweep took {:.1}s",
        sweep.fields.len(),
        nontrivial,
        sweep.seconds
    ))
}

fn criterion_2(sweep: &Sweep) -> Check {
    for (field, report) in sweep.fields.iter().zip(&sweep.reports) {
        let (p, f) = (field.p(), field.f());
        let kernels = if p % 2 == 1 { (1..=f).filter(|r| f % (2 * r) == 0).count() as u64 } else { 0 };
        let expected = count_divisors(f) + kernels;
        ensure(report.found == expected && report.predicted == expected, || {
            format!("{}: found {} predicted {} expected {expected}", name(field), report.found, report.predicted)
        })?;
    }
    let found = |p: u32, f: u32| {
        sweep
            .reports
            .iter()
            .find(|r| r.p == p && r.f == f)
            .map(|r| r.found)
    };
    let anchors = [(3, 2, 3), (3, 4, 5), (2, 4, 3), (2, 8, 4)];
    for (p, f, n) in anchors {
        ensure(found(p, f) == Some(n), || format!("GF({p}^{f}) found {:?}, expected {n}", found(p, f)))?;
    }
    Ok(format!("census matches on {} fields; GF(9)=3, GF(81)=5, GF(16)=3, GF(256)=4", sweep.fields.len()))
}

/// Subspace count from the product formula, independent of the library.
fn gaussian_count(n: u32, k: u32, p: u64) -> u64 {
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..k {
        num *= (p as u128).pow(n - i) - 1;
        den *= (p as u128).pow(i + 1) - 1;
    }
    (num / den) as u64
}

fn criterion_3() -> Check {
    let budget = Budget::default();
    let mut total = 0u64;
    for (p, f) in default_fields(256) {
        let field = GaloisField::with_degree(p, f).map_err(|e| e.to_string())?;
        for dim in 0..=f {
            let mut count = 0;
            for a in enumerate_subspaces(&field, dim as usize, &budget).map_err(|e| e.to_string())? {
                count += 1;
                let direct = a.is_inverse_closed_direct(&budget).map_err(|e| e.to_string())?;
                let poly = a.is_inverse_closed_poly(&budget).map_err(|e| e.to_string())?;
                ensure(direct == poly, || format!("{}: oracles disagree on {:?}", name(&field), a.basis()))?;
            }
            ensure(count == gaussian_count(f, dim, p as u64), || {
                format!("{}: {count} subspaces of dimension {dim}", name(&field))
            })?;
            total += count;
        }
    }
    Ok(format!("direct and polynomial tests agree on all {total} subspaces of fields up to order 256"))
}

fn criterion_4() -> Check {
    let budget = Budget::default();
    let mut pairs = 0;
    let mut fields = 0;
    for (p, f) in default_fields(128) {
        let field = GaloisField::with_degree(p, f).map_err(|e| e.to_string())?;
        let tally = hua_exhaustive(&field, &budget).map_err(|e| e.to_string())?;
        ensure(tally.failures == 0, || format!("{}: {} failures", name(&field), tally.failures))?;
        let order = field.order();
        ensure(tally.pairs == order * order, || format!("{}: {} pairs scanned", name(&field), tally.pairs))?;
        // pairs with a zero, plus pairs with ab = 1
        ensure(tally.degenerate == 2 * order - 1 + (order - 1), || {
            format!("{}: {} degenerate pairs", name(&field), tally.degenerate)
        })?;
        pairs += tally.pairs;
        fields += 1;
    }
    let rationals = hua_random_rationals(10_000, 20_240_601);
    ensure(rationals.failures == 0 && rationals.pairs == 10_000, || format!("rationals: {rationals:?}"))?;
    Ok(format!(
        "0 failures over {pairs} pairs in {fields} fields and 10000 rational pairs ({} degenerate)",
        rationals.degenerate
    ))
}

fn criterion_5(sweep: &Sweep) -> Check {
    let budget = Budget::default();
    let mut checked = 0;
    let mut triples = 0u64;
    for (field, a, _, _) in sweep.closed_subgroups() {
        if a.cardinality() > 729 {
            continue;
        }
        let report = lemma_check(&a, &budget).map_err(|e| e.to_string())?;
        ensure(report.holds, || format!("{}: {:?}", name(field), report.violation))?;
        let n = a.cardinality() as u64;
        ensure(report.pairs_checked == n * n, || "pair count".into())?;
        if field.p() != 2 {
            ensure(report.triples_checked == n * n * n, || "triple count".into())?;
        }
        triples += report.triples_checked;
        checked += 1;
    }
    Ok(format!("{checked} inverse-closed subgroups, {triples} triples, no violations"))
}

/// `prod (x - a)` over `a` in `A`, expanded one linear factor at a time.
fn product_polynomial<'a>(field: &'a GaloisField, elems: &[FieldElement<'a>]) -> Vec<FieldElement<'a>> {
    let mut c = vec![field.one()];
    for &a in elems {
        c.push(field.zero());
        for i in (1..c.len()).rev() {
            c[i] = c[i - 1] - a * c[i];
        }
        c[0] = -(a * c[0]);
    }
    c
}

fn criterion_6() -> Check {
    let budget = Budget::default();
    let mut checked = 0u64;
    for (p, f) in default_fields(512) {
        let field = GaloisField::with_degree(p, f).map_err(|e| e.to_string())?;
        let x_q_minus_x = DensePolynomial::field_polynomial(&field);
        let max_dim = (0..=f).take_while(|&d| (p as u64).pow(d) <= 64).last().unwrap_or(0);
        for dim in 0..=max_dim {
            for a in enumerate_subspaces(&field, dim as usize, &budget).map_err(|e| e.to_string())? {
                let fa = a.subspace_polynomial(&budget).map_err(|e| e.to_string())?;
                let dense = fa.to_dense();
                let elems: Vec<_> = a.elements(&budget).map_err(|e| e.to_string())?.collect();
                let product = product_polynomial(&field, &elems);
                ensure(dense.coeffs() == product.as_slice(), || {
                    format!("{}: recursion and product differ on {:?}", name(&field), a.basis())
                })?;
                ensure(dense.is_monic() && dense.is_p_polynomial(), || format!("{}: f_A not a monic p-polynomial", name(&field)))?;
                ensure(dense.divides(&x_q_minus_x).map_err(|e| e.to_string())?, || {
                    format!("{}: f_A does not divide x^q - x", name(&field))
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("recursion equals product on {checked} subgroups of at most 64 elements"))
}

fn criterion_7(sweep: &Sweep) -> Check {
    let budget = Budget::default();
    let mut checked = 0;
    for (field, a, kind, _) in sweep.closed_subgroups() {
        if field.p() == 2 || kind == "Trivial" {
            continue;
        }
        let ok = product_set_subfield_check(&a, &budget).map_err(|e| e.to_string())?;
        ensure(ok, || format!("{}: product set structure fails on {:?}", name(field), a.basis()))?;
        checked += 1;
    }
    Ok(format!("{checked} subgroups in odd characteristic: products form a subfield K and A = Ka"))
}

fn criterion_8(sweep: &Sweep) -> Check {
    let budget = Budget::default();
    let mut checked = 0;
    for (field, a, _, _) in sweep.closed_subgroups() {
        if field.p() != 2 {
            continue;
        }
        let ok = char2_theorem_check(&a, &budget).map_err(|e| e.to_string())?;
        ensure(ok, || format!("{}: not a vector space over its generated subfield", name(field)))?;
        checked += 1;
    }
    Ok(format!("{checked} subgroups in characteristic 2 are vector spaces over their generated subfield"))
}

fn criterion_9() -> Check {
    let dims: Vec<usize> = [4, 3, 1]
        .iter()
        .map(|&n| char2_counterexample_dimension(n).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    ensure(dims == [7, 4, 1], || format!("dimensions {dims:?}"))?;
    Ok("dimensions 7, 4, 1 for n = 4, 3, 1".into())
}

fn run_verify(workers: &str, fields: &[&str]) -> Result<Vec<u8>, String> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_invclosed"));
    cmd.args(["verify", "--workers", workers, "--seed", "7", "--format", "json"]);
    for f in fields {
        cmd.args(["--field", f]);
    }
    let out = cmd.output().map_err(|e| e.to_string())?;
    ensure(out.status.success(), || String::from_utf8_lossy(&out.stderr).into_owned())?;
    Ok(out.stdout)
}

fn criterion_10() -> Check {
    let fields = ["4", "9", "16", "25", "27", "64", "81", "125", "243", "256", "343"];
    let one = run_verify("1", &fields)?;
    let four = run_verify("4", &fields)?;
    ensure(one == four, || "reports differ between 1 and 4 workers".into())?;
    Ok(format!("{} identical bytes with 1 and 4 workers", one.len()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let sweep = Sweep::run();
    let with_sweep = |f: fn(&Sweep) -> Check| -> Check {
        match &sweep {
            Ok(s) => f(s),
            Err(e) => Err(format!("sweep failed: {e}")),
        }
    };
    let criteria: Vec<(u32, Box<dyn Fn() -> Check + '_>)> = vec![
        (1, Box::new(|| with_sweep(criterion_1))),
        (2, Box::new(|| with_sweep(criterion_2))),
        (3, Box::new(criterion_3)),
        (4, Box::new(criterion_4)),
        (5, Box::new(|| with_sweep(criterion_5))),
        (6, Box::new(criterion_6)),
        (7, Box::new(|| with_sweep(criterion_7))),
        (8, Box::new(|| with_sweep(criterion_8))),
        (9, Box::new(criterion_9)),
        (10, Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (n, check) in criteria {
        let t = Instant::now();
        match check() {
            Ok(msg) => println!("[PASS] criterion {n}: {msg} ({:.1}s)", t.elapsed().as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] criterion {n}: {msg}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        10 - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
