//! Hua's identity, the closure lemma for inverse-closed subgroups and the
//! characteristic-zero scalar identity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::GaloisField;
use crate::poly::Scalar;
use crate::rational::Rational;
use crate::subgroup::{AdditiveSubgroup, Budget};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HuaOutcome {
    Holds,
    Fails,
    /// One of the inverses in the identity does not exist.
    Degenerate,
}

/// Evaluates `a - (a^-1 + (b^-1 - a)^-1)^-1` step by step and compares it
/// with `aba`. Requires `a, b != 0`, `ab != 1` and `b^-1 != a`.
pub fn hua_check<T: Scalar>(a: &T, b: &T) -> HuaOutcome {
    if a.is_zero() || b.is_zero() || (a.clone() * b.clone()).is_one() {
        return HuaOutcome::Degenerate;
    }
    let (Some(a_inv), Some(b_inv)) = (a.inverse(), b.inverse()) else {
        return HuaOutcome::Degenerate;
    };
    let Some(inner) = (b_inv - a.clone()).inverse() else {
        return HuaOutcome::Degenerate;
    };
    // cannot vanish once the preconditions hold
    let Some(outer) = (a_inv + inner).inverse() else {
        return HuaOutcome::Fails;
    };
    let lhs = a.clone() - outer;
    let rhs = a.clone() * b.clone() * a.clone();
    if lhs == rhs {
        HuaOutcome::Holds
    } else {
        HuaOutcome::Fails
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct HuaTally {
    pub pairs: u64,
    pub holds: u64,
    pub degenerate: u64,
    pub failures: u64,
    /// First few failing pairs, rendered as text.
    pub failing_pairs: Vec<(String, String)>,
}

impl HuaTally {
    fn record<T: Scalar>(&mut self, a: &T, b: &T) {
        self.pairs += 1;
        match hua_check(a, b) {
            HuaOutcome::Holds => self.holds += 1,
            HuaOutcome::Degenerate => self.degenerate += 1,
            HuaOutcome::Fails => {
                self.failures += 1;
                if self.failing_pairs.len() < 16 {
                    self.failing_pairs.push((a.to_string(), b.to_string()));
                }
            }
        }
    }
}

/// Every ordered pair of field elements, zero included.
pub fn hua_exhaustive(field: &GaloisField, budget: &Budget) -> Result<HuaTally> {
    budget.check_elements(field.order() as u128)?;
    let mut tally = HuaTally::default();
    for a in field.elements() {
        for b in field.elements() {
            tally.record(&a, &b);
        }
    }
    Ok(tally)
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num: i64 = rng.gen_range(-1000..=1000);
    let den: i64 = rng.gen_range(1..=1000);
    Rational::new(num, den).expect("positive denominator")
}

/// `trials` pairs of rationals with numerators in [-1000, 1000] and
/// denominators in [1, 1000], drawn from a seeded ChaCha8 stream.
pub fn hua_random_rationals(trials: u64, seed: u64) -> HuaTally {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = HuaTally::default();
    for _ in 0..trials {
        let a = random_rational(&mut rng);
        // occasionally force ab = 1 so the degenerate branch is exercised
        let b = if rng.gen_bool(0.05) {
            a.inv().unwrap_or_else(|_| Rational::zero())
        } else {
            random_rational(&mut rng)
        };
        tally.record(&a, &b);
    }
    tally
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaViolation {
    /// `square_times`, `triple_product`, `polarization` or
    /// `derived_membership`.
    pub kind: &'static str,
    pub tuple: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub elements: u64,
    pub pairs_checked: u64,
    pub triples_checked: u64,
    pub holds: bool,
    pub violation: Option<LemmaViolation>,
}

/// For inverse-closed `A`: `a^2 b` lies in `A` for all `a, b` in `A`, and for
/// odd `p` so does `abc`. Triples are also checked against
/// `2abc = (a+c)^2 b - a^2 b - c^2 b`, and membership of `abc` read off the
/// right-hand side must agree with direct membership. Stops at the first
/// violation.
pub fn lemma_check(a_group: &AdditiveSubgroup<'_>, budget: &Budget) -> Result<LemmaReport> {
    if !a_group.is_inverse_closed_direct(budget)? {
        return Err(Error::Precondition("subgroup is not inverse-closed".into()));
    }
    let field = a_group.field();
    let mask = a_group.membership();
    let elems: Vec<u32> = a_group.values().collect();
    let sq: Vec<u32> = {
        let mut sq = vec![0; field.order() as usize];
        for &x in &elems {
            sq[x as usize] = field.mul_values(x, x);
        }
        sq
    };
    let tuple = |xs: &[u32]| xs.iter().map(|&x| field.unpack(x)).collect::<Vec<_>>();
    let mut report = LemmaReport {
        elements: elems.len() as u64,
        pairs_checked: 0,
        triples_checked: 0,
        holds: true,
        violation: None,
    };
    let fail = |report: &mut LemmaReport, kind, xs: &[u32]| {
        report.holds = false;
        report.violation = Some(LemmaViolation { kind, tuple: tuple(xs) });
    };

    for &a in &elems {
        for &b in &elems {
            report.pairs_checked += 1;
            if !mask[field.mul_values(sq[a as usize], b) as usize] {
                fail(&mut report, "square_times", &[a, b]);
                return Ok(report);
            }
        }
    }
    if field.p() == 2 {
        return Ok(report);
    }

    // x^2 b for every x in A, indexed by value, refreshed per b
    let mut sq_b = vec![0u32; field.order() as usize];
    for &b in &elems {
        for &x in &elems {
            sq_b[x as usize] = field.mul_values(sq[x as usize], b);
        }
        for &a in &elems {
            let ab = field.mul_values(a, b);
            let a2b = sq_b[a as usize];
            for &c in &elems {
                report.triples_checked += 1;
                let abc = field.mul_values(ab, c);
                let direct = mask[abc as usize];
                if !direct {
                    fail(&mut report, "triple_product", &[a, b, c]);
                    return Ok(report);
                }
                let ac2b = sq_b[field.add_values(a, c) as usize];
                let c2b = sq_b[c as usize];
                let rhs = field.sub_values(field.sub_values(ac2b, a2b), c2b);
                if field.add_values(abc, abc) != rhs {
                    fail(&mut report, "polarization", &[a, b, c]);
                    return Ok(report);
                }
                let derived = mask[ac2b as usize] && mask[a2b as usize] && mask[c2b as usize];
                if derived != direct {
                    fail(&mut report, "derived_membership", &[a, b, c]);
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}

/// Compares `(m n^-1) a` with `m (n a^-1)^-1` exactly.
pub fn char0_scalar_identity_check(a: &Rational, m: i64, n: i64) -> Result<bool> {
    if a.is_zero() {
        return Err(Error::ZeroInverse);
    }
    if n == 0 {
        return Err(Error::ZeroDenominator);
    }
    let m = Rational::from_int(m);
    let n = Rational::from_int(n);
    let lhs = m.clone() * n.inv()? * a.clone();
    let rhs = m * (n * a.inv()?).inv()?;
    Ok(lhs == rhs)
}
