//! Structural consequences of inverse-closedness: the product set is a
//! subfield K with A = K a in odd characteristic, and in characteristic 2 A
//! is a vector space over a subfield.

use crate::error::{Error, Result};
use crate::subgroup::{AdditiveSubgroup, Budget};

/// For odd `p` and non-trivial inverse-closed `A`: the literal set
/// `{ab : a, b in A}` equals the span of products and is a subfield `K`, and
/// for the first basis element `a`, `A = {ka : k in K}` with `a^2` in `K`.
pub fn product_set_subfield_check(a_group: &AdditiveSubgroup<'_>, budget: &Budget) -> Result<bool> {
    let field = a_group.field();
    if field.p() == 2 {
        return Err(Error::Precondition("characteristic must be odd".into()));
    }
    if a_group.is_trivial() {
        return Err(Error::Precondition("subgroup is trivial".into()));
    }
    if !a_group.is_inverse_closed_direct(budget)? {
        return Err(Error::Precondition("subgroup is not inverse-closed".into()));
    }
    let order = field.order() as usize;
    let elems: Vec<u32> = a_group.values().collect();
    let mut products = vec![false; order];
    for &x in &elems {
        for &y in &elems {
            products[field.mul_values(x, y) as usize] = true;
        }
    }
    let k = a_group.product_set_span();
    if products != k.membership() || !k.is_subfield() {
        return Ok(false);
    }

    let a = a_group.row_values()[0];
    let mut multiples = vec![false; order];
    for s in k.values() {
        multiples[field.mul_values(s, a) as usize] = true;
    }
    Ok(multiples == a_group.membership() && k.contains_value(field.mul_values(a, a)))
}

/// For `p = 2` and inverse-closed `A`: with `F` the subfield generated by
/// `A`, `A` lies in `F` and is closed under multiplication by `F`. Squaring
/// is onto in a finite field, so this is the `F^2`-subspace condition.
pub fn char2_theorem_check(a_group: &AdditiveSubgroup<'_>, budget: &Budget) -> Result<bool> {
    let field = a_group.field();
    if field.p() != 2 {
        return Err(Error::Precondition("characteristic must be 2".into()));
    }
    if !a_group.is_inverse_closed_direct(budget)? {
        return Err(Error::Precondition("subgroup is not inverse-closed".into()));
    }
    let f_sub = AdditiveSubgroup::generated_subfield(field, &a_group.basis_elements())?;
    budget.check_elements(f_sub.cardinality())?;
    if !a_group.row_values().iter().all(|&a| f_sub.contains_value(a)) {
        return Ok(false);
    }
    let mask = a_group.membership();
    let elems: Vec<u32> = a_group.values().collect();
    Ok(f_sub
        .values()
        .all(|s| elems.iter().all(|&a| mask[field.mul_values(s, a) as usize])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GaloisField;
    use crate::subgroup::enumerate_subspaces;

    #[test]
    fn odd_examples() {
        let b = Budget::default();
        let gf9 = GaloisField::with_degree(3, 2).unwrap();
        let prime = AdditiveSubgroup::subfield(&gf9, 1).unwrap();
        assert!(product_set_subfield_check(&prime, &b).unwrap());
        let k = AdditiveSubgroup::trace_zero_kernel(&gf9, 1).unwrap();
        assert_eq!(k.product_set_span(), prime);
        assert!(product_set_subfield_check(&k, &b).unwrap());
        let a = k.basis_elements()[0];
        assert_eq!(a * a, -gf9.one());

        let gf81 = GaloisField::with_degree(3, 4).unwrap();
        let k2 = AdditiveSubgroup::trace_zero_kernel(&gf81, 2).unwrap();
        assert_eq!(k2.product_set_span(), AdditiveSubgroup::subfield(&gf81, 2).unwrap());
        assert!(product_set_subfield_check(&k2, &b).unwrap());

        assert!(product_set_subfield_check(&AdditiveSubgroup::trivial(&gf9), &b).is_err());
        let line = AdditiveSubgroup::from_rows(&gf9, &[vec![1, 1]]).unwrap();
        assert!(product_set_subfield_check(&line, &b).is_err());
    }

    #[test]
    fn char2_examples() {
        let b = Budget::default();
        let gf16 = GaloisField::with_degree(2, 4).unwrap();
        assert!(char2_theorem_check(&AdditiveSubgroup::trivial(&gf16), &b).unwrap());
        let gf4 = AdditiveSubgroup::subfield(&gf16, 2).unwrap();
        assert!(char2_theorem_check(&gf4, &b).unwrap());
        assert_eq!(
            AdditiveSubgroup::generated_subfield(&gf16, &gf4.basis_elements()).unwrap(),
            gf4
        );
        let gf9 = GaloisField::with_degree(3, 2).unwrap();
        assert!(char2_theorem_check(&AdditiveSubgroup::whole(&gf9), &b).is_err());
    }

    #[test]
    fn gf64_closed_subgroups_are_their_generated_subfields() {
        let b = Budget::default();
        let gf64 = GaloisField::with_degree(2, 6).unwrap();
        let mut seen = 0;
        for dim in 1..=6 {
            for a in enumerate_subspaces(&gf64, dim, &b).unwrap() {
                if !a.is_inverse_closed_direct(&b).unwrap() {
                    continue;
                }
                seen += 1;
                assert!(char2_theorem_check(&a, &b).unwrap());
                let f = AdditiveSubgroup::generated_subfield(&gf64, &a.basis_elements()).unwrap();
                assert_eq!(f, a);
            }
        }
        assert_eq!(seen, 4);
    }
}
