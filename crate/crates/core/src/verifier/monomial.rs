//! Square-free monomials in u_1..u_n modulo squares.
//!
//! Over E = F_2(u_1, ..., u_n) the monomials whose exponents are 0 or 1 form a
//! basis of E over its subfield of squares E^2, and a product of two such
//! monomials is again one of them times a square. So E^2-spans of monomials
//! are tracked by exponent vectors mod 2 alone, and multiplying monomials is
//! XOR of the vectors.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Exponent vector mod 2, bit `i` standing for `u_(i+1)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(u32);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn variable(i: usize) -> Monomial {
        Monomial(1 << i)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Product modulo squares, which are absorbed into the E^2 coefficient.
    pub fn times(self, other: Monomial) -> Monomial {
        Monomial(self.0 ^ other.0)
    }

    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        for i in 0..32 {
            if self.0 >> i & 1 == 1 {
                write!(f, "u{}", i + 1)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// E = F_2(u_1, ..., u_n) viewed as a vector space over E^2.
#[derive(Debug, Clone, Copy)]
pub struct SquareFreeMonomialAlgebra {
    n: usize,
}

impl SquareFreeMonomialAlgebra {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > 31 {
            return Err(Error::Precondition(format!("need 1..=31 variables, got {n}")));
        }
        Ok(SquareFreeMonomialAlgebra { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn variables(&self) -> Vec<Monomial> {
        (0..self.n).map(Monomial::variable).collect()
    }

    /// [E : E^2] = 2^n.
    pub fn degree_over_squares(&self) -> u64 {
        1 << self.n
    }

    /// Monomials spanning `{ab : a, b in A}` over E^2 when A is the E^2-span
    /// of `generators`. Distinct monomials are E^2-independent, so the length
    /// of the result is the dimension.
    pub fn product_span(&self, generators: &[Monomial]) -> BTreeSet<Monomial> {
        generators
            .iter()
            .flat_map(|&a| generators.iter().map(move |&b| a.times(b)))
            .collect()
    }
}

/// The E^2-span of all products of pairs from `A = E^2 u_1 + ... + E^2 u_n`.
#[derive(Debug, Clone)]
pub struct CounterexampleSpan {
    pub n: usize,
    pub monomials: Vec<Monomial>,
    pub dimension: usize,
    /// Whether the dimension could be the degree of an intermediate field of
    /// E/E^2, which must divide 2^n.
    pub could_be_subfield: bool,
}

pub fn counterexample_span(n: usize) -> Result<CounterexampleSpan> {
    let algebra = SquareFreeMonomialAlgebra::new(n)?;
    let span = algebra.product_span(&algebra.variables());
    let dimension = span.len();
    Ok(CounterexampleSpan {
        n,
        monomials: span.into_iter().collect(),
        dimension,
        could_be_subfield: algebra.degree_over_squares() % dimension as u64 == 0,
    })
}

/// Dimension over E^2 of the product set for the four-variable example (or
/// any `n`): 1 for the squares plus one per pair `u_i u_j`, `i < j`.
pub fn char2_counterexample_dimension(n: usize) -> Result<usize> {
    Ok(counterexample_span(n)?.dimension)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_variables_give_seven() {
        let span = counterexample_span(4).unwrap();
        assert_eq!(span.dimension, 7);
        assert!(!span.could_be_subfield);
        assert!(!7usize.is_power_of_two());
        assert_eq!(span.monomials[0], Monomial::ONE);
        assert!(span.monomials[1..].iter().all(|m| m.degree() == 2));
        let names: Vec<String> = span.monomials.iter().map(|m| m.to_string()).collect();
        assert_eq!(names, ["1", "u1u2", "u1u3", "u2u3", "u1u4", "u2u4", "u3u4"]);
    }

    // 9 products of three exponent vectors mod 2
    #[test]
    fn small_cases() {
        assert_eq!(char2_counterexample_dimension(1).unwrap(), 1);
        let mut seen = BTreeSet::new();
        for a in [0b001u32, 0b010, 0b100] {
            for b in [0b001u32, 0b010, 0b100] {
                seen.insert(a ^ b);
            }
        }
        assert_eq!(seen.len(), 4);
        assert_eq!(char2_counterexample_dimension(3).unwrap(), 4);
        for n in 1..=10 {
            assert_eq!(char2_counterexample_dimension(n).unwrap(), 1 + n * (n - 1) / 2);
        }
        assert!(SquareFreeMonomialAlgebra::new(0).is_err());
    }

    #[test]
    fn products_absorb_squares() {
        let u1 = Monomial::variable(0);
        let u2 = Monomial::variable(1);
        assert_eq!(u1.times(u1), Monomial::ONE);
        assert_eq!(u1.times(u2).times(u2), u1);
    }
}
