//! Inverse-closed additive subgroups of finite fields.
//!
//! The crate builds GF(p^f) from an explicit irreducible modulus, represents
//! additive subgroups as F_p-subspaces in canonical echelon form, computes
//! their subspace polynomials, and classifies the subgroups that contain the
//! inverses of their nonzero elements: each is a subfield or the trace-zero
//! kernel of a quadratic subextension. [`verifier`] checks this exhaustively
//! over small fields, along with Hua's identity and the identities behind it.

pub mod cli;
pub mod error;
pub mod field;
pub mod poly;
pub mod rational;
pub mod subgroup;
pub mod verifier;
mod zp;

pub use error::{Error, Result};
pub use field::{find_irreducible, FieldElement, FieldSpec, GaloisField};
pub use poly::{DensePolynomial, LinearizedPolynomial, Scalar};
pub use rational::Rational;
pub use subgroup::{enumerate_subspaces, gaussian_binomial, total_subspaces, AdditiveSubgroup, Budget, SubgroupIterator};
pub use zp::{is_prime, prime_power};
