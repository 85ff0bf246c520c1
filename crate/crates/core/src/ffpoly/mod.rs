//! Polynomials over prime fields `F_p`.
//!
//! Text format: a polynomial is written as its little-endian coefficient list,
//! `"c0,c1,...,cn"`, with the field given separately. A monic polynomial ends
//! in `1`. The zero polynomial is `"0"`.

mod arith;
mod certificate;
mod factor;
mod field;
mod poly;
mod structure;

pub use arith::{big_omega, divisor_k, omega, sigma, totient, FactorShape};
pub use certificate::{distinctness_certificate, root_lower_bound, Collision, DistinctnessCertificate};
pub use factor::{
    distinct_degree_factorization, equal_degree_factorization, factor, factor_by_trial_division,
    factor_pattern, factor_with, is_squarefree, squarefree_decomposition, FactorOptions,
    FactorPattern, Factorization,
};
pub use field::{is_prime, primes_up_to, PrimeField};
pub use poly::{MonicPoly, Poly};
pub use structure::{
    phi_structure, recover_partition, sigma_structure, structure_poly, StructureKind,
    StructurePoly,
};

use crate::partitions::Partition;
use crate::Result;

/// Cycle type `λ(f)`: `λ_i` counts irreducible factors of degree `i`, with
/// multiplicity, so `Σ i λ_i = deg f` for every `f`.
pub fn cycle_type(f: &MonicPoly) -> Partition {
    factor_pattern(f.as_poly()).expect("monic input is nonzero").cycle_type()
}

/// Parses the little-endian text format into a polynomial over `field`.
pub fn parse_poly(field: PrimeField, text: &str) -> Result<Poly> {
    Poly::parse(field, text)
}
