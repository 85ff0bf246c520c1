//! Multiplicative arithmetic functions of polynomials, evaluated from the
//! degrees and multiplicities of the irreducible factors. `|P| = q^{deg P}`
//! is the norm of an irreducible `P`.

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, Pow};

use super::factor::{FactorPattern, Factorization};
use super::field::PrimeField;

/// Degree and multiplicity of each distinct irreducible factor, which is all
/// the arithmetic functions below look at.
pub trait FactorShape {
    fn base_field(&self) -> PrimeField;
    fn shape(&self) -> impl Iterator<Item = (usize, u32)> + '_;
}

impl FactorShape for Factorization {
    fn base_field(&self) -> PrimeField {
        self.field()
    }

    fn shape(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.factors().iter().map(|(p, e)| (p.degree(), *e))
    }
}

impl FactorShape for FactorPattern {
    fn base_field(&self) -> PrimeField {
        self.field()
    }

    fn shape(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.pairs().iter().copied()
    }
}

fn norm(q: u64, degree: usize) -> BigUint {
    Pow::pow(BigUint::from(q), degree)
}

/// `ω(f)`: number of distinct monic irreducible factors.
pub fn omega(f: &impl FactorShape) -> usize {
    f.shape().count()
}

/// `Ω(f)`: number of irreducible factors counted with multiplicity.
pub fn big_omega(f: &impl FactorShape) -> usize {
    f.shape().map(|(_, e)| e as usize).sum()
}

/// `d_k(f)`: ordered factorizations into `k` monic factors,
/// `∏ C(e + k − 1, k − 1)`.
pub fn divisor_k(f: &impl FactorShape, k: u32) -> BigUint {
    if k == 0 {
        return if f.shape().next().is_none() { BigUint::one() } else { BigUint::from(0u32) };
    }
    f.shape()
        .map(|(_, e)| {
            let e = BigUint::from(e);
            let km1 = BigUint::from(k - 1);
            binomial(e + &km1, km1)
        })
        .product()
}

/// Euler totient `φ(f) = #(F_q[T]/(f))^×`, `φ(P^e) = |P|^e − |P|^{e−1}`.
pub fn totient(f: &impl FactorShape) -> BigUint {
    let q = f.base_field().p();
    f.shape()
        .map(|(d, e)| {
            let base = norm(q, d);
            let lower = Pow::pow(&base, e - 1);
            &lower * &base - lower
        })
        .product()
}

/// `σ(f) = Σ_{d | f} |d|`, `σ(P^e) = (|P|^{e+1} − 1)/(|P| − 1)`.
pub fn sigma(f: &impl FactorShape) -> BigUint {
    let q = f.base_field().p();
    f.shape()
        .map(|(d, e)| {
            let base = norm(q, d);
            (Pow::pow(&base, e + 1) - 1u32) / (base - 1u32)
        })
        .product()
}
