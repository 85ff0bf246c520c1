//! Certified prime thresholds above which distinct cycle types of degree `n`
//! have distinct structure-polynomial values at `z = 1/q`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::field::primes_up_to;
use super::structure::{structure_poly, StructureKind, StructurePoly};
use crate::partitions::{enumerate_partitions, Partition};
use crate::rational::Rational;
use crate::{Error, Result};

/// Two cycle types whose structure polynomials agree at `z = 1/q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collision {
    pub q: u64,
    pub left: Partition,
    pub right: Partition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinctnessCertificate {
    pub n: usize,
    pub kind: StructureKind,
    /// For every prime `q > q_threshold`, all cycle types of degree `n` have
    /// pairwise distinct values at `1/q`.
    pub q_threshold: u64,
    /// Collisions actually found among primes `q ≤ q_threshold`.
    pub colliding_pairs: Vec<Collision>,
}

impl DistinctnessCertificate {
    /// Whether `q` is covered by the root bound.
    pub fn certifies(&self, q: u64) -> bool {
        q > self.q_threshold
    }
}

/// Cauchy-type lower bound `|g_0| / (|g_0| + max_{i≥1} |g_i|)` on the modulus
/// of every root of `g` (requires `g_0 ≠ 0`).
pub fn root_lower_bound(g: &[BigInt]) -> Result<Rational> {
    let g0 = g
        .first()
        .filter(|c| !c.is_zero())
        .ok_or_else(|| Error::domain("root bound needs a nonzero constant term"))?
        .abs();
    let max = g[1..].iter().map(Signed::abs).max().unwrap_or_default();
    Ok(Rational::new(g0.clone(), g0 + max))
}

/// Checks pairwise distinctness of the structure polynomials over all
/// partitions of `n`, derives a prime threshold from root bounds on every
/// pairwise difference, and records the collisions at primes up to it.
pub fn distinctness_certificate(n: usize, kind: StructureKind) -> Result<DistinctnessCertificate> {
    if n < 2 {
        return Err(Error::domain("distinctness certificate needs n ≥ 2"));
    }
    let parts: Vec<Partition> = enumerate_partitions(n).collect();
    let polys: Vec<StructurePoly> = parts.iter().map(|p| structure_poly(p, kind)).collect();
    let mut threshold: u64 = 1;
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            let diff = polys[i].difference(&polys[j]);
            if diff.is_empty() {
                return Err(Error::Invariant(alloc::format!(
                    "{kind} structure polynomials of {} and {} coincide",
                    parts[i],
                    parts[j]
                )));
            }
            // strip z^m so the remaining factor has a nonzero constant term
            let lead_zeros = diff.iter().take_while(|c| c.is_zero()).count();
            let rho = root_lower_bound(&diff[lead_zeros..])?;
            // q > 1/ρ ⇔ 1/q < ρ; ⌈1/ρ⌉ = ⌈den/num⌉
            let inv = rho.denom().div_ceil(rho.numer());
            let t = u64::try_from(inv).map_err(|_| Error::Invariant("threshold overflow".into()))?;
            threshold = threshold.max(t);
        }
    }
    let mut colliding_pairs = Vec::new();
    for q in primes_up_to(threshold) {
        let values: Vec<BigInt> = polys.iter().map(|p| p.eval_scaled(q)).collect();
        for i in 0..values.len() {
            for j in i + 1..values.len() {
                if values[i] == values[j] {
                    colliding_pairs.push(Collision {
                        q,
                        left: parts[i].clone(),
                        right: parts[j].clone(),
                    });
                }
            }
        }
    }
    Ok(DistinctnessCertificate {
        n,
        kind,
        q_threshold: threshold,
        colliding_pairs,
    })
}
