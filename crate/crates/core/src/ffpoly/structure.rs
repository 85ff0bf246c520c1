//! Structure polynomials `Φ(λ;z) = ∏ (1 − z^j)^{λ_j}` and
//! `Σ(λ;z) = ∏ (1 + z^j)^{λ_j}`. For squarefree `f` of degree `n` with
//! cycle type `λ`, `φ(f) = q^n Φ(λ;1/q)` and `σ(f) = q^n Σ(λ;1/q)`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::partitions::Partition;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StructureKind {
    /// `∏ (1 − z^j)^{λ_j}`, tied to the totient.
    Phi,
    /// `∏ (1 + z^j)^{λ_j}`, tied to the divisor sum.
    Sigma,
}

impl StructureKind {
    fn sign(self) -> i32 {
        match self {
            StructureKind::Phi => -1,
            StructureKind::Sigma => 1,
        }
    }
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StructureKind::Phi => "phi",
            StructureKind::Sigma => "sigma",
        })
    }
}

impl core::str::FromStr for StructureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "phi" | "Phi" => Ok(StructureKind::Phi),
            "sigma" | "Sigma" => Ok(StructureKind::Sigma),
            _ => Err(Error::Parse(alloc::format!("unknown structure kind {s:?}"))),
        }
    }
}

/// Integer polynomial in `z`, little-endian, length `n + 1` for a partition of `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StructurePoly {
    coeffs: Vec<BigInt>,
}

impl StructurePoly {
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `n`, the size of the partition this was built from.
    pub fn size(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `q^n · P(1/q) = Σ c_i q^{n−i}`, an integer.
    pub fn eval_scaled(&self, q: u64) -> BigInt {
        let q = BigInt::from(q);
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc * &q + c)
    }

    /// `self − other`, little-endian, trailing zeros trimmed.
    pub fn difference(&self, other: &StructurePoly) -> Vec<BigInt> {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out: Vec<BigInt> = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_default();
                let b = other.coeffs.get(i).cloned().unwrap_or_default();
                a - b
            })
            .collect();
        while out.last().is_some_and(Zero::is_zero) {
            out.pop();
        }
        out
    }

    /// Coefficients `t_1..t_len` of `z P'(z) / P(z)` (Newton's identities;
    /// `P(0) = 1`).
    pub fn log_derivative(&self, len: usize) -> Vec<BigInt> {
        let c = |i: usize| self.coeffs.get(i).cloned().unwrap_or_default();
        let mut t: Vec<BigInt> = vec![BigInt::zero(); len + 1];
        for m in 1..=len {
            let mut v = c(m) * BigInt::from(m);
            for i in 1..m {
                v -= c(i) * &t[m - i];
            }
            t[m] = v;
        }
        t.remove(0);
        t
    }
}

impl fmt::Display for StructurePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

pub fn structure_poly(lambda: &Partition, kind: StructureKind) -> StructurePoly {
    let n = lambda.size();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[0] = BigInt::one();
    let sign = BigInt::from(kind.sign());
    for (idx, &m) in lambda.multiplicities().iter().enumerate() {
        let j = idx + 1;
        for _ in 0..m {
            // multiply by (1 ± z^j) in place, high to low
            for i in (j..=n).rev() {
                let lower = coeffs[i - j].clone();
                coeffs[i] += &sign * lower;
            }
        }
    }
    StructurePoly { coeffs }
}

/// `Φ(λ;z)`.
pub fn phi_structure(lambda: &Partition) -> StructurePoly {
    structure_poly(lambda, StructureKind::Phi)
}

/// `Σ(λ;z)`.
pub fn sigma_structure(lambda: &Partition) -> StructurePoly {
    structure_poly(lambda, StructureKind::Sigma)
}

/// Reads the multiplicities back off a structure polynomial of a partition
/// of `n`. With `t_m` the log-derivative coefficients:
/// for `Φ`, `t_m = −Σ_{i|m} i λ_i`; for `Σ`, `t_m = Σ_{i|m} (−1)^{m/i−1} i λ_i`.
/// Solving for `λ_m` in increasing `m` is the injectivity argument behind the
/// distinctness of these polynomials.
pub fn recover_partition(poly: &StructurePoly, kind: StructureKind) -> Result<Partition> {
    let n = poly.size();
    let t = poly.log_derivative(n);
    let mut lambda = vec![0u32; n];
    for m in 1..=n {
        // s_m = signed divisor sum, rearranged to isolate the i = m term
        let mut rhs = match kind {
            StructureKind::Phi => -t[m - 1].clone(),
            StructureKind::Sigma => t[m - 1].clone(),
        };
        for i in 1..m {
            if m % i != 0 || lambda[i - 1] == 0 {
                continue;
            }
            let term = BigInt::from(i as u64 * lambda[i - 1] as u64);
            let odd_cofactor = (m / i) % 2 == 1;
            match kind {
                StructureKind::Phi => rhs -= term,
                StructureKind::Sigma if odd_cofactor => rhs -= term,
                StructureKind::Sigma => rhs += term,
            }
        }
        let (q, r) = rhs.div_rem(&BigInt::from(m));
        if !r.is_zero() || q.is_negative() {
            return Err(Error::Invariant(alloc::format!(
                "coefficient {m} does not come from a partition"
            )));
        }
        lambda[m - 1] = u32::try_from(q).map_err(|_| Error::Invariant("multiplicity overflow".into()))?;
    }
    Partition::new(lambda)
}
