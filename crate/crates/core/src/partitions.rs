//! Integer partitions as multiplicity vectors.
//!
//! A [`Partition`] of `n` is stored densely as `(λ_1, …, λ_n)` where `λ_j` is
//! the number of parts equal to `j`. The same value describes the cycle type
//! of a permutation of `n` letters and the factorization type of a degree-`n`
//! polynomial.
//!
//! Enumeration order is reverse lexicographic on non-increasing part lists:
//! for `n = 4` the stream is `4`, `3+1`, `2+2`, `2+1+1`, `1+1+1+1`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::rational::{factorial, reciprocal, Rational};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    // mult[j - 1] = number of parts of size j; len == n
    mult: Vec<u32>,
}

impl Partition {
    /// Builds a partition from its multiplicity vector `(λ_1, …, λ_n)`.
    /// The vector length is `n` and must satisfy `Σ j·λ_j = n`.
    pub fn new(mult: Vec<u32>) -> Result<Self> {
        let n = mult.len();
        let size: usize = mult
            .iter()
            .enumerate()
            .map(|(i, &m)| (i + 1) * m as usize)
            .sum();
        if size != n {
            return Err(Error::domain(alloc::format!(
                "multiplicities sum to {size}, expected {n}"
            )));
        }
        Ok(Partition { mult })
    }

    /// Builds a partition of `n = Σ parts` from a list of parts in any order.
    pub fn from_parts(parts: &[usize]) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::domain("parts must be positive"));
        }
        let n: usize = parts.iter().sum();
        let mut mult = vec![0u32; n];
        for &p in parts {
            mult[p - 1] += 1;
        }
        Ok(Partition { mult })
    }

    pub fn empty() -> Self {
        Partition { mult: Vec::new() }
    }

    /// One part of size `n` (an `n`-cycle).
    pub fn single_part(n: usize) -> Self {
        let mut mult = vec![0u32; n];
        if n > 0 {
            mult[n - 1] = 1;
        }
        Partition { mult }
    }

    /// `n` parts of size one (the identity permutation).
    pub fn all_ones(n: usize) -> Self {
        let mut mult = vec![0u32; n];
        if n > 0 {
            mult[0] = n as u32;
        }
        Partition { mult }
    }

    pub fn size(&self) -> usize {
        self.mult.len()
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.mult
    }

    /// `λ_j` for `j ≥ 1`; zero beyond `n`.
    pub fn multiplicity(&self, j: usize) -> u32 {
        if j == 0 {
            return 0;
        }
        self.mult.get(j - 1).copied().unwrap_or(0)
    }

    /// Parts in non-increasing order.
    pub fn parts(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.num_parts());
        for (i, &m) in self.mult.iter().enumerate().rev() {
            out.extend(core::iter::repeat_n(i + 1, m as usize));
        }
        out
    }

    /// `ω_n(λ) = Σ λ_j`, the number of parts (cycles).
    pub fn num_parts(&self) -> usize {
        self.mult.iter().map(|&m| m as usize).sum()
    }

    /// `T(λ)`, the largest part. Undefined for the empty partition.
    pub fn longest_part(&self) -> Result<usize> {
        self.mult
            .iter()
            .rposition(|&m| m > 0)
            .map(|i| i + 1)
            .ok_or_else(|| Error::domain("longest part of the empty partition"))
    }

    /// `z_λ = ∏ j^{λ_j} λ_j!`, the order of the centralizer of a permutation
    /// of this cycle type.
    pub fn centralizer_order(&self) -> BigUint {
        let mut z = BigUint::one();
        for (i, &m) in self.mult.iter().enumerate() {
            if m > 0 {
                z *= BigUint::from(i as u64 + 1).pow(m) * factorial(m as usize);
            }
        }
        z
    }

    /// Number of permutations of `n` letters with this cycle type, `n!/z_λ`.
    pub fn class_size(&self) -> BigUint {
        factorial(self.size()) / self.centralizer_order()
    }

    /// Cauchy's formula `p(λ) = ∏ 1/(j^{λ_j} λ_j!)`; equals 1 for the empty partition.
    pub fn cauchy_probability(&self) -> Rational {
        reciprocal(&self.centralizer_order())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.parts().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

/// Streams the partitions of `n` with every part at most `max_part`, as
/// non-increasing part lists in reverse lexicographic order.
#[derive(Debug, Clone)]
pub struct PartLists {
    parts: Vec<usize>,
    done: bool,
}

impl PartLists {
    pub fn new(n: usize, max_part: usize) -> Self {
        let mut parts = Vec::new();
        if n > 0 && max_part == 0 {
            return PartLists { parts, done: true };
        }
        let b = max_part.min(n);
        let mut rem = n;
        while rem > 0 {
            let p = b.min(rem);
            parts.push(p);
            rem -= p;
        }
        PartLists { parts, done: false }
    }

    fn advance(&mut self) {
        // Drop trailing ones, decrement the last part > 1, refill greedily.
        let mut ones = 0;
        while self.parts.last() == Some(&1) {
            self.parts.pop();
            ones += 1;
        }
        let Some(last) = self.parts.last_mut() else {
            self.done = true;
            return;
        };
        let x = *last - 1;
        *last = x;
        let mut rem = ones + 1;
        while rem > 0 {
            let p = x.min(rem);
            self.parts.push(p);
            rem -= p;
        }
    }
}

impl Iterator for PartLists {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.parts.clone();
        self.advance();
        Some(out)
    }
}

/// All partitions of `n`, each exactly once, largest part first.
pub fn enumerate_partitions(n: usize) -> impl Iterator<Item = Partition> {
    PartLists::new(n, n).map(|parts| {
        Partition::from_parts(&parts).expect("generated parts are positive")
    })
}

/// Partitions of `n` whose largest part is exactly `t` (`1 ≤ t ≤ n`). The
/// union over `t` is [`enumerate_partitions`], in the same order.
pub fn partitions_with_largest_part(n: usize, t: usize) -> impl Iterator<Item = Partition> {
    let valid = t >= 1 && t <= n;
    let inner = if valid {
        PartLists::new(n - t, t)
    } else {
        PartLists {
            parts: Vec::new(),
            done: true,
        }
    };
    inner.map(move |mut parts| {
        parts.insert(0, t);
        Partition::from_parts(&parts).expect("generated parts are positive")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use alloc::string::ToString;
    use num_traits::Zero;

    fn count_oracle(n: usize, max: usize) -> u64 {
        if n == 0 {
            return 1;
        }
        (1..=max.min(n)).map(|p| count_oracle(n - p, p)).sum()
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_partitions(0).count(), 1);
        assert_eq!(enumerate_partitions(0).next().unwrap(), Partition::empty());
        assert_eq!(enumerate_partitions(1).count(), 1);
        assert_eq!(enumerate_partitions(4).count(), 5);
    }

    #[test]
    fn order_is_reverse_lexicographic() {
        let got: Vec<_> = enumerate_partitions(4).map(|p| p.to_string()).collect();
        assert_eq!(got, ["[4]", "[3,1]", "[2,2]", "[2,1,1]", "[1,1,1,1]"]);
    }

    #[test]
    fn counts_match_recursive_oracle() {
        for n in 0..=40 {
            assert_eq!(enumerate_partitions(n).count() as u64, count_oracle(n, n), "n={n}");
        }
    }

    #[test]
    fn largest_part_split_covers_stream() {
        for n in 1..=15 {
            let all: Vec<_> = enumerate_partitions(n).collect();
            let split: Vec<_> = (1..=n)
                .rev()
                .flat_map(|t| partitions_with_largest_part(n, t))
                .collect();
            assert_eq!(all, split);
        }
    }

    #[test]
    fn cauchy_examples() {
        assert_eq!(Partition::single_part(7).cauchy_probability(), ratio(1, 7));
        assert_eq!(
            Partition::all_ones(5).cauchy_probability(),
            ratio(1, 120)
        );
        let p = Partition::new(alloc::vec![1, 1, 0]).unwrap();
        assert_eq!(p.cauchy_probability(), ratio(1, 2));
        assert_eq!(Partition::empty().cauchy_probability(), ratio(1, 1));
    }

    #[test]
    fn cauchy_sums_to_one() {
        for n in 0..=30 {
            let total: Rational = enumerate_partitions(n).map(|p| p.cauchy_probability()).sum();
            assert_eq!(total, ratio(1, 1), "n={n}");
        }
    }

    #[test]
    fn part_statistics() {
        let n = 6;
        assert_eq!(Partition::single_part(n).num_parts(), 1);
        assert_eq!(Partition::all_ones(n).num_parts(), n);
        assert_eq!(Partition::new(alloc::vec![1, 1, 0]).unwrap().num_parts(), 2);
        assert_eq!(Partition::single_part(n).longest_part().unwrap(), n);
        assert_eq!(Partition::all_ones(n).longest_part().unwrap(), 1);
        assert_eq!(
            Partition::new(alloc::vec![2, 0, 1, 0, 0]).unwrap().longest_part().unwrap(),
            3
        );
        assert!(Partition::empty().longest_part().is_err());
        assert_eq!(Partition::empty().num_parts(), 0);
    }

    #[test]
    fn invalid_multiplicities_rejected() {
        assert!(Partition::new(alloc::vec![1, 1]).is_err());
        assert!(Partition::from_parts(&[2, 0]).is_err());
    }

    #[test]
    fn longest_times_parts_bounds_size() {
        for n in 1..=20 {
            for p in enumerate_partitions(n) {
                assert!(n <= p.longest_part().unwrap() * p.num_parts());
            }
        }
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for n in 0..=12 {
            let s: BigUint = enumerate_partitions(n).map(|p| p.class_size()).sum();
            assert_eq!(s, factorial(n));
            assert!(!s.is_zero());
        }
    }
}
