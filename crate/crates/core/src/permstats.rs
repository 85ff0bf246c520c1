//! Cycle statistics of uniformly random permutations.
//!
//! `G_k(n)` is the probability that a permutation of `n` letters has `k`
//! cycles, `E_r(n) = Σ_k G_k(n)^r` the probability that `r` independent
//! permutations have the same number of cycles, and `W_r(n) = Σ_{λ⊢n} p(λ)^r`
//! the probability that they have the same cycle type.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
// float methods come from num_traits when std is absent
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::{One, Pow, Zero};

use crate::numeric::compensated_sum;
use crate::partitions::{enumerate_partitions, partitions_with_largest_part, Partition};
use crate::rational::{factorial, integer, Rational};
use crate::{Error, Result};

/// Largest `n` for which exact Stirling rows are computed by default; beyond
/// it the float recurrence is used.
pub const DEFAULT_EXACT_LIMIT: usize = 512;

/// Rows `0..=n_max` of the unsigned Stirling numbers of the first kind,
/// `c(n, k) = c(n-1, k-1) + (n-1) c(n-1, k)`.
#[derive(Debug, Clone)]
pub struct StirlingTriangle {
    rows: Vec<Vec<BigUint>>,
}

impl StirlingTriangle {
    pub fn new(n_max: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n_max + 1);
        rows.push(vec![BigUint::one()]);
        for n in 1..=n_max {
            rows.push(next_stirling_row(&rows[n - 1], n));
        }
        StirlingTriangle { rows }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `c(n, 0), …, c(n, n)`.
    pub fn row(&self, n: usize) -> Option<&[BigUint]> {
        self.rows.get(n).map(Vec::as_slice)
    }
}

fn next_stirling_row(prev: &[BigUint], n: usize) -> Vec<BigUint> {
    let m = BigUint::from(n as u64 - 1);
    let mut row = vec![BigUint::zero(); n + 1];
    for (k, slot) in row.iter_mut().enumerate().skip(1) {
        let mut v = prev[k - 1].clone();
        if k < prev.len() {
            v += &prev[k] * &m;
        }
        *slot = v;
    }
    row
}

/// Row `n` of the Stirling triangle without keeping earlier rows.
pub fn stirling_row(n: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for m in 1..=n {
        row = next_stirling_row(&row, m);
    }
    row
}

/// Exact distribution of the number of cycles, `G_1(n), …, G_n(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCountDistribution {
    n: usize,
    probs: Vec<Rational>,
}

impl CycleCountDistribution {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `G_1(n)..G_n(n)`; index 0 holds `G_1`.
    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    /// `G_k(n)`, zero outside `1..=n`.
    pub fn prob(&self, k: usize) -> Rational {
        if k == 0 || k > self.n {
            return Rational::zero();
        }
        self.probs[k - 1].clone()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.probs.iter().map(crate::rational::to_f64).collect()
    }
}

fn require_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    Ok(())
}

fn require_r(r: u32) -> Result<()> {
    if r < 2 {
        return Err(Error::domain(format!("r must be at least 2, got {r}")));
    }
    Ok(())
}

/// `G_k(n) = c(n, k) / n!` for `k = 1..=n`.
pub fn cycle_count_distribution(n: usize) -> Result<CycleCountDistribution> {
    require_n(n)?;
    let row = stirling_row(n);
    let nf = BigInt::from(factorial(n));
    let probs = row[1..]
        .iter()
        .map(|c| Rational::new(BigInt::from(c.clone()), nf.clone()))
        .collect();
    Ok(CycleCountDistribution { n, probs })
}

/// `G_1(n)..G_n(n)` in floating point via the probability recurrence
/// `G_k(n) = G_{k-1}(n-1)/n + (n-1)/n · G_k(n-1)`. Every term is positive, so
/// the recurrence is stable well past the range where exact rows are practical.
pub fn cycle_count_probabilities_f64(n: usize) -> Result<Vec<f64>> {
    require_n(n)?;
    let mut g = vec![1.0f64];
    for m in 2..=n {
        let inv = 1.0 / m as f64;
        let keep = (m - 1) as f64 * inv;
        let mut next = vec![0.0f64; m];
        for k in 0..m {
            let from_new_cycle = if k >= 1 { g[k - 1] * inv } else { 0.0 };
            let from_insert = if k < m - 1 { g[k] * keep } else { 0.0 };
            next[k] = from_new_cycle + from_insert;
        }
        g = next;
    }
    Ok(g)
}

/// `E_r(n) = Σ_k G_k(n)^r`, exactly.
pub fn e_r(n: usize, r: u32) -> Result<Rational> {
    require_n(n)?;
    require_r(r)?;
    let row = stirling_row(n);
    let num: BigUint = row[1..].iter().map(|c| Pow::pow(c, r)).sum();
    let den = Pow::pow(factorial(n), r);
    Ok(Rational::new(num.into(), den.into()))
}

/// `E_r(n)` from the float recurrence, compensated summation of the powers.
pub fn e_r_f64(n: usize, r: u32) -> Result<f64> {
    require_r(r)?;
    let g = cycle_count_probabilities_f64(n)?;
    Ok(compensated_sum(g.iter().map(|x| x.powi(r as i32))))
}

/// Value of `E_r(n)` from whichever route fits the size of `n`.
#[derive(Debug, Clone, PartialEq)]
pub enum Estimate {
    Exact(Rational),
    Float(f64),
}

impl Estimate {
    pub fn to_f64(&self) -> f64 {
        match self {
            Estimate::Exact(x) => crate::rational::to_f64(x),
            Estimate::Float(x) => *x,
        }
    }
}

/// Exact `E_r(n)` for `n ≤ exact_limit`, the float recurrence above it.
pub fn e_r_auto(n: usize, r: u32, exact_limit: usize) -> Result<Estimate> {
    if n <= exact_limit {
        e_r(n, r).map(Estimate::Exact)
    } else {
        e_r_f64(n, r).map(Estimate::Float)
    }
}

/// `W_r(n) = Σ_{λ⊢n} p(λ)^r`, with `W_r(0) = 1`.
///
/// Accumulated over the common denominator `(n!)^r` using class sizes, so the
/// only reduction happens once at the end.
pub fn w_r_partition_sum(n: usize, r: u32) -> Result<Rational> {
    require_r(r)?;
    Ok(power_sum_over(enumerate_partitions(n), n, r))
}

/// The part of [`w_r_partition_sum`] from partitions with largest part `t`;
/// summing over `t = 1..=n` gives `W_r(n)` for `n ≥ 1`.
pub fn w_r_partition_sum_largest_part(n: usize, r: u32, t: usize) -> Result<Rational> {
    require_r(r)?;
    Ok(power_sum_over(partitions_with_largest_part(n, t), n, r))
}

fn power_sum_over(parts: impl Iterator<Item = Partition>, n: usize, r: u32) -> Rational {
    let num: BigUint = parts.map(|p| Pow::pow(p.class_size(), r)).sum();
    Rational::new(num.into(), Pow::pow(factorial(n), r).into())
}

/// `f_n(t) = E[e^{itω_n}] = ∏_{j=1}^n (j - 1 + e^{it}) / j`.
pub fn char_function(n: usize, t: f64) -> Result<Complex64> {
    require_n(n)?;
    let w = Complex64::from_polar(1.0, t);
    Ok((1..=n).fold(Complex64::new(1.0, 0.0), |acc, j| {
        acc * ((w + (j as f64 - 1.0)) / j as f64)
    }))
}

/// Recovers `G_1(n)..G_n(n)` by discrete Fourier inversion of
/// [`char_function`] sampled at `grid` equispaced points on `[0, 2π)`.
/// Needs `grid > n` so the frequencies `0..=n` do not alias.
pub fn distribution_from_charfun(n: usize, grid: usize) -> Result<Vec<f64>> {
    require_n(n)?;
    if grid <= n {
        return Err(Error::Aliasing { n, grid });
    }
    let samples: Vec<Complex64> = (0..grid)
        .map(|m| char_function(n, 2.0 * PI * m as f64 / grid as f64))
        .collect::<Result<_>>()?;
    let out = (1..=n)
        .map(|k| {
            let re = compensated_sum(samples.iter().enumerate().map(|(m, f)| {
                let angle = -2.0 * PI * ((k * m) % grid) as f64 / grid as f64;
                (f * Complex64::from_polar(1.0, angle)).re
            }));
            re / grid as f64
        })
        .collect();
    Ok(out)
}

/// `c_r = 1 / ((2π)^{(r-1)/2} √r)`.
pub fn asymptotic_c_r(r: u32) -> Result<f64> {
    require_r(r)?;
    let r = r as f64;
    Ok(1.0 / ((2.0 * PI).powf((r - 1.0) / 2.0) * r.sqrt()))
}

/// Leading-order asymptotic `c_r / (log n)^{(r-1)/2}` of `E_r(n)`.
pub fn asymptotic_e(n: usize, r: u32) -> Result<f64> {
    if n <= 1 {
        return Err(Error::domain("asymptotic E_r(n) needs n ≥ 2 (log n > 0)"));
    }
    let c = asymptotic_c_r(r)?;
    Ok(c / (n as f64).ln().powf((r as f64 - 1.0) / 2.0))
}

/// Leading-order asymptotic `A_r / n^r` of `W_r(n)`.
pub fn asymptotic_w(n: usize, r: u32, a_r: f64) -> Result<f64> {
    require_n(n)?;
    require_r(r)?;
    Ok(a_r / (n as f64).powi(r as i32))
}

/// Which of the three overlapping classes a partition of `n` belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SetMembership {
    /// Many parts: `ω(λ) > L(n)`.
    pub in_a: bool,
    /// Few parts and a middling longest part: `ω ≤ L`, `n/L ≤ T < n - a`.
    pub in_b: bool,
    /// One dominant part: `n - a ≤ T ≤ n`.
    pub in_c: bool,
}

/// Exact set membership with `L(n) = log₂(2n³)` and `a(n) = n^{2/3}/3`.
///
/// Every comparison is rewritten over the integers:
/// `ω > L ⇔ 2^ω > 2n³`, `n/L ≤ T ⇔ 2^n ≤ (2n³)^T`, and
/// `T ≥ n - a ⇔ 27(n - T)³ ≤ n²`.
pub fn classify(lambda: &Partition) -> Result<SetMembership> {
    let n = lambda.size();
    require_n(n)?;
    let omega = lambda.num_parts();
    let t = lambda.longest_part()?;
    let two_n3 = BigUint::from(2u32) * Pow::pow(BigUint::from(n), 3u32);
    let pow2 = |e: usize| BigUint::one() << e;

    let in_a = pow2(omega) > two_n3;
    let in_c = within_a(n - t, n);
    let in_b = !in_a && pow2(n) <= Pow::pow(&two_n3, t as u32) && !in_c;
    Ok(SetMembership { in_a, in_b, in_c })
}

/// `m ≤ a(n) = n^{2/3}/3`, i.e. `27 m³ ≤ n²`.
pub fn within_a(m: usize, n: usize) -> bool {
    let m = m as u128;
    let n = n as u128;
    27 * m * m * m <= n * n
}

/// `⌊a(n)⌋`, the largest `m` with `27 m³ ≤ n²`.
pub fn floor_a(n: usize) -> usize {
    let mut m = 0;
    while within_a(m + 1, n) {
        m += 1;
    }
    m
}

/// The decomposition `Σ_C ≤ W_r(n) ≤ Σ_A + Σ_B + Σ_C` of the coincidence
/// probability by the shape of the cycle type.
#[derive(Debug, Clone, PartialEq)]
pub struct AppendixSplit {
    pub n: usize,
    pub r: u32,
    pub sigma_a: Rational,
    pub sigma_b: Rational,
    pub sigma_c: Rational,
    /// `L(n) = log₂(2n³)`.
    pub l: f64,
    /// `a(n) = n^{2/3}/3`.
    pub a: f64,
}

impl AppendixSplit {
    /// `Σ_C ≤ w ≤ Σ_A + Σ_B + Σ_C`.
    pub fn sandwiches(&self, w: &Rational) -> bool {
        let upper = &self.sigma_a + &self.sigma_b + &self.sigma_c;
        &self.sigma_c <= w && w <= &upper
    }

    /// `Σ_A ≤ n^{-3(r-1)}`.
    pub fn sigma_a_within_bound(&self) -> bool {
        let bound = Rational::new(
            BigInt::one(),
            Pow::pow(BigInt::from(self.n), 3 * (self.r - 1)),
        );
        self.sigma_a <= bound
    }
}

/// Sums `p(λ)^r` over each of the three classes independently. A partition
/// can be in both A and C; it is counted in both sums.
pub fn appendix_split(n: usize, r: u32) -> Result<AppendixSplit> {
    require_n(n)?;
    require_r(r)?;
    let mut num_a = BigUint::zero();
    let mut num_b = BigUint::zero();
    let mut num_c = BigUint::zero();
    for lambda in enumerate_partitions(n) {
        let m = classify(&lambda)?;
        if !(m.in_a || m.in_b || m.in_c) {
            return Err(Error::Invariant(format!(
                "partition {lambda} of {n} is in none of the three classes"
            )));
        }
        let w = Pow::pow(lambda.class_size(), r);
        if m.in_a {
            num_a += &w;
        }
        if m.in_b {
            num_b += &w;
        }
        if m.in_c {
            num_c += w;
        }
    }
    let den: BigInt = Pow::pow(factorial(n), r).into();
    let nf = n as f64;
    Ok(AppendixSplit {
        n,
        r,
        sigma_a: Rational::new(num_a.into(), den.clone()),
        sigma_b: Rational::new(num_b.into(), den.clone()),
        sigma_c: Rational::new(num_c.into(), den),
        l: (2.0 * nf * nf * nf).log2(),
        a: nf.powf(2.0 / 3.0) / 3.0,
    })
}

/// `Σ_{0 ≤ m ≤ a(n)} W_r(m) / (n - m)^r`.
pub fn sigma_c_closed_form(n: usize, r: u32) -> Result<Rational> {
    require_n(n)?;
    require_r(r)?;
    let mut total = Rational::zero();
    for m in 0..=floor_a(n) {
        let w = w_r_partition_sum(m, r)?;
        total += w / integer(Pow::pow(BigInt::from(n - m), r));
    }
    Ok(total)
}

/// Whether `Σ_C` from [`appendix_split`] equals [`sigma_c_closed_form`].
pub fn appendix_sigma_c_identity_check(n: usize, r: u32) -> Result<bool> {
    let split = appendix_split(n, r)?;
    Ok(split.sigma_c == sigma_c_closed_form(n, r)?)
}
