//! Exhaustive scans over `M_n`, the `q^n` monic polynomials of degree `n`
//! over `F_q`.
//!
//! For a shift system `a_1, …, a_r` (distinct, `deg a_j < n`) and an
//! arithmetic function `α`, a scan counts
//! `S_α = #{f ∈ M_n : α(f + a_1) = … = α(f + a_r)}` and compares `S_α / q^n`
//! with the permutation model: `E_r(n)` when `α` only sees the number of
//! prime factors (`ω`, `Ω`, `d_k`), `W_r(n)` when it sees the whole cycle type
//! (`φ`, `σ`).
//!
//! Every scan is split into `*_range` workers over disjoint index ranges of
//! `M_n` whose results merge by addition, so callers can run them in
//! parallel and still get identical totals.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
// float methods come from num_traits when std is absent
#[allow(unused_imports)]
use num_traits::Float;

use crate::ffpoly::{
    big_omega, divisor_k, factor_pattern, omega, sigma, totient, FactorPattern, FactorShape,
    MonicPoly, Poly, PrimeField,
};
use crate::partitions::Partition;
use crate::permstats::{e_r, w_r_partition_sum};
use crate::rational::{to_f64, Rational};
use crate::{Error, Result};

/// Default refusal threshold for `q^n`.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// The arithmetic function compared across shifts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Alpha {
    Omega,
    BigOmega,
    DivisorK(u32),
    Phi,
    Sigma,
}

/// Which permutation statistic models the coincidence probability.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelClass {
    /// `E_r(n)`: same number of cycles.
    CycleCount,
    /// `W_r(n)`: same cycle type.
    CycleType,
}

impl Alpha {
    pub fn class(&self) -> ModelClass {
        match self {
            Alpha::Omega | Alpha::BigOmega | Alpha::DivisorK(_) => ModelClass::CycleCount,
            Alpha::Phi | Alpha::Sigma => ModelClass::CycleType,
        }
    }

    pub fn evaluate(&self, f: &impl FactorShape) -> BigUint {
        match self {
            Alpha::Omega => BigUint::from(omega(f)),
            Alpha::BigOmega => BigUint::from(big_omega(f)),
            Alpha::DivisorK(k) => divisor_k(f, *k),
            Alpha::Phi => totient(f),
            Alpha::Sigma => sigma(f),
        }
    }

    /// `E_r(n)` or `W_r(n)` according to [`Alpha::class`].
    pub fn model_value(&self, n: usize, r: u32) -> Result<Rational> {
        match self.class() {
            ModelClass::CycleCount => e_r(n, r),
            ModelClass::CycleType => w_r_partition_sum(n, r),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Alpha::DivisorK(k) if *k < 2 => Err(Error::domain("d_k needs k ≥ 2")),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alpha::Omega => f.write_str("omega"),
            Alpha::BigOmega => f.write_str("big_omega"),
            Alpha::DivisorK(k) => write!(f, "d_{k}"),
            Alpha::Phi => f.write_str("phi"),
            Alpha::Sigma => f.write_str("sigma"),
        }
    }
}

/// Accepts `omega`, `big_omega`, `d_<k>` (also `d<k>`, `d_k(<k>)`), `phi`, `sigma`.
impl FromStr for Alpha {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let alpha = match s {
            "omega" => Alpha::Omega,
            "big_omega" | "Omega" => Alpha::BigOmega,
            "phi" => Alpha::Phi,
            "sigma" => Alpha::Sigma,
            _ => {
                let k = s
                    .strip_prefix("d_k(")
                    .and_then(|k| k.strip_suffix(')'))
                    .or_else(|| s.strip_prefix("d_"))
                    .or_else(|| s.strip_prefix('d'))
                    .and_then(|k| k.parse::<u32>().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown arithmetic function {s:?}")))?;
                Alpha::DivisorK(k)
            }
        };
        alpha.validate()?;
        Ok(alpha)
    }
}

/// Distinct shifts `a_1, …, a_r` of degree `< n` over a common field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftSystem {
    field: PrimeField,
    n: usize,
    shifts: Vec<Poly>,
}

impl ShiftSystem {
    /// At least one shift is required; coincidence scans need two or more.
    pub fn new(field: PrimeField, n: usize, shifts: Vec<Poly>) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("degree n must be at least 1"));
        }
        if shifts.is_empty() {
            return Err(Error::domain("shift system is empty"));
        }
        for (i, a) in shifts.iter().enumerate() {
            if a.field() != field {
                return Err(Error::FieldMismatch(field.p(), a.field().p()));
            }
            if a.degree().is_some_and(|d| d >= n) {
                return Err(Error::domain(format!("shift {a} has degree ≥ n = {n}")));
            }
            if shifts[..i].contains(a) {
                return Err(Error::domain(format!("shift {a} repeated")));
            }
        }
        Ok(ShiftSystem { field, n, shifts })
    }

    /// The constants `0, 1, …, r − 1`.
    pub fn constants(field: PrimeField, n: usize, r: usize) -> Result<Self> {
        if r as u64 > field.p() {
            return Err(Error::domain(format!(
                "{r} distinct constant shifts do not exist in F_{}",
                field.p()
            )));
        }
        let shifts = (0..r as u64).map(|c| Poly::constant(field, c)).collect();
        Self::new(field, n, shifts)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.shifts.len()
    }

    pub fn shifts(&self) -> &[Poly] {
        &self.shifts
    }

    /// Adds the same polynomial `c` (`deg c < n`) to every shift.
    pub fn translate(&self, c: &Poly) -> Result<Self> {
        let shifts = self.shifts.iter().map(|a| a.add(c)).collect::<Result<_>>()?;
        Self::new(self.field, self.n, shifts)
    }

    /// `q^n`, if it fits in a `u128`.
    pub fn space_size(&self) -> Option<u128> {
        let mut acc: u128 = 1;
        for _ in 0..self.n {
            acc = acc.checked_mul(self.field.p() as u128)?;
        }
        Some(acc)
    }

    fn shifted(&self, f: &MonicPoly) -> impl Iterator<Item = MonicPoly> + '_ {
        let f = f.clone();
        self.shifts
            .iter()
            .map(move |a| f.shifted(a).expect("deg a < n keeps f + a monic"))
    }
}

/// Scans only need the degrees and multiplicities of the factors, which
/// come from a deterministic factor pattern; no seed is involved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    /// Largest `q^n` a scan will enumerate.
    pub budget: u64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            budget: DEFAULT_BUDGET,
        }
    }
}

/// `q^n` when it is within `budget`.
pub fn check_budget(field: PrimeField, n: usize, budget: u64) -> Result<u64> {
    let mut size: u128 = 1;
    for _ in 0..n {
        size = size.saturating_mul(field.p() as u128);
    }
    if size > budget as u128 {
        return Err(Error::Budget { size, limit: budget });
    }
    Ok(size as u64)
}

fn pattern(f: &MonicPoly) -> FactorPattern {
    factor_pattern(f.as_poly()).expect("monic polynomials are nonzero")
}

/// Partial result of a coincidence scan over an index range of `M_n`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScanTally {
    /// Polynomials examined.
    pub examined: u64,
    /// `f` with `α(f + a_1) = … = α(f + a_r)`.
    pub hits: u64,
    /// `f` with every `f + a_j` squarefree.
    pub all_squarefree: u64,
    /// Hits among the all-squarefree `f`.
    pub squarefree_hits: u64,
}

impl ScanTally {
    pub fn merge(self, other: ScanTally) -> ScanTally {
        ScanTally {
            examined: self.examined + other.examined,
            hits: self.hits + other.hits,
            all_squarefree: self.all_squarefree + other.all_squarefree,
            squarefree_hits: self.squarefree_hits + other.squarefree_hits,
        }
    }
}

/// Scans the monic polynomials with indices in `range`.
pub fn scan_range(sys: &ShiftSystem, alpha: Alpha, range: Range<u64>) -> ScanTally {
    let mut tally = ScanTally::default();
    for idx in range {
        let f = MonicPoly::from_index(sys.field, sys.n, idx);
        let mut first: Option<BigUint> = None;
        let mut equal = true;
        let mut squarefree = true;
        for g in sys.shifted(&f) {
            let fac = pattern(&g);
            squarefree &= fac.is_squarefree();
            let v = alpha.evaluate(&fac);
            match &first {
                None => first = Some(v),
                Some(a) => equal &= *a == v,
            }
        }
        tally.examined += 1;
        tally.hits += equal as u64;
        tally.all_squarefree += squarefree as u64;
        tally.squarefree_hits += (equal && squarefree) as u64;
    }
    tally
}

/// One exhaustive coincidence count with its model comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub q: u64,
    pub n: usize,
    pub r: usize,
    pub alpha: Alpha,
    pub shifts: Vec<Poly>,
    /// `S_α`.
    pub s: u64,
    /// Coincidences among `f` whose shifts are all squarefree.
    pub s_squarefree: u64,
    /// Number of `f` whose shifts are all squarefree.
    pub all_squarefree: u64,
    pub q_pow_n: u64,
    /// `S_α / q^n`.
    pub probability: Rational,
    pub model_value: Rational,
    /// `|S_α / q^n − model|`.
    pub deviation: f64,
    /// `deviation · √q`.
    pub normalized_deviation: f64,
}

/// Builds the report for a completed tally; `tally` must cover all of `M_n`.
pub fn report_from_tally(sys: &ShiftSystem, alpha: Alpha, tally: ScanTally) -> Result<ScanReport> {
    let size = sys.space_size().unwrap_or(u128::MAX);
    if tally.examined as u128 != size {
        return Err(Error::Invariant(format!(
            "tally covers {} of {size} polynomials",
            tally.examined
        )));
    }
    let r = sys.r();
    let model_value = alpha.model_value(sys.n, r as u32)?;
    let probability = Rational::new(BigInt::from(tally.hits), BigInt::from(tally.examined));
    let deviation = to_f64(&(&probability - &model_value)).abs();
    let q = sys.field.p();
    Ok(ScanReport {
        q,
        n: sys.n,
        r,
        alpha,
        shifts: sys.shifts.clone(),
        s: tally.hits,
        s_squarefree: tally.squarefree_hits,
        all_squarefree: tally.all_squarefree,
        q_pow_n: tally.examined,
        probability,
        model_value,
        deviation,
        normalized_deviation: deviation * (q as f64).sqrt(),
    })
}

fn require_coincidence(sys: &ShiftSystem, alpha: Alpha) -> Result<()> {
    if sys.r() < 2 {
        return Err(Error::domain("a coincidence scan needs r ≥ 2 shifts"));
    }
    alpha.validate()
}

/// Exact `S_α` over all of `M_n`, sequentially.
pub fn scan(sys: &ShiftSystem, alpha: Alpha, opts: &ScanOptions) -> Result<ScanReport> {
    require_coincidence(sys, alpha)?;
    let size = check_budget(sys.field, sys.n, opts.budget)?;
    let tally = scan_range(sys, alpha, 0..size);
    report_from_tally(sys, alpha, tally)
}

/// Validates a scan request and returns `q^n`, for drivers that split the
/// range themselves.
pub fn prepare_scan(sys: &ShiftSystem, alpha: Alpha, opts: &ScanOptions) -> Result<u64> {
    require_coincidence(sys, alpha)?;
    check_budget(sys.field, sys.n, opts.budget)
}

/// Counts of `f` by the tuple of shifted cycle types `(λ(f + a_1), …, λ(f + a_r))`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct JointCensus {
    counts: BTreeMap<Vec<Partition>, u64>,
}

impl JointCensus {
    pub fn counts(&self) -> &BTreeMap<Vec<Partition>, u64> {
        &self.counts
    }

    pub fn get(&self, key: &[Partition]) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn merge(mut self, other: JointCensus) -> JointCensus {
        for (k, v) in other.counts {
            *self.counts.entry(k).or_insert(0) += v;
        }
        self
    }

    /// The census of coordinate `j` alone.
    pub fn marginal(&self, j: usize) -> BTreeMap<Partition, u64> {
        let mut out = BTreeMap::new();
        for (k, v) in &self.counts {
            *out.entry(k[j].clone()).or_insert(0) += v;
        }
        out
    }

    /// `max |count/q^n − ∏ p(λ^{(j)})|` over all tuples of partitions of `n`,
    /// including tuples that never occur.
    pub fn max_independence_gap(&self, n: usize, r: usize, q_pow_n: u64) -> f64 {
        let parts: Vec<Partition> = crate::partitions::enumerate_partitions(n).collect();
        let probs: Vec<f64> = parts.iter().map(|p| to_f64(&p.cauchy_probability())).collect();
        let mut worst = 0.0f64;
        let mut idx = alloc::vec![0usize; r];
        loop {
            let key: Vec<Partition> = idx.iter().map(|&i| parts[i].clone()).collect();
            let model: f64 = idx.iter().map(|&i| probs[i]).product();
            let observed = self.get(&key) as f64 / q_pow_n as f64;
            worst = worst.max((observed - model).abs());
            // odometer over r-tuples
            let mut pos = 0;
            loop {
                if pos == r {
                    return worst;
                }
                idx[pos] += 1;
                if idx[pos] < parts.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }
}

pub fn joint_census_range(sys: &ShiftSystem, range: Range<u64>) -> JointCensus {
    let mut census = JointCensus::default();
    for idx in range {
        let f = MonicPoly::from_index(sys.field, sys.n, idx);
        let key: Vec<Partition> = sys
            .shifted(&f)
            .map(|g| pattern(&g).cycle_type())
            .collect();
        *census.counts.entry(key).or_insert(0) += 1;
    }
    census
}

/// Exact joint census over all of `M_n`.
pub fn joint_census(sys: &ShiftSystem, opts: &ScanOptions) -> Result<JointCensus> {
    let size = check_budget(sys.field, sys.n, opts.budget)?;
    Ok(joint_census_range(sys, 0..size))
}

/// `#{f ∈ M_n : λ(f) = λ}` for every occurring `λ`.
pub fn cycle_type_census(field: PrimeField, n: usize, opts: &ScanOptions) -> Result<BTreeMap<Partition, u64>> {
    let sys = ShiftSystem::new(field, n, alloc::vec![Poly::zero(field)])?;
    Ok(joint_census(&sys, opts)?.marginal(0))
}

/// One report per prime, shifts `0, 1, …, r − 1`.
pub fn deviation_sweep(
    n: usize,
    r: usize,
    alpha: Alpha,
    primes: &[u64],
    opts: &ScanOptions,
) -> Result<Vec<ScanReport>> {
    primes
        .iter()
        .map(|&q| {
            let field = PrimeField::new(q)?;
            let sys = ShiftSystem::constants(field, n, r)?;
            scan(&sys, alpha, opts)
        })
        .collect()
}

/// Two cycle types realised by squarefree polynomials with the same totient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotientCollision {
    pub value: BigUint,
    pub left: Partition,
    pub right: Partition,
}

/// One factor pattern per squarefree cycle type seen in a range. The totient
/// depends only on the pattern, so a representative is enough.
pub type SquarefreeTypes = BTreeMap<Partition, FactorPattern>;

pub fn squarefree_types_range(field: PrimeField, n: usize, range: Range<u64>) -> SquarefreeTypes {
    let mut out = SquarefreeTypes::new();
    for idx in range {
        let fac = pattern(&MonicPoly::from_index(field, n, idx));
        if fac.is_squarefree() {
            out.entry(fac.cycle_type()).or_insert(fac);
        }
    }
    out
}

pub fn merge_squarefree_types(mut a: SquarefreeTypes, b: SquarefreeTypes) -> SquarefreeTypes {
    for (k, v) in b {
        a.entry(k).or_insert(v);
    }
    a
}

/// Every pair of distinct cycle types sharing a totient value, ordered by
/// value and then by the pair.
pub fn collisions_from_types(types: &SquarefreeTypes) -> Vec<TotientCollision> {
    let mut by_value: BTreeMap<BigUint, Vec<&Partition>> = BTreeMap::new();
    for (lambda, fac) in types {
        by_value.entry(totient(fac)).or_default().push(lambda);
    }
    let mut out = Vec::new();
    for (value, v) in by_value {
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                out.push(TotientCollision {
                    value: value.clone(),
                    left: v[i].clone(),
                    right: v[j].clone(),
                });
            }
        }
    }
    out
}

/// Squarefree `f, g ∈ M_n` with `λ(f) ≠ λ(g)` but `φ(f) = φ(g)`, reported
/// once per pair of cycle types.
pub fn collision_probe(n: usize, q: u64, opts: &ScanOptions) -> Result<Vec<TotientCollision>> {
    if n < 2 {
        return Err(Error::domain("collision probe needs n ≥ 2"));
    }
    let field = PrimeField::new(q)?;
    let size = check_budget(field, n, opts.budget)?;
    Ok(collisions_from_types(&squarefree_types_range(field, n, 0..size)))
}

/// Number of `f` in `range` with at least one non-squarefree `f + a_j`.
pub fn non_squarefree_tuples_range(sys: &ShiftSystem, range: Range<u64>) -> u64 {
    let mut count = 0;
    for idx in range {
        let f = MonicPoly::from_index(sys.field, sys.n, idx);
        let bad = sys
            .shifted(&f)
            .any(|g| !pattern(&g).is_squarefree());
        count += bad as u64;
    }
    count
}

/// Renders shifts as `"a1;a2;…"` in the polynomial text format.
pub fn shifts_to_text(shifts: &[Poly]) -> String {
    let mut s = String::new();
    for (i, a) in shifts.iter().enumerate() {
        if i > 0 {
            s.push(';');
        }
        s.push_str(&a.to_text());
    }
    s
}

/// Parses `"a1;a2;…"`, each shift in the polynomial text format.
pub fn parse_shifts(field: PrimeField, text: &str) -> Result<Vec<Poly>> {
    text.split(';').map(|t| Poly::parse(field, t)).collect()
}
