//! Truncated power series with exact rational coefficients, and the
//! generating function `W^{(r)}(z) = Σ W_r(n) z^n`.
//!
//! `W^{(r)}(z)` is computed two ways: as the product `∏_k I_r(z^k / k^r)` of
//! hypergeometric factors `I_r(y) = Σ y^j / (j!)^r`, and as
//! `exp(Σ_ℓ h_ℓ Li_{rℓ}(z^ℓ))` where `h_ℓ` are the coefficients of
//! `log I_r(y)`. Both are exact, so they must agree coefficient by coefficient.
//!
//! The constant `A_r = W^{(r)}(1) = ∏_k I_r(1/k^r)` is bracketed in floating
//! point by [`a_r_product`].

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
// float methods come from num_traits when std is absent
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::{One, Pow, Zero};

use crate::numeric::{compensated_sum, CompensatedSum};
use crate::rational::{factorial, integer, to_f64, Rational};
use crate::{Error, Result};

/// A power series `c_0 + c_1 z + … + c_N z^N + O(z^{N+1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    /// Series with the given coefficients; the order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::domain("a truncated series needs at least one coefficient"));
        }
        Ok(TruncatedSeries { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(TruncatedSeries { coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(TruncatedSeries { coeffs })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Formal derivative; the top coefficient becomes zero so the order is kept.
    pub fn derivative(&self) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for i in 1..=n {
            out.coeffs[i - 1] = &self.coeffs[i] * integer(i as u64);
        }
        out
    }

    /// Formal `log f` for `f(0) = 1`, from `m g_m = m f_m − Σ_{i<m} i g_i f_{m−i}`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::domain("formal log needs constant term 1"));
        }
        let n = self.order();
        let mut g = Self::zero(n);
        for m in 1..=n {
            let mut acc = &self.coeffs[m] * integer(m as u64);
            for i in 1..m {
                if !g.coeffs[i].is_zero() && !self.coeffs[m - i].is_zero() {
                    acc -= &g.coeffs[i] * &self.coeffs[m - i] * integer(i as u64);
                }
            }
            g.coeffs[m] = acc / integer(m as u64);
        }
        Ok(g)
    }

    /// Formal `exp g` for `g(0) = 0`, from `m e_m = Σ_{i≤m} i g_i e_{m−i}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::domain("formal exp needs constant term 0"));
        }
        let n = self.order();
        let mut e = Self::one(n);
        for m in 1..=n {
            let mut acc = Rational::zero();
            for i in 1..=m {
                if !self.coeffs[i].is_zero() && !e.coeffs[m - i].is_zero() {
                    acc += &self.coeffs[i] * &e.coeffs[m - i] * integer(i as u64);
                }
            }
            e.coeffs[m] = acc / integer(m as u64);
        }
        Ok(e)
    }

    /// Value of the truncated polynomial at `x`.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Multiplies in place by a series that is nonzero only at multiples of
    /// `step`: `factor[j]` is the coefficient of `z^{j·step}`.
    fn mul_sparse_in_place(&mut self, step: usize, factor: &[Rational]) {
        let n = self.order();
        let old = core::mem::replace(self, Self::zero(n));
        for (i, a) in old.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in factor.iter().enumerate() {
                let idx = i + j * step;
                if idx > n {
                    break;
                }
                self.coeffs[idx] += a * b;
            }
        }
    }
}

/// Coefficients `y^j / (j!)^r`, `j = 0..=order`, of `I_r(y·x)` in the formal
/// variable `x`. With `y = 1` this is `I_r` itself; [`TruncatedSeries::eval`]
/// at `x = 1` gives the partial sum of `I_r(y)`.
pub fn hyper_ir(r: u32, y: &Rational, order: usize) -> Result<TruncatedSeries> {
    require_r(r)?;
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut term = Rational::one();
    coeffs.push(term.clone());
    for j in 1..=order {
        term = term * y / integer(Pow::pow(BigUint::from(j), r));
        coeffs.push(term.clone());
    }
    Ok(TruncatedSeries { coeffs })
}

fn require_r(r: u32) -> Result<()> {
    if r < 2 {
        return Err(Error::domain(alloc::format!("r must be at least 2, got {r}")));
    }
    Ok(())
}

/// Coefficients of `I_r(z^k / k^r)` at `z^0, z^k, z^{2k}, …` up to `z^order`.
fn hyper_factor(r: u32, k: usize, order: usize) -> Vec<Rational> {
    let y = Rational::new(BigInt::one(), Pow::pow(BigInt::from(k), r));
    let terms = order / k;
    hyper_ir(r, &y, terms).expect("r checked by caller").into_coeffs()
}

/// `∏_{k=1}^{N} I_r(z^k/k^r)` truncated at `z^N`. Coefficient `n` is `W_r(n)`.
pub fn w_series_product(r: u32, order: usize) -> Result<TruncatedSeries> {
    w_series_partial_product(r, 1..=order, order)
}

/// `∏_{k ∈ ks} I_r(z^k/k^r)` truncated at `z^order`. Products over disjoint
/// ranges multiply to [`w_series_product`]; factors with `k > order` are 1.
pub fn w_series_partial_product(
    r: u32,
    ks: core::ops::RangeInclusive<usize>,
    order: usize,
) -> Result<TruncatedSeries> {
    require_r(r)?;
    if *ks.start() == 0 {
        return Err(Error::domain("factor index k starts at 1"));
    }
    let mut acc = TruncatedSeries::one(order);
    for k in ks {
        if k > order {
            break;
        }
        acc.mul_sparse_in_place(k, &hyper_factor(r, k, order));
    }
    Ok(acc)
}

/// The single factor `I_r(z^k/k^r)` as a dense series of the given order.
pub fn w_series_factor(r: u32, k: usize, order: usize) -> Result<TruncatedSeries> {
    require_r(r)?;
    if k == 0 {
        return Err(Error::domain("factor index k starts at 1"));
    }
    let mut s = TruncatedSeries::zero(order);
    for (j, c) in hyper_factor(r, k, order).into_iter().enumerate() {
        s.coeffs[j * k] = c;
    }
    Ok(s)
}

/// `h_0 = 0, h_1, …, h_N`: coefficients of `H_r(y) = log I_r(y)`.
pub fn log_hyper_coefficients(r: u32, order: usize) -> Result<Vec<Rational>> {
    Ok(hyper_ir(r, &Rational::one(), order)?.log()?.into_coeffs())
}

/// `Li_ν(z) = Σ_{j≥1} z^j / j^ν` truncated at `z^N`.
pub fn polylog(nu: u32, order: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(order);
    for j in 1..=order {
        s.coeffs[j] = Rational::new(BigInt::one(), Pow::pow(BigInt::from(j), nu));
    }
    s
}

/// `exp(Σ_ℓ h_ℓ Li_{rℓ}(z^ℓ))` truncated at `z^N`; equals [`w_series_product`].
pub fn w_series_exp_polylog(r: u32, order: usize) -> Result<TruncatedSeries> {
    require_r(r)?;
    let h = log_hyper_coefficients(r, order)?;
    let mut exponent = TruncatedSeries::zero(order);
    for (l, h_l) in h.iter().enumerate().skip(1) {
        if h_l.is_zero() {
            continue;
        }
        // h_ℓ Li_{rℓ}(z^ℓ) contributes h_ℓ / j^{rℓ} at z^{jℓ}.
        let li = polylog(r * l as u32, order / l);
        for (j, c) in li.coeffs.iter().enumerate().skip(1) {
            exponent.coeffs[j * l] += h_l * c;
        }
    }
    exponent.exp()
}

/// Floating-point coefficients of `∏_k I_r(z^k/k^r)`, for orders where exact
/// rationals get expensive. Each coefficient update is a compensated sum of
/// positive terms.
pub fn w_series_product_f64(r: u32, order: usize) -> Result<Vec<f64>> {
    require_r(r)?;
    let mut acc = vec![0.0f64; order + 1];
    acc[0] = 1.0;
    for k in 1..=order {
        let y = (k as f64).powi(-(r as i32));
        let mut terms = vec![1.0f64];
        let mut t = 1.0f64;
        for j in 1..=order / k {
            t *= y / (j as f64).powi(r as i32);
            terms.push(t);
        }
        let mut next = vec![0.0f64; order + 1];
        for (m, slot) in next.iter_mut().enumerate() {
            let mut s = CompensatedSum::new();
            for (j, tj) in terms.iter().enumerate() {
                let Some(i) = m.checked_sub(j * k) else { break };
                s.add(acc[i] * tj);
            }
            *slot = s.value();
        }
        acc = next;
    }
    Ok(acc)
}

/// A one-sided bracket for a constant: the true value lies in
/// `[value, value · e^{tail_bound}]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantEstimate {
    pub value: f64,
    pub tail_bound: f64,
    pub terms_used: u64,
}

impl ConstantEstimate {
    pub fn lower(&self) -> f64 {
        self.value
    }

    pub fn upper(&self) -> f64 {
        self.value * self.tail_bound.exp()
    }

    pub fn width(&self) -> f64 {
        self.upper() - self.lower()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower() <= x && x <= self.upper()
    }
}

/// Number of factors [`a_r_product`] needs for a bracket narrower than 1e-4
/// (r = 2) or 1e-5 (r ≥ 3).
pub fn default_factor_count(r: u32) -> u64 {
    match r {
        0..=2 => 100_000,
        3 => 1_000,
        _ => 100,
    }
}

pub const DEFAULT_TERMS_PER_FACTOR: u32 = 20;

/// Bracket for `A_r = ∏_{k≥1} I_r(1/k^r)` from the first `k_max` factors, each
/// summed to `terms` terms.
///
/// The omitted factors satisfy `I_r(y) ≤ e^y`, so together they contribute at
/// most `exp(Σ_{k>K} k^{-r}) ≤ exp(1/((r−1)K^{r−1}))`. Truncating each factor
/// after `J` terms loses at most twice the first omitted term (ratio test with
/// `y ≤ 1`). Floating-point rounding of the log-sum is charged to the bracket
/// as well: the lower end is nudged down and the bound widened accordingly.
pub fn a_r_product(r: u32, k_max: u64, terms: u32) -> Result<ConstantEstimate> {
    require_r(r)?;
    if k_max == 0 {
        return Err(Error::domain("need at least one factor"));
    }
    if terms == 0 {
        return Err(Error::domain("need at least one term per factor"));
    }
    let ri = r as i32;
    let mut log_sum = CompensatedSum::new();
    let mut truncation = CompensatedSum::new();
    for k in 1..=k_max {
        let y = (k as f64).powi(-ri);
        // partial sum minus the leading 1, kept separate for ln_1p accuracy
        let mut t = 1.0f64;
        let mut tail = CompensatedSum::new();
        for j in 1..terms {
            t *= y / (j as f64).powi(ri);
            if t == 0.0 {
                break;
            }
            tail.add(t);
        }
        log_sum.add(tail.value().ln_1p());
        let next = t * y / (terms as f64).powi(ri);
        truncation.add(2.0 * next);
    }
    let omitted = 1.0 / ((r as f64 - 1.0) * (k_max as f64).powi(ri - 1));
    // a few ulps per factor, for the ln_1p and summation error
    let rounding = 8.0 * f64::EPSILON * (k_max as f64 + 1.0);
    let value = (log_sum.value() - rounding).exp();
    Ok(ConstantEstimate {
        value,
        tail_bound: omitted + truncation.value() + 2.0 * rounding,
        terms_used: k_max,
    })
}

/// `Σ_{m=0}^{M} W_r(m)`, exact and as a float, plus a non-certified estimate
/// `A_r · Σ_{m>M} m^{-r}` of the remaining tail.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialSum {
    pub exact: Rational,
    pub value: f64,
    pub tail_estimate: f64,
}

pub fn a_r_partial_sum(r: u32, m_max: usize, a_r: f64) -> Result<PartialSum> {
    let coeffs = w_series_product(r, m_max)?.into_coeffs();
    let exact: Rational = coeffs.into_iter().sum();
    let value = to_f64(&exact);
    Ok(PartialSum {
        exact,
        value,
        tail_estimate: a_r * zeta_tail(r, m_max),
    })
}

/// `Σ_{m>M} m^{-r}`: explicit terms for a while, then the midpoint integral.
fn zeta_tail(r: u32, m_max: usize) -> f64 {
    let ri = r as i32;
    let stop = m_max + 1000;
    let head = compensated_sum((m_max + 1..=stop).map(|m| (m as f64).powi(-ri)));
    head + 1.0 / ((r as f64 - 1.0) * (stop as f64 + 0.5).powi(ri - 1))
}

/// `W_r(0), …, W_r(N)` read off [`w_series_product`].
pub fn w_r_table(r: u32, order: usize) -> Result<Vec<Rational>> {
    Ok(w_series_product(r, order)?.into_coeffs())
}

/// `1/(j!)^r` as a rational, exposed for oracles.
pub fn inverse_factorial_power(j: usize, r: u32) -> Rational {
    Rational::new(BigInt::one(), Pow::pow(factorial(j), r).into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn hyper_ir_examples() {
        let s = hyper_ir(2, &Rational::zero(), 8).unwrap();
        assert_eq!(s.eval(&Rational::one()), Rational::one());
        for r in 2..6 {
            assert_eq!(hyper_ir(r, &Rational::one(), 3).unwrap().coeff(1), Rational::one());
        }
        // direct summation of 1/(j!)^2 for j < 10
        let direct: f64 = (0..10).map(|j| 1.0 / (1..=j).product::<u64>().pow(2) as f64).sum();
        let got = to_f64(&hyper_ir(2, &Rational::one(), 9).unwrap().eval(&Rational::one()));
        assert!((got - direct).abs() < 1e-15);
        assert!((got - 2.2795853).abs() < 1e-7);
    }

    #[test]
    fn product_examples() {
        let w = w_series_product(2, 6).unwrap();
        assert_eq!(w.coeff(0), Rational::one());
        assert_eq!(w.coeff(1), Rational::one());
        assert_eq!(w.coeff(2), ratio(1, 2));
        assert_eq!(w.coeff(3), ratio(7, 18));
        assert_eq!(w.coeff(4), ratio(73, 288));
    }

    #[test]
    fn exp_polylog_examples() {
        for r in 2..6 {
            let h = log_hyper_coefficients(r, 4).unwrap();
            assert_eq!(h[0], Rational::zero());
            assert_eq!(h[1], Rational::one());
        }
        let a = w_series_product(2, 10).unwrap();
        let b = w_series_exp_polylog(2, 10).unwrap();
        assert_eq!(a, b);
        assert_eq!(b.coeff(1), Rational::one());
    }

    #[test]
    fn log_exp_round_trip() {
        let f = w_series_product(3, 12).unwrap();
        assert_eq!(f.log().unwrap().exp().unwrap(), f);
        assert!(f.exp().is_err());
        assert!(TruncatedSeries::zero(3).log().is_err());
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let a = TruncatedSeries::one(3);
        let b = TruncatedSeries::one(4);
        assert_eq!(a.checked_mul(&b), Err(Error::OrderMismatch(3, 4)));
        assert!(a.checked_add(&b).is_err());
        assert!(TruncatedSeries::from_coeffs(Vec::new()).is_err());
    }

    #[test]
    fn sparse_and_dense_products_agree() {
        let n = 12;
        let mut dense = TruncatedSeries::one(n);
        for k in 1..=n {
            dense = dense.checked_mul(&w_series_factor(2, k, n).unwrap()).unwrap();
        }
        assert_eq!(dense, w_series_product(2, n).unwrap());
    }

    #[test]
    fn float_series_tracks_exact() {
        let exact = w_series_product(2, 40).unwrap();
        let float = w_series_product_f64(2, 40).unwrap();
        for (e, f) in exact.coeffs().iter().zip(&float) {
            assert!((to_f64(e) / f - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn partial_sum_examples() {
        assert_eq!(a_r_partial_sum(2, 0, 4.2634).unwrap().exact, Rational::one());
        assert_eq!(a_r_partial_sum(2, 2, 4.2634).unwrap().exact, ratio(5, 2));
    }

    #[test]
    fn product_bracket_rejects_bad_input() {
        assert!(a_r_product(1, 10, 10).is_err());
        assert!(a_r_product(2, 0, 10).is_err());
        assert!(a_r_product(2, 10, 0).is_err());
    }

    #[test]
    fn small_bracket_contains_large_one() {
        let coarse = a_r_product(3, 50, 20).unwrap();
        let fine = a_r_product(3, 500, 20).unwrap();
        assert!(coarse.contains(fine.lower()) && coarse.contains(fine.upper()));
    }

    #[test]
    fn inverse_factorial_power_matches_hyper_coefficients() {
        let s = hyper_ir(3, &Rational::one(), 6).unwrap();
        for j in 0..=6 {
            assert_eq!(s.coeff(j), inverse_factorial_power(j, 3));
        }
    }

    #[test]
    fn partial_products_recombine() {
        for r in [2u32, 3] {
            let full = w_series_product(r, 24).unwrap();
            let left = w_series_partial_product(r, 1..=7, 24).unwrap();
            let right = w_series_partial_product(r, 8..=40, 24).unwrap();
            assert_eq!(left.checked_mul(&right).unwrap(), full);
        }
        assert!(w_series_partial_product(2, 0..=3, 5).is_err());
    }
}
