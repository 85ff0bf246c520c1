use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use super::field::PrimeField;
use crate::{Error, Result};

/// A polynomial over `F_p`, coefficients little-endian with no trailing zeros
/// (the zero polynomial has no coefficients).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn zero(field: PrimeField) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: PrimeField) -> Self {
        Self::constant(field, 1)
    }

    pub fn constant(field: PrimeField, c: u64) -> Self {
        Self::new(field, vec![c])
    }

    /// The indeterminate `T`.
    pub fn x(field: PrimeField) -> Self {
        Self::new(field, vec![0, 1])
    }

    pub fn monomial(field: PrimeField, c: u64, degree: usize) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = c;
        Self::new(field, coeffs)
    }

    /// Reduces every coefficient mod `p` and trims trailing zeros.
    pub fn new(field: PrimeField, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c = field.reduce(*c);
        }
        let mut p = Poly { field, coeffs };
        p.trim();
        p
    }

    pub fn from_signed(field: PrimeField, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.reduce_signed(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    fn check_field(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.p(), other.field.p()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let f = self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Ok(Poly::new(f, coeffs))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let f = self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Ok(Poly::new(f, coeffs))
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.field));
        }
        let f = self.field;
        let mut acc = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = f.add(acc[i + j], f.mul(a, b));
            }
        }
        Ok(Poly::new(f, acc))
    }

    pub fn scale(&self, c: u64) -> Poly {
        let f = self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Euclidean division: `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(divisor)?;
        let f = self.field;
        let Some(dd) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        let lead = divisor.leading();
        let lead_inv = if lead == 1 { 1 } else { f.inv(lead).expect("nonzero leading coefficient") };
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = f.mul(rem[i], lead_inv);
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let k = i - dd + j;
                rem[k] = f.sub(rem[k], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        self.check_field(divisor)?;
        let Some(dd) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        if self.coeffs.len() <= dd {
            return Ok(self.clone());
        }
        let mut rem = self.coeffs.clone();
        reduce_in_place(self.field, &mut rem, &divisor.coeffs);
        let mut out = Poly {
            field: self.field,
            coeffs: rem,
        };
        out.trim();
        Ok(out)
    }

    /// Exact quotient; errors if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Invariant(alloc::format!(
                "{divisor} does not divide {self}"
            )));
        }
        Ok(q)
    }

    /// Scales to leading coefficient 1; the zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        match self.field.inv(self.leading()) {
            Some(inv) if !self.is_zero() => self.scale(inv),
            _ => self.clone(),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let f = self.field;
        let mut a = self.coeffs.clone();
        let mut b = other.coeffs.clone();
        while !b.is_empty() {
            if a.len() >= b.len() {
                reduce_in_place(f, &mut a, &b);
                while a.last() == Some(&0) {
                    a.pop();
                }
            }
            core::mem::swap(&mut a, &mut b);
        }
        Ok(Poly { field: f, coeffs: a }.monic())
    }

    pub fn derivative(&self) -> Poly {
        let f = self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.reduce(i as u64)))
            .collect();
        Poly::new(f, coeffs)
    }

    /// `self^exp mod modulus`.
    pub fn pow_mod(&self, mut exp: u64, modulus: &Poly) -> Result<Poly> {
        let f = self.field;
        let mut base = self.rem(modulus)?.coeffs;
        let m = &modulus.coeffs;
        let mut acc = if m.len() > 1 { vec![1] } else { Vec::new() };
        let mut tmp = Vec::with_capacity(2 * m.len());
        while exp > 0 {
            if exp & 1 == 1 {
                mul_mod_into(f, &acc, &base, m, &mut tmp);
                core::mem::swap(&mut acc, &mut tmp);
            }
            exp >>= 1;
            if exp > 0 {
                mul_mod_into(f, &base, &base, m, &mut tmp);
                core::mem::swap(&mut base, &mut tmp);
            }
        }
        Ok(Poly { field: f, coeffs: acc })
    }

    /// `T^{q^d} mod modulus` by `d` successive `q`-th powers.
    pub fn frobenius_x(modulus: &Poly, d: usize) -> Result<Poly> {
        let q = modulus.field.p();
        let mut h = Poly::x(modulus.field).rem(modulus)?;
        for _ in 0..d {
            h = h.pow_mod(q, modulus)?;
        }
        Ok(h)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let f = self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Little-endian text form, `"c0,c1,...,cn"`; zero is `"0"`.
    pub fn to_text(&self) -> String {
        use core::fmt::Write;
        if self.is_zero() {
            return String::from("0");
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            write!(s, "{c}").expect("writing to a String");
        }
        s
    }

    /// Parses the little-endian text form. Coefficients must already lie in
    /// `[0, p)`; a trailing zero other than the lone `"0"` is rejected so the
    /// format stays canonical.
    pub fn parse(field: PrimeField, text: &str) -> Result<Poly> {
        let text = text.trim();
        let mut coeffs = Vec::new();
        for tok in text.split(',') {
            let c: u64 = tok
                .trim()
                .parse()
                .map_err(|_| Error::Parse(alloc::format!("bad coefficient {tok:?} in {text:?}")))?;
            if c >= field.p() {
                return Err(Error::Parse(alloc::format!(
                    "coefficient {c} not reduced mod {}",
                    field.p()
                )));
            }
            coeffs.push(c);
        }
        if coeffs.len() > 1 && coeffs.last() == Some(&0) {
            return Err(Error::Parse(alloc::format!("trailing zero coefficient in {text:?}")));
        }
        Ok(Poly::new(field, coeffs))
    }
}

/// Degree first, then little-endian coefficients lexicographically.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .cmp(&other.field)
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A monic polynomial (leading coefficient 1, so never zero).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonicPoly(Poly);

impl MonicPoly {
    pub fn new(poly: Poly) -> Result<Self> {
        if !poly.is_monic() {
            return Err(Error::domain(alloc::format!("{poly} is not monic")));
        }
        Ok(MonicPoly(poly))
    }

    /// `c_0 + c_1 T + … + c_{n-1} T^{n-1} + T^n` from the `n` low coefficients.
    pub fn from_low_coeffs(field: PrimeField, low: &[u64]) -> Self {
        let mut coeffs: Vec<u64> = low.iter().map(|&c| field.reduce(c)).collect();
        coeffs.push(1);
        MonicPoly(Poly { field, coeffs })
    }

    /// The `index`-th monic polynomial of degree `n`: the base-`p` digits of
    /// `index` (least significant first) are `c_0, …, c_{n-1}`.
    pub fn from_index(field: PrimeField, n: usize, mut index: u64) -> Self {
        let p = field.p();
        let mut coeffs = Vec::with_capacity(n + 1);
        for _ in 0..n {
            coeffs.push(index % p);
            index /= p;
        }
        coeffs.push(1);
        MonicPoly(Poly { field, coeffs })
    }

    pub fn degree(&self) -> usize {
        self.0.coeffs.len() - 1
    }

    pub fn field(&self) -> PrimeField {
        self.0.field
    }

    pub fn as_poly(&self) -> &Poly {
        &self.0
    }

    pub fn into_poly(self) -> Poly {
        self.0
    }

    /// `self + shift`, which stays monic when `deg shift < deg self`.
    pub fn shifted(&self, shift: &Poly) -> Result<MonicPoly> {
        MonicPoly::new(self.0.add(shift)?)
    }
}

impl fmt::Display for MonicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Replaces `rem` (length `> deg divisor`) by its remainder modulo `divisor`,
/// truncated to `deg divisor` coefficients and not trimmed.
fn reduce_in_place(f: PrimeField, rem: &mut Vec<u64>, divisor: &[u64]) {
    let dd = divisor.len() - 1;
    let lead = divisor[dd];
    let lead_inv = if lead == 1 { 1 } else { f.inv(lead).expect("nonzero leading coefficient") };
    for i in (dd..rem.len()).rev() {
        let c = f.mul(rem[i], lead_inv);
        if c == 0 {
            continue;
        }
        for (j, &d) in divisor[..dd].iter().enumerate() {
            let k = i - dd + j;
            rem[k] = f.sub(rem[k], f.mul(c, d));
        }
    }
    rem.truncate(dd);
}

/// `out = a·b mod m`, trimmed; `a` and `b` are already reduced.
fn mul_mod_into(f: PrimeField, a: &[u64], b: &[u64], m: &[u64], out: &mut Vec<u64>) {
    out.clear();
    if a.is_empty() || b.is_empty() {
        return;
    }
    out.resize(a.len() + b.len() - 1, 0);
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    if out.len() >= m.len() {
        reduce_in_place(f, out, m);
    }
    while out.last() == Some(&0) {
        out.pop();
    }
}

/// `p^n` as a `u128`, or `None` on overflow.
pub(crate) fn field_power(p: u64, n: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..n {
        acc = acc.checked_mul(p as u128)?;
    }
    Some(acc)
}
