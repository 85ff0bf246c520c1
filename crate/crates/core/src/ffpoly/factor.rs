//! Factorization over `F_p`: squarefree decomposition, distinct-degree
//! splitting with `gcd(T^{q^d} − T, ·)`, then Cantor–Zassenhaus equal-degree
//! splitting. A plain trial-division factorizer is kept alongside as an
//! independent reference.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::field::PrimeField;
use super::poly::{field_power, MonicPoly, Poly};
use crate::partitions::Partition;
use crate::{Error, Result};

/// `unit · ∏ P_i^{e_i}` with distinct monic irreducible `P_i`, sorted by
/// degree and then coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    field: PrimeField,
    unit: u64,
    factors: Vec<(MonicPoly, u32)>,
}

impl Factorization {
    fn from_map(field: PrimeField, unit: u64, map: BTreeMap<MonicPoly, u32>) -> Self {
        Factorization {
            field,
            unit,
            factors: map.into_iter().collect(),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn unit(&self) -> u64 {
        self.unit
    }

    pub fn factors(&self) -> &[(MonicPoly, u32)] {
        &self.factors
    }

    /// Multiplies the factorization back out.
    pub fn expand(&self) -> Poly {
        let mut acc = Poly::constant(self.field, self.unit);
        for (p, e) in &self.factors {
            for _ in 0..*e {
                acc = acc.mul(p.as_poly()).expect("same field");
            }
        }
        acc
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(|(p, e)| p.degree() * *e as usize).sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }

    /// `λ_i` = number of irreducible factors of degree `i`, with multiplicity.
    pub fn cycle_type(&self) -> Partition {
        let mut mult = vec![0u32; self.degree()];
        for (p, e) in &self.factors {
            mult[p.degree() - 1] += e;
        }
        Partition::new(mult).expect("degrees add up")
    }
}

/// Degree and multiplicity of every distinct irreducible factor of a
/// nonzero polynomial, without the factors themselves. Cheaper than a full
/// factorization and free of randomness.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactorPattern {
    field: PrimeField,
    /// `(degree, multiplicity)`, sorted.
    pairs: Vec<(usize, u32)>,
}

impl FactorPattern {
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn pairs(&self) -> &[(usize, u32)] {
        &self.pairs
    }

    pub fn degree(&self) -> usize {
        self.pairs.iter().map(|&(d, e)| d * e as usize).sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.pairs.iter().all(|&(_, e)| e == 1)
    }

    pub fn cycle_type(&self) -> Partition {
        let mut mult = vec![0u32; self.degree()];
        for &(d, e) in &self.pairs {
            mult[d - 1] += e;
        }
        Partition::new(mult).expect("degrees add up")
    }
}

impl Factorization {
    pub fn pattern(&self) -> FactorPattern {
        let mut pairs: Vec<(usize, u32)> = self.factors.iter().map(|(p, e)| (p.degree(), *e)).collect();
        pairs.sort_unstable();
        FactorPattern {
            field: self.field,
            pairs,
        }
    }
}

/// The [`FactorPattern`] of a nonzero polynomial: squarefree decomposition
/// and distinct-degree factorization, no equal-degree splitting.
pub fn factor_pattern(f: &Poly) -> Result<FactorPattern> {
    if f.is_zero() {
        return Err(Error::domain("cannot factor the zero polynomial"));
    }
    let mut pairs = Vec::new();
    for (part, mult) in squarefree_decomposition(f)? {
        for (block, d) in distinct_degree_factorization(&part)? {
            let count = block.degree().expect("nonzero block") / d;
            pairs.extend(core::iter::repeat_n((d, mult), count));
        }
    }
    pairs.sort_unstable();
    Ok(FactorPattern {
        field: f.field(),
        pairs,
    })
}

/// Knobs for [`factor_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[derive(Default)]
pub struct FactorOptions {
    /// Seed of the equal-degree splitting stream.
    pub seed: u64,
    /// Use trial division instead when `p^{⌊deg/2⌋}` is at most this.
    pub trial_division_below: u64,
}


/// Factorization of a monic polynomial with default options.
pub fn factor(f: &MonicPoly) -> Factorization {
    factor_with(f.as_poly(), FactorOptions::default()).expect("monic input is nonzero")
}

/// Factorization of any nonzero polynomial; `unit` is its leading coefficient.
pub fn factor_with(f: &Poly, opts: FactorOptions) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::domain("cannot factor the zero polynomial"));
    }
    let field = f.field();
    let unit = f.leading();
    let monic = f.monic();
    let deg = monic.degree().unwrap_or(0);
    if let Some(size) = field_power(field.p(), deg / 2) {
        if size <= opts.trial_division_below as u128 {
            let m = MonicPoly::new(monic)?;
            let mut fac = factor_by_trial_division(&m);
            fac.unit = unit;
            return Ok(fac);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut map = BTreeMap::new();
    for (part, mult) in squarefree_decomposition(&monic)? {
        for (block, d) in distinct_degree_factorization(&part)? {
            for irr in equal_degree_factorization(&block, d, &mut rng)? {
                *map.entry(MonicPoly::new(irr)?).or_insert(0) += mult;
            }
        }
    }
    Ok(Factorization::from_map(field, unit, map))
}

/// Whether `f` has no repeated irreducible factor: `gcd(f, f') = 1`. A zero
/// derivative means `f` is a `p`-th power, hence not squarefree.
pub fn is_squarefree(f: &Poly) -> Result<bool> {
    if f.is_constant() {
        return Err(Error::domain("squarefreeness of a constant is undefined"));
    }
    let d = f.derivative();
    if d.is_zero() {
        return Ok(false);
    }
    Ok(f.gcd(&d)?.is_one())
}

/// `p`-th root of a polynomial whose exponents are all multiples of `p`.
fn pth_root(f: &Poly) -> Poly {
    let p = f.field().p() as usize;
    let coeffs = f.coeffs().iter().step_by(p).copied().collect();
    Poly::new(f.field(), coeffs)
}

/// Monic `f = ∏ g_i^{m_i}` with each `g_i` squarefree and pairwise coprime.
pub fn squarefree_decomposition(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    let f = f.monic();
    let mut out = Vec::new();
    if f.is_constant() {
        return Ok(out);
    }
    let p = f.field().p() as u32;
    let d = f.derivative();
    let mut rest = if d.is_zero() {
        f.clone()
    } else {
        let mut c = f.gcd(&d)?;
        if c.is_one() {
            out.push((f, 1));
            return Ok(out);
        }
        let mut w = f.exact_div(&c)?;
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c)?;
            let z = w.exact_div(&y)?;
            if !z.is_one() {
                out.push((z, i));
            }
            c = c.exact_div(&y)?;
            w = y;
            i += 1;
        }
        c
    };
    if !rest.is_one() {
        rest = pth_root(&rest);
        for (g, m) in squarefree_decomposition(&rest)? {
            out.push((g, m * p));
        }
    }
    Ok(out)
}

/// Splits a monic squarefree `f` into `(product of its degree-d factors, d)`.
pub fn distinct_degree_factorization(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let field = f.field();
    let x = Poly::x(field);
    let mut rest = f.monic();
    let mut out = Vec::new();
    let mut h = x.rem(&rest)?;
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(field.p(), &rest)?;
        let g = h.sub(&x)?.gcd(&rest)?;
        if !g.is_one() {
            rest = rest.exact_div(&g)?;
            h = h.rem(&rest)?;
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(deg) = rest.degree().filter(|&deg| deg > 0) {
        out.push((rest, deg));
    }
    Ok(out)
}

fn random_poly(field: PrimeField, below_degree: usize, rng: &mut ChaCha8Rng) -> Poly {
    let coeffs = (0..below_degree).map(|_| rng.next_u64() % field.p()).collect();
    Poly::new(field, coeffs)
}

/// Splits a monic squarefree `f` whose irreducible factors all have degree
/// `d` into those factors (Cantor–Zassenhaus; the trace map when `p = 2`).
pub fn equal_degree_factorization(
    f: &Poly,
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Poly>> {
    let deg = f.degree().ok_or(Error::DivisionByZero)?;
    if d == 0 || deg % d != 0 {
        return Err(Error::domain("degree is not a multiple of the factor degree"));
    }
    if deg == d {
        return Ok(vec![f.monic()]);
    }
    let field = f.field();
    let q = field.p();
    loop {
        let a = random_poly(field, deg, rng);
        if a.is_constant() {
            continue;
        }
        let b = if q == 2 {
            // Tr(a) = a + a^2 + … + a^{2^{d-1}}
            let mut term = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                term = term.mul(&term)?.rem(f)?;
                acc = acc.add(&term)?;
            }
            acc
        } else {
            // a^{(q^d - 1)/2} = (a · a^q · … · a^{q^{d-1}})^{(q - 1)/2}
            let mut conj = a.clone();
            let mut norm = a.clone();
            for _ in 1..d {
                conj = conj.pow_mod(q, f)?;
                norm = norm.mul(&conj)?.rem(f)?;
            }
            norm.pow_mod((q - 1) / 2, f)?.sub(&Poly::one(field))?
        };
        let g = b.gcd(f)?;
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < deg {
            let mut out = equal_degree_factorization(&g, d, rng)?;
            out.extend(equal_degree_factorization(&f.exact_div(&g)?, d, rng)?);
            out.sort();
            return Ok(out);
        }
    }
}

/// Reference factorizer: divide out monic candidates of increasing degree in
/// index order. Every candidate that divides is irreducible because all
/// smaller-degree factors are already gone.
pub fn factor_by_trial_division(f: &MonicPoly) -> Factorization {
    let field = f.field();
    let mut rest = f.as_poly().clone();
    let mut map = BTreeMap::new();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        let count = field_power(field.p(), d).expect("trial division size fits u128");
        for idx in 0..count {
            if rest.degree().unwrap_or(0) < 2 * d {
                break;
            }
            let cand = MonicPoly::from_index(field, d, idx as u64);
            loop {
                let (quo, rem) = rest.div_rem(cand.as_poly()).expect("nonzero divisor");
                if !rem.is_zero() {
                    break;
                }
                rest = quo;
                *map.entry(cand.clone()).or_insert(0) += 1;
            }
        }
        d += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        *map.entry(MonicPoly::new(rest).expect("quotient of monic is monic")).or_insert(0) += 1;
    }
    Factorization::from_map(field, 1, map)
}
