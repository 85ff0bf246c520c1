//! The fast factorizer against trial division, plus round trips on random input.

use cyclestat_core::ffpoly::{
    factor, factor_by_trial_division, factor_with, totient, FactorOptions, MonicPoly, Poly,
    PrimeField,
};
use num_bigint::BigUint;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

fn fp(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

#[test]
fn matches_trial_division_q_le_7_n_le_6() {
    for q in [2u64, 3, 5, 7] {
        let field = fp(q);
        for n in 1..=6 {
            let size = q.pow(n as u32);
            for idx in 0..size {
                let f = MonicPoly::from_index(field, n, idx);
                assert_eq!(factor(&f), factor_by_trial_division(&f), "q={q} f={f}");
            }
        }
    }
}

#[test]
fn random_round_trips() {
    let grid: [(u64, usize); 6] = [(2, 12), (3, 8), (7, 6), (101, 5), (65521, 4), (1_000_000_007, 3)];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (q, n) in grid {
        let field = fp(q);
        for _ in 0..100_000 {
            let mut coeffs: Vec<u64> = (0..=n).map(|_| rng.next_u64() % q).collect();
            if coeffs[n] == 0 {
                coeffs[n] = 1;
            }
            let f = Poly::new(field, coeffs);
            let seed = rng.next_u64();
            let fac = factor_with(&f, FactorOptions { seed, trial_division_below: 0 }).unwrap();
            assert_eq!(fac.expand(), f);
            assert_eq!(fac.degree(), n);
            assert_eq!(fac.unit(), f.leading());
        }
    }
}

#[test]
fn seeds_do_not_change_the_factorization() {
    let field = fp(3);
    for idx in 0..3u64.pow(6) {
        let f = MonicPoly::from_index(field, 6, idx);
        let a = factor_with(f.as_poly(), FactorOptions { seed: 1, trial_division_below: 0 }).unwrap();
        let b = factor_with(f.as_poly(), FactorOptions { seed: 99, trial_division_below: 0 }).unwrap();
        assert_eq!(a, b);
    }
}

/// `#{g : deg g < n, gcd(g, f) = 1}`
fn totient_by_residues(f: &MonicPoly) -> u64 {
    let field = f.field();
    let n = f.degree();
    let mut count = 0;
    for idx in 0..field.p().pow(n as u32) {
        let mut coeffs = Vec::with_capacity(n);
        let mut i = idx;
        for _ in 0..n {
            coeffs.push(i % field.p());
            i /= field.p();
        }
        let g = Poly::new(field, coeffs);
        if g.is_zero() {
            continue;
        }
        count += g.gcd(f.as_poly()).unwrap().is_one() as u64;
    }
    count
}

#[test]
fn totient_by_residue_enumeration() {
    for q in cyclestat_core::ffpoly::primes_up_to(243) {
        let field = fp(q);
        let mut n = 1;
        while q.pow(n as u32) <= 243 {
            for idx in 0..q.pow(n as u32) {
                let f = MonicPoly::from_index(field, n, idx);
                assert_eq!(totient(&factor(&f)), BigUint::from(totient_by_residues(&f)), "q={q} f={f}");
            }
            n += 1;
        }
    }
}
