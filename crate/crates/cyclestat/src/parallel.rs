//! Data-parallel drivers. Work is split into pieces fixed by the input
//! alone and recombined with exact operations, so results do not depend on
//! the thread count.

use std::ops::Range;

use cyclestat_core::ffpoly::PrimeField;
use cyclestat_core::permstats::{w_r_partition_sum, w_r_partition_sum_largest_part};
use cyclestat_core::scanner::{
    check_budget, collisions_from_types, joint_census_range, merge_squarefree_types,
    non_squarefree_tuples_range, prepare_scan, report_from_tally, scan_range,
    squarefree_types_range, Alpha, JointCensus, ScanOptions, ScanReport, ScanTally,
    ShiftSystem, SquarefreeTypes, TotientCollision,
};
use cyclestat_core::series::{w_series_partial_product, TruncatedSeries};
use cyclestat_core::{Rational, Result};
use rayon::prelude::*;

/// Number of pieces a scan of `size` polynomials is cut into.
const PIECES: u64 = 256;

/// `0..size` cut into at most [`PIECES`] contiguous ranges.
pub fn split_range(size: u64) -> Vec<Range<u64>> {
    let pieces = PIECES.min(size.max(1));
    (0..pieces)
        .map(|i| (size * i / pieces)..(size * (i + 1) / pieces))
        .collect()
}

pub fn par_scan(sys: &ShiftSystem, alpha: Alpha, opts: &ScanOptions) -> Result<ScanReport> {
    let size = prepare_scan(sys, alpha, opts)?;
    let tally = split_range(size)
        .into_par_iter()
        .map(|range| scan_range(sys, alpha, range))
        .reduce(ScanTally::default, ScanTally::merge);
    report_from_tally(sys, alpha, tally)
}

/// One report per prime with shifts `0, 1, …, r − 1`.
pub fn par_deviation_sweep(
    n: usize,
    r: usize,
    alpha: Alpha,
    primes: &[u64],
    opts: &ScanOptions,
) -> Result<Vec<ScanReport>> {
    primes
        .iter()
        .map(|&q| {
            let sys = ShiftSystem::constants(PrimeField::new(q)?, n, r)?;
            par_scan(&sys, alpha, opts)
        })
        .collect()
}

pub fn par_joint_census(sys: &ShiftSystem, opts: &ScanOptions) -> Result<JointCensus> {
    let size = check_budget(sys.field(), sys.n(), opts.budget)?;
    Ok(split_range(size)
        .into_par_iter()
        .map(|range| joint_census_range(sys, range))
        .reduce(JointCensus::default, JointCensus::merge))
}

pub fn par_collision_probe(n: usize, q: u64, opts: &ScanOptions) -> Result<Vec<TotientCollision>> {
    if n < 2 {
        return Err(cyclestat_core::Error::Domain("collision probe needs n ≥ 2".into()));
    }
    let field = PrimeField::new(q)?;
    let size = check_budget(field, n, opts.budget)?;
    let types = split_range(size)
        .into_par_iter()
        .map(|range| squarefree_types_range(field, n, range))
        .reduce(SquarefreeTypes::new, merge_squarefree_types);
    Ok(collisions_from_types(&types))
}

pub fn par_non_squarefree_tuples(sys: &ShiftSystem, opts: &ScanOptions) -> Result<u64> {
    let size = check_budget(sys.field(), sys.n(), opts.budget)?;
    Ok(split_range(size)
        .into_par_iter()
        .map(|range| non_squarefree_tuples_range(sys, range))
        .sum())
}

/// `∏_k I_r(z^k/k^r)` to order `N`. Factors are grouped into dyadic blocks
/// `[2^i, 2^{i+1})`, each multiplied sparsely, and the blocks are combined
/// along a fixed binary tree.
pub fn par_w_series_product(r: u32, order: usize) -> Result<TruncatedSeries> {
    let mut blocks = Vec::new();
    let mut lo = 1usize;
    while lo <= order.max(1) {
        let hi = (2 * lo - 1).min(order.max(1));
        blocks.push(lo..=hi);
        lo *= 2;
    }
    let leaves: Vec<TruncatedSeries> = blocks
        .into_par_iter()
        .map(|ks| w_series_partial_product(r, ks, order))
        .collect::<Result<_>>()?;
    tree_product(&leaves)
}

fn tree_product(items: &[TruncatedSeries]) -> Result<TruncatedSeries> {
    match items {
        [] => unreachable!("at least one block"),
        [one] => Ok(one.clone()),
        _ => {
            let (left, right) = items.split_at(items.len() / 2);
            let (a, b) = rayon::join(|| tree_product(left), || tree_product(right));
            a?.checked_mul(&b?)
        }
    }
}

/// `W_r(n)` with the partition sum split by largest part.
pub fn par_w_r_partition_sum(n: usize, r: u32) -> Result<Rational> {
    if n == 0 {
        return w_r_partition_sum(0, r);
    }
    let slices: Vec<Rational> = (1..=n)
        .into_par_iter()
        .map(|t| w_r_partition_sum_largest_part(n, r, t))
        .collect::<Result<_>>()?;
    Ok(slices.into_iter().sum())
}
