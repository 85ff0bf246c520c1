//! Dispatch from a [`RunConfig`] to the core computations.

use cyclestat_core::ffpoly::{
    big_omega, distinctness_certificate, factor_with, omega, sigma, totient, FactorOptions, Poly,
    PrimeField, StructureKind,
};
use cyclestat_core::partitions::enumerate_partitions;
use cyclestat_core::permstats::{
    asymptotic_c_r, asymptotic_e, asymptotic_w, e_r, e_r_auto, e_r_f64, Estimate, DEFAULT_EXACT_LIMIT,
};
use cyclestat_core::rational::to_f64;
use cyclestat_core::scanner::{parse_shifts, Alpha, ScanOptions, ShiftSystem};
use cyclestat_core::series::{
    a_r_product, default_factor_count, w_series_exp_polylog, w_series_product_f64,
};
use cyclestat_core::Rational;

use crate::cache::Cache;
use crate::cli::{
    CensusArgs, CertifyArgs, Command, ConstantsArgs, FactorArgs, Method, ProbeArgs, RunConfig, ScanArgs,
    SeriesArgs, StatKind, StatsArgs, Structure, SweepArgs, Target, TrendArgs,
};
use crate::error::CliError;
use crate::parallel::{
    par_collision_probe, par_deviation_sweep, par_joint_census, par_scan, par_w_r_partition_sum,
    par_w_series_product,
};
use crate::record::{
    Bracket, CensusEntry, CensusPayload, CertifiedCollision, CertifyPayload, ConstantsPayload,
    ExactRational, FactorEntry, FactorPayload, Payload, ProbeCollision, ProbePayload, Provenance, ResultRecord, ScanPayload,
    ScanRow, SeriesPayload, StatsPayload, TrendPayload, TrendRow,
};

type Outcome = Result<(Payload, Provenance), CliError>;

/// Above this `n`, exact `W_r(n)` comes from the series instead of the
/// partition sum.
const PARTITION_SUM_MAX_N: usize = 30;

/// Returns the cached record when there is one, otherwise computes and stores it.
pub fn run(config: &RunConfig, cache: Option<&Cache>) -> Result<ResultRecord, CliError> {
    if let Some(cache) = cache {
        if let Some(rec) = cache.load(config)? {
            return Ok(rec);
        }
    }
    let (payload, provenance) = execute(config)?;
    let record = ResultRecord::new(config.clone(), provenance, payload);
    if let Some(cache) = cache {
        cache.store(&record)?;
    }
    Ok(record)
}

pub fn execute(config: &RunConfig) -> Outcome {
    let opts = ScanOptions {
        budget: config.budget,
    };
    match &config.command {
        Command::Stats(a) => stats(a),
        Command::Constants(a) => constants(a),
        Command::Series(a) => series(a),
        Command::Scan(a) => scan(a, &opts),
        Command::Sweep(a) => sweep(a, &opts),
        Command::Census(a) => census(a, &opts),
        Command::Probe(a) => probe(a, &opts),
        Command::Certify(a) => certify(a),
        Command::Trend(a) => trend(a),
        Command::Factor(a) => factor(a, config.seed),
    }
}

fn exact_w(n: usize, r: u32) -> Result<Rational, CliError> {
    if n <= PARTITION_SUM_MAX_N {
        Ok(par_w_r_partition_sum(n, r)?)
    } else {
        Ok(par_w_series_product(r, n)?.coeff(n))
    }
}

fn stats(a: &StatsArgs) -> Outcome {
    let (value, decimal) = match (a.which, a.float) {
        (StatKind::E, false) => {
            let v = e_r(a.n, a.r)?;
            (Some(v.clone()), to_f64(&v))
        }
        (StatKind::W, false) => {
            let v = exact_w(a.n, a.r)?;
            (Some(v.clone()), to_f64(&v))
        }
        (StatKind::E, true) => (None, e_r_f64(a.n, a.r)?),
        (StatKind::W, true) => (None, w_series_product_f64(a.r, a.n)?[a.n]),
    };
    let provenance = if value.is_some() { Provenance::Exact } else { Provenance::Float };
    let payload = StatsPayload {
        which: a.which,
        n: a.n,
        r: a.r,
        value: value.map(ExactRational),
        decimal,
    };
    Ok((Payload::Stats(payload), provenance))
}

fn constants(a: &ConstantsArgs) -> Outcome {
    let c_r = asymptotic_c_r(a.r)?;
    if a.cr_only {
        let payload = ConstantsPayload { r: a.r, c_r, bracket: None };
        return Ok((Payload::Constants(payload), Provenance::Float));
    }
    let factors = a.k.unwrap_or_else(|| default_factor_count(a.r));
    let est = a_r_product(a.r, factors, a.j)?;
    let bracket = Bracket {
        factors,
        terms_per_factor: a.j,
        value: est.value,
        lower: est.lower(),
        upper: est.upper(),
        width: est.width(),
        tail_bound: est.tail_bound,
    };
    let payload = ConstantsPayload { r: a.r, c_r, bracket: Some(bracket) };
    Ok((Payload::Constants(payload), Provenance::CertifiedBracket))
}

fn series(a: &SeriesArgs) -> Outcome {
    let (exact, float) = match (a.method, a.float) {
        (Method::Product, false) => (Some(par_w_series_product(a.r, a.order)?.into_coeffs()), None),
        (Method::ExpPolylog, false) => (Some(w_series_exp_polylog(a.r, a.order)?.into_coeffs()), None),
        (Method::Product, true) => (None, Some(w_series_product_f64(a.r, a.order)?)),
        (Method::ExpPolylog, true) => {
            return Err(CliError::Precondition(
                "floating-point coefficients are only available for the product method".into(),
            ))
        }
    };
    let provenance = if exact.is_some() { Provenance::Exact } else { Provenance::Float };
    let payload = SeriesPayload {
        r: a.r,
        order: a.order,
        method: a.method,
        exact: exact.map(|v| v.into_iter().map(ExactRational).collect()),
        float,
    };
    Ok((Payload::Series(payload), provenance))
}

fn parse_alpha(text: &str) -> Result<Alpha, CliError> {
    Ok(text.parse::<Alpha>()?)
}

fn shift_system(q: u64, n: usize, r: usize, shifts: Option<&str>) -> Result<ShiftSystem, CliError> {
    let field = PrimeField::new(q)?;
    Ok(match shifts {
        Some(text) => ShiftSystem::new(field, n, parse_shifts(field, text)?)?,
        None => ShiftSystem::constants(field, n, r)?,
    })
}

fn scan(a: &ScanArgs, opts: &ScanOptions) -> Outcome {
    let alpha = parse_alpha(&a.alpha)?;
    let sys = shift_system(a.q, a.n, a.r, a.shifts.as_deref())?;
    let row = ScanRow::from(par_scan(&sys, alpha, opts)?);
    Ok((Payload::Scan(ScanPayload { rows: vec![row] }), Provenance::Exact))
}

fn sweep(a: &SweepArgs, opts: &ScanOptions) -> Outcome {
    let alpha = parse_alpha(&a.alpha)?;
    let rows = par_deviation_sweep(a.n, a.r, alpha, &a.primes, opts)?
        .into_iter()
        .map(ScanRow::from)
        .collect();
    Ok((Payload::Scan(ScanPayload { rows }), Provenance::Exact))
}

fn census(a: &CensusArgs, opts: &ScanOptions) -> Outcome {
    let sys = shift_system(a.q, a.n, a.r, a.shifts.as_deref())?;
    let joint = par_joint_census(&sys, opts)?;
    let q_pow_n = sys.space_size().expect("within budget") as u64;
    let total = joint.total();
    if total != q_pow_n {
        return Err(CliError::Invariant(format!("census total {total} ≠ q^n = {q_pow_n}")));
    }
    let entries = joint
        .counts()
        .iter()
        .map(|(types, &count)| CensusEntry {
            types: types.iter().map(|l| l.parts()).collect(),
            count,
            model: ExactRational(types.iter().map(|l| l.cauchy_probability()).product()),
        })
        .collect();
    let payload = CensusPayload {
        q: a.q,
        n: a.n,
        shifts: sys.shifts().iter().map(|s| s.to_text()).collect(),
        q_pow_n,
        total,
        max_independence_gap: joint.max_independence_gap(sys.n(), sys.r(), q_pow_n),
        entries,
    };
    Ok((Payload::Census(payload), Provenance::Exact))
}

fn probe(a: &ProbeArgs, opts: &ScanOptions) -> Outcome {
    let collisions = par_collision_probe(a.n, a.q, opts)?;
    let cert = distinctness_certificate(a.n, StructureKind::Phi)?;
    if cert.certifies(a.q) && !collisions.is_empty() {
        return Err(CliError::Invariant(format!(
            "totient collision at q = {} above the certified threshold {}",
            a.q, cert.q_threshold
        )));
    }
    let payload = ProbePayload {
        n: a.n,
        q: a.q,
        certificate_threshold: cert.q_threshold,
        collisions: collisions
            .into_iter()
            .map(|c| ProbeCollision {
                phi: c.value.to_string(),
                left: c.left.parts(),
                right: c.right.parts(),
            })
            .collect(),
    };
    Ok((Payload::Probe(payload), Provenance::Exact))
}

fn certify(a: &CertifyArgs) -> Outcome {
    let kind = match a.which {
        Structure::Phi => StructureKind::Phi,
        Structure::Sigma => StructureKind::Sigma,
    };
    let cert = distinctness_certificate(a.n, kind)?;
    let payload = CertifyPayload {
        n: a.n,
        which: kind.to_string(),
        partitions: enumerate_partitions(a.n).count(),
        q_threshold: cert.q_threshold,
        colliding_pairs: cert
            .colliding_pairs
            .iter()
            .map(|c| CertifiedCollision {
                q: c.q,
                left: c.left.parts(),
                right: c.right.parts(),
            })
            .collect(),
    };
    Ok((Payload::Certify(payload), Provenance::Exact))
}

fn factor(a: &FactorArgs, seed: u64) -> Outcome {
    let field = PrimeField::new(a.q)?;
    let f = Poly::parse(field, &a.poly)?;
    let opts = FactorOptions {
        seed,
        trial_division_below: a.trial_below,
    };
    let fac = factor_with(&f, opts)?;
    if fac.expand() != f {
        return Err(CliError::Invariant(format!("factors of {f} do not multiply back")));
    }
    let payload = FactorPayload {
        q: a.q,
        poly: f.to_string(),
        unit: fac.unit(),
        factors: fac
            .factors()
            .iter()
            .map(|(p, e)| FactorEntry {
                factor: p.to_string(),
                multiplicity: *e,
            })
            .collect(),
        squarefree: fac.is_squarefree(),
        cycle_type: fac.cycle_type().parts(),
        omega: omega(&fac),
        big_omega: big_omega(&fac),
        phi: totient(&fac).to_string(),
        sigma: sigma(&fac).to_string(),
    };
    Ok((Payload::Factor(payload), Provenance::Exact))
}

fn trend(a: &TrendArgs) -> Outcome {
    let (constant, rows) = match a.target {
        Target::E => trend_e(a)?,
        Target::W => trend_w(a)?,
    };
    let provenance = if rows.iter().all(|r| r.provenance == Provenance::Exact) {
        Provenance::Exact
    } else {
        Provenance::Float
    };
    let payload = TrendPayload { r: a.r, target: a.target, constant, rows };
    Ok((Payload::Trend(payload), provenance))
}

fn trend_e(a: &TrendArgs) -> Result<(f64, Vec<TrendRow>), CliError> {
    let c_r = asymptotic_c_r(a.r)?;
    let rows = a
        .n_list
        .iter()
        .map(|&n| {
            let (value, provenance) = match e_r_auto(n, a.r, DEFAULT_EXACT_LIMIT)? {
                Estimate::Exact(v) => (to_f64(&v), Provenance::Exact),
                Estimate::Float(v) => (v, Provenance::Float),
            };
            let asymptotic = asymptotic_e(n, a.r)?;
            Ok(TrendRow { n, value, asymptotic, ratio: value / asymptotic, provenance })
        })
        .collect::<Result<_, CliError>>()?;
    Ok((c_r, rows))
}

fn trend_w(a: &TrendArgs) -> Result<(f64, Vec<TrendRow>), CliError> {
    let a_r = a_r_product(a.r, a.k.unwrap_or_else(|| default_factor_count(a.r)), 20)?.lower();
    let max_n = a.n_list.iter().copied().max().unwrap_or(0);
    let (values, provenance): (Vec<f64>, _) = if a.exact {
        let coeffs = par_w_series_product(a.r, max_n)?.into_coeffs();
        (coeffs.iter().map(to_f64).collect(), Provenance::Exact)
    } else {
        (w_series_product_f64(a.r, max_n)?, Provenance::Float)
    };
    let rows = a
        .n_list
        .iter()
        .map(|&n| {
            let asymptotic = asymptotic_w(n, a.r, a_r)?;
            let value = values[n];
            Ok(TrendRow { n, value, asymptotic, ratio: value / asymptotic, provenance })
        })
        .collect::<Result<_, CliError>>()?;
    Ok((a_r, rows))
}
