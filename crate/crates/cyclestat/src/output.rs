//! JSON and CSV rendering of result records.

use std::io::Write;

use num_bigint::BigInt;

use crate::cli::Format;
use crate::error::CliError;
use crate::record::{ExactRational, Payload, ResultRecord};

pub const SCAN_CSV_HEADER: [&str; 12] = [
    "q",
    "n",
    "r",
    "alpha",
    "S",
    "q_pow_n",
    "prob_num",
    "prob_den",
    "model_num",
    "model_den",
    "deviation",
    "normalized_deviation",
];

/// Decimal rendering with 15 significant digits.
pub fn sig15(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..15).contains(&exp) {
        let decimals = (14 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{x:.14e}")
    }
}

fn num_den(x: &ExactRational) -> (BigInt, BigInt) {
    (x.0.numer().clone(), x.0.denom().clone())
}

fn parts_text(parts: &[usize]) -> String {
    let inner: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
    format!("[{}]", inner.join(","))
}

pub fn write_record(record: &ResultRecord, format: Format, out: impl Write) -> Result<(), CliError> {
    match format {
        Format::Json => write_json(record, out),
        Format::Csv => write_csv(&record.payload, out),
    }
}

pub fn write_json(record: &ResultRecord, mut out: impl Write) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut out, record)?;
    out.write_all(b"\n")?;
    Ok(())
}

pub fn write_csv(payload: &Payload, out: impl Write) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    match payload {
        Payload::Stats(p) => {
            w.write_record(["which", "n", "r", "value_num", "value_den", "decimal"])?;
            let (num, den) = p.value.as_ref().map(num_den).map_or((String::new(), String::new()), |(a, b)| (a.to_string(), b.to_string()));
            let which = format!("{:?}", p.which);
            w.write_record([which, p.n.to_string(), p.r.to_string(), num, den, sig15(p.decimal)])?;
        }
        Payload::Constants(p) => {
            w.write_record(["r", "c_r", "K", "J", "value", "lower", "upper", "width"])?;
            let mut row = vec![p.r.to_string(), sig15(p.c_r)];
            match &p.bracket {
                Some(b) => row.extend([
                    b.factors.to_string(),
                    b.terms_per_factor.to_string(),
                    sig15(b.value),
                    sig15(b.lower),
                    sig15(b.upper),
                    sig15(b.width),
                ]),
                None => row.extend(std::iter::repeat_n(String::new(), 6)),
            }
            w.write_record(row)?;
        }
        Payload::Series(p) => {
            if let Some(coeffs) = &p.exact {
                w.write_record(["m", "coeff_num", "coeff_den"])?;
                for (m, c) in coeffs.iter().enumerate() {
                    let (num, den) = num_den(c);
                    w.write_record([m.to_string(), num.to_string(), den.to_string()])?;
                }
            } else if let Some(coeffs) = &p.float {
                w.write_record(["m", "coeff"])?;
                for (m, c) in coeffs.iter().enumerate() {
                    w.write_record([m.to_string(), sig15(*c)])?;
                }
            }
        }
        Payload::Scan(p) => {
            w.write_record(SCAN_CSV_HEADER)?;
            for row in &p.rows {
                let (pn, pd) = num_den(&row.probability);
                let (mn, md) = num_den(&row.model_value);
                w.write_record([
                    row.q.to_string(),
                    row.n.to_string(),
                    row.r.to_string(),
                    row.alpha.clone(),
                    row.s.to_string(),
                    row.q_pow_n.to_string(),
                    pn.to_string(),
                    pd.to_string(),
                    mn.to_string(),
                    md.to_string(),
                    sig15(row.deviation),
                    sig15(row.normalized_deviation),
                ])?;
            }
        }
        Payload::Census(p) => {
            w.write_record(["types", "count", "model_num", "model_den"])?;
            for e in &p.entries {
                let types: Vec<String> = e.types.iter().map(|t| parts_text(t)).collect();
                let (num, den) = num_den(&e.model);
                w.write_record([types.join(";"), e.count.to_string(), num.to_string(), den.to_string()])?;
            }
        }
        Payload::Probe(p) => {
            w.write_record(["n", "q", "phi", "left", "right"])?;
            for c in &p.collisions {
                w.write_record([
                    p.n.to_string(),
                    p.q.to_string(),
                    c.phi.clone(),
                    parts_text(&c.left),
                    parts_text(&c.right),
                ])?;
            }
        }
        Payload::Certify(p) => {
            w.write_record(["n", "which", "q_threshold", "q", "left", "right"])?;
            let head = [p.n.to_string(), p.which.clone(), p.q_threshold.to_string()];
            if p.colliding_pairs.is_empty() {
                w.write_record(head.iter().cloned().chain(std::iter::repeat_n(String::new(), 3)))?;
            }
            for c in &p.colliding_pairs {
                w.write_record(head.iter().cloned().chain([
                    c.q.to_string(),
                    parts_text(&c.left),
                    parts_text(&c.right),
                ]))?;
            }
        }
        Payload::Factor(p) => {
            w.write_record(["q", "poly", "factor", "multiplicity"])?;
            for f in &p.factors {
                w.write_record([p.q.to_string(), p.poly.clone(), f.factor.clone(), f.multiplicity.to_string()])?;
            }
        }
        Payload::Trend(p) => {
            w.write_record(["n", "value", "asymptotic", "ratio", "provenance"])?;
            for row in &p.rows {
                let prov = serde_json::to_value(row.provenance)?;
                w.write_record([
                    row.n.to_string(),
                    sig15(row.value),
                    sig15(row.asymptotic),
                    sig15(row.ratio),
                    prov.as_str().unwrap_or_default().to_string(),
                ])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}
