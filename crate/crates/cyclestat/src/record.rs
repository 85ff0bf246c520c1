//! Result records and their payloads. Every record survives a JSON round
//! trip unchanged: rationals are written as `"num/den"` strings and big
//! integers as decimal strings.

use std::fmt;

use cyclestat_core::rational::parse_rational;
use cyclestat_core::Rational;
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use crate::cli::{Method, RunConfig, StatKind, Target};

pub const TOOL: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// A rational that serializes as `"num/den"` (or `"num"` when integral).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactRational(pub Rational);

impl From<Rational> for ExactRational {
    fn from(r: Rational) -> Self {
        ExactRational(r)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map(ExactRational).map_err(de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    #[serde(rename = "exact")]
    Exact,
    #[serde(rename = "float")]
    Float,
    #[serde(rename = "certified-bracket")]
    CertifiedBracket,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub tool: String,
    pub version: String,
    pub timestamp: String,
    pub config: RunConfig,
    pub provenance: Provenance,
    #[serde(default)]
    pub cached: bool,
    pub payload: Payload,
}

impl ResultRecord {
    pub fn new(config: RunConfig, provenance: Provenance, payload: Payload) -> Self {
        ResultRecord {
            tool: TOOL.to_string(),
            version: VERSION.to_string(),
            timestamp: chrono::Utc::now().to_rfc3339(),
            config,
            provenance,
            cached: false,
            payload,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Stats(StatsPayload),
    Constants(ConstantsPayload),
    Series(SeriesPayload),
    Scan(ScanPayload),
    Census(CensusPayload),
    Probe(ProbePayload),
    Certify(CertifyPayload),
    Trend(TrendPayload),
    Factor(FactorPayload),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsPayload {
    pub which: StatKind,
    pub n: usize,
    pub r: u32,
    /// Absent in float mode.
    pub value: Option<ExactRational>,
    pub decimal: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantsPayload {
    pub r: u32,
    pub c_r: f64,
    pub bracket: Option<Bracket>,
}

/// `A_r ∈ [lower, upper]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bracket {
    pub factors: u64,
    pub terms_per_factor: u32,
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    pub width: f64,
    pub tail_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesPayload {
    pub r: u32,
    pub order: usize,
    pub method: Method,
    /// Coefficients `W_r(0..=order)`; exactly one of the two is present.
    pub exact: Option<Vec<ExactRational>>,
    pub float: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanPayload {
    pub rows: Vec<ScanRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub q: u64,
    pub n: usize,
    pub r: usize,
    pub alpha: String,
    pub shifts: Vec<String>,
    #[serde(rename = "S")]
    pub s: u64,
    pub s_squarefree: u64,
    pub all_squarefree: u64,
    pub q_pow_n: u64,
    pub probability: ExactRational,
    pub model_value: ExactRational,
    pub deviation: f64,
    pub normalized_deviation: f64,
}

impl From<cyclestat_core::scanner::ScanReport> for ScanRow {
    fn from(rep: cyclestat_core::scanner::ScanReport) -> Self {
        ScanRow {
            q: rep.q,
            n: rep.n,
            r: rep.r,
            alpha: rep.alpha.to_string(),
            shifts: rep.shifts.iter().map(|a| a.to_text()).collect(),
            s: rep.s,
            s_squarefree: rep.s_squarefree,
            all_squarefree: rep.all_squarefree,
            q_pow_n: rep.q_pow_n,
            probability: rep.probability.into(),
            model_value: rep.model_value.into(),
            deviation: rep.deviation,
            normalized_deviation: rep.normalized_deviation,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusPayload {
    pub q: u64,
    pub n: usize,
    pub shifts: Vec<String>,
    pub q_pow_n: u64,
    pub total: u64,
    /// `max |count/q^n − ∏ p(λ^{(j)})|` over all tuples.
    pub max_independence_gap: f64,
    pub entries: Vec<CensusEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub types: Vec<Vec<usize>>,
    pub count: u64,
    /// `∏_j p(λ^{(j)})`.
    pub model: ExactRational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbePayload {
    pub n: usize,
    pub q: u64,
    /// Threshold of the totient distinctness certificate for degree `n`.
    pub certificate_threshold: u64,
    pub collisions: Vec<ProbeCollision>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeCollision {
    pub phi: String,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertifyPayload {
    pub n: usize,
    pub which: String,
    pub partitions: usize,
    pub q_threshold: u64,
    pub colliding_pairs: Vec<CertifiedCollision>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertifiedCollision {
    pub q: u64,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrendPayload {
    pub r: u32,
    pub target: Target,
    /// `c_r` for `E`, the lower end of the `A_r` bracket for `W`.
    pub constant: f64,
    pub rows: Vec<TrendRow>,
}

/// `ratio = value / asymptotic`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrendRow {
    pub n: usize,
    pub value: f64,
    pub asymptotic: f64,
    pub ratio: f64,
    pub provenance: Provenance,
}

/// Big values (`phi`, `sigma`) are decimal strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorPayload {
    pub q: u64,
    pub poly: String,
    pub unit: u64,
    pub factors: Vec<FactorEntry>,
    pub squarefree: bool,
    pub cycle_type: Vec<usize>,
    pub omega: usize,
    pub big_omega: usize,
    pub phi: String,
    pub sigma: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorEntry {
    pub factor: String,
    pub multiplicity: u32,
}
