//! Plot-ready CSV rows.

use serde::Serialize;

use crate::error::CliError;

/// One reduction run: `n,m,M,Q,beta,eta,calls,successes,max_norm,lambda_n,factor`.
/// The last three are empty when no full-rank set was found.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub n: usize,
    pub m: usize,
    #[serde(rename = "M")]
    pub entry_bound: u64,
    #[serde(rename = "Q")]
    pub big_q: u64,
    pub beta: u64,
    pub eta: f64,
    pub calls: u64,
    pub successes: u64,
    pub max_norm: Option<f64>,
    pub lambda_n: Option<f64>,
    pub factor: Option<f64>,
}

impl SummaryRow {
    pub(crate) fn empty(n: usize, entry_bound: u64) -> Self {
        Self {
            n,
            m: 0,
            entry_bound,
            big_q: 0,
            beta: 0,
            eta: 0.0,
            calls: 0,
            successes: 0,
            max_norm: None,
            lambda_n: None,
            factor: None,
        }
    }
}

/// A sweep cell: the summary columns plus its derived seed, status and
/// measured oracle success rate. Flat, since CSV cannot nest.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub m: usize,
    #[serde(rename = "M")]
    pub entry_bound: u64,
    #[serde(rename = "Q")]
    pub big_q: u64,
    pub beta: u64,
    pub eta: f64,
    pub calls: u64,
    pub successes: u64,
    pub max_norm: Option<f64>,
    pub lambda_n: Option<f64>,
    pub factor: Option<f64>,
    pub seed: u64,
    pub status: String,
    pub oracle_rate: Option<f64>,
}

impl SweepRow {
    pub fn new(s: SummaryRow, seed: u64, status: String, oracle_rate: Option<f64>) -> Self {
        Self {
            n: s.n,
            m: s.m,
            entry_bound: s.entry_bound,
            big_q: s.big_q,
            beta: s.beta,
            eta: s.eta,
            calls: s.calls,
            successes: s.successes,
            max_norm: s.max_norm,
            lambda_n: s.lambda_n,
            factor: s.factor,
            seed,
            status,
            oracle_rate,
        }
    }
}

pub fn write_rows<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io {
        path: "<csv buffer>".into(),
        source: e.into_error(),
    })?;
    Ok(String::from_utf8(bytes).expect("CSV of numbers and ASCII statuses is UTF-8"))
}
