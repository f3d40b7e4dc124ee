//! The `(q, n)` verification sweep: closed forms for every grid point,
//! optionally checked against exhaustive enumeration.

use std::io::Write;

use crate::counting::{CountReport, PrimePower, CSV_HEADER};
use crate::error::{Error, Result};
use crate::gf::{ExtSpec, FieldSpec, DEFAULT_ELEMENT_BUDGET};
use crate::oracle::{count_normal_elements, count_npolys_and_traces};
use crate::polyring::{DEFAULT_POLY_BUDGET, DEFAULT_SEED};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub qs: Vec<PrimePower>,
    pub ns: Vec<u64>,
    pub oracle: bool,
    /// Largest field scanned by the normal-element oracle.
    pub element_budget: u64,
    /// Largest number of monic polynomials scanned by the N-polynomial oracle.
    pub poly_budget: u64,
    pub format: Format,
    pub seed: u64,
    /// Worker threads; `0` lets the pool choose.
    pub workers: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            qs: Vec::new(),
            ns: Vec::new(),
            oracle: false,
            element_budget: DEFAULT_ELEMENT_BUDGET,
            poly_budget: DEFAULT_POLY_BUDGET,
            format: Format::Csv,
            seed: DEFAULT_SEED,
            workers: 0,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.ns.iter().any(|&n| n < 1) {
            return Err(Error::InvalidArgument("n must be >= 1".into()));
        }
        if self.element_budget == 0 || self.poly_budget == 0 {
            return Err(Error::InvalidArgument("budgets must be positive".into()));
        }
        if self.qs.is_empty() || self.ns.is_empty() {
            return Err(Error::InvalidArgument("empty q or n list".into()));
        }
        Ok(())
    }

    /// Grid points in `(q, n)` order without repeats.
    pub fn grid(&self) -> Vec<(PrimePower, u64)> {
        let mut qs = self.qs.clone();
        qs.sort();
        qs.dedup();
        let mut ns = self.ns.clone();
        ns.sort();
        ns.dedup();
        qs.iter().flat_map(|&q| ns.iter().map(move |&n| (q, n))).collect()
    }
}

/// All prime powers `q <= q_max`.
pub fn prime_powers_up_to(q_max: u64) -> Vec<PrimePower> {
    (2..=q_max).filter_map(|q| PrimePower::from_q(q).ok()).collect()
}

/// Closed-form report for `(q, n)`, with oracle fields filled where the
/// enumeration fits the budgets.
pub fn report_for(q: PrimePower, n: u64, config: &SweepConfig) -> Result<CountReport> {
    let mut report = CountReport::closed_form(n, q)?;
    if !config.oracle {
        return Ok(report);
    }
    let k = FieldSpec::from_prime_power(q)?;
    let fits = |budget: u64| q.q.checked_pow(n as u32).is_some_and(|s| s <= budget);
    if fits(config.element_budget) {
        let ext = ExtSpec::new(&k, n as usize)?;
        report.oracle_v = Some(count_normal_elements(&ext, config.element_budget)?);
    }
    if fits(config.poly_budget) {
        let counts = count_npolys_and_traces(n as usize, &k, config.poly_budget)?;
        report.oracle_npoly = Some(counts.npoly_count);
        report.oracle_irr = Some(counts.nonzero_trace_count);
        report.oracle_containment = Some(counts.containment_ok);
    }
    Ok(report)
}

/// Reports in `(q, n)` order; identical for every worker count.
pub fn run_verify(config: &SweepConfig) -> Result<Vec<CountReport>> {
    use rayon::prelude::*;
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("worker pool: {e}")))?;
    let grid = config.grid();
    pool.install(|| grid.par_iter().map(|&(q, n)| report_for(q, n, config)).collect())
}

/// First violated invariant across the reports.
pub fn first_violation(reports: &[CountReport]) -> Option<String> {
    reports.iter().find_map(CountReport::violation)
}

pub fn write_reports<W: Write>(reports: &[CountReport], format: Format, out: W) -> Result<()> {
    let io = |e: std::io::Error| Error::Parse(format!("write failed: {e}"));
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
            w.write_record(CSV_HEADER.split(',')).map_err(|e| Error::Parse(format!("csv: {e}")))?;
            for r in reports {
                w.serialize(r).map_err(|e| Error::Parse(format!("csv: {e}")))?;
            }
            w.flush().map_err(io)
        }
        Format::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, reports).map_err(|e| Error::Parse(format!("json: {e}")))?;
            writeln!(out).map_err(io)
        }
    }
}
