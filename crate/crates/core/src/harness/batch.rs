//! Parallel sweep over primes and block vectors, one row per instance.

use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::conjecture::{appendix_trace, verify_conjecture};
use crate::error::{Error, Result};
use crate::exactnum::{rf_eq, Fraction, MultisetDiff, RatFunc};
use crate::harness::partitions::{indecomposable_blocks, valid_partitions};
use crate::harness::report::{write_report, ReportFormat};
use crate::repspec::{primes_up_to, RepSpec};
use crate::strata::{classify_mmp, MmpClass};
use crate::stringy::{
    euler_closed_form, euler_consistency, mst_alpha_raw, mst_alpha_subsets_capped, mst_zp_raw,
};

pub const WORKERS_ENV: &str = "STRINGY_WORKERS";

#[derive(Clone, Debug, Serialize)]
pub struct BatchConfig {
    pub prime_max: i64,
    /// Bound on `|d+|`; ignored for indecomposable sweeps.
    pub total_dim_max: i64,
    pub indecomposable_only: bool,
    #[serde(skip)]
    pub worker_count: usize,
    /// Run the subset oracle when `|I*|` is at most this.
    pub oracle_cap: usize,
    /// Record per-row wall time; off keeps reports reproducible.
    #[serde(skip)]
    pub timings: bool,
    #[serde(skip)]
    pub output: Option<(PathBuf, ReportFormat)>,
}

impl Default for BatchConfig {
    fn default() -> Self {
        BatchConfig {
            prime_max: 31,
            total_dim_max: 12,
            indecomposable_only: false,
            worker_count: 4,
            oracle_cap: 12,
            timings: false,
            output: None,
        }
    }
}

impl BatchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.prime_max < 2 {
            return Err(Error::InvalidConfig(format!("prime_max = {} < 2", self.prime_max)));
        }
        if self.total_dim_max < 2 {
            return Err(Error::InvalidConfig(format!("total_dim_max = {} < 2", self.total_dim_max)));
        }
        if self.worker_count < 1 {
            return Err(Error::InvalidConfig("worker_count must be at least 1".into()));
        }
        Ok(())
    }

    /// `worker_count`, unless overridden by the environment.
    pub fn effective_workers(&self) -> Result<usize> {
        match std::env::var(WORKERS_ENV) {
            Ok(v) => match v.trim().parse::<usize>() {
                Ok(n) if n >= 1 => Ok(n),
                _ => Err(Error::InvalidConfig(format!("{WORKERS_ENV}={v} is not a positive integer"))),
            },
            Err(_) => Ok(self.worker_count),
        }
    }

    /// Work units in canonical order.
    pub fn units(&self) -> Vec<(i64, Vec<i64>)> {
        let mut units = Vec::new();
        for p in primes_up_to(self.prime_max) {
            if self.indecomposable_only {
                units.extend(indecomposable_blocks(p).into_iter().map(|d| (p, d)));
            } else {
                for total in 2..=self.total_dim_max {
                    units.extend(valid_partitions(p, total).into_iter().map(|d| (p, d)));
                }
            }
        }
        units.sort();
        units
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BatchRow {
    pub p: i64,
    pub d_plus: Vec<i64>,
    #[serde(rename = "D")]
    pub bold_d: i64,
    pub gamma: i64,
    pub conjecture_ok: bool,
    pub mst_eq_ok: bool,
    /// `mst_eq_ok`, multiset equality and their agreement.
    pub three_way_ok: bool,
    pub euler: Fraction,
    pub euler_ok: bool,
    /// `None` when `|I*|` exceeds the oracle cap.
    pub oracle_ok: Option<bool>,
    pub appendix_ok: bool,
    pub mmp_class: MmpClass,
    pub micros: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diff: Option<Vec<(i64, i64)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl BatchRow {
    pub fn ok(&self) -> bool {
        self.error.is_none()
            && self.conjecture_ok
            && self.mst_eq_ok
            && self.three_way_ok
            && self.euler_ok
            && self.oracle_ok != Some(false)
            && self.appendix_ok
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BatchSummary {
    pub rows: usize,
    pub failures: usize,
    pub oracle_checked: usize,
    pub all_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BatchOutcome {
    pub config: BatchConfig,
    pub summary: BatchSummary,
    pub rows: Vec<BatchRow>,
}

/// Evaluates one `(p, d+)` instance. Failures are recorded in the row,
/// never propagated.
pub fn run_unit(p: i64, d_plus: &[i64], oracle_cap: usize, timings: bool) -> BatchRow {
    let start = Instant::now();
    let mut row = BatchRow {
        p,
        d_plus: d_plus.to_vec(),
        bold_d: 0,
        gamma: 0,
        conjecture_ok: false,
        mst_eq_ok: false,
        three_way_ok: false,
        euler: Fraction::zero(),
        euler_ok: false,
        oracle_ok: None,
        appendix_ok: false,
        mmp_class: MmpClass::Regular,
        micros: 0,
        diff: None,
        error: None,
    };
    if let Err(e) = fill_row(&mut row, oracle_cap) {
        row.error = Some(e.to_string());
    }
    if timings {
        row.micros = start.elapsed().as_micros() as u64;
    }
    row
}

fn fill_row(row: &mut BatchRow, oracle_cap: usize) -> Result<()> {
    let s = RepSpec::from_plus(row.p, &row.d_plus)?;
    row.bold_d = s.bold_d();
    row.gamma = s.gamma();
    row.mmp_class = classify_mmp(&s);

    let report = verify_conjecture(&s)?;
    row.conjecture_ok = report.equal;
    if !report.equal {
        row.diff = Some(diff_pairs(&report.diff));
    }

    let (an, ad) = mst_alpha_raw(&s)?;
    let (zn, zd) = mst_zp_raw(&s)?;
    let alpha = RatFunc::new(an.clone(), ad.clone())?;
    let zp = RatFunc::new(zn, zd)?;
    row.mst_eq_ok = rf_eq(&alpha, &zp);
    row.three_way_ok = row.mst_eq_ok && report.equal;

    row.euler = euler_closed_form(&s)?;
    row.euler_ok = euler_consistency(&s, &row.euler, &alpha, &zp, (&an, &ad)).is_ok();

    if s.n_r(1) as usize <= oracle_cap {
        let oracle = mst_alpha_subsets_capped(&s, oracle_cap)?;
        row.oracle_ok = Some(rf_eq(&alpha, &oracle));
    }
    row.appendix_ok = appendix_trace(&s)?.all_ok();
    Ok(())
}

fn diff_pairs(d: &MultisetDiff) -> Vec<(i64, i64)> {
    d.iter().map(|(&v, &m)| (v, m)).collect()
}

pub fn run_batch(cfg: &BatchConfig) -> Result<BatchOutcome> {
    cfg.validate()?;
    let workers = cfg.effective_workers()?;
    let units = cfg.units();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidConfig(e.to_string()))?;
    let mut rows: Vec<BatchRow> = pool.install(|| {
        units
            .par_iter()
            .map(|(p, d)| run_unit(*p, d, cfg.oracle_cap, cfg.timings))
            .collect()
    });
    rows.sort_by(|a, b| (a.p, &a.d_plus).cmp(&(b.p, &b.d_plus)));
    let failures = rows.iter().filter(|r| !r.ok()).count();
    let summary = BatchSummary {
        rows: rows.len(),
        failures,
        oracle_checked: rows.iter().filter(|r| r.oracle_ok.is_some()).count(),
        all_ok: failures == 0,
    };
    let outcome = BatchOutcome { config: cfg.clone(), summary, rows };
    if let Some((path, format)) = &cfg.output {
        write_report(&outcome, path, *format)?;
    }
    Ok(outcome)
}
