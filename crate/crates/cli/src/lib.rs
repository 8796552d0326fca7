//! Verification harness for the elliptic C₂ difference operators: runs the
//! suites selected by a [`SuiteConfig`] and assembles a [`Report`].

pub mod config;
pub mod eval;
pub mod report;
pub mod suites;

use std::time::Instant;

use rayon::prelude::*;

pub use config::{ConfigError, Suite, SuiteConfig};
pub use report::{CheckRecord, Expect, Report};

/// Validates `cfg`, runs its suites in parallel and collects the records in
/// canonical suite order.
pub fn run(cfg: &SuiteConfig) -> Result<Report, ConfigError> {
    cfg.validate()?;
    let setup = suites::Setup::new(cfg).map_err(|_| ConfigError::HalfPeriods(cfg.omega1.0))?;
    let start = Instant::now();
    let per_suite: Vec<Vec<CheckRecord>> =
        cfg.selected().par_iter().map(|s| suites::run_one(*s, cfg, &setup)).collect();
    let ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(Report::new(cfg.clone(), per_suite.into_iter().flatten().collect(), ms))
}
