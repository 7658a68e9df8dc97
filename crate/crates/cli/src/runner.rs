//! Ensemble execution on a rayon pool.
//!
//! Members are independent (each draws from its own derived stream) and are
//! collected back in index order before aggregation, so the result does not
//! depend on the number of threads.

use entdyn_core::dynamics::{run_member, DynamicsConfig, EnsembleSeries, TrajectorySeries};
use rayon::prelude::*;

use crate::error::CliError;

/// `threads = None` uses rayon's default pool size.
pub fn run_ensemble(cfg: &DynamicsConfig, threads: Option<usize>) -> Result<EnsembleSeries, CliError> {
    cfg.check()?;
    let members = run_members(cfg, threads)?;
    Ok(EnsembleSeries::aggregate(&members)?)
}

pub fn run_members(cfg: &DynamicsConfig, threads: Option<usize>) -> Result<Vec<TrajectorySeries>, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build()?;
    let members = pool
        .install(|| (0..cfg.ensemble_size).into_par_iter().map(|k| run_member(cfg, k)).collect::<Result<Vec<_>, _>>());
    members.map_err(CliError::Numerical)
}
