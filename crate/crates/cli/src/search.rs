//! Restarts spread over worker threads.

use std::thread;

use mmes_core::optimizer::{merge_restarts, run_restart, PiMeObjective, RestartResult, SearchConfig, SearchTrace};

use crate::error::{CliError, CliResult};

pub const THREADS_VAR: &str = "MMES_THREADS";

/// Worker count from `MMES_THREADS`, else the available parallelism.
pub fn thread_count() -> CliResult<usize> {
    match std::env::var(THREADS_VAR) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(t) if t >= 1 => Ok(t),
            _ => Err(CliError::Invalid(format!("{THREADS_VAR} must be a positive integer, got `{v}`"))),
        },
        Err(_) => Ok(thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

/// Same trace as the sequential search for any thread count.
pub fn parallel_search(config: &SearchConfig, threads: usize) -> CliResult<SearchTrace> {
    config.validate()?;
    let objective = PiMeObjective::new(config.n);
    let threads = threads.clamp(1, config.restarts);
    let results: Vec<RestartResult> = thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let objective = &objective;
                scope.spawn(move || {
                    (t..config.restarts)
                        .step_by(threads)
                        .map(|r| run_restart(config, objective, r))
                        .collect::<Result<Vec<_>, _>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker panicked"))
            .collect::<Result<Vec<_>, _>>()
            .map(|chunks| chunks.into_iter().flatten().collect())
    })?;
    merge_restarts(results).ok_or_else(|| CliError::Invalid("no restarts ran".into()))
}
