//! JSON I/O, verification suites and the constant-diameter search.

pub mod io;
pub mod search;
pub mod suites;

pub use io::{body_from_json, body_to_json, read_body, to_json, write_body};
pub use search::{search_gap, SearchRecord};
pub use suites::{replay, run_suite, FailureRecord, SuiteResult, SUITES};

use crate::error::{Error, Result};

/// Runs `f` on a pool capped by `SPHEREWIDTH_THREADS`, or on the global pool
/// when the variable is unset.
pub fn with_threads<R: Send>(f: impl FnOnce() -> R + Send) -> Result<R> {
    let Ok(raw) = std::env::var("SPHEREWIDTH_THREADS") else {
        return Ok(f());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::InvalidParameter(format!("SPHEREWIDTH_THREADS={raw}")))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    Ok(pool.install(f))
}
