//! Grid scans, report emission and the acceptance-suite runner behind the
//! `superfiltr` binary.

pub mod acceptance;
pub mod commands;
pub mod config;
pub mod predictions;
pub mod scan;

/// Thread pool honouring `SUPERFILTR_THREADS` (unset or 0 means rayon's default).
pub fn thread_pool() -> anyhow::Result<rayon::ThreadPool> {
    let threads = match std::env::var("SUPERFILTR_THREADS") {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse::<usize>()
            .map_err(|_| anyhow::anyhow!("SUPERFILTR_THREADS must be a nonnegative integer, got {v:?}"))?,
        _ => 0,
    };
    Ok(rayon::ThreadPoolBuilder::new().num_threads(threads).build()?)
}
