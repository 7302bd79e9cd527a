//! Parallel Monte-Carlo driver.
//!
//! Each phase bin is split into fixed-size chunks of consecutive trial
//! indices. Every trial seeds its own stream, and records merge by integer
//! addition, so the result does not depend on the pool size or on the order
//! in which chunks finish.

use dlcz_core::stochastic::{simulate_chunk, CountsRecord, McPlan, TrialSource};
use rayon::prelude::*;

const CHUNK: u64 = 4096;

pub fn simulate_parallel<S: TrialSource + Sync>(source: &S, plan: &McPlan) -> CountsRecord {
    let tasks: Vec<(usize, u64)> = (0..plan.thetas.len())
        .flat_map(|bin| (0..plan.trials_per_bin).step_by(CHUNK as usize).map(move |start| (bin, start)))
        .collect();
    tasks
        .into_par_iter()
        .map(|(bin, start)| simulate_chunk(source, plan, bin, start..(start + CHUNK).min(plan.trials_per_bin)))
        .reduce(
            || CountsRecord::new(&plan.thetas),
            |mut a, b| {
                a.merge(&b).expect("chunks of one plan share their phase grid");
                a
            },
        )
}

/// Runs `f` on a pool with `threads` workers, or on the global pool.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build().expect("thread pool construction").install(f),
        None => f(),
    }
}
