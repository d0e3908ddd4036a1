//! Execution strategy for the data-parallel loops (exhaustive enumeration,
//! batch sampling).
//!
//! Work is always split into the same indexed pieces and results are
//! collected in index order, so the output never depends on the number of
//! threads. With the `parallel` feature disabled every strategy runs
//! sequentially.

/// How to run an indexed batch of independent jobs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Rayon thread pool; `None` uses the global pool.
    Parallel {
        workers: Option<usize>,
    },
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel { workers: None }
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    pub fn with_workers(workers: Option<usize>) -> Self {
        match workers {
            Some(1) => Execution::Sequential,
            w => Execution::Parallel { workers: w },
        }
    }

    /// True if this strategy actually runs on more than one thread.
    pub fn is_parallel(&self) -> bool {
        cfg!(feature = "parallel") && matches!(self, Execution::Parallel { .. })
    }
}

/// Evaluates `job(0..n)` and returns the results in index order.
pub fn map_indexed<T, F>(exec: Execution, n: usize, job: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        Execution::Sequential => (0..n).map(job).collect(),
        Execution::Parallel { workers } => parallel_map(workers, n, job),
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T, F>(workers: Option<usize>, n: usize, job: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    let run = || (0..n).into_par_iter().map(&job).collect::<Vec<T>>();
    match workers {
        None => run(),
        Some(w) => match rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
        {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        },
    }
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T, F>(_workers: Option<usize>, n: usize, job: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(job).collect()
}
