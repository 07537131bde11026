//! Work-unit execution: a rayon pool when the `parallel` feature is on and
//! more than one worker is requested, a plain loop otherwise. Results always
//! come back in unit order.

/// Worker count from `DEEPFAM_WORKERS`, else the available parallelism.
pub fn default_workers() -> usize {
    std::env::var("DEEPFAM_WORKERS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&w| w > 0)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
}

/// Maps `f` over `units` with one scratch value per worker.
pub(crate) fn map_units<U, S, R, I, F>(units: &[U], workers: usize, init: I, f: F) -> Vec<R>
where
    U: Sync,
    R: Send,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, &U) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if workers > 1 {
        use rayon::prelude::*;
        // If the pool cannot be built, fall through to the sequential path.
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
            return pool.install(|| units.par_iter().map_init(&init, &f).collect());
        }
    }
    #[cfg(not(feature = "parallel"))]
    let _ = workers;
    let mut scratch = init();
    units.iter().map(|u| f(&mut scratch, u)).collect()
}
