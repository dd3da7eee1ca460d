//! Bounded worker-thread fan-out for independent jobs.
//!
//! The thread count is capped by the HEUNWELL_THREADS environment
//! variable (default: available parallelism). Results come back in input
//! order, so output writing stays deterministic.

pub fn thread_cap() -> usize {
    std::env::var("HEUNWELL_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
}

/// Apply `job` to every item on up to [`thread_cap`] threads, preserving
/// input order in the result.
pub fn map_ordered<T, U, F>(items: Vec<T>, job: F) -> Vec<U>
where
    T: Send + Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    let threads = thread_cap().min(items.len()).max(1);
    if threads == 1 {
        return items.iter().map(&job).collect();
    }
    let mut results: Vec<Option<U>> = Vec::with_capacity(items.len());
    results.resize_with(items.len(), || None);
    let next = std::sync::atomic::AtomicUsize::new(0);
    let results_mutex = std::sync::Mutex::new(&mut results);
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let value = job(&items[i]);
                results_mutex
                    .lock()
                    .expect("worker poisoned the results lock")[i] = Some(value);
            });
        }
    });
    results
        .into_iter()
        .map(|r| r.expect("every slot filled"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preserves_order() {
        let items: Vec<u64> = (0..64).collect();
        let out = map_ordered(items, |&x| x * x);
        for (i, v) in out.iter().enumerate() {
            assert_eq!(*v, (i * i) as u64);
        }
    }
}
