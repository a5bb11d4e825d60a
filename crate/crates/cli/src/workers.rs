//! Worker-count policy: `PRODNORM_THREADS` caps the number of threads.

use std::num::NonZeroUsize;
use std::thread;

use crate::error::{CliError, CliResult};

pub const THREADS_ENV: &str = "PRODNORM_THREADS";

pub fn worker_count() -> CliResult<usize> {
    let available = thread::available_parallelism().map_or(1, NonZeroUsize::get);
    match std::env::var(THREADS_ENV) {
        Err(std::env::VarError::NotPresent) => Ok(available),
        Err(e) => Err(CliError::Config(format!("{THREADS_ENV}: {e}"))),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k.min(available.max(1))),
            _ => Err(CliError::Config(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
        },
    }
}

/// Applies `f` to every item on at most `workers` threads; results come
/// back in input order regardless of scheduling.
pub fn par_map<T, R, F>(items: Vec<T>, workers: usize, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync,
{
    let workers = workers.max(1).min(items.len().max(1));
    if workers == 1 {
        return items.into_iter().map(f).collect();
    }
    let mut buckets: Vec<Vec<(usize, T)>> = (0..workers).map(|_| Vec::new()).collect();
    let total = items.len();
    for (i, it) in items.into_iter().enumerate() {
        buckets[i % workers].push((i, it));
    }
    let f = &f;
    let mut done: Vec<(usize, R)> = thread::scope(|s| {
        let handles: Vec<_> = buckets
            .into_iter()
            .map(|b| s.spawn(move || b.into_iter().map(|(i, t)| (i, f(t))).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    });
    debug_assert_eq!(done.len(), total);
    done.sort_by_key(|(i, _)| *i);
    done.into_iter().map(|(_, r)| r).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let v: Vec<u32> = (0..37).collect();
        for w in [1, 2, 5, 64] {
            assert_eq!(par_map(v.clone(), w, |x| x * x), v.iter().map(|x| x * x).collect::<Vec<_>>());
        }
        assert!(par_map(Vec::<u32>::new(), 4, |x| x).is_empty());
    }
}
