//! Worker pool used by the enumeration and lattice code.
//!
//! With the `parallel` feature, more than one worker runs the per-item work
//! on a dedicated rayon pool. With a single worker, or without the feature,
//! the same closures run on plain iterators. Results always come back in
//! input order.

#[cfg(feature = "parallel")]
use crate::error::Error;
use crate::error::Result;

pub struct Workers {
    #[cfg(feature = "parallel")]
    pool: Option<rayon::ThreadPool>,
    count: usize,
}

impl Workers {
    /// `0` asks for one worker per available core.
    pub fn new(count: usize) -> Result<Self> {
        #[cfg(feature = "parallel")]
        {
            let count = if count == 0 {
                std::thread::available_parallelism().map_or(1, |n| n.get())
            } else {
                count
            };
            if count == 1 {
                return Ok(Self::sequential());
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(count)
                .build()
                .map_err(|e| Error::Resource(format!("cannot start worker pool: {e}")))?;
            Ok(Workers {
                pool: Some(pool),
                count,
            })
        }
        #[cfg(not(feature = "parallel"))]
        {
            let _ = count;
            Ok(Self::sequential())
        }
    }

    pub fn sequential() -> Self {
        Workers {
            #[cfg(feature = "parallel")]
            pool: None,
            count: 1,
        }
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Maps `f` over `items` with one `init()` state per worker task.
    pub(crate) fn map_init<T, S, R, I, F>(&self, items: &[T], init: I, f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        I: Fn() -> S + Sync + Send,
        F: Fn(&mut S, &T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            use rayon::prelude::*;
            return pool.install(|| items.par_iter().map_init(&init, &f).collect());
        }
        let mut state = init();
        items.iter().map(|t| f(&mut state, t)).collect()
    }
}

impl Default for Workers {
    fn default() -> Self {
        Self::sequential()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved_for_any_worker_count() {
        let items: Vec<u64> = (0..1000).collect();
        let want: Vec<u64> = items.iter().map(|x| x * x).collect();
        for n in [1, 2, 4] {
            let w = Workers::new(n).unwrap();
            assert_eq!(w.map_init(&items, || (), |_, x| x * x), want);
        }
    }
}
