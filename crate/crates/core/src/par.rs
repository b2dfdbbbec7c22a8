//! Data-parallel helpers with a sequential fallback.
//!
//! Every helper hands each task an index and a disjoint output slot, so results never depend on
//! scheduling. Without the `parallel` feature, [`Parallelism::Parallel`] runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Parallelism {
    Sequential,
    #[default]
    Parallel,
}

impl Parallelism {
    /// Whether work actually fans out across threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Parallelism::Parallel
    }

    /// `(0..n).map(f)` collected in index order.
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }

    /// Calls `f(i, chunk_i)` on consecutive `chunk`-sized pieces of `data`.
    pub fn for_each_chunk<F>(self, data: &mut [f64], chunk: usize, f: F)
    where
        F: Fn(usize, &mut [f64]) + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            data.par_chunks_mut(chunk).enumerate().for_each(|(i, c)| f(i, c));
            return;
        }
        data.chunks_mut(chunk).enumerate().for_each(|(i, c)| f(i, c));
    }
}

/// Caps the global worker pool; a no-op without the `parallel` feature.
///
/// Fails if the pool was already initialized with a different size.
pub fn configure_threads(threads: usize) -> Result<(), String> {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| e.to_string())
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree() {
        let f = |i: usize| (i as f64).sqrt();
        assert_eq!(
            Parallelism::Sequential.map(1000, f),
            Parallelism::Parallel.map(1000, f)
        );
        let mut a = vec![0.0; 100];
        let mut b = vec![0.0; 100];
        let g = |i: usize, c: &mut [f64]| c.iter_mut().for_each(|v| *v = i as f64);
        Parallelism::Sequential.for_each_chunk(&mut a, 7, g);
        Parallelism::Parallel.for_each_chunk(&mut b, 7, g);
        assert_eq!(a, b);
        assert_eq!(a[99], 14.0);
    }
}
