//! Chunked data-parallel map with a sequential fallback.
//!
//! Work is always split into the same index chunks and results come back in
//! chunk order, so the output never depends on the thread count. Without the
//! `parallel` feature every mode runs on the calling thread.

/// How to spread chunked work.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Parallelism {
    #[default]
    Sequential,
    /// A dedicated pool with this many threads; `0` lets rayon decide.
    Threads(usize),
}

impl Parallelism {
    /// `1` maps to [`Parallelism::Sequential`].
    pub fn from_threads(n: usize) -> Parallelism {
        if n == 1 {
            Parallelism::Sequential
        } else {
            Parallelism::Threads(n)
        }
    }

    /// `(0..n).map(f)`, possibly on a thread pool, in index order.
    pub fn map<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match *self {
            Parallelism::Sequential => (0..n).map(f).collect(),
            Parallelism::Threads(threads) => par_map(threads, n, f),
        }
    }
}

#[cfg(feature = "parallel")]
fn par_map<T, F>(threads: usize, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(|| (0..n).into_par_iter().map(f).collect()),
        Err(_) => (0..n).map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn par_map<T, F>(_threads: usize, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}

/// Splits `0..total` into ranges of at most `chunk` items.
pub fn chunk_ranges(total: u128, chunk: u128) -> Vec<(u128, u128)> {
    let chunk = chunk.max(1);
    let mut out = Vec::new();
    let mut start = 0;
    while start < total {
        let end = (start + chunk).min(total);
        out.push((start, end));
        start = end;
    }
    out
}
