//! Index-parallel helpers with deterministic results.
//!
//! With the `parallel` feature the loops run on a rayon pool whose size can
//! be capped with `SLEMMA_KIT_THREADS`; without it they run sequentially.
//! Either way results are collected by index, so output never depends on
//! scheduling.

/// How an index loop is executed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ExecMode {
    #[default]
    Parallel,
    Sequential,
}

#[cfg(feature = "parallel")]
fn pool() -> &'static rayon::ThreadPool {
    use std::sync::OnceLock;
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(k) = std::env::var("SLEMMA_KIT_THREADS")
            .ok()
            .and_then(|s| s.parse::<usize>().ok())
            .filter(|&k| k > 0)
        {
            b = b.num_threads(k);
        }
        b.build().expect("thread pool")
    })
}

/// `f(0), …, f(n-1)` in index order.
pub fn map_indexed<T, F>(mode: ExecMode, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => {
            use rayon::prelude::*;
            pool().install(|| (0..n).into_par_iter().map(&f).collect())
        }
        _ => (0..n).map(f).collect(),
    }
}

/// The smallest index `i` with `f(i) = Some(_)`.
pub fn find_first<T, F>(mode: ExecMode, n: usize, f: F) -> Option<(usize, T)>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => {
            use rayon::prelude::*;
            pool().install(|| {
                (0..n)
                    .into_par_iter()
                    .find_map_first(|i| f(i).map(|t| (i, t)))
            })
        }
        _ => (0..n).find_map(|i| f(i).map(|t| (i, t))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let f = |i: usize| (i * i) % 7;
        assert_eq!(
            map_indexed(ExecMode::Parallel, 100, f),
            map_indexed(ExecMode::Sequential, 100, f)
        );
        let g = |i: usize| (i % 13 == 12 && i > 30).then_some(i * 2);
        assert_eq!(find_first(ExecMode::Parallel, 1000, g), Some((38, 76)));
        assert_eq!(find_first(ExecMode::Sequential, 1000, g), Some((38, 76)));
        assert_eq!(find_first(ExecMode::Parallel, 10, |_| None::<u8>), None);
    }
}
