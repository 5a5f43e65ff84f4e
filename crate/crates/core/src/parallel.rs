//! Order-stable map over independent runs.
//!
//! With the `parallel` feature the runs are spread over the current rayon
//! pool; without it they execute on the calling thread. Either way the output
//! vector is indexed by run, so results are identical.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub fn map_runs<T, F>(runs: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..runs).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_runs_sequential(runs, f)
    }
}

pub fn map_runs_sequential<T, F>(runs: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..runs).map(f).collect()
}

/// Fallible variant; the first error by run index wins.
pub fn try_map_runs<T, E, F>(runs: usize, f: F) -> Result<Vec<T>, E>
where
    T: Send,
    E: Send,
    F: Fn(usize) -> Result<T, E> + Sync + Send,
{
    map_runs(runs, f).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree() {
        let f = |i: usize| i * i + 1;
        assert_eq!(map_runs(1000, f), map_runs_sequential(1000, f));
    }
}
