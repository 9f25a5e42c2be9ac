//! Execution strategy for the data-parallel drivers (range scans, seed
//! search, witness validation). Results never depend on the strategy.
//!
//! With the `parallel` feature disabled, [`Execution::Parallel`] runs the
//! sequential path.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Order-preserving map.
pub(crate) fn map<I, T, F>(exec: Execution, items: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Order-preserving fallible map; on failure returns the error of the
/// earliest failing item.
pub(crate) fn try_map<I, T, E, F>(exec: Execution, items: &[I], f: F) -> Result<Vec<T>, E>
where
    I: Sync,
    T: Send,
    E: Send,
    F: Fn(&I) -> Result<T, E> + Sync + Send,
{
    map(exec, items, f).into_iter().collect()
}

/// Splits `[lo, hi]` into consecutive inclusive chunks of at most `size`.
pub(crate) fn chunks(lo: i128, hi: i128, size: i128) -> Vec<(i128, i128)> {
    let mut out = Vec::new();
    let mut start = lo;
    while start <= hi {
        let end = hi.min(start.saturating_add(size - 1));
        out.push((start, end));
        if end == hi {
            break;
        }
        start = end + 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunking_covers_range() {
        assert_eq!(chunks(0, 9, 4), vec![(0, 3), (4, 7), (8, 9)]);
        assert_eq!(chunks(5, 5, 4), vec![(5, 5)]);
        assert!(chunks(6, 5, 4).is_empty());
    }

    #[test]
    fn strategies_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        let a = map(Execution::Sequential, &xs, |x| x * x);
        let b = map(Execution::Parallel, &xs, |x| x * x);
        assert_eq!(a, b);
        let err = try_map(Execution::Parallel, &xs, |&x| if x % 300 == 299 { Err(x) } else { Ok(x) });
        assert_eq!(err, Err(299));
    }
}
