//! Data-parallel map with a sequential fallback.
//!
//! With the `parallel` feature (on by default) [`Execution::Parallel`] runs
//! on the rayon pool; without it both modes run on the calling thread.

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this build can actually run tasks concurrently.
    pub fn is_concurrent(self) -> bool {
        self == Execution::Parallel && cfg!(feature = "parallel")
    }
}

/// `items.iter().map(f)` in input order.
pub fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec == Execution::Parallel && items.len() > 1 {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree_and_keep_order() {
        let v: Vec<u64> = (0..100).collect();
        let a = map(Execution::Sequential, &v, |x| x * x);
        let b = map(Execution::Parallel, &v, |x| x * x);
        assert_eq!(a, b);
        assert_eq!(a[7], 49);
    }
}
