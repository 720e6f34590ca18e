//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) [`Exec::Parallel`] runs on the rayon
//! pool; without it every strategy runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Maps `f` over `items`, keeping input order.
    pub fn map<T, U, F>(self, items: Vec<T>, f: F) -> Vec<U>
    where
        T: Send,
        U: Send,
        F: Fn(T) -> U + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.into_par_iter().map(f).collect(),
            _ => items.into_iter().map(f).collect(),
        }
    }

    /// True iff `f` holds for every item.
    pub fn all<T, F>(self, items: Vec<T>, f: F) -> bool
    where
        T: Send,
        F: Fn(T) -> bool + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.into_par_iter().all(f),
            _ => items.into_iter().all(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let v: Vec<u64> = (0..1000).collect();
        let a = Exec::Sequential.map(v.clone(), |x| x * x);
        let b = Exec::Parallel.map(v.clone(), |x| x * x);
        assert_eq!(a, b);
        assert!(Exec::Parallel.all(v, |x| x < 1000));
    }
}
