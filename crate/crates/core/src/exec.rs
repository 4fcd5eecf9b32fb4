//! Sequential or rayon-backed execution of the data-parallel loops.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How the data-parallel loops (closure layers, order census, formula
/// sweeps) are run. Results are identical either way.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Execution {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

impl Execution {
    /// Every mode compiled into this build.
    pub fn available() -> Vec<Execution> {
        vec![
            Execution::Sequential,
            #[cfg(feature = "parallel")]
            Execution::Parallel,
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            Execution::Sequential => "sequential",
            #[cfg(feature = "parallel")]
            Execution::Parallel => "parallel",
        }
    }

    pub(crate) fn map_slice<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        match self {
            Execution::Sequential => items.iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Execution::Parallel => items.par_iter().map(f).collect(),
        }
    }

    pub(crate) fn map_range<U, F>(self, range: Range<u64>, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(u64) -> U + Sync + Send,
    {
        match self {
            Execution::Sequential => range.map(f).collect(),
            #[cfg(feature = "parallel")]
            Execution::Parallel => range.into_par_iter().map(f).collect(),
        }
    }
}
