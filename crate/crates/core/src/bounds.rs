use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Guards on the exponential searches. Every guarded operation has a
/// `*_with` variant taking explicit bounds; the plain variant uses
/// [`Bounds::default`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    /// Largest universe for which all `2^m` subsets are enumerated
    /// (relations, closure tables, discrete spaces).
    pub subset_items: usize,
    /// Largest skill universe a delineation enumerates.
    pub skills: usize,
    /// Largest competency pool the literal star-condition search accepts.
    pub competency_pool: usize,
    /// Largest universe for exact density.
    pub density_items: usize,
    /// Largest state count for exact cellularity.
    pub cellularity_states: usize,
    /// Largest `n` for exhaustive enumeration of spaces.
    pub exhaustive_n: usize,
    /// Largest `n` for sampled spaces.
    pub sample_n: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            subset_items: 20,
            skills: 20,
            competency_pool: 16,
            density_items: 24,
            cellularity_states: 4096,
            exhaustive_n: 4,
            sample_n: 6,
        }
    }
}

impl Bounds {
    pub(crate) fn guard(what: &'static str, size: usize, bound: usize) -> Result<()> {
        if size > bound {
            Err(Error::BoundExceeded { what, size, bound })
        } else {
            Ok(())
        }
    }
}
