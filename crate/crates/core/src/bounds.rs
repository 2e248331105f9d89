//! Enumeration bounds shared by the exhaustive routines.
//!
//! Every brute-force search in the crate refuses to start when the state
//! space it would visit exceeds the relevant bound, returning
//! [`Error::BoundExceeded`](crate::Error::BoundExceeded) instead of running
//! away.  The defaults are sized for "desk scale" runs (seconds to minutes).

/// Size limits for the exhaustive routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Largest symmetric-group rank `n` for which whole-group enumeration
    /// (twisted classes, `mu`, minimal length) is attempted.
    pub max_weyl_n: usize,
    /// Largest matrix-group order `|GL_n(F)|` enumerated element by element.
    pub max_group: u64,
    /// Largest number of complete flags (or line tuples) enumerated.
    pub max_flags: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_weyl_n: 7,
            max_group: 10_000_000,
            max_flags: 1_000_000,
        }
    }
}

impl Bounds {
    /// Check `needed <= bound`, otherwise report what overflowed.
    pub fn check(&self, what: &'static str, needed: u64, bound: u64) -> crate::Result<()> {
        if needed > bound {
            Err(crate::Error::BoundExceeded { what, needed, bound })
        } else {
            Ok(())
        }
    }
}
