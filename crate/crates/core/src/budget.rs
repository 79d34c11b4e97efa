use serde::{Deserialize, Serialize};

/// Explicit resource limits for the heavy computations. Running out is
/// reported as [`crate::AlgError::ResourceExhausted`], never as a negative
/// answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Reduction steps allowed to a single Gröbner basis computation.
    pub groebner_steps: u64,
    /// Total-degree bound for generator enumeration.
    pub degree_bound: u32,
    /// Candidates examined by point enumeration and monomial searches.
    pub point_cap: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { groebner_steps: 1_000_000, degree_bound: 8, point_cap: 1_000_000 }
    }
}

impl Budget {
    pub fn with_degree_bound(mut self, bound: u32) -> Self {
        self.degree_bound = bound;
        self
    }

    pub fn with_steps(mut self, steps: u64) -> Self {
        self.groebner_steps = steps;
        self
    }
}
