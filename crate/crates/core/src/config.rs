use serde::{Deserialize, Serialize};

/// Resource caps. Exceeding any of them is a refusal with an error, never a crash.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest admissible field size p^deg.
    pub max_field_size: u64,
    /// Largest Witt length m for which universal polynomials are built.
    pub max_witt_length: usize,
    /// Largest ambient dimension n.
    pub max_dimension: usize,
    /// Monomial cap for Laurent-polynomial intermediates.
    pub max_monomials: usize,
    /// Cap on lattice-box sizes during polytope enumeration.
    pub max_box_points: u64,
    /// Cap on the total number of torus evaluations of one job.
    pub budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_field_size: 1 << 20,
            max_witt_length: 4,
            max_dimension: 3,
            max_monomials: 20_000,
            max_box_points: 5_000_000,
            budget: 10_000_000,
        }
    }
}
