//! Inputs shared by the criterion benches.

use altperm::{Alternation, Permutation, PermutationTableau};

pub const FIGURE_TABLEAU: &str = "shape: 4,4,4,3\n**..\n..*.\n****\n..*\n";

pub fn figure() -> PermutationTableau {
    FIGURE_TABLEAU.parse().expect("figure tableau parses")
}

/// Every alternating word of `[2m]` with `m` fixed points.
pub fn maximal_alternating(m: usize) -> Vec<Permutation> {
    altperm::enumerate_alternating(2 * m, Alternation::Alternating)
        .expect("within cap")
        .filter(|p| p.fixed_point_count() == m)
        .collect()
}
