//! Alternating permutations with the maximum number of fixed points, their
//! bijection with derangements, and the same bijection on permutation
//! tableaux.
//!
//! * [`perm`]: one-line permutations, up/down predicates, lexicographic
//!   backtracking enumerators.
//! * [`bijection`]: the map from maximal alternating words of `[2m]` to
//!   derangements of `[m]`, its inverse, and the odd/reverse reductions.
//! * [`tableau`]: permutation tableaux, border labels, the zig-zag decoding
//!   map, and empty-row deletion/insertion.
//! * [`counting`]: derangement and Euler numbers, fixed-point tables.
//! * [`verify`]: exhaustive checks with counterexample reports.
//! * [`render`]: text and SVG pictures of tableaux and their routes.

pub mod bijection;
pub mod caps;
pub mod counting;
pub mod perm;
pub mod render;
pub mod tableau;
pub mod verify;

pub use bijection::{
    psi_blockwise, psi_delete_halve, psi_inverse, reduce_alternating_odd,
    reduce_reverse_alternating_even, to_derangement, BijectionError,
};
pub use caps::{CapExceeded, Caps};
pub use counting::{
    alternating_count, counts_table, derangement_count, max_fixed_points, CountError, CountsTable,
};
pub use perm::{
    enumerate_alternating, enumerate_derangements, enumerate_permutations, Alternation, PermError,
    Permutation, PermutationStream,
};
pub use render::{render_ascii, render_svg};
pub use tableau::{
    enumerate_tableaux, BorderLabeling, Cell, Diagram, PermutationTableau, Shape, TableauError,
    Target, ZigzagPath,
};
pub use verify::{
    verify_bijections, verify_conjecture, verify_tableaux, Status, VerificationReport,
};
