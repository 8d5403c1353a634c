//! Finite quandles and their invariants: constructions, automorphisms,
//! homology over the integers, cocycles, and state sums on knot diagrams.
//!
//! Permutations compose left to right throughout: `compose(p, q)` applies
//! `p` first. Group elements are indices into a multiplication table.

pub mod automorphism;
pub mod cocycle;
pub mod constructions;
pub mod homology;
pub mod io;
pub mod knots;
pub mod quandle;
pub mod snf;
pub mod symmetric;

pub use automorphism::{
    automorphism_group, coset_reconstruction, find_isomorphism, inner_group, is_connected, is_homogeneous, orbits,
    PermGroupOnQuandle, SearchError, SearchLimits,
};
pub use cocycle::{check_2cocycle, check_3cocycle, mochizuki_satoh, Cochain};
pub use quandle::{check_homomorphism, verify_quandle, FiniteQuandle, QuandleError, QuandleMap};
pub use symmetric::{verify_good_involution, SymmetricQuandle};
