//! Normalized Seiberg–Witten invariants of negative definite plumbed
//! 3-manifolds.
//!
//! The crate works entirely with exact integer and rational arithmetic and
//! offers three independent routes to the invariants `s_h`:
//!
//! * the cut-and-paste recursion over equivariant series ([`sw`]),
//! * the Euler characteristic of lattice cohomology ([`latcoh`]),
//! * the integral-surgery shortcut through Alexander polynomials
//!   ([`sw::integral_surgery_table`]).
//!
//! Graphs of surgery manifolds `S^3_{-p/q}(K)` along connected sums of
//! torus knots are produced by [`builders`]; their universal abelian
//! covers, and cyclic branched covers in general, by [`covers`].

#![allow(clippy::needless_range_loop)]

pub mod builders;
pub mod covers;
pub mod error;
pub mod format;
pub mod graph;
pub mod homology;
pub mod latcoh;
pub mod lattice;
pub mod selftest;
pub mod series;
pub mod sw;

pub use error::{Error, Result};
pub use graph::PlumbingGraph;
pub use homology::{FiniteGroup, HomologyStructure};
pub use lattice::{DualVector, Lattice};
