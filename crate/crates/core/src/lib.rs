//! Combinatorics and hyperbolic geometry of primitive classes in the rank-2
//! free group F2 = <a, b>.
//!
//! The crate has four layers:
//!
//! * [`freegroup`] — words over {a, a⁻¹, b, b⁻¹}, free and cyclic reduction,
//!   palindromes, abelianization, axis windows.
//! * [`farey`] — the Farey triangulation of the hyperbolic plane indexes the
//!   primitive conjugacy classes of F2 by slopes p/q.  Levels, Christoffel and
//!   palindromic representatives, tri-coloring, level partitions.
//! * [`geometry`] — SL(2,C) matrices acting on upper half-space H³: trace
//!   classification, complex translation lengths, half-turns, right-angled
//!   hexagons attached to a basis of F2, and the turning angle θ.
//! * [`analysis`] — numerical verification procedures built on the layers
//!   above: Markov-style trace trees, the Bowditch Q-condition decision
//!   procedure, growth fits, θ scans, primitive-stability margins and the
//!   bounded-intersection (palindrome axis) scan.

pub mod analysis;
pub mod error;
pub mod farey;
pub mod freegroup;
pub mod geometry;
pub mod tol;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
