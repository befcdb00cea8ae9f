//! Centralized numerical tolerances.
//!
//! Every tolerance used for a *decision* (classification bands, degeneracy
//! guards, residual checks) lives here with a note on why the value is safe
//! at desk scale (matrix entries of order 1..10³, f64 arithmetic).

/// Classification band around the parabolic locus: an element counts as
/// non-loxodromic when its trace is within this distance of the real
/// interval [-2, 2].  Wide enough to absorb roundoff from ~100 matrix
/// products, narrow enough not to swallow genuinely loxodromic traces.
pub const CLASSIFY: f64 = 1e-9;

/// Reducibility band: |κ - 2| below this means the commutator trace is 2 and
/// the representation is treated as reducible.
pub const REDUCIBLE: f64 = 1e-9;

/// Relative degeneracy guard for the commutator bracket XY - YX: below this
/// (relative to ‖X‖‖Y‖) the two elements share a fixed point numerically and
/// no common perpendicular is extracted.
pub const BRACKET_REL: f64 = 1e-10;

/// Residual guard on internal consistency checks of width computations
/// (off-axis components after normalizing a line to the vertical axis,
/// det/trace drift of half-turn lifts).
pub const WIDTH_RESIDUAL: f64 = 1e-8;

/// Agreement demanded between independent routes to the turning angle θ.
/// Looser than WIDTH_RESIDUAL because the law-of-cosines route divides by
/// sinh factors that may be small.
pub const THETA_AGREE: f64 = 1e-5;

/// Orthogonality tolerances for palindrome-axis intersections: distance of
/// the two lines and deviation of the meeting angle from π/2.
pub const MEET_DIST: f64 = 1e-6;
pub const MEET_ANGLE: f64 = 1e-4;

/// Relative agreement between the recursive trace tree and direct matrix
/// evaluation of Christoffel words.
pub const TRACE_TREE_REL: f64 = 1e-6;

/// Matrices are renormalized to det 1 after this many factors in a product,
/// bounding det drift while keeping the fast path branch-free.
pub const RENORM_EVERY: usize = 32;
