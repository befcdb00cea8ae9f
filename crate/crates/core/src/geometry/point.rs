//! Points of upper half-space H³ = { (z, t) : z ∈ ℂ, t > 0 } and the
//! isometric action of SL(2,ℂ) on them.

use super::mat2::Mat2C;
use num_complex::Complex64;

/// A point of upper half-space.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct H3Point {
    /// Horizontal (boundary-plane) coordinate.
    pub z: Complex64,
    /// Height above the boundary plane; always > 0.
    pub t: f64,
}

impl H3Point {
    pub fn new(z: Complex64, t: f64) -> Self {
        debug_assert!(t > 0.0, "H3 point needs positive height");
        H3Point { z, t }
    }

    /// The reference point j = (0, 1), the usual base point for orbit maps.
    pub fn base() -> Self {
        H3Point { z: Complex64::new(0.0, 0.0), t: 1.0 }
    }
}

/// The Poincaré extension of a det-1 matrix to H³:
/// (z, t) ↦ ( ((az+b)(cz+d)* + a c̄ t²) / D , t / D ),  D = |cz+d|² + |c|²t².
pub fn apply_isometry(m: &Mat2C, p: &H3Point) -> H3Point {
    let num_z = (m.a * p.z + m.b) * (m.c * p.z + m.d).conj() + m.a * m.c.conj() * p.t * p.t;
    let denom = (m.c * p.z + m.d).norm_sqr() + m.c.norm_sqr() * p.t * p.t;
    H3Point { z: num_z / denom, t: p.t / denom }
}

/// Hyperbolic distance in the upper half-space model:
/// cosh d = 1 + (|z₁-z₂|² + (t₁-t₂)²) / (2 t₁ t₂).
pub fn hyperbolic_distance(p: &H3Point, q: &H3Point) -> f64 {
    let arg = 1.0 + ((p.z - q.z).norm_sqr() + (p.t - q.t) * (p.t - q.t)) / (2.0 * p.t * q.t);
    arg.max(1.0).acosh()
}
