//! Oriented geodesics of H³, their half-turn lifts, and widths.
//!
//! An oriented geodesic is determined by an ordered pair of distinct ideal
//! endpoints (u, u′).  It is encoded algebraically by the traceless det-1
//! matrix
//!
//!   M(u, u′) = i/(u-u′) · [[u+u′, -2uu′], [2, -(u+u′)]],
//!
//! the lift of the half-turn about the geodesic; swapping the endpoints
//! negates the lift, so the matrix sign carries the orientation.  The
//! *width* between two lines orthogonal to a common oriented axis N is the
//! complex number η = (signed distance along N) + i·(turning angle around
//! N, right-handed), read off after normalizing N to the vertical axis
//! (0, ∞): a line orthogonal to the vertical axis is a half-circle of some
//! radius r centered at 0, its lift is [[0, -i r e^{iφ}], [-i e^{-iφ}/r, 0]],
//! and η(from, to) = ln(r_to/r_from) + i(φ_to - φ_from).

use super::mat2::Mat2C;
use super::point::{apply_isometry, H3Point};
use crate::{tol, Error, Result};
use num_complex::Complex64;
use std::fmt;

/// A point of the ideal boundary ℂ ∪ {∞}.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum IdealPoint {
    Finite(Complex64),
    Infinity,
}

impl IdealPoint {
    pub fn finite(re: f64, im: f64) -> Self {
        IdealPoint::Finite(Complex64::new(re, im))
    }

    /// Möbius action of a matrix on the boundary.
    pub fn apply(&self, m: &Mat2C) -> IdealPoint {
        match self {
            IdealPoint::Infinity => {
                if m.c.norm() == 0.0 {
                    IdealPoint::Infinity
                } else {
                    IdealPoint::Finite(m.a / m.c)
                }
            }
            IdealPoint::Finite(z) => {
                let denom = m.c * z + m.d;
                if denom.norm() == 0.0 {
                    IdealPoint::Infinity
                } else {
                    IdealPoint::Finite((m.a * z + m.b) / denom)
                }
            }
        }
    }

    /// Approximate equality with tolerance on the chordal-ish scale:
    /// finite points compare by absolute distance, ∞ only equals ∞.
    pub fn approx_eq(&self, other: &IdealPoint, tol: f64) -> bool {
        match (self, other) {
            (IdealPoint::Infinity, IdealPoint::Infinity) => true,
            (IdealPoint::Finite(a), IdealPoint::Finite(b)) => (a - b).norm() <= tol,
            _ => false,
        }
    }
}

impl fmt::Display for IdealPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealPoint::Infinity => write!(f, "∞"),
            IdealPoint::Finite(z) => write!(f, "{z}"),
        }
    }
}

// ---------------------------------------------------------------------------
// Trace classification and complex length.
// ---------------------------------------------------------------------------

/// Conjugacy type of a det-1 matrix acting on H³.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Class {
    Identity,
    Elliptic,
    Parabolic,
    Loxodromic,
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Class::Identity => write!(f, "identity"),
            Class::Elliptic => write!(f, "elliptic"),
            Class::Parabolic => write!(f, "parabolic"),
            Class::Loxodromic => write!(f, "loxodromic"),
        }
    }
}

/// Distance from a complex trace to the real interval [-2, 2], the
/// non-loxodromic locus.
pub fn trace_band_distance(t: Complex64) -> f64 {
    let dx = (t.re.abs() - 2.0).max(0.0);
    dx.hypot(t.im)
}

/// Classifies by trace with an explicit tolerance band:
/// within `band` of the real interval [-2, 2] the element counts as
/// elliptic (interior) or parabolic (near ±2); ±Id is the identity.
pub fn classify_with_tol(m: &Mat2C, band: f64) -> Class {
    if m.dist(&Mat2C::identity()) <= band || m.dist(&-Mat2C::identity()) <= band {
        return Class::Identity;
    }
    let t = m.trace();
    if trace_band_distance(t) > band {
        return Class::Loxodromic;
    }
    if t.re.abs() >= 2.0 - band {
        Class::Parabolic
    } else {
        Class::Elliptic
    }
}

/// Classification with the default band [`tol::CLASSIFY`].
pub fn classify(m: &Mat2C) -> Class {
    classify_with_tol(m, tol::CLASSIFY)
}

/// Translation length and rotation angle of an element with an axis:
/// λ = ℓ + iθ with ℓ ≥ 0, θ ∈ (-π, π], defined by tr M = ±2 cosh(λ/2).
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct ComplexLength {
    pub ell: f64,
    pub theta: f64,
}

/// Wraps an angle into (-π, π].
pub fn wrap_angle(x: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut y = x.rem_euclid(two_pi);
    if y > std::f64::consts::PI {
        y -= two_pi;
    }
    y
}

/// Principal acosh that stays finite for huge arguments, where the naive
/// ln(u + √(u² - 1)) overflows in u²: past 1e100 use acosh u = ln 2 + ln u
/// (the dropped 1/(4u²) correction is far below rounding).
pub(crate) fn acosh_stable(u: Complex64) -> Complex64 {
    if u.norm() > 1e100 {
        u.ln() + std::f64::consts::LN_2
    } else {
        u.acosh()
    }
}

/// Complex translation length of a loxodromic or elliptic element.
/// Parabolic and identity inputs carry no axis and are rejected.
pub fn complex_length(m: &Mat2C) -> Result<ComplexLength> {
    match classify(m) {
        Class::Identity => Err(Error::NoAxis("complex_length")),
        Class::Parabolic => Err(Error::NoAxis("complex_length")),
        _ => {
            let lambda = acosh_stable(m.trace() / 2.0) * 2.0;
            Ok(ComplexLength { ell: lambda.re, theta: wrap_angle(lambda.im) })
        }
    }
}

/// The angle of parallelism at distance h from a geodesic:
/// sin α · cosh h = 1, α ∈ (0, π/2].  Even in h.
pub fn parallel_angle(h: f64) -> f64 {
    (1.0 / h.abs().cosh()).asin()
}

// ---------------------------------------------------------------------------
// Oriented geodesics and half-turn lifts.
// ---------------------------------------------------------------------------

/// An oriented geodesic: ordered ideal endpoints plus the traceless det-1
/// lift of the half-turn about it.  The lift sign encodes the orientation.
#[derive(Clone, Copy, Debug)]
pub struct OrientedGeodesic {
    pub start: IdealPoint,
    pub end: IdealPoint,
    pub lift: Mat2C,
}

/// The traceless det-1 lift of the half-turn about the geodesic from `u`
/// to `u2`.  Swapping the endpoints negates the matrix.
pub fn half_turn_from_endpoints(u: IdealPoint, u2: IdealPoint) -> Result<Mat2C> {
    let i = Complex64::new(0.0, 1.0);
    match (u, u2) {
        (IdealPoint::Infinity, IdealPoint::Infinity) => Err(Error::CoincidentEndpoints),
        (IdealPoint::Finite(w), IdealPoint::Infinity) => {
            // Limit of the general formula: z ↦ -z + 2w.
            Ok(Mat2C::new(-i, 2.0 * w * i, Complex64::new(0.0, 0.0), i))
        }
        (IdealPoint::Infinity, IdealPoint::Finite(w)) => {
            Ok(Mat2C::new(i, -2.0 * w * i, Complex64::new(0.0, 0.0), -i))
        }
        (IdealPoint::Finite(u), IdealPoint::Finite(v)) => {
            let diff = u - v;
            if diff.norm() <= 1e-14 * (1.0 + u.norm().max(v.norm())) {
                return Err(Error::CoincidentEndpoints);
            }
            let s = i / diff;
            Ok(Mat2C::new(
                s * (u + v),
                s * (-2.0 * u * v),
                s * 2.0,
                s * (-(u + v)),
            ))
        }
    }
}

impl OrientedGeodesic {
    /// Builds the oriented geodesic from ordered distinct ideal endpoints.
    pub fn from_endpoints(start: IdealPoint, end: IdealPoint) -> Result<Self> {
        let lift = half_turn_from_endpoints(start, end)?;
        Ok(OrientedGeodesic { start, end, lift })
    }

    /// Recovers the oriented geodesic from a traceless det-1 lift.
    /// Inverse of [`half_turn_from_endpoints`]: for c ≠ 0 the endpoints are
    /// a/c ± i/c (in start/end order matching the lift sign).
    pub fn from_lift(m: Mat2C) -> Result<Self> {
        let scale = m.sup_norm().max(1.0);
        if m.trace().norm() > tol::WIDTH_RESIDUAL * scale {
            return Err(Error::Inconsistent { what: "half-turn lift trace", residual: m.trace().norm() });
        }
        let det_err = (m.det() - Complex64::new(1.0, 0.0)).norm();
        if det_err > tol::WIDTH_RESIDUAL * scale * scale {
            return Err(Error::Inconsistent { what: "half-turn lift det", residual: det_err });
        }
        let i = Complex64::new(0.0, 1.0);
        let (start, end) = if m.c.norm() > 1e-14 * scale {
            let mid = m.a / m.c;
            let half = i / m.c;
            (IdealPoint::Finite(mid + half), IdealPoint::Finite(mid - half))
        } else {
            // Triangular case: a = ±i; -i puts the finite endpoint first.
            let finite = IdealPoint::Finite(-m.b / (2.0 * m.a));
            if (m.a + i).norm() < (m.a - i).norm() {
                (finite, IdealPoint::Infinity)
            } else {
                (IdealPoint::Infinity, finite)
            }
        };
        Ok(OrientedGeodesic { start, end, lift: m })
    }

    /// The same geodesic with reversed orientation (negated lift).
    pub fn reversed(&self) -> Self {
        OrientedGeodesic { start: self.end, end: self.start, lift: -self.lift }
    }
}

/// The oriented axis of a loxodromic or elliptic element, oriented from the
/// repelling toward the attracting fixed point (for elliptic elements the
/// eigenvalue with positive imaginary part plays the attracting role, a
/// deterministic but arbitrary choice).
pub fn axis(m: &Mat2C) -> Result<OrientedGeodesic> {
    match classify(m) {
        Class::Identity | Class::Parabolic => return Err(Error::NoAxis("axis")),
        _ => {}
    }
    let t = m.trace();
    let disc = (t * t - Complex64::new(4.0, 0.0)).sqrt();
    let l1 = (t + disc) / 2.0;
    let l2 = (t - disc) / 2.0;
    // Attracting eigenvalue: larger modulus; tie (elliptic) broken by
    // positive imaginary part.
    let attracting = if (l1.norm() - l2.norm()).abs() > 1e-14 {
        if l1.norm() > l2.norm() {
            l1
        } else {
            l2
        }
    } else if l1.im >= 0.0 {
        l1
    } else {
        l2
    };
    let repelling = if attracting == l1 { l2 } else { l1 };
    let fixed_point = |lambda: Complex64| -> IdealPoint {
        // Eigenvector candidates (b, λ-a) and (λ-d, c); take the larger.
        let v1 = (m.b, lambda - m.a);
        let v2 = (lambda - m.d, m.c);
        let (x, y) = if v1.0.norm().max(v1.1.norm()) >= v2.0.norm().max(v2.1.norm()) {
            v1
        } else {
            v2
        };
        if y.norm() == 0.0 {
            IdealPoint::Infinity
        } else {
            IdealPoint::Finite(x / y)
        }
    };
    OrientedGeodesic::from_endpoints(fixed_point(repelling), fixed_point(attracting))
}

/// The common perpendicular of the axes of two loxodromic elements without
/// common fixed points, as an oriented geodesic whose lift is the
/// normalized commutator bracket (XY - YX)/√det.  The half-turn about it
/// conjugates each element to its inverse.
pub fn common_perpendicular(x: &Mat2C, y: &Mat2C) -> Result<OrientedGeodesic> {
    let bracket = *x * *y - *y * *x;
    let scale = x.sup_norm() * y.sup_norm();
    if bracket.sup_norm() < tol::BRACKET_REL * scale {
        return Err(Error::DegenerateBracket);
    }
    let det = bracket.det();
    if det.norm() < (tol::BRACKET_REL * scale).powi(2) {
        // Trace-zero with vanishing det: the elements share one fixed point.
        return Err(Error::DegenerateBracket);
    }
    let lift = bracket.scale(det.sqrt().inv());
    OrientedGeodesic::from_lift(lift)
}

// ---------------------------------------------------------------------------
// Widths.
// ---------------------------------------------------------------------------

/// A det-1 Möbius transformation sending (u, v) to (0, ∞).
pub fn mobius_to_vertical(u: IdealPoint, v: IdealPoint) -> Result<Mat2C> {
    match (u, v) {
        (IdealPoint::Infinity, IdealPoint::Infinity) => Err(Error::CoincidentEndpoints),
        (IdealPoint::Finite(u), IdealPoint::Infinity) => {
            Ok(Mat2C::new(1.0.into(), -u, 0.0.into(), 1.0.into()))
        }
        (IdealPoint::Infinity, IdealPoint::Finite(v)) => {
            // z ↦ 1/(z - v), normalized to det 1.
            let i = Complex64::new(0.0, 1.0);
            Ok(Mat2C::new(0.0.into(), -i, -i, i * v))
        }
        (IdealPoint::Finite(u), IdealPoint::Finite(v)) => {
            let diff = u - v;
            if diff.norm() <= 1e-14 * (1.0 + u.norm().max(v.norm())) {
                return Err(Error::CoincidentEndpoints);
            }
            let s = diff.sqrt().inv();
            Ok(Mat2C::new(s, -s * u, s, -s * v))
        }
    }
}

/// Radius and angle of a line orthogonal to the vertical axis, read off its
/// half-turn lift [[0, -i r e^{iφ}], [-i e^{-iφ}/r, 0]].  Errors when the
/// line is not orthogonal to the vertical axis (nonzero diagonal).
fn polar_of_orthogonal_line(m: &Mat2C) -> Result<(f64, f64)> {
    let scale = m.sup_norm().max(1.0);
    let diag = m.a.norm().max(m.d.norm());
    if diag > tol::WIDTH_RESIDUAL * scale {
        return Err(Error::NotOrthogonal { residual: diag / scale });
    }
    let i = Complex64::new(0.0, 1.0);
    let (r, phi) = (i * m.b).to_polar();
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::Inconsistent { what: "orthogonal line radius", residual: r });
    }
    Ok((r, phi))
}

/// The signed complex width from line `from` to line `to`, measured along
/// the oriented line `axis`; both lines must meet `axis` orthogonally.
/// Re is the signed distance between the feet (positive toward `axis.end`),
/// Im the right-handed turning angle in (-π, π].
pub fn width_along(
    axis: &OrientedGeodesic,
    from: &OrientedGeodesic,
    to: &OrientedGeodesic,
) -> Result<Complex64> {
    let g = mobius_to_vertical(axis.start, axis.end)?;
    let g_inv = g.inverse_det1();
    let (r_from, phi_from) = polar_of_orthogonal_line(&(g * from.lift * g_inv))?;
    let (r_to, phi_to) = polar_of_orthogonal_line(&(g * to.lift * g_inv))?;
    Ok(Complex64::new((r_to / r_from).ln(), wrap_angle(phi_to - phi_from)))
}

/// Unsigned mutual width of two lines: acosh(-tr(L₁L₂)/2) on the principal
/// branch.  Re ≥ 0 is the distance between the lines, |Im| ∈ [0, π] the
/// angle their directions make (π/2 for orthogonal intersection).
pub fn mutual_width(l1: &OrientedGeodesic, l2: &OrientedGeodesic) -> Complex64 {
    (-(l1.lift * l2.lift).trace() / 2.0).acosh()
}

/// Nearest-point data of two distinct geodesics: the feet of their common
/// perpendicular and the distance between them (0 with equal feet when the
/// lines cross).  Lines sharing an ideal endpoint, or equal lines, have no
/// common perpendicular and are rejected.
#[derive(Clone, Copy, Debug)]
pub struct LineMeet {
    pub foot1: H3Point,
    pub foot2: H3Point,
    pub dist: f64,
}

pub fn line_meet(l1: &OrientedGeodesic, l2: &OrientedGeodesic) -> Result<LineMeet> {
    let w = l1.lift * l2.lift;
    match classify(&w) {
        Class::Identity => return Err(Error::NoCommonPerpendicular("lines are identical")),
        Class::Parabolic => {
            return Err(Error::NoCommonPerpendicular("lines share an ideal endpoint"))
        }
        _ => {}
    }
    // The axis of the composed half-turns is the common perpendicular.
    let n = axis(&w)?;
    let g = mobius_to_vertical(n.start, n.end)?;
    let g_inv = g.inverse_det1();
    let (r1, _) = polar_of_orthogonal_line(&(g * l1.lift * g_inv))?;
    let (r2, _) = polar_of_orthogonal_line(&(g * l2.lift * g_inv))?;
    let foot1 = apply_isometry(&g_inv, &H3Point::new(Complex64::new(0.0, 0.0), r1));
    let foot2 = apply_isometry(&g_inv, &H3Point::new(Complex64::new(0.0, 0.0), r2));
    Ok(LineMeet { foot1, foot2, dist: (r1 / r2).ln().abs() })
}
