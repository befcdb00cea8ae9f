//! Right-angled hexagons spanned by two loxodromic isometries.
//!
//! For X̃, Ỹ in SL(2, ℂ) with distinct axes and no common fixed point there
//! are traceless det-1 lifts P̃, Q̃, R̃ of half-turns with
//!
//!   X̃ = -P̃Q̃,   Ỹ = -Q̃R̃,   Z̃ := (X̃Ỹ)⁻¹ = -R̃P̃.
//!
//! The Q̃-line is the common perpendicular of Axis(X̃) and Axis(Ỹ); the six
//! lines Axis(X̃), P̃-line, Axis(Z̃), R̃-line, Axis(Ỹ), Q̃-line close into a
//! skew right-angled hexagon.  Writing η_X, η_Y, η_Z for the half
//! translation lengths acosh(tr/2) and η_Q for the width from Axis(X̃) to
//! Axis(Ỹ) measured along the Q̃-line, the hexagon satisfies
//!
//!   cosh η_Z = cosh η_X cosh η_Y + sinh η_X sinh η_Y cosh η_Q
//!
//! and the amplitude am = -tr(P̃Q̃R̃)/2 obeys
//! am = -i sinh η_X sinh η_Y sinh η_Q and tr [X̃, Ỹ] = 2 - 4 am².

use super::geodesic::{
    acosh_stable, axis, classify, common_perpendicular, mutual_width, width_along, Class,
    OrientedGeodesic,
};
use super::mat2::Mat2C;
use crate::{tol, Error, Result};
use num_complex::Complex64;

/// The half-turn triple attached to an ordered pair (X̃, Ỹ): lifts with
/// X̃ = -P̃Q̃ and Ỹ = -Q̃R̃, plus Z̃ = (X̃Ỹ)⁻¹ = -R̃P̃.  Extends the group
/// ⟨X̃, Ỹ⟩ by the half-turn Q̃ conjugating each generator to its inverse.
#[derive(Clone, Copy, Debug)]
pub struct CoxeterExtension {
    pub p: Mat2C,
    pub q: Mat2C,
    pub r: Mat2C,
    pub z: Mat2C,
}

/// Computes the half-turn triple of (X̃, Ỹ).  Q̃ is the normalized
/// commutator bracket (X̃Ỹ - ỸX̃)/√det, P̃ = X̃Q̃ and R̃ = Q̃Ỹ; the inputs
/// must not commute or share a fixed point (degenerate bracket).
pub fn coxeter_extension(x: &Mat2C, y: &Mat2C) -> Result<CoxeterExtension> {
    let q = common_perpendicular(x, y)?.lift;
    let p = *x * q;
    let r = q * *y;
    // tr P̃ = tr(X̃(X̃Ỹ - ỸX̃))/√det = 0 by cyclicity; likewise tr R̃.  In
    // floating point the entries of X̃·Q̃ carry absolute noise of order
    // ε·|X̃|·|Q̃|, further amplified by how far the bracket sits below the
    // plain product X̃Ỹ, so the trace residuals are judged against that
    // floor: beyond it the computation genuinely degenerated; within it the
    // lifts are projected back onto the traceless subspace where the exact
    // values live.
    let xy = *x * *y;
    let amp = xy.sup_norm() / (xy - *y * *x).sup_norm();
    let floor_p = f64::EPSILON * x.sup_norm() * q.sup_norm() * amp;
    let floor_r = f64::EPSILON * y.sup_norm() * q.sup_norm() * amp;
    let scale = p.sup_norm().max(r.sup_norm()).max(1.0);
    let allowed = tol::WIDTH_RESIDUAL * scale;
    if p.trace().norm() > allowed.max(64.0 * floor_p)
        || r.trace().norm() > allowed.max(64.0 * floor_r)
    {
        let residual = p.trace().norm().max(r.trace().norm()) / scale;
        return Err(Error::Inconsistent { what: "half-turn triple traces", residual });
    }
    let half = Complex64::new(0.5, 0.0);
    let p = p - Mat2C::identity().scale(p.trace() * half);
    let r = r - Mat2C::identity().scale(r.trace() * half);
    let z = xy.inverse_det1();
    Ok(CoxeterExtension { p, q, r, z })
}

/// The right-angled hexagon data of an ordered pair (X̃, Ỹ).
///
/// Sign conventions: η_X, η_Y, η_Z are the principal half translation
/// lengths acosh(tr/2) (real part ≥ 0); η_Q is the width from Axis(X̃) to
/// Axis(Ỹ) measured along the Q̃-line with its bracket orientation.  With
/// these choices am = -i sinh η_X sinh η_Y sinh η_Q holds on the nose.
#[derive(Clone, Debug)]
pub struct Hexagon {
    /// Oriented axes of the two defining isometries.
    pub x_axis: OrientedGeodesic,
    pub y_axis: OrientedGeodesic,
    /// Half-turn lines; the Q̃-line is the common perpendicular of the axes.
    pub p_line: OrientedGeodesic,
    pub q_line: OrientedGeodesic,
    pub r_line: OrientedGeodesic,
    /// Half translation lengths of X̃, Ỹ and Z̃ = (X̃Ỹ)⁻¹.
    pub eta_x: Complex64,
    pub eta_y: Complex64,
    pub eta_z: Complex64,
    /// Signed complex width between the axes along the Q̃-line.
    pub eta_q: Complex64,
    /// am = -tr(P̃Q̃R̃)/2.
    pub amplitude: Complex64,
}

/// Builds the hexagon of (X̃, Ỹ).  Both elements must carry an axis
/// (loxodromic or elliptic) and must not share a fixed point.
pub fn hexagon(x: &Mat2C, y: &Mat2C) -> Result<Hexagon> {
    for m in [x, y] {
        match classify(m) {
            Class::Identity | Class::Parabolic => return Err(Error::NoAxis("hexagon")),
            _ => {}
        }
    }
    let ext = coxeter_extension(x, y)?;
    let x_axis = axis(x)?;
    let y_axis = axis(y)?;
    let q_line = OrientedGeodesic::from_lift(ext.q)?;
    let p_line = OrientedGeodesic::from_lift(ext.p)?;
    let r_line = OrientedGeodesic::from_lift(ext.r)?;
    let eta_q = width_along(&q_line, &x_axis, &y_axis)?;
    let eta_x = acosh_stable(x.trace() / 2.0);
    let eta_y = acosh_stable(y.trace() / 2.0);
    let eta_z = acosh_stable(ext.z.trace() / 2.0);
    let amplitude = -(ext.p * ext.q * ext.r).trace() / 2.0;
    Ok(Hexagon {
        x_axis,
        y_axis,
        p_line,
        q_line,
        r_line,
        eta_x,
        eta_y,
        eta_z,
        eta_q,
        amplitude,
    })
}

impl Hexagon {
    /// The unsigned angle in [0, π] between the oriented axes of X̃ and Ỹ,
    /// i.e. the turning part of the width along their common perpendicular.
    pub fn theta(&self) -> f64 {
        self.eta_q.im.abs()
    }

    /// |cosh η_Z - cosh η_X cosh η_Y - sinh η_X sinh η_Y cosh η_Q|.
    pub fn law_of_cosines_residual(&self) -> f64 {
        (self.eta_z.cosh()
            - self.eta_x.cosh() * self.eta_y.cosh()
            - self.eta_x.sinh() * self.eta_y.sinh() * self.eta_q.cosh())
        .norm()
    }

    /// |am + i sinh η_X sinh η_Y sinh η_Q|.
    pub fn amplitude_identity_residual(&self) -> f64 {
        let i = Complex64::new(0.0, 1.0);
        (self.amplitude + i * self.eta_x.sinh() * self.eta_y.sinh() * self.eta_q.sinh()).norm()
    }

    /// |tr [X̃, Ỹ] - (2 - 4 am²)| given the commutator trace.
    pub fn kappa_residual(&self, kappa: Complex64) -> f64 {
        (kappa - (Complex64::new(2.0, 0.0) - 4.0 * self.amplitude * self.amplitude)).norm()
    }
}

// ---------------------------------------------------------------------------
// The angle between two axes, by three routes.
// ---------------------------------------------------------------------------

/// Angle in [0, π] between the oriented axes of two elements with distinct
/// axes: |Im η_Q| for the width η_Q along their common perpendicular.
///
/// The returned value comes from the cosine-law route, which works from
/// traces alone and keeps full relative accuracy however large the entries
/// grow.  When the pair is numerically tame — moderate entries, a bracket
/// at generic scale with a determinant away from degeneracy — the value is
/// also cross-checked against the explicit hexagon construction, and a
/// disagreement beyond [`tol::THETA_AGREE`] is reported as an
/// inconsistency.  Outside that regime the half-turn product X̃·Q̃ cancels
/// down to the rounding floor of its factors and the width route carries
/// no information, so only the trace route is used.
pub fn angle_theta(x: &Mat2C, y: &Mat2C) -> Result<f64> {
    let theta = theta_via_cosine_law(x, y)?;
    let (sx, sy) = (x.sup_norm(), y.sup_norm());
    let bracket = *x * *y - *y * *x;
    let tame = sx * sy <= 1e4
        && bracket.sup_norm() >= 1e-4 * sx * sy
        && bracket.det().norm() >= 1e-4 * bracket.sup_norm().powi(2);
    if tame {
        let hex = hexagon(x, y)?;
        let disagreement = (hex.theta() - theta).abs();
        if disagreement > tol::THETA_AGREE {
            return Err(Error::Inconsistent { what: "angle between axes", residual: disagreement });
        }
    }
    Ok(theta)
}

/// The same angle read from the half-turn lifts of the two axes:
/// |Im acosh(-tr(Ã_X Ã_Y)/2)|.
pub fn theta_via_axis_traces(x: &Mat2C, y: &Mat2C) -> Result<f64> {
    let ax = axis(x)?;
    let ay = axis(y)?;
    Ok(mutual_width(&ax, &ay).im.abs())
}

/// The same angle from traces alone, solving the hexagon cosine law
/// cosh η_Q = (cosh η_Z - cosh η_X cosh η_Y) / (sinh η_X sinh η_Y).
///
/// Evaluated with every exponential kept at unit scale: dividing the law by
/// e^{η_X + η_Y} and writing u = e^{-2η_X}, v = e^{-2η_Y}, s = e^{-2η_Z},
/// w = e^{η_Z - η_X - η_Y} (all of magnitude ≤ ~e² since Re η ≥ 0 and
/// Re η_Z ≤ Re η_X + Re η_Y + O(1)) gives
///
///   cosh η_Q = (2w(1 + s) - (1 + u)(1 + v)) / ((1 - u)(1 - v)),
///
/// which never overflows and keeps the angle accurate at depths where
/// cosh η_X itself would be infinite in double precision.
pub fn theta_via_cosine_law(x: &Mat2C, y: &Mat2C) -> Result<f64> {
    let eta_x = acosh_stable(x.trace() / 2.0);
    let eta_y = acosh_stable(y.trace() / 2.0);
    let eta_z = acosh_stable((*x * *y).trace() / 2.0);
    let u = (-2.0 * eta_x).exp();
    let v = (-2.0 * eta_y).exp();
    let denom = (1.0 - u) * (1.0 - v);
    if denom.norm() < 1e-12 {
        return Err(Error::NotLoxodromic("angle via cosine law"));
    }
    let s = (-2.0 * eta_z).exp();
    let w = (eta_z - eta_x - eta_y).exp();
    let cq = (2.0 * w * (1.0 + s) - (1.0 + u) * (1.0 + v)) / denom;
    Ok(acosh_stable(cq).im.abs())
}
