//! Orbit-map margin estimation: a quantitative proxy for primitive
//! stability.
//!
//! For each primitive class up to a level cap, the orbit of a base point
//! under a window of prefixes along the Christoffel axis path is compared
//! against word length: the estimate reports the steepest slope m (on a
//! fixed grid) such that
//!
//!   m · d_e(u, v) - c ≤ d_H(ρ(u)·o, ρ(v)·o)
//!
//! holds over every sampled pair with an additive constant c below a fixed
//! cap.  A non-loxodromic primitive image bounds some axis path outright,
//! so the margin collapses to zero with the offending slope reported.

use crate::farey::{christoffel, level_vertices, Slope};
use crate::freegroup::axis_window;
use crate::geometry::{
    apply_isometry, classify, hyperbolic_distance, Class, H3Point, Representation,
};
use crate::{Error, Result};
use serde_json::json;
use std::collections::BTreeMap;

/// Slope grid for the margin search: m ∈ {0.01, 0.02, …, 5.00}, scanned
/// from the top; the first m whose required constant stays ≤ `C_CAP` wins.
const M_GRID_STEP: f64 = 0.01;
const M_GRID_STEPS: u32 = 500;
const C_CAP: f64 = 50.0;

/// Result of [`ps_margin`].
#[derive(Clone, Copy, Debug)]
pub struct PsEstimate {
    pub base_point: H3Point,
    /// Best grid slope; 0 when no positive-slope bound held (in particular
    /// whenever `bounded_witness` is set).
    pub m: f64,
    /// Additive constant realizing the bound at slope `m`.
    pub c: f64,
    /// Orbit-point pairs examined.
    pub samples: usize,
    /// A primitive class whose image is not loxodromic, if one was found —
    /// its axis path has a bounded orbit, so no positive margin exists.
    pub bounded_witness: Option<Slope>,
}

impl PsEstimate {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "base_point": {
                "z": [self.base_point.z.re, self.base_point.z.im],
                "t": self.base_point.t,
            },
            "m": self.m,
            "c": self.c,
            "samples": self.samples,
            "bounded_witness": self.bounded_witness.map(|s| s.to_string()),
        })
    }
}

/// Estimates the orbit-map margin of `rep` at `base` over all primitive
/// classes of level ≤ `max_level`, windowing each axis path to
/// `power_window` times its cyclic length on both sides.
///
/// Requires an irreducible representation.
pub fn ps_margin(
    rep: &Representation,
    base: H3Point,
    max_level: u32,
    power_window: u32,
) -> Result<PsEstimate> {
    if rep.is_reducible() {
        return Err(Error::Reducible);
    }

    // Least orbit distance seen per word-length gap, over all sampled axis
    // paths.  Only the minimum per gap matters to the bound.
    let mut min_dist: BTreeMap<usize, f64> = BTreeMap::new();
    let mut samples = 0usize;

    for (slope, _) in level_vertices(max_level) {
        let word = christoffel(slope);
        if classify(&rep.evaluate(&word)) != Class::Loxodromic {
            return Ok(PsEstimate {
                base_point: base,
                m: 0.0,
                c: 0.0,
                samples,
                bounded_witness: Some(slope),
            });
        }
        let period = word.len();
        let radius = power_window as usize * period;
        let path = axis_window(&word, radius)?;
        let points: Vec<H3Point> = path
            .window
            .iter()
            .map(|g| apply_isometry(&rep.evaluate(g), &base))
            .collect();
        // d_H(g_i·o, g_j·o) depends only on (i mod period, j - i), because
        // g_i⁻¹·g_j spells the letters i..j of the periodic path.  One
        // period of starting offsets per gap covers every pair in the
        // window.
        let n = points.len();
        for gap in 1..n {
            let offsets = period.min(n - gap);
            for i in 0..offsets {
                let d = hyperbolic_distance(&points[i], &points[i + gap]);
                samples += 1;
                min_dist
                    .entry(gap)
                    .and_modify(|m| *m = m.min(d))
                    .or_insert(d);
            }
        }
    }

    for k in (1..=M_GRID_STEPS).rev() {
        let m = k as f64 * M_GRID_STEP;
        let c = min_dist
            .iter()
            .map(|(&gap, &d)| m * gap as f64 - d)
            .fold(0.0f64, f64::max);
        if c <= C_CAP {
            return Ok(PsEstimate { base_point: base, m, c, samples, bounded_witness: None });
        }
    }
    Ok(PsEstimate { base_point: base, m: 0.0, c: 0.0, samples, bounded_witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::representation_from_traces;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn fuchsian_margin_is_positive() {
        let rep = representation_from_traces(c(3.0, 0.0), c(3.0, 0.0), c(3.0, 0.0)).unwrap();
        let est = ps_margin(&rep, H3Point::base(), 4, 3).unwrap();
        assert!(est.bounded_witness.is_none());
        assert!(est.m > 0.0, "margin {} should be positive", est.m);
        assert!(est.c >= 0.0 && est.c <= C_CAP);
        assert!(est.samples > 0);
    }

    #[test]
    fn bound_holds_over_every_pair() {
        // The periodicity shortcut must agree with the full quadratic scan:
        // re-check the certified bound on every pair of a few windows.
        let rep = representation_from_traces(c(3.0, 0.3), c(3.2, -0.1), c(3.4, 0.2)).unwrap();
        let est = ps_margin(&rep, H3Point::base(), 3, 3).unwrap();
        assert!(est.m > 0.0);
        for (slope, _) in level_vertices(3) {
            let word = christoffel(slope);
            let path = axis_window(&word, 3 * word.len()).unwrap();
            let points: Vec<H3Point> = path
                .window
                .iter()
                .map(|g| apply_isometry(&rep.evaluate(g), &H3Point::base()))
                .collect();
            for i in 0..points.len() {
                for j in i + 1..points.len() {
                    let d_e = (j - i) as f64;
                    let d_h = hyperbolic_distance(&points[i], &points[j]);
                    assert!(
                        est.m * d_e - est.c <= d_h + 1e-9,
                        "pair ({i},{j}) on slope {slope}: {} > {d_h}",
                        est.m * d_e - est.c
                    );
                }
            }
        }
    }

    #[test]
    fn elliptic_primitive_collapses_margin() {
        // tr A = 1 makes the generator a rotation: slope 1/0 bounds its
        // own axis path.
        let rep = representation_from_traces(c(1.0, 0.0), c(3.0, 0.0), c(3.0, 0.0)).unwrap();
        let est = ps_margin(&rep, H3Point::base(), 4, 3).unwrap();
        assert_eq!(est.m, 0.0);
        assert_eq!(est.bounded_witness, Some(Slope::infinity()));
    }

    #[test]
    fn reducible_input_is_rejected() {
        let rep = representation_from_traces(c(2.0, 0.0), c(2.0, 0.0), c(2.0, 0.0)).unwrap();
        assert!(matches!(
            ps_margin(&rep, H3Point::base(), 4, 3),
            Err(Error::Reducible)
        ));
    }
}
