//! Per-level axis-angle scans and the edge separation certificate.
//!
//! For a co-directed edge [x, y] the images ρ(Ch(x)), ρ(Ch(y)) generate the
//! image group, and the angle θ between their axes (the imaginary part of
//! the width of their common perpendicular) measures how far from Fuchsian
//! right-angled alignment the pair sits.  Scanning the maximum of θ per
//! level tracks whether deeper generating pairs straighten out; the
//! separation certificate checks the ping-pong criterion θ < π/4 together
//! with a short translation length bound via the angle of parallelism.

use crate::farey::{christoffel, level, level_edges, FareyEdge, Slope};
use crate::geometry::{angle_theta, complex_length, parallel_angle, Representation};
use crate::Result;
use std::f64::consts::FRAC_PI_4;

/// One row of [`theta_scan`]: the worst axis angle among the co-directed
/// edges of one level.
#[derive(Clone, Copy, Debug)]
pub struct ThetaScanRow {
    pub level: u32,
    pub n_edges: usize,
    /// Edges whose angle or certificate computation failed (degenerate
    /// axes, non-loxodromic images, …); recorded, never fatal.
    pub n_errors: usize,
    /// None when every edge of the level errored.
    pub max_theta: Option<f64>,
    /// True when [`separation_certificate`] held on every edge of the
    /// level (errors count as failures).
    pub all_separated: bool,
}

/// Maximum axis angle and separation status per level 0 ..= `max_level`.
#[derive(Clone, Debug)]
pub struct ThetaScan {
    pub rows: Vec<ThetaScanRow>,
}

impl ThetaScan {
    /// Smallest level from which every deeper scanned level (this one
    /// included) had all edges separated, if any.
    pub fn separated_from(&self) -> Option<u32> {
        let mut from = None;
        for row in &self.rows {
            if row.all_separated {
                from.get_or_insert(row.level);
            } else {
                from = None;
            }
        }
        from
    }
}

/// The higher-level endpoint of an edge — the newer generator of the pair
/// (ties, which occur only on the base edges, resolve to `to`).
fn newer_endpoint(edge: &FareyEdge) -> Slope {
    if level(edge.from) > level(edge.to) {
        edge.from
    } else {
        edge.to
    }
}

/// Ping-pong separation certificate for one co-directed edge: the axes of
/// the endpoint images meet at angle θ < π/4, and the newer generator
/// translates far enough that the angle of parallelism of half its real
/// translation length is also below π/4.
pub fn separation_certificate(rep: &Representation, edge: &FareyEdge) -> Result<bool> {
    let gx = rep.evaluate(&christoffel(edge.from));
    let gy = rep.evaluate(&christoffel(edge.to));
    let theta = angle_theta(&gx, &gy)?;
    let newer = if newer_endpoint(edge) == edge.from { &gx } else { &gy };
    let ell = complex_length(newer)?.ell;
    Ok(theta < FRAC_PI_4 && parallel_angle(ell / 2.0) < FRAC_PI_4)
}

/// Scans every co-directed edge of each level k ≤ `max_level` (2^{k+1} of
/// them), recording the worst axis angle and whether all edges carried the
/// separation certificate.
pub fn theta_scan(rep: &Representation, max_level: u32) -> ThetaScan {
    let mut rows = Vec::with_capacity(max_level as usize + 1);
    for k in 0..=max_level {
        let edges = level_edges(k);
        let mut n_errors = 0usize;
        let mut max_theta: Option<f64> = None;
        let mut all_separated = true;
        for edge in &edges {
            let gx = rep.evaluate(&christoffel(edge.from));
            let gy = rep.evaluate(&christoffel(edge.to));
            let theta = match angle_theta(&gx, &gy) {
                Ok(t) if t.is_finite() => t,
                _ => {
                    n_errors += 1;
                    all_separated = false;
                    continue;
                }
            };
            max_theta = Some(max_theta.map_or(theta, |m: f64| m.max(theta)));
            let separated = theta < FRAC_PI_4
                && match complex_length(if newer_endpoint(edge) == edge.from {
                    &gx
                } else {
                    &gy
                }) {
                    Ok(cl) => parallel_angle(cl.ell / 2.0) < FRAC_PI_4,
                    Err(_) => {
                        n_errors += 1;
                        false
                    }
                };
            all_separated &= separated;
        }
        rows.push(ThetaScanRow {
            level: k,
            n_edges: edges.len(),
            n_errors,
            max_theta,
            all_separated,
        });
    }
    ThetaScan { rows }
}
