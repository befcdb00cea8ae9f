//! Trace propagation over the Farey tree, the Q-condition search, and the
//! trace-growth fit.
//!
//! Every primitive class carries the trace of its Christoffel
//! representative, and these traces obey one conservation law per
//! quadrilateral: if the co-directed edge [x, y] has base-ward neighbor w
//! and far-side child z = x ⊕ y, then
//!
//!   tw + tz = tx · ty.
//!
//! Seeded with (tr A, tr B, tr AB, tr A⁻¹B) = (x, y, z, xy - z) on the two
//! base edges, the recursion reaches every slope without a single matrix
//! product.  The Q-condition search walks the same tree breadth-first,
//! reporting a concrete non-loxodromic witness (No), a certified escaping
//! frontier (Yes), or depth exhaustion (Inconclusive).

use crate::farey::{fibonacci, EdgeRec, FareyEdge, Slope};
use crate::geometry::{trace_band_distance, Representation};
use crate::{tol, Error, Result};
use num_complex::Complex64;
use serde_json::json;
use std::collections::{BTreeMap, VecDeque};

/// A co-directed edge with the four traces of its quadrilateral.
#[derive(Clone, Copy, Debug)]
pub struct TraceEdge {
    pub edge: FareyEdge,
    /// Traces at the endpoints (from, to) of the edge.
    pub tx: Complex64,
    pub ty: Complex64,
    /// Trace at the far-side child (the mediant).
    pub tz: Complex64,
    /// Trace at the base-ward neighbor.
    pub tw: Complex64,
}

/// Internal walk state: an [`EdgeRec`] plus the traces at its endpoints and
/// its base-ward neighbor.  The child's trace is tx·ty - tw.
#[derive(Clone, Copy, Debug)]
struct EdgeTraces {
    rec: EdgeRec,
    tx: Complex64,
    ty: Complex64,
    tw: Complex64,
}

impl EdgeTraces {
    /// The two base edges with their seed traces.  On V⁺ the base-ward
    /// neighbor is -1/1 with trace xy - z; on V⁻ it is 1/1 with trace z.
    fn seeds(rep: &Representation) -> [EdgeTraces; 2] {
        let (x, y, z) = rep.trace_triple();
        let [pos, neg] = EdgeRec::seeds();
        [
            EdgeTraces { rec: pos, tx: x, ty: y, tw: x * y - z },
            EdgeTraces { rec: neg, tx: x, ty: y, tw: z },
        ]
    }

    fn child_trace(&self) -> Complex64 {
        self.tx * self.ty - self.tw
    }

    /// The two deeper edges of the far-side triangle, with traces carried
    /// along: [x, z] keeps y as its neighbor, [z, y] keeps x.
    fn expand(&self, tz: Complex64) -> (EdgeTraces, EdgeTraces) {
        let (left, right) = self.rec.expand();
        (
            EdgeTraces { rec: left, tx: self.tx, ty: tz, tw: self.ty },
            EdgeTraces { rec: right, tx: tz, ty: self.ty, tw: self.tx },
        )
    }
}

/// Traces of the Christoffel representatives of all slopes of level
/// ≤ `max_level`, keyed by canonical slope, computed by the quadrilateral
/// recursion alone.
pub fn trace_tree(rep: &Representation, max_level: u32) -> BTreeMap<Slope, Complex64> {
    let mut out = BTreeMap::new();
    let seeds = EdgeTraces::seeds(rep);
    out.insert(Slope::infinity(), seeds[0].tx);
    out.insert(Slope::zero(), seeds[0].ty);
    let mut queue: VecDeque<EdgeTraces> = seeds.into_iter().collect();
    while let Some(e) = queue.pop_front() {
        if e.rec.level >= max_level {
            continue;
        }
        let tz = e.child_trace();
        let (zp, zq) = e.rec.child();
        let z = Slope::new(zp, zq).expect("tree vertex is a valid slope");
        out.insert(z.canonical(), tz);
        let (left, right) = e.expand(tz);
        queue.push_back(left);
        queue.push_back(right);
    }
    out
}

/// All co-directed edges of level ≤ `max_level` with their quadrilateral
/// traces, in breadth-first order from the two base edges.
pub fn trace_edges(rep: &Representation, max_level: u32) -> Vec<TraceEdge> {
    let mut out = Vec::new();
    let mut queue: VecDeque<EdgeTraces> = EdgeTraces::seeds(rep).into_iter().collect();
    while let Some(e) = queue.pop_front() {
        let tz = e.child_trace();
        out.push(TraceEdge { edge: e.rec.to_edge(), tx: e.tx, ty: e.ty, tz, tw: e.tw });
        if e.rec.level >= max_level {
            continue;
        }
        let (left, right) = e.expand(tz);
        queue.push_back(left);
        queue.push_back(right);
    }
    out
}

// ---------------------------------------------------------------------------
// Q-condition search.
// ---------------------------------------------------------------------------

/// A concrete non-loxodromic primitive class: the ground for a No verdict.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BqWitness {
    pub slope: Slope,
    pub trace: Complex64,
    /// Distance of the trace to the real interval [-2, 2].
    pub band_distance: f64,
}

/// Summary of a certified Yes: the whole tree beyond `max_level` is
/// enclosed by `frontier_edges` escape-certified edges, and every vertex
/// inside was loxodromic, `small_trace_vertices` of them with |tr| ≤ 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BqCertificate {
    pub max_level: u32,
    pub frontier_edges: usize,
    pub small_trace_vertices: usize,
}

/// Outcome of the Q-condition search.
#[derive(Clone, Debug, PartialEq)]
pub enum BqVerdict {
    Yes {
        certificate: BqCertificate,
    },
    No {
        witness: BqWitness,
    },
    /// Depth exhausted with open edges left; `small_trace_vertices` is the
    /// census of enclosed |tr| ≤ 2 vertices seen so far (a persistently
    /// growing census suggests the second Q-condition fails, but no finite
    /// search certifies that).
    Inconclusive {
        depth: u32,
        open_edges: usize,
        small_trace_vertices: usize,
    },
}

impl BqVerdict {
    pub fn kind(&self) -> &'static str {
        match self {
            BqVerdict::Yes { .. } => "Yes",
            BqVerdict::No { .. } => "No",
            BqVerdict::Inconclusive { .. } => "Inconclusive",
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, BqVerdict::Yes { .. })
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            BqVerdict::Yes { certificate } => json!({
                "kind": "Yes",
                "certificate": {
                    "max_level": certificate.max_level,
                    "frontier_edges": certificate.frontier_edges,
                    "small_trace_vertices": certificate.small_trace_vertices,
                },
            }),
            BqVerdict::No { witness } => json!({
                "kind": "No",
                "witness": {
                    "slope": witness.slope.to_string(),
                    "trace": [witness.trace.re, witness.trace.im],
                    "band_distance": witness.band_distance,
                },
            }),
            BqVerdict::Inconclusive { depth, open_edges, small_trace_vertices } => json!({
                "kind": "Inconclusive",
                "depth": depth,
                "open_edges": open_edges,
                "small_trace_vertices": small_trace_vertices,
            }),
        }
    }
}

/// Full search result; the public verdict plus the frontier records needed
/// by the over-exploration check.
struct SearchOutcome {
    verdict: BqVerdict,
    frontier: Vec<EdgeTraces>,
}

/// The escape certificate for an edge with endpoint traces (tx, ty) and
/// child trace tz: both endpoints clear of the closed unit-trace region by
/// `margin`, the child trace strictly dominant, and the growth direction
/// criterion Re(tz/(tx·ty)) ≥ 1/2 (equivalent to |tw| ≤ |tz| under the
/// conservation law).  A non-finite tz means the product overflowed f64 —
/// growth beyond any bound — and counts as escaped.
fn escape_certified(tx: Complex64, ty: Complex64, tz: Complex64, margin: f64) -> bool {
    if !(tz.re.is_finite() && tz.im.is_finite()) {
        return true;
    }
    let (ax, ay, az) = (tx.norm(), ty.norm(), tz.norm());
    ax.min(ay) > 2.0 + margin && az > ax.max(ay) && (tz / (tx * ty)).re >= 0.5
}

fn search(rep: &Representation, max_level: u32, margin: f64) -> SearchOutcome {
    let max_level = max_level.max(2);
    let margin = if margin > 0.0 { margin } else { 1e-3 };
    let mut small_trace = 0usize;
    let mut frontier: Vec<EdgeTraces> = Vec::new();
    let mut open = 0usize;

    // Vertex admission: a near-band trace is a No witness; otherwise the
    // vertex joins the |tr| ≤ 2 census when applicable.
    let check = |slope: Slope, t: Complex64, small: &mut usize| -> Option<BqWitness> {
        let band = trace_band_distance(t);
        if band <= tol::CLASSIFY {
            return Some(BqWitness { slope, trace: t, band_distance: band });
        }
        if t.norm() <= 2.0 {
            *small += 1;
        }
        None
    };

    let seeds = EdgeTraces::seeds(rep);
    for (slope, t) in [(Slope::infinity(), seeds[0].tx), (Slope::zero(), seeds[0].ty)] {
        if let Some(witness) = check(slope, t, &mut small_trace) {
            return SearchOutcome { verdict: BqVerdict::No { witness }, frontier };
        }
    }

    let mut queue: VecDeque<EdgeTraces> = seeds.into_iter().collect();
    while let Some(e) = queue.pop_front() {
        let tz = e.child_trace();
        let (zp, zq) = e.rec.child();
        let z = Slope::new(zp, zq).expect("tree vertex is a valid slope");
        if let Some(witness) = check(z, tz, &mut small_trace) {
            return SearchOutcome { verdict: BqVerdict::No { witness }, frontier };
        }
        if escape_certified(e.tx, e.ty, tz, margin) {
            frontier.push(e);
            continue;
        }
        if e.rec.level >= max_level {
            open += 1;
            continue;
        }
        let (left, right) = e.expand(tz);
        queue.push_back(left);
        queue.push_back(right);
    }

    let verdict = if open == 0 {
        BqVerdict::Yes {
            certificate: BqCertificate {
                max_level: frontier.iter().map(|e| e.rec.level).max().unwrap_or(0),
                frontier_edges: frontier.len(),
                small_trace_vertices: small_trace,
            },
        }
    } else {
        BqVerdict::Inconclusive {
            depth: max_level,
            open_edges: open,
            small_trace_vertices: small_trace,
        }
    };
    SearchOutcome { verdict, frontier }
}

/// Options for [`bq_decide`]; `margin` must be positive (the escape
/// certificate's clearance above |tr| = 2) and `max_level` ≥ 2.
#[derive(Clone, Copy, Debug)]
pub struct BqOptions {
    pub max_level: u32,
    pub margin: f64,
}

impl Default for BqOptions {
    fn default() -> Self {
        BqOptions { max_level: 12, margin: 1e-3 }
    }
}

/// Decides the Q-conditions by breadth-first search away from the base
/// edges.  Yes only when every branch ends in an escape-certified edge by
/// `max_level` with all enclosed vertices loxodromic; No only with a
/// concrete witness; Inconclusive otherwise (never an error).
pub fn bq_decide(rep: &Representation, max_level: u32, margin: f64) -> BqVerdict {
    search(rep, max_level, margin).verdict
}

/// Empirical soundness check of the escape certificate: after a Yes
/// verdict, keep expanding `extra_levels` past every certified frontier
/// edge and record the smallest trace modulus found there.
#[derive(Clone, Copy, Debug)]
pub struct OverexploreReport {
    pub frontier_edges: usize,
    pub beyond_vertices: usize,
    /// +∞ when there was nothing to explore (non-Yes verdict or 0 levels).
    pub min_modulus_beyond: f64,
}

pub fn overexplore_check(
    rep: &Representation,
    max_level: u32,
    margin: f64,
    extra_levels: u32,
) -> (BqVerdict, OverexploreReport) {
    let outcome = search(rep, max_level, margin);
    let mut report = OverexploreReport {
        frontier_edges: outcome.frontier.len(),
        beyond_vertices: 0,
        min_modulus_beyond: f64::INFINITY,
    };
    if outcome.verdict.is_yes() {
        for start in &outcome.frontier {
            let horizon = start.rec.level + extra_levels;
            let mut stack = vec![*start];
            while let Some(e) = stack.pop() {
                if e.rec.level >= horizon {
                    continue;
                }
                let tz = e.child_trace();
                report.beyond_vertices += 1;
                report.min_modulus_beyond = report.min_modulus_beyond.min(tz.norm());
                let (left, right) = e.expand(tz);
                stack.push(left);
                stack.push(right);
            }
        }
    }
    (outcome.verdict, report)
}

// ---------------------------------------------------------------------------
// Trace-growth fit.
// ---------------------------------------------------------------------------

/// Least-squares growth estimate log|tr| ≈ m·ℓ - c over the trace tree,
/// with the intercept shifted so the line lower-bounds every sample:
/// log|tr ρ(s)| ≥ m·fibonacci(s) - c for all included slopes.
#[derive(Clone, Copy, Debug)]
pub struct GrowthFit {
    pub m: f64,
    pub c: f64,
    /// Most-violating residual of the raw least-squares line (the shift
    /// applied to the intercept).
    pub min_residual: f64,
    pub samples: usize,
    /// Slopes excluded because their trace was zero (log undefined) or
    /// overflowed.
    pub excluded: usize,
    /// All included |tr| were (numerically) constant — m carries no
    /// growth information.
    pub degenerate: bool,
}

pub fn growth_fit(rep: &Representation, max_level: u32) -> Result<GrowthFit> {
    let tree = trace_tree(rep, max_level);
    let mut pts: Vec<(f64, f64)> = Vec::with_capacity(tree.len());
    let mut excluded = 0usize;
    for (slope, t) in &tree {
        let a = t.norm();
        if a <= 0.0 || !a.is_finite() {
            excluded += 1;
            continue;
        }
        pts.push((fibonacci(*slope) as f64, a.ln()));
    }
    if pts.len() < 3 {
        return Err(Error::TooFewSamples { needed: 3, got: pts.len() });
    }
    let n = pts.len() as f64;
    let mean_l = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_v = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mean_l).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mean_l) * (p.1 - mean_v)).sum();
    let m = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = mean_v - m * mean_l;
    let min_residual = pts
        .iter()
        .map(|p| p.1 - (m * p.0 + intercept))
        .fold(f64::INFINITY, f64::min);
    let c = -(intercept + min_residual);
    let spread = pts
        .iter()
        .map(|p| (p.1 - mean_v).abs())
        .fold(0.0f64, f64::max);
    Ok(GrowthFit {
        m,
        c,
        min_residual,
        samples: pts.len(),
        excluded,
        degenerate: spread < 1e-12,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::farey::{christoffel, level};
    use crate::geometry::representation_from_traces;
    use std::str::FromStr;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rep333() -> Representation {
        representation_from_traces(c(3.0, 0.0), c(3.0, 0.0), c(3.0, 0.0)).unwrap()
    }

    #[test]
    fn tree_seeds_and_neighbor_identity() {
        let tree = trace_tree(&rep333(), 2);
        assert_eq!(tree[&Slope::from_str("1/1").unwrap()], c(3.0, 0.0));
        // The base-ward neighbor of the V⁺ base edge: xy - z = 6.
        assert_eq!(tree[&Slope::from_str("-1/1").unwrap()], c(6.0, 0.0));
        // Level ≤ 2 holds 2^3 = 8 slopes.
        assert_eq!(tree.len(), 8);
    }

    #[test]
    fn tree_matches_matrix_products() {
        // The recursion agrees with direct evaluation of the Christoffel
        // words on every slope up to level 6.
        let rep = representation_from_traces(c(2.7, 0.4), c(3.1, -0.2), c(3.4, 0.9)).unwrap();
        let tree = trace_tree(&rep, 6);
        assert_eq!(tree.len(), 128);
        for (&slope, &t) in &tree {
            let direct = rep.evaluate(&christoffel(slope)).trace();
            let scale = direct.norm().max(1.0);
            assert!(
                (t - direct).norm() <= tol::TRACE_TREE_REL * scale,
                "slope {slope}: tree {t} vs direct {direct}"
            );
        }
    }

    #[test]
    fn edges_satisfy_conservation_law() {
        let rep = representation_from_traces(c(3.0, 0.1), c(2.9, 0.0), c(3.3, -0.5)).unwrap();
        let edges = trace_edges(&rep, 6);
        // Levels 0..=6 hold 2 + 4 + ... + 2^7 = 2^8 - 2 edges.
        assert_eq!(edges.len(), 254);
        for te in &edges {
            let lhs = te.tw + te.tz;
            let rhs = te.tx * te.ty;
            assert!(
                (lhs - rhs).norm() <= 1e-6 * rhs.norm().max(1.0),
                "conservation law fails on {}",
                te.edge
            );
            assert!(te.edge.co_directed);
        }
    }

    #[test]
    fn bq_verdicts() {
        // (3,3,3) certifies Yes within level 8.
        match bq_decide(&rep333(), 12, 1e-3) {
            BqVerdict::Yes { certificate } => {
                assert!(certificate.max_level <= 8, "frontier at {}", certificate.max_level);
                assert!(certificate.frontier_edges > 0);
                assert_eq!(certificate.small_trace_vertices, 0);
            }
            other => panic!("expected Yes, got {other:?}"),
        }

        // A parabolic generator is a witness at slope 1/0.
        let rep = representation_from_traces(c(2.0, 0.0), c(4.0, 0.0), c(5.0, 0.0)).unwrap();
        match bq_decide(&rep, 12, 1e-3) {
            BqVerdict::No { witness } => {
                assert_eq!(witness.slope, Slope::infinity());
                assert!(witness.band_distance <= tol::CLASSIFY);
            }
            other => panic!("expected No, got {other:?}"),
        }

        // An elliptic generator likewise.
        let rep = representation_from_traces(c(0.0, 0.0), c(3.0, 0.0), c(3.0, 0.0)).unwrap();
        assert!(matches!(bq_decide(&rep, 12, 1e-3), BqVerdict::No { .. }));

        // An elliptic product is witnessed at slope 1/1.
        let rep = representation_from_traces(c(4.0, 0.0), c(4.0, 0.0), c(1.0, 0.0)).unwrap();
        match bq_decide(&rep, 12, 1e-3) {
            BqVerdict::No { witness } => assert_eq!(witness.slope, Slope::from_str("1/1").unwrap()),
            other => panic!("expected No, got {other:?}"),
        }
    }

    #[test]
    fn bq_monotone_in_depth() {
        let v8 = bq_decide(&rep333(), 8, 1e-3);
        let v12 = bq_decide(&rep333(), 12, 1e-3);
        assert_eq!(v8, v12);
    }

    #[test]
    fn overexploration_finds_growth_only() {
        let (verdict, report) = overexplore_check(&rep333(), 12, 1e-3, 4);
        assert!(verdict.is_yes());
        assert!(report.beyond_vertices > 0);
        assert!(
            report.min_modulus_beyond > 2.0,
            "trace modulus {} found beyond a certified edge",
            report.min_modulus_beyond
        );
    }

    #[test]
    fn growth_fit_bounds_from_below() {
        let rep = rep333();
        let fit = growth_fit(&rep, 10).unwrap();
        assert!(fit.m > 0.0);
        assert!(!fit.degenerate);
        assert_eq!(fit.excluded, 0);
        let tree = trace_tree(&rep, 10);
        assert_eq!(fit.samples, tree.len());
        for (&slope, &t) in &tree {
            let bound = fit.m * fibonacci(slope) as f64 - fit.c;
            assert!(
                t.norm().ln() >= bound - 1e-9,
                "slope {slope} (level {}) dips below the fitted floor",
                level(slope)
            );
        }
    }

    #[test]
    fn growth_fit_degenerate_cases() {
        // (2,2,2): every trace is exactly 2, so the fit is flat.
        let rep = representation_from_traces(c(2.0, 0.0), c(2.0, 0.0), c(2.0, 0.0)).unwrap();
        let fit = growth_fit(&rep, 8).unwrap();
        assert!(fit.m.abs() < 1e-12);
        assert!(fit.degenerate);

        // A zero trace inside the tree is excluded and flagged:
        // (0, 3, 3) puts tr = 0 at the generator slope.
        let rep = representation_from_traces(c(0.0, 0.0), c(3.0, 0.0), c(3.0, 0.0)).unwrap();
        let fit = growth_fit(&rep, 6).unwrap();
        assert!(fit.excluded >= 1);
    }

    #[test]
    fn verdict_json_shapes() {
        let yes = bq_decide(&rep333(), 12, 1e-3).to_json();
        assert_eq!(yes["kind"], "Yes");
        assert!(yes["certificate"]["max_level"].as_u64().unwrap() <= 8);

        let rep = representation_from_traces(c(2.0, 0.0), c(3.0, 0.0), c(3.0, 0.0)).unwrap();
        let no = bq_decide(&rep, 12, 1e-3).to_json();
        assert_eq!(no["kind"], "No");
        assert_eq!(no["witness"]["slope"], "1/0");
    }
}
