//! Bounded-intersection scan: feet of palindromic axes on the three
//! half-turn lines.
//!
//! The half-turns p, q, r of the Coxeter extension satisfy a = qr, b = rp,
//! c = pq for the generator triple (a, b, c) with abc = 1.  A primitive
//! class palindromic in one of the two-letter bases (a,b), (b,c), (c,a)
//! has its axis crossing the corresponding junction line — Fix(r), Fix(p),
//! Fix(q) respectively — at a right angle, so each basis contributes a set
//! of feet on one line.  The scan collects those feet per family up to a
//! level cap and reports the diameter of each set: bounded intersection
//! predicts the diameters stabilize as the cap grows.
//!
//! Orthogonality is not merely sampled, it is enforced: a palindromic axis
//! that fails to cross its line at a right angle within tolerance is a
//! hard error, since no irreducible representation admits one.

use crate::farey::{level_vertices, palindrome_rep, tricolor, Color, Slope};
use crate::freegroup::Word;
use crate::geometry::{
    axis, classify, coxeter_extension, hyperbolic_distance, line_meet, mutual_width, Class,
    H3Point, OrientedGeodesic, Representation,
};
use crate::{tol, Error, Result};
use serde_json::json;
use std::f64::consts::FRAC_PI_2;

/// Slope of the same class rewritten in the (b, c) basis, where c = (ab)⁻¹:
/// abelianizations transform by [a] = (0,·)… concretely (p, q) ↦ (q-p, -p).
pub fn slope_in_bc(s: Slope) -> Slope {
    let (p, q) = (s.p(), s.q());
    Slope::new(q - p, -p).expect("basis change preserves primitivity")
}

/// Slope of the same class rewritten in the (c, a) basis:
/// (p, q) ↦ (-q, p-q).
pub fn slope_in_ca(s: Slope) -> Slope {
    let (p, q) = (s.p(), s.q());
    Slope::new(-q, p - q).expect("basis change preserves primitivity")
}

/// Foot statistics of one palindrome family on its junction line.
#[derive(Clone, Copy, Debug)]
pub struct BiFamily {
    /// Largest pairwise distance between feet; 0 with fewer than two feet.
    pub diam: f64,
    /// Feet collected (loxodromic palindromic classes of level ≤ cap).
    pub feet: usize,
    /// Palindromic classes skipped because their image is not loxodromic.
    pub skipped: usize,
    /// Worst distance between the two lines at their meeting point.
    pub max_meet_dist: f64,
    /// Worst deviation of the crossing angle from π/2.
    pub max_angle_residual: f64,
}

/// Result of [`bi_scan`]: one family per junction line.  `r` collects
/// (a,b)-palindromes on Fix(r), `p` collects (b,c)-palindromes on Fix(p),
/// `q` collects (c,a)-palindromes on Fix(q).
#[derive(Clone, Copy, Debug)]
pub struct BiReport {
    pub p: BiFamily,
    pub q: BiFamily,
    pub r: BiFamily,
}

impl BiFamily {
    fn to_json(&self) -> serde_json::Value {
        json!({
            "diam": self.diam,
            "feet": self.feet,
            "skipped": self.skipped,
            "max_meet_dist": self.max_meet_dist,
            "max_angle_residual": self.max_angle_residual,
        })
    }
}

impl BiReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "P": self.p.to_json(),
            "Q": self.q.to_json(),
            "R": self.r.to_json(),
        })
    }
}

fn scan_family(
    rep: &Representation,
    line: &OrientedGeodesic,
    max_level: u32,
    to_word: impl Fn(Slope) -> Word,
) -> Result<BiFamily> {
    let mut feet: Vec<H3Point> = Vec::new();
    let mut skipped = 0usize;
    let mut max_meet_dist = 0.0f64;
    let mut max_angle_residual = 0.0f64;
    for (slope, _) in level_vertices(max_level) {
        if tricolor(slope) == Color::Gray {
            continue;
        }
        let img = rep.evaluate(&to_word(slope));
        if classify(&img) != Class::Loxodromic {
            skipped += 1;
            continue;
        }
        let ax = axis(&img)?;
        let angle = mutual_width(line, &ax).im.abs();
        let angle_residual = (angle - FRAC_PI_2).abs();
        let meet = line_meet(line, &ax).map_err(|_| Error::Inconsistent {
            what: "palindromic axis misses its junction line",
            residual: f64::INFINITY,
        })?;
        if meet.dist > tol::MEET_DIST || angle_residual > tol::MEET_ANGLE {
            return Err(Error::Inconsistent {
                what: "palindromic axis not orthogonal to its junction line",
                residual: meet.dist.max(angle_residual),
            });
        }
        max_meet_dist = max_meet_dist.max(meet.dist);
        max_angle_residual = max_angle_residual.max(angle_residual);
        feet.push(meet.foot1);
    }
    let mut diam = 0.0f64;
    for i in 0..feet.len() {
        for j in i + 1..feet.len() {
            diam = diam.max(hyperbolic_distance(&feet[i], &feet[j]));
        }
    }
    Ok(BiFamily {
        diam,
        feet: feet.len(),
        skipped,
        max_meet_dist,
        max_angle_residual,
    })
}

/// Collects the feet of all palindromic axes of level ≤ `max_level` on
/// their junction lines and reports the diameter of each family.
///
/// Requires an irreducible representation.
pub fn bi_scan(rep: &Representation, max_level: u32) -> Result<BiReport> {
    if rep.is_reducible() {
        return Err(Error::Reducible);
    }
    let ext = coxeter_extension(&rep.gen_a(), &rep.gen_b())?;
    // Junction lines in the notation a = qr, b = rp, c = pq: the extension
    // returns its half-turns relative to (x, y) = (a, b) as x = -p̃q̃,
    // y = -q̃r̃, which identifies Fix(r) with its q-lift, Fix(q) with its
    // p-lift, and Fix(p) with its r-lift.
    let line_r = OrientedGeodesic::from_lift(ext.q)?;
    let line_q = OrientedGeodesic::from_lift(ext.p)?;
    let line_p = OrientedGeodesic::from_lift(ext.r)?;

    let word_b: Word = "b".parse().expect("valid word");
    let word_c: Word = "BA".parse().expect("valid word");
    let word_a: Word = "a".parse().expect("valid word");

    let r = scan_family(rep, &line_r, max_level, palindrome_rep)?;
    let p = scan_family(rep, &line_p, max_level, |s| {
        palindrome_rep(s).substitute(&word_b, &word_c)
    })?;
    let q = scan_family(rep, &line_q, max_level, |s| {
        palindrome_rep(s).substitute(&word_c, &word_a)
    })?;
    Ok(BiReport { p, q, r })
}
