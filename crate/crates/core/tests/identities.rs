//! Cross-module identities: the trace calculus, the Fricke commutator
//! invariant, and the half-turn amplitude, each checked at matrix level
//! against the closed-form expressions used by the analysis layer.

use farey_bq_core::analysis::trace_tree;
use farey_bq_core::farey::{christoffel, level_edges, Slope};
use farey_bq_core::geometry::{hexagon, representation_from_traces, Mat2C};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A random SL(2, ℂ) matrix with entries of modest size.
fn random_sl2(rng: &mut ChaCha8Rng) -> Mat2C {
    loop {
        let mut e = [c(0.0, 0.0); 4];
        for v in &mut e {
            *v = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        }
        let m = Mat2C::new(e[0], e[1], e[2], e[3]);
        if m.det().norm() > 0.1 {
            return m.normalized_det1().unwrap();
        }
    }
}

fn fricke_kappa(x: Complex64, y: Complex64, z: Complex64) -> Complex64 {
    x * x + y * y + z * z - x * y * z - 2.0
}

#[test]
fn trace_sandwich_identity() {
    // tr(AB) + tr(AB⁻¹) = tr A tr B for any A, B in SL(2, ℂ).
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let a = random_sl2(&mut rng);
        let b = random_sl2(&mut rng);
        let lhs = (a * b).trace() + (a * b.inverse_det1()).trace();
        let rhs = a.trace() * b.trace();
        assert!((lhs - rhs).norm() < 1e-11 * (1.0 + rhs.norm()));
    }
}

#[test]
fn commutator_trace_matches_fricke_polynomial() {
    // tr [A, B] = x² + y² + z² - xyz - 2 on the character variety (the
    // Fricke identity), checked by building matrices from random triples.
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut done = 0;
    while done < 1000 {
        let x = c(rng.gen_range(-4.0..4.0), rng.gen_range(-2.0..2.0));
        let y = c(rng.gen_range(-4.0..4.0), rng.gen_range(-2.0..2.0));
        let z = c(rng.gen_range(-6.0..6.0), rng.gen_range(-3.0..3.0));
        let Ok(rep) = representation_from_traces(x, y, z) else { continue };
        let (a, b) = (rep.gen_a(), rep.gen_b());
        let comm = a * b * a.inverse_det1() * b.inverse_det1();
        let expect = fricke_kappa(x, y, z);
        assert!((comm.trace() - expect).norm() < 1e-9 * (1.0 + expect.norm()));
        assert!((rep.kappa() - fricke_kappa(x, y, z)).norm() < 1e-12 * (1.0 + x.norm().powi(4)));
        done += 1;
    }
}

#[test]
fn kappa_is_constant_across_tree_generating_pairs() {
    // Every co-directed edge names a generating pair of the image group;
    // Nielsen equivalence keeps the commutator trace, hence κ, unchanged.
    let rep = representation_from_traces(c(2.1, 0.9), c(2.3, -0.7), c(2.0, 1.1)).unwrap();
    let expect = rep.kappa();
    for lv in 0..=3u32 {
        for e in level_edges(lv) {
            let gx = rep.evaluate(&christoffel(e.from));
            let gy = rep.evaluate(&christoffel(e.to));
            let comm = gx * gy * gx.inverse_det1() * gy.inverse_det1();
            let noise = 1e-10 * (gx.sup_norm() * gy.sup_norm()).powi(2).max(1.0);
            assert!(
                (comm.trace() - expect).norm() < noise.max(1e-9),
                "edge {e}: tr comm {} vs {expect}",
                comm.trace()
            );
        }
    }
}

#[test]
fn amplitude_modulus_survives_nielsen_moves() {
    // |am| depends only on κ (4 am² = 2 - tr [X, Y]), so it is the same for
    // every Nielsen-equivalent pair; the hexagon recomputes it from the
    // half-turn triple of the moved pair.
    let rep = representation_from_traces(c(2.2, 0.8), c(2.4, -0.5), c(2.1, 0.9)).unwrap();
    let (a, b) = (rep.gen_a(), rep.gen_b());
    let base = hexagon(&a, &b).unwrap().amplitude.norm();
    let moved: [(Mat2C, Mat2C); 4] = [
        (b, a),
        (a.inverse_det1(), b),
        (a, a * b),
        (b * a, a.inverse_det1()),
    ];
    for (i, (u, v)) in moved.iter().enumerate() {
        let hex = hexagon(u, v).unwrap();
        assert!((hex.amplitude.norm() - base).abs() < 1e-9, "pair {i}");
        // And the commutator identity holds for the moved pair as well.
        let comm = *u * *v * u.inverse_det1() * v.inverse_det1();
        assert!(hex.kappa_residual(comm.trace()) < 1e-9, "pair {i}");
    }
}

#[test]
fn tree_traces_match_products_for_complex_rep() {
    let rep = representation_from_traces(c(2.0, 1.1), c(2.2, -0.9), c(2.4, 0.7)).unwrap();
    let tree = trace_tree(&rep, 5);
    assert_eq!(tree.len(), 64);
    for (slope, tr) in &tree {
        let direct = rep.evaluate(&christoffel(*slope)).trace();
        assert!(
            (*tr - direct).norm() <= 1e-8 * (1.0 + direct.norm()),
            "slope {slope}: {tr} vs {direct}"
        );
    }
}

#[test]
fn escape_half_plane_matches_modulus_comparison() {
    // With tw + tz = tx·ty, the two neighbor traces sit symmetrically about
    // tx·ty/2, so |tz| ≥ |tw| exactly when Re(tz/(tx·ty)) ≥ 1/2.
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut checked = 0;
    while checked < 1000 {
        let tx = c(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let ty = c(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let tw = c(rng.gen_range(-9.0..9.0), rng.gen_range(-9.0..9.0));
        let tz = tx * ty - tw;
        if tx.norm() < 0.1 || ty.norm() < 0.1 {
            continue;
        }
        let gap = tz.norm() - tw.norm();
        let margin = (tz / (tx * ty)).re - 0.5;
        // Skip razor-thin cases where rounding could flip either side.
        if gap.abs() < 1e-9 || margin.abs() < 1e-9 {
            continue;
        }
        assert_eq!(gap >= 0.0, margin >= 0.0, "tx {tx} ty {ty} tw {tw}");
        checked += 1;
    }
}

#[test]
fn christoffel_pairs_generate_the_tree_triple() {
    // For each edge the mediant slope's trace closes the triple, matching
    // the conserved product relation tw + tz = tx·ty at matrix level.
    let rep = representation_from_traces(c(3.0, 0.2), c(3.1, -0.3), c(3.2, 0.4)).unwrap();
    for lv in 0..=3u32 {
        for e in level_edges(lv) {
            let (w, z) = e.children();
            let tx = rep.evaluate(&christoffel(e.from)).trace();
            let ty = rep.evaluate(&christoffel(e.to)).trace();
            let tw = rep.evaluate(&christoffel(w)).trace();
            let tz = rep.evaluate(&christoffel(z)).trace();
            let scale = 1.0 + tx.norm() * ty.norm();
            assert!(((tw + tz) - tx * ty).norm() < 1e-9 * scale, "edge {e}");
        }
    }
    // The mediant of the positive base edge is slope 1/1 with word "ab".
    let base = level_edges(0)
        .into_iter()
        .find(|e| e.from == Slope::infinity())
        .unwrap();
    assert_eq!(base.children().1, Slope::new(1, 1).unwrap());
}
