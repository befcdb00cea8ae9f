//! Representations of the rank-2 free group into SL(2, ℂ).
//!
//! A representation is stored as the generator pair (A, B) with dets
//! normalized to 1.  The trace triple (x, y, z) = (tr A, tr B, tr AB)
//! determines an irreducible representation up to conjugacy; the normal
//! form used by [`representation_from_traces`] realizes any triple with
//!
//!   A = [[x, -1], [1, 0]],   B = [[0, ζ], [-ζ⁻¹, y]],  ζ + ζ⁻¹ = z,
//!
//! which satisfies tr A = x, tr B = y, tr AB = z.  The commutator trace
//! κ = tr [A, B] = x² + y² + z² - xyz - 2 is the conjugacy invariant that
//! detects reducibility (κ = 2).

use super::mat2::Mat2C;
use crate::freegroup::Word;
use crate::{tol, Error, Result};
use num_complex::Complex64;
use serde::de::Error as _;
use serde::Deserialize;

/// A representation of the free group ⟨a, b⟩ into SL(2, ℂ), with the
/// generator images, their inverses, and the commutator trace cached.
#[derive(Clone, Debug)]
pub struct Representation {
    a: Mat2C,
    b: Mat2C,
    a_inv: Mat2C,
    b_inv: Mat2C,
    kappa: Complex64,
}

impl Representation {
    /// Builds a representation from generator images, normalizing each to
    /// det 1 (rejecting singular input).
    pub fn new(a: Mat2C, b: Mat2C) -> Result<Self> {
        let a = a
            .normalized_det1()
            .ok_or_else(|| Error::BadRepInput("matrix for a is singular".into()))?;
        let b = b
            .normalized_det1()
            .ok_or_else(|| Error::BadRepInput("matrix for b is singular".into()))?;
        let a_inv = a.inverse_det1();
        let b_inv = b.inverse_det1();
        let kappa = (a * b * a_inv * b_inv).trace();
        Ok(Representation { a, b, a_inv, b_inv, kappa })
    }

    pub fn gen_a(&self) -> Mat2C {
        self.a
    }

    pub fn gen_b(&self) -> Mat2C {
        self.b
    }

    /// Trace of the commutator [A, B]; equals x² + y² + z² - xyz - 2.
    pub fn kappa(&self) -> Complex64 {
        self.kappa
    }

    /// Trace triple (tr A, tr B, tr AB).
    pub fn trace_triple(&self) -> (Complex64, Complex64, Complex64) {
        (self.a.trace(), self.b.trace(), (self.a * self.b).trace())
    }

    /// The representation is reducible exactly when κ = 2 (both generators
    /// share a fixed point, all commutator traces collapse).
    pub fn is_reducible(&self) -> bool {
        (self.kappa - Complex64::new(2.0, 0.0)).norm() <= tol::REDUCIBLE
    }

    /// Image of a word.  Long products are renormalized to det 1
    /// periodically, as long as that correction is numerically meaningful
    /// (see [`renormalized_if_meaningful`]).
    pub fn evaluate(&self, w: &Word) -> Mat2C {
        let mut m = Mat2C::identity();
        for (k, &letter) in w.letters().iter().enumerate() {
            let factor = match letter {
                1 => &self.a,
                -1 => &self.a_inv,
                2 => &self.b,
                -2 => &self.b_inv,
                _ => unreachable!("words hold only ±1, ±2"),
            };
            m = m * *factor;
            if (k + 1) % tol::RENORM_EVERY == 0 {
                m = renormalized_if_meaningful(m);
            }
        }
        renormalized_if_meaningful(m)
    }

    /// The re-marked representation (a, b) ↦ (ρ(u), ρ(v)) for a new basis
    /// pair of words.
    pub fn remark(&self, u: &Word, v: &Word) -> Result<Representation> {
        Representation::new(self.evaluate(u), self.evaluate(v))
    }
}

/// Rescales to det 1 when that is meaningful.  Computing det = ad - bc for
/// a matrix with entries of magnitude s carries an absolute error of order
/// s²·ε from the cancellation of the two products, so once entries pass
/// ~10³ the computed det is noisier than the true drift it is meant to
/// correct, and dividing by it would inject that noise into every entry.
/// Larger products are returned unchanged: their true det still drifts
/// only by rounding, and every downstream use (traces, orbit points,
/// axes) reads them relatively or through det-1 formulas that never
/// measure the det.
fn renormalized_if_meaningful(m: Mat2C) -> Mat2C {
    let sup = m.sup_norm();
    if !(sup.is_finite() && sup <= 1e3) {
        return m;
    }
    if (m.det() - Complex64::new(1.0, 0.0)).norm() > 0.5 {
        return m;
    }
    m.normalized_det1().unwrap_or(m)
}

/// Builds the normal-form representation with tr A = x, tr B = y,
/// tr AB = z.  Any complex triple is realizable.
pub fn representation_from_traces(
    x: Complex64,
    y: Complex64,
    z: Complex64,
) -> Result<Representation> {
    // ζ + ζ⁻¹ = z; of the two roots take the one with |ζ| ≥ 1 (ties broken
    // toward nonnegative imaginary part) for numerical stability.
    let disc = (z * z - Complex64::new(4.0, 0.0)).sqrt();
    let z1 = (z + disc) / 2.0;
    let z2 = (z - disc) / 2.0;
    let zeta = if (z1.norm() - z2.norm()).abs() > 1e-14 {
        if z1.norm() > z2.norm() {
            z1
        } else {
            z2
        }
    } else if z1.im >= z2.im {
        z1
    } else {
        z2
    };
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let a = Mat2C::new(x, -one, one, zero);
    let b = Mat2C::new(zero, zeta, -zeta.inv(), y);
    Representation::new(a, b)
}

// ---------------------------------------------------------------------------
// JSON input format.
// ---------------------------------------------------------------------------

/// Parses a representation from its JSON description.  Two shapes are
/// accepted, exactly one of which must be present:
///
/// ```json
/// {"matrices": {"a": [[re,im],[re,im],[re,im],[re,im]], "b": [...]}}
/// {"traces": {"x": [re,im], "y": [re,im], "z": [re,im]}}
/// ```
///
/// Matrix entries are row-major [a, b; c, d]; real entries may be given as
/// plain numbers instead of [re, im] pairs.
pub fn representation_from_json(text: &str) -> Result<Representation> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct RepInput {
        matrices: Option<MatricesInput>,
        traces: Option<TracesInput>,
    }
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct MatricesInput {
        a: [CNum; 4],
        b: [CNum; 4],
    }
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct TracesInput {
        x: CNum,
        y: CNum,
        z: CNum,
    }

    let input: RepInput =
        serde_json::from_str(text).map_err(|e| Error::BadRepInput(e.to_string()))?;
    match (input.matrices, input.traces) {
        (Some(m), None) => {
            let a = Mat2C::new(m.a[0].0, m.a[1].0, m.a[2].0, m.a[3].0);
            let b = Mat2C::new(m.b[0].0, m.b[1].0, m.b[2].0, m.b[3].0);
            Representation::new(a, b)
        }
        (None, Some(t)) => representation_from_traces(t.x.0, t.y.0, t.z.0),
        (Some(_), Some(_)) => Err(Error::BadRepInput(
            "give either \"matrices\" or \"traces\", not both".into(),
        )),
        (None, None) => Err(Error::BadRepInput(
            "expected a \"matrices\" or \"traces\" field".into(),
        )),
    }
}

/// A complex number deserialized from either `x` or `[re, im]`.
struct CNum(Complex64);

impl<'de> Deserialize<'de> for CNum {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Real(f64),
            Pair([f64; 2]),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Real(x) => {
                if !x.is_finite() {
                    return Err(D::Error::custom("non-finite number"));
                }
                Ok(CNum(Complex64::new(x, 0.0)))
            }
            Raw::Pair([re, im]) => {
                if !(re.is_finite() && im.is_finite()) {
                    return Err(D::Error::custom("non-finite number"));
                }
                Ok(CNum(Complex64::new(re, im)))
            }
        }
    }
}
