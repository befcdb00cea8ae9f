//! Complex 2×2 matrices, the linear substrate of all isometry computations.

use num_complex::Complex64;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A 2×2 complex matrix [[a, b], [c, d]].  Group elements are kept at
/// det = 1; the type itself does not enforce this so that intermediate
/// expressions (brackets, sums) remain representable.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Mat2C {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl Mat2C {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Mat2C { a, b, c, d }
    }

    /// Matrix from real entries.
    pub fn from_real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2C {
            a: Complex64::new(a, 0.0),
            b: Complex64::new(b, 0.0),
            c: Complex64::new(c, 0.0),
            d: Complex64::new(d, 0.0),
        }
    }

    pub fn identity() -> Self {
        Mat2C::from_real(1.0, 0.0, 0.0, 1.0)
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    /// Inverse of a det-1 matrix (the adjugate).  Callers must hold the
    /// det = 1 invariant; this is the hot path for word evaluation.
    pub fn inverse_det1(&self) -> Self {
        Mat2C { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// Entry-wise supremum norm; used for relative degeneracy guards.
    pub fn sup_norm(&self) -> f64 {
        self.a.norm().max(self.b.norm()).max(self.c.norm()).max(self.d.norm())
    }

    /// Scales all entries.
    pub fn scale(&self, s: Complex64) -> Self {
        Mat2C { a: self.a * s, b: self.b * s, c: self.c * s, d: self.d * s }
    }

    /// Rescales to det = 1 using the principal square root of the current
    /// determinant.  Returns `None` when the matrix is (numerically)
    /// singular.
    pub fn normalized_det1(&self) -> Option<Self> {
        let det = self.det();
        if det.norm() < 1e-24 {
            return None;
        }
        Some(self.scale(det.sqrt().inv()))
    }

    /// Entry-wise distance, for approximate comparisons in tests and
    /// identity detection.
    pub fn dist(&self, other: &Self) -> f64 {
        (self.a - other.a)
            .norm()
            .max((self.b - other.b).norm())
            .max((self.c - other.c).norm())
            .max((self.d - other.d).norm())
    }
}

impl Mul for Mat2C {
    type Output = Mat2C;
    fn mul(self, rhs: Mat2C) -> Mat2C {
        Mat2C {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }
}

impl Add for Mat2C {
    type Output = Mat2C;
    fn add(self, rhs: Mat2C) -> Mat2C {
        Mat2C { a: self.a + rhs.a, b: self.b + rhs.b, c: self.c + rhs.c, d: self.d + rhs.d }
    }
}

impl Sub for Mat2C {
    type Output = Mat2C;
    fn sub(self, rhs: Mat2C) -> Mat2C {
        Mat2C { a: self.a - rhs.a, b: self.b - rhs.b, c: self.c - rhs.c, d: self.d - rhs.d }
    }
}

impl Neg for Mat2C {
    type Output = Mat2C;
    fn neg(self) -> Mat2C {
        Mat2C { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }
}

impl fmt::Display for Mat2C {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}
