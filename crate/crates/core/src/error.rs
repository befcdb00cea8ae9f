//! Crate error type.  Numerical degeneracies are reported as typed errors so
//! callers (in particular the CLI) can distinguish bad input from bad math.

use std::fmt;

/// Everything that can go wrong across the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A word operation needed a nonempty (cyclically reduced) word.
    EmptyWord(&'static str),
    /// A string could not be parsed as a word over {a, A, b, B}.
    BadWordLetter(char),
    /// A slope was syntactically or arithmetically invalid (e.g. 0/0).
    BadSlope(String),
    /// A continued-fraction expansion violated the expected shape.
    BadContinuedFraction(String),
    /// A pair of slopes is not connected by a Farey edge (|ps - rq| ≠ 1).
    NotAFareyEdge(String),
    /// Two ideal endpoints coincide; no geodesic is determined.
    CoincidentEndpoints,
    /// Two geodesics are identical or share an ideal endpoint; they have no
    /// common perpendicular and no well-defined nearest points.
    NoCommonPerpendicular(&'static str),
    /// The requested operation needs a loxodromic (or at least axial) element.
    NotLoxodromic(&'static str),
    /// The requested operation is undefined for parabolic or identity input.
    NoAxis(&'static str),
    /// Two matrices (nearly) commute; their commutator bracket is degenerate
    /// and no common perpendicular can be extracted.  Signals reducibility.
    DegenerateBracket,
    /// The representation is reducible (κ = 2) where irreducibility is needed.
    Reducible,
    /// A geodesic does not meet the reference line orthogonally where the
    /// width computation requires it.
    NotOrthogonal { residual: f64 },
    /// Two internally computed routes to the same quantity disagree beyond
    /// tolerance; the configuration is numerically degenerate.
    Inconsistent { what: &'static str, residual: f64 },
    /// A fit or statistic was requested on too small a sample.
    TooFewSamples { needed: usize, got: usize },
    /// Representation JSON was malformed.
    BadRepInput(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyWord(op) => write!(f, "{op}: empty word not allowed"),
            Error::BadWordLetter(c) => write!(f, "invalid word letter {c:?} (expected a, A, b, B)"),
            Error::BadSlope(s) => write!(f, "invalid slope: {s}"),
            Error::BadContinuedFraction(s) => write!(f, "invalid continued fraction: {s}"),
            Error::NotAFareyEdge(s) => write!(f, "not a Farey edge: {s}"),
            Error::CoincidentEndpoints => write!(f, "ideal endpoints coincide"),
            Error::NoCommonPerpendicular(why) => {
                write!(f, "geodesics have no common perpendicular ({why})")
            }
            Error::NotLoxodromic(op) => write!(f, "{op}: element is not loxodromic"),
            Error::NoAxis(op) => write!(f, "{op}: element has no axis (parabolic or identity)"),
            Error::DegenerateBracket => {
                write!(f, "commutator bracket is degenerate (elements share a fixed point)")
            }
            Error::Reducible => write!(f, "representation is reducible (κ = 2)"),
            Error::NotOrthogonal { residual } => {
                write!(f, "geodesic does not meet the reference line orthogonally (residual {residual:.3e})")
            }
            Error::Inconsistent { what, residual } => {
                write!(f, "inconsistent computation of {what} (residual {residual:.3e})")
            }
            Error::TooFewSamples { needed, got } => {
                write!(f, "too few samples: needed {needed}, got {got}")
            }
            Error::BadRepInput(s) => write!(f, "bad representation input: {s}"),
        }
    }
}

impl std::error::Error for Error {}
