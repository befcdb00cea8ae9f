//! Hyperbolic 3-space: SL(2, ℂ) matrices, the upper half-space model,
//! oriented geodesics with complex widths, representations of the rank-2
//! free group, and the right-angled hexagon attached to a generator pair.

pub mod geodesic;
pub mod hexagon;
pub mod mat2;
pub mod point;
pub mod rep;

pub use geodesic::{
    axis, classify, classify_with_tol, common_perpendicular, complex_length,
    half_turn_from_endpoints, line_meet, mobius_to_vertical, mutual_width, parallel_angle,
    trace_band_distance, width_along, wrap_angle, Class, ComplexLength, IdealPoint, LineMeet,
    OrientedGeodesic,
};
pub use hexagon::{
    angle_theta, coxeter_extension, hexagon, theta_via_axis_traces, theta_via_cosine_law,
    CoxeterExtension, Hexagon,
};
pub use mat2::Mat2C;
pub use point::{apply_isometry, hyperbolic_distance, H3Point};
pub use rep::{representation_from_json, representation_from_traces, Representation};
