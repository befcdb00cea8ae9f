//! Slope-indexed analysis of a representation: the trace tree over the
//! Farey graph, the Q-condition search with escape certificates, axis-angle
//! and separation scans, the orbit-map margin estimate, and the
//! bounded-intersection scan of palindromic feet.

pub mod bi;
pub mod ps;
pub mod scans;
pub mod tree;

pub use bi::{bi_scan, slope_in_bc, slope_in_ca, BiFamily, BiReport};
pub use ps::{ps_margin, PsEstimate};
pub use scans::{separation_certificate, theta_scan, ThetaScan, ThetaScanRow};
pub use tree::{
    bq_decide, growth_fit, overexplore_check, trace_edges, trace_tree, BqCertificate, BqOptions,
    BqVerdict, BqWitness, GrowthFit, OverexploreReport, TraceEdge,
};
