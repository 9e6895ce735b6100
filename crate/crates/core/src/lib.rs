//! Integral and mod-p cohomology of symmetric groups with coefficients in
//! Specht modules, in degrees 0, 1 and 2.

pub mod golden;
pub mod graph;
pub mod linalg;
pub mod partition;
pub mod perm;
pub mod presentation;
pub mod report;
pub mod specht;
pub mod store;
pub mod sweep;
pub mod theory;
pub mod zassenhaus;
