//! Combinatorics and exact algebra for open positroid varieties: Le-diagrams,
//! their plabic graphs and quivers, Deodhar parametrizations, the twist and
//! the cluster structure given by twisted face minors.

pub mod exact_algebra;
pub mod le_diagram;
pub mod shapes;
pub mod weyl_group;
pub mod quiver;
pub mod parametrization;
pub mod twist;
pub mod cluster;
pub mod verify;
pub mod cli;
