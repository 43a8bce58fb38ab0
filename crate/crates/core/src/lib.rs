//! Distance-transitive Cayley graphs over generalized quaternion groups.

pub mod census;
pub mod cli;
pub mod field;
pub mod geometry;
pub mod graph;
pub mod graph6;
pub mod group;
pub mod symmetry;
pub mod families;
pub mod voltage;
