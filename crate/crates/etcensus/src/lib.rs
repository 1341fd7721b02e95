//! Edge-transitive triangulated surfaces from cycle double covers of
//! edge-transitive cubic graphs.
//!
//! The pipeline: take an edge-transitive cubic graph, find subgroups of its
//! automorphism group with prescribed order and orbit structure, sweep paths
//! around under automorphisms to obtain cycle double covers, and reconstruct
//! and classify the simplicial surfaces those covers encode.

pub mod cdc;
pub mod cli;
pub mod construct;
pub mod graph;
pub mod perm;
pub mod surface;
