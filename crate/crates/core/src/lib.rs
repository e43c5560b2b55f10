//! Run transform of generating functions, with the lattice-path and
//! s-partition families it counts.

pub mod algebra;
pub mod series;
pub mod transform;
pub mod paths;
pub mod spartitions;
pub mod harness;
pub mod cli;
