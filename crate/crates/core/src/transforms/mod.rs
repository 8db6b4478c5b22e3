//! Loop erasure, joining and curve generators.

mod generate;
mod join;
mod loop_erase;

pub use generate::{generate, GeneratorKind, GeneratorSpec, RandomPathSpec};
pub use join::{join, Joined};
pub use loop_erase::{loop_erase, loop_erase_capped, LoopDecomposition, Removal, DEFAULT_ITERATION_CAP, DEFAULT_SNAP_TOL};
