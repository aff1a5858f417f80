//! Serialization, generators, rendering and benchmarking around the core
//! model.

pub mod bench;
pub mod generate;
pub mod io;
pub mod svg;
