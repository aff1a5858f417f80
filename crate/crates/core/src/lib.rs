//! Exact reductions among minimum-weight subgraph selection, site-based
//! cluster minimization and unit disk graph independent set, with exact
//! solvers and brute-force cross-checks.
//!
//! All correctness paths use integer coordinates and exact rationals; no
//! floating-point comparison decides an answer.

pub mod error;
pub mod model;
mod par;
pub mod rational;
pub mod reductions;
pub mod solvers;
pub mod toolkit;
pub mod verify;

pub use error::{Error, Result};
pub use model::{
    unit_disk_graph, CliqueInstance, ClusterMinInstance, Graph, Instance, PointSet, ProblemKind, RadialPotential,
    Solution, UdgInstance, WeightedEdgeInstance,
};
pub use par::parallel_enabled;
pub use rational::Rational;
pub use solvers::{Algorithm, SolverConfig};
