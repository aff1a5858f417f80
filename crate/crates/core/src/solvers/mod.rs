//! Exact and heuristic solvers.
//!
//! [`solve_weighted_edge`] is the workhorse: minimum induced weight over all
//! `N`-subsets of a complete weighted graph, by exhaustive enumeration or
//! branch-and-bound. [`solve_cluster_min`] materializes site-pair weights and
//! delegates to it. [`solve_udg_independent_set`] is a separate conflict-count
//! search over the disk graph that never touches weights or potentials, so it
//! can serve as an independent oracle for the reduction path.
//!
//! Every exact solver breaks ties toward the lexicographically smallest sorted
//! subset, which makes answers identical for any worker count.

mod subgraph;
mod udg;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{check_distinct, ClusterMinInstance, Solution, UdgInstance, WeightedEdgeInstance};
use crate::rational::Rational;
use crate::reductions::cluster_to_weighted_edge;

pub use udg::solve_udg_independent_set;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Exhaustive,
    BranchAndBound,
    Greedy,
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Algorithm::Exhaustive),
            "branch_and_bound" | "branch-and-bound" | "bnb" => Ok(Algorithm::BranchAndBound),
            "greedy" => Ok(Algorithm::Greedy),
            other => Err(Error::input(format!("unknown algorithm `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub algorithm: Algorithm,
    /// Maximum number of search nodes; `None` means unlimited.
    pub node_budget: Option<u64>,
    pub parallel_workers: usize,
}

impl SolverConfig {
    pub fn new(algorithm: Algorithm) -> Self {
        SolverConfig {
            algorithm,
            node_budget: None,
            parallel_workers: 1,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.parallel_workers = workers;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.node_budget = Some(budget);
        self
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.parallel_workers == 0 {
            return Err(Error::input("parallel_workers must be positive"));
        }
        if self.node_budget == Some(0) {
            return Err(Error::input("node_budget must be positive"));
        }
        Ok(())
    }
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig::new(Algorithm::BranchAndBound)
    }
}

/// Minimum induced weight over all `selection_size`-subsets.
///
/// Budget exhaustion yields [`Error::BudgetExhausted`] carrying the incumbent.
pub fn solve_weighted_edge(instance: &WeightedEdgeInstance, config: &SolverConfig) -> Result<Solution> {
    config.validate()?;
    let weights = subgraph::ScaledWeights::new(instance)?;
    match config.algorithm {
        Algorithm::Greedy => Ok(subgraph::greedy(&weights)),
        Algorithm::Exhaustive | Algorithm::BranchAndBound => subgraph::search(&weights, config),
    }
}

/// Cheapest-insertion heuristic, restarted from every vertex. Never marked
/// optimal.
pub fn greedy_upper_bound(instance: &WeightedEdgeInstance) -> Result<Solution> {
    let weights = subgraph::ScaledWeights::new(instance)?;
    Ok(subgraph::greedy(&weights))
}

/// Cluster minimization through the materialized pair-weight matrix.
pub fn solve_cluster_min(instance: &ClusterMinInstance, config: &SolverConfig) -> Result<Solution> {
    let weighted = cluster_to_weighted_edge(instance)?;
    let n = weighted.vertex_count() as u64;
    let materialized = n * n.saturating_sub(1) / 2;
    let mut solution = solve_weighted_edge(&weighted, config).map_err(|e| match e {
        Error::BudgetExhausted {
            budget,
            nodes,
            incumbent,
        } => Error::BudgetExhausted {
            budget,
            nodes,
            incumbent: incumbent.map(|mut s| {
                s.pair_evaluations += materialized;
                s
            }),
        },
        other => other,
    })?;
    solution.pair_evaluations += materialized;
    Ok(solution)
}

/// Admissible lower bound on every completion of `selected` by vertices above
/// its largest element, as used by branch-and-bound. Exposed for testing bound
/// soundness.
pub fn completion_lower_bound(instance: &WeightedEdgeInstance, selected: &[usize]) -> Result<Rational> {
    check_distinct(selected, instance.vertex_count())?;
    if selected.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::input("selected prefix must be sorted"));
    }
    if selected.len() > instance.selection_size() {
        return Err(Error::input("prefix longer than the selection size"));
    }
    let weights = subgraph::ScaledWeights::new(instance)?;
    weights.prefix_lower_bound(selected)
}

/// Total pairwise energy of `selection`, with the number of potential
/// lookups performed (always `N(N-1)/2`).
pub fn energy(instance: &ClusterMinInstance, selection: &[usize]) -> Result<(Rational, u64)> {
    let sites = instance.sites();
    check_distinct(selection, sites.len())?;
    if selection.len() != instance.particle_count() {
        return Err(Error::input(format!(
            "selection has {} sites, instance needs {}",
            selection.len(),
            instance.particle_count()
        )));
    }
    let potential = instance.potential();
    let mut total = Rational::ZERO;
    let mut lookups = 0u64;
    for (a, &i) in selection.iter().enumerate() {
        for &j in &selection[a + 1..] {
            total = total.checked_add(&potential.value(sites.squared_distance(i, j)?))?;
            lookups += 1;
        }
    }
    Ok((total, lookups))
}

/// Number of selected pairs whose disks conflict.
pub fn conflict_count(instance: &UdgInstance, selection: &[usize]) -> Result<u64> {
    check_distinct(selection, instance.centers().len())?;
    let mut count = 0;
    for (a, &i) in selection.iter().enumerate() {
        for &j in &selection[a + 1..] {
            if instance.conflicts(i, j)? {
                count += 1;
            }
        }
    }
    Ok(count)
}
