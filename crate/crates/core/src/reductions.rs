//! Polynomial-time transformations between the problem kinds, with back-maps
//! that read a decision answer off an optimal solution of the target.
//!
//! Both hardness reductions share one certificate: with pair weights in
//! `{1, 2}`, an `N`-selection has total `N(N-1)/2` exactly when no selected
//! pair carries the penalty weight.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    ClusterMinInstance, Graph, ProblemKind, RadialPotential, Solution, UdgInstance, WeightedEdgeInstance,
};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionReceipt {
    pub source_kind: ProblemKind,
    pub target_kind: ProblemKind,
    /// Objective value of the target that certifies a YES for the source.
    pub decision_threshold: Rational,
    /// Elementary operations spent building the target instance.
    pub construction_steps: u64,
}

/// YES/NO answer for a decision source, with the witnessing subset on YES.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionAnswer {
    pub yes: bool,
    pub certificate: Option<Vec<usize>>,
}

/// Weight 1 on edges of `graph`, 2 on non-edges; the weighted instance reaches
/// `N(N-1)/2` iff `graph` has an `N`-clique.
pub fn clique_to_weighted_edge(graph: &Graph, clique_size: usize) -> Result<(WeightedEdgeInstance, ReductionReceipt)> {
    let n = graph.vertex_count();
    if clique_size == 0 || clique_size >= n {
        return Err(Error::input(format!(
            "clique_size must satisfy 0 < N < {n}, got {clique_size}"
        )));
    }
    let mut steps = 0u64;
    let (one, two) = (Rational::ONE, Rational::integer(2));
    let instance = WeightedEdgeInstance::from_fn(n, clique_size, |i, j| {
        steps += 1;
        Ok(if graph.has_edge(i, j) { one } else { two })
    })?;
    let receipt = ReductionReceipt {
        source_kind: ProblemKind::Clique,
        target_kind: ProblemKind::WeightedEdge,
        decision_threshold: Rational::pair_count(clique_size),
        construction_steps: steps,
    };
    Ok((instance, receipt))
}

/// Sites at the disk centers (lifted to the `z = 0` plane), step potential 2
/// on conflict and 1 otherwise, `N = K`.
pub fn udg_to_cluster(instance: &UdgInstance) -> Result<(ClusterMinInstance, ReductionReceipt)> {
    let sites = instance.centers().embed_3d();
    let steps = sites.len() as u64 + 1;
    let potential = RadialPotential::conflict_step(instance.conflict_threshold());
    let cluster = ClusterMinInstance::new(sites, instance.target_size(), potential)?;
    let receipt = ReductionReceipt {
        source_kind: ProblemKind::UdgIs,
        target_kind: ProblemKind::ClusterMin,
        decision_threshold: Rational::pair_count(instance.target_size()),
        construction_steps: steps,
    };
    Ok((cluster, receipt))
}

/// Materializes `w(i, j) = u(|r_i - r_j|)` over every site pair.
pub fn cluster_to_weighted_edge(instance: &ClusterMinInstance) -> Result<WeightedEdgeInstance> {
    let sites = instance.sites();
    let potential = instance.potential();
    WeightedEdgeInstance::from_fn(sites.len(), instance.particle_count(), |i, j| {
        Ok(potential.value(sites.squared_distance(i, j)?))
    })
}

/// Reads the source answer off a target solution: YES iff the objective hits
/// the receipt's threshold.
///
/// A YES needs only a feasible selection at the threshold, so heuristic
/// solutions may certify it. A NO is accepted only from a proven optimum.
pub fn interpret_answer(solution: &Solution, receipt: &ReductionReceipt) -> Result<DecisionAnswer> {
    if solution.objective == receipt.decision_threshold {
        return Ok(DecisionAnswer {
            yes: true,
            certificate: Some(solution.selected.clone()),
        });
    }
    if !solution.proven_optimal {
        return Err(Error::Contract(format!(
            "objective {} misses threshold {} but the solution is not proven optimal; \
             a heuristic solution cannot certify NO",
            solution.objective, receipt.decision_threshold
        )));
    }
    Ok(DecisionAnswer {
        yes: false,
        certificate: None,
    })
}

/// [`interpret_answer`] restricted to receipts produced by [`udg_to_cluster`].
pub fn interpret_udg_answer(solution: &Solution, receipt: &ReductionReceipt) -> Result<DecisionAnswer> {
    if receipt.source_kind != ProblemKind::UdgIs {
        return Err(Error::Contract(format!(
            "receipt is for a {} source, expected udg_is",
            receipt.source_kind
        )));
    }
    interpret_answer(solution, receipt)
}

/// [`interpret_answer`] restricted to receipts produced by [`clique_to_weighted_edge`].
pub fn interpret_clique_answer(solution: &Solution, receipt: &ReductionReceipt) -> Result<DecisionAnswer> {
    if receipt.source_kind != ProblemKind::Clique {
        return Err(Error::Contract(format!(
            "receipt is for a {} source, expected clique",
            receipt.source_kind
        )));
    }
    interpret_answer(solution, receipt)
}
