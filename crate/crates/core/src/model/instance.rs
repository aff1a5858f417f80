use serde::{Deserialize, Serialize};

use super::{Graph, PointSet, RadialPotential};
use crate::error::{Error, Result};
use crate::rational::Rational;

fn check_selection_size(what: &str, size: usize, universe: usize) -> Result<()> {
    if size == 0 || size >= universe {
        return Err(Error::input(format!(
            "{what} must satisfy 0 < {what} < {universe}, got {size}"
        )));
    }
    Ok(())
}

/// Index of the unordered pair `i < j` in a row-major upper triangle over `n`
/// vertices.
pub(crate) fn pair_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Complete graph with rational edge weights; pick `selection_size` vertices
/// minimizing the induced weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedEdgeInstance {
    vertex_count: usize,
    weights: Vec<Rational>,
    selection_size: usize,
}

impl WeightedEdgeInstance {
    /// `weights` is the upper triangle, row-major: `(0,1), (0,2), ..., (1,2), ...`.
    pub fn new(vertex_count: usize, weights: Vec<Rational>, selection_size: usize) -> Result<Self> {
        let expected = vertex_count * vertex_count.saturating_sub(1) / 2;
        if weights.len() != expected {
            return Err(Error::input(format!(
                "{vertex_count} vertices need {expected} pair weights, got {}",
                weights.len()
            )));
        }
        check_selection_size("selection_size", selection_size, vertex_count)?;
        Ok(WeightedEdgeInstance {
            vertex_count,
            weights,
            selection_size,
        })
    }

    /// Builds the instance from a weight function evaluated on every `i < j`.
    pub fn from_fn(
        vertex_count: usize,
        selection_size: usize,
        mut weight: impl FnMut(usize, usize) -> Result<Rational>,
    ) -> Result<Self> {
        let mut weights = Vec::with_capacity(vertex_count * vertex_count.saturating_sub(1) / 2);
        for i in 0..vertex_count {
            for j in i + 1..vertex_count {
                weights.push(weight(i, j)?);
            }
        }
        WeightedEdgeInstance::new(vertex_count, weights, selection_size)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn selection_size(&self) -> usize {
        self.selection_size
    }

    /// Weight of the pair `(i, j)`. Panics on `i == j` or out-of-range ids.
    pub fn weight(&self, i: usize, j: usize) -> Rational {
        assert!(i != j, "no diagonal weights");
        self.weights[pair_index(self.vertex_count, i, j)]
    }

    pub fn upper_triangle(&self) -> &[Rational] {
        &self.weights
    }

    /// Sum of pair weights induced by `selection`.
    pub fn induced_weight(&self, selection: &[usize]) -> Result<Rational> {
        check_distinct(selection, self.vertex_count)?;
        let mut total = Rational::ZERO;
        for (a, &i) in selection.iter().enumerate() {
            for &j in &selection[a + 1..] {
                total = total.checked_add(&self.weight(i, j))?;
            }
        }
        Ok(total)
    }
}

/// Choose `particle_count` of the `sites` minimizing the pairwise potential sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterMinInstance {
    sites: PointSet,
    particle_count: usize,
    potential: RadialPotential,
}

impl ClusterMinInstance {
    pub fn new(sites: PointSet, particle_count: usize, potential: RadialPotential) -> Result<Self> {
        check_selection_size("particle_count", particle_count, sites.len())?;
        Ok(ClusterMinInstance {
            sites,
            particle_count,
            potential,
        })
    }

    pub fn sites(&self) -> &PointSet {
        &self.sites
    }

    pub fn particle_count(&self) -> usize {
        self.particle_count
    }

    pub fn potential(&self) -> &RadialPotential {
        &self.potential
    }
}

/// Disks given by their centers; two disks conflict when the squared center
/// distance is at most `conflict_threshold`. Asks for `target_size` pairwise
/// non-conflicting disks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UdgInstance {
    centers: PointSet,
    conflict_threshold: u128,
    target_size: usize,
}

impl UdgInstance {
    pub fn new(centers: PointSet, conflict_threshold: u128, target_size: usize) -> Result<Self> {
        if centers.dimension() != 2 {
            return Err(Error::input("disk centers must be 2-D"));
        }
        if conflict_threshold == 0 {
            return Err(Error::input("conflict_threshold must be positive"));
        }
        check_selection_size("target_size", target_size, centers.len())?;
        Ok(UdgInstance {
            centers,
            conflict_threshold,
            target_size,
        })
    }

    pub fn centers(&self) -> &PointSet {
        &self.centers
    }

    pub fn conflict_threshold(&self) -> u128 {
        self.conflict_threshold
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn conflicts(&self, i: usize, j: usize) -> Result<bool> {
        Ok(self.centers.squared_distance(i, j)? <= self.conflict_threshold)
    }
}

/// Does `graph` contain a clique on `clique_size` vertices?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueInstance {
    graph: Graph,
    clique_size: usize,
}

impl CliqueInstance {
    pub fn new(graph: Graph, clique_size: usize) -> Result<Self> {
        check_selection_size("clique_size", clique_size, graph.vertex_count())?;
        Ok(CliqueInstance { graph, clique_size })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn clique_size(&self) -> usize {
        self.clique_size
    }
}

/// Any of the four problem kinds the toolkit reads, writes and solves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Clique(CliqueInstance),
    WeightedEdge(WeightedEdgeInstance),
    UdgIs(UdgInstance),
    ClusterMin(ClusterMinInstance),
}

impl Instance {
    pub fn kind(&self) -> ProblemKind {
        match self {
            Instance::Clique(_) => ProblemKind::Clique,
            Instance::WeightedEdge(_) => ProblemKind::WeightedEdge,
            Instance::UdgIs(_) => ProblemKind::UdgIs,
            Instance::ClusterMin(_) => ProblemKind::ClusterMin,
        }
    }

    /// Number of vertices, sites or disks.
    pub fn universe_size(&self) -> usize {
        match self {
            Instance::Clique(c) => c.graph().vertex_count(),
            Instance::WeightedEdge(w) => w.vertex_count(),
            Instance::UdgIs(u) => u.centers().len(),
            Instance::ClusterMin(c) => c.sites().len(),
        }
    }

    /// Required size of a feasible selection.
    pub fn selection_size(&self) -> usize {
        match self {
            Instance::Clique(c) => c.clique_size(),
            Instance::WeightedEdge(w) => w.selection_size(),
            Instance::UdgIs(u) => u.target_size(),
            Instance::ClusterMin(c) => c.particle_count(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProblemKind {
    Clique,
    WeightedEdge,
    UdgIs,
    ClusterMin,
}

impl ProblemKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ProblemKind::Clique => "clique",
            ProblemKind::WeightedEdge => "weighted_edge",
            ProblemKind::UdgIs => "udg_is",
            ProblemKind::ClusterMin => "cluster_min",
        }
    }
}

impl std::fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "clique" => ProblemKind::Clique,
            "weighted_edge" => ProblemKind::WeightedEdge,
            "udg_is" => ProblemKind::UdgIs,
            "cluster_min" => ProblemKind::ClusterMin,
            other => return Err(Error::input(format!("unknown problem kind `{other}`"))),
        })
    }
}

/// A selected index subset with its exact objective.
///
/// For minimization kinds the objective is the induced weight or energy; for
/// the decision kinds (`udg_is`, `clique`) it is the number of violating pairs,
/// so a zero objective is a YES certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub selected: Vec<usize>,
    pub objective: Rational,
    pub proven_optimal: bool,
    pub pair_evaluations: u64,
    #[serde(default)]
    pub nodes_explored: u64,
}

pub(crate) fn check_distinct(selection: &[usize], universe: usize) -> Result<()> {
    let mut seen = vec![false; universe];
    for &i in selection {
        if i >= universe {
            return Err(Error::input(format!("index {i} out of range 0..{universe}")));
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::input(format!("index {i} selected twice")));
        }
    }
    Ok(())
}
