//! Certificate checks and the randomized iff-harnesses.
//!
//! Each harness trial answers a random decision instance twice: once with a
//! brute-force oracle working on the source problem directly, once by
//! reducing, solving the target exactly and reading the answer off the
//! objective. The two paths share only the model types.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{check_distinct, CliqueInstance, Graph, Instance, ProblemKind, Solution, UdgInstance};
use crate::par;
use crate::rational::Rational;
use crate::reductions::{clique_to_weighted_edge, interpret_clique_answer, interpret_udg_answer, udg_to_cluster};
use crate::solvers::{
    energy, solve_cluster_min, solve_udg_independent_set, solve_weighted_edge, Algorithm, SolverConfig,
};
use crate::toolkit::generate::{random_graph, random_udg, trial_seed};

/// Re-evaluates `solution` on `instance`: true iff the selection has the
/// required size and its objective matches exactly.
///
/// Decision kinds use violation counts as the objective: conflicting pairs for
/// `udg_is`, non-adjacent pairs for `clique`.
pub fn check_solution(instance: &Instance, solution: &Solution) -> Result<bool> {
    let sel = &solution.selected;
    check_distinct(sel, instance.universe_size())?;
    if sel.len() != instance.selection_size() {
        return Ok(false);
    }
    let value = match instance {
        Instance::WeightedEdge(w) => w.induced_weight(sel)?,
        Instance::ClusterMin(c) => energy(c, sel)?.0,
        Instance::UdgIs(u) => Rational::integer(count_pairs(sel, |i, j| u.conflicts(i, j))? as i128),
        Instance::Clique(c) => {
            let g = c.graph();
            Rational::integer(count_pairs(sel, |i, j| Ok(!g.has_edge(i, j)))? as i128)
        }
    };
    Ok(value == solution.objective)
}

/// [`check_solution`] for a solution recorded against a particular problem
/// kind; mismatched kinds are an input error.
pub fn check_solution_for(kind: ProblemKind, instance: &Instance, solution: &Solution) -> Result<bool> {
    if kind != instance.kind() {
        return Err(Error::input(format!(
            "solution is for a {kind} instance but the instance is {}",
            instance.kind()
        )));
    }
    check_solution(instance, solution)
}

fn count_pairs(sel: &[usize], mut pred: impl FnMut(usize, usize) -> Result<bool>) -> Result<u64> {
    let mut count = 0;
    for (a, &i) in sel.iter().enumerate() {
        for &j in &sel[a + 1..] {
            if pred(i, j)? {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Checks that the reduced energy of `selection` exceeds `K(K-1)/2` by exactly
/// the number of conflicting selected pairs.
pub fn excess_equals_conflicts(instance: &UdgInstance, selection: &[usize]) -> Result<bool> {
    let (cluster, receipt) = udg_to_cluster(instance)?;
    let (e, _) = energy(&cluster, selection)?;
    let excess = e.checked_sub(&receipt.decision_threshold)?;
    let centers = instance.centers();
    let direct = count_pairs(selection, |i, j| {
        Ok(centers.squared_distance(i, j)? <= instance.conflict_threshold())
    })?;
    Ok(excess == Rational::integer(direct as i128))
}

/// Brute-force clique search: some `size`-subset with every pair adjacent.
pub fn find_clique(graph: &Graph, size: usize) -> Option<Vec<usize>> {
    fn extend(graph: &Graph, size: usize, start: usize, cur: &mut Vec<usize>) -> bool {
        if cur.len() == size {
            return true;
        }
        for v in start..graph.vertex_count() {
            if cur.iter().all(|&u| graph.has_edge(u, v)) {
                cur.push(v);
                if extend(graph, size, v + 1, cur) {
                    return true;
                }
                cur.pop();
            }
        }
        false
    }
    let mut cur = Vec::with_capacity(size);
    extend(graph, size, 0, &mut cur).then_some(cur)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disagreement {
    pub trial: u64,
    pub seed: u64,
    pub summary: String,
    pub oracle_yes: bool,
    pub reduction_yes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InconclusiveTrial {
    pub trial: u64,
    pub seed: u64,
    pub reason: String,
}

/// Aggregate of one harness run. `agreements + disagreements.len() +
/// inconclusive.len() == trials`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarnessReport {
    pub problem: ProblemKind,
    pub trials: u64,
    pub agreements: u64,
    pub disagreements: Vec<Disagreement>,
    pub inconclusive: Vec<InconclusiveTrial>,
    /// YES answers among agreeing trials, to show the mix is nontrivial.
    pub yes_count: u64,
    /// Number of trials per target size (K or clique size).
    pub target_sizes: BTreeMap<usize, u64>,
    pub elapsed: Duration,
}

impl HarnessReport {
    pub fn is_clean(&self) -> bool {
        self.disagreements.is_empty() && self.inconclusive.is_empty()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct HarnessConfig {
    pub trials: u64,
    /// Largest number of centers or vertices in a generated instance.
    pub max_size: usize,
    pub seed: u64,
    pub workers: usize,
    /// Node budget for the reduce-then-solve path.
    pub node_budget: Option<u64>,
}

impl HarnessConfig {
    pub fn new(trials: u64, max_size: usize, seed: u64) -> Self {
        HarnessConfig {
            trials,
            max_size,
            seed,
            workers: 1,
            node_budget: None,
        }
    }
}

/// Outcome of answering one decision instance along both paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TrialOutcome {
    Agree { yes: bool },
    Disagree { oracle_yes: bool, reduction_yes: bool },
    Inconclusive(String),
}

fn exact(node_budget: Option<u64>) -> SolverConfig {
    SolverConfig {
        algorithm: Algorithm::BranchAndBound,
        node_budget,
        parallel_workers: 1,
    }
}

fn compare(oracle_yes: bool, reduction: Result<bool>) -> Result<TrialOutcome> {
    match reduction {
        Ok(reduction_yes) if reduction_yes == oracle_yes => Ok(TrialOutcome::Agree { yes: oracle_yes }),
        Ok(reduction_yes) => Ok(TrialOutcome::Disagree {
            oracle_yes,
            reduction_yes,
        }),
        Err(e @ Error::BudgetExhausted { .. }) => Ok(TrialOutcome::Inconclusive(e.to_string())),
        Err(e) => Err(e),
    }
}

/// Native exhaustive conflict search versus `udg_to_cluster` + exact cluster
/// solve + threshold test.
pub fn udg_trial(instance: &UdgInstance, node_budget: Option<u64>) -> Result<TrialOutcome> {
    let oracle = solve_udg_independent_set(instance, &SolverConfig::new(Algorithm::Exhaustive))?;
    let oracle_yes = oracle.objective.is_zero();
    let reduction = (|| {
        let (cluster, receipt) = udg_to_cluster(instance)?;
        let solution = solve_cluster_min(&cluster, &exact(node_budget))?;
        let answer = interpret_udg_answer(&solution, &receipt)?;
        if let Some(cert) = &answer.certificate {
            // a YES certificate must itself be an independent set
            if count_pairs(cert, |i, j| instance.conflicts(i, j))? != 0 {
                return Err(Error::Contract("YES certificate contains a conflict".into()));
            }
        }
        Ok(answer.yes)
    })();
    compare(oracle_yes, reduction)
}

/// Brute-force clique search versus `clique_to_weighted_edge` + exact solve +
/// threshold test.
pub fn clique_trial(instance: &CliqueInstance, node_budget: Option<u64>) -> Result<TrialOutcome> {
    let oracle_yes = find_clique(instance.graph(), instance.clique_size()).is_some();
    let reduction = (|| {
        let (weighted, receipt) = clique_to_weighted_edge(instance.graph(), instance.clique_size())?;
        let solution = solve_weighted_edge(&weighted, &exact(node_budget))?;
        Ok(interpret_clique_answer(&solution, &receipt)?.yes)
    })();
    compare(oracle_yes, reduction)
}

fn run_harness<I, G, T>(problem: ProblemKind, config: &HarnessConfig, generate: G, trial: T) -> Result<HarnessReport>
where
    I: Send,
    G: Fn(&mut ChaCha8Rng) -> Result<(I, usize, String)> + Sync + Send,
    T: Fn(&I) -> Result<TrialOutcome> + Sync + Send,
{
    if config.trials == 0 {
        return Err(Error::input("trials must be positive"));
    }
    let start = Instant::now();
    let indices: Vec<u64> = (0..config.trials).collect();
    let outcomes = par::map_ordered(indices, config.workers, |t| {
        let seed = trial_seed(config.seed, t);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (instance, k, summary) = generate(&mut rng)?;
        Ok::<_, Error>((t, seed, k, summary, trial(&instance)?))
    });
    let mut report = HarnessReport {
        problem,
        trials: config.trials,
        agreements: 0,
        disagreements: Vec::new(),
        inconclusive: Vec::new(),
        yes_count: 0,
        target_sizes: BTreeMap::new(),
        elapsed: Duration::ZERO,
    };
    for outcome in outcomes {
        let (trial, seed, k, summary, outcome) = outcome?;
        *report.target_sizes.entry(k).or_default() += 1;
        match outcome {
            TrialOutcome::Agree { yes } => {
                report.agreements += 1;
                report.yes_count += yes as u64;
            }
            TrialOutcome::Disagree {
                oracle_yes,
                reduction_yes,
            } => report.disagreements.push(Disagreement {
                trial,
                seed,
                summary,
                oracle_yes,
                reduction_yes,
            }),
            TrialOutcome::Inconclusive(reason) => report.inconclusive.push(InconclusiveTrial { trial, seed, reason }),
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Random disk instances with between 2 and `max_size` centers and a uniform
/// target size in `1..n`.
pub fn run_udg_harness(config: &HarnessConfig) -> Result<HarnessReport> {
    if config.max_size < 2 {
        return Err(Error::input("max_size must be at least 2"));
    }
    run_harness(
        ProblemKind::UdgIs,
        config,
        |rng| {
            let n = rng.gen_range(2..=config.max_size);
            let k = rng.gen_range(1..n);
            let inst = random_udg(rng, n, k, 4, None)?;
            Ok((inst, k, format!("udg n={n} k={k}")))
        },
        |inst| udg_trial(inst, config.node_budget),
    )
}

/// Random `G(n, p)` graphs with `p` uniform in `[0.1, 0.9]` and a uniform
/// clique size in `1..n`.
pub fn run_clique_harness(config: &HarnessConfig) -> Result<HarnessReport> {
    if config.max_size < 2 {
        return Err(Error::input("max_size must be at least 2"));
    }
    run_harness(
        ProblemKind::Clique,
        config,
        |rng| {
            let n = rng.gen_range(2..=config.max_size);
            let k = rng.gen_range(1..n);
            let p: f64 = rng.gen_range(0.1..=0.9);
            let graph = random_graph(rng, n, p)?;
            let m = graph.edge_count();
            Ok((CliqueInstance::new(graph, k)?, k, format!("clique n={n} m={m} k={k}")))
        },
        |inst| clique_trial(inst, config.node_budget),
    )
}

pub fn run_iff_harness_udg(trials: u64, max_centers: usize, seed: u64) -> Result<HarnessReport> {
    run_udg_harness(&HarnessConfig::new(trials, max_centers, seed))
}

pub fn run_iff_harness_clique(trials: u64, max_vertices: usize, seed: u64) -> Result<HarnessReport> {
    run_clique_harness(&HarnessConfig::new(trials, max_vertices, seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::PointSet;

    fn disks(pts: &[[i64; 2]], threshold: u128, k: usize) -> UdgInstance {
        let pts: Vec<Vec<i64>> = pts.iter().map(|p| p.to_vec()).collect();
        UdgInstance::new(PointSet::new(2, 1, &pts).unwrap(), threshold, k).unwrap()
    }

    #[test]
    fn forced_all_conflicting() {
        let inst = disks(&[[0, 0], [1, 0], [0, 1]], 2, 2);
        assert_eq!(udg_trial(&inst, None).unwrap(), TrialOutcome::Agree { yes: false });
    }

    #[test]
    fn forced_all_isolated() {
        let inst = disks(&[[0, 0], [9, 0], [0, 9], [9, 9]], 2, 3);
        assert_eq!(udg_trial(&inst, None).unwrap(), TrialOutcome::Agree { yes: true });
    }

    #[test]
    fn clique_extremes() {
        let complete = CliqueInstance::new(Graph::complete(6), 5).unwrap();
        assert_eq!(
            clique_trial(&complete, None).unwrap(),
            TrialOutcome::Agree { yes: true }
        );
        let empty = CliqueInstance::new(Graph::empty(6), 2).unwrap();
        assert_eq!(clique_trial(&empty, None).unwrap(), TrialOutcome::Agree { yes: false });
    }

    #[test]
    fn tiny_budget_is_inconclusive() {
        let pts: Vec<[i64; 2]> = (0..10).map(|i| [i * 3 % 7, i * 5 % 11]).collect();
        let inst = disks(&pts, 4, 5);
        assert!(matches!(
            udg_trial(&inst, Some(1)).unwrap(),
            TrialOutcome::Inconclusive(_)
        ));
    }

    #[test]
    fn excess_counts() {
        let inst = disks(&[[0, 0], [1, 0], [5, 5], [9, 9]], 1, 3);
        assert!(excess_equals_conflicts(&inst, &[0, 2, 3]).unwrap());
        assert!(excess_equals_conflicts(&inst, &[0, 1, 3]).unwrap());
        let tri = disks(&[[0, 0], [1, 0], [0, 1], [9, 9]], 2, 3);
        assert!(excess_equals_conflicts(&tri, &[0, 1, 2]).unwrap());
    }

    #[test]
    fn small_harness_runs_clean() {
        let r = run_iff_harness_udg(20, 8, 3).unwrap();
        assert!(r.is_clean());
        assert_eq!(r.agreements, 20);
        let r = run_iff_harness_clique(20, 8, 3).unwrap();
        assert!(r.is_clean());
    }

    #[test]
    fn harness_is_worker_independent() {
        let mut cfg = HarnessConfig::new(30, 9, 11);
        let a = run_udg_harness(&cfg).unwrap();
        cfg.workers = 3;
        let b = run_udg_harness(&cfg).unwrap();
        assert_eq!((a.agreements, a.yes_count), (b.agreements, b.yes_count));
    }
}
