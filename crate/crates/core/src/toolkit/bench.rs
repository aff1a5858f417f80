//! Scaling measurements: wall time and explored nodes per instance size.
//!
//! The report only records measurements. For exhaustive search the node
//! count is the number of evaluated subsets, `C(sites, particles)`.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::generate::{grid_udg, random_udg, trial_seed};
use crate::error::{Error, Result};
use crate::reductions::udg_to_cluster;
use crate::solvers::{solve_cluster_min, Algorithm, SolverConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BenchFamily {
    /// Random disk instances, reduced to cluster minimization.
    RandomUdg,
    /// Square grids with pitch beyond the conflict distance, reduced likewise.
    SparseGrid,
}

impl std::str::FromStr for BenchFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random_udg" | "random-udg" => Ok(BenchFamily::RandomUdg),
            "sparse_grid" | "sparse-grid" | "grid" => Ok(BenchFamily::SparseGrid),
            other => Err(Error::input(format!("unknown bench family `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BenchOptions {
    pub family: BenchFamily,
    pub instances_per_size: usize,
    /// Particles per instance; `None` means half the sites, rounded down
    /// (at least one).
    pub particles: Option<usize>,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            family: BenchFamily::RandomUdg,
            instances_per_size: 3,
            particles: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub sites: usize,
    pub particles: usize,
    pub instances: usize,
    /// Median over completed instances; `None` when every cell was censored.
    pub median_wall_ms: Option<f64>,
    pub median_nodes: Option<u64>,
    pub nodes: Vec<u64>,
    pub objectives: Vec<String>,
    /// `C(sites, particles)`, the exhaustive node count.
    pub subsets: u128,
    /// Instances that hit the node budget.
    pub censored: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub family: BenchFamily,
    pub config: SolverConfig,
    pub seed: u64,
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{:?} / {:?}, workers={}, seed={}\n{:>6} {:>6} {:>12} {:>14} {:>14} {:>9}\n",
            self.family,
            self.config.algorithm,
            self.config.parallel_workers,
            self.seed,
            "sites",
            "N",
            "C(sites,N)",
            "median nodes",
            "median ms",
            "censored"
        );
        for r in &self.rows {
            let nodes = r.median_nodes.map_or("-".into(), |n| n.to_string());
            let ms = r.median_wall_ms.map_or("-".into(), |m| format!("{m:.3}"));
            out.push_str(&format!(
                "{:>6} {:>6} {:>12} {:>14} {:>14} {:>9}\n",
                r.sites, r.particles, r.subsets, nodes, ms, r.censored
            ));
        }
        out
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn median<T: Copy + PartialOrd>(mut xs: Vec<T>) -> Option<T> {
    if xs.is_empty() {
        return None;
    }
    xs.sort_by(|a, b| a.partial_cmp(b).expect("comparable"));
    Some(xs[xs.len() / 2])
}

pub fn bench_scaling(sizes: &[usize], config: &SolverConfig, seed: u64, options: &BenchOptions) -> Result<BenchReport> {
    if options.instances_per_size == 0 {
        return Err(Error::input("instances_per_size must be positive"));
    }
    let mut rows = Vec::with_capacity(sizes.len());
    for (size_idx, &sites) in sizes.iter().enumerate() {
        let particles = options.particles.unwrap_or((sites / 2).max(1));
        if sites < 2 || particles == 0 || particles >= sites {
            return Err(Error::input(format!("size {sites} cannot host {particles} particles")));
        }
        let mut row = BenchRow {
            sites,
            particles,
            instances: options.instances_per_size,
            median_wall_ms: None,
            median_nodes: None,
            nodes: Vec::new(),
            objectives: Vec::new(),
            subsets: binomial(sites, particles),
            censored: 0,
        };
        let mut times = Vec::new();
        for rep in 0..options.instances_per_size {
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, (size_idx * 1_000_003 + rep) as u64));
            let udg = match options.family {
                BenchFamily::RandomUdg => random_udg(&mut rng, sites, particles, 4, None)?,
                BenchFamily::SparseGrid => grid_udg(sites, 5, 4, 16, particles)?,
            };
            let (cluster, _) = udg_to_cluster(&udg)?;
            let start = Instant::now();
            match solve_cluster_min(&cluster, config) {
                Ok(sol) => {
                    times.push(start.elapsed().as_secs_f64() * 1e3);
                    row.nodes.push(sol.nodes_explored);
                    row.objectives.push(sol.objective.to_string());
                }
                Err(Error::BudgetExhausted { .. }) => row.censored += 1,
                Err(e) => return Err(e),
            }
        }
        row.median_wall_ms = median(times);
        row.median_nodes = median(row.nodes.clone());
        rows.push(row);
    }
    Ok(BenchReport {
        family: options.family,
        config: *config,
        seed,
        rows,
    })
}

/// Exhaustive configuration used by the scaling report's node-count check.
pub fn exhaustive_config(workers: usize) -> SolverConfig {
    SolverConfig::new(Algorithm::Exhaustive).with_workers(workers)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(10, 4), 210);
        assert_eq!(binomial(20, 10), 184_756);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn empty_sizes_give_empty_report() {
        let r = bench_scaling(&[], &SolverConfig::default(), 0, &BenchOptions::default()).unwrap();
        assert!(r.rows.is_empty());
    }

    #[test]
    fn exhaustive_counts_subsets() {
        let r = bench_scaling(&[6, 8, 10], &exhaustive_config(1), 1, &BenchOptions::default()).unwrap();
        for row in &r.rows {
            assert!(row.nodes.iter().all(|&n| n as u128 == row.subsets));
        }
        assert!(r.rows.windows(2).all(|w| w[0].median_nodes <= w[1].median_nodes));
    }

    #[test]
    fn budget_censors() {
        let cfg = exhaustive_config(1).with_budget(5);
        let r = bench_scaling(&[8], &cfg, 1, &BenchOptions::default()).unwrap();
        assert_eq!(r.rows[0].censored, 3);
        assert_eq!(r.rows[0].median_nodes, None);
    }
}
