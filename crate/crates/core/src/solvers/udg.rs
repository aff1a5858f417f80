//! Native conflict-count search over the disk conflict graph.
//!
//! Deliberately shares nothing with the weighted search beyond the model
//! types: it works on the boolean adjacency of [`unit_disk_graph`] and counts
//! conflicting pairs directly.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use super::{Algorithm, SolverConfig};
use crate::error::{Error, Result};
use crate::model::{unit_disk_graph, Solution, UdgInstance};
use crate::par;
use crate::rational::Rational;

struct Conflicts {
    n: usize,
    k: usize,
    adj: Vec<bool>,
}

type Best = Option<(u64, Vec<usize>)>;

fn improves(count: u64, subset: &[usize], best: &Best) -> bool {
    best.as_ref().is_none_or(|(c, s)| (count, subset) < (*c, s.as_slice()))
}

struct Budget {
    limit: Option<u64>,
    nodes: AtomicU64,
    aborted: AtomicBool,
}

impl Budget {
    fn tick(&self) -> bool {
        let count = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.limit.is_some_and(|l| count > l) {
            self.aborted.store(true, Ordering::Relaxed);
        }
        !self.aborted.load(Ordering::Relaxed)
    }
}

struct Walker<'a> {
    g: &'a Conflicts,
    budget: &'a Budget,
    prune: bool,
    chosen: Vec<usize>,
    /// Conflicts of each vertex with the current selection.
    hits: Vec<u64>,
    count: u64,
    checks: u64,
    best: Best,
    buf: Vec<u64>,
}

impl<'a> Walker<'a> {
    fn take(&mut self, v: usize) {
        self.count += self.hits[v];
        self.chosen.push(v);
        let row = &self.g.adj[v * self.g.n..(v + 1) * self.g.n];
        for (u, &hit) in row.iter().enumerate().skip(v + 1) {
            if hit {
                self.hits[u] += 1;
            }
        }
        self.checks += (self.g.n - v - 1) as u64;
    }

    fn untake(&mut self) {
        let v = self.chosen.pop().expect("non-empty");
        let row = &self.g.adj[v * self.g.n..(v + 1) * self.g.n];
        for (u, &hit) in row.iter().enumerate().skip(v + 1) {
            if hit {
                self.hits[u] -= 1;
            }
        }
        self.count -= self.hits[v];
    }

    fn cut(&mut self, start: usize, need: usize) -> bool {
        let Some((best, best_set)) = self.best.as_ref() else {
            return false;
        };
        // new pairs among the remaining picks only add conflicts
        self.buf.clear();
        self.buf.extend(self.hits[start..].iter().copied());
        self.buf.select_nth_unstable(need - 1);
        let floor = self.count + self.buf[..need].iter().sum::<u64>();
        floor > *best
            || (floor == *best
                && self
                    .chosen
                    .iter()
                    .copied()
                    .chain(start..start + need)
                    .ge(best_set.iter().copied()))
    }

    fn walk(&mut self, start: usize) -> bool {
        let need = self.g.k - self.chosen.len();
        if need == 0 {
            if !self.budget.tick() {
                return false;
            }
            if improves(self.count, &self.chosen, &self.best) {
                self.best = Some((self.count, self.chosen.clone()));
            }
            return true;
        }
        if self.prune {
            if !self.budget.tick() {
                return false;
            }
            if self.cut(start, need) {
                return true;
            }
        }
        for v in start..=self.g.n - need {
            self.take(v);
            let ok = self.walk(v + 1);
            self.untake();
            if !ok {
                return false;
            }
        }
        true
    }
}

fn min_conflict_greedy(g: &Conflicts) -> (u64, Vec<usize>) {
    let mut best: Best = None;
    for first in 0..g.n {
        let mut hits = vec![0u64; g.n];
        let mut used = vec![false; g.n];
        let mut set = Vec::with_capacity(g.k);
        let mut total = 0;
        let mut v = first;
        loop {
            total += hits[v];
            used[v] = true;
            set.push(v);
            if set.len() == g.k {
                break;
            }
            for u in 0..g.n {
                if g.adj[v * g.n + u] {
                    hits[u] += 1;
                }
            }
            v = (0..g.n)
                .filter(|&u| !used[u])
                .min_by_key(|&u| (hits[u], u))
                .expect("k < n");
        }
        set.sort_unstable();
        if improves(total, &set, &best) {
            best = Some((total, set));
        }
    }
    best.expect("n >= 1")
}

/// Finds a `target_size` selection with the fewest conflicting pairs. The
/// instance answer is YES iff the returned objective is zero.
pub fn solve_udg_independent_set(instance: &UdgInstance, config: &SolverConfig) -> Result<Solution> {
    config.validate()?;
    let graph = unit_disk_graph(instance);
    let g = Conflicts {
        n: graph.vertex_count(),
        k: instance.target_size(),
        adj: graph.adjacency_matrix(),
    };

    if config.algorithm == Algorithm::Greedy {
        let (count, selected) = min_conflict_greedy(&g);
        return Ok(Solution {
            selected,
            objective: Rational::integer(count as i128),
            proven_optimal: false,
            pair_evaluations: (g.n * g.n * g.k) as u64,
            nodes_explored: g.n as u64,
        });
    }

    let prune = config.algorithm == Algorithm::BranchAndBound;
    let budget = Budget {
        limit: config.node_budget,
        nodes: AtomicU64::new(0),
        aborted: AtomicBool::new(false),
    };
    let walker = |seed: Best| Walker {
        g: &g,
        budget: &budget,
        prune,
        chosen: Vec::with_capacity(g.k),
        hits: vec![0; g.n],
        count: 0,
        checks: 0,
        best: seed,
        buf: Vec::with_capacity(g.n),
    };
    let seed = prune.then(|| min_conflict_greedy(&g));

    let runs: Vec<(bool, Best, u64)> = if config.parallel_workers > 1 && par::parallel_enabled() {
        let firsts: Vec<usize> = (0..=g.n - g.k).collect();
        par::map_ordered(firsts, config.parallel_workers, |first| {
            let mut w = walker(seed.clone());
            w.take(first);
            let ok = w.walk(first + 1);
            (ok, w.best, w.checks)
        })
    } else {
        let mut w = walker(seed.clone());
        let ok = w.walk(0);
        vec![(ok, w.best, w.checks)]
    };

    let mut best: Best = seed;
    let mut complete = true;
    let mut checks = 0;
    for (ok, local, c) in runs {
        complete &= ok;
        checks += c;
        if let Some((count, set)) = local {
            if improves(count, &set, &best) {
                best = Some((count, set));
            }
        }
    }
    let nodes = budget.nodes.load(Ordering::Relaxed);
    let make = |(count, selected): (u64, Vec<usize>), proven_optimal| Solution {
        selected,
        objective: Rational::integer(count as i128),
        proven_optimal,
        pair_evaluations: checks,
        nodes_explored: nodes,
    };
    if !complete {
        return Err(Error::BudgetExhausted {
            budget: config.node_budget.unwrap_or(u64::MAX),
            nodes,
            incumbent: best.map(|b| Box::new(make(b, false))),
        });
    }
    Ok(make(best.expect("complete search sees a subset"), true))
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
    fn far_disks_are_independent() {
        let inst = disks(&[[0, 0], [5, 0], [0, 5], [5, 5]], 1, 3);
        for alg in [Algorithm::Exhaustive, Algorithm::BranchAndBound] {
            let s = solve_udg_independent_set(&inst, &SolverConfig::new(alg)).unwrap();
            assert_eq!(s.objective, Rational::ZERO);
            assert_eq!(s.selected, vec![0, 1, 2]);
        }
    }

    #[test]
    fn mutually_conflicting_disks() {
        let inst = disks(&[[0, 0], [1, 0], [0, 1]], 2, 2);
        let s = solve_udg_independent_set(&inst, &SolverConfig::new(Algorithm::Exhaustive)).unwrap();
        assert_eq!(s.objective, Rational::ONE);
        assert_eq!(s.nodes_explored, 3);
    }

    #[test]
    fn budget_is_enforced() {
        let pts: Vec<[i64; 2]> = (0..12).map(|i| [i, 0]).collect();
        let inst = disks(&pts, 1, 6);
        let err = solve_udg_independent_set(&inst, &SolverConfig::new(Algorithm::Exhaustive).with_budget(10));
        assert!(matches!(err, Err(Error::BudgetExhausted { .. })));
    }
}
