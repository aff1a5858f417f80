//! Minimum-weight `N`-subset search over a complete graph.
//!
//! Weights are rescaled once to integers over a common denominator so the
//! inner loops run on plain `i128`. Construction checks that eight times the
//! total absolute weight fits, which bounds every partial sum, marginal and
//! doubled lower bound the search can form.

use std::cmp::Ordering as CmpOrdering;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;

use num_integer::Integer;

use super::{Algorithm, SolverConfig};
use crate::error::{Error, Result};
use crate::model::{Solution, WeightedEdgeInstance};
use crate::par;
use crate::rational::Rational;

pub(crate) struct ScaledWeights {
    n: usize,
    size: usize,
    scale: i128,
    w: Vec<i128>,
}

impl ScaledWeights {
    pub(crate) fn new(instance: &WeightedEdgeInstance) -> Result<Self> {
        const OVERFLOW: Error = Error::Overflow("scaling weights to a common denominator");
        let n = instance.vertex_count();
        let mut scale: i128 = 1;
        for r in instance.upper_triangle() {
            let d = r.denom();
            scale = (scale / scale.gcd(&d)).checked_mul(d).ok_or(OVERFLOW)?;
        }
        let mut w = vec![0i128; n * n];
        let mut abs_sum: i128 = 0;
        for i in 0..n {
            for j in i + 1..n {
                let r = instance.weight(i, j);
                let v = r.numer().checked_mul(scale / r.denom()).ok_or(OVERFLOW)?;
                w[i * n + j] = v;
                w[j * n + i] = v;
                abs_sum = v.checked_abs().and_then(|a| abs_sum.checked_add(a)).ok_or(OVERFLOW)?;
            }
        }
        abs_sum.checked_mul(8).ok_or(OVERFLOW)?;
        Ok(ScaledWeights {
            n,
            size: instance.selection_size(),
            scale,
            w,
        })
    }

    fn objective(&self, scaled: i128) -> Rational {
        Rational::new(scaled, self.scale).expect("positive scale")
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> i128 {
        self.w[i * self.n + j]
    }

    /// Doubled lower bound on `partial + cost of picking k more from start..n`.
    ///
    /// Each candidate `v` is charged its marginal against the current
    /// selection plus half of its `k - 1` cheapest links to other candidates;
    /// any completion costs at least the sum of the `k` smallest charges.
    fn doubled_bound(
        &self,
        partial: i128,
        marg: &[i128],
        start: usize,
        k: usize,
        scratch: &mut Vec<i128>,
        charges: &mut Vec<i128>,
    ) -> (i128, u64) {
        debug_assert!(k >= 1 && self.n - start >= k);
        let mut lookups = 0u64;
        charges.clear();
        for v in start..self.n {
            let mut charge = 2 * marg[v];
            if k > 1 {
                scratch.clear();
                let row = &self.w[v * self.n..(v + 1) * self.n];
                scratch.extend((start..self.n).filter(|&u| u != v).map(|u| row[u]));
                lookups += scratch.len() as u64;
                scratch.select_nth_unstable(k - 2);
                charge += scratch[..k - 1].iter().sum::<i128>();
            }
            charges.push(charge);
        }
        charges.select_nth_unstable(k - 1);
        (2 * partial + charges[..k].iter().sum::<i128>(), lookups)
    }

    pub(crate) fn prefix_lower_bound(&self, selected: &[usize]) -> Result<Rational> {
        let k = self.size - selected.len();
        let mut partial = 0;
        let mut marg = vec![0i128; self.n];
        for (a, &i) in selected.iter().enumerate() {
            partial += selected[..a].iter().map(|&j| self.get(i, j)).sum::<i128>();
            for (v, m) in marg.iter_mut().enumerate() {
                if v != i {
                    *m += self.get(i, v);
                }
            }
        }
        if k == 0 {
            return Ok(self.objective(partial));
        }
        let start = selected.last().map_or(0, |&l| l + 1);
        if self.n - start.min(self.n) < k {
            return Err(Error::input("prefix admits no completion"));
        }
        let (b2, _) = self.doubled_bound(partial, &marg, start, k, &mut Vec::new(), &mut Vec::new());
        Rational::new(b2, 2 * self.scale)
    }
}

type Incumbent = Option<(i128, Vec<usize>)>;

fn better(obj: i128, subset: &[usize], than: &Incumbent) -> bool {
    match than {
        None => true,
        Some((best, best_subset)) => (obj, subset) < (*best, best_subset.as_slice()),
    }
}

struct Shared {
    budget: Option<u64>,
    nodes: AtomicU64,
    aborted: AtomicBool,
    incumbent: Mutex<Incumbent>,
}

struct Abort;

struct Search<'a> {
    w: &'a ScaledWeights,
    shared: &'a Shared,
    exhaustive: bool,
    selected: Vec<usize>,
    marg: Vec<i128>,
    partial: i128,
    lookups: u64,
    best: Incumbent,
    scratch: Vec<i128>,
    charges: Vec<i128>,
}

impl<'a> Search<'a> {
    fn new(w: &'a ScaledWeights, shared: &'a Shared, exhaustive: bool) -> Self {
        Search {
            w,
            shared,
            exhaustive,
            selected: Vec::with_capacity(w.size),
            marg: vec![0; w.n],
            partial: 0,
            lookups: 0,
            best: None,
            scratch: Vec::with_capacity(w.n),
            charges: Vec::with_capacity(w.n),
        }
    }

    fn tick(&self) -> std::result::Result<(), Abort> {
        let count = self.shared.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.shared.budget.is_some_and(|b| count > b) {
            self.shared.aborted.store(true, Ordering::Relaxed);
        }
        if self.shared.aborted.load(Ordering::Relaxed) {
            return Err(Abort);
        }
        Ok(())
    }

    fn push(&mut self, v: usize) {
        let n = self.w.n;
        self.partial += self.marg[v];
        self.selected.push(v);
        let row = &self.w.w[v * n..(v + 1) * n];
        for u in v + 1..n {
            self.marg[u] += row[u];
        }
        self.lookups += (n - v - 1) as u64;
    }

    fn pop(&mut self) {
        let n = self.w.n;
        let v = self.selected.pop().expect("non-empty selection");
        let row = &self.w.w[v * n..(v + 1) * n];
        for u in v + 1..n {
            self.marg[u] -= row[u];
        }
        self.partial -= self.marg[v];
    }

    fn offer(&mut self, obj: i128) {
        if !better(obj, &self.selected, &self.best) {
            return;
        }
        self.best = Some((obj, self.selected.clone()));
        if !self.exhaustive {
            let mut shared = self.shared.incumbent.lock().expect("incumbent lock");
            if better(obj, &self.selected, &shared) {
                *shared = self.best.clone();
            }
        }
    }

    /// True when no completion below this node can beat the shared incumbent
    /// on (objective, subset).
    fn prunable(&mut self, start: usize, k: usize) -> bool {
        let (b2, lookups) =
            self.w
                .doubled_bound(self.partial, &self.marg, start, k, &mut self.scratch, &mut self.charges);
        self.lookups += lookups;
        let shared = self.shared.incumbent.lock().expect("incumbent lock");
        let Some((best, best_subset)) = shared.as_ref() else {
            return false;
        };
        match b2.cmp(&(2 * best)) {
            CmpOrdering::Greater => true,
            CmpOrdering::Less => false,
            CmpOrdering::Equal => {
                let lexmin = self.selected.iter().copied().chain(start..start + k);
                lexmin.cmp(best_subset.iter().copied()) != CmpOrdering::Less
            }
        }
    }

    fn dfs(&mut self, start: usize) -> std::result::Result<(), Abort> {
        let n = self.w.n;
        let k = self.w.size - self.selected.len();
        if k == 0 {
            if self.exhaustive {
                self.tick()?;
            }
            self.offer(self.partial);
            return Ok(());
        }
        if !self.exhaustive {
            self.tick()?;
            if self.prunable(start, k) {
                return Ok(());
            }
        }
        let last = n - k;
        if k == 1 {
            for v in start..=last {
                if self.exhaustive {
                    self.tick()?;
                }
                self.selected.push(v);
                self.offer(self.partial + self.marg[v]);
                self.selected.pop();
            }
            return Ok(());
        }
        for v in start..=last {
            self.push(v);
            let r = self.dfs(v + 1);
            self.pop();
            r?;
        }
        Ok(())
    }
}

/// Sorted prefixes of length `depth` that still admit a completion, in
/// lexicographic order.
fn prefixes(n: usize, size: usize, depth: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(depth);
    fn rec(n: usize, size: usize, depth: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == depth {
            out.push(cur.clone());
            return;
        }
        let remaining = size - cur.len();
        for v in start..=n - remaining {
            cur.push(v);
            rec(n, size, depth, v + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, size, depth, 0, &mut cur, &mut out);
    out
}

pub(crate) fn search(w: &ScaledWeights, config: &SolverConfig) -> Result<Solution> {
    let exhaustive = config.algorithm == Algorithm::Exhaustive;
    let shared = Shared {
        budget: config.node_budget,
        nodes: AtomicU64::new(0),
        aborted: AtomicBool::new(false),
        incumbent: Mutex::new(None),
    };
    let mut lookups = 0u64;
    if !exhaustive {
        let (obj, subset, greedy_lookups) = greedy_scaled(w);
        lookups += greedy_lookups;
        *shared.incumbent.lock().expect("incumbent lock") = Some((obj, subset));
    }

    let outcomes: Vec<(bool, Incumbent, u64)> = if config.parallel_workers > 1 && par::parallel_enabled() {
        let tasks = prefixes(w.n, w.size, w.size.min(2));
        par::map_ordered(tasks, config.parallel_workers, |prefix| {
            let mut s = Search::new(w, &shared, exhaustive);
            for &v in &prefix {
                s.push(v);
            }
            let start = prefix.last().map_or(0, |&l| l + 1);
            let ok = s.dfs(start).is_ok();
            (ok, s.best, s.lookups)
        })
    } else {
        let mut s = Search::new(w, &shared, exhaustive);
        let ok = s.dfs(0).is_ok();
        vec![(ok, s.best, s.lookups)]
    };

    let mut best = shared.incumbent.lock().expect("incumbent lock").clone();
    let mut completed = true;
    for (ok, local, local_lookups) in outcomes {
        completed &= ok;
        lookups += local_lookups;
        if let Some((obj, subset)) = local {
            if better(obj, &subset, &best) {
                best = Some((obj, subset));
            }
        }
    }
    let nodes = shared.nodes.load(Ordering::Relaxed);
    let to_solution = |(obj, selected): (i128, Vec<usize>), proven_optimal| Solution {
        selected,
        objective: w.objective(obj),
        proven_optimal,
        pair_evaluations: lookups,
        nodes_explored: nodes,
    };
    if !completed || shared.aborted.load(Ordering::Relaxed) {
        return Err(Error::BudgetExhausted {
            budget: config.node_budget.unwrap_or(u64::MAX),
            nodes,
            incumbent: best.map(|b| Box::new(to_solution(b, false))),
        });
    }
    let best = best.expect("a complete search visits at least one subset");
    Ok(to_solution(best, true))
}

/// Multi-start cheapest insertion: from every start vertex, repeatedly add
/// the vertex with the smallest marginal cost (lowest index on ties).
fn greedy_scaled(w: &ScaledWeights) -> (i128, Vec<usize>, u64) {
    let n = w.n;
    let mut best: Incumbent = None;
    let mut lookups = 0u64;
    let mut marg = vec![0i128; n];
    let mut taken = vec![false; n];
    for start in 0..n {
        marg.fill(0);
        taken.fill(false);
        let mut total = 0i128;
        let mut sel = Vec::with_capacity(w.size);
        let mut v = start;
        loop {
            total += marg[v];
            taken[v] = true;
            sel.push(v);
            if sel.len() == w.size {
                break;
            }
            for u in 0..n {
                marg[u] += w.get(v, u);
            }
            lookups += n as u64;
            v = (0..n)
                .filter(|&u| !taken[u])
                .min_by_key(|&u| (marg[u], u))
                .expect("selection_size < vertex_count");
        }
        sel.sort_unstable();
        if better(total, &sel, &best) {
            best = Some((total, sel));
        }
    }
    let (obj, sel) = best.expect("at least one vertex");
    (obj, sel, lookups)
}

pub(crate) fn greedy(w: &ScaledWeights) -> Solution {
    let (obj, selected, lookups) = greedy_scaled(w);
    Solution {
        selected,
        objective: w.objective(obj),
        proven_optimal: false,
        pair_evaluations: lookups,
        nodes_explored: w.n as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefixes_cover_all_subsets() {
        let p = prefixes(5, 3, 2);
        assert_eq!(p.first().unwrap(), &vec![0, 1]);
        assert_eq!(p.last().unwrap(), &vec![2, 3]);
        assert!(p.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(p.len(), 6);
    }

    #[test]
    fn scale_is_lcm_of_denominators() {
        let w = ["1/4", "1/6", "2"].map(|s| s.parse().unwrap()).to_vec();
        let inst = WeightedEdgeInstance::new(3, w, 2).unwrap();
        let s = ScaledWeights::new(&inst).unwrap();
        assert_eq!(s.scale, 12);
        assert_eq!(s.get(0, 1), 3);
        assert_eq!(s.get(2, 0), 2);
        assert_eq!(s.get(1, 2), 24);
    }

    #[test]
    fn huge_weights_are_rejected() {
        let w = vec![Rational::integer(i128::MAX / 4); 3];
        let inst = WeightedEdgeInstance::new(3, w, 2).unwrap();
        assert!(matches!(ScaledWeights::new(&inst), Err(Error::Overflow(_))));
    }
}
