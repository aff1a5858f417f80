//! Property tests for the model, reduction and solver invariants.

mod common;

use clustermin::reductions::{cluster_to_weighted_edge, udg_to_cluster};
use clustermin::solvers::{
    energy, greedy_upper_bound, solve_cluster_min, solve_udg_independent_set, solve_weighted_edge,
};
use clustermin::toolkit::io::{instance_from_json, instance_to_json};
use clustermin::verify::{check_solution, excess_equals_conflicts};
use clustermin::{
    unit_disk_graph, Algorithm, ClusterMinInstance, Instance, PointSet, RadialPotential, Rational, SolverConfig,
    UdgInstance, WeightedEdgeInstance,
};
use common::*;
use itertools::Itertools;
use proptest::prelude::*;

fn points(dim: usize, max_n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-20i64..=20, dim), 2..=max_n)
}

fn udg_instance(max_n: usize) -> impl Strategy<Value = UdgInstance> {
    (points(2, max_n), 1u128..=60, 1u64..=3).prop_flat_map(|(pts, threshold, res)| {
        let n = pts.len();
        (1..n).prop_map(move |k| UdgInstance::new(PointSet::new(2, res, &pts).unwrap(), threshold, k).unwrap())
    })
}

fn weighted_instance(max_n: usize) -> impl Strategy<Value = WeightedEdgeInstance> {
    (3..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (prop::collection::vec((-4i128..=6, 1i128..=3), pairs), 1..n).prop_map(move |(ws, k)| {
            let ws = ws.into_iter().map(|(p, q)| Rational::new(p, q).unwrap()).collect();
            WeightedEdgeInstance::new(n, ws, k).unwrap()
        })
    })
}

fn is_triangle(a: u128, b: u128, c: u128) -> bool {
    // sqrt(c) <= sqrt(a) + sqrt(b)  <=>  c <= a + b or (c - a - b)^2 <= 4ab
    c <= a + b || (c - a - b) * (c - a - b) <= 4 * a * b
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distances_symmetric_and_metric(pts in points(3, 8)) {
        let s = PointSet::new(3, 1, &pts).unwrap();
        let n = s.len();
        for (i, j, k) in (0..n).cartesian_product(0..n).cartesian_product(0..n).map(|((i, j), k)| (i, j, k)) {
            let (ij, jk, ik) = (s.squared_distance(i, j).unwrap(), s.squared_distance(j, k).unwrap(), s.squared_distance(i, k).unwrap());
            prop_assert_eq!(ij, s.squared_distance(j, i).unwrap());
            prop_assert_eq!(ij, brute_d2(&s, i, j));
            prop_assert!(is_triangle(ij, jk, ik));
        }
    }

    #[test]
    fn translation_preserves_energy(pts in points(3, 7), shift in prop::collection::vec(-1000i64..=1000, 3), t in 1u128..50) {
        let s = PointSet::new(3, 1, &pts).unwrap();
        let moved = s.translate(&shift).unwrap();
        let n = s.len();
        for (i, j) in (0..n).tuple_combinations() {
            prop_assert_eq!(s.squared_distance(i, j).unwrap(), moved.squared_distance(i, j).unwrap());
        }
        let k = n - 1;
        let u = RadialPotential::conflict_step(t);
        let a = ClusterMinInstance::new(s, k, u.clone()).unwrap();
        let b = ClusterMinInstance::new(moved, k, u).unwrap();
        let sel: Vec<usize> = (0..k).collect();
        prop_assert_eq!(energy(&a, &sel).unwrap(), energy(&b, &sel).unwrap());
    }

    #[test]
    fn potential_constant_between_breakpoints(mut bps in prop::collection::btree_set(0u128..200, 1..5), probe in 0u128..250) {
        let bps: Vec<u128> = std::mem::take(&mut bps).into_iter().collect();
        let values: Vec<Rational> = (0..=bps.len() as i128).map(Rational::integer).collect();
        let u = RadialPotential::new(bps.clone(), values).unwrap();
        // every probe in (b[k-1], b[k]] maps to values[k]
        let k = bps.iter().position(|&b| probe <= b).unwrap_or(bps.len());
        prop_assert_eq!(u.value(probe), Rational::integer(k as i128));
        if k < bps.len() {
            prop_assert_eq!(u.value(bps[k]), u.value(probe));
        }
    }

    #[test]
    fn udg_graph_symmetric_loop_free(inst in udg_instance(9)) {
        let g = unit_disk_graph(&inst);
        let adj = g.adjacency_matrix();
        let n = g.vertex_count();
        for i in 0..n {
            prop_assert!(!adj[i * n + i]);
            for j in 0..n {
                prop_assert_eq!(adj[i * n + j], adj[j * n + i]);
            }
        }
    }

    #[test]
    fn excess_identity_on_any_selection(inst in udg_instance(10), seed in any::<u64>()) {
        let mut g = rng(seed);
        let sel = random_selection(&mut g, inst.centers().len(), inst.target_size());
        prop_assert!(excess_equals_conflicts(&inst, &sel).unwrap());
    }

    #[test]
    fn energy_permutation_invariant(inst in udg_instance(9), seed in any::<u64>()) {
        let (cluster, _) = udg_to_cluster(&inst).unwrap();
        let mut g = rng(seed);
        let sel = random_selection(&mut g, inst.centers().len(), inst.target_size());
        let mut sorted = sel.clone();
        sorted.sort_unstable();
        let (e1, c1) = energy(&cluster, &sel).unwrap();
        let (e2, c2) = energy(&cluster, &sorted).unwrap();
        prop_assert_eq!(e1, e2);
        let k = sel.len() as u64;
        prop_assert_eq!((c1, c2), (k * (k - 1) / 2, k * (k - 1) / 2));
    }

    #[test]
    fn exact_solvers_agree_with_oracle(w in weighted_instance(9)) {
        let oracle = brute_min(w.vertex_count(), w.selection_size(), |t| pair_sum(t, |i, j| w.weight(i, j)));
        let greedy = greedy_upper_bound(&w).unwrap();
        prop_assert!(greedy.objective >= oracle.0);
        prop_assert!(!greedy.proven_optimal);
        for alg in [Algorithm::Exhaustive, Algorithm::BranchAndBound] {
            for workers in [1, 3] {
                let s = solve_weighted_edge(&w, &SolverConfig::new(alg).with_workers(workers)).unwrap();
                prop_assert!(s.proven_optimal);
                prop_assert_eq!(&(s.objective, s.selected.clone()), &oracle);
                prop_assert!(check_solution(&Instance::WeightedEdge(w.clone()), &s).unwrap());
            }
        }
    }

    #[test]
    fn cluster_reduction_preserves_argmin(inst in udg_instance(9)) {
        let (cluster, _) = udg_to_cluster(&inst).unwrap();
        let weighted = cluster_to_weighted_edge(&cluster).unwrap();
        let a = solve_cluster_min(&cluster, &SolverConfig::default()).unwrap();
        let b = solve_weighted_edge(&weighted, &SolverConfig::default()).unwrap();
        prop_assert_eq!((&a.selected, a.objective), (&b.selected, b.objective));
        prop_assert!(weighted.upper_triangle().iter().all(|&x| x == Rational::ONE || x == Rational::integer(2)));
        prop_assert!(check_solution(&Instance::ClusterMin(cluster), &a).unwrap());
    }

    #[test]
    fn native_udg_solutions_check(inst in udg_instance(9)) {
        for alg in [Algorithm::Exhaustive, Algorithm::BranchAndBound, Algorithm::Greedy] {
            let s = solve_udg_independent_set(&inst, &SolverConfig::new(alg)).unwrap();
            prop_assert!(check_solution(&Instance::UdgIs(inst.clone()), &s).unwrap());
        }
    }

    #[test]
    fn instance_json_roundtrip(w in weighted_instance(6), inst in udg_instance(6)) {
        let (cluster, _) = udg_to_cluster(&inst).unwrap();
        for x in [Instance::WeightedEdge(w), Instance::UdgIs(inst), Instance::ClusterMin(cluster)] {
            prop_assert_eq!(instance_from_json(&instance_to_json(&x, None)).unwrap(), x);
        }
    }
}
