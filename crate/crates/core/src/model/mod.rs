//! Exact domain types: graphs, lattice point sets, radial potentials and the
//! problem instances built from them.

mod graph;
mod instance;
mod points;
mod potential;

pub use graph::Graph;
pub(crate) use instance::check_distinct;
pub use instance::{
    CliqueInstance, ClusterMinInstance, Instance, ProblemKind, Solution, UdgInstance, WeightedEdgeInstance,
};
pub use points::PointSet;
pub use potential::RadialPotential;

/// Conflict graph of a disk instance: edge `(i, j)` iff the squared center
/// distance is at most the conflict threshold (contact counts).
pub fn unit_disk_graph(instance: &UdgInstance) -> Graph {
    let centers = instance.centers();
    let n = centers.len();
    let mut graph = Graph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            let d2 = centers.squared_distance(i, j).expect("valid indices");
            if d2 <= instance.conflict_threshold() {
                graph.insert_edge(i, j).expect("valid edge");
            }
        }
    }
    graph
}

#[cfg(test)]
mod tests {
    use super::*;

    fn udg(pts: &[[i64; 2]], threshold: u128) -> UdgInstance {
        let pts: Vec<Vec<i64>> = pts.iter().map(|p| p.to_vec()).collect();
        UdgInstance::new(PointSet::new(2, 1, &pts).unwrap(), threshold, 1).unwrap()
    }

    #[test]
    fn far_centers_have_no_edges() {
        let g = unit_disk_graph(&udg(&[[0, 0], [3, 0], [0, 3]], 1));
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn contact_is_a_conflict() {
        let g = unit_disk_graph(&udg(&[[0, 0], [1, 0]], 1));
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn coincident_centers_conflict() {
        let g = unit_disk_graph(&udg(&[[2, 2], [2, 2], [9, 9]], 1));
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }
}
