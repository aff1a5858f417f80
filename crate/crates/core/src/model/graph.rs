use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Undirected simple graph over vertex ids `0..vertex_count`.
///
/// Edges are stored normalized as `(min, max)`, so `(i, j)` and `(j, i)` name
/// the same edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn empty(vertex_count: usize) -> Self {
        Graph {
            vertex_count,
            edges: BTreeSet::new(),
        }
    }

    pub fn complete(vertex_count: usize) -> Self {
        let mut g = Graph::empty(vertex_count);
        for i in 0..vertex_count {
            for j in i + 1..vertex_count {
                g.edges.insert((i, j));
            }
        }
        g
    }

    /// Builds a graph, rejecting self-loops, out-of-range ids and duplicates
    /// (including a pair listed in both orientations).
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::empty(vertex_count);
        for (i, j) in edges {
            if !g.insert_edge(i, j)? {
                return Err(Error::input(format!("duplicate edge ({i}, {j})")));
            }
        }
        Ok(g)
    }

    /// Inserts an edge; returns `false` if it was already present.
    pub fn insert_edge(&mut self, i: usize, j: usize) -> Result<bool> {
        if i == j {
            return Err(Error::input(format!("self-loop on vertex {i}")));
        }
        if i >= self.vertex_count || j >= self.vertex_count {
            return Err(Error::input(format!(
                "edge ({i}, {j}) references a vertex outside 0..{}",
                self.vertex_count
            )));
        }
        Ok(self.edges.insert((i.min(j), i.max(j))))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i.min(j), i.max(j)))
    }

    /// Dense adjacency matrix, row-major.
    pub fn adjacency_matrix(&self) -> Vec<bool> {
        let n = self.vertex_count;
        let mut adj = vec![false; n * n];
        for &(i, j) in &self.edges {
            adj[i * n + j] = true;
            adj[j * n + i] = true;
        }
        adj
    }
}
