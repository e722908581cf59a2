//! Undirected simple graphs with stable node labels.
//!
//! Nodes are the integers `0..node_count()`. Removing a node keeps its id as
//! an inert slot so that attack sequences and reports can keep referring to
//! original labels.

mod betweenness;
mod io;
mod metrics;
pub(crate) mod traversal;

pub use betweenness::betweenness;
pub use io::{load_edge_list, parse_edge_list, write_edge_list};
pub use metrics::{metrics, MetricsReport};
pub use traversal::{bfs_distances, connected_components, UNREACHABLE};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    /// Sorted neighbor lists, one per node slot.
    adj: Vec<Vec<usize>>,
    present: Vec<bool>,
    active: usize,
    edges: usize,
}

impl Graph {
    /// Edgeless graph on `n` nodes.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            present: vec![true; n],
            active: n,
            edges: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Inserts the undirected edge `u-v`. Self-loops, parallel edges and
    /// endpoints outside the graph are rejected.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.adj.len();
        if u >= n || v >= n {
            return Err(Error::param(format!(
                "edge {u}-{v} has an endpoint outside 0..{n}"
            )));
        }
        if !self.present[u] {
            return Err(Error::NodeAbsent(u));
        }
        if !self.present[v] {
            return Err(Error::NodeAbsent(v));
        }
        if u == v {
            return Err(Error::SelfLoop { line: 0, node: u });
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => {
                return Err(Error::DuplicateEdge {
                    line: 0,
                    u: u.min(v),
                    v: u.max(v),
                })
            }
            Err(pos) => self.adj[u].insert(pos, v),
        }
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
        self.edges += 1;
        Ok(())
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        let Ok(pu) = self.adj[u].binary_search(&v) else {
            return false;
        };
        self.adj[u].remove(pu);
        let pv = self.adj[v].binary_search(&u).expect("adjacency is symmetric");
        self.adj[v].remove(pv);
        self.edges -= 1;
        true
    }

    /// Number of node slots, including removed ones.
    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    /// Number of nodes not yet removed.
    pub fn active_count(&self) -> usize {
        self.active
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn is_present(&self, v: usize) -> bool {
        self.present.get(v).copied().unwrap_or(false)
    }

    /// Ids of nodes still present, ascending.
    pub fn nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.present
            .iter()
            .enumerate()
            .filter_map(|(v, &p)| p.then_some(v))
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Removes `v` and its incident edges in place. The id stays allocated.
    pub fn remove_node(&mut self, v: usize) -> Result<()> {
        if !self.is_present(v) {
            return Err(Error::NodeAbsent(v));
        }
        let ns = std::mem::take(&mut self.adj[v]);
        for &u in &ns {
            let pos = self.adj[u].binary_search(&v).expect("adjacency is symmetric");
            self.adj[u].remove(pos);
        }
        self.edges -= ns.len();
        self.present[v] = false;
        self.active -= 1;
        Ok(())
    }

    /// Copy of the graph with `v` removed.
    pub fn without_node(&self, v: usize) -> Result<Graph> {
        let mut g = self.clone();
        g.remove_node(v)?;
        Ok(g)
    }

    /// Graph with node `v` renamed to `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.node_count();
        if perm.len() != n {
            return Err(Error::param("permutation length differs from node count"));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::param("not a permutation"));
            }
        }
        let mut g = Graph::from_edges(n, self.edges().map(|(u, v)| (perm[u], perm[v])))?;
        for v in 0..n {
            if !self.present[v] {
                g.remove_node(perm[v])?;
            }
        }
        Ok(g)
    }
}
