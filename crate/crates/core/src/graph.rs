//! Plain adjacency-list graphs with DOT and JSON edge-list exchange.
//!
//! Vertices are `0..n`. Undirected graphs keep symmetric neighbour lists and
//! report each edge once as `(min, max)`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("adjacency of an undirected graph is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("cannot combine a directed and an undirected graph")]
    MixedDirectedness,
    #[error("permutation of length {found} does not match {expected} vertices")]
    BadPermutation { expected: usize, found: usize },
    #[error("invalid edge list: {0}")]
    Json(String),
}

/// Serialized form `{n_vertices, directed, edges}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeList {
    pub n_vertices: usize,
    pub directed: bool,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    directed: bool,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn from_edges(n: usize, directed: bool, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::InvalidVertex { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            if !directed {
                adj[v].push(u);
            }
        }
        Ok(Self::normalized(directed, adj))
    }

    /// Takes out-neighbour lists; undirected input must already be symmetric.
    pub fn from_adjacency(directed: bool, adj: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        let n = adj.len();
        for (u, list) in adj.iter().enumerate() {
            for &v in list {
                if v >= n {
                    return Err(GraphError::InvalidVertex { vertex: v, n });
                }
                if u == v {
                    return Err(GraphError::SelfLoop(u));
                }
            }
        }
        let g = Self::normalized(directed, adj);
        if !directed {
            for u in 0..n {
                for &v in &g.adj[u] {
                    if !g.has_edge(v, u) {
                        return Err(GraphError::NotSymmetric(u, v));
                    }
                }
            }
        }
        Ok(g)
    }

    fn normalized(directed: bool, mut adj: Vec<Vec<usize>>) -> Self {
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Graph { directed, adj }
    }

    /// `C_n`, directed or not. `n >= 3` for the undirected cycle to be simple.
    pub fn cycle(n: usize, directed: bool) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, directed, &edges).expect("valid cycle")
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n).map(|u| (0..n).filter(|&v| v != u).collect()).collect();
        Graph { directed: false, adj }
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges: Vec<_> = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
        Self::from_edges(a + b, false, &edges).expect("valid bipartite graph")
    }

    /// The `d`-cube `Q_d` on bit strings of length `d`.
    pub fn hypercube(d: u32) -> Self {
        let n = 1usize << d;
        let adj = (0..n).map(|u| (0..d).map(|b| u ^ (1 << b)).collect()).collect();
        Self::normalized(false, adj)
    }

    pub fn n_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Arcs of a digraph, or edges `(u, v)` with `u < v` of a graph.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if self.directed || u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        let arcs: usize = self.adj.iter().map(Vec::len).sum();
        if self.directed {
            arcs
        } else {
            arcs / 2
        }
    }

    /// The underlying undirected graph.
    pub fn support(&self) -> Graph {
        if !self.directed {
            return self.clone();
        }
        let mut adj = self.adj.clone();
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                adj[v].push(u);
            }
        }
        Self::normalized(false, adj)
    }

    /// Components of the underlying undirected graph, each sorted, ordered by
    /// smallest vertex.
    pub fn weak_components(&self) -> Vec<Vec<usize>> {
        let support = self.support();
        let n = self.n_vertices();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in support.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Vertex `(u, v)` gets index `u * n2 + v`.
    pub fn cartesian_product(&self, other: &Graph) -> Result<Graph, GraphError> {
        if self.directed != other.directed {
            return Err(GraphError::MixedDirectedness);
        }
        let n2 = other.n_vertices();
        let mut adj = Vec::with_capacity(self.n_vertices() * n2);
        for u1 in 0..self.n_vertices() {
            for u2 in 0..n2 {
                let mut list: Vec<usize> = self.adj[u1].iter().map(|&v1| v1 * n2 + u2).collect();
                list.extend(other.adj[u2].iter().map(|&v2| u1 * n2 + v2));
                adj.push(list);
            }
        }
        Ok(Self::normalized(self.directed, adj))
    }

    /// The graph with vertex `v` renamed `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        let n = self.n_vertices();
        if perm.len() != n {
            return Err(GraphError::BadPermutation {
                expected: n,
                found: perm.len(),
            });
        }
        let mut adj = vec![Vec::new(); n];
        for (u, list) in self.adj.iter().enumerate() {
            adj[perm[u]] = list.iter().map(|&v| perm[v]).collect();
        }
        Ok(Self::normalized(self.directed, adj))
    }

    /// Subgraph spanned by `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n_vertices()];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&u| {
                self.adj[u]
                    .iter()
                    .filter(|&&v| pos[v] != usize::MAX)
                    .map(|&v| pos[v])
                    .collect()
            })
            .collect();
        Self::normalized(self.directed, adj)
    }

    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        let n = self.n_vertices();
        if perm.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut hit[p], true) {
                return false;
            }
        }
        (0..n).all(|u| {
            self.adj[u].len() == self.adj[perm[u]].len()
                && self.adj[u].iter().all(|&v| self.has_edge(perm[u], perm[v]))
        })
    }

    pub fn to_edge_list(&self) -> EdgeList {
        EdgeList {
            n_vertices: self.n_vertices(),
            directed: self.directed,
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn from_edge_list(list: &EdgeList) -> Result<Graph, GraphError> {
        let edges: Vec<_> = list.edges.iter().map(|e| (e[0], e[1])).collect();
        Self::from_edges(list.n_vertices, list.directed, &edges)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_edge_list()).expect("edge list serializes")
    }

    pub fn from_json(text: &str) -> Result<Graph, GraphError> {
        let list: EdgeList = serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        Self::from_edge_list(&list)
    }

    /// DOT source; `labels[v]`, when given, becomes the vertex label.
    pub fn to_dot(&self, name: &str, labels: Option<&[String]>) -> String {
        let (kind, arrow) = if self.directed {
            ("digraph", "->")
        } else {
            ("graph", "--")
        };
        let mut s = format!("{kind} {name} {{\n");
        if let Some(labels) = labels {
            for (v, l) in labels.iter().enumerate() {
                let _ = writeln!(s, "  {v} [label=\"{l}\"];");
            }
        }
        for (u, v) in self.edges() {
            let _ = writeln!(s, "  {u} {arrow} {v};");
        }
        s.push_str("}\n");
        s
    }
}
