//! Finite simple graphs.
//!
//! Vertices are named by strings and addressed internally by their position
//! in the vertex list. That position is the fixed total order used for every
//! tie-break downstream (canonical forms, witness selection).

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A set of vertex indices, iterated in vertex order.
pub type VertexSet = BTreeSet<usize>;

/// Edge distance, with a distinguished value for disconnected pairs.
///
/// `Finite(_) < Infinite`, so "diameter at least 2" is a plain comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn at_least(self, n: usize) -> bool {
        self >= Distance::Finite(n)
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u64(*d as u64),
            Distance::Infinite => s.serialize_str("inf"),
        }
    }
}

/// A finite simple graph: no loops, no multi-edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<bool>>,
}

impl SimpleGraph {
    /// Builds a graph from vertex names and name pairs.
    pub fn new<S: AsRef<str>>(names: &[S], edges: &[(S, S)]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|n| n.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(Error::input("vertex names must be nonempty"));
            }
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::input(format!("duplicate vertex `{n}`")));
            }
        }
        let mut pairs = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            let iu = *index
                .get(u.as_ref())
                .ok_or_else(|| Error::UnknownVertex(u.as_ref().to_string()))?;
            let iv = *index
                .get(v.as_ref())
                .ok_or_else(|| Error::UnknownVertex(v.as_ref().to_string()))?;
            pairs.push((iu, iv));
        }
        Self::build(names, index, &pairs)
    }

    /// Builds a graph from vertex names and index pairs.
    pub fn from_indices<S: AsRef<str>>(names: &[S], edges: &[(usize, usize)]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|n| n.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::input(format!("duplicate vertex `{n}`")));
            }
        }
        Self::build(names, index, edges)
    }

    fn build(names: Vec<String>, index: HashMap<String, usize>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        let mut adj = vec![vec![false; n]; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::input(format!("edge ({u}, {v}) out of range")));
            }
            if u == v {
                return Err(Error::input(format!("loop at `{}`", names[u])));
            }
            if adj[u][v] {
                return Err(Error::input(format!(
                    "multi-edge between `{}` and `{}`",
                    names[u], names[v]
                )));
            }
            adj[u][v] = true;
            adj[v][u] = true;
        }
        Ok(SimpleGraph { names, index, adj })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Resolves a list of names to a vertex set.
    pub fn vertex_set<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet> {
        names.iter().map(|n| self.index_of(n.as_ref())).collect()
    }

    pub fn all_vertices(&self) -> VertexSet {
        (0..self.len()).collect()
    }

    pub fn set_names(&self, set: &VertexSet) -> Vec<String> {
        set.iter().map(|&v| self.names[v].clone()).collect()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u][v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&x| x).count()
    }

    /// Edges as index pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if self.adj[u][v] {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    fn check_subset(&self, subset: &VertexSet) -> Result<()> {
        match subset.iter().find(|&&v| v >= self.len()) {
            Some(v) => Err(Error::UnknownVertex(format!("#{v}"))),
            None => Ok(()),
        }
    }

    /// Link of a single vertex.
    pub fn vertex_link(&self, v: usize) -> VertexSet {
        (0..self.len()).filter(|&u| self.adj[v][u]).collect()
    }

    /// Vertices adjacent to every vertex of `subset`.
    ///
    /// The link of the empty set is not defined here and is rejected.
    pub fn link(&self, subset: &VertexSet) -> Result<VertexSet> {
        self.check_subset(subset)?;
        if subset.is_empty() {
            return Err(Error::input("link of the empty vertex set is undefined"));
        }
        Ok((0..self.len())
            .filter(|&u| subset.iter().all(|&v| self.adj[v][u]))
            .collect())
    }

    /// Union of closed neighbourhoods `link(v) ∪ {v}` over `subset`.
    pub fn neighbourhood(&self, subset: &VertexSet) -> Result<VertexSet> {
        self.check_subset(subset)?;
        Ok((0..self.len())
            .filter(|&u| subset.iter().any(|&v| v == u || self.adj[v][u]))
            .collect())
    }

    /// BFS distances from `source`; `None` for unreachable vertices.
    pub fn bfs(&self, source: usize) -> Vec<Option<usize>> {
        let n = self.len();
        let mut dist = vec![None; n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for (v, &edge) in self.adj[u].iter().enumerate() {
                if edge && dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: usize, v: usize) -> Distance {
        match self.bfs(u)[v] {
            Some(d) => Distance::Finite(d),
            None => Distance::Infinite,
        }
    }

    /// Largest edge distance between two vertices; `Infinite` iff disconnected.
    pub fn diameter(&self) -> Result<Distance> {
        if self.is_empty() {
            return Err(Error::input("diameter of the empty graph"));
        }
        let mut best = Distance::Finite(0);
        for u in 0..self.len() {
            for d in self.bfs(u) {
                match d {
                    Some(d) => best = best.max(Distance::Finite(d)),
                    None => return Ok(Distance::Infinite),
                }
            }
        }
        Ok(best)
    }

    pub fn is_connected(&self) -> bool {
        self.is_empty() || self.bfs(0).iter().all(Option::is_some)
    }

    pub fn is_complete(&self) -> bool {
        let n = self.len();
        (0..n).all(|u| (u + 1..n).all(|v| self.adj[u][v]))
    }

    pub fn complement(&self) -> SimpleGraph {
        let n = self.len();
        let adj = (0..n)
            .map(|u| (0..n).map(|v| u != v && !self.adj[u][v]).collect())
            .collect();
        SimpleGraph {
            names: self.names.clone(),
            index: self.index.clone(),
            adj,
        }
    }

    /// A graph is irreducible when its complement is connected.
    pub fn is_irreducible(&self) -> Result<bool> {
        if self.is_empty() {
            return Err(Error::input("irreducibility of the empty graph"));
        }
        Ok(self.complement().is_connected())
    }

    /// Subgraph induced on `subset`; vertex order is inherited.
    pub fn induced_subgraph(&self, subset: &VertexSet) -> Result<SimpleGraph> {
        self.check_subset(subset)?;
        let keep: Vec<usize> = subset.iter().copied().collect();
        let names: Vec<&str> = keep.iter().map(|&v| self.names[v].as_str()).collect();
        let mut edges = Vec::new();
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.adj[u][v] {
                    edges.push((i, j));
                }
            }
        }
        SimpleGraph::from_indices(&names, &edges)
    }

    /// Returns a copy with one extra edge.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<SimpleGraph> {
        let mut edges = self.edges();
        edges.push((u, v));
        SimpleGraph::from_indices(&self.names, &edges)
    }
}
