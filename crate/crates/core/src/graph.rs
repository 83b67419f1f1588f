//! Small undirected simple graphs with labelled vertices.
//!
//! Every tonnetz in this crate is small (a few hundred vertices at most), so
//! adjacency lists kept sorted are enough for all the analyses built on top.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({0}, {1}) references a vertex outside 0..{2}")]
    VertexOutOfRange(usize, usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph is not bipartite (odd cycle through vertex {0})")]
    NotBipartite(usize),
}

/// An undirected simple graph. Vertex `v` is labelled `labels[v]`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from labels and an edge list. Parallel edges collapse.
    pub fn new<I>(labels: Vec<String>, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = labels.len();
        let mut sets = vec![BTreeSet::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange(u, v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            sets[u].insert(v);
            sets[v].insert(u);
        }
        let adjacency = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        Ok(Graph { labels, adjacency })
    }

    /// Unlabelled graph on `n` vertices; labels are the decimal indices.
    pub fn unlabeled<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Graph::new((0..n).map(|i| i.to_string()).collect(), edges)
    }

    /// Cubic Hamiltonian graph from LCF notation: vertices `0..n` on a cycle,
    /// vertex `i` additionally joined to `i + jumps[i % jumps.len()]`.
    pub fn from_lcf(jumps: &[i64], repeats: usize) -> Self {
        let n = jumps.len() * repeats;
        let mut edges = Vec::with_capacity(n * 2);
        for i in 0..n {
            edges.push((i, (i + 1) % n));
            let j = (i as i64 + jumps[i % jumps.len()]).rem_euclid(n as i64) as usize;
            edges.push((i, j));
        }
        Graph::unlabeled(n, edges).expect("LCF jumps stay in range")
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().copied().filter(move |&v| u < v).map(move |v| (u, v)))
    }

    /// First vertex carrying `label`.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Relabels vertex indices: old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let n = self.vertex_count();
        assert_eq!(perm.len(), n, "permutation length");
        let mut labels = vec![String::new(); n];
        for v in 0..n {
            labels[perm[v]] = self.labels[v].clone();
        }
        Graph::new(labels, self.edges().map(|(u, v)| (perm[u], perm[v]))).expect("permutation of a valid graph")
    }

    /// Proper two-colouring (`false` on the side of the smallest vertex of each
    /// component), or the vertex where an odd cycle was detected.
    pub fn two_coloring(&self) -> Result<Vec<bool>, GraphError> {
        let n = self.vertex_count();
        let mut side: Vec<Option<bool>> = vec![None; n];
        let mut stack = Vec::new();
        for root in 0..n {
            if side[root].is_some() {
                continue;
            }
            side[root] = Some(false);
            stack.push(root);
            while let Some(u) = stack.pop() {
                let su = side[u].unwrap();
                for &v in self.neighbors(u) {
                    match side[v] {
                        None => {
                            side[v] = Some(!su);
                            stack.push(v);
                        }
                        Some(sv) if sv == su => return Err(GraphError::NotBipartite(v)),
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(side.into_iter().map(|s| s.unwrap()).collect())
    }

    /// BFS distances from `source`; `usize::MAX` marks unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        let mut queue = std::collections::VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &v in self.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || self.distances_from(0).iter().all(|&d| d != usize::MAX)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.vertex_count())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Well-known cubic graphs, built independently of any incidence structure so
/// they can serve as isomorphism targets.
pub mod named {
    use super::Graph;

    /// The Heawood graph, LCF `[5, -5]^7`.
    pub fn heawood() -> Graph {
        Graph::from_lcf(&[5, -5], 7)
    }

    /// The Desargues graph, LCF `[5, -5, 9, -9]^5`.
    pub fn desargues() -> Graph {
        Graph::from_lcf(&[5, -5, 9, -9], 5)
    }

    /// Tutte's 8-cage, LCF `[-13, -9, 7, -7, 9, 13]^5`.
    pub fn tutte_eight_cage() -> Graph {
        Graph::from_lcf(&[-13, -9, 7, -7, 9, 13], 5)
    }

    /// The cycle graph on `n` vertices.
    pub fn cycle(n: usize) -> Graph {
        Graph::unlabeled(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle")
    }

    /// The path on `n` vertices.
    pub fn path(n: usize) -> Graph {
        Graph::unlabeled(n, (1..n).map(|i| (i - 1, i))).expect("path")
    }
}
