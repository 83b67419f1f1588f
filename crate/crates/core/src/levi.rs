//! Levi graphs: the bipartite incidence graphs of incidence structures, with
//! the structural analyses used to recognise configurations.

use std::fmt;

use serde::Serialize;

use crate::cycles::Cycle;
use crate::graph::{Graph, GraphError};
use crate::incidence::{IncidenceError, IncidenceStructure};

/// Side of the bipartition. Points are white, blocks are black.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn swapped(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeviGraph {
    name: String,
    graph: Graph,
    colors: Vec<Color>,
}

impl LeviGraph {
    /// One white vertex per point (indices `0..m`), one black vertex per block
    /// (indices `m..m+n`), an edge for each incidence.
    pub fn from_incidence(s: &IncidenceStructure) -> LeviGraph {
        let m = s.point_count();
        let labels = s
            .point_labels()
            .iter()
            .cloned()
            .chain(s.blocks().iter().map(|b| b.label.clone()))
            .collect();
        let edges = s
            .blocks()
            .iter()
            .enumerate()
            .flat_map(|(j, b)| b.points.iter().map(move |&p| (p, m + j)));
        let graph = Graph::new(labels, edges).expect("incidence edges are in range");
        let colors = (0..m)
            .map(|_| Color::White)
            .chain((0..s.block_count()).map(|_| Color::Black))
            .collect();
        LeviGraph {
            name: s.name().to_string(),
            graph,
            colors,
        }
    }

    /// Colours a bipartite graph, white on the side of vertex 0 of each
    /// component.
    pub fn from_bipartite(name: impl Into<String>, graph: Graph) -> Result<LeviGraph, GraphError> {
        let sides = graph.two_coloring()?;
        let colors = sides
            .into_iter()
            .map(|b| if b { Color::Black } else { Color::White })
            .collect();
        Ok(LeviGraph {
            name: name.into(),
            graph,
            colors,
        })
    }

    /// Explicit colouring; fails if an edge joins two vertices of one colour.
    pub fn with_colors(name: impl Into<String>, graph: Graph, colors: Vec<Color>) -> Result<LeviGraph, GraphError> {
        assert_eq!(colors.len(), graph.vertex_count(), "one colour per vertex");
        if let Some((u, _)) = graph.edges().find(|&(u, v)| colors[u] == colors[v]) {
            return Err(GraphError::NotBipartite(u));
        }
        Ok(LeviGraph {
            name: name.into(),
            graph,
            colors,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn label(&self, v: usize) -> &str {
        self.graph.label(v)
    }

    pub fn vertices_of(&self, color: Color) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertex_count()).filter(move |&v| self.colors[v] == color)
    }

    /// Vertex with `label` and `color`.
    pub fn find(&self, label: &str, color: Color) -> Option<usize> {
        self.vertices_of(color).find(|&v| self.label(v) == label)
    }

    /// Vertex with `label`, preferring the black (block) side when a label
    /// occurs on both sides.
    pub fn find_any(&self, label: &str) -> Option<usize> {
        self.find(label, Color::Black)
            .or_else(|| self.find(label, Color::White))
    }

    /// Same graph with white and black exchanged.
    pub fn color_swapped(&self) -> LeviGraph {
        LeviGraph {
            name: self.name.clone(),
            graph: self.graph.clone(),
            colors: self.colors.iter().map(|c| c.swapped()).collect(),
        }
    }

    /// Relabels vertex indices: old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> LeviGraph {
        let mut colors = vec![Color::White; self.vertex_count()];
        for (v, &c) in self.colors.iter().enumerate() {
            colors[perm[v]] = c;
        }
        LeviGraph {
            name: self.name.clone(),
            graph: self.graph.permuted(perm),
            colors,
        }
    }

    /// Recovers the incidence structure: whites become points and blacks
    /// blocks, each in index order.
    pub fn to_incidence(&self) -> Result<IncidenceStructure, IncidenceError> {
        let whites: Vec<usize> = self.vertices_of(Color::White).collect();
        let mut position = vec![usize::MAX; self.vertex_count()];
        for (i, &w) in whites.iter().enumerate() {
            position[w] = i;
        }
        let points = whites.iter().map(|&w| self.label(w).to_string()).collect();
        let blocks = self
            .vertices_of(Color::Black)
            .map(|b| {
                (
                    self.label(b).to_string(),
                    self.graph.neighbors(b).iter().map(|&w| position[w]).collect(),
                )
            })
            .collect();
        IncidenceStructure::new(self.name.clone(), points, blocks)
    }

    pub fn biregularity(&self) -> BiregularityReport {
        let side = |c: Color| {
            let mut count = 0;
            let mut degree: Option<Option<usize>> = None;
            for v in self.vertices_of(c) {
                count += 1;
                let d = self.graph.degree(v);
                degree = match degree {
                    None => Some(Some(d)),
                    Some(Some(e)) if e == d => Some(Some(d)),
                    _ => Some(None),
                };
            }
            (count, degree.unwrap_or(Some(0)))
        };
        let (m, r) = side(Color::White);
        let (n, k) = side(Color::Black);
        let is_biregular = r.is_some() && k.is_some();
        BiregularityReport {
            white_count: m,
            black_count: n,
            white_degree: if is_biregular { r } else { None },
            black_degree: if is_biregular { k } else { None },
            is_biregular,
            is_square: is_biregular && m == n && r == k,
        }
    }

    pub fn girth(&self) -> Girth {
        girth(&self.graph)
    }

    /// Biregular, square, and girth at least six.
    pub fn is_configuration(&self) -> bool {
        let report = self.biregularity();
        report.is_square && self.girth() >= Girth::Finite(6)
    }

    /// All simple 4-cycles, each once in canonical rotation, sorted.
    pub fn tetracycles(&self) -> Vec<Cycle> {
        let g = &self.graph;
        let mut out = Vec::new();
        // Anchor each 4-cycle at its smallest vertex `a`, opposite vertex `c`.
        for a in 0..g.vertex_count() {
            for c in a + 1..g.vertex_count() {
                let common: Vec<usize> = g
                    .neighbors(a)
                    .iter()
                    .copied()
                    .filter(|&x| x > a && g.has_edge(x, c))
                    .collect();
                for (i, &b) in common.iter().enumerate() {
                    for &d in &common[i + 1..] {
                        out.push(Cycle::from_canonical(vec![a, b, c, d]));
                    }
                }
            }
        }
        out.sort();
        out
    }
}

/// Degree data of a bipartite graph, type `{m_r, n_k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BiregularityReport {
    /// m
    pub white_count: usize,
    /// n
    pub black_count: usize,
    /// r: blocks through each point, when uniform.
    pub white_degree: Option<usize>,
    /// k: points on each block, when uniform.
    pub black_degree: Option<usize>,
    pub is_biregular: bool,
    pub is_square: bool,
}

impl BiregularityReport {
    /// `{m_r}` for square types, `{m_r, n_k}` otherwise, `None` if not
    /// biregular.
    pub fn type_symbol(&self) -> Option<String> {
        let (r, k) = (self.white_degree?, self.black_degree?);
        Some(if self.is_square {
            format!("{{{}_{}}}", self.white_count, r)
        } else {
            format!("{{{}_{}, {}_{}}}", self.white_count, r, self.black_count, k)
        })
    }
}

/// Length of a shortest cycle; forests have infinite girth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(n) => write!(f, "{n}"),
            Girth::Infinite => f.write_str("infinite"),
        }
    }
}

/// Girth by breadth-first search from every vertex.
pub fn girth(g: &Graph) -> Girth {
    let n = g.vertex_count();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for s in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[s] = 0;
        parent[s] = usize::MAX;
        queue.clear();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for &v in g.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if parent[u] != v {
                    best = best.min(dist[u] + dist[v] + 1);
                }
            }
        }
    }
    if best == usize::MAX {
        Girth::Infinite
    } else {
        Girth::Finite(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn hexacycle_structure() -> IncidenceStructure {
        IncidenceStructure::new(
            "hexacycle",
            vec!["1".into(), "2".into(), "3".into()],
            vec![
                ("12".into(), vec![0, 1]),
                ("23".into(), vec![1, 2]),
                ("13".into(), vec![0, 2]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn empty_structure_gives_empty_graph() {
        let s = IncidenceStructure::new("empty", vec![], vec![]).unwrap();
        let g = LeviGraph::from_incidence(&s);
        assert_eq!(g.vertex_count(), 0);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.girth(), Girth::Infinite);
    }

    #[test]
    fn single_hexacycle_is_a_configuration() {
        let g = LeviGraph::from_incidence(&hexacycle_structure());
        assert_eq!(g.girth(), Girth::Finite(6));
        assert!(g.is_configuration());
        assert_eq!(g.biregularity().type_symbol().as_deref(), Some("{3_2}"));
    }

    #[test]
    fn path_is_not_biregular() {
        let g = LeviGraph::from_bipartite("path", named::path(4)).unwrap();
        let r = g.biregularity();
        assert!(!r.is_biregular);
        assert_eq!(r.white_degree, None);
        assert_eq!(r.type_symbol(), None);
        assert_eq!(g.girth(), Girth::Infinite);
        assert!(!g.is_configuration());
    }

    #[test]
    fn named_girths() {
        assert_eq!(girth(&named::heawood()), Girth::Finite(6));
        assert_eq!(girth(&named::desargues()), Girth::Finite(6));
        assert_eq!(girth(&named::tutte_eight_cage()), Girth::Finite(8));
        assert_eq!(girth(&named::cycle(5)), Girth::Finite(5));
        assert_eq!(girth(&named::cycle(3)), Girth::Finite(3));
    }

    #[test]
    fn round_trip_through_levi() {
        let s = hexacycle_structure();
        assert_eq!(LeviGraph::from_incidence(&s).to_incidence().unwrap(), s);
    }

    #[test]
    fn heawood_has_no_tetracycles() {
        let g = LeviGraph::from_bipartite("heawood", named::heawood()).unwrap();
        assert!(g.tetracycles().is_empty());
    }

    #[test]
    fn complete_bipartite_tetracycles() {
        // K_{2,3}: choose 2 of the 3 black vertices.
        let graph = Graph::unlabeled(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        let g = LeviGraph::from_bipartite("k23", graph).unwrap();
        assert_eq!(g.tetracycles().len(), 3);
    }

    #[test]
    fn with_colors_rejects_monochrome_edge() {
        let graph = named::path(2);
        assert!(LeviGraph::with_colors("x", graph, vec![Color::White, Color::White]).is_err());
    }
}
