//! Exhaustive simple-cycle enumeration, Hamiltonian cycles, and cycle tables
//! classified by p-number against a reference Hamiltonian "perimeter".
//!
//! The p-number of a cycle is the number of its edges that are not edges of
//! the perimeter. On a cubic graph the non-perimeter edges (the chords) form
//! a perfect matching, so a cycle of length `l` has p-number at most `l / 2`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

/// Enumeration works on vertex bitmasks.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycleError {
    #[error("graph has {0} vertices; cycle enumeration is limited to {MAX_VERTICES}")]
    TooLarge(usize),
    #[error("not a cycle of this graph: {0}")]
    NotACycle(String),
    #[error("cycle of length {len} is not Hamiltonian on {vertices} vertices")]
    NotHamiltonian { len: usize, vertices: usize },
    #[error("cycle does not belong to the reference graph: {0}")]
    ForeignCycle(String),
    #[error("unknown vertex label `{0}`")]
    UnknownLabel(String),
    #[error("row totals differ from the target table at length {length}: graph has {actual}, target has {expected}")]
    RowTotalsMismatch {
        length: usize,
        actual: usize,
        expected: usize,
    },
}

/// A simple cycle, stored in canonical form: starts at its smallest vertex
/// and runs in the direction whose second vertex is smaller. This is the
/// lexicographically smallest of its rotations and reflections.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Cycle {
    vertices: Vec<usize>,
}

impl Cycle {
    /// Validates that `vertices` is a simple cycle of `g` (length at least 3)
    /// and canonicalizes it.
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Cycle, CycleError> {
        let n = vertices.len();
        let describe = || format!("{vertices:?}");
        if n < 3 {
            return Err(CycleError::NotACycle(describe()));
        }
        let mut seen = vec![false; g.vertex_count()];
        for &v in &vertices {
            if v >= g.vertex_count() || std::mem::replace(&mut seen[v], true) {
                return Err(CycleError::NotACycle(describe()));
            }
        }
        for i in 0..n {
            if !g.has_edge(vertices[i], vertices[(i + 1) % n]) {
                return Err(CycleError::NotACycle(describe()));
            }
        }
        Ok(Cycle::from_canonical(canonicalize(vertices)))
    }

    /// Cycle through the vertices carrying `labels`, in order.
    pub fn from_labels<S: AsRef<str>>(g: &Graph, labels: &[S]) -> Result<Cycle, CycleError> {
        let vertices = labels
            .iter()
            .map(|l| {
                g.index_of(l.as_ref())
                    .ok_or_else(|| CycleError::UnknownLabel(l.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Cycle::new(g, vertices)
    }

    pub(crate) fn from_canonical(vertices: Vec<usize>) -> Cycle {
        debug_assert_eq!(canonicalize(vertices.clone()), vertices);
        Cycle { vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    /// Consecutive pairs, closing back to the start.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn labels<'g>(&self, g: &'g Graph) -> Vec<&'g str> {
        self.vertices.iter().map(|&v| g.label(v)).collect()
    }

    /// `⟨a, b, c, a⟩` style rendering with vertex labels.
    pub fn display_with(&self, g: &Graph) -> String {
        let mut labels = self.labels(g);
        if let Some(&first) = labels.first() {
            labels.push(first);
        }
        format!("<{}>", labels.join(", "))
    }

    /// The same cycle after renaming vertex `v` to `perm[v]`.
    pub fn mapped(&self, perm: &[usize]) -> Cycle {
        Cycle::from_canonical(canonicalize(self.vertices.iter().map(|&v| perm[v]).collect()))
    }

    /// Same cycle read from `start` (which must lie on it) in the canonical
    /// direction.
    pub fn rotated_to(&self, start: usize) -> Vec<usize> {
        let i = self
            .vertices
            .iter()
            .position(|&v| v == start)
            .expect("start vertex lies on the cycle");
        let mut out = self.vertices[i..].to_vec();
        out.extend_from_slice(&self.vertices[..i]);
        out
    }
}

/// Ascending length, then lexicographic.
impl Ord for Cycle {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.vertices.cmp(&other.vertices))
    }
}

impl PartialOrd for Cycle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

fn canonicalize(mut vertices: Vec<usize>) -> Vec<usize> {
    let n = vertices.len();
    if n == 0 {
        return vertices;
    }
    let min_at = (0..n).min_by_key(|&i| vertices[i]).unwrap();
    vertices.rotate_left(min_at);
    if n > 2 && vertices[n - 1] < vertices[1] {
        vertices[1..].reverse();
    }
    vertices
}

fn check_size(g: &Graph) -> Result<(), CycleError> {
    if g.vertex_count() > MAX_VERTICES {
        Err(CycleError::TooLarge(g.vertex_count()))
    } else {
        Ok(())
    }
}

fn neighbor_masks(g: &Graph) -> Vec<u64> {
    (0..g.vertex_count())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | (1 << u)))
        .collect()
}

/// Depth-first search over simple paths starting at `anchor` through
/// vertices larger than `anchor`. Every cycle whose smallest vertex is
/// `anchor` is reported exactly once, in canonical form.
struct AnchoredSearch<'a, F> {
    masks: &'a [u64],
    anchor: usize,
    /// Only report cycles of this length, and prune longer paths.
    exact_len: Option<usize>,
    path: Vec<usize>,
    visit: F,
}

impl<F: FnMut(&[usize])> AnchoredSearch<'_, F> {
    fn run(&mut self) {
        let allowed = !((1u64 << self.anchor) | ((1u64 << self.anchor) - 1));
        self.path.clear();
        self.path.push(self.anchor);
        let mask = 1u64 << self.anchor;
        self.extend(mask, allowed);
    }

    fn extend(&mut self, visited: u64, allowed: u64) {
        let last = *self.path.last().unwrap();
        let len = self.path.len();
        let mut candidates = self.masks[last] & allowed & !visited;
        while candidates != 0 {
            let v = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            self.path.push(v);
            let new_len = len + 1;
            let closes = self.masks[v] & (1u64 << self.anchor) != 0;
            if closes && new_len >= 3 && self.path[1] < v {
                match self.exact_len {
                    Some(l) if l != new_len => {}
                    _ => (self.visit)(&self.path),
                }
            }
            if self.exact_len.is_none_or(|l| new_len < l) {
                self.extend(visited | (1u64 << v), allowed);
            }
            self.path.pop();
        }
    }
}

fn collect_cycles(g: &Graph, exact_len: Option<usize>) -> Result<Vec<Cycle>, CycleError> {
    check_size(g)?;
    let masks = neighbor_masks(g);
    let mut cycles: Vec<Cycle> = (0..g.vertex_count())
        .into_par_iter()
        .flat_map_iter(|anchor| {
            let mut found = Vec::new();
            AnchoredSearch {
                masks: &masks,
                anchor,
                exact_len,
                path: Vec::with_capacity(g.vertex_count()),
                visit: |p: &[usize]| found.push(Cycle::from_canonical(p.to_vec())),
            }
            .run();
            found
        })
        .collect();
    cycles.par_sort_unstable();
    Ok(cycles)
}

/// Every simple cycle of `g`, once each, ascending by length then
/// lexicographically.
pub fn enumerate_cycles(g: &Graph) -> Result<Vec<Cycle>, CycleError> {
    collect_cycles(g, None)
}

/// Every Hamiltonian cycle of `g`, in canonical order.
pub fn enumerate_hamiltonians(g: &Graph) -> Result<Vec<Cycle>, CycleError> {
    check_size(g)?;
    let n = g.vertex_count();
    if n < 3 {
        return Ok(Vec::new());
    }
    // Every Hamiltonian cycle passes through vertex 0, its smallest vertex.
    let masks = neighbor_masks(g);
    let mut found = Vec::new();
    AnchoredSearch {
        masks: &masks,
        anchor: 0,
        exact_len: Some(n),
        path: Vec::with_capacity(n),
        visit: |p: &[usize]| found.push(Cycle::from_canonical(p.to_vec())),
    }
    .run();
    found.sort_unstable();
    Ok(found)
}

/// Histogram of cycle lengths.
pub fn length_histogram(cycles: &[Cycle]) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for c in cycles {
        *out.entry(c.len()).or_insert(0) += 1;
    }
    out
}

/// A Hamiltonian cycle chosen as the perimeter; every other edge is a chord.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceHamiltonian {
    cycle: Cycle,
    position: Vec<usize>,
    adjacency: Vec<u64>,
    chords: Vec<(usize, usize)>,
}

impl ReferenceHamiltonian {
    pub fn new(g: &Graph, cycle: Cycle) -> Result<ReferenceHamiltonian, CycleError> {
        check_size(g)?;
        let n = g.vertex_count();
        if cycle.len() != n {
            return Err(CycleError::NotHamiltonian {
                len: cycle.len(),
                vertices: n,
            });
        }
        // Re-validate against this graph.
        let cycle = Cycle::new(g, cycle.vertices)?;
        let mut position = vec![0; n];
        for (i, &v) in cycle.vertices().iter().enumerate() {
            position[v] = i;
        }
        let mut reference = ReferenceHamiltonian {
            cycle,
            position,
            adjacency: neighbor_masks(g),
            chords: Vec::new(),
        };
        reference.chords = g.edges().filter(|&(u, v)| !reference.is_perimeter_edge(u, v)).collect();
        Ok(reference)
    }

    pub fn from_labels<S: AsRef<str>>(g: &Graph, labels: &[S]) -> Result<ReferenceHamiltonian, CycleError> {
        ReferenceHamiltonian::new(g, Cycle::from_labels(g, labels)?)
    }

    pub fn cycle(&self) -> &Cycle {
        &self.cycle
    }

    /// Edges of the graph off the perimeter, as `(u, v)` with `u < v`.
    pub fn chords(&self) -> &[(usize, usize)] {
        &self.chords
    }

    pub fn is_perimeter_edge(&self, u: usize, v: usize) -> bool {
        let n = self.position.len();
        let (a, b) = (self.position[u], self.position[v]);
        (a + 1) % n == b || (b + 1) % n == a
    }

    /// Number of edges of `c` that are not perimeter edges.
    pub fn p_number(&self, c: &Cycle) -> Result<usize, CycleError> {
        let n = self.position.len();
        let mut chords = 0;
        for (u, v) in c.edges() {
            if u >= n || v >= n || self.adjacency[u] & (1u64 << v) == 0 {
                return Err(CycleError::ForeignCycle(c.to_string()));
            }
            if !self.is_perimeter_edge(u, v) {
                chords += 1;
            }
        }
        Ok(chords)
    }
}

/// Counts of cycles by length and p-number.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct CycleTable {
    /// length -> p -> count; zero counts are never stored.
    rows: BTreeMap<usize, BTreeMap<usize, usize>>,
}

impl CycleTable {
    pub fn new() -> CycleTable {
        CycleTable::default()
    }

    /// Builds a table from dense rows: `(length, counts indexed by p)`.
    pub fn from_rows<'a, I>(rows: I) -> CycleTable
    where
        I: IntoIterator<Item = (usize, &'a [usize])>,
    {
        let mut t = CycleTable::new();
        for (len, counts) in rows {
            for (p, &c) in counts.iter().enumerate() {
                t.add(len, p, c);
            }
        }
        t
    }

    pub fn add(&mut self, length: usize, p: usize, count: usize) {
        if count > 0 {
            *self.rows.entry(length).or_default().entry(p).or_insert(0) += count;
        }
    }

    pub fn count(&self, length: usize, p: usize) -> usize {
        self.rows.get(&length).and_then(|r| r.get(&p)).copied().unwrap_or(0)
    }

    pub fn lengths(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Largest p with a nonzero count.
    pub fn max_p(&self) -> Option<usize> {
        self.rows.values().filter_map(|r| r.keys().next_back().copied()).max()
    }

    pub fn row_total(&self, length: usize) -> usize {
        self.rows.get(&length).map_or(0, |r| r.values().sum())
    }

    pub fn column_total(&self, p: usize) -> usize {
        self.rows.values().filter_map(|r| r.get(&p)).sum()
    }

    pub fn grand_total(&self) -> usize {
        self.rows.values().flat_map(|r| r.values()).sum()
    }

    pub fn row_totals(&self) -> BTreeMap<usize, usize> {
        self.rows.keys().map(|&l| (l, self.row_total(l))).collect()
    }

    /// Dense row `counts[p]` for `p in 0..width`.
    pub fn dense_row(&self, length: usize, width: usize) -> Vec<usize> {
        (0..width).map(|p| self.count(length, p)).collect()
    }
}

/// All cycles of a graph, with each cycle's edge set precomputed as a bitset
/// so tables for many candidate perimeters are cheap.
pub struct CycleCatalog<'g> {
    graph: &'g Graph,
    cycles: Vec<Cycle>,
    words: usize,
    masks: Vec<u64>,
}

impl<'g> CycleCatalog<'g> {
    pub fn build(graph: &'g Graph) -> Result<CycleCatalog<'g>, CycleError> {
        let cycles = enumerate_cycles(graph)?;
        let n = graph.vertex_count();
        let mut edge_id = vec![usize::MAX; n * n];
        for (i, (u, v)) in graph.edges().enumerate() {
            edge_id[u * n + v] = i;
            edge_id[v * n + u] = i;
        }
        let words = graph.edge_count().div_ceil(64).max(1);
        let mut masks = vec![0u64; cycles.len() * words];
        masks
            .par_chunks_mut(words)
            .zip(cycles.par_iter())
            .for_each(|(mask, c)| {
                for (u, v) in c.edges() {
                    let e = edge_id[u * n + v];
                    mask[e / 64] |= 1 << (e % 64);
                }
            });
        Ok(CycleCatalog {
            graph,
            cycles,
            words,
            masks,
        })
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn length_histogram(&self) -> BTreeMap<usize, usize> {
        length_histogram(&self.cycles)
    }

    /// Indices (into [`Self::cycles`]) of the Hamiltonian cycles.
    pub fn hamiltonian_indices(&self) -> Vec<usize> {
        let n = self.graph.vertex_count();
        (0..self.cycles.len()).filter(|&i| self.cycles[i].len() == n).collect()
    }

    fn mask(&self, i: usize) -> &[u64] {
        &self.masks[i * self.words..(i + 1) * self.words]
    }

    fn table_for_mask(&self, perimeter: &[u64]) -> CycleTable {
        let mut t = CycleTable::new();
        for (i, c) in self.cycles.iter().enumerate() {
            let on: u32 = self
                .mask(i)
                .iter()
                .zip(perimeter)
                .map(|(a, b)| (a & b).count_ones())
                .sum();
            t.add(c.len(), c.len() - on as usize, 1);
        }
        t
    }

    /// Table for the Hamiltonian at `index` in [`Self::cycles`].
    pub fn table_for_index(&self, index: usize) -> CycleTable {
        self.table_for_mask(self.mask(index))
    }

    pub fn table(&self, reference: &ReferenceHamiltonian) -> CycleTable {
        let mut t = CycleTable::new();
        for c in &self.cycles {
            let p = reference.p_number(c).expect("catalog cycles belong to the graph");
            t.add(c.len(), p, 1);
        }
        t
    }

    /// First Hamiltonian (in canonical order) whose table equals `target`.
    pub fn find_reference(&self, target: &CycleTable) -> Result<Option<ReferenceHamiltonian>, CycleError> {
        let actual = self.length_histogram();
        let expected = target.row_totals();
        for l in actual.keys().chain(expected.keys()) {
            let (a, e) = (
                actual.get(l).copied().unwrap_or(0),
                expected.get(l).copied().unwrap_or(0),
            );
            if a != e {
                return Err(CycleError::RowTotalsMismatch {
                    length: *l,
                    actual: a,
                    expected: e,
                });
            }
        }
        let hams = self.hamiltonian_indices();
        let hit = hams.par_iter().position_first(|&i| &self.table_for_index(i) == target);
        hit.map(|k| ReferenceHamiltonian::new(self.graph, self.cycles[hams[k]].clone()))
            .transpose()
    }
}

/// Table of all cycles of `g` against `reference`.
pub fn cycle_table(g: &Graph, reference: &ReferenceHamiltonian) -> Result<CycleTable, CycleError> {
    Ok(CycleCatalog::build(g)?.table(reference))
}

/// Searches the Hamiltonians of `g` for one whose p-distribution reproduces
/// `target` exactly. Fails if the length histogram of `g` differs from the
/// row totals of `target`.
pub fn find_reference_hamiltonian(g: &Graph, target: &CycleTable) -> Result<Option<ReferenceHamiltonian>, CycleError> {
    CycleCatalog::build(g)?.find_reference(target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn canonical_form_is_smallest_rotation_or_reflection() {
        assert_eq!(canonicalize(vec![3, 1, 2, 0]), vec![0, 2, 1, 3]);
        assert_eq!(canonicalize(vec![2, 0, 1]), vec![0, 1, 2]);
        assert_eq!(canonicalize(vec![1, 0, 2]), vec![0, 1, 2]);
    }

    #[test]
    fn cycle_validation() {
        let g = named::cycle(4);
        assert!(Cycle::new(&g, vec![0, 1, 2, 3]).is_ok());
        assert!(Cycle::new(&g, vec![0, 2, 1, 3]).is_err());
        assert!(Cycle::new(&g, vec![0, 1]).is_err());
        assert!(Cycle::new(&g, vec![0, 1, 2, 3, 0]).is_err());
    }

    #[test]
    fn single_hexacycle_has_one_hamiltonian() {
        let g = named::cycle(6);
        assert_eq!(enumerate_cycles(&g).unwrap().len(), 1);
        assert_eq!(enumerate_hamiltonians(&g).unwrap().len(), 1);
    }

    #[test]
    fn complete_graph_cycle_counts() {
        // K4: four triangles and three 4-cycles.
        let g = Graph::unlabeled(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let h = length_histogram(&enumerate_cycles(&g).unwrap());
        assert_eq!(h, BTreeMap::from([(3, 4), (4, 3)]));
    }

    #[test]
    fn size_guard() {
        let g = named::cycle(65);
        assert_eq!(enumerate_cycles(&g), Err(CycleError::TooLarge(65)));
    }

    #[test]
    fn perimeter_has_p_zero() {
        let g = named::heawood();
        let perimeter = Cycle::new(&g, (0..14).collect()).unwrap();
        let r = ReferenceHamiltonian::new(&g, perimeter.clone()).unwrap();
        assert_eq!(r.p_number(&perimeter).unwrap(), 0);
        assert_eq!(r.chords().len(), 7);
    }

    #[test]
    fn foreign_cycle_is_rejected() {
        let g = named::heawood();
        let r = ReferenceHamiltonian::new(&g, Cycle::new(&g, (0..14).collect()).unwrap()).unwrap();
        let other = named::cycle(14);
        let c = Cycle::new(&other, vec![0, 13, 12, 11, 10, 9, 8, 7, 6, 5, 4, 3, 2, 1]).unwrap();
        assert!(r.p_number(&c).is_ok());
        let bogus = Cycle::from_canonical(vec![0, 2, 4]);
        assert!(matches!(r.p_number(&bogus), Err(CycleError::ForeignCycle(_))));
    }

    #[test]
    fn non_hamiltonian_reference_rejected() {
        let g = named::heawood();
        let short = Cycle::new(&g, vec![0, 1, 2, 3, 4, 5]);
        // 0..5 plus the chord 5->0 exists in LCF [5,-5]: vertex 0 jumps to 5.
        let short = short.unwrap();
        assert!(matches!(
            ReferenceHamiltonian::new(&g, short),
            Err(CycleError::NotHamiltonian { len: 6, vertices: 14 })
        ));
    }

    #[test]
    fn table_totals() {
        let t = CycleTable::from_rows([(6, &[0, 7, 14, 7][..]), (8, &[0, 0, 7, 14][..])]);
        assert_eq!(t.row_total(6), 28);
        assert_eq!(t.column_total(2), 21);
        assert_eq!(t.grand_total(), 49);
        assert_eq!(t.max_p(), Some(3));
        assert_eq!(t.dense_row(8, 5), vec![0, 0, 7, 14, 0]);
    }
}
