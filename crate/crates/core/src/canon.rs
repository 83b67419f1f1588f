//! Canonical labelling of vertex-coloured graphs by colour refinement and
//! individualization, with automorphism pruning.
//!
//! Two coloured graphs have equal certificates iff there is an isomorphism
//! between them preserving the order of colours (colours enter the
//! certificate by rank, so callers comparing graphs with different palettes
//! must compare palettes too).
//!
//! The search explores the individualization tree, keeps the leaf with the
//! smallest certificate, and prunes with the automorphisms found whenever two
//! leaves produce the same certificate.

use std::collections::BTreeMap;

use crate::graph::Graph;
use crate::levi::{Color, LeviGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    certificate: Vec<u8>,
    /// `labeling[v]` is the canonical position of vertex `v`.
    labeling: Vec<usize>,
}

impl CanonicalForm {
    pub fn certificate(&self) -> &[u8] {
        &self.certificate
    }

    pub fn labeling(&self) -> &[usize] {
        &self.labeling
    }

    /// Vertex at canonical position `i` for every `i`.
    pub fn inverse_labeling(&self) -> Vec<usize> {
        invert(&self.labeling)
    }
}

fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (v, &p) in perm.iter().enumerate() {
        inv[p] = v;
    }
    inv
}

/// Replaces colour values by their rank among the distinct values.
fn ranks<T: Ord + Clone>(values: &[T]) -> Vec<u32> {
    let mut distinct: Vec<T> = values.to_vec();
    distinct.sort();
    distinct.dedup();
    values
        .iter()
        .map(|v| distinct.binary_search(v).unwrap() as u32)
        .collect()
}

fn class_count(colors: &[u32]) -> usize {
    colors.iter().map(|&c| c as usize + 1).max().unwrap_or(0)
}

/// Refines to the coarsest equitable partition finer than `colors`. The new
/// ranks order classes by (old colour, neighbour colour multiset), so the
/// result is invariant under relabelling.
fn refine(g: &Graph, mut colors: Vec<u32>) -> Vec<u32> {
    let mut classes = class_count(&colors);
    loop {
        let signatures: Vec<(u32, Vec<u32>)> = (0..g.vertex_count())
            .map(|v| {
                let mut ns: Vec<u32> = g.neighbors(v).iter().map(|&u| colors[u]).collect();
                ns.sort_unstable();
                (colors[v], ns)
            })
            .collect();
        let next = ranks(&signatures);
        let next_classes = class_count(&next);
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

fn individualize(g: &Graph, colors: &[u32], v: usize) -> Vec<u32> {
    let split: Vec<u32> = colors
        .iter()
        .enumerate()
        .map(|(u, &c)| 2 * c + u32::from(u != v))
        .collect();
    refine(g, ranks(&split))
}

/// First smallest non-singleton cell, by colour.
fn target_cell(colors: &[u32]) -> Option<Vec<usize>> {
    let mut cells: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colors.iter().enumerate() {
        cells.entry(c).or_default().push(v);
    }
    cells.into_values().filter(|c| c.len() > 1).min_by_key(|c| c.len())
}

struct Leaf {
    path: Vec<usize>,
    labeling: Vec<usize>,
    certificate: Vec<u32>,
}

struct Search<'a> {
    g: &'a Graph,
    /// Initial colour ranks.
    base: Vec<u32>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn certificate(&self, labeling: &[usize]) -> Vec<u32> {
        let n = labeling.len();
        let mut out = Vec::with_capacity(1 + n + 2 * self.g.edge_count());
        out.push(n as u32);
        let inv = invert(labeling);
        out.extend(inv.iter().map(|&v| self.base[v]));
        let mut edges: Vec<(u32, u32)> = self
            .g
            .edges()
            .map(|(u, v)| {
                let (a, b) = (labeling[u] as u32, labeling[v] as u32);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        for (a, b) in edges {
            out.push(a);
            out.push(b);
        }
        out
    }

    /// Explores the subtree below `path`. Returns `Some(d)` to unwind to
    /// depth `d` after an automorphism shows the rest of this subtree is
    /// equivalent to one already explored.
    fn visit(&mut self, colors: Vec<u32>, path: &mut Vec<usize>) -> Option<usize> {
        let Some(cell) = target_cell(&colors) else {
            return self.leaf(&colors, path);
        };
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cell {
            if !explored.is_empty() && self.equivalent_to_explored(path, &explored, v) {
                continue;
            }
            explored.push(v);
            path.push(v);
            let jump = self.visit(individualize(self.g, &colors, v), path);
            path.pop();
            if let Some(d) = jump {
                if d < path.len() {
                    return Some(d);
                }
            }
        }
        None
    }

    fn leaf(&mut self, colors: &[u32], path: &[usize]) -> Option<usize> {
        let labeling: Vec<usize> = colors.iter().map(|&c| c as usize).collect();
        let certificate = self.certificate(&labeling);
        let leaf = Leaf {
            path: path.to_vec(),
            labeling,
            certificate,
        };
        let Some(first) = &self.first else {
            self.best = Some(Leaf {
                path: leaf.path.clone(),
                labeling: leaf.labeling.clone(),
                certificate: leaf.certificate.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        let best = self.best.as_ref().unwrap();
        for reference in [first, best] {
            if reference.certificate == leaf.certificate {
                // reference^-1 . leaf maps this leaf's path onto the reference path.
                let inv = invert(&reference.labeling);
                let gamma: Vec<usize> = leaf.labeling.iter().map(|&p| inv[p]).collect();
                let common = reference
                    .path
                    .iter()
                    .zip(&leaf.path)
                    .take_while(|(a, b)| a == b)
                    .count();
                if gamma.iter().enumerate().any(|(v, &w)| v != w) {
                    self.automorphisms.push(gamma);
                }
                return Some(common);
            }
        }
        if leaf.certificate < best.certificate {
            self.best = Some(leaf);
        }
        None
    }

    /// Whether `v` lies in the orbit of an explored sibling under the
    /// automorphisms found so far that fix `path` pointwise.
    fn equivalent_to_explored(&self, path: &[usize], explored: &[usize], v: usize) -> bool {
        let n = self.g.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.automorphisms {
            if path.iter().any(|&p| gamma[p] != p) {
                continue;
            }
            any = true;
            for (a, &b) in gamma.iter().enumerate() {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&u| find(&mut parent, u) == rv)
    }
}

/// Canonical form of `g` with vertex colours `colors`.
pub fn canonical_form<C: Ord + Clone>(g: &Graph, colors: &[C]) -> CanonicalForm {
    assert_eq!(colors.len(), g.vertex_count(), "one colour per vertex");
    let base = ranks(colors);
    let mut search = Search {
        g,
        base: base.clone(),
        first: None,
        best: None,
        automorphisms: Vec::new(),
    };
    let start = refine(g, base.clone());
    search.visit(start, &mut Vec::new());
    let best = search.best.expect("the search reaches at least one leaf");
    let certificate = best.certificate.iter().flat_map(|x| x.to_le_bytes()).collect();
    CanonicalForm {
        certificate,
        labeling: best.labeling,
    }
}

/// A colour-preserving isomorphism `g1 -> g2`, as `map[v1] = v2`.
pub fn isomorphism<C: Ord + Clone>(g1: &Graph, c1: &[C], g2: &Graph, c2: &[C]) -> Option<Vec<usize>> {
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return None;
    }
    let mut p1 = c1.to_vec();
    let mut p2 = c2.to_vec();
    p1.sort();
    p2.sort();
    if p1 != p2 {
        return None;
    }
    let f1 = canonical_form(g1, c1);
    let f2 = canonical_form(g2, c2);
    if f1.certificate != f2.certificate {
        return None;
    }
    let inv2 = f2.inverse_labeling();
    let map: Vec<usize> = f1.labeling.iter().map(|&p| inv2[p]).collect();
    debug_assert!(g1.edges().all(|(u, v)| g2.has_edge(map[u], map[v])));
    Some(map)
}

/// An automorphism of the coloured graph sending `from` to `to`, if any.
pub fn map_vertex<C: Ord + Clone>(g: &Graph, colors: &[C], from: usize, to: usize) -> Option<Vec<usize>> {
    let mark = |x: usize| -> Vec<(C, bool)> { colors.iter().enumerate().map(|(v, c)| (c.clone(), v != x)).collect() };
    isomorphism(g, &mark(from), g, &mark(to))
}

/// Orbits of the automorphism group on `vertices`, each sorted, ordered by
/// smallest member.
pub fn orbits_of<C: Ord + Clone>(g: &Graph, colors: &[C], vertices: &[usize]) -> Vec<Vec<usize>> {
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for &v in vertices {
        match orbits.iter_mut().find(|o| map_vertex(g, colors, o[0], v).is_some()) {
            Some(o) => o.push(v),
            None => orbits.push(vec![v]),
        }
    }
    orbits
}

fn color_codes(g: &LeviGraph) -> Vec<u8> {
    g.colors()
        .iter()
        .map(|c| match c {
            Color::White => 0,
            Color::Black => 1,
        })
        .collect()
}

impl LeviGraph {
    /// Canonical form with points and blocks kept apart. The certificate
    /// starts with the point count so that structures with no blocks and
    /// structures with no points differ.
    pub fn canonical_form(&self) -> CanonicalForm {
        let mut form = canonical_form(self.graph(), &color_codes(self));
        let whites = self.vertices_of(Color::White).count() as u32;
        let mut certificate = whites.to_le_bytes().to_vec();
        certificate.append(&mut form.certificate);
        form.certificate = certificate;
        form
    }
}

/// A vertex bijection `a -> b` preserving adjacency. With `respect_colors`
/// points must go to points; otherwise points may go to blocks as a whole.
pub fn are_isomorphic(a: &LeviGraph, b: &LeviGraph, respect_colors: bool) -> Option<Vec<usize>> {
    let (ca, cb) = (color_codes(a), color_codes(b));
    if let Some(m) = isomorphism(a.graph(), &ca, b.graph(), &cb) {
        return Some(m);
    }
    if respect_colors {
        return None;
    }
    let swapped: Vec<u8> = cb.iter().map(|c| 1 - c).collect();
    isomorphism(a.graph(), &ca, b.graph(), &swapped)
}
