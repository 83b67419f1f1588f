//! Chromatic triad structures: the Eulerian fused-triad tonnetz, the
//! pitch-class graph it is dual to, the pitch-to-triad structures, and the
//! tripartite tonnetz combining all three.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::cycles::{enumerate_cycles, Cycle, CycleError, ReferenceHamiltonian};
use crate::graph::Graph;
use crate::incidence::IncidenceStructure;
use crate::levi::{Color, LeviGraph};
use crate::music::{Chord, PitchClass, PitchSet, Quality};

fn triads(quality: Quality) -> Vec<Chord> {
    PitchClass::all().map(|p| Chord::new(p, quality)).collect()
}

fn labels<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(ToString::to_string).collect()
}

/// Major triads as points, minor triads as blocks; a major and a minor triad
/// are incident when they share exactly two tones.
pub fn build_eulerian_tonnetz() -> IncidenceStructure {
    let majors = triads(Quality::Major);
    let minors = triads(Quality::Minor);
    let blocks = minors
        .iter()
        .map(|m| {
            let members = majors
                .iter()
                .enumerate()
                .filter(|(_, x)| x.pitch_set().intersection(m.pitch_set()).len() == 2)
                .map(|(i, _)| i)
                .collect();
            (m.to_string(), members)
        })
        .collect();
    IncidenceStructure::new("eulerian", labels(&majors), blocks).expect("valid triad structure")
}

/// Triads of one quality as points, pitch classes as blocks, by containment.
pub fn build_pitch_to_triad_tonnetz(quality: Quality) -> IncidenceStructure {
    assert!(
        matches!(quality, Quality::Major | Quality::Minor),
        "pitch-to-triad structures take major or minor triads"
    );
    let chords = triads(quality);
    let blocks = PitchClass::all()
        .map(|p| {
            let members = chords
                .iter()
                .enumerate()
                .filter(|(_, c)| c.pitch_set().contains(p))
                .map(|(i, _)| i)
                .collect();
            (p.to_string(), members)
        })
        .collect();
    let name = match quality {
        Quality::Major => "pitch-to-major",
        _ => "pitch-to-minor",
    };
    IncidenceStructure::new(name, labels(&chords), blocks).expect("valid triad structure")
}

/// Perimeter of the fused-triad graph: the chain of relative and
/// leading-tone moves CM, Am, FM, Dm, BbM, ... ending at Em. The chords
/// off it are the parallel pairs XM-Xm.
pub fn eulerian_perimeter_labels() -> Vec<String> {
    (0..12)
        .flat_map(|i| {
            let root = PitchClass::new(5 * i);
            [
                Chord::major(root).to_string(),
                Chord::minor(root.transpose(-3)).to_string(),
            ]
        })
        .collect()
}

/// Perimeter of a pitch-to-triad graph: C, CM, G, GM, D, DM, ... around the
/// circle of fifths (Cm, Gm, ... for minor triads).
pub fn pitch_to_triad_perimeter_labels(quality: Quality) -> Vec<String> {
    (0..12)
        .flat_map(|i| {
            let p = PitchClass::new(7 * i);
            [p.to_string(), Chord::new(p, quality).to_string()]
        })
        .collect()
}

/// The twelve pitch classes joined by consonant intervals (3, 4, 5, 7, 8 or
/// 9 semitones), with the 24 consonant triads as faces.
#[derive(Debug, Clone)]
pub struct PitchClassGraph {
    graph: Graph,
    faces: Vec<Chord>,
}

pub const CONSONANT_INTERVALS: [u8; 6] = [3, 4, 5, 7, 8, 9];

pub fn build_pitch_class_graph() -> PitchClassGraph {
    let pcs: Vec<PitchClass> = PitchClass::all().collect();
    let mut edges = Vec::new();
    for a in 0..12 {
        for b in a + 1..12 {
            if CONSONANT_INTERVALS.contains(&pcs[a].interval_to(pcs[b])) {
                edges.push((a, b));
            }
        }
    }
    let graph = Graph::new(labels(&pcs), edges).expect("valid pitch-class graph");
    let mut faces = triads(Quality::Major);
    faces.extend(triads(Quality::Minor));
    PitchClassGraph { graph, faces }
}

impl PitchClassGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn faces(&self) -> &[Chord] {
        &self.faces
    }

    pub fn neighbors(&self, p: PitchClass) -> Vec<PitchClass> {
        self.graph
            .neighbors(p.value() as usize)
            .iter()
            .map(|&v| PitchClass::new(v as i32))
            .collect()
    }

    /// Faces containing both ends of the edge.
    pub fn faces_on_edge(&self, a: PitchClass, b: PitchClass) -> Vec<Chord> {
        self.faces
            .iter()
            .copied()
            .filter(|f| f.pitch_set().contains(a) && f.pitch_set().contains(b))
            .collect()
    }

    /// Every triangle of mutually adjacent pitch classes, as pitch sets.
    /// Besides the consonant faces this includes the augmented triads.
    pub fn triangles(&self) -> Vec<PitchSet> {
        let g = &self.graph;
        let mut out = Vec::new();
        for (a, b) in g.edges() {
            for &c in g.neighbors(b) {
                if c > b && g.has_edge(a, c) {
                    out.push([a, b, c].iter().map(|&v| PitchClass::new(v as i32)).collect());
                }
            }
        }
        out
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualityError {
    #[error("pitch edge {0}-{1} does not lie on exactly one major and one minor face")]
    EdgeFaces(PitchClass, PitchClass),
    #[error("pitch edge {0}-{1} has no matching Levi edge {2}-{3}")]
    MissingLeviEdge(PitchClass, PitchClass, String, String),
    #[error("Levi edge {0}-{1} corresponds to no pitch edge")]
    UnmatchedLeviEdge(String, String),
    #[error("face {0} has no Levi vertex")]
    MissingFace(String),
    #[error("the triads containing {0} do not form a hexacycle")]
    VertexHexacycle(PitchClass),
    #[error("edge counts differ: {pitch} pitch edges, {levi} Levi edges")]
    EdgeCount { pitch: usize, levi: usize },
}

/// The verified correspondences between the pitch-class graph and the
/// fused-triad Levi graph.
#[derive(Debug, Clone, Serialize)]
pub struct DualityReport {
    /// Pitch edge and the (major, minor) Levi edge it corresponds to.
    pub edges: Vec<((PitchClass, PitchClass), (String, String))>,
    /// Each pitch class and the hexacycle of the six triads containing it.
    pub vertex_hexacycles: Vec<(PitchClass, Vec<String>)>,
}

/// Checks that pitch edges, Levi edges, faces and hexacycles correspond.
pub fn check_duality(pg: &PitchClassGraph, levi: &LeviGraph) -> Result<DualityReport, DualityError> {
    let g = pg.graph();
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        let (a, b) = (PitchClass::new(u as i32), PitchClass::new(v as i32));
        let faces = pg.faces_on_edge(a, b);
        let major = faces.iter().find(|f| f.quality == Quality::Major);
        let minor = faces.iter().find(|f| f.quality == Quality::Minor);
        let (Some(major), Some(minor), 2) = (major, minor, faces.len()) else {
            return Err(DualityError::EdgeFaces(a, b));
        };
        let (ml, nl) = (major.to_string(), minor.to_string());
        let linked = match (levi.find(&ml, Color::White), levi.find(&nl, Color::Black)) {
            (Some(x), Some(y)) => levi.graph().has_edge(x, y),
            _ => false,
        };
        if !linked {
            return Err(DualityError::MissingLeviEdge(a, b, ml, nl));
        }
        edges.push(((a, b), (ml, nl)));
    }
    for face in pg.faces() {
        if levi.find_any(&face.to_string()).is_none() {
            return Err(DualityError::MissingFace(face.to_string()));
        }
    }
    // Converse: every Levi edge is the image of the pitch edge its two
    // triads share.
    for (x, y) in levi.graph().edges() {
        let parse = |v: usize| levi.label(v).parse::<Chord>().ok();
        let shared = match (parse(x), parse(y)) {
            (Some(c), Some(d)) => c.pitch_set().intersection(d.pitch_set()),
            _ => PitchSet::EMPTY,
        };
        let tones: Vec<PitchClass> = shared.iter().collect();
        let is_edge = tones.len() == 2 && g.has_edge(tones[0].value() as usize, tones[1].value() as usize);
        if !is_edge {
            return Err(DualityError::UnmatchedLeviEdge(
                levi.label(x).to_string(),
                levi.label(y).to_string(),
            ));
        }
    }
    if g.edge_count() != levi.edge_count() {
        return Err(DualityError::EdgeCount {
            pitch: g.edge_count(),
            levi: levi.edge_count(),
        });
    }
    let mut vertex_hexacycles = Vec::new();
    for p in PitchClass::all() {
        let members: Vec<usize> = pg
            .faces()
            .iter()
            .filter(|f| f.pitch_set().contains(p))
            .filter_map(|f| levi.find_any(&f.to_string()))
            .collect();
        let cycle = induced_cycle(levi.graph(), &members).ok_or(DualityError::VertexHexacycle(p))?;
        vertex_hexacycles.push((p, cycle.labels(levi.graph()).iter().map(|s| s.to_string()).collect()));
    }
    Ok(DualityReport {
        edges,
        vertex_hexacycles,
    })
}

/// The cycle through exactly `vertices` if they induce one.
fn induced_cycle(g: &Graph, vertices: &[usize]) -> Option<Cycle> {
    if vertices.len() < 3 {
        return None;
    }
    let inside = |v: &usize| vertices.contains(v);
    if vertices
        .iter()
        .any(|&v| g.neighbors(v).iter().filter(|u| inside(u)).count() != 2)
    {
        return None;
    }
    let mut order = vec![vertices[0]];
    let mut prev = usize::MAX;
    let mut cur = vertices[0];
    loop {
        let next = *g.neighbors(cur).iter().find(|&&u| inside(&u) && u != prev)?;
        if next == vertices[0] {
            break;
        }
        order.push(next);
        prev = cur;
        cur = next;
    }
    (order.len() == vertices.len())
        .then(|| Cycle::new(g, order).ok())
        .flatten()
}

/// Hexacycles of a pitch-to-major Levi graph grouped by what their three
/// pitch vertices spell.
#[derive(Debug, Clone, Serialize)]
pub struct HexacycleCorrespondence {
    /// 2p-hexacycles and the minor triad of their pitches, by triad root.
    pub minor: Vec<(Vec<String>, Chord)>,
    /// 3p-hexacycles and the augmented triad of their pitches.
    pub augmented: Vec<(Vec<String>, Chord)>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CorrespondenceError {
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error("hexacycle {0} has p-number {1} but its pitches spell {2}")]
    Unexpected(String, usize, String),
    #[error("the 2p-hexacycles do not biject onto the twelve minor triads")]
    NotBijective,
}

/// Reads the minor triads off the 2p-hexacycles (and the augmented triads
/// off the 3p-hexacycles) of the pitch-to-major Levi graph.
pub fn minor_triads_from_hexacycles(
    levi: &LeviGraph,
    reference: &ReferenceHamiltonian,
) -> Result<HexacycleCorrespondence, CorrespondenceError> {
    let g = levi.graph();
    let mut minor = Vec::new();
    let mut augmented = Vec::new();
    for c in enumerate_cycles(g)?.into_iter().filter(|c| c.len() == 6) {
        let p = reference.p_number(&c)?;
        let pitches: PitchSet = c
            .vertices()
            .iter()
            .filter_map(|&v| levi.label(v).parse::<PitchClass>().ok())
            .collect();
        let chord = Chord::identify(pitches);
        let labels: Vec<String> = c.labels(g).iter().map(|s| s.to_string()).collect();
        match (p, chord) {
            (2, Some(ch)) if ch.quality == Quality::Minor => minor.push((labels, ch)),
            (3, Some(ch)) if ch.quality == Quality::Augmented => augmented.push((labels, ch)),
            (2 | 3, _) => {
                return Err(CorrespondenceError::Unexpected(
                    c.display_with(g),
                    p,
                    pitches.to_string(),
                ))
            }
            _ => {}
        }
    }
    minor.sort_by_key(|(_, c)| *c);
    augmented.sort_by_key(|(_, c)| *c);
    let distinct: BTreeMap<Chord, usize> = minor.iter().map(|(_, c)| (*c, 0)).collect();
    if minor.len() != 12 || distinct.len() != 12 {
        return Err(CorrespondenceError::NotBijective);
    }
    Ok(HexacycleCorrespondence { minor, augmented })
}

/// Which of the three classes a tripartite vertex belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TriadClass {
    Pitch,
    Major,
    Minor,
}

/// Pitches (vertices 0..12), major triads (12..24) and minor triads
/// (24..36): pitch-major and pitch-minor by containment, major-minor by
/// sharing two tones.
#[derive(Debug, Clone)]
pub struct TripartiteTonnetz {
    graph: Graph,
}

pub fn build_tripartite_tonnetz() -> TripartiteTonnetz {
    let mut vertex_labels: Vec<String> = PitchClass::all().map(|p| p.to_string()).collect();
    let majors = triads(Quality::Major);
    let minors = triads(Quality::Minor);
    vertex_labels.extend(labels(&majors));
    vertex_labels.extend(labels(&minors));
    let mut edges = Vec::new();
    for p in 0..12 {
        for (i, (m, n)) in majors.iter().zip(&minors).enumerate() {
            let pc = PitchClass::new(p as i32);
            if m.pitch_set().contains(pc) {
                edges.push((p, 12 + i));
            }
            if n.pitch_set().contains(pc) {
                edges.push((p, 24 + i));
            }
        }
    }
    for (i, m) in majors.iter().enumerate() {
        for (j, n) in minors.iter().enumerate() {
            if m.pitch_set().intersection(n.pitch_set()).len() == 2 {
                edges.push((12 + i, 24 + j));
            }
        }
    }
    TripartiteTonnetz {
        graph: Graph::new(vertex_labels, edges).expect("valid tripartite graph"),
    }
}

impl TripartiteTonnetz {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn class_of(&self, v: usize) -> TriadClass {
        match v {
            0..=11 => TriadClass::Pitch,
            12..=23 => TriadClass::Major,
            _ => TriadClass::Minor,
        }
    }

    /// Neighbours of `v` in class `class`.
    pub fn neighbors_in(&self, v: usize, class: TriadClass) -> Vec<usize> {
        self.graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| self.class_of(u) == class)
            .collect()
    }

    /// Whether every vertex has exactly three neighbours in each of the two
    /// other classes and none in its own.
    pub fn degrees_hold(&self) -> bool {
        let classes = [TriadClass::Pitch, TriadClass::Major, TriadClass::Minor];
        (0..self.graph.vertex_count()).all(|v| {
            classes.iter().all(|&c| {
                let expected = if c == self.class_of(v) { 0 } else { 3 };
                self.neighbors_in(v, c).len() == expected
            })
        })
    }

    /// The graph left after deleting the pitch vertices: majors white,
    /// minors black.
    pub fn without_pitches(&self) -> LeviGraph {
        let keep: Vec<usize> = (12..36).collect();
        let edges = self
            .graph
            .edges()
            .filter(|&(u, v)| u >= 12 && v >= 12)
            .map(|(u, v)| (u - 12, v - 12));
        let labels = keep.iter().map(|&v| self.graph.label(v).to_string()).collect();
        let graph = Graph::new(labels, edges).expect("subgraph");
        let colors = (0..24)
            .map(|v| if v < 12 { Color::White } else { Color::Black })
            .collect();
        LeviGraph::with_colors("eulerian", graph, colors).expect("bipartite by construction")
    }
}
