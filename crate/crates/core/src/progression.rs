//! Chord progressions charted as walks through a Levi graph.
//!
//! Chords are resolved to vertices by label. Two consecutive chords are
//! joined when they share a pitch vertex; the walk pivots on that pitch.
//! Degree numerals are accepted in any case, so `vi` resolves to `VI`.

use std::collections::VecDeque;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::levi::LeviGraph;
use crate::music::Degree;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProgressionError {
    #[error("progression is empty")]
    Empty,
    #[error("chord `{0}` is not a vertex of this tonnetz")]
    UnknownChord(String),
    #[error("no walk joins {0} to {1}")]
    NoTrajectory(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Progression {
    chords: Vec<String>,
}

impl Progression {
    pub fn new<S: Into<String>>(chords: impl IntoIterator<Item = S>) -> Result<Progression, ProgressionError> {
        let chords: Vec<String> = chords.into_iter().map(Into::into).collect();
        if chords.is_empty() {
            return Err(ProgressionError::Empty);
        }
        Ok(Progression { chords })
    }

    pub fn chords(&self) -> &[String] {
        &self.chords
    }

    pub fn reversed(&self) -> Progression {
        Progression {
            chords: self.chords.iter().rev().cloned().collect(),
        }
    }

    fn resolve(&self, t: &LeviGraph) -> Result<Vec<usize>, ProgressionError> {
        self.chords
            .iter()
            .map(|c| {
                t.find_any(c)
                    .or_else(|| c.parse::<Degree>().ok().and_then(|d| t.find_any(d.numeral())))
                    .ok_or_else(|| ProgressionError::UnknownChord(c.clone()))
            })
            .collect()
    }
}

/// Comma-separated chord labels.
impl FromStr for Progression {
    type Err = ProgressionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Progression::new(s.split(',').map(str::trim).filter(|c| !c.is_empty()))
    }
}

/// A step between consecutive chords: the shared pitches it can pivot on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub from: String,
    pub to: String,
    pub pivots: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Trajectory {
    /// Vertex labels of the walk; empty when the progression is not
    /// continuous and the walk is not minimal.
    pub path: Vec<String>,
    pub steps: Vec<Step>,
    pub is_continuous: bool,
    pub is_minimal: bool,
    pub is_unique_minimal: bool,
}

impl Trajectory {
    /// Consecutive chord pairs sharing no pitch.
    pub fn breaks(&self) -> impl Iterator<Item = (&str, &str)> {
        self.steps
            .iter()
            .filter(|s| s.pivots.is_empty() && s.from != s.to)
            .map(|s| (s.from.as_str(), s.to.as_str()))
    }

    pub fn hop_count(&self) -> usize {
        self.path.len().saturating_sub(1)
    }
}

fn common_neighbors(g: &Graph, a: usize, b: usize) -> Vec<usize> {
    g.neighbors(a).iter().copied().filter(|&x| g.has_edge(x, b)).collect()
}

fn steps(t: &LeviGraph, vertices: &[usize]) -> Vec<Step> {
    let g = t.graph();
    vertices
        .windows(2)
        .map(|w| Step {
            from: g.label(w[0]).to_string(),
            to: g.label(w[1]).to_string(),
            pivots: common_neighbors(g, w[0], w[1])
                .into_iter()
                .map(|v| g.label(v).to_string())
                .collect(),
        })
        .collect()
}

/// Charts `p` by pivoting on a shared pitch between every consecutive pair
/// (the first shared pitch in vertex order). Repeated chords stay in place.
pub fn chart_progression(t: &LeviGraph, p: &Progression) -> Result<Trajectory, ProgressionError> {
    let vertices = p.resolve(t)?;
    let g = t.graph();
    let steps = steps(t, &vertices);
    let is_continuous = vertices
        .windows(2)
        .all(|w| w[0] == w[1] || !common_neighbors(g, w[0], w[1]).is_empty());
    let mut path = Vec::new();
    if is_continuous {
        path.push(vertices[0]);
        for w in vertices.windows(2) {
            if w[0] != w[1] {
                path.push(common_neighbors(g, w[0], w[1])[0]);
                path.push(w[1]);
            }
        }
    }
    let is_minimal = is_continuous && vertices.windows(2).all(|w| w[0] == w[1] || !g.has_edge(w[0], w[1]));
    Ok(Trajectory {
        path: path.iter().map(|&v| g.label(v).to_string()).collect(),
        steps,
        is_continuous,
        is_minimal,
        is_unique_minimal: false,
    })
}

/// Shortest-path distances from `source` and the number of shortest paths
/// to each vertex (saturating).
fn bfs_counts(g: &Graph, source: usize) -> (Vec<usize>, Vec<u64>) {
    let n = g.vertex_count();
    let mut dist = vec![usize::MAX; n];
    let mut count = vec![0u64; n];
    dist[source] = 0;
    count[source] = 1;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
            if dist[v] == dist[u] + 1 {
                count[v] = count[v].saturating_add(count[u]);
            }
        }
    }
    (dist, count)
}

/// Concatenation of shortest paths between consecutive chords. The walk
/// chosen takes the smallest-index vertex at every fork; uniqueness means
/// every segment has exactly one shortest path.
pub fn minimal_trajectory(t: &LeviGraph, p: &Progression) -> Result<Trajectory, ProgressionError> {
    let vertices = p.resolve(t)?;
    let g = t.graph();
    let mut path = vec![vertices[0]];
    let mut unique = true;
    for w in vertices.windows(2) {
        let (a, b) = (w[0], w[1]);
        if a == b {
            continue;
        }
        // Distances from the target let the walk step greedily towards it.
        let (dist, _) = bfs_counts(g, b);
        if dist[a] == usize::MAX {
            return Err(ProgressionError::NoTrajectory(
                g.label(a).to_string(),
                g.label(b).to_string(),
            ));
        }
        let (_, count) = bfs_counts(g, a);
        unique &= count[b] == 1;
        let mut cur = a;
        while cur != b {
            cur = *g
                .neighbors(cur)
                .iter()
                .find(|&&x| dist[x] + 1 == dist[cur])
                .expect("a neighbour one step closer exists");
            path.push(cur);
        }
    }
    let is_continuous = vertices
        .windows(2)
        .all(|w| w[0] == w[1] || !common_neighbors(g, w[0], w[1]).is_empty());
    Ok(Trajectory {
        path: path.iter().map(|&v| g.label(v).to_string()).collect(),
        steps: steps(t, &vertices),
        is_continuous,
        is_minimal: true,
        is_unique_minimal: unique,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_diatonic_seventh_tonnetz, build_diatonic_triad_tonnetz};
    use crate::music::{PitchClass, Scale};

    fn triad_graph(s: Scale) -> LeviGraph {
        LeviGraph::from_incidence(&build_diatonic_triad_tonnetz(&s).unwrap())
    }

    #[test]
    fn single_chord_is_continuous() {
        let t = triad_graph(Scale::major(PitchClass::C));
        let tr = chart_progression(&t, &"I".parse().unwrap()).unwrap();
        assert!(tr.is_continuous);
        assert_eq!(tr.path, ["I"]);
    }

    #[test]
    fn unknown_and_empty() {
        let t = triad_graph(Scale::major(PitchClass::C));
        assert_eq!(
            chart_progression(&t, &"I,IX".parse().unwrap()),
            Err(ProgressionError::UnknownChord("IX".into()))
        );
        assert_eq!("".parse::<Progression>(), Err(ProgressionError::Empty));
    }

    #[test]
    fn lower_case_numerals_resolve() {
        let t = triad_graph(Scale::major(PitchClass::C));
        assert!(
            chart_progression(&t, &"I,vi,IV".parse().unwrap())
                .unwrap()
                .is_continuous
        );
    }

    #[test]
    fn two_lines_of_the_fano_plane_meet_once() {
        let t = LeviGraph::from_incidence(&build_diatonic_seventh_tonnetz(&Scale::major(PitchClass::C)).unwrap());
        let tr = minimal_trajectory(&t, &"I,V".parse().unwrap()).unwrap();
        assert_eq!(tr.hop_count(), 2);
        assert!(tr.is_unique_minimal);
    }

    #[test]
    fn triads_sharing_two_tones_have_two_minimal_walks() {
        let t = triad_graph(Scale::major(PitchClass::C));
        let tr = minimal_trajectory(&t, &"I,VI".parse().unwrap()).unwrap();
        assert_eq!(tr.hop_count(), 2);
        assert!(!tr.is_unique_minimal);
    }
}
