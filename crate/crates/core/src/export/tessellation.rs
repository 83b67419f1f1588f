//! Finite patches of the hexagonal tessellations of the cubic tonnetze.
//!
//! A patch is drawn on a brick-wall honeycomb: site `(r, c)` joins
//! `(r, c ± 1)` and, when `r + c` is even, `(r + 1, c)`. Even sites carry
//! chords and odd sites carry what the chords contain. Every chord names
//! its three neighbours by role: the one to its right, the one to its left
//! and the one below. With roles (root, fifth, third) the triads read
//! along a row ascend by fourths; with (root, third, seventh) the sevenths
//! descend by thirds.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::incidence::IncidenceStructure;
use crate::levi::{Color, LeviGraph};
use crate::music::{Chord, PitchClass, Quality};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TessellationError {
    #[error("no tessellation rule for `{0}`")]
    Unsupported(String),
    #[error("`{0}` has no face-centred tessellation")]
    NoFaceCentres(String),
    #[error("patch needs at least one row and one column")]
    Empty,
    #[error("tessellation rule is inconsistent at site ({0}, {1})")]
    Inconsistent(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    /// Points and blocks alternate on the honeycomb.
    Bipartite,
    /// As bipartite, with the pitch common to each hexagon at its centre.
    FaceCentered,
}

impl std::str::FromStr for Flavor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bipartite" => Ok(Flavor::Bipartite),
            "face-centered" | "face_centered" | "face-centred" => Ok(Flavor::FaceCentered),
            _ => Err(format!("unknown flavor `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Site {
    pub row: usize,
    pub col: usize,
    pub label: String,
    pub is_chord: bool,
    /// Neighbour labels to the right, to the left and vertically.
    pub neighbors: [String; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Face {
    pub row: usize,
    pub col: usize,
    /// Clockwise from the upper left.
    pub corners: [String; 6],
    pub center: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TessellationPatch {
    pub structure: String,
    pub rows: usize,
    pub cols: usize,
    pub flavor: Flavor,
    pub sites: Vec<Site>,
    pub faces: Vec<Face>,
}

/// For each chord label, its (right, left, vertical) neighbour labels.
type Roles = Vec<(String, [String; 3])>;

fn degree_roles(offsets: [usize; 3]) -> Roles {
    (0..7)
        .map(|d| {
            let numeral = crate::music::Degree::new(d as u8 + 1).unwrap().numeral().to_string();
            (numeral, offsets.map(|o| ((d + o) % 7 + 1).to_string()))
        })
        .collect()
}

fn triad_roles(q: Quality) -> Roles {
    PitchClass::all()
        .map(|r| {
            let c = Chord::new(r, q);
            let tone = |i: i32| r.transpose(i).name().to_string();
            let third = if q == Quality::Major { 4 } else { 3 };
            (c.to_string(), [tone(0), tone(7), tone(third)])
        })
        .collect()
}

/// Majors against minors: relative, leading-tone exchange, parallel.
fn eulerian_roles() -> Roles {
    PitchClass::all()
        .map(|r| {
            let minor = |i: i32| Chord::minor(r.transpose(i)).to_string();
            (Chord::major(r).to_string(), [minor(-3), minor(4), minor(0)])
        })
        .collect()
}

fn roles_for(name: &str) -> Result<(Color, Roles), TessellationError> {
    match name {
        "diatonic-triads" => Ok((Color::Black, degree_roles([0, 4, 2]))),
        "diatonic-sevenths" => Ok((Color::Black, degree_roles([0, 2, 6]))),
        "pitch-to-major" => Ok((Color::White, triad_roles(Quality::Major))),
        "pitch-to-minor" => Ok((Color::White, triad_roles(Quality::Minor))),
        "eulerian" => Ok((Color::White, eulerian_roles())),
        _ => Err(TessellationError::Unsupported(name.to_string())),
    }
}

/// Three involutions on the Levi vertices, one per direction.
fn directions(levi: &LeviGraph, chord_side: Color, roles: &Roles) -> Result<[Vec<usize>; 3], TessellationError> {
    let unsupported = || TessellationError::Unsupported(levi.name().to_string());
    let n = levi.vertex_count();
    let mut dirs = [vec![usize::MAX; n], vec![usize::MAX; n], vec![usize::MAX; n]];
    for (chord, targets) in roles {
        let c = levi.find(chord, chord_side).ok_or_else(unsupported)?;
        for (k, t) in targets.iter().enumerate() {
            let v = levi.find(t, chord_side.swapped()).ok_or_else(unsupported)?;
            if !levi.graph().has_edge(c, v) || dirs[k][v] != usize::MAX {
                return Err(unsupported());
            }
            dirs[k][c] = v;
            dirs[k][v] = c;
        }
    }
    if dirs.iter().any(|d| d.contains(&usize::MAX)) {
        return Err(unsupported());
    }
    Ok(dirs)
}

fn face_corners(i: usize, j: usize) -> [(usize, usize); 6] {
    let c0 = 2 * j + i % 2;
    [
        (i, c0),
        (i, c0 + 1),
        (i, c0 + 2),
        (i + 1, c0 + 2),
        (i + 1, c0 + 1),
        (i + 1, c0),
    ]
}

/// A `rows` by `cols` patch of hexagons of the catalog tonnetz `t`.
pub fn tessellation_patch(
    t: &IncidenceStructure,
    rows: usize,
    cols: usize,
    flavor: Flavor,
) -> Result<TessellationPatch, TessellationError> {
    if rows == 0 || cols == 0 {
        return Err(TessellationError::Empty);
    }
    if flavor == Flavor::FaceCentered && t.name() != "eulerian" {
        return Err(TessellationError::NoFaceCentres(t.name().to_string()));
    }
    let levi = LeviGraph::from_incidence(t);
    let (chord_side, roles) = roles_for(t.name())?;
    let [right, left, vertical] = directions(&levi, chord_side, &roles)?;

    // Right, left and vertical moves seen from a site of either parity.
    let step = |v: usize, is_chord: bool, dir: usize| match (dir, is_chord) {
        (0, true) | (1, false) => right[v],
        (0, false) | (1, true) => left[v],
        _ => vertical[v],
    };

    let mut keys: Vec<(usize, usize)> = (0..rows)
        .flat_map(|i| (0..cols).flat_map(move |j| face_corners(i, j)))
        .collect();
    keys.sort_unstable();
    keys.dedup();

    let anchor = levi.find(&roles[0].0, chord_side).expect("role table names vertices");
    let mut label: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    label.insert((0, 0), anchor);
    let width = keys.iter().map(|k| k.1).max().unwrap() + 1;
    for r in 0..=rows {
        if r > 0 {
            // Enter the row through its first vertical edge from above.
            let c = (r - 1) % 2;
            let above = label[&(r - 1, c)];
            label.insert((r, c), step(above, true, 2));
            for c in (0..c).rev() {
                let v = label[&(r, c + 1)];
                label.insert((r, c), step(v, (r + c + 1) % 2 == 0, 1));
            }
        }
        let start = label.keys().filter(|k| k.0 == r).map(|k| k.1).max().unwrap();
        for c in start + 1..width {
            let v = label[&(r, c - 1)];
            label.insert((r, c), step(v, (r + c - 1) % 2 == 0, 0));
        }
    }

    // Every vertical edge of the patch must agree with the rule.
    for &(r, c) in &keys {
        if (r + c) % 2 == 0
            && keys.binary_search(&(r + 1, c)).is_ok()
            && step(label[&(r, c)], true, 2) != label[&(r + 1, c)]
        {
            return Err(TessellationError::Inconsistent(r, c));
        }
    }

    let name = |v: usize| levi.label(v).to_string();
    let sites = keys
        .iter()
        .map(|&(r, c)| {
            let v = label[&(r, c)];
            let is_chord = (r + c) % 2 == 0;
            Site {
                row: r,
                col: c,
                label: name(v),
                is_chord,
                neighbors: [0, 1, 2].map(|d| name(step(v, is_chord, d))),
            }
        })
        .collect();
    let faces = (0..rows)
        .flat_map(|i| (0..cols).map(move |j| (i, j)))
        .map(|(i, j)| {
            let corners = face_corners(i, j).map(|k| name(label[&k]));
            let center = (flavor == Flavor::FaceCentered).then(|| common_pitch(&corners));
            Face {
                row: i,
                col: j,
                corners,
                center,
            }
        })
        .collect();
    Ok(TessellationPatch {
        structure: t.name().to_string(),
        rows,
        cols,
        flavor,
        sites,
        faces,
    })
}

fn common_pitch(corners: &[String; 6]) -> String {
    let common = corners
        .iter()
        .map(|l| l.parse::<Chord>().expect("eulerian labels are chords").pitch_set())
        .reduce(|a, b| a.intersection(b))
        .unwrap();
    debug_assert_eq!(common.len(), 1);
    common
        .iter()
        .next()
        .expect("a hexagon of triads shares one pitch")
        .name()
        .to_string()
}

impl TessellationPatch {
    /// Checks that every site's neighbours are exactly its incident
    /// elements in `t`, that in-patch neighbours agree with the slots, and
    /// that every face centre lies on all six corners.
    pub fn verify(&self, t: &IncidenceStructure) -> Result<(), String> {
        let levi = LeviGraph::from_incidence(t);
        let index: BTreeMap<(usize, usize), &Site> = self.sites.iter().map(|s| ((s.row, s.col), s)).collect();
        for s in &self.sites {
            let v = levi
                .find_any(&s.label)
                .ok_or_else(|| format!("site ({}, {}) label {} is not a vertex", s.row, s.col, s.label))?;
            let mut expected: Vec<&str> = levi.graph().neighbors(v).iter().map(|&u| levi.label(u)).collect();
            let mut got: Vec<&str> = s.neighbors.iter().map(String::as_str).collect();
            expected.sort_unstable();
            got.sort_unstable();
            if expected != got {
                return Err(format!(
                    "site ({}, {}) {}: neighbours {got:?}, incident {expected:?}",
                    s.row, s.col, s.label
                ));
            }
            let vertical = if s.is_chord {
                s.row.checked_add(1)
            } else {
                s.row.checked_sub(1)
            };
            let lattice = [
                Some((s.row, s.col + 1)),
                s.col.checked_sub(1).map(|c| (s.row, c)),
                vertical.map(|r| (r, s.col)),
            ];
            for (slot, key) in lattice.iter().enumerate() {
                if let Some(other) = key.and_then(|k| index.get(&k)) {
                    if other.label != s.neighbors[slot] {
                        return Err(format!("site ({}, {}) disagrees with its neighbour", s.row, s.col));
                    }
                }
            }
        }
        for f in &self.faces {
            if let Some(center) = &f.center {
                let p: PitchClass = center.parse().map_err(|_| format!("bad centre {center}"))?;
                let mut corners = f.corners.to_vec();
                corners.sort();
                corners.dedup();
                let ok = corners.len() == 6
                    && f.corners
                        .iter()
                        .all(|c| c.parse::<Chord>().is_ok_and(|c| c.pitch_set().contains(p)));
                if !ok {
                    return Err(format!(
                        "face ({}, {}) is not the hexagon around {center}",
                        f.row, f.col
                    ));
                }
            }
        }
        Ok(())
    }

    /// Chord labels of row `r`, left to right.
    pub fn chord_row(&self, r: usize) -> Vec<&str> {
        self.sites
            .iter()
            .filter(|s| s.row == r && s.is_chord)
            .map(|s| s.label.as_str())
            .collect()
    }

    pub fn to_svg(&self) -> String {
        const SIDE: f64 = 40.0;
        const MARGIN: f64 = 30.0;
        let half_width = SIDE * 3f64.sqrt() / 2.0;
        let pos = |r: usize, c: usize| {
            let x = MARGIN + c as f64 * half_width;
            let y = MARGIN + r as f64 * 1.5 * SIDE + if (r + c).is_multiple_of(2) { SIDE / 2.0 } else { 0.0 };
            (x, y)
        };
        let max_col = self.sites.iter().map(|s| s.col).max().unwrap_or(0);
        let width = 2.0 * MARGIN + max_col as f64 * half_width;
        let height = 2.0 * MARGIN + self.rows as f64 * 1.5 * SIDE + SIDE / 2.0;
        let mut out = String::new();
        writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.1}\" height=\"{height:.1}\" viewBox=\"0 0 {width:.1} {height:.1}\">"
        )
        .unwrap();
        writeln!(out, "<title>{}</title>", escape(&self.structure)).unwrap();
        for f in &self.faces {
            let points: Vec<String> = face_corners(f.row, f.col)
                .iter()
                .map(|&(r, c)| {
                    let (x, y) = pos(r, c);
                    format!("{x:.1},{y:.1}")
                })
                .collect();
            writeln!(
                out,
                "<polygon points=\"{}\" fill=\"none\" stroke=\"black\"/>",
                points.join(" ")
            )
            .unwrap();
            if let Some(center) = &f.center {
                let (x0, y0) = pos(f.row, 2 * f.col + f.row % 2 + 1);
                let y = y0 + SIDE;
                writeln!(
                    out,
                    "<text x=\"{x0:.1}\" y=\"{y:.1}\" font-size=\"12\" text-anchor=\"middle\" dominant-baseline=\"middle\" fill=\"gray\">{}</text>",
                    escape(center)
                )
                .unwrap();
            }
        }
        for s in &self.sites {
            let (x, y) = pos(s.row, s.col);
            let (fill, text) = if s.is_chord {
                ("white", "black")
            } else {
                ("black", "white")
            };
            writeln!(
                out,
                "<circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"11\" fill=\"{fill}\" stroke=\"black\"/>\n<text x=\"{x:.1}\" y=\"{y:.1}\" font-size=\"9\" text-anchor=\"middle\" dominant-baseline=\"middle\" fill=\"{text}\">{}</text>",
                escape(&s.label)
            )
            .unwrap();
        }
        out.push_str("</svg>\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
