//! Incidence structures: labelled points and labelled blocks (lines).
//!
//! JSON form:
//! `{"name": str, "points": [str], "blocks": [{"label": str, "points": [int]}]}`.
//! Deserialization runs the same validation as [`IncidenceStructure::new`].

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IncidenceError {
    #[error("duplicate point label `{0}`")]
    DuplicatePointLabel(String),
    #[error("duplicate block label `{0}`")]
    DuplicateBlockLabel(String),
    #[error("block `{block}` lists point {point} more than once")]
    RepeatedPoint { block: String, point: usize },
    #[error("block `{block}` references point {point}, but there are only {count} points")]
    PointOutOfRange { block: String, point: usize, count: usize },
    #[error("block `{block}` names unknown point `{point}`")]
    UnknownPoint { block: String, point: String },
    #[error("block `{block}` has the same points as block `{other}`")]
    DuplicateBlock { block: String, other: String },
    #[error("malformed incidence JSON: {0}")]
    Json(String),
}

/// A labelled block; `points` is kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub label: String,
    pub points: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "RawStructure")]
pub struct IncidenceStructure {
    name: String,
    points: Vec<String>,
    blocks: Vec<Block>,
}

#[derive(Deserialize)]
struct RawStructure {
    name: String,
    points: Vec<String>,
    blocks: Vec<Block>,
}

impl TryFrom<RawStructure> for IncidenceStructure {
    type Error = IncidenceError;

    fn try_from(raw: RawStructure) -> Result<Self, Self::Error> {
        IncidenceStructure::new(
            raw.name,
            raw.points,
            raw.blocks.into_iter().map(|b| (b.label, b.points)).collect(),
        )
    }
}

impl IncidenceStructure {
    pub fn new(
        name: impl Into<String>,
        points: Vec<String>,
        blocks: Vec<(String, Vec<usize>)>,
    ) -> Result<Self, IncidenceError> {
        let mut seen = BTreeSet::new();
        for p in &points {
            if !seen.insert(p.as_str()) {
                return Err(IncidenceError::DuplicatePointLabel(p.clone()));
            }
        }
        let mut labels = BTreeSet::new();
        let mut by_points: HashMap<Vec<usize>, String> = HashMap::new();
        let mut out = Vec::with_capacity(blocks.len());
        for (label, mut members) in blocks {
            if !labels.insert(label.clone()) {
                return Err(IncidenceError::DuplicateBlockLabel(label));
            }
            members.sort_unstable();
            for w in members.windows(2) {
                if w[0] == w[1] {
                    return Err(IncidenceError::RepeatedPoint {
                        block: label,
                        point: w[0],
                    });
                }
            }
            if let Some(&p) = members.iter().find(|&&p| p >= points.len()) {
                return Err(IncidenceError::PointOutOfRange {
                    block: label,
                    point: p,
                    count: points.len(),
                });
            }
            if let Some(other) = by_points.get(&members) {
                return Err(IncidenceError::DuplicateBlock {
                    block: label,
                    other: other.clone(),
                });
            }
            by_points.insert(members.clone(), label.clone());
            out.push(Block { label, points: members });
        }
        Ok(IncidenceStructure {
            name: name.into(),
            points,
            blocks: out,
        })
    }

    /// Builds a structure from block membership given by point labels.
    pub fn from_labeled_blocks(
        name: impl Into<String>,
        points: Vec<String>,
        blocks: Vec<(String, Vec<String>)>,
    ) -> Result<Self, IncidenceError> {
        let index: HashMap<&str, usize> = points.iter().enumerate().map(|(i, p)| (p.as_str(), i)).collect();
        let mut resolved = Vec::with_capacity(blocks.len());
        for (label, members) in blocks {
            let mut idx = Vec::with_capacity(members.len());
            for m in &members {
                match index.get(m.as_str()) {
                    Some(&i) => idx.push(i),
                    None => {
                        return Err(IncidenceError::UnknownPoint {
                            block: label,
                            point: m.clone(),
                        })
                    }
                }
            }
            resolved.push((label, idx));
        }
        IncidenceStructure::new(name, points, resolved)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn point_labels(&self) -> &[String] {
        &self.points
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Total number of incidences, i.e. the sum of block sizes.
    pub fn incidence_count(&self) -> usize {
        self.blocks.iter().map(|b| b.points.len()).sum()
    }

    pub fn point_index(&self, label: &str) -> Option<usize> {
        self.points.iter().position(|p| p == label)
    }

    pub fn block_index(&self, label: &str) -> Option<usize> {
        self.blocks.iter().position(|b| b.label == label)
    }

    pub fn is_incident(&self, point: usize, block: usize) -> bool {
        self.blocks[block].points.binary_search(&point).is_ok()
    }

    /// Indices of the blocks through `point`.
    pub fn blocks_through(&self, point: usize) -> Vec<usize> {
        (0..self.blocks.len()).filter(|&b| self.is_incident(point, b)).collect()
    }

    /// Point labels of block `b`.
    pub fn block_point_labels(&self, b: usize) -> Vec<&str> {
        self.blocks[b].points.iter().map(|&p| self.points[p].as_str()).collect()
    }

    /// Largest number of points shared by two distinct blocks (0 with fewer
    /// than two blocks).
    pub fn max_block_overlap(&self) -> usize {
        let mut best = 0;
        for (i, a) in self.blocks.iter().enumerate() {
            for b in &self.blocks[i + 1..] {
                let shared = a.points.iter().filter(|p| b.points.binary_search(p).is_ok()).count();
                best = best.max(shared);
            }
        }
        best
    }

    /// No two blocks share two or more points.
    pub fn is_linear(&self) -> bool {
        self.max_block_overlap() <= 1
    }

    /// Transposes points and blocks: dual point `j` is block `j`, and dual
    /// block `i` (labelled like point `i`) holds the blocks through point `i`.
    ///
    /// Fails when two points lie on exactly the same blocks, since the dual
    /// would then repeat a block.
    pub fn dual(&self) -> Result<IncidenceStructure, IncidenceError> {
        let points = self.blocks.iter().map(|b| b.label.clone()).collect();
        let blocks = (0..self.points.len())
            .map(|i| (self.points[i].clone(), self.blocks_through(i)))
            .collect();
        IncidenceStructure::new(format!("{}-dual", self.name), points, blocks)
    }

    /// Renames point labels through `f`; block labels through `g`.
    pub fn relabeled<F, G>(&self, f: F, g: G) -> Result<IncidenceStructure, IncidenceError>
    where
        F: Fn(&str) -> String,
        G: Fn(&str) -> String,
    {
        IncidenceStructure::new(
            self.name.clone(),
            self.points.iter().map(|p| f(p)).collect(),
            self.blocks.iter().map(|b| (g(&b.label), b.points.clone())).collect(),
        )
    }

    /// Order-insensitive view: block label -> set of point labels.
    fn canonical_view(&self) -> (BTreeSet<&str>, BTreeMap<&str, BTreeSet<&str>>) {
        let points = self.points.iter().map(String::as_str).collect();
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                (
                    b.label.as_str(),
                    b.points.iter().map(|&p| self.points[p].as_str()).collect(),
                )
            })
            .collect();
        (points, blocks)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("structure serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, IncidenceError> {
        serde_json::from_str(text).map_err(|e| IncidenceError::Json(e.to_string()))
    }
}

/// Structural equality: same name, same point labels and the same labelled
/// blocks, regardless of the order in which either is listed.
impl PartialEq for IncidenceStructure {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.canonical_view() == other.canonical_view()
    }
}

impl Eq for IncidenceStructure {}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn triangle() -> IncidenceStructure {
        IncidenceStructure::new(
            "triangle",
            labels(&["a", "b", "c"]),
            vec![
                ("ab".into(), vec![1, 0]),
                ("bc".into(), vec![1, 2]),
                ("ca".into(), vec![2, 0]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn blocks_are_sorted() {
        assert_eq!(triangle().blocks()[0].points, vec![0, 1]);
        assert_eq!(triangle().incidence_count(), 6);
    }

    #[test]
    fn validation_errors_name_the_offender() {
        let dup = IncidenceStructure::new("x", labels(&["a", "a"]), vec![]);
        assert_eq!(dup, Err(IncidenceError::DuplicatePointLabel("a".into())));

        let rep = IncidenceStructure::new("x", labels(&["a", "b"]), vec![("L".into(), vec![0, 0])]);
        assert!(matches!(rep, Err(IncidenceError::RepeatedPoint { ref block, point: 0 }) if block == "L"));

        let range = IncidenceStructure::new("x", labels(&["a"]), vec![("L".into(), vec![3])]);
        assert!(matches!(range, Err(IncidenceError::PointOutOfRange { point: 3, .. })));

        let same = IncidenceStructure::new(
            "x",
            labels(&["a", "b"]),
            vec![("L".into(), vec![0, 1]), ("M".into(), vec![1, 0])],
        );
        assert_eq!(
            same,
            Err(IncidenceError::DuplicateBlock {
                block: "M".into(),
                other: "L".into()
            })
        );

        let lbl = IncidenceStructure::new(
            "x",
            labels(&["a", "b"]),
            vec![("L".into(), vec![0]), ("L".into(), vec![1])],
        );
        assert_eq!(lbl, Err(IncidenceError::DuplicateBlockLabel("L".into())));
    }

    #[test]
    fn json_rejects_duplicates_with_label() {
        let text =
            r#"{"name":"t","points":["p","q"],"blocks":[{"label":"B","points":[0]},{"label":"B","points":[1]}]}"#;
        let err = IncidenceStructure::from_json(text).unwrap_err();
        assert!(err.to_string().contains("`B`"), "{err}");
    }

    #[test]
    fn json_round_trip() {
        let t = triangle();
        assert_eq!(IncidenceStructure::from_json(&t.to_json()).unwrap(), t);
    }

    #[test]
    fn equality_ignores_order() {
        let a = triangle();
        let b = IncidenceStructure::new(
            "triangle",
            labels(&["c", "b", "a"]),
            vec![
                ("ca".into(), vec![0, 2]),
                ("ab".into(), vec![2, 1]),
                ("bc".into(), vec![1, 0]),
            ],
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn dual_transposes() {
        let t = triangle();
        let d = t.dual().unwrap();
        assert_eq!(d.point_labels(), &labels(&["ab", "bc", "ca"])[..]);
        // point a lies on ab and ca
        assert_eq!(d.block_point_labels(0), vec!["ab", "ca"]);
        assert_eq!(d.dual().unwrap().with_name("triangle"), t);
    }

    #[test]
    fn dual_fails_on_parallel_points() {
        let s = IncidenceStructure::new("x", labels(&["a", "b"]), vec![("L".into(), vec![0, 1])]).unwrap();
        assert!(matches!(s.dual(), Err(IncidenceError::DuplicateBlock { .. })));
    }

    #[test]
    fn overlap_and_linearity() {
        assert!(triangle().is_linear());
        let s = IncidenceStructure::new(
            "x",
            labels(&["a", "b", "c"]),
            vec![("L".into(), vec![0, 1, 2]), ("M".into(), vec![0, 1])],
        )
        .unwrap();
        assert_eq!(s.max_block_overlap(), 2);
        assert!(!s.is_linear());
    }
}
