//! Deterministic text and binary exports.

pub mod midi;
pub mod tessellation;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use crate::cycles::CycleTable;
use crate::graph::Graph;
use crate::levi::{Color, LeviGraph};

pub use midi::{export_midi, MidiError};
pub use tessellation::{tessellation_patch, Flavor, TessellationError, TessellationPatch};

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected DOT text: vertices in index order, then edges in lexicographic
/// order.
pub fn export_dot(g: &Graph, name: &str) -> String {
    dot(g, name, |_| None)
}

/// As [`export_dot`], with points drawn white and blocks filled black.
pub fn export_levi_dot(levi: &LeviGraph) -> String {
    dot(levi.graph(), levi.name(), |v| {
        Some(match levi.color(v) {
            Color::White => "style=filled, fillcolor=white",
            Color::Black => "style=filled, fillcolor=black, fontcolor=white",
        })
    })
}

fn dot(g: &Graph, name: &str, attrs: impl Fn(usize) -> Option<&'static str>) -> String {
    let mut out = format!("graph {} {{\n", quote(name));
    if g.vertex_count() > 0 {
        out.push_str("  node [shape=circle];\n");
    }
    for v in 0..g.vertex_count() {
        match attrs(v) {
            Some(a) => writeln!(out, "  {} [{a}];", quote(g.label(v))),
            None => writeln!(out, "  {};", quote(g.label(v))),
        }
        .unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {} -- {};", quote(g.label(u)), quote(g.label(v))).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Cycle lengths as rows and p-numbers as columns, with row totals and a
/// closing row of column totals.
pub fn export_csv(t: &CycleTable) -> String {
    let width = t.max_p().map_or(0, |p| p + 1);
    let mut out = String::from("length");
    for p in 0..width {
        write!(out, ",p{p}").unwrap();
    }
    out.push_str(",total\n");
    for len in t.lengths() {
        write!(out, "{len}").unwrap();
        for c in t.dense_row(len, width) {
            write!(out, ",{c}").unwrap();
        }
        writeln!(out, ",{}", t.row_total(len)).unwrap();
    }
    out.push_str("total");
    for p in 0..width {
        write!(out, ",{}", t.column_total(p)).unwrap();
    }
    writeln!(out, ",{}", t.grand_total()).unwrap();
    out
}

/// Pretty JSON with a trailing newline.
pub fn export_json<T: Serialize + ?Sized>(value: &T) -> Result<String, ExportError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn write_output(path: &Path, bytes: &[u8]) -> Result<(), ExportError> {
    std::fs::write(path, bytes).map_err(|source| ExportError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::reference_tables;

    #[test]
    fn empty_graph_is_header_and_footer() {
        let g = Graph::unlabeled(0, std::iter::empty()).unwrap();
        assert_eq!(export_dot(&g, "empty"), "graph \"empty\" {\n}\n");
    }

    #[test]
    fn dot_lists_edges_once() {
        let out = export_dot(&named::cycle(3), "c3");
        assert_eq!(out.matches(" -- ").count(), 3);
        assert!(out.starts_with("graph \"c3\" {\n  node [shape=circle];\n"));
    }

    #[test]
    fn heawood_csv() {
        let csv = export_csv(&reference_tables::heawood());
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[1].split(',').next(), Some("6"));
        assert!(lines[1].starts_with("6,0,7,14,7,"));
        assert!(lines[1].ends_with(",28"));
        assert!(lines.last().unwrap().ends_with(",213"));
    }

    #[test]
    fn eight_cage_csv_total() {
        let csv = export_csv(&reference_tables::eight_cage());
        assert!(csv.lines().last().unwrap().ends_with(",41400"));
    }

    #[test]
    fn unwritable_path_is_named() {
        let err = write_output(Path::new("/nonexistent-dir/x.txt"), b"x").unwrap_err();
        assert!(err.to_string().contains("/nonexistent-dir/x.txt"));
    }
}
