//! Invariant suites for every catalog entry, with deterministic reports.

use std::fmt::Write as _;

use serde::Serialize;

use crate::canon::{are_isomorphic, orbits_of};
use crate::catalog::sylvester::{all_duads, all_synthemes, all_totals};
use crate::catalog::{self, eulerian, BuildOptions, CatalogError, NAMES};
use crate::cycles::{CycleCatalog, CycleTable};
use crate::graph::{named, Graph};
use crate::incidence::IncidenceStructure;
use crate::levi::{Color, Girth, LeviGraph};
use crate::reference_tables;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub structure: String,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    fn new(structure: &str) -> VerifyReport {
        VerifyReport {
            structure: structure.to_string(),
            checks: Vec::new(),
        }
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    fn expect_eq<T: PartialEq + std::fmt::Debug>(&mut self, name: &str, got: T, expected: T) {
        let passed = got == expected;
        let plain = |x: &T| format!("{x:?}").replace('"', "");
        let detail = if passed {
            plain(&got)
        } else {
            format!("got {}, expected {}", plain(&got), plain(&expected))
        };
        self.check(name, passed, detail);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// One line per check.
    pub fn render(&self) -> String {
        let mut out = format!("== {} ==\n", self.structure);
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            writeln!(out, "{tag} {}: {}", c.name, c.detail).unwrap();
        }
        out
    }
}

pub fn render_all(reports: &[VerifyReport]) -> String {
    reports.iter().map(VerifyReport::render).collect::<Vec<_>>().join("\n")
}

fn witness(a: &LeviGraph, b: &LeviGraph, map: &[usize]) -> String {
    map.iter()
        .enumerate()
        .map(|(v, &w)| format!("{}->{}", a.label(v), b.label(w)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn isomorphism_check(r: &mut VerifyReport, name: &str, a: &LeviGraph, b: &LeviGraph, respect_colors: bool) {
    match are_isomorphic(a, b, respect_colors) {
        Some(map) => r.check(name, true, witness(a, b, &map)),
        None => r.check(name, false, "no isomorphism"),
    }
}

fn structure_checks(r: &mut VerifyReport, levi: &LeviGraph, symbol: &str, girth: Girth, configuration: bool) {
    let b = levi.biregularity();
    let symbol_got = b.type_symbol().unwrap_or_else(|| "not biregular".to_string());
    r.expect_eq("type", symbol_got.as_str(), symbol);
    r.expect_eq("girth", levi.girth().to_string(), girth.to_string());
    r.expect_eq("configuration", levi.is_configuration(), configuration);
}

fn self_duality_check(r: &mut VerifyReport, levi: &LeviGraph) {
    isomorphism_check(r, "self-dual", levi, &levi.color_swapped(), true);
}

fn table_check(r: &mut VerifyReport, name: &str, options: &BuildOptions, levi: &LeviGraph, expected: CycleTable) {
    let reference = match catalog::pinned_reference(name, options, levi) {
        Ok(reference) => reference,
        Err(e) => return r.check("cycle-table", false, e.to_string()),
    };
    match CycleCatalog::build(levi.graph()) {
        Ok(cat) => {
            let table = cat.table(&reference);
            let detail = format!("grand total {}", table.grand_total());
            r.check("cycle-table", table == expected, detail);
        }
        Err(e) => r.check("cycle-table", false, e.to_string()),
    }
}

fn hexacycle_count(g: &Graph) -> usize {
    crate::cycles::enumerate_cycles(g)
        .map(|cs| cs.iter().filter(|c| c.len() == 6).count())
        .unwrap_or(0)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn shared_points(t: &IncidenceStructure, a: usize, b: usize) -> usize {
    let pa = &t.blocks()[a].points;
    t.blocks()[b].points.iter().filter(|p| pa.contains(p)).count()
}

fn eulerian_family(r: &mut VerifyReport, levi: &LeviGraph) {
    structure_checks(r, levi, "{12_3}", Girth::Finite(6), true);
    for other in ["eulerian", "pitch-to-major", "pitch-to-minor"] {
        if other == r.structure {
            continue;
        }
        let t = catalog::build(other, &BuildOptions::default()).expect("fixed structure");
        isomorphism_check(
            r,
            &format!("isomorphic-to-{other}"),
            levi,
            &LeviGraph::from_incidence(&t),
            true,
        );
    }
}

/// The invariant suite of registry entry `name`.
pub fn verify(name: &str, options: &BuildOptions) -> Result<VerifyReport, CatalogError> {
    let t = catalog::build(name, options)?;
    let levi = LeviGraph::from_incidence(&t);
    let mut r = VerifyReport::new(name);
    match name {
        "eulerian" => {
            eulerian_family(&mut r, &levi);
            let pg = eulerian::build_pitch_class_graph();
            let degrees: Vec<usize> = (0..12).map(|v| pg.graph().degree(v)).collect();
            r.expect_eq("pitch-class-degree", degrees, vec![6; 12]);
            r.expect_eq("consonant-faces", pg.faces().len(), 24);
            match eulerian::check_duality(&pg, &levi) {
                Ok(d) => r.check(
                    "duality",
                    d.edges.len() == 36 && d.vertex_hexacycles.len() == 12,
                    format!(
                        "{} edges matched both ways, {} vertex hexacycles",
                        d.edges.len(),
                        d.vertex_hexacycles.len()
                    ),
                ),
                Err(e) => r.check("duality", false, e.to_string()),
            }
            let tri = eulerian::build_tripartite_tonnetz();
            r.check(
                "tripartite",
                tri.degrees_hold() && tri.graph().edge_count() == 108,
                format!("{} edges", tri.graph().edge_count()),
            );
            let erased = tri.without_pitches();
            isomorphism_check(&mut r, "tripartite-without-pitches", &erased, &levi, true);
        }
        "pitch-to-major" | "pitch-to-minor" => {
            eulerian_family(&mut r, &levi);
            if name == "pitch-to-major" {
                let c = t.block_index("C").expect("pitch block C");
                let mut through: Vec<&str> = t.block_point_labels(c);
                through.sort_unstable();
                r.expect_eq("triads-on-C", through, vec!["AbM", "CM", "FM"]);
                match catalog::pinned_reference(name, options, &levi)
                    .map_err(|e| e.to_string())
                    .and_then(|reference| {
                        eulerian::minor_triads_from_hexacycles(&levi, &reference).map_err(|e| e.to_string())
                    }) {
                    Ok(h) => {
                        let minors: Vec<String> = h.minor.iter().map(|(_, c)| c.to_string()).collect();
                        let augmented: Vec<String> = h.augmented.iter().map(|(_, c)| c.to_string()).collect();
                        r.check("minor-hexacycles", minors.len() == 12, minors.join(" "));
                        r.check("augmented-hexacycles", augmented.len() == 4, augmented.join(" "));
                    }
                    Err(e) => r.check("minor-hexacycles", false, e),
                }
            }
        }
        "diatonic-triads" => {
            structure_checks(&mut r, &levi, "{7_3}", Girth::Finite(4), false);
            let tetra = levi.tetracycles();
            r.expect_eq("tetracycles", tetra.len(), 7);
            let per_degree: Vec<usize> = levi
                .vertices_of(Color::Black)
                .map(|v| tetra.iter().filter(|c| c.contains(v)).count())
                .collect();
            r.expect_eq("tetracycles-per-degree", per_degree, vec![2; 7]);
            let shared: Vec<usize> = (1..7).map(|b| shared_points(&t, 0, b)).collect();
            r.expect_eq("I-shares-with-II-to-VII", shared, vec![0, 2, 1, 1, 2, 0]);
        }
        "diatonic-sevenths" => {
            structure_checks(&mut r, &levi, "{7_3}", Girth::Finite(6), true);
            let pairs: Vec<usize> = (0..7)
                .flat_map(|a| (a + 1..7).map(move |b| (a, b)))
                .map(|(a, b)| shared_points(&t, a, b))
                .collect();
            r.check(
                "lines-meet-once",
                pairs.len() == 21 && pairs.iter().all(|&s| s == 1),
                format!("{} pairs", pairs.len()),
            );
            let heawood = LeviGraph::from_bipartite("heawood", named::heawood()).expect("bipartite");
            isomorphism_check(&mut r, "isomorphic-to-heawood", &levi, &heawood, false);
            r.expect_eq("hexacycles", hexacycle_count(levi.graph()), 28);
            table_check(&mut r, name, options, &levi, reference_tables::heawood());
        }
        "heptagon" => {
            structure_checks(&mut r, &levi, "{7_2}", Girth::Finite(14), true);
            r.check(
                "single-14-cycle",
                levi.vertex_count() == 14 && levi.graph().is_connected(),
                format!("{} vertices", levi.vertex_count()),
            );
        }
        "diatonic-clusters" => {
            structure_checks(&mut r, &levi, "{35_4}", Girth::Finite(6), true);
            r.expect_eq("tetracycles", levi.tetracycles().len(), 0);
            let odd = LeviGraph::from_incidence(&catalog::build_odd_scale_tonnetz(7)?);
            isomorphism_check(&mut r, "isomorphic-to-odd-scale-7", &levi, &odd, true);
        }
        "pentatonic" => {
            structure_checks(&mut r, &levi, "{10_3}", Girth::Finite(6), true);
            self_duality_check(&mut r, &levi);
            let desargues = LeviGraph::from_bipartite("desargues", named::desargues()).expect("bipartite");
            isomorphism_check(&mut r, "isomorphic-to-desargues", &levi, &desargues, false);
            let points: Vec<usize> = levi.vertices_of(Color::White).collect();
            let codes: Vec<Color> = levi.colors().to_vec();
            let orbits = orbits_of(levi.graph(), &codes, &points);
            r.expect_eq("point-orbits", orbits.len(), 1);
            table_check(&mut r, name, options, &levi, reference_tables::desargues());
        }
        "duads-synthemes" => {
            structure_checks(&mut r, &levi, "{15_3}", Girth::Finite(8), true);
            let cage = LeviGraph::from_bipartite("tutte-8-cage", named::tutte_eight_cage()).expect("bipartite");
            isomorphism_check(&mut r, "isomorphic-to-tutte-8-cage", &levi, &cage, false);
            r.expect_eq(
                "duads-synthemes-totals",
                (all_duads().len(), all_synthemes().len(), all_totals().len()),
                (15, 15, 6),
            );
            let synthemes = all_synthemes();
            let per_duad: Vec<usize> = all_duads()
                .iter()
                .map(|&d| synthemes.iter().filter(|s| s.contains(d)).count())
                .collect();
            r.expect_eq("synthemes-per-duad", per_duad, vec![3; 15]);
            let syntheme_pairs: Vec<usize> = (0..15)
                .flat_map(|a| (a + 1..15).map(move |b| (a, b)))
                .map(|(a, b)| synthemes[a].0.iter().filter(|d| synthemes[b].contains(**d)).count())
                .collect();
            r.check(
                "syntheme-pairs-share-at-most-one-duad",
                syntheme_pairs.len() == 105 && syntheme_pairs.iter().all(|&s| s <= 1),
                format!("{} pairs", syntheme_pairs.len()),
            );
            let totals = all_totals();
            let total_pairs: Vec<usize> = (0..6)
                .flat_map(|a| (a + 1..6).map(move |b| (a, b)))
                .map(|(a, b)| totals[a].0.iter().filter(|s| totals[b].contains(**s)).count())
                .collect();
            r.expect_eq("total-pairs-share-one-syntheme", total_pairs, vec![1; 15]);
            let tables = catalog::LetterTables::from_totals(&totals)?;
            let inverse = all_duads().into_iter().all(|d| {
                tables
                    .letter_syntheme_of(d)
                    .0
                    .iter()
                    .all(|&ld| tables.syntheme_of(ld).contains(d))
            });
            r.check("table-iv-inverts-table-ii", inverse, "15 duads");
            table_check(&mut r, name, options, &levi, reference_tables::eight_cage());
        }
        _ => {
            let m: usize = name
                .strip_prefix("odd-scale-")
                .and_then(|m| m.parse().ok())
                .ok_or_else(|| CatalogError::UnknownStructure(name.to_string()))?;
            let k = (m - 1) / 2;
            let symbol = format!("{{{}_{}}}", binomial(m, k), k + 1);
            structure_checks(&mut r, &levi, &symbol, Girth::Finite(6), true);
            r.expect_eq("tetracycles", levi.tetracycles().len(), 0);
            self_duality_check(&mut r, &levi);
            if m == 3 {
                let hexagon = LeviGraph::from_bipartite("hexacycle", named::cycle(6)).expect("bipartite");
                isomorphism_check(&mut r, "single-hexacycle", &levi, &hexagon, false);
            }
            if m == 5 {
                let pentatonic = LeviGraph::from_incidence(&catalog::build_pentatonic_tonnetz());
                isomorphism_check(&mut r, "isomorphic-to-pentatonic", &levi, &pentatonic, true);
                let desargues = LeviGraph::from_bipartite("desargues", named::desargues()).expect("bipartite");
                isomorphism_check(&mut r, "isomorphic-to-desargues", &levi, &desargues, false);
            }
        }
    }
    Ok(r)
}

/// Every registry entry in presentation order.
pub fn verify_all(options: &BuildOptions) -> Result<Vec<VerifyReport>, CatalogError> {
    NAMES.iter().map(|n| verify(n, options)).collect()
}
