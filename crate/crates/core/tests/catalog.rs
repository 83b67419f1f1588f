//! Worked examples for the catalog structures, checked through the public API.

use std::collections::BTreeSet;

use tonnetz::canon::{are_isomorphic, orbits_of};
use tonnetz::catalog::sylvester::{all_synthemes, all_totals, Duad, LetterDuad, Syntheme};
use tonnetz::catalog::{self, build_tripartite_tonnetz, BuildOptions, LetterTables};
use tonnetz::cycles::{enumerate_cycles, Cycle, CycleCatalog};
use tonnetz::export::{export_csv, export_dot, tessellation_patch, Flavor};
use tonnetz::graph::{named, Graph};
use tonnetz::incidence::IncidenceStructure;
use tonnetz::levi::{Color, LeviGraph};
use tonnetz::music::{root_third_seventh, sevenths_of_scale, triads_containing, Chord, PitchClass, Quality, Scale};
use tonnetz::progression::{chart_progression, minimal_trajectory, Progression};
use tonnetz::score::{decacycle_composition, realize_label, realize_syntheme};

fn build(name: &str) -> IncidenceStructure {
    catalog::build(name, &BuildOptions::default()).unwrap()
}

fn levi(name: &str) -> LeviGraph {
    LeviGraph::from_incidence(&build(name))
}

fn in_minor(name: &str) -> LeviGraph {
    let options = BuildOptions {
        scale: Scale::natural_minor(PitchClass::C),
        ..Default::default()
    };
    LeviGraph::from_incidence(&catalog::build(name, &options).unwrap())
}

fn sorted<'a>(xs: impl IntoIterator<Item = &'a str>) -> Vec<&'a str> {
    let mut v: Vec<&str> = xs.into_iter().collect();
    v.sort_unstable();
    v
}

fn block_points<'a>(t: &'a IncidenceStructure, label: &str) -> Vec<&'a str> {
    sorted(t.block_point_labels(t.block_index(label).unwrap()))
}

fn blocks_through<'a>(t: &'a IncidenceStructure, point: &str) -> Vec<&'a str> {
    let p = t.point_index(point).unwrap();
    sorted(t.blocks_through(p).into_iter().map(|b| t.blocks()[b].label.as_str()))
}

fn pitches(names: &[&str]) -> BTreeSet<PitchClass> {
    names.iter().map(|n| n.parse().unwrap()).collect()
}

#[test]
fn levi_graph_sizes() {
    let fano = levi("diatonic-sevenths");
    assert_eq!((fano.vertex_count(), fano.edge_count()), (14, 21));
    let pentatonic = levi("pentatonic");
    assert_eq!((pentatonic.vertex_count(), pentatonic.edge_count()), (20, 30));
    let empty = IncidenceStructure::new("empty", vec![], vec![]).unwrap();
    assert_eq!(LeviGraph::from_incidence(&empty).vertex_count(), 0);
}

#[test]
fn biregular_types() {
    assert_eq!(
        levi("diatonic-triads").biregularity().type_symbol().as_deref(),
        Some("{7_3}")
    );
    assert_eq!(
        levi("duads-synthemes").biregularity().type_symbol().as_deref(),
        Some("{15_3}")
    );
    assert!(!levi("diatonic-triads").is_configuration());
    assert!(levi("diatonic-sevenths").is_configuration());
    let m3 = levi("odd-scale-3");
    assert!(m3.is_configuration());
    assert_eq!(m3.biregularity().type_symbol().as_deref(), Some("{3_2}"));
}

#[test]
fn self_duality() {
    for name in ["pentatonic", "duads-synthemes"] {
        let l = levi(name);
        assert!(are_isomorphic(&l, &l.color_swapped(), true).is_some(), "{name}");
        let dual = LeviGraph::from_incidence(&build(name).dual().unwrap());
        assert!(are_isomorphic(&l, &dual, true).is_some(), "{name}");
    }
}

#[test]
fn different_orders_are_not_isomorphic() {
    let heawood = LeviGraph::from_bipartite("h", named::heawood()).unwrap();
    assert!(are_isomorphic(&heawood, &levi("pentatonic"), false).is_none());
}

#[test]
fn desargues_points_form_one_orbit() {
    let l = levi("pentatonic");
    let points: Vec<usize> = l.vertices_of(Color::White).collect();
    assert_eq!(orbits_of(l.graph(), l.colors(), &points).len(), 1);
    let blocks: Vec<usize> = l.vertices_of(Color::Black).collect();
    assert_eq!(orbits_of(l.graph(), l.colors(), &blocks).len(), 1);
}

#[test]
fn triad_tetracycles_through_tonic() {
    let l = levi("diatonic-triads");
    let tetra = l.tetracycles();
    assert_eq!(tetra.len(), 7);
    let through_i: Vec<&Cycle> = tetra
        .iter()
        .filter(|c| c.contains(l.find("I", Color::Black).unwrap()))
        .collect();
    assert_eq!(through_i.len(), 2);
    let wanted = [
        Cycle::from_labels(l.graph(), &["I", "3", "VI", "1"]).unwrap(),
        Cycle::from_labels(l.graph(), &["I", "3", "III", "5"]).unwrap(),
    ];
    for w in &wanted {
        assert!(through_i.contains(&w), "{}", w.display_with(l.graph()));
    }
    assert!(levi("diatonic-sevenths").tetracycles().is_empty());
}

#[test]
fn diatonic_blocks() {
    let t = build("diatonic-triads");
    assert_eq!(block_points(&t, "I"), ["1", "3", "5"]);
    let sevenths = sevenths_of_scale(&Scale::natural_minor(PitchClass::C)).unwrap();
    let names: Vec<String> = sevenths.iter().map(|(_, c)| c.to_string()).collect();
    assert_eq!(names, ["Cm7", "Dø7", "EbM7", "Fm7", "Gm7", "AbM7", "BbV7"]);
    let gv7: Chord = "GV7".parse().unwrap();
    assert_eq!(
        root_third_seventh(gv7).unwrap().iter().collect::<BTreeSet<_>>(),
        pitches(&["G", "B", "F"])
    );
    let cm7: Chord = "CM7".parse().unwrap();
    assert_eq!(
        root_third_seventh(cm7).unwrap().iter().collect::<BTreeSet<_>>(),
        pitches(&["C", "E", "B"])
    );
}

#[test]
fn triads_containing_c() {
    let names = |q| {
        let mut v: Vec<String> = triads_containing(PitchClass::C, q)
            .iter()
            .map(|c| c.to_string())
            .collect();
        v.sort();
        v
    };
    assert_eq!(names(Quality::Major), ["AbM", "CM", "FM"]);
    assert_eq!(names(Quality::Minor), ["Am", "Cm", "Fm"]);
}

#[test]
fn pentatonic_incidences_and_hexacycle() {
    let t = build("pentatonic");
    assert_eq!(blocks_through(&t, "CD"), ["CDA", "CDE", "CDG"]);
    assert_eq!(block_points(&t, "CDE"), ["CD", "CE", "DE"]);
    let l = LeviGraph::from_incidence(&t);
    assert!(Cycle::from_labels(l.graph(), &["CDA", "CD", "CDG", "CG", "CGA", "CA"]).is_ok());
}

#[test]
fn odd_scale_family() {
    assert!(are_isomorphic(&levi("odd-scale-5"), &levi("pentatonic"), true).is_some());
    assert_eq!(
        levi("odd-scale-7").biregularity().type_symbol().as_deref(),
        Some("{35_4}")
    );
    let m3 = levi("odd-scale-3");
    let cycles = enumerate_cycles(m3.graph()).unwrap();
    assert_eq!(cycles.len(), 1);
    assert_eq!(cycles[0].len(), 6);
    let clusters = build("diatonic-clusters");
    assert_eq!(
        blocks_through(&clusters, "CDE"),
        sorted(["CDEF", "CDEG", "CDEA", "CDEB"])
    );
    assert_eq!(block_points(&clusters, "CDEF").len(), 4);
}

#[test]
fn duads_and_synthemes() {
    let with_12: Vec<String> = all_synthemes()
        .into_iter()
        .filter(|s| s.contains(Duad::new(1, 2)))
        .map(|s| s.to_string())
        .collect();
    assert_eq!(with_12.len(), 3);
    let tables = LetterTables::from_totals(&all_totals()).unwrap();
    let syn = |ld: &str| tables.syntheme_of(ld.parse::<LetterDuad>().unwrap()).to_string();
    assert_eq!(syn("ab"), syntheme(["12", "34", "56"]));
    assert_eq!(syn("cd"), syntheme(["12", "36", "45"]));
    assert_eq!(syn("ef"), syntheme(["12", "35", "46"]));
    assert_eq!(
        tables.letter_syntheme_of("16".parse().unwrap()).to_string(),
        "af, bc, de"
    );
    // 105 syntheme pairs, none sharing two duads.
    let s = all_synthemes();
    let pairs = (0..15).flat_map(|a| (a + 1..15).map(move |b| (a, b)));
    let shares: Vec<usize> = pairs
        .map(|(a, b)| s[a].duads().iter().filter(|&&d| s[b].contains(d)).count())
        .collect();
    assert_eq!(shares.len(), 105);
    assert!(shares.iter().all(|&k| k <= 1));
}

fn syntheme(duads: [&str; 3]) -> String {
    Syntheme::new(duads.map(|d| d.parse::<Duad>().unwrap()))
        .unwrap()
        .to_string()
}

#[test]
fn hexachord_realization() {
    let h = catalog::default_hexachord();
    let duad = realize_label("12", &h).unwrap();
    assert_eq!(duad[0].iter().collect::<BTreeSet<_>>(), pitches(&["F#", "G#"]));
    let ab = realize_syntheme("ab", &h).unwrap();
    let got: Vec<BTreeSet<PitchClass>> = ab.iter().map(|p| p.iter().collect()).collect();
    assert_eq!(
        got,
        [pitches(&["F#", "G#"]), pitches(&["C#", "D#"]), pitches(&["E", "A#"])]
    );
    let score = decacycle_composition(&h, false).unwrap();
    assert_eq!(score.events.len(), 20);
    assert!(score.events.iter().all(|e| e.pitches.len() == 2));
}

#[test]
fn pitch_to_major_hexacycle() {
    let t = build("pitch-to-major");
    assert_eq!(blocks_through(&t, "CM").len(), 3);
    assert_eq!(block_points(&t, "C"), ["AbM", "CM", "FM"]);
    let l = LeviGraph::from_incidence(&t);
    assert!(Cycle::from_labels(l.graph(), &["C", "AbM", "Eb", "EbM", "G", "CM"]).is_ok());
    assert!(are_isomorphic(&l, &levi("pitch-to-minor"), true).is_some());
}

#[test]
fn fused_triad_neighbours() {
    let l = levi("eulerian");
    let cm = l.find_any("CM").unwrap();
    let minors = sorted(l.graph().neighbors(cm).iter().map(|&v| l.label(v)));
    assert_eq!(minors, ["Am", "Cm", "Em"]);
    // Independent: minors sharing two tones with CM.
    let major = Chord::major(PitchClass::C).pitch_set();
    let brute: Vec<String> = (0..12)
        .map(|r| Chord::minor(PitchClass::new(r)))
        .filter(|m| m.pitch_set().intersection(major).len() == 2)
        .map(|m| m.to_string())
        .collect();
    assert_eq!(sorted(brute.iter().map(String::as_str)), minors);
}

#[test]
fn tripartite_neighbours() {
    let tri = build_tripartite_tonnetz();
    let g = tri.graph();
    let cm = g.index_of("CM").unwrap();
    let by_label = sorted(g.neighbors(cm).iter().map(|&v| g.label(v)));
    assert_eq!(by_label, ["Am", "C", "Cm", "E", "Em", "G"]);
    assert_eq!(g.edge_count(), 108);
}

#[test]
fn heptagon_is_one_cycle() {
    let t = build("heptagon");
    assert_eq!(blocks_through(&t, "CM"), ["Am7", "CM7"]);
    assert_eq!(block_points(&t, "CM7"), ["CM", "Em"]);
    let cycles = enumerate_cycles(LeviGraph::from_incidence(&t).graph()).unwrap();
    assert_eq!(cycles.len(), 1);
    assert_eq!(cycles[0].len(), 14);
}

#[test]
fn cycle_table_examples() {
    let pentatonic = levi("pentatonic");
    let options = BuildOptions::default();
    let reference = catalog::pinned_reference("pentatonic", &options, &pentatonic).unwrap();
    let table = CycleCatalog::build(pentatonic.graph()).unwrap().table(&reference);
    assert_eq!(table.dense_row(6, 4), [0, 5, 10, 5]);
    assert_eq!(table.row_total(20), 24);
    assert_eq!(reference.p_number(reference.cycle()).unwrap(), 0);

    let cage = levi("duads-synthemes");
    let reference = catalog::pinned_reference("duads-synthemes", &options, &cage).unwrap();
    let table = CycleCatalog::build(cage.graph()).unwrap().table(&reference);
    assert_eq!(table.row_total(20), 7524);
    assert_eq!(table.count(20, 10), 22);
    let csv = export_csv(&table);
    assert!(csv.ends_with(",41400\n"), "{csv}");

    let fano = levi("diatonic-sevenths");
    let reference = catalog::pinned_reference("diatonic-sevenths", &options, &fano).unwrap();
    let csv = export_csv(&CycleCatalog::build(fano.graph()).unwrap().table(&reference));
    let row = csv.lines().find(|l| l.starts_with("6,")).unwrap();
    assert_eq!(row, "6,0,7,14,7,0,0,0,0,28");
}

#[test]
fn impossible_table_has_no_reference() {
    let fano = levi("diatonic-sevenths");
    let cat = CycleCatalog::build(fano.graph()).unwrap();
    let mut rows: Vec<(usize, Vec<usize>)> = tonnetz::reference_tables::HEAWOOD_ROWS
        .iter()
        .map(|(l, r)| (*l, r.to_vec()))
        .collect();
    rows[0].1 = vec![0, 7, 14, 0, 0, 0, 0, 7];
    let target = tonnetz::cycles::CycleTable::from_rows(rows.iter().map(|(l, r)| (*l, r.as_slice())));
    assert!(cat.find_reference(&target).unwrap().is_none());
}

#[test]
fn empty_graph_dot() {
    let g = Graph::unlabeled(0, std::iter::empty()).unwrap();
    assert_eq!(export_dot(&g, "empty"), "graph \"empty\" {\n}\n");
}

#[test]
fn progressions() {
    let major = levi("diatonic-triads");
    let minor = in_minor("diatonic-triads");
    assert!(
        chart_progression(&major, &"I,VI,IV,II,V".parse().unwrap())
            .unwrap()
            .is_continuous
    );
    let t = chart_progression(&minor, &"I,VII,III,VI,IV,V".parse().unwrap()).unwrap();
    assert!(!t.is_continuous);
    assert!(t.breaks().any(|b| b == ("IV", "V")));
    assert!(chart_progression(&major, &"IV".parse().unwrap()).unwrap().is_continuous);

    let fano_minor = in_minor("diatonic-sevenths");
    let m = minimal_trajectory(&fano_minor, &"V,VI,IV,V,I".parse().unwrap()).unwrap();
    assert!(m.is_unique_minimal);
    let two = minimal_trajectory(&major, &Progression::new(["I", "III"]).unwrap()).unwrap();
    assert_eq!(two.hop_count(), 2);
}

#[test]
fn tessellation_examples() {
    let t = build("diatonic-triads");
    let patch = tessellation_patch(&t, 3, 4, Flavor::Bipartite).unwrap();
    patch.verify(&t).unwrap();
    let i = patch.sites.iter().find(|s| s.label == "I").unwrap();
    assert_eq!(sorted(i.neighbors.iter().map(String::as_str)), ["1", "3", "5"]);

    let e = build("eulerian");
    let face_centered = tessellation_patch(&e, 2, 2, Flavor::FaceCentered).unwrap();
    face_centered.verify(&e).unwrap();
    for f in &face_centered.faces {
        let centre: PitchClass = f.center.as_deref().unwrap().parse().unwrap();
        for corner in &f.corners {
            let chord: Chord = corner.parse().unwrap();
            assert!(chord.pitch_set().contains(centre), "{corner} around {centre}");
        }
    }

    let single = tessellation_patch(&t, 1, 1, Flavor::Bipartite).unwrap();
    assert_eq!(single.faces.len(), 1);
    assert_eq!(single.faces[0].corners.len(), 6);
}

#[test]
fn cycle_csv_goldens() {
    let options = BuildOptions::default();
    let goldens = [
        ("diatonic-sevenths", include_str!("golden/heawood.csv")),
        ("pentatonic", include_str!("golden/desargues.csv")),
        ("duads-synthemes", include_str!("golden/eight_cage.csv")),
    ];
    for (name, golden) in goldens {
        let l = levi(name);
        let reference = catalog::pinned_reference(name, &options, &l).unwrap();
        let csv = export_csv(&CycleCatalog::build(l.graph()).unwrap().table(&reference));
        assert_eq!(csv, golden, "{name}");
    }
}
