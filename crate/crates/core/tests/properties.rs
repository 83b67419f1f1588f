use std::collections::BTreeSet;

use midly::{MidiMessage, Smf, TrackEventKind};
use proptest::prelude::*;

use tonnetz::canon::canonical_form;
use tonnetz::catalog::{self, BuildOptions};
use tonnetz::cycles::{enumerate_cycles, length_histogram};
use tonnetz::export::export_midi;
use tonnetz::graph::Graph;
use tonnetz::incidence::IncidenceStructure;
use tonnetz::levi::LeviGraph;
use tonnetz::music::{triads_of_scale, Chord, PitchClass, PitchSet, Scale};
use tonnetz::progression::{chart_progression, minimal_trajectory, Progression};
use tonnetz::score::{
    cycle_to_score, decacycle_composition, perimeter_composition, perimeter_scale, realize_label, ScoreOptions,
};

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (2usize..11).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |keep| {
            let edges = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e);
            Graph::unlabeled(n, edges.collect::<Vec<_>>()).unwrap()
        })
    })
}

fn with_permutation() -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph_strategy().prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

fn structure_strategy() -> impl Strategy<Value = IncidenceStructure> {
    (1usize..8, 1usize..8).prop_flat_map(|(m, n)| {
        proptest::collection::vec(proptest::collection::btree_set(0..m, 1..=m), n).prop_map(move |blocks| {
            let distinct: BTreeSet<Vec<usize>> = blocks.into_iter().map(|b| b.into_iter().collect()).collect();
            IncidenceStructure::new(
                "random",
                (0..m).map(|i| format!("p{i}")).collect(),
                distinct
                    .into_iter()
                    .enumerate()
                    .map(|(j, b)| (format!("B{j}"), b))
                    .collect(),
            )
            .unwrap()
        })
    })
}

fn tonic() -> impl Strategy<Value = PitchClass> {
    (0i32..12).prop_map(PitchClass::new)
}

fn diatonic_progression() -> impl Strategy<Value = Vec<String>> {
    proptest::collection::vec(
        prop::sample::select(vec!["I", "II", "III", "IV", "V", "VI", "VII"]),
        1..8,
    )
    .prop_map(|v| v.into_iter().map(String::from).collect())
}

/// Transposes a chord name or a run of note names such as `CEbG`.
fn transpose_label(label: &str, k: i32) -> String {
    if let Ok(c) = label.parse::<Chord>() {
        return c.transposed(k).to_string();
    }
    let mut out = String::new();
    let mut chars = label.chars().peekable();
    while let Some(letter) = chars.next() {
        let mut name = letter.to_string();
        if let Some(&acc) = chars.peek().filter(|&&c| c == 'b' || c == '#') {
            name.push(acc);
            chars.next();
        }
        out.push_str(name.parse::<PitchClass>().unwrap().transpose(k).name());
    }
    out
}

proptest! {
    #[test]
    fn certificate_is_relabel_invariant((g, perm) in with_permutation()) {
        let c = vec![0u8; g.vertex_count()];
        let h = g.permuted(&perm);
        let (a, b) = (canonical_form(&g, &c), canonical_form(&h, &c));
        prop_assert_eq!(a.certificate(), b.certificate());
    }

    #[test]
    fn cycle_histogram_is_relabel_invariant((g, perm) in with_permutation()) {
        let h = g.permuted(&perm);
        prop_assert_eq!(
            length_histogram(&enumerate_cycles(&g).unwrap()),
            length_histogram(&enumerate_cycles(&h).unwrap())
        );
    }

    #[test]
    fn incidence_json_round_trip(s in structure_strategy()) {
        let back = IncidenceStructure::from_json(&s.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), s.to_json());
        prop_assert_eq!(back.point_labels(), s.point_labels());
        prop_assert_eq!(back.blocks(), s.blocks());
    }

    #[test]
    fn dual_of_dual_is_identity(s in structure_strategy()) {
        // Points lying on exactly the same blocks would collapse in the dual.
        let dual = s.dual();
        prop_assume!(dual.is_ok());
        let twice = dual.unwrap().dual().unwrap();
        prop_assert_eq!(twice.point_count(), s.point_count());
        prop_assert_eq!(twice.incidence_count(), s.incidence_count());
        for b in 0..s.block_count() {
            for p in 0..s.point_count() {
                prop_assert_eq!(twice.is_incident(p, b), s.is_incident(p, b));
            }
        }
    }

    #[test]
    fn reversal_preserves_continuity(chords in diatonic_progression(), minor in any::<bool>()) {
        let name = if minor { "pitch-to-minor" } else { "diatonic-triads" };
        let t = LeviGraph::from_incidence(&catalog::build(name, &BuildOptions::default()).unwrap());
        let chords = if minor {
            chords.iter().map(|d| {
                let i = ["I", "II", "III", "IV", "V", "VI", "VII"].iter().position(|x| x == d).unwrap();
                format!("{}m", PitchClass::new(i as i32 * 7).name())
            }).collect()
        } else {
            chords
        };
        let p = Progression::new(chords).unwrap();
        let forward = chart_progression(&t, &p).unwrap();
        let backward = chart_progression(&t, &p.reversed()).unwrap();
        prop_assert_eq!(forward.is_continuous, backward.is_continuous);
        prop_assert_eq!(forward.breaks().count(), backward.breaks().count());
        let fm = minimal_trajectory(&t, &p).unwrap();
        let bm = minimal_trajectory(&t, &p.reversed()).unwrap();
        prop_assert_eq!(fm.hop_count(), bm.hop_count());
        prop_assert_eq!(fm.is_unique_minimal, bm.is_unique_minimal);
    }

    #[test]
    fn diatonic_builders_are_transposition_equivariant(t in tonic(), minor in any::<bool>()) {
        let scale = if minor { Scale::natural_minor(t) } else { Scale::major(t) };
        let base = if minor { Scale::natural_minor(PitchClass::C) } else { Scale::major(PitchClass::C) };
        let shift = t.value() as i32;
        let build = |name: &str, scale: &Scale| {
            catalog::build(name, &BuildOptions { scale: scale.clone(), ..Default::default() }).unwrap()
        };
        // Degree-labelled builders do not depend on the tonic at all.
        for name in ["diatonic-triads", "diatonic-sevenths"] {
            prop_assert_eq!(build(name, &scale).to_json(), build(name, &base).to_json());
        }
        // Pitch-labelled builders commute with transposing every label.
        for name in ["heptagon", "diatonic-clusters"] {
            let moved = build(name, &base)
                .relabeled(|l| transpose_label(l, shift), |l| transpose_label(l, shift))
                .unwrap();
            prop_assert_eq!(moved, build(name, &scale));
        }
        let transposed: Vec<(String, Chord)> = triads_of_scale(&base)
            .unwrap()
            .into_iter()
            .map(|(d, c)| (d.to_string(), c.transposed(shift)))
            .collect();
        let direct: Vec<(String, Chord)> =
            triads_of_scale(&scale).unwrap().into_iter().map(|(d, c)| (d.to_string(), c)).collect();
        prop_assert_eq!(transposed, direct);
        for degree in ["I", "II", "III", "IV", "V", "VI", "VII"] {
            let here = realize_label(degree, &scale).unwrap();
            let at_c: Vec<PitchSet> =
                realize_label(degree, &base).unwrap().into_iter().map(|p| p.transposed(shift)).collect();
            prop_assert_eq!(here, at_c);
        }
    }

    #[test]
    fn eulerian_is_transposition_invariant(k in 0i32..12) {
        let s = catalog::build("eulerian", &BuildOptions::default()).unwrap();
        let moved = s.relabeled(
            |p| p.parse::<Chord>().unwrap().transposed(k).to_string(),
            |b| b.parse::<Chord>().unwrap().transposed(k).to_string(),
        ).unwrap();
        prop_assert_eq!(moved, s);
    }

    #[test]
    fn cycle_scores_stay_in_scale(index in 0usize..100, minor in any::<bool>(), t in tonic()) {
        let scale = if minor { Scale::natural_minor(t) } else { Scale::major(t) };
        let levi = LeviGraph::from_incidence(
            &catalog::build("diatonic-triads", &BuildOptions { scale: scale.clone(), ..Default::default() }).unwrap(),
        );
        let cycles = enumerate_cycles(levi.graph()).unwrap();
        let c = &cycles[index % cycles.len()];
        let score = cycle_to_score(&levi, c, &scale, &ScoreOptions::default()).unwrap();
        prop_assert!(score.pitch_content().is_subset(scale.pitch_set()));
        prop_assert_eq!(score.events.len(), c.len() / 2);
    }

    #[test]
    fn midi_parses_and_counts_notes(t in tonic(), pedal in any::<bool>()) {
        let score = decacycle_composition(&catalog::default_hexachord().transposed(t.value() as i32), pedal).unwrap();
        let bytes = export_midi(&score).unwrap();
        let smf = Smf::parse(&bytes).unwrap();
        prop_assert_eq!(smf.tracks.len(), 1);
        let ons = smf.tracks[0].iter().filter(|e| matches!(
            e.kind, TrackEventKind::Midi { message: MidiMessage::NoteOn { .. }, .. }
        )).count();
        let expected: usize = score.events.iter().map(|e| e.pitches.len()).sum::<usize>() + usize::from(pedal);
        prop_assert_eq!(ons, expected);
    }
}

#[test]
fn perimeter_piece_midi_structure() {
    let score = perimeter_composition(&perimeter_scale()).unwrap();
    assert_eq!(score.events.len(), 30);
    let bytes = export_midi(&score).unwrap();
    let smf = Smf::parse(&bytes).unwrap();
    assert_eq!(
        u16::from(match smf.header.timing {
            midly::Timing::Metrical(t) => t,
            other => panic!("{other:?}"),
        }),
        480
    );
    let mut tick = 0u32;
    let mut onsets = BTreeSet::new();
    let mut first_off = None;
    for e in &smf.tracks[0] {
        tick += u32::from(e.delta);
        if let TrackEventKind::Midi { message, .. } = e.kind {
            match message {
                MidiMessage::NoteOn { vel, .. } if vel > 0 => {
                    onsets.insert(tick);
                }
                MidiMessage::NoteOff { .. } => {
                    first_off.get_or_insert(tick);
                }
                _ => {}
            }
        }
    }
    assert_eq!(onsets.len(), 30);
    assert_eq!(onsets.first(), Some(&0));
    assert_eq!(first_off, Some(480));
    assert_eq!(tick, 30 * 480);
}
