//! Graph cycles realized as simple timed scores.
//!
//! Every vertex label of a catalog tonnetz names a pitch-class set: chord
//! names (`CM`, `Bbø7`), concatenated note names (`CDEb`), scale steps
//! (`3`), degree numerals (`IV`), hexachord duads (`12`) and letter duads
//! (`ab`, realized as the three duads of their syntheme).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::sylvester::{Duad, LetterDuad, LetterTables};
use crate::catalog::{self, BuildOptions, CatalogError};
use crate::cycles::{Cycle, CycleCatalog, CycleError};
use crate::levi::{Color, LeviGraph};
use crate::music::{self, Chord, Degree, PitchClass, PitchSet, Scale, ScaleKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScoreError {
    #[error("label `{label}` cannot be realized in {scale}")]
    Unrealizable { label: String, scale: String },
    #[error("unknown letter duad `{0}`")]
    UnknownLetterDuad(String),
    #[error("repeats and beats must be positive")]
    ZeroLength,
    #[error("walk vertex {0} is not in the graph")]
    UnknownVertex(usize),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Cycle(#[from] CycleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Event {
    pub pitches: PitchSet,
    pub beats: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Score {
    pub title: String,
    pub scale: Scale,
    pub events: Vec<Event>,
    /// A tone held under the whole piece, outside the scale.
    pub pedal: Option<PitchClass>,
}

impl Score {
    pub fn total_beats(&self) -> u32 {
        self.events.iter().map(|e| e.beats).sum()
    }

    pub fn pitch_content(&self) -> PitchSet {
        self.events.iter().fold(PitchSet::EMPTY, |acc, e| acc.union(e.pitches))
    }
}

/// Which side of a Levi graph a walk sounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Emit {
    Points,
    Blocks,
    Both,
}

impl Emit {
    fn admits(self, c: Color) -> bool {
        match self {
            Emit::Points => c == Color::White,
            Emit::Blocks => c == Color::Black,
            Emit::Both => true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ScoreOptions {
    pub title: String,
    pub emit: Emit,
    pub repeats_per_unit: u32,
    pub beats: u32,
    pub pedal: Option<PitchClass>,
}

impl Default for ScoreOptions {
    fn default() -> Self {
        ScoreOptions {
            title: String::new(),
            emit: Emit::Blocks,
            repeats_per_unit: 1,
            beats: 1,
            pedal: None,
        }
    }
}

/// The two tones of duad `d` over hexachord `h`.
pub fn realize_duad(d: Duad, h: &Scale) -> PitchSet {
    let m = h.members();
    PitchSet::EMPTY.with(m[d.0 as usize - 1]).with(m[d.1 as usize - 1])
}

/// The three duads of the syntheme named by letter duad `letters`.
pub fn realize_syntheme(letters: &str, h: &Scale) -> Result<[PitchSet; 3], ScoreError> {
    let ld: LetterDuad = letters
        .parse()
        .map_err(|_| ScoreError::UnknownLetterDuad(letters.to_string()))?;
    let tables = LetterTables::from_totals(&catalog::sylvester::all_totals())?;
    Ok(tables.syntheme_of(ld).0.map(|d| realize_duad(d, h)))
}

/// Concatenated note names such as `CDEb`.
fn parse_note_run(s: &str) -> Option<PitchSet> {
    let mut rest = s;
    let mut out = PitchSet::EMPTY;
    while !rest.is_empty() {
        let (p, tail) = music::split_note(rest)?;
        if tail.len() == rest.len() {
            return None;
        }
        out.insert(p);
        rest = tail;
    }
    (!out.is_empty()).then_some(out)
}

/// The pitch-class sets sounded for one vertex label over scale `s`.
pub fn realize_label(label: &str, s: &Scale) -> Result<Vec<PitchSet>, ScoreError> {
    let unrealizable = || ScoreError::Unrealizable {
        label: label.to_string(),
        scale: s.to_string(),
    };
    let sets = if s.kind() == ScaleKind::Hexachord {
        if let Ok(d) = label.parse::<Duad>() {
            vec![realize_duad(d, s)]
        } else if label.parse::<LetterDuad>().is_ok() {
            realize_syntheme(label, s)?.to_vec()
        } else {
            vec![parse_note_run(label).ok_or_else(unrealizable)?]
        }
    } else if let Ok(c) = label.parse::<Chord>() {
        vec![c.pitch_set()]
    } else if let Some(p) = parse_note_run(label) {
        vec![p]
    } else if let Ok(n) = label.parse::<usize>() {
        if !(1..=s.members().len()).contains(&n) {
            return Err(unrealizable());
        }
        vec![PitchSet::EMPTY.with(s.step(n))]
    } else if let Ok(d) = label.parse::<Degree>() {
        let triads = music::triads_of_scale(s).map_err(|_| unrealizable())?;
        vec![triads[d.number() as usize - 1].1.pitch_set()]
    } else {
        return Err(unrealizable());
    };
    if sets.iter().all(|p| p.is_subset(s.pitch_set())) {
        Ok(sets)
    } else {
        Err(unrealizable())
    }
}

/// Plays each walk `repeats_per_unit` times in turn, sounding the vertices
/// admitted by `options.emit`.
pub fn walks_to_score(
    levi: &LeviGraph,
    walks: &[Vec<usize>],
    scale: &Scale,
    options: &ScoreOptions,
) -> Result<Score, ScoreError> {
    if options.repeats_per_unit == 0 || options.beats == 0 {
        return Err(ScoreError::ZeroLength);
    }
    let mut events = Vec::new();
    for walk in walks {
        let mut unit = Vec::new();
        for &v in walk {
            if v >= levi.vertex_count() {
                return Err(ScoreError::UnknownVertex(v));
            }
            if options.emit.admits(levi.color(v)) {
                for pitches in realize_label(levi.label(v), scale)? {
                    unit.push(Event {
                        pitches,
                        beats: options.beats,
                    });
                }
            }
        }
        for _ in 0..options.repeats_per_unit {
            events.extend_from_slice(&unit);
        }
    }
    Ok(Score {
        title: options.title.clone(),
        scale: scale.clone(),
        events,
        pedal: options.pedal,
    })
}

pub fn cycle_to_score(levi: &LeviGraph, c: &Cycle, scale: &Scale, options: &ScoreOptions) -> Result<Score, ScoreError> {
    walks_to_score(levi, &[c.vertices().to_vec()], scale, options)
}

pub const PERIMETER_SCALE: [&str; 5] = ["C", "D", "Eb", "G", "Ab"];

pub fn perimeter_scale() -> Scale {
    Scale::pentatonic(PERIMETER_SCALE.iter().map(|s| s.parse().unwrap()).collect()).expect("five distinct tones")
}

/// The 1p-hexacycles of the pentatonic tonnetz under its pinned perimeter,
/// each as the run of six consecutive perimeter vertices it follows, in
/// order of where the run starts.
pub fn perimeter_hexacycles(levi: &LeviGraph, perimeter: &[usize]) -> Result<Vec<Vec<usize>>, ScoreError> {
    let g = levi.graph();
    let reference = crate::cycles::ReferenceHamiltonian::new(g, Cycle::new(g, perimeter.to_vec())?)?;
    let catalog = CycleCatalog::build(g)?;
    let n = perimeter.len();
    let mut runs = Vec::new();
    for c in catalog.cycles().iter().filter(|c| c.len() == 6) {
        if reference.p_number(c)? != 1 {
            continue;
        }
        let start = (0..n)
            .find(|&i| (0..6).all(|k| c.contains(perimeter[(i + k) % n])))
            .expect("a 1p-hexacycle follows five perimeter edges");
        runs.push((start, (0..6).map(|k| perimeter[(start + k) % n]).collect::<Vec<_>>()));
    }
    runs.sort();
    Ok(runs.into_iter().map(|(_, run)| run).collect())
}

/// "On the Perimeter": the overlapping 1p-hexacycles of the pentatonic
/// tonnetz over `scale`, each played twice, sounding only the three-note
/// chords.
pub fn perimeter_composition(scale: &Scale) -> Result<Score, ScoreError> {
    let options = BuildOptions {
        scale: scale.clone(),
        ..BuildOptions::default()
    };
    let levi = LeviGraph::from_incidence(&catalog::build("pentatonic", &options)?);
    let perimeter = perimeter_walk(&levi, &catalog::perimeter_labels("pentatonic", &options).unwrap());
    let units = perimeter_hexacycles(&levi, &perimeter)?;
    walks_to_score(
        &levi,
        &units,
        scale,
        &ScoreOptions {
            title: "On the Perimeter".into(),
            emit: Emit::Blocks,
            repeats_per_unit: 2,
            ..ScoreOptions::default()
        },
    )
}

fn perimeter_walk(levi: &LeviGraph, labels: &[String]) -> Vec<usize> {
    labels
        .iter()
        .map(|l| levi.find_any(l).expect("perimeter labels name vertices"))
        .collect()
}

pub const DECACYCLE: [&str; 10] = ["12", "ab", "56", "df", "13", "ac", "25", "bf", "36", "cd"];

pub const DECACYCLE_PEDAL: &str = "B";

/// "Decacycle": the walk 12, ab, 56, df, ... over hexachord `h`. Each duad
/// sounds as one dyad and each letter duad as the three dyads of its
/// syntheme.
pub fn decacycle_composition(h: &Scale, pedal: bool) -> Result<Score, ScoreError> {
    let levi = LeviGraph::from_incidence(&catalog::build_duads_synthemes(h)?.structure);
    let walk: Vec<usize> = DECACYCLE
        .iter()
        .map(|l| levi.find_any(l).expect("decacycle labels name vertices"))
        .collect();
    Cycle::new(levi.graph(), walk.clone())?;
    walks_to_score(
        &levi,
        &[walk],
        h,
        &ScoreOptions {
            title: "Decacycle".into(),
            emit: Emit::Both,
            pedal: pedal.then(|| DECACYCLE_PEDAL.parse().unwrap()),
            ..ScoreOptions::default()
        },
    )
}
