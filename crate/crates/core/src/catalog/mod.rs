//! Builders for every tonnetz in the catalog, a name-based registry for the
//! command line, and the pinned perimeters of the cubic ones.

pub mod diatonic;
pub mod eulerian;
pub mod subsets;
pub mod sylvester;

use thiserror::Error;

use crate::cycles::{CycleError, ReferenceHamiltonian};
use crate::incidence::{IncidenceError, IncidenceStructure};
use crate::levi::LeviGraph;
use crate::music::{MusicError, PitchClass, Quality, Scale, ScaleKind};

pub use diatonic::{build_diatonic_seventh_tonnetz, build_diatonic_triad_tonnetz, build_triad_seventh_heptagon};
pub use eulerian::{
    build_eulerian_tonnetz, build_pitch_class_graph, build_pitch_to_triad_tonnetz, build_tripartite_tonnetz,
    check_duality, minor_triads_from_hexacycles,
};
pub use subsets::{
    build_diatonic_cluster_tonnetz, build_odd_scale_tonnetz, build_pentatonic_tonnetz, build_pentatonic_tonnetz_with,
};
pub use sylvester::{build_duads_synthemes, LetterTables};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error(transparent)]
    Music(#[from] MusicError),
    #[error(transparent)]
    Incidence(#[from] IncidenceError),
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error("odd-scale tonnetz needs an odd m between 3 and 9, got {0}")]
    OddScale(usize),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("expected a hexachord, got {0}")]
    NotHexachord(String),
    #[error("invalid family of totals: {0}")]
    Totals(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("unknown structure `{0}`; known: {names}", names = NAMES.join(", "))]
    UnknownStructure(String),
    #[error("no pinned perimeter for `{0}`")]
    NoPerimeter(String),
}

/// Registry names, in presentation order.
pub const NAMES: &[&str] = &[
    "eulerian",
    "pitch-to-major",
    "pitch-to-minor",
    "diatonic-triads",
    "diatonic-sevenths",
    "heptagon",
    "diatonic-clusters",
    "pentatonic",
    "odd-scale-3",
    "odd-scale-5",
    "odd-scale-7",
    "odd-scale-9",
    "duads-synthemes",
];

pub const DEFAULT_HEXACHORD: [&str; 6] = ["F#", "G#", "C#", "D#", "E", "A#"];

pub fn default_hexachord() -> Scale {
    let tones = DEFAULT_HEXACHORD.iter().map(|s| s.parse().unwrap()).collect();
    Scale::hexachord(tones).expect("six distinct tones")
}

/// Parameters shared by the registry builders.
#[derive(Debug, Clone)]
pub struct BuildOptions {
    /// Diatonic scale, or pentatonic scale for `pentatonic`.
    pub scale: Scale,
    pub hexachord: Scale,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            scale: Scale::major(PitchClass::C),
            hexachord: default_hexachord(),
        }
    }
}

/// Builds the structure registered under `name`.
pub fn build(name: &str, options: &BuildOptions) -> Result<IncidenceStructure, CatalogError> {
    let s = &options.scale;
    match name {
        "eulerian" => Ok(build_eulerian_tonnetz()),
        "pitch-to-major" => Ok(build_pitch_to_triad_tonnetz(Quality::Major)),
        "pitch-to-minor" => Ok(build_pitch_to_triad_tonnetz(Quality::Minor)),
        "diatonic-triads" => build_diatonic_triad_tonnetz(s),
        "diatonic-sevenths" => build_diatonic_seventh_tonnetz(s),
        "heptagon" => build_triad_seventh_heptagon(s),
        "diatonic-clusters" => build_diatonic_cluster_tonnetz(s),
        "pentatonic" if s.kind() == ScaleKind::Pentatonic => subsets::build_pentatonic_tonnetz_for(s),
        "pentatonic" => Ok(build_pentatonic_tonnetz()),
        "duads-synthemes" => Ok(build_duads_synthemes(&options.hexachord)?.structure),
        _ => match name.strip_prefix("odd-scale-").and_then(|m| m.parse().ok()) {
            Some(m) => build_odd_scale_tonnetz(m),
            None => Err(CatalogError::UnknownStructure(name.to_string())),
        },
    }
}

/// Perimeter of the pentatonic tonnetz over C, D, E, G, A: the first
/// Hamiltonian, in canonical order, reproducing the published cycle table.
pub const PENTATONIC_PERIMETER: [&str; 20] = [
    "CD", "CDE", "CE", "CEG", "CG", "CDG", "DG", "DGA", "GA", "CGA", "CA", "CEA", "EA", "EGA", "EG", "DEG", "DE",
    "DEA", "DA", "CDA",
];

/// Perimeter of the duad/syntheme tonnetz. Every Hamiltonian reproduces the
/// published cycle table; this is the first, in canonical order, on which
/// the decacycle 12, ab, 56, df, 13, ac, 25, bf, 36, cd has five chords.
pub const DUADS_SYNTHEMES_PERIMETER: [&str; 30] = [
    "12", "ab", "34", "cf", "15", "ae", "36", "cd", "45", "af", "16", "de", "25", "bf", "14", "ad", "26", "be", "13",
    "ac", "46", "bd", "23", "ce", "56", "df", "24", "bc", "35", "ef",
];

/// A pentatonic perimeter label re-spelled over other scale tones.
fn respell_pentatonic(label: &str, names: &[&str]) -> String {
    label
        .chars()
        .map(|c| {
            let i = subsets::PENTATONIC_LABELS
                .iter()
                .position(|l| l.starts_with(c))
                .expect("default pentatonic labels are single letters");
            names[i]
        })
        .collect()
}

/// The pinned perimeter labels for a registry structure, when one exists.
pub fn perimeter_labels(name: &str, options: &BuildOptions) -> Option<Vec<String>> {
    let owned = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect();
    match name {
        "pentatonic" if options.scale.kind() == ScaleKind::Pentatonic => {
            let names: Vec<&str> = options.scale.members().iter().map(|p| p.name()).collect();
            Some(
                PENTATONIC_PERIMETER
                    .iter()
                    .map(|l| respell_pentatonic(l, &names))
                    .collect(),
            )
        }
        "eulerian" => Some(eulerian::eulerian_perimeter_labels()),
        "pitch-to-major" => Some(eulerian::pitch_to_triad_perimeter_labels(Quality::Major)),
        "pitch-to-minor" => Some(eulerian::pitch_to_triad_perimeter_labels(Quality::Minor)),
        "diatonic-sevenths" => Some(diatonic::seventh_perimeter_labels()),
        "pentatonic" => Some(owned(&PENTATONIC_PERIMETER)),
        "duads-synthemes" => Some(owned(&DUADS_SYNTHEMES_PERIMETER)),
        _ => None,
    }
}

/// The pinned perimeter of a registry structure as a reference Hamiltonian
/// of its Levi graph.
pub fn pinned_reference(
    name: &str,
    options: &BuildOptions,
    levi: &LeviGraph,
) -> Result<ReferenceHamiltonian, CatalogError> {
    let labels = perimeter_labels(name, options).ok_or_else(|| CatalogError::NoPerimeter(name.to_string()))?;
    Ok(ReferenceHamiltonian::from_labels(levi.graph(), &labels)?)
}
