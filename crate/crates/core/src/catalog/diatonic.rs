//! Tonnetze of one diatonic scale: triads, attenuated sevenths (the Fano
//! plane), and the triad/seventh heptagon.
//!
//! Points are the scale steps labelled 1 to 7; blocks are the degrees
//! labelled I to VII.

use crate::incidence::IncidenceStructure;
use crate::music::{root_third_seventh, sevenths_of_scale, triads_of_scale, Chord, PitchSet, Scale};

use super::CatalogError;

fn step_labels() -> Vec<String> {
    (1..=7).map(|i| i.to_string()).collect()
}

/// Scale steps (0-based) of the tones in `set`.
fn steps_in(s: &Scale, set: PitchSet) -> Vec<usize> {
    s.members()
        .iter()
        .enumerate()
        .filter(|(_, &p)| set.contains(p))
        .map(|(i, _)| i)
        .collect()
}

fn degree_structure(
    name: &str,
    s: &Scale,
    chords: &[(crate::music::Degree, PitchSet)],
) -> Result<IncidenceStructure, CatalogError> {
    let blocks = chords
        .iter()
        .map(|(d, set)| (d.numeral().to_string(), steps_in(s, *set)))
        .collect();
    Ok(IncidenceStructure::new(name, step_labels(), blocks)?)
}

/// Seven scale steps against the seven diatonic triads.
pub fn build_diatonic_triad_tonnetz(s: &Scale) -> Result<IncidenceStructure, CatalogError> {
    let chords: Vec<_> = triads_of_scale(s)?
        .into_iter()
        .map(|(d, c)| (d, c.pitch_set()))
        .collect();
    degree_structure("diatonic-triads", s, &chords)
}

/// Seven scale steps against root, third and seventh of the seven diatonic
/// seventh chords.
pub fn build_diatonic_seventh_tonnetz(s: &Scale) -> Result<IncidenceStructure, CatalogError> {
    let chords = sevenths_of_scale(s)?
        .into_iter()
        .map(|(d, c)| Ok((d, root_third_seventh(c)?)))
        .collect::<Result<Vec<_>, CatalogError>>()?;
    degree_structure("diatonic-sevenths", s, &chords)
}

/// The seven diatonic triads against the seven diatonic sevenths, a triad
/// lying on every seventh that contains it.
pub fn build_triad_seventh_heptagon(s: &Scale) -> Result<IncidenceStructure, CatalogError> {
    let triads: Vec<Chord> = triads_of_scale(s)?.into_iter().map(|(_, c)| c).collect();
    let sevenths: Vec<Chord> = sevenths_of_scale(s)?.into_iter().map(|(_, c)| c).collect();
    let blocks = sevenths
        .iter()
        .map(|sev| {
            let members = triads
                .iter()
                .enumerate()
                .filter(|(_, t)| t.pitch_set().is_subset(sev.pitch_set()))
                .map(|(i, _)| i)
                .collect();
            (sev.to_string(), members)
        })
        .collect();
    let points = triads.iter().map(|t| t.to_string()).collect();
    Ok(IncidenceStructure::new("triad-seventh-heptagon", points, blocks)?)
}

/// The Hamiltonian 1, I, 3, III, 5, V, 7, VII, 2, II, 4, IV, 6, VI of the
/// diatonic seventh tonnetz: each step followed by its degree, stepping
/// through the scale by thirds.
pub fn seventh_perimeter_labels() -> Vec<String> {
    let numerals = ["I", "II", "III", "IV", "V", "VI", "VII"];
    (0..7)
        .flat_map(|i| {
            let step = (2 * i) % 7;
            [(step + 1).to_string(), numerals[step].to_string()]
        })
        .collect()
}
