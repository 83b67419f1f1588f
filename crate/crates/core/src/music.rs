//! Pitch classes, chords, scales and scale degrees.
//!
//! Pitch classes are integers mod 12 with C = 0. Names are only a
//! presentation layer: output always uses the flat spellings for black keys.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MusicError {
    #[error("unknown note name `{0}`")]
    UnknownNote(String),
    #[error("unknown chord `{0}`")]
    UnknownChord(String),
    #[error("unknown scale degree `{0}`")]
    UnknownDegree(String),
    #[error("unknown scale `{0}`")]
    UnknownScale(String),
    #[error("{operation} needs a major or natural minor scale, got {kind}")]
    UnsupportedScale { operation: &'static str, kind: ScaleKind },
    #[error("{kind} scale needs {expected} distinct tones, got {got}")]
    WrongToneCount {
        kind: ScaleKind,
        expected: usize,
        got: usize,
    },
    #[error("tone {0} appears twice in the scale")]
    DuplicateTone(PitchClass),
    #[error("{0} is not a seventh chord")]
    NotASeventh(Chord),
}

const NAMES: [&str; 12] = ["C", "Db", "D", "Eb", "E", "F", "Gb", "G", "Ab", "A", "Bb", "B"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct PitchClass(u8);

impl PitchClass {
    pub const C: PitchClass = PitchClass(0);

    pub fn new(value: i32) -> PitchClass {
        PitchClass(value.rem_euclid(12) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn transpose(self, semitones: i32) -> PitchClass {
        PitchClass::new(self.0 as i32 + semitones)
    }

    /// Ascending interval from `self` to `other`, in `0..12`.
    pub fn interval_to(self, other: PitchClass) -> u8 {
        (other.0 + 12 - self.0) % 12
    }

    pub fn name(self) -> &'static str {
        NAMES[self.0 as usize]
    }

    pub fn all() -> impl Iterator<Item = PitchClass> {
        (0..12).map(PitchClass)
    }
}

impl fmt::Display for PitchClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Splits a leading note name (letter plus accidentals) from `s`.
pub(crate) fn split_note(s: &str) -> Option<(PitchClass, &str)> {
    let mut chars = s.char_indices();
    let (_, letter) = chars.next()?;
    let base = match letter {
        'C' => 0,
        'D' => 2,
        'E' => 4,
        'F' => 5,
        'G' => 7,
        'A' => 9,
        'B' => 11,
        _ => return None,
    };
    let mut shift = 0;
    let mut end = letter.len_utf8();
    for (i, c) in chars {
        match c {
            '#' | '♯' => shift += 1,
            'b' | '♭' => shift -= 1,
            _ => break,
        }
        end = i + c.len_utf8();
    }
    Some((PitchClass::new(base + shift), &s[end..]))
}

impl FromStr for PitchClass {
    type Err = MusicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match split_note(s.trim()) {
            Some((p, "")) => Ok(p),
            _ => Err(MusicError::UnknownNote(s.to_string())),
        }
    }
}

impl From<PitchClass> for String {
    fn from(p: PitchClass) -> String {
        p.name().to_string()
    }
}

impl TryFrom<String> for PitchClass {
    type Error = MusicError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// Parses a comma-separated list of note names.
pub fn parse_notes(s: &str) -> Result<Vec<PitchClass>, MusicError> {
    s.split(',').map(str::parse).collect()
}

/// A set of pitch classes as a 12-bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PitchSet(u16);

impl PitchSet {
    pub const EMPTY: PitchSet = PitchSet(0);

    pub fn contains(self, p: PitchClass) -> bool {
        self.0 & (1 << p.0) != 0
    }

    pub fn insert(&mut self, p: PitchClass) {
        self.0 |= 1 << p.0;
    }

    pub fn with(mut self, p: PitchClass) -> PitchSet {
        self.insert(p);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn union(self, other: PitchSet) -> PitchSet {
        PitchSet(self.0 | other.0)
    }

    pub fn intersection(self, other: PitchSet) -> PitchSet {
        PitchSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: PitchSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Members in ascending pitch-class order.
    pub fn iter(self) -> impl Iterator<Item = PitchClass> {
        (0..12u8).filter(move |i| self.0 & (1 << i) != 0).map(PitchClass)
    }

    pub fn transposed(self, semitones: i32) -> PitchSet {
        self.iter().map(|p| p.transpose(semitones)).collect()
    }
}

impl FromIterator<PitchClass> for PitchSet {
    fn from_iter<I: IntoIterator<Item = PitchClass>>(iter: I) -> Self {
        let mut s = PitchSet::EMPTY;
        for p in iter {
            s.insert(p);
        }
        s
    }
}

/// Serialized as the list of member names.
impl Serialize for PitchSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for PitchSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(Vec::<PitchClass>::deserialize(deserializer)?.into_iter().collect())
    }
}

impl fmt::Display for PitchSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.iter().map(PitchClass::name).collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quality {
    Major,
    Minor,
    Diminished,
    Augmented,
    MajorSeventh,
    MinorSeventh,
    DominantSeventh,
    HalfDiminishedSeventh,
}

impl Quality {
    pub const ALL: [Quality; 8] = [
        Quality::Major,
        Quality::Minor,
        Quality::Diminished,
        Quality::Augmented,
        Quality::MajorSeventh,
        Quality::MinorSeventh,
        Quality::DominantSeventh,
        Quality::HalfDiminishedSeventh,
    ];

    /// Intervals above the root.
    pub fn template(self) -> &'static [u8] {
        match self {
            Quality::Major => &[0, 4, 7],
            Quality::Minor => &[0, 3, 7],
            Quality::Diminished => &[0, 3, 6],
            Quality::Augmented => &[0, 4, 8],
            Quality::MajorSeventh => &[0, 4, 7, 11],
            Quality::MinorSeventh => &[0, 3, 7, 10],
            Quality::DominantSeventh => &[0, 4, 7, 10],
            Quality::HalfDiminishedSeventh => &[0, 3, 6, 10],
        }
    }

    pub fn suffix(self) -> &'static str {
        match self {
            Quality::Major => "M",
            Quality::Minor => "m",
            Quality::Diminished => "dim",
            Quality::Augmented => "aug",
            Quality::MajorSeventh => "M7",
            Quality::MinorSeventh => "m7",
            Quality::DominantSeventh => "V7",
            Quality::HalfDiminishedSeventh => "ø7",
        }
    }

    fn from_suffix(s: &str) -> Option<Quality> {
        if s == "o7" {
            return Some(Quality::HalfDiminishedSeventh);
        }
        Quality::ALL.into_iter().find(|q| q.suffix() == s)
    }

    pub fn is_seventh(self) -> bool {
        self.template().len() == 4
    }

    fn from_template(intervals: &[u8]) -> Option<Quality> {
        Quality::ALL.into_iter().find(|q| q.template() == intervals)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Chord {
    pub root: PitchClass,
    pub quality: Quality,
}

impl Chord {
    pub fn new(root: PitchClass, quality: Quality) -> Chord {
        Chord { root, quality }
    }

    pub fn major(root: PitchClass) -> Chord {
        Chord::new(root, Quality::Major)
    }

    pub fn minor(root: PitchClass) -> Chord {
        Chord::new(root, Quality::Minor)
    }

    pub fn pitch_set(self) -> PitchSet {
        self.quality
            .template()
            .iter()
            .map(|&i| self.root.transpose(i as i32))
            .collect()
    }

    pub fn transposed(self, semitones: i32) -> Chord {
        Chord::new(self.root.transpose(semitones), self.quality)
    }

    /// The chord with pitch content `set`. Augmented triads are symmetric;
    /// the smallest root wins.
    pub fn identify(set: PitchSet) -> Option<Chord> {
        set.iter().find_map(|root| {
            let mut intervals: Vec<u8> = set.iter().map(|p| root.interval_to(p)).collect();
            intervals.sort_unstable();
            Quality::from_template(&intervals).map(|q| Chord::new(root, q))
        })
    }

    /// The chord built on `root` from the tones `root`, `third`, `fifth`
    /// (and `seventh`), if it has one of the known qualities.
    fn stacked(tones: &[PitchClass]) -> Option<Chord> {
        let root = tones[0];
        let intervals: Vec<u8> = tones.iter().map(|&p| root.interval_to(p)).collect();
        Quality::from_template(&intervals).map(|q| Chord::new(root, q))
    }
}

impl fmt::Display for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.root, self.quality.suffix())
    }
}

impl FromStr for Chord {
    type Err = MusicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (root, rest) = split_note(s.trim()).ok_or_else(|| MusicError::UnknownChord(s.to_string()))?;
        let quality = Quality::from_suffix(rest).ok_or_else(|| MusicError::UnknownChord(s.to_string()))?;
        Ok(Chord::new(root, quality))
    }
}

impl From<Chord> for String {
    fn from(c: Chord) -> String {
        c.to_string()
    }
}

impl TryFrom<String> for Chord {
    type Error = MusicError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScaleKind {
    Major,
    NaturalMinor,
    Pentatonic,
    Chromatic,
    Hexachord,
}

impl fmt::Display for ScaleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScaleKind::Major => "major",
            ScaleKind::NaturalMinor => "natural minor",
            ScaleKind::Pentatonic => "pentatonic",
            ScaleKind::Chromatic => "chromatic",
            ScaleKind::Hexachord => "hexachord",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Scale {
    kind: ScaleKind,
    tonic: Option<PitchClass>,
    members: Vec<PitchClass>,
}

const MAJOR_STEPS: [i32; 7] = [0, 2, 4, 5, 7, 9, 11];
const MINOR_STEPS: [i32; 7] = [0, 2, 3, 5, 7, 8, 10];

impl Scale {
    pub fn major(tonic: PitchClass) -> Scale {
        Scale {
            kind: ScaleKind::Major,
            tonic: Some(tonic),
            members: MAJOR_STEPS.iter().map(|&s| tonic.transpose(s)).collect(),
        }
    }

    pub fn natural_minor(tonic: PitchClass) -> Scale {
        Scale {
            kind: ScaleKind::NaturalMinor,
            tonic: Some(tonic),
            members: MINOR_STEPS.iter().map(|&s| tonic.transpose(s)).collect(),
        }
    }

    pub fn chromatic() -> Scale {
        Scale {
            kind: ScaleKind::Chromatic,
            tonic: Some(PitchClass::C),
            members: PitchClass::all().collect(),
        }
    }

    /// Five distinct tones; the first is the tonic.
    pub fn pentatonic(members: Vec<PitchClass>) -> Result<Scale, MusicError> {
        Scale::listed(ScaleKind::Pentatonic, 5, members)
    }

    /// Six distinct tones tagged 1 to 6 in the given order.
    pub fn hexachord(members: Vec<PitchClass>) -> Result<Scale, MusicError> {
        Scale::listed(ScaleKind::Hexachord, 6, members)
    }

    fn listed(kind: ScaleKind, expected: usize, members: Vec<PitchClass>) -> Result<Scale, MusicError> {
        if members.len() != expected {
            return Err(MusicError::WrongToneCount {
                kind,
                expected,
                got: members.len(),
            });
        }
        let mut seen = PitchSet::EMPTY;
        for &p in &members {
            if seen.contains(p) {
                return Err(MusicError::DuplicateTone(p));
            }
            seen.insert(p);
        }
        let tonic = (kind == ScaleKind::Pentatonic).then(|| members[0]);
        Ok(Scale { kind, tonic, members })
    }

    pub fn kind(&self) -> ScaleKind {
        self.kind
    }

    pub fn tonic(&self) -> Option<PitchClass> {
        self.tonic
    }

    pub fn members(&self) -> &[PitchClass] {
        &self.members
    }

    pub fn pitch_set(&self) -> PitchSet {
        self.members.iter().copied().collect()
    }

    pub fn contains(&self, p: PitchClass) -> bool {
        self.members.contains(&p)
    }

    pub fn is_diatonic(&self) -> bool {
        matches!(self.kind, ScaleKind::Major | ScaleKind::NaturalMinor)
    }

    pub fn transposed(&self, semitones: i32) -> Scale {
        Scale {
            kind: self.kind,
            tonic: self.tonic.map(|t| t.transpose(semitones)),
            members: self.members.iter().map(|p| p.transpose(semitones)).collect(),
        }
    }

    /// Member at scale step `step` (1-based, wrapping).
    pub fn step(&self, step: usize) -> PitchClass {
        self.members[(step - 1) % self.members.len()]
    }

    pub(crate) fn require_diatonic(&self, operation: &'static str) -> Result<(), MusicError> {
        if self.is_diatonic() {
            Ok(())
        } else {
            Err(MusicError::UnsupportedScale {
                operation,
                kind: self.kind,
            })
        }
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.tonic) {
            (ScaleKind::Major, Some(t)) => write!(f, "{t}:major"),
            (ScaleKind::NaturalMinor, Some(t)) => write!(f, "{t}:minor"),
            (ScaleKind::Chromatic, _) => f.write_str("chromatic"),
            (kind, _) => {
                let names: Vec<&str> = self.members.iter().map(|p| p.name()).collect();
                let tag = if kind == ScaleKind::Pentatonic {
                    "pentatonic"
                } else {
                    "hexachord"
                };
                write!(f, "{tag}:{}", names.join(","))
            }
        }
    }
}

/// Accepts `C:major`, `A:minor`, `chromatic`, `pentatonic:C,D,E,G,A` and
/// `hexachord:F#,G#,C#,D#,E,A#`.
impl FromStr for Scale {
    type Err = MusicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || MusicError::UnknownScale(s.to_string());
        let s = s.trim();
        if s == "chromatic" {
            return Ok(Scale::chromatic());
        }
        let (head, tail) = s.split_once(':').ok_or_else(unknown)?;
        match head {
            "pentatonic" => Scale::pentatonic(parse_notes(tail)?),
            "hexachord" => Scale::hexachord(parse_notes(tail)?),
            _ => {
                let tonic: PitchClass = head.parse()?;
                match tail {
                    "major" => Ok(Scale::major(tonic)),
                    "minor" | "natural_minor" | "natural-minor" => Ok(Scale::natural_minor(tonic)),
                    _ => Err(unknown()),
                }
            }
        }
    }
}

/// Scale degree I to VII.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Degree(u8);

const NUMERALS: [&str; 7] = ["I", "II", "III", "IV", "V", "VI", "VII"];

impl Degree {
    pub fn new(n: u8) -> Option<Degree> {
        (1..=7).contains(&n).then_some(Degree(n))
    }

    pub fn all() -> impl Iterator<Item = Degree> {
        (1..=7).map(Degree)
    }

    pub fn number(self) -> u8 {
        self.0
    }

    pub fn numeral(self) -> &'static str {
        NUMERALS[self.0 as usize - 1]
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.numeral())
    }
}

impl FromStr for Degree {
    type Err = MusicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let upper = s.trim().to_ascii_uppercase();
        NUMERALS
            .iter()
            .position(|&n| n == upper)
            .map(|i| Degree(i as u8 + 1))
            .ok_or_else(|| MusicError::UnknownDegree(s.to_string()))
    }
}

fn stack_on_degrees(s: &Scale, size: usize) -> Vec<(Degree, Chord)> {
    Degree::all()
        .map(|d| {
            let n = d.number() as usize;
            let tones: Vec<PitchClass> = (0..size).map(|i| s.step(n + 2 * i)).collect();
            let chord = Chord::stacked(&tones).expect("diatonic stacks of thirds have a known quality");
            (d, chord)
        })
        .collect()
}

/// Triads on the seven degrees of a major or natural minor scale.
pub fn triads_of_scale(s: &Scale) -> Result<Vec<(Degree, Chord)>, MusicError> {
    s.require_diatonic("triads_of_scale")?;
    Ok(stack_on_degrees(s, 3))
}

/// Seventh chords on the seven degrees of a major or natural minor scale.
pub fn sevenths_of_scale(s: &Scale) -> Result<Vec<(Degree, Chord)>, MusicError> {
    s.require_diatonic("sevenths_of_scale")?;
    Ok(stack_on_degrees(s, 4))
}

/// Root, third and seventh of a seventh chord.
pub fn root_third_seventh(c: Chord) -> Result<PitchSet, MusicError> {
    if !c.quality.is_seventh() {
        return Err(MusicError::NotASeventh(c));
    }
    let t = c.quality.template();
    Ok([t[0], t[1], t[3]].iter().map(|&i| c.root.transpose(i as i32)).collect())
}

/// The three major (or minor) triads containing `p`, with `p` as root,
/// then as third, then as fifth.
pub fn triads_containing(p: PitchClass, quality: Quality) -> [Chord; 3] {
    let third = match quality {
        Quality::Major => 4,
        Quality::Minor => 3,
        other => panic!("triads_containing takes major or minor, got {other:?}"),
    };
    [0, third, 7].map(|i| Chord::new(p.transpose(-i), quality))
}
