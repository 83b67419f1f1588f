//! Duads, synthemes and totals of a six-element set, and the letter tables
//! that swap the roles of numbers and totals.
//!
//! Numbers 1 to 6 tag the tones of a hexachord. The six totals are named by
//! the letters a to f; a letter-duad names the syntheme the two totals share,
//! and a letter-syntheme names the duad lying on its three letter-duads.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::incidence::IncidenceStructure;
use crate::music::{Scale, ScaleKind};

use super::CatalogError;

/// Unordered pair of tone numbers `1..=6`, stored ascending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Duad(pub u8, pub u8);

impl Duad {
    pub fn new(a: u8, b: u8) -> Duad {
        assert!(
            a != b && (1..=6).contains(&a) && (1..=6).contains(&b),
            "duad of distinct tones 1..=6"
        );
        Duad(a.min(b), a.max(b))
    }

    pub fn contains(self, x: u8) -> bool {
        self.0 == x || self.1 == x
    }

    fn overlaps(self, other: Duad) -> bool {
        self.contains(other.0) || self.contains(other.1)
    }
}

impl fmt::Display for Duad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.0, self.1)
    }
}

impl std::str::FromStr for Duad {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits: Vec<u8> = s.bytes().map(|b| b.wrapping_sub(b'0')).collect();
        match digits[..] {
            [a, b] if a != b && (1..=6).contains(&a) && (1..=6).contains(&b) => Ok(Duad::new(a, b)),
            _ => Err(CatalogError::UnknownLabel(s.to_string())),
        }
    }
}

/// Three disjoint duads covering 1 to 6, stored ascending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Syntheme(pub [Duad; 3]);

impl Syntheme {
    pub fn new(mut duads: [Duad; 3]) -> Option<Syntheme> {
        duads.sort();
        let disjoint = !duads[0].overlaps(duads[1]) && !duads[0].overlaps(duads[2]) && !duads[1].overlaps(duads[2]);
        disjoint.then_some(Syntheme(duads))
    }

    pub fn duads(&self) -> &[Duad; 3] {
        &self.0
    }

    pub fn contains(&self, d: Duad) -> bool {
        self.0.contains(&d)
    }
}

impl fmt::Display for Syntheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, {}, {}", self.0[0], self.0[1], self.0[2])
    }
}

/// Five synthemes that together contain every duad once, stored ascending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Total(pub [Syntheme; 5]);

impl Total {
    pub fn synthemes(&self) -> &[Syntheme; 5] {
        &self.0
    }

    pub fn contains(&self, s: Syntheme) -> bool {
        self.0.contains(&s)
    }

    fn covers_all_duads(&self) -> bool {
        let duads: BTreeSet<Duad> = self.0.iter().flat_map(|s| s.0).collect();
        duads.len() == 15
    }
}

/// The fifteen duads in lexicographic order.
pub fn all_duads() -> Vec<Duad> {
    (1..=6).flat_map(|a| (a + 1..=6).map(move |b| Duad(a, b))).collect()
}

/// The fifteen synthemes in lexicographic order.
pub fn all_synthemes() -> Vec<Syntheme> {
    let duads = all_duads();
    let mut out = Vec::new();
    for (i, &a) in duads.iter().enumerate() {
        for (j, &b) in duads.iter().enumerate().skip(i + 1) {
            for &c in &duads[j + 1..] {
                if let Some(s) = Syntheme::new([a, b, c]) {
                    out.push(s);
                }
            }
        }
    }
    out
}

/// The six totals in lexicographic order.
pub fn all_totals() -> Vec<Total> {
    let synthemes = all_synthemes();
    let mut out = Vec::new();
    let mut chosen: Vec<Syntheme> = Vec::new();
    fn go(start: usize, synthemes: &[Syntheme], chosen: &mut Vec<Syntheme>, out: &mut Vec<Total>) {
        if chosen.len() == 5 {
            out.push(Total(chosen.clone().try_into().unwrap()));
            return;
        }
        for i in start..synthemes.len() {
            let s = synthemes[i];
            if chosen.iter().all(|c| c.0.iter().all(|d| !s.contains(*d))) {
                chosen.push(s);
                go(i + 1, synthemes, chosen, out);
                chosen.pop();
            }
        }
    }
    go(0, &synthemes, &mut chosen, &mut out);
    out
}

pub const LETTERS: [char; 6] = ['a', 'b', 'c', 'd', 'e', 'f'];

/// Unordered pair of total letters, stored ascending as indices `0..6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LetterDuad(pub u8, pub u8);

impl LetterDuad {
    pub fn new(a: u8, b: u8) -> LetterDuad {
        assert!(a != b && a < 6 && b < 6, "letter duad of distinct letters");
        LetterDuad(a.min(b), a.max(b))
    }

    /// All fifteen in lexicographic order (ab, ac, ..., ef).
    pub fn all() -> Vec<LetterDuad> {
        (0..6).flat_map(|a| (a + 1..6).map(move |b| LetterDuad(a, b))).collect()
    }
}

impl fmt::Display for LetterDuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", LETTERS[self.0 as usize], LETTERS[self.1 as usize])
    }
}

impl std::str::FromStr for LetterDuad {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let idx: Vec<u8> = s.bytes().map(|b| b.wrapping_sub(b'a')).collect();
        match idx[..] {
            [a, b] if a != b && a < 6 && b < 6 => Ok(LetterDuad::new(a, b)),
            _ => Err(CatalogError::UnknownLabel(s.to_string())),
        }
    }
}

/// Three disjoint letter duads, stored ascending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LetterSyntheme(pub [LetterDuad; 3]);

impl fmt::Display for LetterSyntheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, {}, {}", self.0[0], self.0[1], self.0[2])
    }
}

/// Each total as printed, in letter order a to f; used only to fix which
/// total gets which letter.
const LETTER_TOTALS: [[&str; 5]; 6] = [
    ["12,34,56", "13,25,46", "14,26,35", "15,24,36", "16,23,45"],
    ["12,34,56", "16,24,35", "15,23,46", "13,26,45", "14,25,36"],
    ["13,25,46", "16,24,35", "12,36,45", "14,23,56", "15,26,34"],
    ["14,26,35", "15,23,46", "12,36,45", "16,25,34", "13,24,56"],
    ["15,24,36", "13,26,45", "14,23,56", "16,25,34", "12,35,46"],
    ["16,23,45", "14,25,36", "15,26,34", "13,24,56", "12,35,46"],
];

/// Column order of the numbers table: for each number, the order in which
/// the other five numbers are paired with it.
const NUMBER_ROW_PARTNERS: [[u8; 5]; 6] = [
    [2, 3, 4, 5, 6],
    [1, 3, 4, 5, 6],
    [4, 5, 6, 1, 2],
    [5, 6, 1, 2, 3],
    [6, 1, 2, 3, 4],
    [1, 2, 3, 4, 5],
];

fn parse_syntheme(s: &str) -> Syntheme {
    let duads: Vec<Duad> = s.split(',').map(|d| d.parse().unwrap()).collect();
    Syntheme::new([duads[0], duads[1], duads[2]]).unwrap()
}

fn letter_total_sets() -> Vec<BTreeSet<Syntheme>> {
    LETTER_TOTALS
        .iter()
        .map(|row| row.iter().map(|s| parse_syntheme(s)).collect())
        .collect()
}

/// The six totals with their letters, and the four derived tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LetterTables {
    /// `totals[i]` is the total named by letter `LETTERS[i]`.
    totals: [Total; 6],
}

impl LetterTables {
    /// Validates a family of six totals (in any order) and names them.
    pub fn from_totals(totals: &[Total]) -> Result<LetterTables, CatalogError> {
        let bad = |why: &str| Err(CatalogError::Totals(why.to_string()));
        if totals.len() != 6 {
            return bad("expected six totals");
        }
        for t in totals {
            if !t.covers_all_duads() {
                return bad("a total does not cover all fifteen duads");
            }
        }
        for (i, a) in totals.iter().enumerate() {
            for b in &totals[i + 1..] {
                let shared = a.0.iter().filter(|s| b.contains(**s)).count();
                if shared != 1 {
                    return bad("two totals do not share exactly one syntheme");
                }
            }
        }
        let reference = letter_total_sets();
        let mut named: Vec<Option<Total>> = vec![None; 6];
        for t in totals {
            let set: BTreeSet<Syntheme> = t.0.iter().copied().collect();
            let Some(i) = reference.iter().position(|r| *r == set) else {
                return bad("a total is not one of the six totals of 1..6");
            };
            if named[i].replace(*t).is_some() {
                return bad("a total appears twice");
            }
        }
        let totals: Vec<Total> = named.into_iter().map(Option::unwrap).collect();
        Ok(LetterTables {
            totals: totals.try_into().unwrap(),
        })
    }

    pub fn total(&self, letter: usize) -> &Total {
        &self.totals[letter]
    }

    /// The syntheme shared by the two totals.
    pub fn syntheme_of(&self, d: LetterDuad) -> Syntheme {
        let (a, b) = (&self.totals[d.0 as usize], &self.totals[d.1 as usize]);
        *a.0.iter()
            .find(|s| b.contains(**s))
            .expect("two totals share a syntheme")
    }

    /// The letter duad naming `s`.
    pub fn letter_duad_of(&self, s: Syntheme) -> LetterDuad {
        LetterDuad::all()
            .into_iter()
            .find(|&d| self.syntheme_of(d) == s)
            .expect("every syntheme lies on exactly two totals")
    }

    /// The three letter duads whose synthemes contain `d`.
    pub fn letter_syntheme_of(&self, d: Duad) -> LetterSyntheme {
        let found: Vec<LetterDuad> = LetterDuad::all()
            .into_iter()
            .filter(|&ld| self.syntheme_of(ld).contains(d))
            .collect();
        LetterSyntheme(found.try_into().expect("each duad lies on three synthemes"))
    }

    /// Letters as totals: each letter with the synthemes it shares with the
    /// other five letters, in letter order.
    pub fn table_i(&self) -> Vec<(char, [Syntheme; 5])> {
        (0..6u8)
            .map(|x| {
                let row: Vec<Syntheme> = (0..6u8)
                    .filter(|&y| y != x)
                    .map(|y| self.syntheme_of(LetterDuad::new(x, y)))
                    .collect();
                (LETTERS[x as usize], row.try_into().unwrap())
            })
            .collect()
    }

    /// Letter duads as synthemes.
    pub fn table_ii(&self) -> Vec<(LetterDuad, Syntheme)> {
        LetterDuad::all()
            .into_iter()
            .map(|d| (d, self.syntheme_of(d)))
            .collect()
    }

    /// Numbers as totals of letter synthemes.
    pub fn table_iii(&self) -> Vec<(u8, [LetterSyntheme; 5])> {
        (1..=6u8)
            .map(|n| {
                let row = NUMBER_ROW_PARTNERS[n as usize - 1].map(|m| self.letter_syntheme_of(Duad::new(n, m)));
                (n, row)
            })
            .collect()
    }

    /// Number duads as letter synthemes.
    pub fn table_iv(&self) -> Vec<(Duad, LetterSyntheme)> {
        all_duads()
            .into_iter()
            .map(|d| (d, self.letter_syntheme_of(d)))
            .collect()
    }

    pub fn render_table_i(&self) -> String {
        render_rows(
            self.table_i()
                .iter()
                .map(|(l, row)| (l.to_string(), row.map(|s| s.to_string()))),
        )
    }

    pub fn render_table_ii(&self) -> String {
        render_columns(
            self.table_ii()
                .iter()
                .map(|(d, s)| (d.to_string(), s.to_string()))
                .collect(),
        )
    }

    pub fn render_table_iii(&self) -> String {
        render_rows(
            self.table_iii()
                .iter()
                .map(|(n, row)| (n.to_string(), row.map(|s| s.to_string()))),
        )
    }

    pub fn render_table_iv(&self) -> String {
        render_columns(
            self.table_iv()
                .iter()
                .map(|(d, s)| (d.to_string(), s.to_string()))
                .collect(),
        )
    }
}

fn render_rows<I: Iterator<Item = (String, [String; 5])>>(rows: I) -> String {
    let mut out = String::new();
    for (head, cells) in rows {
        out.push_str(&head);
        for c in cells {
            out.push_str(" | ");
            out.push_str(&c);
        }
        out.push('\n');
    }
    out
}

/// Fifteen entries laid out column-major in three columns of five.
fn render_columns(entries: Vec<(String, String)>) -> String {
    let mut out = String::new();
    for r in 0..5 {
        let cells: Vec<String> = (0..3)
            .map(|c| {
                let (k, v) = &entries[c * 5 + r];
                format!("{k} | {v}")
            })
            .collect();
        out.push_str(&cells.join(" || "));
        out.push('\n');
    }
    out
}

/// The duad/syntheme structure of a hexachord with its letter tables.
#[derive(Debug, Clone)]
pub struct DuadsSynthemes {
    pub structure: IncidenceStructure,
    pub hexachord: Scale,
    pub totals: Vec<Total>,
    pub tables: LetterTables,
}

/// Duads as points, synthemes (labelled by letter duads, in letter order) as
/// blocks, by containment.
pub fn build_duads_synthemes(h: &Scale) -> Result<DuadsSynthemes, CatalogError> {
    if h.kind() != ScaleKind::Hexachord {
        return Err(CatalogError::NotHexachord(h.to_string()));
    }
    let totals = all_totals();
    let tables = LetterTables::from_totals(&totals)?;
    let duads = all_duads();
    let blocks = LetterDuad::all()
        .into_iter()
        .map(|ld| {
            let s = tables.syntheme_of(ld);
            let members = s.0.iter().map(|d| duads.iter().position(|x| x == d).unwrap()).collect();
            (ld.to_string(), members)
        })
        .collect();
    let points = duads.iter().map(|d| d.to_string()).collect();
    let structure = IncidenceStructure::new("duads-synthemes", points, blocks)?;
    Ok(DuadsSynthemes {
        structure,
        hexachord: h.clone(),
        totals,
        tables,
    })
}
