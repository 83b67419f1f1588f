//! Published cycle tables of the three cubic tonnetze, by cycle length and
//! p-number, and the pinned perimeters that reproduce them.

use crate::cycles::CycleTable;

type Rows = &'static [(usize, &'static [usize])];

/// Heawood graph (diatonic seventh / Fano tonnetz).
pub const HEAWOOD_ROWS: Rows = &[
    (6, &[0, 7, 14, 7]),
    (8, &[0, 0, 7, 14]),
    (10, &[0, 7, 7, 28, 35, 7]),
    (12, &[0, 0, 7, 7, 21, 21]),
    (14, &[1, 0, 0, 7, 0, 7, 7, 2]),
];

/// Desargues graph (pentatonic tonnetz).
pub const DESARGUES_ROWS: Rows = &[
    (6, &[0, 5, 10, 5]),
    (8, &[0, 0, 10, 20]),
    (10, &[0, 5, 20, 45, 50, 12]),
    (12, &[0, 5, 5, 30, 60, 45, 5]),
    (14, &[0, 0, 20, 40, 120, 125, 110, 5]),
    (16, &[0, 5, 0, 25, 60, 105, 80, 85]),
    (18, &[0, 0, 5, 20, 30, 40, 95, 90, 30, 10]),
    (20, &[1, 0, 0, 0, 0, 7, 5, 0, 5, 5, 1]),
];

/// Tutte's 8-cage (duads and synthemes).
pub const EIGHT_CAGE_ROWS: Rows = &[
    (8, &[0, 5, 30, 45, 10]),
    (10, &[0, 5, 5, 30, 25, 7]),
    (12, &[0, 0, 10, 70, 135, 80, 5]),
    (14, &[0, 5, 40, 105, 295, 365, 255, 15]),
    (16, &[0, 0, 15, 85, 280, 465, 530, 230, 15]),
    (18, &[0, 5, 5, 80, 350, 845, 1085, 1130, 320, 20]),
    (20, &[0, 0, 35, 135, 325, 1007, 1685, 2080, 1655, 580, 22]),
    (22, &[0, 5, 0, 55, 245, 575, 1415, 2035, 2070, 1410, 460, 10]),
    (24, &[0, 5, 0, 45, 155, 535, 855, 1685, 2345, 2135, 1335, 345, 10]),
    (26, &[0, 0, 25, 25, 85, 245, 615, 895, 1390, 1610, 1410, 965, 285, 10]),
    (28, &[0, 0, 0, 25, 5, 20, 105, 140, 150, 255, 305, 200, 170, 60, 5]),
    (30, &[1, 0, 0, 0, 0, 7, 0, 15, 20, 20, 16, 10, 30, 20, 5]),
];

pub fn table(rows: Rows) -> CycleTable {
    CycleTable::from_rows(rows.iter().map(|&(l, r)| (l, r)))
}

pub fn heawood() -> CycleTable {
    table(HEAWOOD_ROWS)
}

pub fn desargues() -> CycleTable {
    table(DESARGUES_ROWS)
}

pub fn eight_cage() -> CycleTable {
    table(EIGHT_CAGE_ROWS)
}
