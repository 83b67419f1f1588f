//! Containment structures between k-subsets and (k+1)-subsets of a label set:
//! the pentatonic tonnetz, its odd-scale generalization, and the diatonic
//! cluster structure.

use crate::incidence::IncidenceStructure;
use crate::music::Scale;

use super::CatalogError;

/// `k`-element index subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            if n - i < k - current.len() {
                break;
            }
            current.push(i);
            go(i + 1, n, k, current, out);
            current.pop();
        }
    }
    go(0, n, k, &mut current, &mut out);
    out
}

/// Points are the `k`-subsets of `labels`, blocks the `(k+1)`-subsets, and a
/// point lies on a block when it is contained in it. Subsets are labelled by
/// concatenating member labels in the given order.
pub fn subset_tonnetz<S: AsRef<str>>(name: &str, labels: &[S], k: usize) -> Result<IncidenceStructure, CatalogError> {
    let n = labels.len();
    let join = |subset: &[usize]| subset.iter().map(|&i| labels[i].as_ref()).collect::<String>();
    let points = combinations(n, k);
    let point_labels: Vec<String> = points.iter().map(|s| join(s)).collect();
    let blocks = combinations(n, k + 1)
        .into_iter()
        .map(|b| {
            let members = points
                .iter()
                .enumerate()
                .filter(|(_, p)| p.iter().all(|x| b.contains(x)))
                .map(|(i, _)| i)
                .collect();
            (join(&b), members)
        })
        .collect();
    Ok(IncidenceStructure::new(name, point_labels, blocks)?)
}

pub const PENTATONIC_LABELS: [&str; 5] = ["C", "D", "E", "G", "A"];

/// Two-note "major" clusters against three-note "minor" clusters of a
/// five-tone scale, labelled C, D, E, G, A.
pub fn build_pentatonic_tonnetz() -> IncidenceStructure {
    build_pentatonic_tonnetz_with(&PENTATONIC_LABELS).expect("five distinct labels")
}

/// The pentatonic tonnetz over any five distinct labels.
pub fn build_pentatonic_tonnetz_with<S: AsRef<str>>(labels: &[S]) -> Result<IncidenceStructure, CatalogError> {
    if labels.len() != 5 {
        return Err(CatalogError::LabelCount {
            expected: 5,
            got: labels.len(),
        });
    }
    subset_tonnetz("pentatonic", labels, 2)
}

/// The pentatonic tonnetz labelled by the tones of a pentatonic scale.
pub fn build_pentatonic_tonnetz_for(scale: &Scale) -> Result<IncidenceStructure, CatalogError> {
    let names: Vec<&str> = scale.members().iter().map(|p| p.name()).collect();
    build_pentatonic_tonnetz_with(&names)
}

pub const MAX_ODD_SCALE: usize = 9;

/// `k`-subsets against `(k+1)`-subsets of `m` tones labelled 1 to `m`, where
/// `m = 2k + 1`.
pub fn build_odd_scale_tonnetz(m: usize) -> Result<IncidenceStructure, CatalogError> {
    if m < 3 || m.is_multiple_of(2) || m > MAX_ODD_SCALE {
        return Err(CatalogError::OddScale(m));
    }
    let labels: Vec<String> = (1..=m).map(|i| i.to_string()).collect();
    subset_tonnetz(&format!("odd-scale-{m}"), &labels, (m - 1) / 2)
}

/// Three-note against four-note clusters of a diatonic scale.
pub fn build_diatonic_cluster_tonnetz(s: &Scale) -> Result<IncidenceStructure, CatalogError> {
    s.require_diatonic("build_diatonic_cluster_tonnetz")?;
    let names: Vec<&str> = s.members().iter().map(|p| p.name()).collect();
    subset_tonnetz("diatonic-clusters", &names, 3)
}

/// The complement map `X -> labels \ X` as an index-level duality witness:
/// point `i` goes to block `witness[i]` and block `j` to point
/// `witness_inv[j]`. Only meaningful for odd-scale structures.
pub fn complement_duality(m: usize) -> Result<Vec<usize>, CatalogError> {
    if m < 3 || m.is_multiple_of(2) || m > MAX_ODD_SCALE {
        return Err(CatalogError::OddScale(m));
    }
    let k = (m - 1) / 2;
    let points = combinations(m, k);
    let blocks = combinations(m, k + 1);
    Ok(points
        .iter()
        .map(|p| {
            let complement: Vec<usize> = (0..m).filter(|x| !p.contains(x)).collect();
            blocks.iter().position(|b| *b == complement).unwrap()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_counts() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(9, 4).len(), 126);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(4, 2)[0], vec![0, 1]);
    }

    #[test]
    fn pentatonic_incidences() {
        let s = build_pentatonic_tonnetz();
        assert_eq!(s.point_count(), 10);
        assert_eq!(s.block_count(), 10);
        assert_eq!(s.incidence_count(), 30);
        let cd = s.point_index("CD").unwrap();
        let through: Vec<&str> = s
            .blocks_through(cd)
            .into_iter()
            .map(|b| s.blocks()[b].label.as_str())
            .collect();
        assert_eq!(through, ["CDE", "CDG", "CDA"]);
        let cde = s.block_index("CDE").unwrap();
        assert_eq!(s.block_point_labels(cde), ["CD", "CE", "DE"]);
    }

    #[test]
    fn odd_scale_domain() {
        for m in [0, 1, 2, 4, 11] {
            assert!(matches!(build_odd_scale_tonnetz(m), Err(CatalogError::OddScale(_))));
        }
        let s = build_odd_scale_tonnetz(3).unwrap();
        assert_eq!(s.point_labels(), ["1", "2", "3"]);
        assert_eq!(s.block_count(), 3);
    }

    #[test]
    fn complement_is_a_bijection() {
        let w = complement_duality(7).unwrap();
        let mut sorted = w.clone();
        sorted.sort();
        assert_eq!(sorted, (0..35).collect::<Vec<_>>());
    }
}
