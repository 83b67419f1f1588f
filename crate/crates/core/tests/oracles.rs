//! Engine results checked against slow, independent implementations.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use tonnetz::canon::{canonical_form, isomorphism};
use tonnetz::catalog::{self, BuildOptions};
use tonnetz::cycles::{enumerate_cycles, enumerate_hamiltonians, length_histogram};
use tonnetz::graph::{named, Graph};
use tonnetz::levi::LeviGraph;

fn random_graph(rng: &mut StdRng, n: usize, density: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Graph::unlabeled(n, edges).unwrap()
}

fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut a = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

/// Plain backtracking over vertex assignments.
fn brute_isomorphic(g: &Graph, h: &Graph) -> bool {
    fn extend(a: &[Vec<bool>], b: &[Vec<bool>], map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let v = map.len();
        if v == a.len() {
            return true;
        }
        for w in 0..b.len() {
            if used[w] || (0..v).any(|u| a[u][v] != b[map[u]][w]) {
                continue;
            }
            used[w] = true;
            map.push(w);
            if extend(a, b, map, used) {
                return true;
            }
            map.pop();
            used[w] = false;
        }
        false
    }
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return false;
    }
    let (a, b) = (adjacency(g), adjacency(h));
    extend(&a, &b, &mut Vec::new(), &mut vec![false; h.vertex_count()])
}

/// Simple cycles by length, counted with a subset dynamic programme: paths
/// from the lowest vertex of each subset, closed when the end is adjacent
/// to the start, each cycle seen once per direction.
fn subset_dp_histogram(g: &Graph) -> Vec<u64> {
    let n = g.vertex_count();
    let a = adjacency(g);
    let mut by_len = vec![0u64; n + 1];
    let mut dp = vec![vec![0u64; n]; 1 << n];
    for s in 0..n {
        dp[1 << s][s] = 1;
    }
    for mask in 1usize..1 << n {
        let s = mask.trailing_zeros() as usize;
        for v in 0..n {
            let ways = dp[mask][v];
            if ways == 0 {
                continue;
            }
            let len = mask.count_ones() as usize;
            if len >= 3 && a[v][s] {
                by_len[len] += ways;
            }
            for w in s + 1..n {
                if mask & (1 << w) == 0 && a[v][w] {
                    dp[mask | 1 << w][w] += ways;
                }
            }
        }
    }
    by_len.iter().map(|c| c / 2).collect()
}

fn engine_histogram(g: &Graph) -> Vec<u64> {
    let mut out = vec![0u64; g.vertex_count() + 1];
    for (len, count) in length_histogram(&enumerate_cycles(g).unwrap()) {
        out[len] = count as u64;
    }
    out
}

fn shuffled(g: &Graph, rng: &mut StdRng) -> Graph {
    let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
    for i in (1..perm.len()).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    g.permuted(&perm)
}

#[test]
fn isomorphism_agrees_with_backtracking() {
    let mut rng = StdRng::seed_from_u64(7);
    for trial in 0..300 {
        let n = rng.gen_range(1..=10);
        let density = rng.gen_range(0.1..0.7);
        let g = random_graph(&mut rng, n, density);
        // Half the pairs are relabelings, half independent draws.
        let h = if trial % 2 == 0 {
            shuffled(&g, &mut rng)
        } else {
            random_graph(&mut rng, n, density)
        };
        let c = vec![0u8; n];
        let engine = isomorphism(&g, &c, &h, &c);
        assert_eq!(engine.is_some(), brute_isomorphic(&g, &h), "trial {trial}");
        if let Some(map) = engine {
            for (u, v) in g.edges() {
                assert!(h.has_edge(map[u], map[v]));
            }
        }
        let same_certificate = canonical_form(&g, &c).certificate() == canonical_form(&h, &c).certificate();
        assert_eq!(same_certificate, brute_isomorphic(&g, &h));
    }
}

#[test]
fn cubic_sixteen_vertex_graphs_against_backtracking() {
    let mut rng = StdRng::seed_from_u64(11);
    // Möbius–Kantor and the 16-cycle with chords: both cubic on 16 vertices.
    let mk = Graph::from_lcf(&[5, -5], 8);
    let other = Graph::from_lcf(&[-7, 7], 8);
    let c = vec![0u8; 16];
    assert_eq!(
        isomorphism(&mk, &c, &other, &c).is_some(),
        brute_isomorphic(&mk, &other)
    );
    let relabeled = shuffled(&mk, &mut rng);
    assert!(brute_isomorphic(&mk, &relabeled));
    assert!(isomorphism(&mk, &c, &relabeled, &c).is_some());
}

#[test]
fn cycle_counts_agree_with_subset_dp() {
    let mut rng = StdRng::seed_from_u64(3);
    for trial in 0..60 {
        let n = rng.gen_range(3..=12);
        let density = rng.gen_range(0.2..0.6);
        let g = random_graph(&mut rng, n, density);
        assert_eq!(engine_histogram(&g), subset_dp_histogram(&g), "trial {trial}");
    }
}

#[test]
fn heawood_cycles_agree_with_subset_dp() {
    let g = named::heawood();
    let dp = subset_dp_histogram(&g);
    assert_eq!(engine_histogram(&g), dp);
    assert_eq!((dp[6], dp[8], dp[10], dp[12], dp[14]), (28, 21, 84, 56, 24));
    assert_eq!(enumerate_hamiltonians(&g).unwrap().len() as u64, dp[14]);
}

#[test]
fn tetracycles_agree_with_quadruple_search() {
    for name in ["diatonic-triads", "diatonic-sevenths", "pentatonic", "heptagon"] {
        let levi = LeviGraph::from_incidence(&catalog::build(name, &BuildOptions::default()).unwrap());
        let a = adjacency(levi.graph());
        let n = a.len();
        // Four-cycles a-b-c-d with a smallest and b < d.
        let mut count = 0;
        for w in 0..n {
            for x in w + 1..n {
                for y in w + 1..n {
                    for z in x + 1..n {
                        if y != x && y != z && a[w][x] && a[x][y] && a[y][z] && a[z][w] {
                            count += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(levi.tetracycles().len(), count, "{name}");
    }
}
