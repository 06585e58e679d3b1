use std::collections::VecDeque;

use hypergrass::dual_graph::{build_dual_graph, cube_moves, cubical_distance, geometric_cube, DualGraph};
use hypergrass::triangulation::permutation_from_collection;
use hypergrass::Limits;

fn graph_distances(g: &DualGraph, from: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.vertices.len()];
    dist[from] = 0;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for w in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

#[test]
fn cubical_distance_is_a_metric_below_graph_distance() {
    let l = Limits::default();
    for (k, n) in [(2, 5), (2, 6), (3, 6)] {
        let g = build_dual_graph(k, n, &l).unwrap();
        let m = g.vertices.len();
        let d: Vec<Vec<usize>> = (0..m)
            .map(|a| (0..m).map(|b| cubical_distance(&g.vertices[a], &g.vertices[b], &l).unwrap()).collect())
            .collect();
        for a in 0..m {
            let gd = graph_distances(&g, a);
            for b in 0..m {
                assert_eq!(d[a][b] == 0, a == b);
                assert_eq!(d[a][b], d[b][a]);
                assert!(d[a][b] <= gd[b]);
                for c in 0..m {
                    assert!(d[a][c] <= d[a][b] + d[b][c]);
                }
            }
        }
    }
}

#[test]
fn cube_moves_span_geometric_cubes() {
    let g = build_dual_graph(2, 6, &Limits::default()).unwrap();
    for p in &g.vertices {
        let circ = permutation_from_collection(p).unwrap();
        for mv in cube_moves(&circ) {
            let swaps: Vec<_> = mv.detours.iter().map(|d| (d.i_t, d.replacement)).collect();
            assert!(geometric_cube(p, &swaps).unwrap(), "{p} {swaps:?}");
        }
    }
}
