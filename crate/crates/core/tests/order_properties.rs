use std::cmp::Ordering;

use hypergrass::dual_graph::cubical_distances_from;
use hypergrass::grassmann::{sample_positive_point, torus_normalize, Arithmetic};
use hypergrass::order_theory::{
    build_young_grid, empirical_poset, grid_inequalities, infer_poset, infer_poset_in_order, rank_lower_bound, sorted_window,
};
use hypergrass::subset::{all_subsets, is_sorted_pair};
use hypergrass::triangulation::{enumerate_maximal_sorted, permutation_from_collection, shift};
use hypergrass::{Error, Limits};

/// Checks a grid against the circuit it was built from, without trusting the
/// builder's own verification.
fn check_grids(k: usize, n: usize, every: usize, samples: u64) {
    let l = Limits::default();
    for (ci, j) in enumerate_maximal_sorted(k, n, &l).unwrap().iter().enumerate().step_by(every) {
        let dists = cubical_distances_from(j, &l).unwrap();
        let poset = infer_poset(j).unwrap();
        let points: Vec<_> = (0..samples)
            .map(|s| torus_normalize(&sample_positive_point(k, n, s * 7919 + ci as u64).unwrap(), j, Arithmetic::Exact).unwrap().1)
            .collect();
        for w in all_subsets(n, k).iter().filter(|w| !j.contains(w)) {
            let applicable = j.members().iter().any(|m| is_sorted_pair(m, w).unwrap());
            let g = match build_young_grid(j, w) {
                Ok(g) => g,
                Err(Error::NotApplicable(_)) => {
                    assert!(!applicable, "{j} {w}");
                    continue;
                }
                Err(e) => panic!("{j} {w}: {e}"),
            };
            assert!(applicable);
            assert_eq!(g.origin, *w);
            for e in &g.edges {
                let a = g.vertex(e.from).unwrap();
                let b = g.vertex(e.to).unwrap();
                assert_eq!(shift(&a, e.label), Some(b), "{j} {w}: edge {:?}", e);
            }
            for v in g.outer_vertices() {
                assert!(j.contains(&v));
            }
            let s = rank_lower_bound(j, w).unwrap();
            assert!(dists[w] <= s, "{j} {w}: cube distance {} above {s}", dists[w]);
            for r in grid_inequalities(&g) {
                assert!(poset.less(&r.lower, &r.upper), "{j} {w}: {} < {} not inferred", r.lower, r.upper);
                for p in &points {
                    assert_eq!(p.compare(&r.lower, &r.upper).unwrap(), Ordering::Less);
                }
            }
        }
    }
}

#[test]
fn grids_exhaustive_two_by_six() {
    check_grids(2, 6, 1, 3);
}

#[test]
fn grids_three_by_six() {
    check_grids(3, 6, 1, 1);
}

#[test]
fn grids_spot_check_three_by_eight() {
    check_grids(3, 8, 97, 1);
}

#[test]
fn windows_are_contiguous_on_two_by_five() {
    for j in enumerate_maximal_sorted(2, 5, &Limits::default()).unwrap() {
        let circ = permutation_from_collection(&j).unwrap();
        for w in all_subsets(5, 2).iter().filter(|w| !j.contains(w)) {
            let win = sorted_window(&circ, w).unwrap();
            let expected = j.members().iter().filter(|m| is_sorted_pair(m, w).unwrap()).count();
            assert_eq!(win.len(), expected);
        }
    }
}

#[test]
fn inference_is_sound_and_order_free() {
    let l = Limits::default();
    for (k, n) in [(2, 5), (3, 6)] {
        for (i, j) in enumerate_maximal_sorted(k, n, &l).unwrap().iter().enumerate().step_by(5) {
            let inferred = infer_poset(j).unwrap();
            assert!(inferred.is_contained_in(&empirical_poset(j, 30, i as u64).unwrap()), "{j}");
            assert!(inferred.same_relations(&infer_poset_in_order(j, Some(i as u64)).unwrap()));
        }
    }
}
