use std::collections::BTreeSet;

use hypergrass::subset::is_sorted_collection;
use hypergrass::triangulation::{
    circuit_from_permutation, enumerate_maximal_sorted, eulerian_number, permutation_from_collection, shift_neighbors,
};
use hypergrass::{Error, Limits, SortedCollection};
use proptest::prelude::*;

#[test]
fn enumerated_cells_are_sorted_circuits() {
    let l = Limits::default();
    for n in 2..=8 {
        for k in 1..n {
            let cells = enumerate_maximal_sorted(k, n, &l).unwrap();
            assert_eq!(eulerian_number(n - 1, k - 1), cells.len().into(), "({k},{n})");
            for c in &cells {
                assert_eq!(c.len(), n);
                assert!(is_sorted_collection(c.members()).unwrap());
                let circ = permutation_from_collection(c).unwrap();
                assert_eq!(&circ.collection(), c);
                assert_eq!(circuit_from_permutation(circ.omega(), k).unwrap(), circ);
                let v = circ.vertices();
                for t in 0..n {
                    let next = v[(t + 1) % n];
                    assert!(shift_neighbors(&v[t]).iter().any(|(l, w)| *w == next && *l == circ.omega()[t]));
                }
            }
        }
    }
}

#[test]
fn complements_biject_cells() {
    let l = Limits::default();
    for n in 2..=8 {
        for k in 1..n {
            let mine: BTreeSet<SortedCollection> =
                enumerate_maximal_sorted(k, n, &l).unwrap().iter().map(|c| c.complement()).collect();
            let theirs: BTreeSet<SortedCollection> = enumerate_maximal_sorted(n - k, n, &l).unwrap().into_iter().collect();
            assert_eq!(mine, theirs, "({k},{n})");
        }
    }
}

proptest! {
    #[test]
    fn permutations_give_circuits_or_refuse(perm in (2usize..=10).prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle()), k in 1usize..10) {
        let n = perm.len();
        prop_assume!(k < n);
        match circuit_from_permutation(&perm, k) {
            Ok(c) => {
                prop_assert_eq!(c.omega()[0], 1);
                let cell = c.collection();
                prop_assert!(cell.is_maximal());
                prop_assert_eq!(permutation_from_collection(&cell).unwrap(), c);
            }
            Err(Error::NoCircuit { .. }) => {}
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }
}
