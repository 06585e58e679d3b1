use hypergrass::subset::{
    all_subsets, d_ij_by_hyperplanes, is_sorted_collection, is_sorted_pair, is_thrackle, is_weakly_separated_pair, sort_merge,
};
use hypergrass::KSubset;
use proptest::prelude::*;

fn arb_pair() -> impl Strategy<Value = (KSubset, KSubset)> {
    (2usize..=14).prop_flat_map(|n| (1..n).prop_flat_map(move |k| {
        let pick = proptest::sample::subsequence((1..=n as u32).collect::<Vec<_>>(), k);
        (pick.clone(), pick).prop_map(move |(a, b)| (KSubset::new(n, &a).unwrap(), KSubset::new(n, &b).unwrap()))
    }))
}

fn multiset(a: &KSubset, b: &KSubset) -> Vec<u32> {
    let mut v = a.elements();
    v.extend(b.elements());
    v.sort();
    v
}

fn sorted_by_hyperplanes(x: &KSubset, y: &KSubset) -> bool {
    let n = x.n();
    (1..=n).all(|i| (i..=n).all(|j| d_ij_by_hyperplanes(&x.epsilon(), &y.epsilon(), i, j).unwrap() <= 1))
}

proptest! {
    #[test]
    fn sort_merge_gives_a_sorted_pair((a, b) in arb_pair()) {
        let (s1, s2) = sort_merge(&a, &b).unwrap();
        prop_assert!(is_sorted_pair(&s1, &s2).unwrap());
        prop_assert_eq!(sort_merge(&s1, &s2).unwrap(), (s1, s2));
        prop_assert_eq!(multiset(&s1, &s2), multiset(&a, &b));
    }

    #[test]
    fn sortedness_matches_hyperplane_distance((a, b) in arb_pair()) {
        prop_assert_eq!(is_sorted_pair(&a, &b).unwrap(), sorted_by_hyperplanes(&a, &b));
    }

    #[test]
    fn relations_are_symmetric((a, b) in arb_pair()) {
        prop_assert_eq!(is_sorted_pair(&a, &b).unwrap(), is_sorted_pair(&b, &a).unwrap());
        prop_assert_eq!(is_weakly_separated_pair(&a, &b).unwrap(), is_weakly_separated_pair(&b, &a).unwrap());
    }

    #[test]
    fn thrackles_are_sorted_families(n in 3usize..=9, picks in proptest::collection::vec(any::<proptest::sample::Index>(), 1..7)) {
        let all = all_subsets(n, 2);
        let mut edges: Vec<KSubset> = picks.iter().map(|i| *i.get(&all)).collect();
        edges.sort();
        edges.dedup();
        prop_assert_eq!(is_thrackle(&edges).unwrap(), is_sorted_collection(&edges).unwrap());
    }
}

#[test]
fn exhaustive_small_spaces() {
    for (n, k) in [(6, 2), (6, 3), (8, 3)] {
        let all = all_subsets(n, k);
        for a in &all {
            for b in &all {
                assert_eq!(is_sorted_pair(a, b).unwrap(), sorted_by_hyperplanes(a, b), "{a} {b}");
                let (s1, s2) = sort_merge(a, b).unwrap();
                assert!(is_sorted_pair(&s1, &s2).unwrap());
                assert_eq!(multiset(&s1, &s2), multiset(a, b));
            }
        }
    }
}
