//! Maximal sorted collections (the simplices of the triangulation of the
//! hypersimplex) and their realisation as minimal circuits of the shift graph
//! `G_{k,n}`.
//!
//! An edge of `G_{k,n}` labelled `i` moves a 1 of `ε` from position `i` to
//! position `i + 1` (cyclically). A minimal circuit uses every label exactly
//! once; its label sequence `ω` is stored rotated so that it starts with 1.

use std::collections::BTreeSet;
use std::fmt;

use num::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::subset::{binomial, sorted_pair_unchecked, KSubset};

/// A pairwise sorted family of k-subsets, members in canonical order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SortedCollection {
    #[serde(skip)]
    n: usize,
    #[serde(skip)]
    k: usize,
    members: Vec<KSubset>,
}

impl SortedCollection {
    pub fn new(members: Vec<KSubset>) -> Result<Self> {
        let first = *members.first().ok_or_else(|| Error::Parameter("empty collection".into()))?;
        let set: BTreeSet<KSubset> = members.into_iter().collect();
        for m in &set {
            first.same_shape(m)?;
        }
        let members: Vec<KSubset> = set.into_iter().collect();
        for (idx, a) in members.iter().enumerate() {
            for b in &members[idx + 1..] {
                if !sorted_pair_unchecked(a, b) {
                    return Err(Error::NotSorted(*a, *b));
                }
            }
        }
        Ok(SortedCollection { n: first.n(), k: first.k(), members })
    }

    /// Like [`SortedCollection::new`] but additionally requires `n` members.
    pub fn maximal(members: Vec<KSubset>) -> Result<Self> {
        let c = Self::new(members)?;
        c.require_maximal()?;
        Ok(c)
    }

    pub(crate) fn from_sorted_unchecked(n: usize, k: usize, mut members: Vec<KSubset>) -> Self {
        members.sort();
        SortedCollection { n, k, members }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn members(&self) -> &[KSubset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_maximal(&self) -> bool {
        self.members.len() == self.n
    }

    pub fn require_maximal(&self) -> Result<()> {
        if !self.is_maximal() {
            return Err(Error::NotMaximal { expected: self.n, found: self.members.len() });
        }
        Ok(())
    }

    pub fn contains(&self, s: &KSubset) -> bool {
        self.members.binary_search(s).is_ok()
    }

    /// The collection of complements, a sorted collection of `(n-k)`-subsets.
    pub fn complement(&self) -> SortedCollection {
        let members = self.members.iter().map(|m| m.complement()).collect();
        SortedCollection::from_sorted_unchecked(self.n, self.n - self.k, members)
    }

    /// Replaces one member, re-sorting; does not re-check sortedness.
    pub(crate) fn replaced(&self, old: &KSubset, new: KSubset) -> SortedCollection {
        let members = self.members.iter().map(|m| if m == old { new } else { *m }).collect();
        SortedCollection::from_sorted_unchecked(self.n, self.k, members)
    }
}

impl fmt::Display for SortedCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(|m| m.compact()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

impl fmt::Debug for SortedCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Applies the shift edge labelled `label` to `v`, if it exists.
pub fn shift(v: &KSubset, label: u32) -> Option<KSubset> {
    v.exchange(label, v.cyclic_succ(label))
}

/// All out-edges of `ε_v` in `G_{k,n}` as `(label, target)`, ordered by label.
pub fn shift_neighbors(v: &KSubset) -> Vec<(u32, KSubset)> {
    (1..=v.n() as u32).filter_map(|i| shift(v, i).map(|t| (i, t))).collect()
}

/// A minimal circuit of `G_{k,n}`: `labels[t]` is the label of the edge from
/// `vertices[t]` to `vertices[t + 1]` (indices mod `n`), and `labels[0] == 1`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MinimalCircuit {
    n: usize,
    k: usize,
    vertices: Vec<KSubset>,
    labels: Vec<u32>,
}

impl MinimalCircuit {
    /// Builds the circuit from a start vertex and a label sequence, checking
    /// every edge, then rotates it into canonical form.
    pub fn from_walk(start: KSubset, labels: &[u32]) -> Result<Self> {
        let n = start.n();
        if labels.len() != n {
            return Err(Error::Parameter(format!("a minimal circuit has {n} edges, got {}", labels.len())));
        }
        check_permutation(labels)?;
        let mut vertices = Vec::with_capacity(n);
        let mut cur = start;
        for &l in labels {
            vertices.push(cur);
            cur = shift(&cur, l).ok_or_else(|| {
                Error::Internal(format!("label {l} is not a shift edge at {cur} in {labels:?}"))
            })?;
        }
        if cur != start {
            return Err(Error::Internal(format!("walk {labels:?} from {start} does not close")));
        }
        let offset = labels.iter().position(|&l| l == 1).expect("permutation contains 1");
        vertices.rotate_left(offset);
        let mut labels = labels.to_vec();
        labels.rotate_left(offset);
        Ok(MinimalCircuit { n, k: start.k(), vertices, labels })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertices(&self) -> &[KSubset] {
        &self.vertices
    }

    /// The permutation `ω` in canonical rotation.
    pub fn omega(&self) -> &[u32] {
        &self.labels
    }

    pub fn omega_string(&self) -> String {
        let sep = if self.n >= 10 { "," } else { "" };
        self.labels.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(sep)
    }

    pub fn position(&self, v: &KSubset) -> Option<usize> {
        self.vertices.iter().position(|x| x == v)
    }

    pub fn collection(&self) -> SortedCollection {
        SortedCollection::from_sorted_unchecked(self.n, self.k, self.vertices.clone())
    }
}

impl fmt::Debug for MinimalCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C[{}]", self.omega_string())?;
        for v in &self.vertices {
            write!(f, " {}", v.compact())?;
        }
        Ok(())
    }
}

fn check_permutation(omega: &[u32]) -> Result<()> {
    let n = omega.len();
    let mut seen = vec![false; n + 1];
    for &x in omega {
        if x == 0 || x as usize > n || std::mem::replace(&mut seen[x as usize], true) {
            return Err(Error::Parameter(format!("{omega:?} is not a permutation of [{n}]")));
        }
    }
    Ok(())
}

/// Reconstructs the minimal circuit labelled by `omega`.
///
/// Position `i` of the start vertex holds a 1 exactly when the label `i - 1`
/// (cyclically) occurs after the label `i` in `omega`: the 1 at `i` must be
/// present when label `i` fires and the only way it could arrive earlier is
/// through label `i - 1`. That start vertex always walks back to itself, so
/// `omega` labels a circuit iff it has exactly `k` such positions.
pub fn circuit_from_permutation(omega: &[u32], k: usize) -> Result<MinimalCircuit> {
    let n = omega.len();
    if n < 2 {
        return Err(Error::Parameter("minimal circuits need n >= 2".into()));
    }
    check_permutation(omega)?;
    let mut time = vec![0usize; n + 1];
    for (t, &l) in omega.iter().enumerate() {
        time[l as usize] = t;
    }
    let mut mask = 0u64;
    for i in 1..=n {
        let pred = if i == 1 { n } else { i - 1 };
        if time[pred] > time[i] {
            mask |= 1u64 << (i - 1);
        }
    }
    if mask.count_ones() as usize != k {
        return Err(Error::NoCircuit { omega: omega.to_vec(), k });
    }
    MinimalCircuit::from_walk(KSubset::from_mask(n, mask)?, omega)
}

/// Orders the members of a maximal sorted collection along its minimal circuit.
pub fn permutation_from_collection(c: &SortedCollection) -> Result<MinimalCircuit> {
    c.require_maximal()?;
    let n = c.n();
    let start = c.members()[0];
    let mut path = vec![start];
    let mut labels = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    if close_circuit(c, &mut path, &mut labels, &mut used) {
        MinimalCircuit::from_walk(start, &labels)
    } else {
        Err(Error::Internal(format!("no minimal circuit through the members of {c}")))
    }
}

fn close_circuit(c: &SortedCollection, path: &mut Vec<KSubset>, labels: &mut Vec<u32>, used: &mut [bool]) -> bool {
    let n = c.n();
    let cur = *path.last().unwrap();
    for (l, next) in shift_neighbors(&cur) {
        if used[l as usize] {
            continue;
        }
        if labels.len() == n - 1 {
            if next == path[0] {
                labels.push(l);
                return true;
            }
            continue;
        }
        if !c.contains(&next) || path.contains(&next) {
            continue;
        }
        used[l as usize] = true;
        path.push(next);
        labels.push(l);
        if close_circuit(c, path, labels, used) {
            return true;
        }
        labels.pop();
        path.pop();
        used[l as usize] = false;
    }
    false
}

/// Eulerian number `A(m, d)`: permutations of `[m]` with exactly `d` descents.
/// Uses `A(0, 0) = 1` and returns 0 outside `0 <= d < max(m, 1)`.
pub fn eulerian_number(m: usize, d: usize) -> BigUint {
    let mut row: Vec<BigUint> = vec![BigUint::from(1u32)];
    for len in 1..=m {
        let mut next = vec![BigUint::from(0u32); len];
        for (j, slot) in next.iter_mut().enumerate() {
            let mut v = BigUint::from(0u32);
            if j < row.len() {
                v += &row[j] * BigUint::from(j + 1);
            }
            if j >= 1 && j - 1 < row.len() {
                v += &row[j - 1] * BigUint::from(len - j);
            }
            *slot = v;
        }
        row = next;
    }
    row.get(d).cloned().unwrap_or_default()
}

pub(crate) fn check_size(k: usize, n: usize, limits: &Limits) -> Result<()> {
    if k == 0 || k >= n {
        return Err(Error::Parameter(format!("need 1 <= k < n, got k = {k}, n = {n}")));
    }
    if n > crate::subset::MAX_N {
        return Err(Error::SizeLimit(format!("n = {n} exceeds {}", crate::subset::MAX_N)));
    }
    let subsets = binomial(n, k);
    if subsets > limits.max_subsets as u128 {
        return Err(Error::SizeLimit(format!("C({n},{k}) = {subsets} exceeds cap {}", limits.max_subsets)));
    }
    let cells = eulerian_number(n - 1, k - 1);
    if cells > BigUint::from(limits.max_collections) {
        return Err(Error::SizeLimit(format!("A({},{}) = {cells} exceeds cap {}", n - 1, k - 1, limits.max_collections)));
    }
    Ok(())
}

/// All maximal sorted collections of k-subsets of `[n]`, in canonical order.
///
/// Depth-first growth of shift paths in `G_{k,n}`: every circuit is grown
/// from the vertex preceding its label-1 edge, extending one unused label at a
/// time and pruning any vertex that is not sorted with the path so far.
pub fn enumerate_maximal_sorted(k: usize, n: usize, limits: &Limits) -> Result<Vec<SortedCollection>> {
    check_size(k, n, limits)?;
    let roots: Vec<KSubset> = crate::subset::all_subsets(n, k)
        .into_iter()
        .filter(|v| v.contains(1) && !v.contains(2))
        .collect();
    let mut found: Vec<SortedCollection> = roots
        .par_iter()
        .flat_map_iter(|&root| {
            let mut out = Vec::new();
            if let Some(first) = shift(&root, 1) {
                let mut path = vec![root, first];
                let mut used = vec![false; n + 1];
                used[1] = true;
                grow(n, k, &mut path, &mut used, &mut out);
            }
            out
        })
        .collect();
    found.sort();
    Ok(found)
}

fn grow(n: usize, k: usize, path: &mut Vec<KSubset>, used: &mut [bool], out: &mut Vec<SortedCollection>) {
    let cur = *path.last().unwrap();
    if path.len() == n {
        let last = (1..=n as u32).find(|&l| !used[l as usize]).expect("one label left");
        if shift(&cur, last) == Some(path[0]) {
            out.push(SortedCollection::from_sorted_unchecked(n, k, path.clone()));
        }
        return;
    }
    for l in 1..=n as u32 {
        if used[l as usize] {
            continue;
        }
        let Some(next) = shift(&cur, l) else { continue };
        if !path.iter().all(|p| sorted_pair_unchecked(p, &next)) {
            continue;
        }
        used[l as usize] = true;
        path.push(next);
        grow(n, k, path, used, out);
        path.pop();
        used[l as usize] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, e: &[u32]) -> KSubset {
        KSubset::new(n, e).unwrap()
    }

    fn coll(n: usize, lists: &[&[u32]]) -> SortedCollection {
        SortedCollection::new(lists.iter().map(|e| s(n, e)).collect()).unwrap()
    }

    #[test]
    fn shift_neighbor_examples() {
        assert_eq!(shift_neighbors(&s(4, &[1, 2])), vec![(2, s(4, &[1, 3]))]);
        assert_eq!(shift_neighbors(&s(4, &[1, 3])), vec![(1, s(4, &[2, 3])), (3, s(4, &[1, 4]))]);
        assert_eq!(shift_neighbors(&s(4, &[3, 4])), vec![(4, s(4, &[1, 3]))]);
    }

    #[test]
    fn circuit_of_the_running_example() {
        let c = circuit_from_permutation(&[5, 6, 1, 7, 8, 2, 4, 3], 3).unwrap();
        let expected: Vec<KSubset> = [
            [1, 4, 5],
            [1, 4, 6],
            [1, 4, 7],
            [2, 4, 7],
            [2, 4, 8],
            [1, 2, 4],
            [1, 3, 4],
            [1, 3, 5],
        ]
        .iter()
        .map(|e| s(8, e))
        .collect();
        assert_eq!(c.omega(), &[1, 7, 8, 2, 4, 3, 5, 6]);
        // same cyclic sequence of vertices, canonical rotation starts before label 1
        let mut rotated = expected.clone();
        rotated.rotate_left(2);
        assert_eq!(c.vertices(), rotated.as_slice());
        let col = c.collection();
        assert!(col.contains(&s(8, &[1, 3, 5])) && col.contains(&s(8, &[1, 4, 5])) && col.contains(&s(8, &[1, 4, 6])));
        assert_eq!(permutation_from_collection(&col).unwrap(), c);
    }

    #[test]
    fn identity_permutation_for_k_one() {
        let c = circuit_from_permutation(&[1, 2, 3, 4, 5], 1).unwrap();
        let singles: Vec<KSubset> = (1..=5).map(|i| s(5, &[i])).collect();
        assert_eq!(c.vertices(), singles.as_slice());
        let col = SortedCollection::maximal(singles).unwrap();
        assert_eq!(permutation_from_collection(&col).unwrap().omega(), &[1, 2, 3, 4, 5]);
    }

    #[test]
    fn other_circuit_contains_356() {
        let c = circuit_from_permutation(&[1, 2, 4, 6, 7, 8, 3, 5], 3).unwrap();
        assert!(c.position(&s(8, &[3, 5, 6])).is_some());
    }

    #[test]
    fn no_circuit_and_bad_permutations() {
        assert!(matches!(circuit_from_permutation(&[1, 2, 3, 4], 2), Err(Error::NoCircuit { .. })));
        assert!(matches!(circuit_from_permutation(&[1, 1, 3, 4], 2), Err(Error::Parameter(_))));
        assert!(matches!(circuit_from_permutation(&[1, 2, 5, 4], 2), Err(Error::Parameter(_))));
    }

    #[test]
    fn circuit_of_small_thrackle() {
        let c = coll(4, &[&[1, 2], &[1, 3], &[1, 4], &[2, 4]]);
        let circ = permutation_from_collection(&c).unwrap();
        // 12 -2-> 13 -3-> 14 -1-> 24 -4-> 12
        assert_eq!(circ.omega(), &[1, 4, 2, 3]);
        assert_eq!(circ.vertices()[0], s(4, &[1, 4]));
        assert_eq!(circ.collection(), c);
    }

    #[test]
    fn permutation_from_collection_rejects_non_maximal() {
        let c = coll(4, &[&[1, 2], &[1, 3]]);
        assert!(matches!(permutation_from_collection(&c), Err(Error::NotMaximal { .. })));
        assert!(matches!(
            SortedCollection::new(vec![s(4, &[1, 2]), s(4, &[3, 4])]),
            Err(Error::NotSorted(_, _))
        ));
    }

    #[test]
    fn eulerian_values() {
        assert_eq!(eulerian_number(5, 1), BigUint::from(26u32));
        assert_eq!(eulerian_number(7, 0), BigUint::from(1u32));
        assert_eq!(eulerian_number(0, 0), BigUint::from(1u32));
        assert_eq!(eulerian_number(4, 4), BigUint::from(0u32));
    }

    #[test]
    fn enumerate_small_cases() {
        let limits = Limits::default();
        let got = enumerate_maximal_sorted(2, 4, &limits).unwrap();
        let expected = vec![
            coll(4, &[&[1, 2], &[1, 3], &[1, 4], &[2, 4]]),
            coll(4, &[&[1, 2], &[1, 3], &[2, 3], &[2, 4]]),
            coll(4, &[&[1, 3], &[1, 4], &[2, 4], &[3, 4]]),
            coll(4, &[&[1, 3], &[2, 3], &[2, 4], &[3, 4]]),
        ];
        assert_eq!(got, expected);
        assert_eq!(enumerate_maximal_sorted(2, 6, &limits).unwrap().len(), 26);
        let k1 = enumerate_maximal_sorted(1, 5, &limits).unwrap();
        assert_eq!(k1.len(), 1);
        assert_eq!(k1[0].len(), 5);
    }

    #[test]
    fn enumerate_rejects_bad_parameters() {
        let limits = Limits::default();
        assert!(matches!(enumerate_maximal_sorted(0, 4, &limits), Err(Error::Parameter(_))));
        assert!(matches!(enumerate_maximal_sorted(4, 4, &limits), Err(Error::Parameter(_))));
        let tight = Limits { max_collections: 10, ..Limits::default() };
        assert!(matches!(enumerate_maximal_sorted(2, 6, &tight), Err(Error::SizeLimit(_))));
    }
}
