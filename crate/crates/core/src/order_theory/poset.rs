//! Partial orders on all minors forced by fixing the largest block.

use std::cmp::Ordering;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grassmann::{sample_positive_point, torus_normalize, Arithmetic};
use crate::subset::{all_subsets, sort_merge_unchecked, sorted_pair_unchecked, KSubset};
use crate::triangulation::SortedCollection;

/// Why a strict relation holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Provenance {
    /// Every minor outside the top block is below it.
    Top,
    /// From `Δ_x Δ_y < Δ_sort1 Δ_sort2` and a known `>=` between factors.
    Plucker { x: KSubset, y: KSubset, sort1: KSubset, sort2: KSubset },
    Transitive,
    /// Observed on every sampled point.
    Empirical { trials: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct PosetRelation {
    /// `None` stands for the top class.
    pub lower: Option<KSubset>,
    pub upper: Option<KSubset>,
    #[serde(flatten)]
    pub provenance: Provenance,
}

/// Strict relations among minors, with the members of `J` contracted into a
/// single top class. Node `0` is the top class; node `i > 0` is `others[i-1]`.
#[derive(Clone, Debug)]
pub struct MinorPoset {
    pub n: usize,
    pub k: usize,
    pub top: Vec<KSubset>,
    pub others: Vec<KSubset>,
    less: Vec<Vec<bool>>,
    why: Vec<Vec<Option<Provenance>>>,
}

impl MinorPoset {
    fn empty(j: &SortedCollection) -> Self {
        let others: Vec<KSubset> = all_subsets(j.n(), j.k()).into_iter().filter(|s| !j.contains(s)).collect();
        let m = others.len() + 1;
        MinorPoset {
            n: j.n(),
            k: j.k(),
            top: j.members().to_vec(),
            others,
            less: vec![vec![false; m]; m],
            why: vec![vec![None; m]; m],
        }
    }

    fn node(&self, s: &KSubset) -> Option<usize> {
        if self.top.contains(s) {
            Some(0)
        } else {
            self.others.binary_search(s).ok().map(|i| i + 1)
        }
    }

    fn label(&self, node: usize) -> Option<KSubset> {
        (node > 0).then(|| self.others[node - 1])
    }

    pub fn node_count(&self) -> usize {
        self.others.len() + 1
    }

    /// `Δ_a < Δ_b` is established.
    pub fn less(&self, a: &KSubset, b: &KSubset) -> bool {
        match (self.node(a), self.node(b)) {
            (Some(x), Some(y)) => self.less[x][y],
            _ => false,
        }
    }

    /// `Δ_a >= Δ_b` is established.
    fn at_least(&self, a: usize, b: usize) -> bool {
        a == b || a == 0 || self.less[b][a]
    }

    fn add(&mut self, a: usize, b: usize, p: Provenance) -> bool {
        if self.less[a][b] {
            return false;
        }
        self.less[a][b] = true;
        self.why[a][b] = Some(p);
        true
    }

    fn close(&mut self) -> Result<()> {
        let m = self.node_count();
        for via in 0..m {
            for a in 0..m {
                if !self.less[a][via] {
                    continue;
                }
                for b in 0..m {
                    if self.less[via][b] && !self.less[a][b] {
                        self.less[a][b] = true;
                        self.why[a][b] = Some(Provenance::Transitive);
                    }
                }
            }
        }
        if let Some(a) = (0..m).find(|&a| self.less[a][a]) {
            return Err(Error::InconsistentPoset(self.label(a).unwrap_or(self.top[0])));
        }
        Ok(())
    }

    /// Every established strict relation.
    pub fn relations(&self) -> Vec<PosetRelation> {
        let m = self.node_count();
        let mut out = Vec::new();
        for a in 0..m {
            for b in 0..m {
                if self.less[a][b] {
                    out.push(PosetRelation {
                        lower: self.label(a),
                        upper: self.label(b),
                        provenance: self.why[a][b].clone().unwrap_or(Provenance::Transitive),
                    });
                }
            }
        }
        out
    }

    /// Covering relations of the contracted order.
    pub fn hasse(&self) -> Vec<PosetRelation> {
        let m = self.node_count();
        let mut out = Vec::new();
        for a in 0..m {
            for b in 0..m {
                if self.less[a][b] && !(0..m).any(|c| self.less[a][c] && self.less[c][b]) {
                    out.push(PosetRelation {
                        lower: self.label(a),
                        upper: self.label(b),
                        provenance: self.why[a][b].clone().unwrap_or(Provenance::Transitive),
                    });
                }
            }
        }
        out
    }

    /// Whether every relation of `self` also holds in `other`.
    pub fn is_contained_in(&self, other: &MinorPoset) -> bool {
        self.top == other.top
            && self.others == other.others
            && (0..self.node_count()).all(|a| (0..self.node_count()).all(|b| !self.less[a][b] || other.less[a][b]))
    }

    pub fn same_relations(&self, other: &MinorPoset) -> bool {
        self.top == other.top && self.others == other.others && self.less == other.less
    }

    /// Whether any two nodes are comparable or equal: a total preorder.
    pub fn is_total(&self) -> bool {
        let m = self.node_count();
        (0..m).all(|a| (a + 1..m).all(|b| self.less[a][b] || self.less[b][a]))
    }

    pub fn to_dot(&self) -> String {
        let name = |node: Option<KSubset>| match node {
            None => format!("\"top {}\"", self.top.iter().map(|s| s.compact()).collect::<Vec<_>>().join(" ")),
            Some(s) => format!("\"{}\"", s.compact()),
        };
        let mut out = String::from("digraph poset {\n  rankdir=BT;\n");
        out.push_str(&format!("  {};\n", name(None)));
        for s in &self.others {
            out.push_str(&format!("  {};\n", name(Some(*s))));
        }
        for r in self.hasse() {
            out.push_str(&format!("  {} -> {};\n", name(r.lower), name(r.upper)));
        }
        out.push_str("}\n");
        out
    }
}

/// Closes the relations forced by `J` being the block of largest minors.
pub fn infer_poset(j: &SortedCollection) -> Result<MinorPoset> {
    infer_poset_in_order(j, None)
}

/// As [`infer_poset`], visiting pairs in a seeded random order.
pub fn infer_poset_in_order(j: &SortedCollection, shuffle: Option<u64>) -> Result<MinorPoset> {
    j.require_maximal()?;
    let mut p = MinorPoset::empty(j);
    for b in 1..p.node_count() {
        p.add(b, 0, Provenance::Top);
    }
    let subsets = all_subsets(j.n(), j.k());
    let mut squares: Vec<(KSubset, KSubset, KSubset, KSubset)> = Vec::new();
    for (i, x) in subsets.iter().enumerate() {
        for y in &subsets[i + 1..] {
            if !sorted_pair_unchecked(x, y) {
                let (s1, s2) = sort_merge_unchecked(x, y);
                squares.push((*x, *y, s1, s2));
            }
        }
    }
    if let Some(seed) = shuffle {
        squares.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    loop {
        let mut changed = false;
        for &(x, y, s1, s2) in &squares {
            let [nx, ny, n1, n2] = [x, y, s1, s2].map(|s| p.node(&s).expect("all subsets are nodes"));
            let prov = Provenance::Plucker { x, y, sort1: s1, sort2: s2 };
            // Δx Δy < Δs1 Δs2 with Δy >= Δs1 gives Δx < Δs2, and so on
            for (lo, other, big, small) in [(nx, ny, n1, n2), (nx, ny, n2, n1), (ny, nx, n1, n2), (ny, nx, n2, n1)] {
                if p.at_least(other, big) && lo != small {
                    changed |= p.add(lo, small, prov.clone());
                }
            }
        }
        p.close()?;
        if !changed {
            break;
        }
    }
    Ok(p)
}

/// Relations observed on every one of `trials` random positive points
/// normalised against `J`.
pub fn empirical_poset(j: &SortedCollection, trials: usize, seed: u64) -> Result<MinorPoset> {
    j.require_maximal()?;
    if trials == 0 {
        return Err(Error::Parameter("at least one trial is needed".into()));
    }
    let base = MinorPoset::empty(j);
    let m = base.node_count();
    let orders: Vec<Vec<Vec<bool>>> = (0..trials)
        .into_par_iter()
        .map(|t| -> Result<Vec<Vec<bool>>> {
            let a = sample_positive_point(j.k(), j.n(), trial_seed(seed, t as u64))?;
            let (_, pv) = torus_normalize(&a, j, Arithmetic::Exact)?;
            let rep = |node: usize| base.label(node).unwrap_or(base.top[0]);
            let mut less = vec![vec![false; m]; m];
            for a in 0..m {
                for b in 0..m {
                    less[a][b] = a != b && pv.compare(&rep(a), &rep(b))? == Ordering::Less;
                }
            }
            Ok(less)
        })
        .collect::<Result<_>>()?;
    let mut p = base;
    for a in 0..m {
        for b in 0..m {
            if orders.iter().all(|o| o[a][b]) {
                p.add(a, b, Provenance::Empirical { trials });
            }
        }
    }
    Ok(p)
}

/// Independent per-trial seed derived from a base seed.
pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    let mut z = seed ^ trial.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, e: &[u32]) -> KSubset {
        KSubset::new(n, e).unwrap()
    }

    fn thrackle() -> SortedCollection {
        let e: [[u32; 2]; 6] = [[1, 2], [1, 3], [1, 4], [1, 5], [2, 5], [2, 6]];
        SortedCollection::maximal(e.iter().map(|x| s(6, x)).collect()).unwrap()
    }

    #[test]
    fn forty_six_below_thirty_six() {
        let p = infer_poset(&thrackle()).unwrap();
        assert!(p.less(&s(6, &[4, 6]), &s(6, &[3, 6])));
        assert!(p.less(&s(6, &[4, 6]), &s(6, &[1, 2])));
        assert!(!p.less(&s(6, &[3, 6]), &s(6, &[4, 6])));
    }

    #[test]
    fn k_one_is_top_over_antichain() {
        let j = SortedCollection::maximal((1..=4).map(|i| s(4, &[i])).collect()).unwrap();
        let p = infer_poset(&j).unwrap();
        assert_eq!(p.node_count(), 1);
        assert!(p.hasse().is_empty());
    }

    #[test]
    fn order_of_rule_application_does_not_matter() {
        let p = infer_poset(&thrackle()).unwrap();
        for seed in 0..4 {
            assert!(p.same_relations(&infer_poset_in_order(&thrackle(), Some(seed)).unwrap()));
        }
    }

    #[test]
    fn inferred_relations_hold_on_samples() {
        let inferred = infer_poset(&thrackle()).unwrap();
        let seen = empirical_poset(&thrackle(), 20, 7).unwrap();
        assert!(inferred.is_contained_in(&seen));
        assert!(empirical_poset(&thrackle(), 1, 3).unwrap().is_total());
    }

    #[test]
    fn hasse_edges_are_covering() {
        let p = infer_poset(&thrackle()).unwrap();
        let h = p.hasse();
        assert!(h.iter().any(|r| r.lower == Some(s(6, &[4, 6])) && r.upper == Some(s(6, &[3, 6]))));
        assert!(h.iter().all(|r| !matches!(r.provenance, Provenance::Transitive)));
        assert!(p.to_dot().starts_with("digraph poset {"));
    }
}
