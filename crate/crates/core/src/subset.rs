//! k-element subsets of `[n]` and the pure combinatorics built on them:
//! sorting of pairs, sorted collections, thrackles, weak separation,
//! interval sums and the window distances `d_ij`.
//!
//! Elements are 1-based. A subset is stored as a bitmask of width `n`
//! (bit `i - 1` set iff `i` is an element), so interval sums are a mask and a
//! popcount.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest ambient size supported by the bitmask encoding.
pub const MAX_N: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct KSubset {
    n: u8,
    mask: u64,
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Mask of the window `[i, j]`, 1-based and inclusive.
fn window_mask(i: usize, j: usize) -> u64 {
    full_mask(j) & !full_mask(i - 1)
}

impl KSubset {
    /// Builds a subset from its elements. Order of `elements` is irrelevant
    /// but duplicates and values outside `1..=n` are rejected.
    pub fn new(n: usize, elements: &[u32]) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::Parameter(format!("ambient size n = {n} outside 1..={MAX_N}")));
        }
        let mut mask = 0u64;
        for &e in elements {
            if e == 0 || e as usize > n {
                return Err(Error::Parameter(format!("element {e} outside 1..={n}")));
            }
            let bit = 1u64 << (e - 1);
            if mask & bit != 0 {
                return Err(Error::Parameter(format!("duplicate element {e}")));
            }
            mask |= bit;
        }
        Ok(KSubset { n: n as u8, mask })
    }

    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::Parameter(format!("ambient size n = {n} outside 1..={MAX_N}")));
        }
        if mask & !full_mask(n) != 0 {
            return Err(Error::Parameter(format!("mask {mask:#x} has bits beyond n = {n}")));
        }
        Ok(KSubset { n: n as u8, mask })
    }

    pub(crate) fn from_mask_unchecked(n: usize, mask: u64) -> Self {
        debug_assert!(mask & !full_mask(n) == 0);
        KSubset { n: n as u8, mask }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn k(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn contains(&self, e: u32) -> bool {
        e >= 1 && (e as usize) <= self.n() && self.mask & (1u64 << (e - 1)) != 0
    }

    /// Elements in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        let mut m = self.mask;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let b = m.trailing_zeros();
                m &= m - 1;
                Some(b + 1)
            }
        })
    }

    pub fn elements(&self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn epsilon(&self) -> EpsilonVector {
        EpsilonVector::from(*self)
    }

    pub fn complement(&self) -> KSubset {
        KSubset { n: self.n, mask: !self.mask & full_mask(self.n()) }
    }

    /// Adds `s` to every element cyclically, keeping representatives in `1..=n`.
    pub fn rotate(&self, s: i64) -> KSubset {
        let n = self.n() as i64;
        let mut mask = 0u64;
        for e in self.iter() {
            let r = ((e as i64 - 1 + s).rem_euclid(n)) as u32;
            mask |= 1u64 << r;
        }
        KSubset { n: self.n, mask }
    }

    /// Number of elements in the window `[i, j]`.
    pub fn interval_sum(&self, i: usize, j: usize) -> Result<usize> {
        check_window(self.n(), i, j)?;
        Ok((self.mask & window_mask(i, j)).count_ones() as usize)
    }

    pub(crate) fn window_count(&self, i: usize, j: usize) -> usize {
        (self.mask & window_mask(i, j)).count_ones() as usize
    }

    /// `i + 1` with `n + 1` identified with 1.
    pub fn cyclic_succ(&self, i: u32) -> u32 {
        if i as usize == self.n() {
            1
        } else {
            i + 1
        }
    }

    pub fn cyclic_pred(&self, i: u32) -> u32 {
        if i == 1 {
            self.n() as u32
        } else {
            i - 1
        }
    }

    /// Returns `self` with `remove` dropped and `add` inserted, or `None` if
    /// `remove` is not an element or `add` already is.
    pub fn exchange(&self, remove: u32, add: u32) -> Option<KSubset> {
        if !self.contains(remove) || self.contains(add) || add == 0 || add as usize > self.n() {
            return None;
        }
        let mask = (self.mask & !(1u64 << (remove - 1))) | (1u64 << (add - 1));
        Some(KSubset { n: self.n, mask })
    }

    pub fn same_shape(&self, other: &KSubset) -> Result<()> {
        if self.n != other.n || self.k() != other.k() {
            return Err(Error::Parameter(format!(
                "mismatched parameters: {self} in ([{}] choose {}) vs {other} in ([{}] choose {})",
                self.n(),
                self.k(),
                other.n(),
                other.k()
            )));
        }
        Ok(())
    }

    /// Compact label, e.g. `135` for small `n` and `1.3.15` otherwise.
    pub fn compact(&self) -> String {
        let sep = if self.n() >= 10 { "." } else { "" };
        self.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(sep)
    }
}

fn check_window(n: usize, i: usize, j: usize) -> Result<()> {
    if i < 1 || i > j || j > n {
        return Err(Error::IndexOutOfRange(format!("window [{i}, {j}] not within 1 <= i <= j <= {n}")));
    }
    Ok(())
}

impl Ord for KSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            if self.mask == other.mask {
                return Ordering::Equal;
            }
            if self.k() == other.k() {
                // Same length: the list holding the lowest differing element is smaller.
                let low = (self.mask ^ other.mask).trailing_zeros();
                if self.mask & (1u64 << low) != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            } else {
                self.iter().cmp(other.iter())
            }
        })
    }
}

impl PartialOrd for KSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (idx, e) in self.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for KSubset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// All k-subsets of `[n]` in canonical (lexicographic) order.
pub fn all_subsets(n: usize, k: usize) -> Vec<KSubset> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut current: Vec<u32> = (1..=k as u32).collect();
    loop {
        out.push(KSubset::new(n, &current).expect("valid by construction"));
        // advance to the next combination in lexicographic order
        let mut i = k;
        while i > 0 && current[i - 1] as usize == n - k + i {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        current[i - 1] += 1;
        for j in i..k {
            current[j] = current[j - 1] + 1;
        }
    }
    out
}

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// The 0/1 vector `ε_I` of a subset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EpsilonVector {
    bits: Vec<u8>,
}

impl EpsilonVector {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::Parameter("epsilon vector entries must be 0 or 1".into()));
        }
        Ok(EpsilonVector { bits })
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// `x_i + ... + x_j` for the 1-based window `[i, j]`.
    pub fn window_sum(&self, i: usize, j: usize) -> Result<i64> {
        check_window(self.len(), i, j)?;
        Ok(self.bits[i - 1..j].iter().map(|&b| b as i64).sum())
    }

    pub fn to_subset(&self) -> Result<KSubset> {
        let elems: Vec<u32> =
            self.bits.iter().enumerate().filter(|(_, &b)| b == 1).map(|(i, _)| i as u32 + 1).collect();
        KSubset::new(self.len(), &elems)
    }
}

impl From<KSubset> for EpsilonVector {
    fn from(s: KSubset) -> Self {
        let bits = (0..s.n()).map(|i| ((s.mask >> i) & 1) as u8).collect();
        EpsilonVector { bits }
    }
}

impl fmt::Display for EpsilonVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Merges `I ⊎ J` non-decreasingly and deals odd positions to the first
/// output and even positions to the second: `(Sort₁(I,J), Sort₂(I,J))`.
pub fn sort_merge(i: &KSubset, j: &KSubset) -> Result<(KSubset, KSubset)> {
    i.same_shape(j)?;
    Ok(sort_merge_unchecked(i, j))
}

pub(crate) fn sort_merge_unchecked(i: &KSubset, j: &KSubset) -> (KSubset, KSubset) {
    let n = i.n();
    let (mut first, mut second) = (0u64, 0u64);
    let mut position = 0usize;
    for e in 0..n {
        let bit = 1u64 << e;
        let copies = (i.mask & bit != 0) as usize + (j.mask & bit != 0) as usize;
        for _ in 0..copies {
            if position % 2 == 0 {
                first |= bit;
            } else {
                second |= bit;
            }
            position += 1;
        }
    }
    (KSubset::from_mask_unchecked(n, first), KSubset::from_mask_unchecked(n, second))
}

pub fn is_sorted_pair(i: &KSubset, j: &KSubset) -> Result<bool> {
    i.same_shape(j)?;
    Ok(sorted_pair_unchecked(i, j))
}

pub(crate) fn sorted_pair_unchecked(i: &KSubset, j: &KSubset) -> bool {
    let (a, b) = sort_merge_unchecked(i, j);
    (a == *i && b == *j) || (a == *j && b == *i)
}

fn check_family(members: &[KSubset]) -> Result<()> {
    if let Some(first) = members.first() {
        for m in &members[1..] {
            first.same_shape(m)?;
        }
    }
    Ok(())
}

/// True iff every pair of members is sorted.
pub fn is_sorted_collection(members: &[KSubset]) -> Result<bool> {
    check_family(members)?;
    Ok(members
        .iter()
        .enumerate()
        .all(|(idx, a)| members[idx + 1..].iter().all(|b| sorted_pair_unchecked(a, b))))
}

/// Chain characterisation of sortedness: after ordering the members
/// lexicographically, the sequence of first elements, then second elements,
/// and so on, read across all members is non-decreasing.
pub fn is_sorted_by_chain(members: &[KSubset]) -> Result<bool> {
    check_family(members)?;
    let distinct: BTreeSet<KSubset> = members.iter().copied().collect();
    let rows: Vec<Vec<u32>> = distinct.iter().map(|m| m.elements()).collect();
    let k = rows.first().map_or(0, |r| r.len());
    let mut last = 0u32;
    for col in 0..k {
        for row in &rows {
            if row[col] < last {
                return Ok(false);
            }
            last = row[col];
        }
    }
    Ok(true)
}

/// For `k = 2`: every two chords on the `n`-gon either cross or share an
/// endpoint.
pub fn is_thrackle(edges: &[KSubset]) -> Result<bool> {
    check_family(edges)?;
    if let Some(e) = edges.first() {
        if e.k() != 2 {
            return Err(Error::Parameter(format!("thrackle edges must have k = 2, got k = {}", e.k())));
        }
    }
    let chords: Vec<(u32, u32)> = edges
        .iter()
        .map(|e| {
            let v = e.elements();
            (v[0], v[1])
        })
        .collect();
    for (idx, &(a, b)) in chords.iter().enumerate() {
        for &(c, d) in &chords[idx + 1..] {
            let share = a == c || a == d || b == c || b == d;
            let cross = (a < c && c < b && b < d) || (c < a && a < d && d < b);
            if !(share || cross) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `I` and `J` are weakly separated iff, listing `(I \ J) ∪ (J \ I)` in
/// increasing order, the elements of one of the two differences occupy a
/// contiguous block.
pub fn is_weakly_separated_pair(i: &KSubset, j: &KSubset) -> Result<bool> {
    i.same_shape(j)?;
    let only_i = i.mask & !j.mask;
    let only_j = j.mask & !i.mask;
    let labels: Vec<bool> = (0..i.n())
        .filter(|e| (only_i | only_j) & (1u64 << e) != 0)
        .map(|e| only_i & (1u64 << e) != 0)
        .collect();
    let contiguous = |want: bool| {
        let runs = labels.windows(2).filter(|w| w[0] != w[1] && w[1] == want).count()
            + usize::from(labels.first() == Some(&want));
        runs <= 1
    };
    Ok(contiguous(true) || contiguous(false))
}

/// `d_ij(x, y)`: number of integers `r` such that the hyperplane
/// `x_i + ... + x_j = r` separates `y` from `x`. For lattice points this is
/// `|x_ij - y_ij|`.
pub fn d_ij(x: &EpsilonVector, y: &EpsilonVector, i: usize, j: usize) -> Result<usize> {
    if x.len() != y.len() {
        return Err(Error::Parameter("points of different dimension".into()));
    }
    let a = x.window_sum(i, j)?;
    let b = y.window_sum(i, j)?;
    Ok((a - b).unsigned_abs() as usize)
}

/// `d_ij` computed by enumerating every candidate level `r` and testing the
/// separation condition literally. Reference implementation for [`d_ij`].
pub fn d_ij_by_hyperplanes(x: &EpsilonVector, y: &EpsilonVector, i: usize, j: usize) -> Result<usize> {
    if x.len() != y.len() {
        return Err(Error::Parameter("points of different dimension".into()));
    }
    let a = x.window_sum(i, j)?;
    let b = y.window_sum(i, j)?;
    let width = (j - i + 1) as i64;
    let count = (-1..=width + 1)
        .filter(|&r| {
            let opposite = (a < r && r < b) || (b < r && r < a);
            let y_on_x_off = b == r && a != r;
            opposite || y_on_x_off
        })
        .count();
    Ok(count)
}

/// Largest `d_ij(ε_I, ε_J)` over all windows.
pub fn max_window_distance(i: &KSubset, j: &KSubset) -> Result<usize> {
    i.same_shape(j)?;
    let n = i.n();
    let mut best = 0;
    for a in 1..=n {
        for b in a..=n {
            best = best.max(i.window_count(a, b).abs_diff(j.window_count(a, b)));
        }
    }
    Ok(best)
}

/// `y ∈ B_r(x)`: `d_ij(x, y) <= r` for every window.
pub fn in_ball(y: &EpsilonVector, x: &EpsilonVector, r: usize) -> bool {
    if x.len() != y.len() {
        return false;
    }
    let n = x.len();
    let px = prefix_sums(x.bits());
    let py = prefix_sums(y.bits());
    (1..=n).all(|i| (i..=n).all(|j| ((px[j] - px[i - 1]) - (py[j] - py[i - 1])).unsigned_abs() as usize <= r))
}

fn prefix_sums(bits: &[u8]) -> Vec<i64> {
    let mut out = Vec::with_capacity(bits.len() + 1);
    out.push(0);
    for &b in bits {
        out.push(out.last().unwrap() + b as i64);
    }
    out
}

/// An ordered set partition `(U₁, …, U_l)` of k-subsets, smallest block first.
/// The zero block is always empty in this crate and is not stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderedSetPartition {
    blocks: Vec<Vec<KSubset>>,
}

impl OrderedSetPartition {
    pub fn new(blocks: Vec<Vec<KSubset>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(blocks.len());
        for mut block in blocks {
            if block.is_empty() {
                return Err(Error::Parameter("ordered set partition has an empty block".into()));
            }
            check_family(&block)?;
            block.sort();
            for m in &block {
                if !seen.insert(*m) {
                    return Err(Error::Parameter(format!("{m} appears in two blocks")));
                }
            }
            out.push(block);
        }
        if let (Some(a), Some(b)) = (out.first().and_then(|b| b.first()), out.last().and_then(|b| b.first())) {
            a.same_shape(b)?;
        }
        Ok(OrderedSetPartition { blocks: out })
    }

    pub fn blocks(&self) -> &[Vec<KSubset>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `U_{l-t+1}`: the t-th block counted from the top (`t = 1` is the top).
    pub fn block_from_top(&self, t: usize) -> Option<&[KSubset]> {
        if t == 0 || t > self.blocks.len() {
            return None;
        }
        Some(&self.blocks[self.blocks.len() - t])
    }

    /// 1-based position of the block containing `s`, counted from the top.
    pub fn rank_from_top(&self, s: &KSubset) -> Option<usize> {
        self.blocks.iter().rev().position(|b| b.contains(s)).map(|p| p + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, e: &[u32]) -> KSubset {
        KSubset::new(n, e).unwrap()
    }

    #[test]
    fn sort_merge_examples() {
        assert_eq!(sort_merge(&s(6, &[1, 4, 5]), &s(6, &[2, 3, 6])).unwrap(), (s(6, &[1, 3, 5]), s(6, &[2, 4, 6])));
        assert_eq!(sort_merge(&s(6, &[1, 3, 5]), &s(6, &[2, 4, 6])).unwrap(), (s(6, &[1, 3, 5]), s(6, &[2, 4, 6])));
        let i = s(7, &[2, 3, 7]);
        assert_eq!(sort_merge(&i, &i).unwrap(), (i, i));
        assert!(sort_merge(&s(6, &[1, 2]), &s(6, &[1, 2, 3])).is_err());
        assert!(sort_merge(&s(6, &[1, 2]), &s(7, &[1, 2])).is_err());
    }

    #[test]
    fn sorted_pair_examples() {
        assert!(is_sorted_pair(&s(6, &[1, 3, 5]), &s(6, &[2, 4, 6])).unwrap());
        assert!(!is_sorted_pair(&s(6, &[1, 4, 5]), &s(6, &[2, 3, 6])).unwrap());
        assert!(is_sorted_pair(&s(6, &[1, 4, 5]), &s(6, &[1, 4, 5])).unwrap());
    }

    #[test]
    fn sorted_collection_examples() {
        let c = [s(4, &[1, 2]), s(4, &[2, 3]), s(4, &[1, 3]), s(4, &[2, 4])];
        assert!(is_sorted_collection(&c).unwrap());
        assert!(is_sorted_by_chain(&c).unwrap());
        let bad = [s(4, &[1, 2]), s(4, &[3, 4])];
        assert!(!is_sorted_collection(&bad).unwrap());
        assert!(!is_sorted_by_chain(&bad).unwrap());
        assert!(is_sorted_collection(&[s(5, &[2, 5])]).unwrap());
    }

    #[test]
    fn thrackle_examples() {
        let t = [s(4, &[1, 2]), s(4, &[1, 3]), s(4, &[1, 4]), s(4, &[2, 4])];
        assert!(is_thrackle(&t).unwrap());
        assert!(!is_thrackle(&[s(4, &[1, 4]), s(4, &[2, 3])]).unwrap());
        assert!(is_thrackle(&[s(4, &[2, 3])]).unwrap());
        assert!(is_thrackle(&[s(4, &[1, 2, 3])]).is_err());
    }

    #[test]
    fn weak_separation_examples() {
        assert!(is_weakly_separated_pair(&s(4, &[1, 2]), &s(4, &[3, 4])).unwrap());
        assert!(!is_weakly_separated_pair(&s(4, &[1, 3]), &s(4, &[2, 4])).unwrap());
        assert!(is_weakly_separated_pair(&s(4, &[1, 3]), &s(4, &[1, 3])).unwrap());
        // 1 < {2,3} < 4: the differences of {1,4} and {2,3} nest
        assert!(is_weakly_separated_pair(&s(4, &[1, 4]), &s(4, &[2, 3])).unwrap());
    }

    #[test]
    fn interval_sum_examples() {
        let i = s(9, &[1, 3, 5, 7, 8]);
        assert_eq!(i.epsilon().to_string(), "101010110");
        assert_eq!(i.interval_sum(3, 7).unwrap(), 3);
        assert_eq!(i.interval_sum(1, 9).unwrap(), 5);
        assert_eq!(s(4, &[1, 2]).interval_sum(3, 3).unwrap(), 0);
        assert!(i.interval_sum(4, 3).is_err());
        assert!(i.interval_sum(0, 3).is_err());
        assert!(i.interval_sum(2, 10).is_err());
    }

    #[test]
    fn d_ij_matches_literal_hyperplane_count() {
        let x = s(9, &[1, 3, 5, 7, 8]).epsilon();
        let y = s(9, &[2, 4, 6, 7, 9]).epsilon();
        for i in 1..=9 {
            for j in i..=9 {
                assert_eq!(d_ij(&x, &y, i, j).unwrap(), d_ij_by_hyperplanes(&x, &y, i, j).unwrap());
                assert_eq!(d_ij(&x, &x, i, j).unwrap(), 0);
            }
        }
        // window [1,1]: x has 1, y has 0 -> r = 0 is the only separating level
        assert_eq!(d_ij_by_hyperplanes(&x, &y, 1, 1).unwrap(), 1);
    }

    #[test]
    fn ball_examples() {
        let x = s(6, &[1, 3, 5]).epsilon();
        assert!(in_ball(&x, &x, 0));
        assert!(in_ball(&s(6, &[2, 4, 6]).epsilon(), &x, 1));
        let a = s(6, &[1, 4, 5]).epsilon();
        let b = s(6, &[2, 3, 6]).epsilon();
        assert!(!in_ball(&b, &a, 1));
        // witness window: [2,3] holds 0 elements of {1,4,5} and 2 of {2,3,6}
        assert_eq!(d_ij_by_hyperplanes(&a, &b, 2, 3).unwrap(), 2);
    }

    #[test]
    fn canonical_order_is_lexicographic() {
        let all = all_subsets(5, 3);
        assert_eq!(all.len(), 10);
        let lists: Vec<Vec<u32>> = all.iter().map(|x| x.elements()).collect();
        let mut sorted = lists.clone();
        sorted.sort();
        assert_eq!(lists, sorted);
        let mut shuffled = all.clone();
        shuffled.reverse();
        shuffled.sort();
        assert_eq!(shuffled, all);
        assert!(s(5, &[1, 2]) < s(5, &[1, 2, 3]));
        assert!(s(5, &[1, 3]) > s(5, &[1, 2, 3]));
    }

    #[test]
    fn rotation_and_complement() {
        let i = s(8, &[1, 4, 8]);
        assert_eq!(i.rotate(1), s(8, &[1, 2, 5]));
        assert_eq!(i.rotate(-1), s(8, &[3, 7, 8]));
        assert_eq!(i.rotate(8), i);
        assert_eq!(i.complement(), s(8, &[2, 3, 5, 6, 7]));
    }

    #[test]
    fn ordered_partition_validation() {
        let a = s(4, &[1, 2]);
        let b = s(4, &[3, 4]);
        assert!(OrderedSetPartition::new(vec![vec![a], vec![a]]).is_err());
        assert!(OrderedSetPartition::new(vec![vec![a], vec![]]).is_err());
        let p = OrderedSetPartition::new(vec![vec![b], vec![a]]).unwrap();
        assert_eq!(p.block_from_top(1).unwrap(), &[a]);
        assert_eq!(p.rank_from_top(&b), Some(2));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(8, 0), 1);
        assert_eq!(binomial(3, 4), 0);
    }
}
