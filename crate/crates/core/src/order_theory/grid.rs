//! Oriented Young subgraphs of `G_{k,n}` with a given origin and outer path
//! on a minimal circuit.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::subset::{sorted_pair_unchecked, KSubset};
use crate::triangulation::{permutation_from_collection, shift, MinimalCircuit, SortedCollection};

/// The arc of `c` sorted with `w`, in circuit order. Empty when `w` is sorted
/// with no vertex; an error when the sorted vertices are not contiguous.
pub fn sorted_window(c: &MinimalCircuit, w: &KSubset) -> Result<Vec<KSubset>> {
    c.vertices()[0].same_shape(w)?;
    if c.position(w).is_some() {
        return Err(Error::DegenerateQuery(format!("{w} is a vertex of the circuit")));
    }
    let n = c.n();
    let sorted: Vec<bool> = c.vertices().iter().map(|v| sorted_pair_unchecked(v, w)).collect();
    let count = sorted.iter().filter(|&&b| b).count();
    if count == 0 {
        return Ok(Vec::new());
    }
    if count == n {
        return Err(Error::LemmaViolation { w: *w, detail: "sorted with every vertex of a maximal collection".into() });
    }
    // the window starts right after an unsorted vertex
    let start = (0..n).find(|&t| sorted[t] && !sorted[(t + n - 1) % n]).expect("count < n");
    let window: Vec<usize> = (0..count).map(|o| (start + o) % n).collect();
    if !window.iter().all(|&t| sorted[t]) {
        let pos: Vec<usize> = (0..n).filter(|&t| sorted[t]).collect();
        return Err(Error::LemmaViolation { w: *w, detail: format!("sorted vertices at circuit positions {pos:?}") });
    }
    Ok(window.into_iter().map(|t| c.vertices()[t]).collect())
}

/// Lattice position: `i` steps up and `j` steps left of the origin.
pub type Position = (usize, usize);

#[derive(Clone, Debug, Serialize)]
pub struct GridVertex {
    pub i: usize,
    pub j: usize,
    pub subset: KSubset,
    pub outer: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GridEdge {
    pub from: Position,
    pub to: Position,
    pub label: u32,
}

/// One token of `A` travelling to `B` along the circuit, and the element of
/// `W` it is matched with: `a <= d <= b` in cyclic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Interleaving {
    pub a: u32,
    pub d: u32,
    pub b: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrientedYoungGrid {
    pub n: usize,
    pub k: usize,
    pub origin: KSubset,
    pub v0: KSubset,
    pub v1: KSubset,
    /// Labels of the circuit arc from `v0` to `v1`.
    pub omega_hat: Vec<u32>,
    /// The permutation of the new circuit through the origin, read from `v0`.
    pub omega_h: Vec<u32>,
    pub d1: Vec<u32>,
    pub d2: Vec<u32>,
    pub interleaving: Vec<Interleaving>,
    /// Labels of the horizontal inner edges from `v0` to the origin.
    pub horizontal: Vec<u32>,
    /// Labels of the vertical inner edges from the origin to `v1`.
    pub vertical: Vec<u32>,
    /// `heights[j]`: the highest row present in column `j`.
    pub heights: Vec<usize>,
    pub vertices: Vec<GridVertex>,
    pub edges: Vec<GridEdge>,
    pub outer_path: Vec<Position>,
}

impl OrientedYoungGrid {
    pub fn contains(&self, p: Position) -> bool {
        p.1 < self.heights.len() && p.0 <= self.heights[p.1]
    }

    pub fn vertex(&self, p: Position) -> Option<KSubset> {
        self.vertices.iter().find(|v| (v.i, v.j) == p).map(|v| v.subset)
    }

    pub fn is_outer(&self, p: Position) -> bool {
        self.outer_path.contains(&p)
    }

    /// The outer path's vertices in order from `v0` to `v1`.
    pub fn outer_vertices(&self) -> Vec<KSubset> {
        self.outer_path.iter().map(|&p| self.vertex(p).expect("outer vertex")).collect()
    }
}

/// Max of `i + j - 1` over the grid.
pub fn swapping_distance(h: &OrientedYoungGrid) -> usize {
    h.vertices.iter().map(|v| v.i + v.j).max().unwrap_or(1).saturating_sub(1)
}

fn fail(msg: String) -> Error {
    Error::ConstructionFailure(msg)
}

/// Builds the oriented Young subgraph whose origin is `w` and whose outer
/// path is the circuit arc of `j` not sorted with `w`, plus its endpoints.
pub fn build_young_grid(j: &SortedCollection, w: &KSubset) -> Result<OrientedYoungGrid> {
    j.require_maximal()?;
    j.members()[0].same_shape(w)?;
    if j.contains(w) {
        return Err(Error::DegenerateQuery(format!("{w} is a member of {j}")));
    }
    let circ = permutation_from_collection(j)?;
    let window = sorted_window(&circ, w)?;
    if window.is_empty() {
        return Err(Error::NotApplicable(format!("{w} is sorted with no member of {j}")));
    }
    let n = circ.n();
    let b = window[0];
    let a = *window.last().unwrap();
    let pa = circ.position(&a).unwrap();
    let pb = circ.position(&b).unwrap();
    let len = if a == b { n } else { (pb + n - pa) % n };
    let omega = circ.omega();
    let omega_hat: Vec<u32> = (0..len).map(|o| omega[(pa + o) % n]).collect();
    let rest: Vec<u32> = (len..n).map(|o| omega[(pa + o) % n]).collect();
    let q_path: Vec<KSubset> = (0..=len).map(|o| circ.vertices()[(pa + o) % n]).collect();

    // follow every 1 of A along the arc
    let mut tokens: Vec<(u32, u32, usize)> = a.iter().map(|x| (x, x, 0usize)).collect();
    for &l in &omega_hat {
        let t = tokens.iter_mut().find(|t| t.1 == l).ok_or_else(|| fail(format!("label {l} moves no token")))?;
        t.1 = a.cyclic_succ(l);
        t.2 += 1;
    }
    let offset = |from: u32, to: u32| (to as usize + n - from as usize) % n;
    let ws = w.elements();
    let k = ws.len();

    let mut last_err = fail(format!("no interleaving of {w} between {a} and {b}"));
    for r in 0..k {
        let mut inter = Vec::with_capacity(k);
        let mut ok = true;
        for (i, t) in tokens.iter().enumerate() {
            let d = ws[(i + r) % k];
            let off = offset(t.0, d);
            if off > t.2 {
                ok = false;
                break;
            }
            inter.push((t.0, d, t.1, off, t.2));
        }
        if !ok {
            continue;
        }
        match assemble(&circ, j, w, a, b, &omega_hat, &rest, &q_path, &inter) {
            Ok(g) => return Ok(g),
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    circ: &MinimalCircuit,
    j: &SortedCollection,
    w: &KSubset,
    a: KSubset,
    b: KSubset,
    omega_hat: &[u32],
    rest: &[u32],
    q_path: &[KSubset],
    inter: &[(u32, u32, u32, usize, usize)],
) -> Result<OrientedYoungGrid> {
    let n = circ.n();
    // which part each arc label goes to
    let mut first_part: BTreeSet<u32> = BTreeSet::new();
    for &(start, _, _, off_d, steps) in inter {
        for s in 0..steps {
            let l = ((start as usize - 1 + s) % n) as u32 + 1;
            if s < off_d {
                first_part.insert(l);
            }
        }
    }
    let horizontal: Vec<u32> = omega_hat.iter().copied().filter(|l| first_part.contains(l)).collect();
    let vertical: Vec<u32> = omega_hat.iter().copied().filter(|l| !first_part.contains(l)).collect();
    if horizontal.is_empty() || vertical.is_empty() {
        return Err(fail(format!("degenerate split of {omega_hat:?}")));
    }
    let hh = horizontal.len();
    let hv = vertical.len();

    // outer path from (0, hh) to (hv, 0)
    let mut outer = vec![(0usize, hh)];
    for l in omega_hat {
        let (i, jj) = *outer.last().unwrap();
        outer.push(if first_part.contains(l) { (i, jj - 1) } else { (i + 1, jj) });
    }
    if *outer.last().unwrap() != (hv, 0) {
        return Err(fail("outer path does not end at v1".into()));
    }
    if first_part.contains(&omega_hat[0]) || !first_part.contains(omega_hat.last().unwrap()) {
        return Err(fail(format!("outer path of {omega_hat:?} must start vertical and end horizontal")));
    }
    let mut heights = vec![0usize; hh + 1];
    for &(i, jj) in &outer {
        heights[jj] = heights[jj].max(i);
    }

    // vertex (i, j): ε_A plus the first hh - j horizontal and first i vertical moves
    let ea: Vec<i32> = (1..=n as u32).map(|x| a.contains(x) as i32).collect();
    let label_at = |i: usize, jj: usize| -> Result<KSubset> {
        let mut e = ea.clone();
        for &l in horizontal[..hh - jj].iter().chain(&vertical[..i]) {
            e[l as usize - 1] -= 1;
            e[l as usize % n] += 1;
        }
        if e.iter().any(|&x| x != 0 && x != 1) {
            return Err(fail(format!("position ({i},{jj}) is not a 0/1 vector")));
        }
        let mask = e.iter().enumerate().filter(|(_, &x)| x == 1).fold(0u64, |m, (p, _)| m | 1 << p);
        KSubset::from_mask(n, mask)
    };

    let mut cells: BTreeMap<Position, KSubset> = BTreeMap::new();
    for jj in 0..=hh {
        for i in 0..=heights[jj] {
            cells.insert((i, jj), label_at(i, jj)?);
        }
    }
    let mut edges = Vec::new();
    for (&(i, jj), &v) in &cells {
        if jj > 0 {
            let l = horizontal[hh - jj];
            if let Some(&to) = cells.get(&(i, jj - 1)) {
                if shift(&v, l) != Some(to) {
                    return Err(fail(format!("{v} -{l}-> {to} is not an edge of G(k,n)")));
                }
                edges.push(GridEdge { from: (i, jj), to: (i, jj - 1), label: l });
            }
        }
        if let Some(&to) = cells.get(&(i + 1, jj)) {
            let l = vertical[i];
            if shift(&v, l) != Some(to) {
                return Err(fail(format!("{v} -{l}-> {to} is not an edge of G(k,n)")));
            }
            edges.push(GridEdge { from: (i, jj), to: (i + 1, jj), label: l });
        }
    }
    if cells[&(0, 0)] != *w {
        return Err(fail(format!("origin is {} rather than {w}", cells[&(0, 0)])));
    }
    for (t, p) in outer.iter().enumerate() {
        if cells[p] != q_path[t] {
            return Err(fail(format!("outer vertex {t} is {} but the circuit has {}", cells[p], q_path[t])));
        }
    }
    let outer_set: BTreeSet<Position> = outer.iter().copied().collect();
    let mut seen = BTreeSet::new();
    for (p, v) in &cells {
        if !outer_set.contains(p) && (j.contains(v) || !seen.insert(*v)) {
            return Err(fail(format!("inner vertex {v} at {p:?} repeats or lies in the collection")));
        }
    }
    for (x, y) in inter.iter().map(|t| (t.3, t.4)) {
        if x > y {
            return Err(fail("interleaving a <= d <= b violated".into()));
        }
    }
    let mut omega_h = horizontal.clone();
    omega_h.extend(&vertical);
    omega_h.extend(rest);
    MinimalCircuit::from_walk(a, &omega_h).map_err(|e| fail(format!("new circuit does not close: {e}")))?;

    let mut d1: Vec<u32> = horizontal.clone();
    d1.sort_unstable();
    let mut d2: Vec<u32> = vertical.clone();
    d2.sort_unstable();
    Ok(OrientedYoungGrid {
        n,
        k: circ.k(),
        origin: *w,
        v0: a,
        v1: b,
        omega_hat: omega_hat.to_vec(),
        omega_h,
        d1,
        d2,
        interleaving: inter.iter().map(|t| Interleaving { a: t.0, d: t.1, b: t.2 }).collect(),
        horizontal,
        vertical,
        heights,
        vertices: cells.iter().map(|(&(i, jj), &s)| GridVertex { i, j: jj, subset: s, outer: outer_set.contains(&(i, jj)) }).collect(),
        edges,
        outer_path: outer,
    })
}

/// `Δ_lower < Δ_upper`, read off a square of the grid.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GridRelation {
    pub lower: KSubset,
    pub upper: KSubset,
}

/// Every relation `Δ_D < Δ_C` (`C` above `D`) and `Δ_D < Δ_A` (`A` left of
/// `D`) for grid vertices `D` off the outer path.
pub fn grid_inequalities(h: &OrientedYoungGrid) -> Vec<GridRelation> {
    let mut out = Vec::new();
    for v in &h.vertices {
        let p = (v.i, v.j);
        if h.is_outer(p) {
            continue;
        }
        for q in [(v.i + 1, v.j), (v.i, v.j + 1)] {
            if let Some(up) = h.vertex(q) {
                out.push(GridRelation { lower: v.subset, upper: up });
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// A longest chain of grid relations from the origin to the outer path.
pub fn longest_origin_chain(h: &OrientedYoungGrid) -> Vec<KSubset> {
    let mut memo: BTreeMap<Position, Vec<Position>> = BTreeMap::new();
    fn walk(h: &OrientedYoungGrid, p: Position, memo: &mut BTreeMap<Position, Vec<Position>>) -> Vec<Position> {
        if let Some(c) = memo.get(&p) {
            return c.clone();
        }
        let mut best = vec![p];
        if !h.is_outer(p) {
            for q in [(p.0, p.1 + 1), (p.0 + 1, p.1)] {
                if h.contains(q) {
                    let mut c = vec![p];
                    c.extend(walk(h, q, memo));
                    if c.len() > best.len() {
                        best = c;
                    }
                }
            }
        }
        memo.insert(p, best.clone());
        best
    }
    walk(h, (0, 0), &mut memo).into_iter().map(|p| h.vertex(p).expect("grid vertex")).collect()
}

/// The swapping distance `s` of `w`: `w` is at best the `(s+1)`-th largest
/// minor once `j` is the top block, and its cubical distance from `j` is at
/// most `s`.
pub fn rank_lower_bound(j: &SortedCollection, w: &KSubset) -> Result<usize> {
    Ok(swapping_distance(&build_young_grid(j, w)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::circuit_from_permutation;

    fn s(n: usize, e: &[u32]) -> KSubset {
        KSubset::new(n, e).unwrap()
    }

    fn running() -> MinimalCircuit {
        circuit_from_permutation(&[5, 6, 1, 7, 8, 2, 4, 3], 3).unwrap()
    }

    #[test]
    fn window_of_356() {
        let win = sorted_window(&running(), &s(8, &[3, 5, 6])).unwrap();
        assert_eq!(win, vec![s(8, &[1, 3, 5]), s(8, &[1, 4, 5]), s(8, &[1, 4, 6])]);
    }

    #[test]
    fn grid_of_356() {
        let g = build_young_grid(&running().collection(), &s(8, &[3, 5, 6])).unwrap();
        assert_eq!(g.omega_hat, vec![6, 1, 7, 8, 2, 4]);
        assert_eq!(g.omega_h, vec![1, 2, 4, 6, 7, 8, 3, 5]);
        assert_eq!(g.d1, vec![1, 2, 4]);
        assert_eq!(g.d2, vec![6, 7, 8]);
        assert_eq!(swapping_distance(&g), 4);
        let rel = grid_inequalities(&g);
        let chain = [[3, 5, 6], [3, 4, 6], [3, 4, 7], [3, 4, 8], [1, 3, 4]];
        for pair in chain.windows(2) {
            assert!(rel.contains(&GridRelation { lower: s(8, &pair[0]), upper: s(8, &pair[1]) }), "{pair:?}");
        }
        assert_eq!(longest_origin_chain(&g).len(), 5);
    }

    #[test]
    fn grid_of_256() {
        let g = build_young_grid(&running().collection(), &s(8, &[2, 5, 6])).unwrap();
        assert_eq!(g.origin, s(8, &[2, 5, 6]));
        assert!(g.outer_vertices().iter().all(|v| running().position(v).is_some()));
    }

    #[test]
    fn single_cell_grid() {
        let c = running();
        let j = c.collection();
        let (d, _) = crate::dual_graph::facet_neighbors(&j).unwrap().remove(0);
        let g = build_young_grid(&j, &d.replacement).unwrap();
        assert_eq!(swapping_distance(&g), 1);
        assert_eq!(g.vertices.len(), 4);
        let rel = grid_inequalities(&g);
        assert_eq!(rel.len(), 2);
        assert!(rel.iter().all(|r| r.lower == d.replacement));
    }

    #[test]
    fn not_applicable_when_sorted_with_nothing() {
        let j = running().collection();
        let w = crate::subset::all_subsets(8, 3)
            .into_iter()
            .find(|w| j.members().iter().all(|m| !sorted_pair_unchecked(m, w)))
            .expect("some subset is sorted with no member");
        assert!(sorted_window(&running(), &w).unwrap().is_empty());
        assert!(matches!(build_young_grid(&j, &w), Err(Error::NotApplicable(_))));
    }
}
