//! The dual graph `Γ(k,n)` of the circuit triangulation: facet adjacency via
//! detours, cube moves (simultaneous independent detours) and cubical distance.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::subset::{is_sorted_collection, KSubset};
use crate::triangulation::{enumerate_maximal_sorted, permutation_from_collection, MinimalCircuit, SortedCollection};

/// Replacement of the circuit vertex `i_t` by `replacement`; `i_c` and `i_d`
/// are its predecessor and successor on the circuit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DetourMove {
    pub position: usize,
    pub i_c: KSubset,
    pub i_t: KSubset,
    pub i_d: KSubset,
    pub replacement: KSubset,
}

impl DetourMove {
    pub fn triple(&self) -> [KSubset; 3] {
        [self.i_c, self.i_t, self.i_d]
    }

    /// Two detours can be made at once unless one of the middles lies in the
    /// intersection of the two triples.
    pub fn compatible(&self, other: &DetourMove) -> bool {
        if self.i_t == other.i_t {
            return false;
        }
        let a: BTreeSet<KSubset> = self.triple().into_iter().collect();
        let b: BTreeSet<KSubset> = other.triple().into_iter().collect();
        let common: Vec<&KSubset> = a.intersection(&b).collect();
        !common.contains(&&self.i_t) && !common.contains(&&other.i_t)
    }
}

/// All detours available on a circuit, ordered by position.
pub fn circuit_detours(c: &MinimalCircuit) -> Vec<DetourMove> {
    let n = c.n();
    let omega = c.omega();
    let verts = c.vertices();
    let mut out = Vec::new();
    for t in 0..n {
        let prev = (t + n - 1) % n;
        let p = omega[prev];
        let q = omega[t];
        let x = verts[prev];
        // moving q before p is blocked exactly when p and q are cyclic neighbours
        if x.cyclic_succ(p) == q || x.cyclic_succ(q) == p {
            continue;
        }
        let Some(replacement) = x.exchange(q, x.cyclic_succ(q)) else { continue };
        out.push(DetourMove { position: t, i_c: x, i_t: verts[t], i_d: verts[(t + 1) % n], replacement });
    }
    out
}

/// Applies pairwise-compatible detours of `c` simultaneously.
pub fn apply_detours(c: &MinimalCircuit, moves: &[&DetourMove]) -> Result<MinimalCircuit> {
    let n = c.n();
    let mut labels = c.omega().to_vec();
    let mut start = c.vertices()[0];
    for m in moves {
        let t = m.position;
        labels.swap((t + n - 1) % n, t);
        if t == 0 {
            start = m.replacement;
        }
    }
    MinimalCircuit::from_walk(start, &labels)
}

/// Every facet-neighbour of a maximal collection, with its witnessing detour.
pub fn facet_neighbors(c: &SortedCollection) -> Result<Vec<(DetourMove, SortedCollection)>> {
    let circ = permutation_from_collection(c)?;
    Ok(circuit_detours(&circ)
        .into_iter()
        .map(|d| {
            let next = c.replaced(&d.i_t, d.replacement);
            (d, next)
        })
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct DualEdge {
    pub from: usize,
    pub to: usize,
    pub detour: DetourMove,
}

/// `Γ(k,n)`: canonical vertex list and undirected edges `from < to`, where the
/// detour is taken at `vertices[from]`.
#[derive(Clone, Debug, Serialize)]
pub struct DualGraph {
    pub k: usize,
    pub n: usize,
    pub vertices: Vec<SortedCollection>,
    pub edges: Vec<DualEdge>,
    #[serde(skip)]
    index: HashMap<SortedCollection, usize>,
}

impl DualGraph {
    pub fn index_of(&self, c: &SortedCollection) -> Option<usize> {
        self.index.get(c).copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.from == v || e.to == v).count()
    }

    pub fn max_degree(&self) -> usize {
        let mut deg = vec![0usize; self.vertices.len()];
        for e in &self.edges {
            deg[e.from] += 1;
            deg[e.to] += 1;
        }
        deg.into_iter().max().unwrap_or(0)
    }

    pub fn edge_pairs(&self) -> BTreeSet<(usize, usize)> {
        self.edges.iter().map(|e| (e.from, e.to)).collect()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|e| {
                if e.from == v {
                    Some(e.to)
                } else if e.to == v {
                    Some(e.from)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }
}

pub fn build_dual_graph(k: usize, n: usize, limits: &Limits) -> Result<DualGraph> {
    let vertices = enumerate_maximal_sorted(k, n, limits)?;
    let index: HashMap<SortedCollection, usize> = vertices.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let mut edges = Vec::new();
    for (i, c) in vertices.iter().enumerate() {
        for (detour, next) in facet_neighbors(c)? {
            let j = *index
                .get(&next)
                .ok_or_else(|| Error::Internal(format!("detour of {c} leaves the triangulation: {next}")))?;
            if i < j {
                edges.push(DualEdge { from: i, to: j, detour });
            }
        }
    }
    edges.sort_by_key(|e| (e.from, e.to));
    Ok(DualGraph { k, n, vertices, edges, index })
}

/// Edges of `Γ(k,n)` computed literally: two cells are adjacent iff they share
/// `n - 1` members.
pub fn facet_sharing_edges(vertices: &[SortedCollection]) -> BTreeSet<(usize, usize)> {
    let mut by_facet: HashMap<Vec<KSubset>, Vec<usize>> = HashMap::new();
    for (i, c) in vertices.iter().enumerate() {
        for skip in 0..c.len() {
            let facet: Vec<KSubset> =
                c.members().iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, m)| *m).collect();
            by_facet.entry(facet).or_default().push(i);
        }
    }
    let mut out = BTreeSet::new();
    for cells in by_facet.values() {
        for (a, &x) in cells.iter().enumerate() {
            for &y in &cells[a + 1..] {
                out.insert((x.min(y), x.max(y)));
            }
        }
    }
    out
}

/// A set of pairwise compatible detours applied at once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubeMove {
    pub detours: Vec<DetourMove>,
}

impl CubeMove {
    pub fn dimension(&self) -> usize {
        self.detours.len()
    }
}

/// All nonempty sets of pairwise compatible detours of `c`.
pub fn cube_moves(c: &MinimalCircuit) -> Vec<CubeMove> {
    let detours = circuit_detours(c);
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    collect_independent(&detours, 0, &mut chosen, &mut out);
    out
}

fn collect_independent(d: &[DetourMove], from: usize, chosen: &mut Vec<usize>, out: &mut Vec<CubeMove>) {
    for i in from..d.len() {
        if chosen.iter().all(|&j| d[j].compatible(&d[i])) {
            chosen.push(i);
            out.push(CubeMove { detours: chosen.iter().map(|&j| d[j].clone()).collect() });
            collect_independent(d, i + 1, chosen, out);
            chosen.pop();
        }
    }
}

/// The cube move taking `p` to `q`, if their cubical distance is at most 1.
pub fn cube_adjacent(p: &SortedCollection, q: &SortedCollection) -> Result<Option<CubeMove>> {
    check_pair(p, q)?;
    if p == q {
        return Ok(Some(CubeMove { detours: Vec::new() }));
    }
    let circ = permutation_from_collection(p)?;
    let detours = circuit_detours(&circ);
    let mut chosen: Vec<DetourMove> = Vec::new();
    for m in p.members().iter().filter(|m| !q.contains(m)) {
        match detours.iter().find(|d| d.i_t == *m && q.contains(&d.replacement)) {
            Some(d) => chosen.push(d.clone()),
            None => return Ok(None),
        }
    }
    for (i, a) in chosen.iter().enumerate() {
        if chosen[i + 1..].iter().any(|b| !a.compatible(b)) {
            return Ok(None);
        }
    }
    let refs: Vec<&DetourMove> = chosen.iter().collect();
    let image = apply_detours(&circ, &refs)?.collection();
    Ok(if &image == q { Some(CubeMove { detours: chosen }) } else { None })
}

/// Geometric reading of a cube through `p`: a set of facet-neighbour swaps
/// whose `2^m` combinations are all cells of the triangulation. Returns the
/// dimension of such a cube with `q` opposite to `p`.
pub fn cube_adjacent_by_geometry(p: &SortedCollection, q: &SortedCollection) -> Result<Option<usize>> {
    check_pair(p, q)?;
    if p == q {
        return Ok(Some(0));
    }
    let swaps: Vec<(KSubset, KSubset)> = facet_neighbors(p)?.into_iter().map(|(d, _)| (d.i_t, d.replacement)).collect();
    let removed: Vec<KSubset> = p.members().iter().filter(|m| !q.contains(m)).copied().collect();
    let mut picked = Vec::new();
    for r in &removed {
        match swaps.iter().find(|(old, new)| old == r && q.contains(new)) {
            Some(s) => picked.push(*s),
            None => return Ok(None),
        }
    }
    if !geometric_cube(p, &picked)? {
        return Ok(None);
    }
    let mut image = p.clone();
    for (old, new) in &picked {
        image = image.replaced(old, *new);
    }
    Ok(if &image == q { Some(picked.len()) } else { None })
}

/// Whether every combination of the given member swaps is a cell of the
/// triangulation and combinations differing by one swap share a facet.
pub fn geometric_cube(p: &SortedCollection, swaps: &[(KSubset, KSubset)]) -> Result<bool> {
    let m = swaps.len();
    for mask in 0u32..(1 << m) {
        let mut members: BTreeSet<KSubset> = p.members().iter().copied().collect();
        for (i, (old, new)) in swaps.iter().enumerate() {
            if mask >> i & 1 == 1 {
                members.remove(old);
                members.insert(*new);
            }
        }
        let members: Vec<KSubset> = members.into_iter().collect();
        if members.len() != p.n() || !is_sorted_collection(&members)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_pair(p: &SortedCollection, q: &SortedCollection) -> Result<()> {
    if p.n() != q.n() || p.k() != q.k() {
        return Err(Error::Parameter(format!("collections of different shape: {p} and {q}")));
    }
    p.require_maximal()?;
    q.require_maximal()
}

/// Breadth-first search over cube moves from `start` until `done` holds.
fn cube_bfs(start: &SortedCollection, limits: &Limits, done: impl Fn(&SortedCollection) -> bool) -> Result<Option<usize>> {
    let circ = permutation_from_collection(start)?;
    if done(start) {
        return Ok(Some(0));
    }
    let cap = limits.max_collections as usize;
    let mut seen: HashMap<Vec<u32>, usize> = HashMap::new();
    seen.insert(circ.omega().to_vec(), 0);
    let mut queue = VecDeque::from([(circ, 0usize)]);
    while let Some((c, d)) = queue.pop_front() {
        for mv in cube_moves(&c) {
            let refs: Vec<&DetourMove> = mv.detours.iter().collect();
            let next = apply_detours(&c, &refs)?;
            if seen.contains_key(next.omega()) {
                continue;
            }
            if done(&next.collection()) {
                return Ok(Some(d + 1));
            }
            if seen.len() >= cap {
                return Err(Error::SizeLimit(format!("cube search visited more than {cap} cells")));
            }
            seen.insert(next.omega().to_vec(), d + 1);
            queue.push_back((next, d + 1));
        }
    }
    Ok(None)
}

pub fn cubical_distance(p: &SortedCollection, q: &SortedCollection, limits: &Limits) -> Result<usize> {
    check_pair(p, q)?;
    cube_bfs(p, limits, |c| c == q)?
        .ok_or_else(|| Error::Internal(format!("{q} unreachable from {p} by cube moves")))
}

pub fn cubical_distance_to_subset(j: &SortedCollection, w: &KSubset, limits: &Limits) -> Result<usize> {
    j.require_maximal()?;
    j.members()[0].same_shape(w)?;
    if j.contains(w) {
        return Err(Error::DegenerateQuery(format!("{w} is a member of {j}")));
    }
    cube_bfs(j, limits, |c| c.contains(w))?
        .ok_or_else(|| Error::Internal(format!("no cell containing {w} reachable from {j}")))
}

/// Cubical distance from `j` to every subset outside it, by one full search.
pub fn cubical_distances_from(j: &SortedCollection, limits: &Limits) -> Result<BTreeMap<KSubset, usize>> {
    j.require_maximal()?;
    let mut out = BTreeMap::new();
    let record = |c: &SortedCollection, d: usize, out: &mut BTreeMap<KSubset, usize>| {
        for m in c.members() {
            if !j.contains(m) {
                out.entry(*m).or_insert(d);
            }
        }
    };
    let circ = permutation_from_collection(j)?;
    let cap = limits.max_collections as usize;
    let mut seen: HashSet<Vec<u32>> = HashSet::from([circ.omega().to_vec()]);
    let mut queue = VecDeque::from([(circ, 0usize)]);
    while let Some((c, d)) = queue.pop_front() {
        for mv in cube_moves(&c) {
            let refs: Vec<&DetourMove> = mv.detours.iter().collect();
            let next = apply_detours(&c, &refs)?;
            if !seen.insert(next.omega().to_vec()) {
                continue;
            }
            if seen.len() > cap {
                return Err(Error::SizeLimit(format!("cube search visited more than {cap} cells")));
            }
            record(&next.collection(), d + 1, &mut out);
            queue.push_back((next, d + 1));
        }
    }
    Ok(out)
}
