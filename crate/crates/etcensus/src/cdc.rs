//! Cycles, automorphism-swept α-cycles, cycle double cover validation and an
//! independent brute-force enumeration oracle.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::graph::CubicGraph;
use crate::perm::{PermGroup, Permutation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CdcError {
    #[error("vertex sequence is not a path in the host graph")]
    NotAPath,
    #[error("permutation is not an automorphism of the host graph")]
    NotAnAutomorphism,
    #[error("sigma maps path start to {got}, expected path end {expected}")]
    EndpointMismatch { expected: usize, got: usize },
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("graph has {n} vertices, oracle bound is {bound}")]
    BoundExceeded { n: usize, bound: usize },
}

/// A simple cycle stored in canonical form: the lexicographically least
/// rotation of the lexicographically smaller traversal direction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    verts: Vec<usize>,
}

impl Cycle {
    /// Validate adjacency, distinctness and the length-3 floor, then
    /// canonicalize.
    pub fn from_vertices(g: &CubicGraph, verts: &[usize]) -> Result<Self, CdcError> {
        if verts.len() < 3 {
            return Err(CdcError::NotACycle(format!(
                "length {} < 3",
                verts.len()
            )));
        }
        let distinct: BTreeSet<_> = verts.iter().collect();
        if distinct.len() != verts.len() {
            return Err(CdcError::NotACycle("repeated vertex".into()));
        }
        for i in 0..verts.len() {
            let (a, b) = (verts[i], verts[(i + 1) % verts.len()]);
            if a >= g.vertex_count() || !g.are_adjacent(a, b) {
                return Err(CdcError::NotACycle(format!("{a} and {b} not adjacent")));
            }
        }
        Ok(Self::canonical(verts))
    }

    /// Vertices are distinct, so the canonical form starts at the minimum
    /// vertex and proceeds toward its smaller cyclic neighbor.
    fn canonical(verts: &[usize]) -> Self {
        let n = verts.len();
        let start = (0..n).min_by_key(|&i| verts[i]).expect("nonempty");
        let succ = verts[(start + 1) % n];
        let pred = verts[(start + n - 1) % n];
        let mut out = Vec::with_capacity(n);
        if succ <= pred {
            for k in 0..n {
                out.push(verts[(start + k) % n]);
            }
        } else {
            for k in 0..n {
                out.push(verts[(start + n - k) % n]);
            }
        }
        Cycle { verts: out }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.verts
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    /// Edges as `(min, max)` pairs, sorted.
    pub fn edge_set(&self) -> Vec<(usize, usize)> {
        let n = self.verts.len();
        let mut out: Vec<(usize, usize)> = (0..n)
            .map(|i| {
                let (a, b) = (self.verts[i], self.verts[(i + 1) % n]);
                (a.min(b), a.max(b))
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn contains_edge(&self, e: (usize, usize)) -> bool {
        let e = (e.0.min(e.1), e.0.max(e.1));
        let n = self.verts.len();
        (0..n).any(|i| {
            let (a, b) = (self.verts[i], self.verts[(i + 1) % n]);
            (a.min(b), a.max(b)) == e
        })
    }

    /// The image cycle under a vertex permutation, re-canonicalized.
    pub fn apply(&self, p: &Permutation) -> Cycle {
        let imgs: Vec<usize> = self.verts.iter().map(|&v| p.apply(v)).collect();
        Cycle::canonical(&imgs)
    }
}

/// Sweep the path `F1..Fn` around under powers of `sigma`.
///
/// Returns the resulting cycle when the swept vertices are pairwise distinct
/// and at least 3 of them arise, `None` when the sweep degenerates.
pub fn alpha_cycle(
    g: &CubicGraph,
    sigma: &Permutation,
    path: &[usize],
) -> Result<Option<Cycle>, CdcError> {
    if path.len() < 2 {
        return Err(CdcError::NotAPath);
    }
    let distinct: BTreeSet<_> = path.iter().collect();
    if distinct.len() != path.len() {
        return Err(CdcError::NotAPath);
    }
    for w in path.windows(2) {
        if w[0] >= g.vertex_count() || !g.are_adjacent(w[0], w[1]) {
            return Err(CdcError::NotAPath);
        }
    }
    if sigma.degree() != g.vertex_count()
        || g.edges().iter().any(|&(a, b)| {
            let (x, y) = sigma.apply_edge((a, b));
            !g.are_adjacent(x, y)
        })
    {
        return Err(CdcError::NotAnAutomorphism);
    }
    let f1 = path[0];
    let fn_ = *path.last().expect("len >= 2");
    if sigma.apply(f1) != fn_ {
        return Err(CdcError::EndpointMismatch {
            expected: fn_,
            got: sigma.apply(f1),
        });
    }

    let ell = sigma.order();
    let seg = &path[..path.len() - 1];
    let total = seg.len() as u64 * ell;
    if total < 3 || total > g.vertex_count() as u64 {
        return Ok(None);
    }
    let mut swept = Vec::with_capacity(total as usize);
    let mut current: Vec<usize> = seg.to_vec();
    for _ in 0..ell {
        for v in &mut current {
            *v = sigma.apply(*v);
        }
        swept.extend_from_slice(&current);
    }
    let distinct: BTreeSet<_> = swept.iter().collect();
    if distinct.len() != swept.len() {
        return Ok(None);
    }
    Ok(Some(Cycle::canonical(&swept)))
}

/// The orbit `{h(c) : h ∈ H}`, computed by closure under the generators.
pub fn cycle_orbit(h: &PermGroup, c: &Cycle) -> BTreeSet<Cycle> {
    let mut orbit = BTreeSet::from([c.clone()]);
    let mut queue = VecDeque::from([c.clone()]);
    while let Some(cur) = queue.pop_front() {
        for gen in h.generators() {
            let img = cur.apply(gen);
            if orbit.insert(img.clone()) {
                queue.push_back(img);
            }
        }
    }
    orbit
}

/// Does every edge of `g` lie in exactly two of the cycles?
pub fn is_cdc(g: &CubicGraph, cycles: &BTreeSet<Cycle>) -> bool {
    g.edges()
        .iter()
        .all(|&e| cycles.iter().filter(|c| c.contains_edge(e)).count() == 2)
}

/// Do all pairs of cycles share at most one edge?
pub fn is_vertex_faithful(cycles: &BTreeSet<Cycle>) -> bool {
    let sets: Vec<BTreeSet<(usize, usize)>> = cycles
        .iter()
        .map(|c| c.edge_set().into_iter().collect())
        .collect();
    for i in 0..sets.len() {
        for j in (i + 1)..sets.len() {
            if sets[i].intersection(&sets[j]).count() > 1 {
                return false;
            }
        }
    }
    true
}

/// A validated vertex-faithful cycle double cover.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CycleDoubleCover {
    cycles: Vec<Cycle>,
}

impl CycleDoubleCover {
    pub fn new(g: &CubicGraph, cycles: BTreeSet<Cycle>) -> Result<Self, CdcError> {
        if !is_cdc(g, &cycles) {
            return Err(CdcError::NotACycle(
                "some edge is not covered exactly twice".into(),
            ));
        }
        if !is_vertex_faithful(&cycles) {
            return Err(CdcError::NotACycle(
                "two cycles share more than one edge".into(),
            ));
        }
        Ok(CycleDoubleCover {
            cycles: cycles.into_iter().collect(),
        })
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn cycle_set(&self) -> BTreeSet<Cycle> {
        self.cycles.iter().cloned().collect()
    }

    pub fn apply(&self, p: &Permutation) -> CycleDoubleCover {
        let mut cycles: Vec<Cycle> = self.cycles.iter().map(|c| c.apply(p)).collect();
        cycles.sort();
        CycleDoubleCover { cycles }
    }
}

/// All simple cycles of `g`, each reported once in canonical form.
///
/// Roots each search at the minimum vertex of the cycle and fixes the
/// traversal direction, so no cycle is emitted twice.
pub fn all_simple_cycles(g: &CubicGraph) -> Vec<Cycle> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut path = Vec::new();
    let mut on_path = vec![false; n];
    for root in 0..n {
        path.push(root);
        on_path[root] = true;
        extend(g, root, &mut path, &mut on_path, &mut out);
        on_path[root] = false;
        path.pop();
    }
    fn extend(
        g: &CubicGraph,
        root: usize,
        path: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
        out: &mut Vec<Cycle>,
    ) {
        let last = *path.last().expect("nonempty");
        for &w in &g.neighbors(last) {
            if w == root && path.len() >= 3 {
                // Emit each cycle in one direction only.
                if path[1] < *path.last().expect("len >= 3") {
                    out.push(Cycle::canonical(path));
                }
            } else if w > root && !on_path[w] {
                path.push(w);
                on_path[w] = true;
                extend(g, root, path, on_path, out);
                on_path[w] = false;
                path.pop();
            }
        }
    }
    out.sort();
    out
}

/// Exhaustively enumerate every vertex-faithful cycle double cover of `g`.
///
/// Enumerates all simple cycles, then runs an exact-cover search selecting
/// cycles so each edge is covered exactly twice, pruning any pair of chosen
/// cycles sharing more than one edge. Independent of the α-cycle machinery.
pub fn enumerate_cdcs_bruteforce(
    g: &CubicGraph,
    bound: usize,
) -> Result<Vec<CycleDoubleCover>, CdcError> {
    let n = g.vertex_count();
    if n > bound {
        return Err(CdcError::BoundExceeded { n, bound });
    }
    let edges = g.edges();
    assert!(edges.len() <= 128, "edge mask width");
    let edge_index = |e: (usize, usize)| edges.binary_search(&e).expect("edge exists");

    let cycles = all_simple_cycles(g);
    let masks: Vec<u128> = cycles
        .iter()
        .map(|c| {
            c.edge_set()
                .into_iter()
                .fold(0u128, |m, e| m | (1u128 << edge_index(e)))
        })
        .collect();

    let state = SearchState {
        edge_count: edges.len(),
        masks: &masks,
    };
    // First-level branches are independent; fan them out.
    let seeds = state.branches(&[], &vec![0u8; edges.len()]);
    let run_seed = |seed: &Vec<usize>| {
        let mut counts = vec![0u8; edges.len()];
        for &i in seed {
            for b in 0..edges.len() {
                if masks[i] >> b & 1 == 1 {
                    counts[b] += 1;
                }
            }
        }
        let mut found = Vec::new();
        state.search(seed.clone(), counts, &mut found);
        found
    };

    #[cfg(feature = "parallel")]
    let nested: Vec<Vec<Vec<usize>>> = {
        use rayon::prelude::*;
        seeds.par_iter().map(run_seed).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let nested: Vec<Vec<Vec<usize>>> = seeds.iter().map(run_seed).collect();

    let mut out: Vec<CycleDoubleCover> = nested
        .into_iter()
        .flatten()
        .map(|sel| {
            let set: BTreeSet<Cycle> = sel.into_iter().map(|i| cycles[i].clone()).collect();
            CycleDoubleCover::new(g, set).expect("search output is a vertex-faithful CDC")
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

struct SearchState<'a> {
    edge_count: usize,
    masks: &'a [u128],
}

impl SearchState<'_> {
    /// Candidate selections resolving the first deficient edge. Choosing the
    /// full covering pair (or the single missing cycle) at once means every
    /// final cover is reached along exactly one branch.
    fn branches(&self, selected: &[usize], counts: &[u8]) -> Vec<Vec<usize>> {
        let Some(edge) = (0..self.edge_count).find(|&b| counts[b] < 2) else {
            return Vec::new();
        };
        let candidates: Vec<usize> = (0..self.masks.len())
            .filter(|&i| {
                self.masks[i] >> edge & 1 == 1 && self.compatible(selected, counts, i)
            })
            .collect();
        let mut out = Vec::new();
        if counts[edge] == 1 {
            for &i in &candidates {
                out.push(vec![i]);
            }
        } else {
            for (a, &i) in candidates.iter().enumerate() {
                for &j in &candidates[a + 1..] {
                    if (self.masks[i] & self.masks[j]).count_ones() <= 1 {
                        out.push(vec![i, j]);
                    }
                }
            }
        }
        out
    }

    fn compatible(&self, selected: &[usize], counts: &[u8], i: usize) -> bool {
        if selected.contains(&i) {
            return false;
        }
        for b in 0..self.edge_count {
            if self.masks[i] >> b & 1 == 1 && counts[b] >= 2 {
                return false;
            }
        }
        selected
            .iter()
            .all(|&s| (self.masks[s] & self.masks[i]).count_ones() <= 1)
    }

    fn search(&self, mut selected: Vec<usize>, counts: Vec<u8>, found: &mut Vec<Vec<usize>>) {
        if (0..self.edge_count).all(|b| counts[b] == 2) {
            selected.sort_unstable();
            found.push(selected);
            return;
        }
        for branch in self.branches(&selected, &counts) {
            // Pair branches may overfill an edge both members cover once.
            let mut next_counts = counts.clone();
            let mut ok = true;
            'add: for &i in &branch {
                for b in 0..self.edge_count {
                    if self.masks[i] >> b & 1 == 1 {
                        next_counts[b] += 1;
                        if next_counts[b] > 2 {
                            ok = false;
                            break 'add;
                        }
                    }
                }
            }
            if !ok {
                continue;
            }
            let mut next_sel = selected.clone();
            next_sel.extend_from_slice(&branch);
            self.search(next_sel, next_counts, found);
        }
    }
}

/// The subgroup of `group` whose elements permute `cycles` among themselves.
pub fn stabilizer_of_cycle_set(
    group: &PermGroup,
    cycles: &BTreeSet<Cycle>,
) -> Result<PermGroup, crate::perm::PermError> {
    group.stabilizer_where(u64::MAX, |p: &Permutation| {
        cycles.iter().all(|c| cycles.contains(&c.apply(p)))
    })
}
