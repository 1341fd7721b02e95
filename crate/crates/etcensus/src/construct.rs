//! The construction engine: candidate subgroups of the graph's automorphism
//! group, swept-cycle cover candidates, validation, classification and
//! deduplication into census records.

use std::collections::{BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cdc::{
    alpha_cycle, cycle_orbit, enumerate_cdcs_bruteforce, is_cdc, is_vertex_faithful, CdcError,
    Cycle, CycleDoubleCover,
};
use crate::graph::{CubicGraph, GraphError};
use crate::perm::{PermError, PermGroup, Permutation};
use crate::surface::{
    surface_from_cdc, FaceEdgeType, SimplicialSurface, SurfaceError, VertexFaceType,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("graph is not edge-transitive")]
    NotEdgeTransitive,
    #[error("automorphism group order {order} exceeds ceiling {ceiling}")]
    CeilingExceeded { order: u64, ceiling: u64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Cdc(#[from] CdcError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// Search configuration: resource ceilings and the face-edge types to keep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub max_aut_order: u64,
    pub oracle_bound: usize,
    /// Requested `(face orbits, edge stabilizer order)` pairs.
    pub types: BTreeSet<(usize, u64)>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_aut_order: 100_000,
            oracle_bound: 20,
            types: BTreeSet::from([(1, 2), (1, 4), (2, 1), (2, 2)]),
        }
    }
}

impl Config {
    /// Edge-stabilizer orders of the subgroups serving the requested types.
    fn subgroup_ts(&self) -> BTreeSet<u64> {
        self.types
            .iter()
            .map(|&(orbits, stab)| match (orbits, stab) {
                (1, 4) => 4,
                (1, 2) => 2,
                (2, 2) => 2,
                (2, 1) => 1,
                _ => stab,
            })
            .collect()
    }

    /// Vertex-orbit counts admissible for a subgroup with the given `t`.
    fn vertex_orbit_filter(&self, t: u64) -> BTreeSet<usize> {
        match t {
            4 => BTreeSet::from([1]),
            1 => BTreeSet::from([2]),
            2 => {
                let mut s = BTreeSet::new();
                if self.types.contains(&(1, 2)) {
                    s.insert(1);
                }
                if self.types.contains(&(2, 2)) {
                    s.insert(2);
                }
                s
            }
            _ => BTreeSet::new(),
        }
    }
}

/// One deduplicated census result: the classified surface plus the canonical
/// form of the cover that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub graph: String,
    pub graph6: String,
    /// `(vertices, edges, faces)` of the surface.
    pub counts: (usize, usize, usize),
    pub chi: i64,
    pub orientable: bool,
    pub aut_order: u64,
    pub fe: FaceEdgeType,
    pub vf: VertexFaceType,
    /// Cover cycles in the lexicographically least labeling reachable by a
    /// graph automorphism; doubles as the isomorphism-class key.
    pub cdc: Vec<Vec<usize>>,
}

impl CensusRecord {
    pub fn sort_key(&self) -> (String, usize, FaceEdgeType, Vec<Vec<usize>>) {
        (
            self.graph.clone(),
            self.counts.2,
            self.fe,
            self.cdc.clone(),
        )
    }
}

/// A census record together with its in-memory surface and cover.
pub struct CensusItem {
    pub record: CensusRecord,
    pub surface: SimplicialSurface,
    pub cover: CycleDoubleCover,
}

/// Conjugacy class representatives of subgroups with order `t·|E|` that act
/// transitively on edges, filtered to the vertex-orbit counts serving the
/// requested surface types.
pub fn candidate_subgroups(
    g: &CubicGraph,
    t: u64,
    cfg: &Config,
) -> Result<Vec<PermGroup>, ConstructError> {
    let aut = g.automorphism_group();
    let order = aut.order();
    if order > cfg.max_aut_order {
        return Err(ConstructError::CeilingExceeded {
            order,
            ceiling: cfg.max_aut_order,
        });
    }
    let target = t * g.edge_count() as u64;
    if !order.is_multiple_of(target) {
        return Ok(Vec::new());
    }
    let classes = aut.subgroups_of_order(target, cfg.max_aut_order)?;
    Ok(filter_candidates(g, classes, t, cfg))
}

fn filter_candidates(
    g: &CubicGraph,
    classes: Vec<PermGroup>,
    t: u64,
    cfg: &Config,
) -> Vec<PermGroup> {
    let edges = g.edges();
    let orbit_filter = cfg.vertex_orbit_filter(t);
    classes
        .into_iter()
        .filter(|h| {
            h.order() == t * g.edge_count() as u64
                && orbit_filter.contains(&h.orbit_count())
                && h.is_transitive_edges(&edges).unwrap_or(false)
        })
        .collect()
}

/// Ordered paths on `len` vertices, one representative per H-orbit.
fn path_orbit_reps(g: &CubicGraph, h: &PermGroup, len: usize) -> Vec<Vec<usize>> {
    let mut paths: Vec<Vec<usize>> = Vec::new();
    match len {
        2 => {
            for (a, b) in g.edges() {
                paths.push(vec![a, b]);
                paths.push(vec![b, a]);
            }
        }
        3 => {
            for b in 0..g.vertex_count() {
                for &a in &g.neighbors(b) {
                    for &c in &g.neighbors(b) {
                        if a != c {
                            paths.push(vec![a, b, c]);
                        }
                    }
                }
            }
        }
        _ => unreachable!("swept paths have 2 or 3 vertices"),
    }
    paths.sort();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut reps = Vec::new();
    for p in paths {
        if seen.contains(&p) {
            continue;
        }
        reps.push(p.clone());
        // Mark the whole H-orbit of the tuple.
        let mut queue = VecDeque::from([p.clone()]);
        seen.insert(p);
        while let Some(cur) = queue.pop_front() {
            for gen in h.generators() {
                let img: Vec<usize> = cur.iter().map(|&v| gen.apply(v)).collect();
                if seen.insert(img.clone()) {
                    queue.push_back(img);
                }
            }
        }
    }
    reps
}

/// Sweep every admissible `(path, σ)` pair under `h` and keep the orbits
/// that form vertex-faithful covers of edge-transitive surfaces admitting
/// `h` as surface automorphisms. Deduplicated within the call.
pub fn search_surfaces(
    g: &CubicGraph,
    h: &PermGroup,
    n: usize,
) -> Result<Vec<(CycleDoubleCover, SimplicialSurface)>, ConstructError> {
    let mut out: Vec<(CycleDoubleCover, SimplicialSurface)> = Vec::new();
    let mut seen: BTreeSet<Vec<Cycle>> = BTreeSet::new();
    for path in path_orbit_reps(g, h, n) {
        let f1 = path[0];
        let fn_ = *path.last().expect("path nonempty");
        let Some(tau) = h.transporter(f1, fn_) else {
            continue;
        };
        let stab = h.stabilizer_point(f1)?;
        let mut sigmas = Vec::with_capacity(stab.order() as usize);
        stab.for_each_element(&mut |s| sigmas.push(tau.mul(s)));
        for sigma in sigmas {
            let Ok(Some(cycle)) = alpha_cycle(g, &sigma, &path) else {
                continue;
            };
            let orbit = cycle_orbit(h, &cycle);
            if !is_cdc(g, &orbit) || !is_vertex_faithful(&orbit) {
                continue;
            }
            let cover = CycleDoubleCover::new(g, orbit)?;
            if !seen.insert(cover.cycles().to_vec()) {
                continue;
            }
            let Ok(surface) = surface_from_cdc(g, &cover) else {
                continue;
            };
            if !surface.is_edge_transitive() {
                continue;
            }
            let aut_s = surface.automorphism_group();
            if !h.generators().iter().all(|p| aut_s.membership_test(p)) {
                continue;
            }
            out.push((cover, surface));
        }
    }
    Ok(out)
}

/// The lexicographically least relabeling of the cover reachable by a graph
/// automorphism; equal keys ⟺ isomorphic surfaces over the same graph.
pub fn canonical_cdc_key(aut: &PermGroup, cover: &CycleDoubleCover) -> Vec<Vec<usize>> {
    let mut best: Option<Vec<Vec<usize>>> = None;
    aut.for_each_element(&mut |p| {
        let key: Vec<Vec<usize>> = cover
            .apply(p)
            .cycles()
            .iter()
            .map(|c| c.vertices().to_vec())
            .collect();
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    });
    best.expect("group has at least the identity")
}

/// All edge-transitive surfaces with face graph `g` reachable by the sweep
/// construction, deduplicated up to isomorphism and canonically sorted.
pub fn census_graph_full(
    name: &str,
    g: &CubicGraph,
    cfg: &Config,
) -> Result<Vec<CensusItem>, ConstructError> {
    if !g.is_edge_transitive() {
        return Err(ConstructError::NotEdgeTransitive);
    }
    let aut = g.automorphism_group();
    let order = aut.order();
    if order > cfg.max_aut_order {
        return Err(ConstructError::CeilingExceeded {
            order,
            ceiling: cfg.max_aut_order,
        });
    }

    // One subgroup enumeration covers every requested t: pass the combined,
    // divisor-closed order set.
    let targets: Vec<u64> = cfg
        .subgroup_ts()
        .into_iter()
        .map(|t| t * g.edge_count() as u64)
        .filter(|k| order.is_multiple_of(*k))
        .collect();
    let allowed: BTreeSet<u64> = (1..=order)
        .filter(|d| order.is_multiple_of(*d) && targets.iter().any(|k| k % d == 0))
        .collect();
    let classes = aut.subgroup_classes(&allowed, cfg.max_aut_order)?;

    let mut tasks: Vec<(PermGroup, usize)> = Vec::new();
    for t in cfg.subgroup_ts() {
        if !order.is_multiple_of(t * g.edge_count() as u64) {
            continue;
        }
        for h in filter_candidates(g, classes.clone(), t, cfg) {
            tasks.push((h.clone(), 2));
            tasks.push((h, 3));
        }
    }

    let run = |(h, n): &(PermGroup, usize)| search_surfaces(g, h, *n);
    #[cfg(feature = "parallel")]
    let results: Vec<_> = {
        use rayon::prelude::*;
        tasks.par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<_> = tasks.iter().map(run).collect();

    let mut items: Vec<CensusItem> = Vec::new();
    let mut seen_keys: BTreeSet<Vec<Vec<usize>>> = BTreeSet::new();
    for result in results {
        for (cover, surface) in result? {
            let key = canonical_cdc_key(aut, &cover);
            if !seen_keys.insert(key.clone()) {
                continue;
            }
            let fe = surface.face_edge_type()?;
            if !cfg.types.contains(&(fe.face_orbits, fe.edge_stab_order)) {
                continue;
            }
            let record = CensusRecord {
                graph: name.to_string(),
                graph6: g.to_graph6(),
                counts: surface.counts(),
                chi: surface.euler_characteristic(),
                orientable: surface.is_orientable(),
                aut_order: surface.automorphism_group().order(),
                fe,
                vf: surface.vertex_face_type(),
                cdc: key,
            };
            items.push(CensusItem {
                record,
                surface,
                cover,
            });
        }
    }
    items.sort_by_key(|i| i.record.sort_key());
    Ok(items)
}

pub fn census_graph(
    name: &str,
    g: &CubicGraph,
    cfg: &Config,
) -> Result<Vec<CensusRecord>, ConstructError> {
    Ok(census_graph_full(name, g, cfg)?
        .into_iter()
        .map(|i| i.record)
        .collect())
}

/// Drop records whose covers lie in the same `Aut(g)`-orbit, keeping the
/// canonically least representative per orbit.
pub fn dedup(records: Vec<CensusRecord>, g: &CubicGraph) -> Vec<CensusRecord> {
    let aut = g.automorphism_group();
    let mut seen: BTreeSet<Vec<Vec<usize>>> = BTreeSet::new();
    let mut out = Vec::new();
    for mut r in records {
        let cycles: BTreeSet<Cycle> = r
            .cdc
            .iter()
            .map(|v| Cycle::from_vertices(g, v).expect("record cycles live on g"))
            .collect();
        let cover = CycleDoubleCover::new(g, cycles).expect("record cover is valid");
        let key = canonical_cdc_key(aut, &cover);
        if seen.insert(key.clone()) {
            r.cdc = key;
            out.push(r);
        }
    }
    out.sort_by_key(|r| r.sort_key());
    out
}

/// Outcome of comparing the sweep pipeline against the brute-force oracle.
#[derive(Debug, Serialize)]
pub struct OracleReport {
    pub pipeline_surfaces: usize,
    pub oracle_surfaces: usize,
    pub matched: bool,
}

/// Cross-check: the pipeline's surfaces must equal the edge-transitive
/// surfaces among all brute-force covers, up to isomorphism.
pub fn oracle_check(
    name: &str,
    g: &CubicGraph,
    cfg: &Config,
) -> Result<OracleReport, ConstructError> {
    let items = census_graph_full(name, g, cfg)?;
    let pipeline_keys: BTreeSet<Vec<Vec<usize>>> =
        items.iter().map(|i| i.record.cdc.clone()).collect();

    let aut = g.automorphism_group();
    let mut oracle_keys: BTreeSet<Vec<Vec<usize>>> = BTreeSet::new();
    for cover in enumerate_cdcs_bruteforce(g, cfg.oracle_bound)? {
        let Ok(surface) = surface_from_cdc(g, &cover) else {
            continue;
        };
        if !surface.is_edge_transitive() {
            continue;
        }
        let fe = surface.face_edge_type()?;
        if !cfg.types.contains(&(fe.face_orbits, fe.edge_stab_order)) {
            continue;
        }
        oracle_keys.insert(canonical_cdc_key(aut, &cover));
    }

    Ok(OracleReport {
        pipeline_surfaces: pipeline_keys.len(),
        oracle_surfaces: oracle_keys.len(),
        matched: pipeline_keys == oracle_keys,
    })
}

/// Outcome of the relabeling robustness check.
#[derive(Debug, Serialize)]
pub struct RelabelReport {
    pub seed: u64,
    pub original: usize,
    pub relabeled: usize,
    pub matched: bool,
}

/// Census the graph and a seeded random relabeling of it; the two censuses
/// must match record-for-record up to surface isomorphism.
pub fn relabel_check(
    name: &str,
    g: &CubicGraph,
    seed: u64,
    cfg: &Config,
) -> Result<RelabelReport, ConstructError> {
    let mut images: Vec<usize> = (0..g.vertex_count()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    images.shuffle(&mut rng);
    let p = Permutation::from_images(images)?;
    let relabeled = g.relabel(&p)?;

    let a = census_graph_full(name, g, cfg)?;
    let b = census_graph_full(name, &relabeled, cfg)?;
    let mut matched = a.len() == b.len();
    if matched {
        let mut used = vec![false; b.len()];
        'outer: for ia in &a {
            for (j, ib) in b.iter().enumerate() {
                if !used[j]
                    && ia.record.counts == ib.record.counts
                    && ia.record.fe == ib.record.fe
                    && ia.record.aut_order == ib.record.aut_order
                    && ia.record.orientable == ib.record.orientable
                    && crate::surface::surfaces_isomorphic(&ia.surface, &ib.surface)
                {
                    used[j] = true;
                    continue 'outer;
                }
            }
            matched = false;
            break;
        }
    }
    Ok(RelabelReport {
        seed,
        original: a.len(),
        relabeled: b.len(),
        matched,
    })
}
