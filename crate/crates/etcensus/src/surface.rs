//! Simplicial surfaces encoded by their face triangles: reconstruction from
//! a vertex-faithful cycle double cover, topological invariants, the surface
//! automorphism group and the face-edge / vertex-face classification.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::ops::ControlFlow;

use once_cell::sync::OnceCell;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cdc::{alpha_cycle, Cycle, CycleDoubleCover};
use crate::graph::{CubicGraph, GraphError};
use crate::perm::{PermError, PermGroup, Permutation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("face {0:?} does not have three distinct vertices")]
    DegenerateFace([usize; 3]),
    #[error("duplicate face {0:?}")]
    DuplicateFace([usize; 3]),
    #[error("edge {edge:?} lies in {count} faces, expected 2")]
    EdgeCoverage { edge: (usize, usize), count: usize },
    #[error("faces around vertex {vertex} do not form one closed umbrella: {detail}")]
    UmbrellaBroken { vertex: usize, detail: String },
    #[error("surface is not connected")]
    Disconnected,
    #[error("no faces")]
    Empty,
    #[error("surface is not edge-transitive")]
    NotEdgeTransitive,
    #[error("face graph: {0}")]
    FaceGraph(#[from] GraphError),
    #[error("group computation: {0}")]
    Perm(#[from] PermError),
}

/// Face-orbit count and edge-stabilizer order, with the subtype split of the
/// two-element-stabilizer single-orbit case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FaceEdgeType {
    pub face_orbits: usize,
    pub edge_stab_order: u64,
    pub subtype: Option<u8>,
}

impl std::fmt::Display for FaceEdgeType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.subtype {
            Some(s) => write!(f, "({},{}).{}", self.face_orbits, self.edge_stab_order, s),
            None => write!(f, "({},{})", self.face_orbits, self.edge_stab_order),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexFaceType {
    pub vertex_orbits: usize,
    pub face_stab_order: u64,
}

/// A closed triangulated surface. Vertices are `0..vertex_count`, faces are
/// sorted vertex triples, edges are sorted vertex pairs in sorted order.
#[derive(Debug, Clone)]
pub struct SimplicialSurface {
    faces: Vec<[usize; 3]>,
    nv: usize,
    /// Original vertex labels when loaded from a file; identity otherwise.
    labels: Vec<usize>,
    edges: Vec<(usize, usize)>,
    edge_faces: Vec<[usize; 2]>,
    /// Cyclic face sequence around each vertex.
    umbrellas: Vec<Vec<usize>>,
    fgraph: OnceCell<CubicGraph>,
    aut: OnceCell<PermGroup>,
}

impl SimplicialSurface {
    /// Build and fully validate a surface from its face triples. Vertex
    /// labels may be arbitrary; they are compacted to `0..nv`.
    pub fn from_faces(raw_faces: &[[usize; 3]]) -> Result<Self, SurfaceError> {
        if raw_faces.is_empty() {
            return Err(SurfaceError::Empty);
        }
        let mut label_set = BTreeSet::new();
        for f in raw_faces {
            if f[0] == f[1] || f[0] == f[2] || f[1] == f[2] {
                return Err(SurfaceError::DegenerateFace(*f));
            }
            label_set.extend(f.iter().copied());
        }
        let labels: Vec<usize> = label_set.into_iter().collect();
        let index: BTreeMap<usize, usize> =
            labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut faces: Vec<[usize; 3]> = raw_faces
            .iter()
            .map(|f| {
                let mut t = [index[&f[0]], index[&f[1]], index[&f[2]]];
                t.sort_unstable();
                t
            })
            .collect();
        {
            let mut sorted = faces.clone();
            sorted.sort_unstable();
            if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                let f = w[0];
                return Err(SurfaceError::DuplicateFace([
                    labels[f[0]],
                    labels[f[1]],
                    labels[f[2]],
                ]));
            }
        }
        faces.shrink_to_fit();
        let nv = labels.len();

        // Edge incidences: every edge in exactly two faces.
        let mut edge_map: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (fi, f) in faces.iter().enumerate() {
            for e in [(f[0], f[1]), (f[0], f[2]), (f[1], f[2])] {
                edge_map.entry(e).or_default().push(fi);
            }
        }
        let mut edges = Vec::with_capacity(edge_map.len());
        let mut edge_faces = Vec::with_capacity(edge_map.len());
        for (e, fs) in &edge_map {
            if fs.len() != 2 {
                return Err(SurfaceError::EdgeCoverage {
                    edge: (labels[e.0], labels[e.1]),
                    count: fs.len(),
                });
            }
            edges.push(*e);
            edge_faces.push([fs[0], fs[1]]);
        }

        // Umbrellas: the faces at each vertex chain into one closed cycle.
        let mut umbrellas = Vec::with_capacity(nv);
        for v in 0..nv {
            umbrellas.push(build_umbrella(v, &faces, &edge_map, &labels)?);
        }

        // Connectivity via face adjacency.
        let mut seen = vec![false; faces.len()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut reached = 1;
        while let Some(f) = queue.pop_front() {
            for &[a, b] in &edge_faces {
                let other = if a == f { b } else if b == f { a } else { continue };
                if !seen[other] {
                    seen[other] = true;
                    reached += 1;
                    queue.push_back(other);
                }
            }
        }
        if reached != faces.len() {
            return Err(SurfaceError::Disconnected);
        }

        Ok(SimplicialSurface {
            faces,
            nv,
            labels,
            edges,
            edge_faces,
            umbrellas,
            fgraph: OnceCell::new(),
            aut: OnceCell::new(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.nv
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        (self.nv, self.edges.len(), self.faces.len())
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.nv as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// The cyclic sequence of faces around `v`.
    pub fn umbrella(&self, v: usize) -> &[usize] {
        &self.umbrellas[v]
    }

    pub fn vertex_degree(&self, v: usize) -> usize {
        self.umbrellas[v].len()
    }

    /// The cubic graph whose vertices are the faces, adjacent when they
    /// share an edge.
    pub fn face_graph(&self) -> &CubicGraph {
        self.fgraph.get_or_init(|| {
            let edges: Vec<(usize, usize)> = self
                .edge_faces
                .iter()
                .map(|&[a, b]| (a.min(b), a.max(b)))
                .collect();
            CubicGraph::from_edges(self.faces.len(), &edges)
                .expect("validated surface has a cubic connected face graph")
        })
    }

    /// The umbrellas read as cycles on the face graph. For a constructed
    /// surface this is exactly the generating cycle double cover.
    pub fn umbrella_cycles(&self) -> BTreeSet<Cycle> {
        let fg = self.face_graph();
        self.umbrellas
            .iter()
            .map(|u| Cycle::from_vertices(fg, u).expect("umbrella is a face-graph cycle"))
            .collect()
    }

    /// Orientations of faces as signs relative to the sorted vertex triple,
    /// or the first edge where propagation conflicts.
    fn orient(&self) -> Result<Vec<i8>, (usize, usize)> {
        // For a face (x,y,z) with x<y<z and sign +1, the boundary traverses
        // x→y, y→z, z→x; an edge is coherent when its two faces traverse it
        // in opposite directions.
        let dir = |f: &[usize; 3], e: (usize, usize)| -> i8 {
            if e == (f[0], f[2]) {
                -1
            } else {
                1
            }
        };
        let mut sign = vec![0i8; self.faces.len()];
        sign[0] = 1;
        let mut queue = VecDeque::from([0usize]);
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.faces.len()];
        for (ei, &[a, b]) in self.edge_faces.iter().enumerate() {
            incident[a].push(ei);
            incident[b].push(ei);
        }
        while let Some(f) = queue.pop_front() {
            for &ei in &incident[f] {
                let [a, b] = self.edge_faces[ei];
                let g = if a == f { b } else { a };
                let e = self.edges[ei];
                let need = -sign[f] * dir(&self.faces[f], e) * dir(&self.faces[g], e);
                if sign[g] == 0 {
                    sign[g] = need;
                    queue.push_back(g);
                } else if sign[g] != need {
                    return Err(e);
                }
            }
        }
        Ok(sign)
    }

    pub fn is_orientable(&self) -> bool {
        self.orient().is_ok()
    }

    /// The first edge at which orientation propagation fails, when any.
    pub fn orientation_conflict(&self) -> Option<(usize, usize)> {
        self.orient().err().map(|(a, b)| (self.labels[a], self.labels[b]))
    }

    /// The automorphism group acting on the faces: the setwise stabilizer of
    /// the umbrella-cycle set inside the face graph's automorphism group.
    pub fn automorphism_group(&self) -> &PermGroup {
        self.aut.get_or_init(|| {
            let cycles = self.umbrella_cycles();
            crate::cdc::stabilizer_of_cycle_set(self.face_graph().automorphism_group(), &cycles)
                .expect("degrees match")
        })
    }

    pub fn is_edge_transitive(&self) -> bool {
        let fg_edges = self.face_graph().edges();
        self.automorphism_group()
            .is_transitive_edges(&fg_edges)
            .expect("face-graph edges are closed under surface automorphisms")
    }

    /// `(face orbit count, edge stabilizer order)`, defined for
    /// edge-transitive surfaces only.
    pub fn face_edge_type(&self) -> Result<FaceEdgeType, SurfaceError> {
        if !self.is_edge_transitive() {
            return Err(SurfaceError::NotEdgeTransitive);
        }
        let aut = self.automorphism_group();
        let face_orbits = aut.orbit_count();
        let edge_stab_order = aut.order() / self.edges.len() as u64;
        let subtype = if (face_orbits, edge_stab_order) == (1, 2) {
            Some(self.one_two_subtype())
        } else {
            None
        };
        Ok(FaceEdgeType {
            face_orbits,
            edge_stab_order,
            subtype,
        })
    }

    /// Subtype 1 when some umbrella is swept from a single edge of the face
    /// graph, i.e. equals α(σ,F1,F2) for an automorphism σ of the surface.
    fn one_two_subtype(&self) -> u8 {
        // Vertex transitivity makes any one umbrella representative.
        let fg = self.face_graph();
        let cycle = self
            .umbrella_cycles()
            .into_iter()
            .next()
            .expect("surface has vertices");
        let verts = cycle.vertices().to_vec();
        let n = verts.len();
        let mut type1 = false;
        let mut swept_from_triple = false;
        self.automorphism_group().for_each_element(&mut |p| {
            for i in 0..n {
                let f1 = verts[i];
                if p.apply(f1) == verts[(i + 1) % n]
                    && alpha_cycle(fg, p, &[f1, verts[(i + 1) % n]])
                        == Ok(Some(cycle.clone()))
                    {
                        type1 = true;
                    }
                if p.apply(f1) == verts[(i + 2) % n]
                    && alpha_cycle(
                        fg,
                        p,
                        &[f1, verts[(i + 1) % n], verts[(i + 2) % n]],
                    ) == Ok(Some(cycle.clone()))
                {
                    swept_from_triple = true;
                }
            }
        });
        if type1 {
            1
        } else {
            debug_assert!(swept_from_triple, "umbrella not swept from a path of length 3");
            2
        }
    }

    /// `(vertex orbit count, face stabilizer order)` under the induced
    /// action on vertices.
    pub fn vertex_face_type(&self) -> VertexFaceType {
        let aut = self.automorphism_group();
        // Induced vertex action: a face permutation maps the umbrella cycle
        // of one vertex to that of another.
        let cycle_owner: BTreeMap<Cycle, usize> = (0..self.nv)
            .map(|v| {
                let fg = self.face_graph();
                (
                    Cycle::from_vertices(fg, &self.umbrellas[v]).expect("umbrella cycle"),
                    v,
                )
            })
            .collect();
        let mut vertex_orbit = (0..self.nv).collect::<Vec<usize>>();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for g in self.automorphism_group().generators() {
            for v in 0..self.nv {
                let img_cycle = Cycle::from_vertices(
                    self.face_graph(),
                    &self
                        .umbrellas[v]
                        .iter()
                        .map(|&f| g.apply(f))
                        .collect::<Vec<_>>(),
                )
                .expect("automorphism image of an umbrella");
                let w = cycle_owner[&img_cycle];
                let (a, b) = (find(&mut vertex_orbit, v), find(&mut vertex_orbit, w));
                if a != b {
                    vertex_orbit[a] = b;
                }
            }
        }
        let vertex_orbits = (0..self.nv)
            .filter(|&v| find(&mut vertex_orbit, v) == v)
            .count();
        let face_orbit_size = aut.orbit(0).expect("face 0 in range").len() as u64;
        VertexFaceType {
            vertex_orbits,
            face_stab_order: aut.order() / face_orbit_size,
        }
    }

    /// A proper 2-coloring of the faces across shared edges, when one
    /// exists; equivalent to bipartiteness of the face graph.
    pub fn face_2_coloring(&self) -> Option<Vec<u8>> {
        self.face_graph().bipartition()
    }
}

fn build_umbrella(
    v: usize,
    faces: &[[usize; 3]],
    edge_map: &BTreeMap<(usize, usize), Vec<usize>>,
    labels: &[usize],
) -> Result<Vec<usize>, SurfaceError> {
    let star: Vec<usize> = (0..faces.len())
        .filter(|&fi| faces[fi].contains(&v))
        .collect();
    if star.len() < 3 {
        return Err(SurfaceError::UmbrellaBroken {
            vertex: labels[v],
            detail: format!("only {} incident faces", star.len()),
        });
    }
    // Walk face-to-face across the two edges through v in each face.
    let edges_at = |fi: usize| -> [(usize, usize); 2] {
        let f = &faces[fi];
        let others: Vec<usize> = f.iter().copied().filter(|&x| x != v).collect();
        [
            (v.min(others[0]), v.max(others[0])),
            (v.min(others[1]), v.max(others[1])),
        ]
    };
    let start = star[0];
    let mut umbrella = vec![start];
    let mut prev_edge = edges_at(start)[0];
    let mut current = start;
    loop {
        let next_edge = *edges_at(current)
            .iter()
            .find(|&&e| e != prev_edge)
            .expect("two distinct edges through v");
        let pair = &edge_map[&next_edge];
        let next = if pair[0] == current { pair[1] } else { pair[0] };
        if next == start {
            break;
        }
        if umbrella.contains(&next) {
            return Err(SurfaceError::UmbrellaBroken {
                vertex: labels[v],
                detail: "face sequence revisits a face before closing".into(),
            });
        }
        umbrella.push(next);
        prev_edge = next_edge;
        current = next;
    }
    if umbrella.len() != star.len() {
        return Err(SurfaceError::UmbrellaBroken {
            vertex: labels[v],
            detail: format!(
                "closed after {} of {} incident faces",
                umbrella.len(),
                star.len()
            ),
        });
    }
    Ok(umbrella)
}

/// Reconstruct the surface a vertex-faithful cycle double cover encodes:
/// cover cycles become vertices, graph vertices become faces, graph edges
/// become edges. Face order follows the graph's vertex order, so the face
/// graph reproduces the host graph identically.
pub fn surface_from_cdc(
    g: &CubicGraph,
    cdc: &CycleDoubleCover,
) -> Result<SimplicialSurface, SurfaceError> {
    let cycles = cdc.cycles();
    let mut faces = Vec::with_capacity(g.vertex_count());
    for v in 0..g.vertex_count() {
        let through: Vec<usize> = cycles
            .iter()
            .enumerate()
            .filter(|(_, c)| c.vertices().contains(&v))
            .map(|(i, _)| i)
            .collect();
        if through.len() != 3 {
            return Err(SurfaceError::UmbrellaBroken {
                vertex: v,
                detail: format!("graph vertex lies in {} cover cycles", through.len()),
            });
        }
        faces.push([through[0], through[1], through[2]]);
    }
    SimplicialSurface::from_faces(&faces)
}

/// Serialized form: a face list plus free-form metadata.
#[derive(Debug, Serialize, Deserialize)]
pub struct SurfaceDocument {
    pub faces: Vec<[usize; 3]>,
    #[serde(default)]
    pub metadata: serde_json::Value,
}

pub fn load_surface(doc: &SurfaceDocument) -> Result<SimplicialSurface, SurfaceError> {
    SimplicialSurface::from_faces(&doc.faces)
}

/// Incidence-preserving equivalence: the face graphs must be isomorphic by a
/// map carrying one umbrella-cycle set onto the other.
pub fn surfaces_isomorphic(a: &SimplicialSurface, b: &SimplicialSurface) -> bool {
    if a.counts() != b.counts() {
        return false;
    }
    let ca = a.umbrella_cycles();
    let cb = b.umbrella_cycles();
    let mut hit = false;
    let _ = a.face_graph().for_each_isomorphism_to(b.face_graph(), &mut |p| {
        if ca.iter().all(|c| cb.contains(&c.apply(p))) {
            hit = true;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    hit
}

/// The image of a face permutation applied to a surface's face list, as a
/// rebuilt surface. Used by relabeling robustness checks.
pub fn relabel_surface(
    s: &SimplicialSurface,
    vertex_perm: &Permutation,
) -> Result<SimplicialSurface, SurfaceError> {
    let faces: Vec<[usize; 3]> = s
        .faces()
        .iter()
        .map(|f| {
            let mut t = [
                vertex_perm.apply(f[0]),
                vertex_perm.apply(f[1]),
                vertex_perm.apply(f[2]),
            ];
            t.sort_unstable();
            t
        })
        .collect();
    SimplicialSurface::from_faces(&faces)
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::cdc::enumerate_cdcs_bruteforce;
    use crate::graph::fixtures::{cube, heawood, k4, petersen};

    #[test]
    fn tetrahedron_invariants() {
        let t = tetrahedron();
        assert_eq!(t.counts(), (4, 6, 4));
        assert_eq!(t.euler_characteristic(), 2);
        assert!(t.is_orientable());
        assert_eq!(t.umbrella(0).len(), 3);
        assert!(t.face_graph().is_isomorphic_to(&k4()));
        assert_eq!(t.automorphism_group().order(), 24);
        assert!(t.is_edge_transitive());
        let fe = t.face_edge_type().unwrap();
        assert_eq!((fe.face_orbits, fe.edge_stab_order), (1, 4));
        assert_eq!(fe.subtype, None);
        let vf = t.vertex_face_type();
        assert_eq!(vf, VertexFaceType { vertex_orbits: 1, face_stab_order: 6 });
        assert!(t.face_2_coloring().is_none());
    }

    #[test]
    fn octahedron_invariants() {
        let o = octahedron();
        assert_eq!(o.counts(), (6, 12, 8));
        assert_eq!(o.euler_characteristic(), 2);
        assert!(o.is_orientable());
        assert!(o.face_graph().is_isomorphic_to(&cube()));
        let col = o.face_2_coloring().unwrap();
        assert_eq!(col.iter().filter(|&&c| c == 0).count(), 4);
        assert_eq!(o.automorphism_group().order(), 48);
    }

    #[test]
    fn construction_from_k4_cover_round_trips() {
        let g = k4();
        let cdc = enumerate_cdcs_bruteforce(&g, 20).unwrap().remove(0);
        let s = surface_from_cdc(&g, &cdc).unwrap();
        assert_eq!(s.counts(), (4, 6, 4));
        // Identity round trip, not just isomorphism.
        assert_eq!(s.face_graph(), &g);
        assert_eq!(s.umbrella_cycles(), cdc.cycle_set());
        assert!(surfaces_isomorphic(&s, &tetrahedron()));
    }

    #[test]
    fn construction_from_cube_cover_gives_octahedron() {
        let g = cube();
        let cdc = enumerate_cdcs_bruteforce(&g, 20).unwrap().remove(0);
        let s = surface_from_cdc(&g, &cdc).unwrap();
        assert_eq!(s.counts(), (6, 12, 8));
        assert_eq!(s.face_graph(), &g);
        assert!(surfaces_isomorphic(&s, &octahedron()));
    }

    #[test]
    fn projective_plane_fixture_is_non_orientable() {
        let s = load_fixture("rp2.json");
        assert_eq!(s.counts(), (6, 15, 10));
        assert_eq!(s.euler_characteristic(), 1);
        assert!(!s.is_orientable());
        assert!(s.orientation_conflict().is_some());
        assert!(s.face_graph().is_isomorphic_to(&petersen()));
    }

    #[test]
    fn bad_face_lists_are_rejected_specifically() {
        assert_eq!(
            SimplicialSurface::from_faces(&[[1, 2, 3], [1, 2, 4]]).unwrap_err(),
            SurfaceError::EdgeCoverage { edge: (1, 3), count: 1 }
        );
        assert_eq!(
            SimplicialSurface::from_faces(&[[1, 1, 2]]).unwrap_err(),
            SurfaceError::DegenerateFace([1, 1, 2])
        );
        assert_eq!(
            SimplicialSurface::from_faces(&[[1, 2, 3], [3, 2, 1]]).unwrap_err(),
            SurfaceError::DuplicateFace([1, 2, 3])
        );
    }

    #[test]
    fn loaded_fixture_x22_reproduces_published_values() {
        let s = load_fixture("x22.json");
        assert_eq!(s.counts(), (36, 216, 144));
        assert_eq!(s.euler_characteristic(), -36);
        assert!(s.is_orientable());
        for v in 0..36 {
            assert_eq!(s.vertex_degree(v), 12);
        }
        assert_eq!(s.automorphism_group().order(), 432);
        let fe = s.face_edge_type().unwrap();
        assert_eq!((fe.face_orbits, fe.edge_stab_order), (2, 2));
    }

    #[test]
    fn loaded_fixture_x21_reproduces_published_values() {
        let s = load_fixture("x21.json");
        assert_eq!(s.counts(), (28, 168, 112));
        assert_eq!(s.euler_characteristic(), -28);
        assert_eq!(s.automorphism_group().order(), 168);
        let fe = s.face_edge_type().unwrap();
        assert_eq!((fe.face_orbits, fe.edge_stab_order), (2, 1));
        // The two face orbits are exactly the classes of a face 2-coloring.
        let col = s.face_2_coloring().unwrap();
        let orbits = s.automorphism_group().orbit_partition();
        for i in 0..s.face_count() {
            for j in 0..s.face_count() {
                if orbits[i] == orbits[j] {
                    assert_eq!(col[i], col[j]);
                }
            }
        }
    }

    #[test]
    fn petersen_cover_surfaces_classify() {
        let g = petersen();
        let cdcs = enumerate_cdcs_bruteforce(&g, 20).unwrap();
        assert_eq!(cdcs.len(), 2);
        for cdc in &cdcs {
            let s = surface_from_cdc(&g, cdc).unwrap();
            assert_eq!(s.face_count(), 10);
            if s.is_edge_transitive() {
                let fe = s.face_edge_type().unwrap();
                assert!(matches!(
                    (fe.face_orbits, fe.edge_stab_order),
                    (1, 2) | (1, 4) | (2, 1) | (2, 2)
                ));
            }
        }
    }

    #[test]
    fn relabeled_surface_is_isomorphic() {
        let s = load_fixture("rp2.json");
        let p = Permutation::from_cycles(6, &[&[0, 3, 1], &[2, 5]]).unwrap();
        let r = relabel_surface(&s, &p).unwrap();
        assert!(surfaces_isomorphic(&s, &r));
        assert!(!surfaces_isomorphic(&s, &tetrahedron()));
    }

    #[test]
    fn heawood_cover_gives_minimal_two_element_stabilizer_surface() {
        // The Heawood graph carries a cover whose surface is the 7-vertex
        // torus triangulation: (7,21,14), chi = 0.
        let g = heawood();
        let cdcs = enumerate_cdcs_bruteforce(&g, 20).unwrap();
        let mut found = false;
        for cdc in &cdcs {
            let Ok(s) = surface_from_cdc(&g, cdc) else { continue };
            if s.counts() == (7, 21, 14) && s.is_edge_transitive() {
                assert_eq!(s.euler_characteristic(), 0);
                let fe = s.face_edge_type().unwrap();
                assert_eq!((fe.face_orbits, fe.edge_stab_order), (1, 2));
                assert_eq!(
                    s.vertex_face_type(),
                    VertexFaceType { vertex_orbits: 1, face_stab_order: 3 }
                );
                found = true;
            }
        }
        assert!(found, "no (7,21,14) torus among Heawood covers");
    }
}
