//! Cubic graphs, graph6 I/O and the graph-level predicates the census
//! pipeline gates on.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use once_cell::sync::OnceCell;
use thiserror::Error;

use crate::perm::{reduce_generators, PermGroup, Permutation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("malformed graph6 encoding: {0}")]
    Malformed(String),
    #[error("vertex {vertex} has degree {degree}, expected 3")]
    NotCubic { vertex: usize, degree: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0:?}")]
    DuplicateEdge((usize, usize)),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("permutation degree {got} does not match vertex count {expected}")]
    DegreeMismatch { got: usize, expected: usize },
}

/// A connected simple cubic graph with sorted neighbor triples.
#[derive(Debug, Clone)]
pub struct CubicGraph {
    adj: Vec<[usize; 3]>,
    aut: OnceCell<PermGroup>,
}

impl PartialEq for CubicGraph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}
impl Eq for CubicGraph {}

impl CubicGraph {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut neighbors: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if neighbors[a].contains(&b) {
                return Err(GraphError::DuplicateEdge((a.min(b), a.max(b))));
            }
            neighbors[a].push(b);
            neighbors[b].push(a);
        }
        let mut adj = Vec::with_capacity(n);
        for (v, mut ns) in neighbors.into_iter().enumerate() {
            if ns.len() != 3 {
                return Err(GraphError::NotCubic {
                    vertex: v,
                    degree: ns.len(),
                });
            }
            ns.sort_unstable();
            adj.push([ns[0], ns[1], ns[2]]);
        }
        let g = CubicGraph {
            adj,
            aut: OnceCell::new(),
        };
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.len() * 3 / 2
    }

    pub fn neighbors(&self, v: usize) -> [usize; 3] {
        self.adj[v]
    }

    pub fn are_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    /// All edges as `(min, max)` pairs in sorted order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (v, ns) in self.adj.iter().enumerate() {
            for &w in ns {
                if v < w {
                    out.push((v, w));
                }
            }
        }
        out
    }

    fn distance_matrix(&self) -> Vec<Vec<u16>> {
        let n = self.adj.len();
        let mut dist = vec![vec![u16::MAX; n]; n];
        for s in 0..n {
            dist[s][s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if dist[s][w] == u16::MAX {
                        dist[s][w] = dist[s][v] + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        dist
    }

    fn is_connected(&self) -> bool {
        let n = self.adj.len();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == n
    }

    /// Parse one header-less graph6 line. Rejects graphs that are not
    /// simple connected cubic graphs, with a distinct error per cause.
    pub fn parse_graph6(line: &str) -> Result<Self, GraphError> {
        let bytes = line.trim().as_bytes();
        if bytes.is_empty() {
            return Err(GraphError::Malformed("empty line".into()));
        }
        let (n, mut pos) = decode_graph6_size(bytes)?;
        let bits_needed = n * (n.saturating_sub(1)) / 2;
        let bytes_needed = bits_needed.div_ceil(6);
        if bytes.len() != pos + bytes_needed {
            return Err(GraphError::Malformed(format!(
                "expected {} data bytes for {} vertices, found {}",
                bytes_needed,
                n,
                bytes.len() - pos
            )));
        }
        let mut edges = Vec::new();
        let mut bit = 0usize;
        let mut current = 0u8;
        for j in 1..n {
            for i in 0..j {
                if bit.is_multiple_of(6) {
                    let b = bytes[pos];
                    if !(63..=126).contains(&b) {
                        return Err(GraphError::Malformed(format!("invalid byte {b}")));
                    }
                    current = b - 63;
                    pos += 1;
                }
                if (current >> (5 - (bit % 6))) & 1 == 1 {
                    edges.push((i, j));
                }
                bit += 1;
            }
        }
        Self::from_edges(n, &edges)
    }

    /// Inverse of `parse_graph6`; round-trips byte-exactly.
    pub fn to_graph6(&self) -> String {
        let n = self.vertex_count();
        let mut out = encode_graph6_size(n);
        let mut current = 0u8;
        let mut nbits = 0;
        for j in 1..n {
            for i in 0..j {
                current <<= 1;
                if self.are_adjacent(i, j) {
                    current |= 1;
                }
                nbits += 1;
                if nbits == 6 {
                    out.push(current + 63);
                    current = 0;
                    nbits = 0;
                }
            }
        }
        if nbits > 0 {
            out.push((current << (6 - nbits)) + 63);
        }
        String::from_utf8(out).expect("graph6 bytes are ASCII")
    }

    /// The full automorphism group, acting on the vertices.
    pub fn automorphism_group(&self) -> &PermGroup {
        self.aut.get_or_init(|| {
            let mut found: Vec<Permutation> = Vec::new();
            let _ = self.for_each_isomorphism_to(self, &mut |p| {
                found.push(p.clone());
                ControlFlow::Continue(())
            });
            let gens = reduce_generators(self.vertex_count(), &found);
            PermGroup::new(self.vertex_count(), gens).expect("degrees match")
        })
    }

    pub fn is_edge_transitive(&self) -> bool {
        let aut = self.automorphism_group();
        let first = self.edges()[0];
        aut.orbit_edge(first).map(|o| o.len()) == Ok(self.edge_count())
    }

    /// A proper 2-coloring of the vertices, if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let n = self.vertex_count();
        let mut color = vec![u8::MAX; n];
        color[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    queue.push_back(w);
                } else if color[w] == color[v] {
                    return None;
                }
            }
        }
        Some(color)
    }

    /// The isomorphic graph with vertex `v` renamed to `p(v)`.
    pub fn relabel(&self, p: &Permutation) -> Result<CubicGraph, GraphError> {
        if p.degree() != self.vertex_count() {
            return Err(GraphError::DegreeMismatch {
                got: p.degree(),
                expected: self.vertex_count(),
            });
        }
        let edges: Vec<(usize, usize)> =
            self.edges().iter().map(|&e| p.apply_edge(e)).collect();
        Self::from_edges(self.vertex_count(), &edges)
    }

    /// Backtracking search over all isomorphisms onto `other`. Vertices are
    /// assigned in a BFS order so every non-root vertex is constrained by an
    /// already-mapped neighbor; edge preservation plus equal edge counts
    /// makes each completed assignment an isomorphism.
    pub fn for_each_isomorphism_to(
        &self,
        other: &CubicGraph,
        f: &mut dyn FnMut(&Permutation) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let n = self.vertex_count();
        if n != other.vertex_count() {
            return ControlFlow::Continue(());
        }
        // BFS order with, for each vertex, one already-mapped neighbor.
        let mut order = vec![0usize];
        let mut anchor = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut qi = 0;
        while qi < order.len() {
            let v = order[qi];
            qi += 1;
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    anchor[w] = v;
                    order.push(w);
                }
            }
        }

        // Pairwise distances give a strong prune: an isomorphism preserves
        // every distance, which cuts off wrong branches long before the
        // adjacency constraints alone would (relevant for large girth).
        let dg = self.distance_matrix();
        let dh = other.distance_matrix();

        let mut mapping = vec![usize::MAX; n];
        let mut inverse = vec![usize::MAX; n];
        struct Ctx<'a> {
            h: &'a CubicGraph,
            order: &'a [usize],
            anchor: &'a [usize],
            dg: &'a [Vec<u16>],
            dh: &'a [Vec<u16>],
        }
        fn rec(
            ctx: &Ctx,
            pos: usize,
            mapping: &mut Vec<usize>,
            inverse: &mut Vec<usize>,
            f: &mut dyn FnMut(&Permutation) -> ControlFlow<()>,
        ) -> ControlFlow<()> {
            let n = ctx.order.len();
            if pos == n {
                let p = Permutation::from_images(mapping.clone()).expect("bijection");
                return f(&p);
            }
            let v = ctx.order[pos];
            let candidates: Vec<usize> = if ctx.anchor[v] == usize::MAX {
                (0..n).collect()
            } else {
                ctx.h.neighbors(mapping[ctx.anchor[v]]).to_vec()
            };
            'cand: for c in candidates {
                if inverse[c] != usize::MAX {
                    continue;
                }
                for i in 0..pos {
                    let w = ctx.order[i];
                    if ctx.dg[v][w] != ctx.dh[c][mapping[w]] {
                        continue 'cand;
                    }
                }
                mapping[v] = c;
                inverse[c] = v;
                let flow = rec(ctx, pos + 1, mapping, inverse, f);
                mapping[v] = usize::MAX;
                inverse[c] = usize::MAX;
                flow?;
            }
            ControlFlow::Continue(())
        }
        let ctx = Ctx {
            h: other,
            order: &order,
            anchor: &anchor,
            dg: &dg,
            dh: &dh,
        };
        rec(&ctx, 0, &mut mapping, &mut inverse, f)
    }

    pub fn is_isomorphic_to(&self, other: &CubicGraph) -> bool {
        let mut hit = false;
        let _ = self.for_each_isomorphism_to(other, &mut |_| {
            hit = true;
            ControlFlow::Break(())
        });
        hit
    }
}

fn decode_graph6_size(bytes: &[u8]) -> Result<(usize, usize), GraphError> {
    let b0 = bytes[0];
    if b0 == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            if bytes.len() < 8 {
                return Err(GraphError::Malformed("truncated size field".into()));
            }
            let mut n = 0usize;
            for &b in &bytes[2..8] {
                if !(63..=126).contains(&b) {
                    return Err(GraphError::Malformed("invalid size byte".into()));
                }
                n = (n << 6) | (b - 63) as usize;
            }
            Ok((n, 8))
        } else {
            if bytes.len() < 4 {
                return Err(GraphError::Malformed("truncated size field".into()));
            }
            let mut n = 0usize;
            for &b in &bytes[1..4] {
                if !(63..=126).contains(&b) {
                    return Err(GraphError::Malformed("invalid size byte".into()));
                }
                n = (n << 6) | (b - 63) as usize;
            }
            Ok((n, 4))
        }
    } else if (63..=126).contains(&b0) {
        Ok(((b0 - 63) as usize, 1))
    } else {
        Err(GraphError::Malformed(format!("invalid leading byte {b0}")))
    }
}

fn encode_graph6_size(n: usize) -> Vec<u8> {
    if n <= 62 {
        vec![n as u8 + 63]
    } else if n <= 258_047 {
        vec![
            126,
            ((n >> 12) & 63) as u8 + 63,
            ((n >> 6) & 63) as u8 + 63,
            (n & 63) as u8 + 63,
        ]
    } else {
        let mut out = vec![126, 126];
        for shift in (0..6).rev() {
            out.push(((n >> (6 * shift)) & 63) as u8 + 63);
        }
        out
    }
}

/// Parse a corpus file: one graph6 line per graph, `#` comment lines name
/// the graph that follows.
pub fn parse_corpus(text: &str) -> Result<Vec<(String, CubicGraph)>, GraphError> {
    let mut out = Vec::new();
    let mut pending_name: Option<String> = None;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            pending_name = Some(rest.trim().to_string());
            continue;
        }
        let g = CubicGraph::parse_graph6(line)?;
        let name = pending_name
            .take()
            .unwrap_or_else(|| format!("graph{}", out.len()));
        out.push((name, g));
    }
    Ok(out)
}
