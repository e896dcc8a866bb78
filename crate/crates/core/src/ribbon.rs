//! Ribbon graphs as signed rotation systems.
//!
//! A vertex is a list of sectors, each a disc with a cyclic sequence of
//! half-edges attached to its boundary. Vertices with more than one sector
//! are pinch points. Each edge carries a sign; `Minus` marks a band with a
//! half-twist.
//!
//! Boundary tracing works on band corners. Every edge band has four
//! corners, one on each side of each of its two attaching segments. Three
//! perfect matchings on corners describe the whole surface:
//!
//! * vertex arcs join the after-corner of a half-edge to the before-corner
//!   of its successor in the sector;
//! * band sides join corners at opposite ends of a present edge (crossed
//!   when the band is twisted);
//! * caps join the two corners at the same end of an absent edge.
//!
//! Boundary circles of the spanning ribbon subgraph `(V, A)` are the cycles
//! of arcs together with sides of edges in `A` and caps of the rest, plus
//! one circle for every sector with no half-edges at all.

use std::collections::BTreeMap;
use std::fmt;

use crate::edgeset::{EdgeId, EdgeSet, VertexId};
use crate::graph::{GraphError, Multigraph};
use crate::unionfind::UnionFind;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RibbonError {
    #[error("malformed rotation at vertex {vertex}: {reason}")]
    MalformedRotation { vertex: VertexId, reason: String },
    #[error("vertex {0} is a pinch vertex (more than one sector)")]
    PinchVertex(VertexId),
    #[error("ribbon graph is not connected")]
    Disconnected,
    #[error("edge {0} is a loop")]
    LoopEdge(EdgeId),
    #[error("medial checkerboard inconsistent: {0}")]
    Checkerboard(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// One end of an edge. End 0 attaches at the edge's first endpoint.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfEdge {
    pub edge: EdgeId,
    pub end: u8,
}

impl HalfEdge {
    pub fn new(edge: EdgeId, end: u8) -> Self {
        debug_assert!(end < 2);
        HalfEdge { edge, end }
    }

    pub fn index(self) -> usize {
        2 * self.edge + self.end as usize
    }

    pub fn other(self) -> Self {
        HalfEdge::new(self.edge, 1 - self.end)
    }
}

impl fmt::Display for HalfEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.edge, self.end)
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub enum Sign {
    #[default]
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn is_twisted(self) -> bool {
        self == Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// The two long sides of an edge band. `Left` is the side through the
/// after-corner of the end-0 half-edge.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "L",
            Side::Right => "R",
        })
    }
}

/// Traversal of one long side of a band, entering at `from_end`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct SideVisit {
    pub edge: EdgeId,
    pub side: Side,
    pub from_end: u8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryCircle {
    /// Band sides in traversal order, starting at the smallest `(edge, side)`.
    pub visits: Vec<SideVisit>,
    /// `(vertex, sector)` pairs whose disc boundary the circle runs along.
    pub sectors: Vec<(VertexId, usize)>,
}

/// Boundary circles of a spanning ribbon subgraph, canonically numbered:
/// circles with band sides come first, ordered by their smallest
/// `(edge, side)`, then bare sector circles by `(vertex, sector)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryTrace {
    pub circles: Vec<BoundaryCircle>,
    circle_of_side: BTreeMap<(EdgeId, Side), usize>,
}

impl BoundaryTrace {
    pub fn len(&self) -> usize {
        self.circles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circles.is_empty()
    }

    pub fn circle_of(&self, edge: EdgeId, side: Side) -> Option<usize> {
        self.circle_of_side.get(&(edge, side)).copied()
    }
}

// Corner index: 4 * edge + 2 * end + k, with k = 0 before and k = 1 after
// the half-edge in its sector's cyclic order.
const NONE: u16 = u16::MAX;

fn corner(h: HalfEdge, after: bool) -> usize {
    4 * h.edge + 2 * h.end as usize + after as usize
}

fn corner_edge(c: usize) -> EdgeId {
    c / 4
}

fn corner_end(c: usize) -> u8 {
    ((c >> 1) & 1) as u8
}

fn corner_is_after(c: usize) -> bool {
    c & 1 == 1
}

fn corner_half(c: usize) -> HalfEdge {
    HalfEdge::new(corner_edge(c), corner_end(c))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationSystem {
    graph: Multigraph,
    /// Indexed by vertex position in `graph.vertices()`.
    sectors: Vec<Vec<Vec<HalfEdge>>>,
    /// Indexed by edge id; entries for absent ids are `Plus`.
    signs: Vec<Sign>,
    // Derived data.
    arc: Vec<u16>,
    sector_of_half: Vec<u32>,
    position_of_half: Vec<u8>,
    sector_count: usize,
    bare_sectors: Vec<usize>,
    sector_owner: Vec<(VertexId, usize)>,
}

impl RotationSystem {
    /// Builds and validates a rotation system. `sectors[i]` lists the
    /// sectors of the `i`-th vertex of `graph` (in sorted id order);
    /// `signs[e]` is the sign of edge `e` (missing entries are `Plus`).
    pub fn new(graph: Multigraph, sectors: Vec<Vec<Vec<HalfEdge>>>, signs: Vec<Sign>) -> Result<Self, RibbonError> {
        let verts = graph.vertices().to_vec();
        if sectors.len() != verts.len() {
            return Err(RibbonError::MalformedRotation {
                vertex: verts.get(sectors.len()).copied().unwrap_or(0),
                reason: format!("expected sectors for {} vertices, got {}", verts.len(), sectors.len()),
            });
        }
        let id_bound = graph.edges().max().map_or(0, |m| m + 1);
        let mut signs = signs;
        signs.resize(id_bound.max(signs.len()), Sign::Plus);
        signs.truncate(id_bound);

        let mut seen = vec![false; 2 * id_bound];
        for (vi, secs) in sectors.iter().enumerate() {
            let v = verts[vi];
            if secs.is_empty() {
                return Err(RibbonError::MalformedRotation {
                    vertex: v,
                    reason: "vertex has no sectors".into(),
                });
            }
            for sec in secs {
                for &h in sec {
                    let ends = graph.endpoints(h.edge).map_err(|_| RibbonError::MalformedRotation {
                        vertex: v,
                        reason: format!("half-edge {h} refers to unknown edge"),
                    })?;
                    if h.end > 1 {
                        return Err(RibbonError::MalformedRotation {
                            vertex: v,
                            reason: format!("half-edge {h} has invalid end"),
                        });
                    }
                    if ends[h.end as usize] != v {
                        return Err(RibbonError::MalformedRotation {
                            vertex: v,
                            reason: format!("half-edge {h} belongs to vertex {}", ends[h.end as usize]),
                        });
                    }
                    if std::mem::replace(&mut seen[h.index()], true) {
                        return Err(RibbonError::MalformedRotation {
                            vertex: v,
                            reason: format!("half-edge {h} listed twice"),
                        });
                    }
                }
            }
        }
        for e in graph.edges() {
            for end in 0..2u8 {
                let h = HalfEdge::new(e, end);
                if !seen[h.index()] {
                    let v = graph.endpoints(e)?[end as usize];
                    return Err(RibbonError::MalformedRotation {
                        vertex: v,
                        reason: format!("half-edge {h} missing from rotation"),
                    });
                }
            }
        }

        let mut arc = vec![NONE; 4 * id_bound];
        let mut sector_of_half = vec![u32::MAX; 2 * id_bound];
        let mut position_of_half = vec![u8::MAX; 2 * id_bound];
        let mut bare_sectors = Vec::new();
        let mut sector_owner = Vec::new();
        for (vi, secs) in sectors.iter().enumerate() {
            for (si, sec) in secs.iter().enumerate() {
                let sid = sector_owner.len();
                sector_owner.push((verts[vi], si));
                if sec.is_empty() {
                    bare_sectors.push(sid);
                }
                for (pos, &h) in sec.iter().enumerate() {
                    let next = sec[(pos + 1) % sec.len()];
                    let (from, to) = (corner(h, true), corner(next, false));
                    arc[from] = to as u16;
                    arc[to] = from as u16;
                    sector_of_half[h.index()] = sid as u32;
                    position_of_half[h.index()] = pos.min(254) as u8;
                }
            }
        }
        Ok(RotationSystem {
            graph,
            sectors,
            signs,
            arc,
            sector_of_half,
            position_of_half,
            sector_count: sector_owner.len(),
            bare_sectors,
            sector_owner,
        })
    }

    /// Rotation system with one sector per vertex.
    pub fn single_sector(graph: Multigraph, rotations: Vec<Vec<HalfEdge>>, signs: Vec<Sign>) -> Result<Self, RibbonError> {
        let sectors = rotations.into_iter().map(|r| vec![r]).collect();
        Self::new(graph, sectors, signs)
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn edges(&self) -> EdgeSet {
        self.graph.edges()
    }

    pub fn num_vertices(&self) -> usize {
        self.graph.num_vertices()
    }

    pub fn num_edges(&self) -> usize {
        self.graph.num_edges()
    }

    pub fn sign(&self, e: EdgeId) -> Sign {
        self.signs.get(e).copied().unwrap_or_default()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    /// Sectors of the vertex at position `index` in `graph().vertices()`.
    pub fn sectors_at(&self, index: usize) -> &[Vec<HalfEdge>] {
        &self.sectors[index]
    }

    pub fn sectors(&self) -> &[Vec<Vec<HalfEdge>>] {
        &self.sectors
    }

    pub fn sector_count(&self) -> usize {
        self.sector_count
    }

    /// `(vertex, sector)` of the sector containing `h`.
    pub fn sector_of(&self, h: HalfEdge) -> (VertexId, usize) {
        self.sector_owner[self.sector_of_half[h.index()] as usize]
    }

    /// Position of `h` within its sector's cyclic order.
    pub fn position_of(&self, h: HalfEdge) -> usize {
        self.position_of_half[h.index()] as usize
    }

    pub fn pinch_vertices(&self) -> Vec<VertexId> {
        let verts = self.graph.vertices();
        self.sectors
            .iter()
            .enumerate()
            .filter(|(_, s)| s.len() > 1)
            .map(|(i, _)| verts[i])
            .collect()
    }

    pub fn has_pinch(&self) -> bool {
        self.sector_count != self.graph.num_vertices()
    }

    pub fn require_no_pinch(&self) -> Result<(), RibbonError> {
        match self.pinch_vertices().first() {
            Some(&v) => Err(RibbonError::PinchVertex(v)),
            None => Ok(()),
        }
    }

    fn check_subset(&self, a: EdgeSet) -> Result<(), RibbonError> {
        match a.difference(self.edges()).min() {
            Some(e) => Err(RibbonError::Graph(GraphError::UnknownEdge(e))),
            None => Ok(()),
        }
    }

    /// Corner matched to `c` by the side or cap of its edge.
    #[inline]
    fn across(&self, c: usize, present: EdgeSet, twisted: EdgeSet) -> usize {
        let e = corner_edge(c);
        if !present.contains(e) {
            return c ^ 1;
        }
        let flat = self.sign(e).is_twisted() == twisted.contains(e);
        let base = 4 * e + 2 * (1 - corner_end(c) as usize);
        if flat {
            base + (1 - (c & 1))
        } else {
            base + (c & 1)
        }
    }

    /// Number of boundary circles of `(V, present)` after giving a
    /// half-twist to every edge of `twisted`. Subsets are not validated.
    pub fn circles_twisted(&self, present: EdgeSet, twisted: EdgeSet) -> usize {
        let mut visited = [0u64; 4];
        let mut circles = self.bare_sectors.len();
        for e in self.edges() {
            for c in 4 * e..4 * e + 4 {
                if visited[c >> 6] & (1 << (c & 63)) != 0 {
                    continue;
                }
                circles += 1;
                let mut cur = c;
                loop {
                    visited[cur >> 6] |= 1 << (cur & 63);
                    let next = self.arc[cur] as usize;
                    visited[next >> 6] |= 1 << (next & 63);
                    cur = self.across(next, present, twisted);
                    if cur == c {
                        break;
                    }
                }
            }
        }
        circles
    }

    /// `f(A)`, unchecked.
    pub fn circles(&self, a: EdgeSet) -> usize {
        self.circles_twisted(a, EdgeSet::empty())
    }

    /// `f(A)`.
    pub fn face_count(&self, a: EdgeSet) -> Result<usize, RibbonError> {
        self.check_subset(a)?;
        Ok(self.circles(a))
    }

    /// Components of the spanning subgraph with every sector treated as a
    /// separate disc. Equals `c(A)` when there are no pinch vertices.
    pub fn sector_components(&self, a: EdgeSet) -> usize {
        let mut uf = UnionFind::new(self.sector_count);
        for e in a {
            let s0 = self.sector_of_half[HalfEdge::new(e, 0).index()] as usize;
            let s1 = self.sector_of_half[HalfEdge::new(e, 1).index()] as usize;
            uf.union(s0, s1);
        }
        uf.count()
    }

    /// `γ(A) = 2k(A) - s + |A| - f(A)` where sectors are the discs. For
    /// ordinary ribbon graphs this is `2c(A) - v + |A| - f(A)`. Unchecked.
    pub fn genus(&self, a: EdgeSet) -> usize {
        let g = 2 * self.sector_components(a) as i64 - self.sector_count as i64 + a.len() as i64
            - self.circles(a) as i64;
        assert!(g >= 0, "negative Euler genus {g}: corrupted rotation system");
        g as usize
    }

    /// Euler genus of the spanning ribbon subgraph `(V, A)`.
    pub fn euler_genus(&self, a: EdgeSet) -> Result<usize, RibbonError> {
        self.check_subset(a)?;
        Ok(self.genus(a))
    }

    /// Euler genus of the whole ribbon graph.
    pub fn total_genus(&self) -> usize {
        self.genus(self.edges())
    }

    /// Abstract component count `c(A)`, unchecked.
    pub fn components(&self, a: EdgeSet) -> usize {
        self.graph.counter().count(a)
    }

    fn cycles(&self, present: EdgeSet) -> Vec<Vec<usize>> {
        let mut visited = vec![false; self.arc.len()];
        let mut out = Vec::new();
        for e in self.edges() {
            for c in 4 * e..4 * e + 4 {
                if visited[c] {
                    continue;
                }
                let mut cyc = Vec::new();
                let mut cur = c;
                loop {
                    visited[cur] = true;
                    cyc.push(cur);
                    let next = self.arc[cur] as usize;
                    visited[next] = true;
                    cyc.push(next);
                    cur = self.across(next, present, EdgeSet::empty());
                    if cur == c {
                        break;
                    }
                }
                out.push(cyc);
            }
        }
        out
    }

    fn side_of_corner(&self, c: usize) -> Side {
        // The side through the end-0 after-corner is Left.
        let c0 = if corner_end(c) == 0 {
            c
        } else {
            self.across(c, EdgeSet::singleton(corner_edge(c)), EdgeSet::empty())
        };
        if corner_is_after(c0) {
            Side::Left
        } else {
            Side::Right
        }
    }

    /// Traces the boundary circles of the spanning ribbon subgraph `(V, A)`.
    pub fn trace_boundary(&self, a: EdgeSet) -> Result<BoundaryTrace, RibbonError> {
        self.check_subset(a)?;
        Ok(self.trace_unchecked(a))
    }

    fn trace_unchecked(&self, a: EdgeSet) -> BoundaryTrace {
        let mut keyed: Vec<((u8, usize, usize), BoundaryCircle)> = Vec::new();
        for cyc in self.cycles(a) {
            // cyc alternates [c, arc(c), across(arc(c)), ...]; pairs (cyc[2i+1], cyc[2i+2]) are sides/caps.
            let mut visits = Vec::new();
            let mut sectors = Vec::new();
            let n = cyc.len();
            for i in 0..n / 2 {
                let arc_from = cyc[2 * i];
                let sid = self.sector_of_half[corner_half(arc_from).index()] as usize;
                let owner = self.sector_owner[sid];
                if !sectors.contains(&owner) {
                    sectors.push(owner);
                }
                let c = cyc[2 * i + 1];
                let e = corner_edge(c);
                if a.contains(e) {
                    visits.push(SideVisit {
                        edge: e,
                        side: self.side_of_corner(c),
                        from_end: corner_end(c),
                    });
                }
            }
            sectors.sort();
            let key = if visits.is_empty() {
                let sid = self.sector_of_half[corner_half(cyc[0]).index()] as usize;
                (1, sid, 0)
            } else {
                let first = *visits.iter().min_by_key(|v| (v.edge, v.side)).expect("non-empty");
                if first.from_end == 1 {
                    visits.reverse();
                    for v in visits.iter_mut() {
                        v.from_end = 1 - v.from_end;
                    }
                }
                let start = visits
                    .iter()
                    .position(|v| (v.edge, v.side) == (first.edge, first.side))
                    .expect("present");
                visits.rotate_left(start);
                (0, first.edge, first.side as usize)
            };
            keyed.push((key, BoundaryCircle { visits, sectors }));
        }
        for &sid in &self.bare_sectors {
            keyed.push((
                (1, sid, 0),
                BoundaryCircle {
                    visits: Vec::new(),
                    sectors: vec![self.sector_owner[sid]],
                },
            ));
        }
        keyed.sort_by_key(|(k, _)| *k);
        let circles: Vec<BoundaryCircle> = keyed.into_iter().map(|(_, c)| c).collect();
        let mut circle_of_side = BTreeMap::new();
        for (i, c) in circles.iter().enumerate() {
            for v in &c.visits {
                circle_of_side.insert((v.edge, v.side), i);
            }
        }
        BoundaryTrace { circles, circle_of_side }
    }

    /// Flips the sign of every edge in `c`.
    pub fn twist(&self, c: EdgeSet) -> RotationSystem {
        let mut out = self.clone();
        for e in c.intersection(self.edges()) {
            out.signs[e] = out.signs[e].flip();
        }
        out
    }

    /// Whether `(V, A)` is connected with exactly one boundary circle.
    pub fn is_quasi_tree(&self, a: EdgeSet) -> Result<bool, RibbonError> {
        self.check_subset(a)?;
        Ok(self.components(a) == 1 && self.circles(a) == 1)
    }

    /// Whether every component of `(V, A)` is orientable, i.e. sector
    /// orientations can be chosen so that every edge of `A` is untwisted.
    pub fn is_orientable(&self, a: EdgeSet) -> bool {
        // Union-find with parity over sectors.
        let n = self.sector_count;
        let mut parent: Vec<usize> = (0..n).collect();
        let mut parity = vec![false; n];
        fn find(parent: &mut [usize], parity: &mut [bool], x: usize) -> (usize, bool) {
            let mut path = Vec::new();
            let mut cur = x;
            while parent[cur] != cur {
                path.push(cur);
                cur = parent[cur];
            }
            let root = cur;
            // Recompute parities from the root down.
            for &node in path.iter().rev() {
                let p = parent[node];
                if p != root {
                    parity[node] ^= parity[p];
                }
                parent[node] = root;
            }
            (root, parity[x] && x != root)
        }
        for e in a {
            let s0 = self.sector_of_half[HalfEdge::new(e, 0).index()] as usize;
            let s1 = self.sector_of_half[HalfEdge::new(e, 1).index()] as usize;
            let want = self.sign(e).is_twisted();
            let (r0, p0) = find(&mut parent, &mut parity, s0);
            let (r1, p1) = find(&mut parent, &mut parity, s1);
            if r0 == r1 {
                if p0 ^ p1 != want {
                    return false;
                }
            } else {
                parent[r1] = r0;
                parity[r1] = p0 ^ p1 ^ want;
            }
        }
        true
    }

    /// Ribbon subgraph keeping only the edges of `keep`.
    pub fn restrict(&self, keep: EdgeSet) -> Result<RotationSystem, RibbonError> {
        self.check_subset(keep)?;
        let mut graph = self.graph.clone();
        for e in self.edges().difference(keep) {
            graph = graph.delete_edge(e)?;
        }
        let sectors = self
            .sectors
            .iter()
            .map(|secs| {
                secs.iter()
                    .map(|s| s.iter().copied().filter(|h| keep.contains(h.edge)).collect())
                    .collect()
            })
            .collect();
        RotationSystem::new(graph, sectors, self.signs.clone())
    }

    /// Ribbon graph deletion `G - e`.
    pub fn delete_edge(&self, e: EdgeId) -> Result<RotationSystem, RibbonError> {
        self.graph.endpoints(e)?;
        self.restrict(self.edges().without(e))
    }

    /// Ribbon graph contraction of a non-loop edge. The merged vertex keeps
    /// the smaller id; the two sectors holding the ends of `e` fuse into one.
    pub fn contract_nonloop(&self, e: EdgeId) -> Result<RotationSystem, RibbonError> {
        let [u, v] = self.graph.endpoints(e)?;
        if u == v {
            return Err(RibbonError::LoopEdge(e));
        }
        let mut sectors = self.sectors.clone();
        let mut signs = self.signs.clone();
        let (vi_u, vi_v) = (
            self.graph.vertex_index(u).expect("endpoint"),
            self.graph.vertex_index(v).expect("endpoint"),
        );
        let h0 = HalfEdge::new(e, 0);
        let h1 = HalfEdge::new(e, 1);
        let si_u = self.sector_of(h0).1;
        let si_v = self.sector_of(h1).1;
        if self.sign(e).is_twisted() {
            // Flip the sector holding h1: reverse it and toggle edges with
            // exactly one end in it.
            let sec = &mut sectors[vi_v][si_v];
            sec.reverse();
            let mut count: BTreeMap<EdgeId, usize> = BTreeMap::new();
            for h in sec.iter() {
                *count.entry(h.edge).or_default() += 1;
            }
            for (edge, n) in count {
                if n == 1 {
                    signs[edge] = signs[edge].flip();
                }
            }
        }
        let rot_u = {
            let s = &sectors[vi_u][si_u];
            let p = s.iter().position(|&h| h == h0).expect("h0 in sector");
            let mut r: Vec<_> = s[p + 1..].to_vec();
            r.extend_from_slice(&s[..p]);
            r
        };
        let rot_v = {
            let s = &sectors[vi_v][si_v];
            let p = s.iter().position(|&h| h == h1).expect("h1 in sector");
            let mut r: Vec<_> = s[p + 1..].to_vec();
            r.extend_from_slice(&s[..p]);
            r
        };
        let mut merged = rot_u;
        merged.extend(rot_v);
        let mut u_secs = sectors[vi_u].clone();
        u_secs[si_u] = merged;
        let v_rest: Vec<_> = sectors[vi_v]
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != si_v)
            .map(|(_, s)| s.clone())
            .collect();
        let (keep_idx, drop_idx, keep_secs) = if u < v {
            let mut k = u_secs;
            k.extend(v_rest);
            (vi_u, vi_v, k)
        } else {
            // v has the smaller id and survives; its other sectors come first.
            let mut k = v_rest;
            k.extend(u_secs);
            (vi_v, vi_u, k)
        };
        sectors[keep_idx] = keep_secs;
        sectors.remove(drop_idx);
        let graph = self.graph.contract_edge(e)?;
        // Relabel half-edges that pointed at the dropped vertex: endpoints
        // changed in the graph, half-edge identities stay.
        RotationSystem::new(graph, sectors, signs)
    }

    /// Geometric dual `G*`: one vertex per boundary circle of the full edge
    /// set (numbered canonically), the same edge ids, end 0 of `e*` on the
    /// circle through the left side of `e`.
    pub fn dual(&self) -> Result<RotationSystem, RibbonError> {
        self.require_no_pinch()?;
        let all = self.edges();
        let trace = self.trace_unchecked(all);
        let nv = trace.len();
        let mut graph = Multigraph::with_vertices(nv);
        for e in all {
            let l = trace.circle_of(e, Side::Left).expect("traced");
            let r = trace.circle_of(e, Side::Right).expect("traced");
            graph.add_edge_with_id(e, l, r)?;
        }
        let mut rotations = Vec::with_capacity(nv);
        // Entry/exit corners of each dual half-edge, in primal corner terms.
        let mut entry = BTreeMap::new();
        let mut exit = BTreeMap::new();
        for circle in &trace.circles {
            let mut rot = Vec::with_capacity(circle.visits.len());
            for v in &circle.visits {
                let end = match v.side {
                    Side::Left => 0,
                    Side::Right => 1,
                };
                let h = HalfEdge::new(v.edge, end);
                let c0 = corner(HalfEdge::new(v.edge, 0), v.side == Side::Left);
                let c1 = self.across(c0, all, EdgeSet::empty());
                let (cin, cout) = if v.from_end == 0 { (c0, c1) } else { (c1, c0) };
                entry.insert(h, cin);
                exit.insert(h, cout);
                rot.push(h);
            }
            rotations.push(rot);
        }
        let mut signs = vec![Sign::Plus; self.signs.len()];
        for e in all {
            let exit_left = exit[&HalfEdge::new(e, 0)];
            let entry_right = entry[&HalfEdge::new(e, 1)];
            // Long sides of e* are the attaching segments of e.
            signs[e] = if exit_left ^ 1 == entry_right {
                Sign::Plus
            } else {
                Sign::Minus
            };
        }
        RotationSystem::single_sector(graph, rotations, signs)
    }

    /// Medial graph with its checkerboard structure.
    pub fn medial(&self) -> Result<Medial, RibbonError> {
        Medial::build(self)
    }
}

impl fmt::Display for RotationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &v) in self.graph.vertices().iter().enumerate() {
            write!(f, "vertex {v}:")?;
            for sec in &self.sectors[i] {
                write!(f, " sector (")?;
                for (j, h) in sec.iter().enumerate() {
                    if j > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{h}")?;
                }
                write!(f, ")")?;
            }
            writeln!(f)?;
        }
        for e in self.edges() {
            let [u, v] = self.graph.endpoints(e).expect("present");
            writeln!(f, "edge {e}: {u} {v} sign {}", self.sign(e))?;
        }
        Ok(())
    }
}

/// Colour of a face of a checkerboard-coloured medial graph.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum FaceColour {
    Black,
    White,
}

/// The medial ribbon graph `F` of a connected ribbon graph `G`, with
/// `F_bl = G` under the convention that faces containing vertices of `G`
/// are black.
///
/// Medial vertex `i` corresponds to the `i`-th edge of `G` in increasing id
/// order. Its four half-edges, in rotation order, sit at the corners
/// `(e0 after, e0 before, e1 side-partner, e1 side-partner)`; positions
/// `{0, 1}` and `{2, 3}` are the two ends of `e`, and the face between
/// positions 0/1 and 2/3 is black.
#[derive(Clone, Debug)]
pub struct Medial {
    surface: RotationSystem,
    edge_of_vertex: Vec<EdgeId>,
    primal_vertices: usize,
    primal_faces: usize,
    primal_endpoints: Vec<[VertexId; 2]>,
    primal_side_circles: Vec<[usize; 2]>,
}

impl Medial {
    fn build(g: &RotationSystem) -> Result<Medial, RibbonError> {
        g.require_no_pinch()?;
        let all = g.edges();
        if g.num_vertices() > 0 && g.components(all) != 1 {
            return Err(RibbonError::Disconnected);
        }
        let edge_of_vertex: Vec<EdgeId> = all.iter().collect();
        let mut dense = vec![usize::MAX; g.signs.len()];
        for (i, &e) in edge_of_vertex.iter().enumerate() {
            dense[e] = i;
        }
        // Medial edge 2*dense(e)+end runs along the vertex arc leaving the
        // after-corner of half-edge (e, end).
        let medial_edge = |h: HalfEdge| 2 * dense[h.edge] + h.end as usize;
        let port_of_corner = |c: usize| -> HalfEdge {
            if corner_is_after(c) {
                HalfEdge::new(medial_edge(corner_half(c)), 0)
            } else {
                HalfEdge::new(medial_edge(corner_half(g.arc[c] as usize)), 1)
            }
        };
        let flips = |c: usize| corner_end(c) == 1 && g.sign(corner_edge(c)).is_twisted();

        let n = edge_of_vertex.len();
        let mut graph = Multigraph::with_vertices(n);
        let mut signs = vec![Sign::Plus; 2 * n];
        for &e in &edge_of_vertex {
            for end in 0..2u8 {
                let h = HalfEdge::new(e, end);
                let from = corner(h, true);
                let to = g.arc[from] as usize;
                let m = medial_edge(h);
                graph.add_edge_with_id(m, dense[e], dense[corner_edge(to)])?;
                if flips(from) != flips(to) {
                    signs[m] = Sign::Minus;
                }
            }
        }
        let mut rotations = Vec::with_capacity(n);
        for &e in &edge_of_vertex {
            let c0 = corner(HalfEdge::new(e, 0), true);
            let c1 = corner(HalfEdge::new(e, 0), false);
            let c2 = g.across(c1, all, EdgeSet::empty());
            let c3 = g.across(c0, all, EdgeSet::empty());
            rotations.push([c0, c1, c2, c3].into_iter().map(port_of_corner).collect());
        }
        let surface = RotationSystem::single_sector(graph, rotations, signs)?;

        let trace = g.trace_unchecked(all);
        let primal_endpoints = edge_of_vertex
            .iter()
            .map(|&e| g.graph.endpoints(e).expect("present"))
            .collect();
        let primal_side_circles = edge_of_vertex
            .iter()
            .map(|&e| {
                [
                    trace.circle_of(e, Side::Left).expect("traced"),
                    trace.circle_of(e, Side::Right).expect("traced"),
                ]
            })
            .collect();
        Ok(Medial {
            surface,
            edge_of_vertex,
            primal_vertices: g.num_vertices(),
            primal_faces: trace.len(),
            primal_endpoints,
            primal_side_circles,
        })
    }

    /// The 4-regular ribbon graph `F`.
    pub fn surface(&self) -> &RotationSystem {
        &self.surface
    }

    /// Edge of `G` represented by medial vertex `i`.
    pub fn edge_of_vertex(&self, i: usize) -> EdgeId {
        self.edge_of_vertex[i]
    }

    pub fn num_vertices(&self) -> usize {
        self.edge_of_vertex.len()
    }

    /// Vertex count of `G`.
    pub fn primal_vertices(&self) -> usize {
        self.primal_vertices
    }

    /// Medial half-edges at vertex `i` in rotation order.
    pub fn ports(&self, i: usize) -> &[HalfEdge] {
        &self.surface.sectors[i][0]
    }

    /// Colour of the face corner between positions `p` and `p + 1` of a
    /// medial vertex.
    pub fn corner_colour(position: usize) -> FaceColour {
        if position.is_multiple_of(2) {
            FaceColour::Black
        } else {
            FaceColour::White
        }
    }

    /// Traces the faces of `F`, checks that they are properly two-coloured
    /// and that black faces correspond to vertices of `G` and white faces to
    /// faces of `G`. Returns the blackface and whiteface graphs, with edge
    /// ids those of `G`; vertices of `F_bl` are the vertices of `G` and
    /// vertices of `F_wh` are the canonical boundary circles of `G`.
    pub fn tait_graphs(&self) -> Result<(Multigraph, Multigraph), RibbonError> {
        let f = &self.surface;
        let all = f.edges();
        // Label of each face corner of F: (colour, primal vertex or face).
        let label_of_arc = |c: usize| -> (FaceColour, usize) {
            let h = corner_half(c);
            let v = f.graph.endpoints(h.edge).expect("present")[h.end as usize];
            let pos = f.position_of(h);
            let p = if corner_is_after(c) { pos } else { (pos + 3) % 4 };
            match (p, Self::corner_colour(p)) {
                (0, _) => (FaceColour::Black, self.primal_endpoints[v][0]),
                (2, _) => (FaceColour::Black, self.primal_endpoints[v][1]),
                (1, _) => (FaceColour::White, self.primal_side_circles[v][1]),
                _ => (FaceColour::White, self.primal_side_circles[v][0]),
            }
        };
        let mut black_seen = BTreeMap::new();
        let mut white_seen = BTreeMap::new();
        for (fi, cyc) in f.cycles(all).iter().enumerate() {
            let mut label = None;
            for pair in cyc.chunks(2) {
                let l = label_of_arc(pair[0]);
                match label {
                    None => label = Some(l),
                    Some(prev) if prev != l => {
                        return Err(RibbonError::Checkerboard(format!(
                            "face {fi} mixes {prev:?} and {l:?}"
                        )))
                    }
                    _ => {}
                }
            }
            let (colour, id) = label.expect("non-empty face");
            let seen = match colour {
                FaceColour::Black => &mut black_seen,
                FaceColour::White => &mut white_seen,
            };
            if seen.insert(id, fi).is_some() {
                return Err(RibbonError::Checkerboard(format!(
                    "two {colour:?} faces labelled {id}"
                )));
            }
        }
        if black_seen.len() != self.primal_vertices || white_seen.len() != self.primal_faces {
            return Err(RibbonError::Checkerboard(format!(
                "{} black and {} white faces, expected {} and {}",
                black_seen.len(),
                white_seen.len(),
                self.primal_vertices,
                self.primal_faces
            )));
        }
        let mut bl = Multigraph::new();
        for &v in black_seen.keys() {
            bl.add_vertex(v)?;
        }
        let mut wh = Multigraph::with_vertices(self.primal_faces);
        for (i, &e) in self.edge_of_vertex.iter().enumerate() {
            let ports = self.ports(i);
            let black = |p: usize| {
                let h = ports[p];
                label_of_arc(corner(h, true)).1
            };
            bl.add_edge_with_id(e, black(0), black(2))?;
            let white = |p: usize| {
                let h = ports[p];
                label_of_arc(corner(h, true)).1
            };
            wh.add_edge_with_id(e, white(3), white(1))?;
        }
        Ok((bl, wh))
    }
}

/// Shorthand for [`HalfEdge::new`].
pub fn he(edge: EdgeId, end: u8) -> HalfEdge {
    HalfEdge::new(edge, end)
}
