//! Graphs in surfaces and pseudo-surfaces.
//!
//! An embedding is a rotation system together with a grouping of its
//! boundary circles into regions. Each region is a connected surface with
//! boundary whose Euler genus is given; gluing the regions to the ribbon
//! graph along their circles gives the ambient space `Σ`. Vertices with
//! several sectors are pinch points.

pub mod format;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::edgeset::{EdgeId, EdgeSet, VertexId};
use crate::graph::{GraphError, Multigraph};
use crate::matroid::{MatroidError, RankMatroid};
use crate::ribbon::{BoundaryTrace, HalfEdge, RibbonError, RotationSystem, Side};
use crate::unionfind::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error(transparent)]
    Ribbon(#[from] RibbonError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error("boundary circle {0} is not assigned to any region")]
    UncoveredCircle(usize),
    #[error("boundary circle {0} is assigned to more than one region")]
    DoublyCoveredCircle(usize),
    #[error("region {region} refers to circle {circle}, but there are only {count} circles")]
    UnknownCircle { region: usize, circle: usize, count: usize },
    #[error("region {0} has no circles")]
    EmptyRegion(usize),
    #[error("region {0} declared twice")]
    DuplicateRegion(usize),
    #[error("negative genus for region {0}")]
    NegativeGenus(usize),
    #[error("vertex {0} is a pinch vertex; only surfaces are supported here")]
    PinchVertex(VertexId),
    #[error("topological and matroid classification disagree on edge {0}")]
    ClassificationMismatch(EdgeId),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub id: usize,
    /// Euler genus of the region, a connected surface with boundary.
    pub genus: usize,
    /// Canonical circle indices of the full-edge-set boundary trace.
    pub circles: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingReport {
    /// `k(Σ)`.
    pub components: usize,
    /// `χ(Σ)`.
    pub euler_characteristic: i64,
    /// `γ(Σ) = 2k(Σ) - χ(Σ)`. Negative values arise only for pseudo-surfaces.
    pub euler_genus: i64,
    pub cellular: bool,
}

/// A graph in a surface or pseudo-surface.
#[derive(Clone, Debug)]
pub struct EmbeddedGraph {
    rotation: RotationSystem,
    trace: BoundaryTrace,
    regions: Vec<Region>,
    region_of_circle: Vec<usize>,
}

impl EmbeddedGraph {
    /// Validates that every circle of the full boundary trace lies in
    /// exactly one region. Regions are stored sorted by id.
    pub fn new(rotation: RotationSystem, mut regions: Vec<Region>) -> Result<Self, EmbeddingError> {
        let trace = rotation.trace_boundary(rotation.edges())?;
        let count = trace.len();
        regions.sort_by_key(|r| r.id);
        for w in regions.windows(2) {
            if w[0].id == w[1].id {
                return Err(EmbeddingError::DuplicateRegion(w[0].id));
            }
        }
        let mut region_of_circle = vec![usize::MAX; count];
        for (ri, r) in regions.iter().enumerate() {
            if r.circles.is_empty() {
                return Err(EmbeddingError::EmptyRegion(r.id));
            }
            for &c in &r.circles {
                if c >= count {
                    return Err(EmbeddingError::UnknownCircle {
                        region: r.id,
                        circle: c,
                        count,
                    });
                }
                if region_of_circle[c] != usize::MAX {
                    return Err(EmbeddingError::DoublyCoveredCircle(c));
                }
                region_of_circle[c] = ri;
            }
        }
        if let Some(c) = region_of_circle.iter().position(|&r| r == usize::MAX) {
            return Err(EmbeddingError::UncoveredCircle(c));
        }
        for r in regions.iter_mut() {
            r.circles.sort_unstable();
        }
        Ok(EmbeddedGraph {
            rotation,
            trace,
            regions,
            region_of_circle,
        })
    }

    /// The cellular embedding of a ribbon graph: one disc per circle, with
    /// region ids equal to circle indices.
    pub fn cellular(rotation: RotationSystem) -> Result<Self, EmbeddingError> {
        let n = rotation.trace_boundary(rotation.edges())?.len();
        let regions = (0..n)
            .map(|c| Region {
                id: c,
                genus: 0,
                circles: vec![c],
            })
            .collect();
        Self::new(rotation, regions)
    }

    pub fn rotation(&self) -> &RotationSystem {
        &self.rotation
    }

    pub fn graph(&self) -> &Multigraph {
        self.rotation.graph()
    }

    pub fn edges(&self) -> EdgeSet {
        self.rotation.edges()
    }

    pub fn trace(&self) -> &BoundaryTrace {
        &self.trace
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    /// Region id containing canonical circle `c`.
    pub fn region_of_circle(&self, c: usize) -> usize {
        self.regions[self.region_of_circle[c]].id
    }

    /// Region id on the given side of `e`.
    pub fn region_of_side(&self, e: EdgeId, side: Side) -> Result<usize, EmbeddingError> {
        let c = self
            .trace
            .circle_of(e, side)
            .ok_or(GraphError::UnknownEdge(e))?;
        Ok(self.region_of_circle(c))
    }

    pub fn is_cellular(&self) -> bool {
        !self.rotation.has_pinch() && self.regions.iter().all(|r| r.genus == 0 && r.circles.len() == 1)
    }

    pub fn has_pinch(&self) -> bool {
        self.rotation.has_pinch()
    }

    fn components(&self) -> usize {
        let g = self.graph();
        let nv = g.num_vertices();
        let mut uf = UnionFind::new(nv + self.regions.len());
        for e in g.edges() {
            let [u, v] = g.endpoints(e).expect("present");
            let (ui, vi) = (g.vertex_index(u).expect("vertex"), g.vertex_index(v).expect("vertex"));
            uf.union(ui, vi);
        }
        for (c, circle) in self.trace.circles.iter().enumerate() {
            let r = nv + self.region_of_circle[c];
            for &(v, _) in &circle.sectors {
                uf.union(g.vertex_index(v).expect("vertex"), r);
            }
        }
        uf.count()
    }

    /// `χ(Σ) = v - e + Σ_r (2 - γ_r - b_r)`.
    pub fn euler_characteristic(&self) -> i64 {
        let g = self.graph();
        let regions: i64 = self
            .regions
            .iter()
            .map(|r| 2 - r.genus as i64 - r.circles.len() as i64)
            .sum();
        g.num_vertices() as i64 - g.num_edges() as i64 + regions
    }

    pub fn validate(&self) -> EmbeddingReport {
        let k = self.components();
        let chi = self.euler_characteristic();
        EmbeddingReport {
            components: k,
            euler_characteristic: chi,
            euler_genus: 2 * k as i64 - chi,
            cellular: self.is_cellular(),
        }
    }

    /// The pair `(G, G†)`: `G†` has one vertex per region and one edge per
    /// edge of `G`, joining the regions on its two sides.
    pub fn derive_dagger(&self) -> EmbeddingScheme {
        let mut dagger = Multigraph::new();
        for r in &self.regions {
            dagger.add_vertex(r.id).expect("distinct region ids");
        }
        for e in self.edges() {
            let l = self.region_of_side(e, Side::Left).expect("traced");
            let r = self.region_of_side(e, Side::Right).expect("traced");
            dagger.add_edge_with_id(e, l, r).expect("fresh id");
        }
        EmbeddingScheme {
            graph: self.graph().clone(),
            dagger,
        }
    }

    /// `G∖e ⊂ Σ`. The regions on the two sides of `e` merge across the
    /// open arc `e`, which lowers their total Euler characteristic by one.
    pub fn delete_edge(&self, e: EdgeId) -> Result<Self, EmbeddingError> {
        let l = self.region_of_side(e, Side::Left)?;
        let r = self.region_of_side(e, Side::Right)?;
        let merged = l.min(r);
        let old: BTreeMap<usize, &Region> = self.regions.iter().map(|g| (g.id, g)).collect();
        let chi = |g: &Region| 2 - g.genus as i64 - g.circles.len() as i64;
        let merged_chi = if l == r {
            chi(old[&l]) - 1
        } else {
            chi(old[&l]) + chi(old[&r]) - 1
        };
        let rot = self.rotation.delete_edge(e)?;
        let trace = rot.trace_boundary(rot.edges())?;
        let mut circles: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, c) in trace.circles.iter().enumerate() {
            // A bare sector circle can only appear where e was removed.
            let mut id = match c.visits.first() {
                Some(v) => self.region_of_side(v.edge, v.side)?,
                None => merged,
            };
            if id == l || id == r {
                id = merged;
            }
            circles.entry(id).or_default().push(i);
        }
        let mut regions = Vec::with_capacity(circles.len());
        for (id, cs) in circles {
            let genus = if id == merged {
                let g = 2 - cs.len() as i64 - merged_chi;
                usize::try_from(g).map_err(|_| EmbeddingError::NegativeGenus(id))?
            } else {
                old[&id].genus
            };
            regions.push(Region { id, genus, circles: cs });
        }
        Self::new(rot, regions)
    }

    /// `G/e ⊂ Σ/e` for a non-loop `e`: the band shrinks into its endpoints
    /// and every region survives unchanged.
    ///
    /// Contracting a twisted edge reverses the sector holding `(e, 1)`.
    /// Sides are named from the end-0 corner, so edges with end 0 in that
    /// sector swap their Left and Right labels.
    pub fn contract_nonloop(&self, e: EdgeId) -> Result<Self, EmbeddingError> {
        let r = &self.rotation;
        let side = self.region_of_side(e, Side::Left)?;
        let flipped = r.sector_of(HalfEdge::new(e, 1));
        let swapped = |f: EdgeId| r.sign(e).is_twisted() && r.sector_of(HalfEdge::new(f, 0)) == flipped;
        let rot = r.contract_nonloop(e)?;
        let trace = rot.trace_boundary(rot.edges())?;
        let mut circles: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, c) in trace.circles.iter().enumerate() {
            let id = match c.visits.first() {
                Some(v) => {
                    let s = match (v.side, swapped(v.edge)) {
                        (s, false) => s,
                        (Side::Left, true) => Side::Right,
                        (Side::Right, true) => Side::Left,
                    };
                    self.region_of_side(v.edge, s)?
                }
                None => side,
            };
            circles.entry(id).or_default().push(i);
        }
        let regions = self
            .regions
            .iter()
            .map(|g| Region {
                id: g.id,
                genus: g.genus,
                circles: circles.remove(&g.id).unwrap_or_default(),
            })
            .collect();
        Self::new(rot, regions)
    }

    /// Invariants of the complement of a spanning subgraph, for surfaces.
    pub fn complement_stats(&self, a: EdgeSet) -> Result<ComplementStats, EmbeddingError> {
        if let Some(&v) = self.rotation.pinch_vertices().first() {
            return Err(EmbeddingError::PinchVertex(v));
        }
        let boundary = self.rotation.face_count(a)?;
        let scheme = self.derive_dagger();
        Ok(scheme_complement(&scheme, self.euler_characteristic(), &self.rotation, a, boundary))
    }

    /// Classifies `e` topologically and checks the answer against the bond
    /// matroid of `G†`.
    pub fn classify_edge(&self, e: EdgeId) -> Result<EdgeClassification, EmbeddingError> {
        self.graph().endpoints(e)?;
        let scheme = self.derive_dagger();
        let bridge = self.graph().is_bridge(e)?;
        let quasi_bridge = self.region_of_side(e, Side::Left)? == self.region_of_side(e, Side::Right)?;
        let quasi_loop = scheme.rho(EdgeSet::singleton(e)) > scheme.rho(EdgeSet::empty());
        let b = RankMatroid::bond(&scheme.dagger);
        if quasi_loop != b.is_loop(e)? || quasi_bridge != b.is_isthmus(e)? {
            return Err(EmbeddingError::ClassificationMismatch(e));
        }
        Ok(EdgeClassification {
            bridge,
            quasi_bridge,
            quasi_loop,
        })
    }
}

fn scheme_complement(
    scheme: &EmbeddingScheme,
    chi: i64,
    rotation: &RotationSystem,
    a: EdgeSet,
    boundary: usize,
) -> ComplementStats {
    let k = scheme.rho(a);
    let v = scheme.graph.num_vertices() as i64;
    let chi_c = chi - (v - a.len() as i64);
    ComplementStats {
        components: k,
        boundary_circles: boundary,
        euler_characteristic: chi_c,
        genus_complement: 2 * k as i64 - boundary as i64 - chi_c,
        genus_neighbourhood: rotation.genus(a),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementStats {
    /// `k(Σ∖A) = ρ(A)`.
    pub components: usize,
    /// `b(Σ∖A) = f(A)`.
    pub boundary_circles: usize,
    /// `χ(Σ∖A)`.
    pub euler_characteristic: i64,
    /// `γ(Σ∖A)`.
    pub genus_complement: i64,
    /// `γ(N(A))`, the Euler genus of the ribbon subgraph.
    pub genus_neighbourhood: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum EdgeClass {
    Bridge,
    QuasiBridgeOnly,
    QuasiLoop,
    Ordinary,
}

impl std::fmt::Display for EdgeClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EdgeClass::Bridge => "bridge",
            EdgeClass::QuasiBridgeOnly => "quasi-bridge",
            EdgeClass::QuasiLoop => "quasi-loop",
            EdgeClass::Ordinary => "ordinary",
        })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct EdgeClassification {
    pub bridge: bool,
    pub quasi_bridge: bool,
    pub quasi_loop: bool,
}

impl EdgeClassification {
    pub fn class(&self) -> EdgeClass {
        if self.bridge {
            EdgeClass::Bridge
        } else if self.quasi_bridge {
            EdgeClass::QuasiBridgeOnly
        } else if self.quasi_loop {
            EdgeClass::QuasiLoop
        } else {
            EdgeClass::Ordinary
        }
    }
}

/// The pair `(G, G†)` with identified edge ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingScheme {
    pub graph: Multigraph,
    pub dagger: Multigraph,
}

impl EmbeddingScheme {
    pub fn edges(&self) -> EdgeSet {
        self.graph.edges()
    }

    /// `ρ(A)`: components of `G†` restricted to `E∖A`.
    pub fn rho(&self, a: EdgeSet) -> usize {
        self.dagger.counter().count(self.edges().difference(a))
    }

    /// `G∖e`: delete `e` from `G`, contract it in `G†`.
    pub fn delete_edge(&self, e: EdgeId) -> Result<Self, EmbeddingError> {
        Ok(EmbeddingScheme {
            graph: self.graph.delete_edge(e)?,
            dagger: self.dagger.contract_edge(e)?,
        })
    }

    /// `G/e`: contract `e` in `G`, delete it from `G†`.
    pub fn contract_edge(&self, e: EdgeId) -> Result<Self, EmbeddingError> {
        Ok(EmbeddingScheme {
            graph: self.graph.contract_edge(e)?,
            dagger: self.dagger.delete_edge(e)?,
        })
    }

    /// The bond matroid of `G†` and the cycle matroid of `G`.
    pub fn matroids(&self) -> (RankMatroid, RankMatroid) {
        (RankMatroid::bond(&self.dagger), RankMatroid::cycle(&self.graph))
    }

    /// `ρ(e) > ρ(∅)`.
    pub fn is_quasi_loop(&self, e: EdgeId) -> bool {
        self.dagger.is_bridge(e).unwrap_or(false)
    }

    /// Both sides of `e` lie on one region.
    pub fn is_quasi_bridge(&self, e: EdgeId) -> bool {
        self.dagger.is_loop(e).unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ribbon::tests::{plane_edge, plane_loop, theta, torus_bouquet};
    use crate::ribbon::{he, Sign};

    fn torus_loop() -> EmbeddedGraph {
        EmbeddedGraph::new(
            plane_loop(),
            vec![Region {
                id: 0,
                genus: 0,
                circles: vec![0, 1],
            }],
        )
        .unwrap()
    }

    fn p3() -> EmbeddedGraph {
        let g = Multigraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let r = RotationSystem::single_sector(g, vec![vec![he(0, 0)], vec![he(0, 1), he(1, 0)], vec![he(1, 1)]], vec![])
            .unwrap();
        EmbeddedGraph::cellular(r).unwrap()
    }

    #[test]
    fn validate_examples() {
        let s = EmbeddedGraph::cellular(plane_loop()).unwrap().validate();
        assert_eq!((s.components, s.euler_genus, s.cellular), (1, 0, true));
        let t = torus_loop().validate();
        assert_eq!((t.components, t.euler_characteristic, t.euler_genus, t.cellular), (1, 0, 2, false));
        let th = EmbeddedGraph::cellular(theta(true)).unwrap().validate();
        assert_eq!((th.euler_characteristic, th.euler_genus, th.cellular), (0, 2, true));
    }

    #[test]
    fn region_errors() {
        let r = plane_loop();
        let one = |circles: Vec<usize>| Region { id: 0, genus: 0, circles };
        assert!(matches!(
            EmbeddedGraph::new(r.clone(), vec![one(vec![0])]),
            Err(EmbeddingError::UncoveredCircle(1))
        ));
        assert!(matches!(
            EmbeddedGraph::new(r.clone(), vec![one(vec![0, 1]), Region { id: 1, genus: 0, circles: vec![1] }]),
            Err(EmbeddingError::DoublyCoveredCircle(1))
        ));
        assert!(matches!(
            EmbeddedGraph::new(r.clone(), vec![one(vec![0, 1, 2])]),
            Err(EmbeddingError::UnknownCircle { circle: 2, .. })
        ));
        assert!(matches!(
            EmbeddedGraph::new(r, vec![one(vec![0, 1]), Region { id: 0, genus: 0, circles: vec![] }]),
            Err(EmbeddingError::DuplicateRegion(0))
        ));
    }

    #[test]
    fn dagger_examples() {
        let s = EmbeddedGraph::cellular(plane_loop()).unwrap().derive_dagger();
        assert_eq!(s.dagger.num_vertices(), 2);
        assert!(!s.dagger.is_loop(0).unwrap());
        let t = torus_loop().derive_dagger();
        assert_eq!(t.dagger.num_vertices(), 1);
        assert!(t.dagger.is_loop(0).unwrap());
        let th = EmbeddedGraph::cellular(theta(true)).unwrap().derive_dagger();
        assert_eq!(th.dagger.num_vertices(), 1);
        assert!(th.edges().iter().all(|e| th.dagger.is_loop(e).unwrap()));
    }

    #[test]
    fn rho_examples() {
        let s = EmbeddedGraph::cellular(plane_loop()).unwrap().derive_dagger();
        assert_eq!((s.rho(EdgeSet::empty()), s.rho(EdgeSet::singleton(0))), (1, 2));
        let t = torus_loop().derive_dagger();
        assert_eq!((t.rho(EdgeSet::empty()), t.rho(EdgeSet::singleton(0))), (1, 1));
        let th = EmbeddedGraph::cellular(theta(true)).unwrap().derive_dagger();
        assert!(th.edges().subsets().all(|a| th.rho(a) == 1));
    }

    #[test]
    fn cellular_dagger_is_dual() {
        for seed in 0..100 {
            let r = crate::ribbon::tests::random_ribbon(seed, 7);
            let s = EmbeddedGraph::cellular(r.clone()).unwrap().derive_dagger();
            let d = r.dual().unwrap();
            assert_eq!(&s.dagger, d.graph(), "seed {seed}");
        }
    }

    #[test]
    fn classification_examples() {
        let s = EmbeddedGraph::cellular(plane_loop()).unwrap();
        assert_eq!(s.classify_edge(0).unwrap().class(), EdgeClass::QuasiLoop);
        let t = torus_loop().classify_edge(0).unwrap();
        assert_eq!(t.class(), EdgeClass::QuasiBridgeOnly);
        assert!(!t.quasi_loop && !t.bridge && t.quasi_bridge);
        assert_eq!(p3().classify_edge(1).unwrap().class(), EdgeClass::Bridge);
        assert!(matches!(p3().classify_edge(7), Err(EmbeddingError::Graph(GraphError::UnknownEdge(7)))));
        let tb = EmbeddedGraph::cellular(torus_bouquet()).unwrap();
        assert_eq!(tb.classify_edge(0).unwrap().class(), EdgeClass::QuasiBridgeOnly);
    }

    #[test]
    fn scheme_minor_examples() {
        let s = EmbeddedGraph::cellular(plane_loop()).unwrap().derive_dagger();
        let d = s.delete_edge(0).unwrap();
        assert_eq!((d.graph.num_vertices(), d.dagger.num_vertices()), (1, 1));
        let t = torus_loop().derive_dagger().contract_edge(0).unwrap();
        assert_eq!((t.graph.num_edges(), t.dagger.num_edges()), (0, 0));
        assert_eq!(t.rho(EdgeSet::empty()), 1);
        let th = EmbeddedGraph::cellular(theta(true)).unwrap().derive_dagger();
        let c = th.contract_edge(0).unwrap();
        assert_eq!(c.graph.num_vertices(), 1);
        assert!(c.edges().iter().all(|e| c.graph.is_loop(e).unwrap() && c.dagger.is_loop(e).unwrap()));
    }

    #[test]
    fn complement_examples() {
        let e = EmbeddedGraph::cellular(plane_edge()).unwrap();
        let s = e.complement_stats(EdgeSet::empty()).unwrap();
        assert_eq!((s.components, s.genus_complement, s.genus_neighbourhood), (1, 0, 0));
        let t = torus_loop().complement_stats(EdgeSet::singleton(0)).unwrap();
        assert_eq!((t.components, t.genus_complement, t.genus_neighbourhood), (1, 0, 0));
        assert_eq!(t.boundary_circles, 2);
        let pinch = RotationSystem::new(
            Multigraph::from_edges(1, &[(0, 0), (0, 0)]).unwrap(),
            vec![vec![vec![he(0, 0), he(0, 1)], vec![he(1, 0), he(1, 1)]]],
            vec![Sign::Plus; 2],
        )
        .unwrap();
        let p = EmbeddedGraph::cellular(pinch).unwrap();
        assert!(matches!(p.complement_stats(EdgeSet::empty()), Err(EmbeddingError::PinchVertex(0))));
    }

    #[test]
    fn cellular_complement_matches_dual() {
        for seed in 0..100 {
            let r = crate::ribbon::tests::random_ribbon(seed, 6);
            let d = r.dual().unwrap();
            let emb = EmbeddedGraph::cellular(r.clone()).unwrap();
            let all = r.edges();
            for a in all.subsets() {
                let s = emb.complement_stats(a).unwrap();
                let ac = all.difference(a);
                assert_eq!(s.components, d.components(ac));
                assert_eq!(s.genus_complement, d.genus(ac) as i64, "seed {seed} a {a}");
                assert_eq!(s.genus_neighbourhood, r.genus(a));
            }
        }
    }
}
