//! Abstract multigraphs with loops and parallel edges.

use crate::edgeset::{EdgeId, EdgeSet, VertexId, MAX_EDGES};
use crate::unionfind::UnionFind;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(VertexId),
    #[error("duplicate edge {0}")]
    DuplicateEdge(EdgeId),
    #[error("edge id {0} exceeds the supported maximum of {MAX_EDGES} edges")]
    TooManyEdges(EdgeId),
}

/// A finite multigraph. Edge ids index into `ends`; deleted or never-used
/// ids hold `None`, so ids of surviving edges are stable under minors.
#[derive(Clone, Debug, Default)]
pub struct Multigraph {
    vertices: Vec<VertexId>,
    ends: Vec<Option<[VertexId; 2]>>,
}

// Unused trailing id slots left by deletions are not significant.
impl PartialEq for Multigraph {
    fn eq(&self, other: &Self) -> bool {
        let trim = |ends: &[Option<[VertexId; 2]>]| {
            let n = ends.iter().rposition(Option::is_some).map_or(0, |i| i + 1);
            ends[..n].to_vec()
        };
        self.vertices == other.vertices && trim(&self.ends) == trim(&other.ends)
    }
}

impl Eq for Multigraph {}

impl Multigraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on vertices `0..n` with no edges.
    pub fn with_vertices(n: usize) -> Self {
        Multigraph {
            vertices: (0..n).collect(),
            ends: Vec::new(),
        }
    }

    /// Graph on vertices `0..n` with edges numbered in the given order.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut g = Self::with_vertices(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: VertexId) -> Result<(), GraphError> {
        match self.vertices.binary_search(&v) {
            Ok(_) => Err(GraphError::DuplicateVertex(v)),
            Err(pos) => {
                self.vertices.insert(pos, v);
                Ok(())
            }
        }
    }

    /// Adds an edge with the next unused id.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId, GraphError> {
        let id = self.ends.len();
        self.add_edge_with_id(id, u, v)?;
        Ok(id)
    }

    pub fn add_edge_with_id(&mut self, id: EdgeId, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        if id >= MAX_EDGES {
            return Err(GraphError::TooManyEdges(id));
        }
        for w in [u, v] {
            if !self.has_vertex(w) {
                return Err(GraphError::UnknownVertex(w));
            }
        }
        if self.ends.len() <= id {
            self.ends.resize(id + 1, None);
        }
        if self.ends[id].is_some() {
            return Err(GraphError::DuplicateEdge(id));
        }
        self.ends[id] = Some([u, v]);
        Ok(())
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Position of `v` in the sorted vertex list.
    pub fn vertex_index(&self, v: VertexId) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.ends.iter().filter(|e| e.is_some()).count()
    }

    /// Ids of all present edges.
    pub fn edges(&self) -> EdgeSet {
        self.ends
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.map(|_| i))
            .collect()
    }

    pub fn endpoints(&self, e: EdgeId) -> Result<[VertexId; 2], GraphError> {
        self.ends
            .get(e)
            .copied()
            .flatten()
            .ok_or(GraphError::UnknownEdge(e))
    }

    pub fn is_loop(&self, e: EdgeId) -> Result<bool, GraphError> {
        let [u, v] = self.endpoints(e)?;
        Ok(u == v)
    }

    fn check_subset(&self, a: EdgeSet) -> Result<(), GraphError> {
        match a.difference(self.edges()).min() {
            Some(e) => Err(GraphError::UnknownEdge(e)),
            None => Ok(()),
        }
    }

    /// `c(A)`: components of the spanning subgraph `(V, A)`.
    pub fn components(&self, a: EdgeSet) -> Result<usize, GraphError> {
        self.check_subset(a)?;
        Ok(self.counter().count(a))
    }

    /// `r(A) = v - c(A)`.
    pub fn rank(&self, a: EdgeSet) -> Result<usize, GraphError> {
        Ok(self.num_vertices() - self.components(a)?)
    }

    /// `n(A) = |A| - r(A)`.
    pub fn nullity(&self, a: EdgeSet) -> Result<usize, GraphError> {
        Ok(a.len() - self.rank(a)?)
    }

    /// Whether removing `e` disconnects its endpoints.
    pub fn is_bridge(&self, e: EdgeId) -> Result<bool, GraphError> {
        let [u, v] = self.endpoints(e)?;
        if u == v {
            return Ok(false);
        }
        let counter = self.counter();
        let all = self.edges();
        Ok(counter.count(all.without(e)) > counter.count(all))
    }

    pub fn delete_edge(&self, e: EdgeId) -> Result<Multigraph, GraphError> {
        self.endpoints(e)?;
        let mut g = self.clone();
        g.ends[e] = None;
        Ok(g)
    }

    /// Removes `e` and identifies its endpoints; the merged vertex keeps the
    /// smaller id.
    pub fn contract_edge(&self, e: EdgeId) -> Result<Multigraph, GraphError> {
        let [u, v] = self.endpoints(e)?;
        let mut g = self.delete_edge(e)?;
        if u != v {
            let (keep, drop) = (u.min(v), u.max(v));
            for [a, b] in g.ends.iter_mut().flatten() {
                if *a == drop {
                    *a = keep;
                }
                if *b == drop {
                    *b = keep;
                }
            }
            let pos = g.vertex_index(drop).expect("endpoint present");
            g.vertices.remove(pos);
        }
        Ok(g)
    }

    /// Precomputed dense form for repeated component counting.
    pub fn counter(&self) -> ComponentCounter {
        let mut ends = vec![(0u32, 0u32); self.ends.len()];
        for (i, e) in self.ends.iter().enumerate() {
            if let Some([u, v]) = e {
                let ui = self.vertex_index(*u).expect("endpoint present") as u32;
                let vi = self.vertex_index(*v).expect("endpoint present") as u32;
                ends[i] = (ui, vi);
            }
        }
        ComponentCounter {
            n: self.vertices.len(),
            ends,
        }
    }
}

/// Component counting over edge subsets of a fixed graph. Subsets are not
/// validated; callers pass subsets of the graph's edge set.
#[derive(Clone, Debug)]
pub struct ComponentCounter {
    n: usize,
    ends: Vec<(u32, u32)>,
}

impl ComponentCounter {
    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn count(&self, a: EdgeSet) -> usize {
        if self.n <= 64 {
            let mut parent = [0u8; 64];
            for (i, p) in parent.iter_mut().enumerate().take(self.n) {
                *p = i as u8;
            }
            fn find(parent: &mut [u8; 64], mut x: u8) -> u8 {
                while parent[x as usize] != x {
                    let p = parent[x as usize];
                    parent[x as usize] = parent[p as usize];
                    x = parent[x as usize];
                }
                x
            }
            let mut comps = self.n;
            for e in a {
                let (u, v) = self.ends[e];
                let (ru, rv) = (find(&mut parent, u as u8), find(&mut parent, v as u8));
                if ru != rv {
                    parent[ru as usize] = rv;
                    comps -= 1;
                }
            }
            comps
        } else {
            let mut uf = UnionFind::new(self.n);
            for e in a {
                let (u, v) = self.ends[e];
                uf.union(u as usize, v as usize);
            }
            uf.count()
        }
    }

    pub fn rank(&self, a: EdgeSet) -> usize {
        self.n - self.count(a)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn theta() -> Multigraph {
        Multigraph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]).unwrap()
    }

    fn path3() -> Multigraph {
        Multigraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    /// Components by explicit graph search, independent of union-find.
    fn components_by_search(g: &Multigraph, a: EdgeSet) -> usize {
        let vs = g.vertices().to_vec();
        let mut seen = vec![false; vs.len()];
        let mut comps = 0;
        for start in 0..vs.len() {
            if seen[start] {
                continue;
            }
            comps += 1;
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(i) = stack.pop() {
                for e in a {
                    let [u, v] = g.endpoints(e).unwrap();
                    let (ui, vi) = (g.vertex_index(u).unwrap(), g.vertex_index(v).unwrap());
                    for (x, y) in [(ui, vi), (vi, ui)] {
                        if x == i && !seen[y] {
                            seen[y] = true;
                            stack.push(y);
                        }
                    }
                }
            }
        }
        comps
    }

    #[test]
    fn two_isolated_vertices() {
        let g = Multigraph::with_vertices(2);
        assert_eq!(g.components(EdgeSet::empty()).unwrap(), 2);
        assert_eq!(g.rank(EdgeSet::empty()).unwrap(), 0);
    }

    #[test]
    fn path_is_connected() {
        let g = path3();
        assert_eq!(g.components(g.edges()).unwrap(), 1);
    }

    #[test]
    fn theta_counts() {
        let g = theta();
        let one = EdgeSet::singleton(1);
        assert_eq!(g.components(one).unwrap(), components_by_search(&g, one));
        assert_eq!(g.components(one).unwrap(), 1);
        assert_eq!(g.rank(g.edges()).unwrap(), 1);
        assert_eq!(g.nullity(g.edges()).unwrap(), 2);
    }

    #[test]
    fn single_loop_nullity() {
        let g = Multigraph::from_edges(1, &[(0, 0)]).unwrap();
        assert_eq!(g.rank(g.edges()).unwrap(), 0);
        assert_eq!(g.nullity(g.edges()).unwrap(), 1);
        assert!(g.is_loop(0).unwrap());
        assert!(!g.is_bridge(0).unwrap());
    }

    #[test]
    fn unknown_edge_rejected() {
        let g = path3();
        assert_eq!(g.components(EdgeSet::singleton(5)), Err(GraphError::UnknownEdge(5)));
        assert_eq!(g.delete_edge(7), Err(GraphError::UnknownEdge(7)));
        assert_eq!(g.contract_edge(2), Err(GraphError::UnknownEdge(2)));
    }

    #[test]
    fn contract_path_edge() {
        let g = path3().contract_edge(0).unwrap();
        assert_eq!(g.vertices(), &[0, 2]);
        assert_eq!(g.endpoints(1).unwrap(), [0, 2]);
        assert_eq!(g.num_edges(), 1);
    }

    #[test]
    fn contract_loop_deletes_it() {
        let g = Multigraph::from_edges(2, &[(0, 0), (0, 1)]).unwrap();
        assert_eq!(g.contract_edge(0).unwrap(), g.delete_edge(0).unwrap());
    }

    #[test]
    fn delete_theta_edge_gives_digon() {
        let g = theta().delete_edge(2).unwrap();
        assert_eq!(g.edges(), EdgeSet::prefix(2));
        assert_eq!(g.endpoints(0).unwrap(), [0, 1]);
        assert_eq!(g.endpoints(1).unwrap(), [0, 1]);
        assert_eq!(g.num_vertices(), 2);
    }

    #[test]
    fn bridges_of_path() {
        let g = path3();
        assert!(g.is_bridge(0).unwrap());
        assert!(!theta().is_bridge(0).unwrap());
    }

    #[test]
    fn many_vertices_use_fallback() {
        let edges: Vec<_> = (0..69).map(|i| (i, i + 1)).take(40).collect();
        let g = Multigraph::from_edges(70, &edges).unwrap();
        assert_eq!(g.components(g.edges()).unwrap(), 30);
        assert_eq!(components_by_search(&g, g.edges()), 30);
    }

    #[test]
    fn edge_id_cap() {
        let mut g = Multigraph::with_vertices(1);
        assert_eq!(g.add_edge_with_id(64, 0, 0), Err(GraphError::TooManyEdges(64)));
    }

    pub(crate) fn random_graph(seed: u64, max_edges: usize) -> Multigraph {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=5);
        let m = rng.gen_range(0..=max_edges);
        let edges: Vec<_> = (0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
        Multigraph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn rank_properties_on_random_graphs() {
        for seed in 0..60 {
            let g = random_graph(seed, 8);
            let all = g.edges();
            for a in all.subsets() {
                let c = g.components(a).unwrap();
                assert_eq!(c, components_by_search(&g, a));
                assert_eq!(c + g.rank(a).unwrap(), g.num_vertices());
                for e in all.difference(a) {
                    let step = g.rank(a.with(e)).unwrap() - g.rank(a).unwrap();
                    assert!(step <= 1);
                }
            }
        }
    }

    #[test]
    fn minors_commute_on_random_graphs() {
        for seed in 100..160 {
            let g = random_graph(seed, 8);
            let ids: Vec<_> = g.edges().iter().collect();
            for &e in &ids {
                for &f in &ids {
                    if e == f {
                        continue;
                    }
                    let a = g.contract_edge(e).unwrap().delete_edge(f).unwrap();
                    let b = g.delete_edge(f).unwrap().contract_edge(e).unwrap();
                    assert_eq!(a, b, "seed {seed} e {e} f {f}");
                }
            }
        }
    }
}
