//! Graph states of checkerboard-coloured medial graphs.
//!
//! States are indexed by the edges of `G = F_bl`: a white split at the
//! medial vertex of `e` keeps `e`, a black split deletes it and a crossing
//! keeps it with a half-twist. Component counts are computed on `G` directly
//! and cross-checked against an explicit tracer on the medial graph.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::edgeset::{EdgeId, EdgeSet};
use crate::exec::Exec;
use crate::poly::invariants::{bollobas_riordan, las_vergnas_cellular, Config, PolyError};
use crate::poly::{Laurent, Var};
use crate::ribbon::{HalfEdge, Medial, RibbonError, RotationSystem};
use crate::unionfind::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StateError {
    #[error("state does not assign exactly one vertex state to each edge")]
    NotPartition,
    #[error("state has crossings at {0}")]
    HasCrossings(EdgeSet),
    #[error("{size} edges exceeds the cap of {cap}")]
    TooManyEdges { size: usize, cap: usize },
    #[error("surface of Euler genus {genus} ({orientability}) is outside the sphere, projective plane and torus")]
    GenusOutOfRange {
        genus: usize,
        orientability: &'static str,
    },
    #[error(transparent)]
    Ribbon(#[from] RibbonError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum VertexState {
    White,
    Black,
    Crossing,
}

/// A vertex state at every medial vertex, stored as the preimage sets.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphState {
    white: EdgeSet,
    black: EdgeSet,
    crossing: EdgeSet,
}

impl GraphState {
    pub fn new(white: EdgeSet, black: EdgeSet, crossing: EdgeSet) -> Self {
        GraphState { white, black, crossing }
    }

    /// White on `white`, black on the rest of `edges`.
    pub fn noncrossing(edges: EdgeSet, white: EdgeSet) -> Self {
        GraphState::new(white, edges.difference(white), EdgeSet::empty())
    }

    pub fn uniform(edges: EdgeSet, v: VertexState) -> Self {
        GraphState::from_fn(edges, |_| v)
    }

    pub fn from_fn(edges: EdgeSet, mut f: impl FnMut(EdgeId) -> VertexState) -> Self {
        let mut s = GraphState::new(EdgeSet::empty(), EdgeSet::empty(), EdgeSet::empty());
        for e in edges {
            match f(e) {
                VertexState::White => s.white.insert(e),
                VertexState::Black => s.black.insert(e),
                VertexState::Crossing => s.crossing.insert(e),
            }
        }
        s
    }

    /// The `index`-th state in base-3 order (edge ids ascending, least
    /// significant first; digits 0, 1, 2 mean white, black, crossing).
    pub fn from_index(edges: EdgeSet, mut index: u64) -> Self {
        GraphState::from_fn(edges, |_| {
            let d = index % 3;
            index /= 3;
            match d {
                0 => VertexState::White,
                1 => VertexState::Black,
                _ => VertexState::Crossing,
            }
        })
    }

    pub fn get(&self, e: EdgeId) -> Option<VertexState> {
        if self.white.contains(e) {
            Some(VertexState::White)
        } else if self.black.contains(e) {
            Some(VertexState::Black)
        } else if self.crossing.contains(e) {
            Some(VertexState::Crossing)
        } else {
            None
        }
    }

    pub fn white(&self) -> EdgeSet {
        self.white
    }

    pub fn black(&self) -> EdgeSet {
        self.black
    }

    pub fn crossing(&self) -> EdgeSet {
        self.crossing
    }

    fn check(&self, edges: EdgeSet) -> Result<(), StateError> {
        let (w, b, c) = (self.white, self.black, self.crossing);
        let disjoint = w.intersection(b).is_empty() && w.intersection(c).is_empty() && b.intersection(c).is_empty();
        if disjoint && w.union(b).union(c) == edges {
            Ok(())
        } else {
            Err(StateError::NotPartition)
        }
    }
}

impl fmt::Display for GraphState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{} B{} C{}", self.white, self.black, self.crossing)
    }
}

/// Both component formulas for a crossing-free state.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct LvComponents {
    /// `f_{F_bl}(W)`; valid on every surface.
    pub formula: usize,
    /// `min(f_{F_bl}(W) + γ_{F_wh}(B), f_{F_bl}(W) + γ_{F_bl}(W))`.
    pub min_form: usize,
    /// The same minimum written with ranks only:
    /// `min(|B| + r(F_wh) - 2r_wh(B) + 1, |W| + r(F_bl) - 2r_bl(W) + 1)`.
    pub rank_form: i64,
    pub agrees: bool,
}

/// The closed surfaces covered by the low-genus theorems.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum LowGenus {
    Sphere,
    ProjectivePlane,
    Torus,
}

impl fmt::Display for LowGenus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LowGenus::Sphere => "sphere",
            LowGenus::ProjectivePlane => "projective plane",
            LowGenus::Torus => "torus",
        })
    }
}

/// Quasi-tree duality for one subset `A`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct QuasiTreeCheck {
    pub a: EdgeSet,
    /// `G - A` is a quasi-tree.
    pub primal: bool,
    /// `G* - A^c` is a quasi-tree.
    pub dual: bool,
    /// `(γ_G(A^c), γ_{G*}(A), γ(G))` when `G - A` is a quasi-tree.
    pub genera: Option<(usize, usize, usize)>,
    /// On low-genus surfaces: `G - A` or `G* - A^c` is a spanning tree.
    pub spanning_tree: Option<bool>,
}

impl QuasiTreeCheck {
    pub fn holds(&self) -> bool {
        self.primal == self.dual
            && self.genera.is_none_or(|(a, b, g)| a + b == g)
            && self.spanning_tree.is_none_or(|t| t == self.primal)
    }
}

/// Both sides of the low-genus relation between `L_G` and `R_G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LrCheck {
    pub surface: LowGenus,
    pub lhs: Laurent,
    pub rhs: Laurent,
}

impl LrCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// A connected ribbon graph `G` together with its dual and medial graph.
#[derive(Clone, Debug)]
pub struct States {
    g: RotationSystem,
    dual: RotationSystem,
    medial: Medial,
}

impl States {
    pub fn new(g: RotationSystem) -> Result<Self, StateError> {
        g.require_no_pinch()?;
        if g.components(g.edges()) > 1 {
            return Err(RibbonError::Disconnected.into());
        }
        let dual = g.dual()?;
        let medial = g.medial()?;
        Ok(States { g, dual, medial })
    }

    pub fn graph(&self) -> &RotationSystem {
        &self.g
    }

    pub fn dual(&self) -> &RotationSystem {
        &self.dual
    }

    pub fn medial(&self) -> &Medial {
        &self.medial
    }

    pub fn edges(&self) -> EdgeSet {
        self.g.edges()
    }

    /// `c(s) = f(G^{τ(C)} - B)`.
    pub fn components(&self, s: &GraphState) -> Result<usize, StateError> {
        s.check(self.edges())?;
        Ok(self.components_unchecked(s))
    }

    fn components_unchecked(&self, s: &GraphState) -> usize {
        self.g
            .circles_twisted(self.edges().difference(s.black), s.crossing)
    }

    /// Counts closed curves by smoothing every vertex of the medial graph.
    pub fn trace(&self, s: &GraphState) -> Result<usize, StateError> {
        s.check(self.edges())?;
        Ok(self.trace_unchecked(s))
    }

    fn trace_unchecked(&self, s: &GraphState) -> usize {
        let m = &self.medial;
        let n = m.num_vertices();
        if n == 0 {
            return m.primal_vertices();
        }
        let mut uf = UnionFind::new(4 * n);
        for e in 0..2 * n {
            uf.union(HalfEdge::new(e, 0).index(), HalfEdge::new(e, 1).index());
        }
        for i in 0..n {
            let p = m.ports(i);
            let pairs = match s.get(m.edge_of_vertex(i)).expect("checked") {
                // The black corners sit between ports 0,1 and 2,3.
                VertexState::Black => [(0, 1), (2, 3)],
                VertexState::White => [(0, 3), (1, 2)],
                VertexState::Crossing => [(0, 2), (1, 3)],
            };
            for (a, b) in pairs {
                uf.union(p[a].index(), p[b].index());
            }
        }
        uf.count()
    }

    /// Number of states (with crossings) is `3^e`; returns the first state
    /// on which the formula and the tracer disagree.
    pub fn find_component_mismatch(&self, exec: Exec) -> Option<(GraphState, usize, usize)> {
        let edges = self.edges();
        let count = 3u64.pow(edges.len() as u32);
        exec.fold_indices(
            count,
            || None,
            |acc: Option<(u64, GraphState, usize, usize)>, i| {
                if acc.is_some() {
                    return acc;
                }
                let s = GraphState::from_index(edges, i);
                let (f, t) = (self.components_unchecked(&s), self.trace_unchecked(&s));
                (f != t).then_some((i, s, f, t))
            },
            first_by_index,
        )
        .map(|(_, s, f, t)| (s, f, t))
    }

    /// `f_k`: the number of crossing-free states with `k` components.
    pub fn noncrossing_profile(&self, exec: Exec, cap: usize) -> Result<BTreeMap<usize, u64>, StateError> {
        let edges = self.edges();
        if edges.len() > cap {
            return Err(StateError::TooManyEdges { size: edges.len(), cap });
        }
        Ok(exec.fold_subsets(
            edges,
            BTreeMap::new,
            |mut acc, w| {
                *acc.entry(self.g.circles(w)).or_insert(0) += 1;
                acc
            },
            merge_counts,
        ))
    }

    /// `t R_G(t+1, t, 1/t)`.
    pub fn br_generating_function(&self, cfg: &Config) -> Result<Laurent, StateError> {
        let r = bollobas_riordan(&self.g, cfg)?;
        let mut subs = std::array::from_fn(|_| Laurent::zero());
        subs[Var::X.index()] = &Laurent::t() + &Laurent::one();
        subs[Var::Y.index()] = Laurent::t();
        subs[Var::Z.index()] = Laurent::monomial(-1, 1);
        let value = r.eval_laurent(&subs).expect("integral exponents");
        Ok(&Laurent::t() * &value)
    }

    /// Low-genus component formulas for a crossing-free state.
    pub fn lv_components(&self, s: &GraphState) -> Result<LvComponents, StateError> {
        s.check(self.edges())?;
        if !s.crossing.is_empty() {
            return Err(StateError::HasCrossings(s.crossing));
        }
        Ok(self.lv_components_unchecked(s.white))
    }

    fn lv_components_unchecked(&self, w: EdgeSet) -> LvComponents {
        let b = self.edges().difference(w);
        let formula = self.g.circles(w);
        let min_form = (formula + self.dual.genus(b)).min(formula + self.g.genus(w));
        let rank = |r: &RotationSystem, a: EdgeSet| (r.num_vertices() - r.components(a)) as i64;
        let rank_form = (b.len() as i64 + rank(&self.dual, self.edges()) - 2 * rank(&self.dual, b) + 1)
            .min(w.len() as i64 + rank(&self.g, self.edges()) - 2 * rank(&self.g, w) + 1);
        LvComponents {
            formula,
            min_form,
            rank_form,
            agrees: formula == min_form,
        }
    }

    /// A crossing-free state on which the low-genus minimum formula
    /// differs from the true count, if any (the one with the smallest
    /// white set in subset-index order).
    pub fn find_min_form_failure(&self, exec: Exec) -> Option<(GraphState, LvComponents)> {
        let edges = self.edges();
        exec.fold_indices(
            edges.subset_count(),
            || None,
            |acc: Option<(u64, GraphState, LvComponents)>, i| {
                if acc.is_some() {
                    return acc;
                }
                let w = edges.subset_by_index(i);
                let lv = self.lv_components_unchecked(w);
                (!lv.agrees).then(|| (i, GraphState::noncrossing(edges, w), lv))
            },
            |l, r| match (l, r) {
                (Some(l), Some(r)) => Some(if l.0 <= r.0 { l } else { r }),
                (l, r) => l.or(r),
            },
        )
        .map(|(_, s, lv)| (s, lv))
    }

    /// The sphere, projective plane or torus, if `G` lives on one of them.
    pub fn low_genus(&self) -> Option<LowGenus> {
        match (self.g.total_genus(), self.g.is_orientable(self.edges())) {
            (0, _) => Some(LowGenus::Sphere),
            (1, _) => Some(LowGenus::ProjectivePlane),
            (2, true) => Some(LowGenus::Torus),
            _ => None,
        }
    }

    pub fn quasi_tree_duality(&self, a: EdgeSet) -> QuasiTreeCheck {
        let all = self.edges();
        let ac = all.difference(a);
        let primal = self.g.components(ac) == 1 && self.g.circles(ac) == 1;
        let dual = self.dual.components(a) == 1 && self.dual.circles(a) == 1;
        let genera = primal.then(|| (self.g.genus(ac), self.dual.genus(a), self.g.total_genus()));
        let is_tree = |r: &RotationSystem, x: EdgeSet| r.components(x) == 1 && x.len() + 1 == r.num_vertices();
        let spanning_tree = self
            .low_genus()
            .map(|_| is_tree(&self.g, ac) || is_tree(&self.dual, a));
        QuasiTreeCheck {
            a,
            primal,
            dual,
            genera,
            spanning_tree,
        }
    }

    /// The first subset `A` on which quasi-tree duality fails.
    pub fn find_quasi_tree_failure(&self, exec: Exec) -> Option<QuasiTreeCheck> {
        exec.find_subset(self.edges(), |a| {
            let c = self.quasi_tree_duality(a);
            (!c.holds()).then_some(c)
        })
    }

    /// `L_G(t+1, t+1, 1)` (sphere, projective plane) or
    /// `L_2 + t L_1 + L_0` at `(t+1, t+1)` (torus), against `R_G(t+1, t, 1/t)`.
    pub fn lr_relation(&self, cfg: &Config) -> Result<LrCheck, StateError> {
        let surface = self.low_genus().ok_or_else(|| StateError::GenusOutOfRange {
            genus: self.g.total_genus(),
            orientability: if self.g.is_orientable(self.edges()) {
                "orientable"
            } else {
                "non-orientable"
            },
        })?;
        let l = las_vergnas_cellular(&self.g, cfg)?;
        let t1 = &Laurent::t() + &Laurent::one();
        let mut subs = std::array::from_fn(|_| Laurent::zero());
        subs[Var::X.index()] = t1.clone();
        subs[Var::Y.index()] = t1;
        subs[Var::Z.index()] = Laurent::one();
        let lhs = match surface {
            LowGenus::Sphere | LowGenus::ProjectivePlane => l.eval_laurent(&subs).expect("integral"),
            LowGenus::Torus => {
                let at = |i: u32| l.coefficient(Var::Z, 2 * i).eval_laurent(&subs).expect("integral");
                &(&at(2) + &(&Laurent::t() * &at(1))) + &at(0)
            }
        };
        let rhs = &self.br_generating_function(cfg)? * &Laurent::monomial(-1, 1);
        Ok(LrCheck { surface, lhs, rhs })
    }
}

/// `Σ f_k t^k`.
pub fn profile_polynomial(profile: &BTreeMap<usize, u64>) -> Laurent {
    let mut out = Laurent::zero();
    for (&k, &n) in profile {
        out.add_term(k as i64, BigInt::from(n));
    }
    out
}

fn merge_counts(mut l: BTreeMap<usize, u64>, r: BTreeMap<usize, u64>) -> BTreeMap<usize, u64> {
    for (k, n) in r {
        *l.entry(k).or_insert(0) += n;
    }
    l
}

fn first_by_index<T>(l: Option<(u64, T, usize, usize)>, r: Option<(u64, T, usize, usize)>) -> Option<(u64, T, usize, usize)> {
    match (l, r) {
        (Some(l), Some(r)) => Some(if l.0 <= r.0 { l } else { r }),
        (l, r) => l.or(r),
    }
}
