//! Matroids given by rank oracles, with minors, duals and perspectives.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::edgeset::{EdgeId, EdgeSet};
use crate::graph::{ComponentCounter, Multigraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("element {0} is not in the ground set")]
    UnknownElement(EdgeId),
    #[error("ground sets differ: {0} vs {1}")]
    GroundMismatch(EdgeSet, EdgeSet),
    #[error("perspective violated at A = {a}, e = {e}: r(A+e)-r(A) = {dm} < r'(A+e)-r'(A) = {dm_prime}")]
    NotPerspective {
        a: EdgeSet,
        e: EdgeId,
        dm: usize,
        dm_prime: usize,
    },
    #[error("perspective violated: circuit {0} of M is not a union of circuits of M'")]
    CircuitNotUnion(EdgeSet),
    #[error("perspective violated: flat {0} of M' is not a flat of M")]
    FlatNotFlat(EdgeSet),
    #[error("rank axiom violated at {0}")]
    Axiom(String),
}

type RankFn = dyn Fn(EdgeSet) -> usize + Send + Sync;

enum Base {
    Graphic(ComponentCounter),
    Dual(RankMatroid),
    Free,
    Custom(Box<RankFn>),
}

impl fmt::Debug for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::Graphic(_) => f.write_str("Graphic"),
            Base::Dual(m) => write!(f, "Dual({m:?})"),
            Base::Free => f.write_str("Free"),
            Base::Custom(_) => f.write_str("Custom"),
        }
    }
}

impl Base {
    fn rank(&self, x: EdgeSet) -> usize {
        match self {
            Base::Graphic(c) => c.rank(x),
            Base::Dual(m) => x.len() + m.rank_unchecked(m.ground.difference(x)) - m.full_rank(),
            Base::Free => x.len(),
            Base::Custom(f) => f(x),
        }
    }
}

/// A matroid on a set of edge ids. Minors keep a reference to the matroid
/// they came from and record the contracted set:
/// `r(A) = r_base(A ∪ C) - r_base(C)`.
#[derive(Clone, Debug)]
pub struct RankMatroid {
    ground: EdgeSet,
    contracted: EdgeSet,
    offset: usize,
    base: Arc<Base>,
}

impl RankMatroid {
    fn from_base(ground: EdgeSet, base: Base) -> Self {
        RankMatroid {
            ground,
            contracted: EdgeSet::empty(),
            offset: 0,
            base: Arc::new(base),
        }
    }

    /// Cycle matroid `C(G)`: `r(A) = v(G) - c(A)`.
    pub fn cycle(g: &Multigraph) -> Self {
        Self::from_base(g.edges(), Base::Graphic(g.counter()))
    }

    /// Bond matroid `B(G) = C(G)*`.
    pub fn bond(g: &Multigraph) -> Self {
        Self::cycle(g).dual()
    }

    /// Every subset independent.
    pub fn free(ground: EdgeSet) -> Self {
        Self::from_base(ground, Base::Free)
    }

    /// Matroid from an arbitrary rank function. The function is trusted;
    /// use [`RankMatroid::check_axioms`] to validate it.
    pub fn from_rank_fn<F>(ground: EdgeSet, f: F) -> Self
    where
        F: Fn(EdgeSet) -> usize + Send + Sync + 'static,
    {
        Self::from_base(ground, Base::Custom(Box::new(f)))
    }

    pub fn ground(&self) -> EdgeSet {
        self.ground
    }

    /// Rank of `a`, which must be a subset of the ground set.
    pub fn rank(&self, a: EdgeSet) -> Result<usize, MatroidError> {
        match a.difference(self.ground).min() {
            Some(e) => Err(MatroidError::UnknownElement(e)),
            None => Ok(self.rank_unchecked(a)),
        }
    }

    #[inline]
    pub fn rank_unchecked(&self, a: EdgeSet) -> usize {
        self.base.rank(a.union(self.contracted)) - self.offset
    }

    pub fn full_rank(&self) -> usize {
        self.rank_unchecked(self.ground)
    }

    pub fn dual(&self) -> Self {
        Self::from_base(self.ground, Base::Dual(self.clone()))
    }

    fn check(&self, e: EdgeId) -> Result<(), MatroidError> {
        if self.ground.contains(e) {
            Ok(())
        } else {
            Err(MatroidError::UnknownElement(e))
        }
    }

    pub fn delete(&self, e: EdgeId) -> Result<Self, MatroidError> {
        self.check(e)?;
        let mut m = self.clone();
        m.ground.remove(e);
        Ok(m)
    }

    pub fn contract(&self, e: EdgeId) -> Result<Self, MatroidError> {
        self.check(e)?;
        let mut m = self.clone();
        m.ground.remove(e);
        m.contracted.insert(e);
        m.offset = self.base.rank(m.contracted);
        Ok(m)
    }

    pub fn is_loop(&self, e: EdgeId) -> Result<bool, MatroidError> {
        self.check(e)?;
        Ok(self.rank_unchecked(EdgeSet::singleton(e)) == 0)
    }

    /// `r(E) - r(E - e) = 1`.
    pub fn is_isthmus(&self, e: EdgeId) -> Result<bool, MatroidError> {
        self.check(e)?;
        Ok(self.full_rank() - self.rank_unchecked(self.ground.without(e)) == 1)
    }

    /// Minimal dependent set.
    pub fn is_circuit(&self, a: EdgeSet) -> Result<bool, MatroidError> {
        let r = self.rank(a)?;
        if a.is_empty() || r + 1 != a.len() {
            return Ok(false);
        }
        Ok(a.iter().all(|e| self.rank_unchecked(a.without(e)) == a.len() - 1))
    }

    pub fn is_flat(&self, a: EdgeSet) -> Result<bool, MatroidError> {
        let r = self.rank(a)?;
        Ok(self
            .ground
            .difference(a)
            .iter()
            .all(|e| self.rank_unchecked(a.with(e)) == r + 1))
    }

    /// All circuits, by exhaustive search.
    pub fn circuits(&self) -> Vec<EdgeSet> {
        self.ground
            .subsets()
            .filter(|&a| self.is_circuit(a).unwrap_or(false))
            .collect()
    }

    /// Checks the three rank axioms on every subset.
    pub fn check_axioms(&self) -> Result<(), MatroidError> {
        if self.rank_unchecked(EdgeSet::empty()) != 0 {
            return Err(MatroidError::Axiom("r(∅) ≠ 0".into()));
        }
        for a in self.ground.subsets() {
            let r = self.rank_unchecked(a);
            let rest = self.ground.difference(a);
            for e in rest {
                let re = self.rank_unchecked(a.with(e));
                if re != r && re != r + 1 {
                    return Err(MatroidError::Axiom(format!("unit increase at A = {a}, e = {e}")));
                }
                for f in rest.iter().filter(|&f| f > e) {
                    if re == r
                        && self.rank_unchecked(a.with(f)) == r
                        && self.rank_unchecked(a.with(e).with(f)) != r
                    {
                        return Err(MatroidError::Axiom(format!(
                            "local submodularity at A = {a}, e = {e}, f = {f}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Equal rank on every subset of a common ground set.
    pub fn same_as(&self, other: &RankMatroid) -> bool {
        self.ground == other.ground
            && self
                .ground
                .subsets()
                .all(|a| self.rank_unchecked(a) == other.rank_unchecked(a))
    }
}

/// Exhaustive one-element checks are used up to this ground-set size.
pub const EXHAUSTIVE_PERSPECTIVE_LIMIT: usize = 12;

/// Optional circuit and flat checks are run up to this size.
pub const STRUCTURAL_CHECK_LIMIT: usize = 8;

/// A matroid perspective `M → M'` on a common ground set.
#[derive(Clone, Debug)]
pub struct MatroidPerspective {
    m: RankMatroid,
    m_prime: RankMatroid,
}

impl MatroidPerspective {
    /// Validates `r(A+e) - r(A) >= r'(A+e) - r'(A)` for every `A` and `e`
    /// (exhaustively up to [`EXHAUSTIVE_PERSPECTIVE_LIMIT`] elements, by
    /// seeded random sampling above that).
    pub fn new(m: RankMatroid, m_prime: RankMatroid) -> Result<Self, MatroidError> {
        if m.ground() != m_prime.ground() {
            return Err(MatroidError::GroundMismatch(m.ground(), m_prime.ground()));
        }
        let ground = m.ground();
        let check = |a: EdgeSet| -> Result<(), MatroidError> {
            let (r, rp) = (m.rank_unchecked(a), m_prime.rank_unchecked(a));
            for e in ground.difference(a) {
                let dm = m.rank_unchecked(a.with(e)) - r;
                let dm_prime = m_prime.rank_unchecked(a.with(e)) - rp;
                if dm < dm_prime {
                    return Err(MatroidError::NotPerspective { a, e, dm, dm_prime });
                }
            }
            Ok(())
        };
        if ground.len() <= EXHAUSTIVE_PERSPECTIVE_LIMIT {
            for a in ground.subsets() {
                check(a)?;
            }
        } else {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(ground.bits());
            for _ in 0..4096 {
                check(ground.subset_by_index(rng.gen_range(0..ground.subset_count())))?;
            }
        }
        Ok(MatroidPerspective { m, m_prime })
    }

    /// Runs the circuit-union and flat characterizations as well.
    pub fn new_checked(m: RankMatroid, m_prime: RankMatroid) -> Result<Self, MatroidError> {
        let p = Self::new(m, m_prime)?;
        if p.m.ground().len() <= STRUCTURAL_CHECK_LIMIT {
            p.check_circuit_unions()?;
            p.check_flats()?;
        }
        Ok(p)
    }

    pub fn m(&self) -> &RankMatroid {
        &self.m
    }

    pub fn m_prime(&self) -> &RankMatroid {
        &self.m_prime
    }

    pub fn ground(&self) -> EdgeSet {
        self.m.ground()
    }

    /// Every circuit of `M` is a union of circuits of `M'`.
    pub fn check_circuit_unions(&self) -> Result<(), MatroidError> {
        let cp = self.m_prime.circuits();
        for c in self.m.circuits() {
            let covered = cp
                .iter()
                .filter(|d| d.is_subset(c))
                .fold(EdgeSet::empty(), |acc, d| acc.union(*d));
            if covered != c {
                return Err(MatroidError::CircuitNotUnion(c));
            }
        }
        Ok(())
    }

    /// Every flat of `M'` is a flat of `M`.
    pub fn check_flats(&self) -> Result<(), MatroidError> {
        for a in self.ground().subsets() {
            if self.m_prime.is_flat(a)? && !self.m.is_flat(a)? {
                return Err(MatroidError::FlatNotFlat(a));
            }
        }
        Ok(())
    }

    pub fn delete(&self, e: EdgeId) -> Result<Self, MatroidError> {
        Ok(MatroidPerspective {
            m: self.m.delete(e)?,
            m_prime: self.m_prime.delete(e)?,
        })
    }

    pub fn contract(&self, e: EdgeId) -> Result<Self, MatroidError> {
        Ok(MatroidPerspective {
            m: self.m.contract(e)?,
            m_prime: self.m_prime.contract(e)?,
        })
    }
}
