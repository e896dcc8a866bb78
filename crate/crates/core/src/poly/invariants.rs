//! Subset expansions and deletion-contraction recursions.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use super::{expand_counts, Exponents, MPolynomial, Var};
use crate::edgeset::{EdgeSet, VertexId};
use crate::embedding::{EmbeddedGraph, EmbeddingError, EmbeddingScheme};
use crate::exec::Exec;
use crate::graph::{GraphError, Multigraph};
use crate::matroid::{MatroidError, MatroidPerspective, RankMatroid};
use crate::ribbon::{RibbonError, RotationSystem};

/// Default edge cap for subset expansions.
pub const DEFAULT_EDGE_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("{size} edges exceeds the cap of {cap}")]
    TooManyEdges { size: usize, cap: usize },
    #[error("vertex {0} is a pinch vertex; this polynomial needs a surface")]
    PinchVertex(VertexId),
    #[error(transparent)]
    Ribbon(#[from] RibbonError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Method {
    Expansion,
    Recursion,
}

#[derive(Copy, Clone, Debug)]
pub struct Config {
    pub exec: Exec,
    pub edge_cap: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            exec: Exec::default(),
            edge_cap: DEFAULT_EDGE_CAP,
        }
    }
}

impl Config {
    fn check(&self, ground: EdgeSet) -> Result<(), PolyError> {
        if ground.len() > self.edge_cap {
            Err(PolyError::TooManyEdges {
                size: ground.len(),
                cap: self.edge_cap,
            })
        } else {
            Ok(())
        }
    }
}

/// Converts a whole-number exponent to half units.
fn whole(n: i64) -> u32 {
    assert!(n >= 0, "negative exponent {n}");
    2 * n as u32
}

/// An exponent given directly in half units.
fn half(n: i64) -> u32 {
    assert!(n >= 0, "negative exponent {n}/2");
    n as u32
}

fn exps(x: u32, y: u32, z: u32, a: u32, b: u32) -> Exponents {
    [x, y, z, a, b, 0]
}

/// Tally of exponent vectors over all subsets of `ground`.
pub fn count_exponents<F>(ground: EdgeSet, exec: Exec, f: F) -> BTreeMap<Exponents, u64>
where
    F: Fn(EdgeSet) -> Exponents + Sync + Send,
{
    let map = exec.fold_subsets(
        ground,
        HashMap::new,
        |mut m: HashMap<Exponents, u64>, a| {
            *m.entry(f(a)).or_insert(0) += 1;
            m
        },
        |mut l, mut r| {
            if l.len() < r.len() {
                std::mem::swap(&mut l, &mut r);
            }
            for (k, v) in r {
                *l.entry(k).or_insert(0) += v;
            }
            l
        },
    );
    map.into_iter().collect()
}

const XY_SHIFT: [i64; 6] = [-1, -1, 0, 0, 0, 0];
const X_SHIFT: [i64; 6] = [-1, 0, 0, 0, 0, 0];

fn require_surface(r: &RotationSystem) -> Result<(), PolyError> {
    match r.pinch_vertices().first() {
        Some(&v) => Err(PolyError::PinchVertex(v)),
        None => Ok(()),
    }
}

/// `T_M(x, y) = Σ (x-1)^(r(E)-r(X)) (y-1)^(|X|-r(X))`.
pub fn tutte(m: &RankMatroid, cfg: &Config) -> Result<MPolynomial, PolyError> {
    let ground = m.ground();
    cfg.check(ground)?;
    let re = m.full_rank() as i64;
    let counts = count_exponents(ground, cfg.exec, |x| {
        let r = m.rank_unchecked(x) as i64;
        exps(whole(re - r), whole(x.len() as i64 - r), 0, 0, 0)
    });
    Ok(expand_counts(&counts, XY_SHIFT))
}

/// Tutte polynomial of a matroid perspective `M → M'`.
pub fn tutte_perspective(p: &MatroidPerspective, method: Method, cfg: &Config) -> Result<MPolynomial, PolyError> {
    let ground = p.ground();
    cfg.check(ground)?;
    match method {
        Method::Expansion => {
            let (m, mp) = (p.m(), p.m_prime());
            let (re, rpe) = (m.full_rank() as i64, mp.full_rank() as i64);
            let counts = count_exponents(ground, cfg.exec, |x| {
                let (r, rp) = (m.rank_unchecked(x) as i64, mp.rank_unchecked(x) as i64);
                exps(whole(rpe - rp), whole(x.len() as i64 - r), whole((re - r) - (rpe - rp)), 0, 0)
            });
            Ok(expand_counts(&counts, XY_SHIFT))
        }
        Method::Recursion => {
            let mut leaves = BTreeMap::new();
            perspective_recursion(p.m().clone(), p.m_prime().clone(), [0; 6], &mut leaves);
            Ok(expand_counts(&leaves, [0; 6]))
        }
    }
}

fn bump(mut e: Exponents, i: usize) -> Exponents {
    e[i] += 2;
    e
}

fn perspective_recursion(m: RankMatroid, mp: RankMatroid, mono: Exponents, out: &mut BTreeMap<Exponents, u64>) {
    let Some(e) = m.ground().max() else {
        *out.entry(mono).or_insert(0) += 1;
        return;
    };
    let del = || (m.delete(e).expect("member"), mp.delete(e).expect("member"));
    let con = || (m.contract(e).expect("member"), mp.contract(e).expect("member"));
    if m.is_loop(e).expect("member") {
        let (a, b) = del();
        perspective_recursion(a, b, bump(mono, 1), out);
    } else if mp.is_isthmus(e).expect("member") {
        let (a, b) = del();
        perspective_recursion(a, b, bump(mono, 0), out);
    } else if m.is_isthmus(e).expect("member") {
        let (a, b) = del();
        perspective_recursion(a, b, bump(mono, 2), out);
        let (a, b) = con();
        perspective_recursion(a, b, mono, out);
    } else {
        let (a, b) = del();
        perspective_recursion(a, b, mono, out);
        let (a, b) = con();
        perspective_recursion(a, b, mono, out);
    }
}

/// `L_G` of a ribbon graph from boundary and genus data of `G` and `G*`.
pub fn las_vergnas_cellular(r: &RotationSystem, cfg: &Config) -> Result<MPolynomial, PolyError> {
    require_surface(r)?;
    let all = r.edges();
    cfg.check(all)?;
    let d = r.dual()?;
    let gamma = r.total_genus() as i64;
    let v = r.num_vertices() as i64;
    let counter = r.graph().counter();
    let ce = counter.count(all) as i64;
    let counts = count_exponents(all, cfg.exec, |a| {
        let ca = counter.count(a) as i64;
        let n = a.len() as i64 - (v - ca);
        let ga = r.genus(a) as i64;
        let gs = d.genus(all.difference(a)) as i64;
        exps(whole(ca - ce), half(2 * n - (gamma + ga - gs)), half(gamma - ga + gs), 0, 0)
    });
    Ok(expand_counts(&counts, XY_SHIFT))
}

/// Extended Las Vergnas polynomial of an embedding scheme.
pub fn las_vergnas_embedded(s: &EmbeddingScheme, method: Method, cfg: &Config) -> Result<MPolynomial, PolyError> {
    let all = s.edges();
    cfg.check(all)?;
    match method {
        Method::Expansion => {
            let g = s.graph.counter();
            let dagger = s.dagger.counter();
            let rho = |a: EdgeSet| dagger.count(all.difference(a)) as i64;
            let (ce, rho0, rhoe) = (g.count(all) as i64, rho(EdgeSet::empty()), rho(all));
            let e = all.len() as i64;
            let counts = count_exponents(all, cfg.exec, |a| {
                let (ca, ra) = (g.count(a) as i64, rho(a));
                exps(whole(ca - ce), whole(ra - rho0), whole(e - a.len() as i64 - rhoe + ra + ce - ca), 0, 0)
            });
            Ok(expand_counts(&counts, XY_SHIFT))
        }
        Method::Recursion => {
            let mut leaves = BTreeMap::new();
            scheme_recursion(s.clone(), [0; 6], &mut leaves);
            Ok(expand_counts(&leaves, [0; 6]))
        }
    }
}

fn scheme_recursion(s: EmbeddingScheme, mono: Exponents, out: &mut BTreeMap<Exponents, u64>) {
    let Some(e) = s.edges().max() else {
        *out.entry(mono).or_insert(0) += 1;
        return;
    };
    let bridge = s.graph.is_bridge(e).expect("member");
    if s.is_quasi_loop(e) {
        scheme_recursion(s.delete_edge(e).expect("member"), bump(mono, 1), out);
    } else if bridge {
        scheme_recursion(s.delete_edge(e).expect("member"), bump(mono, 0), out);
    } else if s.is_quasi_bridge(e) {
        scheme_recursion(s.delete_edge(e).expect("member"), bump(mono, 2), out);
        scheme_recursion(s.contract_edge(e).expect("member"), mono, out);
    } else {
        scheme_recursion(s.delete_edge(e).expect("member"), mono, out);
        scheme_recursion(s.contract_edge(e).expect("member"), mono, out);
    }
}

/// `R_G(x, y, z) = Σ (x-1)^(r(E)-r(A)) y^(n(A)) z^(γ(A))`.
pub fn bollobas_riordan(r: &RotationSystem, cfg: &Config) -> Result<MPolynomial, PolyError> {
    require_surface(r)?;
    let all = r.edges();
    cfg.check(all)?;
    let v = r.num_vertices() as i64;
    let counter = r.graph().counter();
    let ce = counter.count(all) as i64;
    let counts = count_exponents(all, cfg.exec, |a| {
        let ca = counter.count(a) as i64;
        let n = a.len() as i64 - (v - ca);
        exps(whole(ca - ce), whole(n), whole(r.genus(a) as i64), 0, 0)
    });
    Ok(expand_counts(&counts, X_SHIFT))
}

/// `K = Σ x^(c(A)-c(G)) y^(k(Σ∖A)-k(Σ)) a^(γ(N(A))/2) b^(γ(Σ∖A)/2)`.
pub fn krushkal(emb: &EmbeddedGraph, cfg: &Config) -> Result<MPolynomial, PolyError> {
    let r = emb.rotation();
    require_surface(r)?;
    let all = r.edges();
    cfg.check(all)?;
    let report = emb.validate();
    let k = report.components as i64;
    let chi = report.euler_characteristic;
    let scheme = emb.derive_dagger();
    let dagger = scheme.dagger.counter();
    let counter = r.graph().counter();
    let v = r.num_vertices() as i64;
    let ce = counter.count(all) as i64;
    let counts = count_exponents(all, cfg.exec, |a| {
        let rho = dagger.count(all.difference(a)) as i64;
        let b = r.circles(a) as i64;
        let chi_c = chi - (v - a.len() as i64);
        let gamma_c = 2 * rho - b - chi_c;
        exps(
            whole(counter.count(a) as i64 - ce),
            whole(rho - k),
            0,
            half(r.genus(a) as i64),
            half(gamma_c),
        )
    });
    Ok(expand_counts(&counts, [0; 6]))
}

/// `Z_G(x, y) = Σ x^(c(A)) y^(|A|)`.
pub fn dichromatic(g: &Multigraph, cfg: &Config) -> Result<MPolynomial, PolyError> {
    let all = g.edges();
    cfg.check(all)?;
    let counter = g.counter();
    let counts = count_exponents(all, cfg.exec, |a| {
        exps(whole(counter.count(a) as i64), whole(a.len() as i64), 0, 0, 0)
    });
    Ok(expand_counts(&counts, [0; 6]))
}

/// `Z_G` by deletion and contraction: `Z(G) = Z(G∖e) + y Z(G/e)` for a
/// non-loop `e`, `Z(G) = (1 + y) Z(G∖e)` for a loop, and `x^v` without edges.
pub fn dichromatic_recursion(g: &Multigraph, cfg: &Config) -> Result<MPolynomial, PolyError> {
    cfg.check(g.edges())?;
    Ok(dichromatic_rec(g))
}

fn dichromatic_rec(g: &Multigraph) -> MPolynomial {
    let Some(e) = g.edges().max() else {
        return MPolynomial::var(Var::X).pow(g.num_vertices() as u32);
    };
    let y = MPolynomial::var(Var::Y);
    let deleted = dichromatic_rec(&g.delete_edge(e).expect("present"));
    if g.is_loop(e).expect("present") {
        &(&MPolynomial::one() + &y) * &deleted
    } else {
        &deleted + &(&y * &dichromatic_rec(&g.contract_edge(e).expect("present")))
    }
}

/// `T_M` by deletion and contraction, as the perspective `M → M`.
pub fn tutte_recursion(m: &RankMatroid, cfg: &Config) -> Result<MPolynomial, PolyError> {
    let p = MatroidPerspective::new(m.clone(), m.clone())?;
    tutte_perspective(&p, Method::Recursion, cfg)
}

/// `(B(G†), C(G))`, validated.
pub fn scheme_perspective(s: &EmbeddingScheme) -> Result<MatroidPerspective, PolyError> {
    let (b, c) = s.matroids();
    Ok(MatroidPerspective::new(b, c)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Var;
    use crate::ribbon::tests::{mobius_loop, plane_digon, plane_edge, plane_loop, random_ribbon, theta, torus_bouquet};
    use crate::ribbon::{he, Sign};
    use num_bigint::BigInt;

    fn cfg() -> Config {
        Config::default()
    }

    fn cellular_l(r: &RotationSystem) -> String {
        las_vergnas_cellular(r, &cfg()).unwrap().to_string()
    }

    #[test]
    fn tutte_examples() {
        let isthmus = Multigraph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(tutte(&RankMatroid::cycle(&isthmus), &cfg()).unwrap().to_string(), "x");
        let lp = Multigraph::from_edges(1, &[(0, 0)]).unwrap();
        assert_eq!(tutte(&RankMatroid::cycle(&lp), &cfg()).unwrap().to_string(), "y");
        let th = theta(false);
        assert_eq!(tutte(&RankMatroid::cycle(th.graph()), &cfg()).unwrap().to_string(), "y + y^2 + x");
    }

    /// Direct subset sum, written out term by term.
    fn tutte_oracle(g: &Multigraph) -> MPolynomial {
        let x1 = &MPolynomial::var(Var::X) - &MPolynomial::one();
        let y1 = &MPolynomial::var(Var::Y) - &MPolynomial::one();
        let all = g.edges();
        let re = g.rank(all).unwrap() as u32;
        let mut out = MPolynomial::zero();
        for a in all.subsets() {
            let r = g.rank(a).unwrap() as u32;
            out = &out + &(&x1.pow(re - r) * &y1.pow(a.len() as u32 - r));
        }
        out
    }

    #[test]
    fn tutte_matches_oracle_both_exec_paths() {
        for seed in 0..30 {
            let g = crate::graph::tests::random_graph(seed, 8);
            let m = RankMatroid::cycle(&g);
            let oracle = tutte_oracle(&g);
            for exec in [Exec::Sequential, Exec::Parallel] {
                let c = Config { exec, edge_cap: 20 };
                assert_eq!(tutte(&m, &c).unwrap(), oracle);
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = Multigraph::from_edges(1, &[(0, 0); 5]).unwrap();
        let c = Config {
            exec: Exec::Sequential,
            edge_cap: 4,
        };
        assert_eq!(
            tutte(&RankMatroid::cycle(&g), &c).unwrap_err(),
            PolyError::TooManyEdges { size: 5, cap: 4 }
        );
    }

    #[test]
    fn theta_on_torus() {
        let th = theta(true);
        let expected = "1 + 3z + 2z^2 + xz^2";
        assert_eq!(cellular_l(&th), expected);
        let emb = EmbeddedGraph::cellular(th).unwrap();
        let s = emb.derive_dagger();
        for m in [Method::Expansion, Method::Recursion] {
            assert_eq!(las_vergnas_embedded(&s, m, &cfg()).unwrap().to_string(), expected);
            let p = scheme_perspective(&s).unwrap();
            assert_eq!(tutte_perspective(&p, m, &cfg()).unwrap().to_string(), expected);
        }
    }

    #[test]
    fn perspective_on_itself_is_tutte() {
        for seed in 0..20 {
            let g = crate::graph::tests::random_graph(seed, 7);
            let m = RankMatroid::cycle(&g);
            let p = MatroidPerspective::new(m.clone(), m.clone()).unwrap();
            let t = tutte(&m, &cfg()).unwrap();
            for method in [Method::Expansion, Method::Recursion] {
                assert_eq!(tutte_perspective(&p, method, &cfg()).unwrap(), t);
            }
        }
    }

    #[test]
    fn small_las_vergnas_values() {
        let sphere_loop = EmbeddedGraph::cellular(plane_loop()).unwrap().derive_dagger();
        for m in [Method::Expansion, Method::Recursion] {
            assert_eq!(las_vergnas_embedded(&sphere_loop, m, &cfg()).unwrap().to_string(), "y");
        }
        let torus_loop = EmbeddedGraph::new(
            plane_loop(),
            vec![crate::embedding::Region {
                id: 0,
                genus: 0,
                circles: vec![0, 1],
            }],
        )
        .unwrap()
        .derive_dagger();
        for m in [Method::Expansion, Method::Recursion] {
            assert_eq!(las_vergnas_embedded(&torus_loop, m, &cfg()).unwrap().to_string(), "1 + z");
        }
        assert_eq!(cellular_l(&mobius_loop()), "1 + z");
        assert_eq!(cellular_l(&torus_bouquet()), "1 + 2z + z^2");
    }

    #[test]
    fn plane_graphs_have_l_equal_t() {
        for r in [plane_edge(), plane_digon(), theta(false), plane_loop()] {
            let t = tutte(&RankMatroid::cycle(r.graph()), &cfg()).unwrap();
            assert_eq!(las_vergnas_cellular(&r, &cfg()).unwrap(), t);
        }
    }

    #[test]
    fn cellular_forms_agree_on_random_ribbons() {
        for seed in 0..120 {
            let r = random_ribbon(seed, 7);
            let l = las_vergnas_cellular(&r, &cfg()).unwrap();
            assert!(l.is_integral(), "seed {seed}");
            let s = EmbeddedGraph::cellular(r.clone()).unwrap().derive_dagger();
            assert_eq!(las_vergnas_embedded(&s, Method::Expansion, &cfg()).unwrap(), l, "seed {seed}");
            assert_eq!(las_vergnas_embedded(&s, Method::Recursion, &cfg()).unwrap(), l, "seed {seed}");
            // Through B(G*) directly.
            let d = r.dual().unwrap();
            let p = MatroidPerspective::new(RankMatroid::bond(d.graph()), RankMatroid::cycle(r.graph())).unwrap();
            assert_eq!(tutte_perspective(&p, Method::Recursion, &cfg()).unwrap(), l);
            // Every subset contributes 1 at x = y = 2, z = 1.
            let two = num_rational::BigRational::from_integer(2.into());
            let pt = crate::poly::Point::zeros()
                .with(Var::X, two.clone())
                .with(Var::Y, two)
                .with(Var::Z, num_rational::BigRational::from_integer(1.into()));
            assert_eq!(l.eval(&pt), num_rational::BigRational::from_integer(BigInt::from(1u64 << r.num_edges())));
        }
    }

    #[test]
    fn bollobas_riordan_examples() {
        let c = cfg();
        assert_eq!(bollobas_riordan(&plane_edge(), &c).unwrap().to_string(), "x");
        assert_eq!(bollobas_riordan(&plane_digon(), &c).unwrap().to_string(), "1 + y + x");
        assert_eq!(bollobas_riordan(&mobius_loop(), &c).unwrap().to_string(), "1 + yz");
        let pinch = RotationSystem::new(
            Multigraph::from_edges(1, &[(0, 0), (0, 0)]).unwrap(),
            vec![vec![vec![he(0, 0), he(0, 1)], vec![he(1, 0), he(1, 1)]]],
            vec![Sign::Plus; 2],
        )
        .unwrap();
        assert_eq!(bollobas_riordan(&pinch, &c).unwrap_err(), PolyError::PinchVertex(0));
    }

    #[test]
    fn krushkal_examples() {
        let c = cfg();
        let edge = EmbeddedGraph::cellular(plane_edge()).unwrap();
        assert_eq!(krushkal(&edge, &c).unwrap().to_string(), "1 + x");
        let lone = EmbeddedGraph::cellular(
            RotationSystem::single_sector(Multigraph::with_vertices(1), vec![vec![]], vec![]).unwrap(),
        )
        .unwrap();
        assert_eq!(krushkal(&lone, &c).unwrap().to_string(), "1");
        let torus_loop = EmbeddedGraph::new(
            plane_loop(),
            vec![crate::embedding::Region {
                id: 0,
                genus: 0,
                circles: vec![0, 1],
            }],
        )
        .unwrap();
        // A = ∅: complement is the torus minus a disc. A = {e}: an annulus.
        assert_eq!(krushkal(&torus_loop, &c).unwrap().to_string(), "1 + b");
    }

    #[test]
    fn dichromatic_examples() {
        let c = cfg();
        assert_eq!(dichromatic(&Multigraph::with_vertices(1), &c).unwrap().to_string(), "x");
        let e = Multigraph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(dichromatic(&e, &c).unwrap().to_string(), "xy + x^2");
        let l = Multigraph::from_edges(1, &[(0, 0)]).unwrap();
        assert_eq!(dichromatic(&l, &c).unwrap().to_string(), "x + xy");
    }

    #[test]
    fn no_two_edge_ribbon_graph_has_xz2() {
        // Every two-edge ribbon graph, up to the choice of rotations and signs.
        let mut seen = 0;
        for seed in 0..2000 {
            let r = random_ribbon(seed, 2);
            if r.num_edges() != 2 {
                continue;
            }
            seen += 1;
            let l = las_vergnas_cellular(&r, &cfg()).unwrap();
            let xz2 = crate::poly::Exponents::from([2, 0, 4, 0, 0, 0]);
            assert!(l.terms().all(|(e, _)| *e != xz2), "seed {seed}: {l}");
        }
        assert!(seen > 100);
    }

    #[test]
    fn recursions_match_expansions() {
        let cfg = Config::default();
        for seed in 0..30 {
            let r = random_ribbon(seed, 7);
            let g = r.graph();
            assert_eq!(dichromatic_recursion(g, &cfg).unwrap(), dichromatic(g, &cfg).unwrap());
            let m = RankMatroid::cycle(g);
            assert_eq!(tutte_recursion(&m, &cfg).unwrap(), tutte(&m, &cfg).unwrap());
        }
    }
}
