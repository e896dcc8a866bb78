//! Identities relating the polynomial invariants, checked by exact
//! rational evaluation.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};

use super::invariants::{
    bollobas_riordan, dichromatic, krushkal, las_vergnas_cellular, las_vergnas_embedded, scheme_perspective, tutte,
    tutte_perspective, Config, Method, PolyError,
};
use super::{pow_rational, MPolynomial, Point, Var};
use crate::embedding::EmbeddedGraph;
use crate::matroid::RankMatroid;

/// Minimum number of evaluation points per identity.
pub const DEFAULT_POINTS: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass(String),
    Fail(String),
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub outcome: Outcome,
}

impl Check {
    pub fn passed(&self) -> bool {
        !matches!(self.outcome, Outcome::Fail(_))
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::Pass(d) => write!(f, "RESULT: {} pass ({d})", self.name),
            Outcome::Fail(w) => write!(f, "RESULT: {} FAIL witness {w}", self.name),
            Outcome::Skipped(r) => write!(f, "RESULT: {} skip ({r})", self.name),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn push(&mut self, name: impl Into<String>, outcome: Outcome) {
        self.checks.push(Check {
            name: name.into(),
            outcome,
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Deterministic rationals avoiding 0 and ±1, so that every pole in the
/// identities (at `x = 1`, `y = 1`, zero denominators, `w^2 = 1`) is missed.
pub fn sample_values(seed: u64, count: usize) -> Vec<[BigRational; 4]> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || loop {
        let den = [1i64, 2, 3, 5][rng.gen_range(0..4)];
        let num = rng.gen_range(-12i64..=12);
        if num != 0 && num.abs() != den {
            return BigRational::new(num.into(), den.into());
        }
    };
    (0..count).map(|_| std::array::from_fn(|_| draw())).collect()
}

/// Evaluates `lhs` and `rhs` at each sample; the first disagreement is the
/// witness.
fn compare<L, R>(samples: &[[BigRational; 4]], lhs: L, rhs: R) -> Outcome
where
    L: Fn(&[BigRational; 4]) -> BigRational,
    R: Fn(&[BigRational; 4]) -> BigRational,
{
    for s in samples {
        let (l, r) = (lhs(s), rhs(s));
        if l != r {
            return Outcome::Fail(format!("at (x,y,z,w)=({}, {}, {}, {}): {l} != {r}", s[0], s[1], s[2], s[3]));
        }
    }
    Outcome::Pass(format!("{} points", samples.len()))
}

fn symbolic(lhs: &MPolynomial, rhs: &MPolynomial) -> Outcome {
    if lhs == rhs {
        Outcome::Pass("exact".into())
    } else {
        Outcome::Fail(format!("{lhs} != {rhs}"))
    }
}

fn pt(x: &BigRational, y: &BigRational, z: &BigRational) -> Point {
    Point::zeros()
        .with(Var::X, x.clone())
        .with(Var::Y, y.clone())
        .with(Var::Z, z.clone())
}

/// Statistics of one spanning subgraph used by the state-sum identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct SubsetStats {
    rank_drop: i64,
    nullity: i64,
    genus: i64,
    dual_genus: i64,
    components: i64,
    dual_components: i64,
    size: i64,
}

/// Runs every identity applicable to `emb`: all of them for cellular
/// embeddings, the general-surface ones for other surfaces, and the
/// matroid-level ones for pseudo-surfaces.
pub fn verify_identities(emb: &EmbeddedGraph, cfg: &Config, points: usize) -> Result<Report, PolyError> {
    let samples = sample_values(0x1de7 ^ emb.edges().bits(), points.max(DEFAULT_POINTS));
    let mut report = Report::default();
    let r = emb.rotation();
    let g = r.graph();
    let scheme = emb.derive_dagger();
    let persp = scheme_perspective(&scheme)?;

    let l_exp = las_vergnas_embedded(&scheme, Method::Expansion, cfg)?;
    let l_rec = las_vergnas_embedded(&scheme, Method::Recursion, cfg)?;
    report.push("L(G,Σ) expansion = recursion", symbolic(&l_exp, &l_rec));
    let p_exp = tutte_perspective(&persp, Method::Expansion, cfg)?;
    let p_rec = tutte_perspective(&persp, Method::Recursion, cfg)?;
    report.push("T(B(G†)→C(G)) expansion = recursion", symbolic(&p_exp, &p_rec));
    report.push("L(G,Σ) = T(B(G†)→C(G))", symbolic(&l_exp, &p_exp));

    // (iii) specializations of the perspective polynomial.
    let (m, mp) = (persp.m(), persp.m_prime());
    let t_m = tutte(m, cfg)?;
    let t_mp = tutte(mp, cfg)?;
    let rank_gap = m.full_rank() as i64 - mp.full_rank() as i64;
    report.push(
        "(iii) T_M(x,y) = T_{M→M'}(x,y,x-1)",
        compare(
            &samples,
            |s| t_m.eval(&pt(&s[0], &s[1], &q(0))),
            |s| p_exp.eval(&pt(&s[0], &s[1], &(&s[0] - q(1)))),
        ),
    );
    report.push(
        "(iii) T_M'(x,y) = (y-1)^(r(M)-r(M')) T_{M→M'}(x,y,1/(y-1))",
        compare(
            &samples,
            |s| t_mp.eval(&pt(&s[0], &s[1], &q(0))),
            |s| {
                let y1 = &s[1] - q(1);
                pow_rational(&y1, rank_gap) * p_exp.eval(&pt(&s[0], &s[1], &y1.recip()))
            },
        ),
    );

    // Dichromatic polynomial of the underlying graph.
    let t_g = tutte(&RankMatroid::cycle(g), cfg)?;
    let z_g = dichromatic(g, cfg)?;
    let c_g = g.components(g.edges())? as i64;
    let v_g = g.num_vertices() as i64;
    report.push(
        "Z_G(x,y) = (x/y)^c(G) y^v(G) T_G((x+y)/y, y+1)",
        compare(
            &samples,
            |s| z_g.eval(&pt(&s[0], &s[1], &q(0))),
            |s| {
                let (x, y) = (&s[0], &s[1]);
                pow_rational(&(x / y), c_g)
                    * pow_rational(y, v_g)
                    * t_g.eval(&pt(&((x + y) / y), &(y + q(1)), &q(0)))
            },
        ),
    );

    if emb.has_pinch() {
        let why = "pseudo-surface";
        for name in ["(vii)", "(i)", "(ii)", "(iv)", "(v)", "(vi)", "(viii)"] {
            report.push(name, Outcome::Skipped(why.into()));
        }
        return Ok(report);
    }

    // (vii) holds on every surface.
    let k = krushkal(emb, cfg)?;
    let all = emb.edges();
    let gamma_n = r.total_genus() as i64;
    let gamma_c = emb.complement_stats(all)?.genus_complement;
    let k_at_lv = |s: &[BigRational; 4]| {
        // z = w^2, a = 1/z, b = z.
        let w = &s[3];
        let p = Point::zeros()
            .with(Var::X, &s[0] - q(1))
            .with(Var::Y, &s[1] - q(1))
            .with_root(Var::A, w.recip())
            .with_root(Var::B, w.clone());
        k.eval(&p)
    };
    report.push(
        "(vii) L(G,Σ) = z^((γ(N(E))-γ(Σ∖E))/2) K(x-1,y-1,1/z,z)",
        compare(
            &samples,
            |s| l_exp.eval(&pt(&s[0], &s[1], &(&s[3] * &s[3]))),
            |s| pow_rational(&s[3], gamma_n - gamma_c) * k_at_lv(s),
        ),
    );

    if !emb.is_cellular() {
        for name in ["(i)", "(ii)", "(iv)", "(v)", "(vi)", "(viii)"] {
            report.push(name, Outcome::Skipped("non-cellular".into()));
        }
        return Ok(report);
    }

    let l = las_vergnas_cellular(r, cfg)?;
    report.push("L_G from genus data = L(G,Σ)", symbolic(&l, &l_exp));
    let gamma = r.total_genus() as i64;
    report.push(
        "(i) (y-1)^γ L(x,y,1/(y-1)) = T_G(x,y)",
        compare(
            &samples,
            |s| {
                let y1 = &s[1] - q(1);
                pow_rational(&y1, gamma) * l.eval(&pt(&s[0], &s[1], &y1.recip()))
            },
            |s| t_g.eval(&pt(&s[0], &s[1], &q(0))),
        ),
    );

    let d = r.dual()?;
    let dg = d.graph().counter();
    let gc = g.counter();
    let mut stats: BTreeMap<SubsetStats, u64> = BTreeMap::new();
    let ce = gc.count(all) as i64;
    for a in all.subsets() {
        let ac = all.difference(a);
        let ca = gc.count(a) as i64;
        let st = SubsetStats {
            rank_drop: ca - ce,
            nullity: a.len() as i64 - (v_g - ca),
            genus: r.genus(a) as i64,
            dual_genus: d.genus(ac) as i64,
            components: ca,
            dual_components: dg.count(ac) as i64,
            size: a.len() as i64,
        };
        *stats.entry(st).or_insert(0) += 1;
    }
    let state_sum = |f: &dyn Fn(&SubsetStats) -> BigRational| -> BigRational {
        stats
            .iter()
            .fold(BigRational::zero(), |acc, (st, &n)| acc + f(st) * q(n as i64))
    };

    report.push(
        "(ii) (z(y-1))^γ L(x,y,1/(z^2(y-1))) = Σ (x-1)^(r(E)-r(A)) (y-1)^n(A) z^(γ(A)-γ*(A^c))",
        compare(
            &samples,
            |s| {
                let (x, y, z) = (&s[0], &s[1], &s[2]);
                let y1 = y - q(1);
                let zz = (z * z * &y1).recip();
                pow_rational(&(z * &y1), gamma) * l.eval(&pt(x, y, &zz))
            },
            |s| {
                let (x1, y1, z) = (&s[0] - q(1), &s[1] - q(1), &s[2]);
                state_sum(&|st| {
                    pow_rational(&x1, st.rank_drop)
                        * pow_rational(&y1, st.nullity)
                        * pow_rational(z, st.genus - st.dual_genus)
                })
            },
        ),
    );

    let dual_nullity = d.num_edges() as i64 - d.num_vertices() as i64 + dg.count(all) as i64;
    report.push(
        "(iv) L = (1/((x-1)(y-1)))^c(G) z^n(G*) Σ ((x-1)/z)^c(A) ((y-1)z)^c*(A^c) (1/z)^|A|",
        compare(
            &samples,
            |s| l.eval(&pt(&s[0], &s[1], &s[2])),
            |s| {
                let (x1, y1, z) = (&s[0] - q(1), &s[1] - q(1), &s[2]);
                let pre = pow_rational(&(&x1 * &y1).recip(), c_g) * pow_rational(z, dual_nullity);
                pre * state_sum(&|st| {
                    pow_rational(&(&x1 / z), st.components)
                        * pow_rational(&(&y1 * z), st.dual_components)
                        * pow_rational(&z.recip(), st.size)
                })
            },
        ),
    );

    let br = bollobas_riordan(r, cfg)?;
    report.push(
        "(v) R(x,y,z) = y^(γ/2) K(x-1,y,yz^2,1/y)",
        compare(
            &samples,
            |s| br.eval(&pt(&s[0], &(&s[3] * &s[3]), &s[2])),
            |s| {
                // y = w^2.
                let (x, z, w) = (&s[0], &s[2], &s[3]);
                let p = Point::zeros()
                    .with(Var::X, x - q(1))
                    .with(Var::Y, w * w)
                    .with_root(Var::A, w * z)
                    .with_root(Var::B, w.recip());
                pow_rational(w, gamma) * k.eval(&p)
            },
        ),
    );
    report.push(
        "(vi) L(x,y,z) = z^(γ/2) K(x-1,y-1,1/z,z)",
        compare(
            &samples,
            |s| l.eval(&pt(&s[0], &s[1], &(&s[3] * &s[3]))),
            |s| pow_rational(&s[3], gamma) * k_at_lv(s),
        ),
    );
    report.push(
        "(viii) R(x,y,1) = y^γ L(x,y+1,1/y)",
        compare(
            &samples,
            |s| br.eval(&pt(&s[0], &s[1], &q(1))),
            |s| pow_rational(&s[1], gamma) * l.eval(&pt(&s[0], &(&s[1] + q(1)), &s[1].recip())),
        ),
    );
    report.push(
        "T_G(x,y) = R(x,y-1,1)",
        compare(
            &samples,
            |s| t_g.eval(&pt(&s[0], &s[1], &q(0))),
            |s| br.eval(&pt(&s[0], &(&s[1] - q(1)), &q(1))),
        ),
    );
    Ok(report)
}
