//! Acceptance gate: one line per criterion, then a single assertion.

use std::io::Write;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use topotutte::corpus::{self, CorpusEntry};
use topotutte::embedding::{EdgeClass, EmbeddedGraph};
use topotutte::matroid::{MatroidPerspective, RankMatroid};
use topotutte::poly::identities::{verify_identities, Outcome, DEFAULT_POINTS};
use topotutte::poly::invariants::{
    las_vergnas_cellular, las_vergnas_embedded, scheme_perspective, tutte_perspective, Config, Method,
};
use topotutte::states::{profile_polynomial, GraphState, States};
use topotutte::{EdgeSet, Exec};

type Verdict = Result<String, String>;
type Criterion<'a> = (&'static str, Duration, Box<dyn Fn() -> Verdict + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn theta_on_torus() -> Verdict {
    let cfg = Config::default();
    let expected = "1 + 3z + 2z^2 + xz^2";
    let r = corpus::theta(true);
    let s = EmbeddedGraph::cellular(r.clone()).map_err(|e| e.to_string())?.derive_dagger();
    let p = scheme_perspective(&s).map_err(|e| e.to_string())?;
    let routes = [
        ("cellular expansion", las_vergnas_cellular(&r, &cfg)),
        ("extended expansion", las_vergnas_embedded(&s, Method::Expansion, &cfg)),
        ("scheme recursion", las_vergnas_embedded(&s, Method::Recursion, &cfg)),
        ("perspective", tutte_perspective(&p, Method::Expansion, &cfg)),
    ];
    for (name, l) in routes {
        let l = l.map_err(|e| e.to_string())?.to_string();
        ensure(l == expected, || format!("{name} gave {l}"))?;
    }
    Ok(format!("L = {expected} by 4 routes"))
}

fn expansion_recursion(corpus: &[CorpusEntry]) -> Verdict {
    let cfg = Config::default();
    for entry in corpus {
        let s = entry.embedding.derive_dagger();
        let err = |e: topotutte::poly::invariants::PolyError| format!("{}: {e}", entry.name);
        let le = las_vergnas_embedded(&s, Method::Expansion, &cfg).map_err(err)?;
        let lr = las_vergnas_embedded(&s, Method::Recursion, &cfg).map_err(err)?;
        ensure(le == lr, || format!("{}: L expansion {le} != recursion {lr}", entry.name))?;
        let p = scheme_perspective(&s).map_err(err)?;
        let te = tutte_perspective(&p, Method::Expansion, &cfg).map_err(err)?;
        let tr = tutte_perspective(&p, Method::Recursion, &cfg).map_err(err)?;
        ensure(te == tr, || format!("{}: T expansion {te} != recursion {tr}", entry.name))?;
    }
    Ok(format!("{} embeddings", corpus.len()))
}

fn matroid_cross_checks(corpus: &[CorpusEntry]) -> Verdict {
    let mut checked = 0u64;
    for entry in corpus {
        let emb = &entry.embedding;
        let s = emb.derive_dagger();
        let (b, c) = s.matroids();
        let rho0 = s.rho(EdgeSet::empty()) as i64;
        for a in s.edges().subsets() {
            let want = a.len() as i64 - s.rho(a) as i64 + rho0;
            ensure(b.rank_unchecked(a) as i64 == want, || format!("{}: rank at {a}", entry.name))?;
        }
        MatroidPerspective::new(b.clone(), c).map_err(|e| format!("{}: {e}", entry.name))?;
        for e in s.edges() {
            // Deletion: B(G†)∖e = B((G∖e)†), with G∖e ⊂ Σ built topologically.
            let minor = emb.delete_edge(e).map_err(|err| format!("{}: delete {e}: {err}", entry.name))?;
            let bd = b.delete(e).map_err(|err| err.to_string())?;
            let md = RankMatroid::bond(&minor.derive_dagger().dagger);
            // Contraction: topological for non-loops, region counts otherwise.
            let bc = b.contract(e).map_err(|err| err.to_string())?;
            let mc = if emb.graph().is_loop(e).unwrap_or(false) {
                RankMatroid::bond(&s.contract_edge(e).map_err(|err| err.to_string())?.dagger)
            } else {
                let minor = emb
                    .contract_nonloop(e)
                    .map_err(|err| format!("{}: contract {e}: {err}", entry.name))?;
                RankMatroid::bond(&minor.derive_dagger().dagger)
            };
            let sc = s.contract_edge(e).map_err(|err| err.to_string())?;
            for a in s.edges().without(e).subsets() {
                ensure(bd.rank_unchecked(a) == md.rank_unchecked(a), || {
                    format!("{}: deletion of {e} at {a}", entry.name)
                })?;
                ensure(bc.rank_unchecked(a) == mc.rank_unchecked(a), || {
                    format!("{}: contraction of {e} at {a}", entry.name)
                })?;
                ensure(sc.rho(a) == s.rho(a.with(e)), || format!("{}: ρ shift at {a}", entry.name))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{} embeddings, {checked} minor evaluations", corpus.len()))
}

fn edge_classes(corpus: &[CorpusEntry]) -> Verdict {
    let mut edges = 0;
    for entry in corpus {
        let emb = &entry.embedding;
        let b = RankMatroid::bond(&emb.derive_dagger().dagger);
        for e in emb.edges() {
            let c = emb.classify_edge(e).map_err(|err| format!("{}: {err}", entry.name))?;
            ensure(c.quasi_loop == b.is_loop(e).unwrap_or(false), || format!("{}: quasi-loop {e}", entry.name))?;
            ensure(c.quasi_bridge == b.is_isthmus(e).unwrap_or(false), || {
                format!("{}: quasi-bridge {e}", entry.name)
            })?;
            edges += 1;
        }
    }
    let c = corpus::torus_longitude().classify_edge(0).map_err(|e| e.to_string())?;
    ensure(c.class() == EdgeClass::QuasiBridgeOnly && !c.quasi_loop, || {
        format!("torus longitude classified {}", c.class())
    })?;
    Ok(format!("{edges} edges; torus longitude is {}", c.class()))
}

fn identity_suite(corpus: &[CorpusEntry]) -> Verdict {
    let cfg = Config::default();
    let (mut cellular, mut surface) = (0, 0);
    let full = ["(i)", "(ii)", "(iii)", "(iv)", "(v)", "(vi)", "(vii)", "(viii)"];
    for entry in corpus {
        let emb = &entry.embedding;
        let report = verify_identities(emb, &cfg, DEFAULT_POINTS).map_err(|e| format!("{}: {e}", entry.name))?;
        if let Some(f) = report.failures().next() {
            return Err(format!("{}: {f}", entry.name));
        }
        let passed = |prefix: &str| {
            report
                .checks
                .iter()
                .any(|c| c.name.starts_with(prefix) && matches!(c.outcome, Outcome::Pass(_)))
        };
        if emb.is_cellular() {
            let missing: Vec<_> = full.iter().filter(|p| !passed(p)).collect();
            ensure(missing.is_empty(), || format!("{}: {missing:?} did not run", entry.name))?;
            cellular += 1;
        } else if !emb.has_pinch() {
            ensure(passed("(vii)"), || format!("{}: (vii) did not run", entry.name))?;
            surface += 1;
        }
    }
    Ok(format!(
        "{cellular} cellular, {surface} non-cellular surfaces, {} points each",
        DEFAULT_POINTS
    ))
}

fn cellular_states(corpus: &[CorpusEntry], max_edges: usize) -> Vec<(&str, States)> {
    corpus
        .iter()
        .filter(|e| e.embedding.is_cellular() && e.embedding.edges().len() <= max_edges)
        .filter_map(|e| States::new(e.embedding.rotation().clone()).ok().map(|s| (e.name.as_str(), s)))
        .collect()
}

fn state_counting(corpus: &[CorpusEntry]) -> Verdict {
    let cfg = Config::default();
    let mut states = 0u64;
    let graphs = cellular_states(corpus, 8);
    for (name, st) in &graphs {
        if let Some((s, f, t)) = st.find_component_mismatch(Exec::default()) {
            return Err(format!("{name}: state {s}: formula {f}, tracer {t}"));
        }
        states += 3u64.pow(st.edges().len() as u32);
        let r = st.graph();
        let v = r.num_vertices() as i64;
        for w in st.edges().subsets() {
            let s = GraphState::noncrossing(st.edges(), w);
            let c = st.components(&s).map_err(|e| e.to_string())? as i64;
            let euler = 2 * r.components(w) as i64 - r.genus(w) as i64 + w.len() as i64 - v;
            let lv = st.lv_components(&s).map_err(|e| e.to_string())?;
            ensure(c == lv.formula as i64 && c == euler, || {
                format!("{name}: state {s}: c = {c}, f(W) = {}, euler form = {euler}", lv.formula)
            })?;
        }
        let profile = profile_polynomial(&st.noncrossing_profile(Exec::default(), 20).map_err(|e| e.to_string())?);
        let gf = st.br_generating_function(&cfg).map_err(|e| e.to_string())?;
        ensure(profile == gf, || format!("{name}: {profile} != {gf}"))?;
    }
    Ok(format!("{} graphs, {states} states", graphs.len()))
}

fn low_genus(corpus: &[CorpusEntry]) -> Verdict {
    let cfg = Config::default();
    let mut surfaces = [0usize; 3];
    let mut subsets = 0u64;
    let graphs = cellular_states(corpus, usize::MAX);
    for (name, st) in &graphs {
        if let Some(c) = st.find_quasi_tree_failure(Exec::default()) {
            return Err(format!("{name}: quasi-tree duality at {}: {c:?}", c.a));
        }
        subsets += st.edges().subset_count();
        let Some(surface) = st.low_genus() else {
            continue;
        };
        surfaces[surface as usize] += 1;
        if let Some((s, lv)) = st.find_min_form_failure(Exec::default()) {
            return Err(format!("{name} on the {surface}: state {s}: {lv:?}"));
        }
        let lr = st.lr_relation(&cfg).map_err(|e| e.to_string())?;
        ensure(lr.holds(), || format!("{name}: {} != {}", lr.lhs, lr.rhs))?;
    }
    Ok(format!(
        "sphere {}, projective plane {}, torus {}; quasi-trees over {subsets} subsets of {} graphs",
        surfaces[0],
        surfaces[1],
        surfaces[2],
        graphs.len()
    ))
}

fn determinism() -> Verdict {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .map_err(|e| e.to_string())?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    files.sort();
    let commands: [&[&str]; 7] = [
        &["trace"],
        &["validate"],
        &["classify"],
        &["poly", "--which", "lv-ext"],
        &["poly", "--which", "krushkal"],
        &["identities", "--suite", "all"],
        &["states"],
    ];
    let mut runs = 0;
    for f in &files {
        for cmd in commands {
            let go = || {
                Command::new(env!("CARGO_BIN_EXE_topotutte"))
                    .arg(cmd[0])
                    .arg(f)
                    .args(&cmd[1..])
                    .output()
            };
            let (a, b) = (go().map_err(|e| e.to_string())?, go().map_err(|e| e.to_string())?);
            ensure(a.stdout == b.stdout && a.stderr == b.stderr && a.status == b.status, || {
                format!("{} {}: outputs differ", cmd.join(" "), f.display())
            })?;
            runs += 1;
        }
    }
    Ok(format!("{runs} command pairs over {} files", files.len()))
}

#[test]
fn acceptance() {
    let corpus = corpus::standard();
    let criteria: Vec<Criterion> = vec![
        ("theta on the torus", Duration::from_secs(1), Box::new(theta_on_torus)),
        ("expansion = recursion", Duration::from_secs(60), Box::new(|| expansion_recursion(&corpus))),
        ("matroid cross-checks", Duration::from_secs(120), Box::new(|| matroid_cross_checks(&corpus))),
        ("edge classification", Duration::from_secs(60), Box::new(|| edge_classes(&corpus))),
        ("identity suite", Duration::from_secs(120), Box::new(|| identity_suite(&corpus))),
        ("state counting", Duration::from_secs(120), Box::new(|| state_counting(&corpus))),
        ("low-genus theorems", Duration::from_secs(120), Box::new(|| low_genus(&corpus))),
        ("determinism", Duration::from_secs(120), Box::new(determinism)),
    ];
    // Written to the handle rather than through println! so the lines show
    // up in the output of a plain `cargo test`.
    let mut out = std::io::stdout();
    let mut failed = Vec::new();
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = check();
        let took = start.elapsed();
        let verdict = match verdict {
            Ok(d) if took > *limit => Err(format!("{d}; took {took:.2?}, limit {limit:?}")),
            v => v,
        };
        match verdict {
            Ok(detail) => writeln!(out, "acceptance {}: PASS {name} ({detail}; {took:.2?})", i + 1).unwrap(),
            Err(why) => {
                writeln!(out, "acceptance {}: FAIL {name} ({why}; {took:.2?})", i + 1).unwrap();
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
