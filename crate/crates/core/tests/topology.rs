mod common;

use topotutte::corpus;
use topotutte::embedding::{EdgeClass, EmbeddedGraph};
use topotutte::matroid::{MatroidPerspective, RankMatroid};
use topotutte::{EdgeId, EdgeSet, Multigraph};

use common::sample;

fn bond_rank_formula(emb: &EmbeddedGraph) {
    let s = emb.derive_dagger();
    let b = RankMatroid::bond(&s.dagger);
    let rho0 = s.rho(EdgeSet::empty()) as i64;
    for a in emb.edges().subsets() {
        let expected = a.len() as i64 - s.rho(a) as i64 + rho0;
        assert_eq!(b.rank(a).unwrap() as i64, expected, "A = {a}");
    }
}

#[test]
fn rank_of_bond_matroid_is_region_count() {
    for entry in sample() {
        bond_rank_formula(&entry.embedding);
    }
}

#[test]
fn bond_and_cycle_form_a_perspective() {
    for entry in sample() {
        let (b, c) = entry.embedding.derive_dagger().matroids();
        MatroidPerspective::new(b, c).unwrap_or_else(|err| panic!("{}: {err}", entry.name));
    }
}

#[test]
fn bridges_do_not_change_rho() {
    for entry in sample() {
        let s = entry.embedding.derive_dagger();
        let counter = s.graph.counter();
        let all = s.edges();
        for a in all.subsets() {
            for e in all.difference(a) {
                // e joins two components of (V, A), so it is a bridge of (V, A ∪ e).
                if counter.count(a.with(e)) < counter.count(a) {
                    assert_eq!(s.rho(a.with(e)), s.rho(a), "{}: A = {a}, e = {e}", entry.name);
                }
            }
        }
    }
}

#[test]
fn deletion_matches_topological_minor() {
    for entry in sample() {
        let emb = &entry.embedding;
        let s = emb.derive_dagger();
        for e in emb.edges() {
            let minor = emb.delete_edge(e).unwrap();
            assert!(minor.validate().euler_characteristic == emb.validate().euler_characteristic);
            let scheme = s.delete_edge(e).unwrap();
            let direct = minor.derive_dagger();
            assert_eq!(direct.graph, scheme.graph);
            let (b_scheme, _) = scheme.matroids();
            let (b_direct, _) = direct.matroids();
            assert!(b_scheme.same_as(&b_direct), "{}: delete {e}", entry.name);
            let b_minor = RankMatroid::bond(&s.dagger).delete(e).unwrap();
            assert!(b_minor.same_as(&b_direct), "{}: delete {e}", entry.name);
            for a in minor.edges().subsets() {
                assert_eq!(scheme.rho(a), direct.rho(a));
            }
        }
    }
}

/// Vertices and unordered endpoint pairs; a twisted contraction may swap
/// which region counts as the left side of an edge.
fn undirected(g: &Multigraph) -> (Vec<usize>, Vec<(EdgeId, [usize; 2])>) {
    let edges = g
        .edges()
        .iter()
        .map(|e| {
            let mut ends = g.endpoints(e).unwrap();
            ends.sort_unstable();
            (e, ends)
        })
        .collect();
    (g.vertices().to_vec(), edges)
}

#[test]
fn nonloop_contraction_matches_topological_minor() {
    for entry in sample() {
        let emb = &entry.embedding;
        let s = emb.derive_dagger();
        for e in emb.edges() {
            if emb.graph().is_loop(e).unwrap() {
                continue;
            }
            let minor = emb.contract_nonloop(e).unwrap();
            let scheme = s.contract_edge(e).unwrap();
            let direct = minor.derive_dagger();
            assert_eq!(direct.graph, scheme.graph, "{}: contract {e}", entry.name);
            assert_eq!(undirected(&direct.dagger), undirected(&scheme.dagger), "{}: contract {e}", entry.name);
            let b_minor = RankMatroid::bond(&s.dagger).contract(e).unwrap();
            assert!(b_minor.same_as(&direct.matroids().0));
        }
    }
}

#[test]
fn loop_contraction_shifts_rho() {
    for entry in sample() {
        let s = entry.embedding.derive_dagger();
        let b = RankMatroid::bond(&s.dagger);
        for e in s.edges() {
            let c = s.contract_edge(e).unwrap();
            let bc = b.contract(e).unwrap();
            for a in c.edges().subsets() {
                assert_eq!(c.rho(a), s.rho(a.with(e)));
                let r = a.len() as i64 - c.rho(a) as i64 + c.rho(EdgeSet::empty()) as i64;
                assert_eq!(bc.rank(a).unwrap() as i64, r);
            }
        }
    }
}

#[test]
fn edge_classes_agree_with_bond_matroid() {
    for entry in sample() {
        let emb = &entry.embedding;
        let b = RankMatroid::bond(&emb.derive_dagger().dagger);
        for e in emb.edges() {
            let c = emb.classify_edge(e).unwrap();
            assert_eq!(c.quasi_loop, b.is_loop(e).unwrap());
            assert_eq!(c.quasi_bridge, b.is_isthmus(e).unwrap());
            assert!(!c.bridge || c.quasi_bridge);
            assert!(!c.quasi_loop || emb.graph().is_loop(e).unwrap());
        }
    }
    let torus = corpus::torus_longitude();
    let c = torus.classify_edge(0).unwrap();
    assert_eq!(c.class(), EdgeClass::QuasiBridgeOnly);
    assert!(!c.quasi_loop && !c.bridge);
}

#[test]
fn cellular_complement_is_dual_subgraph() {
    for entry in sample() {
        let emb = &entry.embedding;
        if !emb.is_cellular() {
            continue;
        }
        let dual = emb.rotation().dual().unwrap();
        for a in emb.edges().subsets() {
            let ac = emb.edges().difference(a);
            let st = emb.complement_stats(a).unwrap();
            assert_eq!(st.components, dual.components(ac));
            assert_eq!(st.genus_complement, dual.genus(ac) as i64);
            assert_eq!(st.boundary_circles, emb.rotation().circles(a));
        }
    }
}
