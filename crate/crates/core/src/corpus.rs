//! Named example embeddings and a seeded random generator.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::embedding::{EmbeddedGraph, Region};
use crate::graph::Multigraph;
use crate::ribbon::{he, HalfEdge, RotationSystem, Sign};

pub const DEFAULT_SEED: u64 = 2014;
pub const DEFAULT_SIZE: usize = 240;
pub const DEFAULT_MAX_EDGES: usize = 10;

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub embedding: EmbeddedGraph,
}

impl CorpusEntry {
    fn new(name: impl Into<String>, embedding: EmbeddedGraph) -> Self {
        CorpusEntry {
            name: name.into(),
            embedding,
        }
    }
}

fn bouquet(rotation: &[(usize, u8)], signs: &[Sign]) -> RotationSystem {
    let g = Multigraph::from_edges(1, &vec![(0, 0); signs.len()]).expect("valid");
    let rot = rotation.iter().map(|&(e, end)| he(e, end)).collect();
    RotationSystem::single_sector(g, vec![rot], signs.to_vec()).expect("valid")
}

fn rotation(n: usize, edges: &[(usize, usize)], rots: &[&[(usize, u8)]], signs: &[Sign]) -> RotationSystem {
    let g = Multigraph::from_edges(n, edges).expect("valid");
    let rots = rots
        .iter()
        .map(|r| r.iter().map(|&(e, end)| he(e, end)).collect())
        .collect();
    RotationSystem::single_sector(g, rots, signs.to_vec()).expect("valid")
}

pub fn plane_edge() -> RotationSystem {
    rotation(2, &[(0, 1)], &[&[(0, 0)], &[(0, 1)]], &[Sign::Plus])
}

pub fn plane_loop() -> RotationSystem {
    bouquet(&[(0, 0), (0, 1)], &[Sign::Plus])
}

/// A `-` loop: a cellular graph on the projective plane.
pub fn projective_loop() -> RotationSystem {
    bouquet(&[(0, 0), (0, 1)], &[Sign::Minus])
}

pub fn plane_digon() -> RotationSystem {
    rotation(
        2,
        &[(0, 1), (0, 1)],
        &[&[(0, 0), (1, 0)], &[(1, 1), (0, 1)]],
        &[Sign::Plus; 2],
    )
}

/// Two interleaved loops: a cellular graph on the torus.
pub fn torus_bouquet() -> RotationSystem {
    bouquet(&[(0, 0), (1, 0), (0, 1), (1, 1)], &[Sign::Plus; 2])
}

/// Two disjoint `-` loops: a cellular graph on the Klein bottle.
pub fn klein_bouquet() -> RotationSystem {
    bouquet(&[(0, 0), (0, 1), (1, 0), (1, 1)], &[Sign::Minus; 2])
}

/// Two interleaved pairs of loops: orientable genus 2.
pub fn genus_two_bouquet() -> RotationSystem {
    bouquet(
        &[(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (3, 0), (2, 1), (3, 1)],
        &[Sign::Plus; 4],
    )
}

/// Three parallel edges between two vertices, in the plane or the torus.
pub fn theta(torus: bool) -> RotationSystem {
    let second: &[(usize, u8)] = if torus {
        &[(0, 1), (1, 1), (2, 1)]
    } else {
        &[(2, 1), (1, 1), (0, 1)]
    };
    rotation(
        2,
        &[(0, 1), (0, 1), (0, 1)],
        &[&[(0, 0), (1, 0), (2, 0)], second],
        &[Sign::Plus; 3],
    )
}

pub fn plane_k4() -> RotationSystem {
    rotation(
        4,
        &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)],
        &[
            &[(0, 0), (1, 0), (2, 0)],
            &[(3, 0), (0, 1), (5, 1)],
            &[(4, 0), (1, 1), (3, 1)],
            &[(5, 0), (2, 1), (4, 1)],
        ],
        &[Sign::Plus; 6],
    )
}

/// One vertex pinched into two sectors, each carrying a plane loop.
pub fn pinched_loops() -> RotationSystem {
    let g = Multigraph::from_edges(1, &[(0, 0), (0, 0)]).expect("valid");
    RotationSystem::new(
        g,
        vec![vec![vec![he(0, 0), he(0, 1)], vec![he(1, 0), he(1, 1)]]],
        vec![Sign::Plus; 2],
    )
    .expect("valid")
}

/// A plane loop whose two boundary circles bound one annulus: the loop is a
/// longitude of a torus.
pub fn torus_longitude() -> EmbeddedGraph {
    EmbeddedGraph::new(
        plane_loop(),
        vec![Region {
            id: 0,
            genus: 0,
            circles: vec![0, 1],
        }],
    )
    .expect("valid")
}

/// Hand-picked examples covering each surface type.
pub fn named() -> Vec<CorpusEntry> {
    let cellular = |name: &str, r: RotationSystem| CorpusEntry::new(name, EmbeddedGraph::cellular(r).expect("valid"));
    vec![
        cellular("plane-edge", plane_edge()),
        cellular("plane-loop", plane_loop()),
        cellular("projective-loop", projective_loop()),
        cellular("plane-digon", plane_digon()),
        cellular("plane-theta", theta(false)),
        cellular("torus-theta", theta(true)),
        cellular("torus-bouquet", torus_bouquet()),
        cellular("klein-bouquet", klein_bouquet()),
        cellular("genus-two-bouquet", genus_two_bouquet()),
        cellular("plane-k4", plane_k4()),
        cellular("pinched-loops", pinched_loops()),
        CorpusEntry::new("torus-longitude", torus_longitude()),
        CorpusEntry::new(
            "projective-region-edge",
            EmbeddedGraph::new(
                plane_edge(),
                vec![Region {
                    id: 0,
                    genus: 1,
                    circles: vec![0],
                }],
            )
            .expect("valid"),
        ),
    ]
}

/// A connected random embedding with at most `max_edges` edges. Surfaces
/// are mostly of Euler genus at most 3; about a tenth of the samples have a
/// pinch vertex and about half are non-cellular.
pub fn random_embedding(rng: &mut impl Rng, max_edges: usize) -> EmbeddedGraph {
    loop {
        if let Some(emb) = try_random(rng, max_edges) {
            return emb;
        }
    }
}

fn try_random(rng: &mut impl Rng, max_edges: usize) -> Option<EmbeddedGraph> {
    let n = rng.gen_range(1..=4usize).min(max_edges + 1);
    let m = rng.gen_range(n - 1..=max_edges);
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    while edges.len() < m {
        edges.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    edges.shuffle(rng);
    let graph = Multigraph::from_edges(n, &edges).ok()?;

    let mut at: Vec<Vec<HalfEdge>> = vec![Vec::new(); n];
    for (e, &(u, v)) in edges.iter().enumerate() {
        at[u].push(he(e, 0));
        at[v].push(he(e, 1));
    }
    let pinch = rng.gen_bool(0.1);
    let sectors = at
        .into_iter()
        .map(|mut hs| {
            hs.shuffle(rng);
            if pinch && hs.len() >= 2 && rng.gen_bool(0.5) {
                let cut = rng.gen_range(1..hs.len());
                let rest = hs.split_off(cut);
                vec![hs, rest]
            } else {
                vec![hs]
            }
        })
        .collect();
    let orientable = rng.gen_bool(0.5);
    let signs = (0..m)
        .map(|_| {
            if !orientable && rng.gen_bool(0.35) {
                Sign::Minus
            } else {
                Sign::Plus
            }
        })
        .collect();
    let r = RotationSystem::new(graph, sectors, signs).ok()?;

    let circles = r.trace_boundary(r.edges()).ok()?.len();
    let emb = if rng.gen_bool(0.5) {
        EmbeddedGraph::cellular(r).ok()?
    } else {
        let mut order: Vec<usize> = (0..circles).collect();
        order.shuffle(rng);
        let mut regions: Vec<Region> = Vec::new();
        for c in order {
            let k = rng.gen_range(0..=regions.len());
            match regions.get_mut(k) {
                Some(reg) => reg.circles.push(c),
                None => regions.push(Region {
                    id: k,
                    genus: [0, 0, 0, 1, 2][rng.gen_range(0..5)],
                    circles: vec![c],
                }),
            }
        }
        EmbeddedGraph::new(r, regions).ok()?
    };
    (emb.validate().euler_genus <= 3).then_some(emb)
}

/// `count` random embeddings, reproducible from `seed`.
pub fn generate(seed: u64, count: usize, max_edges: usize) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| CorpusEntry::new(format!("random-{seed}-{i:03}"), random_embedding(&mut rng, max_edges)))
        .collect()
}

/// The named examples followed by the default random sample.
pub fn standard() -> Vec<CorpusEntry> {
    let mut out = named();
    out.extend(generate(DEFAULT_SEED, DEFAULT_SIZE, DEFAULT_MAX_EDGES));
    out
}
