#![allow(dead_code)]

use rand::Rng;
use signed_inertia::sgraph::{Sign, SignedGraph, SwitchingFunction};

pub fn random_sign<R: Rng>(rng: &mut R) -> Sign {
    Sign::from_bool(rng.gen_bool(0.5))
}

/// Random tree on `n` vertices: vertex `i` hangs off a random earlier vertex.
pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> SignedGraph {
    let edges: Vec<_> = (1..n).map(|i| (rng.gen_range(0..i), i, random_sign(rng))).collect();
    SignedGraph::from_edge_list(n, edges).unwrap()
}

/// Random tree plus one extra edge (connected unicyclic).
pub fn random_unicyclic<R: Rng>(rng: &mut R, n: usize) -> SignedGraph {
    assert!(n >= 3);
    loop {
        let t = random_tree(rng, n);
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v && !t.has_edge(u, v) {
            let mut e = t.triples();
            e.push((u, v, random_sign(rng)));
            return SignedGraph::from_edge_list(n, e).unwrap();
        }
    }
}

/// Random connected graph: a random tree plus each other pair with
/// probability `p`, random signs.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, p: f64) -> SignedGraph {
    let t = random_tree(rng, n);
    let mut e = t.triples();
    for u in 0..n {
        for v in u + 1..n {
            if !t.has_edge(u, v) && rng.gen_bool(p) {
                e.push((u, v, random_sign(rng)));
            }
        }
    }
    SignedGraph::from_edge_list(n, e).unwrap()
}

/// Random graph, not necessarily connected.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> SignedGraph {
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                e.push((u, v, random_sign(rng)));
            }
        }
    }
    SignedGraph::from_edge_list(n, e).unwrap()
}

pub fn random_switching<R: Rng>(rng: &mut R, n: usize) -> SwitchingFunction {
    SwitchingFunction::new((0..n).map(|_| random_sign(rng)).collect())
}

pub fn all_sign_vectors(k: usize) -> impl Iterator<Item = Vec<Sign>> {
    (0u32..1 << k).map(move |m| (0..k).map(|i| Sign::from_bool(m >> i & 1 == 0)).collect())
}
