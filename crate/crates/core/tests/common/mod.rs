#![allow(dead_code)]

use std::path::PathBuf;

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use velo_core::graph::Edge;
use velo_core::{parse_dgf, DisplacementGraph, Rational, RationalVec};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn fixture(name: &str) -> DisplacementGraph {
    parse_dgf(&std::fs::read_to_string(fixture_path(name)).unwrap()).unwrap()
}

pub fn honeycomb() -> DisplacementGraph {
    fixture("honeycomb.dgf")
}

pub fn square() -> DisplacementGraph {
    fixture("square.dgf")
}

pub fn loops() -> DisplacementGraph {
    fixture("loops.dgf")
}

fn random_vec(rng: &mut ChaCha8Rng, dim: usize, max_abs: i64) -> Vec<i64> {
    (0..dim).map(|_| rng.gen_range(-max_abs..=max_abs)).collect()
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// Arbitrary multigraph with loops allowed.
pub fn random_graph(
    rng: &mut ChaCha8Rng,
    max_vertices: usize,
    max_edges: usize,
    dim: usize,
    max_abs: i64,
) -> DisplacementGraph {
    let n = rng.gen_range(1..=max_vertices);
    let m = rng.gen_range(0..=max_edges);
    let edges = (0..m)
        .map(|_| Edge {
            source: rng.gen_range(0..n),
            target: rng.gen_range(0..n),
            displacement: random_vec(rng, dim, max_abs),
        })
        .collect();
    DisplacementGraph::new(dim, names(n), edges).unwrap()
}

/// Strongly connected quotient: a directed Hamiltonian cycle plus extra
/// random edges, with at least one nonzero displacement.
pub fn random_strongly_connected(
    rng: &mut ChaCha8Rng,
    max_vertices: usize,
    extra_edges: usize,
    dim: usize,
    max_abs: i64,
) -> DisplacementGraph {
    let n = rng.gen_range(1..=max_vertices);
    let mut edges: Vec<Edge> = (0..n)
        .map(|i| Edge {
            source: i,
            target: (i + 1) % n,
            displacement: random_vec(rng, dim, max_abs),
        })
        .collect();
    for _ in 0..rng.gen_range(0..=extra_edges) {
        edges.push(Edge {
            source: rng.gen_range(0..n),
            target: rng.gen_range(0..n),
            displacement: random_vec(rng, dim, max_abs),
        });
    }
    if edges.iter().all(|e| e.displacement.iter().all(|&x| x == 0)) {
        edges[0].displacement[0] = 1;
    }
    DisplacementGraph::new(dim, names(n), edges).unwrap()
}

pub fn random_rational(rng: &mut ChaCha8Rng, max_den: i64, max_abs: i64) -> Rational {
    let q = rng.gen_range(1..=max_den);
    let p = rng.gen_range(-max_abs * q..=max_abs * q);
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn random_points(rng: &mut ChaCha8Rng, dim: usize, count: usize, max_den: i64) -> Vec<RationalVec> {
    (0..count)
        .map(|_| RationalVec((0..dim).map(|_| random_rational(rng, max_den, 2)).collect()))
        .collect()
}

/// Gauge values `g(v) ∈ Z^d` with entries in `[-max_abs, max_abs]`.
pub fn random_gauge(rng: &mut ChaCha8Rng, g: &DisplacementGraph, max_abs: i64) -> Vec<Vec<i64>> {
    (0..g.vertex_count()).map(|_| random_vec(rng, g.dim(), max_abs)).collect()
}
