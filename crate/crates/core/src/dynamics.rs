//! Finite trajectory prefixes: empirical velocities, the distance bound to
//! the velocity polytope, and the block schedule that realizes a prescribed
//! convex combination of basic velocities.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::budget::DEFAULT_PREFIX_EDGES;
use crate::cycles::{is_simple_cycle, sum_displacements, Cycle, PathRef};
use crate::error::{Error, Result};
use crate::graph::{strongly_connected_components, DisplacementGraph};
use crate::polytope::{distance_inf, RationalPolytope};
use crate::rational::{Rational, RationalVec};

/// The first `n` steps of a trajectory, as a path in the quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrajectoryPrefix {
    pub path: PathRef,
}

impl TrajectoryPrefix {
    pub fn new(path: PathRef) -> Self {
        TrajectoryPrefix { path }
    }

    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }
}

/// `w_n = δ(f_1 … f_n) / n`.
pub fn empirical_velocity(g: &DisplacementGraph, prefix: &TrajectoryPrefix) -> Result<RationalVec> {
    if prefix.is_empty() {
        return Err(Error::InvalidPath("empirical velocity needs n ≥ 1".into()));
    }
    prefix.path.validate(g)?;
    let n = BigInt::from(prefix.len());
    Ok(RationalVec(
        sum_displacements(g, &prefix.path.edges)
            .into_iter()
            .map(|x| Rational::new(BigInt::from(x), n.clone()))
            .collect(),
    ))
}

/// `2|V|C/n`, the bound on the ∞-distance from `w_n` to the velocity
/// polytope for any prefix of length `n`.
pub fn claim_bound(g: &DisplacementGraph, n: usize) -> Rational {
    Rational::new(
        BigInt::from(2 * g.vertex_count() as i64 * g.max_displacement_norm()),
        BigInt::from(n),
    )
}

/// Exact ∞-distance from the prefix's empirical velocity to `p`.
pub fn convergence_check(
    g: &DisplacementGraph,
    prefix: &TrajectoryPrefix,
    p: &RationalPolytope,
) -> Result<Rational> {
    let w = empirical_velocity(g, prefix)?;
    distance_inf(p, &w)
}

/// Weighted cycles `(c_i, λ_i)` and connectors `p_i : t(c_i) → s(c_{i+1})`
/// (indices mod `r`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrajectoryPlan {
    pub cycles: Vec<(Cycle, Rational)>,
    pub connectors: Vec<PathRef>,
}

impl TrajectoryPlan {
    /// `Σ λ_i δ(c_i)/|c_i|`.
    pub fn target_velocity(&self, g: &DisplacementGraph) -> RationalVec {
        self.cycles
            .iter()
            .fold(RationalVec::zero(g.dim()), |acc, (c, w)| acc.add(&c.velocity(g).scale(w)))
    }

    /// `α_ik = ⌊k λ_i / |c_i|⌋`.
    pub fn repetitions(&self, k: u64) -> Vec<u64> {
        self.cycles
            .iter()
            .map(|(c, w)| {
                let r = w * Rational::from_integer(BigInt::from(k)) / Rational::from_integer(BigInt::from(c.len()));
                u64::try_from(r.floor().to_integer()).expect("nonnegative repetition count")
            })
            .collect()
    }

    /// `|q_k| = Σ α_ik |c_i| + Σ |p_i|`.
    pub fn block_len(&self, k: u64) -> u64 {
        let cycles: u64 = self
            .repetitions(k)
            .iter()
            .zip(&self.cycles)
            .map(|(a, (c, _))| a * c.len() as u64)
            .sum();
        cycles + self.connectors.iter().map(|p| p.len() as u64).sum::<u64>()
    }

    /// `q_k = c_1^{α_1k} p_1 … c_r^{α_rk} p_r`.
    pub fn block(&self, k: u64) -> Vec<usize> {
        let mut q = Vec::with_capacity(self.block_len(k) as usize);
        for (((c, _), alpha), p) in self.cycles.iter().zip(self.repetitions(k)).zip(&self.connectors) {
            for _ in 0..alpha {
                q.extend_from_slice(&c.edges);
            }
            q.extend_from_slice(&p.edges);
        }
        q
    }
}

/// Shortest path in the quotient from `from` to `to`; among shortest paths
/// the BFS explores outgoing edges by increasing id.
fn shortest_path(g: &DisplacementGraph, from: usize, to: usize) -> Option<PathRef> {
    if from == to {
        return Some(PathRef::default());
    }
    let mut parent: Vec<Option<usize>> = vec![None; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        for &e in g.out_edges(u) {
            let w = g.edge(e).target;
            if seen[w] {
                continue;
            }
            seen[w] = true;
            parent[w] = Some(e);
            if w == to {
                let mut edges = Vec::new();
                let mut cur = to;
                while let Some(e) = parent[cur] {
                    edges.push(e);
                    cur = g.edge(e).source;
                    if cur == from {
                        break;
                    }
                }
                edges.reverse();
                return Some(PathRef::new(edges));
            }
            queue.push_back(w);
        }
    }
    None
}

pub fn build_plan(g: &DisplacementGraph, weighted_cycles: &[(Cycle, Rational)]) -> Result<TrajectoryPlan> {
    g.require_nonempty()?;
    let comps = strongly_connected_components(g);
    if comps.len() > 1 {
        return Err(Error::NotStronglyConnected(comps.len()));
    }
    if weighted_cycles.is_empty() {
        return Err(Error::InvalidWeights("at least one cycle is required".into()));
    }
    let mut total = Rational::zero();
    for (c, w) in weighted_cycles {
        if !w.is_positive() {
            return Err(Error::InvalidWeights(format!("weight {w} is not positive")));
        }
        if !is_simple_cycle(g, &c.edges) {
            return Err(Error::InvalidPath(format!("{:?} is not a simple cycle", c.edges)));
        }
        total += w;
    }
    if !total.is_one() {
        return Err(Error::InvalidWeights(format!("weights sum to {total}, not 1")));
    }
    let r = weighted_cycles.len();
    let connectors = (0..r)
        .map(|i| {
            let from = weighted_cycles[i].0.start(g);
            let to = weighted_cycles[(i + 1) % r].0.start(g);
            shortest_path(g, from, to).expect("strongly connected quotient")
        })
        .collect();
    Ok(TrajectoryPlan {
        cycles: weighted_cycles.to_vec(),
        connectors,
    })
}

pub fn schedule(plan: &TrajectoryPlan, k_max: u64) -> Result<TrajectoryPrefix> {
    schedule_with_budget(plan, k_max, DEFAULT_PREFIX_EDGES)
}

/// The prefix `q_1 q_2 q_2 q_3 q_3 q_3 … (q_{k_max})^{k_max}`.
pub fn schedule_with_budget(plan: &TrajectoryPlan, k_max: u64, max_edges: u64) -> Result<TrajectoryPrefix> {
    if k_max == 0 {
        return Err(Error::Invalid("k_max must be at least 1".into()));
    }
    let mut total: u64 = 0;
    for k in 1..=k_max {
        total = plan
            .block_len(k)
            .checked_mul(k)
            .and_then(|b| total.checked_add(b))
            .filter(|&t| t <= max_edges)
            .ok_or(Error::BudgetExceeded {
                what: "prefix edge",
                limit: max_edges,
                context: String::new(),
            })?;
    }
    let mut edges = Vec::with_capacity(total as usize);
    for k in 1..=k_max {
        let q = plan.block(k);
        for _ in 0..k {
            edges.extend_from_slice(&q);
        }
    }
    Ok(TrajectoryPrefix::new(PathRef::new(edges)))
}

/// Uniform random walk over outgoing edges with a fixed seed.
pub fn random_walk(g: &DisplacementGraph, start: usize, len: usize, seed: u64) -> Result<PathRef> {
    if start >= g.vertex_count() {
        return Err(Error::Invalid(format!("start vertex {start} out of range")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = start;
    let mut edges = Vec::with_capacity(len);
    for _ in 0..len {
        let &e = g
            .out_edges(v)
            .choose(&mut rng)
            .ok_or_else(|| Error::InvalidPath(format!("walk stuck at `{}`", g.vertex_name(v))))?;
        edges.push(e);
        v = g.edge(e).target;
    }
    Ok(PathRef::new(edges))
}
