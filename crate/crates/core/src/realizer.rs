//! Displacement graphs with a prescribed velocity polytope.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::graph::{DisplacementGraph, Edge};
use crate::polytope::{contains_polytope, RationalPolytope};
use crate::velocity::velocity_polytope;

/// Largest cycle length `realize` will build.
pub const MAX_REALIZER_PERIOD: u64 = 10_000_000;

/// Builds a graph whose velocity polytope is `p`.
///
/// With `γ` the lcm of all vertex-coordinate denominators, the graph is a
/// directed chain `u1 → u2 → … → uγ` of zero-displacement edges closed by
/// one edge `uγ → u1` of displacement `γ·w` per vertex `w` of `p`. Its
/// simple cycles are exactly the closed chains, each of length `γ` with
/// basic velocity `w`.
pub fn realize(p: &RationalPolytope) -> Result<DisplacementGraph> {
    if p.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    let gamma = p
        .vertices()
        .iter()
        .fold(BigInt::one(), |acc, v| num_integer::lcm(acc, v.denominator_lcm()));
    let period = gamma
        .to_u64()
        .filter(|&g| g <= MAX_REALIZER_PERIOD)
        .ok_or_else(|| Error::BudgetExceeded {
            what: "realizer period",
            limit: MAX_REALIZER_PERIOD,
            context: format!(" (denominator lcm {gamma})"),
        })? as usize;

    let names: Vec<String> = (1..=period).map(|j| format!("u{j}")).collect();
    let mut edges: Vec<Edge> = (0..period - 1)
        .map(|j| Edge {
            source: j,
            target: j + 1,
            displacement: vec![0; p.dim()],
        })
        .collect();
    let scale = crate::rational::Rational::from_integer(gamma);
    for w in p.vertices() {
        let displacement = w
            .scale(&scale)
            .0
            .iter()
            .map(|x| {
                x.to_integer()
                    .to_i64()
                    .ok_or_else(|| Error::Invalid("realized displacement exceeds i64".into()))
            })
            .collect::<Result<Vec<i64>>>()?;
        edges.push(Edge {
            source: period - 1,
            target: 0,
            displacement,
        });
    }
    DisplacementGraph::new(p.dim(), names, edges)
}

/// Whether the velocity polytope of `realize(p)` equals `p` as a set.
pub fn roundtrip_check(p: &RationalPolytope) -> Result<bool> {
    let q = velocity_polytope(&realize(p)?)?;
    Ok(contains_polytope(&q, p)? && contains_polytope(p, &q)?)
}
