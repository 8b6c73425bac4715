//! Velocity polytopes: the convex hull of basic velocities, per strongly
//! connected component of the quotient.

use crate::budget::Budgets;
use crate::cycles::{enumerate_cycles, velocities_of};
use crate::error::{Error, Result};
use crate::graph::{strongly_connected_components, DisplacementGraph};
use crate::polytope::{convex_hull_with_budget, RationalPolytope};

/// Velocity polytope of a graph whose quotient is strongly connected.
///
/// A graph without cycles has no infinite trajectory; its polytope is
/// empty.
pub fn velocity_polytope(g: &DisplacementGraph) -> Result<RationalPolytope> {
    velocity_polytope_with_budget(g, &Budgets::default())
}

pub fn velocity_polytope_with_budget(g: &DisplacementGraph, budgets: &Budgets) -> Result<RationalPolytope> {
    g.require_nonempty()?;
    let comps = strongly_connected_components(g);
    if comps.len() > 1 {
        return Err(Error::NotStronglyConnected(comps.len()));
    }
    hull_of_cycles(g, budgets)
}

fn hull_of_cycles(g: &DisplacementGraph, budgets: &Budgets) -> Result<RationalPolytope> {
    let cycles = enumerate_cycles(g, budgets.cycles)?;
    if cycles.is_empty() {
        return Ok(RationalPolytope::empty(g.dim()));
    }
    convex_hull_with_budget(&velocities_of(g, &cycles), budgets.hull_subsets)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VelocityComponent {
    /// Index into [`strongly_connected_components`].
    pub scc: usize,
    pub vertices: Vec<usize>,
    pub polytope: RationalPolytope,
}

/// The velocity set as a union of per-component polytopes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VelocitySet {
    pub components: Vec<VelocityComponent>,
}

pub fn velocity_set(g: &DisplacementGraph) -> Result<VelocitySet> {
    velocity_set_with_budget(g, &Budgets::default())
}

/// One polytope per strongly connected component that contains a cycle.
pub fn velocity_set_with_budget(g: &DisplacementGraph, budgets: &Budgets) -> Result<VelocitySet> {
    g.require_nonempty()?;
    let mut components = Vec::new();
    for (scc, verts) in strongly_connected_components(g).into_iter().enumerate() {
        let (sub, _) = g.induced_subgraph(&verts);
        let polytope = hull_of_cycles(&sub, budgets)?;
        if !polytope.is_empty() {
            components.push(VelocityComponent {
                scc,
                vertices: verts,
                polytope,
            });
        }
    }
    Ok(VelocitySet { components })
}
