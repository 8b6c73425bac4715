//! Connectivity of the periodic graph itself, not just its quotient.
//!
//! The quotient being strongly connected is necessary but not sufficient:
//! a single vertex with loops `±2` in one dimension unrolls into two
//! components. Fix a vertex `v`. The displacements of closed walks at `v`
//! form a monoid that generates the same group, and spans the same cone, as
//! the simple-cycle displacements. The periodic graph is strongly connected
//! iff that monoid is all of `Z^d`, which for a finitely generated monoid
//! holds iff its cone is `R^d` and its group is `Z^d`.

use num_bigint::BigInt;
use num_traits::One;

use crate::budget::DEFAULT_CYCLES;
use crate::cycles::enumerate_cycles;
use crate::error::Result;
use crate::graph::{scc_membership, strongly_connected_components, DisplacementGraph};
use crate::lattice::rank_and_index;
use crate::polytope::cone_is_full;
use crate::rational::RationalVec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    StronglyConnectedPeriodic,
    QuotientConnectedOnly,
    Disconnected,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::StronglyConnectedPeriodic => "StronglyConnectedPeriodic",
            Verdict::QuotientConnectedOnly => "QuotientConnectedOnly",
            Verdict::Disconnected => "Disconnected",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityReport {
    pub scc_count: usize,
    pub scc_membership: Vec<usize>,
    /// Rank of the lattice generated by simple-cycle displacements.
    pub cycle_lattice_rank: usize,
    /// `[Z^d : L]` when the lattice has full rank.
    pub cycle_lattice_index: Option<BigInt>,
    /// The origin is interior to the hull of the cycle displacements.
    pub cone_full: bool,
    pub verdict: Verdict,
}

pub fn connectivity_report(g: &DisplacementGraph) -> Result<ConnectivityReport> {
    connectivity_report_with_budget(g, DEFAULT_CYCLES)
}

pub fn connectivity_report_with_budget(g: &DisplacementGraph, max_cycles: u64) -> Result<ConnectivityReport> {
    g.require_nonempty()?;
    let comps = strongly_connected_components(g);
    let membership = scc_membership(&comps, g.vertex_count());
    let cycles = enumerate_cycles(g, max_cycles)?;
    let displacements: Vec<Vec<i64>> = cycles.iter().map(|c| c.displacement(g)).collect();
    let (rank, index) = rank_and_index(&displacements, g.dim());
    let points: Vec<RationalVec> = displacements.iter().map(|d| RationalVec::from_ints(d)).collect();
    let cone_full = rank == g.dim() && cone_is_full(&points, g.dim());

    let verdict = if comps.len() > 1 {
        Verdict::Disconnected
    } else if rank == g.dim() && index.as_ref().is_some_and(One::is_one) && cone_full {
        Verdict::StronglyConnectedPeriodic
    } else {
        Verdict::QuotientConnectedOnly
    };
    Ok(ConnectivityReport {
        scc_count: comps.len(),
        scc_membership: membership,
        cycle_lattice_rank: rank,
        cycle_lattice_index: index,
        cone_full,
        verdict,
    })
}
