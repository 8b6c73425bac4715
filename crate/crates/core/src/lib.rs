//! Exact velocity polytopes of periodic graphs.
//!
//! A periodic graph is given by its finite displacement graph: a directed
//! multigraph whose edges carry integer displacement vectors. From it this
//! crate computes simple cycles and basic velocities, the velocity polytope
//! (the convex hull of the basic velocities), the Minkowski gauge whose unit
//! ball is that polytope, connectivity verdicts, explicit trajectories
//! realizing any convex combination of basic velocities, and a graph
//! realizing any given rational polytope. All arithmetic is exact.

pub mod budget;
pub mod cli;
pub mod connectivity;
pub mod cycles;
pub mod dynamics;
pub mod error;
pub mod graph;
pub mod lattice;
pub mod lp;
pub mod patch;
pub mod polytope;
pub mod rational;
pub mod realizer;
pub mod svg;
pub mod velocity;

pub use budget::Budgets;
pub use connectivity::{connectivity_report, ConnectivityReport, Verdict};
pub use cycles::{
    basic_velocities, decompose_path, enumerate_cycles, path_displacement, Cycle,
    CycleDecomposition, PathRef,
};
pub use dynamics::{
    build_plan, convergence_check, empirical_velocity, schedule, TrajectoryPlan, TrajectoryPrefix,
};
pub use error::{Error, Result};
pub use graph::{parse_dgf, serialize_dgf, DisplacementGraph, GaugeFunction, IntVec};
pub use patch::{bfs_distance, gamma_norm_oracle, unroll, Distance, UnrolledPatch};
pub use polytope::{
    anisotropy, contains_point, contains_polytope, convex_hull, dimensionality, gauge_norm,
    is_symmetric, Anisotropy, Facet, Gauge, RationalPolytope,
};
pub use rational::{Rational, RationalVec};
pub use realizer::{realize, roundtrip_check};
pub use velocity::{velocity_polytope, velocity_set, VelocitySet};
