//! Finite windows of the unrolled periodic graph and BFS distances in them.

use std::collections::VecDeque;
use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::budget::DEFAULT_PATCH_VERTICES;
use crate::error::{Error, Result};
use crate::graph::{strongly_connected_components, DisplacementGraph, IntVec};
use crate::rational::Rational;

/// The vertices `(v, x)` with `‖x‖∞ ≤ radius` of the periodic graph, with
/// every edge `(e, x) : (s(e), x) → (t(e), x + δ(e))` whose target stays in
/// the window. Adjacency is derived on demand.
#[derive(Clone, Debug)]
pub struct UnrolledPatch<'g> {
    graph: &'g DisplacementGraph,
    radius: i64,
    side: usize,
    cells: usize,
}

/// A patch vertex: quotient vertex plus lattice translate.
pub type PatchVertex = (usize, IntVec);

pub fn unroll(g: &DisplacementGraph, radius: usize) -> Result<UnrolledPatch<'_>> {
    unroll_with_budget(g, radius, DEFAULT_PATCH_VERTICES)
}

pub fn unroll_with_budget(g: &DisplacementGraph, radius: usize, max_vertices: u64) -> Result<UnrolledPatch<'_>> {
    g.require_nonempty()?;
    if radius == 0 {
        return Err(Error::Invalid("patch radius must be at least 1".into()));
    }
    let side = 2 * radius + 1;
    let exceeded = || Error::BudgetExceeded {
        what: "patch vertex",
        limit: max_vertices,
        context: String::new(),
    };
    let mut cells: u64 = 1;
    for _ in 0..g.dim() {
        cells = cells.checked_mul(side as u64).ok_or_else(exceeded)?;
    }
    let total = cells
        .checked_mul(g.vertex_count() as u64)
        .ok_or_else(exceeded)?;
    if total > max_vertices {
        return Err(exceeded());
    }
    Ok(UnrolledPatch {
        graph: g,
        radius: radius as i64,
        side,
        cells: cells as usize,
    })
}

impl<'g> UnrolledPatch<'g> {
    pub fn graph(&self) -> &'g DisplacementGraph {
        self.graph
    }

    pub fn radius(&self) -> usize {
        self.radius as usize
    }

    /// `|V| · (2R + 1)^d`.
    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count() * self.cells
    }

    pub fn contains(&self, v: &PatchVertex) -> bool {
        v.0 < self.graph.vertex_count()
            && v.1.len() == self.graph.dim()
            && v.1.iter().all(|x| x.abs() <= self.radius)
    }

    fn cell_of(&self, x: &[i64]) -> Option<usize> {
        let mut idx = 0usize;
        for &c in x.iter().rev() {
            if c.abs() > self.radius {
                return None;
            }
            idx = idx * self.side + (c + self.radius) as usize;
        }
        Some(idx)
    }

    pub fn id(&self, v: &PatchVertex) -> Option<usize> {
        if !self.contains(v) {
            return None;
        }
        self.cell_of(&v.1).map(|c| v.0 * self.cells + c)
    }

    pub fn vertex(&self, id: usize) -> PatchVertex {
        let v = id / self.cells;
        let mut cell = id % self.cells;
        let mut x = Vec::with_capacity(self.graph.dim());
        for _ in 0..self.graph.dim() {
            x.push((cell % self.side) as i64 - self.radius);
            cell /= self.side;
        }
        (v, x)
    }

    fn for_each_successor(&self, id: usize, mut f: impl FnMut(usize)) {
        let v = id / self.cells;
        let (_, x) = self.vertex(id);
        let mut y = x.clone();
        for &e in self.graph.out_edges(v) {
            let edge = self.graph.edge(e);
            for ((yi, xi), di) in y.iter_mut().zip(&x).zip(&edge.displacement) {
                *yi = xi + di;
            }
            if let Some(c) = self.cell_of(&y) {
                f(edge.target * self.cells + c);
            }
        }
    }

    /// Number of edges whose source and target both lie in the window.
    pub fn edge_count(&self) -> usize {
        let mut count = 0;
        for id in 0..self.vertex_count() {
            self.for_each_successor(id, |_| count += 1);
        }
        count
    }

    /// Debug dump: one line `NAME x1 … xd` per patch vertex, in id order.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for id in 0..self.vertex_count() {
            let (v, x) = self.vertex(id);
            s.push_str(self.graph.vertex_name(v));
            for c in x {
                let _ = write!(s, " {c}");
            }
            s.push('\n');
        }
        s
    }

    /// BFS distances from `from` to every patch vertex (`u32::MAX` where
    /// unreachable inside the window). Stops early once `stop` is settled.
    fn bfs(&self, from: usize, stop: Option<usize>) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[from] = 0;
        queue.push_back(from);
        while let Some(u) = queue.pop_front() {
            if Some(u) == stop {
                break;
            }
            let du = dist[u];
            self.for_each_successor(u, |w| {
                if dist[w] == u32::MAX {
                    dist[w] = du + 1;
                    queue.push_back(w);
                }
            });
        }
        dist
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Distance {
    Steps(u64),
    /// No path inside the window. This bounds nothing about the infinite
    /// graph.
    Unreachable,
}

impl Distance {
    pub fn steps(self) -> Option<u64> {
        match self {
            Distance::Steps(s) => Some(s),
            Distance::Unreachable => None,
        }
    }
}

/// Directed shortest-path edge count between two patch vertices, using only
/// edges inside the window.
pub fn bfs_distance(patch: &UnrolledPatch<'_>, from: &PatchVertex, to: &PatchVertex) -> Result<Distance> {
    let a = patch.id(from).ok_or(Error::OutsidePatch)?;
    let b = patch.id(to).ok_or(Error::OutsidePatch)?;
    let dist = patch.bfs(a, Some(b));
    Ok(match dist[b] {
        u32::MAX => Distance::Unreachable,
        d => Distance::Steps(d as u64),
    })
}

/// Window radius that keeps some shortest path from `v` to `v + n·x` inside
/// the patch: `n · (‖x‖∞ + C + 1)`.
pub fn oracle_radius(g: &DisplacementGraph, x: &[i64], n: u64) -> usize {
    let xn = x.iter().map(|c| c.abs()).max().unwrap_or(0);
    (n as i64 * (xn + g.max_displacement_norm() + 1)) as usize
}

/// `d(v, v + n·x) / n` for the base vertex `v` = vertex 0 at the origin.
///
/// Converges to the Γ-norm of `x` as `n → ∞`; finite values depend on the
/// base vertex.
pub fn gamma_norm_oracle(g: &DisplacementGraph, x: &[i64], n: u64, radius: usize) -> Result<Rational> {
    gamma_norm_oracle_with_budget(g, x, n, radius, DEFAULT_PATCH_VERTICES)
}

pub fn gamma_norm_oracle_with_budget(
    g: &DisplacementGraph,
    x: &[i64],
    n: u64,
    radius: usize,
    max_vertices: u64,
) -> Result<Rational> {
    g.require_nonempty()?;
    if x.len() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: x.len(),
        });
    }
    if n == 0 {
        return Err(Error::Invalid("n must be positive".into()));
    }
    let comps = strongly_connected_components(g);
    if comps.len() > 1 {
        return Err(Error::NotStronglyConnected(comps.len()));
    }
    let patch = unroll_with_budget(g, radius, max_vertices)?;
    let origin = (0, vec![0; g.dim()]);
    let target = (0, x.iter().map(|c| c * n as i64).collect());
    if !patch.contains(&target) {
        return Err(Error::Unreachable);
    }
    match bfs_distance(&patch, &origin, &target)? {
        Distance::Steps(d) => Ok(Rational::new(BigInt::from(d), BigInt::from(n))),
        Distance::Unreachable => Err(Error::Unreachable),
    }
}
