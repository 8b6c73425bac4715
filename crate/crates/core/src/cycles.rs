//! Paths, simple cycles and cycle decompositions of the quotient graph.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::graph::{scc_masked, DisplacementGraph, IntVec};
use crate::rational::{Rational, RationalVec};

/// A sequence of composing edges. The empty path is allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PathRef {
    pub edges: Vec<usize>,
}

impl PathRef {
    pub fn new(edges: Vec<usize>) -> Self {
        PathRef { edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Checks that every edge exists and consecutive edges compose.
    pub fn validate(&self, g: &DisplacementGraph) -> Result<()> {
        for (i, &e) in self.edges.iter().enumerate() {
            if e >= g.edge_count() {
                return Err(Error::InvalidPath(format!("edge id {e} out of range")));
            }
            if i > 0 {
                let prev = self.edges[i - 1];
                if g.edge(prev).target != g.edge(e).source {
                    return Err(Error::InvalidPath(format!(
                        "edge {prev} does not compose with edge {e}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn source(&self, g: &DisplacementGraph) -> Option<usize> {
        self.edges.first().map(|&e| g.edge(e).source)
    }

    pub fn target(&self, g: &DisplacementGraph) -> Option<usize> {
        self.edges.last().map(|&e| g.edge(e).target)
    }

    pub fn concat(&self, other: &PathRef) -> PathRef {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        PathRef { edges }
    }
}

/// `δ(p)`: sum of edge displacements; the zero vector for the empty path.
pub fn path_displacement(g: &DisplacementGraph, p: &PathRef) -> Result<IntVec> {
    p.validate(g)?;
    Ok(sum_displacements(g, &p.edges))
}

pub(crate) fn sum_displacements(g: &DisplacementGraph, edges: &[usize]) -> IntVec {
    let mut sum = vec![0i64; g.dim()];
    for &e in edges {
        for (s, x) in sum.iter_mut().zip(&g.edge(e).displacement) {
            *s += x;
        }
    }
    sum
}

/// A simple closed path: no vertex repeats except start = end.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    pub edges: Vec<usize>,
    pub canonical: bool,
}

impl Cycle {
    /// Validates `edges` as a simple cycle of `g`. The rotation is kept.
    pub fn new(g: &DisplacementGraph, edges: Vec<usize>) -> Result<Self> {
        if !is_simple_cycle(g, &edges) {
            return Err(Error::InvalidPath(format!("{edges:?} is not a simple cycle")));
        }
        Ok(Cycle {
            edges,
            canonical: false,
        })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Rotation starting at the smallest edge id.
    pub fn canonicalized(&self) -> Cycle {
        let start = self
            .edges
            .iter()
            .enumerate()
            .min_by_key(|(_, &e)| e)
            .map(|(i, _)| i)
            .unwrap_or(0);
        let mut edges = self.edges[start..].to_vec();
        edges.extend_from_slice(&self.edges[..start]);
        Cycle {
            edges,
            canonical: true,
        }
    }

    pub fn start(&self, g: &DisplacementGraph) -> usize {
        g.edge(self.edges[0]).source
    }

    pub fn as_path(&self) -> PathRef {
        PathRef::new(self.edges.clone())
    }

    pub fn displacement(&self, g: &DisplacementGraph) -> IntVec {
        sum_displacements(g, &self.edges)
    }

    /// Basic velocity `δ(c)/|c|`.
    pub fn velocity(&self, g: &DisplacementGraph) -> RationalVec {
        let len = BigInt::from(self.edges.len());
        RationalVec(
            self.displacement(g)
                .into_iter()
                .map(|x| Rational::new(BigInt::from(x), len.clone()))
                .collect(),
        )
    }

    /// Listing such as `A -e0-> B -e3-> A`.
    pub fn listing(&self, g: &DisplacementGraph) -> String {
        let mut s = g.vertex_name(self.start(g)).to_string();
        for &e in &self.edges {
            let _ = write!(s, " -e{e}-> {}", g.vertex_name(g.edge(e).target));
        }
        s
    }
}

pub fn is_simple_cycle(g: &DisplacementGraph, edges: &[usize]) -> bool {
    if edges.is_empty() || edges.iter().any(|&e| e >= g.edge_count()) {
        return false;
    }
    let n = edges.len();
    let mut seen = BTreeSet::new();
    for i in 0..n {
        let e = g.edge(edges[i]);
        let next = g.edge(edges[(i + 1) % n]);
        if e.target != next.source || !seen.insert(e.source) {
            return false;
        }
    }
    true
}

/// Total number of cycles when every rotation (start edge) is counted
/// separately.
pub fn rooted_cycle_count(cycles: &[Cycle]) -> usize {
    cycles.iter().map(Cycle::len).sum()
}

/// All simple cycles, each once in canonical rotation, sorted by edge
/// sequence.
///
/// Johnson's circuit search extended to multigraphs: parallel edges give
/// distinct cycles and self-loops are length-one cycles. Fails once more
/// than `max_cycles` cycles are found.
pub fn enumerate_cycles(g: &DisplacementGraph, max_cycles: u64) -> Result<Vec<Cycle>> {
    let n = g.vertex_count();
    let mut found: Vec<Cycle> = Vec::new();
    let mut blocked = vec![false; n];
    let mut blist: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut s = 0;

    while s < n {
        let allowed: Vec<bool> = (0..n).map(|v| v >= s).collect();
        let cyclic = scc_masked(g, &allowed).into_iter().find(|comp| {
            comp.len() > 1 || g.out_edges(comp[0]).iter().any(|&e| g.edge(e).target == comp[0])
        });
        let Some(comp) = cyclic else { break };
        s = comp[0];
        let mut in_comp = vec![false; n];
        for &v in &comp {
            in_comp[v] = true;
            blocked[v] = false;
            blist[v].clear();
        }

        circuits_from(g, s, &in_comp, &mut blocked, &mut blist, &mut found, max_cycles)
            .map_err(|e| match e {
                Error::BudgetExceeded { what, limit, .. } => Error::BudgetExceeded {
                    what,
                    limit,
                    context: format!(
                        " in strongly connected component {{{}}}",
                        comp.iter()
                            .map(|&v| g.vertex_name(v))
                            .collect::<Vec<_>>()
                            .join(", ")
                    ),
                },
                other => other,
            })?;
        s += 1;
    }

    let mut cycles: Vec<Cycle> = found.iter().map(Cycle::canonicalized).collect();
    cycles.sort();
    Ok(cycles)
}

fn circuits_from(
    g: &DisplacementGraph,
    s: usize,
    in_comp: &[bool],
    blocked: &mut [bool],
    blist: &mut [Vec<usize>],
    found: &mut Vec<Cycle>,
    max_cycles: u64,
) -> Result<()> {
    struct Frame {
        v: usize,
        pos: usize,
        closed: bool,
    }

    fn unblock(u: usize, blocked: &mut [bool], blist: &mut [Vec<usize>]) {
        let mut work = vec![u];
        while let Some(x) = work.pop() {
            if !blocked[x] {
                continue;
            }
            blocked[x] = false;
            work.append(&mut blist[x]);
        }
    }

    let mut path: Vec<usize> = Vec::new();
    let mut stack = vec![Frame {
        v: s,
        pos: 0,
        closed: false,
    }];
    blocked[s] = true;

    while let Some(top) = stack.last_mut() {
        let v = top.v;
        if let Some(&e) = g.out_edges(v).get(top.pos) {
            top.pos += 1;
            let w = g.edge(e).target;
            if !in_comp[w] {
                continue;
            }
            if w == s {
                let mut edges = path.clone();
                edges.push(e);
                found.push(Cycle {
                    edges,
                    canonical: false,
                });
                if found.len() as u64 > max_cycles {
                    return Err(Error::BudgetExceeded {
                        what: "cycle",
                        limit: max_cycles,
                        context: String::new(),
                    });
                }
                top.closed = true;
            } else if !blocked[w] {
                path.push(e);
                blocked[w] = true;
                stack.push(Frame {
                    v: w,
                    pos: 0,
                    closed: false,
                });
            }
        } else {
            let frame = stack.pop().expect("nonempty");
            if frame.closed {
                unblock(frame.v, blocked, blist);
            } else {
                for &e in g.out_edges(frame.v) {
                    let w = g.edge(e).target;
                    if in_comp[w] && !blist[w].contains(&frame.v) {
                        blist[w].push(frame.v);
                    }
                }
            }
            if let Some(parent) = stack.last_mut() {
                path.pop();
                parent.closed |= frame.closed;
            }
        }
    }
    Ok(())
}

/// Distinct basic velocities `δ(c)/|c|` over all simple cycles, sorted.
pub fn basic_velocities(g: &DisplacementGraph, max_cycles: u64) -> Result<Vec<RationalVec>> {
    let cycles = enumerate_cycles(g, max_cycles)?;
    Ok(velocities_of(g, &cycles))
}

pub(crate) fn velocities_of(g: &DisplacementGraph, cycles: &[Cycle]) -> Vec<RationalVec> {
    cycles
        .iter()
        .map(|c| c.velocity(g))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Result of excising cycles from a path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDecomposition {
    pub cycles: Vec<Cycle>,
    pub remainder: PathRef,
}

/// Excises cycles from `p` left to right: whenever the walk returns to a
/// vertex already on the reduced prefix, the closed segment is removed as a
/// cycle. What remains visits distinct vertices, so it is shorter than
/// `|V|`. Cycles keep the rotation in which they were traversed.
pub fn decompose_path(g: &DisplacementGraph, p: &PathRef) -> Result<CycleDecomposition> {
    p.validate(g)?;
    let Some(start) = p.source(g) else {
        return Ok(CycleDecomposition {
            cycles: Vec::new(),
            remainder: PathRef::default(),
        });
    };
    let mut position: Vec<Option<usize>> = vec![None; g.vertex_count()];
    let mut verts = vec![start];
    position[start] = Some(0);
    let mut rem: Vec<usize> = Vec::new();
    let mut cycles = Vec::new();

    for &e in &p.edges {
        let t = g.edge(e).target;
        match position[t] {
            Some(k) => {
                let mut edges = rem.split_off(k);
                edges.push(e);
                for &v in &verts[k + 1..] {
                    position[v] = None;
                }
                verts.truncate(k + 1);
                cycles.push(Cycle {
                    edges,
                    canonical: false,
                });
            }
            None => {
                rem.push(e);
                position[t] = Some(verts.len());
                verts.push(t);
            }
        }
    }
    Ok(CycleDecomposition {
        cycles,
        remainder: PathRef::new(rem),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::rational::ratio;

    fn rv(a: (i64, i64), b: (i64, i64)) -> RationalVec {
        RationalVec(vec![ratio(a.0, a.1), ratio(b.0, b.1)])
    }

    #[test]
    fn displacement_examples() {
        let g = honeycomb();
        assert_eq!(path_displacement(&g, &PathRef::default()).unwrap(), vec![0, 0]);
        // A->B (0,1) then B->A (1,0)
        let p = PathRef::new(vec![1, 5]);
        assert_eq!(path_displacement(&g, &p).unwrap(), vec![1, 1]);
        let q = PathRef::new(vec![2, 4]);
        assert_eq!(path_displacement(&g, &p.concat(&q)).unwrap(), vec![0, 0]);
        assert!(path_displacement(&g, &PathRef::new(vec![0, 1])).is_err());
        assert!(path_displacement(&g, &PathRef::new(vec![99])).is_err());
    }

    #[test]
    fn honeycomb_has_nine_canonical_cycles() {
        let g = honeycomb();
        let cycles = enumerate_cycles(&g, 1000).unwrap();
        assert_eq!(cycles.len(), 9);
        assert!(cycles.iter().all(|c| c.len() == 2 && c.canonical));
        assert_eq!(rooted_cycle_count(&cycles), 18);
        assert_eq!(cycles[0].listing(&g), "A -e0-> B -e3-> A");
    }

    #[test]
    fn small_cycle_examples() {
        let g = DisplacementGraph::from_parts(1, ["A"], [(0, 0, vec![1]), (0, 0, vec![-1])]).unwrap();
        let c = enumerate_cycles(&g, 10).unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.iter().all(|c| c.len() == 1));

        let g = DisplacementGraph::from_parts(
            1,
            ["A", "B", "C"],
            [(0, 1, vec![0]), (1, 2, vec![0]), (2, 0, vec![1])],
        )
        .unwrap();
        let c = enumerate_cycles(&g, 10).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].len(), 3);
    }

    #[test]
    fn cycle_budget_names_component() {
        let err = enumerate_cycles(&honeycomb(), 5).unwrap_err();
        assert!(err.is_budget());
        assert!(err.to_string().contains("{A, B}"), "{err}");
    }

    #[test]
    fn honeycomb_basic_velocities() {
        let v = basic_velocities(&honeycomb(), 1000).unwrap();
        let mut expected = vec![
            rv((0, 1), (0, 1)),
            rv((0, 1), (-1, 2)),
            rv((1, 2), (0, 1)),
            rv((0, 1), (1, 2)),
            rv((1, 2), (1, 2)),
            rv((-1, 2), (0, 1)),
            rv((-1, 2), (-1, 2)),
        ];
        expected.sort();
        assert_eq!(v, expected);
    }

    #[test]
    fn trivial_velocity_sets() {
        let g = DisplacementGraph::from_parts(1, ["A"], [(0, 0, vec![0])]).unwrap();
        assert_eq!(basic_velocities(&g, 10).unwrap(), vec![RationalVec::from_ints(&[0])]);
        assert_eq!(
            basic_velocities(&loops_pm2(), 10).unwrap(),
            vec![RationalVec::from_ints(&[-2]), RationalVec::from_ints(&[2])]
        );
    }

    #[test]
    fn decompose_short_path_is_remainder() {
        let g = honeycomb();
        let p = PathRef::new(vec![1]);
        let d = decompose_path(&g, &p).unwrap();
        assert!(d.cycles.is_empty());
        assert_eq!(d.remainder, p);
    }

    #[test]
    fn decompose_repeated_zero_cycle() {
        let g = honeycomb();
        let p = PathRef::new(vec![0, 3, 0, 3, 0, 3]);
        let d = decompose_path(&g, &p).unwrap();
        assert_eq!(d.cycles.len(), 3);
        assert!(d.cycles.iter().all(|c| c.edges == vec![0, 3]));
        assert!(d.remainder.is_empty());
    }

    #[test]
    fn decompose_excises_first_minimal_cycle() {
        // A -> B -> C -> B -> A: the first return is to B.
        let g = DisplacementGraph::from_parts(
            1,
            ["A", "B", "C"],
            [(0, 1, vec![1]), (1, 2, vec![1]), (2, 1, vec![1]), (1, 0, vec![1])],
        )
        .unwrap();
        let d = decompose_path(&g, &PathRef::new(vec![0, 1, 2, 3])).unwrap();
        assert_eq!(d.cycles.iter().map(|c| c.edges.clone()).collect::<Vec<_>>(), vec![vec![1, 2], vec![0, 3]]);
        assert!(d.remainder.is_empty());
    }

    #[test]
    fn validator_rejects_non_simple() {
        let g = honeycomb();
        assert!(is_simple_cycle(&g, &[0, 3]));
        assert!(!is_simple_cycle(&g, &[0, 3, 1, 4]));
        assert!(!is_simple_cycle(&g, &[0, 1]));
        assert!(!is_simple_cycle(&g, &[]));
        assert!(Cycle::new(&g, vec![0, 3, 0, 3]).is_err());
    }
}
