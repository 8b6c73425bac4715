//! Displacement graphs: the finite quotient of a periodic graph with an
//! integer displacement vector on every edge.
//!
//! The text format (DGF) is line oriented:
//!
//! ```text
//! # honeycomb
//! dim 2
//! vertex A
//! vertex B
//! edge A B 0 0
//! edge B A 1 0
//! ```
//!
//! `#` starts a comment. The `dim` line comes first; vertices must be
//! declared before edges that reference them. Declaration order is the
//! canonical vertex and edge order.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Integer displacement vector.
pub type IntVec = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub displacement: IntVec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisplacementGraph {
    dim: usize,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    out: Vec<Vec<usize>>,
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.' || c == '-')
}

impl DisplacementGraph {
    pub fn new(dim: usize, vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidGraph("dimension must be at least 1".into()));
        }
        let mut seen = HashMap::new();
        for (i, name) in vertices.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::InvalidGraph(format!("bad vertex name `{name}`")));
            }
            if seen.insert(name.as_str(), i).is_some() {
                return Err(Error::DuplicateVertex {
                    line: 0,
                    name: name.clone(),
                });
            }
        }
        let mut out = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            if e.source >= vertices.len() || e.target >= vertices.len() {
                return Err(Error::InvalidGraph(format!("edge {i} has an invalid endpoint")));
            }
            if e.displacement.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: e.displacement.len(),
                });
            }
            out[e.source].push(i);
        }
        Ok(DisplacementGraph {
            dim,
            vertices,
            edges,
            out,
        })
    }

    /// Builds a graph from `(source, target, displacement)` triples over
    /// vertices named by the caller.
    pub fn from_parts<S: Into<String>>(
        dim: usize,
        vertices: impl IntoIterator<Item = S>,
        edges: impl IntoIterator<Item = (usize, usize, IntVec)>,
    ) -> Result<Self> {
        let vertices = vertices.into_iter().map(Into::into).collect();
        let edges = edges
            .into_iter()
            .map(|(source, target, displacement)| Edge {
                source,
                target,
                displacement,
            })
            .collect();
        Self::new(dim, vertices, edges)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|n| n == name)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    /// Outgoing edge ids of `v`, in increasing order.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    /// `C`: the largest ∞-norm of any edge displacement (0 when edgeless).
    pub fn max_displacement_norm(&self) -> i64 {
        self.edges
            .iter()
            .flat_map(|e| e.displacement.iter().map(|x| x.abs()))
            .max()
            .unwrap_or(0)
    }

    /// Graph containing every edge together with its reverse, which carries
    /// the negated displacement. Used to encode undirected inputs.
    pub fn symmetrized(&self) -> Self {
        let mut edges = self.edges.clone();
        for e in &self.edges {
            edges.push(Edge {
                source: e.target,
                target: e.source,
                displacement: e.displacement.iter().map(|x| -x).collect(),
            });
        }
        Self::new(self.dim, self.vertices.clone(), edges).expect("reversal preserves validity")
    }

    /// Subgraph induced by `keep` (in the given order), together with the
    /// original id of each retained edge.
    pub fn induced_subgraph(&self, keep: &[usize]) -> (Self, Vec<usize>) {
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut edge_map = Vec::new();
        let mut edges = Vec::new();
        for (id, e) in self.edges.iter().enumerate() {
            if index[e.source] != usize::MAX && index[e.target] != usize::MAX {
                edges.push(Edge {
                    source: index[e.source],
                    target: index[e.target],
                    displacement: e.displacement.clone(),
                });
                edge_map.push(id);
            }
        }
        let names = keep.iter().map(|&v| self.vertices[v].clone()).collect();
        let sub = Self::new(self.dim, names, edges).expect("induced subgraph is valid");
        (sub, edge_map)
    }

    pub(crate) fn require_nonempty(&self) -> Result<()> {
        if self.vertices.is_empty() {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        Ok(())
    }
}

/// Parses DGF text.
pub fn parse_dgf(text: &str) -> Result<DisplacementGraph> {
    let mut dim: Option<usize> = None;
    let mut vertices: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        let Some(keyword) = tokens.next() else {
            continue;
        };
        let rest: Vec<&str> = tokens.collect();
        let syntax = |message: String| Error::Syntax { line, message };

        match keyword {
            "dim" => {
                if dim.is_some() {
                    return Err(syntax("duplicate `dim` line".into()));
                }
                let [d] = rest.as_slice() else {
                    return Err(syntax("expected `dim <d>`".into()));
                };
                let d: usize = d
                    .parse()
                    .map_err(|_| syntax(format!("bad dimension `{d}`")))?;
                if d == 0 {
                    return Err(syntax("dimension must be at least 1".into()));
                }
                dim = Some(d);
            }
            "vertex" => {
                if dim.is_none() {
                    return Err(syntax("`dim` must come first".into()));
                }
                let [name] = rest.as_slice() else {
                    return Err(syntax("expected `vertex <name>`".into()));
                };
                if !is_identifier(name) {
                    return Err(syntax(format!("bad vertex name `{name}`")));
                }
                if index.contains_key(*name) {
                    return Err(Error::DuplicateVertex {
                        line,
                        name: name.to_string(),
                    });
                }
                index.insert(name.to_string(), vertices.len());
                vertices.push(name.to_string());
            }
            "edge" => {
                let Some(d) = dim else {
                    return Err(syntax("`dim` must come first".into()));
                };
                if rest.len() < 2 {
                    return Err(syntax("expected `edge <src> <dst> <x1> ... <xd>`".into()));
                }
                let lookup = |name: &str| {
                    index.get(name).copied().ok_or_else(|| Error::UndeclaredVertex {
                        line,
                        name: name.to_string(),
                    })
                };
                let source = lookup(rest[0])?;
                let target = lookup(rest[1])?;
                let coords = &rest[2..];
                if coords.len() != d {
                    return Err(Error::Syntax {
                        line,
                        message: format!(
                            "dimension mismatch: expected {d} coordinates, found {}",
                            coords.len()
                        ),
                    });
                }
                let displacement = coords
                    .iter()
                    .map(|c| {
                        c.parse::<i64>()
                            .map_err(|_| syntax(format!("bad integer `{c}`")))
                    })
                    .collect::<Result<IntVec>>()?;
                edges.push(Edge {
                    source,
                    target,
                    displacement,
                });
            }
            other => return Err(syntax(format!("unknown keyword `{other}`"))),
        }
    }

    let dim = dim.ok_or(Error::Syntax {
        line: 1,
        message: "missing `dim` line".into(),
    })?;
    if vertices.is_empty() {
        return Err(Error::Syntax {
            line: text.lines().count().max(1),
            message: "no vertices declared".into(),
        });
    }
    DisplacementGraph::new(dim, vertices, edges)
}

/// Canonical DGF text: the `dim` line, then vertices, then edges, each in
/// declaration order.
pub fn serialize_dgf(g: &DisplacementGraph) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "dim {}", g.dim);
    for v in &g.vertices {
        let _ = writeln!(s, "vertex {v}");
    }
    for e in &g.edges {
        let _ = write!(s, "edge {} {}", g.vertices[e.source], g.vertices[e.target]);
        for x in &e.displacement {
            let _ = write!(s, " {x}");
        }
        s.push('\n');
    }
    s
}

/// Tarjan's algorithm (iterative). Components are returned ordered by their
/// smallest vertex index, each sorted ascending.
pub fn strongly_connected_components(g: &DisplacementGraph) -> Vec<Vec<usize>> {
    scc_masked(g, &vec![true; g.vertex_count()])
}

/// Components of the subgraph induced by the vertices with `allowed[v]`.
/// Excluded vertices appear in no component.
pub(crate) fn scc_masked(g: &DisplacementGraph, allowed: &[bool]) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut order = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut counter = 0;
    let mut comps = Vec::new();

    for root in 0..n {
        if !allowed[root] || order[root] != usize::MAX {
            continue;
        }
        // (vertex, next outgoing edge position)
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        order[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&(v, pos)) = call.last() {
            if let Some(&e) = g.out[v].get(pos) {
                call.last_mut().expect("nonempty").1 += 1;
                let w = g.edges[e].target;
                if !allowed[w] {
                    continue;
                }
                if order[w] == usize::MAX {
                    order[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(order[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == order[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }
    }
    comps.sort_by_key(|c| c[0]);
    comps
}

/// Component id of every vertex, matching the order of
/// [`strongly_connected_components`].
pub fn scc_membership(comps: &[Vec<usize>], n: usize) -> Vec<usize> {
    let mut member = vec![0; n];
    for (id, c) in comps.iter().enumerate() {
        for &v in c {
            member[v] = id;
        }
    }
    member
}

/// A vertex function `g`; regauging rewrites `δ(e)` to
/// `δ(e) + g(s(e)) − g(t(e))`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GaugeFunction {
    pub values: BTreeMap<usize, IntVec>,
}

impl GaugeFunction {
    pub fn zero(g: &DisplacementGraph) -> Self {
        GaugeFunction {
            values: (0..g.vertex_count()).map(|v| (v, vec![0; g.dim()])).collect(),
        }
    }

    pub fn from_vec(values: Vec<IntVec>) -> Self {
        GaugeFunction {
            values: values.into_iter().enumerate().collect(),
        }
    }

    pub fn get(&self, v: usize) -> Option<&IntVec> {
        self.values.get(&v)
    }

    /// Largest ∞-norm over all values.
    pub fn max_norm(&self) -> i64 {
        self.values
            .values()
            .flat_map(|v| v.iter().map(|x| x.abs()))
            .max()
            .unwrap_or(0)
    }
}

pub fn gauge_transform(g: &DisplacementGraph, gauge: &GaugeFunction) -> Result<DisplacementGraph> {
    for v in 0..g.vertex_count() {
        let value = gauge
            .get(v)
            .ok_or_else(|| Error::GaugeMissingVertex(g.vertex_name(v).to_string()))?;
        if value.len() != g.dim() {
            return Err(Error::DimensionMismatch {
                expected: g.dim(),
                found: value.len(),
            });
        }
    }
    let edges = g
        .edges
        .iter()
        .map(|e| {
            let gs = &gauge.values[&e.source];
            let gt = &gauge.values[&e.target];
            Edge {
                source: e.source,
                target: e.target,
                displacement: e
                    .displacement
                    .iter()
                    .zip(gs.iter().zip(gt))
                    .map(|(x, (a, b))| x + a - b)
                    .collect(),
            }
        })
        .collect();
    DisplacementGraph::new(g.dim, g.vertices.clone(), edges)
}
