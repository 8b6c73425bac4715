//! Rational polytopes: hulls, facets, Minkowski gauge, containment and
//! anisotropy. Everything is exact; linear programs go through
//! [`crate::lp`].

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::budget::DEFAULT_HULL_SUBSETS;
use crate::error::{Error, Result};
use crate::lp::{solve, LpOutcome};
use crate::rational::{format_rational, int, parse_rational, Rational, RationalVec};

/// Facets are only enumerated up to this ambient dimension.
pub const MAX_FACET_DIM: usize = 6;

/// The half-space `a·x ≤ b`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Facet {
    pub a: RationalVec,
    pub b: Rational,
}

impl Facet {
    pub fn satisfied_by(&self, x: &RationalVec) -> bool {
        self.a.dot(x) <= self.b
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolytope {
    dim: usize,
    vertices: Vec<RationalVec>,
    facets: Option<Vec<Facet>>,
}

impl RationalPolytope {
    pub fn empty(dim: usize) -> Self {
        RationalPolytope {
            dim,
            vertices: Vec::new(),
            facets: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Extreme points, lexicographically sorted.
    pub fn vertices(&self) -> &[RationalVec] {
        &self.vertices
    }

    pub fn facets(&self) -> Option<&[Facet]> {
        self.facets.as_deref()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Same point set, compared on vertices only.
    pub fn same_set(&self, other: &RationalPolytope) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if self.dim != found {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found,
            });
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Linear algebra helpers

/// Reduced row echelon form; returns the nonzero rows.
pub(crate) fn rref(mut rows: Vec<RationalVec>, width: usize) -> Vec<RationalVec> {
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i].0[col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r].0[col].recip();
        rows[r] = rows[r].scale(&inv);
        for i in 0..rows.len() {
            if i != r && !rows[i].0[col].is_zero() {
                let f = rows[i].0[col].clone();
                rows[i] = rows[i].sub(&rows[r].scale(&f));
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows
}

/// Basis of `{y : row·y = 0 for all rows}`.
pub(crate) fn null_space(rows: &[RationalVec], width: usize) -> Vec<RationalVec> {
    let reduced = rref(rows.to_vec(), width);
    let mut pivots = Vec::new();
    for row in &reduced {
        pivots.push((0..width).find(|&c| !row.0[c].is_zero()).expect("nonzero row"));
    }
    let mut basis = Vec::new();
    for free in (0..width).filter(|c| !pivots.contains(c)) {
        let mut y = RationalVec::zero(width);
        y.0[free] = Rational::one();
        for (row, &p) in reduced.iter().zip(&pivots) {
            y.0[p] = -row.0[free].clone();
        }
        basis.push(y);
    }
    basis
}

/// Positive multiple of `v` with coprime integer coordinates.
fn primitive(v: &RationalVec) -> (RationalVec, Rational) {
    let lcm = v.denominator_lcm();
    let ints: Vec<BigInt> = v.0.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return (v.clone(), Rational::one());
    }
    let scale = Rational::new(lcm, g);
    (v.scale(&scale), scale)
}

fn affine_basis(points: &[RationalVec], dim: usize) -> Vec<RationalVec> {
    let Some(p0) = points.first() else {
        return Vec::new();
    };
    rref(points[1..].iter().map(|p| p.sub(p0)).collect(), dim)
}

// ---------------------------------------------------------------------------
// Convex hull

/// Exact convex hull with the default facet budget.
pub fn convex_hull(points: &[RationalVec]) -> Result<RationalPolytope> {
    convex_hull_with_budget(points, DEFAULT_HULL_SUBSETS)
}

/// Exact convex hull.
///
/// Extreme points come from min/max in one dimension, Andrew's monotone
/// chain in two, and an LP redundancy test per point above that. Facets are
/// enumerated for `d ≤ 6` by testing every affinely independent subset of
/// extreme points spanning a hyperplane of the affine hull; when the number
/// of candidate subsets exceeds `max_subsets` the facet list is omitted.
/// Lower-dimensional hulls also carry their affine-hull equations, each as
/// a pair of opposite inequalities.
pub fn convex_hull_with_budget(points: &[RationalVec], max_subsets: u64) -> Result<RationalPolytope> {
    let Some(first) = points.first() else {
        return Err(Error::EmptyPolytope);
    };
    let dim = first.dim();
    if dim == 0 {
        return Err(Error::Invalid("points must have dimension at least 1".into()));
    }
    if let Some(bad) = points.iter().find(|p| p.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: bad.dim(),
        });
    }
    let unique: Vec<RationalVec> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let mut vertices = match dim {
        1 => {
            let lo = unique.first().expect("nonempty").clone();
            let hi = unique.last().expect("nonempty").clone();
            if lo == hi {
                vec![lo]
            } else {
                vec![lo, hi]
            }
        }
        2 => monotone_chain(&unique),
        _ => extreme_points_lp(&unique),
    };
    vertices.sort();
    let facets = if dim <= MAX_FACET_DIM {
        enumerate_facets(&vertices, dim, max_subsets)
    } else {
        None
    };
    Ok(RationalPolytope {
        dim,
        vertices,
        facets,
    })
}

fn cross(o: &RationalVec, a: &RationalVec, b: &RationalVec) -> Rational {
    (&a.0[0] - &o.0[0]) * (&b.0[1] - &o.0[1]) - (&a.0[1] - &o.0[1]) * (&b.0[0] - &o.0[0])
}

/// `sorted` must be lexicographically sorted and duplicate free.
fn monotone_chain(sorted: &[RationalVec]) -> Vec<RationalVec> {
    if sorted.len() <= 2 {
        return sorted.to_vec();
    }
    let mut lower: Vec<RationalVec> = Vec::new();
    for p in sorted {
        while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<RationalVec> = Vec::new();
    for p in sorted.iter().rev() {
        while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}

/// Points of `unique` that are not convex combinations of the others.
pub(crate) fn extreme_points_lp(unique: &[RationalVec]) -> Vec<RationalVec> {
    let mut keep: Vec<bool> = vec![true; unique.len()];
    for i in 0..unique.len() {
        let others: Vec<&RationalVec> = unique
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i && keep[j])
            .map(|(_, p)| p)
            .collect();
        if others.is_empty() {
            continue;
        }
        if in_convex_hull(&others, &unique[i]) {
            keep[i] = false;
        }
    }
    unique
        .iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(p, _)| p.clone())
        .collect()
}

/// LP feasibility of `Σ μ_i v_i = x`, `Σ μ_i = 1`, `μ ≥ 0`.
fn in_convex_hull(points: &[&RationalVec], x: &RationalVec) -> bool {
    let d = x.dim();
    let m = points.len();
    let mut a = Vec::with_capacity(d + 1);
    let mut b = Vec::with_capacity(d + 1);
    for k in 0..d {
        a.push(points.iter().map(|p| p.0[k].clone()).collect());
        b.push(x.0[k].clone());
    }
    a.push(vec![Rational::one(); m]);
    b.push(Rational::one());
    solve(&a, &b, &vec![Rational::zero(); m]).is_feasible()
}

fn binomial_exceeds(n: usize, k: usize, limit: u64) -> bool {
    let mut c: u128 = 1;
    let k = k.min(n.saturating_sub(k));
    for i in 0..k {
        c = c * (n - i) as u128 / (i + 1) as u128;
        if c > limit as u128 {
            return true;
        }
    }
    c > limit as u128
}

fn enumerate_facets(vertices: &[RationalVec], dim: usize, max_subsets: u64) -> Option<Vec<Facet>> {
    let basis = affine_basis(vertices, dim);
    let k = basis.len();
    let p0 = &vertices[0];
    let mut facets = BTreeSet::new();

    for n in null_space(&basis, dim) {
        let (n, _) = primitive(&n);
        let b = n.dot(p0);
        facets.insert(Facet {
            a: n.neg(),
            b: -b.clone(),
        });
        facets.insert(Facet { a: n, b });
    }

    if k > 0 {
        if binomial_exceeds(vertices.len(), k, max_subsets) {
            return None;
        }
        let mut subset: Vec<usize> = (0..k).collect();
        loop {
            if let Some(f) = facet_through(vertices, &subset, &basis) {
                facets.insert(f);
            }
            // next k-combination
            let m = vertices.len();
            let mut i = k;
            while i > 0 && subset[i - 1] == m - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            subset[i - 1] += 1;
            for j in i..k {
                subset[j] = subset[j - 1] + 1;
            }
        }
    }
    Some(facets.into_iter().collect())
}

/// Supporting hyperplane (within the affine hull spanned by `basis`)
/// through the points indexed by `subset`, if they are affinely independent
/// and all vertices lie on one side.
fn facet_through(vertices: &[RationalVec], subset: &[usize], basis: &[RationalVec]) -> Option<Facet> {
    let s0 = &vertices[subset[0]];
    let k = basis.len();
    let rows: Vec<RationalVec> = subset[1..]
        .iter()
        .map(|&i| {
            let diff = vertices[i].sub(s0);
            RationalVec(basis.iter().map(|b| b.dot(&diff)).collect())
        })
        .collect();
    let ns = null_space(&rows, k);
    if ns.len() != 1 {
        return None;
    }
    let y = &ns[0];
    let mut a = RationalVec::zero(s0.dim());
    for (coef, b) in y.0.iter().zip(basis) {
        a = a.add(&b.scale(coef));
    }
    let (a, _) = primitive(&a);
    let b = a.dot(s0);
    let mut below = true;
    let mut above = true;
    for v in vertices {
        let t = a.dot(v);
        below &= t <= b;
        above &= t >= b;
    }
    match (below, above) {
        (true, false) => Some(Facet { a, b }),
        (false, true) => Some(Facet { a: a.neg(), b: -b }),
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// Queries

/// Result of a Minkowski gauge evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gauge {
    Finite(Rational),
    Infinite,
}

impl Gauge {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Gauge::Finite(r) => Some(r),
            Gauge::Infinite => None,
        }
    }
}

impl std::fmt::Display for Gauge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Gauge::Finite(r) => f.write_str(&format_rational(r)),
            Gauge::Infinite => f.write_str("inf"),
        }
    }
}

/// `min { t ≥ 0 : x ∈ tP }`, computed as `min Σλ` over `Σ λ_i v_i = x`,
/// `λ ≥ 0`.
pub fn gauge_norm(p: &RationalPolytope, x: &RationalVec) -> Result<Gauge> {
    p.check_dim(x.dim())?;
    if p.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    if x.is_zero() {
        return Ok(Gauge::Finite(Rational::zero()));
    }
    let m = p.vertices.len();
    let a: Vec<Vec<Rational>> = (0..p.dim)
        .map(|k| p.vertices.iter().map(|v| v.0[k].clone()).collect())
        .collect();
    match solve(&a, &x.0, &vec![Rational::one(); m]) {
        LpOutcome::Optimal { value, .. } => Ok(Gauge::Finite(value)),
        LpOutcome::Infeasible => Ok(Gauge::Infinite),
        LpOutcome::Unbounded => unreachable!("gauge objective is bounded below by zero"),
    }
}

/// Gauge through the facet list: `max_f (a_f·x)/b_f`, valid when the origin
/// is interior (every `b_f > 0`).
pub fn gauge_via_facets(p: &RationalPolytope, x: &RationalVec) -> Result<Rational> {
    p.check_dim(x.dim())?;
    let facets = p.facets().ok_or(Error::MissingFacets)?;
    let mut best = Rational::zero();
    for f in facets {
        if !f.b.is_positive() {
            return Err(Error::Degenerate("origin is not interior".into()));
        }
        let t = f.a.dot(x) / &f.b;
        if t > best {
            best = t;
        }
    }
    Ok(best)
}

pub fn contains_point(p: &RationalPolytope, x: &RationalVec) -> Result<bool> {
    p.check_dim(x.dim())?;
    if p.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    let refs: Vec<&RationalVec> = p.vertices.iter().collect();
    Ok(in_convex_hull(&refs, x))
}

/// `inner ⊆ outer`, decided by vertex membership.
pub fn contains_polytope(outer: &RationalPolytope, inner: &RationalPolytope) -> Result<bool> {
    outer.check_dim(inner.dim)?;
    if inner.is_empty() {
        return Ok(true);
    }
    if outer.is_empty() {
        return Ok(false);
    }
    for v in &inner.vertices {
        if !contains_point(outer, v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `P = −P`.
pub fn is_symmetric(p: &RationalPolytope) -> bool {
    let negated: BTreeSet<RationalVec> = p.vertices.iter().map(RationalVec::neg).collect();
    let own: BTreeSet<RationalVec> = p.vertices.iter().cloned().collect();
    negated == own
}

/// Affine dimension and whether the origin is an interior point.
///
/// The origin is interior iff the polytope is full dimensional and every
/// `±e_i` has a finite gauge (the vertices positively span `R^d`).
pub fn dimensionality(p: &RationalPolytope) -> Result<(usize, bool)> {
    if p.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    let affine = affine_basis(&p.vertices, p.dim).len();
    if affine < p.dim {
        return Ok((affine, false));
    }
    for axis in 0..p.dim {
        for sign in [1, -1] {
            if gauge_norm(p, &RationalVec::unit(p.dim, axis, sign))? == Gauge::Infinite {
                return Ok((affine, false));
            }
        }
    }
    Ok((affine, true))
}

/// Whether the cone generated by `points` is all of `R^dim`: every `±e_i`
/// is a nonnegative combination of the points.
pub(crate) fn cone_is_full(points: &[RationalVec], dim: usize) -> bool {
    if points.is_empty() {
        return false;
    }
    let a: Vec<Vec<Rational>> = (0..dim)
        .map(|k| points.iter().map(|v| v.0[k].clone()).collect())
        .collect();
    let c = vec![Rational::zero(); points.len()];
    (0..dim).all(|axis| {
        [1, -1]
            .into_iter()
            .all(|sign| solve(&a, &RationalVec::unit(dim, axis, sign).0, &c).is_feasible())
    })
}

/// Exact ∞-norm distance from `x` to `p`:
/// `min t` over `‖x − Σ μ_i v_i‖∞ ≤ t`, `Σ μ = 1`, `μ ≥ 0`.
pub fn distance_inf(p: &RationalPolytope, x: &RationalVec) -> Result<Rational> {
    p.check_dim(x.dim())?;
    if p.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    let d = p.dim;
    let m = p.vertices.len();
    // columns: μ (m), t, s⁺ (d), s⁻ (d)
    let width = m + 1 + 2 * d;
    let mut a = Vec::with_capacity(2 * d + 1);
    let mut b = Vec::with_capacity(2 * d + 1);
    for k in 0..d {
        // (Vμ)_k + t − s⁺_k = x_k
        let mut row = vec![Rational::zero(); width];
        for (i, v) in p.vertices.iter().enumerate() {
            row[i] = v.0[k].clone();
        }
        row[m] = Rational::one();
        row[m + 1 + k] = -Rational::one();
        a.push(row);
        b.push(x.0[k].clone());
        // (Vμ)_k − t + s⁻_k = x_k
        let mut row = vec![Rational::zero(); width];
        for (i, v) in p.vertices.iter().enumerate() {
            row[i] = v.0[k].clone();
        }
        row[m] = -Rational::one();
        row[m + 1 + d + k] = Rational::one();
        a.push(row);
        b.push(x.0[k].clone());
    }
    let mut row = vec![Rational::zero(); width];
    for r in row.iter_mut().take(m) {
        *r = Rational::one();
    }
    a.push(row);
    b.push(Rational::one());
    let mut c = vec![Rational::zero(); width];
    c[m] = Rational::one();
    match solve(&a, &b, &c) {
        LpOutcome::Optimal { value, .. } => Ok(value),
        other => unreachable!("distance LP is feasible and bounded: {other:?}"),
    }
}

// ---------------------------------------------------------------------------
// Anisotropy

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Anisotropy {
    pub inradius2: Rational,
    pub circumradius2: Rational,
    pub isotropic: bool,
}

/// Inverse of a symmetric positive definite matrix, or an error when the
/// matrix is not symmetric positive definite (checked by exact LDLᵀ pivots).
fn spd_inverse(m: &[Vec<Rational>], d: usize) -> Result<Vec<Vec<Rational>>> {
    if m.len() != d || m.iter().any(|r| r.len() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: m.len(),
        });
    }
    if (0..d).any(|i| (0..i).any(|j| m[i][j] != m[j][i])) {
        return Err(Error::NotPositiveDefinite);
    }
    // Gauss-Jordan without row swaps; pivots are ratios of leading principal minors.
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut inv: Vec<Vec<Rational>> = (0..d)
        .map(|i| (0..d).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    for col in 0..d {
        let p = a[col][col].clone();
        if !p.is_positive() {
            return Err(Error::NotPositiveDefinite);
        }
        for j in 0..d {
            a[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for i in 0..d {
            if i == col || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for j in 0..d {
                let t = &f * &a[col][j];
                a[i][j] -= t;
                let t = &f * &inv[col][j];
                inv[i][j] -= t;
            }
        }
    }
    Ok(inv)
}

fn quadratic(m: &[Vec<Rational>], x: &RationalVec) -> Rational {
    let mut acc = Rational::zero();
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            acc += &x.0[i] * v * &x.0[j];
        }
    }
    acc
}

/// Squared in- and circumradius under the metric `M` (identity by default).
///
/// `circumradius² = max_v vᵀMv`, `inradius² = min_f b² / (aᵀM⁻¹a)`; the
/// polytope counts as isotropic when they coincide.
pub fn anisotropy(p: &RationalPolytope, metric: Option<&[Vec<Rational>]>) -> Result<Anisotropy> {
    let facets = p.facets().ok_or(Error::MissingFacets)?;
    let (affine, interior) = dimensionality(p)?;
    if affine < p.dim || !interior {
        return Err(Error::Degenerate(
            "polytope must be full dimensional with the origin in its interior".into(),
        ));
    }
    let d = p.dim;
    let identity: Vec<Vec<Rational>> = (0..d)
        .map(|i| (0..d).map(|j| if i == j { int(1) } else { int(0) }).collect())
        .collect();
    let m = metric.unwrap_or(&identity);
    let inv = spd_inverse(m, d)?;

    let circumradius2 = p
        .vertices
        .iter()
        .map(|v| quadratic(m, v))
        .max()
        .expect("nonempty");
    let inradius2 = facets
        .iter()
        .map(|f| &f.b * &f.b / quadratic(&inv, &f.a))
        .min()
        .expect("full-dimensional polytope has facets");
    let isotropic = inradius2 == circumradius2;
    Ok(Anisotropy {
        inradius2,
        circumradius2,
        isotropic,
    })
}

// ---------------------------------------------------------------------------
// JSON

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct FacetJson {
    pub a: Vec<String>,
    pub b: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct PolytopeJson {
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<FacetJson>>,
}

impl From<&RationalPolytope> for PolytopeJson {
    fn from(p: &RationalPolytope) -> Self {
        PolytopeJson {
            dim: p.dim,
            vertices: p.vertices.iter().map(RationalVec::to_strings).collect(),
            facets: p.facets.as_ref().map(|fs| {
                fs.iter()
                    .map(|f| FacetJson {
                        a: f.a.to_strings(),
                        b: format_rational(&f.b),
                    })
                    .collect()
            }),
        }
    }
}

impl RationalPolytope {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(PolytopeJson::from(self)).expect("serializable")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&PolytopeJson::from(self)).expect("serializable")
    }

    /// Parses polytope JSON. The listed points are re-hulled, so redundant
    /// points are accepted; a supplied facet list is ignored and recomputed.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: PolytopeJson =
            serde_json::from_str(text).map_err(|e| Error::Invalid(format!("polytope JSON: {e}")))?;
        Self::from_json_struct(&raw)
    }

    pub fn from_json_struct(raw: &PolytopeJson) -> Result<Self> {
        if raw.dim == 0 {
            return Err(Error::Invalid("polytope dimension must be at least 1".into()));
        }
        let points = raw
            .vertices
            .iter()
            .map(|v| {
                let parts: Vec<&str> = v.iter().map(String::as_str).collect();
                let p = RationalVec::parse(&parts)?;
                if p.dim() != raw.dim {
                    return Err(Error::DimensionMismatch {
                        expected: raw.dim,
                        found: p.dim(),
                    });
                }
                Ok(p)
            })
            .collect::<Result<Vec<_>>>()?;
        if points.is_empty() {
            return Ok(RationalPolytope::empty(raw.dim));
        }
        if let Some(fs) = &raw.facets {
            for f in fs {
                parse_rational(&f.b)?;
            }
        }
        convex_hull(&points)
    }
}
