//! Exact two-phase simplex over the rationals.
//!
//! Solves `min c·x` subject to `A x = b`, `x ≥ 0`. Pivoting follows Bland's
//! rule (smallest entering index, smallest leaving basic index among ratio
//! ties), so the method terminates without cycling.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, x: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    obj: Vec<Rational>,
    obj_value: Rational,
}

impl Tableau {
    fn pivot(&mut self, r: usize, j: usize) {
        let p = self.rows[r][j].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &p;
        }
        self.rhs[r] /= &p;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][j].is_zero() {
                continue;
            }
            let f = self.rows[i][j].clone();
            for (x, y) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        if !self.obj[j].is_zero() {
            let f = self.obj[j].clone();
            for (x, y) in self.obj.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            // obj_value tracks -(current objective).
            self.obj_value -= &f * &pivot_rhs;
        }
        self.basis[r] = j;
    }

    /// Runs simplex iterations over columns `< active`. Returns false when
    /// unbounded.
    fn optimize(&mut self, active: usize) -> bool {
        loop {
            let Some(j) = (0..active).find(|&j| self.obj[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][j];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((l, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*l])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, j),
                None => return false,
            }
        }
    }

    fn set_objective(&mut self, costs: &[Rational]) {
        let width = self.obj.len();
        self.obj = (0..width)
            .map(|j| costs.get(j).cloned().unwrap_or_else(Rational::zero))
            .collect();
        self.obj_value = Rational::zero();
        for i in 0..self.rows.len() {
            let cb = self.obj[self.basis[i]].clone();
            if cb.is_zero() {
                continue;
            }
            for j in 0..width {
                let t = &cb * &self.rows[i][j];
                self.obj[j] -= t;
            }
            self.obj_value -= &cb * &self.rhs[i];
        }
    }
}

/// Minimizes `c·x` subject to `a x = b`, `x ≥ 0`.
pub fn solve(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> LpOutcome {
    let n = c.len();
    let m = a.len();
    debug_assert_eq!(b.len(), m);

    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        debug_assert_eq!(row.len(), n);
        let flip = b[i].is_negative();
        let mut r: Vec<Rational> = row
            .iter()
            .map(|x| if flip { -x } else { x.clone() })
            .collect();
        r.extend((0..m).map(|k| {
            if k == i {
                Rational::from_integer(1.into())
            } else {
                Rational::zero()
            }
        }));
        rows.push(r);
        rhs.push(if flip { -&b[i] } else { b[i].clone() });
    }

    let mut t = Tableau {
        rows,
        rhs,
        basis: (n..n + m).collect(),
        obj: vec![Rational::zero(); n + m],
        obj_value: Rational::zero(),
    };

    // Phase 1: minimize the sum of artificials.
    let phase1: Vec<Rational> = (0..n + m)
        .map(|j| {
            if j >= n {
                Rational::from_integer(1.into())
            } else {
                Rational::zero()
            }
        })
        .collect();
    t.set_objective(&phase1);
    t.optimize(n + m);
    if !t.obj_value.is_zero() {
        return LpOutcome::Infeasible;
    }

    // Drive artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.rhs.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    for row in t.rows.iter_mut() {
        row.truncate(n);
    }
    t.obj = vec![Rational::zero(); n];

    // Phase 2.
    t.set_objective(c);
    if !t.optimize(n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &bv) in t.basis.iter().enumerate() {
        x[bv] = t.rhs[i].clone();
    }
    LpOutcome::Optimal {
        value: -t.obj_value,
        x,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn small_optimum() {
        // min -x - y  s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
        let a = vec![v(&[1, 2, 1, 0]), v(&[3, 1, 0, 1])];
        let out = solve(&a, &v(&[4, 6]), &v(&[-1, -1, 0, 0]));
        let LpOutcome::Optimal { value, x } = out else {
            panic!("expected optimum")
        };
        assert_eq!(value, ratio(-14, 5));
        assert_eq!(x[0], ratio(8, 5));
        assert_eq!(x[1], ratio(6, 5));
    }

    #[test]
    fn infeasible_and_unbounded() {
        // x = -1, x >= 0
        assert_eq!(solve(&[v(&[1])], &v(&[-1]), &v(&[0])), LpOutcome::Infeasible);
        // min -x s.t. x - y = 0
        assert_eq!(solve(&[v(&[1, -1])], &v(&[0]), &v(&[-1, 0])), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows() {
        let a = vec![v(&[1, 1]), v(&[2, 2])];
        let out = solve(&a, &v(&[1, 2]), &v(&[1, 2]));
        assert_eq!(out.value(), Some(&int(1)));
    }

    #[test]
    fn degenerate_problem_terminates() {
        // Classic Beale-style cycling example; Bland's rule must terminate.
        let a = vec![
            vec![ratio(1, 4), int(-8), int(-1), int(9), int(1), int(0), int(0)],
            vec![ratio(1, 2), int(-12), ratio(-1, 2), int(3), int(0), int(1), int(0)],
            vec![int(0), int(0), int(1), int(0), int(0), int(0), int(1)],
        ];
        let b = v(&[0, 0, 1]);
        let c = vec![ratio(-3, 4), int(20), ratio(-1, 2), int(6), int(0), int(0), int(0)];
        assert_eq!(solve(&a, &b, &c).value(), Some(&ratio(-5, 4)));
    }
}
