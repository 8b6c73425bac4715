//! Integer lattices spanned by displacement vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Row-style Hermite normal form of the lattice generated by `rows`.
///
/// Returns only the nonzero rows. Pivots are positive and strictly move
/// right; entries above each pivot are reduced into `[0, pivot)`.
pub fn hermite_normal_form(rows: &[Vec<i64>], dim: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut pivot_row = 0;
    for col in 0..dim {
        if pivot_row >= m.len() {
            break;
        }
        // Euclid on the column below pivot_row until a single nonzero remains.
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..m.len() {
                if !m[i][col].is_zero()
                    && best.is_none_or(|b| m[i][col].abs() < m[b][col].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            m.swap(pivot_row, b);
            let mut done = true;
            for i in pivot_row + 1..m.len() {
                if m[i][col].is_zero() {
                    continue;
                }
                let q = m[i][col].div_floor(&m[pivot_row][col]);
                let pivot = m[pivot_row].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot) {
                    *x -= &q * p;
                }
                if !m[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if m[pivot_row][col].is_zero() {
            continue;
        }
        if m[pivot_row][col].is_negative() {
            for x in m[pivot_row].iter_mut() {
                *x = -x.clone();
            }
        }
        let pivot = m[pivot_row].clone();
        for row in m[..pivot_row].iter_mut() {
            let q = row[col].div_floor(&pivot[col]);
            if !q.is_zero() {
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= &q * p;
                }
            }
        }
        pivot_row += 1;
    }
    m.truncate(pivot_row);
    m
}

/// Rank of the generated lattice and, when it has full rank, its index
/// `[Z^d : L]` (the absolute determinant of any basis).
pub fn rank_and_index(rows: &[Vec<i64>], dim: usize) -> (usize, Option<BigInt>) {
    let hnf = hermite_normal_form(rows, dim);
    let rank = hnf.len();
    if rank < dim {
        return (rank, None);
    }
    let det = hnf
        .iter()
        .enumerate()
        .fold(BigInt::one(), |acc, (i, row)| acc * &row[i]);
    (rank, Some(det))
}
