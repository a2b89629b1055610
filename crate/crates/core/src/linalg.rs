//! Small dense linear algebra over Q, on basis-coordinate vectors of field numbers.

use num_traits::Zero;

use crate::exactnum::{FieldNumber, Rational};

/// Row-reduces `rows` in place and returns the rank.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..width {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let p = rows[r][col].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = &rows[i][col] / &p;
                for j in col..width {
                    let t = &rows[r][j] * &f;
                    rows[i][j] -= t;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

pub fn coordinates(x: &FieldNumber) -> Vec<Rational> {
    x.coefficients().to_vec()
}

#[derive(Debug, Clone, PartialEq)]
pub enum Solution {
    Inconsistent,
    Unique(Vec<Rational>),
    Underdetermined,
}

/// Solves `Σ_k unknown_k · columns[k] = rhs` in the coordinates of the basis.
pub fn solve(columns: &[FieldNumber], rhs: &FieldNumber) -> Solution {
    let n = columns.len();
    let cols: Vec<Vec<Rational>> = columns.iter().map(coordinates).collect();
    let b = coordinates(rhs);
    // augmented matrix: 4 rows, n + 1 columns
    let mut m: Vec<Vec<Rational>> = (0..4)
        .map(|i| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..4).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pv = m[r][col].clone();
        for j in col..=n {
            m[r][j] = &m[r][j] / &pv;
        }
        for i in 0..4 {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..=n {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if (r..4).any(|i| !m[i][n].is_zero()) {
        return Solution::Inconsistent;
    }
    if pivots.len() < n {
        return Solution::Underdetermined;
    }
    Solution::Unique((0..n).map(|i| m[i][n].clone()).collect())
}
