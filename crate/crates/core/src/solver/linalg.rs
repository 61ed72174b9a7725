//! Exact Gauss–Jordan elimination over the rationals with a tracked row transform, so an
//! inconsistent system yields a left-nullspace certificate directly.

use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// A particular solution (free variables set to zero).
    Solution(Vec<BigRational>),
    /// `c` with `cᵀA = 0` and `cᵀb ≠ 0`, scaled so its last nonzero entry is 1.
    Certificate(Vec<BigRational>),
}

/// Decides `A x = b`. Pivots on the first nonzero entry of each column.
pub fn solve_exact(a: &[Vec<BigRational>], b: &[BigRational]) -> Outcome {
    let rows = a.len();
    assert_eq!(rows, b.len(), "right-hand side length must match row count");
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), cols, "ragged coefficient matrix");
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut t: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| (0..rows).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();

    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        t.swap(rank, p);
        let inv = m[rank][col].recip();
        scale(&mut m[rank], &inv);
        scale(&mut t[rank], &inv);
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                let (pm, pt) = (m[rank].clone(), t[rank].clone());
                axpy(&mut m[r], &factor, &pm);
                axpy(&mut t[r], &factor, &pt);
            }
        }
        pivots.push(col);
        rank += 1;
    }

    if let Some(r) = (rank..rows).find(|&r| !m[r][cols].is_zero()) {
        let mut c = t[r].clone();
        if let Some(last) = c.iter().rev().find(|x| !x.is_zero()).cloned() {
            let inv = last.recip();
            scale(&mut c, &inv);
        }
        return Outcome::Certificate(c);
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = m[i][cols].clone();
    }
    Outcome::Solution(x)
}

fn scale(row: &mut [BigRational], s: &BigRational) {
    for x in row {
        *x *= s;
    }
}

/// `row -= factor * pivot`
fn axpy(row: &mut [BigRational], factor: &BigRational, pivot: &[BigRational]) {
    for (x, p) in row.iter_mut().zip(pivot) {
        *x -= factor * p;
    }
}

pub fn mat_vec(a: &[Vec<BigRational>], x: &[BigRational]) -> Vec<BigRational> {
    a.iter().map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum()).collect()
}

pub fn vec_mat(c: &[BigRational], a: &[Vec<BigRational>]) -> Vec<BigRational> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| c.iter().zip(a).map(|(ci, row)| ci * &row[j]).sum()).collect()
}

pub fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}
