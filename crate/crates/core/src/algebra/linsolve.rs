//! Exact Gauss–Jordan elimination over a field.

use super::scalar::Field;
use super::tensor::{Matrix, Tensor};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Solution<S> {
    Unique(Vec<S>),
    /// A particular solution plus a basis of the kernel.
    Underdetermined { particular: Vec<S>, kernel: Vec<Vec<S>> },
}

impl<S: Field> Solution<S> {
    pub fn particular(&self) -> &[S] {
        match self {
            Solution::Unique(x) => x,
            Solution::Underdetermined { particular, .. } => particular,
        }
    }
}

/// Reduced row echelon form of the augmented system `[A | B]`, returning the
/// reduced matrix and the pivot columns (all among the first `a.cols`).
struct Rref<S> {
    m: Matrix<S>,
    pivots: Vec<usize>,
    ncols: usize,
}

fn rref<S: Field>(a: &Matrix<S>, b: Option<&Matrix<S>>) -> Rref<S> {
    let extra = b.map_or(0, |b| b.cols);
    let ncols = a.cols;
    let mut m = Matrix::zeros(a.rows, ncols + extra);
    for i in 0..a.rows {
        for j in 0..ncols {
            *m.at_mut(i, j) = a.at(i, j).clone();
        }
        if let Some(b) = b {
            for j in 0..extra {
                *m.at_mut(i, ncols + j) = b.at(i, j).clone();
            }
        }
    }
    let total = ncols + extra;
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
            continue;
        };
        if p != row {
            for j in 0..total {
                m.data.swap(p * total + j, row * total + j);
            }
        }
        let inv = S::one() / m.at(row, col).clone();
        for j in col..total {
            let x = m.at(row, j).clone();
            if !x.is_zero() {
                *m.at_mut(row, j) = x * inv.clone();
            }
        }
        let pivot_row: Vec<(usize, S)> = (col..total)
            .filter_map(|j| {
                let x = m.at(row, j);
                (!x.is_zero()).then(|| (j, x.clone()))
            })
            .collect();
        for r in 0..m.rows {
            if r == row {
                continue;
            }
            let f = m.at(r, col).clone();
            if f.is_zero() {
                continue;
            }
            let nf = -f;
            for (j, x) in &pivot_row {
                m.data[r * total + j].add_mul(&nf, x);
            }
        }
        pivots.push(col);
        row += 1;
    }
    Rref { m, pivots, ncols }
}

/// Solve `A X = B` column by column. Returns the particular solutions (free
/// variables set to zero) as the columns of a matrix, plus a kernel basis.
pub fn solve_matrix<S: Field>(a: &Matrix<S>, b: &Matrix<S>) -> Result<(Matrix<S>, Vec<Vec<S>>)> {
    if a.rows != b.rows {
        return Err(Error::Shape(format!("A has {} rows, B has {}", a.rows, b.rows)));
    }
    let r = rref(a, Some(b));
    let rank = r.pivots.len();
    for i in rank..r.m.rows {
        for j in 0..b.cols {
            if !r.m.at(i, r.ncols + j).is_zero() {
                return Err(Error::Inconsistent);
            }
        }
    }
    let mut x = Matrix::zeros(a.cols, b.cols);
    for (i, &pc) in r.pivots.iter().enumerate() {
        for j in 0..b.cols {
            *x.at_mut(pc, j) = r.m.at(i, r.ncols + j).clone();
        }
    }
    Ok((x, kernel_from(&r)))
}

fn kernel_from<S: Field>(r: &Rref<S>) -> Vec<Vec<S>> {
    let free: Vec<usize> = (0..r.ncols).filter(|c| !r.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![S::zero(); r.ncols];
            v[f] = S::one();
            for (i, &pc) in r.pivots.iter().enumerate() {
                let x = r.m.at(i, f);
                if !x.is_zero() {
                    v[pc] = -x.clone();
                }
            }
            v
        })
        .collect()
}

pub fn solve_exact<S: Field>(a: &Matrix<S>, b: &[S]) -> Result<Solution<S>> {
    let bm = Matrix { rows: b.len(), cols: 1, data: b.to_vec() };
    let (x, kernel) = solve_matrix(a, &bm)?;
    if kernel.is_empty() {
        Ok(Solution::Unique(x.data))
    } else {
        Ok(Solution::Underdetermined { particular: x.data, kernel })
    }
}

/// Tensor-typed entry point: `a` must be 2-d and `b` 1-d.
pub fn solve_tensor<S: Field>(a: &Tensor<S>, b: &Tensor<S>) -> Result<Solution<S>> {
    if b.shape.len() != 1 {
        return Err(Error::Shape(format!("right-hand side must be 1-d, got {:?}", b.shape)));
    }
    solve_exact(&a.as_matrix()?, &b.data)
}

pub fn kernel<S: Field>(a: &Matrix<S>) -> Vec<Vec<S>> {
    kernel_from(&rref(a, None))
}

pub fn rank<S: Field>(a: &Matrix<S>) -> usize {
    rref(a, None).pivots.len()
}

pub fn inverse<S: Field>(a: &Matrix<S>) -> Option<Matrix<S>> {
    if a.rows != a.cols {
        return None;
    }
    let (x, kernel) = solve_matrix(a, &Matrix::identity(a.rows)).ok()?;
    kernel.is_empty().then_some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{Rational, Scalar};

    fn q(n: i64) -> Rational {
        Rational::int(n)
    }

    #[test]
    fn identity_returns_rhs() {
        let b = vec![q(3), Rational::new(-1, 2), q(0)];
        assert_eq!(solve_exact(&Matrix::identity(3), &b).unwrap(), Solution::Unique(b));
    }

    #[test]
    fn rank_deficient_inconsistent() {
        let a = Matrix::from_rows(vec![vec![q(1), q(1)], vec![q(1), q(1)]]);
        assert_eq!(solve_exact(&a, &[q(1), q(2)]), Err(Error::Inconsistent));
        match solve_exact(&a, &[q(1), q(1)]).unwrap() {
            Solution::Underdetermined { kernel, .. } => {
                assert_eq!(kernel.len(), 1);
                assert!(a.apply(&kernel[0]).iter().all(|x| x.is_zero()));
            }
            s => panic!("expected kernel, got {s:?}"),
        }
    }
}
