//! Dense tensors and matrices over an exact scalar domain.

use serde_json::Value;
use sha2::{Digest, Sha256};

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Dense multi-index array, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor<S> {
    pub shape: Vec<usize>,
    pub data: Vec<S>,
}

impl<S: Scalar> Tensor<S> {
    pub fn zeros(shape: &[usize]) -> Self {
        let n = shape.iter().product();
        Tensor { shape: shape.to_vec(), data: vec![S::zero(); n] }
    }

    pub fn from_vec(shape: &[usize], data: Vec<S>) -> Result<Self> {
        let n: usize = shape.iter().product();
        if n != data.len() {
            return Err(Error::Shape(format!("{} entries for shape {:?}", data.len(), shape)));
        }
        Ok(Tensor { shape: shape.to_vec(), data })
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn strides(&self) -> Vec<usize> {
        strides(&self.shape)
    }

    pub fn get(&self, idx: &[usize]) -> &S {
        &self.data[flat_index(&self.shape, idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: S) {
        let k = flat_index(&self.shape, idx);
        self.data[k] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Canonical text form: shape then entries, used for digests.
    pub fn canonical(&self) -> String {
        let mut s = format!("{:?}:", self.shape);
        for (k, x) in self.data.iter().enumerate() {
            if k > 0 {
                s.push(',');
            }
            s.push_str(&x.to_string());
        }
        s
    }

    pub fn digest(&self) -> String {
        text_digest(&self.canonical())
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "shape": self.shape,
            "data": self.data.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
        })
    }
}

/// First 16 bytes of the SHA-256 of `s`, hex encoded.
pub fn text_digest(s: &str) -> String {
    let h = Sha256::digest(s.as_bytes());
    hex::encode(&h[..16])
}

pub fn strides(shape: &[usize]) -> Vec<usize> {
    let mut st = vec![1; shape.len()];
    for k in (0..shape.len().saturating_sub(1)).rev() {
        st[k] = st[k + 1] * shape[k + 1];
    }
    st
}

pub fn flat_index(shape: &[usize], idx: &[usize]) -> usize {
    debug_assert_eq!(shape.len(), idx.len());
    let mut k = 0;
    for (d, i) in shape.iter().zip(idx) {
        debug_assert!(i < d);
        k = k * d + i;
    }
    k
}

/// Inverse of `flat_index`.
pub fn multi_index(shape: &[usize], mut k: usize) -> Vec<usize> {
    let mut idx = vec![0; shape.len()];
    for p in (0..shape.len()).rev() {
        idx[p] = k % shape[p];
        k /= shape[p];
    }
    idx
}

/// Dense matrix, row-major. Acts on column vectors: `(M v)_i = sum_j M[i][j] v_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<S> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = S::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data: Vec<S> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * c, "ragged rows");
        Matrix { rows: r, cols: c, data }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut S {
        &mut self.data[i * self.cols + j]
    }

    pub fn mul(&self, o: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, o.rows, "matrix shape mismatch");
        let mut out: Matrix<S> = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.at(k, j);
                    if !b.is_zero() {
                        out.data[i * o.cols + j].add_mul(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![S::zero(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[i].add_mul(self.at(i, j), &v[j]);
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply_left(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.rows, v.len());
        let mut out = vec![S::zero(); self.cols];
        for i in 0..self.rows {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..self.cols {
                out[j].add_mul(&v[i], self.at(i, j));
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix<S> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    /// Kronecker product; the left factor indexes the slower digit.
    pub fn kron(&self, o: &Matrix<S>) -> Matrix<S> {
        let mut out = Matrix::zeros(self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        let b = o.at(k, l);
                        if !b.is_zero() {
                            *out.at_mut(i * o.rows + k, j * o.cols + l) = a.clone() * b.clone();
                        }
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    pub fn add(&self, o: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn sub(&self, o: &Matrix<S>) -> Matrix<S> {
        self.add(&o.scale(&-S::one()))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.rows)
    }

    pub fn to_tensor(&self) -> Tensor<S> {
        Tensor { shape: vec![self.rows, self.cols], data: self.data.clone() }
    }

    /// Nonzero entries grouped by column: `cols[j] = [(i, M[i][j])]`.
    pub fn sparse_cols(&self) -> Vec<Vec<(usize, S)>> {
        let mut out = vec![Vec::new(); self.cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.at(i, j);
                if !x.is_zero() {
                    out[j].push((i, x.clone()));
                }
            }
        }
        out
    }
}

impl<S: Scalar> Tensor<S> {
    pub fn as_matrix(&self) -> Result<Matrix<S>> {
        if self.shape.len() != 2 {
            return Err(Error::Shape(format!("expected 2-d tensor, got {:?}", self.shape)));
        }
        Ok(Matrix { rows: self.shape[0], cols: self.shape[1], data: self.data.clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::Rational;

    fn q(n: i64) -> Rational {
        Rational::int(n)
    }

    #[test]
    fn kron_matches_index_convention() {
        let a = Matrix::from_rows(vec![vec![q(1), q(2)], vec![q(3), q(4)]]);
        let b = Matrix::from_rows(vec![vec![q(0), q(1)], vec![q(1), q(0)]]);
        let k = a.kron(&b);
        assert_eq!(*k.at(1, 2), q(2));
        assert_eq!(*k.at(2, 1), q(3));
        assert_eq!(multi_index(&[2, 3, 4], flat_index(&[2, 3, 4], &[1, 2, 3])), vec![1, 2, 3]);
    }
}
