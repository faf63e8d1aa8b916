//! Local data for the slice sweep: what a crossing, cap or cup does to the
//! strands it touches.

use crate::algebra::{HopfData, Laurent, Matrix, Rational, Scalar};
use crate::tangle::Side;

use super::rep::Rep;

type Q = Rational;

/// Linear map `A⊗B → B⊗A` stored by input column: `cols[a*db + b]` lists
/// `(w*da + v, coefficient)`.
#[derive(Clone, Debug)]
pub struct SparseOp<S> {
    pub dims_in: (usize, usize),
    pub cols: Vec<Vec<(usize, S)>>,
}

impl<S: Scalar> SparseOp<S> {
    fn from_dense(dims_in: (usize, usize), dense: Vec<Vec<S>>) -> Self {
        let cols = dense
            .into_iter()
            .map(|c| c.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect())
            .collect();
        SparseOp { dims_in, cols }
    }

    pub fn to_matrix(&self) -> Matrix<S> {
        let n = self.dims_in.0 * self.dims_in.1;
        let mut m = Matrix::zeros(n, n);
        for (i, col) in self.cols.iter().enumerate() {
            for (o, c) in col {
                *m.at_mut(*o, i) = c.clone();
            }
        }
        m
    }
}

/// A strict ribbon category presented on oriented strands. Colors are
/// model-specific indices; `up` is the strand orientation.
pub trait StrandModel {
    type S: Scalar;
    fn dim(&self, color: usize, up: bool) -> usize;
    /// `positive`: the bottom-left strand passes over.
    fn crossing(&self, positive: bool, left: (usize, bool), right: (usize, bool)) -> SparseOp<Self::S>;
    /// Covector on the two legs, left leg slow.
    fn cap(&self, side: Side, color: usize) -> Vec<Self::S>;
    /// Vector on the two legs, left leg slow.
    fn cup(&self, side: Side, color: usize) -> Vec<Self::S>;
}

/// Sparse columns of a matrix: `out[j]` lists `(i, m[i][j])`.
fn columns(m: &Matrix<Q>) -> Vec<Vec<(usize, Q)>> {
    m.sparse_cols()
}

struct StrandRep {
    dim: usize,
    /// columns of `ρ(e_i)` on `X` (down strands)
    down: Vec<Vec<Vec<(usize, Q)>>>,
    /// columns of `ρ(e_i)` on `X*` (up strands)
    up: Vec<Vec<Vec<(usize, Q)>>>,
    pivot: Matrix<Q>,
    pivot_inv: Matrix<Q>,
}

/// `Rep(H)` for a ribbon Hopf algebra. Down strands colored `X` carry `X`,
/// up strands carry `X*`. Crossings are `τ∘R` (positive) and
/// `R^{-1}∘τ` (negative); the tilde caps and cups use the pivot.
pub struct HopfModel<'a> {
    pub h: &'a HopfData,
    pub reps: Vec<Rep>,
    strands: Vec<StrandRep>,
    r_terms: Vec<(usize, usize, Q)>,
    rinv_terms: Vec<(usize, usize, Q)>,
}

fn terms(x: &[Q], d: usize) -> Vec<(usize, usize, Q)> {
    x.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k / d, k % d, c.clone())).collect()
}

impl<'a> HopfModel<'a> {
    pub fn new(h: &'a HopfData, reps: Vec<Rep>) -> HopfModel<'a> {
        let strands = reps
            .iter()
            .map(|x| {
                let dual = x.dual(h);
                StrandRep {
                    dim: x.dim,
                    down: x.action.iter().map(columns).collect(),
                    up: dual.action.iter().map(columns).collect(),
                    pivot: x.act(&h.pivot),
                    pivot_inv: x.act(&h.pivot_inv),
                }
            })
            .collect();
        let d = h.dim;
        HopfModel { h, reps, strands, r_terms: terms(&h.r, d), rinv_terms: terms(&h.r_inv, d) }
    }

    fn action(&self, color: usize, up: bool) -> &Vec<Vec<Vec<(usize, Q)>>> {
        let s = &self.strands[color];
        if up {
            &s.up
        } else {
            &s.down
        }
    }
}

impl StrandModel for HopfModel<'_> {
    type S = Q;

    fn dim(&self, color: usize, _up: bool) -> usize {
        self.strands[color].dim
    }

    fn crossing(&self, positive: bool, left: (usize, bool), right: (usize, bool)) -> SparseOp<Q> {
        let (da, db) = (self.dim(left.0, left.1), self.dim(right.0, right.1));
        let rv = self.action(left.0, left.1);
        let rw = self.action(right.0, right.1);
        let mut dense = vec![vec![Q::zero(); da * db]; da * db];
        // positive: v⊗w ↦ Σ r_ij e_j w ⊗ e_i v; negative: Σ r̄_ij e_i w ⊗ e_j v
        let list = if positive { &self.r_terms } else { &self.rinv_terms };
        for (i, j, c) in list {
            let (on_v, on_w) = if positive { (*i, *j) } else { (*j, *i) };
            for a in 0..da {
                for (v2, x) in &rv[on_v][a] {
                    let cx = c.clone() * x.clone();
                    for b in 0..db {
                        for (w2, y) in &rw[on_w][b] {
                            dense[a * db + b][w2 * da + v2].add_mul(&cx, y);
                        }
                    }
                }
            }
        }
        SparseOp::from_dense((da, db), dense)
    }

    fn cap(&self, side: Side, color: usize) -> Vec<Q> {
        let s = &self.strands[color];
        let n = s.dim;
        match side {
            // X* ⊗ X → 1
            Side::L => (0..n * n).map(|k| if k / n == k % n { Q::one() } else { Q::zero() }).collect(),
            // X ⊗ X* → 1, v_a ⊗ ξ_b ↦ ξ_b(g v_a)
            Side::R => (0..n * n).map(|k| s.pivot.at(k % n, k / n).clone()).collect(),
        }
    }

    fn cup(&self, side: Side, color: usize) -> Vec<Q> {
        let s = &self.strands[color];
        let n = s.dim;
        match side {
            // 1 → X ⊗ X*
            Side::R => (0..n * n).map(|k| if k / n == k % n { Q::one() } else { Q::zero() }).collect(),
            // 1 → X* ⊗ X, Σ ξ_a ⊗ g^{-1} v_a
            Side::L => (0..n * n).map(|k| s.pivot_inv.at(k % n, k / n).clone()).collect(),
        }
    }
}

/// The Kauffman bracket as a one-object model: a self-dual 2-dimensional
/// strand with `⟨X+⟩ = A·id + A^{-1}·(cup∘cap)` and loop value `-A²-A^{-2}`.
/// Orientations and colors are ignored.
pub struct KauffmanModel;

impl KauffmanModel {
    fn cap_vec() -> Vec<Laurent> {
        let z = Laurent::default();
        vec![z.clone(), Laurent::a_pow(1), -Laurent::a_pow(-1), z]
    }

    fn cup_vec() -> Vec<Laurent> {
        let z = Laurent::default();
        vec![z.clone(), -Laurent::a_pow(1), Laurent::a_pow(-1), z]
    }

    pub fn loop_value() -> Laurent {
        -Laurent::a_pow(2) - Laurent::a_pow(-2)
    }
}

impl StrandModel for KauffmanModel {
    type S = Laurent;

    fn dim(&self, _color: usize, _up: bool) -> usize {
        2
    }

    fn crossing(&self, positive: bool, _left: (usize, bool), _right: (usize, bool)) -> SparseOp<Laurent> {
        let (on_id, on_h) = if positive { (1, -1) } else { (-1, 1) };
        let (cap, cup) = (Self::cap_vec(), Self::cup_vec());
        let dense = (0..4)
            .map(|i| {
                (0..4)
                    .map(|o| {
                        let mut x = cup[o].clone() * cap[i].clone() * Laurent::a_pow(on_h);
                        if o == i {
                            x = x + Laurent::a_pow(on_id);
                        }
                        x
                    })
                    .collect()
            })
            .collect();
        SparseOp::from_dense((2, 2), dense)
    }

    fn cap(&self, _side: Side, _color: usize) -> Vec<Laurent> {
        Self::cap_vec()
    }

    fn cup(&self, _side: Side, _color: usize) -> Vec<Laurent> {
        Self::cup_vec()
    }
}
