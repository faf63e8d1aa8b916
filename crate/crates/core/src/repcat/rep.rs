//! Finite-dimensional modules over a Hopf algebra, given by the action
//! matrices of the basis elements.

use crate::algebra::hopf::{HopfCore, HopfData};
use crate::algebra::{Matrix, Rational, Scalar};
use crate::error::{Error, Result};

type Q = Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep {
    pub name: String,
    pub dim: usize,
    /// `action[i]` is the matrix of `e_i`.
    pub action: Vec<Matrix<Q>>,
}

impl Rep {
    /// Sum of basis actions weighted by the coordinates of `x`.
    pub fn act(&self, x: &[Q]) -> Matrix<Q> {
        let mut m: Matrix<Q> = Matrix::zeros(self.dim, self.dim);
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (dst, src) in m.data.iter_mut().zip(&self.action[i].data) {
                if !src.is_zero() {
                    dst.add_mul(c, src);
                }
            }
        }
        m
    }

    pub fn trivial(h: &HopfCore) -> Rep {
        let action = (0..h.dim).map(|i| Matrix::from_rows(vec![vec![h.counit[i].clone()]])).collect();
        Rep { name: "trivial".into(), dim: 1, action }
    }

    /// `H` acting on itself by left multiplication.
    pub fn regular(h: &HopfCore) -> Rep {
        let d = h.dim;
        let action = (0..d)
            .map(|i| Matrix::from_fn(d, d, |k, j| h.mult[(i * d + j) * d + k].clone()))
            .collect();
        Rep { name: "regular".into(), dim: d, action }
    }

    /// `(h·ξ)(x) = ξ(S(h)·x)`.
    pub fn dual(&self, h: &HopfCore) -> Rep {
        let action = (0..h.dim).map(|i| self.act(&h.antipode_elem(&h.basis(i))).transpose()).collect();
        Rep { name: format!("{}*", self.name), dim: self.dim, action }
    }

    /// `(h·ξ)(x) = ξ(S^{-1}(h)·x)`, so that `dual_inv(X)* = X`.
    pub fn dual_inv(&self, h: &HopfData) -> Rep {
        let action = (0..h.dim).map(|i| self.act(&h.antipode_inv_elem(&h.basis(i))).transpose()).collect();
        Rep { name: format!("*{}", self.name), dim: self.dim, action }
    }

    /// Action through the coproduct, first factor slow.
    pub fn tensor(&self, other: &Rep, h: &HopfCore) -> Rep {
        let d = h.dim;
        let action = (0..d)
            .map(|i| {
                let mut m: Matrix<Q> = Matrix::zeros(self.dim * other.dim, self.dim * other.dim);
                for (jk, c) in h.comult_terms(i) {
                    let t = self.action[jk / d].kron(&other.action[jk % d]).scale(c);
                    m = m.add(&t);
                }
                m
            })
            .collect();
        Rep { name: format!("({}⊗{})", self.name, other.name), dim: self.dim * other.dim, action }
    }

    /// Associativity and unit of the action.
    pub fn check(&self, h: &HopfCore) -> Result<()> {
        let d = h.dim;
        if self.action.len() != d || self.action.iter().any(|m| m.rows != self.dim || m.cols != self.dim) {
            return Err(Error::Shape(format!("action of {} has the wrong shape", self.name)));
        }
        if !self.act(&h.unit).is_identity() {
            return Err(Error::Axiom(format!("{}: unit does not act as identity", self.name)));
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = self.action[i].mul(&self.action[j]);
                let rhs = self.act(&h.mul(&h.basis(i), &h.basis(j)));
                if lhs != rhs {
                    return Err(Error::Axiom(format!("{}: action not multiplicative at ({i},{j})", self.name)));
                }
            }
        }
        Ok(())
    }

    /// Whether `f: self → other` commutes with the actions.
    pub fn is_module_map(&self, other: &Rep, f: &Matrix<Q>) -> bool {
        (0..self.action.len()).all(|i| f.mul(&self.action[i]) == other.action[i].mul(f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::hopf::{instance_sweedler, instance_trivial};

    #[test]
    fn module_axioms() {
        let h = instance_sweedler();
        let reg = Rep::regular(&h);
        assert_eq!(reg.dim, 4);
        reg.check(&h).unwrap();
        reg.dual(&h).check(&h).unwrap();
        reg.dual_inv(&h).check(&h).unwrap();
        let t = Rep::trivial(&h);
        assert_eq!(t.tensor(&reg, &h).dim, 4);
        t.tensor(&reg, &h).check(&h).unwrap();
        assert_eq!(reg.dual_inv(&h).dual(&h), Rep { name: "*regular*".into(), ..reg.clone() });
    }

    #[test]
    fn trivial_is_self_dual() {
        let h = instance_trivial();
        let t = Rep::trivial(&h);
        assert_eq!(t.dual(&h).action, t.action);
    }
}
