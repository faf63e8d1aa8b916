//! Finite-dimensional ribbon Hopf algebras given by exact structure constants.

use std::fmt;
use std::path::Path;

use serde_json::{json, Value};

use super::linsolve::{inverse, solve_exact, Solution};
use super::scalar::{Rational, Scalar};
use super::tensor::{multi_index, Matrix};
use crate::error::{Error, Result};

type Q = Rational;

/// Elements are coordinate vectors in the chosen basis; elements of `H^{⊗k}`
/// are vectors of length `d^k` with the first factor as the slowest digit.
pub type Elem = Vec<Q>;

/// Hopf algebra structure without the braiding data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfCore {
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: Elem,
    /// `mult[(i*d + j)*d + k]` is the coefficient of `e_k` in `e_i e_j`.
    pub mult: Vec<Q>,
    /// `comult[(i*d + j)*d + k]` is the coefficient of `e_j ⊗ e_k` in `Δ(e_i)`.
    pub comult: Vec<Q>,
    pub counit: Elem,
    /// `antipode[i*d + j]` is the coefficient of `e_j` in `S(e_i)`.
    pub antipode: Vec<Q>,
    mult_nz: Vec<Vec<(usize, Q)>>,
    comult_nz: Vec<Vec<(usize, Q)>>,
}

/// Ribbon Hopf algebra: core structure plus R-matrix and ribbon element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfData {
    pub core: HopfCore,
    /// coefficient of `e_i ⊗ e_j` at `i*d + j`
    pub r: Elem,
    pub r_inv: Elem,
    pub ribbon: Elem,
    pub ribbon_inv: Elem,
    pub drinfeld: Elem,
    pub pivot: Elem,
    pub pivot_inv: Elem,
    pub antipode_inv: Vec<Q>,
}

impl std::ops::Deref for HopfData {
    type Target = HopfCore;
    fn deref(&self) -> &HopfCore {
        &self.core
    }
}

pub fn basis_vec(d: usize, i: usize) -> Elem {
    let mut v = vec![Q::zero(); d];
    v[i] = Q::one();
    v
}

pub fn kron_vec(a: &[Q], b: &[Q]) -> Elem {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(if x.is_zero() || y.is_zero() { Q::zero() } else { x.clone() * y.clone() });
        }
    }
    out
}

/// Reorder tensor factors: output factor `p` is input factor `perm[p]`.
pub fn permute_factors(x: &[Q], d: usize, perm: &[usize]) -> Elem {
    let k = perm.len();
    let shape = vec![d; k];
    let mut out = vec![Q::zero(); x.len()];
    for (idx, v) in x.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let mi = multi_index(&shape, idx);
        let mut t = 0;
        for p in 0..k {
            t = t * d + mi[perm[p]];
        }
        out[t] = v.clone();
    }
    out
}

fn add_vec(a: &mut [Q], b: &[Q]) {
    for (x, y) in a.iter_mut().zip(b) {
        x.add_assign(y);
    }
}

fn scale_vec(a: &[Q], c: &Q) -> Elem {
    a.iter().map(|x| x.clone() * c.clone()).collect()
}

fn nonzeros(v: &[Q], chunk: usize) -> Vec<Vec<(usize, Q)>> {
    v.chunks(chunk)
        .map(|c| c.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (k, x.clone())).collect())
        .collect()
}

impl HopfCore {
    pub fn new(
        name: &str,
        basis: Vec<String>,
        unit: Elem,
        mult: Vec<Q>,
        comult: Vec<Q>,
        counit: Elem,
        antipode: Vec<Q>,
    ) -> HopfCore {
        let d = basis.len();
        let mult_nz = if mult.len() == d * d * d { nonzeros(&mult, d) } else { vec![] };
        let comult_nz = if comult.len() == d * d * d { nonzeros(&comult, d * d) } else { vec![] };
        HopfCore { name: name.into(), dim: d, basis, unit, mult, comult, counit, antipode, mult_nz, comult_nz }
    }

    /// Nonzero structure constants of `e_i e_j`.
    #[inline]
    pub fn mult_terms(&self, i: usize, j: usize) -> &[(usize, Q)] {
        &self.mult_nz[i * self.dim + j]
    }

    /// Nonzero terms `(j*d + k, c)` of `Δ(e_i)`.
    #[inline]
    pub fn comult_terms(&self, i: usize) -> &[(usize, Q)] {
        &self.comult_nz[i]
    }

    pub fn basis(&self, i: usize) -> Elem {
        basis_vec(self.dim, i)
    }

    pub fn mul(&self, a: &[Q], b: &[Q]) -> Elem {
        let d = self.dim;
        let mut out = vec![Q::zero(); d];
        for i in 0..d {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if b[j].is_zero() {
                    continue;
                }
                let c = a[i].clone() * b[j].clone();
                for (k, m) in self.mult_terms(i, j) {
                    out[*k].add_mul(&c, m);
                }
            }
        }
        out
    }

    /// Matrix of `x ↦ a x` acting on coordinate columns.
    pub fn left_mult(&self, a: &[Q]) -> Matrix<Q> {
        let d = self.dim;
        let mut m = Matrix::zeros(d, d);
        for j in 0..d {
            let col = self.mul(a, &self.basis(j));
            for i in 0..d {
                *m.at_mut(i, j) = col[i].clone();
            }
        }
        m
    }

    /// Matrix of `x ↦ x a`.
    pub fn right_mult(&self, a: &[Q]) -> Matrix<Q> {
        let d = self.dim;
        let mut m = Matrix::zeros(d, d);
        for j in 0..d {
            let col = self.mul(&self.basis(j), a);
            for i in 0..d {
                *m.at_mut(i, j) = col[i].clone();
            }
        }
        m
    }

    /// Product in `H^{⊗k}`.
    pub fn mul_k(&self, k: usize, x: &[Q], y: &[Q]) -> Elem {
        let d = self.dim;
        let shape = vec![d; k];
        let mut out = vec![Q::zero(); x.len()];
        let xs: Vec<(usize, &Q)> = x.iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
        let ys: Vec<(usize, &Q)> = y.iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
        for &(ix, vx) in &xs {
            let mx = multi_index(&shape, ix);
            for &(iy, vy) in &ys {
                let my = multi_index(&shape, iy);
                // expand the slotwise products
                let mut acc: Vec<(usize, Q)> = vec![(0, vx.clone() * vy.clone())];
                for s in 0..k {
                    let mut next = Vec::new();
                    for (t, c) in &acc {
                        for (r, m) in self.mult_terms(mx[s], my[s]) {
                            next.push((t * d + r, c.clone() * m.clone()));
                        }
                    }
                    acc = next;
                }
                for (t, c) in acc {
                    out[t].add_assign(&c);
                }
            }
        }
        out
    }

    pub fn comult_elem(&self, a: &[Q]) -> Elem {
        let d = self.dim;
        let mut out = vec![Q::zero(); d * d];
        for i in 0..d {
            if a[i].is_zero() {
                continue;
            }
            for (jk, c) in self.comult_terms(i) {
                out[*jk].add_mul(&a[i], c);
            }
        }
        out
    }

    pub fn counit_elem(&self, a: &[Q]) -> Q {
        let mut s = Q::zero();
        for (x, e) in a.iter().zip(&self.counit) {
            s.add_mul(x, e);
        }
        s
    }

    pub fn antipode_elem(&self, a: &[Q]) -> Elem {
        self.apply_map(&self.antipode, a)
    }

    /// Apply a linear endomorphism stored as `map[i*d + j]` = coefficient of `e_j` in `f(e_i)`.
    pub fn apply_map(&self, map: &[Q], a: &[Q]) -> Elem {
        let d = self.dim;
        let mut out = vec![Q::zero(); d];
        for i in 0..d {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..d {
                out[j].add_mul(&a[i], &map[i * d + j]);
            }
        }
        out
    }

    /// Apply a linear map of `H` to one factor of an element of `H^{⊗k}`.
    pub fn apply_map_slot(&self, map: &[Q], x: &[Q], k: usize, slot: usize) -> Elem {
        let d = self.dim;
        let inner = d.pow((k - slot - 1) as u32);
        let mut out = vec![Q::zero(); x.len()];
        for (idx, v) in x.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let s = (idx / inner) % d;
            let base = idx - s * inner;
            for j in 0..d {
                let c = &map[s * d + j];
                if !c.is_zero() {
                    out[base + j * inner].add_mul(v, c);
                }
            }
        }
        out
    }

    /// Apply `Δ` to factor `slot` of an element of `H^{⊗k}` (result in `H^{⊗k+1}`).
    pub fn comult_slot(&self, x: &[Q], k: usize, slot: usize) -> Elem {
        let d = self.dim;
        let inner = d.pow((k - slot - 1) as u32);
        let mut out = vec![Q::zero(); x.len() * d];
        for (idx, v) in x.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let outer = idx / (inner * d);
            let s = (idx / inner) % d;
            let rest = idx % inner;
            for (jk, c) in self.comult_terms(s) {
                out[(outer * d * d + jk) * inner + rest].add_mul(v, c);
            }
        }
        out
    }

    /// Apply `ε` to factor `slot` (result in `H^{⊗k-1}`).
    pub fn counit_slot(&self, x: &[Q], k: usize, slot: usize) -> Elem {
        let d = self.dim;
        let inner = d.pow((k - slot - 1) as u32);
        let mut out = vec![Q::zero(); x.len() / d];
        for (idx, v) in x.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let outer = idx / (inner * d);
            let s = (idx / inner) % d;
            let rest = idx % inner;
            out[outer * inner + rest].add_mul(v, &self.counit[s]);
        }
        out
    }

    /// Insert the unit as a new factor at `slot` of an element of `H^{⊗k}`.
    pub fn unit_slot(&self, x: &[Q], k: usize, slot: usize) -> Elem {
        let d = self.dim;
        let inner = d.pow((k - slot) as u32);
        let mut out = vec![Q::zero(); x.len() * d];
        for (idx, v) in x.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let outer = idx / inner;
            let rest = idx % inner;
            for (j, u) in self.unit.iter().enumerate() {
                if !u.is_zero() {
                    out[(outer * d + j) * inner + rest].add_mul(v, u);
                }
            }
        }
        out
    }

    pub fn unit_k(&self, k: usize) -> Elem {
        let mut x = vec![Q::one()];
        for _ in 0..k {
            x = kron_vec(&x, &self.unit);
        }
        x
    }

    /// Linear map from the basis images: `map[i*d+j]` = coefficient of `e_j` in `f(e_i)`.
    pub fn map_from_images(&self, images: &[Elem]) -> Vec<Q> {
        images.iter().flatten().cloned().collect()
    }

    /// Solve the antipode axiom `m(S ⊗ id)Δ = ηε` for `S`.
    pub fn solve_antipode(&self) -> Result<Vec<Q>> {
        let d = self.dim;
        // unknown s[a*d+b]: coefficient of e_b in S(e_a)
        let mut a: Matrix<Q> = Matrix::zeros(d * d, d * d);
        let mut rhs = vec![Q::zero(); d * d];
        for k in 0..d {
            for (jk, c) in self.comult[k * d * d..(k + 1) * d * d].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (j, l) = (jk / d, jk % d);
                // c * S(e_j) e_l = sum_b s[j,b] c e_b e_l
                for b in 0..d {
                    for (r, m) in self.mult_terms(b, l) {
                        a.at_mut(k * d + r, j * d + b).add_mul(c, m);
                    }
                }
            }
            for r in 0..d {
                rhs[k * d + r] = self.counit[k].clone() * self.unit[r].clone();
            }
        }
        match solve_exact(&a, &rhs)? {
            Solution::Unique(s) => Ok(s),
            Solution::Underdetermined { .. } => Err(Error::Axiom("antipode not unique".into())),
        }
    }

    pub fn is_grouplike(&self, g: &[Q]) -> bool {
        self.comult_elem(g) == kron_vec(g, g) && self.counit_elem(g).is_one()
    }

    /// Group-like elements whose coordinates lie in {-1, 0, 1}.
    pub fn small_grouplikes(&self) -> Vec<Elem> {
        let d = self.dim;
        if d > 8 {
            return (0..d).map(|i| self.basis(i)).filter(|g| self.is_grouplike(g)).collect();
        }
        let mut out = Vec::new();
        for code in 0..3usize.pow(d as u32) {
            let mut c = code;
            let g: Elem = (0..d)
                .map(|_| {
                    let t = c % 3;
                    c /= 3;
                    Q::int(t as i64 - 1)
                })
                .collect();
            if self.is_grouplike(&g) {
                out.push(g);
            }
        }
        out
    }

    /// Characters `H → Q` with values in {-1, 0, 1} on the basis.
    pub fn small_characters(&self) -> Vec<Elem> {
        let d = self.dim;
        let mut out = Vec::new();
        for code in 0..3usize.pow(d as u32) {
            let mut c = code;
            let chi: Elem = (0..d)
                .map(|_| {
                    let t = c % 3;
                    c /= 3;
                    Q::int(t as i64 - 1)
                })
                .collect();
            let ev = |x: &[Q]| {
                let mut s = Q::zero();
                for (a, b) in x.iter().zip(&chi) {
                    s.add_mul(a, b);
                }
                s
            };
            if !ev(&self.unit).is_one() {
                continue;
            }
            let ok = (0..d).all(|i| {
                (0..d).all(|j| ev(&self.mul(&self.basis(i), &self.basis(j))) == chi[i].clone() * chi[j].clone())
            });
            if ok {
                out.push(chi);
            }
        }
        out
    }
}

impl HopfData {
    /// Assemble from core data, R-matrix and ribbon element; derives the
    /// inverses, Drinfeld element and pivot. Does not run the checker.
    pub fn assemble(core: HopfCore, r: Elem, ribbon: Elem) -> Result<HopfData> {
        let d = core.dim;
        let r_inv = invert_in(&core, 2, &r).ok_or_else(|| Error::Axiom("R not invertible".into()))?;
        let ribbon_inv =
            invert_in(&core, 1, &ribbon).ok_or_else(|| Error::Axiom("ribbon element not invertible".into()))?;
        Self::assemble_with(core, r, r_inv, ribbon, ribbon_inv, d)
    }

    fn assemble_with(core: HopfCore, r: Elem, r_inv: Elem, ribbon: Elem, ribbon_inv: Elem, d: usize) -> Result<HopfData> {
        // u = sum S(b_i) a_i for R = sum a_i ⊗ b_i
        let u = drinfeld_element(&core, &r);
        let pivot = core.mul(&u, &ribbon_inv);
        let pivot_inv = invert_in(&core, 1, &pivot).ok_or_else(|| Error::Axiom("pivot not invertible".into()))?;
        let smat = Matrix::from_fn(d, d, |i, j| core.antipode[j * d + i].clone());
        let sinv = inverse(&smat).ok_or_else(|| Error::Axiom("antipode not invertible".into()))?;
        let antipode_inv = (0..d * d).map(|k| sinv.at(k % d, k / d).clone()).collect();
        Ok(HopfData { core, r, r_inv, ribbon, ribbon_inv, drinfeld: u, pivot, pivot_inv, antipode_inv })
    }

    pub fn antipode_inv_elem(&self, a: &[Q]) -> Elem {
        self.core.apply_map(&self.antipode_inv, a)
    }

    pub fn check(&self) -> CheckReport {
        check_ribbon_hopf(self)
    }
}

/// Inverse of `x` in `H^{⊗k}`, if it exists.
pub fn invert_in(core: &HopfCore, k: usize, x: &[Q]) -> Option<Elem> {
    let n = core.dim.pow(k as u32);
    let mut m = Matrix::zeros(n, n);
    for j in 0..n {
        let col = core.mul_k(k, x, &basis_vec(n, j));
        for i in 0..n {
            *m.at_mut(i, j) = col[i].clone();
        }
    }
    let inv = inverse(&m)?;
    let one = core.unit_k(k);
    let y = inv.apply(&one);
    (core.mul_k(k, &y, x) == one).then_some(y)
}

/// Outcome of the axiom checker; one entry per named axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub results: Vec<(String, bool)>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.1)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.results.iter().filter(|r| !r.1).map(|r| r.0.as_str()).collect()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, ok) in &self.results {
            writeln!(f, "{} {}", if *ok { "pass" } else { "FAIL" }, name)?;
        }
        Ok(())
    }
}

pub fn check_hopf_core(h: &HopfCore) -> Vec<(String, bool)> {
    let d = h.dim;
    let e = |i| h.basis(i);
    let all = |f: &dyn Fn(usize) -> bool| (0..d).all(f);
    let mut res = Vec::new();
    let mut push = |n: &str, ok: bool| res.push((n.to_string(), ok));
    let shapes_ok = h.unit.len() == d
        && h.mult.len() == d * d * d
        && h.comult.len() == d * d * d
        && h.counit.len() == d
        && h.antipode.len() == d * d;
    push("shapes", shapes_ok);
    if !shapes_ok {
        return res;
    }
    push(
        "associativity",
        all(&|i| all(&|j| all(&|k| h.mul(&h.mul(&e(i), &e(j)), &e(k)) == h.mul(&e(i), &h.mul(&e(j), &e(k)))))),
    );
    push("unit", all(&|i| h.mul(&h.unit, &e(i)) == e(i) && h.mul(&e(i), &h.unit) == e(i)));
    push(
        "coassociativity",
        all(&|i| {
            let c = h.comult_elem(&e(i));
            h.comult_slot(&c, 2, 0) == h.comult_slot(&c, 2, 1)
        }),
    );
    push(
        "counit",
        all(&|i| {
            let c = h.comult_elem(&e(i));
            h.counit_slot(&c, 2, 0) == e(i) && h.counit_slot(&c, 2, 1) == e(i)
        }),
    );
    push(
        "comult_multiplicative",
        all(&|i| {
            all(&|j| h.comult_elem(&h.mul(&e(i), &e(j))) == h.mul_k(2, &h.comult_elem(&e(i)), &h.comult_elem(&e(j))))
        }),
    );
    push(
        "counit_multiplicative",
        all(&|i| all(&|j| h.counit_elem(&h.mul(&e(i), &e(j))) == h.counit[i].clone() * h.counit[j].clone())),
    );
    push("comult_unit", h.comult_elem(&h.unit) == kron_vec(&h.unit, &h.unit));
    push("counit_unit", h.counit_elem(&h.unit).is_one());
    let s_axiom = |left: bool| {
        all(&|i| {
            let c = h.comult_elem(&e(i));
            let mut acc = vec![Q::zero(); d];
            for jk in 0..d * d {
                if c[jk].is_zero() {
                    continue;
                }
                let (a, b) = (e(jk / d), e(jk % d));
                let t = if left { h.mul(&h.antipode_elem(&a), &b) } else { h.mul(&a, &h.antipode_elem(&b)) };
                add_vec(&mut acc, &scale_vec(&t, &c[jk]));
            }
            acc == scale_vec(&h.unit, &h.counit[i])
        })
    };
    push("antipode", s_axiom(true) && s_axiom(false));
    res
}

/// Evaluate every Hopf, quasitriangular and ribbon axiom exactly.
pub fn check_ribbon_hopf(h: &HopfData) -> CheckReport {
    let mut res = check_hopf_core(&h.core);
    if !res.iter().all(|r| r.1) {
        return CheckReport { results: res };
    }
    let d = h.dim;
    let e = |i| h.basis(i);
    let one2 = h.unit_k(2);
    let mut push = |n: &str, ok: bool| res.push((n.to_string(), ok));
    push("R_inverse", h.mul_k(2, &h.r, &h.r_inv) == one2 && h.mul_k(2, &h.r_inv, &h.r) == one2);
    push(
        "almost_cocommutative",
        (0..d).all(|i| {
            let c = h.comult_elem(&e(i));
            let cop = permute_factors(&c, d, &[1, 0]);
            h.mul_k(2, &cop, &h.r) == h.mul_k(2, &h.r, &c)
        }),
    );
    let r13 = permute_factors(&kron_vec(&h.r, &h.unit), d, &[0, 2, 1]);
    let r23 = kron_vec(&h.unit, &h.r);
    let r12 = kron_vec(&h.r, &h.unit);
    push("quasitriangular_left", h.comult_slot(&h.r, 2, 0) == h.mul_k(3, &r13, &r23));
    push("quasitriangular_right", h.comult_slot(&h.r, 2, 1) == h.mul_k(3, &r13, &r12));
    let v = &h.ribbon;
    push("ribbon_inverse", h.mul(v, &h.ribbon_inv) == h.unit);
    push("ribbon_central", (0..d).all(|i| h.mul(v, &e(i)) == h.mul(&e(i), v)));
    push("ribbon_antipode", h.antipode_elem(v) == *v);
    push("ribbon_counit", h.counit_elem(v).is_one());
    let r21 = permute_factors(&h.r, d, &[1, 0]);
    let m = h.mul_k(2, &r21, &h.r);
    push("ribbon_comult", h.mul_k(2, &m, &h.comult_elem(v)) == kron_vec(v, v));
    let s2 = |x: &[Q]| h.antipode_elem(&h.antipode_elem(x));
    push(
        "ribbon_square",
        h.mul(v, v) == h.mul(&h.drinfeld, &h.antipode_elem(&h.drinfeld)),
    );
    push("pivot_grouplike", h.is_grouplike(&h.pivot) && h.mul(&h.pivot, &h.pivot_inv) == h.unit);
    push(
        "pivot_conjugation",
        (0..d).all(|i| s2(&e(i)) == h.mul(&h.mul(&h.pivot, &e(i)), &h.pivot_inv)),
    );
    CheckReport { results: res }
}

// ---------------------------------------------------------------- instances

/// The 1-dimensional Hopf algebra with `R = 1 ⊗ 1` and `v = 1`.
pub fn instance_trivial() -> HopfData {
    let one = vec![Q::one()];
    let core = HopfCore::new(
        "trivial",
        vec!["1".into()],
        one.clone(),
        one.clone(),
        one.clone(),
        one.clone(),
        one.clone(),
    );
    HopfData::assemble(core, one.clone(), one).expect("trivial instance")
}

fn core_from_tables(
    name: &str,
    basis: &[&str],
    mul: impl Fn(usize, usize) -> Elem,
    comult: impl Fn(usize) -> Elem,
    counit: Elem,
) -> HopfCore {
    let d = basis.len();
    let mut unit = vec![Q::zero(); d];
    unit[0] = Q::one();
    let mult: Vec<Q> = (0..d).flat_map(|i| (0..d).flat_map(|j| mul(i, j)).collect::<Vec<_>>()).collect();
    let comult: Vec<Q> = (0..d).flat_map(&comult).collect();
    let names = basis.iter().map(|s| s.to_string()).collect();
    let mut core = HopfCore::new(name, names, unit, mult, comult, counit, vec![Q::zero(); d * d]);
    core.antipode = core.solve_antipode().expect("antipode exists");
    core
}

/// Sweedler's algebra on `{1, g, x, gx}` without braiding data.
pub fn sweedler_core() -> HopfCore {
    // basis index = a + 2b for g^a x^b
    let mono = |a: usize, b: usize| -> Elem {
        let mut v = vec![Q::zero(); 4];
        v[a + 2 * b] = Q::one();
        v
    };
    let mul = |i: usize, j: usize| -> Elem {
        let (a, b, c, dd) = (i % 2, i / 2, j % 2, j / 2);
        if b + dd >= 2 {
            return vec![Q::zero(); 4];
        }
        let sign = if b * c == 1 { -1 } else { 1 };
        scale_vec(&mono((a + c) % 2, b + dd), &Q::int(sign))
    };
    let comult = |i: usize| -> Elem {
        // Δ(g^a x^b) = (g^a ⊗ g^a)(x ⊗ 1 + g ⊗ x)^b
        let (a, b) = (i % 2, i / 2);
        let ga = mono(a, 0);
        let base = kron_vec(&ga, &ga);
        if b == 0 {
            base
        } else {
            let mut out = vec![Q::zero(); 16];
            let gx = mono(a, 1);
            add_vec(&mut out, &kron_vec(&gx, &ga));
            add_vec(&mut out, &kron_vec(&mono((a + 1) % 2, 0), &gx));
            out
        }
    };
    let counit = vec![Q::one(), Q::one(), Q::zero(), Q::zero()];
    core_from_tables("sweedler", &["1", "g", "x", "gx"], mul, comult, counit)
}

/// Solve `Δ^op(h) R = R Δ(h)` together with the counit normalizations; returns
/// a particular solution and a kernel basis of the affine solution family.
pub fn linear_r_family(core: &HopfCore) -> Result<(Elem, Vec<Elem>)> {
    let d = core.dim;
    let n = d * d;
    let mut rows: Vec<Vec<Q>> = Vec::new();
    let mut rhs: Vec<Q> = Vec::new();
    let cols: Vec<Elem> = (0..n).map(|k| basis_vec(n, k)).collect();
    for i in 0..d {
        let c = core.comult_elem(&core.basis(i));
        let cop = permute_factors(&c, d, &[1, 0]);
        let images: Vec<Elem> =
            cols.iter().map(|x| {
                let mut l = core.mul_k(2, &cop, x);
                let r = core.mul_k(2, x, &c);
                for (a, b) in l.iter_mut().zip(r) {
                    *a = a.clone() - b;
                }
                l
            }).collect();
        for row in 0..n {
            rows.push(images.iter().map(|im| im[row].clone()).collect());
            rhs.push(Q::zero());
        }
    }
    for slot in 0..2 {
        let images: Vec<Elem> = cols.iter().map(|x| core.counit_slot(x, 2, slot)).collect();
        for row in 0..d {
            rows.push(images.iter().map(|im| im[row].clone()).collect());
            rhs.push(core.unit[row].clone());
        }
    }
    let a = Matrix::from_rows(rows);
    match solve_exact(&a, &rhs)? {
        Solution::Unique(x) => Ok((x, vec![])),
        Solution::Underdetermined { particular, kernel } => Ok((particular, kernel)),
    }
}

/// Ribbon element search: `v = γ^{-1} u` or `u γ^{-1}` for small group-likes `γ`.
pub fn find_ribbon(core: &HopfCore, r: &Elem, grouplikes: &[Elem]) -> Option<HopfData> {
    let probe = HopfData::assemble(core.clone(), r.clone(), core.unit.clone()).ok()?;
    let u = probe.drinfeld.clone();
    for g in grouplikes {
        let Some(ginv) = invert_in(core, 1, g) else { continue };
        for v in [core.mul(&ginv, &u), core.mul(&u, &ginv)] {
            if let Ok(h) = HopfData::assemble(core.clone(), r.clone(), v) {
                if check_ribbon_hopf(&h).passed() {
                    return Some(h);
                }
            }
        }
    }
    None
}

/// Sweedler's 4-dimensional ribbon Hopf algebra. `R` and `v` are solved for
/// and then validated by the checker.
pub fn instance_sweedler() -> HopfData {
    let core = sweedler_core();
    let (part, kernel) = linear_r_family(&core).expect("linear R system");
    let grouplikes = core.small_grouplikes();
    let params = [Q::one(), Q::zero(), -Q::one(), Q::new(1, 2)];
    let mut choices: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..kernel.len() {
        choices = choices
            .into_iter()
            .flat_map(|c| (0..params.len()).map(move |p| [c.clone(), vec![p]].concat()))
            .collect();
    }
    for c in choices {
        let mut r = part.clone();
        for (k, &p) in c.iter().enumerate() {
            add_vec(&mut r, &scale_vec(&kernel[k], &params[p]));
        }
        if r.iter().all(|x| x.is_zero()) {
            continue;
        }
        if let Some(h) = find_ribbon(&core, &r, &grouplikes) {
            return h;
        }
    }
    panic!("no (R, v) for Sweedler's algebra passes the checker");
}

/// Group algebra of the cyclic group of order 2.
pub fn z2_core() -> HopfCore {
    let mul = |i: usize, j: usize| basis_vec(2, (i + j) % 2);
    let comult = |i: usize| kron_vec(&basis_vec(2, i), &basis_vec(2, i));
    core_from_tables("z2", &["1", "g"], mul, comult, vec![Q::one(), Q::one()])
}

/// Drinfeld double `D(H) = H^{*cop} ⋈ H` on the basis `e^i ⊗ e_j` (index
/// `i*d + j`), with cross relation
/// `(1 ⊗ a)(f ⊗ 1) = f(S^{-1}(a_3) · a_1) ⊗ a_2` and `R = Σ (1 ⊗ e_i) ⊗ (e^i ⊗ 1)`.
/// The ribbon element is searched among `γ^{-1} u` for group-likes `γ = χ ⊗ l`.
pub fn drinfeld_double(h: &HopfCore) -> Result<HopfData> {
    let d = h.dim;
    let dd = d * d;
    let sinv_map = {
        let smat = Matrix::from_fn(d, d, |i, j| h.antipode[j * d + i].clone());
        let inv = inverse(&smat).ok_or_else(|| Error::Axiom("antipode not invertible".into()))?;
        (0..d * d).map(|k| inv.at(k % d, k / d).clone()).collect::<Vec<Q>>()
    };
    // product in H*: (e^i e^m)(e_n) = comult[n][i][m]
    let dual_mul = |i: usize, m: usize| -> Elem { (0..d).map(|n| h.comult[n * dd + i * d + m].clone()).collect() };
    let dual_unit = h.counit.clone();
    // Δ^{cop}_{H*}(e^k) = sum_{i,j} mult[j][i][k] e^i ⊗ e^j
    let dual_comult_cop = |k: usize| -> Elem { (0..dd).map(|ij| h.mult[((ij % d) * d + ij / d) * d + k].clone()).collect() };
    let names: Vec<String> = (0..d)
        .flat_map(|i| (0..d).map(move |j| (i, j)))
        .map(|(i, j)| format!("d{}.{}", h.basis[i], h.basis[j]))
        .collect();
    let mut mult = vec![Q::zero(); dd * dd * dd];
    for a in 0..d {
        let c = h.comult_elem(&h.basis(a));
        let t3 = h.comult_slot(&c, 2, 1);
        let terms: Vec<(usize, usize, usize, Q)> = t3
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(idx, c)| (idx / dd, (idx / d) % d, idx % d, c.clone()))
            .collect();
        for g in 0..d {
            // (1 ⊗ a)(e^g ⊗ 1) as a sum of (functional, element) pairs
            let mut moved: Vec<(Elem, usize, Q)> = Vec::new();
            for (a1, a2, a3, c) in &terms {
                let l = h.apply_map(&sinv_map, &h.basis(*a3));
                let func: Elem = (0..d).map(|m| h.mul(&h.mul(&l, &h.basis(m)), &h.basis(*a1))[g].clone()).collect();
                moved.push((func, *a2, c.clone()));
            }
            for f in 0..d {
                for b in 0..d {
                    let mut out = vec![Q::zero(); dd];
                    for (func, a2, c) in &moved {
                        let mut fpart = vec![Q::zero(); d];
                        for (m, fm) in func.iter().enumerate() {
                            if !fm.is_zero() {
                                add_vec(&mut fpart, &scale_vec(&dual_mul(f, m), fm));
                            }
                        }
                        let hpart = h.mul(&h.basis(*a2), &h.basis(b));
                        add_vec(&mut out, &scale_vec(&kron_vec(&fpart, &hpart), c));
                    }
                    let row = ((f * d + a) * dd + g * d + b) * dd;
                    mult[row..row + dd].clone_from_slice(&out);
                }
            }
        }
    }
    let mut comult = vec![Q::zero(); dd * dd * dd];
    for f in 0..d {
        let df = dual_comult_cop(f);
        for a in 0..d {
            let da = h.comult_elem(&h.basis(a));
            // (f1 ⊗ a1) ⊗ (f2 ⊗ a2)
            let t = permute_factors(&kron_vec(&df, &da), d, &[0, 2, 1, 3]);
            let row = (f * d + a) * dd * dd;
            comult[row..row + dd * dd].clone_from_slice(&t);
        }
    }
    let counit: Elem = (0..dd).map(|k| h.unit[k / d].clone() * h.counit[k % d].clone()).collect();
    let unit = kron_vec(&dual_unit, &h.unit);
    let mut core = HopfCore::new(
        &format!("double_{}", h.name),
        names,
        unit,
        mult,
        comult,
        counit,
        vec![Q::zero(); dd * dd],
    );
    // S(f ⊗ a) = (1 ⊗ S(a)) (f∘S^{-1} ⊗ 1)
    let mut antipode = Vec::with_capacity(dd * dd);
    for f in 0..d {
        let fs: Elem = (0..d).map(|m| h.apply_map(&sinv_map, &h.basis(m))[f].clone()).collect();
        for a in 0..d {
            let left = kron_vec(&dual_unit, &h.antipode_elem(&h.basis(a)));
            let right = kron_vec(&fs, &h.unit);
            antipode.extend(core.mul(&left, &right));
        }
    }
    core.antipode = antipode;
    let mut r = vec![Q::zero(); dd * dd];
    for i in 0..d {
        let one_ei = kron_vec(&dual_unit, &h.basis(i));
        let ei_one = kron_vec(&basis_vec(d, i), &h.unit);
        add_vec(&mut r, &kron_vec(&one_ei, &ei_one));
    }
    // R^{-1} = (S ⊗ id)(R)
    let r_inv = core.apply_map_slot(&core.antipode, &r, 2, 0);
    let u = drinfeld_element(&core, &r);
    let mut candidates = Vec::new();
    for chi in h.small_characters() {
        for g in h.small_grouplikes() {
            candidates.push(kron_vec(&chi, &g));
        }
    }
    for gam in candidates {
        let Some(ginv) = invert_in(&core, 1, &gam) else { continue };
        let v = core.mul(&ginv, &u);
        let Some(v_inv) = invert_in(&core, 1, &v) else { continue };
        let hd = HopfData::assemble_with(core.clone(), r.clone(), r_inv.clone(), v, v_inv, dd)?;
        if check_ribbon_hopf(&hd).passed() {
            return Ok(hd);
        }
    }
    Err(Error::Axiom(format!("double of {} has no ribbon element of the searched form", h.name)))
}

fn drinfeld_element(core: &HopfCore, r: &[Q]) -> Elem {
    let d = core.dim;
    let mut u = vec![Q::zero(); d];
    for i in 0..d {
        for j in 0..d {
            let c = &r[i * d + j];
            if c.is_zero() {
                continue;
            }
            let t = core.mul(&core.antipode_elem(&core.basis(j)), &core.basis(i));
            add_vec(&mut u, &scale_vec(&t, c));
        }
    }
    u
}

/// Group algebra of the symmetric group on three letters.
pub fn s3_core() -> HopfCore {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    // (p q)(x) = p(q(x))
    let mul = |i: usize, j: usize| {
        let (p, q) = (perms[i], perms[j]);
        basis_vec(6, idx([p[q[0]], p[q[1]], p[q[2]]]))
    };
    let comult = |i: usize| kron_vec(&basis_vec(6, i), &basis_vec(6, i));
    let names = ["e", "s1", "s2", "t", "c", "cc"];
    core_from_tables("s3", &names, mul, comult, vec![Q::one(); 6])
}

/// `D(Q[Z2])`, commutative and non-triangular.
pub fn instance_double_z2() -> HopfData {
    drinfeld_double(&z2_core()).expect("double of Z2")
}

/// `D(Q[S3])`, 36-dimensional, neither commutative nor triangular.
pub fn instance_double_s3() -> HopfData {
    drinfeld_double(&s3_core()).expect("double of S3")
}

// ---------------------------------------------------------------- JSON

fn arr1(v: &[Q]) -> Value {
    Value::Array(v.iter().map(|x| x.to_json()).collect())
}

fn arr2(v: &[Q], d: usize) -> Value {
    Value::Array(v.chunks(d).map(arr1).collect())
}

fn arr3(v: &[Q], d: usize) -> Value {
    Value::Array(v.chunks(d * d).map(|c| arr2(c, d)).collect())
}

fn flat(v: &Value, depth: usize, d: usize, field: &str) -> Result<Vec<Q>> {
    let bad = || Error::Parse(format!("field {field:?}: expected nested array of depth {depth} and side {d}"));
    if depth == 0 {
        return Ok(vec![Q::from_json(v)?]);
    }
    let a = v.as_array().ok_or_else(bad)?;
    if a.len() != d {
        return Err(bad());
    }
    let mut out = Vec::new();
    for x in a {
        out.extend(flat(x, depth - 1, d, field)?);
    }
    Ok(out)
}

pub fn hopf_to_json(h: &HopfData) -> Value {
    let d = h.dim;
    json!({
        "name": h.name,
        "dim": d,
        "basis": h.basis,
        "unit": arr1(&h.unit),
        "mult": arr3(&h.mult, d),
        "comult": arr3(&h.comult, d),
        "counit": arr1(&h.counit),
        "antipode": arr2(&h.antipode, d),
        "R": arr2(&h.r, d),
        "R_inv": arr2(&h.r_inv, d),
        "ribbon": arr1(&h.ribbon),
        "ribbon_inv": arr1(&h.ribbon_inv),
    })
}

/// Parse and validate; axiom failures are reported with the checker output.
pub fn hopf_from_json(v: &Value) -> Result<HopfData> {
    let get = |k: &str| v.get(k).ok_or_else(|| Error::Parse(format!("missing field {k:?}")));
    let d = get("dim")?.as_u64().ok_or_else(|| Error::Parse("dim must be an integer".into()))? as usize;
    let basis: Vec<String> = match v.get("basis") {
        Some(Value::Array(a)) => a.iter().map(|x| x.as_str().unwrap_or("").to_string()).collect(),
        _ => (0..d).map(|i| format!("e{i}")).collect(),
    };
    if basis.len() != d {
        return Err(Error::Parse("basis length differs from dim".into()));
    }
    let name = v.get("name").and_then(|x| x.as_str()).unwrap_or("custom").to_string();
    let core = HopfCore::new(
        &name,
        basis,
        flat(get("unit")?, 1, d, "unit")?,
        flat(get("mult")?, 3, d, "mult")?,
        flat(get("comult")?, 3, d, "comult")?,
        flat(get("counit")?, 1, d, "counit")?,
        flat(get("antipode")?, 2, d, "antipode")?,
    );
    let r = flat(get("R")?, 2, d, "R")?;
    let r_inv = flat(get("R_inv")?, 2, d, "R_inv")?;
    let ribbon = flat(get("ribbon")?, 1, d, "ribbon")?;
    let ribbon_inv = flat(get("ribbon_inv")?, 1, d, "ribbon_inv")?;
    let core_res = check_hopf_core(&core);
    if !core_res.iter().all(|r| r.1) {
        let rep = CheckReport { results: core_res };
        return Err(Error::Axiom(format!("{}\n{rep}", rep.failures().join(", "))));
    }
    let h = HopfData::assemble_with(core, r, r_inv, ribbon, ribbon_inv, d)?;
    let rep = check_ribbon_hopf(&h);
    if !rep.passed() {
        return Err(Error::Axiom(format!("{}\n{rep}", rep.failures().join(", "))));
    }
    Ok(h)
}

pub fn save_hopf(h: &HopfData, path: &Path) -> Result<()> {
    let s = serde_json::to_string_pretty(&hopf_to_json(h)).map_err(|e| Error::Io(e.to_string()))?;
    std::fs::write(path, s + "\n").map_err(|e| Error::Io(e.to_string()))
}

pub fn load_hopf(path: &Path) -> Result<HopfData> {
    let s = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&s).map_err(|e| Error::Parse(e.to_string()))?;
    hopf_from_json(&v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_passes() {
        assert!(instance_trivial().check().passed());
    }

    #[test]
    fn sweedler_solution_is_triangular() {
        let h = instance_sweedler();
        assert!(h.check().passed(), "{}", h.check());
        let r21 = permute_factors(&h.r, 4, &[1, 0]);
        assert_eq!(h.mul_k(2, &r21, &h.r), h.unit_k(2));
        assert_eq!(h.ribbon, h.unit);
    }
}
