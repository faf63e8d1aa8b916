//! Slice-sweep evaluation of colored diagrams.

use std::collections::HashMap;

use crate::algebra::{Matrix, Scalar};
use crate::error::{Error, Result};
use crate::tangle::{slice_components, Event, Side, SlicedDiagram};

use super::model::{SparseOp, StrandModel};

/// Maximum number of strands in any slice, from `RSL_MAX_WIDTH` (default 10).
pub fn width_cap() -> usize {
    std::env::var("RSL_MAX_WIDTH").ok().and_then(|s| s.parse().ok()).unwrap_or(10)
}

#[derive(Hash, PartialEq, Eq)]
enum OpKey {
    Cross(bool, (usize, bool), (usize, bool)),
    Cap(Side, usize),
    Cup(Side, usize),
}

enum Cached<S> {
    Cross(SparseOp<S>),
    Vec(Vec<S>),
}

/// Batch of vectors on the tensor product of the current slice's strands,
/// batch index slowest.
struct State<S> {
    batch: usize,
    dims: Vec<usize>,
    data: Vec<S>,
}

impl<S: Scalar> State<S> {
    fn split(&self, p: usize, k: usize) -> (usize, usize) {
        let pre = self.batch * self.dims[..p].iter().product::<usize>();
        let post = self.dims[p + k..].iter().product::<usize>();
        (pre, post)
    }

    fn crossing(&mut self, p: usize, op: &SparseOp<S>) {
        let (pre, post) = self.split(p, 2);
        let (da, db) = op.dims_in;
        let ab = da * db;
        let mut out = vec![S::zero(); self.data.len()];
        for x in 0..pre {
            for (i, col) in op.cols.iter().enumerate() {
                let src = (x * ab + i) * post;
                for q in 0..post {
                    let v = &self.data[src + q];
                    if v.is_zero() {
                        continue;
                    }
                    for (o, c) in col {
                        out[(x * ab + o) * post + q].add_mul(c, v);
                    }
                }
            }
        }
        self.dims[p] = db;
        self.dims[p + 1] = da;
        self.data = out;
    }

    fn cap(&mut self, p: usize, cov: &[S]) {
        let (pre, post) = self.split(p, 2);
        let ab = self.dims[p] * self.dims[p + 1];
        let mut out = vec![S::zero(); pre * post];
        for x in 0..pre {
            for (i, c) in cov.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let src = (x * ab + i) * post;
                for q in 0..post {
                    out[x * post + q].add_mul(c, &self.data[src + q]);
                }
            }
        }
        self.dims.drain(p..p + 2);
        self.data = out;
    }

    fn cup(&mut self, p: usize, vec: &[S], da: usize, db: usize) {
        let (pre, post) = self.split(p, 0);
        let ab = da * db;
        let mut out = vec![S::zero(); pre * ab * post];
        for x in 0..pre {
            for q in 0..post {
                let v = &self.data[x * post + q];
                if v.is_zero() {
                    continue;
                }
                for (i, c) in vec.iter().enumerate() {
                    if !c.is_zero() {
                        out[(x * ab + i) * post + q] = c.clone() * v.clone();
                    }
                }
            }
        }
        self.dims.splice(p..p, [da, db]);
        self.data = out;
    }
}

/// Applies the diagram to each input vector (on the bottom boundary) and
/// returns the images on the top boundary. `colors[c]` colors component `c`.
pub fn sweep<M: StrandModel>(
    model: &M,
    d: &SlicedDiagram,
    colors: &[usize],
    inputs: &[Vec<M::S>],
) -> Result<Vec<Vec<M::S>>> {
    let cap = width_cap();
    if d.max_width() > cap {
        return Err(Error::WidthCap { width: d.max_width(), cap });
    }
    let comps = slice_components(d);
    let slices = d.slices();
    let ncomp = comps.iter().flatten().max().map_or(0, |m| m + 1);
    if colors.len() < ncomp {
        return Err(Error::Index(format!("coloring has {} entries, diagram has {ncomp} components", colors.len())));
    }
    let dims: Vec<usize> = comps[0].iter().zip(&slices[0]).map(|(&c, &u)| model.dim(colors[c], u)).collect();
    let size: usize = dims.iter().product();
    let mut data = Vec::with_capacity(inputs.len() * size);
    for v in inputs {
        if v.len() != size {
            return Err(Error::Shape(format!("input of length {} for boundary of dimension {size}", v.len())));
        }
        data.extend_from_slice(v);
    }
    let mut st = State { batch: inputs.len(), dims, data };
    let mut cache: HashMap<OpKey, Cached<M::S>> = HashMap::new();
    for (s, e) in d.events().iter().enumerate() {
        let (cs, us) = (&comps[s], &slices[s]);
        match *e {
            Event::CrossPos(p) | Event::CrossNeg(p) => {
                let positive = matches!(e, Event::CrossPos(_));
                let key = OpKey::Cross(positive, (colors[cs[p]], us[p]), (colors[cs[p + 1]], us[p + 1]));
                let op = cache.entry(key).or_insert_with(|| {
                    Cached::Cross(model.crossing(positive, (colors[cs[p]], us[p]), (colors[cs[p + 1]], us[p + 1])))
                });
                if let Cached::Cross(op) = op {
                    st.crossing(p, op);
                }
            }
            Event::Cap(p, side) => {
                let c = colors[cs[p]];
                let v = cache.entry(OpKey::Cap(side, c)).or_insert_with(|| Cached::Vec(model.cap(side, c)));
                if let Cached::Vec(v) = v {
                    st.cap(p, v);
                }
            }
            Event::Cup(p, side) => {
                let c = colors[comps[s + 1][p]];
                let (ul, ur) = side.legs();
                let (da, db) = (model.dim(c, ul), model.dim(c, ur));
                let v = cache.entry(OpKey::Cup(side, c)).or_insert_with(|| Cached::Vec(model.cup(side, c)));
                if let Cached::Vec(v) = v {
                    st.cup(p, v, da, db);
                }
            }
        }
    }
    let out_size: usize = st.dims.iter().product();
    Ok(st.data.chunks(out_size).map(|c| c.to_vec()).collect())
}

/// Dimensions of the bottom and top boundary spaces.
pub fn boundary_dims<M: StrandModel>(model: &M, d: &SlicedDiagram, colors: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let comps = slice_components(d);
    let slices = d.slices();
    let dims = |k: usize| comps[k].iter().zip(&slices[k]).map(|(&c, &u)| model.dim(colors[c], u)).collect();
    (dims(0), dims(comps.len() - 1))
}

/// The morphism of the diagram as a matrix from the bottom space to the
/// top space.
pub fn evaluate<M: StrandModel>(model: &M, d: &SlicedDiagram, colors: &[usize]) -> Result<Matrix<M::S>> {
    let ncomp = slice_components(d).iter().flatten().max().map_or(0, |m| m + 1);
    if colors.len() < ncomp {
        return Err(Error::Index(format!("coloring has {} entries, diagram has {ncomp} components", colors.len())));
    }
    let (bottom, top) = boundary_dims(model, d, colors);
    let n_in: usize = bottom.iter().product();
    let n_out: usize = top.iter().product();
    let inputs: Vec<Vec<M::S>> = (0..n_in)
        .map(|j| (0..n_in).map(|i| if i == j { M::S::one() } else { M::S::zero() }).collect())
        .collect();
    let cols = sweep(model, d, colors, &inputs)?;
    Ok(Matrix::from_fn(n_out, n_in, |i, j| cols[j][i].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{instance_double_z2, Laurent, Rational};
    use crate::repcat::{HopfModel, KauffmanModel, Rep};
    use crate::tangle::{apply_move, kink, random_move_sequence, random_string_link, Move, StringLinkParams};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn diagram(up: Vec<bool>, ev: Vec<Event>) -> SlicedDiagram {
        SlicedDiagram::new(up, ev).unwrap()
    }

    fn scaled_identity(n: usize, c: Laurent) -> Matrix<Laurent> {
        Matrix::from_fn(n, n, |i, j| if i == j { c.clone() } else { Laurent::default() })
    }

    #[test]
    fn identity_is_identity() {
        let id = SlicedDiagram::identity(2);
        assert!(evaluate(&KauffmanModel, &id, &[0, 0]).unwrap().is_identity());
        let h = instance_double_z2();
        let model = HopfModel::new(&h, vec![Rep::regular(&h)]);
        let mixed = diagram(vec![true, false], vec![]);
        assert!(evaluate(&model, &mixed, &[0, 0]).unwrap().is_identity());
    }

    #[test]
    fn kauffman_curls_and_loops() {
        let curl = evaluate(&KauffmanModel, &kink(1, 0, true), &[0]).unwrap();
        assert_eq!(curl, scaled_identity(2, -Laurent::a_pow(3)));
        let curl = evaluate(&KauffmanModel, &kink(1, 0, false), &[0]).unwrap();
        assert_eq!(curl, scaled_identity(2, -Laurent::a_pow(-3)));
        let circle = diagram(vec![], vec![Event::Cup(0, Side::R), Event::Cap(0, Side::R)]);
        let v = evaluate(&KauffmanModel, &circle, &[0]).unwrap();
        assert_eq!(v.data, vec![KauffmanModel::loop_value()]);
        assert_eq!(KauffmanModel::loop_value().coeff(2), -Rational::one());
    }

    #[test]
    fn reidemeister_two_and_three() {
        let h = instance_double_z2();
        let model = HopfModel::new(&h, vec![Rep::regular(&h), Rep::trivial(&h)]);
        for up in [vec![true, true], vec![true, false], vec![false, true]] {
            let r2 = diagram(up.clone(), vec![Event::CrossPos(0), Event::CrossNeg(0)]);
            assert!(evaluate(&KauffmanModel, &r2, &[0, 1]).unwrap().is_identity());
            assert!(evaluate(&model, &r2, &[0, 0]).unwrap().is_identity(), "{up:?}");
        }
        let braid = diagram(vec![true; 3], vec![Event::CrossPos(0), Event::CrossPos(1), Event::CrossPos(0)]);
        let moved = apply_move(&braid, Move::R3, 0).unwrap();
        assert_ne!(moved, braid);
        for colors in [[0, 0, 0], [0, 1, 0]] {
            assert_eq!(evaluate(&model, &braid, &colors).unwrap(), evaluate(&model, &moved, &colors).unwrap());
        }
        assert_eq!(evaluate(&KauffmanModel, &braid, &[0; 3]).unwrap(), evaluate(&KauffmanModel, &moved, &[0; 3]).unwrap());
    }

    #[test]
    fn random_moves_keep_values() {
        let h = instance_double_z2();
        let model = HopfModel::new(&h, vec![Rep::regular(&h)]);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for s in 0..12 {
            let k = 1 + s % 2;
            let d = random_string_link(StringLinkParams { strands: k, max_crossings: 4, extra_width: 1 }, &mut rng);
            let (moved, log) = random_move_sequence(&d, 6, k + 3, &mut rng);
            assert!(!log.is_empty());
            let colors = vec![0; k];
            assert_eq!(evaluate(&KauffmanModel, &d, &colors).unwrap(), evaluate(&KauffmanModel, &moved, &colors).unwrap());
            assert_eq!(evaluate(&model, &d, &colors).unwrap(), evaluate(&model, &moved, &colors).unwrap(), "{log:?}");
        }
    }

    #[test]
    fn width_cap_is_enforced() {
        let wide = SlicedDiagram::identity(width_cap() + 1);
        let err = sweep(&KauffmanModel, &wide, &vec![0; width_cap() + 1], &[]).unwrap_err();
        assert!(matches!(err, Error::WidthCap { .. }));
    }
}
