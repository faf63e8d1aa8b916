//! Braiding, twist and duality of `Rep(H)` as explicit matrices, with the
//! checks that tie them to the diagram evaluator.

use crate::algebra::{HopfData, Matrix, Rational, Scalar};
use crate::error::{Error, Result};
use crate::tangle::{Event, Side, SlicedDiagram};

use super::eval::evaluate;
use super::model::HopfModel;
use super::rep::Rep;

type Q = Rational;

/// `c_{X,Y}(x⊗y) = Σ b_i y ⊗ a_i x` for `R = Σ a_i ⊗ b_i`.
pub fn braiding(h: &HopfData, x: &Rep, y: &Rep) -> Matrix<Q> {
    braid_with(h, &h.r, x, y, false)
}

/// `c_{Y,X}^{-1}: X⊗Y → Y⊗X`, `x⊗y ↦ Σ ā_i y ⊗ b̄_i x`.
pub fn braiding_inv(h: &HopfData, x: &Rep, y: &Rep) -> Matrix<Q> {
    braid_with(h, &h.r_inv, x, y, true)
}

fn braid_with(h: &HopfData, r: &[Q], x: &Rep, y: &Rep, swap: bool) -> Matrix<Q> {
    let d = h.dim;
    let (dx, dy) = (x.dim, y.dim);
    let mut m: Matrix<Q> = Matrix::zeros(dy * dx, dx * dy);
    for (k, c) in r.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (i, j) = (k / d, k % d);
        let (on_x, on_y) = if swap { (j, i) } else { (i, j) };
        let (ax, ay) = (&x.action[on_x], &y.action[on_y]);
        for a in 0..dx {
            for b in 0..dy {
                for xa in 0..dx {
                    let p = ax.at(xa, a);
                    if p.is_zero() {
                        continue;
                    }
                    for yb in 0..dy {
                        let q = ay.at(yb, b);
                        if !q.is_zero() {
                            m.at_mut(yb * dx + xa, a * dy + b).add_mul(c, &(p.clone() * q.clone()));
                        }
                    }
                }
            }
        }
    }
    m
}

/// The twist `θ_X`: action of the inverse ribbon element. This is the value
/// of a positive curl under the crossing conventions of [`HopfModel`];
/// [`check_twist_convention`] asserts it.
pub fn twist(h: &HopfData, x: &Rep) -> Matrix<Q> {
    x.act(&h.ribbon_inv)
}

pub fn twist_inv(h: &HopfData, x: &Rep) -> Matrix<Q> {
    x.act(&h.ribbon)
}

/// Positive curl with the loop on the left of an upward strand.
pub fn left_curl() -> SlicedDiagram {
    SlicedDiagram::new(vec![true], vec![Event::Cup(0, Side::R), Event::CrossPos(1), Event::Cap(0, Side::R)])
        .expect("left curl is well formed")
}

/// Positive curl with the loop on the right of an upward strand.
pub fn right_curl() -> SlicedDiagram {
    crate::tangle::kink(1, 0, true)
}

/// Evaluates both curls on an upward strand carrying `x` (so colored by
/// the module whose dual is `x`) and compares them with [`twist`].
pub fn check_twist_convention(h: &HopfData, x: &Rep) -> Result<()> {
    let model = HopfModel::new(h, vec![x.dual_inv(h)]);
    let theta = twist(h, x);
    for (name, d) in [("left", left_curl()), ("right", right_curl())] {
        if evaluate(&model, &d, &[0])? != theta {
            return Err(Error::Convention(format!("{name} curl on {} differs from the twist matrix", x.name)));
        }
    }
    Ok(())
}

/// `θ_{X⊗Y} = c_{Y,X} c_{X,Y} (θ_X ⊗ θ_Y)`.
pub fn twist_axiom_holds(h: &HopfData, x: &Rep, y: &Rep) -> bool {
    let xy = x.tensor(y, h);
    let lhs = twist(h, &xy);
    let rhs = braiding(h, y, x).mul(&braiding(h, x, y)).mul(&twist(h, x).kron(&twist(h, y)));
    lhs == rhs
}

/// Both zig-zag identities on upward and downward strands.
pub fn zigzags_hold(h: &HopfData, x: &Rep) -> Result<bool> {
    let model = HopfModel::new(h, vec![x.clone()]);
    let id = Matrix::identity(x.dim);
    let cases = [
        (vec![true], vec![Event::Cup(1, Side::R), Event::Cap(0, Side::L)]),
        (vec![true], vec![Event::Cup(0, Side::L), Event::Cap(1, Side::R)]),
        (vec![false], vec![Event::Cup(1, Side::L), Event::Cap(0, Side::R)]),
        (vec![false], vec![Event::Cup(0, Side::R), Event::Cap(1, Side::L)]),
    ];
    for (up, ev) in cases {
        let d = SlicedDiagram::new(up, ev)?;
        if evaluate(&model, &d, &[0])? != id {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{instance_double_z2, instance_sweedler};

    #[test]
    fn sweedler_ribbon_structure() {
        let h = instance_sweedler();
        let reg = Rep::regular(&h);
        let objs = [Rep::trivial(&h), reg.clone(), reg.dual(&h)];
        for x in &objs {
            check_twist_convention(&h, x).unwrap();
            assert!(zigzags_hold(&h, x).unwrap());
            for y in &objs {
                assert!(twist_axiom_holds(&h, x, y), "{} {}", x.name, y.name);
            }
        }
    }

    #[test]
    fn braiding_inverse() {
        let h = instance_double_z2();
        let reg = Rep::regular(&h);
        let c = braiding(&h, &reg, &reg);
        let ci = braiding_inv(&h, &reg, &reg);
        assert!(ci.mul(&c).is_identity());
    }
}
