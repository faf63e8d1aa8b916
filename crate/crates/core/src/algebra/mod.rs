//! Exact scalars, tensors, linear solving and ribbon Hopf algebra data.

pub mod hopf;
pub mod linsolve;
pub mod scalar;
pub mod tensor;

pub use hopf::{
    check_ribbon_hopf, instance_double_s3, instance_double_z2, instance_sweedler, instance_trivial,
    load_hopf, save_hopf, CheckReport, HopfCore, HopfData,
};
pub use linsolve::{solve_exact, Solution};
pub use scalar::{Field, Laurent, Rational, Scalar};
pub use tensor::{text_digest, Matrix, Tensor};
