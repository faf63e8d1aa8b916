//! `Rep(H)` as a computable ribbon category, the Kauffman bracket as a
//! second diagram-level model, and the coend `F = H*`.

pub mod coend;
pub mod eval;
pub mod model;
pub mod rep;
pub mod ribbon;

pub use eval::{evaluate, sweep, width_cap};
pub use model::{HopfModel, KauffmanModel, SparseOp, StrandModel};
pub use coend::{coend_build, CoendData};
pub use rep::Rep;
