//! Exact toolkit for the (co)cyclic structure of ribbon string links and the
//! universal quantum invariant with values in the coend of `Rep(H)`.

pub mod algebra;
pub mod cyclic;
pub mod error;
pub mod repcat;
pub mod quantum;
pub mod slops;
pub mod tangle;

pub use error::{Error, Result};
