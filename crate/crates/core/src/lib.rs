//! Exact computations in truncated polynomial rings `R[n] = R[t]/(t^n)`,
//! `R = Q[x_1..x_d]`, and in their finitely presented modules.

pub mod arith;
pub mod doublepoint;
pub mod dualtor;
pub mod error;
pub mod groebner;
pub mod hilbert;
pub mod fpmod;
pub(crate) mod linalg;
pub mod multiring;
pub mod regseq;

pub use error::{Error, Result};
