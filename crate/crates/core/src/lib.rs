//! Exact symbolic toolkit for quantized enveloping algebras of type A and
//! their one-parameter families of weight modules: normal forms in
//! U_q(sl(n+1)), centralizer-subalgebra characters, rank-one module analysis
//! (reducibility, equivalence, unitarizability, series classification), and
//! higher-rank constructions from strongly orthogonal root subsets.

pub mod algebra;
pub mod cartan;
pub mod centralizer;
pub mod error;
pub mod parse;
pub mod qfield;
pub mod rankn;
pub mod sl2;
pub mod unitarity;
pub mod verify;

pub use error::{Error, Result};
