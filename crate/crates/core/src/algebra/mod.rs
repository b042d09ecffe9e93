//! The algebra U_q(sl(n+1)) as linear combinations of triangular monomials
//! E-word * K-monomial * F-word, with a terminating rewriting engine for the
//! defining relations and the root-space grading.

mod element;
mod rep;

pub use element::{Element, Letter, TieredEq, TriMonomial};
pub use rep::{fundamental_rep, rep_check, QMatrix};
