//! Exact arithmetic in the coefficient field Q(q): Laurent polynomials,
//! canonical rational functions, q-combinatorics, and the exact/numeric
//! scalar used for module parameters.

mod laurent;
mod qcomb;
mod qrat;
mod scalar;

pub use laurent::LaurentPoly;
pub use qcomb::{qbinomial, qfactorial, qint, qshifted_factorial, qshifted_factorial_c};
pub use qrat::QRat;
pub use scalar::{Complex64, Ring, Scalar};

