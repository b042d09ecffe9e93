use std::fmt;

pub use num_complex::Complex64;

use super::qrat::QRat;
use crate::error::{Error, Result};

/// Minimal ring interface used by code paths that run both over exact and
/// numeric scalars, and over polynomial rings with adjoined indeterminates.
pub trait Ring: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Ring for QRat {
    fn zero() -> Self {
        QRat::zero()
    }
    fn one() -> Self {
        QRat::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Ring for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Module-parameter scalar in one of two flavors: exact rational function of q,
/// or a complex float (for numeric classification work). Arithmetic never
/// mixes flavors; constructors validate this at the API boundary.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(QRat),
    Num(Complex64),
}

impl Scalar {
    pub fn exact(x: QRat) -> Self {
        Scalar::Exact(x)
    }

    pub fn num(re: f64) -> Self {
        Scalar::Num(Complex64::new(re, 0.0))
    }

    pub fn num_complex(z: Complex64) -> Self {
        Scalar::Num(z)
    }

    pub fn one_like(&self) -> Self {
        match self {
            Scalar::Exact(_) => Scalar::Exact(QRat::one()),
            Scalar::Num(_) => Scalar::Num(Complex64::new(1.0, 0.0)),
        }
    }

    pub fn zero_like(&self) -> Self {
        match self {
            Scalar::Exact(_) => Scalar::Exact(QRat::zero()),
            Scalar::Num(_) => Scalar::Num(Complex64::new(0.0, 0.0)),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn same_flavor(&self, other: &Scalar) -> bool {
        self.is_exact() == other.is_exact()
    }

    pub fn as_exact(&self) -> Result<&QRat> {
        match self {
            Scalar::Exact(x) => Ok(x),
            Scalar::Num(_) => Err(Error::FlavorMismatch),
        }
    }

    pub fn as_num(&self) -> Result<Complex64> {
        match self {
            Scalar::Num(z) => Ok(*z),
            Scalar::Exact(_) => Err(Error::FlavorMismatch),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(x) => x.is_zero(),
            Scalar::Num(z) => z.norm() == 0.0,
        }
    }

    pub fn approx_zero(&self, tol: f64) -> bool {
        match self {
            Scalar::Exact(x) => x.is_zero(),
            Scalar::Num(z) => z.norm() < tol,
        }
    }

    pub fn approx_eq(&self, other: &Scalar, tol: f64) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            (Scalar::Num(a), Scalar::Num(b)) => (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm())),
            _ => false,
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Exact(x) => Ok(Scalar::Exact(x.inverse()?)),
            Scalar::Num(z) => {
                if z.norm() == 0.0 {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Num(z.inv()))
                }
            }
        }
    }

    pub fn pow(&self, e: i64) -> Result<Scalar> {
        match self {
            Scalar::Exact(x) => Ok(Scalar::Exact(x.pow(e)?)),
            Scalar::Num(z) => Ok(Scalar::Num(z.powi(e as i32))),
        }
    }

    /// Complex conjugate; exact rational functions of real q are self-conjugate.
    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Exact(x) => Scalar::Exact(x.clone()),
            Scalar::Num(z) => Scalar::Num(z.conj()),
        }
    }

    /// Numeric value; exact scalars are evaluated at q = q0.
    pub fn to_complex(&self, q0: f64) -> Result<Complex64> {
        match self {
            Scalar::Exact(x) => x.eval_complex(Complex64::new(q0, 0.0)),
            Scalar::Num(z) => Ok(*z),
        }
    }
}

impl Ring for Scalar {
    fn zero() -> Self {
        // flavorless zero defaults to exact; binary ops coerce from the other side
        Scalar::Exact(QRat::zero())
    }
    fn one() -> Self {
        Scalar::Exact(QRat::one())
    }
    fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a + b),
            (Scalar::Num(a), Scalar::Num(b)) => Scalar::Num(a + b),
            _ => panic!("mixed scalar flavors in arithmetic"),
        }
    }
    fn sub(&self, other: &Self) -> Self {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a - b),
            (Scalar::Num(a), Scalar::Num(b)) => Scalar::Num(a - b),
            _ => panic!("mixed scalar flavors in arithmetic"),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a * b),
            (Scalar::Num(a), Scalar::Num(b)) => Scalar::Num(a * b),
            _ => panic!("mixed scalar flavors in arithmetic"),
        }
    }
    fn neg(&self) -> Self {
        match self {
            Scalar::Exact(a) => Scalar::Exact(-a),
            Scalar::Num(a) => Scalar::Num(-a),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(x) => write!(f, "{}", x),
            Scalar::Num(z) => {
                if z.im == 0.0 {
                    write!(f, "{}", z.re)
                } else if z.re == 0.0 {
                    write!(f, "{}i", z.im)
                } else if z.im < 0.0 {
                    write!(f, "{}{}i", z.re, z.im)
                } else {
                    write!(f, "{}+{}i", z.re, z.im)
                }
            }
        }
    }
}
