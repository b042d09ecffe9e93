use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Signed;

use super::laurent::{laurent_div_exact, laurent_gcd, LaurentPoly};
use crate::error::{Error, Result};

/// Rational function in q over the rationals, kept in canonical form:
/// num/den reduced, den a primitive integer polynomial with min_exp 0 and
/// positive leading coefficient. Equality is plain data comparison.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QRat {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl QRat {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: LaurentPoly, den: LaurentPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return QRat { num: LaurentPoly::zero(), den: LaurentPoly::one() };
        }
        let g = laurent_gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (laurent_div_exact(&num, &g), laurent_div_exact(&den, &g))
        };
        // normalize: den primitive with min_exp 0 and positive leading coeff;
        // the unit q^k and the rational scale move into num.
        let dshift = den.min_exp().unwrap();
        let den0 = den.shift(-dshift);
        let mut c = den0.content();
        if den0.leading_coeff().is_negative() {
            c = -c;
        }
        let den_canon = den0.div_rational(&c);
        let num_canon = num.shift(-dshift).div_rational(&c);
        QRat { num: num_canon, den: den_canon }
    }

    pub fn zero() -> Self {
        QRat { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        QRat { num: LaurentPoly::one(), den: LaurentPoly::one() }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        QRat { num: p, den: LaurentPoly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(LaurentPoly::from_int(n))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_poly(LaurentPoly::from_rational(c))
    }

    pub fn from_fraction(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// The monomial q^e.
    pub fn q_pow(e: i64) -> Self {
        Self::from_poly(LaurentPoly::q_pow(e))
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// If this equals c * q^e for a rational c, return (c, e).
    pub fn as_monomial(&self) -> Option<(BigRational, i64)> {
        if self.den.is_one() {
            self.num.as_monomial()
        } else {
            None
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            let mut acc = QRat::one();
            for _ in 0..e {
                acc = &acc * self;
            }
            Ok(acc)
        } else {
            self.inverse()?.pow(-e)
        }
    }

    pub fn eval_f64(&self, q0: f64) -> Result<f64> {
        let d = self.den.eval_f64(q0);
        if d == 0.0 {
            return Err(Error::Pole);
        }
        Ok(self.num.eval_f64(q0) / d)
    }

    pub fn eval_complex(&self, q0: Complex64) -> Result<Complex64> {
        let d = self.den.eval_complex(q0);
        if d.norm() == 0.0 {
            return Err(Error::Pole);
        }
        Ok(self.num.eval_complex(q0) / d)
    }
}

impl Add for &QRat {
    type Output = QRat;
    fn add(self, rhs: &QRat) -> QRat {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        QRat::reduced(num, den)
    }
}

impl Sub for &QRat {
    type Output = QRat;
    fn sub(self, rhs: &QRat) -> QRat {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        QRat::reduced(num, den)
    }
}

impl Mul for &QRat {
    type Output = QRat;
    fn mul(self, rhs: &QRat) -> QRat {
        QRat::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &QRat {
    type Output = QRat;
    fn div(self, rhs: &QRat) -> QRat {
        assert!(!rhs.is_zero(), "division by zero QRat");
        QRat::reduced(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for QRat {
    /// Prints `num` when the denominator is 1, otherwise `(num)*(den)^-1`;
    /// round-trips through the expression parser. The unit q^k is split
    /// between num and den so the printed den is exponent-balanced, e.g.
    /// `(q - q^-1)^-1` rather than q/(q^2 - 1).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return if self.num.num_terms() > 1 {
                write!(f, "({})", self.num)
            } else {
                write!(f, "{}", self.num)
            };
        }
        let s = (self.den.min_exp().unwrap() + self.den.max_exp().unwrap()).div_euclid(2);
        let den = self.den.shift(-s);
        let num = self.num.shift(-s);
        if num.is_one() {
            write!(f, "({})^-1", den)
        } else if num.num_terms() > 1 {
            write!(f, "({})*({})^-1", num, den)
        } else {
            write!(f, "{}*({})^-1", num, den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> QRat {
        QRat::q()
    }

    #[test]
    fn canonical_reduction() {
        // (q^2 - q^-2)/(q - q^-1) = q + q^-1
        let num = &QRat::q_pow(2) - &QRat::q_pow(-2);
        let den = &q() - &QRat::q_pow(-1);
        let r = &num / &den;
        assert_eq!(r, &q() + &QRat::q_pow(-1));
        assert!(r.is_polynomial());
    }

    #[test]
    fn den_normalization() {
        // 1/(q^-1 - q): den should become q^2 - 1 (primitive, min exp 0, positive lead)
        let r = (&QRat::q_pow(-1) - &q()).inverse().unwrap();
        assert_eq!(r.den(), &(&LaurentPoly::q_pow(2) - &LaurentPoly::one()));
        assert_eq!(r.num(), &-&LaurentPoly::q_pow(1));
    }

    #[test]
    fn field_ops() {
        let a = &q() + &QRat::from_int(1);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_one());
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn eval() {
        let r = &q() - &QRat::q_pow(-1);
        assert!((r.eval_f64(0.5).unwrap() - (-1.5)).abs() < 1e-15);
        let pole = (&q() - &QRat::from_fraction(1, 2)).inverse().unwrap();
        assert!(matches!(pole.eval_f64(0.5), Err(Error::Pole)));
    }

    #[test]
    fn monomial_detection() {
        let m = &QRat::q_pow(3) * &QRat::from_fraction(-2, 3);
        let (c, e) = m.as_monomial().unwrap();
        assert_eq!(e, 3);
        assert_eq!(c, BigRational::new(BigInt::from(-2), BigInt::from(3)));
        assert!((&q() + &QRat::one()).as_monomial().is_none());
    }
}
