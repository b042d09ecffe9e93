use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Laurent polynomial in the deformation parameter q with rational coefficients.
///
/// Stored sparsely; zero coefficients are never kept, so the zero polynomial is
/// the empty map.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::from_rational(BigRational::one())
    }

    /// The monomial q^e.
    pub fn q_pow(e: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(e, BigRational::one());
        LaurentPoly { coeffs }
    }

    pub fn from_rational(c: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(0, c);
        }
        LaurentPoly { coeffs }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Single term c * q^e.
    pub fn term(c: BigRational, e: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        LaurentPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, e: i64) -> BigRational {
        self.coeffs.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Leading coefficient (highest exponent). Zero for the zero polynomial.
    pub fn leading_coeff(&self) -> BigRational {
        self.max_exp().map(|e| self.coeff(e)).unwrap_or_else(BigRational::zero)
    }

    /// Multiply by q^e.
    pub fn shift(&self, e: i64) -> Self {
        let coeffs = self.coeffs.iter().map(|(k, v)| (k + e, v.clone())).collect();
        LaurentPoly { coeffs }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        let coeffs = self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect();
        LaurentPoly { coeffs }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = LaurentPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// If this is a single term c*q^e, return (c, e).
    pub fn as_monomial(&self) -> Option<(BigRational, i64)> {
        if self.coeffs.len() == 1 {
            let (e, c) = self.coeffs.iter().next().unwrap();
            Some((c.clone(), *e))
        } else {
            None
        }
    }

    pub fn eval_f64(&self, q0: f64) -> f64 {
        self.coeffs
            .iter()
            .map(|(e, c)| rational_to_f64(c) * q0.powi(*e as i32))
            .sum()
    }

    pub fn eval_complex(&self, q0: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(e, c)| q0.powi(*e as i32) * rational_to_f64(c))
            .sum()
    }

    /// Content: positive rational c with self = c * (primitive integer polynomial).
    /// The primitive part has coprime integer coefficients and the sign of the
    /// leading coefficient is kept in the primitive part.
    pub fn content(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::one();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.coeffs.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        BigRational::new(num_gcd, den_lcm)
    }

    /// Divide by a nonzero rational constant.
    pub fn div_rational(&self, c: &BigRational) -> Self {
        assert!(!c.is_zero());
        let coeffs = self.coeffs.iter().map(|(k, v)| (*k, v / c)).collect();
        LaurentPoly { coeffs }
    }

    fn insert_add(coeffs: &mut BTreeMap<i64, BigRational>, e: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match coeffs.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut coeffs = self.coeffs.clone();
        for (e, c) in &rhs.coeffs {
            LaurentPoly::insert_add(&mut coeffs, *e, c.clone());
        }
        LaurentPoly { coeffs }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut coeffs = self.coeffs.clone();
        for (e, c) in &rhs.coeffs {
            LaurentPoly::insert_add(&mut coeffs, *e, -c.clone());
        }
        LaurentPoly { coeffs }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut coeffs = BTreeMap::new();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                LaurentPoly::insert_add(&mut coeffs, e1 + e2, c1 * c2);
            }
        }
        LaurentPoly { coeffs }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let coeffs = self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect();
        LaurentPoly { coeffs }
    }
}

pub(crate) fn rational_to_f64(c: &BigRational) -> f64 {
    // BigRational has no direct f64 conversion for huge values; go through
    // string only when the parts overflow i128.
    let n = c.numer();
    let d = c.denom();
    match (i128::try_from(n), i128::try_from(d)) {
        (Ok(n), Ok(d)) => n as f64 / d as f64,
        _ => {
            let n: f64 = n.to_string().parse().unwrap_or(f64::NAN);
            let d: f64 = d.to_string().parse().unwrap_or(f64::NAN);
            n / d
        }
    }
}

// ---- dense helpers for gcd / exact division (ordinary polynomials, exp >= 0) ----

/// Dense coefficient vector of a Laurent polynomial with min_exp 0.
fn to_dense(p: &LaurentPoly) -> Vec<BigRational> {
    assert_eq!(p.min_exp().unwrap_or(0), 0);
    let deg = p.max_exp().unwrap_or(0);
    let mut v = vec![BigRational::zero(); (deg + 1) as usize];
    for (e, c) in p.iter() {
        v[*e as usize] = c.clone();
    }
    v
}

fn from_dense(v: &[BigRational]) -> LaurentPoly {
    let mut coeffs = BTreeMap::new();
    for (e, c) in v.iter().enumerate() {
        if !c.is_zero() {
            coeffs.insert(e as i64, c.clone());
        }
    }
    LaurentPoly { coeffs }
}

fn dense_deg(v: &[BigRational]) -> Option<usize> {
    v.iter().rposition(|c| !c.is_zero())
}

/// Remainder of a by b (b nonzero), both dense.
fn dense_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let db = dense_deg(b).expect("division by zero polynomial");
    let lb = b[db].clone();
    let mut r = a.to_vec();
    while let Some(dr) = dense_deg(&r) {
        if dr < db {
            break;
        }
        let factor = &r[dr] / &lb;
        for k in 0..=db {
            let t = &b[k] * &factor;
            r[dr - db + k] = &r[dr - db + k] - t;
        }
    }
    r
}

/// Exact quotient a / b; panics if the division is not exact.
fn dense_div_exact(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let db = dense_deg(b).expect("division by zero polynomial");
    let lb = b[db].clone();
    let mut r = a.to_vec();
    let da = match dense_deg(&r) {
        Some(d) => d,
        None => return vec![],
    };
    assert!(da >= db, "inexact polynomial division");
    let mut qv = vec![BigRational::zero(); da - db + 1];
    while let Some(dr) = dense_deg(&r) {
        if dr < db {
            break;
        }
        let factor = &r[dr] / &lb;
        qv[dr - db] = factor.clone();
        for k in 0..=db {
            let t = &b[k] * &factor;
            r[dr - db + k] = &r[dr - db + k] - t;
        }
    }
    assert!(dense_deg(&r).is_none(), "inexact polynomial division");
    qv
}

/// Gcd of two Laurent polynomials, up to units q^k and rational scalars.
/// Returned value has min_exp 0, coprime integer coefficients and positive
/// leading coefficient.
pub(crate) fn laurent_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return normalize_primitive(b);
    }
    if b.is_zero() {
        return normalize_primitive(a);
    }
    let mut x = to_dense(&a.shift(-a.min_exp().unwrap()));
    let mut y = to_dense(&b.shift(-b.min_exp().unwrap()));
    while dense_deg(&y).is_some() {
        let r = dense_rem(&x, &y);
        x = y;
        y = r;
    }
    normalize_primitive(&from_dense(&x))
}

/// Make min_exp 0, coefficients coprime integers, leading coefficient positive.
pub(crate) fn normalize_primitive(p: &LaurentPoly) -> LaurentPoly {
    if p.is_zero() {
        return LaurentPoly::zero();
    }
    let shifted = p.shift(-p.min_exp().unwrap());
    let mut c = shifted.content();
    if shifted.leading_coeff().is_negative() {
        c = -c;
    }
    shifted.div_rational(&c)
}

/// Exact division of Laurent polynomials (panics when not exact).
pub(crate) fn laurent_div_exact(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    assert!(!b.is_zero(), "division by zero polynomial");
    if a.is_zero() {
        return LaurentPoly::zero();
    }
    let sa = a.min_exp().unwrap();
    let sb = b.min_exp().unwrap();
    let qv = dense_div_exact(&to_dense(&a.shift(-sa)), &to_dense(&b.shift(-sb)));
    from_dense(&qv).shift(sa - sb)
}

impl fmt::Display for LaurentPoly {
    /// Descending exponents, e.g. `q^2 + 2 + q^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_is_one = abs.is_one();
            match (*e, coeff_is_one) {
                (0, _) => write!(f, "{}", abs)?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{}*q", abs)?,
                (e, true) => write!(f, "q^{}", e)?,
                (e, false) => write!(f, "{}*q^{}", abs, e)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> LaurentPoly {
        LaurentPoly::q_pow(1)
    }

    #[test]
    fn zero_is_empty() {
        let a = LaurentPoly::q_pow(3);
        let b = &a - &a;
        assert!(b.is_zero());
        assert_eq!(b.num_terms(), 0);
    }

    #[test]
    fn mul_and_shift() {
        let a = &q() - &LaurentPoly::q_pow(-1); // q - q^-1
        let b = &q() + &LaurentPoly::q_pow(-1); // q + q^-1
        let p = &a * &b; // q^2 - q^-2
        assert_eq!(p, &LaurentPoly::q_pow(2) - &LaurentPoly::q_pow(-2));
    }

    #[test]
    fn gcd_of_q_minus_inverse() {
        let a = &q() - &LaurentPoly::q_pow(-1);
        let sq = &a * &a;
        let g = laurent_gcd(&sq, &a);
        // gcd is q^2 - 1 after unit normalization
        assert_eq!(g, &LaurentPoly::q_pow(2) - &LaurentPoly::one());
    }

    #[test]
    fn exact_division() {
        let a = &q() - &LaurentPoly::q_pow(-1);
        let b = &q() + &LaurentPoly::q_pow(-1);
        let p = &a * &b;
        assert_eq!(laurent_div_exact(&p, &a), b);
        assert_eq!(laurent_div_exact(&p, &b), a);
    }

    #[test]
    fn display_descending() {
        let p = &(&LaurentPoly::q_pow(-2) + &LaurentPoly::from_int(2)) + &LaurentPoly::q_pow(2);
        assert_eq!(p.to_string(), "q^2 + 2 + q^-2");
        assert_eq!((&q() - &LaurentPoly::q_pow(-1)).to_string(), "q - q^-1");
    }
}
