use super::qrat::QRat;
use super::LaurentPoly;
use crate::error::{Error, Result};

/// Symmetric q-integer [j]_q = (q^j - q^-j)/(q - q^-1) = q^{j-1} + q^{j-3} + ... + q^{1-j}.
pub fn qint(j: u32) -> QRat {
    let mut p = LaurentPoly::zero();
    let j = j as i64;
    let mut e = 1 - j;
    while e < j {
        p = &p + &LaurentPoly::q_pow(e);
        e += 2;
    }
    QRat::from_poly(p)
}

/// [k]_q! = prod_{j=1}^k [j]_q.
pub fn qfactorial(k: u32) -> QRat {
    let mut acc = QRat::one();
    for j in 1..=k {
        acc = &acc * &qint(j);
    }
    acc
}

/// Gaussian binomial coefficient; always a Laurent polynomial with
/// nonnegative integer coefficients.
pub fn qbinomial(n: u32, k: u32) -> Result<QRat> {
    if k > n {
        return Err(Error::Domain(format!("qbinomial requires 0 <= k <= n, got n={n}, k={k}")));
    }
    let r = &qfactorial(n) / &(&qfactorial(k) * &qfactorial(n - k));
    debug_assert!(r.is_polynomial());
    Ok(r)
}

/// q-shifted factorial (a; base)_n = prod_{k=0}^{n-1} (1 - a * base^k).
pub fn qshifted_factorial(a: &QRat, base: &QRat, n: u32) -> QRat {
    let mut acc = QRat::one();
    let mut bk = QRat::one();
    for _ in 0..n {
        acc = &acc * &(&QRat::one() - &(a * &bk));
        bk = &bk * base;
    }
    acc
}

/// Numeric variant of the q-shifted factorial.
pub fn qshifted_factorial_c(a: num_complex::Complex64, base: num_complex::Complex64, n: u32) -> num_complex::Complex64 {
    let mut acc = num_complex::Complex64::new(1.0, 0.0);
    let mut bk = num_complex::Complex64::new(1.0, 0.0);
    for _ in 0..n {
        acc *= num_complex::Complex64::new(1.0, 0.0) - a * bk;
        bk *= base;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn qint_small() {
        assert!(qint(0).is_zero());
        assert!(qint(1).is_one());
        assert_eq!(qint(2), &QRat::q() + &QRat::q_pow(-1));
        // definition as a quotient divides out exactly
        let by_def = &(&QRat::q_pow(3) - &QRat::q_pow(-3)) / &(&QRat::q() - &QRat::q_pow(-1));
        assert_eq!(qint(3), by_def);
    }

    #[test]
    fn qbinomial_values() {
        assert!(qbinomial(7, 0).unwrap().is_one());
        assert_eq!(qbinomial(2, 1).unwrap(), qint(2));
        // qbinomial(4,2) via exact division oracle: [4]! / ([2]! [2]!)
        let expect = &(&(&QRat::q_pow(-4) + &QRat::q_pow(-2)) + &QRat::from_int(2))
            + &(&QRat::q_pow(2) + &QRat::q_pow(4));
        assert_eq!(qbinomial(4, 2).unwrap(), expect);
        assert!(qbinomial(3, 5).is_err());
    }

    #[test]
    fn qbinomial_nonnegative_integer_coeffs() {
        for n in 0..=10u32 {
            for k in 0..=n {
                let b = qbinomial(n, k).unwrap();
                assert!(b.is_polynomial());
                for (_, c) in b.num().iter() {
                    assert!(c.is_integer() && !c.is_negative(), "qbinomial({n},{k})");
                }
            }
        }
    }

    #[test]
    fn qshifted_basic() {
        let a = QRat::q_pow(2);
        assert!(qshifted_factorial(&a, &a, 0).is_one());
        assert_eq!(qshifted_factorial(&a, &a, 1), &QRat::one() - &a);
        let expect = &(&QRat::one() - &QRat::q_pow(2)) * &(&QRat::one() - &QRat::q_pow(4));
        assert_eq!(qshifted_factorial(&a, &a, 2), expect);
    }
}
