use std::fmt;

use crate::error::Result;
use crate::qfield::QRat;

use super::element::{Element, TriMonomial};

/// Dense square matrix over the exact field Q(q).
#[derive(Debug, Clone, PartialEq)]
pub struct QMatrix {
    dim: usize,
    entries: Vec<QRat>,
}

impl QMatrix {
    pub fn zero(dim: usize) -> Self {
        QMatrix { dim, entries: vec![QRat::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = QMatrix::zero(dim);
        for i in 0..dim {
            m.set(i, i, QRat::one());
        }
        m
    }

    /// Elementary matrix e_{rc}.
    pub fn unit(dim: usize, r: usize, c: usize) -> Self {
        let mut m = QMatrix::zero(dim);
        m.set(r, c, QRat::one());
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &QRat {
        &self.entries[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: QRat) {
        self.entries[r * self.dim + c] = v;
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.dim, other.dim);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        QMatrix { dim: self.dim, entries }
    }

    pub fn scale(&self, c: &QRat) -> QMatrix {
        let entries = self.entries.iter().map(|a| a * c).collect();
        QMatrix { dim: self.dim, entries }
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = QMatrix::zero(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(r, c).clone();
                    out.set(r, c, &cur + &(a * b));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// The vector representation of U_q(sl(n+1)) on Q(q)^{n+1}:
/// E_i -> e_{i,i+1}, F_i -> e_{i+1,i},
/// K_i -> diag(1, ..., q at slot i, q^-1 at slot i+1, ..., 1).
pub struct FundamentalRep {
    rank: usize,
}

pub fn fundamental_rep(rank: usize) -> FundamentalRep {
    FundamentalRep { rank }
}

impl FundamentalRep {
    pub fn dim(&self) -> usize {
        self.rank + 1
    }

    pub fn e(&self, i: usize) -> QMatrix {
        QMatrix::unit(self.dim(), i, i + 1)
    }

    pub fn f(&self, i: usize) -> QMatrix {
        QMatrix::unit(self.dim(), i + 1, i)
    }

    pub fn k(&self, i: usize, exp: i64) -> QMatrix {
        let mut m = QMatrix::identity(self.dim());
        m.set(i, i, QRat::q_pow(exp));
        m.set(i + 1, i + 1, QRat::q_pow(-exp));
        m
    }

    pub fn monomial(&self, m: &TriMonomial) -> QMatrix {
        let mut acc = QMatrix::identity(self.dim());
        for &i in &m.eword {
            acc = acc.mul(&self.e(i));
        }
        for (i, &l) in m.kexp.iter().enumerate() {
            if l != 0 {
                acc = acc.mul(&self.k(i, l));
            }
        }
        for &i in &m.fword {
            acc = acc.mul(&self.f(i));
        }
        acc
    }
}

/// Image of an element in the vector representation. Distinct images prove
/// distinct elements; equal images prove nothing on their own.
pub fn rep_check(x: &Element) -> Result<QMatrix> {
    let rep = fundamental_rep(x.cartan().rank());
    let mut acc = QMatrix::zero(rep.dim());
    for (m, c) in x.terms() {
        acc = acc.add(&rep.monomial(m).scale(c));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::element::Letter;
    use crate::cartan::CartanData;

    #[test]
    fn defining_relations_hold_in_rep() {
        let rep = fundamental_rep(2);
        // K_1 E_1 = q^2 E_1 K_1
        let lhs = rep.k(0, 1).mul(&rep.e(0));
        let rhs = rep.e(0).mul(&rep.k(0, 1)).scale(&QRat::q_pow(2));
        assert_eq!(lhs, rhs);
        // K_1 E_2 = q^-1 E_2 K_1
        let lhs = rep.k(0, 1).mul(&rep.e(1));
        let rhs = rep.e(1).mul(&rep.k(0, 1)).scale(&QRat::q_pow(-1));
        assert_eq!(lhs, rhs);
        // [E_1, F_1] = (K_1 - K_1^-1)/(q - q^-1)
        let comm = rep.e(0).mul(&rep.f(0)).add(&rep.f(0).mul(&rep.e(0)).scale(&-&QRat::one()));
        let inv = (&QRat::q() - &QRat::q_pow(-1)).inverse().unwrap();
        let k = rep.k(0, 1).add(&rep.k(0, -1).scale(&-&QRat::one()));
        assert_eq!(comm, k.scale(&inv));
        // [E_1, F_2] = 0
        let comm = rep.e(0).mul(&rep.f(1)).add(&rep.f(1).mul(&rep.e(0)).scale(&-&QRat::one()));
        assert!(comm.is_zero());
    }

    #[test]
    fn serre_relation_in_rep() {
        // E1^2 E2 - (q + q^-1) E1 E2 E1 + E2 E1^2 = 0 in the vector rep
        let rep = fundamental_rep(2);
        let e1 = rep.e(0);
        let e2 = rep.e(1);
        let qq = &QRat::q() + &QRat::q_pow(-1);
        let t1 = e1.mul(&e1).mul(&e2);
        let t2 = e1.mul(&e2).mul(&e1).scale(&-&qq);
        let t3 = e2.mul(&e1).mul(&e1);
        assert!(t1.add(&t2).add(&t3).is_zero());
    }

    #[test]
    fn rep_check_consistent_with_engine() {
        // F1 E1 normalizes to a sum; both sides must have equal images
        let c = CartanData::type_a(2).unwrap();
        let fe = Element::from_word(c, &[Letter::F(0), Letter::E(0)], QRat::one()).unwrap();
        let rep = fundamental_rep(2);
        let direct = rep.f(0).mul(&rep.e(0));
        assert_eq!(rep_check(&fe).unwrap(), direct);
    }
}
