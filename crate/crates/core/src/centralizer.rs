//! The centralizer U_0 (the 0-root space), height functions, the splitting
//! U_0 = U_0^S + I^S over a strongly orthogonal subset S, and the
//! one-dimensional representation phi^S_{lambda,mu} that kills I^S.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::algebra::Element;
use crate::cartan::{CartanData, SubsetS};
use crate::error::{Error, Result};
use crate::qfield::{QRat, Ring, Scalar};
use crate::sl2::{action_coeff_e, Rank1Sl2Params};

/// Minimum i-height of the e-roots over the normal-form terms.
pub fn h_minus(x: &Element, i: usize) -> Result<i64> {
    x.cartan().check_index(i)?;
    let rank = x.cartan().rank();
    x.terms()
        .map(|(m, _)| m.e_root(rank).height(i))
        .min()
        .ok_or(Error::ZeroElement)
}

/// Maximum i-height of the e-roots over the normal-form terms.
pub fn h_plus(x: &Element, i: usize) -> Result<i64> {
    x.cartan().check_index(i)?;
    let rank = x.cartan().rank();
    x.terms()
        .map(|(m, _)| m.e_root(rank).height(i))
        .max()
        .ok_or(Error::ZeroElement)
}

/// True iff every monomial has root 0 (e-root = f-root). Zero qualifies.
pub fn in_u0(x: &Element) -> bool {
    let rank = x.cartan().rank();
    x.terms().all(|(m, _)| m.root(rank).is_zero())
}

/// Split an element of U_0 into its U_0^S part (monomials with e-root in
/// Q^+_S) and its I^S part (the rest). Supports are disjoint by construction.
pub fn split_u0s(x: &Element, s: &SubsetS) -> Result<(Element, Element)> {
    if !in_u0(x) {
        return Err(Error::NotInU0);
    }
    let rank = x.cartan().rank();
    let mut inside = Element::zero(*x.cartan());
    let mut ideal = Element::zero(*x.cartan());
    for (m, c) in x.terms() {
        let single = {
            let mut e = Element::zero(*x.cartan());
            let word: Vec<crate::algebra::Letter> = monomial_word(m);
            e = e.add(&Element::from_word(*x.cartan(), &word, c.clone())?)?;
            e
        };
        if m.e_root(rank).in_positive_span_of(s) {
            inside = inside.add(&single)?;
        } else {
            ideal = ideal.add(&single)?;
        }
    }
    Ok((inside, ideal))
}

fn monomial_word(m: &crate::algebra::TriMonomial) -> Vec<crate::algebra::Letter> {
    use crate::algebra::Letter;
    m.eword
        .iter()
        .map(|&i| Letter::E(i))
        .chain(
            m.kexp
                .iter()
                .enumerate()
                .filter(|(_, &l)| l != 0)
                .map(|(i, &l)| Letter::K(i, l)),
        )
        .chain(m.fword.iter().map(|&i| Letter::F(i)))
        .collect()
}

/// The functional phi^S_{lambda,mu}: K_i -> lambda_i, E_jF_j -> mu_j for
/// j in S, I^S -> 0, extended to all of U by projection onto U_0.
#[derive(Debug, Clone)]
pub struct OneDimRep {
    cartan: CartanData,
    s: SubsetS,
    q: Scalar,
    lambda: Vec<Scalar>,
    mu: BTreeMap<usize, Scalar>,
}

impl OneDimRep {
    /// Exact parameters with q symbolic; mu entries aligned with S in
    /// ascending index order.
    pub fn exact(cartan: CartanData, s: SubsetS, lambda: Vec<QRat>, mu: Vec<QRat>) -> Result<Self> {
        let lambda = lambda.into_iter().map(Scalar::Exact).collect();
        let mu = mu.into_iter().map(Scalar::Exact).collect();
        Self::build(cartan, s, Scalar::Exact(QRat::q()), lambda, mu)
    }

    /// Numeric parameters at a real q0 in (0,1).
    pub fn numeric(
        q0: f64,
        cartan: CartanData,
        s: SubsetS,
        lambda: Vec<Complex64>,
        mu: Vec<Complex64>,
    ) -> Result<Self> {
        if !(0.0 < q0 && q0 < 1.0) {
            return Err(Error::Domain("q must lie in (0,1)".into()));
        }
        let lambda = lambda.into_iter().map(Scalar::num_complex).collect();
        let mu = mu.into_iter().map(Scalar::num_complex).collect();
        Self::build(cartan, s, Scalar::num(q0), lambda, mu)
    }

    fn build(
        cartan: CartanData,
        s: SubsetS,
        q: Scalar,
        lambda: Vec<Scalar>,
        mu: Vec<Scalar>,
    ) -> Result<Self> {
        if lambda.len() != cartan.rank() {
            return Err(Error::Domain(format!(
                "expected {} lambda values, got {}",
                cartan.rank(),
                lambda.len()
            )));
        }
        if mu.len() != s.len() {
            return Err(Error::Domain(format!(
                "expected {} mu values (one per element of S), got {}",
                s.len(),
                mu.len()
            )));
        }
        for l in &lambda {
            if l.is_zero() {
                return Err(Error::Domain("lambda values must be nonzero".into()));
            }
            if !l.same_flavor(&q) {
                return Err(Error::FlavorMismatch);
            }
        }
        for m in &mu {
            if m.is_zero() {
                return Err(Error::Domain(
                    "mu values must be nonzero (drop the index from S instead)".into(),
                ));
            }
            if !m.same_flavor(&q) {
                return Err(Error::FlavorMismatch);
            }
        }
        let mu = s.iter().zip(mu).collect();
        Ok(OneDimRep { cartan, s, q, lambda, mu })
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    pub fn subset(&self) -> &SubsetS {
        &self.s
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn lambda(&self, i: usize) -> &Scalar {
        &self.lambda[i]
    }

    pub fn mu(&self, j: usize) -> Result<&Scalar> {
        self.mu.get(&j).ok_or(Error::SubsetMembership(j + 1, "belong to"))
    }

    /// Per-node sl(2) parameter set (q, lambda_j, mu_j) for j in S.
    pub fn node_params(&self, j: usize) -> Result<Rank1Sl2Params> {
        Rank1Sl2Params::new(self.q.clone(), self.lambda[j].clone(), self.mu(j)?.clone())
    }

    /// phi(E_j^k F_j^k) = prod_{m=1}^{k} (mu_j + (q^{m-1}-q^{1-m})(q^{-m}
    /// lambda_j - q^m lambda_j^{-1})/(q-q^{-1})^2).
    fn phi_block(&self, j: usize, k: i64) -> Result<Scalar> {
        let p = self.node_params(j)?;
        let mut acc = self.q.one_like();
        for m in 1..=k {
            acc = acc.mul(&action_coeff_e(&p, m));
        }
        Ok(acc)
    }

    fn q_pow(&self, e: i64) -> Scalar {
        self.q.pow(e).expect("q is invertible")
    }

    fn coeff_scalar(&self, c: &QRat) -> Result<Scalar> {
        match &self.q {
            Scalar::Exact(_) => Ok(Scalar::Exact(c.clone())),
            Scalar::Num(q0) => Ok(Scalar::num_complex(c.eval_complex(*q0)?)),
        }
    }

    /// Evaluate phi on any element: project to U_0, kill I^S, and evaluate
    /// each remaining monomial by reordering it into per-node blocks
    /// E_j^k F_j^k times the K-monomial (legal: all letters carry indices in
    /// S, which commute pairwise).
    pub fn phi_eval(&self, x: &Element) -> Result<Scalar> {
        if x.cartan() != &self.cartan {
            return Err(Error::MixedCartan(x.cartan().rank(), self.cartan.rank()));
        }
        let rank = self.cartan.rank();
        let mut acc = self.q.zero_like();
        for (m, c) in x.terms() {
            if !m.root(rank).is_zero() {
                continue; // projection onto U_0
            }
            let er = m.e_root(rank);
            if !er.in_positive_span_of(&self.s) {
                continue; // I^S is the kernel
            }
            // migrate K^l right past the F-word: K^l F_j = q^{-sum_i l_i a_ij} F_j K^l
            let mut qexp: i64 = 0;
            for &j in &m.fword {
                for (i, &l) in m.kexp.iter().enumerate() {
                    qexp -= l * self.cartan.a(i, j);
                }
            }
            let mut val = self.q_pow(qexp);
            for j in self.s.iter() {
                let k = er.height(j);
                if k > 0 {
                    val = val.mul(&self.phi_block(j, k)?);
                }
            }
            for (i, &l) in m.kexp.iter().enumerate() {
                if l != 0 {
                    val = val.mul(&self.lambda[i].pow(l)?);
                }
            }
            acc = acc.add(&val.mul(&self.coeff_scalar(c)?));
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Letter;

    fn word(c: CartanData, w: &[Letter]) -> Element {
        Element::from_word(c, w, QRat::one()).unwrap()
    }

    #[test]
    fn heights() {
        let c = CartanData::type_a(2).unwrap();
        let e1f1 = word(c, &[Letter::E(0), Letter::F(0)]);
        assert_eq!(h_minus(&e1f1, 0).unwrap(), 1);
        assert_eq!(h_plus(&e1f1, 0).unwrap(), 1);
        let f1e1 = word(c, &[Letter::F(0), Letter::E(0)]);
        assert_eq!(h_minus(&f1e1, 0).unwrap(), 0);
        assert_eq!(h_plus(&f1e1, 0).unwrap(), 1);
        let k2 = word(c, &[Letter::K(1, 5)]);
        assert_eq!(h_plus(&k2, 0).unwrap(), 0);
        assert!(matches!(h_minus(&Element::zero(c), 0), Err(Error::ZeroElement)));
    }

    #[test]
    fn u0_membership() {
        let c = CartanData::type_a(2).unwrap();
        assert!(in_u0(&word(c, &[Letter::E(0), Letter::F(0)])));
        assert!(!in_u0(&word(c, &[Letter::E(0)])));
        let mixed = word(c, &[Letter::E(0), Letter::E(1), Letter::F(1), Letter::F(0)])
            .add(&word(c, &[Letter::K(1, 1)]))
            .unwrap();
        assert!(in_u0(&mixed));
    }

    #[test]
    fn split_examples() {
        let c = CartanData::type_a(2).unwrap();
        let s = SubsetS::new(&c, vec![0]).unwrap();
        let e1f1 = word(c, &[Letter::E(0), Letter::F(0)]);
        let (a, b) = split_u0s(&e1f1, &s).unwrap();
        assert_eq!(a, e1f1);
        assert!(b.is_zero());
        let e2f2 = word(c, &[Letter::E(1), Letter::F(1)]);
        let (a, b) = split_u0s(&e2f2, &s).unwrap();
        assert!(a.is_zero());
        assert_eq!(b, e2f2);
        let sum = word(c, &[Letter::K(0, 1)])
            .add(&e1f1)
            .unwrap()
            .add(&e2f2)
            .unwrap();
        let (a, b) = split_u0s(&sum, &s).unwrap();
        assert_eq!(a, word(c, &[Letter::K(0, 1)]).add(&e1f1).unwrap());
        assert_eq!(b, e2f2);
        assert!(matches!(
            split_u0s(&word(c, &[Letter::E(0)]), &s),
            Err(Error::NotInU0)
        ));
    }

    fn sample_rep() -> OneDimRep {
        let c = CartanData::type_a(2).unwrap();
        let s = SubsetS::new(&c, vec![0]).unwrap();
        OneDimRep::exact(
            c,
            s,
            vec![QRat::q_pow(3), QRat::q_pow(-1)],
            vec![&QRat::from_int(1) + &QRat::q()],
        )
        .unwrap()
    }

    #[test]
    fn phi_on_generators() {
        let rep = sample_rep();
        let c = *rep.cartan();
        // K_i -> lambda_i
        let k1 = word(c, &[Letter::K(0, 1)]);
        assert_eq!(rep.phi_eval(&k1).unwrap(), *rep.lambda(0));
        let k2 = word(c, &[Letter::K(1, 1)]);
        assert_eq!(rep.phi_eval(&k2).unwrap(), *rep.lambda(1));
        // E_1 F_1 -> mu_1
        let e1f1 = word(c, &[Letter::E(0), Letter::F(0)]);
        assert_eq!(rep.phi_eval(&e1f1).unwrap(), *rep.mu(0).unwrap());
        // E_2 F_2 lies in I^S
        let e2f2 = word(c, &[Letter::E(1), Letter::F(1)]);
        assert!(rep.phi_eval(&e2f2).unwrap().is_zero());
        // non-U_0 input projects to 0
        let e1 = word(c, &[Letter::E(0)]);
        assert!(rep.phi_eval(&e1).unwrap().is_zero());
    }

    #[test]
    fn phi_squared_block() {
        // phi(E^2 F^2) = mu (mu + (q^-2 lambda - q^2 lambda^-1)/(q - q^-1))
        let rep = sample_rep();
        let c = *rep.cartan();
        let x = word(
            c,
            &[Letter::E(0), Letter::E(0), Letter::F(0), Letter::F(0)],
        );
        let got = rep.phi_eval(&x).unwrap();
        let lam = rep.lambda(0).as_exact().unwrap();
        let mu = rep.mu(0).unwrap().as_exact().unwrap();
        let d = &QRat::q() - &QRat::q_pow(-1);
        let inner = &(&QRat::q_pow(-2) * lam) - &(&QRat::q_pow(2) * &lam.inverse().unwrap());
        let expect = mu * &(mu + &(&inner / &d));
        assert_eq!(got.as_exact().unwrap(), &expect);
    }

    #[test]
    fn phi_multiplicative() {
        let rep = sample_rep();
        let c = *rep.cartan();
        let samples = [
            word(c, &[Letter::E(0), Letter::F(0)]),
            word(c, &[Letter::K(0, 2), Letter::K(1, -1)]),
            word(c, &[Letter::F(0), Letter::E(0)]),
            word(c, &[Letter::E(0), Letter::E(0), Letter::F(0), Letter::F(0), Letter::K(0, -1)]),
        ];
        for x in &samples {
            for y in &samples {
                let xy = x.mul(y).unwrap();
                let lhs = rep.phi_eval(&xy).unwrap();
                let rhs = rep.phi_eval(x).unwrap().mul(&rep.phi_eval(y).unwrap());
                assert_eq!(lhs, rhs, "phi not multiplicative on {} * {}", x, y);
            }
        }
    }
}
