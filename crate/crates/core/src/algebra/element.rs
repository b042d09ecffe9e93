use std::collections::BTreeMap;
use std::fmt;

use crate::cartan::{CartanData, RootVector};
use crate::error::{Error, Result};
use crate::qfield::QRat;

/// One generator letter. K carries an exponent so K_i^{-1} is a single letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Letter {
    E(usize),
    F(usize),
    K(usize, i64),
}

impl Letter {
    fn index(&self) -> usize {
        match self {
            Letter::E(i) | Letter::F(i) | Letter::K(i, _) => *i,
        }
    }
}

/// Triangular monomial E-word * K^l * F-word. Within the E-word and the
/// F-word, adjacent letters with a_{ij} = 0 are kept sorted by index, so the
/// words are canonical representatives of their commutation classes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriMonomial {
    pub eword: Vec<usize>,
    pub kexp: Vec<i64>,
    pub fword: Vec<usize>,
}

impl TriMonomial {
    pub fn one(rank: usize) -> Self {
        TriMonomial { eword: vec![], kexp: vec![0; rank], fword: vec![] }
    }

    pub fn is_identity(&self) -> bool {
        self.eword.is_empty() && self.fword.is_empty() && self.kexp.iter().all(|&l| l == 0)
    }

    /// Sum of alpha_i over the letters of the E-word.
    pub fn e_root(&self, rank: usize) -> RootVector {
        let mut v = vec![0i64; rank];
        for &i in &self.eword {
            v[i] += 1;
        }
        RootVector(v)
    }

    /// Sum of alpha_i over the letters of the F-word.
    pub fn f_root(&self, rank: usize) -> RootVector {
        let mut v = vec![0i64; rank];
        for &i in &self.fword {
            v[i] += 1;
        }
        RootVector(v)
    }

    /// root = e_root - f_root (K-part contributes nothing).
    pub fn root(&self, rank: usize) -> RootVector {
        self.e_root(rank).sub(&self.f_root(rank))
    }
}

/// Bubble commuting letters (a_{ij} = 0) into ascending index order; the
/// fixed point is the lexicographically least word in the commutation class.
fn canonical_sort(cartan: &CartanData, word: &mut [usize]) {
    loop {
        let mut changed = false;
        for k in 0..word.len().saturating_sub(1) {
            if word[k] > word[k + 1] && cartan.a(word[k], word[k + 1]) == 0 {
                word.swap(k, k + 1);
                changed = true;
            }
        }
        if !changed {
            return;
        }
    }
}

/// Finite linear combination of triangular monomials with QRat coefficients,
/// kept in normal form: K-letters in the middle, no F-before-E inversions,
/// commuting fragments sorted, no zero coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    cartan: CartanData,
    terms: BTreeMap<TriMonomial, QRat>,
}

/// Outcome of tiered equality testing (normal forms are not unique across
/// Serre relations for rank >= 2, so a third verdict exists).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieredEq {
    Equal,
    NotEqual,
    Undecided,
}

impl Element {
    pub fn zero(cartan: CartanData) -> Self {
        Element { cartan, terms: BTreeMap::new() }
    }

    pub fn one(cartan: CartanData) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(TriMonomial::one(cartan.rank()), QRat::one());
        Element { cartan, terms }
    }

    pub fn scalar(cartan: CartanData, c: QRat) -> Self {
        let mut e = Element::zero(cartan);
        e.insert(TriMonomial::one(cartan.rank()), c);
        e
    }

    /// Single generator as an element; index is 0-based.
    pub fn generator(cartan: CartanData, letter: Letter) -> Result<Self> {
        Element::from_word(cartan, &[letter], QRat::one())
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TriMonomial, &QRat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the identity monomial.
    pub fn constant_coeff(&self) -> QRat {
        self.terms
            .get(&TriMonomial::one(self.cartan.rank()))
            .cloned()
            .unwrap_or_else(QRat::zero)
    }

    /// True when the element is a scalar multiple of the identity monomial.
    pub fn as_scalar(&self) -> Option<QRat> {
        if self.terms.is_empty() {
            return Some(QRat::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_identity() {
                return Some(c.clone());
            }
        }
        None
    }

    fn insert(&mut self, m: TriMonomial, c: QRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Normalize a word of generator letters times a scalar into an Element.
    pub fn from_word(cartan: CartanData, word: &[Letter], coeff: QRat) -> Result<Self> {
        let mut steps = 0u64;
        Self::from_word_counted(cartan, word, coeff, &mut steps)
    }

    /// Same as `from_word` but counts commutator rewrite applications.
    pub fn from_word_counted(
        cartan: CartanData,
        word: &[Letter],
        coeff: QRat,
        steps: &mut u64,
    ) -> Result<Self> {
        for l in word {
            cartan.check_index(l.index())?;
        }
        let mut acc = Element::scalar(cartan, coeff);
        for l in word {
            acc = acc.mul_letter(*l, steps);
        }
        Ok(acc)
    }

    fn mul_letter(&self, letter: Letter, steps: &mut u64) -> Element {
        let mut out = Element::zero(self.cartan);
        for (m, c) in &self.terms {
            match letter {
                Letter::K(i, e) => {
                    let (m2, qpow) = mul_mono_k(&self.cartan, m, i, e);
                    out.insert(m2, &QRat::q_pow(qpow) * c);
                }
                Letter::F(i) => {
                    let mut m2 = m.clone();
                    m2.fword.push(i);
                    canonical_sort(&self.cartan, &mut m2.fword);
                    out.insert(m2, c.clone());
                }
                Letter::E(i) => {
                    for (m2, c2) in mul_mono_e(&self.cartan, m, i, steps) {
                        out.insert(m2, &c2 * c);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Element { cartan: self.cartan, terms }
    }

    pub fn scale(&self, c: &QRat) -> Element {
        if c.is_zero() {
            return Element::zero(self.cartan);
        }
        let terms = self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect();
        Element { cartan: self.cartan, terms }
    }

    /// Algebra product with re-normalization.
    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        let mut steps = 0u64;
        let mut out = Element::zero(self.cartan);
        for (m2, c2) in &other.terms {
            // replay the right monomial letter by letter onto each left term
            let mut acc = self.scale(c2);
            for &i in &m2.eword {
                acc = acc.mul_letter(Letter::E(i), &mut steps);
            }
            for (i, &l) in m2.kexp.iter().enumerate() {
                if l != 0 {
                    acc = acc.mul_letter(Letter::K(i, l), &mut steps);
                }
            }
            for &i in &m2.fword {
                acc = acc.mul_letter(Letter::F(i), &mut steps);
            }
            out = out.add(&acc)?;
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<Element> {
        let mut acc = Element::one(self.cartan);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    fn check_same(&self, other: &Element) -> Result<()> {
        if self.cartan != other.cartan {
            return Err(Error::MixedCartan(self.cartan.rank(), other.cartan.rank()));
        }
        Ok(())
    }

    /// The root gamma with K_i x K_i^-1 = q^{(alpha_i, gamma)} x, when all
    /// monomials agree.
    pub fn root_of(&self) -> Result<RootVector> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let rank = self.cartan.rank();
        let mut roots: Vec<RootVector> = Vec::new();
        for m in self.terms.keys() {
            let r = m.root(rank);
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
        if roots.len() == 1 {
            Ok(roots.pop().unwrap())
        } else {
            roots.sort();
            Err(Error::Inhomogeneous(roots.into_iter().map(|r| r.0).collect()))
        }
    }

    /// Decomposition into root-homogeneous components.
    pub fn weight_components(&self) -> BTreeMap<RootVector, Element> {
        let rank = self.cartan.rank();
        let mut out: BTreeMap<RootVector, Element> = BTreeMap::new();
        for (m, c) in &self.terms {
            let r = m.root(rank);
            out.entry(r)
                .or_insert_with(|| Element::zero(self.cartan))
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Monomials are already canonical by construction; this re-runs every
    /// monomial through the engine and checks nothing changes.
    pub fn is_normal_form(&self) -> bool {
        for m in self.terms.keys() {
            let word: Vec<Letter> = m
                .eword
                .iter()
                .map(|&i| Letter::E(i))
                .chain(m.kexp.iter().enumerate().filter(|(_, &l)| l != 0).map(|(i, &l)| Letter::K(i, l)))
                .chain(m.fword.iter().map(|&i| Letter::F(i)))
                .collect();
            match Element::from_word(self.cartan, &word, QRat::one()) {
                Ok(e) => {
                    if e.terms.len() != 1 || !e.terms.contains_key(m) || !e.terms[m].is_one() {
                        return false;
                    }
                }
                Err(_) => return false,
            }
        }
        true
    }

    /// Tiered equality: equal normal forms prove equality; differing images
    /// under the fundamental representation prove inequality; otherwise the
    /// question is left undecided (Serre-related normal forms, rank >= 2).
    pub fn eq_tiered(&self, other: &Element) -> Result<TieredEq> {
        self.check_same(other)?;
        if self == other {
            return Ok(TieredEq::Equal);
        }
        let a = super::rep::rep_check(self)?;
        let b = super::rep::rep_check(other)?;
        if a != b {
            Ok(TieredEq::NotEqual)
        } else if self.cartan.rank() == 1 {
            // in sl(2) the triangular monomials are the PBW basis
            Ok(TieredEq::NotEqual)
        } else {
            Ok(TieredEq::Undecided)
        }
    }
}

/// mono * K_i^e: migrate K left past the F-word, collecting q powers.
fn mul_mono_k(cartan: &CartanData, m: &TriMonomial, i: usize, e: i64) -> (TriMonomial, i64) {
    let qpow: i64 = m.fword.iter().map(|&j| e * cartan.a(i, j)).sum();
    let mut m2 = m.clone();
    m2.kexp[i] += e;
    (m2, qpow)
}

/// mono * E_i: commute E_i left through the F-word (generating commutator
/// terms), then through the K-monomial, then insert into the E-word.
fn mul_mono_e(cartan: &CartanData, m: &TriMonomial, i: usize, steps: &mut u64) -> Vec<(TriMonomial, QRat)> {
    if let Some((&j, prefix)) = m.fword.split_last() {
        let p = TriMonomial { eword: m.eword.clone(), kexp: m.kexp.clone(), fword: prefix.to_vec() };
        let mut out = Vec::new();
        // P F_j E_i = (P E_i) F_j - delta_ij P (K_i - K_i^-1)/(q - q^-1)
        for (mut m2, c2) in mul_mono_e(cartan, &p, i, steps) {
            m2.fword.push(j);
            canonical_sort(cartan, &mut m2.fword);
            out.push((m2, c2));
        }
        if i == j {
            *steps += 1;
            let inv = (&QRat::q() - &QRat::q_pow(-1)).inverse().expect("q - q^-1 is nonzero");
            let (mk, p1) = mul_mono_k(cartan, &p, i, 1);
            out.push((mk, &(-&inv) * &QRat::q_pow(p1)));
            let (mki, p2) = mul_mono_k(cartan, &p, i, -1);
            out.push((mki, &inv * &QRat::q_pow(p2)));
        }
        out
    } else {
        // through K^l: K_j E_i = q^{a_{ji}} E_i K_j
        let qpow: i64 = m.kexp.iter().enumerate().map(|(j, &l)| l * cartan.a(j, i)).sum();
        let mut m2 = m.clone();
        m2.eword.push(i);
        canonical_sort(cartan, &mut m2.eword);
        vec![(m2, QRat::q_pow(qpow))]
    }
}

impl fmt::Display for TriMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn push_run(parts: &mut Vec<String>, sym: char, word: &[usize]) {
            let mut k = 0;
            while k < word.len() {
                let mut run = 1;
                while k + run < word.len() && word[k + run] == word[k] {
                    run += 1;
                }
                if run == 1 {
                    parts.push(format!("{}{}", sym, word[k] + 1));
                } else {
                    parts.push(format!("{}{}^{}", sym, word[k] + 1, run));
                }
                k += run;
            }
        }
        let mut parts: Vec<String> = Vec::new();
        push_run(&mut parts, 'E', &self.eword);
        for (i, &l) in self.kexp.iter().enumerate() {
            if l == 1 {
                parts.push(format!("K{}", i + 1));
            } else if l != 0 {
                parts.push(format!("K{}^{}", i + 1, l));
            }
        }
        push_run(&mut parts, 'F', &self.fword);
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.num().leading_coeff() < num_traits::Zero::zero();
            let mag = if neg { -c } else { c.clone() };
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
            if m.is_identity() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", mag, m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl(n: usize) -> CartanData {
        CartanData::type_a(n).unwrap()
    }

    fn gen(c: CartanData, l: Letter) -> Element {
        Element::generator(c, l).unwrap()
    }

    #[test]
    fn fe_commutator_sl2() {
        // F1 E1 = E1 F1 - (K1 - K1^-1)/(q - q^-1)
        let c = sl(1);
        let x = Element::from_word(c, &[Letter::F(0), Letter::E(0)], QRat::one()).unwrap();
        let ef = Element::from_word(c, &[Letter::E(0), Letter::F(0)], QRat::one()).unwrap();
        let inv = (&QRat::q() - &QRat::q_pow(-1)).inverse().unwrap();
        let k = gen(c, Letter::K(0, 1));
        let ki = gen(c, Letter::K(0, -1));
        let expect = ef
            .sub(&k.scale(&inv))
            .unwrap()
            .add(&ki.scale(&inv))
            .unwrap();
        assert_eq!(x, expect);
    }

    #[test]
    fn ke_relation_sl2() {
        // K1 E1 = q^2 E1 K1
        let c = sl(1);
        let x = Element::from_word(c, &[Letter::K(0, 1), Letter::E(0)], QRat::one()).unwrap();
        let y = Element::from_word(c, &[Letter::E(0), Letter::K(0, 1)], QRat::q_pow(2)).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn kk_inverse_cancel() {
        let c = sl(2);
        let x = Element::from_word(c, &[Letter::K(0, 1), Letter::K(0, -1)], QRat::one()).unwrap();
        assert_eq!(x, Element::one(c));
    }

    #[test]
    fn ef_cross_index_commute_sl3() {
        // E1 F2 is already triangular: single monomial
        let c = sl(2);
        let x = Element::from_word(c, &[Letter::E(0), Letter::F(1)], QRat::one()).unwrap();
        assert_eq!(x.num_terms(), 1);
        // and F2 E1 has no commutator term
        let y = Element::from_word(c, &[Letter::F(1), Letter::E(0)], QRat::one()).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn commuting_letters_sorted() {
        // E3 E1 in sl(4): a_13 = 0, so the canonical word is E1 E3
        let c = sl(3);
        let x = Element::from_word(c, &[Letter::E(2), Letter::E(0)], QRat::one()).unwrap();
        let (m, _) = x.terms().next().unwrap();
        assert_eq!(m.eword, vec![0, 2]);
        // adjacent indices stay in place
        let y = Element::from_word(c, &[Letter::E(1), Letter::E(0)], QRat::one()).unwrap();
        let (m, _) = y.terms().next().unwrap();
        assert_eq!(m.eword, vec![1, 0]);
    }

    #[test]
    fn roots_and_components() {
        let c = sl(2);
        let e1f1 = Element::from_word(c, &[Letter::E(0), Letter::F(0)], QRat::one()).unwrap();
        assert!(e1f1.root_of().unwrap().is_zero());
        let e1e2 = Element::from_word(c, &[Letter::E(0), Letter::E(1)], QRat::one()).unwrap();
        assert_eq!(e1e2.root_of().unwrap(), RootVector(vec![1, 1]));
        let mixed = gen(c, Letter::E(0)).add(&gen(c, Letter::F(0))).unwrap();
        assert!(matches!(mixed.root_of(), Err(Error::Inhomogeneous(_))));
        let comps = mixed.weight_components();
        assert_eq!(comps.len(), 2);
        assert!(Element::zero(c).weight_components().is_empty());
    }

    #[test]
    fn mul_k_with_e_power() {
        // K E^n = q^{2n} E^n K in sl(2)
        let c = sl(1);
        let e = gen(c, Letter::E(0));
        let k = gen(c, Letter::K(0, 1));
        for n in 0..6u32 {
            let en = e.pow(n).unwrap();
            let lhs = k.mul(&en).unwrap();
            let rhs = en.mul(&k).unwrap().scale(&QRat::q_pow(2 * n as i64));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn mixed_cartan_rejected() {
        let a = Element::one(sl(1));
        let b = Element::one(sl(2));
        assert!(matches!(a.mul(&b), Err(Error::MixedCartan(1, 2))));
    }

    #[test]
    fn display_normal_form() {
        let c = sl(1);
        let x = Element::from_word(c, &[Letter::F(0), Letter::E(0)], QRat::one()).unwrap();
        assert_eq!(
            x.to_string(),
            "E1*F1 - (q - q^-1)^-1*K1 + (q - q^-1)^-1*K1^-1"
        );
    }
}
