//! Star structures on U_q(sl(n+1)), the su(1,1) positivity analysis for the
//! rank-1 modules (norm products, exact positivity decisions) and the
//! matching of unitarizable modules to the classified series.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::algebra::{Element, Letter};
use crate::cartan::CartanData;
use crate::centralizer::OneDimRep;
use crate::error::{Error, Result};
use crate::qfield::{QRat, Ring, Scalar};
use crate::sl2::{casimir_scalar, submodules, Rank1Sl2Params};

// ---- star structures ------------------------------------------------------

/// Star structure data: an involutive Dynkin-diagram automorphism eta and
/// signs s_i in {+1,-1} with s_i = 1 off the fixed points. The star acts by
/// K_i* = K_{eta(i)}, E_i* = s_i F_{eta(i)} K_{eta(i)},
/// F_i* = s_i K_{eta(i)}^{-1} E_{eta(i)}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarStructure {
    cartan: CartanData,
    eta: Vec<usize>,
    signs: Vec<i64>,
}

impl StarStructure {
    pub fn new(cartan: CartanData, eta: Vec<usize>, signs: Vec<i64>) -> Result<Self> {
        let n = cartan.rank();
        if eta.len() != n || signs.len() != n {
            return Err(Error::StarStructure("eta and signs must have length rank".into()));
        }
        for i in 0..n {
            if eta[i] >= n {
                return Err(Error::StarStructure(format!("eta({}) out of range", i + 1)));
            }
            if eta[eta[i]] != i {
                return Err(Error::StarStructure("eta must be an involution".into()));
            }
            if signs[i] != 1 && signs[i] != -1 {
                return Err(Error::StarStructure("signs must be +1 or -1".into()));
            }
            if eta[i] != i && signs[i] != 1 {
                return Err(Error::StarStructure(
                    "sign must be +1 when eta moves the index".into(),
                ));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if cartan.a(eta[i], eta[j]) != cartan.a(i, j) {
                    return Err(Error::StarStructure(
                        "eta must preserve the Cartan matrix".into(),
                    ));
                }
            }
        }
        Ok(StarStructure { cartan, eta, signs })
    }

    /// The su(1,1) star on U_q(sl(2)): K* = K, E* = -FK, F* = -K^{-1}E.
    pub fn su11() -> Self {
        let cartan = CartanData::type_a(1).unwrap();
        StarStructure { cartan, eta: vec![0], signs: vec![-1] }
    }

    /// Identity automorphism with all signs -1 (the diagonal noncompact form).
    pub fn identity_negative(cartan: CartanData) -> Self {
        let n = cartan.rank();
        StarStructure { cartan, eta: (0..n).collect(), signs: vec![-1; n] }
    }

    pub fn eta(&self, i: usize) -> usize {
        self.eta[i]
    }

    pub fn sign(&self, i: usize) -> i64 {
        self.signs[i]
    }

    pub fn fixes(&self, i: usize) -> bool {
        self.eta[i] == i
    }

    /// The antilinear anti-homomorphism on a normal-form element. Rational
    /// coefficients in q are self-conjugate for real q.
    pub fn star(&self, x: &Element) -> Result<Element> {
        if x.cartan() != &self.cartan {
            return Err(Error::MixedCartan(x.cartan().rank(), self.cartan.rank()));
        }
        let mut out = Element::zero(self.cartan);
        for (m, c) in x.terms() {
            let mut word: Vec<Letter> = Vec::new();
            let mut sign = 1i64;
            // (E^m K^l F^k)* = (F^k)* (K^l)* (E^m)* with words reversed
            for &j in m.fword.iter().rev() {
                sign *= self.signs[j];
                word.push(Letter::K(self.eta[j], -1));
                word.push(Letter::E(self.eta[j]));
            }
            for (i, &l) in m.kexp.iter().enumerate() {
                if l != 0 {
                    word.push(Letter::K(self.eta[i], l));
                }
            }
            for &i in m.eword.iter().rev() {
                sign *= self.signs[i];
                word.push(Letter::F(self.eta[i]));
                word.push(Letter::K(self.eta[i], 1));
            }
            let coeff = if sign == 1 { c.clone() } else { -c };
            out = out.add(&Element::from_word(self.cartan, &word, coeff)?)?;
        }
        Ok(out)
    }
}

// ---- necessary conditions --------------------------------------------------

/// Outcome of the elementary sign conditions on (lambda, mu).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NecessaryReport {
    pub lambda_real_nonzero: bool,
    pub mu_lambda_negative: bool,
    /// Type I refinement: lambda > 0 and mu < 0.
    pub type_i: bool,
    pub ok: bool,
}

/// lambda real nonzero and mu*lambda < 0; type I additionally needs
/// lambda > 0 and mu < 0. Exact parameters are evaluated at q0.
pub fn necessary_conditions(p: &Rank1Sl2Params, q0: f64) -> Result<NecessaryReport> {
    let pn = p.to_numeric(q0)?;
    let lambda = pn.lambda().as_num()?;
    let mu = pn.mu().as_num()?;
    let tol = 1e-12 * (1.0 + lambda.norm().max(mu.norm()));
    let lambda_real = lambda.im.abs() <= tol && lambda.norm() > 0.0;
    let mu_real = mu.im.abs() <= tol;
    let mu_lambda_negative = lambda_real && mu_real && mu.re * lambda.re < 0.0;
    let type_i = mu_lambda_negative && lambda.re > 0.0 && mu.re < 0.0;
    Ok(NecessaryReport {
        lambda_real_nonzero: lambda_real,
        mu_lambda_negative,
        type_i,
        ok: lambda_real && mu_lambda_negative,
    })
}

// ---- norm squares ----------------------------------------------------------

/// Inputs for the norm computations, generic over the coefficient ring so
/// the same code runs on exact scalars, floats, and polynomials with lambda
/// and M = (q - q^-1)^2 mu adjoined as indeterminates.
#[derive(Debug, Clone)]
pub struct NormCtx<R: Ring> {
    pub q: R,
    pub q_inv: R,
    pub lambda: R,
    pub lambda_inv: R,
    pub m: R,
}

fn rpow<R: Ring>(base: &R, inv: &R, e: i64) -> R {
    let (b, n) = if e >= 0 { (base, e) } else { (inv, -e) };
    // seed with base*inv = 1 so the flavor of the operands is preserved
    let mut acc = base.mul(inv);
    for _ in 0..n {
        acc = acc.mul(b);
    }
    acc
}

impl<R: Ring> NormCtx<R> {
    fn one(&self) -> R {
        self.q.mul(&self.q_inv)
    }

    fn qp(&self, e: i64) -> R {
        rpow(&self.q, &self.q_inv, e)
    }

    fn lp(&self, e: i64) -> R {
        rpow(&self.lambda, &self.lambda_inv, e)
    }

    /// k-th factor of the E-side product:
    /// 1 - (lambda^2 + q^2 + q lambda M) q^{2k} + q^2 lambda^2 q^{4k}.
    pub fn factor_e(&self, k: i64) -> R {
        let mid = self.lp(2).add(&self.qp(2)).add(&self.qp(1).mul(&self.lambda).mul(&self.m));
        self.one()
            .sub(&mid.mul(&self.qp(2 * k)))
            .add(&self.qp(2).mul(&self.lp(2)).mul(&self.qp(4 * k)))
    }

    /// k-th factor of the F-side product:
    /// 1 - (q^2 lambda^-2 + 1 + q M lambda^-1) q^{2k} + q^2 lambda^-2 q^{4k}.
    pub fn factor_f(&self, k: i64) -> R {
        let mid = self
            .qp(2)
            .mul(&self.lp(-2))
            .add(&self.one())
            .add(&self.qp(1).mul(&self.m).mul(&self.lambda_inv));
        self.one()
            .sub(&mid.mul(&self.qp(2 * k)))
            .add(&self.qp(2).mul(&self.lp(-2)).mul(&self.qp(4 * k)))
    }

    /// Product form of the scaled E-norm ((q - q^-1)^2/q)^n <E^n 1|E^n 1>.
    pub fn scaled_norm_e_product(&self, n: u32) -> R {
        let mut acc = self.one();
        for k in 0..n as i64 {
            acc = acc.mul(&self.factor_e(k));
        }
        acc
    }

    pub fn scaled_norm_f_product(&self, n: u32) -> R {
        let mut acc = self.one();
        for k in 0..n as i64 {
            acc = acc.mul(&self.factor_f(k));
        }
        acc
    }

    /// Recursion form of the same scaled E-norm, one pairing with
    /// E* = -FK per step:
    /// N(n) = -lambda q^{2n-1} (M - (q^n - q^-n)(q^{n-1} lambda - q^{1-n} lambda^-1)) N(n-1).
    pub fn scaled_norm_e_recursion(&self, n: u32) -> R {
        let mut acc = self.one();
        for j in 1..=n as i64 {
            let inner = self
                .m
                .sub(&self.qp(j).sub(&self.qp(-j)).mul(
                    &self.qp(j - 1).mul(&self.lambda).sub(&self.qp(1 - j).mul(&self.lambda_inv)),
                ));
            acc = acc.mul(&self.lambda.mul(&self.qp(2 * j - 1)).mul(&inner).neg());
        }
        acc
    }

    /// Recursion form of the scaled F-norm, via F* = -K^-1 E:
    /// N(n) = -lambda^-1 q^{2n-1} (M + (q^{n-1} - q^{1-n})(q^{-n} lambda - q^n lambda^-1)) N(n-1).
    pub fn scaled_norm_f_recursion(&self, n: u32) -> R {
        let mut acc = self.one();
        for j in 1..=n as i64 {
            let inner = self
                .m
                .add(&self.qp(j - 1).sub(&self.qp(1 - j)).mul(
                    &self.qp(-j).mul(&self.lambda).sub(&self.qp(j).mul(&self.lambda_inv)),
                ));
            acc = acc.mul(&self.lambda_inv.mul(&self.qp(2 * j - 1)).mul(&inner).neg());
        }
        acc
    }
}

fn scalar_ctx(p: &Rank1Sl2Params) -> NormCtx<Scalar> {
    let q = p.q().clone();
    let q_inv = q.inv().expect("q nonzero");
    let lambda = p.lambda().clone();
    let lambda_inv = lambda.inv().expect("lambda nonzero");
    let d = q.sub(&q_inv);
    let m = d.mul(&d).mul(p.mu());
    NormCtx { q, q_inv, lambda, lambda_inv, m }
}

/// (q / (q - q^-1)^2)^n times the scaled product: the Gram norm <E^n 1|E^n 1>.
pub fn norm_sq_e(p: &Rank1Sl2Params, n: u32) -> Scalar {
    let ctx = scalar_ctx(p);
    let d = ctx.q.sub(&ctx.q_inv);
    let pre = ctx.q.mul(&d.mul(&d).inv().expect("q - q^-1 nonzero"));
    let mut acc = ctx.scaled_norm_e_product(n);
    for _ in 0..n {
        acc = acc.mul(&pre);
    }
    acc
}

/// The Gram norm <F^n 1|F^n 1> = (q^-1/(q - q^-1)^2)^n times the F-product.
pub fn norm_sq_f(p: &Rank1Sl2Params, n: u32) -> Scalar {
    let ctx = scalar_ctx(p);
    let d = ctx.q.sub(&ctx.q_inv);
    let pre = ctx.q_inv.mul(&d.mul(&d).inv().expect("q - q^-1 nonzero"));
    let mut acc = ctx.scaled_norm_f_product(n);
    for _ in 0..n {
        acc = acc.mul(&pre);
    }
    acc
}

// ---- symbolic polynomials in lambda, M over Q(q) ----------------------------

/// Laurent polynomial in lambda and ordinary polynomial in M with QRat
/// coefficients; exponent key is (lambda exponent, M exponent).
#[derive(Debug, Clone, PartialEq)]
pub struct MPoly {
    coeffs: BTreeMap<(i64, u32), QRat>,
}

impl MPoly {
    pub fn from_qrat(c: QRat) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert((0, 0), c);
        }
        MPoly { coeffs }
    }

    pub fn lambda_pow(e: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert((e, 0), QRat::one());
        MPoly { coeffs }
    }

    pub fn m_var() -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert((0, 1), QRat::one());
        MPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn insert_add(coeffs: &mut BTreeMap<(i64, u32), QRat>, k: (i64, u32), c: QRat) {
        if c.is_zero() {
            return;
        }
        match coeffs.entry(k) {
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
}

impl Ring for MPoly {
    fn zero() -> Self {
        MPoly { coeffs: BTreeMap::new() }
    }
    fn one() -> Self {
        MPoly::from_qrat(QRat::one())
    }
    fn add(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (k, c) in &other.coeffs {
            MPoly::insert_add(&mut coeffs, *k, c.clone());
        }
        MPoly { coeffs }
    }
    fn sub(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (k, c) in &other.coeffs {
            MPoly::insert_add(&mut coeffs, *k, -c);
        }
        MPoly { coeffs }
    }
    fn mul(&self, other: &Self) -> Self {
        let mut coeffs = BTreeMap::new();
        for ((l1, m1), c1) in &self.coeffs {
            for ((l2, m2), c2) in &other.coeffs {
                MPoly::insert_add(&mut coeffs, (l1 + l2, m1 + m2), c1 * c2);
            }
        }
        MPoly { coeffs }
    }
    fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|(k, c)| (*k, -c)).collect();
        MPoly { coeffs }
    }
}

/// Fully symbolic norm context: q, lambda, M all indeterminate.
pub fn symbolic_ctx() -> NormCtx<MPoly> {
    NormCtx {
        q: MPoly::from_qrat(QRat::q()),
        q_inv: MPoly::from_qrat(QRat::q_pow(-1)),
        lambda: MPoly::lambda_pow(1),
        lambda_inv: MPoly::lambda_pow(-1),
        m: MPoly::m_var(),
    }
}

// ---- positivity decision ----------------------------------------------------

/// Positivity of one ladder of norms over x in q^{2 N_0}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PositivityVerdict {
    /// All norms are strictly positive.
    Positive,
    /// The first norm index n >= 1 whose n-th factor is <= 0.
    FailsAt(u32),
}

impl fmt::Display for PositivityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PositivityVerdict::Positive => write!(f, "positive"),
            PositivityVerdict::FailsAt(n) => write!(f, "fails at n = {}", n),
        }
    }
}

/// Full unitarizability report.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitarityReport {
    pub necessary: NecessaryReport,
    pub e_side: Option<PositivityVerdict>,
    pub f_side: Option<PositivityVerdict>,
    pub unitarizable: bool,
}

/// Quadratic 1 - b x + c x^2 evaluated at x.
fn quad(b: f64, c: f64, x: f64) -> f64 {
    1.0 - b * x + c * x * x
}

/// Decide whether 1 - b x + c x^2 > 0 for all x = q^{2k}, k >= 0, by
/// computing the real root interval and locating the q-powers inside it.
/// Returns the smallest failing k, or None. Requires c > 0.
fn first_nonpositive_power(b: f64, c: f64, q0: f64) -> Option<u32> {
    debug_assert!(c > 0.0);
    let disc = b * b - 4.0 * c;
    if disc < 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    let r1 = (b - sq) / (2.0 * c);
    let r2 = (b + sq) / (2.0 * c);
    if r2 <= 0.0 {
        return None;
    }
    // q^{2k} decreases from 1; the first k with q^{2k} <= r2 is the earliest
    // candidate. Check a small neighborhood to absorb rounding.
    let k0 = if r2 >= 1.0 { 0 } else { (r2.ln() / (2.0 * q0.ln())).ceil() as i64 };
    for k in k0.saturating_sub(2).max(0)..=k0 + 2 {
        let x = q0.powi(2 * k as i32);
        if x >= r1 - 1e-15 && quad(b, c, x) <= 0.0 {
            return Some(k as u32);
        }
    }
    None
}

/// Exact (interval-based, no truncation) unitarizability decision at real q0.
/// Exact parameters are evaluated at q0 first. The module must be irreducible.
pub fn is_unitarizable(p: &Rank1Sl2Params, q0: f64) -> Result<UnitarityReport> {
    let pn = p.to_numeric(q0)?;
    if !submodules(&pn)?.is_irreducible() {
        return Err(Error::ReducibleInput);
    }
    let necessary = necessary_conditions(&pn, q0)?;
    if !necessary.ok {
        return Ok(UnitarityReport { necessary, e_side: None, f_side: None, unitarizable: false });
    }
    let lambda = pn.lambda().as_num()?.re;
    let mu = pn.mu().as_num()?.re;
    let m = (q0 - 1.0 / q0).powi(2) * mu;
    // E side: b = lambda^2 + q^2 + q lambda M, c = q^2 lambda^2
    let be = lambda * lambda + q0 * q0 + q0 * lambda * m;
    let ce = q0 * q0 * lambda * lambda;
    let e_side = match first_nonpositive_power(be, ce, q0) {
        None => PositivityVerdict::Positive,
        Some(k) => PositivityVerdict::FailsAt(k + 1),
    };
    // F side: b = q^2/lambda^2 + 1 + q M / lambda, c = q^2 / lambda^2
    let bf = q0 * q0 / (lambda * lambda) + 1.0 + q0 * m / lambda;
    let cf = q0 * q0 / (lambda * lambda);
    let f_side = match first_nonpositive_power(bf, cf, q0) {
        None => PositivityVerdict::Positive,
        Some(k) => PositivityVerdict::FailsAt(k + 1),
    };
    let unitarizable = e_side == PositivityVerdict::Positive && f_side == PositivityVerdict::Positive;
    Ok(UnitarityReport { necessary, e_side: Some(e_side), f_side: Some(f_side), unitarizable })
}

/// Brute-force check of the same positivity conditions at x = q^{2k}, k <= kmax.
pub fn brute_force_positive(p: &Rank1Sl2Params, q0: f64, kmax: u32) -> Result<(bool, bool)> {
    let pn = p.to_numeric(q0)?;
    let lambda = pn.lambda().as_num()?.re;
    let mu = pn.mu().as_num()?.re;
    let m = (q0 - 1.0 / q0).powi(2) * mu;
    let be = lambda * lambda + q0 * q0 + q0 * lambda * m;
    let ce = q0 * q0 * lambda * lambda;
    let bf = q0 * q0 / (lambda * lambda) + 1.0 + q0 * m / lambda;
    let cf = q0 * q0 / (lambda * lambda);
    let mut e_ok = true;
    let mut f_ok = true;
    for k in 0..=kmax {
        let x = q0.powi(2 * k as i32);
        if quad(be, ce, x) <= 0.0 {
            e_ok = false;
        }
        if quad(bf, cf, x) <= 0.0 {
            f_ok = false;
        }
    }
    Ok((e_ok, f_ok))
}

/// Roots (A, B) and (C, D) of the two positivity quadratics, so the products
/// become q-shifted factorials (A,B;q^2)_n and (C,D;q^2)_n.
pub fn ab_form(p: &Rank1Sl2Params, q0: f64) -> Result<(Complex64, Complex64, Complex64, Complex64)> {
    let pn = p.to_numeric(q0)?;
    let lambda = pn.lambda().as_num()?;
    let mu = pn.mu().as_num()?;
    let q = Complex64::new(q0, 0.0);
    let m = (q - q.inv()).powi(2) * mu;
    let sum_ab = q * lambda * m + q * q + lambda * lambda;
    let prod_ab = q * q * lambda * lambda;
    let sum_cd = q * m / lambda + Complex64::new(1.0, 0.0) + q * q / (lambda * lambda);
    let prod_cd = q * q / (lambda * lambda);
    let (a, b) = quadratic_roots(sum_ab, prod_ab);
    let (c, d) = quadratic_roots(sum_cd, prod_cd);
    Ok((a, b, c, d))
}

fn quadratic_roots(sum: Complex64, prod: Complex64) -> (Complex64, Complex64) {
    let disc = (sum * sum - prod * 4.0).sqrt();
    ((sum + disc) / 2.0, (sum - disc) / 2.0)
}

// ---- series classification ---------------------------------------------------

/// Label of an irreducible unitary type I module.
#[derive(Debug, Clone, PartialEq)]
pub enum SeriesLabel {
    /// sigma = -1/2 + i b, 0 <= b <= -pi/(2 ln q), (sigma, eps) != (-1/2, 1/2).
    Principal { b: f64, eps: f64 },
    /// sigma = -1/2 - i pi/(2 ln q) + a, a > 0; Casimir is negative real.
    Strange { a: f64, eps: f64 },
    /// -1/2 < sigma < 0 real, eps = 0.
    Complementary { sigma: f64 },
    /// Lowest-weight quotient of the degenerate module at lambda = q^{2k}.
    PositiveDiscrete { k: f64 },
    /// Highest-weight side, lambda = q^{-2k}.
    NegativeDiscrete { k: f64 },
}

impl fmt::Display for SeriesLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesLabel::Principal { b, eps } => write!(f, "principal(b={}, eps={})", b, eps),
            SeriesLabel::Strange { a, eps } => write!(f, "strange(a={}, eps={})", a, eps),
            SeriesLabel::Complementary { sigma } => write!(f, "complementary(sigma={})", sigma),
            SeriesLabel::PositiveDiscrete { k } => write!(f, "positive_discrete(k={})", k),
            SeriesLabel::NegativeDiscrete { k } => write!(f, "negative_discrete(k={})", k),
        }
    }
}

/// Spectral parity: eps = 0 if lambda in q^{2Z}, 1/2 if lambda in q^{1+2Z}.
fn epsilon_of(lambda: f64, q0: f64) -> Result<f64> {
    if lambda <= 0.0 {
        return Err(Error::Unclassifiable("lambda must be positive for type I".into()));
    }
    let t = lambda.ln() / q0.ln();
    let r = t.round();
    if (t - r).abs() > 1e-7 {
        return Err(Error::Unclassifiable(format!(
            "lambda is not in q^Z (exponent {})",
            t
        )));
    }
    Ok(if (r as i64).rem_euclid(2) == 0 { 0.0 } else { 0.5 })
}

/// Classify an irreducible unitarizable type I module by its rescaled
/// Casimir value c2 = (q - q^-1)^2 Omega = q^{2 sigma + 1} + q^{-2 sigma - 1}.
pub fn classify_series(p: &Rank1Sl2Params, q0: f64) -> Result<SeriesLabel> {
    let pn = p.to_numeric(q0)?;
    // degenerate modules route to the discrete series through the quotient
    if pn.is_degenerate() {
        let lambda = pn.lambda().as_num()?;
        if lambda.im.abs() > 1e-9 || lambda.re <= 0.0 {
            return Err(Error::Unclassifiable("degenerate module with non-positive lambda".into()));
        }
        // lambda = q^{2k} with 2k a nonzero integer
        let t = lambda.re.ln() / q0.ln();
        let r = t.round();
        if (t - r).abs() > 1e-7 || r == 0.0 {
            return Err(Error::Unclassifiable(
                "degenerate module with lambda not in q^Z, or lambda = 1".into(),
            ));
        }
        return Ok(if r > 0.0 {
            SeriesLabel::PositiveDiscrete { k: r / 2.0 }
        } else {
            SeriesLabel::NegativeDiscrete { k: -r / 2.0 }
        });
    }
    let report = is_unitarizable(&pn, q0)?;
    if !report.unitarizable {
        return Err(Error::Unclassifiable("module is not unitarizable".into()));
    }
    if !report.necessary.type_i {
        return Err(Error::Unclassifiable("module is not type I".into()));
    }
    let lambda = pn.lambda().as_num()?.re;
    let eps = epsilon_of(lambda, q0)?;
    let c2 = (casimir_scalar(&pn).as_num()? * (q0 - 1.0 / q0).powi(2)).re;
    let lq = q0.ln();
    if c2.abs() <= 2.0 {
        let b = (c2 / 2.0).acos() / (-2.0 * lq);
        if b.abs() < 1e-9 && eps == 0.5 {
            return Err(Error::Unclassifiable("(sigma, eps) = (-1/2, 1/2) is excluded".into()));
        }
        Ok(SeriesLabel::Principal { b, eps })
    } else if c2 < -2.0 {
        let a = (-c2 / 2.0).acosh() / (-2.0 * lq);
        Ok(SeriesLabel::Strange { a, eps })
    } else if c2 < q0 + 1.0 / q0 {
        if eps != 0.0 {
            return Err(Error::Unclassifiable("complementary series requires eps = 0".into()));
        }
        // c2 = q^u + q^-u with u = 2 sigma + 1 in (0, 1)
        let u = (c2 / 2.0).acosh() / (-lq);
        Ok(SeriesLabel::Complementary { sigma: (u - 1.0) / 2.0 })
    } else {
        Err(Error::Unclassifiable(format!("Casimir value {} outside the series ranges", c2)))
    }
}

/// Numeric parameters realizing a series label at q0, with
/// mu = (c2 - q^{-1} lambda - q lambda^{-1})/(q - q^{-1})^2
/// and lambda the spectrum representative q^{2 eps}.
pub fn params_for_series(label: &SeriesLabel, q0: f64) -> Result<Rank1Sl2Params> {
    if !(0.0 < q0 && q0 < 1.0) {
        return Err(Error::Domain("q must lie in (0,1)".into()));
    }
    let lq = q0.ln();
    match label {
        SeriesLabel::PositiveDiscrete { k } => {
            let kk = 2.0 * k;
            if kk < 0.5 || (kk - kk.round()).abs() > 1e-9 {
                return Err(Error::Domain("discrete series needs k in (1/2) N".into()));
            }
            Rank1Sl2Params::numeric(q0, Complex64::new(q0.powi(kk.round() as i32), 0.0), Complex64::new(0.0, 0.0))
        }
        SeriesLabel::NegativeDiscrete { k } => {
            let kk = 2.0 * k;
            if kk < 0.5 || (kk - kk.round()).abs() > 1e-9 {
                return Err(Error::Domain("discrete series needs k in (1/2) N".into()));
            }
            Rank1Sl2Params::numeric(q0, Complex64::new(q0.powi(-(kk.round() as i32)), 0.0), Complex64::new(0.0, 0.0))
        }
        SeriesLabel::Principal { b, eps } => {
            if !(0.0 <= *b && *b <= -std::f64::consts::PI / (2.0 * lq)) {
                return Err(Error::Domain("principal series needs 0 <= b <= -pi/(2 ln q)".into()));
            }
            if *b == 0.0 && *eps == 0.5 {
                return Err(Error::Domain("(sigma, eps) = (-1/2, 1/2) is excluded".into()));
            }
            let c2 = 2.0 * (2.0 * b * lq).cos();
            params_from_c2(c2, *eps, q0)
        }
        SeriesLabel::Strange { a, eps } => {
            if *a <= 0.0 {
                return Err(Error::Domain("strange series needs a > 0".into()));
            }
            let c2 = -(q0.powf(2.0 * a) + q0.powf(-2.0 * a));
            params_from_c2(c2, *eps, q0)
        }
        SeriesLabel::Complementary { sigma } => {
            if !(-0.5 < *sigma && *sigma < 0.0) {
                return Err(Error::Domain("complementary series needs -1/2 < sigma < 0".into()));
            }
            let u = 2.0 * sigma + 1.0;
            let c2 = q0.powf(u) + q0.powf(-u);
            params_from_c2(c2, 0.0, q0)
        }
    }
}

fn params_from_c2(c2: f64, eps: f64, q0: f64) -> Result<Rank1Sl2Params> {
    if eps != 0.0 && eps != 0.5 {
        return Err(Error::Domain("eps must be 0 or 1/2".into()));
    }
    let lambda = q0.powf(2.0 * eps);
    let mu = (c2 - lambda / q0 - q0 / lambda) / (q0 - 1.0 / q0).powi(2);
    Rank1Sl2Params::numeric(q0, Complex64::new(lambda, 0.0), Complex64::new(mu, 0.0))
}

// ---- positivity of phi -------------------------------------------------------

/// Report for the positive-functional check of phi^S against a star structure.
#[derive(Debug, Clone)]
pub struct PhiPositivityReport {
    /// Per-node sign condition s_j * mu_j * lambda_j > 0, for j in S.
    pub sign_conditions: Vec<(usize, bool)>,
    pub samples_checked: usize,
    /// Smallest real part of phi(X* X) over the samples.
    pub min_value: f64,
    pub all_nonnegative: bool,
}

/// Checks phi(X* X) >= 0 on the given sample words and reports the sign
/// conditions the positivity forces on (lambda_j, mu_j). Requires S to sit
/// inside the fixed points of eta.
pub fn phi_positive_check(
    rep: &OneDimRep,
    star: &StarStructure,
    samples: &[Element],
) -> Result<PhiPositivityReport> {
    for j in rep.subset().iter() {
        if !star.fixes(j) {
            return Err(Error::StarStructure(format!(
                "S must consist of eta-fixed indices; eta moves {}",
                j + 1
            )));
        }
    }
    let q0 = match rep.q() {
        Scalar::Num(z) => z.re,
        Scalar::Exact(_) => {
            return Err(Error::FlavorMismatch);
        }
    };
    let mut sign_conditions = Vec::new();
    for j in rep.subset().iter() {
        let lam = rep.lambda(j).as_num()?;
        let mu = rep.mu(j)?.as_num()?;
        let ok = lam.im.abs() < 1e-9
            && mu.im.abs() < 1e-9
            && (star.sign(j) as f64) * mu.re * lam.re > 0.0;
        sign_conditions.push((j, ok));
    }
    let mut min_value = f64::INFINITY;
    let tol = 1e-9;
    let mut all_nonnegative = true;
    for x in samples {
        let xx = star.star(x)?.mul(x)?;
        let v = rep.phi_eval(&xx)?;
        let z = v.to_complex(q0)?;
        if z.im.abs() > tol * (1.0 + z.norm()) {
            all_nonnegative = false;
        }
        if z.re < min_value {
            min_value = z.re;
        }
        if z.re < -tol {
            all_nonnegative = false;
        }
    }
    Ok(PhiPositivityReport {
        sign_conditions,
        samples_checked: samples.len(),
        min_value,
        all_nonnegative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn su11_star_on_generators() {
        let s = StarStructure::su11();
        let c = CartanData::type_a(1).unwrap();
        let e = Element::from_word(c, &[Letter::E(0)], QRat::one()).unwrap();
        let f = Element::from_word(c, &[Letter::F(0)], QRat::one()).unwrap();
        let k = Element::from_word(c, &[Letter::K(0, 1)], QRat::one()).unwrap();
        assert_eq!(s.star(&k).unwrap(), k);
        // E* = -FK
        let fk = Element::from_word(c, &[Letter::F(0), Letter::K(0, 1)], -&QRat::one()).unwrap();
        assert_eq!(s.star(&e).unwrap(), fk);
        // F* = -K^-1 E
        let kie = Element::from_word(c, &[Letter::K(0, -1), Letter::E(0)], -&QRat::one()).unwrap();
        assert_eq!(s.star(&f).unwrap(), kie);
        // involution
        assert_eq!(s.star(&s.star(&e).unwrap()).unwrap(), e);
        assert_eq!(s.star(&s.star(&f).unwrap()).unwrap(), f);
    }

    #[test]
    fn star_antihomomorphism() {
        let s = StarStructure::identity_negative(CartanData::type_a(2).unwrap());
        let c = CartanData::type_a(2).unwrap();
        let words: Vec<Element> = [
            vec![Letter::E(0), Letter::F(1)],
            vec![Letter::K(0, 1), Letter::E(1), Letter::F(0)],
            vec![Letter::F(0), Letter::E(0), Letter::K(1, -1)],
        ]
        .iter()
        .map(|w| Element::from_word(c, w, QRat::one()).unwrap())
        .collect();
        for x in &words {
            for y in &words {
                let lhs = s.star(&x.mul(y).unwrap()).unwrap();
                let rhs = s.star(y).unwrap().mul(&s.star(x).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
            assert_eq!(s.star(&s.star(x).unwrap()).unwrap(), *x);
        }
    }

    #[test]
    fn flip_automorphism_valid() {
        // sl(3): eta = (1 2) preserves the Cartan matrix, signs must be +1
        let c = CartanData::type_a(2).unwrap();
        assert!(StarStructure::new(c, vec![1, 0], vec![1, 1]).is_ok());
        assert!(StarStructure::new(c, vec![1, 0], vec![-1, 1]).is_err());
        // sl(4): swapping only 1 and 2 breaks the matrix condition
        let c4 = CartanData::type_a(3).unwrap();
        assert!(StarStructure::new(c4, vec![1, 0, 2], vec![1, 1, 1]).is_err());
        assert!(StarStructure::new(c4, vec![2, 1, 0], vec![1, 1, 1]).is_ok());
    }

    #[test]
    fn necessary_condition_examples() {
        let q0 = 0.5;
        let p = Rank1Sl2Params::numeric(q0, Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0))
            .unwrap();
        assert!(necessary_conditions(&p, q0).unwrap().ok);
        let p = Rank1Sl2Params::numeric(q0, Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0))
            .unwrap();
        assert!(!necessary_conditions(&p, q0).unwrap().ok);
        let p = Rank1Sl2Params::numeric(q0, Complex64::new(0.0, 1.0), Complex64::new(-1.0, 0.0))
            .unwrap();
        assert!(!necessary_conditions(&p, q0).unwrap().ok);
    }

    #[test]
    fn norm_product_matches_recursion_symbolically() {
        let ctx = symbolic_ctx();
        for n in 0..=10 {
            assert_eq!(
                ctx.scaled_norm_e_product(n),
                ctx.scaled_norm_e_recursion(n),
                "E-side norm mismatch at n = {}",
                n
            );
            assert_eq!(
                ctx.scaled_norm_f_product(n),
                ctx.scaled_norm_f_recursion(n),
                "F-side norm mismatch at n = {}",
                n
            );
        }
    }

    #[test]
    fn norm_gram_pairing() {
        // <E^n 1 | E^n 1> computed via the module action and E* = -FK must
        // reproduce norm_sq_e
        let p = Rank1Sl2Params::exact(QRat::one(), -&(&QRat::q() + &QRat::one())).unwrap();
        let mut norm = Scalar::Exact(QRat::one());
        for n in 1..=6u32 {
            // recursion factor: -lambda q^{2n} coeff_f(n)
            let lam = p.lambda().clone();
            let q2n = p.q().pow(2 * n as i64).unwrap();
            let cf = crate::sl2::action_coeff_f(&p, n as i64);
            norm = norm.mul(&lam.mul(&q2n).mul(&cf).neg());
            assert_eq!(norm, norm_sq_e(&p, n), "n = {}", n);
        }
        assert!(norm_sq_e(&p, 0).is_exact());
    }

    #[test]
    fn principal_series_is_unitarizable() {
        let q0 = 0.5;
        let p = params_for_series(&SeriesLabel::Principal { b: 1.0, eps: 0.0 }, q0).unwrap();
        let r = is_unitarizable(&p, q0).unwrap();
        assert!(r.unitarizable, "{:?}", r);
        for n in 0..=50u32 {
            let v = norm_sq_e(&p, n).as_num().unwrap();
            assert!(v.re > 0.0, "E-norm at n = {} is {}", n, v);
            let v = norm_sq_f(&p, n).as_num().unwrap();
            assert!(v.re > 0.0, "F-norm at n = {} is {}", n, v);
        }
    }

    #[test]
    fn interval_matches_brute_force() {
        let q0 = 0.5;
        // a quadratic engineered to dip below zero at some q-power
        let p = Rank1Sl2Params::numeric(q0, Complex64::new(1.0, 0.0), Complex64::new(-0.01, 0.0))
            .unwrap();
        let r = is_unitarizable(&p, q0).unwrap();
        let (be, bf) = brute_force_positive(&p, q0, 500).unwrap();
        assert_eq!(r.e_side == Some(PositivityVerdict::Positive), be);
        assert_eq!(r.f_side == Some(PositivityVerdict::Positive), bf);
    }

    #[test]
    fn ab_form_consistency() {
        let q0 = 0.5;
        let p = params_for_series(&SeriesLabel::Principal { b: 1.0, eps: 0.0 }, q0).unwrap();
        let (a, b, _, _) = ab_form(&p, q0).unwrap();
        // (A,B;q^2)_n equals the scaled product
        let q2 = Complex64::new(q0 * q0, 0.0);
        for n in 0..=15u32 {
            let mut prod = Complex64::new(1.0, 0.0);
            let mut x = Complex64::new(1.0, 0.0);
            for _ in 0..n {
                prod *= (Complex64::new(1.0, 0.0) - a * x) * (Complex64::new(1.0, 0.0) - b * x);
                x *= q2;
            }
            let pre = (q0 / (q0 - 1.0 / q0).powi(2)).powi(n as i32);
            let direct = norm_sq_e(&p, n).as_num().unwrap();
            assert!((prod * pre - direct).norm() < 1e-9 * (1.0 + direct.norm()), "n = {}", n);
        }
        // swapping A and B leaves the product invariant by symmetry
        let (a2, b2, _, _) = ab_form(&p, q0).unwrap();
        assert_eq!((a, b), (a2, b2));
    }

    #[test]
    fn classification_roundtrip() {
        let q0 = 0.5;
        let labels = vec![
            SeriesLabel::Principal { b: 0.0, eps: 0.0 },
            SeriesLabel::Principal { b: 0.7, eps: 0.5 },
            SeriesLabel::Strange { a: 0.9, eps: 0.0 },
            SeriesLabel::Complementary { sigma: -0.25 },
        ];
        for l in &labels {
            let p = params_for_series(l, q0).unwrap();
            let back = classify_series(&p, q0).unwrap();
            match (l, &back) {
                (SeriesLabel::Principal { b, eps }, SeriesLabel::Principal { b: b2, eps: e2 }) => {
                    assert!((b - b2).abs() < 1e-7 && eps == e2, "{} vs {}", l, back);
                }
                (SeriesLabel::Strange { a, eps }, SeriesLabel::Strange { a: a2, eps: e2 }) => {
                    assert!((a - a2).abs() < 1e-7 && eps == e2, "{} vs {}", l, back);
                }
                (
                    SeriesLabel::Complementary { sigma },
                    SeriesLabel::Complementary { sigma: s2 },
                ) => {
                    assert!((sigma - s2).abs() < 1e-7, "{} vs {}", l, back);
                }
                _ => panic!("label changed kind: {} vs {}", l, back),
            }
        }
        // discrete series go through the degenerate route
        let p = params_for_series(&SeriesLabel::PositiveDiscrete { k: 1.5 }, q0).unwrap();
        assert_eq!(classify_series(&p, q0).unwrap(), SeriesLabel::PositiveDiscrete { k: 1.5 });
    }

    #[test]
    fn classification_constant_on_orbits() {
        let q0 = 0.5;
        let p = params_for_series(&SeriesLabel::Strange { a: 0.4, eps: 0.0 }, q0).unwrap();
        let base = classify_series(&p, q0).unwrap();
        for n in -3..=3 {
            let p2 = crate::sl2::equivalent_params(&p, n);
            let l = classify_series(&p2, q0).unwrap();
            match (&base, &l) {
                (SeriesLabel::Strange { a, eps }, SeriesLabel::Strange { a: a2, eps: e2 }) => {
                    assert!((a - a2).abs() < 1e-7 && eps == e2);
                }
                _ => panic!("classification changed along the orbit at n = {}", n),
            }
        }
    }

    #[test]
    fn phi_positivity_sign_conditions() {
        let c = CartanData::type_a(1).unwrap();
        let s = crate::cartan::SubsetS::new(&c, vec![0]).unwrap();
        let q0 = 0.5;
        let rep = OneDimRep::numeric(
            q0,
            c,
            s,
            vec![Complex64::new(1.0, 0.0)],
            vec![Complex64::new(-1.0, 0.0)],
        )
        .unwrap();
        let star = StarStructure::su11();
        let samples = vec![
            Element::one(c),
            Element::from_word(c, &[Letter::F(0)], QRat::one()).unwrap(),
            Element::from_word(c, &[Letter::E(0), Letter::F(0)], QRat::one()).unwrap(),
        ];
        let r = phi_positive_check(&rep, &star, &samples).unwrap();
        // s = -1, mu = -1, lambda = 1: s mu lambda = 1 > 0
        assert!(r.sign_conditions.iter().all(|(_, ok)| *ok));
        assert!(r.all_nonnegative, "min value {}", r.min_value);
    }
}
