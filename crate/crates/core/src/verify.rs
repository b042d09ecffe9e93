//! Named invariant suites. Each suite exercises one family of exact or
//! numeric properties end to end; the suites back both the command-line
//! `verify` subcommand and the integration tests.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{fundamental_rep, rep_check, Element, Letter, QMatrix, TriMonomial};
use crate::cartan::{CartanData, SubsetS};
use crate::centralizer::{h_minus, split_u0s, OneDimRep};
use crate::error::Error;
use crate::parse::parse_element;
use crate::qfield::{qbinomial, qint, QRat, Ring, Scalar};
use crate::rankn::{proper_submodule_witness, u0s_generators};
use crate::sl2::{
    act_e, act_element, act_f, act_k, casimir_element, casimir_scalar, equivalent_params,
    intertwiner_apply, solve_n_e, solve_n_f, trace_map, Rank1Sl2Params, Sl2Vector,
};
use crate::unitarity::{
    brute_force_positive, classify_series, is_unitarizable, norm_sq_e, norm_sq_f,
    params_for_series, symbolic_ctx, PositivityVerdict, SeriesLabel, StarStructure,
};

/// Result of running one suite.
#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type SuiteBody = fn() -> std::result::Result<String, String>;

/// Stable suite registry.
pub const SUITES: &[(&str, SuiteBody)] = &[
    ("qfield", suite_qfield),
    ("algebra-termination", suite_algebra_termination),
    ("algebra-oracle", suite_algebra_oracle),
    ("algebra-identities", suite_algebra_identities),
    ("algebra-homogeneity", suite_algebra_homogeneity),
    ("algebra-relations", suite_relations_rep),
    ("centralizer-heights", suite_centralizer_heights),
    ("centralizer-ideal", suite_centralizer_ideal),
    ("centralizer-phi", suite_centralizer_phi),
    ("sl2-module", suite_sl2_module),
    ("sl2-reducibility", suite_sl2_reducibility),
    ("sl2-equivalence", suite_sl2_equivalence),
    ("unitarity-star", suite_unitarity_star),
    ("unitarity-norms", suite_unitarity_norms),
    ("classification", suite_classification),
    ("rankn-closure", suite_rankn_closure),
    ("rankn-witness", suite_rankn_witness),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(n, _)| *n).collect()
}

/// Run one suite by name.
pub fn run_suite(name: &str) -> Option<SuiteOutcome> {
    SUITES.iter().find(|(n, _)| *n == name).map(|(n, body)| match body() {
        Ok(detail) => SuiteOutcome { name: n, passed: true, detail },
        Err(detail) => SuiteOutcome { name: n, passed: false, detail },
    })
}

/// Run every suite.
pub fn run_all() -> Vec<SuiteOutcome> {
    suite_names().iter().map(|n| run_suite(n).unwrap()).collect()
}

// ---- helpers ----------------------------------------------------------------

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_letter(rng: &mut ChaCha8Rng, rank: usize) -> Letter {
    let i = rng.gen_range(0..rank);
    match rng.gen_range(0..4) {
        0 => Letter::E(i),
        1 => Letter::F(i),
        2 => Letter::K(i, 1),
        _ => Letter::K(i, -1),
    }
}

fn random_word(rng: &mut ChaCha8Rng, rank: usize, max_len: usize) -> Vec<Letter> {
    let len = rng.gen_range(1..=max_len);
    (0..len).map(|_| random_letter(rng, rank)).collect()
}

/// Balanced word with root 0: a few E_i F_i pairs plus K letters, shuffled.
fn random_u0_word(rng: &mut ChaCha8Rng, rank: usize, max_pairs: usize) -> Vec<Letter> {
    let mut letters = Vec::new();
    for _ in 0..rng.gen_range(0..=max_pairs) {
        let i = rng.gen_range(0..rank);
        letters.push(Letter::E(i));
        letters.push(Letter::F(i));
    }
    for _ in 0..rng.gen_range(0..=2) {
        let i = rng.gen_range(0..rank);
        letters.push(Letter::K(i, if rng.gen_bool(0.5) { 1 } else { -1 }));
    }
    for a in (1..letters.len()).rev() {
        let b = rng.gen_range(0..=a);
        letters.swap(a, b);
    }
    letters
}

fn monomial_word(m: &TriMonomial) -> Vec<Letter> {
    let mut w: Vec<Letter> = m.eword.iter().map(|&i| Letter::E(i)).collect();
    for (i, &l) in m.kexp.iter().enumerate() {
        if l != 0 {
            w.push(Letter::K(i, l));
        }
    }
    w.extend(m.fword.iter().map(|&i| Letter::F(i)));
    w
}

fn word_matrix(rank: usize, word: &[Letter]) -> QMatrix {
    let rep = fundamental_rep(rank);
    let mut acc = QMatrix::identity(rank + 1);
    for l in word {
        let m = match *l {
            Letter::E(i) => rep.e(i),
            Letter::F(i) => rep.f(i),
            Letter::K(i, e) => rep.k(i, e),
        };
        acc = acc.mul(&m);
    }
    acc
}

fn gen(cartan: CartanData, l: Letter) -> Element {
    Element::generator(cartan, l).unwrap()
}

fn random_qrat(rng: &mut ChaCha8Rng) -> QRat {
    let mut acc = QRat::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let c = QRat::from_int(rng.gen_range(-4..=4));
        let e = rng.gen_range(-3..=3);
        acc = &acc + &(&c * &QRat::q_pow(e));
    }
    acc
}

fn random_qrat_frac(rng: &mut ChaCha8Rng) -> QRat {
    let num = random_qrat(rng);
    let den = random_qrat(rng);
    if den.is_zero() {
        num
    } else {
        &num / &den
    }
}

// ---- suites -------------------------------------------------------------------

fn suite_qfield() -> std::result::Result<String, String> {
    let mut rng = rng_for(101);
    // ring axioms, 10^3 random triples of rational functions
    for t in 0..1000 {
        let a = random_qrat_frac(&mut rng);
        let b = random_qrat_frac(&mut rng);
        let c = random_qrat_frac(&mut rng);
        if (&(&a + &b) + &c) != (&a + &(&b + &c)) {
            return Err(format!("additive associativity failed on triple {}", t));
        }
        if (&(&a * &b) * &c) != (&a * &(&b * &c)) {
            return Err(format!("multiplicative associativity failed on triple {}", t));
        }
        if (&a * &(&b + &c)) != (&(&a * &b) + &(&a * &c)) {
            return Err(format!("distributivity failed on triple {}", t));
        }
        if (&a * &b) != (&b * &a) {
            return Err(format!("commutativity failed on triple {}", t));
        }
    }
    // q-binomial symmetry and Pascal-type recurrence, n <= 12
    for n in 0..=12u32 {
        for k in 0..=n {
            let lhs = qbinomial(n, k).unwrap();
            if lhs != qbinomial(n, n - k).unwrap() {
                return Err(format!("qbinomial symmetry failed at ({}, {})", n, k));
            }
            if n >= 1 && k >= 1 && k < n {
                let rec = &(&QRat::q_pow(-(k as i64)) * &qbinomial(n - 1, k).unwrap())
                    + &(&QRat::q_pow((n - k) as i64) * &qbinomial(n - 1, k - 1).unwrap());
                if lhs != rec {
                    return Err(format!("qbinomial recurrence failed at ({}, {})", n, k));
                }
            }
        }
    }
    // evaluation is multiplicative on pole-free samples
    let q0 = 0.7;
    let mut checked = 0;
    for _ in 0..400 {
        let a = random_qrat_frac(&mut rng);
        let b = random_qrat_frac(&mut rng);
        let p = &a * &b;
        match (a.eval_f64(q0), b.eval_f64(q0), p.eval_f64(q0)) {
            (Ok(ea), Ok(eb), Ok(ep)) => {
                if (ea * eb - ep).abs() > 1e-12 * (1.0 + ep.abs()) {
                    return Err(format!("eval homomorphism failed: {} * {} != {}", ea, eb, ep));
                }
                checked += 1;
            }
            _ => continue,
        }
    }
    Ok(format!("ring axioms x1000, qbinomial n<=12, eval hom x{}", checked))
}

fn suite_algebra_termination() -> std::result::Result<String, String> {
    let mut rng = rng_for(102);
    let mut max_steps = 0u64;
    for rank in 1..=4usize {
        let cartan = CartanData::type_a(rank).unwrap();
        for t in 0..50 {
            let w = random_word(&mut rng, rank, 12);
            let mut steps = 0u64;
            let x = Element::from_word_counted(cartan, &w, QRat::one(), &mut steps)
                .map_err(|e| format!("normalize failed: {}", e))?;
            max_steps = max_steps.max(steps);
            if !x.is_normal_form() {
                return Err(format!("rank {} word {} not in normal form", rank, t));
            }
            // normalization is a fixed point: renormalizing each monomial
            // reproduces the element
            let mut y = Element::zero(cartan);
            for (m, c) in x.terms() {
                let part = Element::from_word(cartan, &monomial_word(m), c.clone())
                    .map_err(|e| format!("renormalize failed: {}", e))?;
                y = y.add(&part).unwrap();
            }
            if x != y {
                return Err(format!("rank {} word {} is not a fixed point", rank, t));
            }
        }
    }
    Ok(format!("200 words, length <= 12, ranks 1-4; max rewrite steps {}", max_steps))
}

fn suite_algebra_oracle() -> std::result::Result<String, String> {
    let mut rng = rng_for(103);
    for rank in 1..=4usize {
        let cartan = CartanData::type_a(rank).unwrap();
        for t in 0..1000 {
            let w = random_word(&mut rng, rank, 8);
            let direct = word_matrix(rank, &w);
            let x = Element::from_word(cartan, &w, QRat::one())
                .map_err(|e| format!("normalize failed: {}", e))?;
            let normalized = rep_check(&x).map_err(|e| format!("rep_check failed: {}", e))?;
            if !direct.add(&normalized.scale(&-&QRat::one())).is_zero() {
                return Err(format!("oracle mismatch at rank {}, word {}", rank, t));
            }
        }
    }
    Ok("rep_check(normalize(w)) = rep_check(w), 1000 words per rank 1-4".into())
}

fn suite_algebra_identities() -> std::result::Result<String, String> {
    let c = CartanData::type_a(1).unwrap();
    let e = gen(c, Letter::E(0));
    let f = gen(c, Letter::F(0));
    let k = gen(c, Letter::K(0, 1));
    let kinv = gen(c, Letter::K(0, -1));
    let dinv = (&QRat::q() - &QRat::q_pow(-1)).inverse().unwrap();
    for n in 1..=8u32 {
        for m in 1..=8u32 {
            // K^n E^m = q^{2mn} E^m K^n
            let lhs = k.pow(n).unwrap().mul(&e.pow(m).unwrap()).unwrap();
            let rhs = e
                .pow(m)
                .unwrap()
                .mul(&k.pow(n).unwrap())
                .unwrap()
                .scale(&QRat::q_pow(2 * (m as i64) * (n as i64)));
            if lhs != rhs {
                return Err(format!("K^n E^m identity failed at n={}, m={}", n, m));
            }
        }
        let nn = n as i64;
        // E F^n = F^n E + [n] F^{n-1} (q^{1-n} K - q^{n-1} K^-1)/(q - q^-1)
        let lhs = e.mul(&f.pow(n).unwrap()).unwrap();
        let kpart = k
            .scale(&QRat::q_pow(1 - nn))
            .sub(&kinv.scale(&QRat::q_pow(nn - 1)))
            .unwrap()
            .scale(&(&qint(n) * &dinv));
        let rhs = f
            .pow(n)
            .unwrap()
            .mul(&e)
            .unwrap()
            .add(&f.pow(n - 1).unwrap().mul(&kpart).unwrap())
            .unwrap();
        if lhs != rhs {
            return Err(format!("E F^n identity failed at n={}", n));
        }
        // F E^n = E^n F - [n] E^{n-1} (q^{n-1} K - q^{1-n} K^-1)/(q - q^-1)
        let lhs = f.mul(&e.pow(n).unwrap()).unwrap();
        let kpart = k
            .scale(&QRat::q_pow(nn - 1))
            .sub(&kinv.scale(&QRat::q_pow(1 - nn)))
            .unwrap()
            .scale(&(&qint(n) * &dinv));
        let rhs = e
            .pow(n)
            .unwrap()
            .mul(&f)
            .unwrap()
            .sub(&e.pow(n - 1).unwrap().mul(&kpart).unwrap())
            .unwrap();
        if lhs != rhs {
            return Err(format!("F E^n identity failed at n={}", n));
        }
    }
    Ok("ladder commutation identities exact for n, m <= 8".into())
}

fn suite_algebra_homogeneity() -> std::result::Result<String, String> {
    let mut rng = rng_for(104);
    for rank in 1..=3usize {
        let cartan = CartanData::type_a(rank).unwrap();
        for t in 0..200 {
            let x = Element::from_word(cartan, &random_word(&mut rng, rank, 5), QRat::one())
                .unwrap();
            let y = Element::from_word(cartan, &random_word(&mut rng, rank, 5), QRat::one())
                .unwrap();
            let p = x.mul(&y).unwrap();
            let rx = x.root_of().map_err(|e| format!("x not homogeneous: {}", e))?;
            let ry = y.root_of().map_err(|e| format!("y not homogeneous: {}", e))?;
            let rp = p.root_of().map_err(|e| format!("xy not homogeneous: {}", e))?;
            if rp != rx.add(&ry) {
                return Err(format!("root additivity failed at rank {}, pair {}", rank, t));
            }
        }
    }
    Ok("root(xy) = root(x) + root(y) on 600 homogeneous pairs".into())
}

fn suite_relations_rep() -> std::result::Result<String, String> {
    let dinv = (&QRat::q() - &QRat::q_pow(-1)).inverse().unwrap();
    let two = qint(2);
    for rank in 1..=4usize {
        let cartan = CartanData::type_a(rank).unwrap();
        let rep = fundamental_rep(rank);
        let dim = rep.dim();
        let id = QMatrix::identity(dim);
        let fail = |what: &str, i: usize, j: usize| {
            Err(format!("{} relation failed at rank {}, (i,j)=({},{})", what, rank, i + 1, j + 1))
        };
        for i in 0..rank {
            // K_i K_i^-1 = 1
            if !rep.k(i, 1).mul(&rep.k(i, -1)).add(&id.scale(&-&QRat::one())).is_zero() {
                return fail("K K^-1", i, i);
            }
            for j in 0..rank {
                let a = cartan.a(i, j);
                // K_i E_j = q^{a_ij} E_j K_i
                let lhs = rep.k(i, 1).mul(&rep.e(j));
                let rhs = rep.e(j).mul(&rep.k(i, 1)).scale(&QRat::q_pow(a));
                if !lhs.add(&rhs.scale(&-&QRat::one())).is_zero() {
                    return fail("K E", i, j);
                }
                // K_i F_j = q^{-a_ij} F_j K_i
                let lhs = rep.k(i, 1).mul(&rep.f(j));
                let rhs = rep.f(j).mul(&rep.k(i, 1)).scale(&QRat::q_pow(-a));
                if !lhs.add(&rhs.scale(&-&QRat::one())).is_zero() {
                    return fail("K F", i, j);
                }
                // E_i F_j - F_j E_i = delta_ij (K_i - K_i^-1)/(q - q^-1)
                let mut comm = rep
                    .e(i)
                    .mul(&rep.f(j))
                    .add(&rep.f(j).mul(&rep.e(i)).scale(&-&QRat::one()));
                if i == j {
                    let kd = rep.k(i, 1).add(&rep.k(i, -1).scale(&-&QRat::one())).scale(&dinv);
                    comm = comm.add(&kd.scale(&-&QRat::one()));
                }
                if !comm.is_zero() {
                    return fail("E F", i, j);
                }
                if i == j {
                    continue;
                }
                if a == 0 {
                    // distant indices commute
                    let c = rep.e(i).mul(&rep.e(j)).add(&rep.e(j).mul(&rep.e(i)).scale(&-&QRat::one()));
                    if !c.is_zero() {
                        return fail("E E distant", i, j);
                    }
                    let c = rep.f(i).mul(&rep.f(j)).add(&rep.f(j).mul(&rep.f(i)).scale(&-&QRat::one()));
                    if !c.is_zero() {
                        return fail("F F distant", i, j);
                    }
                } else {
                    // adjacent q-Serre relations
                    let s = rep
                        .e(i)
                        .mul(&rep.e(i))
                        .mul(&rep.e(j))
                        .add(&rep.e(i).mul(&rep.e(j)).mul(&rep.e(i)).scale(&-&two))
                        .add(&rep.e(j).mul(&rep.e(i)).mul(&rep.e(i)));
                    if !s.is_zero() {
                        return fail("E Serre", i, j);
                    }
                    let s = rep
                        .f(i)
                        .mul(&rep.f(i))
                        .mul(&rep.f(j))
                        .add(&rep.f(i).mul(&rep.f(j)).mul(&rep.f(i)).scale(&-&two))
                        .add(&rep.f(j).mul(&rep.f(i)).mul(&rep.f(i)));
                    if !s.is_zero() {
                        return fail("F Serre", i, j);
                    }
                }
            }
        }
    }
    Ok("all defining and Serre relations vanish in the vector representation, ranks 1-4".into())
}

fn suite_centralizer_heights() -> std::result::Result<String, String> {
    let mut rng = rng_for(105);
    for rank in 1..=2usize {
        let cartan = CartanData::type_a(rank).unwrap();
        for t in 0..1000 {
            let x = Element::from_word(cartan, &random_u0_word(&mut rng, rank, 2), QRat::one())
                .unwrap();
            let y = Element::from_word(cartan, &random_u0_word(&mut rng, rank, 2), QRat::one())
                .unwrap();
            let z = x.mul(&y).unwrap();
            for i in 0..rank {
                let hx = h_minus(&x, i).unwrap();
                let hy = h_minus(&y, i).unwrap();
                let hz = h_minus(&z, i).unwrap();
                if hz < hx.max(hy) {
                    return Err(format!(
                        "height inequality failed at rank {}, pair {}, node {}",
                        rank,
                        t,
                        i + 1
                    ));
                }
            }
            // subadditivity under addition on comparable summands
            let s = x.add(&y).unwrap();
            if !s.is_zero() {
                for i in 0..rank {
                    let hs = h_minus(&s, i).unwrap();
                    if hs < h_minus(&x, i).unwrap().min(h_minus(&y, i).unwrap()) {
                        return Err(format!("height subadditivity failed at pair {}", t));
                    }
                }
            }
        }
        // prepending E-words in one batch or two gives the same heights
        for t in 0..300 {
            // X in U^0 U^-: K letters and F letters only
            let mut xw = Vec::new();
            for _ in 0..rng.gen_range(1..=4) {
                let i = rng.gen_range(0..rank);
                if rng.gen_bool(0.5) {
                    xw.push(Letter::F(i));
                } else {
                    xw.push(Letter::K(i, if rng.gen_bool(0.5) { 1 } else { -1 }));
                }
            }
            let x = Element::from_word(cartan, &xw, QRat::one()).unwrap();
            let ew1 = (0..rng.gen_range(1..=2))
                .map(|_| Letter::E(rng.gen_range(0..rank)))
                .collect::<Vec<_>>();
            let ew2 = (0..rng.gen_range(1..=2))
                .map(|_| Letter::E(rng.gen_range(0..rank)))
                .collect::<Vec<_>>();
            let e1 = Element::from_word(cartan, &ew1, QRat::one()).unwrap();
            let e2 = Element::from_word(cartan, &ew2, QRat::one()).unwrap();
            let split = e1.mul(&e2).unwrap().mul(&x).unwrap();
            let merged_word: Vec<Letter> = ew1.iter().chain(ew2.iter()).cloned().collect();
            let merged = Element::from_word(cartan, &merged_word, QRat::one())
                .unwrap()
                .mul(&x)
                .unwrap();
            for i in 0..rank {
                if h_minus(&split, i).unwrap() != h_minus(&merged, i).unwrap() {
                    return Err(format!("E-word merge heights differ at rank {}, case {}", rank, t));
                }
            }
        }
    }
    Ok("product/addition height bounds on 1000 pairs per rank 1-2, merge equality x300".into())
}

fn suite_centralizer_ideal() -> std::result::Result<String, String> {
    // strongly orthogonal pairs commute after normalization
    for rank in [3usize, 4] {
        let cartan = CartanData::type_a(rank).unwrap();
        for i in 0..rank {
            for j in (i + 2)..rank {
                let a = gen(cartan, Letter::E(i)).mul(&gen(cartan, Letter::F(i))).unwrap();
                let b = gen(cartan, Letter::E(j)).mul(&gen(cartan, Letter::F(j))).unwrap();
                let comm = a.mul(&b).unwrap().sub(&b.mul(&a).unwrap()).unwrap();
                if !comm.is_zero() {
                    return Err(format!(
                        "[E_iF_i, E_jF_j] != 0 at rank {}, pair ({}, {})",
                        rank,
                        i + 1,
                        j + 1
                    ));
                }
            }
        }
    }
    // the ideal property: U_0 * I^S and I^S * U_0 stay inside I^S
    let mut rng = rng_for(106);
    let cartan = CartanData::type_a(3).unwrap();
    let s = SubsetS::new(&cartan, vec![0, 2]).unwrap();
    for t in 0..500 {
        let u = Element::from_word(cartan, &random_u0_word(&mut rng, 3, 2), QRat::one()).unwrap();
        // v: a balanced monomial containing the node outside S
        let mut vw = vec![Letter::E(1), Letter::F(1)];
        vw.extend(random_u0_word(&mut rng, 3, 1));
        let v = Element::from_word(cartan, &vw, QRat::one()).unwrap();
        for prod in [u.mul(&v).unwrap(), v.mul(&u).unwrap()] {
            let (inside, _) = split_u0s(&prod, &s).map_err(|e| format!("split failed: {}", e))?;
            if !inside.is_zero() {
                return Err(format!("product escaped the ideal at sample {}", t));
            }
        }
    }
    Ok("commutativity for all strongly orthogonal pairs in ranks 3-4; ideal closure x500".into())
}

fn suite_centralizer_phi() -> std::result::Result<String, String> {
    let mut rng = rng_for(107);
    let cartan = CartanData::type_a(2).unwrap();
    let s = SubsetS::new(&cartan, vec![0]).unwrap();
    let rep = OneDimRep::exact(
        cartan,
        s,
        vec![QRat::q_pow(3), QRat::q_pow(-1)],
        vec![QRat::from_fraction(1, 2)],
    )
    .unwrap();
    for t in 0..300 {
        let x = Element::from_word(cartan, &random_u0_word(&mut rng, 2, 2), QRat::one()).unwrap();
        let y = Element::from_word(cartan, &random_u0_word(&mut rng, 2, 2), QRat::one()).unwrap();
        let lhs = rep.phi_eval(&x.mul(&y).unwrap()).map_err(|e| e.to_string())?;
        let rhs = rep
            .phi_eval(&x)
            .map_err(|e| e.to_string())?
            .mul(&rep.phi_eval(&y).map_err(|e| e.to_string())?);
        if lhs != rhs {
            return Err(format!("phi multiplicativity failed at sample {}", t));
        }
    }
    Ok("phi(xy) = phi(x) phi(y) exactly on 300 random pairs in U_0".into())
}

fn sample_exact_params() -> Vec<Rank1Sl2Params> {
    vec![
        Rank1Sl2Params::exact(QRat::q_pow(3), QRat::from_fraction(1, 2)).unwrap(),
        Rank1Sl2Params::exact(QRat::one(), &QRat::q() + &QRat::q_pow(-1)).unwrap(),
        Rank1Sl2Params::exact(QRat::q_pow(-2), QRat::from_int(3)).unwrap(),
        Rank1Sl2Params::exact(-&QRat::q_pow(2), &QRat::q() + &QRat::from_int(1)).unwrap(),
        Rank1Sl2Params::exact(&QRat::q() + &QRat::from_int(2), QRat::from_fraction(-2, 3))
            .unwrap(),
    ]
}

fn suite_sl2_module() -> std::result::Result<String, String> {
    let c = CartanData::type_a(1).unwrap();
    let ef_comm = parse_element(c, "E1*F1 - F1*E1").unwrap();
    let k_diff = parse_element(c, "(K1 - K1^-1)*(q - q^-1)^-1").unwrap();
    let ke = parse_element(c, "K1*E1").unwrap();
    let ek = parse_element(c, "E1*K1").unwrap();
    let kf = parse_element(c, "K1*F1").unwrap();
    let fk = parse_element(c, "F1*K1").unwrap();
    let kk = parse_element(c, "K1*K1^-1").unwrap();
    let q2 = QRat::q_pow(2);
    for p in sample_exact_params() {
        for k in -20..=20i64 {
            let v = Sl2Vector::basis(&p, k);
            // [E, F] acts as (K - K^-1)/(q - q^-1)
            let lhs = act_element(&p, &ef_comm, &v).unwrap();
            let rhs = act_element(&p, &k_diff, &v).unwrap();
            if !lhs.sub(&rhs).is_zero() {
                return Err(format!("EF commutator action failed at k = {}", k));
            }
            // K E = q^2 E K
            let lhs = act_element(&p, &ke, &v).unwrap();
            let rhs = act_element(&p, &ek.scale(&q2), &v).unwrap();
            if !lhs.sub(&rhs).is_zero() {
                return Err(format!("KE action failed at k = {}", k));
            }
            // K F = q^-2 F K
            let lhs = act_element(&p, &kf.scale(&q2), &v).unwrap();
            let rhs = act_element(&p, &fk, &v).unwrap();
            if !lhs.sub(&rhs).is_zero() {
                return Err(format!("KF action failed at k = {}", k));
            }
            // K K^-1 = 1
            if !act_element(&p, &kk, &v).unwrap().sub(&v).is_zero() {
                return Err(format!("K K^-1 action failed at k = {}", k));
            }
            // Casimir acts by its scalar
            let w = act_element(&p, &casimir_element(), &v).unwrap();
            if !w.sub(&v.scale(&casimir_scalar(&p))).is_zero() {
                return Err(format!("Casimir scalar failed at k = {}", k));
            }
        }
    }
    // Casimir centrality in the algebra itself
    let omega = casimir_element();
    for x in [gen(c, Letter::E(0)), gen(c, Letter::F(0)), gen(c, Letter::K(0, 1))] {
        let comm = omega.mul(&x).unwrap().sub(&x.mul(&omega).unwrap()).unwrap();
        if !comm.is_zero() {
            return Err("Casimir is not central".into());
        }
    }
    Ok("module axioms and Casimir action exact on |k| <= 20 for 5 parameter sets".into())
}

fn suite_sl2_reducibility() -> std::result::Result<String, String> {
    // the worked example: lambda = 1, mu = [2]_q
    let p = Rank1Sl2Params::exact(QRat::one(), &QRat::q() + &QRat::q_pow(-1)).unwrap();
    let ne = solve_n_e(&p).unwrap();
    let nf = solve_n_f(&p).unwrap();
    if ne != Some(2) || nf != Some(2) {
        return Err(format!("expected nE = nF = 2, got {:?}, {:?}", ne, nf));
    }
    if !act_e(&p, &Sl2Vector::basis(&p, -2)).is_zero() {
        return Err("E does not annihilate basis(-2)".into());
    }
    if !act_f(&p, &Sl2Vector::basis(&p, 2)).is_zero() {
        return Err("F does not annihilate basis(2)".into());
    }
    // uniqueness of ladder roots on random numeric parameters
    // (the solver asserts internally that each quadratic has at most one
    // admissible root)
    let mut rng = rng_for(108);
    let q0 = 0.5;
    let mut reducible = 0;
    for _ in 0..1000 {
        let lambda = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        if lambda.norm() < 0.05 {
            continue;
        }
        let mu = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let p = Rank1Sl2Params::numeric(q0, lambda, mu).unwrap();
        let ne = solve_n_e(&p).map_err(|e| e.to_string())?;
        let nf = solve_n_f(&p).map_err(|e| e.to_string())?;
        if ne.is_some() || nf.is_some() {
            reducible += 1;
        }
    }
    Ok(format!(
        "worked example exact; 1000 random numeric draws, each ladder has at most one root ({} reducible)",
        reducible
    ))
}

fn suite_sl2_equivalence() -> std::result::Result<String, String> {
    // Casimir invariance along equivalence orbits
    for p in sample_exact_params() {
        let base = casimir_scalar(&p);
        for n in -5..=5i64 {
            if casimir_scalar(&equivalent_params(&p, n)) != base {
                return Err(format!("Casimir changed along orbit at n = {}", n));
            }
        }
    }
    // intertwiner commutes with the generator actions; monomial lambda keeps
    // the exact coefficients small over the |k| <= 10 sweep
    let mus = [
        QRat::from_fraction(1, 2),
        QRat::from_int(3),
        &QRat::q() + &QRat::q_pow(-1),
        QRat::from_fraction(-2, 3),
        QRat::q_pow(2),
    ];
    let mut sets = Vec::new();
    for (i, a) in [-3i64, -1, 0, 2, 4, -2, 1, 3, -4, 5].iter().enumerate() {
        let lam = if i % 3 == 0 { -&QRat::q_pow(*a) } else { QRat::q_pow(*a) };
        sets.push(Rank1Sl2Params::exact(lam, mus[i % mus.len()].clone()).unwrap());
    }
    for (si, p) in sets.iter().enumerate() {
        for n in 0..=3i64 {
            let target = equivalent_params(p, n);
            for k in -10..=10i64 {
                let v = Sl2Vector::basis(p, k);
                let psi_v = intertwiner_apply(p, n, &v).unwrap();
                let checks = [
                    (intertwiner_apply(p, n, &act_e(p, &v)).unwrap(), act_e(&target, &psi_v)),
                    (intertwiner_apply(p, n, &act_f(p, &v)).unwrap(), act_f(&target, &psi_v)),
                    (
                        intertwiner_apply(p, n, &act_k(p, &v, 1)).unwrap(),
                        act_k(&target, &psi_v, 1),
                    ),
                ];
                for (which, (lhs, rhs)) in checks.iter().enumerate() {
                    if !lhs.sub(rhs).is_zero() {
                        return Err(format!(
                            "intertwiner failed: set {}, n = {}, k = {}, generator {}",
                            si, n, k, which
                        ));
                    }
                }
            }
        }
    }
    // trace map matches the direct diagonal action of (EF)^j K^l
    let c = CartanData::type_a(1).unwrap();
    for p in sample_exact_params() {
        for j in 0..=2u32 {
            for l in -2..=2i64 {
                let ef = gen(c, Letter::E(0)).mul(&gen(c, Letter::F(0))).unwrap();
                let x = ef.pow(j).unwrap().mul(&gen(c, Letter::K(0, l))).unwrap();
                for k in -10..=10i64 {
                    let w = act_element(&p, &x, &Sl2Vector::basis(&p, k)).unwrap();
                    let diag = w.coeff(k).cloned().unwrap_or_else(|| trace_map(&p, k, j, l).zero_like());
                    if diag != trace_map(&p, k, j, l) {
                        return Err(format!(
                            "trace mismatch at k = {}, j = {}, l = {}",
                            k, j, l
                        ));
                    }
                }
            }
        }
    }
    Ok("Casimir orbit invariance, intertwiner on 10 sets x n<=3, trace map |k| <= 10".into())
}

fn suite_unitarity_star() -> std::result::Result<String, String> {
    let mut rng = rng_for(109);
    for (cartan, star) in [
        (CartanData::type_a(1).unwrap(), StarStructure::su11()),
        (
            CartanData::type_a(2).unwrap(),
            StarStructure::identity_negative(CartanData::type_a(2).unwrap()),
        ),
        (
            CartanData::type_a(2).unwrap(),
            StarStructure::new(CartanData::type_a(2).unwrap(), vec![1, 0], vec![1, 1]).unwrap(),
        ),
    ] {
        let rank = cartan.rank();
        for t in 0..100 {
            let x = Element::from_word(cartan, &random_word(&mut rng, rank, 8), QRat::one())
                .unwrap();
            let xx = star.star(&star.star(&x).unwrap()).unwrap();
            if xx != x {
                return Err(format!("star is not an involution at rank {}, word {}", rank, t));
            }
        }
        for t in 0..50 {
            let x = Element::from_word(cartan, &random_word(&mut rng, rank, 5), QRat::one())
                .unwrap();
            let y = Element::from_word(cartan, &random_word(&mut rng, rank, 5), QRat::one())
                .unwrap();
            let lhs = star.star(&x.mul(&y).unwrap()).unwrap();
            let rhs = star.star(&y).unwrap().mul(&star.star(&x).unwrap()).unwrap();
            if lhs != rhs {
                return Err(format!("anti-homomorphism failed at rank {}, pair {}", rank, t));
            }
        }
    }
    // Gram pairing consistency on a unitarizable module
    let q0 = 0.5;
    let p = params_for_series(&SeriesLabel::Principal { b: 0.3, eps: 0.0 }, q0)
        .map_err(|e| e.to_string())?;
    let gram = |k: i64| -> Complex64 {
        if k >= 0 {
            norm_sq_e(&p, k as u32).as_num().unwrap()
        } else {
            norm_sq_f(&p, (-k) as u32).as_num().unwrap()
        }
    };
    let pairing = |u: &Sl2Vector, v: &Sl2Vector| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, cu) in u.iter() {
            if let Some(cv) = v.coeff(*k) {
                acc += cu.as_num().unwrap().conj() * cv.as_num().unwrap() * gram(*k);
            }
        }
        acc
    };
    let star_e = |v: &Sl2Vector| act_f(&p, &act_k(&p, v, 1)).scale(&Scalar::num(-1.0));
    let star_f = |v: &Sl2Vector| act_k(&p, &act_e(&p, v), -1).scale(&Scalar::num(-1.0));
    for j in -10..=10i64 {
        for k in -10..=10i64 {
            let u = Sl2Vector::basis(&p, j);
            let v = Sl2Vector::basis(&p, k);
            let lhs = pairing(&act_e(&p, &u), &v);
            let rhs = pairing(&u, &star_e(&v));
            if (lhs - rhs).norm() > 1e-10 * (1.0 + lhs.norm()) {
                return Err(format!("E adjoint pairing failed at ({}, {})", j, k));
            }
            let lhs = pairing(&act_f(&p, &u), &v);
            let rhs = pairing(&u, &star_f(&v));
            if (lhs - rhs).norm() > 1e-10 * (1.0 + lhs.norm()) {
                return Err(format!("F adjoint pairing failed at ({}, {})", j, k));
            }
        }
    }
    Ok("involution/anti-homomorphism x450 words; adjoint pairing |j|,|k| <= 10".into())
}

fn suite_unitarity_norms() -> std::result::Result<String, String> {
    // product and recursion forms agree with lambda, M symbolic
    let ctx = symbolic_ctx();
    for n in 0..=10u32 {
        if ctx.scaled_norm_e_product(n) != ctx.scaled_norm_e_recursion(n) {
            return Err(format!("symbolic E-norm mismatch at n = {}", n));
        }
        if ctx.scaled_norm_f_product(n) != ctx.scaled_norm_f_recursion(n) {
            return Err(format!("symbolic F-norm mismatch at n = {}", n));
        }
    }
    // interval decision matches brute force on random real parameters
    let mut rng = rng_for(110);
    let q0 = 0.5;
    let mut checked = 0;
    while checked < 100 {
        let lambda = rng.gen_range(0.2..2.5) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let mu = rng.gen_range(-3.0..3.0);
        let p =
            Rank1Sl2Params::numeric(q0, Complex64::new(lambda, 0.0), Complex64::new(mu, 0.0))
                .unwrap();
        let report = match is_unitarizable(&p, q0) {
            Ok(r) => r,
            Err(Error::ReducibleInput) => continue,
            Err(e) => return Err(format!("is_unitarizable failed: {}", e)),
        };
        let (be, bf) = brute_force_positive(&p, q0, 500).unwrap();
        if let (Some(e_side), Some(f_side)) = (report.e_side, report.f_side) {
            if (e_side == PositivityVerdict::Positive) != be
                || (f_side == PositivityVerdict::Positive) != bf
            {
                return Err(format!(
                    "interval method disagrees with brute force at lambda = {}, mu = {}",
                    lambda, mu
                ));
            }
        }
        checked += 1;
    }
    // principal series at b = 0, eps = 0 is unitarizable with positive norms
    let p = params_for_series(&SeriesLabel::Principal { b: 0.0, eps: 0.0 }, q0)
        .map_err(|e| e.to_string())?;
    let r = is_unitarizable(&p, q0).map_err(|e| e.to_string())?;
    if !r.unitarizable {
        return Err("principal series b = 0 rejected".into());
    }
    for n in 0..=200u32 {
        if norm_sq_e(&p, n).as_num().unwrap().re <= 0.0 {
            return Err(format!("E-norm nonpositive at n = {}", n));
        }
        if norm_sq_f(&p, n).as_num().unwrap().re <= 0.0 {
            return Err(format!("F-norm nonpositive at n = {}", n));
        }
    }
    Ok("symbolic agreement n <= 10; interval vs brute force x100; principal norms n <= 200".into())
}

fn suite_classification() -> std::result::Result<String, String> {
    let q0: f64 = 0.5;
    let b_max = -std::f64::consts::PI / (2.0 * q0.ln());
    let mut labels = Vec::new();
    for i in 0..50 {
        let b = (i as f64) / 50.0 * b_max * 0.98;
        let eps = if i % 2 == 0 || b == 0.0 { 0.0 } else { 0.5 };
        labels.push(SeriesLabel::Principal { b, eps });
    }
    for i in 0..20 {
        let a = 0.1 + (i as f64) * 0.15;
        let eps = if i % 2 == 0 { 0.0 } else { 0.5 };
        labels.push(SeriesLabel::Strange { a, eps });
    }
    for i in 0..20 {
        let sigma = -0.5 + (i as f64 + 1.0) / 21.0 * 0.5;
        labels.push(SeriesLabel::Complementary { sigma });
    }
    fn labels_close(a: &SeriesLabel, b: &SeriesLabel) -> bool {
        match (a, b) {
            (SeriesLabel::Principal { b: x, eps }, SeriesLabel::Principal { b: y, eps: e2 }) => {
                (x - y).abs() < 1e-6 && eps == e2
            }
            (SeriesLabel::Strange { a: x, eps }, SeriesLabel::Strange { a: y, eps: e2 }) => {
                (x - y).abs() < 1e-6 && eps == e2
            }
            (
                SeriesLabel::Complementary { sigma: x },
                SeriesLabel::Complementary { sigma: y },
            ) => (x - y).abs() < 1e-6,
            _ => false,
        }
    }
    for label in &labels {
        let p = params_for_series(label, q0).map_err(|e| format!("{}: {}", label, e))?;
        let back = classify_series(&p, q0).map_err(|e| format!("{}: {}", label, e))?;
        if !labels_close(label, &back) {
            return Err(format!("round-trip failed: {} came back as {}", label, back));
        }
    }
    // classification is constant along equivalence orbits
    for label in [
        SeriesLabel::Principal { b: 0.4, eps: 0.0 },
        SeriesLabel::Strange { a: 0.8, eps: 0.5 },
        SeriesLabel::Complementary { sigma: -0.3 },
    ] {
        let p = params_for_series(&label, q0).unwrap();
        let base = classify_series(&p, q0).map_err(|e| e.to_string())?;
        for n in -3..=3i64 {
            let p2 = equivalent_params(&p, n);
            let l = classify_series(&p2, q0).map_err(|e| e.to_string())?;
            if !labels_close(&base, &l) {
                return Err(format!("classification changed along orbit at n = {}: {}", n, l));
            }
        }
    }
    Ok("round-trip on 90 labels; orbit constancy for three families".into())
}

fn suite_rankn_closure() -> std::result::Result<String, String> {
    let mut rng = rng_for(111);
    // products of the commutative-subalgebra generators never leave U_0^S
    for (rank, s_nodes) in [(2usize, vec![0usize]), (3, vec![0, 2]), (4, vec![0, 2])] {
        let cartan = CartanData::type_a(rank).unwrap();
        let s = SubsetS::new(&cartan, s_nodes).unwrap();
        let gens = u0s_generators(cartan, &s);
        for t in 0..100 {
            let len = rng.gen_range(1..=6);
            let mut prod = Element::one(cartan);
            for _ in 0..len {
                let g = &gens[rng.gen_range(0..gens.len())];
                prod = prod.mul(g).unwrap();
            }
            let (_, ideal) = split_u0s(&prod, &s).map_err(|e| e.to_string())?;
            if !ideal.is_zero() {
                return Err(format!("generator product left U_0^S at rank {}, case {}", rank, t));
            }
        }
    }
    // per-node consistency of phi with the rank-1 module action
    let cartan = CartanData::type_a(2).unwrap();
    let s = SubsetS::new(&cartan, vec![0]).unwrap();
    let rep = OneDimRep::exact(
        cartan,
        s,
        vec![QRat::q_pow(2), QRat::one()],
        vec![QRat::from_fraction(3, 2)],
    )
    .unwrap();
    let p = rep.node_params(0).unwrap();
    let c1 = CartanData::type_a(1).unwrap();
    for k in 0..=6usize {
        let mut word = vec![Letter::E(0); k];
        word.extend(vec![Letter::F(0); k]);
        let x2 = Element::from_word(cartan, &word, QRat::one()).unwrap();
        let phi = rep.phi_eval(&x2).map_err(|e| e.to_string())?;
        let mut word1 = vec![Letter::E(0); k];
        word1.extend(vec![Letter::F(0); k]);
        let x1 = Element::from_word(c1, &word1, QRat::one()).unwrap();
        let w = act_element(&p, &x1, &Sl2Vector::basis(&p, 0)).unwrap();
        let coeff = w.coeff(0).cloned().unwrap_or_else(|| phi.zero_like());
        if phi != coeff {
            return Err(format!("per-node phi mismatch at k = {}", k));
        }
    }
    Ok("generator closure x300 products (ranks 2-4); per-node phi consistency k <= 6".into())
}

fn suite_rankn_witness() -> std::result::Result<String, String> {
    rankn_witness_with_samples(1000)
}

/// The proper-submodule witness with a configurable sample count, shared by
/// the suite and the integration tests.
pub fn rankn_witness_with_samples(samples: usize) -> std::result::Result<String, String> {
    // sl(3), S = {1}, j = 2
    let c2 = CartanData::type_a(2).unwrap();
    let s2 = SubsetS::new(&c2, vec![0]).unwrap();
    let rep2 = OneDimRep::exact(c2, s2, vec![QRat::q_pow(2), QRat::one()], vec![QRat::from_int(3)])
        .unwrap();
    let w = proper_submodule_witness(&rep2, 1, samples, 2024).map_err(|e| e.to_string())?;
    if !w.holds {
        return Err(format!("witness failed for sl(3): {:?}", w));
    }
    // sl(4), S = {1, 3}, j = 2
    let c3 = CartanData::type_a(3).unwrap();
    let s3 = SubsetS::new(&c3, vec![0, 2]).unwrap();
    let rep3 = OneDimRep::exact(
        c3,
        s3,
        vec![QRat::q_pow(1), QRat::one(), QRat::q_pow(-1)],
        vec![QRat::from_fraction(1, 2), QRat::from_int(2)],
    )
    .unwrap();
    let w = proper_submodule_witness(&rep3, 1, samples, 2025).map_err(|e| e.to_string())?;
    if !w.holds {
        return Err(format!("witness failed for sl(4): {:?}", w));
    }
    Ok(format!("witness holds on {} samples each for sl(3) and sl(4)", samples))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_consistent() {
        let names = suite_names();
        assert_eq!(names.len(), SUITES.len());
        assert!(run_suite("no-such-suite").is_none());
    }

    #[test]
    fn quick_suites_pass() {
        for name in ["algebra-identities", "sl2-reducibility", "classification"] {
            let out = run_suite(name).unwrap();
            assert!(out.passed, "{}: {}", out.name, out.detail);
        }
    }
}
