//! Higher-rank module constructions from strongly orthogonal subsets S:
//! generators of the relevant commutative subalgebra, the per-node rank-1
//! parameter extraction, and randomized witnesses that the modules induced
//! at nodes outside S stay proper.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::algebra::{Element, Letter};
use crate::cartan::{CartanData, SubsetS};
use crate::centralizer::{h_minus, OneDimRep};
use crate::error::{Error, Result};
use crate::qfield::QRat;
use crate::sl2::{casimir_scalar, Rank1Sl2Params};

/// Generators of the commutative subalgebra U_0^S attached to S:
/// all K_i^{+1}, K_i^{-1}, together with E_j F_j for j in S.
pub fn u0s_generators(cartan: CartanData, s: &SubsetS) -> Vec<Element> {
    let mut gens = Vec::new();
    for i in 0..cartan.rank() {
        for e in [1, -1] {
            gens.push(Element::from_word(cartan, &[Letter::K(i, e)], QRat::one()).unwrap());
        }
    }
    for j in s.iter() {
        gens.push(
            Element::from_word(cartan, &[Letter::E(j), Letter::F(j)], QRat::one()).unwrap(),
        );
    }
    gens
}

/// The rank-1 parameters (q, lambda_j, mu_j) carried by a node j in S.
pub fn per_node_module(rep: &OneDimRep, j: usize) -> Result<Rank1Sl2Params> {
    rep.node_params(j)
}

/// Evidence from one randomized proper-submodule check at a node j outside S.
#[derive(Debug, Clone)]
pub struct WitnessReport {
    pub node: usize,
    pub samples: usize,
    /// phi^S annihilated every sampled element X F_j.
    pub all_phi_zero: bool,
    /// Smallest F_j-height over all sampled elements; >= 1 certifies that
    /// the sampled part of the left ideal misses the cyclic vector.
    pub min_h_minus: i64,
    pub holds: bool,
}

/// Draw a word X with root(X) = alpha_j: one extra E_j, a few balanced
/// E_i F_i pairs, and some K letters, randomly interleaved.
fn sample_word(rng: &mut ChaCha8Rng, cartan: &CartanData, j: usize) -> Vec<Letter> {
    let n = cartan.rank();
    let mut letters: Vec<Letter> = vec![Letter::E(j)];
    let pairs = rng.gen_range(0..=2);
    for _ in 0..pairs {
        let i = rng.gen_range(0..n);
        letters.push(Letter::E(i));
        letters.push(Letter::F(i));
    }
    let ks = rng.gen_range(0..=2);
    for _ in 0..ks {
        let i = rng.gen_range(0..n);
        let e = if rng.gen_bool(0.5) { 1 } else { -1 };
        letters.push(Letter::K(i, e));
    }
    // Fisher-Yates shuffle
    for a in (1..letters.len()).rev() {
        let b = rng.gen_range(0..=a);
        letters.swap(a, b);
    }
    letters
}

/// Randomized check that the left ideal generated by F_j (j outside S) meets
/// U_0 inside the kernel of phi^S and away from height zero: for sampled X
/// with root(X F_j) = 0, phi^S(X F_j) must vanish and every monomial of
/// X F_j must retain an F_j letter.
pub fn proper_submodule_witness(
    rep: &OneDimRep,
    j: usize,
    samples: usize,
    seed: u64,
) -> Result<WitnessReport> {
    let cartan = *rep.cartan();
    cartan.check_index(j)?;
    if rep.subset().contains(j) {
        return Err(Error::SubsetMembership(j + 1, "lie outside"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut all_phi_zero = true;
    let mut min_h_minus = i64::MAX;
    for _ in 0..samples {
        let mut word = sample_word(&mut rng, &cartan, j);
        word.push(Letter::F(j));
        let y = Element::from_word(cartan, &word, QRat::one())?;
        debug_assert!(y.root_of()?.is_zero());
        let v = rep.phi_eval(&y)?;
        if !v.approx_zero(1e-9) {
            all_phi_zero = false;
        }
        let h = h_minus(&y, j)?;
        if h < min_h_minus {
            min_h_minus = h;
        }
    }
    if samples == 0 {
        min_h_minus = 0;
    }
    Ok(WitnessReport {
        node: j,
        samples,
        all_phi_zero,
        min_h_minus,
        holds: samples > 0 && all_phi_zero && min_h_minus >= 1,
    })
}

/// Structured report for a higher-rank construction: per-node rank-1 data
/// for the nodes in S and proper-submodule witnesses for the nodes outside.
pub fn rankn_analyze(rep: &OneDimRep, samples: usize, seed: u64) -> Result<serde_json::Value> {
    let cartan = rep.cartan();
    let mut nodes = Vec::new();
    for j in rep.subset().iter() {
        let p = rep.node_params(j)?;
        nodes.push(json!({
            "node": j + 1,
            "lambda": rep.lambda(j).to_string(),
            "mu": rep.mu(j)?.to_string(),
            "casimir": casimir_scalar(&p).to_string(),
            "analysis": crate::sl2::analyze(&p)?,
        }));
    }
    let mut witnesses = Vec::new();
    for j in 0..cartan.rank() {
        if rep.subset().contains(j) {
            continue;
        }
        let w = proper_submodule_witness(rep, j, samples, seed ^ (j as u64 + 1))?;
        witnesses.push(json!({
            "node": j + 1,
            "samples": w.samples,
            "all_phi_zero": w.all_phi_zero,
            "min_f_height": w.min_h_minus,
            "holds": w.holds,
        }));
    }
    Ok(json!({
        "rank": cartan.rank(),
        "subset": rep.subset().iter().map(|j| j + 1).collect::<Vec<_>>(),
        "nodes": nodes,
        "proper_submodule_witnesses": witnesses,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::TieredEq;
    use crate::qfield::Scalar;

    fn exact_rep(rank: usize, s: Vec<usize>, lam: Vec<i64>, mu: Vec<(i64, i64)>) -> OneDimRep {
        let cartan = CartanData::type_a(rank).unwrap();
        let subset = SubsetS::new(&cartan, s).unwrap();
        let lambda = lam.into_iter().map(QRat::q_pow).collect();
        let mu = mu.into_iter().map(|(n, d)| QRat::from_fraction(n, d)).collect();
        OneDimRep::exact(cartan, subset, lambda, mu).unwrap()
    }

    #[test]
    fn generators_commute() {
        // E_1 F_1 and E_3 F_3 in sl(4) commute, as do all the K's
        let cartan = CartanData::type_a(3).unwrap();
        let s = SubsetS::new(&cartan, vec![0, 2]).unwrap();
        let gens = u0s_generators(cartan, &s);
        assert_eq!(gens.len(), 8);
        for x in &gens {
            for y in &gens {
                let c = x.mul(y).unwrap().sub(&y.mul(x).unwrap()).unwrap();
                assert_eq!(c.eq_tiered(&Element::zero(cartan)).unwrap(), TieredEq::Equal);
            }
        }
    }

    #[test]
    fn per_node_extraction() {
        let rep = exact_rep(2, vec![0], vec![3, 0], vec![(1, 2)]);
        let p = per_node_module(&rep, 0).unwrap();
        assert_eq!(p.lambda(), &Scalar::Exact(QRat::q_pow(3)));
        assert_eq!(p.mu(), &Scalar::Exact(QRat::from_fraction(1, 2)));
        assert!(matches!(per_node_module(&rep, 1), Err(Error::SubsetMembership(2, _))));
    }

    #[test]
    fn witness_holds_for_sl3() {
        let rep = exact_rep(2, vec![0], vec![2, 0], vec![(3, 1)]);
        let w = proper_submodule_witness(&rep, 1, 40, 7).unwrap();
        assert!(w.holds, "{:?}", w);
        assert!(w.all_phi_zero);
        assert!(w.min_h_minus >= 1);
    }

    #[test]
    fn witness_rejects_node_in_s() {
        let rep = exact_rep(2, vec![0], vec![2, 0], vec![(3, 1)]);
        assert!(matches!(
            proper_submodule_witness(&rep, 0, 5, 1),
            Err(Error::SubsetMembership(1, _))
        ));
    }

    #[test]
    fn analyze_shape() {
        let rep = exact_rep(3, vec![0, 2], vec![1, 0, -1], vec![(1, 1), (2, 1)]);
        let v = rankn_analyze(&rep, 10, 42).unwrap();
        assert_eq!(v["rank"], 3);
        assert_eq!(v["subset"], serde_json::json!([1, 3]));
        assert_eq!(v["nodes"].as_array().unwrap().len(), 2);
        let ws = v["proper_submodule_witnesses"].as_array().unwrap();
        assert_eq!(ws.len(), 1);
        assert_eq!(ws[0]["node"], 2);
        assert_eq!(ws[0]["holds"], true);
    }
}
