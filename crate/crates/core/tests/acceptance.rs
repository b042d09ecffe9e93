//! Acceptance criteria. Each test runs the corresponding invariant suites
//! and prints a single pass/fail line (visible with `--nocapture`).

use mathieu_core::verify::run_suite;

fn criterion(number: usize, description: &str, suites: &[&str]) {
    let start = std::time::Instant::now();
    for name in suites {
        let out = run_suite(name).unwrap_or_else(|| panic!("unknown suite {}", name));
        if !out.passed {
            println!("criterion {:2}: FAIL - {} ({}: {})", number, description, name, out.detail);
            panic!("criterion {} failed in suite {}: {}", number, name, out.detail);
        }
    }
    println!(
        "criterion {:2}: PASS - {} ({:.2?})",
        number,
        description,
        start.elapsed()
    );
}

#[test]
fn criterion_01_defining_relations() {
    criterion(
        1,
        "defining and Serre relations vanish in the vector representation, ranks 1-4",
        &["algebra-relations"],
    );
}

#[test]
fn criterion_02_ladder_identities() {
    criterion(
        2,
        "rank-1 commutation identities exact for n, m <= 8",
        &["algebra-identities"],
    );
}

#[test]
fn criterion_03_oracle_equivalence() {
    criterion(
        3,
        "normalization agrees with the matrix oracle on 1000 words per rank 1-4",
        &["algebra-oracle"],
    );
}

#[test]
fn criterion_04_height_bounds() {
    criterion(
        4,
        "height inequalities and merge equalities on 1000 random pairs per rank",
        &["centralizer-heights"],
    );
}

#[test]
fn criterion_05_commutative_subalgebra_and_ideal() {
    criterion(
        5,
        "strongly orthogonal generators commute; 500 random products stay in the ideal",
        &["centralizer-ideal"],
    );
}

#[test]
fn criterion_06_module_axioms() {
    criterion(
        6,
        "module axioms on |k| <= 20 and Casimir scalar action, exact",
        &["sl2-module"],
    );
}

#[test]
fn criterion_07_reducibility() {
    criterion(
        7,
        "worked reducible example and root uniqueness on 1000 numeric draws",
        &["sl2-reducibility"],
    );
}

#[test]
fn criterion_08_equivalence() {
    criterion(
        8,
        "Casimir orbit invariance, intertwiner commutation, trace map agreement",
        &["sl2-equivalence"],
    );
}

#[test]
fn criterion_09_unitarity() {
    criterion(
        9,
        "norm product = recursion symbolically; interval positivity matches brute force",
        &["unitarity-norms"],
    );
}

#[test]
fn criterion_10_classification() {
    criterion(
        10,
        "series labels round-trip and stay constant along equivalence orbits",
        &["classification"],
    );
}

#[test]
fn criterion_11_rankn_witness() {
    criterion(
        11,
        "proper-submodule witness on 1000 samples (sl(3), sl(4)); per-node phi consistency",
        &["rankn-witness", "rankn-closure"],
    );
}
