mod common;

const CASES: u32 = 256;

#[test]
fn snf() {
    common::snf_unimodular_divisibility(CASES).unwrap();
}

#[test]
fn hermitian_symmetries() {
    common::hermitian_symmetries(CASES).unwrap();
}

#[test]
fn hermitian_float_oracle() {
    common::hermitian_matches_float_oracle(CASES).unwrap();
}

#[test]
fn annihilator() {
    common::annihilator_double_dual(CASES).unwrap();
}

#[test]
fn estimate_containment() {
    common::estimate_containment(CASES).unwrap();
}

#[test]
fn cf_conjugation() {
    common::cf_conjugation_symmetry(CASES).unwrap();
}

#[test]
fn amphichiral() {
    common::amphichiral_antisymmetry(CASES).unwrap();
}

#[test]
fn subspace_enumeration_matches_brute_force() {
    common::subspace_counts_match_brute_force(4).unwrap();
}

#[test]
fn float_oracle_on_torus_knot() {
    let v = cgsig_core::knot_model::torus_2_5();
    let sig: Vec<i64> = (1..5).map(|k| common::float_signature(v.matrix(), 5, k).0).collect();
    assert_eq!(sig, [-2, -4, -4, -2]);
}
