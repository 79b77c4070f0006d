mod common;

const CASES: u32 = 512;

#[test]
fn candidates_are_feasible() {
    common::candidate_feasibility(CASES).unwrap();
}

#[test]
fn eigenvalues_match_trace_and_determinant() {
    common::eigen_identities(CASES).unwrap();
}

#[test]
fn objective_is_symmetric() {
    common::objective_symmetry(CASES).unwrap();
}

#[test]
fn embedding_is_monotone() {
    common::embedding_monotonicity(CASES).unwrap();
}

#[test]
fn random_vectors_satisfy_inequality() {
    common::inequality_on_random_vectors(CASES).unwrap();
}
