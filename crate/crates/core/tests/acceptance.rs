//! Acceptance gate: one test per verification criterion, each printing its
//! pass/fail line. Run with `cargo test --test acceptance -- --nocapture`
//! to see every line.

use liftmcg::verify;

const SEED: u64 = 0x1f2e3d4c;

fn run(id: usize) {
    let report = verify::run_criterion(id, SEED).expect("known criterion id");
    println!("{report}");
    assert!(report.passed, "{report}");
}

#[test]
fn criterion_1_multiplier_constants() {
    run(1);
}

#[test]
fn criterion_2_factorization_round_trip() {
    run(2);
}

#[test]
fn criterion_3_criterion_equivalence() {
    run(3);
}

#[test]
fn criterion_4_indices_and_orbits() {
    run(4);
}

#[test]
fn criterion_5_universal_cover_equivalences() {
    run(5);
}

#[test]
fn criterion_6_hyperelliptic_identities() {
    run(6);
}

#[test]
fn criterion_7_self_normalizing_witnesses() {
    run(7);
}

#[test]
fn criterion_8_congruence_subgroup_machinery() {
    run(8);
}
