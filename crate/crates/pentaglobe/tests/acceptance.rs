//! Acceptance suite: runs every verification check at its pinned expected
//! values and prints one pass/fail line per criterion. `verify-all` on the
//! CLI executes the same checks.

use pentaglobe::verify;

const MAX_N: u32 = 6;

fn run(name: &str) {
    let result = verify::run_check(name, MAX_N).expect("check name is registered");
    println!(
        "[{}] {} ({}) {}ms\n    {}",
        if result.pass { "PASS" } else { "FAIL" },
        result.name,
        result.reference,
        result.millis,
        result.detail
    );
    assert!(result.pass, "{}: {}", result.name, result.detail);
}

#[test]
fn criterion_01_neighborhood_counts() {
    run("neighborhood_counts");
}

#[test]
fn criterion_02_propagation_tables() {
    run("propagation_tables");
}

#[test]
fn criterion_03_a3bc_has_no_earth_map_tilings() {
    run("a3bc_impossibility");
}

#[test]
fn criterion_04_a2b2c_family_classification() {
    run("a2b2c_families");
}

#[test]
fn criterion_05_a3b2_family_classification() {
    run("a3b2_families");
}

#[test]
fn criterion_06_a4b_two_families_and_parity() {
    run("a4b_families");
}

#[test]
fn criterion_07_a4b_raw_counts() {
    run("a4b_raw_counts");
}

#[test]
fn criterion_08_orbit_bookkeeping() {
    run("core_orbit_bookkeeping");
}

#[test]
fn criterion_09_oracle_equivalence() {
    run("oracle_equivalence");
}

#[test]
fn criterion_10_structural_invariants() {
    run("structural_invariants");
}

#[test]
fn criterion_11_search_oracle() {
    run("search_oracle");
}

#[test]
fn criterion_12_d5_a3b2_type_iii_exclusion() {
    run("d5_a3b2_type_iii_cores");
}

#[test]
fn every_check_is_covered_by_a_criterion() {
    // Guards against adding a check without wiring it into the suite.
    assert_eq!(verify::check_names().len(), 12);
}
