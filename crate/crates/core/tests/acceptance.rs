//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Run with `cargo test -p dnhs-core --test acceptance` (add
//! `-- --nocapture` to see the lines for passing criteria too).

use dnhs_core::verify::{self, CriterionOutcome};

fn report(outcome: CriterionOutcome) {
    let status = if outcome.passed { "PASS" } else { "FAIL" };
    println!("acceptance {}: {} ({})", outcome.name, status, outcome.detail);
    assert!(outcome.passed, "{}: {}", outcome.name, outcome.detail);
}

#[test]
fn criterion_1_spectrum_vs_partition() {
    report(verify::spectrum_vs_partition());
}

#[test]
fn criterion_2_closed_form_consistency() {
    report(verify::closed_form_consistency());
}

#[test]
fn criterion_3_triangular_action() {
    report(verify::triangular_action());
}

#[test]
fn criterion_4_collocation_oracle() {
    report(verify::collocation_oracle());
}

#[test]
fn criterion_5_equilibrium_sites() {
    report(verify::equilibrium_sites());
}

#[test]
fn criterion_6_impurity_limit() {
    report(verify::impurity_limit());
}

#[test]
fn criterion_7_series_oracles() {
    report(verify::series_oracles());
}

#[test]
fn criterion_8_degeneracy_counts() {
    report(verify::degeneracy_counts());
}

#[test]
fn criterion_9_alcove_geometry() {
    report(verify::alcove_geometry());
}
