//! Acceptance gate: one test per criterion, each printing a pass/fail line
//! (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! Every tolerance and time budget is pinned here:
//!   1. Clifford relations: 35 exact checks, < 1 s
//!   2. extended-basis span: ranks 64 and 16, exact, < 5 s
//!   3. SO(8) structure: 378 exact pair checks, < 10 s
//!   4. spin suite: SU(2) relations, Casimirs, intertwinings, isometries,
//!      Hamiltonian invariance, all exact, < 5 s
//!   5. Poincare suite (fermionic): invariance, closure, Casimirs, < 60 s
//!   6. Poincare suite (bosonic): same with antilinear spin parts, < 60 s
//!   7. solutions suite: 12 branches, eigenvalues, unitary FW map, Dirac
//!      checks, < 10 s
//!   8. conservation suite: norm drift <= 1e-12, charge drifts <= 1e-8
//!      (matrix) / 1e-6 (derivative) over t in 0..=10, refinement ratio
//!      >= 2, rotation signature to 1e-10, < 120 s
//!   9. determinism: byte-identical JSON for identical configuration

use fwdual::config::RunConfig;
use fwdual::report::{Report, Suite};
use fwdual::suites::{run_suite, SuiteId};
use std::time::Instant;

fn run_and_gate(criterion: &str, id: SuiteId, budget_secs: f64) -> Suite {
    let start = Instant::now();
    let suite = run_suite(id, &RunConfig::default());
    let elapsed = start.elapsed().as_secs_f64();
    let ok = suite.pass && elapsed < budget_secs;
    println!(
        "criterion {criterion}: {} ({} checks, {elapsed:.2}s, budget {budget_secs}s)",
        if ok { "PASS" } else { "FAIL" },
        suite.checks.len(),
    );
    for c in suite.failures() {
        println!("  failed check {}: {} -> {}", c.id, c.statement, c.got);
    }
    assert!(suite.pass, "criterion {criterion}: checks failed");
    assert!(
        elapsed < budget_secs,
        "criterion {criterion}: {elapsed:.2}s over budget {budget_secs}s"
    );
    suite
}

#[test]
fn acceptance_1_clifford_relations() {
    let suite = run_and_gate("1 (clifford relations)", SuiteId::Clifford, 1.0);
    assert_eq!(suite.checks.len(), 35, "35 exact checks expected");
}

#[test]
fn acceptance_2_span_ranks() {
    let suite = run_and_gate("2 (extended span ranks)", SuiteId::Span, 5.0);
    let rank64 = suite.checks.iter().find(|c| c.id == "span.ercd").unwrap();
    assert_eq!(rank64.got, "64");
    let rank16 = suite.checks.iter().find(|c| c.id == "span.cd").unwrap();
    assert_eq!(rank16.got, "16");
}

#[test]
fn acceptance_3_so8_structure() {
    let suite = run_and_gate("3 (so8 structure)", SuiteId::So8, 10.0);
    assert_eq!(suite.checks.len(), 378, "378 generator pairs expected");
}

#[test]
fn acceptance_4_spin_suite() {
    let start = Instant::now();
    let spin = run_suite(SuiteId::Spin, &RunConfig::default());
    let inter = run_suite(SuiteId::Intertwine, &RunConfig::default());
    let elapsed = start.elapsed().as_secs_f64();
    let pass = spin.pass && inter.pass && elapsed < 5.0;
    println!(
        "criterion 4 (spin suite): {} ({} checks, {elapsed:.2}s, budget 5s)",
        if pass { "PASS" } else { "FAIL" },
        spin.checks.len() + inter.checks.len(),
    );
    for c in spin.failures().chain(inter.failures()) {
        println!("  failed check {}: {} -> {}", c.id, c.statement, c.got);
    }
    assert!(spin.pass && inter.pass);
    assert!(elapsed < 5.0);
    assert_eq!(
        inter.conventions.get("w_conjugation_source").map(String::as_str),
        Some("s + s'"),
    );
}

#[test]
fn acceptance_5_poincare_fermi() {
    let suite = run_and_gate("5 (poincare fermionic)", SuiteId::PoincareFermi, 60.0);
    // casimir records present with the documented values
    assert!(suite
        .checks
        .iter()
        .any(|c| c.id == "poincare.fermi.casimir.p2" && c.got == "-1m^2"));
    assert!(suite.checks.iter().any(|c| c.id == "poincare.fermi.casimir.w2"));
    assert!(suite.checks.iter().any(|c| c.id == "poincare.fermi.casimir.w0"));
    // closure sign recorded
    assert_eq!(
        suite.conventions.get("closure_sign").map(String::as_str),
        Some("+1")
    );
}

#[test]
fn acceptance_6_poincare_bose() {
    let suite = run_and_gate(
        "6 (poincare bosonic)",
        SuiteId::PoincareBoseCartesian,
        60.0,
    );
    assert!(suite
        .checks
        .iter()
        .any(|c| c.id == "poincare.bose_cartesian.casimir.w2" && c.pass));
}

#[test]
fn acceptance_7_solutions() {
    let suite = run_and_gate("7 (solutions)", SuiteId::Solutions, 10.0);
    let fw_checks = suite
        .checks
        .iter()
        .filter(|c| c.id.contains(".fw."))
        .count();
    assert_eq!(fw_checks, 12, "all 12 fundamental branches checked");
    assert!(suite
        .checks
        .iter()
        .any(|c| c.id == "solutions.fwmap.unitary.minus" && c.pass));
}

#[test]
fn acceptance_8_conservation() {
    let suite = run_and_gate("8 (conservation)", SuiteId::Conserve, 120.0);
    assert!(suite.checks.iter().any(|c| c.id == "conserve.norm" && c.pass));
    assert!(suite
        .checks
        .iter()
        .any(|c| c.id == "conserve.refine.j01" && c.pass));
    assert!(suite
        .checks
        .iter()
        .any(|c| c.id == "conserve.signature.fermi" && c.pass));
    assert!(suite
        .checks
        .iter()
        .any(|c| c.id == "conserve.signature.bose" && c.pass));
    let drift_checks = suite
        .checks
        .iter()
        .filter(|c| c.id.starts_with("conserve.drift."))
        .count();
    assert_eq!(drift_checks, 32, "10 + 10 generators plus orbital and spin parts");
}

#[test]
fn acceptance_9_determinism() {
    let cfg = RunConfig::default();
    let render = || {
        let suites = vec![
            run_suite(SuiteId::Clifford, &cfg),
            run_suite(SuiteId::Spin, &cfg),
            run_suite(SuiteId::Solutions, &cfg),
        ];
        Report::new(cfg.describe(), suites).to_json()
    };
    let a = render();
    let b = render();
    let pass = a == b;
    println!(
        "criterion 9 (determinism): {} (identical {} bytes)",
        if pass { "PASS" } else { "FAIL" },
        a.len()
    );
    assert!(pass, "reports differ between identical runs");
}
