//! Acceptance gate: the standard verification run at its pinned windows.
//! One test per criterion; each prints a single pass/fail line (visible with
//! `cargo test --test acceptance -- --nocapture`).

use qcgl::relations::{QMode, Report};
use qcgl::suites::*;

fn gate(name: &str, report: &Report) {
    let ok = report.passed();
    println!(
        "criterion {}: {} ({} pass, {} fail, {} error, {:.1}s)",
        name,
        if ok { "PASS" } else { "FAIL" },
        report.summary.pass,
        report.summary.fail,
        report.summary.error,
        report.seconds,
    );
    if !ok {
        for c in report
            .cases
            .iter()
            .filter(|c| c.status != qcgl::relations::Status::Pass)
            .take(20)
        {
            println!("  {:?} {} -- {}", c.status, c.id, c.detail);
        }
        panic!("criterion {} failed", name);
    }
}

#[test]
fn criterion_01_vector_relations() {
    gate("1 (vector suite)", &vector_suite(QMode::Symbolic));
}

#[test]
fn criterion_02_tensor_relations_and_pole_guard() {
    gate("2 (tensor suite)", &tensor_suite(QMode::Symbolic));
}

#[test]
fn criterion_03_wn_relations_with_antisymmetrization() {
    gate("3 (W^N suite)", &wn_suite(QMode::Symbolic));
}

#[test]
fn criterion_04_fock_relations_factorized_and_stability() {
    gate("4 (Fock suite)", &fock_suite(QMode::Symbolic));
}

#[test]
fn criterion_05_macdonald_crosscheck() {
    gate("5 (Macdonald cross-check)", &macdonald_suite());
}

#[test]
fn criterion_06_daha_bridge_mode_recursion() {
    gate("6 (DAHA bridge)", &daha_suite());
}

#[test]
fn criterion_07_resonance_suites() {
    gate("7 (resonance suites)", &all_resonance_suites(QMode::Symbolic));
}

#[test]
fn criterion_08_wheel_condition_instances() {
    gate("8 (wheel condition)", &wheel_suite());
}

#[test]
fn criterion_09_c_lambda_consistency() {
    gate("9 (c_lambda consistency)", &c_ratio_suite());
}

#[test]
fn criterion_10_delta_residue_identity() {
    gate("10 (delta-residue identity)", &lemma_sp_suite(20260809));
}
