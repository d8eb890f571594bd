//! The acceptance suite: runs every verification criterion at its stated
//! tolerance and prints one pass/fail line per criterion.
//!
//! The same checks back the CLI's `verify all`; here each is a separate
//! test so failures localize.

use semifields::verify::{run_one, DEFAULT_SEED};

fn run(id: usize) {
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let outcome = run_one(id, DEFAULT_SEED, jobs);
    println!("{}", outcome.line());
    assert!(outcome.pass, "{}", outcome.line());
}

#[test]
fn criterion_01_knuth_s3_suite() {
    run(1);
}

#[test]
fn criterion_02_gtf_knuth_table() {
    run(2);
}

#[test]
fn criterion_03_bel_equivalences() {
    run(3);
}

#[test]
fn criterion_04_explicit_multiplication() {
    run(4);
}

#[test]
fn criterion_05_spread_construction() {
    run(5);
}

#[test]
fn criterion_06_r_reduction() {
    run(6);
}

#[test]
fn criterion_07_perp_transpose() {
    run(7);
}

#[test]
fn criterion_08_symplectic_pipeline() {
    run(8);
}

#[test]
fn criterion_09_order_8_group() {
    run(9);
}

#[test]
fn criterion_10_stabilizer_action() {
    run(10);
}

#[test]
fn criterion_11_isotopy_cross_validation() {
    run(11);
}

#[test]
fn criterion_12_e_triviality() {
    run(12);
}
