//! One test per acceptance criterion. Each prints a single PASS/FAIL line.

use treelab_core::acceptance::run;

fn criterion(n: u8) {
    let result = run(n).expect("criterion exists");
    println!("{result} [{} ms]", result.ms);
    assert!(result.passed, "{result}\n{:#?}", result.failures);
}

#[test]
fn criterion_01_gamma_counts() {
    criterion(1);
}

#[test]
fn criterion_02_general_binomial() {
    criterion(2);
}

#[test]
fn criterion_03_two_weight() {
    criterion(3);
}

#[test]
fn criterion_04_marked_trees() {
    criterion(4);
}

#[test]
fn criterion_05_harer_zagier() {
    criterion(5);
}

#[test]
fn criterion_06_permutation_pairs() {
    criterion(6);
}

#[test]
fn criterion_07_chen_bijection() {
    criterion(7);
}

#[test]
fn criterion_08_partial_sums() {
    criterion(8);
}

#[test]
fn criterion_09_multisection() {
    criterion(9);
}

#[test]
fn criterion_10_mutation() {
    criterion(10);
}
