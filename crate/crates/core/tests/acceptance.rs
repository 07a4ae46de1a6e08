//! The ten end-to-end criteria, one test each. Every test prints a single
//! PASS or FAIL line.

use gcoh::verify::run_criterion;

fn criterion(id: u8) {
    let r = run_criterion(id).expect("known criterion");
    let status = if r.passed { "PASS" } else { "FAIL" };
    println!("[{status}] criterion {id}: {} ({})", r.title, r.detail.replace('\n', "; "));
    assert!(r.passed, "criterion {id} failed:\n{}", r.detail);
}

#[test]
fn criterion_01_stiefel_manifolds() {
    criterion(1);
}

#[test]
fn criterion_02_w_rings() {
    criterion(2);
}

#[test]
fn criterion_03_g83_groups() {
    criterion(3);
}

#[test]
fn criterion_04_g103_groups() {
    criterion(4);
}

#[test]
fn criterion_05_presentations() {
    criterion(5);
}

#[test]
fn criterion_06_finite_presentation() {
    criterion(6);
}

#[test]
fn criterion_07_projection_injectivity() {
    criterion(7);
}

#[test]
fn criterion_08_duality() {
    criterion(8);
}

#[test]
fn criterion_09_mod2() {
    criterion(9);
}

#[test]
fn criterion_10_robustness() {
    criterion(10);
}
