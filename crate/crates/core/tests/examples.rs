//! Every cargo example runs to completion.

#[path = "../examples/ring_arithmetic.rs"]
mod ring_arithmetic;
#[path = "../examples/free_dga.rs"]
mod free_dga;
#[path = "../examples/envelope_and_diagonal.rs"]
mod envelope_and_diagonal;
#[path = "../examples/semifree_modules.rs"]
mod semifree_modules;
#[path = "../examples/obstruction_class.rs"]
mod obstruction_class;
#[path = "../examples/liftable_example.rs"]
mod liftable_example;
#[path = "../examples/non_liftable_example.rs"]
mod non_liftable_example;
#[path = "../examples/homology_of_j.rs"]
mod homology_of_j;
#[path = "../examples/dsl_and_reports.rs"]
mod dsl_and_reports;

#[test]
fn ring_arithmetic() {
    ring_arithmetic::run_example().unwrap();
}

#[test]
fn free_dga() {
    free_dga::run_example().unwrap();
}

#[test]
fn envelope_and_diagonal() {
    envelope_and_diagonal::run_example().unwrap();
}

#[test]
fn semifree_modules() {
    semifree_modules::run_example().unwrap();
}

#[test]
fn obstruction_class() {
    obstruction_class::run_example().unwrap();
}

#[test]
fn liftable_example() {
    liftable_example::run_example().unwrap();
}

#[test]
fn non_liftable_example() {
    non_liftable_example::run_example().unwrap();
}

#[test]
fn homology_of_j() {
    homology_of_j::run_example().unwrap();
}

#[test]
fn dsl_and_reports() {
    dsl_and_reports::run_example().unwrap();
}
