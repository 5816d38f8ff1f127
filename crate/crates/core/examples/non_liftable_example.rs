//! `∂u' = u·XYx` over `Q[x,y]/(x², xy)` does not lift; the certificate is a left null vector.

use dglift::cli_format::parse_problem;
use dglift::obstruction::{check_naive_lift_with, Decision, Method};
use dglift::Result;

pub fn run_example() -> Result<()> {
    let p = parse_problem(include_str!("../data/nonliftable.dga"))?;
    let m = p.module("M").expect("declared in the file");
    for method in [Method::Rank2Corollary, Method::GlobalSolve] {
        let report = check_naive_lift_with(m, method)?;
        assert_eq!(report.decision, Decision::NotLiftable);
        let cert = report.certificate.as_ref().expect("refusals carry a certificate");
        assert!(cert.verify());
        println!(
            "{}: {} ({}x{} block, rank {} vs {})",
            method.as_str(),
            report.decision.as_str(),
            cert.matrix.nrows(),
            cert.matrix.ncols(),
            cert.inconsistency.rank,
            cert.inconsistency.augmented_rank
        );
        for (label, y) in cert.matrix.row_labels().iter().zip(&cert.inconsistency.left_null) {
            if !y.is_zero() {
                println!("  {y} on {label}");
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
