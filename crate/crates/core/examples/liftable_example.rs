//! `∂e' = e·XYy` lifts: `δ(XYy)` is the boundary of `δ(Y^(2))`.

use dglift::cli_format::parse_problem;
use dglift::obstruction::{check_naive_lift_with, verify_witness, Decision, Method};
use dglift::Result;

pub fn run_example() -> Result<()> {
    let p = parse_problem(include_str!("../data/liftable.dga"))?;
    let n = p.module("N").expect("declared in the file");
    for method in [Method::Rank2Corollary, Method::GlobalSolve] {
        let report = check_naive_lift_with(n, method)?;
        assert_eq!(report.decision, Decision::Liftable);
        let w = report.witness.as_ref().expect("liftable reports carry a witness");
        assert!(verify_witness(n, w));
        println!("{}: {}", method.as_str(), report.decision.as_str());
        for (e, g) in n.basis().iter().zip(w.gammas()) {
            println!("  γ({}) = {}", e.label, n.format_tensor(g));
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
