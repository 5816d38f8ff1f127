//! The obstruction `Δ_N`, connections and `ψ_D` on a rank-three module.

use dglift::cli_format::parse_problem;
use dglift::obstruction::{check_naive_lift, delta_n, psi, Connection, DeltaMode};
use dglift::Result;

const FILE: &str = "\
ring R = QQ[x:1, y:1]/(x*y)
algebra B = R<X:1, Y:2 | dX = x, dY = X*y>
module L over B = <a:0, b:1, c:3 | da = 0, db = a*x, dc = a*Y*x + b*X*y>
";

pub fn run_example() -> Result<()> {
    let p = parse_problem(FILE)?;
    let n = p.module("L").expect("declared above");
    let by_formula = delta_n(n, DeltaMode::ViaFormula);
    assert_eq!(by_formula, delta_n(n, DeltaMode::ViaSplitting));
    for (e, d) in n.basis().iter().zip(&by_formula) {
        println!("Δ({}) = {}", e.label, n.format_tensor(d));
    }
    let canonical = Connection::canonical(n);
    for (e, v) in n.basis().iter().zip(psi(n, &canonical)) {
        println!("ψ(D^B)({}) = {}", e.label, n.format_tensor(&v));
    }
    let report = check_naive_lift(n);
    println!("{} by {}", report.decision.as_str(), report.method.as_str());
    if let Some(w) = &report.witness {
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
