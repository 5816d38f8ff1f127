//! Semifree modules: weight inference, the differential, and rejection of ∂² ≠ 0.

use dglift::cli_format::{parse_module_element, parse_problem};
use dglift::Result;

pub fn run_example() -> Result<()> {
    let p = parse_problem(include_str!("../data/liftable.dga"))?;
    let n = p.module("N").expect("declared in the file");
    for e in n.basis() {
        println!("{}: bidegree ({}, {})", e.label, e.hom_degree, e.int_degree);
    }
    let v = parse_module_element(n, "ep*X + e*Y^(2)*X")?;
    println!("∂({}) = {}", n.format_element(&v), n.format_element(&n.diff(&v)));
    assert!(n.diff(&n.diff(&v)).is_empty());

    let block = n.diff_block(5, 5);
    println!("∂: N(5,5) -> N(4,5) is {}x{} of rank {}", block.nrows(), block.ncols(), block.rank());

    match parse_problem(include_str!("../data/rejected.dga")) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!("d(X*Y*x) = x^2*Y does not vanish over (x*y)"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
