//! The enveloping algebra, its splittings and the universal derivation into the diagonal ideal.

use dglift::cli_format::{parse_algebra_element, parse_problem};
use dglift::Result;

const FILE: &str = include_str!("../data/liftable.dga");

pub fn run_example() -> Result<()> {
    let p = parse_problem(FILE)?;
    let b = &*p.algebra;
    let env = b.envelope();
    let x = b.variable(0);
    let y = b.variable(1);

    let u = env.mul(&env.tensor(&x, &b.one()), &env.tensor(&b.one(), &y));
    println!("(X^o⊗1)(1^o⊗Y) = {}", env.format_element(&u));
    println!("d of that = {}", env.format_element(&env.diff(&u)));
    println!("π = {}", b.format_element(&env.pi(&u)));
    let s = env.sigma(&u);
    println!("σ = {}  =  {}", env.format_diagonal(&s), env.format_diagonal_raw(&s));
    assert_eq!(&env.iota(&s) + &env.rho(&env.pi(&u)), u);

    for text in ["X", "Y", "Y^(2)", "X*Y*y"] {
        let a = parse_algebra_element(&p, text)?;
        let d = env.delta(&a);
        println!("δ({text}) = {}  =  {}", env.format_diagonal(&d), env.format_diagonal_raw(&d));
        assert_eq!(env.j_diff(&d), env.delta(&b.diff(&a)));
    }

    let basis: Vec<String> = env.diagonal_basis(4, 4).iter().map(|t| env.format_basis_element(t)).collect();
    println!("J(4,4): {}", basis.join(", "));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
