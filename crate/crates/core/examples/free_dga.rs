//! A free DG algebra built by hand: exterior and divided power variables, Leibniz signs.

use dglift::coefficients::{BaseRing, Exponents, Generator};
use dglift::free_dga::{FreeDgAlgebra, Monomial, Term, VariableSpec};
use dglift::lincomb::LinComb;
use dglift::scalar::GroundField;
use dglift::Result;

pub fn run_example() -> Result<()> {
    let f = GroundField::Rationals;
    let r = BaseRing::new(
        f,
        vec![
            Generator { name: "x".into(), degree: 1 },
            Generator { name: "y".into(), degree: 1 },
        ],
        vec![Exponents(vec![1, 1])],
    )?;
    // terms name the variable exponents of the finished algebra
    let term = |vars: Vec<u32>, ring: Vec<u32>| LinComb::single(Term { mono: Monomial(vars), ring: Exponents(ring) }, f.one());
    let specs = vec![
        VariableSpec {
            name: "X".into(),
            hom_degree: 1,
            int_degree: None,
            differential: term(vec![0, 0], vec![1, 0]),
        },
        VariableSpec {
            name: "Y".into(),
            hom_degree: 2,
            int_degree: None,
            differential: term(vec![1, 0], vec![0, 1]),
        },
    ];
    let b = FreeDgAlgebra::new(r, specs)?;
    for v in b.variables() {
        println!("{}: bidegree ({}, {}), d = {}", v.name, v.hom_degree, v.int_degree, b.format_element(&v.differential));
    }

    let (x, y) = (b.variable(0), b.variable(1));
    println!("X*X = {}", b.format_element(&b.mul(&x, &x)));
    println!("Y*Y = {}", b.format_element(&b.mul(&y, &y)));
    let y3 = b.divided_power(1, 3);
    println!("d(Y^(3)) = {}", b.format_element(&b.diff(&y3)));
    let xy = b.mul(&x, &y);
    println!("d(X*Y) = {}", b.format_element(&b.diff(&xy)));
    assert!(b.diff(&b.diff(&y3)).is_zero());

    let block = b.diff_block(3, 3);
    println!("d: B(3,3) -> B(2,3) is {}x{} of rank {}", block.nrows(), block.ncols(), block.rank());

    let missing = BaseRing::new(
        f,
        vec![
            Generator { name: "x".into(), degree: 1 },
            Generator { name: "y".into(), degree: 1 },
        ],
        vec![],
    )?;
    let bad = vec![
        VariableSpec { name: "X".into(), hom_degree: 1, int_degree: None, differential: term(vec![0, 0], vec![1, 0]) },
        VariableSpec { name: "Y".into(), hom_degree: 2, int_degree: None, differential: term(vec![1, 0], vec![0, 1]) },
    ];
    match FreeDgAlgebra::new(missing, bad) {
        Err(e) => println!("without x*y = 0: {e}"),
        Ok(_) => unreachable!("X*y is not a cycle in Q[x,y]<X>"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
