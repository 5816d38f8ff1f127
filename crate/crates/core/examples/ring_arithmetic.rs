//! Monomial quotient rings: normal forms, graded pieces and the intersection oracle.

use dglift::coefficients::{BaseRing, Exponents, Generator};
use dglift::scalar::GroundField;
use dglift::Result;

pub fn run_example() -> Result<()> {
    let gens = vec![
        Generator { name: "x".into(), degree: 1 },
        Generator { name: "y".into(), degree: 1 },
    ];
    let r = BaseRing::new(GroundField::Rationals, gens, vec![Exponents(vec![1, 1])])?;
    let (x, y) = (r.generator(0), r.generator(1));
    let s = r.add(&x, &y);
    let square = r.mul(&s, &s);
    println!("(x + y)^2 = {}", r.format_element(&square));
    assert_eq!(r.format_element(&square), "x^2 + y^2");
    println!("x*y = {}", r.format_element(&r.mul(&x, &y)));

    for w in 0..4 {
        let basis: Vec<String> = r.graded_piece_basis(w).iter().map(|e| r.format_monomial(e)).collect();
        println!("R_{w}: [{}]", basis.join(", "));
    }
    let disjoint = r.ideal_intersection_is_zero(&x, &y, 6)?;
    println!("xR ∩ yR = 0 through degree 6: {disjoint}");
    assert!(disjoint);

    let f7 = BaseRing::new(GroundField::prime(7)?, vec![Generator { name: "t".into(), degree: 2 }], vec![])?;
    let t = f7.generator(0);
    let seven_t = f7.mul(&f7.from_integer(&8.into()), &t);
    println!("over F_7: 8*t = {}", f7.format_element(&seven_t));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
