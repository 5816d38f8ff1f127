//! Homology of the diagonal ideal in a range of bidegrees, for both example rings.

use dglift::cli_format::parse_problem;
use dglift::Result;

pub fn run_example() -> Result<()> {
    for (name, file) in [
        ("(xy)", include_str!("../data/liftable.dga")),
        ("(x^2, xy)", include_str!("../data/nonliftable.dga")),
    ] {
        let p = parse_problem(file)?;
        let env = p.algebra.envelope();
        println!("R = Q[x,y]/{name}");
        for n in 1..=4 {
            let row: Vec<String> = (0..=5)
                .map(|w| env.homology_dim(n, w).map(|d| d.to_string()))
                .collect::<Result<_>>()?;
            println!("  H_{n}(J) by weight 0..5: {}", row.join(" "));
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
