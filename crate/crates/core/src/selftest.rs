//! Seeded invariant suites over random rings, algebras and modules.
//!
//! Every check is an exact equality. A suite reports how many random cases it drew and a
//! description of each failing case.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cli_format::SuiteReport;
use crate::free_dga::FreeDgAlgebra;
use crate::obstruction::{
    check_naive_lift, check_naive_lift_with, delta_n, delta_n_apply, global_system, partial_sum, psi,
    psi_apply, Connection, DeltaMode, Decision, Method,
};
use crate::exact_linalg::{linear_solve, SolveOutcome};
use crate::random;
use crate::scalar::GroundField;
use crate::semifree_module::{BasisSpec, ModuleElement, SemifreeModule, TensorJElement};

pub const DEFAULT_SEED: u64 = 0x5eed_d61f;

/// Suite names in execution order.
pub const SUITES: &[&str] = &[
    "ring",
    "algebra",
    "splitting",
    "derivation",
    "envelope",
    "module",
    "homotopy",
    "trivial",
    "decision",
];

const DEFAULT_CASES: usize = 30;

pub fn run_all(seed: u64) -> Vec<SuiteReport> {
    SUITES
        .iter()
        .map(|s| run_suite(s, seed, DEFAULT_CASES).expect("listed suites exist"))
        .collect()
}

/// Runs one suite on `cases` random instances; `None` for an unknown name.
pub fn run_suite(name: &str, seed: u64, cases: usize) -> Option<SuiteReport> {
    let idx = SUITES.iter().position(|s| *s == name)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(idx as u64 * 0x9e37_79b9));
    let mut failures = Vec::new();
    for case in 0..cases {
        let mut fail = |what: &str| failures.push(format!("case {case}: {what}"));
        match name {
            "ring" => ring_case(&mut rng, &mut fail),
            "algebra" => algebra_case(&mut rng, &mut fail),
            "splitting" => splitting_case(&mut rng, &mut fail),
            "derivation" => derivation_case(&mut rng, &mut fail),
            "envelope" => envelope_case(&mut rng, &mut fail),
            "module" => module_case(&mut rng, &mut fail),
            "homotopy" => homotopy_case(&mut rng, &mut fail),
            "trivial" => trivial_case(&mut rng, case, &mut fail),
            "decision" => decision_case(&mut rng, &mut fail),
            _ => unreachable!(),
        }
    }
    Some(SuiteReport {
        name: name.to_string(),
        cases,
        passed: failures.is_empty(),
        failures,
    })
}

fn field<R: Rng>(rng: &mut R) -> GroundField {
    match rng.gen_range(0..3) {
        0 => GroundField::Rationals,
        1 => GroundField::prime(2).expect("2 is prime"),
        _ => GroundField::prime(5).expect("5 is prime"),
    }
}

fn random_algebra<R: Rng>(rng: &mut R, max_vars: usize) -> Arc<FreeDgAlgebra> {
    let f = field(rng);
    let r = random::ring(rng, f);
    Arc::new(random::algebra(rng, r, max_vars))
}

fn random_module<R: Rng>(rng: &mut R, max_rank: usize) -> SemifreeModule {
    let b = random_algebra(rng, 3);
    let rank = rng.gen_range(1..=max_rank);
    random::module(rng, b, rank, 5, 5)
}

fn check(fail: &mut impl FnMut(&str), ok: bool, what: &str) {
    if !ok {
        fail(what);
    }
}

fn ring_case<R: Rng>(rng: &mut R, fail: &mut impl FnMut(&str)) {
    let f = field(rng);
    let r = random::ring(rng, f);
    let elem = |rng: &mut R| {
        let w = rng.gen_range(0..=3);
        random::combination(rng, f, &r.graded_piece_basis(w), 0.6)
    };
    let (a, b, c) = (elem(rng), elem(rng), elem(rng));
    check(fail, r.contains(&r.mul(&a, &b)), "product not in normal form");
    check(fail, r.mul(&a, &b) == r.mul(&b, &a), "multiplication not commutative");
    check(
        fail,
        r.mul(&r.mul(&a, &b), &c) == r.mul(&a, &r.mul(&b, &c)),
        "multiplication not associative",
    );
    check(
        fail,
        r.mul(&a, &r.add(&b, &c)) == r.add(&r.mul(&a, &b), &r.mul(&a, &c)),
        "multiplication not distributive",
    );
    check(fail, r.normalize(&a) == a, "normal form not idempotent");
}

fn algebra_case<R: Rng>(rng: &mut R, fail: &mut impl FnMut(&str)) {
    let b = random_algebra(rng, 3);
    let (Some(x), Some(y), Some(z)) = (
        random::nonzero_algebra_element(rng, &b, 3, 3),
        random::nonzero_algebra_element(rng, &b, 3, 3),
        random::nonzero_algebra_element(rng, &b, 2, 2),
    ) else {
        return;
    };
    let (hx, _) = b.homogeneous_bidegree(&x).expect("homogeneous by construction");
    let (hy, _) = b.homogeneous_bidegree(&y).expect("homogeneous by construction");
    let one = b.ring().field().one();
    check(fail, b.diff(&b.diff(&x)).is_zero(), "d² ≠ 0");
    let leibniz = &b.mul(&b.diff(&x), &y) + &b.mul(&x, &b.diff(&y)).scale(&one.clone().signed(hx % 2 != 0));
    check(fail, b.diff(&b.mul(&x, &y)) == leibniz, "Leibniz rule fails");
    check(
        fail,
        b.mul(&x, &y) == b.mul(&y, &x).scale(&one.signed(hx * hy % 2 != 0)),
        "graded commutativity fails",
    );
    check(
        fail,
        b.mul(&b.mul(&x, &y), &z) == b.mul(&x, &b.mul(&y, &z)),
        "multiplication not associative",
    );
}

fn splitting_case<R: Rng>(rng: &mut R, fail: &mut impl FnMut(&str)) {
    let b = random_algebra(rng, 3);
    let env = b.envelope();
    let (n, w) = (rng.gen_range(0..=6), rng.gen_range(0..=6));
    let u = random::envelope_element(rng, &b, n, w);
    let a = random::algebra_element(rng, &b, n, w);
    let j = random::diagonal_element(rng, &b, n, w);
    check(fail, env.pi(&env.rho(&a)) == a, "πρ ≠ id");
    check(fail, env.sigma(&env.iota(&j)) == j, "σι ≠ id");
    check(
        fail,
        &env.iota(&env.sigma(&u)) + &env.rho(&env.pi(&u)) == u,
        "ισ + ρπ ≠ id",
    );
    check(fail, env.pi(&env.iota(&j)).is_zero(), "πι ≠ 0");
    check(fail, env.rho(&b.diff(&a)) == env.diff(&env.rho(&a)), "ρ is not a chain map");
    check(fail, env.sigma(&env.diff(&u)) == env.j_diff(&env.sigma(&u)), "σ is not a chain map");
    check(fail, env.pi(&env.diff(&u)) == b.diff(&env.pi(&u)), "π is not a chain map");
}

fn derivation_case<R: Rng>(rng: &mut R, fail: &mut impl FnMut(&str)) {
    let b = random_algebra(rng, 3);
    let env = b.envelope();
    let (Some(x), Some(y)) = (
        random::nonzero_algebra_element(rng, &b, 3, 3),
        random::nonzero_algebra_element(rng, &b, 3, 3),
    ) else {
        return;
    };
    let (hx, _) = b.homogeneous_bidegree(&x).expect("homogeneous by construction");
    let (hy, _) = b.homogeneous_bidegree(&y).expect("homogeneous by construction");
    let sign = b.ring().field().one().signed(hx * hy % 2 != 0);
    let lhs = env.iota(&env.delta(&b.mul(&x, &y)));
    let rhs = &env.mul(&env.iota(&env.delta(&x)), &env.tensor(&b.one(), &y))
        + &env
            .mul(&env.iota(&env.delta(&y)), &env.tensor(&x, &b.one()))
            .scale(&sign);
    check(fail, lhs == rhs, "product rule for δ fails");
    check(fail, env.delta(&b.diff(&x)) == env.j_diff(&env.delta(&x)), "δd ≠ ∂δ");
    check(fail, env.pi(&env.iota(&env.delta(&x))).is_zero(), "δ leaves J");
}

fn envelope_case<R: Rng>(rng: &mut R, fail: &mut impl FnMut(&str)) {
    let b = random_algebra(rng, 2);
    let env = b.envelope();
    let draw = |rng: &mut R| {
        let (n, w) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
        (n, random::envelope_element(rng, &b, n, w))
    };
    let (hu, u) = draw(rng);
    let (_, v) = draw(rng);
    let (_, t) = draw(rng);
    let one = b.ring().field().one();
    check(
        fail,
        env.mul(&env.mul(&u, &v), &t) == env.mul(&u, &env.mul(&v, &t)),
        "Bᵉ multiplication not associative",
    );
    check(fail, env.mul(&env.one(), &u) == u, "1 is not a left unit");
    check(fail, env.diff(&env.diff(&u)).is_zero(), "d² ≠ 0 on Bᵉ");
    let leibniz = &env.mul(&env.diff(&u), &v) + &env.mul(&u, &env.diff(&v)).scale(&one.signed(hu % 2 != 0));
    check(fail, env.diff(&env.mul(&u, &v)) == leibniz, "Leibniz rule fails on Bᵉ");
    let j = random::diagonal_element(rng, &b, 2, 2);
    check(
        fail,
        env.to_diagonal(&env.mul(&env.iota(&j), &u)).is_ok(),
        "J is not a right ideal",
    );
    check(fail, env.j_diff(&env.j_diff(&j)).is_zero(), "∂² ≠ 0 on J");
}

fn module_case<R: Rng>(rng: &mut R, fail: &mut impl FnMut(&str)) {
    let n = random_module(rng, 4);
    let formula = delta_n(&n, DeltaMode::ViaFormula);
    check(fail, delta_n(&n, DeltaMode::ViaSplitting) == formula, "Δ_N differs between formulas");
    let canonical = psi(&n, &Connection::canonical(&n));
    check(
        fail,
        canonical.iter().zip(&formula).all(|(p, d)| p == &-d),
        "ψ of the canonical connection is not −Δ_N",
    );
    let (h, w) = (rng.gen_range(0..=5), rng.gen_range(0..=5));
    let x = random::module_element(rng, &n, h, w);
    let anti = &n.tensor_j_diff(&delta_n_apply(&n, &x)) + &delta_n_apply(&n, &n.diff(&x));
    check(fail, anti.is_zero(), "∂Δ_N + Δ_N∂ ≠ 0");

    // ∂ξ_λ = Σ_μ ψ(e_μ) b_{μλ}; a cycle once every earlier equation holds
    let d = random::connection(rng, &n);
    let psis = psi(&n, &d);
    for lambda in 0..n.rank() {
        let mut expected = TensorJElement::zero();
        for mu in 0..lambda {
            expected = &expected + &n.tensor_j_act_right(&psis[mu], &n.entry(mu, lambda));
        }
        if n.tensor_j_diff(&partial_sum(&n, &d, lambda)) != expected {
            fail("boundary of a partial sum is not Σ ψ(e_μ) b_{μλ}");
        }
    }
    check(fail, psi_apply(&n, &d, &x) == &n.tensor_j_diff(&d.eval(&n, &x)) - &d.eval(&n, &n.diff(&x)), "ψ disagrees with ∂D − D∂");
    let y = random::module_element(rng, &n, h, w);
    if let Some(a) = random::nonzero_algebra_element(rng, n.algebra(), 2, 2) {
        let lhs = psi_apply(&n, &d, &n.act_right(&y, &a));
        let rhs = n.tensor_j_act_right(&psi_apply(&n, &d, &y), &a);
        check(fail, lhs == rhs, "ψ is not right linear");
    }
    if let Some(g) = solved_connection(&n) {
        for lambda in 0..n.rank() {
            check(
                fail,
                n.tensor_j_diff(&partial_sum(&n, &g, lambda)).is_zero(),
                "partial sum is not a cycle under a solving family",
            );
        }
    }
}

/// A family satisfying every equation, when one exists.
fn solved_connection(n: &SemifreeModule) -> Option<Connection> {
    let (m, target, cols) = global_system(n);
    let SolveOutcome::Solved(x) = linear_solve(&m, &target).ok()? else {
        return None;
    };
    let mut gammas = vec![TensorJElement::zero(); n.rank()];
    for ((lambda, t), v) in cols.into_iter().zip(x) {
        let mut single = TensorJElement::zero();
        single.0.add_term(t, v);
        gammas[lambda] = &gammas[lambda] + &single;
    }
    Connection::new(n, gammas).ok()
}

fn homotopy_case<R: Rng>(rng: &mut R, fail: &mut impl FnMut(&str)) {
    let n = random_module(rng, 4);
    let d1 = random::connection(rng, &n);
    let d2 = random::connection(rng, &n);
    // h = D₂ − D₁; the suspension differential on N⊗J is −∂
    let h = |v: &ModuleElement| &d2.eval(&n, v) - &d1.eval(&n, v);
    let (hd, wd) = (rng.gen_range(0..=5), rng.gen_range(0..=5));
    let x = random::module_element(rng, &n, hd, wd);
    let mut inputs: Vec<_> = (0..n.rank()).map(|l| n.generator(l)).collect();
    inputs.push(x);
    for v in &inputs {
        let lhs = &psi_apply(&n, &d1, v) - &psi_apply(&n, &d2, v);
        let dv = n.diff(v);
        let rhs = &(-&n.tensor_j_diff(&h(v))) + &h(&dv);
        if lhs != rhs {
            fail(&format!("ψ_D₁ − ψ_D₂ ≠ ∂h + h∂ at {}", n.format_element(v)));
        }
    }
}

fn trivial_case<R: Rng>(rng: &mut R, case: usize, fail: &mut impl FnMut(&str)) {
    let b = random_algebra(rng, 3);
    let rank = if case % 5 == 0 { 1 } else { rng.gen_range(1..=5) };
    let specs = (0..rank)
        .map(|i| BasisSpec {
            label: format!("e{i}"),
            hom_degree: rng.gen_range(0..=4),
            int_degree: Some(rng.gen_range(0..=4)),
        })
        .collect();
    let n = match SemifreeModule::new(b, specs, Default::default()) {
        Ok(n) => n,
        Err(e) => return fail(&format!("zero differential rejected: {e}")),
    };
    let report = check_naive_lift(&n);
    check(fail, report.decision == Decision::Liftable, "zero differential not liftable");
    check(fail, report.obstruction.iter().all(TensorJElement::is_zero), "nonzero obstruction");
    check(fail, report.verify(&n), "witness does not verify");
    if let Ok(g) = check_naive_lift_with(&n, Method::GlobalSolve) {
        check(fail, g.decision == Decision::Liftable, "global solve disagrees on a trivial module");
    }
}

fn decision_case<R: Rng>(rng: &mut R, fail: &mut impl FnMut(&str)) {
    let b = random_algebra(rng, 3);
    let n = random::module(rng, b, 2, 5, 5);
    let global = check_naive_lift_with(&n, Method::GlobalSolve).expect("global solve always applies");
    check(fail, global.verify(&n), "global-solve report does not verify");
    if let Ok(r2) = check_naive_lift_with(&n, Method::Rank2Corollary) {
        check(fail, r2.verify(&n), "rank-2 report does not verify");
        check(fail, r2.decision == global.decision, "rank-2 and global methods disagree");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass_on_the_default_seed() {
        for s in SUITES {
            let r = run_suite(s, DEFAULT_SEED, 8).unwrap();
            assert!(r.passed, "{}: {:?}", r.name, r.failures);
        }
        assert!(run_suite("nope", 0, 1).is_none());
    }
}
