//! The obstruction `Δ_N`, connections and their curvature-like maps `ψ_D`, and the decision
//! of naïve liftability with checkable witnesses.
//!
//! `N` lifts iff some family `γ_λ ∈ (N⊗_B J)` of the bidegree of `e_λ` satisfies
//! `∂γ_λ = Σ_μ (γ_μ b_{μλ} + e_μ⊗δ(b_{μλ}))` for every `λ`. The family is found by one
//! simultaneous linear solve; a failed solve yields a left null vector as certificate.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_linalg::{coordinates, linear_solve, BlockMatrix, InconsistencyCertificate, SolveOutcome};
use crate::lincomb::LinComb;
use crate::scalar::Scalar;
use crate::semifree_module::{ModuleElement, SemifreeModule, TensorJElement, TensorTerm};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaMode {
    /// `σ_N ∘ ∂ ∘ ρ_N`.
    ViaSplitting,
    /// `e_λ ↦ Σ_μ e_μ⊗δ(b_{μλ})`.
    ViaFormula,
}

/// `Δ_N` on every basis element.
pub fn delta_n(n: &SemifreeModule, mode: DeltaMode) -> Vec<TensorJElement> {
    (0..n.rank())
        .map(|lambda| match mode {
            DeltaMode::ViaSplitting => delta_n_apply(n, &n.generator(lambda)),
            DeltaMode::ViaFormula => {
                let mut out = TensorJElement::zero();
                for mu in 0..lambda {
                    out = &out + &n.tensor_delta(mu, &n.entry(mu, lambda));
                }
                out
            }
        })
        .collect()
}

/// `Δ_N(x) = σ_N ∂ ρ_N(x)` on an arbitrary module element.
pub fn delta_n_apply(n: &SemifreeModule, x: &ModuleElement) -> TensorJElement {
    n.sigma_n(&n.tensor_env_diff(&n.rho_n(x)))
}

/// A connection `D_Γ`, determined by its values `γ_λ = D_Γ(e_λ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    gammas: Vec<TensorJElement>,
}

impl Connection {
    /// `D^B`, which kills the basis.
    pub fn canonical(n: &SemifreeModule) -> Self {
        Connection {
            gammas: vec![TensorJElement::zero(); n.rank()],
        }
    }

    /// Checks that each nonzero `γ_λ` has the bidegree of `e_λ`.
    pub fn new(n: &SemifreeModule, gammas: Vec<TensorJElement>) -> Result<Self> {
        if gammas.len() != n.rank() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for a basis of size {}",
                gammas.len(),
                n.rank()
            )));
        }
        for (e, g) in n.basis().iter().zip(&gammas) {
            if g.is_zero() {
                continue;
            }
            match n.tensor_homogeneous_bidegree(g) {
                Some(d) if d == (e.hom_degree, e.int_degree) => {}
                _ => {
                    return Err(Error::DegreeMismatch {
                        label: e.label.clone(),
                        detail: "connection value does not have the bidegree of its basis element".into(),
                    })
                }
            }
        }
        Ok(Connection { gammas })
    }

    pub fn gammas(&self) -> &[TensorJElement] {
        &self.gammas
    }

    pub fn gamma(&self, lambda: usize) -> &TensorJElement {
        &self.gammas[lambda]
    }

    pub fn is_canonical(&self) -> bool {
        self.gammas.iter().all(TensorJElement::is_zero)
    }

    /// `D_Γ(Σ e_λ b_λ) = Σ (γ_λ b_λ + e_λ⊗δ(b_λ))`.
    pub fn eval(&self, n: &SemifreeModule, v: &ModuleElement) -> TensorJElement {
        let mut out = TensorJElement::zero();
        for lambda in 0..n.rank() {
            let coeff = n.coefficient(v, lambda);
            if coeff.is_zero() {
                continue;
            }
            out = &out + &n.tensor_j_act_right(&self.gammas[lambda], &coeff);
            out = &out + &n.tensor_delta(lambda, &coeff);
        }
        out
    }
}

/// `ψ_D = ∂D − D∂` on every basis element.
pub fn psi(n: &SemifreeModule, d: &Connection) -> Vec<TensorJElement> {
    (0..n.rank())
        .map(|lambda| psi_apply(n, d, &n.generator(lambda)))
        .collect()
}

pub fn psi_apply(n: &SemifreeModule, d: &Connection, v: &ModuleElement) -> TensorJElement {
    &n.tensor_j_diff(&d.eval(n, v)) - &d.eval(n, &n.diff(v))
}

/// `Σ_{μ<λ} (γ_μ b_{μλ} + e_μ⊗δ(b_{μλ}))`, a cycle for every `Γ`.
pub fn partial_sum(n: &SemifreeModule, d: &Connection, lambda: usize) -> TensorJElement {
    let mut out = TensorJElement::zero();
    for mu in 0..lambda {
        let entry = n.entry(mu, lambda);
        if entry.is_zero() {
            continue;
        }
        out = &out + &n.tensor_j_act_right(d.gamma(mu), &entry);
        out = &out + &n.tensor_delta(mu, &entry);
    }
    out
}

/// True iff `∂γ_λ` equals the partial sum at `λ` for every basis element.
pub fn verify_witness(n: &SemifreeModule, d: &Connection) -> bool {
    d.gammas().len() == n.rank()
        && (0..n.rank()).all(|lambda| n.tensor_j_diff(d.gamma(lambda)) == partial_sum(n, d, lambda))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Decision {
    Liftable,
    NotLiftable,
}

impl Decision {
    pub fn as_str(self) -> &'static str {
        match self {
            Decision::Liftable => "LIFTABLE",
            Decision::NotLiftable => "NOT_LIFTABLE",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Zero differential.
    Trivial,
    /// Two basis elements: `δ(b)` must be a boundary in `J`.
    #[serde(rename = "rank2-corollary")]
    Rank2Corollary,
    /// The simultaneous solve for all `γ_λ`.
    GlobalSolve,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Trivial => "trivial",
            Method::Rank2Corollary => "rank2-corollary",
            Method::GlobalSolve => "global-solve",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [Method::Trivial, Method::Rank2Corollary, Method::GlobalSolve]
            .into_iter()
            .find(|m| m.as_str() == s)
    }
}

/// An unsolvable system `M x = v` together with the left null vector that proves it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftCertificate {
    pub matrix: BlockMatrix,
    pub target: Vec<Scalar>,
    pub inconsistency: InconsistencyCertificate,
}

impl LiftCertificate {
    pub fn verify(&self) -> bool {
        self.inconsistency.verify(&self.matrix, &self.target)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub decision: Decision,
    pub method: Method,
    /// `Δ_N(e_λ)` for each basis element.
    pub obstruction: Vec<TensorJElement>,
    pub witness: Option<Connection>,
    pub certificate: Option<LiftCertificate>,
}

impl ObstructionReport {
    /// Re-checks the witness or certificate from scratch.
    pub fn verify(&self, n: &SemifreeModule) -> bool {
        match self.decision {
            Decision::Liftable => self.witness.as_ref().is_some_and(|w| verify_witness(n, w)),
            Decision::NotLiftable => self.certificate.as_ref().is_some_and(LiftCertificate::verify),
        }
    }
}

/// The fastest method that applies to `n`.
pub fn default_method(n: &SemifreeModule) -> Method {
    if n.has_zero_differential() {
        Method::Trivial
    } else if n.rank() == 2 {
        Method::Rank2Corollary
    } else {
        Method::GlobalSolve
    }
}

pub fn check_naive_lift(n: &SemifreeModule) -> ObstructionReport {
    check_naive_lift_with(n, default_method(n)).expect("the default method always applies")
}

/// Runs one specific method; fails if the method does not apply to `n`.
pub fn check_naive_lift_with(n: &SemifreeModule, method: Method) -> Result<ObstructionReport> {
    let obstruction = delta_n(n, DeltaMode::ViaFormula);
    let report = match method {
        Method::Trivial => {
            if !n.has_zero_differential() {
                return Err(Error::Usage("the trivial method needs a zero differential".into()));
            }
            ObstructionReport {
                decision: Decision::Liftable,
                method,
                obstruction,
                witness: Some(Connection::canonical(n)),
                certificate: None,
            }
        }
        Method::Rank2Corollary => rank_two(n, obstruction)?,
        Method::GlobalSolve => global_solve(n, obstruction),
    };
    debug_assert!(report.verify(n));
    Ok(report)
}

/// `∂e' = e·b`: lifts iff `δ(b)` bounds in `J`, with witness `γ_e = 0`, `γ_{e'} = e⊗c`.
fn rank_two(n: &SemifreeModule, obstruction: Vec<TensorJElement>) -> Result<ObstructionReport> {
    if n.rank() != 2 || n.has_zero_differential() {
        return Err(Error::Usage(
            "the rank-2 method needs two basis elements and a nonzero differential".into(),
        ));
    }
    let b = n.algebra();
    let env = b.envelope();
    let field = b.ring().field();
    let coeff = n.entry(0, 1);
    let (h, w) = b.homogeneous_bidegree(&coeff).expect("validated entries are homogeneous");
    let block = env.diff_block(h + 1, w);
    let rows = env.diagonal_basis(h, w);
    let cols = env.diagonal_basis(h + 1, w);
    // ∂(e⊗c) = (−1)^{|e|} e⊗∂c
    let sign = field.one().signed(n.basis()[0].hom_degree % 2 != 0);
    let target = coordinates(field, &rows, &env.delta(&coeff).0.scale(&sign))
        .expect("δ(b) lies in the block of its bidegree");
    Ok(match linear_solve(&block, &target).expect("block and target sizes agree") {
        SolveOutcome::Solved(x) => {
            let c = cols
                .iter()
                .zip(x)
                .map(|(p, v)| (p.clone(), v))
                .collect::<LinComb<_>>();
            let gamma = TensorJElement::single(0, &crate::envelope::DiagonalElement(c));
            ObstructionReport {
                decision: Decision::Liftable,
                method: Method::Rank2Corollary,
                obstruction,
                witness: Some(Connection {
                    gammas: vec![TensorJElement::zero(), gamma],
                }),
                certificate: None,
            }
        }
        SolveOutcome::Inconsistent(cert) => ObstructionReport {
            decision: Decision::NotLiftable,
            method: Method::Rank2Corollary,
            obstruction,
            witness: None,
            certificate: Some(LiftCertificate {
                matrix: block,
                target,
                inconsistency: cert,
            }),
        },
    })
}

/// Assembles the system for all `γ_λ` at once: column `(λ, t)` sends `∂t` to equation `λ`
/// and `−t·b_{λλ'}` to each later equation `λ'`; the right-hand side is `Δ_N`.
pub fn global_system(n: &SemifreeModule) -> (BlockMatrix, Vec<Scalar>, Vec<(usize, TensorTerm)>) {
    let field = n.algebra().ring().field();
    let minus_one = -field.one();
    let k = n.rank();
    let mut rows: Vec<(usize, TensorTerm)> = Vec::new();
    let mut cols: Vec<(usize, TensorTerm)> = Vec::new();
    for (lambda, e) in n.basis().iter().enumerate() {
        rows.extend(
            n.tensor_j_basis(e.hom_degree - 1, e.int_degree)
                .into_iter()
                .map(|t| (lambda, t)),
        );
        cols.extend(
            n.tensor_j_basis(e.hom_degree, e.int_degree)
                .into_iter()
                .map(|t| (lambda, t)),
        );
    }
    let tag = |lambda: usize, t: &TensorJElement| -> LinComb<(usize, TensorTerm)> {
        t.0.map_keys(|term| (lambda, term.clone()))
    };
    let images: Vec<LinComb<(usize, TensorTerm)>> = cols
        .iter()
        .map(|(lambda, term)| {
            let t = TensorJElement(LinComb::single(term.clone(), field.one()));
            let mut image = tag(*lambda, &n.tensor_j_diff(&t));
            for later in lambda + 1..k {
                let entry = n.entry(*lambda, later);
                if !entry.is_zero() {
                    image.add_scaled(&tag(later, &n.tensor_j_act_right(&t, &entry)), &minus_one);
                }
            }
            image
        })
        .collect();
    let label = |(lambda, t): &(usize, TensorTerm)| {
        format!("[{}] {}", n.basis()[*lambda].label, n.format_tensor_term(t))
    };
    let matrix = BlockMatrix::from_images(
        field,
        &rows,
        rows.iter().map(label).collect(),
        cols.iter().map(label).collect(),
        &images,
    )
    .expect("every image lies in the equation blocks");
    let mut rhs = LinComb::new();
    for (lambda, d) in delta_n(n, DeltaMode::ViaFormula).iter().enumerate() {
        rhs = &rhs + &tag(lambda, d);
    }
    let target = coordinates(field, &rows, &rhs).expect("Δ_N lies in the equation blocks");
    (matrix, target, cols)
}

fn global_solve(n: &SemifreeModule, obstruction: Vec<TensorJElement>) -> ObstructionReport {
    let (matrix, target, cols) = global_system(n);
    match linear_solve(&matrix, &target).expect("system sizes agree") {
        SolveOutcome::Solved(x) => {
            let mut gammas: BTreeMap<usize, TensorJElement> = BTreeMap::new();
            for ((lambda, term), v) in cols.into_iter().zip(x) {
                gammas.entry(lambda).or_default().0.add_term(term, v);
            }
            let gammas = (0..n.rank())
                .map(|lambda| gammas.remove(&lambda).unwrap_or_default())
                .collect();
            ObstructionReport {
                decision: Decision::Liftable,
                method: Method::GlobalSolve,
                obstruction,
                witness: Some(Connection { gammas }),
                certificate: None,
            }
        }
        SolveOutcome::Inconsistent(cert) => ObstructionReport {
            decision: Decision::NotLiftable,
            method: Method::GlobalSolve,
            obstruction,
            witness: None,
            certificate: Some(LiftCertificate {
                matrix,
                target,
                inconsistency: cert,
            }),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    use crate::free_dga::tests::{ring_with, specs};
    use crate::free_dga::FreeDgAlgebra;
    use crate::semifree_module::tests::{liftable, rank_two};

    #[test]
    fn obstruction_of_the_liftable_module() {
        let n = liftable();
        let via_formula = delta_n(&n, DeltaMode::ViaFormula);
        assert!(via_formula[0].is_zero());
        assert_eq!(via_formula[1], n.tensor_delta(0, &n.entry(0, 1)));
        assert_eq!(delta_n(&n, DeltaMode::ViaSplitting), via_formula);
    }

    #[test]
    fn canonical_connection_and_its_psi() {
        let n = liftable();
        let d = Connection::canonical(&n);
        assert!(d.eval(&n, &n.generator(1)).is_zero());
        let b = n.entry(0, 1);
        assert_eq!(d.eval(&n, &n.element(0, &b)), n.tensor_delta(0, &b));
        let p = psi(&n, &d);
        assert!(p[0].is_zero());
        assert_eq!(p[1], -&n.tensor_delta(0, &b));
        assert!(!verify_witness(&n, &d));
    }

    #[test]
    fn divided_power_witness() {
        let n = liftable();
        let y2 = n.algebra().divided_power(1, 2);
        let d = Connection::new(&n, vec![TensorJElement::zero(), n.tensor_delta(0, &y2)]).unwrap();
        assert_eq!(d.eval(&n, &n.generator(1)), n.tensor_delta(0, &y2));
        assert!(psi(&n, &d).iter().all(TensorJElement::is_zero));
        assert!(verify_witness(&n, &d));
    }

    #[test]
    fn both_methods_find_the_divided_power_witness() {
        let n = liftable();
        let y2 = n.algebra().divided_power(1, 2);
        for method in [Method::Rank2Corollary, Method::GlobalSolve] {
            let report = check_naive_lift_with(&n, method).unwrap();
            assert_eq!(report.decision, Decision::Liftable);
            let w = report.witness.as_ref().unwrap();
            assert!(verify_witness(&n, w));
            assert_eq!(w.gamma(1), &n.tensor_delta(0, &y2));
        }
        assert_eq!(check_naive_lift(&n).method, Method::Rank2Corollary);
        assert!(check_naive_lift_with(&n, Method::Trivial).is_err());
    }

    #[test]
    fn wrong_bidegree_connection_is_rejected() {
        let n = liftable();
        let x = n.algebra().variable(0);
        let bad = n.tensor_delta(0, &x);
        assert!(Connection::new(&n, vec![TensorJElement::zero(), bad]).is_err());
    }

    #[test]
    fn x_coefficient_is_obstructed_once_x_squared_vanishes() {
        let ring = ring_with(vec![vec![2, 0], vec![1, 1]]);
        let s = specs(&ring);
        let m = rank_two(Arc::new(FreeDgAlgebra::new(ring, s).unwrap()), 0).unwrap();
        let fast = check_naive_lift_with(&m, Method::Rank2Corollary).unwrap();
        let slow = check_naive_lift_with(&m, Method::GlobalSolve).unwrap();
        for r in [&fast, &slow] {
            assert_eq!(r.decision, Decision::NotLiftable);
            assert!(r.certificate.as_ref().unwrap().verify());
        }
        assert_eq!(fast.certificate.as_ref().unwrap().matrix.nrows(), 6);
        assert_eq!(fast.certificate.as_ref().unwrap().matrix.ncols(), 4);
    }
}
