//! Finitely generated semifree DG modules over a free extension, the tensor complex
//! `N ⊗_B J`, and the graded splittings of `N ⊗_B Bᵉ → N`.
//!
//! The structure matrix is stored column-wise: `∂(e_λ) = Σ_{μ<λ} e_μ·b_{μλ}` with the entry
//! `b_{μλ}` at key `(μ, λ)`. Basis elements carry an internal degree alongside the
//! homological one so that every bidegree block of every complex is finite.

use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use crate::envelope::{DiagonalElement, EnvelopeElement, PairTerm};
use crate::error::{Error, Result};
use crate::exact_linalg::BlockMatrix;
use crate::format::{format_sum, join_factors};
use crate::free_dga::{AlgebraElement, FreeDgAlgebra, Term};
use crate::lincomb::LinComb;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub label: String,
    pub hom_degree: i32,
    pub int_degree: i32,
}

/// A basis element as declared; a missing internal degree is inferred from the matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisSpec {
    pub label: String,
    pub hom_degree: i32,
    pub int_degree: Option<i32>,
}

/// `e_basis · term`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModTerm {
    pub basis: usize,
    pub term: Term,
}

pub type ModuleElement = LinComb<ModTerm>;

/// `e_basis ⊗ pair`; read in σ-coordinates inside [`TensorJElement`] and raw inside
/// [`TensorEnvElement`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorTerm {
    pub basis: usize,
    pub pair: PairTerm,
}

/// An element of `N ⊗_B Bᵉ`.
pub type TensorEnvElement = LinComb<TensorTerm>;

/// An element `Σ e_λ ⊗ j_λ` of `N ⊗_B J`, each `j_λ` in σ-coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TensorJElement(pub LinComb<TensorTerm>);

impl TensorJElement {
    pub fn zero() -> Self {
        TensorJElement(LinComb::new())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `e_λ ⊗ j`.
    pub fn single(basis: usize, j: &DiagonalElement) -> Self {
        TensorJElement(j.0.map_keys(|p| TensorTerm {
            basis,
            pair: p.clone(),
        }))
    }

    /// The component `j_λ`.
    pub fn component(&self, basis: usize) -> DiagonalElement {
        DiagonalElement(
            self.0
                .iter()
                .filter(|(t, _)| t.basis == basis)
                .map(|(t, c)| (t.pair.clone(), c.clone()))
                .collect(),
        )
    }

    pub fn components(&self) -> BTreeMap<usize, DiagonalElement> {
        let mut out: BTreeMap<usize, DiagonalElement> = BTreeMap::new();
        for (t, c) in &self.0 {
            out.entry(t.basis)
                .or_default()
                .0
                .add_term(t.pair.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &crate::scalar::Scalar) -> Self {
        TensorJElement(self.0.scale(c))
    }
}

impl std::ops::Add for &TensorJElement {
    type Output = TensorJElement;
    fn add(self, rhs: Self) -> TensorJElement {
        TensorJElement(&self.0 + &rhs.0)
    }
}

impl std::ops::Sub for &TensorJElement {
    type Output = TensorJElement;
    fn sub(self, rhs: Self) -> TensorJElement {
        TensorJElement(&self.0 - &rhs.0)
    }
}

impl std::ops::Neg for &TensorJElement {
    type Output = TensorJElement;
    fn neg(self) -> TensorJElement {
        TensorJElement(-&self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemifreeModule {
    algebra: Arc<FreeDgAlgebra>,
    basis: Vec<BasisElement>,
    entries: BTreeMap<(usize, usize), AlgebraElement>,
}

impl SemifreeModule {
    /// Validates triangularity, bidegrees and `∂² = 0`, inferring missing internal degrees.
    ///
    /// Each connected component of the matrix graph is anchored at its first annotated
    /// element, or at its first element with internal degree `0`.
    pub fn new(
        algebra: Arc<FreeDgAlgebra>,
        basis: Vec<BasisSpec>,
        entries: BTreeMap<(usize, usize), AlgebraElement>,
    ) -> Result<Self> {
        let k = basis.len();
        let entries: BTreeMap<_, _> = entries.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        let mut seen = std::collections::BTreeSet::new();
        for s in &basis {
            if !seen.insert(s.label.as_str()) {
                return Err(Error::DuplicateName(s.label.clone()));
            }
        }
        for (&(mu, lambda), v) in &entries {
            if mu >= k || lambda >= k {
                return Err(Error::DimensionMismatch(format!(
                    "matrix entry ({mu},{lambda}) outside a basis of size {k}"
                )));
            }
            if mu >= lambda {
                return Err(Error::TriangularityViolation {
                    row: basis[mu].label.clone(),
                    col: basis[lambda].label.clone(),
                });
            }
            if !algebra.contains(v) {
                return Err(Error::MixedAlgebras);
            }
        }

        // internal degree of each entry, with its homological degree checked on the way
        let mut weight = BTreeMap::new();
        for (&(mu, lambda), v) in &entries {
            let (lab_mu, lab_lambda) = (&basis[mu].label, &basis[lambda].label);
            let Some((h, w)) = algebra.homogeneous_bidegree(v) else {
                return Err(Error::DegreeMismatch {
                    label: lab_lambda.clone(),
                    detail: format!("coefficient of {lab_mu} in d{lab_lambda} is not homogeneous"),
                });
            };
            let expected = basis[lambda].hom_degree - basis[mu].hom_degree - 1;
            if h != expected {
                return Err(Error::DegreeMismatch {
                    label: lab_lambda.clone(),
                    detail: format!(
                        "coefficient of {lab_mu} in d{lab_lambda} has homological degree {h}, expected {expected}"
                    ),
                });
            }
            weight.insert((mu, lambda), w);
        }

        let mut adjacency = vec![Vec::new(); k];
        for (&(mu, lambda), &w) in &weight {
            // w(e_λ) = w(e_μ) + w(b_{μλ})
            adjacency[mu].push((lambda, w));
            adjacency[lambda].push((mu, -w));
        }
        let mut assigned: Vec<Option<i32>> = vec![None; k];
        let mut component = vec![usize::MAX; k];
        for start in 0..k {
            if component[start] != usize::MAX {
                continue;
            }
            let mut members = Vec::new();
            let mut queue = VecDeque::from([start]);
            component[start] = start;
            while let Some(i) = queue.pop_front() {
                members.push(i);
                for &(j, _) in &adjacency[i] {
                    if component[j] == usize::MAX {
                        component[j] = start;
                        queue.push_back(j);
                    }
                }
            }
            members.sort_unstable();
            let root = members
                .iter()
                .copied()
                .find(|&i| basis[i].int_degree.is_some())
                .unwrap_or(start);
            assigned[root] = Some(basis[root].int_degree.unwrap_or(0));
            let mut queue = VecDeque::from([root]);
            while let Some(i) = queue.pop_front() {
                let wi = assigned[i].expect("queued elements are assigned");
                for &(j, delta) in &adjacency[i] {
                    let wj = wi + delta;
                    match assigned[j] {
                        None => {
                            assigned[j] = Some(wj);
                            queue.push_back(j);
                        }
                        Some(existing) if existing != wj => {
                            return Err(Error::DegreeMismatch {
                                label: basis[j].label.clone(),
                                detail: format!(
                                    "internal degree {existing} conflicts with {wj} forced via {}",
                                    basis[i].label
                                ),
                            })
                        }
                        Some(_) => {}
                    }
                }
            }
            for &i in &members {
                if let (Some(declared), Some(found)) = (basis[i].int_degree, assigned[i]) {
                    if declared != found {
                        return Err(Error::DegreeMismatch {
                            label: basis[i].label.clone(),
                            detail: format!("declared internal degree {declared}, differential forces {found}"),
                        });
                    }
                }
            }
        }

        let basis = basis
            .into_iter()
            .zip(assigned)
            .map(|(s, w)| BasisElement {
                label: s.label,
                hom_degree: s.hom_degree,
                int_degree: w.expect("every component has a root"),
            })
            .collect();
        let module = SemifreeModule {
            algebra,
            basis,
            entries,
        };
        module.check_square_zero()?;
        Ok(module)
    }

    /// Skips every check; for building deliberately broken inputs.
    pub fn new_unchecked(
        algebra: Arc<FreeDgAlgebra>,
        basis: Vec<BasisElement>,
        entries: BTreeMap<(usize, usize), AlgebraElement>,
    ) -> Self {
        SemifreeModule {
            algebra,
            basis,
            entries: entries.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    /// `Σ_{ν<μ<λ} b_{νμ}b_{μλ} + (−1)^{|e_ν|} d b_{νλ} = 0` for all `ν < λ`.
    pub fn check_square_zero(&self) -> Result<()> {
        let b = &*self.algebra;
        let k = self.basis.len();
        for lambda in 0..k {
            for nu in 0..lambda {
                let mut residue = AlgebraElement::new();
                for mu in nu + 1..lambda {
                    residue = &residue + &b.mul(&self.entry(nu, mu), &self.entry(mu, lambda));
                }
                let sign = b.ring().field().one().signed(self.basis[nu].hom_degree % 2 != 0);
                residue.add_scaled(&b.diff(&self.entry(nu, lambda)), &sign);
                if !residue.is_zero() {
                    return Err(Error::DifferentialSquareNonzero {
                        nu: self.basis[nu].label.clone(),
                        lambda: self.basis[lambda].label.clone(),
                        residue: b.format_element(&residue),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &FreeDgAlgebra {
        &self.algebra
    }

    pub fn algebra_arc(&self) -> &Arc<FreeDgAlgebra> {
        &self.algebra
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_index(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|e| e.label == label)
    }

    /// `b_{μλ}`, zero when absent.
    pub fn entry(&self, mu: usize, lambda: usize) -> AlgebraElement {
        self.entries.get(&(mu, lambda)).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), AlgebraElement> {
        &self.entries
    }

    pub fn has_zero_differential(&self) -> bool {
        self.entries.is_empty()
    }

    fn parity(&self, basis: usize) -> bool {
        self.basis[basis].hom_degree % 2 != 0
    }

    /// `e_λ · b`.
    pub fn element(&self, basis: usize, a: &AlgebraElement) -> ModuleElement {
        a.map_keys(|t| ModTerm {
            basis,
            term: t.clone(),
        })
    }

    pub fn generator(&self, basis: usize) -> ModuleElement {
        self.element(basis, &self.algebra.one())
    }

    /// The coefficient `b_λ` of `e_λ` in `Σ e_λ b_λ`.
    pub fn coefficient(&self, v: &ModuleElement, basis: usize) -> AlgebraElement {
        v.iter()
            .filter(|(t, _)| t.basis == basis)
            .map(|(t, c)| (t.term.clone(), c.clone()))
            .collect()
    }

    fn coefficients(&self, v: &ModuleElement) -> BTreeMap<usize, AlgebraElement> {
        let mut out: BTreeMap<usize, AlgebraElement> = BTreeMap::new();
        for (t, c) in v {
            out.entry(t.basis).or_default().add_term(t.term.clone(), c.clone());
        }
        out
    }

    pub fn bidegree(&self, t: &ModTerm) -> (i32, i32) {
        let (h, w) = self.algebra.bidegree(&t.term);
        let e = &self.basis[t.basis];
        (e.hom_degree + h, e.int_degree + w)
    }

    pub fn homogeneous_bidegree(&self, v: &ModuleElement) -> Option<(i32, i32)> {
        let mut it = v.keys().map(|t| self.bidegree(t));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn tensor_bidegree(&self, t: &TensorTerm) -> (i32, i32) {
        let (h, w) = self.algebra.envelope().bidegree(&t.pair);
        let e = &self.basis[t.basis];
        (e.hom_degree + h, e.int_degree + w)
    }

    pub fn tensor_homogeneous_bidegree(&self, v: &TensorJElement) -> Option<(i32, i32)> {
        let mut it = v.0.keys().map(|t| self.tensor_bidegree(t));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// `∂(Σ e_λ b_λ) = Σ (∂e_λ) b_λ + (−1)^{|e_λ|} e_λ d(b_λ)`.
    pub fn diff(&self, v: &ModuleElement) -> ModuleElement {
        let b = &*self.algebra;
        let one = b.ring().field().one();
        let mut out = ModuleElement::new();
        for (lambda, coeff) in self.coefficients(v) {
            for mu in 0..lambda {
                if let Some(entry) = self.entries.get(&(mu, lambda)) {
                    out = &out + &self.element(mu, &b.mul(entry, &coeff));
                }
            }
            out.add_scaled(
                &self.element(lambda, &b.diff(&coeff)),
                &one.clone().signed(self.parity(lambda)),
            );
        }
        out
    }

    pub fn act_right(&self, v: &ModuleElement, a: &AlgebraElement) -> ModuleElement {
        let mut out = ModuleElement::new();
        for (lambda, coeff) in self.coefficients(v) {
            out = &out + &self.element(lambda, &self.algebra.mul(&coeff, a));
        }
        out
    }

    /// `a · (e_λ c) = (−1)^{|a||e_λ|} e_λ (a c)` for homogeneous `a`.
    pub fn act_left(&self, a: &AlgebraElement, v: &ModuleElement) -> Result<ModuleElement> {
        if a.is_zero() {
            return Ok(ModuleElement::new());
        }
        let (h, _) = self.algebra.homogeneous_bidegree(a).ok_or(Error::NotHomogeneous)?;
        let one = self.algebra.ring().field().one();
        let mut out = ModuleElement::new();
        for (lambda, coeff) in self.coefficients(v) {
            let odd = h % 2 != 0 && self.parity(lambda);
            out.add_scaled(
                &self.element(lambda, &self.algebra.mul(a, &coeff)),
                &one.clone().signed(odd),
            );
        }
        Ok(out)
    }

    /// `∂(e_λ⊗j) = Σ_μ e_μ⊗(b_{μλ}·j) + (−1)^{|e_λ|} e_λ⊗∂ᴶj`.
    pub fn tensor_j_diff(&self, t: &TensorJElement) -> TensorJElement {
        let env = self.algebra.envelope();
        let one = self.algebra.ring().field().one();
        let mut out = TensorJElement::zero();
        for (lambda, j) in t.components() {
            for mu in 0..lambda {
                if let Some(entry) = self.entries.get(&(mu, lambda)) {
                    out = &out + &TensorJElement::single(mu, &env.j_act_left(entry, &j));
                }
            }
            out.0.add_scaled(
                &TensorJElement::single(lambda, &env.j_diff(&j)).0,
                &one.clone().signed(self.parity(lambda)),
            );
        }
        out
    }

    pub fn tensor_j_act_right(&self, t: &TensorJElement, a: &AlgebraElement) -> TensorJElement {
        let env = self.algebra.envelope();
        let mut out = TensorJElement::zero();
        for (lambda, j) in t.components() {
            out = &out + &TensorJElement::single(lambda, &env.j_act_right(&j, a));
        }
        out
    }

    /// `e_λ ⊗ δ(b)`.
    pub fn tensor_delta(&self, basis: usize, a: &AlgebraElement) -> TensorJElement {
        TensorJElement::single(basis, &self.algebra.envelope().delta(a))
    }

    fn env_components(u: &TensorEnvElement) -> BTreeMap<usize, EnvelopeElement> {
        let mut out: BTreeMap<usize, EnvelopeElement> = BTreeMap::new();
        for (t, c) in u {
            out.entry(t.basis).or_default().add_term(t.pair.clone(), c.clone());
        }
        out
    }

    fn env_single(basis: usize, u: &EnvelopeElement) -> TensorEnvElement {
        u.map_keys(|p| TensorTerm {
            basis,
            pair: p.clone(),
        })
    }

    /// The differential of `N ⊗_B Bᵉ`, with `B` acting on the left factor of `Bᵉ`.
    pub fn tensor_env_diff(&self, u: &TensorEnvElement) -> TensorEnvElement {
        let env = self.algebra.envelope();
        let one = self.algebra.ring().field().one();
        let mut out = TensorEnvElement::new();
        for (lambda, x) in Self::env_components(u) {
            for mu in 0..lambda {
                if let Some(entry) = self.entries.get(&(mu, lambda)) {
                    out = &out + &Self::env_single(mu, &env.act_left(entry, &x));
                }
            }
            out.add_scaled(
                &Self::env_single(lambda, &env.diff(&x)),
                &one.clone().signed(self.parity(lambda)),
            );
        }
        out
    }

    /// `ρ_N(e_λ b) = e_λ ⊗ (1ᵒ⊗b)`.
    pub fn rho_n(&self, v: &ModuleElement) -> TensorEnvElement {
        let env = self.algebra.envelope();
        let mut out = TensorEnvElement::new();
        for (lambda, coeff) in self.coefficients(v) {
            out = &out + &Self::env_single(lambda, &env.rho(&coeff));
        }
        out
    }

    /// `σ_N(e_λ ⊗ u) = e_λ ⊗ σ(u)`.
    pub fn sigma_n(&self, u: &TensorEnvElement) -> TensorJElement {
        TensorJElement(u.filter(|t| !t.pair.left.is_unit()))
    }

    /// `π_N(e_λ ⊗ u) = e_λ · π(u)`.
    pub fn pi_n(&self, u: &TensorEnvElement) -> ModuleElement {
        let env = self.algebra.envelope();
        let mut out = ModuleElement::new();
        for (lambda, x) in Self::env_components(u) {
            out = &out + &self.element(lambda, &env.pi(&x));
        }
        out
    }

    pub fn iota_n(&self, t: &TensorJElement) -> TensorEnvElement {
        let env = self.algebra.envelope();
        let mut out = TensorEnvElement::new();
        for (lambda, j) in t.components() {
            out = &out + &Self::env_single(lambda, &env.iota(&j));
        }
        out
    }

    /// Ground-field basis of `N` in bidegree `(n, w)`.
    pub fn module_basis(&self, n: i32, w: i32) -> Vec<ModTerm> {
        let mut out = Vec::new();
        for (i, e) in self.basis.iter().enumerate() {
            for term in self.algebra.bidegree_basis(n - e.hom_degree, w - e.int_degree) {
                out.push(ModTerm { basis: i, term });
            }
        }
        out
    }

    /// Ground-field basis of `N ⊗_B J` in bidegree `(n, w)`, as σ-coordinate keys.
    pub fn tensor_j_basis(&self, n: i32, w: i32) -> Vec<TensorTerm> {
        let env = self.algebra.envelope();
        let mut out = Vec::new();
        for (i, e) in self.basis.iter().enumerate() {
            for pair in env.diagonal_basis(n - e.hom_degree, w - e.int_degree) {
                out.push(TensorTerm { basis: i, pair });
            }
        }
        out
    }

    /// `∂` from bidegree `(n, w)` to `(n − 1, w)` against [`Self::module_basis`].
    pub fn diff_block(&self, n: i32, w: i32) -> BlockMatrix {
        let cols = self.module_basis(n, w);
        let rows = self.module_basis(n - 1, w);
        let one = self.algebra.ring().field().one();
        let label = |t: &ModTerm| self.format_element(&LinComb::single(t.clone(), one.clone()));
        let images: Vec<ModuleElement> = cols
            .iter()
            .map(|t| self.diff(&LinComb::single(t.clone(), one.clone())))
            .collect();
        BlockMatrix::from_images(
            self.algebra.ring().field(),
            &rows,
            rows.iter().map(label).collect(),
            cols.iter().map(label).collect(),
            &images,
        )
        .expect("the differential preserves bidegree blocks")
    }

    /// `∂` on `N ⊗_B J` from bidegree `(n, w)` to `(n − 1, w)`.
    pub fn tensor_j_diff_block(&self, n: i32, w: i32) -> BlockMatrix {
        let cols = self.tensor_j_basis(n, w);
        let rows = self.tensor_j_basis(n - 1, w);
        let one = self.algebra.ring().field().one();
        let images: Vec<LinComb<TensorTerm>> = cols
            .iter()
            .map(|t| self.tensor_j_diff(&TensorJElement(LinComb::single(t.clone(), one.clone()))).0)
            .collect();
        BlockMatrix::from_images(
            self.algebra.ring().field(),
            &rows,
            rows.iter().map(|t| self.format_tensor_term(t)).collect(),
            cols.iter().map(|t| self.format_tensor_term(t)).collect(),
            &images,
        )
        .expect("the differential preserves bidegree blocks")
    }

    pub fn format_element(&self, v: &ModuleElement) -> String {
        format_sum(v.iter().map(|(t, c)| {
            (
                c.clone(),
                join_factors([
                    self.basis[t.basis].label.clone(),
                    self.algebra.format_term(&t.term),
                ]),
            )
        }))
    }

    pub fn format_tensor_term(&self, t: &TensorTerm) -> String {
        let env = self.algebra.envelope();
        let j = DiagonalElement(LinComb::single(t.pair.clone(), self.algebra.ring().field().one()));
        format!("{}⊗{}", self.basis[t.basis].label, env.format_diagonal(&j))
    }

    pub fn format_tensor(&self, t: &TensorJElement) -> String {
        format_sum(t.0.iter().map(|(k, c)| (c.clone(), self.format_tensor_term(k))))
    }

    pub fn format_tensor_env(&self, u: &TensorEnvElement) -> String {
        let env = self.algebra.envelope();
        format_sum(u.iter().map(|(t, c)| {
            (
                c.clone(),
                format!("{}⊗{}", self.basis[t.basis].label, env.format_pair(&t.pair)),
            )
        }))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::free_dga::tests::example_algebra;

    /// `e:0, e':4` with `∂e' = e·XY·r_i`; `i = 1` is the liftable module.
    pub(crate) fn rank_two(b: Arc<FreeDgAlgebra>, ring_gen: usize) -> Result<SemifreeModule> {
        let coeff = b.mul(
            &b.mul(&b.variable(0), &b.variable(1)),
            &b.from_ring(&b.ring().generator(ring_gen)),
        );
        SemifreeModule::new(
            b,
            vec![
                BasisSpec { label: "e".into(), hom_degree: 0, int_degree: None },
                BasisSpec { label: "e'".into(), hom_degree: 4, int_degree: None },
            ],
            BTreeMap::from([((0, 1), coeff)]),
        )
    }

    pub(crate) fn liftable() -> SemifreeModule {
        rank_two(Arc::new(example_algebra()), 1).unwrap()
    }

    #[test]
    fn liftable_module_is_accepted_with_inferred_weights() {
        let n = liftable();
        assert_eq!(n.basis()[0].int_degree, 0);
        assert_eq!(n.basis()[1].int_degree, 4);
        assert_eq!(n.format_element(&n.diff(&n.generator(1))), "e*X*Y*y");
    }

    #[test]
    fn x_coefficient_fails_over_xy_quotient() {
        // d(XYx) = x²Y does not vanish when only xy is killed
        match rank_two(Arc::new(example_algebra()), 0) {
            Err(Error::DifferentialSquareNonzero { nu, lambda, .. }) => {
                assert_eq!((nu.as_str(), lambda.as_str()), ("e", "e'"));
            }
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn odd_coefficient_with_nonzero_boundary_is_rejected() {
        let b = Arc::new(example_algebra());
        let x = b.variable(0);
        let r = SemifreeModule::new(
            b,
            vec![
                BasisSpec { label: "e".into(), hom_degree: 0, int_degree: None },
                BasisSpec { label: "e'".into(), hom_degree: 2, int_degree: None },
            ],
            BTreeMap::from([((0, 1), x)]),
        );
        assert!(matches!(r, Err(Error::DifferentialSquareNonzero { .. })));
    }

    #[test]
    fn structural_errors() {
        let b = Arc::new(example_algebra());
        let spec = |l: &str, h, w| BasisSpec { label: l.into(), hom_degree: h, int_degree: w };
        let lower = SemifreeModule::new(
            b.clone(),
            vec![spec("e", 0, None), spec("f", 2, None)],
            BTreeMap::from([((1, 0), b.variable(0))]),
        );
        assert!(matches!(lower, Err(Error::TriangularityViolation { .. })));
        let wrong_degree = SemifreeModule::new(
            b.clone(),
            vec![spec("e", 0, None), spec("f", 3, None)],
            BTreeMap::from([((0, 1), b.variable(0))]),
        );
        assert!(matches!(wrong_degree, Err(Error::DegreeMismatch { .. })));
        let y = b.variable(1);
        let wrong_weight = SemifreeModule::new(
            b,
            vec![spec("e", 0, Some(0)), spec("f", 3, Some(5))],
            BTreeMap::from([((0, 1), y)]),
        );
        assert!(matches!(wrong_weight, Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn module_differential_examples() {
        let n = liftable();
        let b = n.algebra();
        let r = b.from_ring(&b.ring().generator(0));
        assert!(n.diff(&n.element(0, &r)).is_zero());
        let v = n.element(1, &b.variable(0));
        assert!(n.diff(&n.diff(&v)).is_zero());
    }

    #[test]
    fn tensor_differential_examples() {
        let n = liftable();
        let b = n.algebra();
        let env = b.envelope();
        let y2 = b.divided_power(1, 2);
        let xyy = b.mul(&b.mul(&b.variable(0), &b.variable(1)), &b.from_ring(&b.ring().generator(1)));
        assert_eq!(n.tensor_j_diff(&n.tensor_delta(0, &y2)), n.tensor_delta(0, &xyy));
        assert!(n.tensor_j_diff(&TensorJElement::zero()).is_zero());
        let t = TensorJElement::single(1, &env.sigma(&env.tensor(&b.variable(0), &b.variable(1))));
        assert!(n.tensor_j_diff(&n.tensor_j_diff(&t)).is_zero());
    }

    #[test]
    fn splittings_and_their_defect() {
        let n = liftable();
        let b = n.algebra();
        let env = b.envelope();
        let ex = n.element(0, &b.variable(0));
        assert_eq!(n.rho_n(&ex), SemifreeModule::env_single(0, &env.rho(&b.variable(0))));
        assert!(n.sigma_n(&n.rho_n(&ex)).is_zero());
        let e1 = n.generator(1);
        let defect = &n.tensor_env_diff(&n.rho_n(&e1)) - &n.rho_n(&n.diff(&e1));
        let xyy = n.entry(0, 1);
        assert_eq!(defect, n.iota_n(&n.tensor_delta(0, &xyy)));
        assert!(!defect.is_zero());
    }
}
