//! Free DG extensions `B = R⟨X₁,…,Xₙ⟩` of a base ring, strictly graded-commutative.
//!
//! Odd variables are exterior (`X² = 0`); even variables carry divided powers `Y^(n)` with
//! `Y^(m)·Y^(n) = binom(m+n, n)·Y^(m+n)` and `d(Y^(n)) = Y^(n−1)·dY`. A monomial is written in
//! declaration order; multiplying two monomials costs one sign per pair of odd letters that
//! have to pass each other.
//!
//! Every element carries a bidegree: the homological degree from the variables, and an
//! internal degree from the variables' internal weights plus the coefficient monomial's degree.
//! The differential preserves internal degree, which keeps every bidegree piece finite.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::coefficients::{BaseRing, Exponents, RingElement};
use crate::error::{Error, Result};
use crate::exact_linalg::BlockMatrix;
use crate::format::{format_sum, join_factors};
use crate::lincomb::LinComb;
use crate::scalar::Scalar;

/// Exponent vector over the adjoined variables: `0/1` for odd variables, the divided-power
/// index for even ones. Ordered like [`Exponents`], larger exponents first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn unit(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

/// Basis element `m·r` of `B` over the ground field: an algebra monomial times a normal
/// coefficient monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub mono: Monomial,
    pub ring: Exponents,
}

pub type AlgebraElement = LinComb<Term>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    pub hom_degree: i32,
    pub int_degree: i32,
    pub differential: AlgebraElement,
}

impl Variable {
    pub fn is_odd(&self) -> bool {
        self.hom_degree % 2 != 0
    }
}

/// A variable as declared, before its internal degree is fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableSpec {
    pub name: String,
    pub hom_degree: i32,
    /// Required when the differential is zero; otherwise checked against it.
    pub int_degree: Option<i32>,
    /// Expressed over the full variable list of the algebra being built.
    pub differential: AlgebraElement,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeDgAlgebra {
    ring: BaseRing,
    variables: Vec<Variable>,
}

impl FreeDgAlgebra {
    /// `B = R` with zero differential.
    pub fn trivial(ring: BaseRing) -> Self {
        FreeDgAlgebra {
            ring,
            variables: Vec::new(),
        }
    }

    /// Variables with zero differential and weight `0`, only for arithmetic on expressions
    /// before the real differentials are known.
    pub(crate) fn skeleton(ring: BaseRing, variables: &[(String, i32)]) -> Self {
        FreeDgAlgebra {
            ring,
            variables: variables
                .iter()
                .map(|(name, h)| Variable {
                    name: name.clone(),
                    hom_degree: *h,
                    int_degree: 0,
                    differential: AlgebraElement::new(),
                })
                .collect(),
        }
    }

    /// Adjoins the variables in order, checking degrees, forward references, internal
    /// homogeneity of each `dX`, and `d(dX) = 0`.
    pub fn new(ring: BaseRing, specs: Vec<VariableSpec>) -> Result<Self> {
        let n = specs.len();
        let mut names = BTreeSet::new();
        for g in ring.generators() {
            names.insert(g.name.clone());
        }
        let mut alg = FreeDgAlgebra {
            ring,
            variables: Vec::with_capacity(n),
        };
        for (i, spec) in specs.into_iter().enumerate() {
            if !names.insert(spec.name.clone()) {
                return Err(Error::DuplicateName(spec.name));
            }
            if spec.hom_degree < 1 {
                return Err(Error::GradingViolation {
                    var: spec.name,
                    detail: format!("homological degree {} is not positive", spec.hom_degree),
                });
            }
            if let Some(w) = spec.int_degree {
                if w < 0 {
                    return Err(Error::GradingViolation {
                        var: spec.name,
                        detail: format!("internal degree {w} is negative"),
                    });
                }
            }
            let mut int_degree = spec.int_degree;
            for (t, c) in &spec.differential {
                if t.mono.0.len() != n || t.ring.0.len() != alg.ring.num_generators() {
                    return Err(Error::MixedAlgebras);
                }
                if !alg.ring.is_normal(&t.ring) || !alg.ring.field().contains(c) {
                    return Err(Error::MixedAlgebras);
                }
                if let Some(j) = t.mono.0.iter().enumerate().skip(i).find(|(_, &e)| e > 0).map(|(j, _)| j) {
                    let uses = if j < alg.variables.len() {
                        alg.variables[j].name.clone()
                    } else {
                        format!("variable #{}", j + 1)
                    };
                    return Err(Error::ForwardReference { var: spec.name, uses });
                }
                let (h, w) = alg.partial_bidegree(t);
                if h != spec.hom_degree - 1 {
                    return Err(Error::GradingViolation {
                        var: spec.name.clone(),
                        detail: format!(
                            "d{} has a term of homological degree {h}, expected {}",
                            spec.name,
                            spec.hom_degree - 1
                        ),
                    });
                }
                match int_degree {
                    None => int_degree = Some(w),
                    Some(expected) if expected != w => {
                        return Err(Error::GradingViolation {
                            var: spec.name.clone(),
                            detail: format!(
                                "d{} has a term of internal degree {w}, expected {expected}",
                                spec.name
                            ),
                        })
                    }
                    Some(_) => {}
                }
            }
            let Some(int_degree) = int_degree else {
                return Err(Error::GradingViolation {
                    var: spec.name.clone(),
                    detail: format!("d{} = 0, so the internal degree must be declared", spec.name),
                });
            };
            // pad the monomials of earlier variables so the partial algebra can act on dX
            let residue = alg.diff_padded(&spec.differential);
            if !residue.is_zero() {
                let mut padded = alg.clone();
                padded.variables.push(Variable {
                    name: spec.name.clone(),
                    hom_degree: spec.hom_degree,
                    int_degree,
                    differential: AlgebraElement::new(),
                });
                return Err(Error::CycleViolation {
                    var: spec.name,
                    residue: padded.format_padded(&residue, n),
                });
            }
            alg.variables.push(Variable {
                name: spec.name,
                hom_degree: spec.hom_degree,
                int_degree,
                differential: spec.differential,
            });
        }
        Ok(alg)
    }

    // During construction the stored differentials already use the full variable count `n`
    // while `self.variables` is a prefix; these helpers only look at that prefix.
    fn partial_bidegree(&self, t: &Term) -> (i32, i32) {
        let mut h = 0;
        let mut w = self.ring.monomial_degree(&t.ring);
        for (e, v) in t.mono.0.iter().zip(&self.variables) {
            h += *e as i32 * v.hom_degree;
            w += *e as i32 * v.int_degree;
        }
        (h, w)
    }

    fn diff_padded(&self, a: &AlgebraElement) -> AlgebraElement {
        let k = self.variables.len();
        let truncated = a.map_keys(|t| Term {
            mono: Monomial(t.mono.0[..k].to_vec()),
            ring: t.ring.clone(),
        });
        let full_len = a.keys().next().map_or(k, |t| t.mono.0.len());
        self.diff(&truncated).map_keys(|t| {
            let mut m = t.mono.0.clone();
            m.resize(full_len, 0);
            Term {
                mono: Monomial(m),
                ring: t.ring.clone(),
            }
        })
    }

    fn format_padded(&self, a: &AlgebraElement, _n: usize) -> String {
        let k = self.variables.len();
        self.format_element(&a.map_keys(|t| Term {
            mono: Monomial(t.mono.0[..k].to_vec()),
            ring: t.ring.clone(),
        }))
    }

    pub fn ring(&self) -> &BaseRing {
        &self.ring
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v.name == name)
    }

    pub fn unit_monomial(&self) -> Monomial {
        Monomial::unit(self.variables.len())
    }

    pub fn unit_term(&self) -> Term {
        Term {
            mono: self.unit_monomial(),
            ring: self.ring.unit_monomial(),
        }
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement::new()
    }

    pub fn one(&self) -> AlgebraElement {
        AlgebraElement::single(self.unit_term(), self.ring.field().one())
    }

    pub fn scalar(&self, c: Scalar) -> AlgebraElement {
        AlgebraElement::single(self.unit_term(), c)
    }

    pub fn from_ring(&self, r: &RingElement) -> AlgebraElement {
        r.map_keys(|e| Term {
            mono: self.unit_monomial(),
            ring: e.clone(),
        })
    }

    pub fn variable(&self, i: usize) -> AlgebraElement {
        self.divided_power(i, 1)
    }

    /// `Y^(n)`; for odd variables only `n ≤ 1` is nonzero.
    pub fn divided_power(&self, i: usize, n: u32) -> AlgebraElement {
        if self.variables[i].is_odd() && n > 1 {
            return self.zero();
        }
        let mut m = self.unit_monomial();
        m.0[i] = n;
        self.monomial(m)
    }

    pub fn monomial(&self, m: Monomial) -> AlgebraElement {
        AlgebraElement::single(
            Term {
                mono: m,
                ring: self.ring.unit_monomial(),
            },
            self.ring.field().one(),
        )
    }

    pub fn term_element(&self, t: Term) -> AlgebraElement {
        AlgebraElement::single(t, self.ring.field().one())
    }

    pub fn monomial_hom_degree(&self, m: &Monomial) -> i32 {
        m.0.iter()
            .zip(&self.variables)
            .map(|(&e, v)| e as i32 * v.hom_degree)
            .sum()
    }

    pub fn monomial_int_degree(&self, m: &Monomial) -> i32 {
        m.0.iter()
            .zip(&self.variables)
            .map(|(&e, v)| e as i32 * v.int_degree)
            .sum()
    }

    /// Parity of the homological degree of a monomial.
    pub fn monomial_is_odd(&self, m: &Monomial) -> bool {
        m.0.iter()
            .zip(&self.variables)
            .filter(|(&e, v)| e > 0 && v.is_odd())
            .count()
            % 2
            == 1
    }

    pub fn bidegree(&self, t: &Term) -> (i32, i32) {
        (
            self.monomial_hom_degree(&t.mono),
            self.monomial_int_degree(&t.mono) + self.ring.monomial_degree(&t.ring),
        )
    }

    /// Bidegree of a nonzero homogeneous element.
    pub fn homogeneous_bidegree(&self, a: &AlgebraElement) -> Option<(i32, i32)> {
        let mut it = a.keys().map(|t| self.bidegree(t));
        let first = it.next()?;
        it.all(|b| b == first).then_some(first)
    }

    /// True when every term is a well-formed basis element of this algebra.
    pub fn contains(&self, a: &AlgebraElement) -> bool {
        a.iter().all(|(t, c)| {
            t.mono.0.len() == self.variables.len()
                && t.mono
                    .0
                    .iter()
                    .zip(&self.variables)
                    .all(|(&e, v)| !v.is_odd() || e <= 1)
                && t.ring.0.len() == self.ring.num_generators()
                && self.ring.is_normal(&t.ring)
                && self.ring.field().contains(c)
        })
    }

    /// Product of monomials: the integer multiplicity (sign and divided-power binomials
    /// included) and the resulting monomial, or `None` when an odd variable repeats.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(num_bigint::BigInt, Monomial)> {
        let mut out = Vec::with_capacity(a.0.len());
        let mut coeff = BigUint::from(1u32);
        let mut swaps = 0usize;
        let mut odd_in_b_before = 0usize;
        for (i, v) in self.variables.iter().enumerate() {
            let (ea, eb) = (a.0[i], b.0[i]);
            if v.is_odd() {
                if ea + eb > 1 {
                    return None;
                }
                if ea == 1 {
                    // X_i from `a` must pass every odd letter of `b` with a smaller index
                    swaps += odd_in_b_before;
                }
                if eb == 1 {
                    odd_in_b_before += 1;
                }
            } else if ea > 0 && eb > 0 {
                coeff *= num_integer::binomial(BigUint::from(ea + eb), BigUint::from(eb));
            }
            out.push(ea + eb);
        }
        let mut c = num_bigint::BigInt::from(coeff);
        if swaps % 2 == 1 {
            c = -c;
        }
        Some((c, Monomial(out)))
    }

    pub fn mul_terms(&self, a: &Term, b: &Term) -> Option<(Scalar, Term)> {
        let ring = self.ring.mul_monomials(&a.ring, &b.ring)?;
        let (c, mono) = self.mul_monomials(&a.mono, &b.mono)?;
        let c = self.ring.field().from_bigint(&c);
        (!c.is_zero()).then_some((c, Term { mono, ring }))
    }

    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::new();
        for (ta, ca) in a {
            for (tb, cb) in b {
                if let Some((c, t)) = self.mul_terms(ta, tb) {
                    out.add_term(t, &(ca * cb) * &c);
                }
            }
        }
        out
    }

    /// Checked product: both factors must belong to this algebra.
    pub fn try_mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        if !self.contains(a) || !self.contains(b) {
            return Err(Error::MixedAlgebras);
        }
        Ok(self.mul(a, b))
    }

    /// Multiplies every term by a coefficient monomial.
    pub fn mul_ring_monomial(&self, a: &AlgebraElement, r: &Exponents) -> AlgebraElement {
        let mut out = AlgebraElement::new();
        for (t, c) in a {
            if let Some(ring) = self.ring.mul_monomials(&t.ring, r) {
                out.add_term(
                    Term {
                        mono: t.mono.clone(),
                        ring,
                    },
                    c.clone(),
                );
            }
        }
        out
    }

    /// Differential of a single monomial via the Leibniz rule over its ordered factors.
    pub fn diff_monomial(&self, m: &Monomial) -> AlgebraElement {
        let mut out = AlgebraElement::new();
        let mut prefix_degree = 0i32;
        for (i, v) in self.variables.iter().enumerate() {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut prefix = self.unit_monomial();
            prefix.0[..i].copy_from_slice(&m.0[..i]);
            let mut suffix = self.unit_monomial();
            suffix.0[i + 1..].copy_from_slice(&m.0[i + 1..]);
            // d(Y^(e)) = Y^(e-1)·dY, and d(X) = dX for odd X (e = 1)
            let factor = self.mul(&self.divided_power(i, e - 1), &v.differential);
            let piece = self.mul(
                &self.mul(&self.monomial(prefix), &factor),
                &self.monomial(suffix),
            );
            let sign = self.ring.field().one().signed(prefix_degree % 2 != 0);
            out.add_scaled(&piece, &sign);
            prefix_degree += e as i32 * v.hom_degree;
        }
        out
    }

    pub fn diff(&self, a: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::new();
        for (t, c) in a {
            let dm = self.diff_monomial(&t.mono);
            out.add_scaled(&self.mul_ring_monomial(&dm, &t.ring), c);
        }
        out
    }

    /// Monomials of homological degree `n` (an `R`-basis of `B_n`), in monomial order.
    pub fn monomials_of_degree(&self, n: i32) -> Vec<Monomial> {
        let mut out = Vec::new();
        if n >= 0 {
            let mut current = vec![0u32; self.variables.len()];
            self.enumerate(0, n, &mut current, &mut out);
        }
        out.sort();
        out
    }

    fn enumerate(&self, i: usize, remaining: i32, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == self.variables.len() {
            if remaining == 0 {
                out.push(Monomial(current.clone()));
            }
            return;
        }
        let v = &self.variables[i];
        let max = if v.is_odd() { 1 } else { u32::MAX };
        let mut k = 0u32;
        while k <= max && k as i32 * v.hom_degree <= remaining {
            current[i] = k;
            self.enumerate(i + 1, remaining - k as i32 * v.hom_degree, current, out);
            k += 1;
        }
        current[i] = 0;
    }

    /// Ground-field basis of the bidegree `(n, w)` piece.
    pub fn bidegree_basis(&self, n: i32, w: i32) -> Vec<Term> {
        let mut out = Vec::new();
        for mono in self.monomials_of_degree(n) {
            let rest = w - self.monomial_int_degree(&mono);
            for ring in self.ring.graded_piece_basis(rest) {
                out.push(Term {
                    mono: mono.clone(),
                    ring,
                });
            }
        }
        out
    }

    /// `d` from bidegree `(n, w)` to `(n − 1, w)` against [`Self::bidegree_basis`].
    pub fn diff_block(&self, n: i32, w: i32) -> BlockMatrix {
        let cols = self.bidegree_basis(n, w);
        let rows = self.bidegree_basis(n - 1, w);
        let images: Vec<AlgebraElement> = cols
            .iter()
            .map(|t| self.diff(&self.term_element(t.clone())))
            .collect();
        BlockMatrix::from_images(
            self.ring.field(),
            &rows,
            rows.iter().map(|t| self.format_term(t)).collect(),
            cols.iter().map(|t| self.format_term(t)).collect(),
            &images,
        )
        .expect("the differential preserves bidegree blocks")
    }

    /// Writes a monomial as `X*Y^(2)`, or `1` for the unit.
    pub fn format_monomial(&self, m: &Monomial) -> String {
        join_factors(m.0.iter().zip(&self.variables).filter(|(&e, _)| e > 0).map(|(&e, v)| {
            if e == 1 {
                v.name.clone()
            } else {
                format!("{}^({})", v.name, e)
            }
        }))
    }

    pub fn format_term(&self, t: &Term) -> String {
        join_factors([self.format_monomial(&t.mono), self.ring.format_monomial(&t.ring)])
    }

    pub fn format_element(&self, a: &AlgebraElement) -> String {
        format_sum(a.iter().map(|(t, c)| (c.clone(), self.format_term(t))))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::coefficients::Generator;
    use crate::scalar::GroundField;

    pub(crate) fn ring_with(relations: Vec<Vec<u32>>) -> BaseRing {
        BaseRing::new(
            GroundField::Rationals,
            vec![
                Generator { name: "x".into(), degree: 1 },
                Generator { name: "y".into(), degree: 1 },
            ],
            relations.into_iter().map(Exponents).collect(),
        )
        .unwrap()
    }

    /// `X`, `Y` over a two-variable ring with `dX = x`, `dY = X*y`.
    pub(crate) fn specs(ring: &BaseRing) -> Vec<VariableSpec> {
        let pad = |r: RingElement, lead: Vec<u32>| -> AlgebraElement {
            r.map_keys(|e| Term {
                mono: Monomial(lead.clone()),
                ring: e.clone(),
            })
        };
        vec![
            VariableSpec {
                name: "X".into(),
                hom_degree: 1,
                int_degree: None,
                differential: pad(ring.generator(0), vec![0, 0]),
            },
            VariableSpec {
                name: "Y".into(),
                hom_degree: 2,
                int_degree: None,
                differential: pad(ring.generator(1), vec![1, 0]),
            },
        ]
    }

    pub(crate) fn example_algebra() -> FreeDgAlgebra {
        let ring = ring_with(vec![vec![1, 1]]);
        let s = specs(&ring);
        FreeDgAlgebra::new(ring, s).unwrap()
    }

    #[test]
    fn example_algebra_is_accepted() {
        let b = example_algebra();
        assert_eq!(b.variables()[0].int_degree, 1);
        assert_eq!(b.variables()[1].int_degree, 2);
    }

    #[test]
    fn missing_relation_breaks_cycle_condition() {
        let ring = ring_with(vec![]);
        let s = specs(&ring);
        match FreeDgAlgebra::new(ring, s) {
            Err(Error::CycleViolation { var, residue }) => {
                assert_eq!(var, "Y");
                assert_eq!(residue, "x*y");
            }
            other => panic!("expected a cycle violation, got {other:?}"),
        }
    }

    #[test]
    fn forward_reference_is_rejected() {
        let ring = ring_with(vec![vec![1, 1]]);
        let mut s = specs(&ring);
        s[0].differential = AlgebraElement::single(
            Term {
                mono: Monomial(vec![0, 1]),
                ring: ring.unit_monomial(),
            },
            ring.field().one(),
        );
        s[0].hom_degree = 3;
        assert!(matches!(
            FreeDgAlgebra::new(ring, s),
            Err(Error::ForwardReference { .. })
        ));
    }

    #[test]
    fn zero_differential_needs_declared_weight() {
        let ring = ring_with(vec![vec![1, 1]]);
        let mut s = specs(&ring);
        s.truncate(1);
        s[0].differential = AlgebraElement::new();
        assert!(matches!(
            FreeDgAlgebra::new(ring.clone(), s.clone()),
            Err(Error::GradingViolation { .. })
        ));
        s[0].int_degree = Some(3);
        assert_eq!(FreeDgAlgebra::new(ring, s).unwrap().variables()[0].int_degree, 3);
    }

    #[test]
    fn no_variables_gives_the_ring() {
        let ring = ring_with(vec![vec![1, 1]]);
        let b = FreeDgAlgebra::new(ring.clone(), vec![]).unwrap();
        assert_eq!(b, FreeDgAlgebra::trivial(ring.clone()));
        let r = b.from_ring(&ring.generator(0));
        assert!(b.diff(&r).is_zero());
    }

    #[test]
    fn products_follow_sign_and_divided_power_rules() {
        let b = example_algebra();
        let (x, y) = (b.variable(0), b.variable(1));
        assert!(b.mul(&x, &x).is_zero());
        let two = b.scalar(b.ring().field().from_i64(2));
        assert_eq!(b.mul(&y, &y), b.mul(&two, &b.divided_power(1, 2)));
        assert!(b.mul(&b.mul(&x, &y), &x).is_zero());
        assert_eq!(b.mul(&y, &x), b.mul(&x, &y));
    }

    #[test]
    fn differentials_of_named_elements() {
        let b = example_algebra();
        let (x, y) = (b.variable(0), b.variable(1));
        let xr = b.from_ring(&b.ring().generator(0));
        let yr = b.from_ring(&b.ring().generator(1));
        // d(Y^(2)) = X*Y*y
        let xyy = b.mul(&b.mul(&x, &y), &yr);
        assert_eq!(b.diff(&b.divided_power(1, 2)), xyy);
        // d(XY) = x*Y
        assert_eq!(b.diff(&b.mul(&x, &y)), b.mul(&xr, &y));
        assert!(b.diff(&xr).is_zero());
    }

    #[test]
    fn bases_in_low_degrees() {
        let b = example_algebra();
        assert_eq!(b.monomials_of_degree(3), vec![Monomial(vec![1, 1])]);
        assert_eq!(b.monomials_of_degree(0), vec![Monomial(vec![0, 0])]);
        let basis = b.bidegree_basis(3, 4);
        let printed: Vec<String> = basis.iter().map(|t| b.format_term(t)).collect();
        assert_eq!(printed, vec!["X*Y*x", "X*Y*y"]);
    }
}
