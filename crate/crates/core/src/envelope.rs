//! The enveloping algebra `Bᵉ = Bᵒ ⊗_R B`, the splittings `π`, `ρ`, `σ`, the diagonal
//! ideal `J = ker π` and the universal derivation `δ`.
//!
//! A basis element of `Bᵉ` is a pair of algebra monomials with one central coefficient
//! monomial. Elements of `J` are stored in σ-coordinates: since `σ` fixes `J` and kills the
//! pairs `1ᵒ⊗m`, the coordinates of `j` against `{σ(m₁ᵒ⊗m₂) : m₁ ≠ 1}` are exactly the terms of
//! `j` whose left monomial is not the unit.

use crate::coefficients::Exponents;
use crate::error::{Error, Result};
use crate::exact_linalg::{homology_dim, BlockMatrix};
use crate::format::{format_sum, join_factors};
use crate::free_dga::{AlgebraElement, FreeDgAlgebra, Monomial, Term};
use crate::lincomb::LinComb;
use crate::scalar::Scalar;

/// The basis element `leftᵒ⊗right · ring` of `Bᵉ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairTerm {
    pub left: Monomial,
    pub right: Monomial,
    pub ring: Exponents,
}

pub type EnvelopeElement = LinComb<PairTerm>;

/// An element of `J` in σ-coordinates; no stored pair has a unit left monomial.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DiagonalElement(pub EnvelopeElement);

impl DiagonalElement {
    pub fn zero() -> Self {
        DiagonalElement(EnvelopeElement::new())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn coords(&self) -> &EnvelopeElement {
        &self.0
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        DiagonalElement(self.0.scale(c))
    }
}

impl std::ops::Add for &DiagonalElement {
    type Output = DiagonalElement;
    fn add(self, rhs: Self) -> DiagonalElement {
        DiagonalElement(&self.0 + &rhs.0)
    }
}

impl std::ops::Sub for &DiagonalElement {
    type Output = DiagonalElement;
    fn sub(self, rhs: Self) -> DiagonalElement {
        DiagonalElement(&self.0 - &rhs.0)
    }
}

impl std::ops::Neg for &DiagonalElement {
    type Output = DiagonalElement;
    fn neg(self) -> DiagonalElement {
        DiagonalElement(-&self.0)
    }
}

/// Borrowed view of `Bᵉ` and `J` over a fixed algebra.
#[derive(Clone, Copy, Debug)]
pub struct Envelope<'a> {
    b: &'a FreeDgAlgebra,
}

impl FreeDgAlgebra {
    pub fn envelope(&self) -> Envelope<'_> {
        Envelope { b: self }
    }
}

impl<'a> Envelope<'a> {
    pub fn algebra(&self) -> &'a FreeDgAlgebra {
        self.b
    }

    pub fn bidegree(&self, p: &PairTerm) -> (i32, i32) {
        let b = self.b;
        (
            b.monomial_hom_degree(&p.left) + b.monomial_hom_degree(&p.right),
            b.monomial_int_degree(&p.left)
                + b.monomial_int_degree(&p.right)
                + b.ring().monomial_degree(&p.ring),
        )
    }

    pub fn homogeneous_bidegree(&self, u: &EnvelopeElement) -> Option<(i32, i32)> {
        let mut it = u.keys().map(|p| self.bidegree(p));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn contains(&self, u: &EnvelopeElement) -> bool {
        let b = self.b;
        u.iter().all(|(p, c)| {
            let left = Term {
                mono: p.left.clone(),
                ring: b.ring().unit_monomial(),
            };
            let right = Term {
                mono: p.right.clone(),
                ring: p.ring.clone(),
            };
            b.contains(&AlgebraElement::single(left, b.ring().field().one()))
                && b.contains(&AlgebraElement::single(right, c.clone()))
        })
    }

    /// `aᵒ ⊗ c`, with the coefficients of both factors moved to the centre.
    pub fn tensor(&self, a: &AlgebraElement, c: &AlgebraElement) -> EnvelopeElement {
        let mut out = EnvelopeElement::new();
        for (ta, ca) in a {
            for (tc, cc) in c {
                if let Some(ring) = self.b.ring().mul_monomials(&ta.ring, &tc.ring) {
                    out.add_term(
                        PairTerm {
                            left: ta.mono.clone(),
                            right: tc.mono.clone(),
                            ring,
                        },
                        ca * cc,
                    );
                }
            }
        }
        out
    }

    pub fn one(&self) -> EnvelopeElement {
        self.tensor(&self.b.one(), &self.b.one())
    }

    fn mul_ring(&self, u: &EnvelopeElement, r: &Exponents) -> EnvelopeElement {
        let mut out = EnvelopeElement::new();
        for (p, c) in u {
            if let Some(ring) = self.b.ring().mul_monomials(&p.ring, r) {
                out.add_term(
                    PairTerm {
                        left: p.left.clone(),
                        right: p.right.clone(),
                        ring,
                    },
                    c.clone(),
                );
            }
        }
        out
    }

    fn pair_element(&self, p: &PairTerm) -> (AlgebraElement, AlgebraElement) {
        (
            self.b.monomial(p.left.clone()),
            self.b.term_element(Term {
                mono: p.right.clone(),
                ring: p.ring.clone(),
            }),
        )
    }

    /// `(b₁ᵒ⊗b₂)(b₁'ᵒ⊗b₂') = (−1)^{|b₁'|(|b₁|+|b₂|)} (b₁'b₁)ᵒ⊗b₂b₂'`.
    pub fn mul(&self, u: &EnvelopeElement, v: &EnvelopeElement) -> EnvelopeElement {
        let b = self.b;
        let field = b.ring().field();
        let mut out = EnvelopeElement::new();
        for (p, cp) in u {
            let outer = b.monomial_hom_degree(&p.left) + b.monomial_hom_degree(&p.right);
            for (q, cq) in v {
                let Some(ring) = b.ring().mul_monomials(&p.ring, &q.ring) else { continue };
                let Some((sl, left)) = b.mul_monomials(&q.left, &p.left) else { continue };
                let Some((sr, right)) = b.mul_monomials(&p.right, &q.right) else { continue };
                let odd = (b.monomial_hom_degree(&q.left) * outer) % 2 != 0;
                let c = field.from_bigint(&(sl * sr)).signed(odd);
                if c.is_zero() {
                    continue;
                }
                out.add_term(PairTerm { left, right, ring }, &(cp * cq) * &c);
            }
        }
        out
    }

    /// Checked product: both factors must be well-formed over this algebra.
    pub fn try_mul(&self, u: &EnvelopeElement, v: &EnvelopeElement) -> Result<EnvelopeElement> {
        if !self.contains(u) || !self.contains(v) {
            return Err(Error::MixedAlgebras);
        }
        Ok(self.mul(u, v))
    }

    /// `d(b₁ᵒ⊗b₂) = (db₁)ᵒ⊗b₂ + (−1)^{|b₁|} b₁ᵒ⊗db₂`.
    pub fn diff(&self, u: &EnvelopeElement) -> EnvelopeElement {
        let b = self.b;
        let mut out = EnvelopeElement::new();
        for (p, c) in u {
            let (l, r) = (b.monomial(p.left.clone()), b.monomial(p.right.clone()));
            let first = self.tensor(&b.diff(&l), &r);
            let second = self.tensor(&l, &b.diff(&r));
            let sign = b.ring().field().one().signed(b.monomial_is_odd(&p.left));
            let mut piece = first;
            piece.add_scaled(&second, &sign);
            out.add_scaled(&self.mul_ring(&piece, &p.ring), c);
        }
        out
    }

    pub fn pi(&self, u: &EnvelopeElement) -> AlgebraElement {
        let mut out = AlgebraElement::new();
        for (p, c) in u {
            let (l, r) = self.pair_element(p);
            out.add_scaled(&self.b.mul(&l, &r), c);
        }
        out
    }

    pub fn rho(&self, a: &AlgebraElement) -> EnvelopeElement {
        self.tensor(&self.b.one(), a)
    }

    pub fn sigma(&self, u: &EnvelopeElement) -> DiagonalElement {
        self.strip(u)
    }

    /// Drops the pairs with unit left monomial: the σ-coordinates of `u − ρπ(u)`.
    pub fn strip(&self, u: &EnvelopeElement) -> DiagonalElement {
        DiagonalElement(u.filter(|p| !p.left.is_unit()))
    }

    /// The inclusion `J → Bᵉ`.
    pub fn iota(&self, j: &DiagonalElement) -> EnvelopeElement {
        &j.0 - &self.rho(&self.pi(&j.0))
    }

    /// Reads an element of `Bᵉ` as an element of `J`, if `π` kills it.
    pub fn to_diagonal(&self, u: &EnvelopeElement) -> Result<DiagonalElement> {
        if self.pi(u).is_zero() {
            Ok(self.strip(u))
        } else {
            Err(Error::NotInDiagonalIdeal)
        }
    }

    /// `δ(b) = bᵒ⊗1 − 1ᵒ⊗b`.
    pub fn delta(&self, a: &AlgebraElement) -> DiagonalElement {
        self.strip(&self.tensor(a, &self.b.one()))
    }

    /// `b·(b₁ᵒ⊗b₂) = (bb₁)ᵒ⊗b₂`.
    pub fn act_left(&self, a: &AlgebraElement, u: &EnvelopeElement) -> EnvelopeElement {
        let mut out = EnvelopeElement::new();
        for (p, c) in u {
            let l = self.b.mul(a, &self.b.monomial(p.left.clone()));
            let r = self.b.term_element(Term {
                mono: p.right.clone(),
                ring: p.ring.clone(),
            });
            out.add_scaled(&self.tensor(&l, &r), c);
        }
        out
    }

    /// `(b₁ᵒ⊗b₂)·b = b₁ᵒ⊗b₂b`.
    pub fn act_right(&self, u: &EnvelopeElement, a: &AlgebraElement) -> EnvelopeElement {
        let mut out = EnvelopeElement::new();
        for (p, c) in u {
            let r = self.b.mul(
                &self.b.term_element(Term {
                    mono: p.right.clone(),
                    ring: p.ring.clone(),
                }),
                a,
            );
            out.add_scaled(&self.tensor(&self.b.monomial(p.left.clone()), &r), c);
        }
        out
    }

    /// `∂ᴶ` in σ-coordinates; `ρπ` of the coordinates only contributes unit-left pairs.
    pub fn j_diff(&self, j: &DiagonalElement) -> DiagonalElement {
        self.strip(&self.diff(&j.0))
    }

    pub fn j_act_right(&self, j: &DiagonalElement, a: &AlgebraElement) -> DiagonalElement {
        DiagonalElement(self.act_right(&j.0, a))
    }

    pub fn j_act_left(&self, a: &AlgebraElement, j: &DiagonalElement) -> DiagonalElement {
        self.strip(&self.act_left(a, &self.iota(j)))
    }

    /// Pairs `(m₁, m₂)` of monomials with `|m₁| + |m₂| = n`, optionally excluding `m₁ = 1`.
    fn monomial_pairs(&self, n: i32, skip_unit_left: bool) -> Vec<(Monomial, Monomial)> {
        let mut out = Vec::new();
        for n1 in 0..=n.max(-1) {
            let lefts = self.b.monomials_of_degree(n1);
            let rights = self.b.monomials_of_degree(n - n1);
            for l in &lefts {
                if skip_unit_left && l.is_unit() {
                    continue;
                }
                for r in &rights {
                    out.push((l.clone(), r.clone()));
                }
            }
        }
        out
    }

    fn pair_basis(&self, n: i32, w: i32, skip_unit_left: bool) -> Vec<PairTerm> {
        let b = self.b;
        let mut out = Vec::new();
        for (left, right) in self.monomial_pairs(n, skip_unit_left) {
            let rest = w - b.monomial_int_degree(&left) - b.monomial_int_degree(&right);
            for ring in b.ring().graded_piece_basis(rest) {
                out.push(PairTerm {
                    left: left.clone(),
                    right: right.clone(),
                    ring,
                });
            }
        }
        out.sort();
        out
    }

    /// Ground-field basis of `Bᵉ` in bidegree `(n, w)`.
    pub fn env_basis(&self, n: i32, w: i32) -> Vec<PairTerm> {
        self.pair_basis(n, w, false)
    }

    /// Ground-field basis `{σ(m₁ᵒ⊗m₂)·r : m₁ ≠ 1}` of `J` in bidegree `(n, w)`, as the
    /// σ-coordinate keys.
    pub fn diagonal_basis(&self, n: i32, w: i32) -> Vec<PairTerm> {
        self.pair_basis(n, w, true)
    }

    /// `∂ᴶ` from bidegree `(n, w)` to `(n − 1, w)` against the diagonal bases.
    pub fn diff_block(&self, n: i32, w: i32) -> BlockMatrix {
        let field = self.b.ring().field();
        let cols = self.diagonal_basis(n, w);
        let rows = self.diagonal_basis(n - 1, w);
        let images: Vec<EnvelopeElement> = cols
            .iter()
            .map(|p| self.j_diff(&DiagonalElement(LinComb::single(p.clone(), field.one()))).0)
            .collect();
        BlockMatrix::from_images(
            field,
            &rows,
            rows.iter().map(|p| self.format_basis_element(p)).collect(),
            cols.iter().map(|p| self.format_basis_element(p)).collect(),
            &images,
        )
        .expect("the differential preserves bidegree blocks")
    }

    /// `dim H_n(J)` in internal degree `w`.
    pub fn homology_dim(&self, n: i32, w: i32) -> Result<usize> {
        homology_dim(&self.diff_block(n + 1, w), &self.diff_block(n, w))
    }

    /// The basis element `σ(m₁ᵒ⊗m₂)·r` of `J`.
    pub fn format_basis_element(&self, p: &PairTerm) -> String {
        self.format_diagonal(&DiagonalElement(LinComb::single(
            p.clone(),
            self.b.ring().field().one(),
        )))
    }

    fn format_factor(&self, m: &Monomial) -> String {
        let s = self.b.format_monomial(m);
        if s.contains('*') || s.contains('^') {
            format!("({})", s.replace('*', ""))
        } else {
            s
        }
    }

    /// `m₁ᵒ⊗m₂ · r`, dropping the coefficient when it is `1`.
    pub fn format_pair(&self, p: &PairTerm) -> String {
        let body = format!(
            "{}^o⊗{}",
            self.format_factor(&p.left),
            self.format_factor(&p.right)
        );
        if p.ring.is_unit() {
            body
        } else {
            format!("{body} · {}", self.b.ring().format_monomial(&p.ring))
        }
    }

    pub fn format_element(&self, u: &EnvelopeElement) -> String {
        format_sum(u.iter().map(|(p, c)| (c.clone(), self.format_pair(p))))
    }

    /// σ-coordinates printed as `σ(m₁ᵒ⊗m₂)·r` sums.
    pub fn format_diagonal(&self, j: &DiagonalElement) -> String {
        format_sum(j.0.iter().map(|(p, c)| {
            let body = format!(
                "σ({}^o⊗{})",
                self.format_factor(&p.left),
                self.format_factor(&p.right)
            );
            (
                c.clone(),
                join_factors([body, self.b.ring().format_monomial(&p.ring)]),
            )
        }))
    }

    /// `J` elements written out in `Bᵉ` through the inclusion.
    pub fn format_diagonal_raw(&self, j: &DiagonalElement) -> String {
        self.format_element(&self.iota(j))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_dga::tests::example_algebra;

    struct Names {
        b: FreeDgAlgebra,
    }

    impl Names {
        fn x(&self) -> AlgebraElement {
            self.b.variable(0)
        }
        fn y(&self) -> AlgebraElement {
            self.b.variable(1)
        }
        fn r(&self, i: usize) -> AlgebraElement {
            self.b.from_ring(&self.b.ring().generator(i))
        }
        fn one(&self) -> AlgebraElement {
            self.b.one()
        }
        fn m(&self, a: &AlgebraElement, c: &AlgebraElement) -> AlgebraElement {
            self.b.mul(a, c)
        }
    }

    fn names() -> Names {
        Names { b: example_algebra() }
    }

    #[test]
    fn products_in_the_envelope() {
        let n = names();
        let e = n.b.envelope();
        let xo = e.tensor(&n.x(), &n.one());
        let yo = e.tensor(&n.y(), &n.one());
        assert_eq!(e.mul(&xo, &yo), e.tensor(&n.m(&n.x(), &n.y()), &n.one()));
        assert!(e.mul(&xo, &xo).is_zero());
        let rb = e.rho(&n.y());
        let rc = e.rho(&n.x());
        assert_eq!(e.mul(&rb, &rc), e.rho(&n.m(&n.y(), &n.x())));
    }

    #[test]
    fn differential_in_the_envelope() {
        let n = names();
        let e = n.b.envelope();
        let u = e.tensor(&n.x(), &n.x());
        let expected = &e.tensor(&n.one(), &n.m(&n.x(), &n.r(0)))
            - &e.tensor(&n.x(), &n.r(0));
        assert_eq!(e.diff(&u), expected);
        assert!(e.diff(&e.one()).is_zero());
        let v = e.tensor(&n.x(), &n.y());
        assert!(e.diff(&e.diff(&v)).is_zero());
    }

    #[test]
    fn splittings_on_named_elements() {
        let n = names();
        let e = n.b.envelope();
        let xy = n.m(&n.x(), &n.y());
        assert_eq!(e.pi(&e.tensor(&n.x(), &n.y())), xy);
        assert!(e.sigma(&e.rho(&xy)).is_zero());
        let u = e.tensor(&n.x(), &xy);
        assert_eq!(e.iota(&e.sigma(&u)), u);
    }

    #[test]
    fn universal_derivation_on_named_elements() {
        let n = names();
        let e = n.b.envelope();
        assert!(e.delta(&n.one()).is_zero());
        assert!(e.delta(&n.r(1)).is_zero());
        let xyy = n.m(&n.m(&n.x(), &n.y()), &n.r(1));
        let expected = e.sigma(&e.tensor(&n.m(&n.x(), &n.y()), &n.r(1)));
        assert_eq!(e.delta(&xyy), expected);
        assert_eq!(e.format_diagonal(&expected), "σ((XY)^o⊗1)*y");
    }

    #[test]
    fn actions_on_named_elements() {
        let n = names();
        let e = n.b.envelope();
        let u = e.tensor(&n.x(), &n.y());
        assert_eq!(e.act_right(&u, &n.x()), e.tensor(&n.x(), &n.m(&n.x(), &n.y())));
        assert!(e.act_left(&n.x(), &u).is_zero());
        let j = e.sigma(&u);
        assert!(e.pi(&e.iota(&e.j_act_left(&n.y(), &j))).is_zero());
    }

    #[test]
    fn diagonal_bases_in_low_degrees() {
        let n = names();
        let e = n.b.envelope();
        let show = |v: Vec<PairTerm>| -> Vec<String> { v.iter().map(|p| e.format_pair(p)).collect() };
        let mut top = show(e.diagonal_basis(4, 4));
        top.sort();
        let mut want = vec!["X^o⊗(XY)", "Y^o⊗Y", "(XY)^o⊗X", "(Y^(2))^o⊗1"];
        want.sort();
        assert_eq!(top, want);
        let mid = e.diagonal_basis(3, 4);
        assert_eq!(mid.len(), 6);
        assert!(e.diagonal_basis(0, 3).is_empty());
    }

    #[test]
    fn differential_block_from_four_four() {
        let n = names();
        let e = n.b.envelope();
        let block = e.diff_block(4, 4);
        assert_eq!((block.nrows(), block.ncols()), (6, 4));
        assert_eq!(block.rank(), 4);
    }

    #[test]
    fn boundary_of_second_divided_power() {
        let n = names();
        let e = n.b.envelope();
        let y2 = n.b.divided_power(1, 2);
        let xyy = n.m(&n.m(&n.x(), &n.y()), &n.r(1));
        assert_eq!(e.j_diff(&e.delta(&y2)), e.delta(&xyy));
    }
}
