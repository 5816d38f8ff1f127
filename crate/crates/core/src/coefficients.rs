//! Graded base rings: a ground field, or a quotient of a graded polynomial ring over it by a
//! monomial ideal.
//!
//! Elements are kept in normal form: no stored monomial is divisible by a relation monomial.
//! Every generator has positive internal degree, so each graded piece is a finite-dimensional
//! vector space over the ground field.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact_linalg::BlockMatrix;
use crate::lincomb::LinComb;
use crate::scalar::{GroundField, Scalar};

/// Exponent vector of a ring monomial.
///
/// Ordered lexicographically with larger exponents first, so `x³` precedes `y³` and the unit
/// monomial sorts last among monomials of the same ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponents(pub Vec<u32>);

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Exponents {
    pub fn unit(n: usize) -> Self {
        Exponents(vec![0; n])
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Exponents) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn product(&self, other: &Exponents) -> Exponents {
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

pub type RingElement = LinComb<Exponents>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: i32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Mul,
}

/// `k[x₁..x_m]/(monomials)` with `k` a ground field; `m = 0` gives the field itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BaseRing {
    field: GroundField,
    generators: Vec<Generator>,
    relations: Vec<Exponents>,
}

impl BaseRing {
    pub fn field_only(field: GroundField) -> Self {
        BaseRing {
            field,
            generators: Vec::new(),
            relations: Vec::new(),
        }
    }

    /// Validates generators and reduces the relations to a minimal generating set.
    pub fn new(field: GroundField, generators: Vec<Generator>, relations: Vec<Exponents>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !seen.insert(g.name.as_str()) {
                return Err(Error::DuplicateName(g.name.clone()));
            }
            if g.degree <= 0 {
                return Err(Error::NonPositiveDegree {
                    name: g.name.clone(),
                    degree: g.degree,
                });
            }
        }
        for r in &relations {
            if r.0.len() != generators.len() {
                return Err(Error::NonMonomialRelation(format!("{:?}", r.0)));
            }
            if r.is_unit() {
                return Err(Error::UnitRelation);
            }
        }
        let mut minimal: Vec<Exponents> = Vec::new();
        let mut sorted = relations;
        sorted.sort_by_key(|r| r.0.iter().sum::<u32>());
        for r in sorted {
            if !minimal.iter().any(|m| m.divides(&r)) {
                minimal.push(r);
            }
        }
        minimal.sort();
        Ok(BaseRing {
            field,
            generators,
            relations: minimal,
        })
    }

    pub fn field(&self) -> GroundField {
        self.field
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[Exponents] {
        &self.relations
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn is_field(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn unit_monomial(&self) -> Exponents {
        Exponents::unit(self.generators.len())
    }

    pub fn monomial_degree(&self, e: &Exponents) -> i32 {
        e.0.iter()
            .zip(&self.generators)
            .map(|(&k, g)| k as i32 * g.degree)
            .sum()
    }

    pub fn is_normal(&self, e: &Exponents) -> bool {
        !self.relations.iter().any(|r| r.divides(e))
    }

    /// Product of two normal monomials, or `None` when it lies in the ideal.
    pub fn mul_monomials(&self, a: &Exponents, b: &Exponents) -> Option<Exponents> {
        let p = a.product(b);
        self.is_normal(&p).then_some(p)
    }

    pub fn zero(&self) -> RingElement {
        RingElement::new()
    }

    pub fn one(&self) -> RingElement {
        RingElement::single(self.unit_monomial(), self.field.one())
    }

    pub fn scalar(&self, c: Scalar) -> RingElement {
        RingElement::single(self.unit_monomial(), c)
    }

    pub fn generator(&self, i: usize) -> RingElement {
        let mut e = self.unit_monomial();
        e.0[i] = 1;
        self.monomial(e)
    }

    /// The monomial reduced to normal form (zero when it lies in the ideal).
    pub fn monomial(&self, e: Exponents) -> RingElement {
        if self.is_normal(&e) {
            RingElement::single(e, self.field.one())
        } else {
            RingElement::new()
        }
    }

    pub fn normalize(&self, a: &RingElement) -> RingElement {
        a.filter(|e| self.is_normal(e))
    }

    /// True when `a` is a normal-form element of this ring.
    pub fn contains(&self, a: &RingElement) -> bool {
        a.iter().all(|(e, c)| {
            e.0.len() == self.generators.len() && self.is_normal(e) && self.field.contains(c)
        })
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        a + b
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let mut out = RingElement::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                if let Some(e) = self.mul_monomials(ea, eb) {
                    out.add_term(e, ca * cb);
                }
            }
        }
        out
    }

    /// Checked arithmetic: both operands must be normal-form elements of this ring.
    pub fn arith(&self, a: &RingElement, b: &RingElement, op: RingOp) -> Result<RingElement> {
        if !self.contains(a) || !self.contains(b) {
            return Err(Error::MixedRings);
        }
        Ok(match op {
            RingOp::Add => self.add(a, b),
            RingOp::Mul => self.mul(a, b),
        })
    }

    /// Internal degree of a homogeneous element; `None` for zero or inhomogeneous input.
    pub fn degree_of(&self, a: &RingElement) -> Option<i32> {
        let mut degrees = a.keys().map(|e| self.monomial_degree(e));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Ground-field basis of the degree-`w` piece, in the monomial order.
    pub fn graded_piece_basis(&self, w: i32) -> Vec<Exponents> {
        if w < 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut current = vec![0u32; self.generators.len()];
        self.enumerate(0, w, &mut current, &mut out);
        out.sort();
        out
    }

    fn enumerate(&self, i: usize, remaining: i32, current: &mut Vec<u32>, out: &mut Vec<Exponents>) {
        if i == self.generators.len() {
            if remaining == 0 {
                let e = Exponents(current.clone());
                if self.is_normal(&e) {
                    out.push(e);
                }
            }
            return;
        }
        let d = self.generators[i].degree;
        let mut k = 0;
        while k * d <= remaining {
            current[i] = k as u32;
            self.enumerate(i + 1, remaining - k * d, current, out);
            k += 1;
        }
        current[i] = 0;
    }

    /// Decides `aR ∩ bR = 0` in every degree up to `max_degree` by comparing
    /// `dim(aR_w) + dim(bR_w)` with `dim(aR_w + bR_w)` inside `R_w`.
    pub fn ideal_intersection_is_zero(&self, a: &RingElement, b: &RingElement, max_degree: i32) -> Result<bool> {
        let da = self.degree_of(a).ok_or(Error::NotHomogeneous)?;
        let db = self.degree_of(b).ok_or(Error::NotHomogeneous)?;
        for w in 0..=max_degree {
            let target = self.graded_piece_basis(w);
            let column_of = |x: &RingElement| -> Vec<Scalar> {
                target
                    .iter()
                    .map(|e| x.get(e).cloned().unwrap_or_else(|| self.field.zero()))
                    .collect()
            };
            let ua: Vec<Vec<Scalar>> = self
                .graded_piece_basis(w - da)
                .into_iter()
                .map(|m| column_of(&self.mul(a, &self.monomial(m))))
                .collect();
            let ub: Vec<Vec<Scalar>> = self
                .graded_piece_basis(w - db)
                .into_iter()
                .map(|m| column_of(&self.mul(b, &self.monomial(m))))
                .collect();
            let rank = |cols: &[Vec<Scalar>]| -> usize {
                if cols.is_empty() {
                    return 0;
                }
                BlockMatrix::from_grid(self.field, cols.to_vec())
                    .expect("rectangular")
                    .rank()
            };
            let both: Vec<Vec<Scalar>> = ua.iter().chain(&ub).cloned().collect();
            if rank(&ua) + rank(&ub) != rank(&both) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn from_integer(&self, n: &BigInt) -> RingElement {
        self.scalar(self.field.from_bigint(n))
    }

    /// Writes a monomial as `x^2*y`, or `1` for the unit.
    pub fn format_monomial(&self, e: &Exponents) -> String {
        let parts: Vec<String> = e
            .0
            .iter()
            .zip(&self.generators)
            .filter(|(&k, _)| k > 0)
            .map(|(&k, g)| if k == 1 { g.name.clone() } else { format!("{}^{}", g.name, k) })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    pub fn format_element(&self, a: &RingElement) -> String {
        crate::format::format_sum(a.iter().map(|(e, c)| (c.clone(), self.format_monomial(e))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn xy_ring() -> BaseRing {
        BaseRing::new(
            GroundField::Rationals,
            vec![
                Generator { name: "x".into(), degree: 1 },
                Generator { name: "y".into(), degree: 1 },
            ],
            vec![Exponents(vec![1, 1])],
        )
        .unwrap()
    }

    #[test]
    fn degree_two_basis() {
        let r = xy_ring();
        assert_eq!(
            r.graded_piece_basis(2),
            vec![Exponents(vec![2, 0]), Exponents(vec![0, 2])]
        );
        assert_eq!(
            r.graded_piece_basis(3),
            vec![Exponents(vec![3, 0]), Exponents(vec![0, 3])]
        );
        assert_eq!(r.graded_piece_basis(0), vec![Exponents(vec![0, 0])]);
    }

    #[test]
    fn field_is_concentrated_in_degree_zero() {
        let q = BaseRing::field_only(GroundField::Rationals);
        assert_eq!(q.graded_piece_basis(0), vec![Exponents(vec![])]);
        assert!(q.graded_piece_basis(1).is_empty());
    }

    #[test]
    fn products_in_the_quotient() {
        let r = xy_ring();
        let (x, y) = (r.generator(0), r.generator(1));
        assert!(r.mul(&x, &y).is_zero());
        assert_eq!(r.mul(&x, &x), r.monomial(Exponents(vec![2, 0])));
        let s = r.add(&x, &y);
        let expected = &r.monomial(Exponents(vec![2, 0])) + &r.monomial(Exponents(vec![0, 2]));
        assert_eq!(r.mul(&s, &s), expected);
    }

    #[test]
    fn intersection_hypothesis_holds_for_xy_quotient() {
        let r = xy_ring();
        assert!(r
            .ideal_intersection_is_zero(&r.generator(0), &r.generator(1), 6)
            .unwrap());
        let poly = BaseRing::new(r.field(), r.generators().to_vec(), vec![]).unwrap();
        assert!(!poly
            .ideal_intersection_is_zero(&poly.generator(0), &poly.generator(1), 2)
            .unwrap());
    }

    #[test]
    fn construction_errors() {
        let g = |n: &str, d| Generator { name: n.into(), degree: d };
        let f = GroundField::Rationals;
        assert_eq!(
            BaseRing::new(f, vec![g("x", 1), g("x", 1)], vec![]),
            Err(Error::DuplicateName("x".into()))
        );
        assert!(matches!(
            BaseRing::new(f, vec![g("x", 0)], vec![]),
            Err(Error::NonPositiveDegree { .. })
        ));
        assert_eq!(
            BaseRing::new(f, vec![g("x", 1)], vec![Exponents(vec![0])]),
            Err(Error::UnitRelation)
        );
    }

    #[test]
    fn redundant_relations_are_dropped() {
        let r = BaseRing::new(
            GroundField::Rationals,
            vec![Generator { name: "x".into(), degree: 1 }],
            vec![Exponents(vec![3]), Exponents(vec![2])],
        )
        .unwrap();
        assert_eq!(r.relations(), &[Exponents(vec![2])]);
    }

    #[test]
    fn mixed_ring_arith_is_rejected() {
        let r = xy_ring();
        let q = BaseRing::field_only(GroundField::Rationals);
        assert_eq!(r.arith(&q.one(), &r.one(), RingOp::Mul), Err(Error::MixedRings));
    }
}
