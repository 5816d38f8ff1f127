//! Seeded generators of random rings, algebras, modules and elements.
//!
//! Valid objects are grown one generator at a time: each new differential is a random
//! combination of a kernel basis of the previous differential, so `d² = 0` holds by
//! construction rather than by rejection sampling.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::coefficients::{BaseRing, Exponents, Generator};
use crate::envelope::{DiagonalElement, EnvelopeElement, PairTerm};
use crate::exact_linalg::BlockMatrix;
use crate::free_dga::{AlgebraElement, FreeDgAlgebra, Term, VariableSpec};
use crate::lincomb::LinComb;
use crate::obstruction::Connection;
use crate::scalar::{GroundField, Scalar};
use crate::semifree_module::{BasisElement, BasisSpec, ModTerm, ModuleElement, SemifreeModule, TensorJElement, TensorTerm};

/// A small nonzero integer, occasionally a fraction over the rationals.
pub fn scalar<R: Rng>(rng: &mut R, field: GroundField) -> Scalar {
    let mut n: i64 = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        n = -n;
    }
    if field == GroundField::Rationals && rng.gen_bool(0.2) {
        let d: i64 = rng.gen_range(2..=3);
        return field
            .from_ratio(&n.into(), &d.into())
            .expect("nonzero denominator");
    }
    field.from_i64(n)
}

/// A sparse random combination of `basis`, each key kept with probability `density`.
pub fn combination<R: Rng, K: Ord + Clone>(
    rng: &mut R,
    field: GroundField,
    basis: &[K],
    density: f64,
) -> LinComb<K> {
    let mut out = LinComb::new();
    for k in basis {
        if rng.gen_bool(density) {
            out.add_term(k.clone(), scalar(rng, field));
        }
    }
    out
}

fn from_columns<K: Ord + Clone>(basis: &[K], v: &[Scalar]) -> LinComb<K> {
    basis.iter().cloned().zip(v.iter().cloned()).collect()
}

/// A random element of `ker m`, read against `basis`; zero if the kernel is.
fn random_cycle<R: Rng, K: Ord + Clone>(rng: &mut R, m: &BlockMatrix, basis: &[K]) -> LinComb<K> {
    let field = m.field();
    let kernel = m.kernel_basis();
    let mut out = LinComb::new();
    for v in &kernel {
        if rng.gen_bool(0.6) {
            out.add_scaled(&from_columns(basis, v), &scalar(rng, field));
        }
    }
    if out.is_zero() {
        if let Some(v) = kernel.choose(rng) {
            out = from_columns(basis, v);
        }
    }
    out
}

/// `k[x₁..x_m]/(random monomials)` with `m ≤ 3` generators of degree `1` or `2`.
pub fn ring<R: Rng>(rng: &mut R, field: GroundField) -> BaseRing {
    let m = rng.gen_range(1..=3usize);
    let names = ["x", "y", "z"];
    let generators = (0..m)
        .map(|i| Generator {
            name: names[i].to_string(),
            degree: if rng.gen_bool(0.75) { 1 } else { 2 },
        })
        .collect();
    let mut relations = Vec::new();
    for _ in 0..rng.gen_range(0..=2) {
        let e: Vec<u32> = (0..m).map(|_| rng.gen_range(0..=2)).collect();
        if e.iter().sum::<u32>() >= 2 {
            relations.push(Exponents(e));
        }
    }
    BaseRing::new(field, generators, relations).expect("random relations are valid monomials")
}

/// Up to `max_vars` variables of homological degree `1..=3`, each killing a random cycle.
pub fn algebra<R: Rng>(rng: &mut R, ring: BaseRing, max_vars: usize) -> FreeDgAlgebra {
    let mut alg = FreeDgAlgebra::trivial(ring.clone());
    let mut specs: Vec<VariableSpec> = Vec::new();
    let names = ["X", "Y", "Z", "U", "V", "W"];
    for i in 0..max_vars.min(names.len()) {
        let h = rng.gen_range(1..=3);
        let mut chosen = None;
        for _ in 0..8 {
            let w = rng.gen_range(1..=3);
            let basis = alg.bidegree_basis(h - 1, w);
            if basis.is_empty() {
                continue;
            }
            let cycle = random_cycle(rng, &alg.diff_block(h - 1, w), &basis);
            if !cycle.is_zero() {
                chosen = Some(cycle);
                break;
            }
        }
        let Some(dx) = chosen else { continue };
        let n = specs.len() + 1;
        let pad = |a: &AlgebraElement| -> AlgebraElement {
            a.map_keys(|t| {
                let mut m = t.mono.0.clone();
                m.resize(n, 0);
                Term {
                    mono: crate::free_dga::Monomial(m),
                    ring: t.ring.clone(),
                }
            })
        };
        for s in &mut specs {
            s.differential = pad(&s.differential);
        }
        specs.push(VariableSpec {
            name: names[i].to_string(),
            hom_degree: h,
            int_degree: None,
            differential: pad(&dx),
        });
        alg = FreeDgAlgebra::new(ring.clone(), specs.clone()).expect("cycles give a valid algebra");
    }
    alg
}

/// A random homogeneous element of bidegree `(n, w)`, possibly zero.
pub fn algebra_element<R: Rng>(rng: &mut R, b: &FreeDgAlgebra, n: i32, w: i32) -> AlgebraElement {
    combination(rng, b.ring().field(), &b.bidegree_basis(n, w), 0.5)
}

/// A nonzero homogeneous element with bidegree at most `(max_n, max_w)`, if one exists
/// within a few tries.
pub fn nonzero_algebra_element<R: Rng>(
    rng: &mut R,
    b: &FreeDgAlgebra,
    max_n: i32,
    max_w: i32,
) -> Option<AlgebraElement> {
    for _ in 0..32 {
        let (n, w) = (rng.gen_range(0..=max_n), rng.gen_range(0..=max_w));
        let a = algebra_element(rng, b, n, w);
        if !a.is_zero() {
            return Some(a);
        }
    }
    None
}

pub fn envelope_element<R: Rng>(rng: &mut R, b: &FreeDgAlgebra, n: i32, w: i32) -> EnvelopeElement {
    combination(rng, b.ring().field(), &b.envelope().env_basis(n, w), 0.4)
}

pub fn diagonal_element<R: Rng>(rng: &mut R, b: &FreeDgAlgebra, n: i32, w: i32) -> DiagonalElement {
    let basis: Vec<PairTerm> = b.envelope().diagonal_basis(n, w);
    DiagonalElement(combination(rng, b.ring().field(), &basis, 0.4))
}

/// A valid semifree module of rank `rank` with bidegrees at most `(max_n, max_w)`.
///
/// Each `∂e_k` is a random cycle of the module spanned by the earlier basis elements.
pub fn module<R: Rng>(
    rng: &mut R,
    b: Arc<FreeDgAlgebra>,
    rank: usize,
    max_n: i32,
    max_w: i32,
) -> SemifreeModule {
    let mut basis: Vec<BasisElement> = Vec::new();
    let mut entries: BTreeMap<(usize, usize), AlgebraElement> = BTreeMap::new();
    for k in 0..rank {
        let label = format!("e{k}");
        let partial = SemifreeModule::new_unchecked(b.clone(), basis.clone(), entries.clone());
        let mut chosen = None;
        if k > 0 && rng.gen_bool(0.85) {
            for _ in 0..12 {
                let h = rng.gen_range(1..=max_n);
                let w = rng.gen_range(0..=max_w);
                let source = partial.module_basis(h - 1, w);
                if source.is_empty() {
                    continue;
                }
                let cycle = random_cycle(rng, &partial.diff_block(h - 1, w), &source);
                if !cycle.is_zero() {
                    chosen = Some((h, w, cycle));
                    break;
                }
            }
        }
        let (h, w) = match &chosen {
            Some((h, w, cycle)) => {
                for mu in 0..k {
                    let c = partial.coefficient(cycle, mu);
                    if !c.is_zero() {
                        entries.insert((mu, k), c);
                    }
                }
                (*h, *w)
            }
            None => (rng.gen_range(0..=max_n / 2), rng.gen_range(0..=max_w / 2)),
        };
        basis.push(BasisElement {
            label,
            hom_degree: h,
            int_degree: w,
        });
    }
    let specs = basis
        .into_iter()
        .map(|e| BasisSpec {
            label: e.label,
            hom_degree: e.hom_degree,
            int_degree: Some(e.int_degree),
        })
        .collect();
    SemifreeModule::new(b, specs, entries).expect("random cycles give a valid module")
}

/// A triangular module of consistent bidegrees whose entries are arbitrary, so `∂² = 0`
/// may fail.
pub fn unchecked_module<R: Rng>(
    rng: &mut R,
    b: Arc<FreeDgAlgebra>,
    rank: usize,
    max_n: i32,
    max_w: i32,
) -> SemifreeModule {
    let mut basis = Vec::new();
    let mut h = rng.gen_range(0..=1);
    let mut w = rng.gen_range(0..=1);
    for k in 0..rank {
        basis.push(BasisElement {
            label: format!("e{k}"),
            hom_degree: h,
            int_degree: w,
        });
        h = (h + rng.gen_range(1..=3)).min(max_n);
        w = (w + rng.gen_range(0..=2)).min(max_w);
    }
    let mut entries = BTreeMap::new();
    for lambda in 0..rank {
        for mu in 0..lambda {
            let (eh, ew) = (
                basis[lambda].hom_degree - basis[mu].hom_degree - 1,
                basis[lambda].int_degree - basis[mu].int_degree,
            );
            if eh >= 0 && rng.gen_bool(0.6) {
                let v = algebra_element(rng, &b, eh, ew);
                if !v.is_zero() {
                    entries.insert((mu, lambda), v);
                }
            }
        }
    }
    SemifreeModule::new_unchecked(b, basis, entries)
}

pub fn module_element<R: Rng>(rng: &mut R, n: &SemifreeModule, h: i32, w: i32) -> ModuleElement {
    let basis: Vec<ModTerm> = n.module_basis(h, w);
    combination(rng, n.algebra().ring().field(), &basis, 0.5)
}

pub fn tensor_j_element<R: Rng>(rng: &mut R, n: &SemifreeModule, h: i32, w: i32) -> TensorJElement {
    let basis: Vec<TensorTerm> = n.tensor_j_basis(h, w);
    TensorJElement(combination(rng, n.algebra().ring().field(), &basis, 0.4))
}

/// A connection with random values of the right bidegrees.
pub fn connection<R: Rng>(rng: &mut R, n: &SemifreeModule) -> Connection {
    let gammas = n
        .basis()
        .iter()
        .map(|e| tensor_j_element(rng, n, e.hom_degree, e.int_degree))
        .collect();
    Connection::new(n, gammas).expect("values drawn from the matching bidegree")
}
