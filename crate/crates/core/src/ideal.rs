//! Ideals with cached reduced Gröbner bases, and the ideal-level toolbox:
//! sums, products, intersections, colon ideals, and saturation.
//!
//! Intersections go through the standard auxiliary-variable elimination:
//! `I ∩ J = (t·I + (1−t)·J) ∩ S` with `t` eliminated by a block order.
//! Colons reduce to intersections: `I : f = (I ∩ (f))/f`, and
//! `I : J = ∩_j I : f_j`.

use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, GbBudget, ReducedGB};
use crate::monomial::Monomial;
use crate::poly::{Polynomial, Term};
use crate::ring::{same_ring, MonomialOrder, Ring};
use std::sync::{Arc, Mutex};

/// A finitely generated ideal, with a write-once cached reduced GB.
#[derive(Debug)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    homogeneous: bool,
    cached_gb: Mutex<Option<Arc<ReducedGB>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            homogeneous: self.homogeneous,
            cached_gb: Mutex::new(self.cached_gb.lock().unwrap().clone()),
        }
    }
}

impl Ideal {
    /// Builds an ideal from generators, dropping zeros.
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Ideal> {
        let mut kept = Vec::with_capacity(gens.len());
        for g in gens {
            same_ring(ring, g.ring())?;
            if !g.is_zero() {
                kept.push(g);
            }
        }
        let homogeneous = kept.iter().all(|g| g.is_homogeneous());
        Ok(Ideal {
            ring: ring.clone(),
            gens: kept,
            homogeneous,
            cached_gb: Mutex::new(None),
        })
    }

    pub fn parse(ring: &Ring, gens: &[&str]) -> Result<Ideal> {
        let polys: Result<Vec<Polynomial>> = gens
            .iter()
            .map(|s| crate::script::parse_polynomial(ring, s))
            .collect();
        Ideal::new(ring, polys?)
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::new(ring, vec![]).unwrap()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    /// The cached reduced GB, computing it on first use.
    pub fn gb(&self, budget: &GbBudget) -> Result<Arc<ReducedGB>> {
        {
            let guard = self.cached_gb.lock().unwrap();
            if let Some(gb) = guard.as_ref() {
                return Ok(gb.clone());
            }
        }
        let gb = if self.gens.is_empty() {
            Arc::new(crate::groebner::empty_reduced_gb(&self.ring))
        } else {
            Arc::new(groebner_basis(&self.gens, budget)?)
        };
        let mut guard = self.cached_gb.lock().unwrap();
        if guard.is_none() {
            *guard = Some(gb.clone());
        }
        Ok(guard.as_ref().unwrap().clone())
    }

    pub fn contains(&self, f: &Polynomial, budget: &GbBudget) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        self.gb(budget)?.contains(f)
    }

    /// Ideal equality via reduced-GB equality (unique per order).
    pub fn equals(&self, other: &Ideal, budget: &GbBudget) -> Result<bool> {
        same_ring(&self.ring, &other.ring)?;
        Ok(self.gb(budget)?.elements() == other.gb(budget)?.elements())
    }

    pub fn is_unit(&self, budget: &GbBudget) -> Result<bool> {
        Ok(self.gb(budget)?.is_unit_ideal())
    }

    /// Replaces the generator list by the reduced GB (canonical form).
    pub fn canonicalize(&self, budget: &GbBudget) -> Result<Ideal> {
        let gb = self.gb(budget)?;
        Ideal::new(&self.ring, gb.elements().to_vec())
    }

    /// Number of minimal generators (computed from a graded minimalization
    /// of the given generating set; valid for homogeneous ideals).
    pub fn minimal_generators(&self, budget: &GbBudget) -> Result<Vec<Polynomial>> {
        if !self.homogeneous {
            return Err(Error::precondition("minimal generators need a homogeneous ideal"));
        }
        // Sort by degree; a generator is redundant iff it lies in the ideal
        // of the earlier ones.
        let mut sorted = self.gens.clone();
        sorted.sort_by_key(|g| g.total_degree().unwrap_or(0));
        let mut kept: Vec<Polynomial> = Vec::new();
        for g in sorted {
            if kept.is_empty() {
                kept.push(g);
                continue;
            }
            let partial = Ideal::new(&self.ring, kept.clone())?;
            if !partial.contains(&g, budget)? {
                kept.push(g);
            }
        }
        Ok(kept)
    }
}

/// Generator concatenation.
pub fn ideal_sum(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    same_ring(a.ring(), b.ring())?;
    let mut gens = a.generators().to_vec();
    gens.extend_from_slice(b.generators());
    Ideal::new(a.ring(), gens)
}

/// Pairwise products of generators.
pub fn ideal_product(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    same_ring(a.ring(), b.ring())?;
    let mut gens = Vec::with_capacity(a.generators().len() * b.generators().len());
    for f in a.generators() {
        for g in b.generators() {
            gens.push(f.mul_unchecked(g));
        }
    }
    Ideal::new(a.ring(), gens)
}

/// Lifts a polynomial into a ring extended by `front` new variables in front.
fn lift_front(p: &Polynomial, ext: &Ring, front: usize) -> Polynomial {
    let terms: Vec<Term> = p
        .terms()
        .iter()
        .map(|t| {
            let mut exps = vec![0u16; front];
            exps.extend_from_slice(t.mono.exps());
            Term {
                mono: Monomial::from_exps(&exps),
                coeff: t.coeff,
            }
        })
        .collect();
    Polynomial::from_terms(ext, terms)
}

/// Projects a polynomial not involving the first `front` variables back down.
fn project_front(p: &Polynomial, base: &Ring, front: usize) -> Polynomial {
    let terms: Vec<Term> = p
        .terms()
        .iter()
        .map(|t| {
            debug_assert!(t.mono.exps()[..front].iter().all(|&e| e == 0));
            Term {
                mono: Monomial::from_exps(&t.mono.exps()[front..]),
                coeff: t.coeff,
            }
        })
        .collect();
    Polynomial::from_terms(base, terms)
}

/// Intersection via elimination of one auxiliary variable:
/// `I ∩ J = (t·I + (1−t)·J) ∩ S`.
pub fn intersect(a: &Ideal, b: &Ideal, budget: &GbBudget) -> Result<Ideal> {
    same_ring(a.ring(), b.ring())?;
    let ring = a.ring();
    if a.generators().is_empty() || b.generators().is_empty() {
        return Ok(Ideal::zero(ring));
    }
    let mut aux = String::from("t_aux");
    while ring.var_index(&aux).is_some() {
        aux.push('_');
    }
    let ext = ring.extend_front(&[&aux], MonomialOrder::Elimination(1))?;
    let t = Polynomial::var(&ext, 0);
    let one_minus_t = Polynomial::one(&ext).sub(&t)?;
    let mut gens = Vec::new();
    for g in a.generators() {
        gens.push(t.mul_unchecked(&lift_front(g, &ext, 1)));
    }
    for g in b.generators() {
        gens.push(one_minus_t.mul_unchecked(&lift_front(g, &ext, 1)));
    }
    let gb = groebner_basis(&gens, budget)?;
    let kept: Vec<Polynomial> = gb
        .elements()
        .iter()
        .filter(|g| {
            g.terms()
                .iter()
                .all(|term| term.mono.exps()[0] == 0)
        })
        .map(|g| project_front(g, ring, 1))
        .collect();
    Ideal::new(ring, kept)
}

/// Colon by a single polynomial: `I : (f) = (I ∩ (f)) / f`.
pub fn quotient_by_element(i: &Ideal, f: &Polynomial, budget: &GbBudget) -> Result<Ideal> {
    same_ring(i.ring(), f.ring())?;
    if f.is_zero() {
        return Err(Error::precondition("colon by the zero polynomial"));
    }
    let principal = Ideal::new(i.ring(), vec![f.clone()])?;
    let meet = intersect(i, &principal, budget)?;
    let gens: Result<Vec<Polynomial>> = meet
        .generators()
        .iter()
        .map(|g| g.div_exact(f))
        .collect();
    Ideal::new(i.ring(), gens?)
}

/// The colon ideal `I : J = ∩_j I : (f_j)`.
pub fn quotient(i: &Ideal, j: &Ideal, budget: &GbBudget) -> Result<Ideal> {
    same_ring(i.ring(), j.ring())?;
    if j.generators().is_empty() {
        // I : (0) = (1).
        return Ideal::new(i.ring(), vec![Polynomial::one(i.ring())]);
    }
    let mut acc: Option<Ideal> = None;
    for f in j.generators() {
        let q = quotient_by_element(i, f, budget)?;
        acc = Some(match acc {
            None => q,
            Some(prev) => intersect(&prev, &q, budget)?,
        });
    }
    Ok(acc.unwrap())
}

/// Stabilized iterated quotient `I : f^∞`.
pub fn saturate(i: &Ideal, f: &Polynomial, budget: &GbBudget) -> Result<Ideal> {
    same_ring(i.ring(), f.ring())?;
    if f.is_zero() {
        return Err(Error::precondition("saturation by zero"));
    }
    if f.is_constant() {
        return Ok(i.clone());
    }
    let mut current = i.clone();
    loop {
        let next = quotient_by_element(&current, f, budget)?;
        if next.equals(&current, budget)? {
            return Ok(current.canonicalize(budget)?);
        }
        current = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    fn b() -> GbBudget {
        GbBudget::default()
    }

    #[test]
    fn sum_and_product() {
        let r = RingSpec::grevlex(&["x", "y"]);
        let ix = Ideal::parse(&r, &["x"]).unwrap();
        let iy = Ideal::parse(&r, &["y"]).unwrap();
        let s = ideal_sum(&ix, &iy).unwrap();
        assert!(s.equals(&Ideal::parse(&r, &["x", "y"]).unwrap(), &b()).unwrap());
        let m = Ideal::parse(&r, &["x", "y"]).unwrap();
        let m2 = ideal_product(&m, &m).unwrap();
        assert!(m2
            .equals(&Ideal::parse(&r, &["x^2", "x*y", "y^2"]).unwrap(), &b())
            .unwrap());
    }

    #[test]
    fn intersect_coprime_principal() {
        let r = RingSpec::grevlex(&["x", "y"]);
        let ix = Ideal::parse(&r, &["x"]).unwrap();
        let iy = Ideal::parse(&r, &["y"]).unwrap();
        let meet = intersect(&ix, &iy, &b()).unwrap();
        assert!(meet.equals(&Ideal::parse(&r, &["x*y"]).unwrap(), &b()).unwrap());
    }

    #[test]
    fn intersect_idempotent() {
        let r = RingSpec::grevlex(&["x", "y"]);
        let i = Ideal::parse(&r, &["x^2", "x*y - y^2"]).unwrap();
        let meet = intersect(&i, &i, &b()).unwrap();
        assert!(meet.equals(&i, &b()).unwrap());
    }

    #[test]
    fn intersect_of_two_linear_primes_is_the_products() {
        // (x,y,z,w) ∩ (u,v,s,t) in 8 variables is generated by the 16
        // products. Brute-force oracle: a bidegree-(1,1) form lies in the
        // intersection iff it is a combination of the products; we check the
        // two GBs agree.
        let r = RingSpec::grevlex(&["x", "y", "z", "w", "u", "v", "s", "t"]);
        let i1 = Ideal::parse(&r, &["x", "y", "z", "w"]).unwrap();
        let i2 = Ideal::parse(&r, &["u", "v", "s", "t"]).unwrap();
        let meet = intersect(&i1, &i2, &b()).unwrap();
        let mut prods = Vec::new();
        for a in ["x", "y", "z", "w"] {
            for c in ["u", "v", "s", "t"] {
                prods.push(format!("{a}*{c}"));
            }
        }
        let prod_refs: Vec<&str> = prods.iter().map(|s| s.as_str()).collect();
        let expected = Ideal::parse(&r, &prod_refs).unwrap();
        assert!(meet.equals(&expected, &b()).unwrap());
    }

    #[test]
    fn colon_basics() {
        let r = RingSpec::grevlex(&["x", "y"]);
        let i = Ideal::parse(&r, &["x*y"]).unwrap();
        let q = quotient(&i, &Ideal::parse(&r, &["x"]).unwrap(), &b()).unwrap();
        assert!(q.equals(&Ideal::parse(&r, &["y"]).unwrap(), &b()).unwrap());
    }

    #[test]
    fn colon_derived_example() {
        // (x^2, y^2) : (x*y) = (x, y); brute-force check over monomials of
        // degree <= 2: m*x*y in (x^2,y^2) iff m in (x,y).
        let r = RingSpec::grevlex(&["x", "y"]);
        let i = Ideal::parse(&r, &["x^2", "y^2"]).unwrap();
        let q = quotient(&i, &Ideal::parse(&r, &["x*y"]).unwrap(), &b()).unwrap();
        assert!(q.equals(&Ideal::parse(&r, &["x", "y"]).unwrap(), &b()).unwrap());
    }

    #[test]
    fn colon_laws() {
        // (I:J)·J ⊆ I and I ⊆ I:J.
        let r = RingSpec::grevlex(&["x", "y", "z"]);
        let i = Ideal::parse(&r, &["x^2*y", "y*z^2", "x*z"]).unwrap();
        let j = Ideal::parse(&r, &["x*y", "z"]).unwrap();
        let q = quotient(&i, &j, &b()).unwrap();
        let prod = ideal_product(&q, &j).unwrap();
        for g in prod.generators() {
            assert!(i.contains(g, &b()).unwrap());
        }
        for g in i.generators() {
            assert!(q.contains(g, &b()).unwrap());
        }
    }

    #[test]
    fn saturation_examples() {
        let r = RingSpec::grevlex(&["x", "y"]);
        // (x*y) : y^inf = (x).
        let i = Ideal::parse(&r, &["x*y"]).unwrap();
        let f = crate::script::parse_polynomial(&r, "y").unwrap();
        let s = saturate(&i, &f, &b()).unwrap();
        assert!(s.equals(&Ideal::parse(&r, &["x"]).unwrap(), &b()).unwrap());
        // (x^2, x*y) = x*(x, y): every component sits inside V(x), so
        // saturating by x gives the unit ideal. By hand: I : x = (x, y),
        // then (x, y) : x = (1), fixpoint (1).
        let i2 = Ideal::parse(&r, &["x^2", "x*y"]).unwrap();
        let fx = crate::script::parse_polynomial(&r, "x").unwrap();
        let s2 = saturate(&i2, &fx, &b()).unwrap();
        assert!(s2.is_unit(&b()).unwrap());
        // The single quotient step does strip the embedded factor.
        let q = quotient_by_element(&i2, &fx, &b()).unwrap();
        assert!(q.equals(&Ideal::parse(&r, &["x", "y"]).unwrap(), &b()).unwrap());
        // Saturating by a unit changes nothing.
        let one = Polynomial::one(&r);
        let s3 = saturate(&i2, &one, &b()).unwrap();
        assert!(s3.equals(&i2, &b()).unwrap());
    }

    #[test]
    fn intersect_commutes_and_contains() {
        let r = RingSpec::grevlex(&["x", "y", "z"]);
        let i = Ideal::parse(&r, &["x^2", "y"]).unwrap();
        let j = Ideal::parse(&r, &["x", "z^2"]).unwrap();
        let ij = intersect(&i, &j, &b()).unwrap();
        let ji = intersect(&j, &i, &b()).unwrap();
        assert!(ij.equals(&ji, &b()).unwrap());
        for g in ij.generators() {
            assert!(i.contains(g, &b()).unwrap());
            assert!(j.contains(g, &b()).unwrap());
        }
    }
}
