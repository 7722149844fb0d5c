//! Sparse multivariate polynomials over GF(p): sorted term lists, exact
//! arithmetic, and canonical printing.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::monomial::{cmp_unchecked, Monomial};
use crate::ring::{same_ring, Ring};
use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub mono: Monomial,
    pub coeff: Scalar,
}

/// A polynomial: term list sorted strictly descending in the ring's order,
/// no zero coefficients, no duplicate monomials. Zero is the empty list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Ring, c: Scalar) -> Self {
        let c = c % ring.characteristic();
        let mut terms = Vec::new();
        if c != 0 {
            terms.push(Term {
                mono: Monomial::one(ring.num_vars()),
                coeff: c,
            });
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Polynomial::constant(ring, 1)
    }

    /// The variable with the given index.
    pub fn var(ring: &Ring, i: usize) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: vec![Term {
                mono: Monomial::var(ring.num_vars(), i),
                coeff: 1,
            }],
        }
    }

    pub fn var_named(ring: &Ring, name: &str) -> Result<Self> {
        let i = ring
            .var_index(name)
            .ok_or_else(|| Error::invalid(format!("unknown variable {name:?}")))?;
        Ok(Polynomial::var(ring, i))
    }

    pub fn monomial(ring: &Ring, mono: Monomial, coeff: Scalar) -> Self {
        let coeff = coeff % ring.characteristic();
        let mut terms = Vec::new();
        if coeff != 0 {
            debug_assert_eq!(mono.len(), ring.num_vars());
            terms.push(Term { mono, coeff });
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds from an arbitrary term list: sorts, merges, drops zeros.
    pub fn from_terms(ring: &Ring, mut terms: Vec<Term>) -> Self {
        let order = ring.order().clone();
        terms.sort_by(|a, b| cmp_unchecked(&b.mono, &a.mono, &order));
        let fp = ring.fp();
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            if let Some(last) = out.last_mut() {
                if last.mono == t.mono {
                    last.coeff = fp.add(last.coeff, t.coeff);
                    if last.coeff == 0 {
                        out.pop();
                    }
                    continue;
                }
            }
            if t.coeff % fp.prime() != 0 {
                out.push(Term {
                    mono: t.mono,
                    coeff: t.coeff % fp.prime(),
                });
            }
        }
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    #[inline]
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|t| t.mono.is_one())
    }

    #[inline]
    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mono)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    /// True when every term has the same total degree (or the polynomial is 0).
    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(first) => {
                let d = first.mono.degree();
                self.terms.iter().all(|t| t.mono.degree() == d)
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        same_ring(&self.ring, &other.ring)?;
        Ok(self.add_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &Polynomial) -> Polynomial {
        let order = self.ring.order();
        let fp = self.ring.fp();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match cmp_unchecked(&a.mono, &b.mono, order) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = fp.add(a.coeff, b.coeff);
                    if c != 0 {
                        out.push(Term {
                            mono: a.mono.clone(),
                            coeff: c,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn neg(&self) -> Polynomial {
        let fp = self.ring.fp();
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mono: t.mono.clone(),
                    coeff: fp.neg(t.coeff),
                })
                .collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Scalar) -> Polynomial {
        let fp = self.ring.fp();
        let c = c % fp.prime();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mono: t.mono.clone(),
                    coeff: fp.mul(t.coeff, c),
                })
                .collect(),
        }
    }

    /// `c * m * self`, the workhorse of reduction loops.
    pub fn mul_term(&self, mono: &Monomial, c: Scalar) -> Polynomial {
        let fp = self.ring.fp();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mono: t.mono.mul(mono),
                    coeff: fp.mul(t.coeff, c),
                })
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        same_ring(&self.ring, &other.ring)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Polynomial::zero(&self.ring);
        for t in &small.terms {
            acc = acc.add_unchecked(&large.mul_term(&t.mono, t.coeff));
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Makes the leading coefficient 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            None => self.clone(),
            Some(lt) => self.scale(self.ring.fp().inv(lt.coeff)),
        }
    }

    /// Exact division by `divisor`; errors when the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Polynomial> {
        same_ring(&self.ring, &divisor.ring)?;
        if divisor.is_zero() {
            return Err(Error::invalid("division by zero polynomial"));
        }
        let fp = self.ring.fp();
        let dlt = divisor.leading_term().unwrap();
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.ring);
        while let Some(lt) = rem.leading_term() {
            if !dlt.mono.divides(&lt.mono) {
                return Err(Error::invalid(
                    "exact division failed: leading term not divisible",
                ));
            }
            let m = dlt.mono.quotient(&lt.mono);
            let c = fp.div(lt.coeff, dlt.coeff);
            quot = quot.add_unchecked(&Polynomial::monomial(&self.ring, m.clone(), c));
            rem = rem.add_unchecked(&divisor.mul_term(&m, fp.neg(c)));
        }
        Ok(quot)
    }

    /// Substitutes `subs[i]` for variable `i`. All substitution targets must
    /// share one ring.
    pub fn substitute(&self, target: &Ring, subs: &[Polynomial]) -> Result<Polynomial> {
        if subs.len() != self.ring.num_vars() {
            return Err(Error::LengthMismatch(subs.len(), self.ring.num_vars()));
        }
        let mut acc = Polynomial::zero(target);
        for t in &self.terms {
            let mut prod = Polynomial::constant(target, t.coeff);
            for (i, &e) in t.mono.exps().iter().enumerate() {
                if e > 0 {
                    prod = prod.mul_unchecked(&subs[i].pow(e as u32));
                }
            }
            acc = acc.add_unchecked(&prod);
        }
        Ok(acc)
    }

    /// Reinterprets the polynomial in another ring with the same variables
    /// and characteristic (typically a different monomial order).
    pub fn into_ring(&self, other: &Ring) -> Result<Polynomial> {
        if other.num_vars() != self.ring.num_vars()
            || other.characteristic() != self.ring.characteristic()
        {
            return Err(Error::RingMismatch);
        }
        Ok(Polynomial::from_terms(other, self.terms.clone()))
    }

    /// Checks the sortedness / no-zero / no-duplicate invariants.
    pub fn check_invariants(&self) -> bool {
        let order = self.ring.order();
        self.terms.iter().all(|t| {
            t.coeff != 0 && t.coeff < self.ring.characteristic() && t.mono.len() == self.ring.num_vars()
        }) && self
            .terms
            .windows(2)
            .all(|w| cmp_unchecked(&w[0].mono, &w[1].mono, order) == Ordering::Greater)
    }

    /// Indices of variables actually appearing.
    pub fn support(&self) -> std::collections::BTreeSet<usize> {
        let mut s = std::collections::BTreeSet::new();
        for t in &self.terms {
            s.extend(t.mono.support());
        }
        s
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &[String], m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exps().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{}", vars[i])?;
        } else {
            write!(f, "{}^{}", vars[i], e)?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    /// Canonical text form, e.g. `3*x^2*y - a*x + 1`. Coefficients above
    /// p/2 print as negatives so the output round-trips through the parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let p = self.ring.characteristic();
        let vars = self.ring.vars();
        for (k, t) in self.terms.iter().enumerate() {
            let (neg, mag) = if t.coeff > p / 2 {
                (true, p - t.coeff)
            } else {
                (false, t.coeff)
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if t.mono.is_one() {
                write!(f, "{mag}")?;
            } else {
                if mag != 1 {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, vars, &t.mono)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    fn xy_ring() -> Ring {
        RingSpec::grevlex(&["x", "y"])
    }

    #[test]
    fn cancellation() {
        let r = xy_ring();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let s = x.add(&y).unwrap().add(&y.neg()).unwrap();
        assert_eq!(s, x);
    }

    #[test]
    fn difference_of_squares() {
        let r = xy_ring();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let lhs = x.add(&y).unwrap().mul(&x.sub(&y).unwrap()).unwrap();
        let rhs = x.mul(&x).unwrap().sub(&y.mul(&y).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn scale_by_zero() {
        let r = xy_ring();
        let x = Polynomial::var(&r, 0);
        assert!(x.scale(0).is_zero());
    }

    #[test]
    fn ring_mismatch_detected() {
        let r1 = xy_ring();
        let r2 = RingSpec::grevlex(&["x", "y", "z"]);
        let a = Polynomial::var(&r1, 0);
        let b = Polynomial::var(&r2, 0);
        assert!(matches!(a.add(&b), Err(Error::RingMismatch)));
    }

    #[test]
    fn exact_division() {
        let r = xy_ring();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let f = x.add(&y).unwrap();
        let g = x.sub(&y).unwrap();
        let prod = f.mul(&g).unwrap();
        assert_eq!(prod.div_exact(&f).unwrap(), g);
        assert!(x.div_exact(&y).is_err());
    }

    #[test]
    fn display_round_trip_shape() {
        let r = xy_ring();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let f = x.pow(2).sub(&y.scale(3)).unwrap();
        assert_eq!(f.to_string(), "x^2 - 3*y");
    }

    #[test]
    fn frobenius_over_small_fields() {
        for p in [2u32, 3] {
            let r = RingSpec::grevlex_char(p, &["x", "y"]).unwrap();
            let x = Polynomial::var(&r, 0);
            let y = Polynomial::var(&r, 1);
            let f = x.add(&y).unwrap();
            let fp = f.pow(p);
            for t in fp.terms() {
                for &e in t.mono.exps() {
                    assert_eq!(e as u32 % p, 0, "non p-th power monomial in ({f})^{p}");
                }
            }
        }
    }
}
