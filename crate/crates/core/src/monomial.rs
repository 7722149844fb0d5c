//! Exponent vectors with cached total degree, and the monomial order
//! comparisons everything else relies on.

use crate::error::{Error, Result};
use crate::ring::MonomialOrder;
use smallvec::SmallVec;
use std::cmp::Ordering;

type Exps = SmallVec<[u16; 16]>;

/// A monomial: one exponent per ring variable, total degree cached.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exps,
    deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: smallvec::smallvec![0; nvars],
            deg: 0,
        }
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial {
            exps: Exps::from_slice(exps),
            deg,
        }
    }

    /// The single variable `x_i` in an `nvars`-variable ring.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn var_pow(nvars: usize, i: usize, e: u16) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[i] = e;
        m.deg = e as u32;
        m
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps: Exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a + b)
            .collect();
        Monomial {
            exps,
            deg: self.deg + other.deg,
        }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(&a, &b)| a <= b)
    }

    /// `other / self`; caller must ensure divisibility.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let exps: Exps = other
            .exps
            .iter()
            .zip(&self.exps)
            .map(|(&b, &a)| b - a)
            .collect();
        Monomial {
            exps,
            deg: other.deg - self.deg,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.max(b))
            .collect();
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, deg }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps: Exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.min(b))
            .collect();
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, deg }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Set of variable indices with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }
}

fn grevlex_cmp(a: &[u16], b: &[u16], dega: u32, degb: u32) -> Ordering {
    match dega.cmp(&degb) {
        Ordering::Equal => {}
        o => return o,
    }
    // Equal degree: the larger monomial is the one whose exponent difference
    // has a negative last nonzero entry.
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => {}
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

fn lex_cmp(a: &[u16], b: &[u16]) -> Ordering {
    for i in 0..a.len() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    Ordering::Equal
}

/// Total order on monomials of equal length under the given order tag.
pub fn order_compare(m1: &Monomial, m2: &Monomial, order: &MonomialOrder) -> Result<Ordering> {
    if m1.len() != m2.len() {
        return Err(Error::LengthMismatch(m1.len(), m2.len()));
    }
    Ok(cmp_unchecked(m1, m2, order))
}

#[inline]
pub(crate) fn cmp_unchecked(m1: &Monomial, m2: &Monomial, order: &MonomialOrder) -> Ordering {
    let (a, b) = (m1.exps(), m2.exps());
    match order {
        MonomialOrder::Grevlex => grevlex_cmp(a, b, m1.deg, m2.deg),
        MonomialOrder::Lex => lex_cmp(a, b),
        MonomialOrder::Elimination(k) => {
            let k = *k;
            let da: u32 = a[..k].iter().map(|&e| e as u32).sum();
            let db: u32 = b[..k].iter().map(|&e| e as u32).sum();
            match grevlex_cmp(&a[..k], &b[..k], da, db) {
                Ordering::Equal => {
                    grevlex_cmp(&a[k..], &b[k..], m1.deg - da, m2.deg - db)
                }
                o => o,
            }
        }
        MonomialOrder::Weighted(w) => {
            let wa: u64 = a.iter().zip(w).map(|(&e, &wi)| e as u64 * wi as u64).sum();
            let wb: u64 = b.iter().zip(w).map(|(&e, &wi)| e as u64 * wi as u64).sum();
            match wa.cmp(&wb) {
                Ordering::Equal => grevlex_cmp(a, b, m1.deg, m2.deg),
                o => o,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u16]) -> Monomial {
        Monomial::from_exps(exps)
    }

    #[test]
    fn grevlex_definition() {
        // In (x, y, z): y^2 > xz.
        let xz = m(&[1, 0, 1]);
        let y2 = m(&[0, 2, 0]);
        assert_eq!(
            order_compare(&xz, &y2, &MonomialOrder::Grevlex).unwrap(),
            Ordering::Less
        );
        assert_eq!(
            order_compare(&y2, &y2, &MonomialOrder::Grevlex).unwrap(),
            Ordering::Equal
        );
    }

    #[test]
    fn lex_definition() {
        // In (x, y): x > y^3.
        let x = m(&[1, 0]);
        let y3 = m(&[0, 3]);
        assert_eq!(
            order_compare(&x, &y3, &MonomialOrder::Lex).unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn elimination_dominates_block() {
        // t > x^5 when t is in the first block.
        let t = m(&[1, 0]);
        let x5 = m(&[0, 5]);
        assert_eq!(
            order_compare(&t, &x5, &MonomialOrder::Elimination(1)).unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert!(order_compare(&m(&[1]), &m(&[1, 0]), &MonomialOrder::Grevlex).is_err());
    }

    #[test]
    fn divisibility_and_quotient() {
        let a = m(&[1, 2, 0]);
        let b = m(&[2, 2, 1]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient(&b), m(&[1, 0, 1]));
        assert_eq!(a.lcm(&b), m(&[2, 2, 1]));
        assert!(m(&[1, 0, 0]).coprime(&m(&[0, 0, 3])));
    }
}
