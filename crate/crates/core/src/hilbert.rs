//! Hilbert series of quotients S/I, and the invariants read off it:
//! dimension, height, multiplicity, and Hilbert function values.
//!
//! The series is computed from the leading-term ideal of a Gröbner basis by
//! the standard pivot-variable recursion on monomial ideals, memoized on the
//! minimal generator set.

use crate::error::{Error, Result};
use crate::groebner::GbBudget;
use crate::ideal::Ideal;
use crate::monomial::Monomial;
use std::collections::HashMap;

/// Numerator of the Hilbert series over (1-t)^n, with its reduced form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSeries {
    /// Coefficients of the numerator N(t), index = power of t.
    pub numerator: Vec<i64>,
    /// Number of ring variables n (denominator (1-t)^n).
    pub num_vars: usize,
    /// Numerator after dividing out every (1-t) factor.
    pub reduced_numerator: Vec<i64>,
    /// Krull dimension of S/I; -1 for the zero module (unit ideal).
    pub dimension: i64,
}

impl HilbertSeries {
    /// The degree (= multiplicity for unmixed ideals): the reduced numerator
    /// at t = 1. Zero exactly for the unit ideal.
    pub fn multiplicity(&self) -> u64 {
        let v: i64 = self.reduced_numerator.iter().sum();
        debug_assert!(v >= 0, "reduced numerator at 1 must be nonnegative");
        v.max(0) as u64
    }

    /// dim_k (S/I)_d.
    pub fn hilbert_function(&self, d: u64) -> u64 {
        // HF(d) = sum_i N_i * C(n-1+d-i, n-1).
        let n = self.num_vars as u64;
        if n == 0 {
            return if d == 0 {
                self.numerator.iter().sum::<i64>().max(0) as u64
            } else {
                0
            };
        }
        let mut acc: i64 = 0;
        for (i, &c) in self.numerator.iter().enumerate() {
            let i = i as u64;
            if i > d {
                break;
            }
            acc += c * binomial(n - 1 + d - i, n - 1);
        }
        debug_assert!(acc >= 0);
        acc.max(0) as u64
    }
}

fn binomial(n: u64, k: u64) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc as i64
}

fn poly_mul_t(mut v: Vec<i64>, shift: usize) -> Vec<i64> {
    let mut out = vec![0i64; v.len() + shift];
    for (i, c) in v.drain(..).enumerate() {
        out[i + shift] = c;
    }
    out
}

fn poly_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len().max(b.len())];
    for (i, &c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, &c) in b.iter().enumerate() {
        out[i] += c;
    }
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return vec![0];
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

/// Drops generators divisible by another generator.
fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    'next: for g in gens {
        for kept in &out {
            if kept.divides(&g) {
                continue 'next;
            }
        }
        out.push(g);
    }
    out
}

fn memo_key(gens: &[Monomial]) -> Vec<u16> {
    let mut key = Vec::with_capacity(gens.len() * (gens.first().map_or(0, |m| m.len()) + 1));
    for g in gens {
        key.extend_from_slice(g.exps());
        key.push(u16::MAX);
    }
    key
}

/// Numerator of the Hilbert series of S/(monomial ideal).
fn numerator_of_monomial_ideal(
    gens: Vec<Monomial>,
    memo: &mut HashMap<Vec<u16>, Vec<i64>>,
) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return vec![0];
    }
    if gens.len() == 1 {
        let d = gens[0].degree() as usize;
        let mut out = vec![0i64; d + 1];
        out[0] = 1;
        out[d] = -1;
        return out;
    }
    // Pairwise coprime generators: complete-intersection factorization.
    let coprime = gens
        .iter()
        .enumerate()
        .all(|(i, g)| gens.iter().skip(i + 1).all(|h| g.coprime(h)));
    if coprime {
        let mut acc = vec![1i64];
        for g in &gens {
            let d = g.degree() as usize;
            let mut f = vec![0i64; d + 1];
            f[0] = 1;
            f[d] = -1;
            acc = poly_mul(&acc, &f);
        }
        return acc;
    }

    let key = memo_key(&gens);
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }

    // Pivot: the most frequent variable among the generators.
    let nvars = gens[0].len();
    let mut counts = vec![0usize; nvars];
    for g in &gens {
        for i in g.support() {
            counts[i] += 1;
        }
    }
    let pivot = counts
        .iter()
        .enumerate()
        .max_by_key(|(_, &c)| c)
        .map(|(i, _)| i)
        .unwrap();

    // N(I) = N(I + (v)) + t * N(I : v).
    let with_pivot: Vec<Monomial> = {
        let mut v = vec![Monomial::var(nvars, pivot)];
        v.extend(gens.iter().filter(|g| g.exp(pivot) == 0).cloned());
        minimalize(v)
    };
    let colon: Vec<Monomial> = minimalize(
        gens.iter()
            .map(|g| {
                if g.exp(pivot) >= 1 {
                    let mut exps = g.exps().to_vec();
                    exps[pivot] -= 1;
                    Monomial::from_exps(&exps)
                } else {
                    g.clone()
                }
            })
            .collect(),
    );

    let a = numerator_of_monomial_ideal(with_pivot, memo);
    let b = numerator_of_monomial_ideal(colon, memo);
    let out = poly_add(&a, &poly_mul_t(b, 1));
    memo.insert(key, out.clone());
    out
}

/// Series of S/(monomial ideal given by generators).
pub fn hilbert_series_of_monomials(gens: Vec<Monomial>, num_vars: usize) -> HilbertSeries {
    let mut memo = HashMap::new();
    let numerator = numerator_of_monomial_ideal(minimalize(gens), &mut memo);
    // Reduce: divide out (1-t) factors.
    let mut reduced = numerator.clone();
    let mut divisions = 0usize;
    loop {
        let at_one: i64 = reduced.iter().sum();
        if at_one != 0 || reduced.iter().all(|&c| c == 0) {
            break;
        }
        // Divide by (1-t): prefix sums.
        let mut q = vec![0i64; reduced.len().saturating_sub(1).max(1)];
        let mut run = 0i64;
        for i in 0..reduced.len() - 1 {
            run += reduced[i];
            q[i] = run;
        }
        while q.len() > 1 && *q.last().unwrap() == 0 {
            q.pop();
        }
        reduced = q;
        divisions += 1;
    }
    let dimension = if reduced.iter().all(|&c| c == 0) {
        -1
    } else {
        num_vars as i64 - divisions as i64
    };
    HilbertSeries {
        numerator,
        num_vars,
        reduced_numerator: reduced,
        dimension,
    }
}

/// Hilbert series of S/I for a homogeneous ideal, via the leading-term ideal
/// of its reduced grevlex Gröbner basis.
pub fn hilbert_series(ideal: &Ideal, budget: &GbBudget) -> Result<HilbertSeries> {
    if !ideal.is_homogeneous() {
        return Err(Error::precondition("Hilbert series needs a homogeneous ideal"));
    }
    let gb = ideal.gb(budget)?;
    Ok(hilbert_series_of_monomials(
        gb.leading_monomials(),
        ideal.ring().num_vars(),
    ))
}

/// Krull dimension of S/I; -1 for the unit ideal.
pub fn dimension(ideal: &Ideal, budget: &GbBudget) -> Result<i64> {
    Ok(hilbert_series(ideal, budget)?.dimension)
}

/// Height (codimension) of I: n - dim S/I. Errors on the unit ideal.
pub fn height(ideal: &Ideal, budget: &GbBudget) -> Result<u32> {
    let s = hilbert_series(ideal, budget)?;
    if s.dimension < 0 {
        return Err(Error::precondition("height of the unit ideal is undefined"));
    }
    Ok((s.num_vars as i64 - s.dimension) as u32)
}

/// Multiplicity e(S/I): the reduced numerator at t = 1 (0 for the unit ideal).
pub fn multiplicity(ideal: &Ideal, budget: &GbBudget) -> Result<u64> {
    Ok(hilbert_series(ideal, budget)?.multiplicity())
}

/// dim_k (S/I)_d from the series.
pub fn hilbert_function(ideal: &Ideal, d: u64, budget: &GbBudget) -> Result<u64> {
    Ok(hilbert_series(ideal, budget)?.hilbert_function(d))
}

/// Independent oracle for the Hilbert function: counts the standard monomials
/// of degree d (those not divisible by any leading monomial). Stays free of
/// the series recursion on purpose.
pub fn standard_monomial_count(lt_gens: &[Monomial], num_vars: usize, d: u64) -> u64 {
    let mut count = 0u64;
    let mut exps = vec![0u16; num_vars];
    enumerate_monomials(&mut exps, 0, d as u32, num_vars, lt_gens, &mut count);
    count
}

fn enumerate_monomials(
    exps: &mut Vec<u16>,
    var: usize,
    remaining: u32,
    num_vars: usize,
    lt_gens: &[Monomial],
    count: &mut u64,
) {
    if var == num_vars {
        if remaining == 0 {
            let m = Monomial::from_exps(exps);
            if !lt_gens.iter().any(|g| g.divides(&m)) {
                *count += 1;
            }
        }
        return;
    }
    if var == num_vars - 1 {
        exps[var] = remaining as u16;
        enumerate_monomials(exps, var + 1, 0, num_vars, lt_gens, count);
        exps[var] = 0;
        return;
    }
    for e in 0..=remaining {
        exps[var] = e as u16;
        enumerate_monomials(exps, var + 1, remaining - e, num_vars, lt_gens, count);
    }
    exps[var] = 0;
}

/// Height of an ideal generated by linear forms, by coefficient rank. Used as
/// a shortcut in hypothesis checks; agrees with the general route.
pub fn linear_form_rank(forms: &[crate::poly::Polynomial]) -> Option<u32> {
    if forms.is_empty() {
        return Some(0);
    }
    let ring = forms[0].ring().clone();
    let n = ring.num_vars();
    let fp = ring.fp();
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for f in forms {
        if f.is_zero() {
            continue;
        }
        if f.total_degree() != Some(1) || !f.is_homogeneous() {
            return None;
        }
        let mut row = vec![0u32; n];
        for t in f.terms() {
            let var = t.mono.support().next().unwrap();
            row[var] = t.coeff;
        }
        rows.push(row);
    }
    // Gaussian elimination over GF(p).
    let mut rank = 0u32;
    let mut col = 0usize;
    while col < n && (rank as usize) < rows.len() {
        if let Some(pivot) = (rank as usize..rows.len()).find(|&r| rows[r][col] != 0) {
            rows.swap(rank as usize, pivot);
            let inv = fp.inv(rows[rank as usize][col]);
            for c in col..n {
                rows[rank as usize][c] = fp.mul(rows[rank as usize][c], inv);
            }
            for r in 0..rows.len() {
                if r != rank as usize && rows[r][col] != 0 {
                    let factor = rows[r][col];
                    for c in col..n {
                        let sub = fp.mul(factor, rows[rank as usize][c]);
                        rows[r][c] = fp.sub(rows[r][c], sub);
                    }
                }
            }
            rank += 1;
        }
        col += 1;
    }
    Some(rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    fn b() -> GbBudget {
        GbBudget::default()
    }

    #[test]
    fn free_ring_series() {
        let r = RingSpec::grevlex(&["x", "y"]);
        let i = Ideal::zero(&r);
        let s = hilbert_series(&i, &b()).unwrap();
        assert_eq!(s.numerator, vec![1]);
        assert_eq!(s.dimension, 2);
        assert_eq!(s.multiplicity(), 1);
    }

    #[test]
    fn square_of_max_ideal_has_degree_five() {
        let r = RingSpec::grevlex(&["x", "y", "z", "w"]);
        let m = Ideal::parse(&r, &["x", "y", "z", "w"]).unwrap();
        let m2 = crate::ideal::ideal_product(&m, &m).unwrap();
        let s = hilbert_series(&m2, &b()).unwrap();
        assert_eq!(s.dimension, 0);
        assert_eq!(s.multiplicity(), 5);
    }

    #[test]
    fn complete_intersection_factorization() {
        let r = RingSpec::grevlex(&["x", "y"]);
        let i = Ideal::parse(&r, &["x^2", "y^2"]).unwrap();
        let s = hilbert_series(&i, &b()).unwrap();
        // Numerator (1-t^2)^2 = 1 - 2t^2 + t^4.
        assert_eq!(s.numerator, vec![1, 0, -2, 0, 1]);
        assert_eq!(s.dimension, 0);
        // Total length 4 = sum of Hilbert function values.
        let total: u64 = (0..6).map(|d| s.hilbert_function(d)).sum();
        assert_eq!(total, 4);
    }

    #[test]
    fn heights() {
        let r = RingSpec::grevlex(&["x", "y", "z", "w", "u"]);
        let m = Ideal::parse(&r, &["x", "y", "z", "w"]).unwrap();
        assert_eq!(height(&m, &b()).unwrap(), 4);
        assert_eq!(dimension(&m, &b()).unwrap(), 1);
    }

    #[test]
    fn multiplicity_examples() {
        let r = RingSpec::grevlex(&["x", "y", "z", "w"]);
        let m = Ideal::parse(&r, &["x", "y", "z", "w"]).unwrap();
        assert_eq!(multiplicity(&m, &b()).unwrap(), 1);
        let ci = Ideal::parse(&r, &["x^2", "y^2", "z^2", "w^2"]).unwrap();
        assert_eq!(multiplicity(&ci, &b()).unwrap(), 16);
    }

    #[test]
    fn hilbert_function_small_cases() {
        let r2 = RingSpec::grevlex(&["x", "y"]);
        let i = Ideal::parse(&r2, &["x^2", "x*y", "y^2"]).unwrap();
        let s = hilbert_series(&i, &b()).unwrap();
        let hf: Vec<u64> = (0..4).map(|d| s.hilbert_function(d)).collect();
        assert_eq!(hf, vec![1, 2, 0, 0]);

        let r4 = RingSpec::grevlex(&["x", "y", "z", "w"]);
        let m = Ideal::parse(&r4, &["x", "y", "z", "w"]).unwrap();
        let m2 = crate::ideal::ideal_product(&m, &m).unwrap();
        assert_eq!(hilbert_function(&m2, 1, &b()).unwrap(), 4);
    }

    #[test]
    fn series_matches_standard_monomial_count() {
        let r = RingSpec::grevlex(&["x", "y", "z"]);
        let i = Ideal::parse(&r, &["x^2 - y*z", "x*y^2", "z^3 - x*y*z"]).unwrap();
        let gb = i.gb(&b()).unwrap();
        let s = hilbert_series(&i, &b()).unwrap();
        for d in 0..=8u64 {
            assert_eq!(
                s.hilbert_function(d),
                standard_monomial_count(&gb.leading_monomials(), 3, d),
                "HF mismatch at degree {d}"
            );
        }
    }

    #[test]
    fn unit_ideal_is_the_zero_module() {
        let r = RingSpec::grevlex(&["x", "y"]);
        let i = Ideal::parse(&r, &["1"]).unwrap();
        let s = hilbert_series(&i, &b()).unwrap();
        assert_eq!(s.dimension, -1);
        assert_eq!(s.multiplicity(), 0);
        assert!(height(&i, &b()).is_err());
    }

    #[test]
    fn linear_rank_agrees_with_height() {
        let r = RingSpec::grevlex(&["x", "y", "z"]);
        let forms = vec![
            crate::script::parse_polynomial(&r, "x + y").unwrap(),
            crate::script::parse_polynomial(&r, "y - z").unwrap(),
            crate::script::parse_polynomial(&r, "x + 2*y - z").unwrap(),
        ];
        let rank = linear_form_rank(&forms).unwrap();
        let i = Ideal::new(&r, forms).unwrap();
        assert_eq!(rank, height(&i, &b()).unwrap());
        assert_eq!(rank, 2);
    }
}
