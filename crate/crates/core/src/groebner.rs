//! Buchberger's algorithm for ideals: normal selection strategy with sugar
//! tie-break, Gebauer–Möller pair pruning, explicit step/time budgets, and
//! reduced (unique) output bases.

use crate::error::{Error, Result};
use crate::monomial::{cmp_unchecked, Monomial};
use crate::poly::Polynomial;
use crate::ring::{same_ring, Ring};
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::Instant;

/// Work limits for a single basis computation.
#[derive(Debug, Clone, Copy)]
pub struct GbBudget {
    pub max_pair_reductions: u64,
    pub max_millis: u64,
}

impl Default for GbBudget {
    fn default() -> Self {
        GbBudget {
            max_pair_reductions: 200_000,
            max_millis: 120_000,
        }
    }
}

impl GbBudget {
    pub fn unlimited() -> Self {
        GbBudget {
            max_pair_reductions: u64::MAX,
            max_millis: u64::MAX,
        }
    }
}

/// The unique reduced Gröbner basis of an ideal for the ring's order:
/// elements monic, pairwise lead-irreducible, tails fully reduced, sorted
/// ascending by leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedGB {
    ring: Ring,
    elements: Vec<Polynomial>,
}

impl ReducedGB {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant() && !self.elements[0].is_zero()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.elements.is_empty()
    }

    /// Leading monomials (the minimal generators of the leading-term ideal).
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect()
    }

    /// Fully reduces `f`: no term of the result is divisible by any leading
    /// monomial of the basis, and `f - result` lies in the ideal.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        same_ring(&self.ring, f.ring())?;
        Ok(normal_form_raw(f, &self.elements))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }
}

/// Full normal form of `f` against a list of monic divisors.
pub(crate) fn normal_form_raw(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ring = f.ring().clone();
    let fp = ring.fp();
    let mut rem = Polynomial::zero(&ring);
    let mut work = f.clone();
    'outer: while let Some(lt) = work.leading_term() {
        for g in basis {
            let glt = match g.leading_term() {
                Some(t) => t,
                None => continue,
            };
            if glt.mono.divides(&lt.mono) {
                let m = glt.mono.quotient(&lt.mono);
                let c = fp.div(lt.coeff, glt.coeff);
                work = work.add_unchecked(&g.mul_term(&m, fp.neg(c)));
                continue 'outer;
            }
        }
        // Leading term irreducible: move it to the remainder.
        let head = Polynomial::monomial(&ring, lt.mono.clone(), lt.coeff);
        rem = rem.add_unchecked(&head.clone());
        work = work.add_unchecked(&head.neg());
    }
    rem
}

/// Top-reduces `f` until its leading term has no divisor in `basis`;
/// returns the reduced polynomial (possibly zero).
fn top_reduce(f: Polynomial, basis: &[Polynomial], fp: crate::field::Fp) -> Polynomial {
    let mut work = f;
    'outer: while let Some(lt) = work.leading_term() {
        for g in basis {
            let glt = g.leading_term().unwrap();
            if glt.mono.divides(&lt.mono) {
                let m = glt.mono.quotient(&lt.mono);
                let c = fp.div(lt.coeff, glt.coeff);
                work = work.add_unchecked(&g.mul_term(&m, fp.neg(c)));
                continue 'outer;
            }
        }
        break;
    }
    work
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
    index: u64,
}

impl Pair {
    fn key(&self) -> (u32, u32, u64) {
        (self.lcm.degree(), self.sugar, self.index)
    }
}

impl PartialEq for Pair {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}
impl Eq for Pair {}
impl PartialOrd for Pair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Pair {
    fn cmp(&self, other: &Self) -> Ordering {
        // Reversed: BinaryHeap is a max-heap, we want the minimal key first.
        other.key().cmp(&self.key())
    }
}

/// Buchberger state shared by the ideal and resolution paths.
struct Buchberger {
    ring: Ring,
    basis: Vec<Polynomial>,
    sugars: Vec<u32>,
    pairs: BinaryHeap<Pair>,
    pair_counter: u64,
    reductions: u64,
    budget: GbBudget,
    start: Instant,
}

impl Buchberger {
    fn new(ring: Ring, budget: GbBudget) -> Self {
        Buchberger {
            ring,
            basis: Vec::new(),
            sugars: Vec::new(),
            pairs: BinaryHeap::new(),
            pair_counter: 0,
            reductions: 0,
            budget,
            start: Instant::now(),
        }
    }

    fn check_budget(&self) -> Result<()> {
        if self.reductions > self.budget.max_pair_reductions
            || (self.reductions % 64 == 0
                && self.start.elapsed().as_millis() as u64 > self.budget.max_millis)
        {
            return Err(Error::Budget {
                pairs: self.reductions,
                elapsed_ms: self.start.elapsed().as_millis() as u64,
                partial: self.basis.len(),
            });
        }
        Ok(())
    }

    /// Adds a monic polynomial, installing pairs with Gebauer–Möller pruning.
    fn add(&mut self, f: Polynomial, sugar: u32) {
        let t = self.basis.len();
        let lt_t = f.leading_monomial().unwrap().clone();

        // B rule: drop queued pairs whose lcm is strictly refined by the
        // newcomer.
        let old: Vec<Pair> = std::mem::take(&mut self.pairs).into_vec();
        let mut kept = BinaryHeap::with_capacity(old.len());
        for p in old {
            let lcm_it = lt_t.lcm(self.basis[p.i].leading_monomial().unwrap());
            let lcm_jt = lt_t.lcm(self.basis[p.j].leading_monomial().unwrap());
            if lt_t.divides(&p.lcm) && lcm_it != p.lcm && lcm_jt != p.lcm {
                continue;
            }
            kept.push(p);
        }
        self.pairs = kept;

        // New pairs (i, t), with the M rule (keep only lcm-minimal ones) and
        // the product criterion.
        let mut cands: Vec<(usize, Monomial)> = (0..t)
            .map(|i| (i, lt_t.lcm(self.basis[i].leading_monomial().unwrap())))
            .collect();
        let mut keep = vec![true; cands.len()];
        for a in 0..cands.len() {
            if !keep[a] {
                continue;
            }
            for b in 0..cands.len() {
                if a != b && keep[b] && cands[b].1.divides(&cands[a].1) && cands[b].1 != cands[a].1
                {
                    keep[a] = false;
                    break;
                }
            }
        }
        // F rule: among equal lcms keep the first.
        for a in 0..cands.len() {
            if !keep[a] {
                continue;
            }
            for b in (a + 1)..cands.len() {
                if keep[b] && cands[a].1 == cands[b].1 {
                    keep[b] = false;
                }
            }
        }
        for (k, (i, lcm)) in cands.drain(..).enumerate() {
            if !keep[k] {
                continue;
            }
            if self.basis[i]
                .leading_monomial()
                .unwrap()
                .coprime(&lt_t)
            {
                continue; // product criterion
            }
            let si = self.sugars[i] + (lcm.degree() - self.basis[i].leading_monomial().unwrap().degree());
            let st = sugar + (lcm.degree() - lt_t.degree());
            self.pair_counter += 1;
            self.pairs.push(Pair {
                i,
                j: t,
                lcm,
                sugar: si.max(st),
                index: self.pair_counter,
            });
        }

        self.basis.push(f);
        self.sugars.push(sugar);
    }

    fn run(&mut self) -> Result<()> {
        let fp = self.ring.fp();
        while let Some(pair) = self.pairs.pop() {
            self.reductions += 1;
            self.check_budget()?;
            let (gi, gj) = (&self.basis[pair.i], &self.basis[pair.j]);
            let (li, lj) = (
                gi.leading_term().unwrap(),
                gj.leading_term().unwrap(),
            );
            let mi = li.mono.quotient(&pair.lcm);
            let mj = lj.mono.quotient(&pair.lcm);
            let ci = fp.inv(li.coeff);
            let cj = fp.neg(fp.inv(lj.coeff));
            let spoly = gi.mul_term(&mi, ci).add_unchecked(&gj.mul_term(&mj, cj));
            let red = top_reduce(spoly, &self.basis, fp);
            if !red.is_zero() {
                let sugar = pair.sugar;
                self.add(red.monic(), sugar);
            }
        }
        Ok(())
    }
}

/// Interreduces a basis known to generate the ideal and whose leading terms
/// generate the leading-term ideal; yields the unique reduced GB.
fn reduce_basis(ring: &Ring, mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    // Minimal: drop elements whose lead is divisible by another lead.
    let mut keep = vec![true; basis.len()];
    for a in 0..basis.len() {
        if !keep[a] {
            continue;
        }
        for b in 0..basis.len() {
            if a == b || !keep[b] {
                continue;
            }
            let la = basis[a].leading_monomial().unwrap();
            let lb = basis[b].leading_monomial().unwrap();
            if lb.divides(la) && (lb != la || b < a) {
                keep[a] = false;
                break;
            }
        }
    }
    let mut minimal: Vec<Polynomial> = basis
        .drain(..)
        .zip(keep)
        .filter_map(|(g, k)| if k { Some(g) } else { None })
        .collect();
    // Tail-reduce each element against the rest.
    let order = ring.order().clone();
    for i in 0..minimal.len() {
        let g = minimal[i].clone();
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, h)| h.clone())
            .collect();
        minimal[i] = normal_form_raw(&g, &others).monic();
    }
    minimal.sort_by(|a, b| {
        cmp_unchecked(
            a.leading_monomial().unwrap(),
            b.leading_monomial().unwrap(),
            &order,
        )
    });
    minimal
}

/// Computes the reduced Gröbner basis of the ideal generated by `gens` in
/// the generators' ring (whose order is the GB order).
pub fn groebner_basis(gens: &[Polynomial], budget: &GbBudget) -> Result<ReducedGB> {
    let ring = match gens.first() {
        Some(g) => g.ring().clone(),
        None => return Err(Error::precondition("empty generator list".to_string())),
    };
    for g in gens {
        same_ring(&ring, g.ring())?;
    }
    let mut engine = Buchberger::new(ring.clone(), *budget);
    let fp = ring.fp();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let red = top_reduce(g.clone(), &engine.basis, fp);
        if !red.is_zero() {
            let sugar = red.total_degree().unwrap();
            engine.add(red.monic(), sugar);
        }
    }
    engine.run()?;
    let elements = reduce_basis(&ring, engine.basis);
    Ok(ReducedGB { ring, elements })
}

/// Membership test: `f` lies in the ideal iff its normal form vanishes.
pub fn ideal_membership(f: &Polynomial, gb: &ReducedGB) -> Result<bool> {
    gb.contains(f)
}

/// The reduced GB of the zero ideal.
pub fn empty_reduced_gb(ring: &Ring) -> ReducedGB {
    ReducedGB {
        ring: ring.clone(),
        elements: Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{MonomialOrder, RingSpec};

    fn poly(ring: &Ring, s: &str) -> Polynomial {
        crate::script::parse_polynomial(ring, s).unwrap()
    }

    #[test]
    fn linear_reduction() {
        let r = RingSpec::grevlex(&["x", "y"]);
        let gb = groebner_basis(
            &[poly(&r, "x+y"), poly(&r, "y")],
            &GbBudget::default(),
        )
        .unwrap();
        let lms: Vec<String> = gb.elements().iter().map(|g| g.to_string()).collect();
        assert_eq!(lms, vec!["y", "x"]);
    }

    #[test]
    fn single_generator_is_its_own_basis() {
        let r = RingSpec::grevlex(&["x", "y"]);
        let gb = groebner_basis(&[poly(&r, "x")], &GbBudget::default()).unwrap();
        assert_eq!(gb.elements().len(), 1);
        assert_eq!(gb.elements()[0].to_string(), "x");
    }

    #[test]
    fn lex_example_with_derived_check() {
        // {x*y - 1, y^2 - 1} under lex(x > y).
        let r = RingSpec::new(
            32003,
            vec!["x".into(), "y".into()],
            MonomialOrder::Lex,
        )
        .unwrap();
        let f = poly(&r, "x*y-1");
        let g = poly(&r, "y^2-1");
        let gb = groebner_basis(&[f.clone(), g.clone()], &GbBudget::default()).unwrap();
        let strs: Vec<String> = gb.elements().iter().map(|p| p.to_string()).collect();
        assert_eq!(strs, vec!["y^2 - 1", "x - y"]);
        // Oracle: both inputs reduce to zero against the output, and every
        // S-polynomial of the output reduces to zero.
        assert!(gb.contains(&f).unwrap());
        assert!(gb.contains(&g).unwrap());
        assert!(spolys_reduce_to_zero(&gb));
    }

    #[test]
    fn normal_forms() {
        let r = RingSpec::grevlex(&["x", "y"]);
        let gb = groebner_basis(&[poly(&r, "x")], &GbBudget::default()).unwrap();
        assert_eq!(gb.normal_form(&poly(&r, "x^2+y")).unwrap().to_string(), "y");
        assert!(gb.normal_form(&poly(&r, "x")).unwrap().is_zero());
        let gb2 = groebner_basis(&[poly(&r, "x^2"), poly(&r, "y^2")], &GbBudget::default()).unwrap();
        assert_eq!(gb2.normal_form(&poly(&r, "x*y")).unwrap().to_string(), "x*y");
    }

    #[test]
    fn membership_examples() {
        let r = RingSpec::grevlex(&["x", "y", "z", "w", "a"]);
        let gb = groebner_basis(
            &[poly(&r, "x"), poly(&r, "y"), poly(&r, "z"), poly(&r, "w")],
            &GbBudget::default(),
        )
        .unwrap();
        assert!(ideal_membership(&poly(&r, "x^2"), &gb).unwrap());
        assert!(!ideal_membership(&poly(&r, "a"), &gb).unwrap());
    }

    /// Buchberger's criterion, used as an oracle in several suites.
    pub(crate) fn spolys_reduce_to_zero(gb: &ReducedGB) -> bool {
        let fp = gb.ring().fp();
        let n = gb.elements().len();
        for i in 0..n {
            for j in (i + 1)..n {
                let (gi, gj) = (&gb.elements()[i], &gb.elements()[j]);
                let (li, lj) = (gi.leading_term().unwrap(), gj.leading_term().unwrap());
                let lcm = li.mono.lcm(&lj.mono);
                let s = gi
                    .mul_term(&li.mono.quotient(&lcm), fp.inv(li.coeff))
                    .add_unchecked(&gj.mul_term(&lj.mono.quotient(&lcm), fp.neg(fp.inv(lj.coeff))));
                if !normal_form_raw(&s, gb.elements()).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn budget_surfaces_as_error() {
        let r = RingSpec::grevlex(&["x", "y", "z"]);
        let gens = vec![
            poly(&r, "x^2*y - z^2"),
            poly(&r, "y^2*z - x^2"),
            poly(&r, "z^2*x - y^2"),
        ];
        let tiny = GbBudget {
            max_pair_reductions: 1,
            max_millis: u64::MAX,
        };
        match groebner_basis(&gens, &tiny) {
            Err(Error::Budget { partial, .. }) => assert!(partial > 0),
            other => panic!("expected budget error, got {other:?}"),
        }
    }
}
