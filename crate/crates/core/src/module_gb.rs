//! Gröbner bases for submodules of free modules S^r, with a
//! position-over-term order extended from the ring order.
//!
//! Elements carry cofactor vectors over the original input columns, so every
//! S-pair that reduces to zero hands back a syzygy of the inputs for free.
//! That is the substrate the resolution engine iterates on.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::groebner::GbBudget;
use crate::monomial::{cmp_unchecked, Monomial};
use crate::poly::Polynomial;
use crate::ring::{same_ring, Ring};
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::Instant;

/// One term of a free-module element: a position, a monomial, a coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModTerm {
    pub pos: u32,
    pub mono: Monomial,
    pub coeff: Scalar,
}

/// Sparse element of S^rank. Terms sorted strictly descending: smaller
/// position wins, ties broken by the ring order on monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleElement {
    ring: Ring,
    rank: u32,
    terms: Vec<ModTerm>,
}

fn mod_cmp(a: &ModTerm, b: &ModTerm, order: &crate::ring::MonomialOrder) -> Ordering {
    match b.pos.cmp(&a.pos) {
        Ordering::Equal => cmp_unchecked(&a.mono, &b.mono, order),
        o => o,
    }
}

impl ModuleElement {
    pub fn zero(ring: &Ring, rank: u32) -> Self {
        ModuleElement {
            ring: ring.clone(),
            rank,
            terms: Vec::new(),
        }
    }

    /// The unit vector `e_pos`.
    pub fn unit(ring: &Ring, rank: u32, pos: u32) -> Self {
        ModuleElement {
            ring: ring.clone(),
            rank,
            terms: vec![ModTerm {
                pos,
                mono: Monomial::one(ring.num_vars()),
                coeff: 1,
            }],
        }
    }

    /// Builds from polynomial components (index = position).
    pub fn from_components(ring: &Ring, comps: &[Polynomial]) -> Result<Self> {
        let mut terms = Vec::new();
        for (pos, p) in comps.iter().enumerate() {
            same_ring(ring, p.ring())?;
            for t in p.terms() {
                terms.push(ModTerm {
                    pos: pos as u32,
                    mono: t.mono.clone(),
                    coeff: t.coeff,
                });
            }
        }
        Ok(Self::from_terms(ring, comps.len() as u32, terms))
    }

    pub fn from_terms(ring: &Ring, rank: u32, mut terms: Vec<ModTerm>) -> Self {
        let order = ring.order().clone();
        terms.sort_by(|a, b| mod_cmp(b, a, &order));
        let fp = ring.fp();
        let mut out: Vec<ModTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            if let Some(last) = out.last_mut() {
                if last.pos == t.pos && last.mono == t.mono {
                    last.coeff = fp.add(last.coeff, t.coeff);
                    if last.coeff == 0 {
                        out.pop();
                    }
                    continue;
                }
            }
            if t.coeff != 0 {
                out.push(t);
            }
        }
        ModuleElement {
            ring: ring.clone(),
            rank,
            terms: out,
        }
    }

    #[inline]
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    #[inline]
    pub fn rank(&self) -> u32 {
        self.rank
    }

    #[inline]
    pub fn terms(&self) -> &[ModTerm] {
        &self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn leading(&self) -> Option<&ModTerm> {
        self.terms.first()
    }

    /// The polynomial in one position.
    pub fn component(&self, pos: u32) -> Polynomial {
        let terms: Vec<crate::poly::Term> = self
            .terms
            .iter()
            .filter(|t| t.pos == pos)
            .map(|t| crate::poly::Term {
                mono: t.mono.clone(),
                coeff: t.coeff,
            })
            .collect();
        Polynomial::from_terms(&self.ring, terms)
    }

    pub fn components(&self) -> Vec<Polynomial> {
        (0..self.rank).map(|p| self.component(p)).collect()
    }

    pub(crate) fn add_unchecked(&self, other: &ModuleElement) -> ModuleElement {
        let order = self.ring.order();
        let fp = self.ring.fp();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match mod_cmp(a, b, order) {
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
                        out.push(ModTerm {
                            pos: a.pos,
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
        ModuleElement {
            ring: self.ring.clone(),
            rank: self.rank,
            terms: out,
        }
    }

    pub fn mul_term(&self, mono: &Monomial, c: Scalar) -> ModuleElement {
        let fp = self.ring.fp();
        if c == 0 {
            return ModuleElement::zero(&self.ring, self.rank);
        }
        ModuleElement {
            ring: self.ring.clone(),
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|t| ModTerm {
                    pos: t.pos,
                    mono: t.mono.mul(mono),
                    coeff: fp.mul(t.coeff, c),
                })
                .collect(),
        }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> ModuleElement {
        let mut acc = ModuleElement::zero(&self.ring, self.rank);
        for t in p.terms() {
            acc = acc.add_unchecked(&self.mul_term(&t.mono, t.coeff));
        }
        acc
    }

    pub fn neg(&self) -> ModuleElement {
        let fp = self.ring.fp();
        ModuleElement {
            ring: self.ring.clone(),
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|t| ModTerm {
                    pos: t.pos,
                    mono: t.mono.clone(),
                    coeff: fp.neg(t.coeff),
                })
                .collect(),
        }
    }

    pub fn monic(&self) -> ModuleElement {
        match self.leading() {
            None => self.clone(),
            Some(lt) => {
                let inv = self.ring.fp().inv(lt.coeff);
                self.scale(inv)
            }
        }
    }

    pub fn scale(&self, c: Scalar) -> ModuleElement {
        let fp = self.ring.fp();
        if c == 0 {
            return ModuleElement::zero(&self.ring, self.rank);
        }
        ModuleElement {
            ring: self.ring.clone(),
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|t| ModTerm {
                    pos: t.pos,
                    mono: t.mono.clone(),
                    coeff: fp.mul(t.coeff, c),
                })
                .collect(),
        }
    }
}

/// Fully reduces `f` against monic `basis` elements (leading-term divisors at
/// equal positions); the result has no term divisible by any basis lead.
pub fn module_normal_form(f: &ModuleElement, basis: &[ModuleElement]) -> ModuleElement {
    let ring = f.ring().clone();
    let fp = ring.fp();
    let mut rem = ModuleElement::zero(&ring, f.rank());
    let mut work = f.clone();
    'outer: while let Some(lt) = work.leading() {
        for g in basis {
            let glt = match g.leading() {
                Some(t) => t,
                None => continue,
            };
            if glt.pos == lt.pos && glt.mono.divides(&lt.mono) {
                let m = glt.mono.quotient(&lt.mono);
                let c = fp.div(lt.coeff, glt.coeff);
                work = work.add_unchecked(&g.mul_term(&m, fp.neg(c)));
                continue 'outer;
            }
        }
        let head = ModuleElement {
            ring: ring.clone(),
            rank: f.rank(),
            terms: vec![lt.clone()],
        };
        rem = rem.add_unchecked(&head);
        work = work.add_unchecked(&head.neg());
    }
    rem
}

struct Entry {
    elt: ModuleElement,
    /// Cofactor over the original columns: elt = sum rep[i] * column_i.
    rep: ModuleElement,
    sugar: u32,
}

struct MPair {
    i: usize,
    j: usize,
    lcm: Monomial,
    pos: u32,
    sugar: u32,
    index: u64,
}

impl MPair {
    fn key(&self) -> (u32, u32, u64) {
        (self.lcm.degree(), self.sugar, self.index)
    }
}
impl PartialEq for MPair {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}
impl Eq for MPair {}
impl PartialOrd for MPair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for MPair {
    fn cmp(&self, other: &Self) -> Ordering {
        other.key().cmp(&self.key())
    }
}

/// Output of the module engine: a reduced module GB, plus generators of the
/// syzygy module of the ORIGINAL columns when requested.
pub struct ModuleGb {
    pub basis: Vec<ModuleElement>,
    pub syzygies: Vec<ModuleElement>,
}

struct ModuleBuchberger {
    ring: Ring,
    rank: u32,
    ncols: u32,
    entries: Vec<Entry>,
    pairs: BinaryHeap<MPair>,
    pair_counter: u64,
    reductions: u64,
    budget: GbBudget,
    start: Instant,
    want_syzygies: bool,
    syzygies: Vec<ModuleElement>,
}

impl ModuleBuchberger {
    fn check_budget(&self) -> Result<()> {
        if self.reductions > self.budget.max_pair_reductions
            || (self.reductions % 64 == 0
                && self.start.elapsed().as_millis() as u64 > self.budget.max_millis)
        {
            return Err(Error::Budget {
                pairs: self.reductions,
                elapsed_ms: self.start.elapsed().as_millis() as u64,
                partial: self.entries.len(),
            });
        }
        Ok(())
    }

    fn add(&mut self, elt: ModuleElement, rep: ModuleElement, sugar: u32) {
        let t = self.entries.len();
        let lt_t = elt.leading().unwrap().clone();

        // B rule.
        let old: Vec<MPair> = std::mem::take(&mut self.pairs).into_vec();
        let mut kept = BinaryHeap::with_capacity(old.len());
        for p in old {
            if p.pos == lt_t.pos && lt_t.mono.divides(&p.lcm) {
                let li = self.entries[p.i].elt.leading().unwrap();
                let lj = self.entries[p.j].elt.leading().unwrap();
                let lcm_it = lt_t.mono.lcm(&li.mono);
                let lcm_jt = lt_t.mono.lcm(&lj.mono);
                if lcm_it != p.lcm && lcm_jt != p.lcm {
                    continue;
                }
            }
            kept.push(p);
        }
        self.pairs = kept;

        // New pairs with same leading position, M/F pruning.
        let mut cands: Vec<(usize, Monomial)> = Vec::new();
        for (i, e) in self.entries.iter().enumerate() {
            let li = e.elt.leading().unwrap();
            if li.pos == lt_t.pos {
                cands.push((i, lt_t.mono.lcm(&li.mono)));
            }
        }
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
            let li = self.entries[i].elt.leading().unwrap();
            // Product criterion is only valid in rank-one modules (ideals);
            // there the skipped pair contributes its Koszul syzygy directly.
            if self.rank == 1 && li.mono.coprime(&lt_t.mono) {
                if self.want_syzygies {
                    let gi = &self.entries[i];
                    let pi = gi.elt.component(0);
                    let pt = elt.component(0);
                    let koszul = gi.rep.mul_poly(&pt).add_unchecked(&rep.mul_poly(&pi).neg());
                    if !koszul.is_zero() {
                        self.syzygies.push(koszul);
                    }
                }
                continue;
            }
            let si =
                self.entries[i].sugar + (lcm.degree() - li.mono.degree());
            let st = sugar + (lcm.degree() - lt_t.mono.degree());
            self.pair_counter += 1;
            self.pairs.push(MPair {
                i,
                j: t,
                lcm,
                pos: lt_t.pos,
                sugar: si.max(st),
                index: self.pair_counter,
            });
        }

        self.entries.push(Entry { elt, rep, sugar });
    }

    /// Top-reduces (elt, rep) in lockstep; returns the pair when the lead is
    /// irreducible or the element vanished.
    fn reduce(&self, mut elt: ModuleElement, mut rep: ModuleElement) -> (ModuleElement, ModuleElement) {
        let fp = self.ring.fp();
        'outer: while let Some(lt) = elt.leading() {
            for e in &self.entries {
                let glt = e.elt.leading().unwrap();
                if glt.pos == lt.pos && glt.mono.divides(&lt.mono) {
                    let m = glt.mono.quotient(&lt.mono);
                    let c = fp.neg(fp.div(lt.coeff, glt.coeff));
                    elt = elt.add_unchecked(&e.elt.mul_term(&m, c));
                    rep = rep.add_unchecked(&e.rep.mul_term(&m, c));
                    continue 'outer;
                }
            }
            break;
        }
        (elt, rep)
    }

    fn run(&mut self) -> Result<()> {
        let fp = self.ring.fp();
        while let Some(pair) = self.pairs.pop() {
            self.reductions += 1;
            self.check_budget()?;
            let (gi, gj) = (&self.entries[pair.i], &self.entries[pair.j]);
            let (li, lj) = (gi.elt.leading().unwrap(), gj.elt.leading().unwrap());
            debug_assert_eq!(li.pos, pair.pos);
            let mi = li.mono.quotient(&pair.lcm);
            let mj = lj.mono.quotient(&pair.lcm);
            let ci = fp.inv(li.coeff);
            let cj = fp.neg(fp.inv(lj.coeff));
            let spair = gi
                .elt
                .mul_term(&mi, ci)
                .add_unchecked(&gj.elt.mul_term(&mj, cj));
            let srep = gi
                .rep
                .mul_term(&mi, ci)
                .add_unchecked(&gj.rep.mul_term(&mj, cj));
            let (red, rep) = self.reduce(spair, srep);
            if red.is_zero() {
                if self.want_syzygies && !rep.is_zero() {
                    self.syzygies.push(rep);
                }
            } else {
                let lc = red.leading().unwrap().coeff;
                let inv = fp.inv(lc);
                let sugar = pair.sugar;
                self.add(red.scale(inv), rep.scale(inv), sugar);
            }
        }
        Ok(())
    }
}

fn engine_for(columns: &[ModuleElement], budget: &GbBudget, want_syzygies: bool) -> Result<ModuleBuchberger> {
    let ring = match columns.first() {
        Some(c) => c.ring().clone(),
        None => return Err(Error::precondition("empty column list".to_string())),
    };
    let rank = columns[0].rank();
    for c in columns {
        same_ring(&ring, c.ring())?;
        if c.rank() != rank {
            return Err(Error::precondition("columns of unequal rank".to_string()));
        }
    }
    let mut engine = ModuleBuchberger {
        ring: ring.clone(),
        rank,
        ncols: columns.len() as u32,
        entries: Vec::new(),
        pairs: BinaryHeap::new(),
        pair_counter: 0,
        reductions: 0,
        budget: *budget,
        start: Instant::now(),
        want_syzygies,
        syzygies: Vec::new(),
    };
    for (i, c) in columns.iter().enumerate() {
        let rep = ModuleElement::unit(&ring, columns.len() as u32, i as u32);
        if c.is_zero() {
            // A zero column is the syzygy e_i all by itself.
            if want_syzygies {
                engine.syzygies.push(rep);
            }
            continue;
        }
        let (red, rep) = engine.reduce(c.clone(), rep);
        if red.is_zero() {
            if want_syzygies && !rep.is_zero() {
                engine.syzygies.push(rep);
            }
        } else {
            let inv = ring.fp().inv(red.leading().unwrap().coeff);
            let sugar = red.terms().iter().map(|t| t.mono.degree()).max().unwrap();
            engine.add(red.scale(inv), rep.scale(inv), sugar);
        }
    }
    engine.run()?;
    Ok(engine)
}

/// Reduced Gröbner basis of the column span: monic elements, no lead divides
/// another lead (at equal position), tails fully reduced, sorted.
pub fn module_groebner(columns: &[ModuleElement], budget: &GbBudget) -> Result<Vec<ModuleElement>> {
    let engine = engine_for(columns, budget, false)?;
    let ring = engine.ring.clone();
    let mut basis: Vec<ModuleElement> = engine.entries.into_iter().map(|e| e.elt).collect();
    // Minimize.
    let mut keep = vec![true; basis.len()];
    for a in 0..basis.len() {
        if !keep[a] {
            continue;
        }
        for b in 0..basis.len() {
            if a == b || !keep[b] {
                continue;
            }
            let la = basis[a].leading().unwrap();
            let lb = basis[b].leading().unwrap();
            if lb.pos == la.pos && lb.mono.divides(&la.mono) && (lb.mono != la.mono || b < a) {
                keep[a] = false;
                break;
            }
        }
    }
    let mut minimal: Vec<ModuleElement> = basis
        .drain(..)
        .zip(keep)
        .filter_map(|(g, k)| if k { Some(g) } else { None })
        .collect();
    for i in 0..minimal.len() {
        let others: Vec<ModuleElement> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, h)| h.clone())
            .collect();
        minimal[i] = module_normal_form(&minimal[i], &others).monic();
    }
    let order = ring.order().clone();
    minimal.sort_by(|a, b| mod_cmp(a.leading().unwrap(), b.leading().unwrap(), &order));
    Ok(minimal)
}

/// Module GB plus generators of the syzygy module of the input columns.
pub fn module_gb_with_syzygies(columns: &[ModuleElement], budget: &GbBudget) -> Result<ModuleGb> {
    let engine = engine_for(columns, budget, true)?;
    let basis = engine.entries.iter().map(|e| e.elt.clone()).collect();
    Ok(ModuleGb {
        basis,
        syzygies: engine.syzygies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;
    use crate::script::parse_polynomial;

    fn elt(ring: &Ring, comps: &[&str]) -> ModuleElement {
        let polys: Vec<Polynomial> = comps
            .iter()
            .map(|s| parse_polynomial(ring, s).unwrap())
            .collect();
        ModuleElement::from_components(ring, &polys).unwrap()
    }

    #[test]
    fn single_column_is_its_own_basis() {
        let r = RingSpec::grevlex(&["x", "y"]);
        let col = elt(&r, &["x", "y"]);
        let gb = module_groebner(&[col.clone()], &GbBudget::default()).unwrap();
        assert_eq!(gb, vec![col]);
    }

    #[test]
    fn free_case() {
        let r = RingSpec::grevlex(&["x", "y"]);
        let e1 = elt(&r, &["1", "0"]);
        let e2 = elt(&r, &["0", "1"]);
        let gb = module_groebner(&[e1.clone(), e2.clone()], &GbBudget::default()).unwrap();
        assert_eq!(gb.len(), 2);
        let syz = module_gb_with_syzygies(&[e1, e2], &GbBudget::default()).unwrap();
        assert!(syz.syzygies.is_empty());
    }

    #[test]
    fn koszul_syzygy_of_two_variables() {
        // Rank-one module spanned by [x], [y]: the only syzygy is (-y, x)
        // up to sign and the basis is {x, y} itself.
        let r = RingSpec::grevlex(&["x", "y"]);
        let gx = elt(&r, &["x"]);
        let gy = elt(&r, &["y"]);
        let out = module_gb_with_syzygies(&[gx.clone(), gy.clone()], &GbBudget::default()).unwrap();
        assert_eq!(out.basis.len(), 2);
        assert_eq!(out.syzygies.len(), 1);
        let s = &out.syzygies[0];
        // Check it is a genuine syzygy: s[0]*x + s[1]*y = 0.
        let x = parse_polynomial(&r, "x").unwrap();
        let y = parse_polynomial(&r, "y").unwrap();
        let combo = s.component(0).mul(&x).unwrap().add(&s.component(1).mul(&y).unwrap()).unwrap();
        assert!(combo.is_zero());
        assert!(!s.is_zero());
    }

    #[test]
    fn syzygies_verify_for_koszul_three() {
        let r = RingSpec::grevlex(&["x", "y", "z"]);
        let cols: Vec<ModuleElement> = ["x^2", "x*y", "y^2"].iter().map(|s| elt(&r, &[s])).collect();
        let out = module_gb_with_syzygies(&cols, &GbBudget::default()).unwrap();
        assert!(!out.syzygies.is_empty());
        let polys: Vec<Polynomial> = cols.iter().map(|c| c.component(0)).collect();
        for s in &out.syzygies {
            let mut acc = Polynomial::zero(&r);
            for (i, p) in polys.iter().enumerate() {
                acc = acc.add(&s.component(i as u32).mul(p).unwrap()).unwrap();
            }
            assert!(acc.is_zero(), "claimed syzygy fails: {s:?}");
        }
    }

    #[test]
    fn zero_column_yields_unit_syzygy() {
        let r = RingSpec::grevlex(&["x"]);
        let cols = vec![elt(&r, &["x"]), ModuleElement::zero(&r, 1)];
        let out = module_gb_with_syzygies(&cols, &GbBudget::default()).unwrap();
        assert!(out
            .syzygies
            .iter()
            .any(|s| s.leading().map(|t| t.pos) == Some(1)));
    }
}
