//! Free complexes and minimal free resolutions.
//!
//! Resolutions are built by iterated syzygy computation (module Gröbner
//! bases with cofactor tracking) followed by eager minimization: any unit
//! entry in a differential is eliminated by row/column operations, which
//! keeps every intermediate complex near the minimal Betti numbers.

use crate::error::{Error, Result};
use crate::groebner::GbBudget;
use crate::ideal::Ideal;
use crate::module_gb::{module_gb_with_syzygies, module_normal_form, ModuleElement};
use crate::poly::Polynomial;
use crate::ring::{same_ring, Ring};

/// A matrix of homogeneous polynomials with degree twists: entry (i, j) is
/// zero or homogeneous of degree `col_twists[j] - row_twists[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    /// Row-major entries.
    entries: Vec<Polynomial>,
    row_twists: Vec<i64>,
    col_twists: Vec<i64>,
}

impl GradedMatrix {
    pub fn new(
        ring: &Ring,
        entries: Vec<Vec<Polynomial>>,
        row_twists: Vec<i64>,
        col_twists: Vec<i64>,
    ) -> Result<GradedMatrix> {
        let rows = entries.len();
        let cols = if rows == 0 { col_twists.len() } else { entries[0].len() };
        if row_twists.len() != rows || col_twists.len() != cols {
            return Err(Error::invalid("twist lengths do not match matrix shape"));
        }
        let mut flat = Vec::with_capacity(rows * cols);
        for (i, row) in entries.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::invalid("ragged matrix"));
            }
            for (j, e) in row.into_iter().enumerate() {
                same_ring(ring, e.ring())?;
                if !e.is_zero() {
                    if !e.is_homogeneous() {
                        return Err(Error::invalid(format!(
                            "entry ({i},{j}) is not homogeneous"
                        )));
                    }
                    let want = col_twists[j] - row_twists[i];
                    if e.total_degree().unwrap() as i64 != want {
                        return Err(Error::invalid(format!(
                            "entry ({i},{j}) has degree {} but twists demand {want}",
                            e.total_degree().unwrap()
                        )));
                    }
                }
                flat.push(e);
            }
        }
        Ok(GradedMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: flat,
            row_twists,
            col_twists,
        })
    }

    /// Builds from columns, inferring column twists from the entries.
    pub fn from_columns(
        ring: &Ring,
        rows: usize,
        row_twists: Vec<i64>,
        columns: &[ModuleElement],
    ) -> Result<GradedMatrix> {
        let mut col_twists = Vec::with_capacity(columns.len());
        let mut grid: Vec<Vec<Polynomial>> =
            vec![vec![Polynomial::zero(ring); columns.len()]; rows];
        for (j, col) in columns.iter().enumerate() {
            if col.rank() as usize != rows {
                return Err(Error::invalid("column rank does not match row count"));
            }
            let mut twist: Option<i64> = None;
            for pos in 0..rows {
                let comp = col.component(pos as u32);
                if comp.is_zero() {
                    continue;
                }
                if !comp.is_homogeneous() {
                    return Err(Error::invalid("syzygy column entry not homogeneous"));
                }
                let t = comp.total_degree().unwrap() as i64 + row_twists[pos];
                match twist {
                    None => twist = Some(t),
                    Some(prev) if prev != t => {
                        return Err(Error::invalid("column is not graded"));
                    }
                    _ => {}
                }
                grid[pos][j] = comp;
            }
            col_twists.push(twist.unwrap_or(0));
        }
        GradedMatrix::new(ring, grid, row_twists, col_twists)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn row_twists(&self) -> &[i64] {
        &self.row_twists
    }
    pub fn col_twists(&self) -> &[i64] {
        &self.col_twists
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    fn entry_mut(&mut self, i: usize, j: usize) -> &mut Polynomial {
        &mut self.entries[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> ModuleElement {
        let comps: Vec<Polynomial> = (0..self.rows).map(|i| self.entry(i, j).clone()).collect();
        ModuleElement::from_components(&self.ring, &comps).unwrap()
    }

    pub fn columns(&self) -> Vec<ModuleElement> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> GradedMatrix {
        let mut grid = vec![vec![Polynomial::zero(&self.ring); self.rows]; self.cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                grid[j][i] = self.entry(i, j).clone();
            }
        }
        GradedMatrix::new(
            &self.ring,
            grid,
            self.col_twists.iter().map(|t| -t).collect(),
            self.row_twists.iter().map(|t| -t).collect(),
        )
        .expect("transpose of a graded matrix is graded")
    }

    /// Matrix product self · other (composition of maps).
    pub fn compose(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        same_ring(&self.ring, &other.ring)?;
        if self.cols != other.rows {
            return Err(Error::invalid(format!(
                "composition shape mismatch: {}x{} . {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut grid = vec![vec![Polynomial::zero(&self.ring); other.cols]; self.rows];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.entry(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    grid[i][j] = grid[i][j].add_unchecked(&a.mul_unchecked(b));
                }
            }
        }
        GradedMatrix::new(
            &self.ring,
            grid,
            self.row_twists.clone(),
            other.col_twists.clone(),
        )
    }

    /// Finds a unit (nonzero scalar) entry.
    pub fn find_unit(&self) -> Option<(usize, usize)> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.entry(i, j);
                if !e.is_zero() && e.is_constant() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn has_unit(&self) -> bool {
        self.find_unit().is_some()
    }

    fn delete_row(&mut self, r: usize) {
        let mut entries = Vec::with_capacity((self.rows - 1) * self.cols);
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            for j in 0..self.cols {
                entries.push(self.entry(i, j).clone());
            }
        }
        self.entries = entries;
        self.row_twists.remove(r);
        self.rows -= 1;
    }

    fn delete_col(&mut self, c: usize) {
        let mut entries = Vec::with_capacity(self.rows * (self.cols - 1));
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j != c {
                    entries.push(self.entry(i, j).clone());
                }
            }
        }
        self.entries = entries;
        self.col_twists.remove(c);
        self.cols -= 1;
    }
}

/// A bounded complex of free modules `F_0 <- F_1 <- ... <- F_p` given by the
/// differentials `∂_1..∂_p`; consecutive differentials compose to zero.
#[derive(Debug, Clone)]
pub struct FreeComplex {
    mats: Vec<GradedMatrix>,
}

impl FreeComplex {
    pub fn new(mats: Vec<GradedMatrix>) -> Result<FreeComplex> {
        for w in mats.windows(2) {
            if w[0].cols() != w[1].rows() {
                return Err(Error::invalid("complex rank bookkeeping inconsistent"));
            }
            if w[0].col_twists() != w[1].row_twists() {
                return Err(Error::invalid("complex twists inconsistent"));
            }
        }
        Ok(FreeComplex { mats })
    }

    pub fn differentials(&self) -> &[GradedMatrix] {
        &self.mats
    }

    pub fn differential(&self, i: usize) -> &GradedMatrix {
        &self.mats[i - 1]
    }

    /// Length p (number of differentials).
    pub fn length(&self) -> usize {
        self.mats.len()
    }

    /// Ranks of F_0..F_p.
    pub fn ranks(&self) -> Vec<usize> {
        if self.mats.is_empty() {
            return vec![];
        }
        let mut out = vec![self.mats[0].rows()];
        out.extend(self.mats.iter().map(|m| m.cols()));
        out
    }

    /// Checks ∂_i ∘ ∂_{i+1} = 0 for all i.
    pub fn composes_to_zero(&self) -> Result<bool> {
        for w in self.mats.windows(2) {
            if !w[0].compose(&w[1])?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_minimal(&self) -> bool {
        self.mats.iter().all(|m| !m.has_unit())
    }
}

/// Columns generating the kernel of `m` (first syzygies), as a graded matrix
/// with rows matching `m`'s columns.
pub fn syzygies(m: &GradedMatrix, budget: &GbBudget) -> Result<GradedMatrix> {
    if m.cols() == 0 {
        return GradedMatrix::new(m.ring(), vec![], vec![], vec![]);
    }
    let columns = m.columns();
    let out = module_gb_with_syzygies(&columns, budget)?;
    let sy: Vec<ModuleElement> = out.syzygies;
    GradedMatrix::from_columns(m.ring(), m.cols(), m.col_twists().to_vec(), &sy)
}

/// Eliminates one unit entry at (r, c) of `mats[k]`, updating the neighbor
/// differentials so the complex stays a complex with the same homology.
fn eliminate_unit(mats: &mut [GradedMatrix], k: usize, r: usize, c: usize) {
    let fp = mats[k].ring().fp().clone();
    let u = mats[k].entry(r, c).clone();
    let u_inv = fp.inv(u.leading_term().unwrap().coeff);

    // Column operations on mats[k]: clear row r outside the pivot.
    // col_j -= q * col_c mirrors on mats[k+1] as row_c += q * row_j.
    let cols = mats[k].cols();
    let rows = mats[k].rows();
    for j in 0..cols {
        if j == c {
            continue;
        }
        let top = mats[k].entry(r, j).clone();
        if top.is_zero() {
            continue;
        }
        let q = top.scale(u_inv);
        for i in 0..rows {
            let sub = q.mul_unchecked(mats[k].entry(i, c)).neg();
            let new = mats[k].entry(i, j).add_unchecked(&sub);
            *mats[k].entry_mut(i, j) = new;
        }
        if k + 1 < mats.len() {
            let next_cols = mats[k + 1].cols();
            for jj in 0..next_cols {
                let add = q.mul_unchecked(mats[k + 1].entry(j, jj));
                let new = mats[k + 1].entry(c, jj).add_unchecked(&add);
                *mats[k + 1].entry_mut(c, jj) = new;
            }
        }
    }

    // Row operations on mats[k]: clear column c outside the pivot.
    // row_i -= q * row_r mirrors on mats[k-1] as col_r += q * col_i.
    for i in 0..rows {
        if i == r {
            continue;
        }
        let side = mats[k].entry(i, c).clone();
        if side.is_zero() {
            continue;
        }
        let q = side.scale(u_inv);
        for j in 0..cols {
            let sub = q.mul_unchecked(mats[k].entry(r, j)).neg();
            let new = mats[k].entry(i, j).add_unchecked(&sub);
            *mats[k].entry_mut(i, j) = new;
        }
        if k > 0 {
            let prev_rows = mats[k - 1].rows();
            for ii in 0..prev_rows {
                let add = q.mul_unchecked(mats[k - 1].entry(ii, i));
                let new = mats[k - 1].entry(ii, r).add_unchecked(&add);
                *mats[k - 1].entry_mut(ii, r) = new;
            }
        }
    }

    // Drop the split-off acyclic pair: basis element c of F_k and basis
    // element r of F_{k-1}.
    mats[k].delete_row(r);
    mats[k].delete_col(c);
    if k + 1 < mats.len() {
        mats[k + 1].delete_row(c);
    }
    if k > 0 {
        mats[k - 1].delete_col(r);
    }
}

/// Removes every unit entry from the complex by Gaussian elimination,
/// preserving exactness; afterwards the complex is minimal.
pub fn minimize_complex(mats: &mut Vec<GradedMatrix>) {
    loop {
        let mut acted = false;
        for k in 0..mats.len() {
            while let Some((r, c)) = mats[k].find_unit() {
                eliminate_unit(mats, k, r, c);
                acted = true;
            }
        }
        if !acted {
            break;
        }
    }
    // Drop trailing zero-column differentials.
    while let Some(last) = mats.last() {
        if last.cols() == 0 {
            mats.pop();
        } else {
            break;
        }
    }
}

/// Resolves the cokernel of `presentation` by iterated syzygies with eager
/// minimization. Returns the differentials `∂_1..∂_p` of a minimal free
/// resolution of coker(∂_1); `∂_1` may differ from the input by removal of
/// redundant generators.
pub fn resolve_cokernel(
    presentation: &GradedMatrix,
    max_length: usize,
    budget: &GbBudget,
) -> Result<FreeComplex> {
    let mut mats: Vec<GradedMatrix> = vec![presentation.clone()];
    minimize_complex(&mut mats);
    loop {
        let last = match mats.last() {
            None => break,
            Some(l) => l,
        };
        if last.cols() == 0 {
            mats.pop();
            break;
        }
        let syz = syzygies(last, budget)?;
        if syz.cols() == 0 {
            break;
        }
        mats.push(syz);
        minimize_complex(&mut mats);
        if mats.len() > max_length {
            return Err(Error::indeterminate(format!(
                "projective dimension exceeds the cap {max_length}"
            )));
        }
    }
    FreeComplex::new(mats)
}

/// Minimal free resolution of S/I for a homogeneous ideal `I`; length equals
/// pd(S/I), capped by `max_length` (default: the variable count, by the
/// syzygy theorem).
pub fn minimal_free_resolution(
    ideal: &Ideal,
    max_length: usize,
    budget: &GbBudget,
) -> Result<FreeComplex> {
    if !ideal.is_homogeneous() {
        return Err(Error::precondition("resolution needs a homogeneous ideal"));
    }
    if ideal.is_unit(budget)? {
        return Err(Error::precondition("cannot resolve the zero module S/(1)"));
    }
    let ring = ideal.ring();
    // Start from the reduced GB: a canonical generating set; minimization
    // trims it to a minimal one.
    let gens = ideal.gb(budget)?.elements().to_vec();
    if gens.is_empty() {
        return FreeComplex::new(vec![]);
    }
    let col_twists: Vec<i64> = gens
        .iter()
        .map(|g| g.total_degree().unwrap() as i64)
        .collect();
    let d1 = GradedMatrix::new(ring, vec![gens], vec![0], col_twists)?;
    resolve_cokernel(&d1, max_length, budget)
}

/// Length of the minimal free resolution of S/I.
pub fn projective_dimension(ideal: &Ideal, budget: &GbBudget) -> Result<usize> {
    let cap = ideal.ring().num_vars();
    Ok(minimal_free_resolution(ideal, cap, budget)?.length())
}

/// pd of the cokernel of a homogeneous presentation matrix.
pub fn module_pd(presentation: &GradedMatrix, budget: &GbBudget) -> Result<usize> {
    let cap = presentation.ring().num_vars() + 1;
    Ok(resolve_cokernel(presentation, cap, budget)?.length())
}

/// Total Betti numbers (ranks of F_0..F_p) of the minimal resolution of S/I.
pub fn betti_numbers(ideal: &Ideal, budget: &GbBudget) -> Result<Vec<usize>> {
    let cap = ideal.ring().num_vars();
    let res = minimal_free_resolution(ideal, cap, budget)?;
    if res.length() == 0 {
        return Ok(vec![1]);
    }
    Ok(res.ranks())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;
    use crate::script::parse_polynomial;

    fn b() -> GbBudget {
        GbBudget::default()
    }

    fn mat(ring: &Ring, rows: &[&[&str]], row_twists: Vec<i64>, col_twists: Vec<i64>) -> GradedMatrix {
        let grid: Vec<Vec<Polynomial>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| parse_polynomial(ring, s).unwrap())
                    .collect()
            })
            .collect();
        GradedMatrix::new(ring, grid, row_twists, col_twists).unwrap()
    }

    #[test]
    fn koszul_syzygy_of_two_variables() {
        let r = RingSpec::grevlex(&["x", "y"]);
        let m = mat(&r, &[&["x", "y"]], vec![0], vec![1, 1]);
        let syz = syzygies(&m, &b()).unwrap();
        assert_eq!(syz.rows(), 2);
        assert_eq!(syz.cols(), 1);
        assert!(m.compose(&syz).unwrap().is_zero());
        // The kernel column is (-y, x) up to sign/scale.
        let col = syz.column(0);
        let c0 = col.component(0);
        let c1 = col.component(1);
        assert_eq!(c0.total_degree(), Some(1));
        assert_eq!(c1.total_degree(), Some(1));
    }

    #[test]
    fn syzygies_of_injective_column_are_empty() {
        let r = RingSpec::grevlex(&["x", "y"]);
        let m = mat(&r, &[&["1"], &["0"]], vec![0, 0], vec![0]);
        let syz = syzygies(&m, &b()).unwrap();
        assert_eq!(syz.cols(), 0);
    }

    #[test]
    fn koszul_resolution_of_two_variables() {
        let r = RingSpec::grevlex(&["x", "y"]);
        let i = Ideal::parse(&r, &["x", "y"]).unwrap();
        let res = minimal_free_resolution(&i, 4, &b()).unwrap();
        assert_eq!(res.ranks(), vec![1, 2, 1]);
        assert!(res.composes_to_zero().unwrap());
        assert!(res.is_minimal());
        assert_eq!(projective_dimension(&i, &b()).unwrap(), 2);
    }

    #[test]
    fn koszul_resolution_of_four_variables() {
        let r = RingSpec::grevlex(&["x", "y", "z", "w"]);
        let i = Ideal::parse(&r, &["x", "y", "z", "w"]).unwrap();
        let res = minimal_free_resolution(&i, 5, &b()).unwrap();
        assert_eq!(res.ranks(), vec![1, 4, 6, 4, 1]);
        assert!(res.composes_to_zero().unwrap());
        assert_eq!(projective_dimension(&i, &b()).unwrap(), 4);
    }

    #[test]
    fn degenerate_syzygies_verified_by_composition() {
        let r = RingSpec::grevlex(&["x", "y"]);
        let m = mat(&r, &[&["x^2", "x*y", "y^2"]], vec![0], vec![2, 2, 2]);
        let syz = syzygies(&m, &b()).unwrap();
        assert!(m.compose(&syz).unwrap().is_zero());
        // Kernel of a 1x3 of quadrics in 2 vars: two linear syzygy columns
        // after minimization.
        let mut mats = vec![m, syz];
        minimize_complex(&mut mats);
        assert_eq!(mats[1].cols(), 2);
    }

    #[test]
    fn module_pd_examples() {
        let r = RingSpec::grevlex(&["x", "y"]);
        // Cokernel of [x y]: S/(x,y), pd 2.
        let m = mat(&r, &[&["x", "y"]], vec![0], vec![1, 1]);
        assert_eq!(module_pd(&m, &b()).unwrap(), 2);
        // Zero matrix: free cokernel, pd 0.
        let z = mat(&r, &[&["0", "0"], &["0", "0"]], vec![0, 0], vec![1, 1]);
        assert_eq!(module_pd(&z, &b()).unwrap(), 0);
    }

    #[test]
    fn complete_intersection_resolution() {
        let r = RingSpec::grevlex(&["x", "y", "z"]);
        let i = Ideal::parse(&r, &["x^2", "y^3", "z^2"]).unwrap();
        let res = minimal_free_resolution(&i, 4, &b()).unwrap();
        assert_eq!(res.ranks(), vec![1, 3, 3, 1]);
        assert!(res.composes_to_zero().unwrap());
    }

    #[test]
    fn pd_invariant_under_generator_permutation() {
        let r = RingSpec::grevlex(&["x", "y", "z", "w"]);
        let gens = ["x*y - z*w", "x^2*z", "y^2*w", "z^3"];
        let i1 = Ideal::parse(&r, &gens).unwrap();
        let mut rev = gens;
        rev.reverse();
        let i2 = Ideal::parse(&r, &rev).unwrap();
        assert_eq!(
            projective_dimension(&i1, &b()).unwrap(),
            projective_dimension(&i2, &b()).unwrap()
        );
    }

    #[test]
    fn alternating_rank_sum_vanishes() {
        let r = RingSpec::grevlex(&["x", "y", "z"]);
        let i = Ideal::parse(&r, &["x*y", "y*z", "x*z"]).unwrap();
        let res = minimal_free_resolution(&i, 4, &b()).unwrap();
        let ranks = res.ranks();
        let alt: i64 = ranks
            .iter()
            .enumerate()
            .map(|(k, &r)| if k % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum();
        assert_eq!(alt, 0);
    }
}
