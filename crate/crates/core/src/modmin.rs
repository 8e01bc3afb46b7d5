//! Weighted `GF(q^2)[x]`-module minimisation.
//!
//! A square polynomial matrix is brought to *weak Popov form* — all row
//! leading positions distinct — by the Mulders–Storjohann reduction. A row of
//! such a matrix realises the minimal degree in its leading-position class of
//! the row space, which solves the minimal-vector problem for any index set.
//!
//! `(nu, w)`-weighted degrees `max_i { w_i + nu * deg v_i }` are handled by
//! two injective embeddings: the blow-up map `W` (columns `x^(w_i) v_i(x^nu)`,
//! kept for cross-checks) and the cheap map `Pi` (scale column `i` by
//! `x^(floor(w_i / nu))`, then permute columns by the residues `w_i mod nu`).
//! Minimising the `Pi` image and undoing the embedding minimises the weighted
//! degree.

use crate::error::{Error, Result};
use crate::field::{Fel, FieldContext};
use crate::poly::UniPoly;

/// Degree of a row: max over entries, `None` for a zero row.
pub fn row_degree(row: &[UniPoly]) -> Option<usize> {
    row.iter().filter_map(|p| p.degree()).max()
}

/// Right-most position attaining the row degree; `None` for a zero row.
pub fn leading_position(row: &[UniPoly]) -> Option<usize> {
    let deg = row_degree(row)?;
    row.iter().rposition(|p| p.degree() == Some(deg))
}

#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: Vec<Vec<UniPoly>>,
    cols: usize,
}

impl std::fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "PolyMatrix {}x{} [", self.rows.len(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r:?}")?;
        }
        write!(f, "]")
    }
}

impl PolyMatrix {
    pub fn from_rows(rows: Vec<Vec<UniPoly>>) -> PolyMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols));
        PolyMatrix { rows, cols }
    }

    pub fn identity(n: usize) -> PolyMatrix {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { UniPoly::one() } else { UniPoly::zero() })
                    .collect()
            })
            .collect();
        PolyMatrix { rows, cols: n }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &UniPoly {
        &self.rows[r][c]
    }

    pub fn row(&self, r: usize) -> &[UniPoly] {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[Vec<UniPoly>] {
        &self.rows
    }

    pub fn is_identity(&self) -> bool {
        self.rows.len() == self.cols
            && self.rows.iter().enumerate().all(|(i, r)| {
                r.iter().enumerate().all(|(j, p)| {
                    if i == j {
                        *p == UniPoly::one()
                    } else {
                        p.is_zero()
                    }
                })
            })
    }

    /// Max entry degree, `None` if the matrix is zero.
    pub fn degree(&self) -> Option<usize> {
        self.rows.iter().filter_map(|r| row_degree(r)).max()
    }

    /// Sum of row degrees; requires no zero rows.
    pub fn row_degree_sum(&self) -> Option<i64> {
        self.rows
            .iter()
            .map(|r| row_degree(r).map(|d| d as i64))
            .sum()
    }

    /// `v * M` for a row vector `v`.
    pub fn left_mul_vec(&self, v: &[UniPoly], f: &FieldContext) -> Vec<UniPoly> {
        assert_eq!(v.len(), self.rows.len());
        let mut out = vec![UniPoly::zero(); self.cols];
        for (vi, row) in v.iter().zip(&self.rows) {
            if vi.is_zero() {
                continue;
            }
            for (o, e) in out.iter_mut().zip(row) {
                *o = o.add(&vi.mul(e, f), f);
            }
        }
        out
    }

    /// `A` appended to the right of `self`.
    pub fn hstack(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.nrows(), other.nrows());
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.iter().chain(b).cloned().collect())
            .collect();
        PolyMatrix::from_rows(rows)
    }
}

/// Weak Popov form of a full-rank square matrix under Mulders–Storjohann,
/// together with the number of simple transformations applied.
///
/// When two rows collide on leading position, the one of larger degree is
/// reduced by the smaller (larger row index on ties), which makes the output
/// deterministic. A row cancelling to zero means the input was rank deficient.
pub fn weak_popov(m: &PolyMatrix, f: &FieldContext) -> Result<(PolyMatrix, u64)> {
    assert_eq!(m.nrows(), m.ncols(), "minimisation needs a square matrix");
    let mut rows = m.rows.clone();
    let mut stats: Vec<(usize, usize)> = Vec::with_capacity(rows.len());
    for r in &rows {
        let deg = row_degree(r).ok_or(Error::RankDeficient)?;
        let lp = leading_position(r).unwrap();
        stats.push((deg, lp));
    }

    let mut owner: Vec<Option<usize>> = vec![None; m.ncols()];
    let mut steps = 0u64;
    for start in 0..rows.len() {
        let mut r = start;
        loop {
            let (deg_r, lp) = stats[r];
            match owner[lp] {
                None => {
                    owner[lp] = Some(r);
                    break;
                }
                Some(o) => {
                    // pick the victim: larger degree, then larger index
                    let (deg_o, _) = stats[o];
                    let (victim, reducer) = if deg_r > deg_o
                        || (deg_r == deg_o && r > o)
                    {
                        (r, o)
                    } else {
                        owner[lp] = Some(r);
                        (o, r)
                    };
                    let shift = stats[victim].0 - stats[reducer].0;
                    let c = f.div(rows[victim][lp].lc(), rows[reducer][lp].lc());
                    let reducer_row = std::mem::take(&mut rows[reducer]);
                    for (v, p) in rows[victim].iter_mut().zip(&reducer_row) {
                        v.sub_scaled_shifted(p, c, shift, f);
                    }
                    rows[reducer] = reducer_row;
                    steps += 1;
                    let deg = row_degree(&rows[victim]).ok_or(Error::RankDeficient)?;
                    stats[victim] = (deg, leading_position(&rows[victim]).unwrap());
                    r = victim;
                }
            }
        }
    }
    Ok((PolyMatrix::from_rows(rows), steps))
}

pub fn is_weak_popov(m: &PolyMatrix) -> bool {
    let mut seen = vec![false; m.ncols()];
    m.rows.iter().all(|r| match leading_position(r) {
        None => false,
        Some(lp) => !std::mem::replace(&mut seen[lp], true),
    })
}

/// Index of the row with leading position in `index_set` and minimal degree,
/// ties broken by least leading position.
pub fn minimal_row(m: &PolyMatrix, index_set: &[usize]) -> Result<usize> {
    m.rows
        .iter()
        .enumerate()
        .filter_map(|(i, r)| {
            let lp = leading_position(r)?;
            if index_set.contains(&lp) {
                Some((row_degree(r).unwrap(), lp, i))
            } else {
                None
            }
        })
        .min()
        .map(|(_, _, i)| i)
        .ok_or(Error::NoRowInIndexSet)
}

/// `(nu, w)` weights plus the column permutation they induce:
/// `pi(i) > pi(j)` iff `w_i mod nu > w_j mod nu`, or the residues tie and
/// `i > j`.
#[derive(Clone, Debug)]
pub struct WeightSpec {
    pub nu: usize,
    pub w: Vec<usize>,
    pi: Vec<usize>,
}

impl WeightSpec {
    pub fn new(nu: usize, w: Vec<usize>) -> WeightSpec {
        assert!(nu >= 1);
        let mut order: Vec<usize> = (0..w.len()).collect();
        order.sort_by_key(|&i| (w[i] % nu, i));
        let mut pi = vec![0; w.len()];
        for (rank, &i) in order.iter().enumerate() {
            pi[i] = rank;
        }
        WeightSpec { nu, w, pi }
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    pub fn pi(&self, i: usize) -> usize {
        self.pi[i]
    }

    /// Weighted degree `max_i { w_i + nu * deg v_i }` over nonzero entries.
    pub fn weighted_degree(&self, row: &[UniPoly]) -> Option<i64> {
        row.iter()
            .enumerate()
            .filter_map(|(i, p)| {
                p.degree()
                    .map(|d| self.w[i] as i64 + (self.nu * d) as i64)
            })
            .max()
    }

    /// Right-most position attaining the weighted degree.
    pub fn weighted_lp(&self, row: &[UniPoly]) -> Option<usize> {
        let deg = self.weighted_degree(row)?;
        row.iter().enumerate().rev().find_map(|(i, p)| {
            let d = p.degree()?;
            (self.w[i] as i64 + (self.nu * d) as i64 == deg).then_some(i)
        })
    }
}

/// The blow-up embedding `W`: entry `i` becomes `x^(w_i) v_i(x^nu)`.
pub fn w_embed_row(row: &[UniPoly], spec: &WeightSpec) -> Vec<UniPoly> {
    row.iter()
        .enumerate()
        .map(|(i, p)| {
            let mut c = vec![0 as Fel; spec.w[i] + spec.nu * p.coeffs().len() + 1];
            for (d, &v) in p.coeffs().iter().enumerate() {
                c[spec.w[i] + spec.nu * d] = v;
            }
            UniPoly::from_coeffs(c)
        })
        .collect()
}

pub fn w_embed(m: &PolyMatrix, spec: &WeightSpec) -> PolyMatrix {
    PolyMatrix::from_rows(m.rows.iter().map(|r| w_embed_row(r, spec)).collect())
}

/// The permuted embedding `Pi`: scale entry `i` by `x^(floor(w_i / nu))` and
/// move it to position `pi(i)`.
pub fn pi_embed_row(row: &[UniPoly], spec: &WeightSpec) -> Vec<UniPoly> {
    let mut out = vec![UniPoly::zero(); row.len()];
    for (i, p) in row.iter().enumerate() {
        out[spec.pi[i]] = p.shift_up(spec.w[i] / spec.nu);
    }
    out
}

pub fn pi_embed(m: &PolyMatrix, spec: &WeightSpec) -> PolyMatrix {
    PolyMatrix::from_rows(m.rows.iter().map(|r| pi_embed_row(r, spec)).collect())
}

/// Inverse of [`pi_embed_row`]. The scaling must divide off exactly; a
/// failure signals a logic error, since reduced rows stay in the embedded
/// module.
pub fn pi_extract(row: &[UniPoly], spec: &WeightSpec) -> Result<Vec<UniPoly>> {
    let mut out = vec![UniPoly::zero(); row.len()];
    for (i, slot) in out.iter_mut().enumerate() {
        let p = &row[spec.pi[i]];
        *slot = p.shift_down_exact(spec.w[i] / spec.nu).ok_or_else(|| {
            Error::InvalidParameter("pi_extract: entry not divisible by its x power".into())
        })?;
    }
    Ok(out)
}

/// Solves the weighted minimal-vector problem: a vector of the row space of
/// `v` whose `(nu, w)`-weighted degree is minimal among vectors with weighted
/// leading position in `index_set`. Returns the vector and the number of
/// reduction steps spent.
pub fn minimize_weighted(
    v: &PolyMatrix,
    spec: &WeightSpec,
    index_set: &[usize],
    f: &FieldContext,
) -> Result<(Vec<UniPoly>, u64)> {
    assert!(!index_set.is_empty());
    let embedded = pi_embed(v, spec);
    let (u, steps) = weak_popov(&embedded, f)?;
    let permuted: Vec<usize> = index_set.iter().map(|&i| spec.pi[i]).collect();
    let row = minimal_row(&u, &permuted)?;
    Ok((pi_extract(u.row(row), spec)?, steps))
}

/// Determinant by fraction-free (Bareiss) elimination; intended for the
/// small matrices that show up in tests and diagnostics.
pub fn determinant(m: &PolyMatrix, f: &FieldContext) -> UniPoly {
    assert_eq!(m.nrows(), m.ncols());
    let n = m.nrows();
    let mut a: Vec<Vec<UniPoly>> = m.rows.clone();
    let mut sign_flip = false;
    let mut prev = UniPoly::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return UniPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j]
                    .mul(&a[k][k], f)
                    .sub(&a[i][k].mul(&a[k][j], f), f);
                a[i][j] = num.div_exact(&prev, f);
            }
            a[i][k] = UniPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign_flip {
        det.neg(f)
    } else {
        det
    }
}

/// Orthogonality defect `rowdeg V - deg det V` (nonnegative for full-rank
/// square matrices, zero exactly in reduced forms).
pub fn orthogonality_defect(m: &PolyMatrix, f: &FieldContext) -> Result<i64> {
    let det = determinant(m, f);
    let dd = det.degree().ok_or(Error::RankDeficient)? as i64;
    let rd = m.row_degree_sum().ok_or(Error::RankDeficient)?;
    Ok(rd - dd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldContext;
    use rand::{Rng, SeedableRng};

    fn f4() -> FieldContext {
        FieldContext::new(2).unwrap()
    }

    fn rand_poly(maxdeg: usize, f: &FieldContext, rng: &mut impl Rng) -> UniPoly {
        UniPoly::from_coeffs(
            (0..=maxdeg)
                .map(|_| rng.gen_range(0..f.size()) as Fel)
                .collect(),
        )
    }

    fn rand_matrix(n: usize, maxdeg: usize, f: &FieldContext, rng: &mut impl Rng) -> PolyMatrix {
        loop {
            let m = PolyMatrix::from_rows(
                (0..n)
                    .map(|_| (0..n).map(|_| rand_poly(maxdeg, f, rng)).collect())
                    .collect(),
            );
            if !determinant(&m, f).is_zero() {
                return m;
            }
        }
    }

    #[test]
    fn lp_and_degree_examples() {
        let one = UniPoly::one();
        let x = UniPoly::monomial(1, 1);
        let x2 = UniPoly::monomial(1, 2);
        let row = vec![one.clone(), x.clone()];
        assert_eq!(leading_position(&row), Some(1));
        assert_eq!(row_degree(&row), Some(1));
        let row = vec![x.clone(), x.clone()];
        assert_eq!(leading_position(&row), Some(1));
        let row = vec![x2, UniPoly::zero(), x];
        assert_eq!(leading_position(&row), Some(0));
        assert_eq!(row_degree(&row), Some(2));
        assert_eq!(leading_position(&[UniPoly::zero()]), None);
    }

    #[test]
    fn weak_popov_identity_and_fixed_points() {
        let f = f4();
        let id = PolyMatrix::identity(3);
        let (u, steps) = weak_popov(&id, &f).unwrap();
        assert_eq!(u, id);
        assert_eq!(steps, 0);
        // already in weak Popov form: returned unchanged
        let m = PolyMatrix::from_rows(vec![
            vec![UniPoly::monomial(1, 2), UniPoly::one()],
            vec![UniPoly::one(), UniPoly::monomial(1, 1)],
        ]);
        assert!(is_weak_popov(&m));
        let (u, steps) = weak_popov(&m, &f).unwrap();
        assert_eq!(u, m);
        assert_eq!(steps, 0);
    }

    #[test]
    fn weak_popov_reduces_colliding_rows() {
        let f = f4();
        let m = PolyMatrix::from_rows(vec![
            vec![UniPoly::one(), UniPoly::monomial(1, 1)],
            vec![UniPoly::one(), UniPoly::from_coeffs(vec![1, 1])],
        ]);
        let (u, _) = weak_popov(&m, &f).unwrap();
        assert!(is_weak_popov(&u));
        // unimodular equivalence preserves the determinant degree (0 here)
        assert_eq!(determinant(&u, &f).degree(), Some(0));
        assert_row_space_equal(&m, &u, &f);
    }

    #[test]
    fn weak_popov_rejects_rank_deficiency() {
        let f = f4();
        let row = vec![UniPoly::one(), UniPoly::monomial(1, 1)];
        let m = PolyMatrix::from_rows(vec![row.clone(), row]);
        assert!(matches!(weak_popov(&m, &f), Err(Error::RankDeficient)));
    }

    /// Each row of `a` must be an `F[x]`-combination of the rows of `b` —
    /// checked by solving the coefficient-level linear system — and vice
    /// versa.
    fn assert_row_space_equal(a: &PolyMatrix, b: &PolyMatrix, f: &FieldContext) {
        assert!(rows_in_span(a, b, f));
        assert!(rows_in_span(b, a, f));
    }

    fn rows_in_span(a: &PolyMatrix, b: &PolyMatrix, f: &FieldContext) -> bool {
        let bound = a.degree().unwrap_or(0) + b.degree().unwrap_or(0) + 1;
        a.rows()
            .iter()
            .all(|row| row_in_span(row, b, bound, f))
    }

    fn row_in_span(row: &[UniPoly], b: &PolyMatrix, dbound: usize, f: &FieldContext) -> bool {
        // unknowns: coefficients of multipliers p_1..p_rho with deg <= dbound
        let rho = b.nrows();
        let unknowns = rho * (dbound + 1);
        let height = b.ncols() * (dbound + b.degree().unwrap_or(0) + 2);
        let mut mat = crate::linalg::DenseMatrix::zero(height, unknowns);
        let mut rhs = vec![0 as Fel; height];
        for col in 0..b.ncols() {
            for deg in 0..height / b.ncols() {
                let r = col * (height / b.ncols()) + deg;
                rhs[r] = row[col].coeff(deg);
                for which in 0..rho {
                    for d in 0..=dbound {
                        if deg >= d {
                            let c = b.entry(which, col).coeff(deg - d);
                            mat.set(r, which * (dbound + 1) + d, c);
                        }
                    }
                }
            }
        }
        crate::linalg::solve(&mat, &rhs, f).is_some()
    }

    #[test]
    fn minimal_row_examples() {
        let m = PolyMatrix::from_rows(vec![
            vec![UniPoly::one(), UniPoly::zero()],
            vec![UniPoly::zero(), UniPoly::monomial(1, 1)],
        ]);
        assert_eq!(minimal_row(&m, &[0, 1]).unwrap(), 0);
        assert_eq!(minimal_row(&m, &[1]).unwrap(), 1);
        let m = PolyMatrix::from_rows(vec![
            vec![UniPoly::monomial(1, 1), UniPoly::zero()],
            vec![UniPoly::zero(), UniPoly::monomial(1, 2)],
        ]);
        assert_eq!(minimal_row(&m, &[0, 1]).unwrap(), 0);
        assert!(matches!(
            minimal_row(&m, &[]),
            Err(Error::NoRowInIndexSet)
        ));
    }

    #[test]
    fn pi_embedding_examples() {
        // zero weights: the identity transformation
        let spec = WeightSpec::new(3, vec![0, 0, 0]);
        let row = vec![UniPoly::one(), UniPoly::monomial(1, 1), UniPoly::zero()];
        assert_eq!(pi_embed_row(&row, &spec), row);
        assert_eq!(pi_extract(&row, &spec).unwrap(), row);

        // nu=2, w=(0,1): no scaling, order kept
        let spec = WeightSpec::new(2, vec![0, 1]);
        let row = vec![UniPoly::one(), UniPoly::one()];
        assert_eq!(pi_embed_row(&row, &spec), row);

        // nu=2, w=(3,2): scale both by x, residues (1,0) swap the columns
        let spec = WeightSpec::new(2, vec![3, 2]);
        let embedded = pi_embed_row(&row, &spec);
        assert_eq!(
            embedded,
            vec![UniPoly::monomial(1, 1), UniPoly::monomial(1, 1)]
        );
        assert_eq!(spec.pi(0), 1);
        assert_eq!(spec.pi(1), 0);
        let distinct = vec![UniPoly::one(), UniPoly::constant(3)];
        let emb = pi_embed_row(&distinct, &spec);
        assert_eq!(emb[0], UniPoly::monomial(3, 1));
        assert_eq!(emb[1], UniPoly::monomial(1, 1));
        assert_eq!(pi_extract(&emb, &spec).unwrap(), distinct);
    }

    #[test]
    fn w_and_pi_weak_popov_agree() {
        // Pi(V) is in weak Popov form iff W(V) is, for random matrices and
        // weights.
        let f = f4();
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(2..5);
            let nu = rng.gen_range(1..4);
            let w: Vec<usize> = (0..n).map(|_| rng.gen_range(0..8)).collect();
            let spec = WeightSpec::new(nu, w);
            let m = rand_matrix(n, 3, &f, &mut rng);
            assert_eq!(
                is_weak_popov(&w_embed(&m, &spec)),
                is_weak_popov(&pi_embed(&m, &spec))
            );
        }
    }

    #[test]
    fn weak_popov_rows_are_minimal() {
        // Prop-style check: for u the row of U sharing LP with a random
        // module element b, deg u <= deg b.
        let f = f4();
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..20 {
            let n = rng.gen_range(2..5);
            let m = rand_matrix(n, 3, &f, &mut rng);
            let (u, _) = weak_popov(&m, &f).unwrap();
            assert!(is_weak_popov(&u));
            for _ in 0..5 {
                let combo: Vec<UniPoly> = (0..n).map(|_| rand_poly(2, &f, &mut rng)).collect();
                let b = m.left_mul_vec(&combo, &f);
                if let Some(lp) = leading_position(&b) {
                    let row = u
                        .rows()
                        .iter()
                        .find(|r| leading_position(r) == Some(lp))
                        .expect("weak Popov basis covers every leading position");
                    assert!(row_degree(row).unwrap() <= row_degree(&b).unwrap());
                }
            }
        }
    }

    #[test]
    fn orthogonality_defect_behaviour() {
        let f = f4();
        let mut rng = rand::rngs::StdRng::seed_from_u64(13);
        for _ in 0..30 {
            let n = rng.gen_range(2..5);
            let m = rand_matrix(n, 3, &f, &mut rng);
            let od = orthogonality_defect(&m, &f).unwrap();
            assert!(od >= 0);
            let (u, _) = weak_popov(&m, &f).unwrap();
            assert_eq!(orthogonality_defect(&u, &f).unwrap(), 0);
            // determinant degree is preserved by the reduction
            assert_eq!(
                determinant(&m, &f).degree(),
                determinant(&u, &f).degree()
            );
        }
    }

    #[test]
    fn minimize_weighted_unweighted_matches_plain() {
        let f = f4();
        let mut rng = rand::rngs::StdRng::seed_from_u64(23);
        for _ in 0..20 {
            let n = rng.gen_range(2..5);
            let m = rand_matrix(n, 3, &f, &mut rng);
            let spec = WeightSpec::new(1, vec![0; n]);
            let all: Vec<usize> = (0..n).collect();
            let (v, _) = minimize_weighted(&m, &spec, &all, &f).unwrap();
            let (u, _) = weak_popov(&m, &f).unwrap();
            let best = minimal_row(&u, &all).unwrap();
            assert_eq!(row_degree(&v), row_degree(u.row(best)));
        }
    }
}
