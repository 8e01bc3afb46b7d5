//! Dense linear algebra over `GF(q^2)`.
//!
//! Gaussian elimination on coefficient matrices. The decoders never touch
//! this module — they go through interpolation and module minimisation — so
//! it doubles as an independent oracle in tests, besides backing the odd
//! exhaustive check.

use crate::field::{Fel, FieldContext};

#[derive(Clone, Debug)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Fel>,
}

impl DenseMatrix {
    pub fn zero(rows: usize, cols: usize) -> DenseMatrix {
        DenseMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Fel) -> Self {
        let mut m = DenseMatrix::zero(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Fel {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Fel) {
        self.data[r * self.cols + c] = v;
    }
}

/// Row echelon reduction in place; returns the pivot columns.
fn echelon(m: &mut DenseMatrix, f: &FieldContext) -> Vec<usize> {
    let mut pivots = vec![];
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
            continue;
        };
        for c in 0..m.cols {
            let (a, b) = (m.get(row, c), m.get(p, c));
            m.set(row, c, b);
            m.set(p, c, a);
        }
        let inv = f.inv(m.get(row, col));
        for c in col..m.cols {
            m.set(row, c, f.mul(m.get(row, c), inv));
        }
        for r in 0..m.rows {
            if r != row && m.get(r, col) != 0 {
                let factor = m.get(r, col);
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(m: &DenseMatrix, f: &FieldContext) -> usize {
    let mut work = m.clone();
    echelon(&mut work, f).len()
}

/// Any solution of `m * x = rhs`, or `None` when inconsistent.
pub fn solve(m: &DenseMatrix, rhs: &[Fel], f: &FieldContext) -> Option<Vec<Fel>> {
    assert_eq!(rhs.len(), m.rows);
    let mut aug = DenseMatrix::zero(m.rows, m.cols + 1);
    for r in 0..m.rows {
        for c in 0..m.cols {
            aug.set(r, c, m.get(r, c));
        }
        aug.set(r, m.cols, rhs[r]);
    }
    let pivots = echelon(&mut aug, f);
    if pivots.contains(&m.cols) {
        return None;
    }
    let mut x = vec![0 as Fel; m.cols];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = aug.get(row, m.cols);
    }
    Some(x)
}

/// A basis of the right nullspace of `m`.
pub fn nullspace(m: &DenseMatrix, f: &FieldContext) -> Vec<Vec<Fel>> {
    let mut work = m.clone();
    let pivots = echelon(&mut work, f);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0 as Fel; m.cols];
            v[fc] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(work.get(row, fc));
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldContext;
    use rand::{Rng, SeedableRng};

    #[test]
    fn solve_and_nullspace() {
        let f = FieldContext::new(2).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for _ in 0..50 {
            let n = rng.gen_range(1..6);
            let m = DenseMatrix::from_fn(n, n, |_, _| rng.gen_range(0..f.size()) as Fel);
            let x: Vec<Fel> = (0..n).map(|_| rng.gen_range(0..f.size()) as Fel).collect();
            let rhs: Vec<Fel> = (0..n)
                .map(|r| {
                    (0..n).fold(0, |acc, c| f.add(acc, f.mul(m.get(r, c), x[c])))
                })
                .collect();
            let sol = solve(&m, &rhs, &f).expect("constructed to be consistent");
            // verify m * sol = rhs
            for r in 0..n {
                let got = (0..n).fold(0, |acc, c| f.add(acc, f.mul(m.get(r, c), sol[c])));
                assert_eq!(got, rhs[r]);
            }
            // nullspace vectors really annihilate
            for v in nullspace(&m, &f) {
                for r in 0..n {
                    let got = (0..n).fold(0, |acc, c| f.add(acc, f.mul(m.get(r, c), v[c])));
                    assert_eq!(got, 0);
                }
            }
            assert_eq!(rank(&m, &f) + nullspace(&m, &f).len(), n);
        }
    }

    #[test]
    fn inconsistent_system() {
        let f = FieldContext::new(2).unwrap();
        let mut m = DenseMatrix::zero(2, 1);
        m.set(0, 0, 1);
        m.set(1, 0, 1);
        assert!(solve(&m, &[1, 2], &f).is_none());
        assert!(solve(&m, &[1, 1], &f).is_some());
    }
}
