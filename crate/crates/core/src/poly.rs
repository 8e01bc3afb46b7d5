//! Dense univariate polynomials over `GF(q^2)`.
//!
//! Coefficients are stored lowest degree first; the zero polynomial is the
//! empty vector and reports degree `None`. Desk-scale degrees make schoolbook
//! multiplication the right tool.

use crate::error::{Error, Result};
use crate::field::{Fel, FieldContext};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    c: Vec<Fel>,
}

impl std::fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| match i {
                0 => format!("{v}"),
                1 if v == 1 => "x".into(),
                1 => format!("{v}*x"),
                _ if v == 1 => format!("x^{i}"),
                _ => format!("{v}*x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl UniPoly {
    pub fn zero() -> UniPoly {
        UniPoly { c: vec![] }
    }

    pub fn one() -> UniPoly {
        UniPoly { c: vec![1] }
    }

    pub fn constant(v: Fel) -> UniPoly {
        if v == 0 {
            UniPoly::zero()
        } else {
            UniPoly { c: vec![v] }
        }
    }

    /// `c * x^d`.
    pub fn monomial(v: Fel, d: usize) -> UniPoly {
        if v == 0 {
            return UniPoly::zero();
        }
        let mut c = vec![0; d + 1];
        c[d] = v;
        UniPoly { c }
    }

    pub fn from_coeffs(mut c: Vec<Fel>) -> UniPoly {
        while c.last() == Some(&0) {
            c.pop();
        }
        UniPoly { c }
    }

    pub fn coeffs(&self) -> &[Fel] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Fel {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> Fel {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &UniPoly, f: &FieldContext) -> UniPoly {
        let mut c = vec![0; self.c.len().max(other.c.len())];
        for (i, slot) in c.iter_mut().enumerate() {
            *slot = f.add(self.coeff(i), other.coeff(i));
        }
        UniPoly::from_coeffs(c)
    }

    pub fn sub(&self, other: &UniPoly, f: &FieldContext) -> UniPoly {
        let mut c = vec![0; self.c.len().max(other.c.len())];
        for (i, slot) in c.iter_mut().enumerate() {
            *slot = f.sub(self.coeff(i), other.coeff(i));
        }
        UniPoly::from_coeffs(c)
    }

    pub fn neg(&self, f: &FieldContext) -> UniPoly {
        UniPoly {
            c: self.c.iter().map(|&v| f.neg(v)).collect(),
        }
    }

    pub fn scale(&self, v: Fel, f: &FieldContext) -> UniPoly {
        if v == 0 {
            return UniPoly::zero();
        }
        UniPoly {
            c: self.c.iter().map(|&w| f.mul(w, v)).collect(),
        }
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![0; self.c.len() + k];
        c[k..].copy_from_slice(&self.c);
        UniPoly { c }
    }

    /// Exact division by `x^k`; `None` if some lower coefficient is nonzero.
    pub fn shift_down_exact(&self, k: usize) -> Option<UniPoly> {
        if self.is_zero() {
            return Some(UniPoly::zero());
        }
        if self.c.len() < k || self.c[..k].iter().any(|&v| v != 0) {
            return None;
        }
        Some(UniPoly {
            c: self.c[k..].to_vec(),
        })
    }

    pub fn mul(&self, other: &UniPoly, f: &FieldContext) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![0 as Fel; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        UniPoly { c }
    }

    /// In-place `self -= c * x^shift * other`; the workhorse of row reduction.
    pub fn sub_scaled_shifted(&mut self, other: &UniPoly, c: Fel, shift: usize, f: &FieldContext) {
        if c == 0 || other.is_zero() {
            return;
        }
        let need = other.c.len() + shift;
        if self.c.len() < need {
            self.c.resize(need, 0);
        }
        for (j, &b) in other.c.iter().enumerate() {
            if b != 0 {
                let idx = j + shift;
                self.c[idx] = f.sub(self.c[idx], f.mul(c, b));
            }
        }
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    /// Quotient and remainder with `self = q * b + r`, `deg r < deg b`.
    pub fn divmod(&self, b: &UniPoly, f: &FieldContext) -> Result<(UniPoly, UniPoly)> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let db = b.degree().unwrap();
        let inv_lead = f.inv(b.lc());
        let mut r = self.clone();
        let mut q = UniPoly::zero();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let c = f.mul(r.lc(), inv_lead);
            let shift = dr - db;
            q.c.resize(q.c.len().max(shift + 1), 0);
            q.c[shift] = f.add(q.c[shift], c);
            r.sub_scaled_shifted(b, c, shift, f);
        }
        while q.c.last() == Some(&0) {
            q.c.pop();
        }
        Ok((q, r))
    }

    pub fn rem(&self, b: &UniPoly, f: &FieldContext) -> Result<UniPoly> {
        Ok(self.divmod(b, f)?.1)
    }

    /// Exact division; panics if the division leaves a remainder.
    pub fn div_exact(&self, b: &UniPoly, f: &FieldContext) -> UniPoly {
        let (q, r) = self.divmod(b, f).expect("nonzero divisor");
        assert!(r.is_zero(), "division was not exact");
        q
    }

    pub fn eval(&self, x: Fel, f: &FieldContext) -> Fel {
        let mut acc = 0;
        for &c in self.c.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }
}

/// Unique interpolant of degree `< points.len()` through the given points,
/// by divide and conquer: split, interpolate scaled halves, recombine with
/// the halves' product polynomials.
pub fn lagrange(points: &[(Fel, Fel)], f: &FieldContext) -> Result<UniPoly> {
    let mut seen = vec![false; f.size()];
    for &(x, _) in points {
        if std::mem::replace(&mut seen[x as usize], true) {
            return Err(Error::DuplicatePoint);
        }
    }
    if points.is_empty() {
        return Ok(UniPoly::zero());
    }
    Ok(lagrange_rec(points, f))
}

fn subproduct(points: &[(Fel, Fel)], f: &FieldContext) -> UniPoly {
    let mut m = UniPoly::one();
    for &(x, _) in points {
        m = m.mul(&UniPoly::from_coeffs(vec![f.neg(x), 1]), f);
    }
    m
}

fn lagrange_rec(points: &[(Fel, Fel)], f: &FieldContext) -> UniPoly {
    if points.len() == 1 {
        return UniPoly::constant(points[0].1);
    }
    let (left, right) = points.split_at(points.len() / 2);
    let ml = subproduct(left, f);
    let mr = subproduct(right, f);
    let scaled_left: Vec<(Fel, Fel)> = left
        .iter()
        .map(|&(x, y)| (x, f.div(y, mr.eval(x, f))))
        .collect();
    let scaled_right: Vec<(Fel, Fel)> = right
        .iter()
        .map(|&(x, y)| (x, f.div(y, ml.eval(x, f))))
        .collect();
    let pl = lagrange_rec(&scaled_left, f);
    let pr = lagrange_rec(&scaled_right, f);
    pl.mul(&mr, f).add(&pr.mul(&ml, f), f)
}
