//! Code parameters, encoding, message sampling and the error channel.

use crate::curve::{CurveParams, RingElement};
use crate::error::{Error, Result};
use crate::field::Fel;
use rand::Rng;

/// A one-point Hermitian code: evaluations at the `n` affine places of the
/// functions with pole order at most `m` at infinity, for `2g - 2 < m < n`.
pub struct CodeParams {
    curve: CurveParams,
    m: i64,
}

impl CodeParams {
    pub fn new(curve: CurveParams, m: i64) -> Result<CodeParams> {
        let n = curve.n() as i64;
        let g = curve.genus();
        if !(2 * g - 2 < m && m < n) {
            return Err(Error::InvalidParameter(format!(
                "m = {m} outside (2g - 2, n) = ({}, {n})",
                2 * g - 2
            )));
        }
        Ok(CodeParams { curve, m })
    }

    pub fn curve(&self) -> &CurveParams {
        &self.curve
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> usize {
        self.curve.n()
    }

    /// Dimension `k = m - g + 1`.
    pub fn k(&self) -> usize {
        (self.m - self.curve.genus() + 1) as usize
    }

    /// Designed distance `d* = n - m`.
    pub fn designed_distance(&self) -> i64 {
        self.curve.n() as i64 - self.m
    }

    /// The monomials `x^i y^j` with `j < q` and order at most `m`, in
    /// increasing order. They form a basis of the message space.
    pub fn message_basis(&self) -> Vec<(usize, usize)> {
        let q = self.curve.q() as i64;
        let mut basis = vec![];
        for j in 0..self.curve.q() {
            let rem = self.m - (q + 1) * j as i64;
            if rem < 0 {
                continue;
            }
            for i in 0..=(rem / q) {
                basis.push((q * i + (q + 1) * j as i64, i as usize, j));
            }
        }
        basis.sort();
        basis.into_iter().map(|(_, i, j)| (i, j)).collect()
    }

    /// Message from coefficients over [`Self::message_basis`].
    pub fn message_from_coeffs(&self, coeffs: &[Fel]) -> RingElement {
        let basis = self.message_basis();
        assert_eq!(coeffs.len(), basis.len());
        let mut f = self.curve.zero_elem();
        for (&c, &(i, j)) in coeffs.iter().zip(&basis) {
            if c != 0 {
                f = self.curve.add_elem(&f, &self.curve.monomial_elem(c, i, j));
            }
        }
        f
    }

    /// Coefficients of a message over [`Self::message_basis`].
    pub fn coeffs_from_message(&self, f: &RingElement) -> Vec<Fel> {
        self.message_basis()
            .iter()
            .map(|&(i, j)| f.coeffs()[j].coeff(i))
            .collect()
    }

    pub fn random_message(&self, rng: &mut impl Rng) -> RingElement {
        let coeffs: Vec<Fel> = (0..self.k())
            .map(|_| rng.gen_range(0..self.curve.field().size()) as Fel)
            .collect();
        self.message_from_coeffs(&coeffs)
    }

    /// Evaluates `f` at the `n` places. Rejects messages outside the code.
    pub fn encode(&self, f: &RingElement) -> Result<Vec<Fel>> {
        if self.curve.order(f).map_or(false, |o| o > self.m) {
            return Err(Error::InvalidParameter(format!(
                "message order {} exceeds m = {}",
                self.curve.order(f).unwrap(),
                self.m
            )));
        }
        Ok(self
            .curve
            .places()
            .iter()
            .map(|p| self.curve.evaluate(f, p))
            .collect())
    }
}

/// Adds an error of Hamming weight exactly `t`: `t` positions drawn without
/// replacement, each moved to a uniformly random *different* symbol. Returns
/// the corrupted word and the error positions.
pub fn apply_errors(
    word: &[Fel],
    t: usize,
    field_size: usize,
    rng: &mut impl Rng,
) -> Result<(Vec<Fel>, Vec<usize>)> {
    if t > word.len() {
        return Err(Error::InvalidParameter(format!(
            "error weight {t} exceeds length {}",
            word.len()
        )));
    }
    let mut out = word.to_vec();
    let mut positions = rand::seq::index::sample(rng, word.len(), t).into_vec();
    positions.sort_unstable();
    for &p in &positions {
        let offset = rng.gen_range(1..field_size) as Fel;
        // adding a uniform nonzero offset is a uniform different symbol
        let old = out[p];
        out[p] = add_offset(old, offset, field_size);
        debug_assert_ne!(out[p], old);
    }
    Ok((out, positions))
}

// Cheap "different symbol" sampler: rotate the index by a nonzero offset.
fn add_offset(v: Fel, offset: Fel, field_size: usize) -> Fel {
    ((v as usize + offset as usize) % field_size) as Fel
}

pub fn hamming_distance(a: &[Fel], b: &[Fel]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}
