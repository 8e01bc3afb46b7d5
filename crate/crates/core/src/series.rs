//! Truncated power series at the place `(0, 0)`, with `phi = x` as the local
//! parameter, and the conversions between series and the standard basis.
//!
//! The curve relation gives `y = sum_b (-1)^b phi^((q+1) q^b)`, so monomial
//! series are very sparse: to any precision `N <= q^3` a monomial `x^i y^j`
//! has at most `q` nonzero coefficients. Conversion *from* a series uses the
//! alternate basis of `L(m P_inf)` with x-degree at most `q`, whose members
//! have pairwise-distinct vanishing orders `i + j(q+1)` at `(0, 0)`, so back
//! substitution eliminates one series coefficient at a time.

use crate::curve::{CurveParams, RingElement};
use crate::error::{Error, Result};
use crate::field::{Fel, FieldContext};
use crate::poly::UniPoly;

/// Power series truncated to a fixed precision: exactly `precision()`
/// coefficients are stored, and arithmetic never reports anything beyond.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    c: Vec<Fel>,
}

impl std::fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| format!("{v}*phi^{i}"))
            .collect();
        write!(
            f,
            "{} + O(phi^{})",
            if terms.is_empty() { "0".into() } else { terms.join(" + ") },
            self.c.len()
        )
    }
}

impl TruncatedSeries {
    pub fn zero(precision: usize) -> TruncatedSeries {
        TruncatedSeries {
            c: vec![0; precision],
        }
    }

    pub fn from_coeffs(c: Vec<Fel>) -> TruncatedSeries {
        TruncatedSeries { c }
    }

    /// A polynomial read as a series; coefficients beyond the precision are
    /// silently cut, which callers must want.
    pub fn from_poly(p: &UniPoly, precision: usize) -> TruncatedSeries {
        let mut c = p.coeffs().to_vec();
        c.resize(precision, 0);
        c.truncate(precision);
        TruncatedSeries { c }
    }

    pub fn precision(&self) -> usize {
        self.c.len()
    }

    pub fn coeff(&self, i: usize) -> Fel {
        self.c[i]
    }

    pub fn coeffs(&self) -> &[Fel] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&v| v == 0)
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|&v| v != 0)
    }

    pub fn truncated(&self, precision: usize) -> TruncatedSeries {
        assert!(precision <= self.c.len());
        TruncatedSeries {
            c: self.c[..precision].to_vec(),
        }
    }

    pub fn add(&self, other: &TruncatedSeries, f: &FieldContext) -> TruncatedSeries {
        let n = self.c.len().min(other.c.len());
        TruncatedSeries {
            c: (0..n).map(|i| f.add(self.c[i], other.c[i])).collect(),
        }
    }

    pub fn sub(&self, other: &TruncatedSeries, f: &FieldContext) -> TruncatedSeries {
        let n = self.c.len().min(other.c.len());
        TruncatedSeries {
            c: (0..n).map(|i| f.sub(self.c[i], other.c[i])).collect(),
        }
    }

    pub fn scale(&self, v: Fel, f: &FieldContext) -> TruncatedSeries {
        TruncatedSeries {
            c: self.c.iter().map(|&w| f.mul(w, v)).collect(),
        }
    }

    pub fn mul(&self, other: &TruncatedSeries, f: &FieldContext) -> TruncatedSeries {
        let n = self.c.len().min(other.c.len());
        let mut c = vec![0 as Fel; n];
        for (i, &a) in self.c.iter().enumerate().take(n) {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate().take(n - i) {
                if b != 0 {
                    c[i + j] = f.add(c[i + j], f.mul(a, b));
                }
            }
        }
        TruncatedSeries { c }
    }

    /// Multiply by `phi^k`, keeping the precision.
    pub fn shift_up(&self, k: usize) -> TruncatedSeries {
        let n = self.c.len();
        let mut c = vec![0 as Fel; n];
        for i in 0..n.saturating_sub(k) {
            c[i + k] = self.c[i];
        }
        TruncatedSeries { c }
    }

    /// Divide by `phi^k`; the precision drops to `n - k`. Requires the low
    /// coefficients to vanish.
    pub fn shift_down(&self, k: usize) -> TruncatedSeries {
        assert!(self.c[..k].iter().all(|&v| v == 0), "not divisible by phi^k");
        TruncatedSeries {
            c: self.c[k..].to_vec(),
        }
    }

    /// In-place `self -= c * phi^shift * other` over the common range.
    pub fn sub_scaled_shifted(
        &mut self,
        other: &TruncatedSeries,
        v: Fel,
        shift: usize,
        f: &FieldContext,
    ) {
        if v == 0 {
            return;
        }
        let n = self.c.len();
        for (j, &b) in other.c.iter().enumerate() {
            if b != 0 && j + shift < n {
                self.c[j + shift] = f.sub(self.c[j + shift], f.mul(v, b));
            }
        }
    }
}

/// `t` with `s * t = 1 mod phi^precision`, by Newton iteration
/// `t <- t(2 - s t)`. Rejects non-units.
pub fn series_invert(
    s: &TruncatedSeries,
    precision: usize,
    f: &FieldContext,
) -> Result<TruncatedSeries> {
    if s.precision() < precision {
        return Err(Error::PrecisionTooLow {
            have: s.precision(),
            need: precision,
        });
    }
    if s.coeff(0) == 0 {
        return Err(Error::InvalidParameter(
            "series_invert: constant term is zero".into(),
        ));
    }
    let two = f.from_int(2);
    let mut t = TruncatedSeries::from_coeffs(vec![f.inv(s.coeff(0))]);
    let mut k = 1;
    while k < precision {
        k = (2 * k).min(precision);
        let sk = s.truncated(k);
        let mut tk = t.clone();
        tk.c.resize(k, 0);
        // t <- 2t - s t^2
        let st = sk.mul(&tk, f);
        t = tk.scale(two, f).sub(&tk.mul(&st, f), f);
    }
    Ok(t)
}

/// Series of `y` to the given precision: `sum_b (-1)^b phi^((q+1) q^b)`.
pub fn y_series(curve: &CurveParams, precision: usize) -> TruncatedSeries {
    let f = curve.field();
    let q = curve.q();
    let mut s = TruncatedSeries::zero(precision);
    let mut e = q + 1; // (q+1) q^b
    let mut sign = 1 as Fel;
    while e < precision {
        s.c[e] = sign;
        sign = f.neg(sign);
        match e.checked_mul(q) {
            Some(next) => e = next,
            None => break,
        }
    }
    s
}

/// Series of `y^0, y^1, ..., y^jmax`.
pub fn y_power_series(curve: &CurveParams, jmax: usize, precision: usize) -> Vec<TruncatedSeries> {
    let f = curve.field();
    let y = y_series(curve, precision);
    let mut out = Vec::with_capacity(jmax + 1);
    let mut one = TruncatedSeries::zero(precision);
    if precision > 0 {
        one.c[0] = 1;
    }
    out.push(one);
    for j in 1..=jmax {
        let next = out[j - 1].mul(&y, f);
        out.push(next);
    }
    out
}

/// Series expansion of a standard-basis element at `(0, 0)`.
pub fn to_series(curve: &CurveParams, e: &RingElement, precision: usize) -> TruncatedSeries {
    let f = curve.field();
    let ypow = y_power_series(curve, curve.q() - 1, precision);
    let mut acc = TruncatedSeries::zero(precision);
    for (j, g) in e.coeffs().iter().enumerate() {
        if !g.is_zero() {
            let gs = TruncatedSeries::from_poly(g, precision);
            acc = acc.add(&ypow[j].mul(&gs, f), f);
        }
    }
    acc
}

/// Standard-basis form of the basis monomial `x^i y^j` with `i <= q`,
/// through the split `j = a + bq` and `y^q = x^(q+1) - y`:
/// `y^j = y^a (x^(q+1) - y)^b`, with the high-degree case split so no term
/// ever leaves y-degree `< q`.
pub fn hat_expand(curve: &CurveParams, i: usize, j: usize) -> RingElement {
    let q = curve.q();
    let f = curve.field();
    assert!(i <= q);
    if j < q {
        return curve.monomial_elem(1, i, j);
    }
    let a = j % q;
    let b = j / q;
    assert!(b <= q - 1, "j = a + bq with b < q covers every basis monomial");
    // binomial terms of (x^(q+1) - y)^b: u -> binom(b,u) (-1)^u x^((q+1)(b-u)) y^u
    let term = |u: usize| -> (Fel, usize) {
        let mut c = curve.field().binomial(b, u);
        if u % 2 == 1 {
            c = f.neg(c);
        }
        (c, (q + 1) * (b - u))
    };
    let mut coeffs = vec![UniPoly::zero(); q];
    if a + b <= q - 1 {
        for u in 0..=b {
            let (c, xdeg) = term(u);
            coeffs[a + u] = coeffs[a + u].add(&UniPoly::monomial(c, xdeg), f);
        }
    } else {
        // split (x^(q+1) - y)^b = p1 + y^(q-a) p2 by y-degree, then
        // y^j = y^a p1 + (x^(q+1) - y) p2
        for u in 0..=b {
            let (c, xdeg) = term(u);
            if u < q - a {
                coeffs[a + u] = coeffs[a + u].add(&UniPoly::monomial(c, xdeg), f);
            } else {
                let shifted = u - (q - a);
                // (x^(q+1) - y) * c x^xdeg y^shifted
                coeffs[shifted] =
                    coeffs[shifted].add(&UniPoly::monomial(c, xdeg + q + 1), f);
                coeffs[shifted + 1] =
                    coeffs[shifted + 1].sub(&UniPoly::monomial(c, xdeg), f);
            }
        }
    }
    let e = curve.from_vec(coeffs);
    if i > 0 {
        curve.mul_by_unipoly(&e, &UniPoly::monomial(1, i))
    } else {
        e
    }
}

/// One step of back substitution bookkeeping: hat-basis coordinates found so
/// far.
pub(crate) type HatCoords = Vec<(usize, usize, Fel)>;

/// Eliminates every visible coefficient of `s` against the hat basis of
/// `L(m P_inf)`. Returns the hat coordinates, or `None` when some coefficient
/// cannot be matched by a basis monomial (the series is not in the space).
pub(crate) fn hat_eliminate(
    curve: &CurveParams,
    s: &TruncatedSeries,
    m: i64,
) -> Option<HatCoords> {
    let q = curve.q();
    let f = curve.field();
    let precision = s.precision();
    let jmax = if m >= 0 { (m as usize) / (q + 1) } else { 0 };
    let ypow = y_power_series(curve, jmax, precision);
    let mut work = s.clone();
    let mut coords = vec![];
    while let Some(v) = work.valuation() {
        // the unique hat monomial with vanishing order v = i + j(q+1), i <= q
        let j = v / (q + 1);
        let i = v % (q + 1);
        if j > jmax || (q * i + (q + 1) * j) as i64 > m {
            return None;
        }
        let c = work.coeff(v);
        work.sub_scaled_shifted(&ypow[j], c, i, f);
        debug_assert_eq!(work.coeff(v), 0);
        coords.push((i, j, c));
    }
    Some(coords)
}

pub(crate) fn hat_coords_to_elem(curve: &CurveParams, coords: &HatCoords) -> RingElement {
    let mut e = curve.zero_elem();
    for &(i, j, c) in coords {
        let m = curve.scale_elem(&hat_expand(curve, i, j), c);
        e = curve.add_elem(&e, &m);
    }
    e
}

/// Decides whether the series is the expansion of some `f` in `L(m P_inf)`
/// and returns it if so. Needs precision at least `m + 1`; with exactly that
/// much the answer is unique.
pub fn from_series(
    curve: &CurveParams,
    s: &TruncatedSeries,
    m: i64,
) -> Result<Option<RingElement>> {
    if m < 0 || m >= curve.n() as i64 {
        return Err(Error::InvalidParameter(format!(
            "pole bound m = {m} outside [0, n)"
        )));
    }
    let need = (m + 1) as usize;
    if s.precision() < need {
        return Err(Error::PrecisionTooLow {
            have: s.precision(),
            need,
        });
    }
    Ok(hat_eliminate(curve, s, m).map(|coords| hat_coords_to_elem(curve, &coords)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn x_is_phi() {
        let curve = CurveParams::new(3).unwrap();
        let x = curve.monomial_elem(1, 1, 0);
        let s = to_series(&curve, &x, 9);
        let mut expect = TruncatedSeries::zero(9);
        expect.c[1] = 1;
        assert_eq!(s, expect);
    }

    #[test]
    fn y_series_q2_matches_formula() {
        let curve = CurveParams::new(2).unwrap();
        let y = curve.monomial_elem(1, 0, 1);
        let s = to_series(&curve, &y, 13);
        // phi^3 + phi^6 + phi^12 (signs vanish in characteristic 2)
        let nonzero: Vec<usize> = (0..13).filter(|&i| s.coeff(i) != 0).collect();
        assert_eq!(nonzero, vec![3, 6, 12]);
        assert!(s.coeffs().iter().all(|&v| v == 0 || v == 1));
        // curve relation: s^2 + s = phi^3 + O(phi^13)
        let f = curve.field();
        let lhs = s.mul(&s, f).add(&s, f);
        let mut expect = TruncatedSeries::zero(13);
        expect.c[3] = 1;
        assert_eq!(lhs, expect);
    }

    #[test]
    fn monomial_series_sparsity() {
        // at most q nonzero terms up to precision q^3; at most N/q^2 for j < q
        for q in [2usize, 3, 4] {
            let curve = CurveParams::new(q as u64).unwrap();
            let n = q * q * q;
            let ypow = y_power_series(&curve, q - 1, n);
            for (j, s) in ypow.iter().enumerate() {
                let count = s.coeffs().iter().filter(|&&v| v != 0).count();
                assert!(count <= q, "y^{j} has {count} terms at precision {n}");
                for prefix in 1..=n {
                    let c = s.coeffs()[..prefix].iter().filter(|&&v| v != 0).count();
                    assert!(c <= prefix.div_ceil(q * q), "precision {prefix}: {c}");
                }
            }
        }
    }

    #[test]
    fn to_series_is_multiplicative() {
        let curve = CurveParams::new(3).unwrap();
        let f = curve.field();
        let mut rng = rand::rngs::StdRng::seed_from_u64(31);
        for _ in 0..50 {
            let a = random_elem(&curve, 3, &mut rng);
            let b = random_elem(&curve, 3, &mut rng);
            let n = 20;
            let lhs = to_series(&curve, &curve.ring_mul(&a, &b), n);
            let rhs = to_series(&curve, &a, n).mul(&to_series(&curve, &b, n), f);
            assert_eq!(lhs, rhs);
        }
    }

    fn random_elem(
        curve: &CurveParams,
        maxdeg: usize,
        rng: &mut impl Rng,
    ) -> RingElement {
        let coeffs = (0..curve.q())
            .map(|_| {
                UniPoly::from_coeffs(
                    (0..=maxdeg)
                        .map(|_| rng.gen_range(0..curve.field().size()) as Fel)
                        .collect(),
                )
            })
            .collect();
        curve.from_vec(coeffs)
    }

    #[test]
    fn hat_expand_examples() {
        let curve = CurveParams::new(2).unwrap();
        // j < q: unchanged
        assert_eq!(hat_expand(&curve, 1, 1), curve.monomial_elem(1, 1, 1));
        // y^2 = x^3 + y in characteristic 2
        let e = hat_expand(&curve, 0, 2);
        let expect = curve.from_vec(vec![UniPoly::monomial(1, 3), UniPoly::one()]);
        assert_eq!(e, expect);
        // y^3 = x^3 y + x^3 + y
        let e = hat_expand(&curve, 0, 3);
        let expect = curve.from_vec(vec![
            UniPoly::monomial(1, 3),
            UniPoly::from_coeffs(vec![1, 0, 0, 1]),
        ]);
        assert_eq!(e, expect);
    }

    #[test]
    fn hat_expand_matches_series_and_stays_small() {
        for q in [2usize, 3, 4] {
            let curve = CurveParams::new(q as u64).unwrap();
            let n = q * q * q;
            let m = (n - 1) as i64;
            let jcap = (m as usize) / (q + 1);
            for i in 0..=q {
                for j in 0..=jcap {
                    if (q * i) as i64 + ((q + 1) * j) as i64 > m {
                        continue;
                    }
                    let e = hat_expand(&curve, i, j);
                    // agrees with the honest power x^i y^j as a series
                    let direct = curve.elem_pow(&curve.monomial_elem(1, 0, 1), j);
                    let direct = curve.mul_by_unipoly(&direct, &UniPoly::monomial(1, i));
                    assert_eq!(e, direct);
                    // at most q + 1 standard monomials
                    let monomials: usize = e
                        .coeffs()
                        .iter()
                        .map(|g| g.coeffs().iter().filter(|&&v| v != 0).count())
                        .sum();
                    assert!(monomials <= q + 1);
                }
            }
        }
    }

    #[test]
    fn hat_basis_has_distinct_vanishing_orders() {
        for q in [2usize, 3, 4] {
            let curve = CurveParams::new(q as u64).unwrap();
            let m = (curve.n() - 1) as i64;
            let mut seen = std::collections::HashSet::new();
            for i in 0..=q {
                for j in 0..=(m as usize) / (q + 1) {
                    if (q * i) as i64 + ((q + 1) * j) as i64 > m {
                        continue;
                    }
                    let v = i + j * (q + 1);
                    assert!(seen.insert(v), "duplicate vanishing order {v}");
                    let s = to_series(&curve, &hat_expand(&curve, i, j), v + 2);
                    assert_eq!(s.valuation(), Some(v));
                }
            }
        }
    }

    #[test]
    fn round_trip_on_random_elements() {
        for (q, m) in [(2u64, 3i64), (2, 5), (3, 10)] {
            let curve = CurveParams::new(q).unwrap();
            let code = crate::codec::CodeParams::new(CurveParams::new(q).unwrap(), m).unwrap();
            let mut rng = rand::rngs::StdRng::seed_from_u64(q as u64 + m as u64);
            for _ in 0..500 {
                let f = code.random_message(&mut rng);
                let s = to_series(&curve, &f, (m + 1) as usize);
                let back = from_series(&curve, &s, m).unwrap();
                assert_eq!(back, Some(f));
            }
        }
    }

    #[test]
    fn from_series_edge_cases() {
        let curve = CurveParams::new(2).unwrap();
        let zero = TruncatedSeries::zero(4);
        assert_eq!(
            from_series(&curve, &zero, 3).unwrap(),
            Some(curve.zero_elem())
        );
        // geometric series 1 + phi + phi^2 + ... is not in L(3 P_inf):
        // checked against exhaustive enumeration of the 64 elements
        let target = TruncatedSeries::from_coeffs(vec![1, 1, 1, 1]);
        let f = curve.field();
        let mut found = false;
        for c0 in f.elements() {
            for c1 in f.elements() {
                for c2 in f.elements() {
                    let e = curve.from_vec(vec![
                        UniPoly::from_coeffs(vec![c0, c1]),
                        UniPoly::constant(c2),
                    ]);
                    if to_series(&curve, &e, 4) == target {
                        found = true;
                    }
                }
            }
        }
        assert!(!found);
        assert_eq!(from_series(&curve, &target, 3).unwrap(), None);
        // precision below m + 1 is rejected
        let short = TruncatedSeries::zero(3);
        assert!(from_series(&curve, &short, 3).is_err());
    }

    #[test]
    fn invert_examples() {
        let curve = CurveParams::new(2).unwrap();
        let f = curve.field();
        let one = TruncatedSeries::from_coeffs(vec![1, 0, 0, 0, 0]);
        assert_eq!(series_invert(&one, 5, f).unwrap(), one);
        // 1/(1 + phi) = 1 + phi + phi^2 + ... in characteristic 2
        let s = TruncatedSeries::from_coeffs(vec![1, 1, 0, 0, 0, 0]);
        let t = series_invert(&s, 6, f).unwrap();
        assert_eq!(t.coeffs(), &[1, 1, 1, 1, 1, 1]);
        // random units invert exactly
        let mut rng = rand::rngs::StdRng::seed_from_u64(4);
        for _ in 0..50 {
            let n = rng.gen_range(1..40);
            let mut c: Vec<Fel> = (0..n).map(|_| rng.gen_range(0..4) as Fel).collect();
            c[0] = rng.gen_range(1..4) as Fel;
            let s = TruncatedSeries::from_coeffs(c);
            let t = series_invert(&s, n, f).unwrap();
            let prod = s.mul(&t, f);
            assert_eq!(prod.coeff(0), 1);
            assert!(prod.coeffs()[1..].iter().all(|&v| v == 0));
        }
        // zero constant term rejected
        let bad = TruncatedSeries::from_coeffs(vec![0, 1]);
        assert!(series_invert(&bad, 2, f).is_err());
    }
}
