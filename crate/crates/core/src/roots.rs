//! Root finding for `Q` in `R[z]`: all `f` in `L(m P_inf)` with `Q(f) = 0`.
//!
//! Everything happens in truncated power series at `(0, 0)`. A congruence
//! `Q(h) = 0 mod phi^k` with `k` above the weighted order of `Q` already
//! forces `Q(h) = 0`, so it is enough to describe the order-`k` roots. Those
//! come in bundles `h + phi^d F[[phi]]`, at most `deg_z Q` of them, produced
//! by halving the target order, shifting `Q` by each partial root and
//! recursing on the stripped remainder.

use crate::curve::{CurveParams, RingElement, ZPoly};
use crate::field::{Fel, FieldContext};
use crate::series::{from_series, hat_coords_to_elem, hat_eliminate, to_series, TruncatedSeries};

/// Polynomial in `z` whose coefficients are series to a common precision.
#[derive(Clone, Debug)]
pub struct SeriesPoly {
    z: Vec<TruncatedSeries>,
}

impl SeriesPoly {
    pub fn new(z: Vec<TruncatedSeries>) -> SeriesPoly {
        let prec = z.first().map_or(0, |s| s.precision());
        assert!(z.iter().all(|s| s.precision() == prec));
        SeriesPoly { z }
    }

    pub fn precision(&self) -> usize {
        self.z.first().map_or(0, |s| s.precision())
    }

    pub fn deg_z(&self) -> usize {
        self.z.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.z.iter().all(|s| s.is_zero())
    }

    fn truncated(&self, k: usize) -> SeriesPoly {
        SeriesPoly {
            z: self.z.iter().map(|s| s.truncated(k)).collect(),
        }
    }

    /// Smallest valuation across coefficients.
    fn valuation(&self) -> Option<usize> {
        self.z.iter().filter_map(|s| s.valuation()).min()
    }

    fn shift_down(&self, k: usize) -> SeriesPoly {
        SeriesPoly {
            z: self.z.iter().map(|s| s.shift_down(k)).collect(),
        }
    }

    /// The univariate polynomial `Q(z) mod phi`.
    fn at_phi_zero(&self) -> Vec<Fel> {
        let mut c: Vec<Fel> = self.z.iter().map(|s| s.coeff(0)).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        c
    }

    /// `Q(h + phi^d z)` at the current precision, by Horner in `z`.
    fn substitute(&self, h: &[Fel], d: usize, f: &FieldContext) -> SeriesPoly {
        let prec = self.precision();
        let mut hs = TruncatedSeries::zero(prec);
        for (i, &v) in h.iter().enumerate().take(prec) {
            hs = {
                let mut t = hs;
                if v != 0 {
                    t.sub_scaled_shifted(&TruncatedSeries::from_coeffs(vec![f.neg(v)]), 1, i, f);
                }
                t
            };
        }
        let mut acc: Vec<TruncatedSeries> = vec![];
        for t in (0..self.z.len()).rev() {
            // acc <- acc * (hs + phi^d z) + Q_t
            let mut next = vec![TruncatedSeries::zero(prec); acc.len() + 1];
            for (u, s) in acc.iter().enumerate() {
                next[u] = next[u].add(&s.mul(&hs, f), f);
                next[u + 1] = next[u + 1].add(&s.shift_up(d), f);
            }
            if next.is_empty() {
                next.push(TruncatedSeries::zero(prec));
            }
            next[0] = next[0].add(&self.z[t], f);
            acc = next;
        }
        SeriesPoly { z: acc }
    }
}

/// A set of order-`k` roots: every series congruent to `h` mod `phi^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootBundle {
    /// Coefficients of `h`, exactly `d` of them.
    pub h: Vec<Fel>,
    pub d: usize,
}

impl RootBundle {
    fn universal() -> RootBundle {
        RootBundle { h: vec![], d: 0 }
    }

    /// Does the truncated series belong to this bundle?
    pub fn contains(&self, s: &[Fel]) -> bool {
        s.len() >= self.d && s[..self.d] == self.h[..]
    }
}

/// All distinct roots of a nonzero polynomial over `GF(q^2)`, by scanning the
/// field.
pub fn univariate_roots(p: &[Fel], f: &FieldContext) -> Vec<Fel> {
    assert!(p.iter().any(|&c| c != 0), "root finding needs p != 0");
    f.elements()
        .filter(|&x| {
            let mut acc = 0;
            for &c in p.iter().rev() {
                acc = f.add(f.mul(acc, x), c);
            }
            acc == 0
        })
        .collect()
}

/// The roots of `Q` of order `k`, bundled. `Q` must be nonzero mod `phi^k`
/// unless the caller is happy with the universal bundle.
pub fn ps_roots(q: &SeriesPoly, k: usize, f: &FieldContext) -> Vec<RootBundle> {
    assert!(q.precision() >= k);
    let q = q.truncated(k);
    if q.is_zero() {
        return vec![RootBundle::universal()];
    }
    // strip the global phi power first, as the bundle lemma requires
    let s0 = q.valuation().unwrap();
    if s0 >= k {
        return vec![RootBundle::universal()];
    }
    let (q, k) = if s0 > 0 {
        (q.shift_down(s0), k - s0)
    } else {
        (q, k)
    };

    if k == 1 {
        return univariate_roots(&q.at_phi_zero(), f)
            .into_iter()
            .map(|r| RootBundle { h: vec![r], d: 1 })
            .collect();
    }

    let half = k.div_ceil(2);
    let mut out = vec![];
    for b in ps_roots(&q, half, f) {
        let sub = q.substitute(&b.h, b.d, f);
        debug_assert!(
            sub.valuation().map_or(true, |v| v >= half),
            "partial root fails to vanish to the half order"
        );
        for rb in ps_roots(&sub, k, f) {
            let mut h = b.h.clone();
            h.resize(b.d, 0);
            h.extend(std::iter::repeat(0).take(rb.d));
            for (i, &c) in rb.h.iter().enumerate() {
                h[b.d + i] = c;
            }
            out.push(RootBundle { h, d: b.d + rb.d });
        }
    }
    debug_assert!(
        out.len() <= q.at_phi_zero().len().saturating_sub(1).max(1),
        "more bundles than z-roots of Q mod phi"
    );
    out
}

/// All `f` in `L(m P_inf)` with `Q(f) = 0`, each verified exactly in `R[z]`
/// before being returned. Also reports the time split between representation
/// conversion and root work, for the phase breakdown.
pub fn roots_in_l(
    curve: &CurveParams,
    q: &ZPoly,
    m: i64,
) -> (Vec<RingElement>, RootTimings) {
    let mut timings = RootTimings::default();
    let f = curve.field();
    assert!(!q.is_zero(), "root finding needs Q != 0");
    if q.deg_z() == Some(0) {
        return (vec![], timings); // nonzero constants have no roots
    }
    let k = (q.orderz(m, curve).expect("nonzero") + 1) as usize;

    let t0 = std::time::Instant::now();
    let series = SeriesPoly::new(
        q.coeffs()
            .iter()
            .map(|c| to_series(curve, c, k))
            .collect(),
    );
    timings.conversions += t0.elapsed().as_secs_f64();

    let t0 = std::time::Instant::now();
    let bundles = ps_roots(&series, k, f);
    timings.root_work += t0.elapsed().as_secs_f64();

    let mut out: Vec<RingElement> = vec![];
    for b in &bundles {
        let t0 = std::time::Instant::now();
        let candidates = bundle_candidates(curve, b, m);
        timings.conversions += t0.elapsed().as_secs_f64();
        let t0 = std::time::Instant::now();
        for cand in candidates {
            if q.eval(&cand, curve).is_zero() {
                out.push(cand);
            }
        }
        timings.root_work += t0.elapsed().as_secs_f64();
    }
    out.sort_by_key(|e| (curve.order(e).unwrap_or(-1), e.sort_key()));
    out.dedup();
    timings.candidates = out.len();
    (out, timings)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RootTimings {
    pub conversions: f64,
    pub root_work: f64,
    pub candidates: usize,
}

/// Elements of `L(m P_inf)` whose series lies in the bundle. With `d > m` the
/// truncation pins the element down uniquely; otherwise coefficients of hat
/// monomials vanishing to order at least `d` are free and are enumerated
/// (exact verification upstream discards anything spurious).
fn bundle_candidates(curve: &CurveParams, b: &RootBundle, m: i64) -> Vec<RingElement> {
    let q = curve.q();
    let series = TruncatedSeries::from_coeffs(b.h.clone());
    if b.d as i64 > m {
        return match from_series(curve, &series, m) {
            Ok(Some(e)) => vec![e],
            Ok(None) => vec![],
            Err(_) => unreachable!("precision d > m was just checked"),
        };
    }
    let Some(base) = hat_eliminate(curve, &series, m) else {
        return vec![];
    };
    let base_elem = hat_coords_to_elem(curve, &base);
    // hat monomials invisible below precision d
    let mut free = vec![];
    for j in 0..=(m as usize) / (q + 1) {
        for i in 0..=q {
            let order = (q * i + (q + 1) * j) as i64;
            let vanish = i + j * (q + 1);
            if order <= m && vanish >= b.d {
                free.push(hat_expand(curve, i, j));
            }
        }
    }
    let q2 = curve.field().size();
    let total = q2.checked_pow(free.len() as u32).unwrap_or(usize::MAX);
    debug_assert!(total <= 1 << 16, "free coefficient space unexpectedly large");
    let mut out = vec![];
    let mut assignment = vec![0 as Fel; free.len()];
    loop {
        let mut cand = base_elem.clone();
        for (c, mono) in assignment.iter().zip(&free) {
            if *c != 0 {
                cand = curve.add_elem(&cand, &curve.scale_elem(mono, *c));
            }
        }
        out.push(cand);
        // odometer step
        let mut i = 0;
        loop {
            if i == assignment.len() {
                return out;
            }
            assignment[i] += 1;
            if (assignment[i] as usize) < q2 {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
    }
}

use crate::series::hat_expand;
