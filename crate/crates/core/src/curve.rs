//! The Hermitian curve layer: the ring `R = GF(q^2)[x,y]` with y-degree
//! below `q`, its order function, the rational places, evaluation, fast
//! Lagrange interpolation over the curve, and the bridge into `GF(q^2)[x]^q`.
//!
//! Everything downstream measures ring elements by `order`, the pole order at
//! the place at infinity: `order(x^i y^j) = q*i + (q+1)*j`. All monomials with
//! `j < q` have distinct order, so leading monomial and leading coefficient
//! are well defined.

use crate::error::Result;
use crate::field::{Fel, FieldContext};
use crate::modmin::PolyMatrix;
use crate::poly::{lagrange, UniPoly};

/// An affine rational place `(alpha, beta)` with `beta^q + beta = alpha^(q+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Place {
    pub alpha: Fel,
    pub beta: Fel,
}

/// Element of `R` in the standard basis: `sum_j y^j g_j(x)` with `j < q`.
/// The coefficient vector always has exactly `q` entries.
#[derive(Clone, PartialEq, Eq)]
pub struct RingElement {
    coeffs: Vec<UniPoly>,
}

impl std::fmt::Debug for RingElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_zero())
            .map(|(j, g)| format!("y^{j}*({g:?})"))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl RingElement {
    pub fn coeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|g| g.is_zero())
    }

    /// The `vec` map into `GF(q^2)[x]^q`.
    pub fn to_vec(&self) -> Vec<UniPoly> {
        self.coeffs.clone()
    }

    /// Deterministic total order used to sort decoder output.
    pub fn sort_key(&self) -> Vec<Vec<Fel>> {
        self.coeffs.iter().map(|g| g.coeffs().to_vec()).collect()
    }
}

/// Product tree over the `alpha` groups, built once per curve and reused by
/// every interpolation.
struct AlphaNode {
    prod: UniPoly,
    kind: AlphaKind,
}

enum AlphaKind {
    Leaf { betas: Vec<Fel> },
    Branch { left: Box<AlphaNode>, right: Box<AlphaNode>, left_alphas: usize },
}

/// The Hermitian curve `y^q + y = x^(q+1)` over `GF(q^2)` and its code-level
/// constants: length `n = q^3`, genus `g = q(q-1)/2`, `G = x^(q^2) - x`.
pub struct CurveParams {
    field: FieldContext,
    q: usize,
    n: usize,
    genus: i64,
    g_poly: UniPoly,
    places: Vec<Place>,
    tree: AlphaNode,
    precompute_secs: f64,
}

impl CurveParams {
    pub fn new(q: u64) -> Result<CurveParams> {
        let start = std::time::Instant::now();
        let field = FieldContext::new(q)?;
        let qu = q as usize;
        let n = qu * qu * qu;
        let genus = (q * (q - 1) / 2) as i64;

        // G = prod over alpha of (x - alpha) = x^(q^2) - x
        let mut g_coeffs = vec![0 as Fel; qu * qu + 1];
        g_coeffs[1] = field.neg(1);
        g_coeffs[qu * qu] = 1;
        let g_poly = UniPoly::from_coeffs(g_coeffs);

        // Places grouped by alpha in canonical order, beta ascending within
        // each group; this order defines the code coordinates.
        let mut places = Vec::with_capacity(n);
        let mut groups: Vec<(Fel, Vec<Fel>)> = Vec::with_capacity(field.size());
        for alpha in field.elements() {
            let rhs = field.pow(alpha, q + 1);
            let betas: Vec<Fel> = field
                .elements()
                .filter(|&beta| field.add(field.pow(beta, q), beta) == rhs)
                .collect();
            debug_assert_eq!(betas.len(), qu, "every alpha has exactly q places");
            for &beta in &betas {
                places.push(Place { alpha, beta });
            }
            groups.push((alpha, betas));
        }

        let tree = build_tree(&groups, &field);
        let precompute_secs = start.elapsed().as_secs_f64();

        Ok(CurveParams {
            field,
            q: qu,
            n,
            genus,
            g_poly,
            places,
            tree,
            precompute_secs,
        })
    }

    pub fn field(&self) -> &FieldContext {
        &self.field
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Code length `n = q^3`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Genus `g = q(q-1)/2`.
    pub fn genus(&self) -> i64 {
        self.genus
    }

    /// `G = x^(q^2) - x`, the product of `x - alpha` over all alpha.
    pub fn g_poly(&self) -> &UniPoly {
        &self.g_poly
    }

    /// The `n` affine places in canonical order.
    pub fn places(&self) -> &[Place] {
        &self.places
    }

    /// Wall time spent building tables, places and the product tree.
    pub fn precompute_secs(&self) -> f64 {
        self.precompute_secs
    }

    // ---- element constructors ----

    pub fn zero_elem(&self) -> RingElement {
        RingElement {
            coeffs: vec![UniPoly::zero(); self.q],
        }
    }

    pub fn from_vec(&self, mut coeffs: Vec<UniPoly>) -> RingElement {
        assert!(coeffs.len() <= self.q, "y-degree must be below q");
        coeffs.resize(self.q, UniPoly::zero());
        RingElement { coeffs }
    }

    pub fn from_unipoly(&self, g: UniPoly) -> RingElement {
        let mut e = self.zero_elem();
        e.coeffs[0] = g;
        e
    }

    pub fn constant_elem(&self, v: Fel) -> RingElement {
        self.from_unipoly(UniPoly::constant(v))
    }

    pub fn one_elem(&self) -> RingElement {
        self.constant_elem(1)
    }

    /// `c * x^i y^j` with `j < q`.
    pub fn monomial_elem(&self, c: Fel, i: usize, j: usize) -> RingElement {
        assert!(j < self.q);
        let mut e = self.zero_elem();
        e.coeffs[j] = UniPoly::monomial(c, i);
        e
    }

    // ---- order function ----

    /// Pole order at infinity; `None` for the zero element.
    pub fn order(&self, e: &RingElement) -> Option<i64> {
        let q = self.q as i64;
        e.coeffs
            .iter()
            .enumerate()
            .filter_map(|(j, g)| {
                g.degree()
                    .map(|d| q * d as i64 + (q + 1) * j as i64)
            })
            .max()
    }

    /// `(j, deg, coefficient)` of the leading monomial under the order weight.
    pub fn leading(&self, e: &RingElement) -> Option<(usize, usize, Fel)> {
        let q = self.q as i64;
        e.coeffs
            .iter()
            .enumerate()
            .filter_map(|(j, g)| g.degree().map(|d| (q * d as i64 + (q + 1) * j as i64, j, d)))
            .max_by_key(|&(o, _, _)| o)
            .map(|(_, j, d)| (j, d, e.coeffs[j].coeff(d)))
    }

    // ---- arithmetic ----

    pub fn add_elem(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x.add(y, &self.field))
                .collect(),
        }
    }

    pub fn sub_elem(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x.sub(y, &self.field))
                .collect(),
        }
    }

    pub fn scale_elem(&self, a: &RingElement, v: Fel) -> RingElement {
        RingElement {
            coeffs: a.coeffs.iter().map(|g| g.scale(v, &self.field)).collect(),
        }
    }

    pub fn mul_by_unipoly(&self, a: &RingElement, p: &UniPoly) -> RingElement {
        RingElement {
            coeffs: a.coeffs.iter().map(|g| g.mul(p, &self.field)).collect(),
        }
    }

    /// Product in `R`, reduced to y-degree below `q` via `y^q = x^(q+1) - y`.
    pub fn ring_mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let q = self.q;
        let f = &self.field;
        let mut c = vec![UniPoly::zero(); 2 * q - 1];
        for (i, ga) in a.coeffs.iter().enumerate() {
            if ga.is_zero() {
                continue;
            }
            for (j, gb) in b.coeffs.iter().enumerate() {
                if gb.is_zero() {
                    continue;
                }
                c[i + j] = c[i + j].add(&ga.mul(gb, f), f);
            }
        }
        self.reduce_ydeg(c)
    }

    /// Reduces a coefficient vector of length up to `2q - 1` to the standard
    /// basis, one pass from the top: `y^k = y^(k-q) x^(q+1) - y^(k-q+1)`.
    fn reduce_ydeg(&self, mut c: Vec<UniPoly>) -> RingElement {
        let q = self.q;
        let f = &self.field;
        let xq1 = UniPoly::monomial(1, q + 1);
        for k in (q..c.len()).rev() {
            if c[k].is_zero() {
                continue;
            }
            let top = std::mem::take(&mut c[k]);
            let lifted = top.mul(&xq1, f);
            c[k - q] = c[k - q].add(&lifted, f);
            c[k - q + 1] = c[k - q + 1].sub(&top, f);
        }
        c.truncate(q);
        self.from_vec(c)
    }

    pub fn elem_pow(&self, a: &RingElement, e: usize) -> RingElement {
        let mut acc = self.one_elem();
        for _ in 0..e {
            acc = self.ring_mul(&acc, a);
        }
        acc
    }

    pub fn evaluate(&self, e: &RingElement, pl: &Place) -> Fel {
        let f = &self.field;
        let mut acc = 0;
        for g in e.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, pl.beta), g.eval(pl.alpha, f));
        }
        acc
    }

    /// Residue class mod `G`, coefficient-wise.
    pub fn elem_mod_g(&self, e: &RingElement) -> RingElement {
        RingElement {
            coeffs: e
                .coeffs
                .iter()
                .map(|g| g.rem(&self.g_poly, &self.field).expect("G is nonzero"))
                .collect(),
        }
    }

    // ---- interpolation ----

    /// An element `p` with `p(P_i) = values[i]` for every place, of order
    /// below `n + 2g`: divide and conquer over the alpha groups, with a
    /// univariate Lagrange interpolation in `y` at each leaf.
    pub fn interpolate(&self, values: &[Fel]) -> RingElement {
        assert_eq!(values.len(), self.n, "one value per place");
        let out = self.interp_rec(&self.tree, values);
        debug_assert!(self
            .order(&out)
            .map_or(true, |o| o < self.n as i64 + 2 * self.genus));
        out
    }

    fn interp_rec(&self, node: &AlphaNode, vals: &[Fel]) -> RingElement {
        let f = &self.field;
        match &node.kind {
            AlphaKind::Leaf { betas } => {
                // gamma / prod_{alpha' != alpha}(alpha - alpha'); the product
                // is G'(alpha) = -1 for every alpha.
                let neg_one = f.neg(1);
                let pts: Vec<(Fel, Fel)> = betas
                    .iter()
                    .zip(vals)
                    .map(|(&beta, &v)| (beta, f.div(v, neg_one)))
                    .collect();
                let ypoly = lagrange(&pts, f).expect("betas are distinct");
                let coeffs = (0..self.q)
                    .map(|j| UniPoly::constant(ypoly.coeff(j)))
                    .collect();
                RingElement { coeffs }
            }
            AlphaKind::Branch {
                left,
                right,
                left_alphas,
            } => {
                let (lv, rv) = vals.split_at(left_alphas * self.q);
                let pl = self.interp_rec(left, lv);
                let pr = self.interp_rec(right, rv);
                let a = self.mul_by_unipoly(&pl, &right.prod);
                let b = self.mul_by_unipoly(&pr, &left.prod);
                self.add_elem(&a, &b)
            }
        }
    }

    // ---- the multiplication matrix ----

    /// The `q x q` matrix over `GF(q^2)[x]` with `vec(a) * M = vec(a*b)`,
    /// assembled as the band matrix of `vec(b)` shifts followed by the
    /// curve-relation reduction.
    pub fn mul_matrix(&self, b: &RingElement) -> PolyMatrix {
        let q = self.q;
        let f = &self.field;
        let xq1 = UniPoly::monomial(1, q + 1);
        // d(i, k) = b_(k - i) for 0 <= k - i < q
        let d = |i: usize, k: usize| -> UniPoly {
            if k >= i && k - i < q {
                b.coeffs[k - i].clone()
            } else {
                UniPoly::zero()
            }
        };
        let mut rows = Vec::with_capacity(q);
        for i in 0..q {
            let mut row = Vec::with_capacity(q);
            for c in 0..q {
                let mut entry = d(i, c);
                if c <= q.saturating_sub(2) {
                    entry = entry.add(&d(i, q + c).mul(&xq1, f), f);
                }
                if c >= 1 {
                    entry = entry.sub(&d(i, q + c - 1), f);
                }
                row.push(entry);
            }
            rows.push(row);
        }
        PolyMatrix::from_rows(rows)
    }
}

fn build_tree(groups: &[(Fel, Vec<Fel>)], f: &FieldContext) -> AlphaNode {
    if groups.len() == 1 {
        let (alpha, betas) = &groups[0];
        return AlphaNode {
            prod: UniPoly::from_coeffs(vec![f.neg(*alpha), 1]),
            kind: AlphaKind::Leaf {
                betas: betas.clone(),
            },
        };
    }
    let (l, r) = groups.split_at(groups.len() / 2);
    let left = Box::new(build_tree(l, f));
    let right = Box::new(build_tree(r, f));
    AlphaNode {
        prod: left.prod.mul(&right.prod, f),
        kind: AlphaKind::Branch {
            left_alphas: l.len(),
            left,
            right,
        },
    }
}

/// Element of `R[z]`: the decoder's interpolation polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZPoly {
    coeffs: Vec<RingElement>,
}

impl ZPoly {
    pub fn from_coeffs(mut coeffs: Vec<RingElement>) -> ZPoly {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn zero() -> ZPoly {
        ZPoly { coeffs: vec![] }
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    pub fn coeff(&self, t: usize, curve: &CurveParams) -> RingElement {
        self.coeffs.get(t).cloned().unwrap_or_else(|| curve.zero_elem())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg_z(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// z-weighted order `max_t { order(Q_t) + t*w }`.
    pub fn orderz(&self, w: i64, curve: &CurveParams) -> Option<i64> {
        self.coeffs
            .iter()
            .enumerate()
            .filter_map(|(t, c)| curve.order(c).map(|o| o + t as i64 * w))
            .max()
    }

    pub fn eval(&self, f: &RingElement, curve: &CurveParams) -> RingElement {
        let mut acc = curve.zero_elem();
        for c in self.coeffs.iter().rev() {
            acc = curve.add_elem(&curve.ring_mul(&acc, f), c);
        }
        acc
    }
}
