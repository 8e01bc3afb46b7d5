//! Exact arithmetic in `GF(q^2)` for a prime power `q` with `q^2 <= 2^16`.
//!
//! Elements are `u16` indices encoding the coordinate vector over the prime
//! field `GF(p)` in the polynomial basis of `GF(p)[t]/(f)`, packed base `p`
//! (lowest digit = constant coefficient). The modulus `f` is the smallest
//! monic irreducible of degree `2e` for which `t` generates the multiplicative
//! group, so the whole construction — and with it the canonical element order
//! `0, 1, ..., q^2 - 1` — is deterministic.
//!
//! Multiplication and inversion go through exp/log tables; addition is XOR in
//! characteristic 2 and uses Zech logarithms otherwise.

use crate::error::{Error, Result};

/// A field element, as its canonical index.
pub type Fel = u16;

const ZECH_NONE: u32 = u32::MAX;

/// Arithmetic context for `GF(q^2)`.
#[derive(Clone)]
pub struct FieldContext {
    q: u64,
    p: u64,
    q2: usize,
    /// exp table of length `2(q^2 - 1)` so products of two logs index directly.
    exp: Vec<Fel>,
    log: Vec<u32>,
    /// `zech[k] = log(1 + t^k)`, `ZECH_NONE` where `1 + t^k = 0`. Empty for p = 2.
    zech: Vec<u32>,
    neg: Vec<Fel>,
}

impl std::fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FieldContext(GF({}^2))", self.q)
    }
}

fn factor_prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            break;
        }
        p += 1;
    }
    if p * p > q {
        return Some((q, 1));
    }
    let mut rest = q;
    let mut e = 0;
    while rest > 1 {
        if rest % p != 0 {
            return None;
        }
        rest /= p;
        e += 1;
    }
    Some((p, e))
}

/// Dense little-endian polynomials over GF(p); only used while building tables.
mod ppoly {
    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut r: Vec<u64> = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let inv_lead = mod_inv(b[db], p);
        while r.len() > db {
            let shift = r.len() - 1 - db;
            let c = (r[r.len() - 1] * inv_lead) % p;
            for (i, &bc) in b.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p - (c * bc) % p) % p;
            }
            trim(&mut r);
            if r.is_empty() {
                break;
            }
        }
        r
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        out
    }

    pub fn mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        rem(&mul(a, b, p), f, p)
    }

    pub fn powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = base.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &b, f, p);
            }
            b = mulmod(&b, &b, f, p);
            e >>= 1;
        }
        acc
    }

    fn mod_inv(a: u64, p: u64) -> u64 {
        // p is prime
        let mut r = 1u64;
        let mut b = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = vec![];
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Is the monic polynomial with the given little-endian digits irreducible?
/// Trial division by all monic polynomials of degree up to deg/2.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for enc in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut rest = enc;
            for _ in 0..d {
                div.push(rest % p);
                rest /= p;
            }
            div.push(1);
            if ppoly::rem(f, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn is_primitive_t(f: &[u64], p: u64, order: u64) -> bool {
    let t = vec![0u64, 1];
    for r in prime_factors(order) {
        if ppoly::powmod(&t, order / r, f, p) == vec![1u64] {
            return false;
        }
    }
    true
}

impl FieldContext {
    /// Builds `GF(q^2)` for a prime power `q` with `q^2 <= 2^16`.
    pub fn new(q: u64) -> Result<FieldContext> {
        let (p, e) = factor_prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > 256 {
            return Err(Error::FieldTooLarge(q));
        }
        let ext_deg = 2 * e;
        let q2 = (q * q) as usize;
        let order = (q2 - 1) as u64;

        // Smallest primitive modulus, scanning monic polynomials by encoding.
        let mut modulus: Option<Vec<u64>> = None;
        for enc in 0..p.pow(ext_deg as u32) {
            let mut f = Vec::with_capacity(ext_deg + 1);
            let mut rest = enc;
            for _ in 0..ext_deg {
                f.push(rest % p);
                rest /= p;
            }
            f.push(1);
            if is_irreducible(&f, p) && is_primitive_t(&f, p, order) {
                modulus = Some(f);
                break;
            }
        }
        let modulus = modulus.expect("a primitive polynomial exists for every degree");

        let pack = |digits: &[u64]| -> Fel {
            let mut v = 0u64;
            for &d in digits.iter().rev() {
                v = v * p + d;
            }
            v as Fel
        };

        let mut exp = vec![0 as Fel; 2 * (q2 - 1)];
        let mut log = vec![0u32; q2];
        let mut digits_of = vec![vec![0u64; ext_deg]; q2];
        let mut cur = vec![1u64];
        for i in 0..q2 - 1 {
            let idx = pack(&cur);
            exp[i] = idx;
            log[idx as usize] = i as u32;
            let mut padded = cur.clone();
            padded.resize(ext_deg, 0);
            digits_of[idx as usize] = padded;
            cur = ppoly::mulmod(&cur, &[0, 1], &modulus, p);
        }
        debug_assert_eq!(cur, vec![1u64], "t must have order q^2 - 1");
        for i in 0..q2 - 1 {
            exp[q2 - 1 + i] = exp[i];
        }

        let neg: Vec<Fel> = (0..q2)
            .map(|a| {
                let d: Vec<u64> = digits_of[a].iter().map(|&c| (p - c) % p).collect();
                pack(&d)
            })
            .collect();

        let zech = if p == 2 {
            vec![]
        } else {
            (0..q2 - 1)
                .map(|k| {
                    let mut d = digits_of[exp[k] as usize].clone();
                    d[0] = (d[0] + 1) % p;
                    let s = pack(&d);
                    if s == 0 {
                        ZECH_NONE
                    } else {
                        log[s as usize]
                    }
                })
                .collect()
        };

        Ok(FieldContext {
            q,
            p,
            q2,
            exp,
            log,
            zech,
            neg,
        })
    }

    /// The paper-level parameter `q`; the field itself has `q^2` elements.
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Number of field elements, `q^2`.
    pub fn size(&self) -> usize {
        self.q2
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Fel> {
        0..self.q2 as Fel
    }

    pub fn zero(&self) -> Fel {
        0
    }

    pub fn one(&self) -> Fel {
        1
    }

    #[inline]
    pub fn add(&self, a: Fel, b: Fel) -> Fel {
        if self.p == 2 {
            return a ^ b;
        }
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let n = self.q2 - 1;
        let la = self.log[a as usize] as usize;
        let lb = self.log[b as usize] as usize;
        let d = (lb + n - la) % n;
        match self.zech[d] {
            ZECH_NONE => 0,
            z => self.exp[la + z as usize],
        }
    }

    #[inline]
    pub fn neg(&self, a: Fel) -> Fel {
        if self.p == 2 {
            a
        } else {
            self.neg[a as usize]
        }
    }

    #[inline]
    pub fn sub(&self, a: Fel, b: Fel) -> Fel {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fel, b: Fel) -> Fel {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    #[inline]
    pub fn inv(&self, a: Fel) -> Fel {
        debug_assert!(a != 0, "inverse of zero");
        let n = (self.q2 - 1) as u32;
        self.exp[((n - self.log[a as usize]) % n) as usize]
    }

    #[inline]
    pub fn div(&self, a: Fel, b: Fel) -> Fel {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Fel, e: u64) -> Fel {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let n = (self.q2 - 1) as u128;
        let idx = (self.log[a as usize] as u128 * e as u128) % n;
        self.exp[idx as usize]
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: u64) -> Fel {
        (n % self.p) as Fel
    }

    /// Binomial coefficient reduced into the prime subfield.
    pub fn binomial(&self, n: usize, k: usize) -> Fel {
        if k > n {
            return 0;
        }
        // Pascal row mod p; n stays small (bounded by s or q).
        let mut row = vec![1u64];
        for _ in 0..n {
            let mut next = vec![1u64; row.len() + 1];
            for i in 1..row.len() {
                next[i] = (row[i - 1] + row[i]) % self.p;
            }
            next[row.len()] = 1 % self.p;
            row = next;
        }
        row[k] as Fel
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn builds_small_fields() {
        assert_eq!(FieldContext::new(2).unwrap().size(), 4);
        assert_eq!(FieldContext::new(4).unwrap().size(), 16);
        assert_eq!(FieldContext::new(7).unwrap().size(), 49);
    }

    #[test]
    fn rejects_bad_q() {
        assert!(matches!(FieldContext::new(6), Err(Error::NotPrimePower(6))));
        assert!(matches!(FieldContext::new(1), Err(Error::NotPrimePower(1))));
        assert!(matches!(
            FieldContext::new(257),
            Err(Error::FieldTooLarge(257))
        ));
    }

    #[test]
    fn field_axioms_hold() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let f = FieldContext::new(q).unwrap();
            let mut rng = rand::rngs::StdRng::seed_from_u64(q);
            for _ in 0..1000 {
                let a = rng.gen_range(0..f.size()) as Fel;
                let b = rng.gen_range(0..f.size()) as Fel;
                let c = rng.gen_range(0..f.size()) as Fel;
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                assert_eq!(f.add(a, f.neg(a)), 0);
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
            }
        }
    }

    #[test]
    fn pow_and_frobenius() {
        for q in [2u64, 3, 4, 5, 7] {
            let f = FieldContext::new(q).unwrap();
            for a in f.elements() {
                // x -> x^(q^2) is the identity
                assert_eq!(f.pow(a, q * q), a);
                let mut by_hand = 1;
                for _ in 0..q {
                    by_hand = f.mul(by_hand, a);
                }
                assert_eq!(f.pow(a, q), by_hand);
            }
        }
    }

    #[test]
    fn prime_subfield_embedding() {
        let f = FieldContext::new(3).unwrap();
        // characteristic 3: 1 + 1 + 1 = 0
        let two = f.add(1, 1);
        assert_eq!(f.from_int(2), two);
        assert_eq!(f.add(two, 1), 0);
        assert_eq!(f.binomial(3, 1), 0);
        assert_eq!(f.binomial(4, 2), 0); // 6 mod 3
        assert_eq!(f.binomial(2, 1), two);
    }
}
