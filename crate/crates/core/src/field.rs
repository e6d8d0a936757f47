//! Finite fields `F_{p^e}` with table-driven arithmetic.
//!
//! An element is stored as a `u32` code: the representative polynomial
//! `c_0 + c_1 a + ... + c_{e-1} a^{e-1}` (reduced modulo the defining
//! polynomial) is encoded as `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`. Zero is
//! code `0` and one is code `1`. Multiplication goes through discrete
//! log/antilog tables, so the field order is capped at [`MAX_ORDER`].

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

/// An element code; only meaningful together with its [`Field`].
pub type Elem = u32;

struct FieldInner {
    p: u32,
    degree: u32,
    order: u32,
    /// Monic defining polynomial over `F_p`, low degree first (`degree + 1` entries).
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    /// Full addition table for small odd-characteristic fields.
    add: Option<Vec<u16>>,
}

/// A finite field `F_{p^e}`; cheap to clone and compare.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.0.p, self.0.degree)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// Dense polynomial helpers over F_p used only while building a field.
fn fp_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn fp_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let mut r: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    fp_rem_in_place(&mut r, m, p);
    r
}

fn fp_inv(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

fn fp_rem_in_place(r: &mut Vec<u32>, m: &[u32], p: u32) {
    fp_trim(r);
    let dm = m.len() - 1;
    let lead_inv = fp_inv(m[dm], p) as u64;
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top] as u64 * lead_inv % p as u64;
        if c != 0 {
            for (k, &mk) in m.iter().enumerate() {
                let idx = top - dm + k;
                r[idx] = ((r[idx] as u64 + (p as u64 - c) * mk as u64 % p as u64) % p as u64) as u32;
            }
        }
        fp_trim(r);
    }
}

fn fp_gcd(mut a: Vec<u32>, mut b: Vec<u32>, p: u32) -> Vec<u32> {
    fp_trim(&mut a);
    fp_trim(&mut b);
    while !b.is_empty() {
        fp_rem_in_place(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    a
}

fn fp_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut r: Vec<u32> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    fp_trim(&mut r);
    r
}

/// Rabin-style irreducibility test for a monic `f` of degree `n` over `F_p`.
fn fp_is_irreducible(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    if n == 1 {
        return true;
    }
    // x^(p^i) mod f for i = 1..n/2 must be coprime with x^(p^i) - x.
    let x = vec![0, 1];
    let mut xp = x.clone();
    for _ in 1..=n / 2 {
        // xp <- xp^p
        let mut acc = vec![1u32];
        let mut base = xp.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = fp_mulmod(&acc, &base, f, p);
            }
            base = fp_mulmod(&base, &base, f, p);
            e >>= 1;
        }
        xp = acc;
        let diff = fp_sub(&xp, &x, p);
        let g = fp_gcd(f.to_vec(), diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

impl Field {
    /// Builds `F_{p^e}` with the least irreducible modulus, where monic
    /// polynomials of degree `e` are ordered by their integer code.
    pub fn new(p: u32, e: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        if e < 1 {
            return Err(Error::InvalidParameter("extension degree must be >= 1".into()));
        }
        let order = (p as u64).checked_pow(e).filter(|&o| o <= MAX_ORDER as u64).ok_or_else(|| {
            Error::InvalidParameter(format!("field order {p}^{e} exceeds {MAX_ORDER}"))
        })? as u32;
        let e_us = e as usize;
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            let mut found = None;
            for code in 0..order {
                let mut f = vec![0u32; e_us + 1];
                let mut c = code;
                for slot in f.iter_mut().take(e_us) {
                    *slot = c % p;
                    c /= p;
                }
                f[e_us] = 1;
                if f[0] != 0 && fp_is_irreducible(&f, p) {
                    found = Some(f);
                    break;
                }
            }
            found.expect("an irreducible polynomial of every degree exists")
        };
        Ok(Self::with_modulus(p, e, order, modulus))
    }

    fn with_modulus(p: u32, e: u32, order: u32, modulus: Vec<u32>) -> Field {
        let e_us = e as usize;
        let to_vec = |code: u32| -> Vec<u32> {
            let mut v = vec![0u32; e_us];
            let mut c = code;
            for slot in v.iter_mut() {
                *slot = c % p;
                c /= p;
            }
            fp_trim(&mut v);
            v
        };
        let to_code = |v: &[u32]| -> u32 { v.iter().rev().fold(0u32, |acc, &c| acc * p + c) };
        let n = order - 1;
        // Find a primitive element by brute force on the multiplicative order.
        let mut exp = vec![0u32; 2 * n as usize];
        let mut log = vec![0u32; order as usize];
        let reduced_modulus = modulus.clone();
        let mut generator_found = false;
        for cand in 1..order {
            let g = to_vec(cand);
            let mut cur = vec![1u32];
            let mut seen_one_early = false;
            for i in 0..n {
                let code = to_code(&cur);
                if i > 0 && code == 1 {
                    seen_one_early = true;
                    break;
                }
                exp[i as usize] = code;
                cur = if e == 1 {
                    vec![(cur.first().copied().unwrap_or(0) as u64 * cand as u64 % p as u64) as u32]
                } else {
                    fp_mulmod(&cur, &g, &reduced_modulus, p)
                };
                fp_trim(&mut cur);
            }
            if !seen_one_early && to_code(&cur) == 1 {
                generator_found = true;
                break;
            }
        }
        assert!(generator_found, "multiplicative group is cyclic");
        for i in 0..n as usize {
            log[exp[i] as usize] = i as u32;
            exp[i + n as usize] = exp[i];
        }
        let neg: Vec<u32> = (0..order)
            .map(|c| {
                let v = to_vec(c);
                let nv: Vec<u32> = v.iter().map(|&x| (p - x) % p).collect();
                to_code(&nv)
            })
            .collect();
        let add = if p != 2 && order <= 1024 {
            let mut t = vec![0u16; (order * order) as usize];
            for a in 0..order {
                let va = to_vec(a);
                for b in 0..order {
                    let vb = to_vec(b);
                    let k = va.len().max(vb.len());
                    let s: Vec<u32> = (0..k)
                        .map(|i| (va.get(i).copied().unwrap_or(0) + vb.get(i).copied().unwrap_or(0)) % p)
                        .collect();
                    t[(a * order + b) as usize] = to_code(&s) as u16;
                }
            }
            Some(t)
        } else {
            None
        };
        Field(Arc::new(FieldInner { p, degree: e, order, modulus, exp, log, neg, add }))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    /// Defining polynomial over `F_p`, low degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        0
    }

    #[inline]
    pub fn one(&self) -> Elem {
        1
    }

    pub fn contains(&self, a: Elem) -> bool {
        a < self.0.order
    }

    /// Image of an integer under `Z -> F_p -> F_{p^e}`.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.0.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let inner = &*self.0;
        if inner.p == 2 {
            return a ^ b;
        }
        if let Some(t) = &inner.add {
            return t[(a * inner.order + b) as usize] as u32;
        }
        let p = inner.p;
        let (mut x, mut y, mut r, mut place) = (a, b, 0u32, 1u32);
        while x > 0 || y > 0 {
            r += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        r
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let inner = &*self.0;
        inner.exp[(inner.log[a as usize] + inner.log[b as usize]) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        let inner = &*self.0;
        let n = inner.order - 1;
        Some(inner.exp[((n - inner.log[a as usize]) % n) as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// `a^n` for any integer `n` (negative powers of zero give `None`).
    pub fn pow(&self, a: Elem, n: i64) -> Option<Elem> {
        if a == 0 {
            return match n.cmp(&0) {
                std::cmp::Ordering::Greater => Some(0),
                std::cmp::Ordering::Equal => Some(1),
                std::cmp::Ordering::Less => None,
            };
        }
        let inner = &*self.0;
        let m = (inner.order - 1) as i64;
        let l = (inner.log[a as usize] as i64 * n.rem_euclid(m)).rem_euclid(m);
        Some(inner.exp[l as usize])
    }

    /// `x^(base^k)`, the `k`-th power of the Frobenius relative to a subfield
    /// of order `base`.
    pub fn frobenius(&self, x: Elem, base: u32, k: u32) -> Elem {
        if x == 0 {
            return 0;
        }
        let inner = &*self.0;
        let m = (inner.order - 1) as u64;
        let mut e = 1u64;
        for _ in 0..k {
            e = e * base as u64 % m;
        }
        let l = inner.log[x as usize] as u64 * e % m;
        inner.exp[l as usize]
    }

    /// A fixed primitive element (generator of the multiplicative group).
    pub fn primitive(&self) -> Elem {
        self.0.exp[1 % (self.0.order - 1).max(1) as usize]
    }

    /// Discrete log with respect to [`Field::primitive`].
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a != 0).then(|| self.0.log[a as usize])
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.0.order
    }

    /// The subfield of order `sub_order` (which must be `p^k` with `k | e`),
    /// as the set of fixed points of `x -> x^sub_order`.
    pub fn is_in_subfield(&self, a: Elem, sub_order: u32) -> bool {
        self.frobenius(a, sub_order, 1) == a
    }

    /// Embeds `sub` into `self` by sending the generator of `sub` to the
    /// least root of its modulus in `self`.
    pub fn embedding_of(&self, sub: &Field) -> Result<Embedding> {
        if sub.characteristic() != self.characteristic() || self.degree() % sub.degree() != 0 {
            return Err(Error::InvalidParameter(format!("{sub:?} does not embed into {self:?}")));
        }
        let p = self.characteristic();
        let m = sub.modulus();
        let root = self
            .elements()
            .find(|&r| {
                let mut acc = 0;
                for &c in m.iter().rev() {
                    acc = self.add(self.mul(acc, r), c);
                }
                acc == 0
            })
            .ok_or_else(|| Error::Internal("no root of subfield modulus".into()))?;
        let image: Vec<Elem> = sub
            .elements()
            .map(|code| {
                let mut c = code;
                let mut acc = 0;
                let mut pw = 1;
                for _ in 0..sub.degree() {
                    acc = self.add(acc, self.mul(self.from_int((c % p) as i64), pw));
                    pw = self.mul(pw, root);
                    c /= p;
                }
                acc
            })
            .collect();
        Ok(Embedding { image })
    }

    /// Text form of an element: its integer code.
    pub fn format(&self, a: Elem) -> String {
        a.to_string()
    }
}

/// A field embedding given by its table of images.
#[derive(Clone, Debug)]
pub struct Embedding {
    image: Vec<Elem>,
}

impl Embedding {
    pub fn apply(&self, a: Elem) -> Elem {
        self.image[a as usize]
    }
}

/// Roots of `coeffs` (low degree first, coefficients already in `field`)
/// listed with multiplicity and sorted by element code.
pub fn roots_in_field(field: &Field, coeffs: &[Elem]) -> Result<Vec<Elem>> {
    let mut poly: Vec<Elem> = coeffs.to_vec();
    while poly.last() == Some(&0) {
        poly.pop();
    }
    if poly.is_empty() {
        return Err(Error::InvalidParameter("roots of the zero polynomial".into()));
    }
    let mut roots = Vec::new();
    for r in field.elements() {
        loop {
            if poly.len() <= 1 {
                break;
            }
            // synthetic division by (X - r)
            let n = poly.len() - 1;
            let mut q = vec![0; n];
            let mut carry = 0;
            for i in (0..=n).rev() {
                let v = field.add(poly[i], field.mul(carry, r));
                if i == 0 {
                    carry = v;
                } else {
                    q[i - 1] = v;
                    carry = v;
                }
            }
            if carry != 0 {
                break;
            }
            roots.push(r);
            poly = q;
        }
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields() {
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(f2.order(), 2);
        let f9 = Field::new(3, 2).unwrap();
        assert_eq!(f9.order() - 1, 8);
        let f4 = Field::new(2, 2).unwrap();
        for a in 1..4 {
            assert_eq!(f4.pow(a, 3), Some(1));
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Field::new(4, 1).is_err());
        assert!(Field::new(3, 0).is_err());
        assert!(Field::new(2, 17).is_err());
    }

    #[test]
    fn frobenius_in_f9() {
        let f9 = Field::new(3, 2).unwrap();
        // the least irreducible monic quadratic over F_3 is X^2 + 1
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        let a = 3; // the class of X
        assert_eq!(f9.mul(a, a), f9.neg(1));
        assert_eq!(f9.frobenius(a, 3, 1), f9.neg(a));
        assert_eq!(f9.frobenius(1, 3, 5), 1);
    }

    #[test]
    fn frobenius_composes_in_f8() {
        let f8 = Field::new(2, 3).unwrap();
        for x in f8.elements() {
            let once = f8.frobenius(f8.frobenius(x, 2, 1), 2, 1);
            assert_eq!(once, f8.frobenius(x, 2, 2));
            assert_eq!(f8.frobenius(x, 2, 3), x);
        }
    }

    #[test]
    fn frobenius_identity_exhaustive() {
        for (p, e) in [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 2)] {
            let f = Field::new(p, e).unwrap();
            if f.order() > 64 {
                continue;
            }
            for x in f.elements() {
                assert_eq!(f.frobenius(x, p, e), x);
                assert_eq!(f.frobenius(x, p, 2 * e), x);
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, e) in [(2, 3), (3, 2), (5, 1)] {
            let f = Field::new(p, e).unwrap();
            for a in f.elements() {
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                assert_eq!(f.add(a, f.neg(a)), 0);
                for b in f.elements() {
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn roots_examples() {
        let f4 = Field::new(2, 2).unwrap();
        // X^2 + X + 1 has the two elements of F_4 outside F_2 as roots
        let r = roots_in_field(&f4, &[1, 1, 1]).unwrap();
        assert_eq!(r, vec![2, 3]);
        let f3 = Field::new(3, 1).unwrap();
        assert_eq!(roots_in_field(&f3, &[f3.neg(1), 1]).unwrap(), vec![1]);
        let f9 = Field::new(3, 2).unwrap();
        let r = roots_in_field(&f9, &[1, 0, 1]).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(f9.frobenius(r[0], 3, 1), r[1]);
        assert!(roots_in_field(&f9, &[0, 0]).is_err());
        // multiplicity: (X - 1)^2 over F_3
        assert_eq!(roots_in_field(&f3, &[1, 1, 1]).unwrap(), vec![1, 1]);
    }

    #[test]
    fn subfield_embedding_is_a_ring_map() {
        let f4 = Field::new(2, 2).unwrap();
        let f16 = Field::new(2, 4).unwrap();
        let emb = f16.embedding_of(&f4).unwrap();
        for a in f4.elements() {
            assert!(f16.is_in_subfield(emb.apply(a), 4));
            for b in f4.elements() {
                assert_eq!(emb.apply(f4.mul(a, b)), f16.mul(emb.apply(a), emb.apply(b)));
                assert_eq!(emb.apply(f4.add(a, b)), f16.add(emb.apply(a), emb.apply(b)));
            }
        }
        assert!(f4.embedding_of(&Field::new(2, 3).unwrap()).is_err());
    }
}
