//! Dense univariate polynomials and rational functions over a [`Field`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// A univariate polynomial, low degree first, with no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.order().hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_in("x"))
    }
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, 1)
    }

    pub fn constant(field: &Field, c: Elem) -> Poly {
        Poly::new(field, vec![c])
    }

    /// `c * X^n`.
    pub fn monomial(field: &Field, c: Elem, n: usize) -> Poly {
        let mut v = vec![0; n + 1];
        v[n] = c;
        Poly::new(field, v)
    }

    /// `X - a`.
    pub fn linear(field: &Field, a: Elem) -> Poly {
        Poly::new(field, vec![field.neg(a), 1])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn monic(&self) -> Poly {
        match self.field.inv(self.lead()) {
            Some(li) => self.scale(li),
            None => self.clone(),
        }
    }

    pub fn shift(&self, n: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0; n];
        v.extend_from_slice(&self.coeffs);
        Poly::new(&self.field, v)
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
            .collect();
        Poly::new(f, v)
    }

    pub fn pow(&self, mut n: u64) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Applies `c -> c^(base^k)` to every coefficient.
    pub fn map_coeffs_frobenius(&self, base: u32, k: u32) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.frobenius(c, base, k)).collect())
    }

    /// `self^(base^k)` computed as a Frobenius twist, valid because `base`
    /// is a power of the characteristic.
    pub fn frobenius_power(&self, base: u32, k: u32) -> Poly {
        let step = (base as usize).pow(k);
        if self.is_zero() {
            return self.clone();
        }
        let f = &self.field;
        let mut v = vec![0; (self.coeffs.len() - 1) * step + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[i * step] = f.frobenius(c, base, k);
        }
        Poly::new(f, v)
    }

    /// `self(g(X))`.
    pub fn compose(&self, g: &Poly) -> Poly {
        let mut acc = Poly::zero(&self.field);
        for &c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Poly::constant(&self.field, c);
        }
        acc
    }

    pub fn divmod(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let f = &self.field;
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let li = f.inv(d.lead()).ok_or(Error::DivisionByZero)?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut q = vec![0; r.len() - dd];
        for top in (dd..r.len()).rev() {
            let c = f.mul(r[top], li);
            if c == 0 {
                continue;
            }
            q[top - dd] = c;
            for (k, &dk) in d.coeffs.iter().enumerate() {
                let idx = top - dd + k;
                r[idx] = f.sub(r[idx], f.mul(c, dk));
            }
        }
        Ok((Poly::new(f, q), Poly::new(f, r)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.divmod(d)?.1)
    }

    /// Exact quotient; errors if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(d)?;
        if !r.is_zero() {
            return Err(Error::Inconsistent("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// Monic gcd (zero if both inputs vanish).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let cs = self.field.format(c);
            parts.push(match i {
                0 => cs,
                1 if c == 1 => var.to_string(),
                1 => format!("{cs}*{var}"),
                _ if c == 1 => format!("{var}^{i}"),
                _ => format!("{cs}*{var}^{i}"),
            });
        }
        parts.join(" + ")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|i| f.add(self.coeff(i), rhs.coeff(i))).collect();
        Poly::new(f, v)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|i| f.sub(self.coeff(i), rhs.coeff(i))).collect();
        Poly::new(f, v)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let mut v = vec![0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                if b != 0 {
                    v[i + j] = f.add(v[i + j], f.mul(a, b));
                }
            }
        }
        Poly::new(f, v)
    }
}

/// A rational function `num / den` in lowest terms with monic `den`.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?})/({:?})", self.num, self.den)
        }
    }
}

impl From<Poly> for RatFn {
    fn from(p: Poly) -> RatFn {
        let den = Poly::one(p.field());
        RatFn { num: p, den }
    }
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<RatFn> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            let f = num.field().clone();
            return Ok(RatFn { num, den: Poly::one(&f) });
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g)?, den.exact_div(&g)?)
        };
        let li = n.field().inv(d.lead()).expect("nonzero");
        if li != 1 {
            n = n.scale(li);
            d = d.scale(li);
        }
        Ok(RatFn { num: n, den: d })
    }

    pub fn zero(field: &Field) -> RatFn {
        Poly::zero(field).into()
    }

    pub fn one(field: &Field) -> RatFn {
        Poly::one(field).into()
    }

    pub fn constant(field: &Field, c: Elem) -> RatFn {
        Poly::constant(field, c).into()
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Constant value if this is an element of the coefficient field.
    pub fn as_constant(&self) -> Option<Elem> {
        (self.den.is_one() && self.num.degree().unwrap_or(0) == 0).then(|| self.num.coeff(0))
    }

    pub fn inv(&self) -> Result<RatFn> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RatFn) -> Result<RatFn> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, n: i64) -> Result<RatFn> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let m = n.unsigned_abs();
        Ok(RatFn { num: base.num.pow(m), den: base.den.pow(m) })
    }

    pub fn scale(&self, c: Elem) -> RatFn {
        if c == 0 {
            return RatFn::zero(self.field());
        }
        RatFn { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Value at a point of the coefficient field; `None` at a pole.
    pub fn eval(&self, x: Elem) -> Option<Elem> {
        let d = self.den.eval(x);
        self.field().div(self.num.eval(x), d)
    }

    /// `self^(base^k)`.
    pub fn frobenius_power(&self, base: u32, k: u32) -> RatFn {
        RatFn { num: self.num.frobenius_power(base, k), den: self.den.frobenius_power(base, k) }
    }

    /// Applies the Frobenius to coefficients only (the variable is fixed).
    pub fn map_coeffs_frobenius(&self, base: u32, k: u32) -> RatFn {
        RatFn { num: self.num.map_coeffs_frobenius(base, k), den: self.den.map_coeffs_frobenius(base, k) }
    }

    /// Order of vanishing at the root `a` (negative for poles).
    pub fn valuation_at(&self, a: Elem) -> i64 {
        let lin = Poly::linear(self.field(), a);
        let count = |p: &Poly| {
            let mut n = 0i64;
            let mut cur = p.clone();
            while !cur.is_zero() {
                let (q, r) = cur.divmod(&lin).expect("nonzero");
                if !r.is_zero() {
                    break;
                }
                n += 1;
                cur = q;
            }
            n
        };
        count(&self.num) - count(&self.den)
    }

    /// `deg num - deg den`; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        self.num.degree().map(|d| d as i64 - self.den.degree().unwrap_or(0) as i64)
    }
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        if self.den == rhs.den {
            return RatFn::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero den");
        }
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFn::new(n, &self.den * &rhs.den).expect("nonzero den")
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        if self.is_zero() || rhs.is_zero() {
            return RatFn::zero(self.field());
        }
        // cross-cancel before multiplying to keep degrees small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1).expect("gcd divides");
        let d2 = rhs.den.exact_div(&g1).expect("gcd divides");
        let n2 = rhs.num.exact_div(&g2).expect("gcd divides");
        let d1 = self.den.exact_div(&g2).expect("gcd divides");
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let li = num.field().inv(den.lead()).expect("nonzero");
        RatFn { num: num.scale(li), den: den.scale(li) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f7() -> Field {
        Field::new(7, 1).unwrap()
    }

    fn poly_strategy() -> impl Strategy<Value = Vec<u32>> {
        proptest::collection::vec(0u32..7, 0..6)
    }

    #[test]
    fn division_and_gcd() {
        let f = f7();
        let a = Poly::new(&f, vec![1, 2, 3, 4]);
        let b = Poly::new(&f, vec![1, 1]);
        let (q, r) = a.divmod(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap_or(0) < 1);
        let g = (&a * &b).gcd(&(&b * &b));
        assert_eq!(g, b.monic());
        assert!(a.divmod(&Poly::zero(&f)).is_err());
    }

    #[test]
    fn frobenius_power_matches_pow() {
        let f = Field::new(3, 2).unwrap();
        let a = Poly::new(&f, vec![4, 0, 7, 1]);
        assert_eq!(a.frobenius_power(3, 1), a.pow(3));
        assert_eq!(a.frobenius_power(3, 2), a.pow(9));
    }

    #[test]
    fn ratfn_canonical_and_valuation() {
        let f = f7();
        let x1 = Poly::linear(&f, 1);
        let x2 = Poly::linear(&f, 2);
        let r = RatFn::new(&x1 * &x2, (&x1 * &x1).scale(3)).unwrap();
        assert_eq!(r.den(), &x1);
        assert_eq!(r.valuation_at(1), -1);
        assert_eq!(r.valuation_at(2), 1);
        assert_eq!(r.eval(1), None);
        assert!(RatFn::new(x1.clone(), Poly::zero(&f)).is_err());
    }

    proptest! {
        #[test]
        fn ratfn_equality_is_cross_multiplication(a in poly_strategy(), b in poly_strategy(), c in poly_strategy(), d in poly_strategy()) {
            let f = f7();
            let (a, b, c, d) = (Poly::new(&f, a), Poly::new(&f, b), Poly::new(&f, c), Poly::new(&f, d));
            prop_assume!(!b.is_zero() && !d.is_zero());
            let r1 = RatFn::new(a.clone(), b.clone()).unwrap();
            let r2 = RatFn::new(c.clone(), d.clone()).unwrap();
            prop_assert_eq!(r1 == r2, &a * &d == &c * &b);
        }

        #[test]
        fn ratfn_field_ops(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
            let f = f7();
            let (a, b, c) = (Poly::new(&f, a), Poly::new(&f, b), Poly::new(&f, c));
            prop_assume!(!b.is_zero() && !a.is_zero());
            let r = RatFn::new(a, b).unwrap();
            let s: RatFn = c.into();
            prop_assert!((&r * &r.inv().unwrap()).is_one());
            prop_assert_eq!(&(&r + &s) - &s, r.clone());
            prop_assert_eq!(&r * &(&s + &r), &(&r * &s) + &(&r * &r));
        }

        #[test]
        fn degree_is_additive(a in poly_strategy(), b in poly_strategy()) {
            let f = f7();
            let (a, b) = (Poly::new(&f, a), Poly::new(&f, b));
            prop_assume!(!a.is_zero() && !b.is_zero());
            prop_assert_eq!((&a * &b).degree().unwrap(), a.degree().unwrap() + b.degree().unwrap());
        }
    }
}
