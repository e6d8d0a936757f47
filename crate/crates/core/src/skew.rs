//! Twisted polynomials `R{τ}` with `τ c = c^q τ`.

use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::poly::RatFn;

/// A coefficient ring with a `q`-power Frobenius.
pub trait TwistRing: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// `self^(q^k)`.
    fn twist(&self, q: u32, k: u32) -> Self;
    fn inv(&self) -> Result<Self>;
}

impl TwistRing for RatFn {
    fn zero_like(&self) -> Self {
        RatFn::zero(self.field())
    }
    fn one_like(&self) -> Self {
        RatFn::one(self.field())
    }
    fn is_zero(&self) -> bool {
        RatFn::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn twist(&self, q: u32, k: u32) -> Self {
        self.frobenius_power(q, k)
    }
    fn inv(&self) -> Result<Self> {
        RatFn::inv(self)
    }
}

/// `Σ c_i τ^i`, with no trailing zero coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct SkewPoly<C> {
    q: u32,
    coeffs: Vec<C>,
}

impl<C: TwistRing> SkewPoly<C> {
    pub fn new(q: u32, mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SkewPoly { q, coeffs }
    }

    pub fn constant(q: u32, c: C) -> Self {
        SkewPoly::new(q, vec![c])
    }

    pub fn zero(q: u32) -> Self {
        SkewPoly { q, coeffs: Vec::new() }
    }

    /// `c τ^n`.
    pub fn monomial(q: u32, c: C, n: usize) -> Self {
        let mut v: Vec<C> = (0..n).map(|_| c.zero_like()).collect();
        v.push(c);
        SkewPoly::new(q, v)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&C> {
        self.coeffs.get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `τ`; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        SkewPoly::new(self.q, v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a.sub(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.zero_like().sub(b),
                (None, None) => unreachable!(),
            })
            .collect();
        SkewPoly::new(self.q, v)
    }

    /// `c · self`.
    pub fn left_scale(&self, c: &C) -> Self {
        SkewPoly::new(self.q, self.coeffs.iter().map(|a| c.mul(a)).collect())
    }

    /// Product under `τ c = c^q τ`.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return SkewPoly::zero(self.q);
        }
        let zero = self.coeffs[0].zero_like();
        let mut v = vec![zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let term = a.mul(&b.twist(self.q, i as u32));
                v[i + j] = v[i + j].add(&term);
            }
        }
        SkewPoly::new(self.q, v)
    }

    /// `(quotient, remainder)` with `self = quotient · b + remainder`.
    pub fn right_divmod(&self, b: &Self) -> Result<(Self, Self)> {
        let m = b.degree().ok_or(Error::DivisionByZero)?;
        let lead = b.lead().expect("nonzero");
        let mut r = self.clone();
        let Some(n) = r.degree() else {
            return Ok((SkewPoly::zero(self.q), r));
        };
        if n < m {
            return Ok((SkewPoly::zero(self.q), r));
        }
        let zero = lead.zero_like();
        let mut quot = vec![zero; n - m + 1];
        // inverses of the twisted leading coefficient, reused per shift
        let mut inv_cache: Vec<Option<C>> = vec![None; n - m + 1];
        while let Some(d) = r.degree() {
            if d < m {
                break;
            }
            let s = d - m;
            if inv_cache[s].is_none() {
                inv_cache[s] = Some(lead.twist(self.q, s as u32).inv()?);
            }
            let c = r.coeffs[d].mul(inv_cache[s].as_ref().expect("filled"));
            quot[s] = quot[s].add(&c);
            let sub = SkewPoly::monomial(self.q, c, s).mul(b);
            r = r.sub(&sub);
            if r.degree() == Some(d) {
                return Err(Error::Internal("leading term did not cancel in right division".into()));
            }
        }
        Ok((SkewPoly::new(self.q, quot), r))
    }

    /// Monic generator of the left ideal generated by `gens`.
    pub fn right_gcd(gens: &[Self]) -> Result<Self> {
        let mut it = gens.iter().filter(|g| !g.is_zero());
        let mut acc = it.next().ok_or_else(|| Error::InvalidParameter("right_gcd needs a nonzero generator".into()))?.clone();
        for g in it {
            let mut a = acc;
            let mut b = g.clone();
            while !b.is_zero() {
                let (_, r) = a.right_divmod(&b)?;
                a = b;
                b = r;
            }
            acc = a;
        }
        let li = acc.lead().expect("nonzero").inv()?;
        Ok(acc.left_scale(&li))
    }

    /// The `X` with `X · phi_i = phi_i · phi_a`.
    pub fn conjugate_twist(phi_i: &Self, phi_a: &Self) -> Result<Self> {
        let (x, r) = phi_i.mul(phi_a).right_divmod(phi_i)?;
        if !r.is_zero() {
            return Err(Error::Inconsistent("conjugation equation has no solution".into()));
        }
        Ok(x)
    }

    pub fn map<D: TwistRing>(&self, f: impl Fn(&C) -> D) -> SkewPoly<D> {
        SkewPoly::new(self.q, self.coeffs.iter().map(f).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::poly::Poly;

    fn theta(f: &Field) -> RatFn {
        Poly::new(f, vec![0, 1]).into()
    }

    fn c_theta(f: &Field) -> SkewPoly<RatFn> {
        let q = f.order();
        SkewPoly::new(q, vec![theta(f), RatFn::one(f)])
    }

    #[test]
    fn commutation_and_square() {
        let f = Field::new(3, 1).unwrap();
        let tau = SkewPoly::monomial(3, RatFn::one(&f), 1);
        let c = SkewPoly::constant(3, theta(&f));
        let tc = tau.mul(&c);
        assert_eq!(tc.coeffs()[1], theta(&f).frobenius_power(3, 1));
        assert_ne!(tc, c.mul(&tau));
        let sq = c_theta(&f).mul(&c_theta(&f));
        let t = theta(&f);
        let expected = SkewPoly::new(3, vec![&t * &t, &t.frobenius_power(3, 1) + &t, RatFn::one(&f)]);
        assert_eq!(sq, expected);
    }

    #[test]
    fn divide_square_by_generator() {
        let f = Field::new(2, 1).unwrap();
        let c = c_theta(&f);
        let c2 = c.mul(&c);
        let (quot, rem) = c2.right_divmod(&c).unwrap();
        assert!(rem.is_zero());
        assert_eq!(quot.mul(&c), c2);
        let tau2 = SkewPoly::monomial(2, RatFn::one(&f), 2);
        let tau = SkewPoly::monomial(2, RatFn::one(&f), 1);
        assert_eq!(tau2.right_divmod(&tau).unwrap(), (tau.clone(), SkewPoly::zero(2)));
        assert!(tau.right_divmod(&SkewPoly::zero(2)).is_err());
    }

    #[test]
    fn gcd_with_unit_and_order_independence() {
        let f = Field::new(2, 1).unwrap();
        let one = SkewPoly::constant(2, RatFn::one(&f));
        let c = c_theta(&f);
        assert_eq!(SkewPoly::right_gcd(&[one.clone(), c.clone()]).unwrap(), one);
        let a = c.mul(&c).mul(&c);
        let b = c.mul(&c).add(&c);
        assert_eq!(SkewPoly::right_gcd(&[a.clone(), b.clone()]).unwrap(), SkewPoly::right_gcd(&[b, a]).unwrap());
        assert!(SkewPoly::<RatFn>::right_gcd(&[SkewPoly::zero(2)]).is_err());
    }

    #[test]
    fn conjugation_is_multiplicative() {
        let f = Field::new(2, 1).unwrap();
        let c = c_theta(&f);
        let phi_i = c.add(&SkewPoly::constant(2, RatFn::one(&f)));
        let x = SkewPoly::conjugate_twist(&phi_i, &c).unwrap();
        let x2 = SkewPoly::conjugate_twist(&phi_i, &c.mul(&c)).unwrap();
        assert_eq!(x.mul(&x), x2);
        assert_eq!(x.coeffs()[0], theta(&f));
        let one = SkewPoly::constant(2, RatFn::one(&f));
        assert_eq!(SkewPoly::conjugate_twist(&one, &c).unwrap(), c);
    }
}
