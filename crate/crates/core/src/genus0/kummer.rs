//! The Kummer field `F_∞(x)[g]/(g^Q - c)`.

use std::fmt;

use super::GenusZeroContext;
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::poly::RatFn;
use crate::skew::TwistRing;

/// `Σ_{j<Q} a_j g^j` with `a_j ∈ F_∞(x)`.
#[derive(Clone, PartialEq)]
pub struct Kum {
    ctx: GenusZeroContext,
    coeffs: Vec<RatFn>,
}

impl fmt::Debug for Kum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format())
    }
}

impl Kum {
    fn n(ctx: &GenusZeroContext) -> usize {
        ctx.big_q() as usize
    }

    pub fn zero(ctx: &GenusZeroContext) -> Kum {
        let z = RatFn::zero(ctx.field());
        Kum { ctx: ctx.clone(), coeffs: vec![z; Self::n(ctx)] }
    }

    pub fn one(ctx: &GenusZeroContext) -> Kum {
        Kum::from_ratfn(ctx, RatFn::one(ctx.field()))
    }

    pub fn from_ratfn(ctx: &GenusZeroContext, r: RatFn) -> Kum {
        let mut k = Kum::zero(ctx);
        k.coeffs[0] = r;
        k
    }

    pub fn constant(ctx: &GenusZeroContext, c: Elem) -> Kum {
        Kum::from_ratfn(ctx, RatFn::constant(ctx.field(), c))
    }

    /// `r g^j` for any integer `j`.
    pub fn monomial(ctx: &GenusZeroContext, r: RatFn, j: i64) -> Result<Kum> {
        let big_q = ctx.big_q();
        let m = j.div_euclid(big_q);
        let rr = j.rem_euclid(big_q) as usize;
        let mut k = Kum::zero(ctx);
        k.coeffs[rr] = if m == 0 { r } else { &r * &ctx.kummer_modulus().pow(m)? };
        Ok(k)
    }

    /// `g^j`.
    pub fn g_pow(ctx: &GenusZeroContext, j: i64) -> Kum {
        Kum::monomial(ctx, RatFn::one(ctx.field()), j).expect("c is nonzero")
    }

    pub fn ctx(&self) -> &GenusZeroContext {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[RatFn] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &RatFn {
        &self.coeffs[j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RatFn::is_zero)
    }

    /// The `F_∞(x)` value, if only `g^0` is present.
    pub fn as_ratfn(&self) -> Option<&RatFn> {
        self.coeffs[1..].iter().all(RatFn::is_zero).then_some(&self.coeffs[0])
    }

    /// `Some((j, a))` for a monomial `a g^j`.
    pub fn as_monomial(&self) -> Option<(usize, &RatFn)> {
        let mut it = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero());
        let first = it.next()?;
        it.next().is_none().then_some(first)
    }

    /// Indices `j` with `a_j ≠ 0`.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&j| !self.coeffs[j].is_zero()).collect()
    }

    /// Lies in `H`: only exponents divisible by `q - 1`.
    pub fn in_h(&self) -> bool {
        let qm1 = self.ctx.q() as usize - 1;
        self.support().iter().all(|j| j % qm1 == 0)
    }

    pub fn add(&self, other: &Kum) -> Kum {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Kum { ctx: self.ctx.clone(), coeffs }
    }

    pub fn sub(&self, other: &Kum) -> Kum {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Kum { ctx: self.ctx.clone(), coeffs }
    }

    pub fn neg(&self) -> Kum {
        Kum { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, r: &RatFn) -> Kum {
        Kum { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(|a| a * r).collect() }
    }

    pub fn scale_elem(&self, c: Elem) -> Kum {
        Kum { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn mul(&self, other: &Kum) -> Kum {
        let n = self.coeffs.len();
        let f = self.ctx.field();
        let mut low = vec![RatFn::zero(f); n];
        let mut high = vec![RatFn::zero(f); n];
        for i in self.support() {
            for j in other.support() {
                let t = &self.coeffs[i] * &other.coeffs[j];
                if i + j < n {
                    low[i + j] = &low[i + j] + &t;
                } else {
                    high[i + j - n] = &high[i + j - n] + &t;
                }
            }
        }
        let c = self.ctx.kummer_modulus();
        for (l, h) in low.iter_mut().zip(&high) {
            if !h.is_zero() {
                *l = &*l + &(h * c);
            }
        }
        Kum { ctx: self.ctx.clone(), coeffs: low }
    }

    pub fn pow(&self, mut e: u64) -> Kum {
        let mut acc = Kum::one(&self.ctx);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `self^e` for any integer `e`.
    pub fn pow_i(&self, e: i64) -> Result<Kum> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// The automorphism `g ↦ η g` over `F_∞(x)`, for `η^Q = 1`.
    pub fn kummer_conj(&self, eta: Elem) -> Kum {
        let f = self.ctx.field();
        let mut e = 1;
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let r = a.scale(e);
                e = f.mul(e, eta);
                r
            })
            .collect();
        Kum { ctx: self.ctx.clone(), coeffs }
    }

    /// Norm to `F_∞(x)`: the product of all Kummer conjugates.
    pub fn norm(&self) -> RatFn {
        self.norm_parts().1
    }

    fn norm_parts(&self) -> (Kum, RatFn) {
        let f = self.ctx.field();
        let mut others = Kum::one(&self.ctx);
        for eta in 2..f.order() {
            others = others.mul(&self.kummer_conj(eta));
        }
        let n = self.mul(&others);
        let r = n.as_ratfn().expect("norm lies in F_inf(x)").clone();
        (others, r)
    }

    pub fn inv(&self) -> Result<Kum> {
        if let Some((j, a)) = self.as_monomial() {
            return Kum::monomial(&self.ctx, a.inv()?, -(j as i64));
        }
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (others, n) = self.norm_parts();
        if n.is_zero() {
            return Err(Error::NotInvertible("Kummer norm vanished".into()));
        }
        Ok(others.scale(&n.inv()?))
    }

    pub fn div(&self, other: &Kum) -> Result<Kum> {
        Ok(self.mul(&other.inv()?))
    }

    /// `self^{q^k}`: coefficients `a(x) ↦ a^{(q^k)}`, and `g ↦ g^{q^k}`.
    pub fn frob(&self, k: u32) -> Kum {
        let mut cur = self.clone();
        for _ in 0..k {
            cur = cur.frob1();
        }
        cur
    }

    fn frob1(&self) -> Kum {
        let q = self.ctx.q();
        let mut acc = Kum::zero(&self.ctx);
        for j in self.support() {
            let a = self.coeffs[j].frobenius_power(q, 1);
            let t = Kum::monomial(&self.ctx, a, (j as i64) * q as i64).expect("c is nonzero");
            acc = acc.add(&t);
        }
        acc
    }

    /// Applies `f` to every coefficient `a_j`.
    pub fn map_ratfn(&self, f: impl Fn(&RatFn) -> RatFn) -> Kum {
        Kum { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// Text such as `(x+1)/(x^2+x+1) + (x)*g^2`.
    pub fn format(&self) -> String {
        let parts: Vec<String> = self
            .support()
            .into_iter()
            .map(|j| {
                let a = &self.coeffs[j];
                let s = if a.is_polynomial() {
                    a.num().to_string_in("x")
                } else {
                    format!("({})/({})", a.num().to_string_in("x"), a.den().to_string_in("x"))
                };
                match j {
                    0 => s,
                    1 => format!("({s})*g"),
                    _ => format!("({s})*g^{j}"),
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl TwistRing for Kum {
    fn zero_like(&self) -> Self {
        Kum::zero(&self.ctx)
    }
    fn one_like(&self) -> Self {
        Kum::one(&self.ctx)
    }
    fn is_zero(&self) -> bool {
        Kum::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        Kum::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Kum::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Kum::mul(self, other)
    }
    fn twist(&self, q: u32, k: u32) -> Self {
        debug_assert_eq!(q, self.ctx.q());
        self.frob(k)
    }
    fn inv(&self) -> Result<Self> {
        Kum::inv(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn ctx() -> GenusZeroContext {
        GenusZeroContext::new(2, &[1, 1, 1]).unwrap()
    }

    fn sample(c: &GenusZeroContext) -> Kum {
        let f = c.field();
        let a: RatFn = Poly::new(f, vec![1, 1]).into();
        let b = RatFn::new(Poly::new(f, vec![2, 0, 1]), Poly::new(f, vec![1, 1, 1])).unwrap();
        Kum::from_ratfn(c, a).add(&Kum::monomial(c, b, 2).unwrap())
    }

    #[test]
    fn g_power_reduces() {
        let c = ctx();
        let g = Kum::g_pow(&c, 1);
        assert_eq!(g.pow(3), Kum::from_ratfn(&c, c.kummer_modulus().clone()));
        assert_eq!(g.mul(&Kum::g_pow(&c, -1)), Kum::one(&c));
    }

    #[test]
    fn inverse_and_frobenius() {
        let c = ctx();
        let s = sample(&c);
        assert_eq!(s.mul(&s.inv().unwrap()), Kum::one(&c));
        // frobenius is the q-power map
        assert_eq!(s.frob(1), s.pow(2));
        assert_eq!(s.frob(2), s.pow(4));
        let t = sample(&c).add(&Kum::g_pow(&c, 1));
        assert_eq!(s.mul(&t).frob(1), s.frob(1).mul(&t.frob(1)));
    }

    #[test]
    fn q3_field() {
        let c = GenusZeroContext::new(3, &[1, 0, 1]).unwrap();
        let f = c.field();
        let s = Kum::from_ratfn(&c, Poly::new(f, vec![0, 1]).into()).add(&Kum::g_pow(&c, 2)).add(&Kum::g_pow(&c, 5));
        assert_eq!(s.mul(&s.inv().unwrap()), Kum::one(&c));
        assert_eq!(s.frob(1), s.pow(3));
    }
}
