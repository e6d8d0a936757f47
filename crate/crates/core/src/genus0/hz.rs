//! Rational functions of `z` over the Kummer field whose denominators are
//! products of `z - ζ^{q^j}`: the home of `f`, `f⋯f^{(i-1)}`, `ρ(a)` and `u_I`.

use std::fmt;

use super::{GenusZeroContext, Kum};
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::poly::{Poly, RatFn};

/// `N(z) / ∏_j (z - ζ^{q^j})^{e_j}`, kept with `N` coprime to the denominator.
#[derive(Clone, PartialEq)]
pub struct Hz {
    ctx: GenusZeroContext,
    num: Vec<Kum>,
    den: Vec<u32>,
}

impl fmt::Debug for Hz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("[{}]z^{i}", c.format()))
            .collect();
        write!(f, "({}) / den{:?}", terms.join(" + "), self.den)
    }
}

impl Hz {
    pub fn new(ctx: &GenusZeroContext, num: Vec<Kum>, den: Vec<u32>) -> Hz {
        let mut h = Hz { ctx: ctx.clone(), num, den };
        h.trim();
        h.cancel();
        h
    }

    fn trim(&mut self) {
        while self.num.last().is_some_and(Kum::is_zero) {
            self.num.pop();
        }
        if self.num.is_empty() {
            self.den.iter_mut().for_each(|e| *e = 0);
        }
    }

    fn cancel(&mut self) {
        for j in 0..self.den.len() {
            let r = self.ctx.zeta_pow(j as u32);
            while self.den[j] > 0 && eval_const(&self.ctx, &self.num, r).is_zero() {
                self.num = div_linear(&self.num, r);
                self.den[j] -= 1;
            }
        }
    }

    pub fn zero(ctx: &GenusZeroContext) -> Hz {
        Hz { ctx: ctx.clone(), num: Vec::new(), den: vec![0; ctx.d() as usize] }
    }

    pub fn one(ctx: &GenusZeroContext) -> Hz {
        Hz::constant(Kum::one(ctx))
    }

    pub fn constant(c: Kum) -> Hz {
        let ctx = c.ctx().clone();
        Hz::new(&ctx, vec![c], vec![0; ctx.d() as usize])
    }

    /// `z - a`.
    pub fn z_minus(a: Kum) -> Hz {
        let ctx = a.ctx().clone();
        Hz::new(&ctx, vec![a.neg(), Kum::one(&ctx)], vec![0; ctx.d() as usize])
    }

    /// `1 / (z - ζ^{q^j})`.
    pub fn inv_z_minus_zeta(ctx: &GenusZeroContext, j: u32) -> Hz {
        let mut den = vec![0; ctx.d() as usize];
        den[(j % ctx.d()) as usize] = 1;
        Hz::new(ctx, vec![Kum::one(ctx)], den)
    }

    /// `ρ(a) = a(z)` for `a ∈ A`.
    pub fn rho(ctx: &GenusZeroContext, a: &RatFn) -> Result<Hz> {
        let (k, _, _) = ctx.a_data(a)?;
        let num = a.num().coeffs().iter().map(|&c| Kum::constant(ctx, c)).collect();
        Ok(Hz::new(ctx, num, vec![k; ctx.d() as usize]))
    }

    /// A polynomial in `z` with constant coefficients from `F_∞`.
    pub fn z_poly(ctx: &GenusZeroContext, p: &Poly) -> Hz {
        let num = p.coeffs().iter().map(|&c| Kum::constant(ctx, c)).collect();
        Hz::new(ctx, num, vec![0; ctx.d() as usize])
    }

    pub fn ctx(&self) -> &GenusZeroContext {
        &self.ctx
    }

    pub fn num(&self) -> &[Kum] {
        &self.num
    }

    /// Exponents `e_j` of `z - ζ^{q^j}`.
    pub fn den(&self) -> &[u32] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// Degree of the numerator in `z`.
    pub fn num_degree(&self) -> Option<usize> {
        self.num.len().checked_sub(1)
    }

    fn with_den(&self, target: &[u32]) -> Vec<Kum> {
        let mut num = self.num.clone();
        for (j, (&have, &want)) in self.den.iter().zip(target).enumerate() {
            let r = self.ctx.zeta_pow(j as u32);
            for _ in have..want {
                num = mul_linear(&num, r);
            }
        }
        num
    }

    pub fn add(&self, other: &Hz) -> Hz {
        let den: Vec<u32> = self.den.iter().zip(&other.den).map(|(a, b)| *a.max(b)).collect();
        let a = self.with_den(&den);
        let b = other.with_den(&den);
        let n = a.len().max(b.len());
        let zero = Kum::zero(&self.ctx);
        let num = (0..n).map(|i| a.get(i).unwrap_or(&zero).add(b.get(i).unwrap_or(&zero))).collect();
        Hz::new(&self.ctx, num, den)
    }

    pub fn neg(&self) -> Hz {
        Hz { ctx: self.ctx.clone(), num: self.num.iter().map(Kum::neg).collect(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Hz) -> Hz {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Hz) -> Hz {
        if self.is_zero() || other.is_zero() {
            return Hz::zero(&self.ctx);
        }
        let mut num = vec![Kum::zero(&self.ctx); self.num.len() + other.num.len() - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    num[i + j] = num[i + j].add(&a.mul(b));
                }
            }
        }
        let den = self.den.iter().zip(&other.den).map(|(a, b)| a + b).collect();
        Hz::new(&self.ctx, num, den)
    }

    pub fn scale(&self, c: &Kum) -> Hz {
        Hz::new(&self.ctx, self.num.iter().map(|a| a.mul(c)).collect(), self.den.clone())
    }

    /// `τ^k`: Frobenius on the coefficients, `z` fixed.
    pub fn twist(&self, k: u32) -> Hz {
        let d = self.ctx.d() as usize;
        let mut den = vec![0; d];
        for (j, &e) in self.den.iter().enumerate() {
            den[(j + k as usize) % d] = e;
        }
        Hz::new(&self.ctx, self.num.iter().map(|a| a.frob(k)).collect(), den)
    }

    /// Applies a coefficient map that moves `ζ^{q^j}` to `ζ^{q^{j+shift}}`.
    pub(crate) fn map_coeffs(&self, shift: u32, f: impl Fn(&Kum) -> Kum) -> Hz {
        let d = self.ctx.d() as usize;
        let mut den = vec![0; d];
        for (j, &e) in self.den.iter().enumerate() {
            den[(j + shift as usize) % d] = e;
        }
        Hz::new(&self.ctx, self.num.iter().map(f).collect(), den)
    }

    /// Substitutes `z ← v`.
    pub fn eval(&self, v: &Kum) -> Result<Kum> {
        let mut acc = Kum::zero(&self.ctx);
        for c in self.num.iter().rev() {
            acc = acc.mul(v).add(c);
        }
        let mut den = Kum::one(&self.ctx);
        for (j, &e) in self.den.iter().enumerate() {
            if e > 0 {
                let lin = v.sub(&Kum::constant(&self.ctx, self.ctx.zeta_pow(j as u32)));
                den = den.mul(&lin.pow(e as u64));
            }
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        acc.div(&den)
    }

    /// Substitutes `z ← x^{q^i}`, the point `ξ^{(i)}`.
    pub fn eval_xi(&self, i: u32) -> Result<Kum> {
        let xi = self.ctx.x().frobenius_power(self.ctx.q(), i);
        self.eval(&Kum::from_ratfn(&self.ctx, xi))
    }
}

fn eval_const(ctx: &GenusZeroContext, num: &[Kum], r: Elem) -> Kum {
    let mut acc = Kum::zero(ctx);
    for c in num.iter().rev() {
        acc = acc.scale_elem(r).add(c);
    }
    acc
}

/// Quotient of `num` by `z - r`, assuming exact division.
fn div_linear(num: &[Kum], r: Elem) -> Vec<Kum> {
    let n = num.len();
    let mut out = vec![num[n - 1].clone(); n - 1];
    for i in (1..n - 1).rev() {
        out[i - 1] = num[i].add(&out[i].scale_elem(r));
    }
    out
}

fn mul_linear(num: &[Kum], r: Elem) -> Vec<Kum> {
    let ctx = num[0].ctx();
    let mut out = vec![Kum::zero(ctx); num.len() + 1];
    for (i, c) in num.iter().enumerate() {
        out[i + 1] = out[i + 1].add(c);
        out[i] = out[i].sub(&c.scale_elem(r));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_and_eval() {
        let c = GenusZeroContext::new(2, &[1, 1, 1]).unwrap();
        let zeta = Kum::constant(&c, c.zeta());
        let lin = Hz::z_minus(zeta.clone());
        let inv = Hz::inv_z_minus_zeta(&c, 0);
        assert_eq!(lin.mul(&inv), Hz::one(&c));
        let x = Kum::from_ratfn(&c, c.x().clone());
        let h = Hz::z_minus(x.clone()).mul(&inv);
        assert!(h.eval(&x).unwrap().is_zero());
        assert!(inv.eval(&zeta).is_err());
        // twist moves the pole to ζ^q
        assert_eq!(inv.twist(1), Hz::inv_z_minus_zeta(&c, 1));
        assert_eq!(inv.twist(2), inv);
    }

    #[test]
    fn rho_of_theta() {
        let c = GenusZeroContext::new(2, &[1, 1, 1]).unwrap();
        let r = Hz::rho(&c, &c.theta()).unwrap();
        assert_eq!(r.den(), &[1, 1]);
        let back = r.mul(&Hz::z_poly(&c, c.pinf()));
        assert_eq!(back, Hz::one(&c));
        let sum = r.add(&r.neg());
        assert!(sum.is_zero());
    }
}
