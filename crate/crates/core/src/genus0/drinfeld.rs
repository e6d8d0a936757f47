//! The shtuka `f`, the Drinfeld module `φ` it defines, and `exp_φ`.

use super::{GenusZeroContext, Hz, Kum};
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::poly::RatFn;
use crate::skew::SkewPoly;

/// `φ_a` together with the data of `a`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiA {
    pub a: RatFn,
    pub deg: u32,
    pub sgn: Elem,
    pub op: SkewPoly<Kum>,
}

/// `e_i(φ)` from evaluating `1/(f⋯f^{(i-1)})` at `ξ^{(i)}`, and from the
/// closed product.
#[derive(Clone, Debug)]
pub struct ExpCoeffs {
    pub eval: Vec<Kum>,
    pub closed: Vec<Kum>,
}

impl ExpCoeffs {
    pub fn agree(&self) -> bool {
        self.eval == self.closed
    }
}

impl GenusZeroContext {
    /// `f = (z - x)/(z - ζ) · γ^{1-q}`.
    pub fn shtuka(&self) -> Hz {
        let x = Kum::from_ratfn(self, self.x().clone());
        Hz::z_minus(x)
            .mul(&Hz::inv_z_minus_zeta(self, 0))
            .scale(&self.gamma_pow(1 - self.q() as i64))
    }

    /// `f f^{(1)} ⋯ f^{(i-1)} = ∏_{j<i} (z - x^{q^j})/(z - ζ^{q^j}) · γ^{1-q^i}`.
    pub fn f_product(&self, i: u32) -> Hz {
        let q = self.q();
        let mut acc = Hz::one(self);
        for j in 0..i {
            let xj = Kum::from_ratfn(self, self.x().frobenius_power(q, j));
            acc = acc.mul(&Hz::z_minus(xj)).mul(&Hz::inv_z_minus_zeta(self, j));
        }
        acc.scale(&self.gamma_pow(1 - (q as i64).pow(i)))
    }

    /// `f⋯f^{(i-1)}` at `z = x^{q^m}`, straight from the product formula.
    fn f_product_at(&self, i: u32, m: u32) -> Result<Kum> {
        let q = self.q();
        let f = self.field();
        let xm = self.x().frobenius_power(q, m);
        let mut r = RatFn::one(f);
        for j in 0..i {
            let num = &xm - &self.x().frobenius_power(q, j);
            let den = &xm - &RatFn::constant(f, self.zeta_pow(j));
            r = (&r * &num).div(&den)?;
        }
        Ok(self.gamma_pow(1 - (q as i64).pow(i)).scale(&r))
    }

    /// `φ_a` by the triangular system `a(x^{q^m}) = Σ_{i≤m} φ_{a,i} (f⋯f^{(i-1)})(x^{q^m})`.
    pub fn drinfeld_coeffs(&self, a: &RatFn) -> Result<PhiA> {
        let (_, deg, sgn) = self.a_data(a)?;
        let q = self.q();
        let mut coeffs: Vec<Kum> = Vec::new();
        for m in 0..=deg {
            let mut rhs = Kum::from_ratfn(self, a.frobenius_power(q, m));
            for (i, c) in coeffs.iter().enumerate() {
                rhs = rhs.sub(&c.mul(&self.f_product_at(i as u32, m)?));
            }
            let pivot = self.f_product_at(m, m)?;
            if pivot.is_zero() {
                return Err(Error::Internal("singular triangular system".into()));
            }
            coeffs.push(rhs.div(&pivot)?);
        }
        let op = SkewPoly::new(q, coeffs);
        let top = self.field().frobenius(sgn, q, self.n_phi());
        if op.degree() != Some(deg as usize) || op.lead() != Some(&Kum::constant(self, top)) {
            return Err(Error::Internal(format!("phi_a has wrong top coefficient for deg {deg}")));
        }
        Ok(PhiA { a: a.clone(), deg, sgn, op })
    }

    /// Re-expands `Σ φ_{a,i} f⋯f^{(i-1)}` and compares it with `ρ(a)`.
    pub fn verify_phi(&self, phi: &PhiA) -> Result<bool> {
        let mut acc = Hz::zero(self);
        for (i, c) in phi.op.coeffs().iter().enumerate() {
            acc = acc.add(&self.f_product(i as u32).scale(c));
        }
        Ok(acc == Hz::rho(self, &phi.a)?)
    }

    /// `e_0(φ), …, e_n(φ)` computed twice.
    pub fn exp_coeffs_phi(&self, n: u32) -> Result<ExpCoeffs> {
        let q = self.q();
        let f = self.field();
        let mut eval = Vec::new();
        let mut closed = Vec::new();
        for i in 0..=n {
            eval.push(self.f_product(i).eval_xi(i)?.inv()?);
            let xi = self.x().frobenius_power(q, i);
            let mut r = RatFn::one(f);
            for k in 0..i {
                let num = &xi - &RatFn::constant(f, self.zeta_pow(k));
                let den = &xi - &self.x().frobenius_power(q, k);
                r = (&r * &num).div(&den)?;
            }
            closed.push(self.gamma_pow((q as i64).pow(i) - 1).scale(&r));
        }
        Ok(ExpCoeffs { eval, closed })
    }

    /// `Σ_{i≤n} e_i(φ) τ^i`.
    pub fn exp_operator(&self, n: u32) -> Result<SkewPoly<Kum>> {
        Ok(SkewPoly::new(self.q(), self.exp_coeffs_phi(n)?.closed))
    }
}
