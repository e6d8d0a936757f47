//! Integral ideals of `A`, the isogenies `φ_I`, the elements `ψ_φ(I)` and
//! `u_I`, and the Artin symbol.
//!
//! Every integral ideal is `m · P^j` where `m ∈ F_q[x]` is monic and prime to
//! `P_∞` (the product of the finite primes it contains) and `P` is the prime
//! at the pole of `x`. Then `deg I = deg m + j` and the class of `I` in
//! `Pic(A) ≅ Z/d` is `deg I mod d`.

use std::collections::HashMap;

use super::{GaloisElem, GenusZeroContext, Hz, Kum};
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::poly::{Poly, RatFn};
use crate::skew::SkewPoly;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Ideal {
    m: Poly,
    j: u32,
}

/// `φ_I`, `ψ_φ(I)` and `u_I` for one ideal.
#[derive(Clone, Debug)]
pub struct IdealData {
    pub ideal: Ideal,
    pub phi: SkewPoly<Kum>,
    pub psi: Kum,
    pub u: Hz,
}

impl Ideal {
    pub fn unit(ctx: &GenusZeroContext) -> Ideal {
        Ideal { m: Poly::one(ctx.field()), j: 0 }
    }

    /// The prime at the pole of `x`.
    pub fn p(ctx: &GenusZeroContext) -> Ideal {
        Ideal { m: Poly::one(ctx.field()), j: 1 }
    }

    pub fn new(ctx: &GenusZeroContext, m: Poly, j: u32) -> Result<Ideal> {
        let f = ctx.field();
        if m.is_zero() || !m.is_monic() {
            return Err(Error::InvalidParameter("m must be monic".into()));
        }
        if m.coeffs().iter().any(|&c| !f.is_in_subfield(c, ctx.q())) {
            return Err(Error::InvalidParameter("m must have coefficients in F_q".into()));
        }
        if !m.gcd(ctx.pinf()).is_one() {
            return Err(Error::InvalidParameter("m must be prime to P_inf".into()));
        }
        Ok(Ideal { m, j })
    }

    /// `aA` for `a ∈ A ∖ {0}`.
    pub fn principal(ctx: &GenusZeroContext, a: &RatFn) -> Result<Ideal> {
        let (_, deg, _) = ctx.a_data(a)?;
        let m = a.num().monic();
        let dm = m.degree().expect("nonzero") as u32;
        Ok(Ideal { m, j: deg - dm })
    }

    pub fn m(&self) -> &Poly {
        &self.m
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn degree(&self) -> u32 {
        self.m.degree().expect("nonzero") as u32 + self.j
    }

    /// Class in `Pic(A) ≅ Z/d`.
    pub fn class(&self, ctx: &GenusZeroContext) -> u32 {
        self.degree() % ctx.d()
    }

    pub fn mul(&self, other: &Ideal) -> Ideal {
        Ideal { m: &self.m * &other.m, j: self.j + other.j }
    }

    pub fn is_unit(&self) -> bool {
        self.j == 0 && self.m.degree() == Some(0)
    }

    /// `(a, e)` with `I · P^e = aA`, `0 ≤ e < d` and `a = m/P_∞^k`.
    pub fn principal_cover(&self, ctx: &GenusZeroContext) -> (RatFn, u32) {
        let d = ctx.d();
        let n = self.degree();
        let k = n.div_ceil(d);
        let a = RatFn::new(self.m.clone(), ctx.pinf().pow(k as u64)).expect("nonzero");
        (a, k * d - n)
    }

    /// A generating set of at most two elements.
    pub fn generators(&self, ctx: &GenusZeroContext) -> Vec<RatFn> {
        let (a, e) = self.principal_cover(ctx);
        if e == 0 {
            return vec![a];
        }
        let r = Poly::linear(ctx.field(), ctx.aux_root()).pow(e as u64);
        let b = &a * &RatFn::from(r);
        vec![a, b]
    }

    /// Generator of `I` if it is principal.
    pub fn principal_generator(&self, ctx: &GenusZeroContext) -> Option<RatFn> {
        let (a, e) = self.principal_cover(ctx);
        (e == 0).then_some(a)
    }
}

/// All integral ideals of degree `≤ max_deg`, ordered by degree, then by the
/// exponent of `P`, then by the coefficient codes of `m` from the constant
/// term up.
pub fn enumerate_ideals(ctx: &GenusZeroContext, max_deg: u32) -> Vec<Ideal> {
    let f = ctx.field();
    let fq = ctx.fq();
    let mut out = Vec::new();
    for n in 0..=max_deg {
        for j in 0..=n {
            let dm = (n - j) as usize;
            let total = (fq.len() as u64).pow(dm as u32);
            let mut ms: Vec<Vec<u32>> = Vec::new();
            for idx in 0..total {
                let mut coeffs = Vec::with_capacity(dm + 1);
                let mut r = idx;
                for _ in 0..dm {
                    coeffs.push(fq[(r % fq.len() as u64) as usize]);
                    r /= fq.len() as u64;
                }
                coeffs.push(1);
                ms.push(coeffs);
            }
            ms.sort();
            for coeffs in ms {
                let m = Poly::new(f, coeffs);
                if m.gcd(ctx.pinf()).is_one() {
                    out.push(Ideal { m, j });
                }
            }
        }
    }
    out
}

impl GenusZeroContext {
    /// Monic right gcd of `φ_a` over the generators, and its constant term.
    pub fn ideal_skew(&self, ideal: &Ideal) -> Result<(SkewPoly<Kum>, Kum)> {
        let gens = ideal.generators(self);
        let ops = gens.iter().map(|a| Ok(self.drinfeld_coeffs(a)?.op)).collect::<Result<Vec<_>>>()?;
        let phi = SkewPoly::right_gcd(&ops)?;
        if phi.degree() != Some(ideal.degree() as usize) {
            return Err(Error::Internal(format!("deg phi_I = {:?} but deg I = {}", phi.degree(), ideal.degree())));
        }
        let psi = phi.coeff(0).cloned().unwrap_or_else(|| Kum::zero(self));
        Ok((phi, psi))
    }

    /// `u_I = Σ_j φ_{I,j} f⋯f^{(j-1)}`.
    pub fn u_from_phi(&self, phi: &SkewPoly<Kum>) -> Hz {
        let mut acc = Hz::zero(self);
        for (j, c) in phi.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.f_product(j as u32).scale(c));
            }
        }
        acc
    }

    pub fn ideal_data(&self, ideal: &Ideal) -> Result<IdealData> {
        let (phi, psi) = self.ideal_skew(ideal)?;
        let u = self.u_from_phi(&phi);
        Ok(IdealData { ideal: ideal.clone(), phi, psi, u })
    }

    /// `sgn(a)^{q^{n(φ)}}`, the leading coefficient of `φ_a`.
    pub fn twisted_sign(&self, a: &RatFn) -> Result<Elem> {
        Ok(self.field().frobenius(self.sign_of(a)?, self.q(), self.n_phi()))
    }

    /// `u_{aA} = ρ(a)/sgn(a)^{q^{n(φ)}}`.
    pub fn u_principal(&self, a: &RatFn) -> Result<Hz> {
        let sgn = self.twisted_sign(a)?;
        let inv = self.field().inv(sgn).ok_or(Error::DivisionByZero)?;
        Ok(Hz::rho(self, a)?.scale(&Kum::constant(self, inv)))
    }

    /// Does `σ(f) u_I = f τ(u_I)` hold?
    pub fn satisfies_artin_identity(&self, s: GaloisElem, u: &Hz) -> bool {
        let f = self.shtuka();
        self.act_hz(s, &f).mul(u) == f.mul(&u.twist(1))
    }

    /// The element of `G` matching `u_I` through `σ(f) u_I = f τ(u_I)`,
    /// found by trying every `σ`.
    pub fn artin_by_search(&self, u: &Hz) -> Result<GaloisElem> {
        let mut hits = self.galois_elements().into_iter().filter(|&s| self.satisfies_artin_identity(s, u));
        let s = hits.next().ok_or_else(|| Error::Inconsistent("no Galois element satisfies the Artin identity".into()))?;
        if hits.next().is_some() {
            return Err(Error::Inconsistent("Artin identity does not determine σ".into()));
        }
        Ok(s)
    }

    /// `σ_P` for the prime at the pole of `x`.
    pub fn artin_p(&self) -> Result<GaloisElem> {
        let data = self.ideal_data(&Ideal::p(self))?;
        self.artin_by_search(&data.u)
    }

    /// `σ_I` through `I = aA · P^{-e}`: `σ_{aA}` acts as `(0, sgn a)`.
    pub fn artin(&self, ideal: &Ideal, sigma_p: GaloisElem) -> Result<GaloisElem> {
        let (a, e) = ideal.principal_cover(self);
        let sa = self.galois(0, self.sign_of(&a)?);
        let pe = self.galois_pow(sigma_p, -(e as i64))?;
        self.compose(sa, pe)
    }

    /// Table for computing `ψ_φ(I)` without a gcd: `ψ(I) = (a/sgn(a)^{q^n}) / σ_I(ψ(P^e))`
    /// when `I P^e = aA`.
    pub fn psi_table(&self) -> Result<PsiTable> {
        let sigma_p = self.artin_p()?;
        let mut psi_pe = Vec::new();
        for e in 0..self.d() {
            let ideal = Ideal { m: Poly::one(self.field()), j: e };
            psi_pe.push(self.ideal_skew(&ideal)?.1);
        }
        Ok(PsiTable { ctx: self.clone(), sigma_p, psi_pe, cache: HashMap::new() })
    }
}

/// See [`GenusZeroContext::psi_table`].
pub struct PsiTable {
    ctx: GenusZeroContext,
    sigma_p: GaloisElem,
    psi_pe: Vec<Kum>,
    cache: HashMap<(GaloisElem, u32), Kum>,
}

impl PsiTable {
    pub fn sigma_p(&self) -> GaloisElem {
        self.sigma_p
    }

    pub fn artin(&self, ideal: &Ideal) -> Result<GaloisElem> {
        self.ctx.artin(ideal, self.sigma_p)
    }

    pub fn psi(&mut self, ideal: &Ideal) -> Result<Kum> {
        let ctx = self.ctx.clone();
        let (a, e) = ideal.principal_cover(&ctx);
        let s = self.artin(ideal)?;
        let denom = match self.cache.get(&(s, e)) {
            Some(v) => v.clone(),
            None => {
                let v = ctx.act(s, &self.psi_pe[e as usize]).inv()?;
                self.cache.insert((s, e), v.clone());
                v
            }
        };
        let sgn = ctx.twisted_sign(&a)?;
        let a_norm = a.scale(ctx.field().inv(sgn).ok_or(Error::DivisionByZero)?);
        Ok(denom.scale(&a_norm))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> GenusZeroContext {
        GenusZeroContext::new(2, &[1, 1, 1]).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        let c = ctx();
        let ideals = enumerate_ideals(&c, 4);
        let mut counts = [0usize; 5];
        for i in &ideals {
            counts[i.degree() as usize] += 1;
        }
        // (1 - T^2)/((1 - T)(1 - 2T)) = (1 + T)/(1 - 2T)
        assert_eq!(counts, [1, 3, 6, 12, 24]);
        assert_eq!(enumerate_ideals(&c, 0), vec![Ideal::unit(&c)]);
        let p2 = Ideal::p(&c).mul(&Ideal::p(&c));
        assert_eq!(p2, Ideal::principal(&c, &c.theta()).unwrap());
        assert_eq!(p2.degree(), 2);
    }

    #[test]
    fn unit_and_principal_ideals() {
        let c = ctx();
        let d = c.ideal_data(&Ideal::unit(&c)).unwrap();
        assert_eq!(d.psi, Kum::one(&c));
        assert_eq!(d.u, Hz::one(&c));
        let theta = c.theta();
        let d = c.ideal_data(&Ideal::principal(&c, &theta).unwrap()).unwrap();
        assert_eq!(d.phi, c.drinfeld_coeffs(&theta).unwrap().op);
        assert_eq!(d.u, c.u_principal(&theta).unwrap());
    }

    #[test]
    fn prime_at_pole() {
        let c = ctx();
        let d = c.ideal_data(&Ideal::p(&c)).unwrap();
        assert_eq!(d.phi.degree(), Some(1));
        assert_eq!(d.u.eval_xi(0).unwrap(), d.psi);
        let s = c.artin_p().unwrap();
        assert_eq!(s.k, 1);
        assert_eq!(6 % c.galois_order_of(s).unwrap(), 0);
    }
}
