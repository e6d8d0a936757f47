//! Sign-normalized rank-one Drinfeld modules for `K = F_q(x)` with a place at
//! infinity of arbitrary degree `d`.
//!
//! `A` is the ring of functions regular away from the zeros of `P_∞(x)`:
//! elements `F(x)/P_∞(x)^k` with `deg F ≤ k d`. The Hilbert class field is
//! `K(F_∞)` and the normalizing field is `H = K(F_∞, g^{q-1})` where `g` is the
//! Thakur Gauss sum, `g^{q^d-1} = c = ∏_{k<d} (ζ - x^{q^k})`. The module works
//! in two worlds at once:
//!
//! * exactly, in the Kummer field [`Kum`] `= F_∞(x)[g]/(g^Q - c)` and in
//!   rational functions of `z` over it ([`Hz`]);
//! * analytically, through series in `u` with `u^Q = -P_∞(x)`, where `g` is
//!   bound to the Gauss sum series.
//!
//! The shtuka function is `f = (z-x)/(z-ζ) · γ^{1-q}` where `γ = η_0 w g^{q^{d-1}}`
//! is the Gauss sum conjugate with `γ^Q = ∏_k (ζ^{q^{d-1}} - x^{q^k})`; the
//! residue of `ρ(θ)` at `z = ζ^{q^{d-1}}` shows this is the choice that makes
//! `φ` sign-normalized, with twisting exponent `n(φ) = d - 1`. The constant
//! `η_0 ∈ F_∞^×` makes `γ/u^{q^{d-1}}` have leading coefficient 1. For `d = 1`,
//! `γ = g`.

mod drinfeld;
mod galois;
mod hz;
mod ideals;
mod kummer;
mod lemmas;
mod special;

use std::sync::Arc;

pub use drinfeld::{ExpCoeffs, PhiA};
pub use galois::GaloisElem;
pub use hz::Hz;
pub use ideals::{enumerate_ideals, Ideal, IdealData, PsiTable};
pub use kummer::Kum;
pub use lemmas::LemmaReport;
pub use special::{KernelReport, PeriodData, SeriesImage};

use crate::carlitz::CarlitzContext;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::poly::{Poly, RatFn};
use crate::series::SeriesContext;

struct Inner {
    carlitz: CarlitzContext,
    c: RatFn,
    x: RatFn,
    fq: Vec<Elem>,
    eta_reps: Vec<Elem>,
    w: Vec<RatFn>,
    gamma_coef: RatFn,
    aux_root: Elem,
}

/// Parameters `(q, P_∞)` and everything derived from them.
#[derive(Clone)]
pub struct GenusZeroContext(Arc<Inner>);

impl PartialEq for GenusZeroContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.q() == other.q() && self.pinf() == other.pinf())
    }
}

impl std::fmt::Debug for GenusZeroContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GenusZeroContext(q={}, P_inf={})", self.q(), self.pinf().to_string_in("x"))
    }
}

impl GenusZeroContext {
    /// `pinf` holds the coefficients of `P_∞` as codes of `F_q`, low degree
    /// first.
    pub fn new(q: u32, pinf: &[u32]) -> Result<GenusZeroContext> {
        let carlitz = CarlitzContext::new(q, pinf)?;
        let f = carlitz.field().clone();
        let d = carlitz.d();
        let zeta = carlitz.zeta();
        let x: RatFn = Poly::new(&f, vec![0, 1]).into();
        let mut c = RatFn::one(&f);
        for k in 0..d {
            c = &c * &(&RatFn::constant(&f, zeta) - &x.frobenius_power(q, k));
        }
        let fq = carlitz.fq_elements();
        let mut eta_reps = Vec::new();
        let mut seen = vec![false; f.order() as usize];
        for a in 1..f.order() {
            if seen[a as usize] {
                continue;
            }
            eta_reps.push(a);
            for &b in fq.iter().filter(|&&b| b != 0) {
                seen[f.mul(a, b) as usize] = true;
            }
        }
        let big_q = carlitz.series_ctx().big_q();
        let qq = q as i64;
        let mut w = Vec::new();
        for k in 0..d as i64 {
            let mut acc = RatFn::one(&f);
            for n in 0..d as i64 {
                let a = (-n).rem_euclid(d as i64);
                let es = qq.pow(((k - n).rem_euclid(d as i64)) as u32);
                let ec = qq.pow((a + k) as u32);
                let diff = es - ec;
                debug_assert_eq!(diff % big_q, 0);
                let ell = &RatFn::constant(&f, f.frobenius(zeta, q, n as u32)) - &x;
                acc = &acc * &ell.pow(diff / big_q)?;
            }
            w.push(acc);
        }
        let wl = &w[d as usize - 1];
        let wz = f.div(wl.num().eval(zeta), wl.den().eval(zeta)).ok_or_else(|| Error::Internal("w has a pole at zeta".into()))?;
        let gamma_coef = wl.scale(f.inv(wz).ok_or_else(|| Error::Internal("w vanishes at zeta".into()))?);
        let aux_root = fq
            .iter()
            .copied()
            .find(|&r| carlitz.pinf().eval(r) != 0)
            .ok_or_else(|| Error::Internal("no rational point off infinity".into()))?;
        Ok(GenusZeroContext(Arc::new(Inner { carlitz, c, x, fq, eta_reps, w, gamma_coef, aux_root })))
    }

    pub fn q(&self) -> u32 {
        self.0.carlitz.q()
    }

    pub fn d(&self) -> u32 {
        self.0.carlitz.d()
    }

    /// `Q = q^d - 1`.
    pub fn big_q(&self) -> i64 {
        self.series_ctx().big_q()
    }

    /// `F_∞`; every exact coefficient lives here.
    pub fn field(&self) -> &Field {
        self.0.carlitz.field()
    }

    pub fn base_field(&self) -> &Field {
        self.0.carlitz.base_field()
    }

    pub fn carlitz(&self) -> &CarlitzContext {
        &self.0.carlitz
    }

    /// Variable-free series context over `F_∞`.
    pub fn series_ctx(&self) -> &SeriesContext {
        self.0.carlitz.series_ctx()
    }

    pub fn pinf(&self) -> &Poly {
        self.0.carlitz.pinf()
    }

    pub fn zeta(&self) -> Elem {
        self.0.carlitz.zeta()
    }

    /// `ζ^{q^j}`.
    pub fn zeta_pow(&self, j: u32) -> Elem {
        self.field().frobenius(self.zeta(), self.q(), j % self.d())
    }

    /// The Kummer modulus `c = ∏_{k<d} (ζ - x^{q^k})`.
    pub fn kummer_modulus(&self) -> &RatFn {
        &self.0.c
    }

    /// `x` as an element of `F_∞(x)`.
    pub fn x(&self) -> &RatFn {
        &self.0.x
    }

    /// `θ = 1/P_∞(x)`, an element of `A` of degree `d` and sign 1.
    pub fn theta(&self) -> RatFn {
        RatFn::from(self.pinf().clone()).inv().expect("nonzero")
    }

    /// Elements of `F_q` as codes of `F_∞`.
    pub fn fq(&self) -> &[Elem] {
        &self.0.fq
    }

    /// Representatives of `F_∞^× / F_q^×`, least code first.
    pub fn eta_reps(&self) -> &[Elem] {
        &self.0.eta_reps
    }

    /// Canonical representative of `η F_q^×`.
    pub fn eta_canonical(&self, eta: Elem) -> Elem {
        let f = self.field();
        self.fq().iter().filter(|&&b| b != 0).map(|&b| f.mul(eta, b)).min().expect("F_q^× nonempty")
    }

    /// `w_k ∈ F_∞(x)` with `(w_k g^{q^k})^Q = σ(c)` for `σ` acting as `q^k`-Frobenius on `F_∞`.
    pub(crate) fn w(&self, k: u32) -> &RatFn {
        &self.0.w[k as usize]
    }

    /// `γ^m`, a monomial in `g`.
    pub fn gamma_pow(&self, m: i64) -> Kum {
        let qn = (self.q() as i64).pow(self.n_phi());
        let coef = self.0.gamma_coef.pow(m).expect("nonzero");
        Kum::monomial(self, coef, m * qn).expect("c is nonzero")
    }

    /// The rational factor `η_0 w_{d-1}` of `γ`.
    pub fn gamma_coef(&self) -> &RatFn {
        &self.0.gamma_coef
    }

    /// `n(φ)`: leading coefficients are `sgn(a)^{q^{n(φ)}}`.
    pub fn n_phi(&self) -> u32 {
        self.d() - 1
    }

    /// The class number `|Pic(A)| = d`.
    pub fn pic_order(&self) -> usize {
        self.d() as usize
    }

    /// `|G| = |Gal(H/K)| = d (q^d - 1)/(q - 1)`.
    pub fn galois_order(&self) -> usize {
        self.pic_order() * self.eta_reps().len()
    }

    /// Root `r` of the auxiliary prime `x - r` used to build two-element
    /// generating sets.
    pub(crate) fn aux_root(&self) -> Elem {
        self.0.aux_root
    }

    /// Checks `a ∈ A` and returns `(k, deg a, sgn a)` where `a = F/P_∞^k`.
    pub fn a_data(&self, a: &RatFn) -> Result<(u32, u32, Elem)> {
        if a.is_zero() {
            return Err(Error::NotInRing("zero has no degree".into()));
        }
        let f = self.field();
        let q = self.q();
        let in_fq = |p: &Poly| p.coeffs().iter().all(|&c| f.is_in_subfield(c, q));
        if !in_fq(a.num()) || !in_fq(a.den()) {
            return Err(Error::NotInRing("coefficients outside F_q".into()));
        }
        let mut den = a.den().clone();
        let mut k = 0u32;
        while den.degree() != Some(0) {
            let (quot, rem) = den.divmod(self.pinf())?;
            if !rem.is_zero() {
                return Err(Error::NotInRing(format!("denominator {} is not a power of P_inf", a.den().to_string_in("x"))));
            }
            den = quot;
            k += 1;
        }
        let dn = a.num().degree().expect("nonzero") as u32;
        let d = self.d();
        if dn > k * d {
            return Err(Error::NotInRing(format!("numerator degree {dn} exceeds {}", k * d)));
        }
        let sgn = f.div(a.num().eval(self.zeta()), den.lead()).expect("unit");
        Ok((k, k * d, sgn))
    }

    /// `deg a = -d v_∞(a)`.
    pub fn degree_of(&self, a: &RatFn) -> Result<u32> {
        Ok(self.a_data(a)?.1)
    }

    /// `sgn a`.
    pub fn sign_of(&self, a: &RatFn) -> Result<Elem> {
        Ok(self.a_data(a)?.2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contexts() {
        let c1 = GenusZeroContext::new(2, &[1, 1]).unwrap();
        assert_eq!((c1.d(), c1.zeta(), c1.pic_order(), c1.galois_order()), (1, 1, 1, 1));
        let c2 = GenusZeroContext::new(2, &[1, 1, 1]).unwrap();
        assert_eq!((c2.d(), c2.pic_order(), c2.galois_order()), (2, 2, 6));
        assert!(!c2.field().is_in_subfield(c2.zeta(), 2));
        let c3 = GenusZeroContext::new(3, &[1, 0, 1]).unwrap();
        let f = c3.field();
        let x = c3.x();
        let z = RatFn::constant(f, c3.zeta());
        let expected = &(&z - x) * &(&z - &x.frobenius_power(3, 1));
        assert_eq!(c3.kummer_modulus(), &expected);
        assert!(GenusZeroContext::new(2, &[1, 0, 1]).is_err());
    }

    #[test]
    fn ring_membership() {
        let c = GenusZeroContext::new(2, &[1, 1, 1]).unwrap();
        let f = c.field();
        let theta = c.theta();
        assert_eq!(c.a_data(&theta).unwrap(), (1, 2, 1));
        let x_over = RatFn::new(Poly::new(f, vec![0, 1]), c.pinf().clone()).unwrap();
        assert_eq!(c.a_data(&x_over).unwrap(), (1, 2, c.zeta()));
        assert!(c.a_data(c.x()).is_err());
        assert_eq!(c.a_data(&RatFn::one(f)).unwrap(), (0, 0, 1));
    }
}
