//! `G = Gal(H/K)` acting on the Kummer field.
//!
//! An element `(k, η)` acts on `F_∞` constants as `a ↦ a^{q^k}`, fixes `x` and
//! sends `g ↦ η w_k g^{q^k}`. Only `η F_q^×` matters on `H`, so `η` is stored
//! as the least code of its coset.

use super::{GenusZeroContext, Hz, Kum};
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::poly::RatFn;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct GaloisElem {
    pub k: u32,
    pub eta: Elem,
}

impl GenusZeroContext {
    pub fn galois_identity(&self) -> GaloisElem {
        GaloisElem { k: 0, eta: 1 }
    }

    pub fn galois(&self, k: u32, eta: Elem) -> GaloisElem {
        GaloisElem { k: k % self.d(), eta: self.eta_canonical(eta) }
    }

    /// All of `G`, ordered by `(k, η)`.
    pub fn galois_elements(&self) -> Vec<GaloisElem> {
        let mut out = Vec::new();
        for k in 0..self.d() {
            for &eta in self.eta_reps() {
                out.push(GaloisElem { k, eta });
            }
        }
        out
    }

    /// `σ(g^j)` for `j < Q`.
    fn g_images(&self, s: GaloisElem) -> Vec<Kum> {
        let f = self.field();
        let q = self.q() as i64;
        let qk = q.pow(s.k);
        let w = self.w(s.k);
        let mut out = Vec::new();
        let mut coef = RatFn::one(f);
        for j in 0..self.big_q() {
            out.push(Kum::monomial(self, coef.clone(), j * qk).expect("c is nonzero"));
            coef = coef.scale(s.eta);
            coef = &coef * w;
        }
        out
    }

    pub fn act(&self, s: GaloisElem, a: &Kum) -> Kum {
        if s == self.galois_identity() {
            return a.clone();
        }
        let q = self.q();
        let imgs = self.g_images(s);
        let mut acc = Kum::zero(self);
        for j in a.support() {
            let c = a.coeff(j).map_coeffs_frobenius(q, s.k);
            acc = acc.add(&imgs[j].scale(&c));
        }
        acc
    }

    pub fn act_hz(&self, s: GaloisElem, h: &Hz) -> Hz {
        if s == self.galois_identity() {
            return h.clone();
        }
        h.map_coeffs(s.k, |c| self.act(s, c))
    }

    /// `a ∘ b`.
    pub fn compose(&self, a: GaloisElem, b: GaloisElem) -> Result<GaloisElem> {
        let k = (a.k + b.k) % self.d();
        let g = Kum::g_pow(self, 1);
        let img = self.act(a, &self.act(b, &g));
        let base = Kum::monomial(self, self.w(k).clone(), (self.q() as i64).pow(k)).expect("c is nonzero");
        let ratio = img.div(&base)?;
        let eta = ratio
            .as_ratfn()
            .and_then(RatFn::as_constant)
            .ok_or_else(|| Error::Internal("composite of Galois elements is not of Kummer form".into()))?;
        Ok(self.galois(k, eta))
    }

    pub fn galois_pow(&self, s: GaloisElem, n: i64) -> Result<GaloisElem> {
        let order = self.galois_order() as i64;
        let mut e = n.rem_euclid(order);
        let mut acc = self.galois_identity();
        let mut base = s;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.compose(acc, base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.compose(base, base)?;
            }
        }
        Ok(acc)
    }

    pub fn galois_order_of(&self, s: GaloisElem) -> Result<usize> {
        let mut cur = s;
        for n in 1..=self.galois_order() {
            if cur == self.galois_identity() {
                return Ok(n);
            }
            cur = self.compose(cur, s)?;
        }
        Err(Error::Internal("element order exceeds |G|".into()))
    }
}
