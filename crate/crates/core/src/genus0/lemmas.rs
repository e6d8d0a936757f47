//! The identities tying `u_I`, `ψ_φ(I)`, `σ_I` and `f` together, checked
//! exactly in the Kummer ring.

use std::collections::{HashMap, HashSet};

use super::{enumerate_ideals, GaloisElem, GenusZeroContext, Hz, Ideal, IdealData, Kum};
use crate::error::{Error, Result};
use crate::skew::SkewPoly;

/// Tallies of [`GenusZeroContext::lemma_suite`].
#[derive(Clone, Debug, Default)]
pub struct LemmaReport {
    pub ideals: usize,
    pub pairs: usize,
    /// `u_I|_ξ = ψ_φ(I)`.
    pub eval_ok: usize,
    /// `σ_I(f) u_I = f τ(u_I)`.
    pub artin_ok: usize,
    /// `u_{IJ} = σ_I(u_J) u_I`.
    pub product_ok: usize,
    /// `ψ` from the table agrees with the gcd.
    pub psi_table_ok: usize,
    pub failures: Vec<String>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
            && self.eval_ok == self.ideals
            && self.artin_ok == self.ideals
            && self.psi_table_ok == self.ideals
            && self.product_ok == self.pairs
    }
}

impl GenusZeroContext {
    /// Checks the three identities for every integral ideal of degree
    /// `≤ max_deg`, and the product rule for every ordered pair with
    /// `deg IJ ≤ max_prod_deg`.
    pub fn lemma_suite(&self, max_deg: u32, max_prod_deg: u32) -> Result<LemmaReport> {
        let mut table = self.psi_table()?;
        let f = self.shtuka();
        let ideals = enumerate_ideals(self, max_deg.max(max_prod_deg));
        let mut data: HashMap<Ideal, (IdealData, GaloisElem)> = HashMap::new();
        for i in &ideals {
            let d = self.ideal_data(i)?;
            let s = table.artin(i)?;
            data.insert(i.clone(), (d, s));
        }
        let mut rep = LemmaReport::default();
        for i in ideals.iter().filter(|i| i.degree() <= max_deg) {
            let (d, s) = &data[i];
            rep.ideals += 1;
            let name = format!("{i:?}");
            if d.u.eval_xi(0)? == d.psi {
                rep.eval_ok += 1;
            } else {
                rep.failures.push(format!("u_I at ξ differs from ψ for {name}"));
            }
            if self.act_hz(*s, &f).mul(&d.u) == f.mul(&d.u.twist(1)) {
                rep.artin_ok += 1;
            } else {
                rep.failures.push(format!("Artin identity fails for {name}"));
            }
            if table.psi(i)? == d.psi {
                rep.psi_table_ok += 1;
            } else {
                rep.failures.push(format!("ψ table disagrees for {name}"));
            }
        }
        for i in &ideals {
            for j in &ideals {
                if i.degree() + j.degree() > max_prod_deg {
                    continue;
                }
                rep.pairs += 1;
                let (di, si) = &data[i];
                let (dj, _) = &data[j];
                let ij = i.mul(j);
                let dij = match data.get(&ij) {
                    Some((d, _)) => d.clone(),
                    None => self.ideal_data(&ij)?,
                };
                if dij.u == self.act_hz(*si, &dj.u).mul(&di.u) {
                    rep.product_ok += 1;
                } else {
                    rep.failures.push(format!("product rule fails for {i:?} * {j:?}"));
                }
            }
        }
        Ok(rep)
    }

    /// `{σ(f) : σ ∈ G}`, which should have `|G|` distinct members.
    pub fn sht_orbit(&self) -> Vec<Hz> {
        let f = self.shtuka();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for s in self.galois_elements() {
            let img = self.act_hz(s, &f);
            let key = format!("{img:?}");
            if seen.insert(key) {
                out.push(img);
            }
        }
        out
    }

    /// For an ideal `I`: the conjugate module `X φ_I = φ_I φ_θ` equals
    /// `σ_I(φ_θ)`, and `ρ(θ)` expands in the basis built from `σ_I(f)`.
    pub fn conjugate_module_check(&self, ideal: &Ideal, sigma: GaloisElem) -> Result<bool> {
        let theta = self.theta();
        let phi = self.drinfeld_coeffs(&theta)?.op;
        let (phi_i, _) = self.ideal_skew(ideal)?;
        let conj = SkewPoly::conjugate_twist(&phi_i, &phi)?;
        let expected: SkewPoly<Kum> = phi.map(|c| self.act(sigma, c));
        if conj != expected {
            return Ok(false);
        }
        let fs = self.act_hz(sigma, &self.shtuka());
        let mut basis = Hz::one(self);
        let mut acc = Hz::zero(self);
        for (i, c) in expected.coeffs().iter().enumerate() {
            acc = acc.add(&basis.scale(c));
            basis = basis.mul(&fs.twist(i as u32));
        }
        Ok(acc == Hz::rho(self, &theta)?)
    }

    /// `χ_m(I) = τ^m(u_I)/u_I |_ξ` for `m ≡ 0 mod d`.
    pub fn chi_m(&self, m: u32, u: &Hz) -> Result<Kum> {
        if m == 0 || m % self.d() != 0 {
            return Err(Error::InvalidParameter("m must be a positive multiple of d".into()));
        }
        let top = u.twist(m).eval_xi(0)?;
        let bottom = u.eval_xi(0)?;
        if top.is_zero() || bottom.is_zero() {
            return Err(Error::Inconsistent("χ_m has a zero or pole at ξ".into()));
        }
        top.div(&bottom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma_suite_small() {
        let c = GenusZeroContext::new(2, &[1, 1, 1]).unwrap();
        let rep = c.lemma_suite(2, 3).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.ideals, 1 + 3 + 6);
    }

    #[test]
    fn orbit_and_conjugates() {
        let c = GenusZeroContext::new(2, &[1, 1, 1]).unwrap();
        assert_eq!(c.sht_orbit().len(), c.galois_order());
        assert_eq!(c.galois_order(), c.pic_order() * 3);
        let table = c.psi_table().unwrap();
        for i in enumerate_ideals(&c, 2) {
            let s = table.artin(&i).unwrap();
            assert!(c.conjugate_module_check(&i, s).unwrap(), "{i:?}");
        }
    }

    #[test]
    fn chi_cocycle() {
        let c = GenusZeroContext::new(2, &[1, 1, 1]).unwrap();
        let table = c.psi_table().unwrap();
        let ideals = enumerate_ideals(&c, 2);
        let theta = c.theta();
        let u_th = c.u_principal(&theta).unwrap();
        assert_eq!(c.chi_m(2, &u_th).unwrap(), Kum::one(&c));
        for i in &ideals {
            let ui = c.ideal_data(i).unwrap().u;
            let si = table.artin(i).unwrap();
            let xi = c.chi_m(2, &ui).unwrap();
            assert!(xi.as_ratfn().is_some(), "χ_m lies in H_A");
            for j in &ideals {
                let uj = c.ideal_data(j).unwrap().u;
                let uij = c.ideal_data(&i.mul(j)).unwrap().u;
                let lhs = c.chi_m(2, &uij).unwrap();
                let rhs = c.act(si, &c.chi_m(2, &uj).unwrap()).mul(&xi);
                assert_eq!(lhs, rhs);
            }
        }
    }
}
