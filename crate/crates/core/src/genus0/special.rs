//! Series images of the Kummer field, the special functions `U` and `ω`, and
//! the period `π̃`.
//!
//! `x` maps to its `u`-expansion and the symbol `g` to the Gauss sum series,
//! so `g^Q = c` holds in the image. The variable `z` of `ρ(A)` becomes the
//! coefficient variable of index 0.

use super::{GenusZeroContext, Hz, Kum};
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::linalg;
use crate::mpoly::{MPoly, MRat};
use crate::poly::RatFn;
use crate::series::{Integrality, ProductFactor, SeriesContext, TateSeries};

/// The embedding `H → F_∞((u))` at a fixed working precision.
#[derive(Clone, Debug)]
pub struct SeriesImage {
    ctx: GenusZeroContext,
    zctx: SeriesContext,
    x: TateSeries,
    g: TateSeries,
    gamma: TateSeries,
}

/// Outcome of a truncated kernel search for `exp_φ`.
#[derive(Clone, Debug)]
pub struct KernelReport {
    /// Number of `F_p`-independent candidates tried.
    pub candidates: usize,
    /// Dimension over `F_p` of the truncated kernel.
    pub kernel_dim: usize,
    /// `u`-precision to which `exp_φ` was required to vanish.
    pub budget: i64,
    /// The kernel vectors, as elements `h` with `exp_φ(h (z-x)ω|_ξ) ≡ 0`.
    pub vectors: Vec<RatFn>,
}

/// `π̃` with the data used to pin it down.
#[derive(Clone, Debug)]
pub struct PeriodData {
    pub pi_tilde: TateSeries,
    /// `(z - x) ω |_ξ`.
    pub residue: TateSeries,
    /// The factor `h ∈ K` with `π̃ = h · (z - x) ω |_ξ`.
    pub factor: RatFn,
    /// Valuation of `exp_φ(π̃)`.
    pub exp_residual: i64,
}

impl GenusZeroContext {
    /// Series images of `x`, `g` and `γ` at `u`-precision `n` plus a margin
    /// that absorbs the poles of rational coefficients at `x = ζ`.
    pub fn series_image(&self, n: i64) -> Result<SeriesImage> {
        if n < 1 {
            return Err(Error::InvalidParameter("precision must be positive".into()));
        }
        let big_q = self.big_q();
        let work = n + 4 * big_q * (self.q() as i64).pow(self.d()) + 8;
        let x = self.carlitz().x_series(work)?;
        let g = self.carlitz().gauss_sum(work)?;
        let zctx = self.series_ctx().with_vars(&["z"])?;
        let mut img = SeriesImage { ctx: self.clone(), zctx, x, g, gamma: TateSeries::zero(self.series_ctx(), 0) };
        img.gamma = img.kum(&self.gamma_pow(1))?;
        Ok(img)
    }
}

impl SeriesImage {
    pub fn ctx(&self) -> &GenusZeroContext {
        &self.ctx
    }

    /// Series context with the variable `z`.
    pub fn zctx(&self) -> &SeriesContext {
        &self.zctx
    }

    pub fn x(&self) -> &TateSeries {
        &self.x
    }

    pub fn g(&self) -> &TateSeries {
        &self.g
    }

    pub fn gamma(&self) -> &TateSeries {
        &self.gamma
    }

    pub fn ratfn(&self, r: &RatFn) -> Result<TateSeries> {
        TateSeries::eval_ratfn(r, &self.x)
    }

    pub fn kum(&self, a: &Kum) -> Result<TateSeries> {
        let mut acc = TateSeries::zero(self.ctx.series_ctx(), crate::series::EXACT);
        let mut gj = TateSeries::one(self.ctx.series_ctx());
        for j in 0..self.ctx.big_q() as usize {
            if !a.coeff(j).is_zero() {
                acc = acc.add(&self.ratfn(a.coeff(j))?.mul(&gj)?)?;
            }
            gj = gj.mul(&self.g)?;
        }
        Ok(acc)
    }

    /// Image of an element of `H(z)` as a series with coefficients in `F_∞(z)`.
    pub fn hz(&self, h: &Hz) -> Result<TateSeries> {
        self.hz_in(h, &self.zctx, 0)
    }

    /// As [`SeriesImage::hz`], with `z` sent to variable `v` of `vctx`.
    pub fn hz_in(&self, h: &Hz, vctx: &SeriesContext, v: usize) -> Result<TateSeries> {
        let f = self.ctx.field();
        let mut acc = TateSeries::zero(vctx, crate::series::EXACT);
        for (i, c) in h.num().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let zi = MRat::from(MPoly::monomial(f, 1, v, i as u32));
            acc = acc.add(&self.kum(c)?.with_ctx(vctx).scale(&zi))?;
        }
        let mut den = MRat::one(f);
        for (j, &e) in h.den().iter().enumerate() {
            if e > 0 {
                den = &den * &MRat::inv_linear(f, v, self.ctx.zeta_pow(j as u32), e);
            }
        }
        Ok(acc.scale(&den))
    }

    /// The shtuka `f` as a series in `u` with coefficients in `F_∞(z)`.
    pub fn shtuka(&self) -> Result<TateSeries> {
        self.hz(&self.ctx.shtuka())
    }

    /// `U = ∏_{i≥0} (1 + (ζ - x)^{q^i}/(z - ζ^{q^i}))^{-1}` to precision `n`.
    pub fn special_u(&self, n: i64) -> Result<TateSeries> {
        let f = self.ctx.field();
        let one = TateSeries::one(&self.zctx);
        let base = TateSeries::scalar(self.ctx.series_ctx(), self.ctx.zeta()).sub(&self.x)?.with_ctx(&self.zctx);
        let mut factors = Vec::new();
        for i in 0u32.. {
            let num = base.twist(i);
            if num.valuation_bound() >= n {
                break;
            }
            let den = MRat::inv_linear(f, 0, self.ctx.zeta_pow(i), 1);
            factors.push(ProductFactor::Over(one.add(&num.scale(&den))?));
        }
        TateSeries::inf_product(&self.zctx, factors, n)
    }

    /// `ω = γ^{-1} U`, the generator of `τ(x) = f x` normalized by
    /// `sgn(ω u^{q^{n(φ)}}) = 1`.
    pub fn omega(&self, n: i64) -> Result<TateSeries> {
        let shift = (self.ctx.q() as i64).pow(self.ctx.n_phi());
        let u = self.special_u(n + shift)?;
        Ok(u.div(&self.gamma.with_ctx(&self.zctx))?.truncate(n))
    }

    /// `τ(U) - (z-x)/(z-ζ) U` and `τ(ω) - f ω`.
    pub fn twist_residuals(&self, n: i64) -> Result<(TateSeries, TateSeries)> {
        let f = self.ctx.field();
        let zx = TateSeries::constant(&self.zctx, MPoly::linear(f, 0, 0).into()).sub(&self.x.with_ctx(&self.zctx))?;
        let ratio = zx.scale(&MRat::inv_linear(f, 0, self.ctx.zeta(), 1));
        let u = self.special_u(n)?;
        let ru = u.twist(1).sub(&ratio.mul(&u)?)?;
        let w = self.omega(n)?;
        let rw = w.twist(1).sub(&self.shtuka()?.mul(&w)?)?;
        Ok((ru, rw))
    }

    /// Integrality of `U` and `ω` with denominators `z - ζ^{q^k}`.
    pub fn integrality(&self, n: i64) -> Result<(Integrality, Integrality)> {
        let allowed: Vec<(usize, Elem)> = (0..self.ctx.d()).map(|k| (0, self.ctx.zeta_pow(k))).collect();
        Ok((self.special_u(n)?.integrality_check(&allowed), self.omega(n)?.integrality_check(&allowed)))
    }

    /// `(z - x) ω |_ξ = γ^{-1} (x - ζ) ∏_{i≥1} (1 + (ζ - x)^{q^i}/(x - ζ^{q^i}))^{-1}`.
    pub fn residue_at_xi(&self, n: i64) -> Result<TateSeries> {
        let sctx = self.ctx.series_ctx();
        let zeta = TateSeries::scalar(sctx, self.ctx.zeta());
        let base = zeta.sub(&self.x)?;
        let one = TateSeries::one(sctx);
        let shift = (self.ctx.q() as i64).pow(self.ctx.n_phi()) - self.ctx.big_q();
        let work = n + shift.max(0) + 1;
        let mut factors = Vec::new();
        for i in 1u32.. {
            let num = base.twist(i);
            if num.valuation_bound() >= work + self.ctx.big_q() {
                break;
            }
            let den = self.x.sub(&TateSeries::scalar(sctx, self.ctx.zeta_pow(i)))?;
            let term = num.div(&den)?;
            if term.valuation_bound() >= work {
                break;
            }
            factors.push(ProductFactor::Over(one.add(&term)?));
        }
        let prod = TateSeries::inf_product(sctx, factors, work)?;
        Ok(prod.mul(&base.neg())?.div(&self.gamma)?.truncate(n))
    }

    /// `exp_φ(v) = Σ e_i(φ) v^{q^i}` to precision `n`.
    pub fn exp_phi(&self, v: &TateSeries, n: i64) -> Result<TateSeries> {
        let q = self.ctx.q();
        let v0 = match v.valuation() {
            Ok(v0) => v0,
            Err(_) => return Ok(TateSeries::zero(v.ctx(), n)),
        };
        let mut acc = v.truncate(n);
        let mut stalls = 0;
        for i in 1u32..64 {
            let e = self.exp_coeff(i)?;
            let ve = e.valuation()?;
            let qi = (q as i64).pow(i);
            let lead = ve + qi * v0;
            if lead >= n {
                stalls += 1;
                if stalls >= 2 {
                    return Ok(acc);
                }
                continue;
            }
            acc = acc.add(&e.mul(&v.twist(i))?)?.truncate(n);
        }
        Err(Error::InsufficientPrecision("exp_phi did not converge in 64 terms".into()))
    }

    /// `e_i(φ)` as a series, from the closed product.
    pub fn exp_coeff(&self, i: u32) -> Result<TateSeries> {
        let sctx = self.ctx.series_ctx();
        let xi = self.x.twist(i);
        let mut acc = self.gamma.twist(i).div(&self.gamma)?;
        for k in 0..i {
            let num = xi.sub(&TateSeries::scalar(sctx, self.ctx.zeta_pow(k)))?;
            let den = xi.sub(&self.x.twist(k))?;
            acc = acc.mul(&num)?.div(&den)?;
        }
        Ok(acc)
    }
}


/// `F_p`-coordinates of every coefficient of `s` below `budget`, which must
/// be constants.
pub(crate) fn fp_coords(s: &TateSeries, lo: i64, budget: i64) -> Result<Vec<u32>> {
    let f = s.field();
    let p = f.characteristic();
    let digits = f.degree() as usize;
    let mut out = Vec::with_capacity(((budget - lo).max(0) as usize) * digits);
    for e in lo..budget {
        let c = s.coeff(e);
        let mut code = c
            .as_constant()
            .ok_or_else(|| Error::InvalidParameter("coefficient is not a constant".into()))?;
        for _ in 0..digits {
            out.push(code % p);
            code /= p;
        }
    }
    Ok(out)
}

/// Codes of an `F_p`-basis of `F_∞`.
pub(crate) fn fp_basis(f: &crate::field::Field) -> Vec<Elem> {
    let p = f.characteristic();
    (0..f.degree()).map(|i| p.pow(i)).collect()
}

impl SeriesImage {
    /// Candidate factors `x^j θ^2`, `j ≤ 2d - 2`: the values at `ξ` of the
    /// differentials `z^j dz / P_∞(z)^2`, which are regular away from the
    /// points over `∞`.
    pub fn period_candidates(&self) -> Vec<RatFn> {
        let f = self.ctx.field();
        let th2 = self.ctx.theta().pow(2).expect("nonzero");
        (0..=2 * self.ctx.d() as usize - 2)
            .map(|j| &RatFn::from(crate::poly::Poly::monomial(f, 1, j)) * &th2)
            .collect()
    }

    /// Searches the `F_p`-span of `β h (z-x)ω|_ξ`, `β ∈ F_∞`, `h` a candidate,
    /// for vectors with `exp_φ ≡ 0 mod u^budget`.
    pub fn period_search(&self, budget: i64) -> Result<KernelReport> {
        let f = self.ctx.field().clone();
        let p = f.characteristic();
        let fp = crate::field::Field::new(p, 1)?;
        let hs = self.period_candidates();
        let w = self.residue_at_xi(budget + 4 * self.ctx.big_q())?;
        let mut cols = Vec::new();
        let mut labels = Vec::new();
        for h in &hs {
            let hw = self.ratfn(h)?.mul(&w)?;
            for beta in fp_basis(&f) {
                let v = hw.scale_elem(beta);
                let lo = v.valuation().unwrap_or(0).min(0);
                let e = self.exp_phi(&v, budget)?;
                cols.push((lo, e));
                labels.push((h.clone(), beta));
            }
        }
        let lo = cols.iter().map(|c| c.0).min().unwrap_or(0) - 4 * self.ctx.big_q() * (self.ctx.q() as i64);
        let coords = cols.iter().map(|(_, e)| fp_coords(e, lo, budget)).collect::<Result<Vec<_>>>()?;
        let nrows = coords.first().map_or(0, Vec::len);
        let rows: Vec<Vec<Elem>> = (0..nrows).map(|r| coords.iter().map(|c| c[r]).collect()).collect();
        let kernel = linalg::nullspace(&fp, &rows, labels.len());
        let mut vectors = Vec::new();
        for kv in &kernel {
            let mut h = RatFn::zero(&f);
            for (c, (hj, beta)) in kv.iter().zip(&labels) {
                if *c != 0 {
                    h = &h + &hj.scale(f.mul(*c, *beta));
                }
            }
            vectors.push(h);
        }
        Ok(KernelReport { candidates: labels.len(), kernel_dim: kernel.len(), budget, vectors })
    }

    /// `π̃` as the period of largest valuation in the searched span, scaled by
    /// `F_q^×` so that `sgn(π̃ u^{q^{n(φ)}}) = 1`.
    pub fn pi_tilde(&self, n: i64) -> Result<(PeriodData, KernelReport)> {
        let budget = n.max(16);
        let report = self.period_search(budget)?;
        let w = self.residue_at_xi(n + 4 * self.ctx.big_q())?;
        let (h, s) = self.highest_valuation(&report.vectors, &w, n)?;
        let qn = (self.ctx.q() as i64).pow(self.ctx.n_phi());
        let sign = s.shift(qn).sign()?;
        let f = self.ctx.field();
        if !f.is_in_subfield(sign, self.ctx.q()) {
            return Err(Error::Inconsistent("sign of the period is not in F_q".into()));
        }
        let unit = f.inv(sign).ok_or(Error::DivisionByZero)?;
        let h = h.scale(unit);
        let pi = s.scale_elem(unit).truncate(n);
        let exp_residual = self.exp_phi(&pi, n)?.valuation_bound();
        Ok((PeriodData { pi_tilde: pi, residue: w.truncate(n), factor: h, exp_residual }, report))
    }
}

impl SeriesImage {
    /// The element of the `F_p`-span of `h_i w` with the largest valuation,
    /// by echelon form on the coefficients ordered by exponent.
    fn highest_valuation(&self, hs: &[RatFn], w: &TateSeries, n: i64) -> Result<(RatFn, TateSeries)> {
        if hs.is_empty() {
            return Err(Error::InsufficientPrecision("no period found in the candidate span".into()));
        }
        let f = self.ctx.field();
        let fp = crate::field::Field::new(f.characteristic(), 1)?;
        let ss = hs.iter().map(|h| Ok(self.ratfn(h)?.mul(w)?)).collect::<Result<Vec<_>>>()?;
        let lo = ss.iter().map(|s| s.valuation().unwrap_or(n)).min().expect("nonempty");
        let hi = ss.iter().map(TateSeries::prec).min().expect("nonempty").min(n);
        let m = ss.len();
        let mut rows = Vec::with_capacity(m);
        for (i, s) in ss.iter().enumerate() {
            let mut row = fp_coords(s, lo, hi)?;
            row.extend((0..m).map(|j| u32::from(i == j)));
            rows.push(row);
        }
        let width = rows[0].len() - m;
        let pivots = linalg::rref(&fp, &mut rows, width + m);
        let rank = pivots.iter().filter(|&&c| c < width).count();
        let last = rows.get(rank.saturating_sub(1)).ok_or_else(|| Error::Internal("empty echelon form".into()))?;
        let mut h = RatFn::zero(f);
        for (c, hi) in last[width..].iter().zip(hs) {
            if *c != 0 {
                h = &h + &hi.scale(*c);
            }
        }
        let s = self.ratfn(&h)?.mul(w)?;
        Ok((h, s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_functions() {
        for (q, pinf) in [(2u32, vec![1u32, 1]), (3, vec![2, 1]), (2, vec![1, 1, 1])] {
            let c = GenusZeroContext::new(q, &pinf).unwrap();
            let img = c.series_image(64).unwrap();
            let (ru, rw) = img.twist_residuals(48).unwrap();
            assert!(ru.valuation_bound() >= 48 && rw.valuation_bound() >= 48 - q as i64);
            let (iu, iw) = img.integrality(48).unwrap();
            assert!(iu.ok && iw.ok);
            let om = img.omega(32).unwrap();
            let qn = (q as i64).pow(c.n_phi());
            let (_, lead) = om.shift(qn).sgn_lead().unwrap();
            assert_eq!(lead, MRat::one(c.field()));
        }
    }

    #[test]
    fn gamma_image_is_consistent() {
        let c = GenusZeroContext::new(2, &[1, 1, 1]).unwrap();
        let img = c.series_image(40).unwrap();
        let cs = img.ratfn(&c.kummer_modulus().map_coeffs_frobenius(2, 1)).unwrap();
        let lhs = img.gamma().pow(3).unwrap();
        assert!(lhs.sub(&cs).unwrap().valuation_bound() >= 40);
        // e_i from the series product agrees with the embedded closed form
        let e = c.exp_coeffs_phi(3).unwrap();
        for i in 1..=3 {
            let a = img.exp_coeff(i).unwrap();
            let b = img.kum(&e.closed[i as usize]).unwrap();
            assert!(a.sub(&b).unwrap().valuation_bound() >= 30, "i={i}");
        }
    }

    #[test]
    fn periods() {
        // d = 1: θ² generates; d = 2: θ generates
        for (q, pinf, k) in [(2u32, vec![1u32, 1], 2u64), (3, vec![2, 1], 2), (2, vec![1, 1, 1], 1)] {
            let c = GenusZeroContext::new(q, &pinf).unwrap();
            let img = c.series_image(48).unwrap();
            let (pd, rep) = img.pi_tilde(40).unwrap();
            assert!(rep.kernel_dim >= 1);
            assert!(pd.exp_residual >= 40);
            let th = c.theta().pow(k as i64).unwrap();
            let ratio = pd.factor.div(&th).unwrap();
            assert!(ratio.as_constant().is_some_and(|u| c.field().is_in_subfield(u, q)), "q={q} d={}", c.d());
        }
    }
}
