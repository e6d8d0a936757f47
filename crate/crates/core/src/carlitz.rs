//! The Carlitz module `C_x = x + τ` over `F_q[x]`.
//!
//! Two families of functions live here. The first works with exact rational
//! functions: [`carlitz_op`] and [`carlitz_exp_coeffs`]. The second works with
//! series in `u`: in [`CarlitzContext`] the place at infinity is given by a
//! monic irreducible `P_∞` of degree `d`, `π = P_∞(x)` and `x` itself is the
//! Hensel root of `P_∞(X) = π` near `ζ = sgn(x)`. For `A = F_q[θ]`,
//! [`omega_carlitz`] and [`pi_tilde_product`] use `π = 1/θ`, so that
//! `θ = -u^{-(q-1)}` exactly.

use crate::error::{Error, Result};
use crate::field::{roots_in_field, Elem, Field};
use crate::mpoly::{mono_var, MRat};
use crate::poly::{Poly, RatFn};
use crate::series::{prime_power, ProductFactor, SeriesContext, TateSeries, EXACT};
use crate::skew::SkewPoly;

/// `C_a` for `a ∈ F_q[x]`; the coefficients of `a` must lie in `F_q`.
pub fn carlitz_op(q: u32, a: &Poly) -> SkewPoly<RatFn> {
    let f = a.field();
    let cx = SkewPoly::new(q, vec![Poly::new(f, vec![0, 1]).into(), RatFn::one(f)]);
    let mut acc = SkewPoly::zero(q);
    for &c in a.coeffs().iter().rev() {
        acc = acc.mul(&cx).add(&SkewPoly::constant(q, RatFn::constant(f, c)));
    }
    acc
}

/// Coefficients of `exp_C = Σ e_i τ^i` and `log_C = Σ l_i τ^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpData {
    pub exp: Vec<RatFn>,
    pub log: Vec<RatFn>,
}

/// Solves `exp_C x = C_x exp_C` and `log_C C_x = x log_C` degree by degree,
/// for indices `0..=n`.
pub fn carlitz_exp_coeffs(field: &Field, q: u32, n: usize) -> Result<ExpData> {
    let x: RatFn = Poly::new(field, vec![0, 1]).into();
    let mut exp = vec![RatFn::one(field)];
    let mut log = vec![RatFn::one(field)];
    for i in 1..=n {
        let xqi = x.frobenius_power(q, i as u32);
        // e_i (x^{q^i} - x) = e_{i-1}^q
        let e = exp[i - 1].frobenius_power(q, 1).div(&(&xqi - &x))?;
        // l_i (x - x^{q^i}) = l_{i-1}
        let l = log[i - 1].div(&(&x - &xqi))?;
        exp.push(e);
        log.push(l);
    }
    Ok(ExpData { exp, log })
}

/// Series data for the Carlitz module with a place at infinity `P_∞`.
#[derive(Clone, Debug)]
pub struct CarlitzContext {
    q: u32,
    base: Field,
    series: SeriesContext,
    pinf: Poly,
    zeta: Elem,
}

impl CarlitzContext {
    /// `pinf` lists the coefficients of `P_∞` (low degree first) as codes in
    /// `F_q`; it must be monic and irreducible.
    pub fn new(q: u32, pinf: &[u32]) -> Result<CarlitzContext> {
        let (p, e) = prime_power(q)?;
        let base = Field::new(p, e)?;
        let base_poly = Poly::new(&base, pinf.to_vec());
        let d = base_poly.degree().filter(|&d| d >= 1).ok_or_else(|| Error::InvalidParameter("P_inf must have positive degree".into()))?;
        if !base_poly.is_monic() {
            return Err(Error::InvalidParameter("P_inf must be monic".into()));
        }
        if pinf.iter().any(|&c| !base.contains(c)) {
            return Err(Error::InvalidParameter("P_inf coefficient outside F_q".into()));
        }
        if !is_irreducible(&base_poly) {
            return Err(Error::InvalidParameter("P_inf is reducible".into()));
        }
        let series = SeriesContext::new(q, d as u32, &[])?;
        let big = series.field().clone();
        let emb = big.embedding_of(&base)?;
        let pinf = Poly::new(&big, pinf.iter().map(|&c| emb.apply(c)).collect());
        let zeta = *roots_in_field(&big, pinf.coeffs())?.first().ok_or_else(|| Error::Internal("P_inf has no root in F_inf".into()))?;
        Ok(CarlitzContext { q, base, series, pinf, zeta })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn d(&self) -> u32 {
        self.series.d()
    }

    /// `F_q`.
    pub fn base_field(&self) -> &Field {
        &self.base
    }

    /// `F_∞ = F_{q^d}`.
    pub fn field(&self) -> &Field {
        self.series.field()
    }

    pub fn series_ctx(&self) -> &SeriesContext {
        &self.series
    }

    /// `P_∞` with coefficients embedded in `F_∞`.
    pub fn pinf(&self) -> &Poly {
        &self.pinf
    }

    /// The least root of `P_∞` in `F_∞`, which is `sgn(x)`.
    pub fn zeta(&self) -> Elem {
        self.zeta
    }

    /// Elements of `F_q` as codes of `F_∞`.
    pub fn fq_elements(&self) -> Vec<Elem> {
        let emb = self.field().embedding_of(&self.base).expect("subfield");
        self.base.elements().map(|c| emb.apply(c)).collect()
    }

    /// `x` as a series in `u` to precision `n`.
    pub fn x_series(&self, n: i64) -> Result<TateSeries> {
        let ctx = &self.series;
        let big_q = ctx.big_q();
        let mut e: Vec<TateSeries> = self.pinf.coeffs().iter().map(|&c| TateSeries::scalar(ctx, c)).collect();
        // P_∞(X) - π = P_∞(X) + u^Q
        e[0] = e[0].add(&TateSeries::u_pow(ctx, big_q))?;
        let seed = TateSeries::scalar(ctx, self.zeta).truncate(1);
        TateSeries::hensel_root(&e, &seed, n)
    }

    /// The `P_∞`-torsion point `λ = u Y`, `Y ≡ 1`, to precision `n`.
    pub fn torsion_root(&self, n: i64) -> Result<TateSeries> {
        let ctx = &self.series;
        let big_q = ctx.big_q();
        let d = self.d();
        let x = self.x_series(n + big_q + 1)?;
        let cp = carlitz_op(self.q, &self.pinf);
        let mut e = vec![TateSeries::zero(ctx, EXACT); big_q as usize + 1];
        e[0] = TateSeries::scalar(ctx, ctx.field().neg(1));
        e[big_q as usize] = TateSeries::one(ctx);
        for i in 1..d {
            let ci = cp.coeff(i as usize).expect("degree d").num().clone();
            let cs = TateSeries::eval_poly(&ci, &x)?;
            if cs.valuation_bound() < big_q {
                return Err(Error::HenselFailure("middle Carlitz coefficient not divisible by P_inf".into()));
            }
            let qi = ctx.qpow(i);
            e[(qi - 1) as usize] = cs.shift(qi - 1 - big_q);
        }
        let y = TateSeries::hensel_root(&e, &TateSeries::one(ctx).truncate(1), n - 1)?;
        Ok(y.shift(1))
    }

    /// `C_a(s)` for `a ∈ F_q[x]` (coefficients embedded in `F_∞`) and a
    /// constant series `s`.
    pub fn apply_op(&self, a: &Poly, s: &TateSeries, x: &TateSeries) -> Result<TateSeries> {
        let op = carlitz_op(self.q, a);
        let mut acc = TateSeries::zero(&self.series, EXACT);
        for (j, c) in op.coeffs().iter().enumerate() {
            let cs = TateSeries::eval_poly(c.num(), x)?;
            acc = acc.add(&cs.mul(&s.twist(j as u32))?)?;
        }
        Ok(acc)
    }

    /// The Thakur Gauss sum `g = -Σ sgn(y)^{-1} C_y(λ)` over nonzero `y` of
    /// degree `< d`, to precision `n`.
    pub fn gauss_sum(&self, n: i64) -> Result<TateSeries> {
        let f = self.field().clone();
        let d = self.d() as usize;
        let lambda = self.torsion_root(n)?;
        let x = self.x_series(n + 1)?;
        let fq = self.fq_elements();
        // weights w_k = Σ_y y_k / y(ζ)
        let mut weights = vec![0; d];
        let total = (fq.len() as u64).pow(d as u32);
        for idx in 1..total {
            let mut digits = Vec::with_capacity(d);
            let mut r = idx;
            for _ in 0..d {
                digits.push(fq[(r % fq.len() as u64) as usize]);
                r /= fq.len() as u64;
            }
            let y = Poly::new(&f, digits.clone());
            let inv = f.inv(y.eval(self.zeta)).ok_or_else(|| Error::Internal("y(ζ) vanished".into()))?;
            for k in 0..d {
                weights[k] = f.add(weights[k], f.mul(digits[k], inv));
            }
        }
        let mut g = TateSeries::zero(&self.series, EXACT);
        for (k, &w) in weights.iter().enumerate() {
            if w == 0 {
                continue;
            }
            let term = self.apply_op(&Poly::monomial(&f, 1, k), &lambda, &x)?;
            g = g.add(&term.scale_elem(w))?;
        }
        Ok(g.neg().truncate(n))
    }

    /// `∏_{k<d} (ζ - x^{q^k})` as a series to precision `n`.
    pub fn gauss_closed_form(&self, n: i64) -> Result<TateSeries> {
        let x = self.x_series(n)?;
        let mut acc = TateSeries::one(&self.series);
        for k in 0..self.d() {
            let xk = x.twist(k);
            acc = acc.mul(&TateSeries::scalar(&self.series, self.zeta).sub(&xk)?)?;
        }
        Ok(acc.truncate(n))
    }
}

/// Irreducibility by checking for factors of every degree up to `deg/2`
/// over the coefficient field (Rabin-style gcd test).
pub fn is_irreducible(p: &Poly) -> bool {
    let Some(n) = p.degree() else {
        return false;
    };
    if n <= 1 {
        return n == 1;
    }
    let f = p.field();
    let q = f.order() as u64;
    let x = Poly::new(f, vec![0, 1]);
    let mut xp = x.clone();
    for _ in 1..=n / 2 {
        xp = powmod(&xp, q, p);
        let g = (&xp - &x).gcd(p);
        if !g.is_one() {
            return false;
        }
    }
    true
}

fn powmod(a: &Poly, mut e: u64, m: &Poly) -> Poly {
    let mut acc = Poly::one(a.field());
    let mut base = a.rem(m).expect("nonzero modulus");
    while e > 0 {
        if e & 1 == 1 {
            acc = (&acc * &base).rem(m).expect("nonzero modulus");
        }
        e >>= 1;
        if e > 0 {
            base = (&base * &base).rem(m).expect("nonzero modulus");
        }
    }
    acc
}

/// Context for `A = F_q[θ]` series in the variable `t`.
pub fn theta_context(q: u32, vars: &[&str]) -> Result<SeriesContext> {
    SeriesContext::new(q, 1, vars)
}

/// `θ = -u^{-(q-1)}`.
pub fn theta(ctx: &SeriesContext) -> TateSeries {
    let f = ctx.field();
    TateSeries::monomial(ctx, MRat::constant(f, f.neg(1)), -(ctx.q() as i64 - 1))
}

/// `ω = (-θ)^{1/(q-1)} ∏_{i≥0} (1 - t/θ^{q^i})^{-1}` to precision `n`, in a
/// context whose first variable is `t`.
pub fn omega_carlitz(ctx: &SeriesContext, n: i64) -> Result<TateSeries> {
    omega_in_var(ctx, 0, n)
}

/// Same as [`omega_carlitz`] with `t` the variable of index `v`.
pub fn omega_in_var(ctx: &SeriesContext, v: usize, n: i64) -> Result<TateSeries> {
    if n < 1 {
        return Err(Error::InvalidParameter("precision must be positive".into()));
    }
    let q = ctx.q() as i64;
    let one = TateSeries::one(ctx);
    let t = TateSeries::constant(ctx, crate::mpoly::MPoly::monomial(ctx.field(), 1, v, 1).into());
    // 1/θ^{q^i} = -u^{(q-1)q^i}, so each factor is 1 + t u^{(q-1)q^i}
    let factors = (0u32..).map(|i| ProductFactor::Over(one.add(&t.shift((q - 1) * q.pow(i))).expect("same context")));
    let prod = TateSeries::inf_product(ctx, factors, n + 1)?;
    Ok(prod.shift(-1))
}

/// `π̃ = (-θ)^{1/(q-1)} θ ∏_{i≥1} (1 - θ^{1-q^i})^{-1}` to precision `n`.
pub fn pi_tilde_product(ctx: &SeriesContext, n: i64) -> Result<TateSeries> {
    let q = ctx.q() as i64;
    let one = TateSeries::one(ctx);
    // θ^{1-q^i} = u^{(q-1)(q^i-1)}
    let factors = (1u32..).map(|i| ProductFactor::Over(one.sub(&TateSeries::u_pow(ctx, (q - 1) * (q.pow(i) - 1))).expect("same context")));
    let prod = TateSeries::inf_product(ctx, factors, n + q)?;
    Ok(prod.shift(-q).neg())
}

/// `(t - θ)` for the variable of index `v`.
pub fn t_minus_theta(ctx: &SeriesContext, v: usize) -> TateSeries {
    let t = TateSeries::constant(ctx, crate::mpoly::MPoly::monomial(ctx.field(), 1, v, 1).into());
    t.sub(&theta(ctx)).expect("same context")
}

/// `θ^{q^k}` exactly: `-u^{-(q-1) q^k}`.
pub fn theta_pow_q(ctx: &SeriesContext, k: u32) -> TateSeries {
    theta(ctx).twist(k)
}

/// The series `b_k(t) = ∏_{j<k} (t - θ^{q^j})` for the variable of index `v`.
pub fn twisted_product(ctx: &SeriesContext, v: usize, k: u32) -> TateSeries {
    let mut acc = TateSeries::one(ctx);
    for j in 0..k {
        acc = acc.mul(&t_minus_theta(ctx, v).twist(j)).expect("same context");
    }
    acc
}

/// `e_k = 1/∏_{j<k}(θ^{q^k} - θ^{q^j})` as a series to precision `n`.
pub fn exp_coeff_series(ctx: &SeriesContext, k: u32, n: i64) -> Result<TateSeries> {
    let mut den = TateSeries::one(ctx);
    let tk = theta_pow_q(ctx, k);
    for j in 0..k {
        den = den.mul(&tk.sub(&theta_pow_q(ctx, j))?)?;
    }
    let v = den.valuation()?;
    // relative precision n - (-v) is enough for absolute precision n
    let e = TateSeries::one(ctx).truncate(n + v).div(&den)?;
    Ok(e.truncate(n))
}

/// The monomial `t^e` in variable `v`, as a packed monomial.
pub fn var_mono(v: usize, e: u32) -> crate::mpoly::Mono {
    mono_var(v, e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xpoly(f: &Field, c: Vec<u32>) -> Poly {
        Poly::new(f, c)
    }

    #[test]
    fn operator_examples() {
        let f = Field::new(3, 1).unwrap();
        assert_eq!(carlitz_op(3, &Poly::constant(&f, 2)), SkewPoly::constant(3, RatFn::constant(&f, 2)));
        let cx = carlitz_op(3, &xpoly(&f, vec![0, 1]));
        assert_eq!(cx.coeffs(), &[xpoly(&f, vec![0, 1]).into(), RatFn::one(&f)]);
        let cx2 = carlitz_op(3, &xpoly(&f, vec![0, 0, 1]));
        let expected = vec![xpoly(&f, vec![0, 0, 1]).into(), xpoly(&f, vec![0, 1, 0, 1]).into(), RatFn::one(&f)];
        assert_eq!(cx2.coeffs(), expected.as_slice());
    }

    #[test]
    fn operator_is_ring_map() {
        let f = Field::new(2, 1).unwrap();
        let a = xpoly(&f, vec![1, 1, 0, 1]);
        let b = xpoly(&f, vec![0, 1, 1]);
        assert_eq!(carlitz_op(2, &(&a + &b)), carlitz_op(2, &a).add(&carlitz_op(2, &b)));
        assert_eq!(carlitz_op(2, &(&a * &b)), carlitz_op(2, &a).mul(&carlitz_op(2, &b)));
    }

    #[test]
    fn exp_coefficients() {
        let f = Field::new(2, 1).unwrap();
        let data = carlitz_exp_coeffs(&f, 2, 6).unwrap();
        assert!(data.exp[0].is_one());
        let x: RatFn = xpoly(&f, vec![0, 1]).into();
        assert_eq!(data.exp[1], (&x.frobenius_power(2, 1) - &x).inv().unwrap());
        for i in 0..=6u32 {
            let mut den = RatFn::one(&f);
            for j in 0..i {
                den = &den * &(&x.frobenius_power(2, i) - &x.frobenius_power(2, j));
            }
            assert_eq!(data.exp[i as usize], den.inv().unwrap());
        }
        // functional equation exp a = C_a exp for a = x^2 + 1, and exp∘log = 1, to order 6
        let e = SkewPoly::new(2, data.exp.clone());
        let l = SkewPoly::new(2, data.log.clone());
        let a = xpoly(&f, vec![1, 0, 1]);
        let lhs = e.mul(&SkewPoly::constant(2, a.clone().into()));
        let rhs = carlitz_op(2, &a).mul(&e);
        for i in 0..=6 {
            assert_eq!(lhs.coeff(i), rhs.coeff(i));
        }
        let id = e.mul(&l);
        assert!(id.coeff(0).unwrap().is_one());
        for i in 1..=6 {
            assert!(id.coeff(i).unwrap().is_zero());
        }
    }

    #[test]
    fn x_series_sign() {
        let c = CarlitzContext::new(2, &[1, 1, 1]).unwrap();
        let f = c.field().clone();
        let x = c.x_series(32).unwrap();
        let diff = x.sub(&TateSeries::scalar(c.series_ctx(), c.zeta())).unwrap();
        assert_eq!(diff.valuation().unwrap(), 3);
        let dp = c.pinf().derivative().eval(c.zeta());
        assert_eq!(diff.sign().unwrap(), f.inv(dp).unwrap());
        assert!(CarlitzContext::new(2, &[1, 0, 1]).is_err());
    }

    #[test]
    fn torsion_and_gauss_degree_one() {
        let c = CarlitzContext::new(3, &[2, 1]).unwrap();
        let lambda = c.torsion_root(20).unwrap();
        // λ^{q-1} = -P_∞(x) = u^{q-1}
        assert_eq!(lambda.pow(2).unwrap().truncate(20), TateSeries::u_pow(c.series_ctx(), 2).truncate(20));
        let g = c.gauss_sum(20).unwrap();
        assert_eq!(g, lambda.truncate(20));
    }

    #[test]
    fn gauss_sum_law_degree_two() {
        let c = CarlitzContext::new(2, &[1, 1, 1]).unwrap();
        let n = 40;
        let lambda = c.torsion_root(n).unwrap();
        let x = c.x_series(n + 4).unwrap();
        let cp = c.apply_op(c.pinf(), &lambda, &x).unwrap();
        assert!(cp.valuation_bound() >= n);
        let (v, lead) = lambda.shift(-1).sgn_lead().unwrap();
        assert_eq!((v, lead.as_constant()), ((0, 1), Some(1)));
        let g = c.gauss_sum(n).unwrap();
        let res = g.pow(3).unwrap().sub(&c.gauss_closed_form(n + 4).unwrap()).unwrap();
        assert!(res.valuation_bound() >= n);
        assert_eq!(g.shift(-1).sgn_lead().unwrap().1.as_constant(), Some(1));
        // C_y(λ) ≠ 0 for 0 ≠ deg y < d
        for y in [xpoly(c.field(), vec![1]), xpoly(c.field(), vec![0, 1]), xpoly(c.field(), vec![1, 1])] {
            assert!(!c.apply_op(&y, &lambda, &x).unwrap().is_zero_at_precision());
        }
    }

    #[test]
    fn omega_fixed_point_and_valuations() {
        for q in [2, 3] {
            let ctx = theta_context(q, &["t"]).unwrap();
            let n = 60;
            let w = omega_carlitz(&ctx, n).unwrap();
            assert_eq!(w.valuation().unwrap(), -1);
            assert!(w.integrality_check(&[]).ok);
            let res = w.twist(1).sub(&t_minus_theta(&ctx, 0).mul(&w).unwrap()).unwrap();
            assert!(res.valuation_bound() >= n - q as i64 + 1, "q={q}");
            let p = pi_tilde_product(&ctx, n).unwrap();
            assert_eq!(p.valuation().unwrap(), -(q as i64));
            assert_eq!(p.shift(1).sign().unwrap(), 1);
            let p2 = pi_tilde_product(&ctx, 2 * n).unwrap();
            assert_eq!(p2.truncate(n), p);
        }
    }

    #[test]
    fn exp_coeff_series_matches_closed_valuation() {
        let ctx = theta_context(3, &[]).unwrap();
        for k in 0..4u32 {
            let e = exp_coeff_series(&ctx, k, 200).unwrap();
            // v(e_k) = k q^k in π-units
            assert_eq!(e.valuation().unwrap(), 2 * (k as i64) * 3i64.pow(k));
        }
    }
}
