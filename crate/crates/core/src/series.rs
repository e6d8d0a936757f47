//! Laurent series in the uniformizer `u`, `u^(q^d - 1) = -π`, with explicit
//! absolute precision.
//!
//! A series stores the coefficients of `u^start, u^(start+1), ...` below its
//! precision `prec`; nothing is known about exponents `>= prec`. Exact finite
//! series carry precision [`EXACT`]. Valuations are counted in `u`-units, so
//! `v(π) = q^d - 1`.

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::mpoly::{MPoly, MRat, Mono};
use crate::poly::{Poly, RatFn};

/// Precision of an exactly known series.
pub const EXACT: i64 = i64::MAX / 4;

fn sat(x: i64) -> i64 {
    x.min(EXACT)
}

struct Ctx {
    q: u32,
    d: u32,
    field: Field,
    vars: Vec<String>,
}

/// Parameters shared by a family of series: `q`, `d_∞`, the constant field
/// `F_{q^d}` and the names of the coefficient variables.
#[derive(Clone)]
pub struct SeriesContext(Arc<Ctx>);

impl PartialEq for SeriesContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.q == other.0.q && self.0.d == other.0.d && self.0.vars == other.0.vars && self.0.field == other.0.field)
    }
}

impl fmt::Debug for SeriesContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SeriesContext(q={}, d={}, vars={:?})", self.0.q, self.0.d, self.0.vars)
    }
}

/// Splits a prime power `q = p^e`.
pub fn prime_power(q: u32) -> Result<(u32, u32)> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!("q = {q} is not a prime power")));
    }
    let p = (2..=q).find(|d| q % d == 0).expect("q >= 2");
    let (mut e, mut r) = (0, q);
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    if r != 1 {
        return Err(Error::InvalidParameter(format!("q = {q} is not a prime power")));
    }
    Ok((p, e))
}

impl SeriesContext {
    /// Context over `F_{q^d}` with the given variable names.
    pub fn new(q: u32, d: u32, vars: &[&str]) -> Result<SeriesContext> {
        let (p, e) = prime_power(q)?;
        if d == 0 {
            return Err(Error::InvalidParameter("d_inf must be positive".into()));
        }
        let field = Field::new(p, e * d)?;
        SeriesContext::with_field(field, q, d, vars.iter().map(|s| s.to_string()).collect())
    }

    pub fn with_field(field: Field, q: u32, d: u32, vars: Vec<String>) -> Result<SeriesContext> {
        if (field.order() as u64) != (q as u64).pow(d) {
            return Err(Error::InvalidParameter("field order must be q^d".into()));
        }
        if vars.len() > crate::mpoly::MAX_VARS {
            return Err(Error::InvalidParameter(format!("at most {} variables", crate::mpoly::MAX_VARS)));
        }
        Ok(SeriesContext(Arc::new(Ctx { q, d, field, vars })))
    }

    /// Same constants, different variables.
    pub fn with_vars(&self, vars: &[&str]) -> Result<SeriesContext> {
        SeriesContext::with_field(self.0.field.clone(), self.0.q, self.0.d, vars.iter().map(|s| s.to_string()).collect())
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn d(&self) -> u32 {
        self.0.d
    }

    /// `q^d - 1`, the `u`-valuation of `π`.
    pub fn big_q(&self) -> i64 {
        (self.0.q as i64).pow(self.0.d) - 1
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn var(&self, name: &str) -> Result<usize> {
        self.0
            .vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown variable {name}")))
    }

    /// `q^k` as an `i64`.
    pub fn qpow(&self, k: u32) -> i64 {
        (self.0.q as i64).pow(k)
    }
}

/// A truncated Laurent series in `u`.
#[derive(Clone, PartialEq)]
pub struct TateSeries {
    ctx: SeriesContext,
    start: i64,
    coeffs: Vec<MRat>,
    prec: i64,
}

impl fmt::Debug for TateSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.ctx.vars();
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                parts.push(format!("({})*u^{}", c.format(names), self.start + i as i64));
            }
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        if self.prec < EXACT {
            parts.push(format!("O(u^{})", self.prec));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Outcome of [`TateSeries::integrality_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Integrality {
    pub ok: bool,
    /// First exponent whose coefficient has a forbidden denominator.
    pub witness: Option<i64>,
}

/// One factor of an infinite product.
pub enum ProductFactor {
    Times(TateSeries),
    Over(TateSeries),
}

impl TateSeries {
    fn build(ctx: &SeriesContext, start: i64, mut coeffs: Vec<MRat>, prec: i64) -> TateSeries {
        let prec = sat(prec);
        let keep = (prec - start).max(0) as usize;
        if coeffs.len() > keep {
            coeffs.truncate(keep);
        }
        let lead = coeffs.iter().position(|c| !c.is_zero());
        let Some(lead) = lead else {
            return TateSeries { ctx: ctx.clone(), start: prec, coeffs: Vec::new(), prec };
        };
        let tail = coeffs.iter().rposition(|c| !c.is_zero()).expect("nonempty");
        coeffs.truncate(tail + 1);
        coeffs.drain(..lead);
        TateSeries { ctx: ctx.clone(), start: start + lead as i64, coeffs, prec }
    }

    /// Builds a series from `(exponent, coefficient)` pairs.
    pub fn from_terms(ctx: &SeriesContext, terms: Vec<(i64, MRat)>, prec: i64) -> TateSeries {
        let terms: Vec<_> = terms.into_iter().filter(|t| t.0 < prec && !t.1.is_zero()).collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return TateSeries::zero(ctx, prec);
        };
        let hi = terms.iter().map(|t| t.0).max().expect("nonempty");
        let zero = MRat::zero(ctx.field());
        let mut coeffs = vec![zero; (hi - lo + 1) as usize];
        for (e, c) in terms {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = &*slot + &c;
        }
        TateSeries::build(ctx, lo, coeffs, prec)
    }

    pub fn zero(ctx: &SeriesContext, prec: i64) -> TateSeries {
        TateSeries { ctx: ctx.clone(), start: sat(prec), coeffs: Vec::new(), prec: sat(prec) }
    }

    pub fn constant(ctx: &SeriesContext, c: MRat) -> TateSeries {
        TateSeries::monomial(ctx, c, 0)
    }

    pub fn one(ctx: &SeriesContext) -> TateSeries {
        TateSeries::constant(ctx, MRat::one(ctx.field()))
    }

    pub fn scalar(ctx: &SeriesContext, c: Elem) -> TateSeries {
        TateSeries::constant(ctx, MRat::constant(ctx.field(), c))
    }

    /// `c u^e`, exact.
    pub fn monomial(ctx: &SeriesContext, c: MRat, e: i64) -> TateSeries {
        TateSeries::build(ctx, e, vec![c], EXACT)
    }

    /// The exact series `u^e`.
    pub fn u_pow(ctx: &SeriesContext, e: i64) -> TateSeries {
        TateSeries::monomial(ctx, MRat::one(ctx.field()), e)
    }

    /// A coefficient variable `v` as an exact series.
    pub fn variable(ctx: &SeriesContext, v: usize) -> TateSeries {
        TateSeries::constant(ctx, MPoly::monomial(ctx.field(), 1, v, 1).into())
    }

    pub fn ctx(&self) -> &SeriesContext {
        &self.ctx
    }

    pub fn field(&self) -> &Field {
        self.ctx.field()
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec >= EXACT
    }

    /// Coefficient of `u^e` (zero outside the stored range).
    pub fn coeff(&self, e: i64) -> MRat {
        if e < self.start || e >= self.start + self.coeffs.len() as i64 {
            return MRat::zero(self.field());
        }
        self.coeffs[(e - self.start) as usize].clone()
    }

    fn coeff_ref(&self, e: i64) -> Option<&MRat> {
        if e < self.start {
            return None;
        }
        self.coeffs.get((e - self.start) as usize)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &MRat)> {
        let s = self.start;
        self.coeffs.iter().enumerate().filter(|t| !t.1.is_zero()).map(move |(i, c)| (s + i as i64, c))
    }

    pub fn is_zero_at_precision(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn valuation(&self) -> Result<i64> {
        if self.coeffs.is_empty() {
            Err(Error::ZeroAtPrecision(self.prec))
        } else {
            Ok(self.start)
        }
    }

    /// The valuation, or the precision for a series that is zero to
    /// precision; a lower bound for the true valuation either way.
    pub fn valuation_bound(&self) -> i64 {
        if self.coeffs.is_empty() {
            self.prec
        } else {
            self.start
        }
    }

    pub fn truncate(&self, prec: i64) -> TateSeries {
        if prec >= self.prec {
            return self.clone();
        }
        TateSeries::build(&self.ctx, self.start, self.coeffs.clone(), prec)
    }

    pub fn with_ctx(&self, ctx: &SeriesContext) -> TateSeries {
        TateSeries { ctx: ctx.clone(), ..self.clone() }
    }

    fn check(&self, other: &TateSeries) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &TateSeries) -> Result<TateSeries> {
        self.check(other)?;
        let prec = self.prec.min(other.prec);
        let lo = self.valuation_bound().min(other.valuation_bound());
        let end = |s: &TateSeries| if s.coeffs.is_empty() { i64::MIN } else { s.start + s.coeffs.len() as i64 };
        let hi = end(self).max(end(other)).min(prec);
        if hi <= lo {
            return Ok(TateSeries::zero(&self.ctx, prec));
        }
        let coeffs = (lo..hi)
            .map(|e| match (self.coeff_ref(e), other.coeff_ref(e)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => MRat::zero(self.field()),
            })
            .collect();
        Ok(TateSeries::build(&self.ctx, lo, coeffs, prec))
    }

    pub fn neg(&self) -> TateSeries {
        TateSeries { coeffs: self.coeffs.iter().map(|c| -c).collect(), ..self.clone() }
    }

    pub fn sub(&self, other: &TateSeries) -> Result<TateSeries> {
        self.add(&other.neg())
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &MRat) -> TateSeries {
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        TateSeries::build(&self.ctx, self.start, coeffs, self.prec)
    }

    pub fn scale_elem(&self, c: Elem) -> TateSeries {
        let coeffs = self.coeffs.iter().map(|a| a.scale(c)).collect();
        TateSeries::build(&self.ctx, self.start, coeffs, self.prec)
    }

    /// Multiplies by `u^e`.
    pub fn shift(&self, e: i64) -> TateSeries {
        TateSeries { start: self.start + e, prec: sat(self.prec + e), ..self.clone() }
    }

    /// Multiplies by a monomial in the coefficient variables.
    pub fn shift_vars(&self, m: Mono) -> TateSeries {
        let coeffs = self.coeffs.iter().map(|a| a.shift(m)).collect();
        TateSeries::build(&self.ctx, self.start, coeffs, self.prec)
    }

    pub fn mul(&self, other: &TateSeries) -> Result<TateSeries> {
        self.check(other)?;
        let (va, vb) = (self.valuation_bound(), other.valuation_bound());
        let prec = sat(self.prec.saturating_add(vb)).min(sat(other.prec.saturating_add(va)));
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Ok(TateSeries::zero(&self.ctx, prec));
        }
        let start = self.start + other.start;
        let len = ((self.coeffs.len() + other.coeffs.len() - 1) as i64).min(prec - start).max(0) as usize;
        let zero = MRat::zero(self.field());
        let mut out = vec![zero; len];
        let bnz: Vec<(usize, &MRat)> = other.coeffs.iter().enumerate().filter(|t| !t.1.is_zero()).collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for &(j, b) in &bnz {
                if i + j >= len {
                    break;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Ok(TateSeries::build(&self.ctx, start, out, prec))
    }

    pub fn pow(&self, mut n: u64) -> Result<TateSeries> {
        let mut acc = TateSeries::one(&self.ctx);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `self / other`; the leading coefficient of `other` must be invertible.
    pub fn div(&self, other: &TateSeries) -> Result<TateSeries> {
        self.check(other)?;
        let vb = other.valuation()?;
        let b0_inv = other.coeffs[0].inv()?;
        let rel_b = other.prec.saturating_sub(vb);
        let va = self.valuation_bound();
        let prec = sat(self.prec.saturating_sub(vb)).min(sat(va - vb + rel_b));
        if self.coeffs.is_empty() {
            return Ok(TateSeries::zero(&self.ctx, prec));
        }
        let start = va - vb;
        let bnz: Vec<(usize, &MRat)> = other.coeffs.iter().enumerate().skip(1).filter(|t| !t.1.is_zero()).collect();
        if bnz.is_empty() && other.prec >= EXACT {
            let terms = self.terms().map(|(e, c)| (e - vb, c * &b0_inv)).collect();
            let prec = if self.prec >= EXACT { EXACT } else { self.prec - vb };
            return Ok(TateSeries::from_terms(&self.ctx, terms, prec));
        }
        if prec >= EXACT - vb.abs() {
            return Err(Error::InvalidParameter("quotient of exact series has infinitely many terms; truncate one first".into()));
        }
        let len = (prec - start).max(0) as usize;
        let mut out: Vec<MRat> = Vec::with_capacity(len);
        for n in 0..len {
            let mut acc = self.coeff(va + n as i64);
            for &(k, b) in &bnz {
                if k > n {
                    break;
                }
                let prev = &out[n - k];
                if !prev.is_zero() {
                    acc = &acc - &(b * prev);
                }
            }
            out.push(&acc * &b0_inv);
        }
        Ok(TateSeries::build(&self.ctx, start, out, prec))
    }

    pub fn inv(&self) -> Result<TateSeries> {
        TateSeries::one(&self.ctx).div(self)
    }

    /// `τ^k`: constants to the `q^k`, `u^j -> u^(q^k j)`, variables fixed.
    pub fn twist(&self, k: u32) -> TateSeries {
        if k == 0 {
            return self.clone();
        }
        let qk = self.ctx.qpow(k);
        let q = self.ctx.q();
        let terms = self
            .terms()
            .map(|(e, c)| (e * qk, c.map_coeffs_frobenius(q, k)))
            .collect();
        let prec = if self.prec >= EXACT { EXACT } else { sat(self.prec.saturating_mul(qk)) };
        TateSeries::from_terms(&self.ctx, terms, prec)
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&MRat) -> Result<MRat>) -> Result<TateSeries> {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(TateSeries::build(&self.ctx, self.start, coeffs, self.prec))
    }

    /// Substitutes a field value for a coefficient variable.
    pub fn eval_var(&self, v: usize, a: Elem) -> Result<TateSeries> {
        self.map_coeffs(|c| c.eval_var(v, a))
    }

    /// Valuation in `π`-units as a reduced fraction, and the leading coefficient.
    pub fn sgn_lead(&self) -> Result<((i64, i64), MRat)> {
        let v = self.valuation()?;
        let q = self.ctx.big_q();
        let g = gcd(v.abs(), q);
        Ok(((v / g, q / g), self.coeffs[0].clone()))
    }

    /// The sign of a series supported on `π`-integral valuation: the leading
    /// coefficient twisted by `sgn(u^Q) = sgn(-π) = -1`.
    pub fn sign(&self) -> Result<Elem> {
        let v = self.valuation()?;
        let q = self.ctx.big_q();
        if v % q != 0 {
            return Err(Error::InvalidParameter(format!("valuation {v} is not a multiple of {q}")));
        }
        let c = self.coeffs[0]
            .as_constant()
            .ok_or_else(|| Error::InvalidParameter("leading coefficient is not constant".into()))?;
        let f = self.field();
        Ok(if (v / q) % 2 != 0 { f.neg(c) } else { c })
    }

    /// Checks that each coefficient's denominator only involves the allowed
    /// linear factors `(var, root)`.
    pub fn integrality_check(&self, allowed: &[(usize, Elem)]) -> Integrality {
        for (e, c) in self.terms() {
            if c.den().iter().any(|d| !allowed.contains(&(d.var, d.root))) {
                return Integrality { ok: false, witness: Some(e) };
            }
        }
        Integrality { ok: true, witness: None }
    }

    /// Evaluates a polynomial with constant coefficients at this series.
    pub fn eval_poly(p: &Poly, x: &TateSeries) -> Result<TateSeries> {
        let ctx = x.ctx();
        let mut acc = TateSeries::zero(ctx, EXACT);
        for &c in p.coeffs().iter().rev() {
            acc = acc.mul(x)?.add(&TateSeries::scalar(ctx, c))?;
        }
        Ok(acc)
    }

    /// Evaluates a rational function with constant coefficients at this series.
    pub fn eval_ratfn(r: &RatFn, x: &TateSeries) -> Result<TateSeries> {
        let num = TateSeries::eval_poly(r.num(), x)?;
        if r.is_polynomial() {
            return Ok(num);
        }
        num.div(&TateSeries::eval_poly(r.den(), x)?)
    }

    /// Product of a stream of factors `1 + O(u^m_i)` to precision `n`.
    ///
    /// Consumption stops at the first factor with `m_i >= n`; the `m_i` must
    /// increase strictly.
    pub fn inf_product(ctx: &SeriesContext, factors: impl IntoIterator<Item = ProductFactor>, n: i64) -> Result<TateSeries> {
        let one = TateSeries::one(ctx);
        let mut acc = one.truncate(n);
        let mut last_m = 0i64;
        for (i, factor) in factors.into_iter().enumerate() {
            let (s, over) = match factor {
                ProductFactor::Times(s) => (s, false),
                ProductFactor::Over(s) => (s, true),
            };
            let tail = s.sub(&one)?;
            let m = tail.valuation_bound();
            if m <= 0 {
                return Err(Error::InvalidParameter(format!("factor {i} is not of the form 1 + O(u)")));
            }
            if m >= n {
                return Ok(acc.truncate(n));
            }
            if s.prec < n {
                return Err(Error::InsufficientPrecision(format!("factor {i} known only to u^{}", s.prec)));
            }
            if i > 0 && m <= last_m {
                return Err(Error::ProductStalled(format!("factor {i} has tail valuation {m} after {last_m}")));
            }
            last_m = m;
            acc = if over { acc.div(&s)? } else { acc.mul(&s)? }.truncate(n);
        }
        Ok(acc.truncate(n))
    }

    /// A root of `Σ_i e[i] X^i` lifted from `seed` by Newton iteration and
    /// returned to precision `u^n` (the residual then vanishes to
    /// `u^(n + v(E'))`).
    pub fn hensel_root(e: &[TateSeries], seed: &TateSeries, n: i64) -> Result<TateSeries> {
        let ctx = seed.ctx();
        if e.is_empty() {
            return Err(Error::InvalidParameter("empty equation".into()));
        }
        let deriv: Vec<TateSeries> = e
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale_elem(ctx.field().from_int(i as i64)))
            .collect();
        let eval = |coeffs: &[TateSeries], x: &TateSeries, prec: i64| -> Result<TateSeries> {
            let mut acc = TateSeries::zero(ctx, EXACT);
            for c in coeffs.iter().rev() {
                acc = acc.mul(x)?.add(c)?.truncate(prec);
            }
            Ok(acc)
        };
        let seed_prec = seed.prec;
        let mut x = seed.truncate(seed_prec.min(n + 1)).with_exact_tail();
        let dv = eval(&deriv, &x, n + 1)?.valuation().map_err(|_| Error::HenselFailure("derivative vanishes at the seed".into()))?;
        let r0 = eval(e, &x, n + dv + 1)?.valuation_bound();
        if r0 <= 2 * dv {
            return Err(Error::HenselFailure(format!("residual valuation {r0} not above twice the derivative valuation {dv}")));
        }
        for _ in 0..64 {
            let work = n + dv + 1;
            let r = eval(e, &x, work)?;
            if r.valuation_bound() >= n + dv {
                return Ok(x.with_prec(n));
            }
            let d = eval(&deriv, &x, work)?;
            let step = r.div(&d)?;
            x = x.sub(&step)?.truncate(work).with_exact_tail();
        }
        Err(Error::HenselFailure("no convergence".into()))
    }

    /// Treats the stored terms as exact (used to feed approximations back
    /// into an iteration that tracks its own error).
    pub fn with_exact_tail(&self) -> TateSeries {
        TateSeries { prec: EXACT, ..self.clone() }
    }

    /// Marks the series as known only below `prec`.
    pub fn with_prec(&self, prec: i64) -> TateSeries {
        TateSeries::build(&self.ctx, self.start, self.coeffs.clone(), prec)
    }

    pub fn to_json(&self) -> Value {
        let names = self.ctx.vars();
        let terms: Vec<Value> = self.terms().map(|(e, c)| json!([e, c.format(names)])).collect();
        json!({
            "context": {"q": self.ctx.q(), "d_inf": self.ctx.d(), "vars": names},
            "precision": if self.is_exact() { Value::Null } else { json!(self.prec) },
            "terms": terms,
        })
    }

    pub fn from_json(v: &Value) -> Result<TateSeries> {
        let bad = |what: &str| Error::Parse(format!("series JSON: {what}"));
        let c = v.get("context").ok_or_else(|| bad("missing context"))?;
        let q = c.get("q").and_then(Value::as_u64).ok_or_else(|| bad("missing q"))? as u32;
        let d = c.get("d_inf").and_then(Value::as_u64).ok_or_else(|| bad("missing d_inf"))? as u32;
        let vars: Vec<String> = c
            .get("vars")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing vars"))?
            .iter()
            .map(|x| x.as_str().map(str::to_string).ok_or_else(|| bad("variable names must be strings")))
            .collect::<Result<_>>()?;
        let refs: Vec<&str> = vars.iter().map(String::as_str).collect();
        let ctx = SeriesContext::new(q, d, &refs)?;
        let prec = match v.get("precision") {
            None | Some(Value::Null) => EXACT,
            Some(p) => p.as_i64().ok_or_else(|| bad("precision must be an integer"))?,
        };
        let mut terms = Vec::new();
        for t in v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))? {
            let e = t.get(0).and_then(Value::as_i64).ok_or_else(|| bad("term exponent"))?;
            let s = t.get(1).and_then(Value::as_str).ok_or_else(|| bad("term coefficient"))?;
            terms.push((e, MRat::parse(ctx.field(), ctx.vars(), s)?));
        }
        Ok(TateSeries::from_terms(&ctx, terms, prec))
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx2() -> SeriesContext {
        SeriesContext::new(2, 1, &["t"]).unwrap()
    }

    fn c(ctx: &SeriesContext, x: Elem) -> MRat {
        MRat::constant(ctx.field(), x)
    }

    #[test]
    fn twist_of_monomial_and_constants() {
        let ctx = SeriesContext::new(3, 1, &["t"]).unwrap();
        let u = TateSeries::u_pow(&ctx, 1);
        assert_eq!(u.twist(2), TateSeries::u_pow(&ctx, 9));
        let t = TateSeries::variable(&ctx, 0).truncate(5);
        assert_eq!(t.twist(1).coeff(0), t.coeff(0));
        assert_eq!(t.twist(1).prec(), 15);
    }

    #[test]
    fn exact_division() {
        let ctx = ctx2();
        let one_plus_u = TateSeries::one(&ctx).add(&TateSeries::u_pow(&ctx, 1)).unwrap();
        let q = one_plus_u.div(&TateSeries::u_pow(&ctx, 2)).unwrap();
        assert!(q.is_exact());
        assert_eq!(q.valuation().unwrap(), -2);
        assert!(TateSeries::one(&ctx).div(&one_plus_u).is_err());
        let inv = one_plus_u.truncate(6).inv().unwrap();
        assert_eq!(inv.prec(), 6);
        assert_eq!(inv.terms().count(), 6);
    }

    #[test]
    fn finite_product_example() {
        let ctx = ctx2();
        let factors = (0..).map(|i| ProductFactor::Times(TateSeries::one(&ctx).add(&TateSeries::u_pow(&ctx, 1 << i)).unwrap()));
        let p = TateSeries::inf_product(&ctx, factors, 8).unwrap();
        let expected = TateSeries::from_terms(&ctx, (0..8).map(|e| (e, c(&ctx, 1))).collect(), 8);
        assert_eq!(p, expected);
        let empty = TateSeries::inf_product(&ctx, [ProductFactor::Times(TateSeries::one(&ctx).add(&TateSeries::u_pow(&ctx, 9)).unwrap())], 8).unwrap();
        assert_eq!(empty, TateSeries::one(&ctx).truncate(8));
        let bad = TateSeries::inf_product(&ctx, [ProductFactor::Times(TateSeries::u_pow(&ctx, 1))], 8);
        assert!(bad.is_err());
    }

    #[test]
    fn geometric_factors_match_direct_division() {
        let ctx = SeriesContext::new(3, 1, &["t"]).unwrap();
        let t = TateSeries::variable(&ctx, 0);
        let factor = |i: u32| TateSeries::one(&ctx).sub(&t.mul(&TateSeries::u_pow(&ctx, 2 * 3i64.pow(i))).unwrap()).unwrap();
        let prod = TateSeries::inf_product(&ctx, (0..).map(|i| ProductFactor::Over(factor(i))), 40).unwrap();
        let mut direct = TateSeries::one(&ctx);
        for i in 0..3 {
            direct = direct.div(&factor(i).truncate(40)).unwrap();
        }
        assert_eq!(prod, direct.truncate(40));
    }

    #[test]
    fn hensel_square_root() {
        let ctx = SeriesContext::new(3, 1, &[]).unwrap();
        let one = TateSeries::one(&ctx);
        let rhs = one.add(&TateSeries::u_pow(&ctx, 2)).unwrap();
        let e = vec![rhs.neg(), TateSeries::zero(&ctx, EXACT), one.clone()];
        let r = TateSeries::hensel_root(&e, &one.truncate(1), 30).unwrap();
        assert_eq!(r.mul(&r).unwrap().truncate(30), rhs.truncate(30));
        assert_eq!(r.coeff(2), c(&ctx, 2));
        let lin = vec![TateSeries::scalar(&ctx, 2).neg(), one.clone()];
        assert_eq!(TateSeries::hensel_root(&lin, &TateSeries::scalar(&ctx, 2), 10).unwrap(), TateSeries::scalar(&ctx, 2).truncate(10));
    }

    #[test]
    fn sign_conventions() {
        let ctx = SeriesContext::new(3, 1, &[]).unwrap();
        let pi_neg = TateSeries::u_pow(&ctx, 2);
        let ((num, den), lead) = pi_neg.sgn_lead().unwrap();
        assert_eq!((num, den), (1, 1));
        assert_eq!(lead.as_constant(), Some(1));
        assert_eq!(pi_neg.sign().unwrap(), 2);
        let s = TateSeries::one(&ctx).add(&TateSeries::u_pow(&ctx, 1)).unwrap();
        assert_eq!(s.sgn_lead().unwrap().0, (0, 1));
        assert!(TateSeries::zero(&ctx, 10).valuation().is_err());
    }

    #[test]
    fn integrality_witness() {
        let ctx = ctx2();
        let s = TateSeries::from_terms(&ctx, vec![(0, c(&ctx, 1)), (3, MRat::inv_linear(ctx.field(), 0, 1, 1))], 10);
        assert_eq!(s.integrality_check(&[]), Integrality { ok: false, witness: Some(3) });
        assert!(s.integrality_check(&[(0, 1)]).ok);
    }

    #[test]
    fn json_roundtrip() {
        let ctx = SeriesContext::new(2, 2, &["z"]).unwrap();
        let s = TateSeries::from_terms(
            &ctx,
            vec![(-2, c(&ctx, 3)), (1, &MRat::inv_linear(ctx.field(), 0, 2, 2) * &MPoly::monomial(ctx.field(), 2, 0, 3).into())],
            7,
        );
        let back = TateSeries::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
        assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), serde_json::to_string(&s.to_json()).unwrap());
    }

    fn series_strategy() -> impl Strategy<Value = (i64, Vec<u32>)> {
        (-3i64..3, proptest::collection::vec(0u32..4, 1..8))
    }

    fn mk(ctx: &SeriesContext, (start, v): &(i64, Vec<u32>), prec: i64) -> TateSeries {
        let terms = v.iter().enumerate().map(|(i, &x)| (start + i as i64, c(ctx, x))).collect();
        TateSeries::from_terms(ctx, terms, prec)
    }

    proptest! {
        #[test]
        fn valuation_laws(a in series_strategy(), b in series_strategy()) {
            let ctx = SeriesContext::new(2, 2, &[]).unwrap();
            let (x, y) = (mk(&ctx, &a, 20), mk(&ctx, &b, 20));
            prop_assume!(!x.is_zero_at_precision() && !y.is_zero_at_precision());
            let xy = x.mul(&y).unwrap();
            prop_assert_eq!(xy.valuation().unwrap(), x.valuation().unwrap() + y.valuation().unwrap());
            let s = x.add(&y).unwrap();
            let m = x.valuation().unwrap().min(y.valuation().unwrap());
            prop_assert!(s.valuation_bound() >= m);
            if x.valuation().unwrap() != y.valuation().unwrap() {
                prop_assert_eq!(s.valuation().unwrap(), m);
            }
        }

        #[test]
        fn twist_is_ring_map(a in series_strategy(), b in series_strategy()) {
            let ctx = SeriesContext::new(2, 2, &[]).unwrap();
            let (x, y) = (mk(&ctx, &a, 20), mk(&ctx, &b, 20));
            prop_assert_eq!(x.add(&y).unwrap().twist(1), x.twist(1).add(&y.twist(1)).unwrap());
            prop_assert_eq!(x.mul(&y).unwrap().twist(1), x.twist(1).mul(&y.twist(1)).unwrap());
        }

        #[test]
        fn division_inverts_multiplication(a in series_strategy(), b in series_strategy()) {
            let ctx = SeriesContext::new(2, 2, &[]).unwrap();
            let (x, y) = (mk(&ctx, &a, 25), mk(&ctx, &b, 25));
            prop_assume!(!y.is_zero_at_precision());
            let q = x.mul(&y).unwrap().div(&y).unwrap();
            let n = q.prec().min(x.prec());
            prop_assert_eq!(q.truncate(n), x.truncate(n));
        }
    }
}
