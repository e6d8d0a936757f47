//! Multivariate polynomials and the rational functions used as series
//! coefficients.
//!
//! Monomials pack up to [`MAX_VARS`] exponents of 16 bits each into a `u64`.
//! Rational functions ([`MRat`]) only allow denominators that are products of
//! linear factors `(v - a)`; every denominator met in practice (`z - ζ^{q^k}`,
//! `t - c`) has this shape, and it keeps the canonical form cheap: a factor is
//! cancelled exactly when the numerator vanishes at `v = a`.
//!
//! Text form (used by the JSON serialization):
//!
//! ```text
//! coeff  := poly | poly "/" den
//! poly   := "0" | term (" + " term)*
//! term   := code | [code "*"] var ["^" n] ("*" var ["^" n])*
//! den    := factor ("*" factor)*
//! factor := "(" var "-" code ")" ["^" n]
//! ```
//!
//! where `code` is the integer code of a field element.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::poly::Poly;

pub const MAX_VARS: usize = 4;
const BITS: u32 = 16;
const MASK: u64 = (1 << BITS) - 1;

pub type Mono = u64;

pub fn mono_exp(m: Mono, v: usize) -> u32 {
    ((m >> (BITS * v as u32)) & MASK) as u32
}

pub fn mono_var(v: usize, e: u32) -> Mono {
    debug_assert!(v < MAX_VARS && (e as u64) <= MASK);
    (e as u64) << (BITS * v as u32)
}

fn mono_without(m: Mono, v: usize) -> Mono {
    m & !(MASK << (BITS * v as u32))
}

/// Sparse polynomial; terms sorted by packed monomial, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MPoly {
    field: Field,
    terms: Vec<(Mono, Elem)>,
}

impl MPoly {
    pub fn from_terms(field: &Field, mut terms: Vec<(Mono, Elem)>) -> MPoly {
        terms.sort_unstable_by_key(|t| t.0);
        let mut out: Vec<(Mono, Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = field.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        MPoly { field: field.clone(), terms: out }
    }

    pub fn zero(field: &Field) -> MPoly {
        MPoly { field: field.clone(), terms: Vec::new() }
    }

    pub fn constant(field: &Field, c: Elem) -> MPoly {
        let terms = if c == 0 { Vec::new() } else { vec![(0, c)] };
        MPoly { field: field.clone(), terms }
    }

    pub fn one(field: &Field) -> MPoly {
        MPoly::constant(field, 1)
    }

    /// `c * v^e`.
    pub fn monomial(field: &Field, c: Elem, v: usize, e: u32) -> MPoly {
        MPoly::from_terms(field, vec![(mono_var(v, e), c)])
    }

    /// `v - a`.
    pub fn linear(field: &Field, v: usize, a: Elem) -> MPoly {
        MPoly::from_terms(field, vec![(mono_var(v, 1), 1), (0, field.neg(a))])
    }

    /// Embeds a univariate polynomial as a polynomial in variable `v`.
    pub fn from_poly(p: &Poly, v: usize) -> MPoly {
        let terms = p
            .coeffs()
            .iter()
            .enumerate()
            .filter(|t| *t.1 != 0)
            .map(|(i, &c)| (mono_var(v, i as u32), c))
            .collect();
        MPoly { field: p.field().clone(), terms }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> &[(Mono, Elem)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Elem> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(0, c)] => Some(*c),
            _ => None,
        }
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|t| mono_exp(t.0, v)).max().unwrap_or(0)
    }

    /// Variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        (0..MAX_VARS).filter(|&v| self.degree_in(v) > 0).collect()
    }

    pub fn scale(&self, c: Elem) -> MPoly {
        if c == 0 {
            return MPoly::zero(&self.field);
        }
        let f = &self.field;
        MPoly { field: f.clone(), terms: self.terms.iter().map(|&(m, a)| (m, f.mul(a, c))).collect() }
    }

    /// Multiplies by the monomial `m`.
    pub fn shift(&self, m: Mono) -> MPoly {
        MPoly { field: self.field.clone(), terms: self.terms.iter().map(|&(k, a)| (k + m, a)).collect() }
    }

    pub fn pow(&self, mut n: u32) -> MPoly {
        let mut acc = MPoly::one(&self.field);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn map_coeffs_frobenius(&self, base: u32, k: u32) -> MPoly {
        let f = &self.field;
        MPoly { field: f.clone(), terms: self.terms.iter().map(|&(m, a)| (m, f.frobenius(a, base, k))).collect() }
    }

    /// Substitutes `v = a`.
    pub fn eval_var(&self, v: usize, a: Elem) -> MPoly {
        let f = &self.field;
        let terms = self
            .terms
            .iter()
            .map(|&(m, c)| {
                let e = mono_exp(m, v);
                let ae = f.pow(a, e as i64).unwrap_or(0);
                let ae = if e == 0 { 1 } else { ae };
                (mono_without(m, v), f.mul(c, ae))
            })
            .collect();
        MPoly::from_terms(f, terms)
    }

    /// Evaluates at a full point (one value per variable index).
    pub fn eval_point(&self, point: &[Elem]) -> Elem {
        let f = &self.field;
        let mut acc = 0;
        for &(m, c) in &self.terms {
            let mut t = c;
            for (v, &a) in point.iter().enumerate() {
                let e = mono_exp(m, v);
                if e > 0 {
                    t = f.mul(t, f.pow(a, e as i64).unwrap_or(0));
                }
            }
            acc = f.add(acc, t);
        }
        acc
    }

    /// Splits into a univariate polynomial in `v` with polynomial coefficients
    /// keyed by the remaining monomial: `rest -> [c_0, c_1, ...]`.
    fn collect_in(&self, v: usize) -> BTreeMap<Mono, Vec<Elem>> {
        let mut map: BTreeMap<Mono, Vec<Elem>> = BTreeMap::new();
        for &(m, c) in &self.terms {
            let e = mono_exp(m, v) as usize;
            let row = map.entry(mono_without(m, v)).or_default();
            if row.len() <= e {
                row.resize(e + 1, 0);
            }
            row[e] = c;
        }
        map
    }

    /// Exact quotient by `v - a`; errors when it does not divide.
    pub fn div_linear(&self, v: usize, a: Elem) -> Result<MPoly> {
        let f = &self.field;
        let mut out = Vec::new();
        for (rest, row) in self.collect_in(v) {
            // synthetic division from the top
            let mut carry = 0;
            for e in (0..row.len()).rev() {
                let cur = f.add(row[e], carry);
                if e == 0 {
                    if cur != 0 {
                        return Err(Error::Inconsistent("linear factor does not divide".into()));
                    }
                } else {
                    if cur != 0 {
                        out.push((rest + mono_var(v, e as u32 - 1), cur));
                    }
                    carry = f.mul(cur, a);
                }
            }
        }
        Ok(MPoly::from_terms(f, out))
    }

    /// The polynomial as a univariate one in `v`, if no other variable occurs.
    pub fn to_univariate(&self, v: usize) -> Option<Poly> {
        let mut coeffs = Vec::new();
        for &(m, c) in &self.terms {
            if mono_without(m, v) != 0 {
                return None;
            }
            let e = mono_exp(m, v) as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, 0);
            }
            coeffs[e] = c;
        }
        Some(Poly::new(&self.field, coeffs))
    }

    pub fn format(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::with_capacity(self.terms.len());
        for &(m, c) in self.terms.iter().rev() {
            let mut s = String::new();
            let mut first = true;
            if m == 0 || c != 1 {
                s.push_str(&self.field.format(c));
                first = false;
            }
            for (v, name) in names.iter().enumerate().take(MAX_VARS) {
                let e = mono_exp(m, v);
                if e == 0 {
                    continue;
                }
                if !first {
                    s.push('*');
                }
                first = false;
                s.push_str(name);
                if e > 1 {
                    let _ = write!(s, "^{e}");
                }
            }
            parts.push(s);
        }
        parts.join(" + ")
    }

    pub fn parse(field: &Field, names: &[String], text: &str) -> Result<MPoly> {
        let text = text.trim();
        if text == "0" {
            return Ok(MPoly::zero(field));
        }
        let mut terms = Vec::new();
        for term in text.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in {text:?}")));
            }
            let mut c: Elem = 1;
            let mut m: Mono = 0;
            for factor in term.split('*') {
                let factor = factor.trim();
                if let Ok(code) = factor.parse::<u32>() {
                    if !field.contains(code) {
                        return Err(Error::Parse(format!("element code {code} out of range")));
                    }
                    c = field.mul(c, code);
                    continue;
                }
                let (name, e) = match factor.split_once('^') {
                    Some((n, e)) => (n, e.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?),
                    None => (factor, 1),
                };
                let v = names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                if v >= MAX_VARS || e as u64 > MASK {
                    return Err(Error::Parse(format!("monomial out of range in {factor:?}")));
                }
                m += mono_var(v, e);
            }
            terms.push((m, c));
        }
        Ok(MPoly::from_terms(field, terms))
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let f = &self.field;
        let (a, b) = (&self.terms, &rhs.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = f.add(a[i].1, b[j].1);
                    if c != 0 {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        MPoly { field: f.clone(), terms: out }
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        let f = &self.field;
        MPoly { field: f.clone(), terms: self.terms.iter().map(|&(m, c)| (m, f.neg(c))).collect() }
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self + &(-rhs)
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return MPoly::zero(f);
        }
        if let [(0, c)] = rhs.terms.as_slice() {
            return self.scale(*c);
        }
        if let [(0, c)] = self.terms.as_slice() {
            return rhs.scale(*c);
        }
        let mut out = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for &(ma, ca) in &self.terms {
            for &(mb, cb) in &rhs.terms {
                out.push((ma + mb, f.mul(ca, cb)));
            }
        }
        MPoly::from_terms(f, out)
    }
}

/// A linear denominator factor `(var - root)^exp`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub struct LinFactor {
    pub var: usize,
    pub root: Elem,
    pub exp: u32,
}

/// `num / ∏ (var - root)^exp` in lowest terms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MRat {
    num: MPoly,
    den: Vec<LinFactor>,
}

impl From<MPoly> for MRat {
    fn from(num: MPoly) -> MRat {
        MRat { num, den: Vec::new() }
    }
}

impl MRat {
    pub fn new(num: MPoly, mut den: Vec<LinFactor>) -> MRat {
        den.retain(|d| d.exp > 0);
        den.sort_unstable();
        let mut merged: Vec<LinFactor> = Vec::with_capacity(den.len());
        for d in den {
            match merged.last_mut() {
                Some(l) if l.var == d.var && l.root == d.root => l.exp += d.exp,
                _ => merged.push(d),
            }
        }
        let mut r = MRat { num, den: merged };
        r.cancel();
        r
    }

    fn cancel(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        for d in self.den.iter_mut() {
            while d.exp > 0 && self.num.eval_var(d.var, d.root).is_zero() {
                self.num = self.num.div_linear(d.var, d.root).expect("vanishing implies divisible");
                d.exp -= 1;
            }
        }
        self.den.retain(|d| d.exp > 0);
    }

    pub fn zero(field: &Field) -> MRat {
        MPoly::zero(field).into()
    }

    pub fn one(field: &Field) -> MRat {
        MPoly::one(field).into()
    }

    pub fn constant(field: &Field, c: Elem) -> MRat {
        MPoly::constant(field, c).into()
    }

    /// `1 / (v - a)^e`.
    pub fn inv_linear(field: &Field, v: usize, a: Elem, e: u32) -> MRat {
        MRat { num: MPoly::one(field), den: vec![LinFactor { var: v, root: a, exp: e }] }
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &[LinFactor] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_constant(&self) -> Option<Elem> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn scale(&self, c: Elem) -> MRat {
        if c == 0 {
            return MRat::zero(self.field());
        }
        MRat { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Multiplies by a monomial in the variables.
    pub fn shift(&self, m: Mono) -> MRat {
        MRat::new(self.num.shift(m), self.den.clone())
    }

    fn den_poly(&self, factors: &[LinFactor]) -> MPoly {
        let f = self.field();
        let mut p = MPoly::one(f);
        for d in factors {
            p = &p * &MPoly::linear(f, d.var, d.root).pow(d.exp);
        }
        p
    }

    /// Multiplicative inverse. Supported when the numerator splits into
    /// linear factors in a single variable over the coefficient field.
    pub fn inv(&self) -> Result<MRat> {
        let f = self.field();
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let den_poly = self.den_poly(&self.den);
        if let Some(c) = self.num.as_constant() {
            let ci = f.inv(c).expect("nonzero");
            return Ok(MRat { num: den_poly.scale(ci), den: Vec::new() });
        }
        let vars = self.num.support();
        if vars.len() == 1 {
            let v = vars[0];
            let p = self.num.to_univariate(v).expect("single variable");
            let roots = crate::field::roots_in_field(f, p.coeffs())?;
            if roots.len() == p.degree().unwrap_or(0) {
                let lead_inv = f.inv(p.lead()).expect("nonzero");
                let den = roots.iter().map(|&r| LinFactor { var: v, root: r, exp: 1 }).collect();
                return Ok(MRat::new(den_poly.scale(lead_inv), den));
            }
        }
        Err(Error::NotInvertible(format!("numerator {:?} does not split into linear factors", self.num)))
    }

    pub fn div(&self, other: &MRat) -> Result<MRat> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, n: u32) -> MRat {
        let den = self.den.iter().map(|d| LinFactor { exp: d.exp * n, ..*d }).collect();
        MRat { num: self.num.pow(n), den }
    }

    /// Raises field constants (including denominator roots) to `base^k`,
    /// leaving the variables fixed.
    pub fn map_coeffs_frobenius(&self, base: u32, k: u32) -> MRat {
        let f = self.field();
        let den = self
            .den
            .iter()
            .map(|d| LinFactor { root: f.frobenius(d.root, base, k), ..*d })
            .collect();
        MRat::new(self.num.map_coeffs_frobenius(base, k), den)
    }

    /// Substitutes `v = a`; errors at a pole.
    pub fn eval_var(&self, v: usize, a: Elem) -> Result<MRat> {
        let f = self.field();
        let mut scale = 1;
        let mut den = Vec::new();
        for d in &self.den {
            if d.var == v {
                let diff = f.sub(a, d.root);
                let inv = f.inv(diff).ok_or_else(|| Error::DivisionByZero)?;
                scale = f.mul(scale, f.pow(inv, d.exp as i64).expect("nonzero"));
            } else {
                den.push(*d);
            }
        }
        Ok(MRat::new(self.num.eval_var(v, a).scale(scale), den))
    }

    pub fn format(&self, names: &[String]) -> String {
        let num = self.num.format(names);
        if self.den.is_empty() {
            return num;
        }
        let den: Vec<String> = self
            .den
            .iter()
            .map(|d| {
                let base = format!("({}-{})", names.get(d.var).map(String::as_str).unwrap_or("?"), d.root);
                if d.exp == 1 {
                    base
                } else {
                    format!("{base}^{}", d.exp)
                }
            })
            .collect();
        format!("({num})/{}", den.join("*"))
    }

    pub fn parse(field: &Field, names: &[String], text: &str) -> Result<MRat> {
        let text = text.trim();
        let Some(idx) = text.find(")/") else {
            return Ok(MPoly::parse(field, names, text)?.into());
        };
        let num_text = text[..idx].trim().strip_prefix('(').ok_or_else(|| Error::Parse(format!("bad numerator in {text:?}")))?;
        let num = MPoly::parse(field, names, num_text)?;
        let mut den = Vec::new();
        for part in text[idx + 2..].split('*') {
            let part = part.trim();
            let (body, exp) = match part.rsplit_once(")^") {
                Some((b, e)) => (b, e.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in {part:?}")))?),
                None => (part.strip_suffix(')').ok_or_else(|| Error::Parse(format!("bad factor {part:?}")))?, 1),
            };
            let body = body.strip_prefix('(').ok_or_else(|| Error::Parse(format!("bad factor {part:?}")))?;
            let (name, root) = body.split_once('-').ok_or_else(|| Error::Parse(format!("bad factor {part:?}")))?;
            let var = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
            let root: u32 = root.parse().map_err(|_| Error::Parse(format!("bad root in {part:?}")))?;
            if !field.contains(root) {
                return Err(Error::Parse(format!("element code {root} out of range")));
            }
            den.push(LinFactor { var, root, exp });
        }
        Ok(MRat::new(num, den))
    }
}

/// Least common multiple of two canonical denominators, with the cofactors.
fn lcm_den(a: &[LinFactor], b: &[LinFactor]) -> (Vec<LinFactor>, Vec<LinFactor>, Vec<LinFactor>) {
    let mut lcm = Vec::new();
    let mut ca = Vec::new();
    let mut cb = Vec::new();
    let (mut i, mut j) = (0, 0);
    let key = |d: &LinFactor| (d.var, d.root);
    while i < a.len() || j < b.len() {
        let ord = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => key(x).cmp(&key(y)),
            (Some(_), None) => std::cmp::Ordering::Less,
            _ => std::cmp::Ordering::Greater,
        };
        match ord {
            std::cmp::Ordering::Less => {
                lcm.push(a[i]);
                cb.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                lcm.push(b[j]);
                ca.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let (x, y) = (a[i], b[j]);
                lcm.push(LinFactor { exp: x.exp.max(y.exp), ..x });
                if y.exp > x.exp {
                    ca.push(LinFactor { exp: y.exp - x.exp, ..x });
                } else if x.exp > y.exp {
                    cb.push(LinFactor { exp: x.exp - y.exp, ..x });
                }
                i += 1;
                j += 1;
            }
        }
    }
    (lcm, ca, cb)
}

impl Add for &MRat {
    type Output = MRat;
    fn add(self, rhs: &MRat) -> MRat {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            return MRat::new(&self.num + &rhs.num, self.den.clone());
        }
        let (lcm, ca, cb) = lcm_den(&self.den, &rhs.den);
        let na = &self.num * &self.den_poly(&ca);
        let nb = &rhs.num * &rhs.den_poly(&cb);
        MRat::new(&na + &nb, lcm)
    }
}

impl Sub for &MRat {
    type Output = MRat;
    fn sub(self, rhs: &MRat) -> MRat {
        self + &(-rhs)
    }
}

impl Neg for &MRat {
    type Output = MRat;
    fn neg(self) -> MRat {
        MRat { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &MRat {
    type Output = MRat;
    fn mul(self, rhs: &MRat) -> MRat {
        if self.is_zero() || rhs.is_zero() {
            return MRat::zero(self.field());
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(c);
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(c);
        }
        let num = &self.num * &rhs.num;
        if self.den.is_empty() && rhs.den.is_empty() {
            return MRat { num, den: Vec::new() };
        }
        let mut den = self.den.clone();
        den.extend_from_slice(&rhs.den);
        MRat::new(num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn names() -> Vec<String> {
        vec!["t".into(), "z".into()]
    }

    fn f5() -> Field {
        Field::new(5, 1).unwrap()
    }

    fn mpoly_strategy() -> impl Strategy<Value = Vec<(u32, u32, u32)>> {
        proptest::collection::vec((0u32..3, 0u32..3, 0u32..5), 0..5)
    }

    fn build(f: &Field, spec: &[(u32, u32, u32)]) -> MPoly {
        MPoly::from_terms(f, spec.iter().map(|&(a, b, c)| (mono_var(0, a) + mono_var(1, b), c)).collect())
    }

    #[test]
    fn linear_division_roundtrip() {
        let f = f5();
        let p = build(&f, &[(2, 1, 3), (0, 0, 1), (1, 2, 4)]);
        let q = &p * &MPoly::linear(&f, 0, 3);
        assert_eq!(q.div_linear(0, 3).unwrap(), p);
        assert!(p.div_linear(0, 3).is_err() || p.eval_var(0, 3).is_zero());
    }

    #[test]
    fn cancellation_is_canonical() {
        let f = f5();
        let lin = MPoly::linear(&f, 1, 2);
        let r = MRat::new(&lin * &MPoly::monomial(&f, 3, 0, 1), vec![LinFactor { var: 1, root: 2, exp: 2 }]);
        assert_eq!(r.den(), &[LinFactor { var: 1, root: 2, exp: 1 }]);
        assert_eq!(r.num(), &MPoly::monomial(&f, 3, 0, 1));
    }

    #[test]
    fn inverse_of_split_numerator() {
        let f = f5();
        let num = &MPoly::linear(&f, 0, 1) * &MPoly::linear(&f, 0, 4);
        let r: MRat = num.into();
        let inv = r.inv().unwrap();
        assert_eq!(&r * &inv, MRat::one(&f));
        let irreducible: MRat = MPoly::from_terms(&f, vec![(mono_var(0, 2), 1), (0, 2)]).into();
        assert!(irreducible.inv().is_err());
    }

    #[test]
    fn text_roundtrip_example() {
        let f = Field::new(2, 2).unwrap();
        let r = MRat::new(build(&f, &[(1, 0, 3), (0, 2, 1), (0, 0, 2)]), vec![LinFactor { var: 1, root: 2, exp: 3 }]);
        let s = r.format(&names());
        assert_eq!(MRat::parse(&f, &names(), &s).unwrap(), r);
        assert!(MRat::parse(&f, &names(), "(t)/(w-1)").is_err());
    }

    proptest! {
        #[test]
        fn mrat_ring_laws(a in mpoly_strategy(), b in mpoly_strategy(), ra in 0u32..5, rb in 0u32..5, ea in 0u32..3) {
            let f = f5();
            let x = MRat::new(build(&f, &a), vec![LinFactor { var: 1, root: ra, exp: ea }]);
            let y = MRat::new(build(&f, &b), vec![LinFactor { var: 0, root: rb, exp: 1 }]);
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&x * &(&x + &y), &(&x * &x) + &(&x * &y));
        }

        #[test]
        fn text_roundtrip(a in mpoly_strategy(), r in 0u32..5, e in 0u32..3) {
            let f = f5();
            let x = MRat::new(build(&f, &a), vec![LinFactor { var: 0, root: r, exp: e }]);
            prop_assert_eq!(MRat::parse(&f, &names(), &x.format(&names())).unwrap(), x);
        }
    }
}
