//! Ideal-indexed sums over a [`GenusZeroContext`].

use std::collections::BTreeMap;

use super::{rational_reconstruct, ReconBounds, Reconstruction};
use crate::error::{Error, Result};
use crate::genus0::{enumerate_ideals, GaloisElem, GenusZeroContext, Kum};
use crate::series::{SeriesContext, TateSeries, EXACT};

/// `Σ_{deg I ≤ D} ∏_k ρ_k(u_I)/ψ_φ(I) · σ_I`, one series per `σ`.
#[derive(Clone, Debug)]
pub struct LSeriesValue {
    pub s: usize,
    pub max_deg: u32,
    /// Variables `z1, …, zs`.
    pub vctx: SeriesContext,
    /// Components in the order of `galois_elements`; absent `σ` are zero.
    pub components: Vec<(GaloisElem, TateSeries)>,
    /// Slope `Q/d` of the term valuation per degree.
    pub slope_num: i64,
    pub slope_den: i64,
    /// Largest observed `deg I · Q/d - v(term_I)`.
    pub tail_constant: i64,
    /// Lowest term valuation per degree `0..=D`.
    pub layer_valuations: Vec<i64>,
    /// Precision covered by the tail bound and the working precision.
    pub certified: i64,
}

impl LSeriesValue {
    pub fn component(&self, s: GaloisElem) -> Option<&TateSeries> {
        self.components.iter().find(|c| c.0 == s).map(|c| &c.1)
    }

    /// Lower bound on the valuation of all terms of degree `> D`.
    pub fn tail_bound(&self) -> i64 {
        (self.max_deg as i64 + 1) * self.slope_num / self.slope_den - self.tail_constant
    }

    /// Whether the deepest layer respects the constant measured on the
    /// shallower ones, which is what extrapolating the tail bound assumes.
    pub fn tail_constant_stable(&self) -> bool {
        let c = |k: usize, v: i64| k as i64 * self.slope_num / self.slope_den - v;
        let (last, rest) = match self.layer_valuations.split_last() {
            Some(x) => x,
            None => return true,
        };
        let prior = rest.iter().enumerate().filter(|e| *e.1 != i64::MAX).map(|(k, &v)| c(k, v)).max().unwrap_or(0).max(0);
        *last == i64::MAX || c(rest.len(), *last) <= prior
    }
}

fn zvars(s: usize) -> Vec<String> {
    if s == 1 {
        vec!["z".into()]
    } else {
        (1..=s).map(|i| format!("z{i}")).collect()
    }
}

/// Certified precision from the measured tail constant.
fn certify(max_deg: u32, slope_num: i64, slope_den: i64, tail_constant: i64, n: i64) -> i64 {
    ((max_deg as i64 + 1) * slope_num).div_euclid(slope_den).saturating_sub(tail_constant).min(n)
}

/// The twisted L-series operator, summed over integral ideals of degree
/// `≤ max_deg` and truncated at `u`-precision `n`.
pub fn lseries_operator(ctx: &GenusZeroContext, s: usize, max_deg: u32, n: i64) -> Result<LSeriesValue> {
    if s == 0 || s > crate::mpoly::MAX_VARS {
        return Err(Error::InvalidParameter(format!("number of variables must be in 1..={}", crate::mpoly::MAX_VARS)));
    }
    let names = zvars(s);
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let vctx = ctx.series_ctx().with_vars(&refs)?;
    let img = ctx.series_image(n)?;
    let table = ctx.psi_table()?;
    let big_q = ctx.big_q();
    let d = ctx.d() as i64;
    let mut sums: BTreeMap<(u32, u32), TateSeries> = BTreeMap::new();
    let mut layers = vec![i64::MAX; max_deg as usize + 1];
    let mut tail_constant = i64::MIN;
    for ideal in enumerate_ideals(ctx, max_deg) {
        let data = ctx.ideal_data(&ideal)?;
        let sigma = table.artin(&ideal)?;
        let mut term = img.kum(&data.psi)?.truncate(n).inv()?.with_ctx(&vctx);
        for k in 0..s {
            term = term.mul(&img.hz_in(&data.u, &vctx, k)?)?;
        }
        let term = term.truncate(n);
        let deg = ideal.degree();
        if let Ok(v) = term.valuation() {
            layers[deg as usize] = layers[deg as usize].min(v);
            tail_constant = tail_constant.max(deg as i64 * big_q / d - v);
        }
        let slot = sums.entry((sigma.k, sigma.eta)).or_insert_with(|| TateSeries::zero(&vctx, EXACT));
        *slot = slot.add(&term)?;
    }
    let tail_constant = tail_constant.max(0);
    let certified = certify(max_deg, big_q, d, tail_constant, n);
    if certified <= 0 {
        return Err(Error::InsufficientPrecision(format!("degree cutoff {max_deg} certifies no coefficient")));
    }
    let components = ctx
        .galois_elements()
        .into_iter()
        .filter_map(|g| sums.get(&(g.k, g.eta)).map(|v| (g, v.truncate(certified))))
        .collect();
    Ok(LSeriesValue {
        s,
        max_deg,
        vctx,
        components,
        slope_num: big_q,
        slope_den: d,
        tail_constant,
        layer_valuations: layers,
        certified,
    })
}

impl LSeriesValue {
    /// The restriction to `Gal(H_A/K)`: the sum of the components with
    /// trivial class part should be a unit (valuation 0, nonzero constant
    /// term), the others of positive valuation.
    pub fn restriction_is_unit(&self) -> Result<bool> {
        let mut triv = TateSeries::zero(&self.vctx, EXACT);
        let mut others_ok = true;
        let mut by_class: BTreeMap<u32, TateSeries> = BTreeMap::new();
        for (g, v) in &self.components {
            let slot = by_class.entry(g.k).or_insert_with(|| TateSeries::zero(&self.vctx, EXACT));
            *slot = slot.add(v)?;
        }
        for (k, v) in by_class {
            if k == 0 {
                triv = v;
            } else if v.valuation().map_or(false, |x| x <= 0) {
                others_ok = false;
            }
        }
        Ok(others_ok && triv.valuation().ok() == Some(0) && !triv.coeff(0).is_zero())
    }
}

/// One partial sum of [`special_value_sum`].
#[derive(Clone, Debug)]
pub struct SpecialValueRow {
    pub max_deg: u32,
    /// `Σ_{deg I ≤ D} σ_I(b)/ψ_φ(I)^n`.
    pub partial: TateSeries,
    /// The partial sum divided by `π̃^n`.
    pub value: TateSeries,
    /// Lower bound for the terms of degree `> D`.
    pub tail_bound: i64,
    /// `v(S_{D_max} - S_D)`, observed against the deepest sum.
    pub observed_tail: Option<i64>,
    pub certified: i64,
    pub reconstruction: ReconOutcome,
}

/// Result of reconstructing one partial sum.
#[derive(Clone, Debug)]
pub enum ReconOutcome {
    Found(Reconstruction),
    NotFound,
    /// Too few certified coefficients for the degree bounds.
    Underdetermined,
}

impl ReconOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, ReconOutcome::Found(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            ReconOutcome::Found(_) => "found",
            ReconOutcome::NotFound => "not found",
            ReconOutcome::Underdetermined => "under-determined",
        }
    }
}

/// Partial sums for several cutoffs and their reconstruction over `H_A`.
#[derive(Clone, Debug)]
pub struct SpecialValueReport {
    pub n: u32,
    pub rows: Vec<SpecialValueRow>,
    pub tail_constant: i64,
    /// Valuation of the sum over ideals of each exact degree; `None` when it
    /// vanishes to the working precision. Cancellation makes these much
    /// larger than the termwise bound.
    pub layer_valuations: Vec<Option<i64>>,
}

impl SpecialValueReport {
    /// Tail bounds increase strictly with `D`.
    pub fn tails_increase(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].tail_bound > w[0].tail_bound)
    }

    /// The last two rows reconstruct to the same outcome; vacuous when
    /// either is under-determined.
    pub fn stable(&self) -> bool {
        match self.rows.as_slice() {
            [.., a, b] => match (&a.reconstruction, &b.reconstruction) {
                (ReconOutcome::Underdetermined, _) | (_, ReconOutcome::Underdetermined) => true,
                (ReconOutcome::NotFound, ReconOutcome::NotFound) => true,
                (ReconOutcome::Found(x), ReconOutcome::Found(y)) => x.num == y.num && x.den == y.den,
                _ => false,
            },
            _ => true,
        }
    }
}

/// `Σ_I σ_I(b)/ψ_φ(I)^n / π̃^n` over ideals of degree `≤ D` for each `D` in
/// `cutoffs`, with `b = 1` when not given.
pub fn special_value_sum(
    ctx: &GenusZeroContext,
    n: u32,
    cutoffs: &[u32],
    prec: i64,
    b: Option<&Kum>,
    bounds: ReconBounds,
) -> Result<SpecialValueReport> {
    let big_q = ctx.big_q();
    if n == 0 || n as i64 % big_q != 0 {
        return Err(Error::InvalidParameter(format!("n must be a positive multiple of q^d - 1 = {big_q}")));
    }
    let dmax = *cutoffs.iter().max().ok_or_else(|| Error::InvalidParameter("no cutoffs".into()))?;
    let d = ctx.d() as i64;
    let img = ctx.series_image(prec)?;
    let (period, _) = img.pi_tilde(prec)?;
    let pi_n = period.pi_tilde.pow(n as u64)?;
    let shift = -pi_n.valuation()?;
    let mut table = ctx.psi_table()?;
    let one = Kum::one(ctx);
    let b = b.unwrap_or(&one);
    let sctx = ctx.series_ctx();
    let mut layers: Vec<TateSeries> = vec![TateSeries::zero(sctx, EXACT); dmax as usize + 1];
    let mut tail_constant = 0i64;
    for ideal in enumerate_ideals(ctx, dmax) {
        let psi = table.psi(&ideal)?;
        let sigma = table.artin(&ideal)?;
        let num = img.kum(&ctx.act(sigma, b))?;
        let term = num.truncate(prec).div(&img.kum(&psi)?.truncate(prec).pow(n as u64)?)?.truncate(prec);
        let deg = ideal.degree();
        if let Ok(v) = term.valuation() {
            tail_constant = tail_constant.max(deg as i64 * n as i64 * big_q / d - v);
        }
        layers[deg as usize] = layers[deg as usize].add(&term)?;
    }
    let mut partials = Vec::new();
    let mut acc = TateSeries::zero(sctx, EXACT);
    for layer in &layers {
        acc = acc.add(layer)?;
        partials.push(acc.clone());
    }
    let deepest = partials[dmax as usize].clone();
    let xgen = img.x().clone();
    let mut rows = Vec::new();
    let mut sorted = cutoffs.to_vec();
    sorted.sort_unstable();
    for &dc in &sorted {
        let partial = partials[dc as usize].clone();
        let tail_bound = certify(dc, n as i64 * big_q, d, tail_constant, i64::MAX);
        let certified = tail_bound.min(prec);
        let observed_tail = if dc < dmax { deepest.sub(&partial)?.valuation().ok() } else { None };
        let value = partial.truncate(certified).div(&pi_n)?;
        let reconstruction = if certified + shift <= 0 {
            ReconOutcome::Underdetermined
        } else {
            match rational_reconstruct(&value, &xgen.truncate(value.prec()), bounds) {
                Ok(Some(r)) => ReconOutcome::Found(r),
                Ok(None) => ReconOutcome::NotFound,
                Err(Error::InsufficientPrecision(_)) => ReconOutcome::Underdetermined,
                Err(e) => return Err(e),
            }
        };
        rows.push(SpecialValueRow { max_deg: dc, partial, value, tail_bound, observed_tail, certified, reconstruction });
    }
    let layer_valuations = layers.iter().map(|l| l.valuation().ok()).collect();
    Ok(SpecialValueReport { n, rows, tail_constant, layer_valuations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lseries::pellarin_l;
    use crate::mpoly::{mono_exp, MRat};

    #[test]
    fn operator_degree_zero_is_identity() {
        let c = GenusZeroContext::new(2, &[1, 1, 1]).unwrap();
        let v = lseries_operator(&c, 1, 0, 24);
        // the tail bound at D = 0 certifies at most Q/d coefficients
        let v = v.unwrap();
        assert_eq!(v.components.len(), 1);
        assert_eq!(v.components[0].0, c.galois_identity());
        let one = TateSeries::one(&v.vctx).truncate(v.certified);
        assert_eq!(v.components[0].1, one);
    }

    #[test]
    fn operator_matches_pellarin_for_degree_one() {
        // P_∞ = x - 1: θ = 1/(x - 1), and ρ(θ) = 1/(z - 1) plays the role of t
        let c = GenusZeroContext::new(2, &[1, 1]).unwrap();
        let v = lseries_operator(&c, 1, 4, 40).unwrap();
        assert_eq!(v.components.len(), 1);
        let l = pellarin_l(2, 1, 4, 40).unwrap();
        let f = c.field();
        let zeta = c.zeta();
        let mapped = l
            .series
            .map_coeffs(|r| {
                let mut acc = MRat::zero(f);
                for &(m, a) in r.num().terms() {
                    let e = mono_exp(m, 0);
                    let t = MRat::inv_linear(f, 0, zeta, e).scale(a);
                    acc = &acc + &t;
                }
                Ok(acc)
            })
            .unwrap()
            .with_ctx(&v.vctx);
        let prec = v.certified.min(l.certified);
        let diff = mapped.sub(&v.components[0].1).unwrap().truncate(prec);
        assert!(prec > 4);
        assert!(diff.is_zero_at_precision(), "{diff:?}");
    }

    #[test]
    fn operator_components_and_unit() {
        let c = GenusZeroContext::new(2, &[1, 1, 1]).unwrap();
        let v = lseries_operator(&c, 3, 2, 24).unwrap();
        assert_eq!(v.components.len(), c.galois_order());
        assert!(v.tail_constant_stable(), "{:?} C={}", v.layer_valuations, v.tail_constant);
        assert!(v.restriction_is_unit().unwrap());
    }

    #[test]
    fn special_value_degree_zero() {
        let c = GenusZeroContext::new(2, &[1, 1]).unwrap();
        let rep = special_value_sum(&c, 1, &[0, 2], 32, None, ReconBounds { num: 0, den: 0, vars: 0 }).unwrap();
        assert_eq!(rep.rows[0].partial, TateSeries::one(c.series_ctx()).truncate(32));
        assert!(rep.tails_increase());
        assert!(special_value_sum(&c, 0, &[1], 16, None, ReconBounds { num: 0, den: 0, vars: 0 }).is_err());
    }
}
