//! Artifacts behind `shtuka compute`.

use serde_json::{json, Map, Value};
use shtuka::carlitz::{omega_carlitz, pi_tilde_product, theta_context, CarlitzContext};
use shtuka::genus0::{enumerate_ideals, GenusZeroContext};
use shtuka::lseries::{lseries_operator, pellarin_l, special_value_sum, ReconBounds, ReconOutcome};
use shtuka::series::TateSeries;

use crate::config::{Format, RunConfig};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Object {
    Omega,
    PiTilde,
    GaussSum,
    Lseries,
    LseriesOperator,
    ExpCoeffs,
    IdealTable,
    SpecialValue,
}

/// A computed artifact: the rendered file plus a one-line summary.
pub struct Artifact {
    pub body: String,
    pub summary: String,
}

fn series_body(s: &TateSeries, format: Format) -> String {
    match format {
        Format::Json => pretty(&s.to_json()),
        Format::Csv => {
            let names = s.ctx().vars();
            let mut out = String::from("exponent,coefficient\n");
            for (e, c) in s.terms() {
                out.push_str(&format!("{e},\"{}\"\n", c.format(names)));
            }
            out
        }
        Format::Text => format!("{s:?}\n"),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn precision_text(s: &TateSeries) -> String {
    if s.is_exact() {
        "exact".into()
    } else {
        format!("certified to u^{}", s.prec())
    }
}

fn genus0(cfg: &RunConfig) -> Result<GenusZeroContext, CliError> {
    Ok(GenusZeroContext::new(cfg.q, &cfg.pinf)?)
}

/// `v` in units of `π`, written as a reduced fraction.
fn pi_units(v: i64, big_q: i64) -> String {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    let g = gcd(v, big_q).max(1);
    if big_q / g == 1 {
        format!("{}", v / g)
    } else {
        format!("{}/{}", v / g, big_q / g)
    }
}

fn single_series(s: TateSeries, cfg: &RunConfig, what: &str) -> Artifact {
    let summary = match s.valuation() {
        Ok(v) => format!("{what}: valuation {v} in u ({} in π), {}", pi_units(v, cfg.big_q()), precision_text(&s)),
        Err(_) => format!("{what}: zero at precision, {}", precision_text(&s)),
    };
    Artifact { body: series_body(&s, cfg.format), summary }
}

pub fn compute(object: Object, cfg: &RunConfig) -> Result<Artifact, CliError> {
    let n = cfg.precision;
    match object {
        Object::Omega => {
            let s = if cfg.d() == 1 {
                omega_carlitz(&theta_context(cfg.q, &["t"])?, n)?
            } else {
                genus0(cfg)?.series_image(n + 8)?.omega(n)?
            };
            Ok(single_series(s, cfg, "ω"))
        }
        Object::PiTilde => {
            let s = if cfg.d() == 1 {
                pi_tilde_product(&theta_context(cfg.q, &[])?, n)?
            } else {
                genus0(cfg)?.series_image(n + 8)?.pi_tilde(n)?.0.pi_tilde
            };
            Ok(single_series(s, cfg, "π̃"))
        }
        Object::GaussSum => {
            let s = CarlitzContext::new(cfg.q, &cfg.pinf)?.gauss_sum(n)?;
            Ok(single_series(s, cfg, "g"))
        }
        Object::Lseries => {
            if cfg.d() != 1 {
                return Err(CliError::Usage("lseries needs a degree-one place; use lseries-operator".into()));
            }
            let l = pellarin_l(cfg.q, cfg.vars, cfg.degree, n)?;
            let mut a = single_series(l.series, cfg, "L");
            a.summary = format!("L_{}: degree cutoff {}, certified to u^{}", cfg.vars, cfg.degree, l.certified);
            Ok(a)
        }
        Object::LseriesOperator => {
            let c = genus0(cfg)?;
            let v = lseries_operator(&c, cfg.vars, cfg.degree, n)?;
            let mut comps = Map::new();
            for (g, s) in &v.components {
                comps.insert(format!("k{}_eta{}", g.k, g.eta), s.to_json());
            }
            let body = json!({
                "parameters": {"q": cfg.q, "pinf": cfg.pinf, "s": cfg.vars, "D": cfg.degree, "N": n},
                "certified_precision": v.certified,
                "tail_constant": v.tail_constant,
                "components": comps,
            });
            let summary = format!("{} components, certified to u^{}", v.components.len(), v.certified);
            Ok(Artifact { body: render_value(&body, cfg.format), summary })
        }
        Object::ExpCoeffs => {
            let c = genus0(cfg)?;
            let e = c.exp_coeffs_phi(cfg.degree)?;
            let coeffs: Vec<String> = e.closed.iter().map(|k| k.format()).collect();
            let body = match cfg.format {
                Format::Csv => {
                    let mut out = String::from("i,e_i\n");
                    for (i, s) in coeffs.iter().enumerate() {
                        out.push_str(&format!("{i},\"{s}\"\n"));
                    }
                    out
                }
                Format::Text => coeffs.iter().enumerate().map(|(i, s)| format!("e_{i} = {s}\n")).collect(),
                Format::Json => pretty(&json!({"q": cfg.q, "pinf": cfg.pinf, "coefficients": coeffs, "agree": e.agree()})),
            };
            let summary = format!("e_0 … e_{}: exact, both computations agree: {}", cfg.degree, e.agree());
            Ok(Artifact { body, summary })
        }
        Object::IdealTable => {
            let c = genus0(cfg)?;
            let ideals = enumerate_ideals(&c, cfg.degree);
            let mut rows = Vec::new();
            for i in &ideals {
                let (phi, _) = c.ideal_skew(i)?;
                let deg_tau = phi.degree().unwrap_or(0);
                rows.push((i.degree(), i.class(&c), deg_tau, format!("{:?}", i.m()), i.j()));
            }
            let body = match cfg.format {
                Format::Json => pretty(&Value::Array(
                    rows.iter()
                        .map(|r| json!({"deg": r.0, "class": r.1, "deg_tau_phi": r.2, "m": r.3, "j": r.4}))
                        .collect(),
                )),
                _ => {
                    let mut out = String::from("deg,class,deg_tau_phi,m,j\n");
                    for r in &rows {
                        out.push_str(&format!("{},{},{},\"{}\",{}\n", r.0, r.1, r.2, r.3, r.4));
                    }
                    out
                }
            };
            Ok(Artifact { body, summary: format!("{} ideals of degree ≤ {}: exact", rows.len(), cfg.degree) })
        }
        Object::SpecialValue => {
            let c = genus0(cfg)?;
            let lo = cfg.degree.saturating_sub(2);
            let cutoffs = if lo == cfg.degree { vec![cfg.degree] } else { vec![lo, cfg.degree] };
            let rep = special_value_sum(&c, cfg.n, &cutoffs, n, None, ReconBounds { num: 2, den: 2, vars: 0 })?;
            let rows: Vec<Value> = rep
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "D": r.max_deg,
                        "tail_bound": r.tail_bound,
                        "observed_tail": r.observed_tail,
                        "certified_precision": r.certified,
                        "value": r.value.to_json(),
                        "reconstruction": match &r.reconstruction {
                            ReconOutcome::NotFound => json!({"found": false}),
                            ReconOutcome::Underdetermined => json!({"found": false, "underdetermined": true}),
                            ReconOutcome::Found(x) => json!({
                                "found": true,
                                "num": x.num.iter().map(|p| p.format(&[])).collect::<Vec<_>>(),
                                "den": x.den.iter().map(|p| p.format(&[])).collect::<Vec<_>>(),
                                "residual_valuation": x.residual_valuation,
                            }),
                        },
                    })
                })
                .collect();
            let body = json!({
                "parameters": {"q": cfg.q, "pinf": cfg.pinf, "n": cfg.n, "N": n},
                "b": "1",
                "tail_constant": rep.tail_constant,
                "layer_valuations": rep.layer_valuations,
                "rows": rows,
            });
            let certified = rep.rows.last().map_or(0, |r| r.certified);
            let summary = format!("special value n = {}, certified to u^{certified}", cfg.n);
            Ok(Artifact { body: render_value(&body, cfg.format), summary })
        }
    }
}

fn render_value(v: &Value, format: Format) -> String {
    match format {
        Format::Json | Format::Csv => pretty(v),
        Format::Text => format!("{v:#}\n"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_unit_fractions() {
        assert_eq!(pi_units(-3, 2), "-3/2");
        assert_eq!(pi_units(-4, 2), "-2");
        assert_eq!(pi_units(0, 3), "0");
    }
}
