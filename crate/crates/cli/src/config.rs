//! Run configuration: a `key = value` file overlaid with command-line flags.

use std::fmt;
use std::path::PathBuf;

use shtuka::series::prime_power;

/// Output encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
        })
    }
}

/// Values that may come from either source; `None` means unset.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub q: Option<u32>,
    pub pinf: Option<String>,
    pub precision: Option<i64>,
    pub degree: Option<u32>,
    pub vars: Option<usize>,
    pub n: Option<u32>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

/// A validated configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub q: u32,
    pub p: u32,
    pub e: u32,
    /// Coefficients of `P_∞`, constant term first.
    pub pinf: Vec<u32>,
    pub precision: i64,
    pub degree: u32,
    pub vars: usize,
    /// Exponent for special values; defaults to `q^d - 1`.
    pub n: u32,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn d(&self) -> u32 {
        self.pinf.len() as u32 - 1
    }

    pub fn big_q(&self) -> i64 {
        (self.q as i64).pow(self.d()) - 1
    }
}

/// A configuration problem, naming the offending field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

fn err(field: &str, message: impl Into<String>) -> ConfigError {
    ConfigError { field: field.into(), message: message.into() }
}

fn parse_num<T: std::str::FromStr>(field: &str, v: &str) -> Result<T, ConfigError> {
    v.trim().parse().map_err(|_| err(field, format!("cannot parse '{}'", v.trim())))
}

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_config_text(text: &str) -> Result<Overrides, ConfigError> {
    let mut o = Overrides::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| err(&format!("line {}", lineno + 1), "expected key = value"))?;
        let (k, v) = (k.trim(), v.trim());
        match k {
            "q" => o.q = Some(parse_num(k, v)?),
            "pinf" => o.pinf = Some(v.to_string()),
            "precision" | "N" => o.precision = Some(parse_num("precision", v)?),
            "degree" | "D" => o.degree = Some(parse_num("degree", v)?),
            "vars" | "s" => o.vars = Some(parse_num("vars", v)?),
            "n" => o.n = Some(parse_num(k, v)?),
            "format" => {
                o.format = Some(match v {
                    "json" => Format::Json,
                    "csv" => Format::Csv,
                    "text" => Format::Text,
                    _ => return Err(err("format", format!("unknown format '{v}'"))),
                })
            }
            "out" => o.out = Some(PathBuf::from(v)),
            _ => return Err(err(k, "unknown configuration key")),
        }
    }
    Ok(o)
}

/// `later` wins wherever it is set.
pub fn merge(base: Overrides, later: Overrides) -> Overrides {
    Overrides {
        q: later.q.or(base.q),
        pinf: later.pinf.or(base.pinf),
        precision: later.precision.or(base.precision),
        degree: later.degree.or(base.degree),
        vars: later.vars.or(base.vars),
        n: later.n.or(base.n),
        format: later.format.or(base.format),
        out: later.out.or(base.out),
    }
}

/// Parses `"1,1,1"` or `"1 1 1"` (constant term first).
pub fn parse_pinf(text: &str) -> Result<Vec<u32>, ConfigError> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| parse_num("pinf", s))
        .collect()
}

/// Fills defaults and checks every field before any computation runs.
pub fn validate(o: Overrides) -> Result<RunConfig, ConfigError> {
    let q = o.q.unwrap_or(2);
    let (p, e) = prime_power(q).map_err(|_| err("q", format!("{q} is not a prime power")))?;
    let pinf = match &o.pinf {
        Some(t) => parse_pinf(t)?,
        None => vec![q - 1, 1],
    };
    if pinf.len() < 2 {
        return Err(err("pinf", "need a polynomial of degree at least 1"));
    }
    if pinf.last() != Some(&1) {
        return Err(err("pinf", "polynomial must be monic (last coefficient 1)"));
    }
    if let Some(c) = pinf.iter().find(|&&c| c >= q) {
        return Err(err("pinf", format!("coefficient {c} is not an element of F_{q}")));
    }
    let field = shtuka::Field::new(p, e).map_err(|x| err("q", x.to_string()))?;
    if !shtuka::carlitz::is_irreducible(&shtuka::poly::Poly::new(&field, pinf.clone())) {
        return Err(err("pinf", "polynomial is not irreducible over F_q"));
    }
    let precision = o.precision.unwrap_or(64);
    if precision <= 0 {
        return Err(err("precision", "precision must be positive"));
    }
    let degree = o.degree.unwrap_or(3);
    if degree > 24 {
        return Err(err("degree", "degree cutoff above 24 is not supported"));
    }
    let vars = o.vars.unwrap_or(1);
    if vars == 0 || vars > shtuka::mpoly::MAX_VARS {
        return Err(err("vars", format!("number of variables must be in 1..={}", shtuka::mpoly::MAX_VARS)));
    }
    let d = pinf.len() as u32 - 1;
    let big_q = (q as u64).checked_pow(d).filter(|&v| v <= 1 << 20).ok_or_else(|| err("pinf", "q^d is too large"))? - 1;
    let n = o.n.unwrap_or(big_q as u32);
    Ok(RunConfig { q, p, e, pinf, precision, degree, vars, n, format: o.format.unwrap_or(Format::Json), out: o.out })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_file_and_flags_override() {
        let base = parse_config_text("# comment\nq = 3\npinf = 1, 0, 1\nprecision = 40\n").unwrap();
        let flags = Overrides { precision: Some(80), ..Default::default() };
        let c = validate(merge(base, flags)).unwrap();
        assert_eq!((c.q, c.p, c.e, c.d(), c.precision), (3, 3, 1, 2, 80));
        assert_eq!(c.pinf, vec![1, 0, 1]);
        assert_eq!(c.n, 8);
    }

    #[test]
    fn rejects_bad_fields_by_name() {
        let e = validate(Overrides { precision: Some(0), ..Default::default() }).unwrap_err();
        assert_eq!(e.field, "precision");
        assert_eq!(e.message, "precision must be positive");
        assert_eq!(validate(Overrides { q: Some(6), ..Default::default() }).unwrap_err().field, "q");
        let e = validate(Overrides { pinf: Some("1 1 2".into()), ..Default::default() }).unwrap_err();
        assert_eq!(e.field, "pinf");
        assert_eq!(parse_config_text("colour = red").unwrap_err().field, "colour");
        let e = validate(Overrides { pinf: Some("1 0 1".into()), ..Default::default() }).unwrap_err();
        assert_eq!(e.message, "polynomial is not irreducible over F_q");
    }

    #[test]
    fn defaults_to_degree_one_place() {
        let c = validate(Overrides { q: Some(5), ..Default::default() }).unwrap();
        assert_eq!(c.pinf, vec![4, 1]);
        assert_eq!(c.d(), 1);
    }
}
