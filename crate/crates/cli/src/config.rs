//! Run configuration assembled from a key=value file and command-line flags.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use verlinde::labels::parse_real;
use verlinde::semisimple::HeisenbergTheory;
use verlinde::theory::{Kac, SingletTheory, TheoryConfig};
use verlinde::{Error, Rational64, Result, TheoryConfig64, Tolerance64};

/// Keys accepted in a config file; each mirrors the long flag of the same name.
pub const KEYS: &[&str] = &[
    "theory",
    "u",
    "v",
    "p",
    "k",
    "gram",
    "shift",
    "seed",
    "samples",
    "tol-round",
    "tol-limit",
    "format",
    "output",
    "no-timestamp",
    "r-range",
    "s-range",
    "l-range",
    "lam-grid",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => Err(Error::Parse(format!("unknown format {s:?}; expected json, csv or text"))),
        }
    }
}

/// Finite label window for tables of non-rational theories.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Window {
    pub r: Option<(i64, i64)>,
    pub s: Option<(i64, i64)>,
    pub l: Option<(i64, i64)>,
    /// raw grid entries; components of vector weights are separated by ':'
    pub lam: Option<Vec<String>>,
}

impl Window {
    pub fn is_set(&self) -> bool {
        self.r.is_some() || self.s.is_some() || self.l.is_some() || self.lam.is_some()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub theory: TheoryConfig64,
    pub seed: u64,
    pub samples: usize,
    pub tol: Tolerance64,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub timestamp: bool,
    pub window: Window,
    /// cross-check fusion products against quantum dimensions
    pub qdim_check: bool,
}

impl RunConfig {
    pub fn new(theory: TheoryConfig64) -> Self {
        Self {
            theory,
            seed: 42,
            samples: 20,
            tol: Tolerance64::default(),
            format: Format::Text,
            output: None,
            timestamp: true,
            window: Window::default(),
            qdim_check: true,
        }
    }

    pub fn with_format(mut self, format: Format) -> Self {
        self.format = format;
        self
    }

    pub fn without_timestamp(mut self) -> Self {
        self.timestamp = false;
        self
    }

    /// Builds a config from flag-name keyed settings.
    pub fn from_settings(settings: &BTreeMap<String, String>) -> Result<Self> {
        for k in settings.keys() {
            if !KEYS.contains(&k.as_str()) {
                return Err(Error::Parse(format!("unknown setting {k:?}")));
            }
        }
        let get = |k: &str| settings.get(k).map(String::as_str);
        let theory = build_theory(get("theory"), &get)?;
        let mut cfg = RunConfig::new(theory);
        if let Some(s) = get("seed") {
            cfg.seed = parse_int(s, "seed")?;
        }
        if let Some(s) = get("samples") {
            cfg.samples = parse_int(s, "samples")?;
            if cfg.samples == 0 {
                return Err(Error::Parse("samples must be at least 1".into()));
            }
        }
        let mut tol = Tolerance64::default();
        if let Some(s) = get("tol-round") {
            tol.eps_round = parse_real(s)?;
        }
        if let Some(s) = get("tol-limit") {
            tol.eps_limit = parse_real(s)?;
        }
        cfg.tol = Tolerance64::new(tol.eps_round, tol.eps_limit, tol.eps_exclusion).map_err(|e| Error::Parse(e.to_string()))?;
        if let Some(s) = get("format") {
            cfg.format = s.parse()?;
        }
        cfg.output = get("output").map(PathBuf::from);
        if let Some(s) = get("no-timestamp") {
            cfg.timestamp = !parse_bool(s)?;
        }
        cfg.window = Window {
            r: get("r-range").map(|s| parse_range(s, "r-range")).transpose()?,
            s: get("s-range").map(|s| parse_range(s, "s-range")).transpose()?,
            l: get("l-range").map(|s| parse_range(s, "l-range")).transpose()?,
            lam: get("lam-grid").map(|s| s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect()),
        };
        Ok(cfg)
    }
}

/// Parses `key = value` lines; blank lines and `#` comments are skipped.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("config line {}: expected key=value", i + 1)))?;
        let k = k.trim().to_string();
        if !KEYS.contains(&k.as_str()) {
            return Err(Error::Parse(format!("config line {}: unknown key {k:?}", i + 1)));
        }
        out.insert(k, v.trim().to_string());
    }
    Ok(out)
}

fn build_theory<'a>(name: Option<&str>, get: &impl Fn(&str) -> Option<&'a str>) -> Result<TheoryConfig64> {
    let name = name.ok_or_else(|| Error::Parse("missing --theory (minimal, heisenberg, pi0, singlet or sl2)".into()))?;
    match name {
        "minimal" => Ok(TheoryConfig::Minimal(kac(get)?)),
        "pi0" => Ok(TheoryConfig::Pi0(kac(get)?)),
        "sl2" => Ok(TheoryConfig::Sl2(kac(get)?)),
        "singlet" => {
            let p = get("p").ok_or_else(|| Error::Parse("singlet needs --p".into()))?;
            Ok(TheoryConfig::Singlet(SingletTheory::new(parse_int(p, "p")?).map_err(as_parse)?))
        }
        "heisenberg" => {
            let shift = get("shift").map(parse_list).transpose()?;
            let gram = get("gram").map(parse_matrix).transpose()?;
            let h = match (gram, shift) {
                (None, None) => Ok(HeisenbergTheory::standard_rank_one()),
                (Some(m), b) => {
                    let n = (m.len() as f64).sqrt() as usize;
                    HeisenbergTheory::new(m, b.unwrap_or_else(|| vec![0.0; n]))
                }
                (None, Some(b)) => {
                    let n = b.len();
                    let m = (0..n * n).map(|i| if i / n == i % n { 1.0 } else { 0.0 }).collect();
                    HeisenbergTheory::new(m, b)
                }
            };
            Ok(TheoryConfig::Heisenberg(h.map_err(as_parse)?))
        }
        _ => Err(Error::Parse(format!("unknown theory {name:?}"))),
    }
}

/// (u, v) from --u/--v or from the level k = −2 + u/v.
fn kac<'a>(get: &impl Fn(&str) -> Option<&'a str>) -> Result<Kac> {
    let from_k = get("k")
        .map(|k| {
            let q = Rational64::from_str(k.trim()).map_err(|_| Error::Parse(format!("bad level k = {k:?}")))?;
            let t = q + Rational64::from_integer(2);
            Ok::<_, Error>((*t.numer(), *t.denom()))
        })
        .transpose()?;
    let uv = match (get("u"), get("v")) {
        (Some(u), Some(v)) => Some((parse_int(u, "u")?, parse_int(v, "v")?)),
        (None, None) => None,
        _ => return Err(Error::Parse("--u and --v must be given together".into())),
    };
    let (u, v) = match (uv, from_k) {
        (Some(a), Some(b)) if a != b => return Err(Error::Parse(format!("k does not match u/v = {}/{}", a.0, a.1))),
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => return Err(Error::Parse("this theory needs --u and --v (or --k)".into())),
    };
    Kac::new(u, v).map_err(as_parse)
}

fn as_parse(e: Error) -> Error {
    match e {
        Error::Parse(_) => e,
        other => Error::Parse(other.to_string()),
    }
}

fn parse_int<N: FromStr>(s: &str, what: &str) -> Result<N> {
    s.trim().parse().map_err(|_| Error::Parse(format!("{what} = {s:?} is not an integer")))
}

fn parse_bool(s: &str) -> Result<bool> {
    match s.trim() {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(Error::Parse(format!("expected true or false, got {s:?}"))),
    }
}

fn parse_list(s: &str) -> Result<Vec<f64>> {
    s.split(',').map(parse_real).collect()
}

/// Rows separated by ';', entries by ','.
fn parse_matrix(s: &str) -> Result<Vec<f64>> {
    let rows: Vec<Vec<f64>> = s.split(';').map(parse_list).collect::<Result<_>>()?;
    if rows.iter().any(|r| r.len() != rows.len()) {
        return Err(Error::Parse(format!("gram matrix {s:?} is not square")));
    }
    Ok(rows.concat())
}

/// `a..b` (inclusive) or a single integer.
fn parse_range(s: &str, what: &str) -> Result<(i64, i64)> {
    match s.split_once("..") {
        Some((a, b)) => Ok((parse_int(a, what)?, parse_int(b, what)?)),
        None => {
            let a = parse_int(s, what)?;
            Ok((a, a))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn settings(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
    }

    #[test]
    fn level_and_pair_agree() {
        let a = RunConfig::from_settings(&settings(&[("theory", "sl2"), ("k", "-1/2")])).unwrap();
        assert_eq!(a.theory, TheoryConfig::Sl2(Kac::new(3, 2).unwrap()));
        let bad = RunConfig::from_settings(&settings(&[("theory", "sl2"), ("k", "-1/2"), ("u", "5"), ("v", "3")]));
        assert!(matches!(bad, Err(Error::Parse(_))));
    }

    #[test]
    fn defaults() {
        let c = RunConfig::from_settings(&settings(&[("theory", "singlet"), ("p", "3")])).unwrap();
        assert_eq!((c.seed, c.samples, c.format, c.timestamp), (42, 20, Format::Text, true));
        assert!(!c.window.is_set());
    }

    #[test]
    fn config_file_grammar() {
        let m = parse_config_file("# comment\ntheory = minimal\n\nu=5\nv = 2\n").unwrap();
        assert_eq!(m.len(), 3);
        assert!(parse_config_file("bogus = 1").is_err());
        assert!(parse_config_file("theory").is_err());
    }

    #[test]
    fn heisenberg_parameters() {
        let c = RunConfig::from_settings(&settings(&[("theory", "heisenberg"), ("gram", "2,1;1,3"), ("shift", "1/2,0")])).unwrap();
        let TheoryConfig::Heisenberg(h) = c.theory else { panic!() };
        assert_eq!(h.rank(), 2);
        assert!(RunConfig::from_settings(&settings(&[("theory", "heisenberg"), ("gram", "1,2,3")])).is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("-1..2", "r").unwrap(), (-1, 2));
        assert_eq!(parse_range("3", "r").unwrap(), (3, 3));
        assert!(parse_range("a..2", "r").is_err());
    }
}
