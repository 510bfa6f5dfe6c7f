//! Suite configuration: flat `key = value` lines, overridable field by field.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use crate::exact::Rational;
use crate::voa::{Voa, VoaKind};
use crate::{Error, Result};

/// Unset fields fall back to each suite's own default.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub voa: VoaKind,
    pub c: Rational,
    pub cutoff: Option<u32>,
    pub margin: Option<u32>,
    pub m: Option<(i64, i64)>,
    pub n: Option<(i64, i64)>,
    pub p: Option<(i64, i64)>,
    pub corpus: Option<u32>,
    pub suite: String,
    pub report: Option<PathBuf>,
    /// Flips one expected value in the first suite check, to exercise the
    /// failure path of the report.
    pub inject_fail: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            voa: VoaKind::FreeBoson,
            c: Rational::new(1, 2),
            cutoff: None,
            margin: None,
            m: None,
            n: None,
            p: None,
            corpus: None,
            suite: "all".into(),
            report: None,
            inject_fail: false,
        }
    }
}

pub fn parse_range(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::Usage(format!("expected a range a..b or a single integer, got '{s}'"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
        None => (s.trim(), s.trim()),
    };
    let a: i64 = a.parse().map_err(|_| bad())?;
    let b: i64 = b.parse().map_err(|_| bad())?;
    if a > b {
        return Err(Error::Usage(format!("empty range {s}")));
    }
    Ok((a, b))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Usage(format!("expected a rational p/q, got '{s}'"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: i64 = p.parse().map_err(|_| bad())?;
    let q: i64 = q.parse().map_err(|_| bad())?;
    if q == 0 {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

pub fn parse_voa(s: &str) -> Result<VoaKind> {
    match s.trim().to_ascii_lowercase().as_str() {
        "heisenberg" | "free-boson" | "freeboson" => Ok(VoaKind::FreeBoson),
        "virasoro" => Ok(VoaKind::Virasoro),
        other => Err(Error::Usage(format!("unknown vertex algebra '{other}'"))),
    }
}

impl SuiteConfig {
    /// Sets one field from its textual form.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let num = |v: &str| -> Result<u32> {
            v.trim()
                .parse()
                .map_err(|_| Error::Usage(format!("{key}: expected a nonnegative integer, got '{v}'")))
        };
        match key.trim() {
            "voa" => self.voa = parse_voa(value)?,
            "c" => self.c = parse_rational(value)?,
            "cutoff" | "D" => self.cutoff = Some(num(value)?),
            "margin" | "M" => self.margin = Some(num(value)?),
            "m" => self.m = Some(parse_range(value)?),
            "n" => self.n = Some(parse_range(value)?),
            "p" => self.p = Some(parse_range(value)?),
            "corpus" => self.corpus = Some(num(value)?),
            "suite" => self.suite = value.trim().to_string(),
            "report" => self.report = Some(PathBuf::from(value.trim())),
            "inject_fail" => {
                self.inject_fail = match value.trim() {
                    "true" | "1" | "yes" => true,
                    "false" | "0" | "no" => false,
                    v => return Err(Error::Usage(format!("inject_fail: expected true/false, got '{v}'"))),
                }
            }
            other => return Err(Error::Usage(format!("unknown config key '{other}'"))),
        }
        Ok(())
    }

    /// Applies `key = value` lines; blank lines and `#` comments are skipped.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Usage(format!("line {}: expected key = value", i + 1)))?;
            self.set(k, v)
                .map_err(|e| Error::Usage(format!("line {}: {e}", i + 1)))?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if let (Some(d), Some(c)) = (self.cutoff, self.corpus) {
            if d < c {
                return Err(Error::Usage(format!("cutoff {d} is below the corpus bound {c}")));
            }
        }
        for (name, r) in [("m", self.m), ("n", self.n)] {
            if let Some((a, _)) = r {
                if a < 0 {
                    return Err(Error::Usage(format!("{name} must be nonnegative")));
                }
            }
        }
        if self.voa == VoaKind::Virasoro && self.c.is_zero() {
            return Err(Error::Usage("central charge 0 is not supported".into()));
        }
        Ok(())
    }

    pub fn cutoff_or(&self, d: u32) -> u32 {
        self.cutoff.unwrap_or(d)
    }

    pub fn margin_or(&self, m: u32) -> u32 {
        self.margin.unwrap_or(m)
    }

    pub fn corpus_or(&self, c: u32) -> u32 {
        self.corpus.unwrap_or(c)
    }

    pub fn m_or(&self, r: (i64, i64)) -> RangeInclusive<i64> {
        let (a, b) = self.m.unwrap_or(r);
        a..=b
    }

    pub fn n_or(&self, r: (i64, i64)) -> RangeInclusive<i64> {
        let (a, b) = self.n.unwrap_or(r);
        a..=b
    }

    pub fn p_or(&self, r: (i64, i64)) -> RangeInclusive<i64> {
        let (a, b) = self.p.unwrap_or(r);
        a..=b
    }

    /// The configured instance with a basis up to `max_weight`.
    pub fn instance(&self, max_weight: u32) -> Result<Voa> {
        Voa::new(self.voa, self.central_charge(), max_weight)
    }

    /// `1` for the Heisenberg instance, the configured `c` otherwise.
    pub fn central_charge(&self) -> Rational {
        match self.voa {
            VoaKind::FreeBoson => Rational::ONE,
            VoaKind::Virasoro => self.c.clone(),
        }
    }

    /// Echo of the configuration for reports, in key order.
    pub fn echo(&self) -> BTreeMap<String, String> {
        let fmt = |r: Option<(i64, i64)>| r.map_or("default".into(), |(a, b)| format!("{a}..{b}"));
        let opt = |x: Option<u32>| x.map_or("default".into(), |v| v.to_string());
        let mut out = BTreeMap::new();
        out.insert("voa".into(), self.voa.name().to_string());
        out.insert("c".into(), self.central_charge().to_string());
        out.insert("cutoff".into(), opt(self.cutoff));
        out.insert("margin".into(), opt(self.margin));
        out.insert("corpus".into(), opt(self.corpus));
        out.insert("m".into(), fmt(self.m));
        out.insert("n".into(), fmt(self.n));
        out.insert("p".into(), fmt(self.p));
        out.insert("suite".into(), self.suite.clone());
        out.insert("inject_fail".into(), self.inject_fail.to_string());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flat_config() {
        let mut c = SuiteConfig::default();
        c.apply_text(
            "# comment\nvoa = virasoro\nc = 7/10\ncutoff = 8 # trailing\nm = 0..2\n\nsuite = kernel-identity\n",
        )
        .unwrap();
        assert_eq!(c.voa, VoaKind::Virasoro);
        assert_eq!(c.c, Rational::new(7, 10));
        assert_eq!(c.cutoff, Some(8));
        assert_eq!(c.m, Some((0, 2)));
        assert_eq!(c.suite, "kernel-identity");
        assert!(c.apply_text("bogus = 1").is_err());
        assert!(c.apply_text("cutoff 3").is_err());
    }

    #[test]
    fn ranges_and_rationals() {
        assert_eq!(parse_range("2").unwrap(), (2, 2));
        assert_eq!(parse_range("-1..=3").unwrap(), (-1, 3));
        assert!(parse_range("3..1").is_err());
        assert_eq!(parse_rational("-2/4").unwrap(), Rational::new(-1, 2));
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn validation() {
        let mut c = SuiteConfig::default();
        c.cutoff = Some(3);
        c.corpus = Some(4);
        assert!(c.validate().is_err());
        c.cutoff = Some(4);
        assert!(c.validate().is_ok());
    }
}
