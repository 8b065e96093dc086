//! `key = value` experiment files checked against a per-subcommand schema.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

fn config_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

/// Accepted values for one key.
#[derive(Debug, Clone, Copy)]
pub enum Kind {
    /// Real in [lo, hi], or (lo, hi] when `open_lo`.
    Real { lo: f64, hi: f64, open_lo: bool },
    /// Like `Real`, or the literal `auto`.
    RealOrAuto { lo: f64, hi: f64, open_lo: bool },
    Count { lo: u64, hi: u64 },
    /// Comma-separated reals, each ≥ lo.
    Reals { lo: f64 },
    Choice(&'static [&'static str]),
    /// Free text; validated by the command.
    Text,
}

#[derive(Debug, Clone, Copy)]
pub struct Key {
    pub name: &'static str,
    pub kind: Kind,
    /// `None` makes the key required.
    pub default: Option<&'static str>,
    pub doc: &'static str,
}

pub const fn real(name: &'static str, lo: f64, hi: f64, default: Option<&'static str>, doc: &'static str) -> Key {
    Key { name, kind: Kind::Real { lo, hi, open_lo: false }, default, doc }
}

pub const fn pos(name: &'static str, default: Option<&'static str>, doc: &'static str) -> Key {
    Key { name, kind: Kind::Real { lo: 0.0, hi: f64::INFINITY, open_lo: true }, default, doc }
}

pub const fn count(name: &'static str, lo: u64, hi: u64, default: Option<&'static str>, doc: &'static str) -> Key {
    Key { name, kind: Kind::Count { lo, hi }, default, doc }
}

/// Parsed file: raw values in file order, duplicates rejected.
pub fn parse(text: &str) -> Result<Vec<(String, String)>> {
    let mut out: Vec<(String, String)> = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(config_err(format!("line {}: expected `key = value`", no + 1)));
        };
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() {
            return Err(config_err(format!("line {}: empty key", no + 1)));
        }
        if out.iter().any(|(seen, _)| seen == k) {
            return Err(config_err(format!("line {}: duplicate key `{k}`", no + 1)));
        }
        out.push((k.to_string(), v.to_string()));
    }
    Ok(out)
}

fn parse_real(key: &str, v: &str) -> Result<f64> {
    let x: f64 = v
        .parse()
        .map_err(|_| config_err(format!("`{key}`: `{v}` is not a number")))?;
    if !x.is_finite() {
        return Err(config_err(format!("`{key}`: value must be finite")));
    }
    Ok(x)
}

fn check_range(key: &str, x: f64, lo: f64, hi: f64, open_lo: bool) -> Result<()> {
    let ok_lo = if open_lo { x > lo } else { x >= lo };
    if !ok_lo || x > hi {
        let l = if open_lo { "(" } else { "[" };
        return Err(config_err(format!("`{key}` = {x} is outside {l}{lo}, {hi}]")));
    }
    Ok(())
}

fn validate(key: &Key, v: &str) -> Result<()> {
    match key.kind {
        Kind::Real { lo, hi, open_lo } => check_range(key.name, parse_real(key.name, v)?, lo, hi, open_lo),
        Kind::RealOrAuto { lo, hi, open_lo } => {
            if v == "auto" {
                Ok(())
            } else {
                check_range(key.name, parse_real(key.name, v)?, lo, hi, open_lo)
            }
        }
        Kind::Count { lo, hi } => {
            let x: f64 = parse_real(key.name, v)?;
            if x.fract() != 0.0 || x < lo as f64 || x > hi as f64 {
                return Err(config_err(format!("`{}` = {v} must be an integer in [{lo}, {hi}]", key.name)));
            }
            Ok(())
        }
        Kind::Reals { lo } => {
            if v.is_empty() {
                return Ok(());
            }
            for item in v.split(',') {
                let x = parse_real(key.name, item.trim())?;
                if x < lo {
                    return Err(config_err(format!("`{}`: entry {x} is below {lo}", key.name)));
                }
            }
            Ok(())
        }
        Kind::Choice(options) => {
            if options.contains(&v) {
                Ok(())
            } else {
                Err(config_err(format!("`{}` must be one of {options:?}, got `{v}`", key.name)))
            }
        }
        Kind::Text => Ok(()),
    }
}

/// Configuration with defaults applied, in schema order.
#[derive(Debug, Clone, PartialEq)]
pub struct Resolved {
    entries: Vec<(&'static str, String)>,
    index: BTreeMap<&'static str, usize>,
}

impl Resolved {
    /// Applies `schema` to the parsed pairs; unknown keys are an error.
    pub fn new(schema: &[Key], pairs: Vec<(String, String)>) -> Result<Self> {
        for (k, _) in &pairs {
            if !schema.iter().any(|key| key.name == k) {
                return Err(config_err(format!("unknown key `{k}`")));
            }
        }
        let mut entries = Vec::with_capacity(schema.len());
        let mut index = BTreeMap::new();
        for key in schema {
            let value = match pairs.iter().find(|(k, _)| k == key.name) {
                Some((_, v)) => v.clone(),
                None => match key.default {
                    Some(d) => d.to_string(),
                    None => return Err(config_err(format!("missing required key `{}`", key.name))),
                },
            };
            validate(key, &value)?;
            index.insert(key.name, entries.len());
            entries.push((key.name, value));
        }
        Ok(Self { entries, index })
    }

    pub fn entries(&self) -> &[(&'static str, String)] {
        &self.entries
    }

    pub fn raw(&self, key: &str) -> &str {
        let i = self.index.get(key).unwrap_or_else(|| panic!("key `{key}` not in schema"));
        &self.entries[*i].1
    }

    pub fn real(&self, key: &str) -> f64 {
        self.raw(key).parse().expect("validated")
    }

    pub fn real_or_auto(&self, key: &str) -> Option<f64> {
        match self.raw(key) {
            "auto" => None,
            v => Some(v.parse().expect("validated")),
        }
    }

    pub fn count(&self, key: &str) -> usize {
        self.real(key) as usize
    }

    pub fn reals(&self, key: &str) -> Vec<f64> {
        let v = self.raw(key);
        if v.is_empty() {
            return Vec::new();
        }
        v.split(',').map(|x| x.trim().parse().expect("validated")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SCHEMA: &[Key] = &[
        pos("mu", Some("1"), ""),
        count("n", 1, 100, None, ""),
        Key { name: "times", kind: Kind::Reals { lo: 0.0 }, default: Some("0,1"), doc: "" },
        Key { name: "mode", kind: Kind::Choice(&["a", "b"]), default: Some("a"), doc: "" },
    ];

    #[test]
    fn defaults_and_comments() {
        let r = Resolved::new(SCHEMA, parse("# header\nn = 5   # trailing\n\nmode=b\n").unwrap()).unwrap();
        assert_eq!(r.real("mu"), 1.0);
        assert_eq!(r.count("n"), 5);
        assert_eq!(r.reals("times"), vec![0.0, 1.0]);
        assert_eq!(r.raw("mode"), "b");
        assert_eq!(r.entries().len(), 4);
    }

    #[test]
    fn rejects_bad_input() {
        let err = Resolved::new(SCHEMA, parse("n = 5\nsigma = 2").unwrap()).unwrap_err();
        assert!(err.to_string().contains("sigma"));
        assert!(Resolved::new(SCHEMA, parse("mu = 1").unwrap()).is_err());
        assert!(Resolved::new(SCHEMA, parse("n = 5\nmu = 0").unwrap()).is_err());
        assert!(Resolved::new(SCHEMA, parse("n = 2.5").unwrap()).is_err());
        assert!(Resolved::new(SCHEMA, parse("n = 5\nmode = c").unwrap()).is_err());
        assert!(Resolved::new(SCHEMA, parse("n = 5\ntimes = 1,-1").unwrap()).is_err());
        assert!(parse("n = 1\nn = 2").is_err());
        assert!(parse("just words").is_err());
    }
}
