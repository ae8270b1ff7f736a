//! Natural-number functions that can be named on a command line.

use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};

/// A function `N → N` given as `id`, `x+K`, `K*x+M`, a constant `K`, or an
/// explicit lookup table (index = argument).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalFn {
    Affine { mul: u64, add: u64 },
    Table(Vec<u64>),
}

impl EvalFn {
    pub fn identity() -> Self {
        EvalFn::Affine { mul: 1, add: 0 }
    }

    pub fn shift(k: u64) -> Self {
        EvalFn::Affine { mul: 1, add: k }
    }

    pub fn constant(k: u64) -> Self {
        EvalFn::Affine { mul: 0, add: k }
    }

    /// Parses `id`, `x`, `x+K`, `K*x`, `K*x+M`, `K`, or `table:PATH` where
    /// PATH holds a JSON array of naturals.
    pub fn parse(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(path) = s.strip_prefix("table:") {
            return EvalFn::from_table_file(path);
        }
        if s == "id" || s == "x" {
            return Ok(EvalFn::identity());
        }
        let bad = || Error::Invalid(format!("unrecognized function '{text}'"));
        let num = |t: &str| t.parse::<u64>().map_err(|_| bad());
        let (linear, add) = match s.split_once('+') {
            Some((l, r)) => (l, num(r)?),
            None if !s.contains('x') => return Ok(EvalFn::constant(num(&s)?)),
            None => (s.as_str(), 0),
        };
        let mul = match linear {
            "x" => 1,
            _ => num(linear.strip_suffix("*x").ok_or_else(bad)?)?,
        };
        Ok(EvalFn::Affine { mul, add })
    }

    pub fn from_table_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
        let table: Vec<u64> = serde_json::from_str(&text)
            .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
        Ok(EvalFn::Table(table))
    }

    pub fn eval(&self, x: u64) -> Result<u64> {
        match self {
            EvalFn::Affine { mul, add } => mul
                .checked_mul(x)
                .and_then(|v| v.checked_add(*add))
                .ok_or_else(|| Error::Domain(format!("{self} overflows at {x}"))),
            EvalFn::Table(t) => usize::try_from(x)
                .ok()
                .and_then(|i| t.get(i).copied())
                .ok_or_else(|| Error::Domain(format!("lookup table has no entry for {x}"))),
        }
    }
}

impl fmt::Display for EvalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalFn::Affine { mul: 1, add: 0 } => f.write_str("id"),
            EvalFn::Affine { mul: 0, add } => write!(f, "{add}"),
            EvalFn::Affine { mul: 1, add } => write!(f, "x+{add}"),
            EvalFn::Affine { mul, add: 0 } => write!(f, "{mul}*x"),
            EvalFn::Affine { mul, add } => write!(f, "{mul}*x+{add}"),
            EvalFn::Table(t) => write!(f, "table[{}]", t.len()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(EvalFn::parse("id").unwrap(), EvalFn::identity());
        assert_eq!(EvalFn::parse("x+1").unwrap(), EvalFn::shift(1));
        assert_eq!(
            EvalFn::parse("3*x+2").unwrap(),
            EvalFn::Affine { mul: 3, add: 2 }
        );
        assert_eq!(
            EvalFn::parse("2*x").unwrap(),
            EvalFn::Affine { mul: 2, add: 0 }
        );
        assert_eq!(EvalFn::parse("7").unwrap(), EvalFn::constant(7));
        for bad in ["y+1", "x+", "*x", "2x", "x-1", ""] {
            assert!(EvalFn::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in ["id", "x+4", "3*x", "2*x+5", "9"] {
            assert_eq!(EvalFn::parse(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn eval_and_table() {
        assert_eq!(EvalFn::parse("2*x+1").unwrap().eval(5).unwrap(), 11);
        let t = EvalFn::Table(vec![3, 5, 8]);
        assert_eq!(t.eval(2).unwrap(), 8);
        assert!(t.eval(3).is_err());
        assert!(EvalFn::Affine { mul: 2, add: 0 }.eval(u64::MAX).is_err());
    }

    #[test]
    fn table_file() {
        let path = std::env::temp_dir().join(format!("frt-lab-evalfn-{}.json", std::process::id()));
        std::fs::write(&path, "[1, 4, 9]").unwrap();
        let f = EvalFn::parse(&format!("table:{}", path.display())).unwrap();
        assert_eq!(f, EvalFn::Table(vec![1, 4, 9]));
        std::fs::remove_file(path).unwrap();
    }
}
