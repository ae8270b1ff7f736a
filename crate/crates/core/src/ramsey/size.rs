use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{is_homogeneous, SubsetColoring};
use crate::error::{Error, Result};
use crate::evalfn::EvalFn;
use crate::fundamental::FiniteSet;

/// Finitely supported size function with a default value elsewhere.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SizeTable {
    pub entries: BTreeMap<FiniteSet, u64>,
    pub default: u64,
}

#[derive(Serialize, Deserialize)]
struct TableEntry {
    set: FiniteSet,
    value: u64,
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    default: u64,
    entries: Vec<TableEntry>,
}

impl Serialize for SizeTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TableRepr {
            default: self.default,
            entries: self
                .entries
                .iter()
                .map(|(set, &value)| TableEntry {
                    set: set.clone(),
                    value,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SizeTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = TableRepr::deserialize(d)?;
        Ok(SizeTable {
            default: repr.default,
            entries: repr.entries.into_iter().map(|e| (e.set, e.value)).collect(),
        })
    }
}

/// A largeness notion `F`: a set `H` counts as large when `|H| > F(H)`.
///
/// `Cf`, `Ui` and `Md` are the pointwise-maximal members of their classes,
/// which decide the class because the principle is antitone in `F`. `Ph`
/// is `Md` in the Paris–Harrington convention: `F(X) = f(min X) − 1`, so the
/// large sets are exactly those with `|H| ≥ f(min H)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SizeFunction {
    Cf(u64),
    Ui(u64),
    Md(EvalFn),
    Ph(EvalFn),
    Table(SizeTable),
}

impl SizeFunction {
    /// Parses `cf:M`, `ui:M`, `md:FN`, `ph:FN` or `table:PATH`, where FN is
    /// an [`EvalFn`] and PATH a JSON table file.
    pub fn parse(text: &str) -> Result<Self> {
        let (tag, rest) = text
            .split_once(':')
            .ok_or_else(|| Error::Invalid(format!("size function '{text}' lacks a tag")))?;
        let num = || {
            rest.trim()
                .parse::<u64>()
                .map_err(|_| Error::Invalid(format!("bad parameter in '{text}'")))
        };
        match tag {
            "cf" => Ok(SizeFunction::Cf(num()?)),
            "ui" => Ok(SizeFunction::Ui(num()?)),
            "md" => Ok(SizeFunction::Md(EvalFn::parse(rest)?)),
            "ph" => Ok(SizeFunction::Ph(EvalFn::parse(rest)?)),
            "table" => {
                let body = std::fs::read_to_string(rest)
                    .map_err(|e| Error::Invalid(format!("{rest}: {e}")))?;
                let table = serde_json::from_str(&body)
                    .map_err(|e| Error::Invalid(format!("{rest}: {e}")))?;
                Ok(SizeFunction::Table(table))
            }
            _ => Err(Error::Invalid(format!(
                "unknown size function class '{tag}'"
            ))),
        }
    }

    /// Whether `h` is large: `|h| > F(h)`. The empty set is never large.
    pub fn is_large(&self, h: &[u64]) -> Result<bool> {
        let Some(&min) = h.first() else {
            return Ok(false);
        };
        let size = h.len() as u64;
        Ok(match self {
            SizeFunction::Ph(f) => size >= f.eval(min)?,
            _ => size > self.eval_slice(h)?,
        })
    }

    fn eval_slice(&self, x: &[u64]) -> Result<u64> {
        let min = x.first().copied();
        match self {
            SizeFunction::Cf(m) => Ok(*m),
            SizeFunction::Ui(m) => Ok(min.ok_or(Error::EmptySet)?.max(*m)),
            SizeFunction::Md(f) => f.eval(min.ok_or(Error::EmptySet)?),
            SizeFunction::Ph(f) => Ok(f.eval(min.ok_or(Error::EmptySet)?)?.saturating_sub(1)),
            SizeFunction::Table(t) => {
                let key = FiniteSet::new(x.to_vec())?;
                Ok(t.entries.get(&key).copied().unwrap_or(t.default))
            }
        }
    }
}

impl fmt::Display for SizeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SizeFunction::Cf(m) => write!(f, "cf:{m}"),
            SizeFunction::Ui(m) => write!(f, "ui:{m}"),
            SizeFunction::Md(g) => write!(f, "md:{g}"),
            SizeFunction::Ph(g) => write!(f, "ph:{g}"),
            SizeFunction::Table(t) => write!(f, "table[{}]", t.entries.len()),
        }
    }
}

pub fn eval_size_fn(f: &SizeFunction, x: &FiniteSet) -> Result<u64> {
    f.eval_slice(x.as_slice())
}

/// Largest ground set for which [`counterexample_size_fn`] materializes its table.
const MAX_TABLE_POINTS: usize = 20;

/// The size function `F(X) = |X| + 1` on `C`-homogeneous `X`, 0 elsewhere,
/// tabulated over every subset of `C`'s ground set. No set is large for it
/// and homogeneous for `C` at the same time.
pub fn counterexample_size_fn(c: &SubsetColoring) -> Result<SizeFunction> {
    let points = c.points();
    if points.len() > MAX_TABLE_POINTS {
        return Err(Error::BudgetExceeded {
            limit: 1 << MAX_TABLE_POINTS,
        });
    }
    let mut entries = BTreeMap::new();
    for mask in 0u32..(1 << points.len()) {
        let set = FiniteSet::new(
            (0..points.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| points[i])
                .collect(),
        )?;
        let value = if is_homogeneous(c, &set)? {
            set.len() as u64 + 1
        } else {
            0
        };
        entries.insert(set, value);
    }
    Ok(SizeFunction::Table(SizeTable {
        entries,
        default: 0,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u64]) -> FiniteSet {
        FiniteSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(
            eval_size_fn(&SizeFunction::Cf(2), &set(&[5, 8])).unwrap(),
            2
        );
        assert_eq!(
            eval_size_fn(&SizeFunction::Ui(3), &set(&[5, 8])).unwrap(),
            5
        );
        assert_eq!(
            eval_size_fn(&SizeFunction::Ui(7), &set(&[5, 8])).unwrap(),
            7
        );
        assert_eq!(
            eval_size_fn(&SizeFunction::Md(EvalFn::identity()), &set(&[4, 9, 11])).unwrap(),
            4
        );
        assert_eq!(
            eval_size_fn(&SizeFunction::Ui(3), &FiniteSet::empty()),
            Err(Error::EmptySet)
        );
        assert_eq!(
            eval_size_fn(&SizeFunction::Md(EvalFn::identity()), &FiniteSet::empty()),
            Err(Error::EmptySet)
        );
    }

    #[test]
    fn ph_convention() {
        let ph = SizeFunction::Ph(EvalFn::identity());
        assert!(ph.is_large(&[3, 4, 5]).unwrap());
        assert!(!ph.is_large(&[3, 4]).unwrap());
        assert_eq!(eval_size_fn(&ph, &set(&[3, 4])).unwrap(), 2);
        assert!(!SizeFunction::Cf(0).is_large(&[]).unwrap());
    }

    #[test]
    fn counterexample_values() {
        let c = SubsetColoring::on_interval(2, 2, 0, 2, vec![0, 1, 0]).unwrap();
        let SizeFunction::Table(t) = counterexample_size_fn(&c).unwrap() else {
            panic!()
        };
        assert_eq!(t.entries.len(), 8);
        assert_eq!(t.entries[&set(&[0, 1, 2])], 0);
        assert_eq!(t.entries[&set(&[0, 1])], 3);
        assert_eq!(t.entries[&FiniteSet::empty()], 1);
        assert_eq!(t.entries[&set(&[2])], 2);
    }

    #[test]
    fn parse_and_table_json() {
        assert_eq!(SizeFunction::parse("cf:2").unwrap(), SizeFunction::Cf(2));
        assert_eq!(
            SizeFunction::parse("md:x+1").unwrap(),
            SizeFunction::Md(EvalFn::shift(1))
        );
        assert!(SizeFunction::parse("zz:1").is_err());
        assert!(SizeFunction::parse("cf").is_err());
        let t = SizeTable {
            entries: [(set(&[1, 2]), 4)].into_iter().collect(),
            default: 1,
        };
        let text = serde_json::to_string(&t).unwrap();
        assert_eq!(text, r#"{"default":1,"entries":[{"set":[1,2],"value":4}]}"#);
        assert_eq!(serde_json::from_str::<SizeTable>(&text).unwrap(), t);
    }
}
