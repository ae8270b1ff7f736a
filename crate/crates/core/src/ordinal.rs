//! Ordinals below ε₀ in Cantor normal form.
//!
//! An [`Ordinal`] is a list of terms `ω^e · c` with strictly decreasing
//! exponents `e` (themselves ordinals) and coefficients `c ≥ 1`. The empty
//! list is zero. Every constructor validates this shape, so any `Ordinal`
//! value in hand is canonical and structural equality is ordinal equality.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default bound on exponent nesting, shared by [`omega_tower`] and the parser.
pub const DEFAULT_MAX_DEPTH: usize = 32;

/// One Cantor normal form term `ω^exponent · coefficient`.
///
/// Field order matters: the derived `Ord` compares exponents first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    exponent: Ordinal,
    coefficient: u64,
}

impl Term {
    pub fn exponent(&self) -> &Ordinal {
        &self.exponent
    }

    pub fn coefficient(&self) -> u64 {
        self.coefficient
    }
}

/// An ordinal below ε₀.
///
/// The derived `Ord` is the ordinal order: term lists compare
/// lexicographically, and a strict prefix is smaller.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ordinal {
    terms: Vec<Term>,
}

/// Comparison position, coefficient and exponent of two ordinals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonData {
    /// 1-based index of the first differing term, 0 when equal.
    pub cp: usize,
    pub cc: u64,
    pub ce: Ordinal,
}

/// Maximal position and maximal coefficient over all nesting levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaxData {
    pub mp: usize,
    pub mc: u64,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn nat(n: u64) -> Self {
        if n == 0 {
            Ordinal::zero()
        } else {
            Ordinal {
                terms: vec![Term {
                    exponent: Ordinal::zero(),
                    coefficient: n,
                }],
            }
        }
    }

    pub fn omega() -> Self {
        Ordinal::omega_pow(Ordinal::nat(1))
    }

    /// `ω^exponent`.
    pub fn omega_pow(exponent: Ordinal) -> Self {
        Ordinal {
            terms: vec![Term {
                exponent,
                coefficient: 1,
            }],
        }
    }

    /// Builds an ordinal from `(exponent, coefficient)` pairs, rejecting
    /// anything that is not in Cantor normal form.
    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Ordinal, u64)>,
    {
        let mut out: Vec<Term> = Vec::new();
        for (i, (exponent, coefficient)) in terms.into_iter().enumerate() {
            if coefficient == 0 {
                return Err(Error::Canonicity {
                    pos: i,
                    msg: "zero coefficient".into(),
                });
            }
            if let Some(prev) = out.last() {
                if exponent >= prev.exponent {
                    return Err(Error::Canonicity {
                        pos: i,
                        msg: format!(
                            "exponent {exponent} does not decrease after {}",
                            prev.exponent
                        ),
                    });
                }
            }
            out.push(Term {
                exponent,
                coefficient,
            });
        }
        Ok(Ordinal { terms: out })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of top-level terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_successor(&self) -> bool {
        self.terms.last().is_some_and(|t| t.exponent.is_zero())
    }

    pub fn is_limit(&self) -> bool {
        !self.is_zero() && !self.is_successor()
    }

    /// The natural number this ordinal denotes, if it is finite.
    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [t] if t.exponent.is_zero() => Some(t.coefficient),
            _ => None,
        }
    }

    /// Coefficient of `ω^exponent`, 0 when the term is absent.
    pub fn coefficient_of(&self, exponent: &Ordinal) -> u64 {
        self.terms
            .iter()
            .find(|t| &t.exponent == exponent)
            .map_or(0, |t| t.coefficient)
    }

    /// Nesting height: 0 for zero, one more than the highest exponent otherwise.
    pub fn height(&self) -> usize {
        self.terms
            .iter()
            .map(|t| t.exponent.height() + 1)
            .max()
            .unwrap_or(0)
    }

    pub(crate) fn from_terms_unchecked(terms: Vec<Term>) -> Self {
        debug_assert!(terms.iter().all(|t| t.coefficient > 0));
        debug_assert!(terms.windows(2).all(|w| w[0].exponent > w[1].exponent));
        Ordinal { terms }
    }

    pub(crate) fn term(exponent: Ordinal, coefficient: u64) -> Term {
        Term {
            exponent,
            coefficient,
        }
    }
}

pub fn compare(a: &Ordinal, b: &Ordinal) -> Ordering {
    a.cmp(b)
}

/// `ω_n(l)`: `ω_0(l) = l` and `ω_{n+1}(l) = ω^{ω_n(l)}`.
pub fn omega_tower(n: usize, l: u64) -> Result<Ordinal> {
    omega_tower_bounded(n, l, DEFAULT_MAX_DEPTH)
}

pub fn omega_tower_bounded(n: usize, l: u64, max_depth: usize) -> Result<Ordinal> {
    if n > max_depth {
        return Err(Error::DepthExceeded { limit: max_depth });
    }
    let mut out = Ordinal::nat(l);
    for _ in 0..n {
        out = Ordinal::omega_pow(out);
    }
    Ok(out)
}

/// First position where the term lists of `a` and `b` disagree, together with
/// `a`'s coefficient and exponent there.
///
/// A missing term differs from any present one. When `a` has no term at the
/// differing position (it is a strict prefix of `b`), `cc` and `ce` are 0.
pub fn comparison_data(a: &Ordinal, b: &Ordinal) -> ComparisonData {
    let (ta, tb) = (a.terms(), b.terms());
    let common = ta.iter().zip(tb).take_while(|(x, y)| x == y).count();
    if common == ta.len() && common == tb.len() {
        return ComparisonData {
            cp: 0,
            cc: 0,
            ce: Ordinal::zero(),
        };
    }
    let (cc, ce) = match ta.get(common) {
        Some(t) => (t.coefficient, t.exponent.clone()),
        None => (0, Ordinal::zero()),
    };
    ComparisonData {
        cp: common + 1,
        cc,
        ce,
    }
}

pub fn max_data(a: &Ordinal) -> MaxData {
    a.terms.iter().fold(
        MaxData {
            mp: a.len().max(1),
            mc: 0,
        },
        |acc, t| {
            let inner = max_data(&t.exponent);
            MaxData {
                mp: acc.mp.max(inner.mp),
                mc: acc.mc.max(t.coefficient).max(inner.mc),
            }
        },
    )
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if t.exponent.is_zero() {
                write!(f, "{}", t.coefficient)?;
                continue;
            }
            f.write_str("w")?;
            match t.exponent.as_nat() {
                Some(1) => {}
                Some(n) => write!(f, "^{n}")?,
                None if t.exponent == Ordinal::omega() => f.write_str("^w")?,
                None => write!(f, "^({})", t.exponent)?,
            }
            if t.coefficient > 1 {
                write!(f, "*{}", t.coefficient)?;
            }
        }
        Ok(())
    }
}

pub fn format_ordinal(a: &Ordinal) -> String {
    a.to_string()
}

impl Serialize for Ordinal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        crate::parse::parse_ordinal(&text).map_err(serde::de::Error::custom)
    }
}

impl std::str::FromStr for Ordinal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::parse::parse_ordinal(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn compare_examples() {
        let a = o("w^2*2+w");
        assert_eq!(compare(&a, &a), Ordering::Equal);
        assert_eq!(compare(&o("w^w"), &o("w*5+3")), Ordering::Greater);
        assert_eq!(compare(&a, &o("w^2*2+1")), Ordering::Greater);
        assert_eq!(compare(&o("w"), &o("w+1")), Ordering::Less);
    }

    #[test]
    fn towers() {
        assert_eq!(omega_tower(0, 4).unwrap(), Ordinal::nat(4));
        assert_eq!(omega_tower(1, 3).unwrap(), o("w^3"));
        assert_eq!(omega_tower(2, 1).unwrap(), o("w^w"));
        assert_eq!(omega_tower(3, 1).unwrap().to_string(), "w^(w^w)");
        assert_eq!(
            omega_tower_bounded(5, 1, 4),
            Err(Error::DepthExceeded { limit: 4 })
        );
    }

    #[test]
    fn comparison_data_examples() {
        let a = o("w^2*3+w+2");
        assert_eq!(
            comparison_data(&a, &a),
            ComparisonData {
                cp: 0,
                cc: 0,
                ce: Ordinal::zero()
            }
        );
        let d = comparison_data(&o("w^2*2+w"), &o("w^2*2+1"));
        assert_eq!((d.cp, d.cc, d.ce), (2, 1, Ordinal::nat(1)));
        let d = comparison_data(&o("w"), &o("w+1"));
        assert_eq!((d.cp, d.cc, d.ce), (2, 0, Ordinal::zero()));
        // Same exponent, different coefficient.
        let d = comparison_data(&o("w^3*2"), &o("w^3"));
        assert_eq!((d.cp, d.cc, d.ce), (1, 2, Ordinal::nat(3)));
    }

    #[test]
    fn max_data_examples() {
        assert_eq!(max_data(&Ordinal::zero()), MaxData { mp: 1, mc: 0 });
        assert_eq!(max_data(&o("w^3*2+5")), MaxData { mp: 2, mc: 5 });
        assert_eq!(max_data(&o("w")), MaxData { mp: 1, mc: 1 });
        assert_eq!(max_data(&o("w^(w^2+w+1)")), MaxData { mp: 3, mc: 2 });
    }

    #[test]
    fn from_terms_rejects_non_cnf() {
        let one = Ordinal::nat(1);
        assert!(Ordinal::from_terms([(one.clone(), 1), (one.clone(), 1)]).is_err());
        assert!(Ordinal::from_terms([(one.clone(), 0)]).is_err());
        assert!(Ordinal::from_terms([(Ordinal::zero(), 1), (one, 1)]).is_err());
    }

    #[test]
    fn kinds() {
        assert!(o("w+1").is_successor());
        assert!(o("w^2").is_limit());
        assert!(!Ordinal::zero().is_limit());
        assert_eq!(o("7").as_nat(), Some(7));
        assert_eq!(o("w").as_nat(), None);
        assert_eq!(o("w^2*2+3").coefficient_of(&Ordinal::nat(1)), 0);
        assert_eq!(o("w^(w^w)").height(), 4);
    }
}
