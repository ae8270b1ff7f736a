//! Fundamental sequences, α-largeness and descending sequences.
//!
//! The fundamental sequence assignment is the standard one:
//!
//! * `(γ + c)[n] = γ + (c − 1)` for a finite last term;
//! * `(γ + ω^β·c)[n] = γ + ω^β·(c − 1) + (ω^β)[n]` for `β > 0`;
//! * `(ω^{β+1})[n] = ω^β·n`;
//! * `(ω^λ)[n] = ω^{λ[n]}` for limit `λ`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evalfn::EvalFn;
use crate::ordinal::{Ordinal, Term};

/// Default step budget for [`find_alpha_large`].
pub const DEFAULT_LARGENESS_BUDGET: u64 = 1_000_000;

/// A finite set of naturals, stored in strictly increasing order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct FiniteSet(Vec<u64>);

impl FiniteSet {
    pub fn new(elements: Vec<u64>) -> Result<Self> {
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid(format!(
                "set elements must be strictly increasing: {elements:?}"
            )));
        }
        Ok(FiniteSet(elements))
    }

    /// Sorts and deduplicates.
    pub fn from_unsorted(mut elements: Vec<u64>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        FiniteSet(elements)
    }

    pub fn empty() -> Self {
        FiniteSet(Vec::new())
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min(&self) -> Option<u64> {
        self.0.first().copied()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn is_subset(&self, other: &FiniteSet) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }
}

impl TryFrom<Vec<u64>> for FiniteSet {
    type Error = Error;

    fn try_from(v: Vec<u64>) -> Result<Self> {
        FiniteSet::new(v)
    }
}

impl From<FiniteSet> for Vec<u64> {
    fn from(s: FiniteSet) -> Self {
        s.0
    }
}

impl fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

/// `α[n]`, one step down the fundamental sequence of a nonzero ordinal.
pub fn fund_step(a: &Ordinal, n: u64) -> Result<Ordinal> {
    let (last, prefix) = a.terms().split_last().ok_or(Error::ZeroOrdinal)?;
    let mut terms: Vec<Term> = prefix.to_vec();
    if last.coefficient() > 1 {
        terms.push(Ordinal::term(
            last.exponent().clone(),
            last.coefficient() - 1,
        ));
    }
    if !last.exponent().is_zero() {
        terms.extend_from_slice(omega_power_step(last.exponent(), n)?.terms());
    }
    Ok(Ordinal::from_terms_unchecked(terms))
}

/// `(ω^β)[n]` for `β > 0`.
fn omega_power_step(beta: &Ordinal, n: u64) -> Result<Ordinal> {
    if beta.is_successor() {
        let pred = fund_step(beta, 0)?;
        Ok(if n == 0 {
            Ordinal::zero()
        } else {
            Ordinal::from_terms_unchecked(vec![Ordinal::term(pred, n)])
        })
    } else {
        Ok(Ordinal::omega_pow(fund_step(beta, n)?))
    }
}

/// Folds `α[a_0][a_1]…` over the elements of `set`, with `0[m] = 0`.
pub fn largeness_fold(a: &Ordinal, set: &FiniteSet) -> Ordinal {
    let mut cur = a.clone();
    for &x in set.as_slice() {
        if cur.is_zero() {
            break;
        }
        cur = fund_step(&cur, x).expect("nonzero");
    }
    cur
}

pub fn is_alpha_large(a: &Ordinal, set: &FiniteSet) -> bool {
    largeness_fold(a, set).is_zero()
}

/// Runs `α_{i+1} = α_i[f(i)]` from `i = start` until zero and returns
/// `{f(start), …, f(b)}`.
pub fn find_alpha_large(a: &Ordinal, f: &EvalFn, start: u64) -> Result<FiniteSet> {
    find_alpha_large_with_budget(a, f, start, DEFAULT_LARGENESS_BUDGET)
}

pub fn find_alpha_large_with_budget(
    a: &Ordinal,
    f: &EvalFn,
    start: u64,
    budget: u64,
) -> Result<FiniteSet> {
    let mut cur = a.clone();
    let mut out: Vec<u64> = Vec::new();
    let mut i = start;
    while !cur.is_zero() {
        if out.len() as u64 >= budget {
            return Err(Error::BudgetExceeded { limit: budget });
        }
        let x = f.eval(i)?;
        if out.last().is_some_and(|&prev| prev >= x) {
            return Err(Error::Invalid(format!(
                "function {f} is not strictly increasing at {i}"
            )));
        }
        cur = fund_step(&cur, x)?;
        out.push(x);
        i += 1;
    }
    Ok(FiniteSet(out))
}

/// `[a, a[g(0)], a[g(0)][g(1)], …]`, stopping early after reaching 0.
pub fn descending_seq(a: &Ordinal, length: usize, index_fn: &EvalFn) -> Result<Vec<Ordinal>> {
    if a.is_zero() {
        return Err(Error::ZeroOrdinal);
    }
    if length == 0 {
        return Err(Error::Invalid("sequence length must be at least 1".into()));
    }
    let mut out = vec![a.clone()];
    while out.len() < length {
        let prev = out.last().unwrap();
        if prev.is_zero() {
            break;
        }
        let next = fund_step(prev, index_fn.eval(out.len() as u64 - 1)?)?;
        out.push(next);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    fn set(v: &[u64]) -> FiniteSet {
        FiniteSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn fund_step_examples() {
        assert_eq!(fund_step(&o("w"), 3).unwrap(), o("3"));
        assert_eq!(fund_step(&o("w+1"), 5).unwrap(), o("w"));
        assert_eq!(fund_step(&o("w^w"), 2).unwrap(), o("w^2"));
        assert_eq!(fund_step(&o("w^2*3"), 4).unwrap(), o("w^2*2+w*4"));
        assert_eq!(fund_step(&o("w^(w+1)"), 2).unwrap(), o("w^w*2"));
        assert_eq!(fund_step(&o("w^2"), 0).unwrap(), o("0"));
        assert_eq!(fund_step(&o("w^w"), 0).unwrap(), o("1"));
        assert_eq!(fund_step(&Ordinal::zero(), 1), Err(Error::ZeroOrdinal));
    }

    #[test]
    fn largeness_examples() {
        assert!(is_alpha_large(&o("w"), &set(&[1, 2])));
        assert!(is_alpha_large(&o("3"), &set(&[4, 10, 11])));
        assert!(!is_alpha_large(&o("w"), &set(&[5])));
        assert!(is_alpha_large(&Ordinal::zero(), &FiniteSet::empty()));
        assert!(!is_alpha_large(&o("1"), &FiniteSet::empty()));
    }

    #[test]
    fn find_examples() {
        let f = EvalFn::shift(1);
        assert_eq!(
            find_alpha_large(&o("w*2"), &f, 0).unwrap(),
            set(&[1, 2, 3, 4, 5, 6])
        );
        assert_eq!(
            find_alpha_large(&Ordinal::zero(), &f, 9).unwrap(),
            FiniteSet::empty()
        );
        assert_eq!(
            find_alpha_large(&o("w"), &EvalFn::identity(), 1).unwrap(),
            set(&[1, 2])
        );
    }

    #[test]
    fn find_errors() {
        assert_eq!(
            find_alpha_large_with_budget(&o("w^w"), &EvalFn::shift(1), 3, 10),
            Err(Error::BudgetExceeded { limit: 10 })
        );
        assert!(matches!(
            find_alpha_large(&o("w"), &EvalFn::constant(4), 0),
            Err(Error::Invalid(_))
        ));
    }

    #[test]
    fn descending_examples() {
        assert_eq!(
            descending_seq(&o("w^2"), 3, &EvalFn::shift(1)).unwrap(),
            vec![o("w^2"), o("w"), o("2")]
        );
        let five: Vec<Ordinal> = (0..=5).rev().map(Ordinal::nat).collect();
        assert_eq!(
            descending_seq(&o("5"), 10, &EvalFn::identity()).unwrap(),
            five
        );
        assert_eq!(
            descending_seq(&o("w"), 2, &EvalFn::constant(7)).unwrap(),
            vec![o("w"), o("7")]
        );
        assert_eq!(
            descending_seq(&Ordinal::zero(), 2, &EvalFn::identity()),
            Err(Error::ZeroOrdinal)
        );
    }

    #[test]
    fn finite_set_validation() {
        assert!(FiniteSet::new(vec![1, 1]).is_err());
        assert!(FiniteSet::new(vec![2, 1]).is_err());
        assert_eq!(FiniteSet::from_unsorted(vec![3, 1, 3]), set(&[1, 3]));
        assert!(serde_json::from_str::<FiniteSet>("[3,2]").is_err());
        assert!(set(&[1, 3]).is_subset(&set(&[0, 1, 2, 3])));
    }
}
