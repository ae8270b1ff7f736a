//! The tuple encoding `F_d^l` of ordinals below `ω_d(l+1)` into vectors of
//! naturals of length `2d + l − 1`.
//!
//! For `d = 1` the code of `α` is its coefficient list at exponents
//! `l, l−1, …, 0`. For `d + 1` arguments the code is
//! `(cp(α₁,α₂), cc(α₁,α₂))` followed by the `d`-code of the comparison
//! exponents `ce(α₁,α₂), …, ce(α_d,α_{d+1})`.
//!
//! The key property is the window lemma: if the code of `(α₁,…,α_d)` is
//! coordinatewise below the code of `(α₂,…,α_{d+1})` then `α₁ ≤ α₂`. So a
//! strictly descending sequence never produces two adjacent windows whose
//! codes increase.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ordinal::{comparison_data, omega_tower, Ordinal};

/// Output of [`encode`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CodeVector(Vec<u64>);

impl CodeVector {
    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_entry(&self) -> u64 {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

impl From<Vec<u64>> for CodeVector {
    fn from(v: Vec<u64>) -> Self {
        CodeVector(v)
    }
}

/// `2d + l − 1`.
pub fn code_len(l: u64, d: usize) -> usize {
    2 * d + l as usize - 1
}

pub fn encode(l: u64, d: usize, alphas: &[Ordinal]) -> Result<CodeVector> {
    if d == 0 {
        return Err(Error::Invalid("encoding dimension must be positive".into()));
    }
    if alphas.len() != d {
        return Err(Error::Arity {
            expected: d,
            got: alphas.len(),
        });
    }
    let bound = omega_tower(d, l + 1)?;
    if let Some(bad) = alphas.iter().find(|a| **a >= bound) {
        return Err(Error::Domain(format!("{bad} is not below {bound}")));
    }
    let mut out = Vec::with_capacity(code_len(l, d));
    encode_into(l, alphas, &mut out);
    debug_assert_eq!(out.len(), code_len(l, d));
    Ok(CodeVector(out))
}

fn encode_into(l: u64, alphas: &[Ordinal], out: &mut Vec<u64>) {
    if let [alpha] = alphas {
        out.extend(
            (0..=l)
                .rev()
                .map(|e| alpha.coefficient_of(&Ordinal::nat(e))),
        );
        return;
    }
    let head = comparison_data(&alphas[0], &alphas[1]);
    out.push(head.cp as u64);
    out.push(head.cc);
    let mut exps = Vec::with_capacity(alphas.len() - 1);
    exps.push(head.ce);
    exps.extend(
        alphas[1..]
            .windows(2)
            .map(|w| comparison_data(&w[0], &w[1]).ce),
    );
    encode_into(l, &exps, out);
}

/// Coordinatewise `≤`.
pub fn code_leq(u: &CodeVector, v: &CodeVector) -> Result<bool> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    Ok(u.0.iter().zip(&v.0).all(|(a, b)| a <= b))
}

/// Checks one instance of the window lemma on `d + 1` ordinals: a
/// coordinatewise increase between the two windows' codes must imply
/// `alphas[0] ≤ alphas[1]`.
pub fn window_lemma_check(l: u64, d: usize, alphas: &[Ordinal]) -> Result<bool> {
    if alphas.len() != d + 1 {
        return Err(Error::Arity {
            expected: d + 1,
            got: alphas.len(),
        });
    }
    let first = encode(l, d, &alphas[..d])?;
    let second = encode(l, d, &alphas[1..])?;
    Ok(!code_leq(&first, &second)? || alphas[0].cmp(&alphas[1]) != Ordering::Greater)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    fn v(x: &[u64]) -> CodeVector {
        CodeVector(x.to_vec())
    }

    #[test]
    fn encode_examples() {
        assert_eq!(encode(2, 1, &[o("w^2*2+1")]).unwrap(), v(&[2, 0, 1]));
        let a = o("w^3+w*4");
        assert_eq!(encode(0, 2, &[o("7"), o("7")]).unwrap(), v(&[0, 0, 0]));
        assert_eq!(encode(3, 2, &[a.clone(), a]).unwrap().len(), 6);
        assert_eq!(
            encode(0, 2, &[o("w^2*3+w"), o("w^2*3")]).unwrap(),
            v(&[2, 1, 1])
        );
    }

    #[test]
    fn encode_errors() {
        assert!(matches!(encode(1, 1, &[o("w^2")]), Err(Error::Domain(_))));
        assert!(matches!(
            encode(0, 2, &[o("w^w"), o("1")]),
            Err(Error::Domain(_))
        ));
        assert_eq!(
            encode(0, 2, &[o("1")]),
            Err(Error::Arity {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn code_leq_examples() {
        assert!(code_leq(&v(&[2, 1, 1]), &v(&[2, 1, 1])).unwrap());
        assert!(!code_leq(&v(&[1, 5, 0]), &v(&[2, 0, 0])).unwrap());
        assert!(code_leq(&v(&[0, 0, 0]), &v(&[4, 0, 9])).unwrap());
        assert!(code_leq(&v(&[0]), &v(&[0, 0])).is_err());
    }

    #[test]
    fn window_lemma_examples() {
        let a = o("w^2+3");
        assert!(window_lemma_check(1, 2, &[a.clone(), a.clone(), a]).unwrap());
        let desc = [o("w^(w+1)"), o("w^w*2"), o("w^3")];
        assert!(window_lemma_check(1, 2, &desc).unwrap());
        let first = encode(1, 2, &desc[..2]).unwrap();
        let second = encode(1, 2, &desc[1..]).unwrap();
        assert!(!code_leq(&first, &second).unwrap());
        assert!(window_lemma_check(1, 2, &[o("1"), o("w"), o("0")]).unwrap());
    }
}
