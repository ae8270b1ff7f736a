//! Adjacent Ramsey searches and the colorings derived from ordinal sequences.

use serde::{Deserialize, Serialize};

use crate::encoding::{code_len, code_leq, encode, CodeVector};
use crate::error::{Error, Result};
use crate::evalfn::EvalFn;
use crate::ordinal::Ordinal;
use crate::ramsey::{search_bad_coloring, SaphGoal, SearchConfig, SearchVerdict, SubsetColoring};
use crate::subsets::{LexSubsets, SubsetIndex};

/// A map from increasing `d`-tuples in `[0, N]` to vectors of length `r`,
/// stored in lexicographic tuple order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "AdjacentRepr", into = "AdjacentRepr")]
pub struct AdjacentColoring {
    d: usize,
    r: usize,
    n: u64,
    values: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
struct AdjacentRepr {
    d: usize,
    r: usize,
    #[serde(rename = "N")]
    n: u64,
    values: Vec<Vec<u64>>,
}

impl TryFrom<AdjacentRepr> for AdjacentColoring {
    type Error = Error;

    fn try_from(x: AdjacentRepr) -> Result<Self> {
        AdjacentColoring::new(x.d, x.r, x.n, x.values)
    }
}

impl From<AdjacentColoring> for AdjacentRepr {
    fn from(c: AdjacentColoring) -> Self {
        AdjacentRepr {
            d: c.d,
            r: c.r,
            n: c.n,
            values: c.values,
        }
    }
}

impl AdjacentColoring {
    pub fn new(d: usize, r: usize, n: u64, values: Vec<Vec<u64>>) -> Result<Self> {
        if d == 0 || r == 0 {
            return Err(Error::Invalid("d and r must be positive".into()));
        }
        let expected = SubsetIndex::new(n as usize + 1, d).count();
        if values.len() != expected {
            return Err(Error::LengthMismatch {
                left: values.len(),
                right: expected,
            });
        }
        if let Some(v) = values.iter().find(|v| v.len() != r) {
            return Err(Error::LengthMismatch {
                left: v.len(),
                right: r,
            });
        }
        Ok(AdjacentColoring { d, r, n, values })
    }

    /// Tabulates `c` on every increasing `d`-tuple in `[0, n]`.
    pub fn from_fn(
        d: usize,
        r: usize,
        n: u64,
        mut c: impl FnMut(&[u64]) -> Vec<u64>,
    ) -> Result<Self> {
        let values = LexSubsets::new(n as usize + 1, d)
            .map(|s| c(&s.iter().map(|&x| x as u64).collect::<Vec<_>>()))
            .collect();
        AdjacentColoring::new(d, r, n, values)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn values(&self) -> &[Vec<u64>] {
        &self.values
    }

    fn index(&self) -> SubsetIndex {
        SubsetIndex::new(self.n as usize + 1, self.d)
    }

    pub fn value(&self, tuple: &[u64]) -> Result<&[u64]> {
        if tuple.len() != self.d {
            return Err(Error::Arity {
                expected: self.d,
                got: tuple.len(),
            });
        }
        if let Some(&x) = tuple.iter().find(|&&x| x > self.n) {
            return Err(Error::OutOfDomain(x));
        }
        if tuple.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid("tuple must be strictly increasing".into()));
        }
        let idx: Vec<usize> = tuple.iter().map(|&x| x as usize).collect();
        Ok(&self.values[self.index().rank(&idx)])
    }
}

fn leq(u: &[u64], v: &[u64]) -> bool {
    u.iter().zip(v).all(|(a, b)| a <= b)
}

/// The lexicographically first `x_1 < … < x_{d+1} ≤ N` whose two adjacent
/// windows have coordinatewise increasing values.
pub fn ar_search(c: &AdjacentColoring) -> Option<Vec<u64>> {
    let index = c.index();
    LexSubsets::new(c.n as usize + 1, c.d + 1)
        .find(|xs| {
            leq(
                &c.values[index.rank(&xs[..c.d])],
                &c.values[index.rank(&xs[1..])],
            )
        })
        .map(|xs| xs.into_iter().map(|x| x as u64).collect())
}

fn codes(l: u64, d: usize, seq: &[Ordinal], n: usize) -> Result<Vec<CodeVector>> {
    let mut buf = Vec::with_capacity(d);
    LexSubsets::new(n, d)
        .map(|s| {
            buf.clear();
            buf.extend(s.iter().map(|&i| seq[i].clone()));
            encode(l, d, &buf)
        })
        .collect()
}

/// `C(x_1,…,x_d) = F_d^l(seq[x_1], …, seq[x_d])` on `[0, |seq|−1]`.
pub fn ordinal_coloring(l: u64, d: usize, seq: &[Ordinal]) -> Result<AdjacentColoring> {
    if seq.is_empty() {
        return Err(Error::Invalid("sequence must be nonempty".into()));
    }
    let values = codes(l, d, seq, seq.len())?
        .into_iter()
        .map(|c| c.entries().to_vec())
        .collect();
    AdjacentColoring::new(d, code_len(l, d), seq.len() as u64 - 1, values)
}

/// The `(d+1)`-subset coloring of `[0, R]` into `2d + l + 1` colors: 0 when
/// the window codes increase coordinatewise, otherwise the least 1-based
/// coordinate at which the first window's code is larger.
pub fn lower_bound_coloring(l: u64, d: usize, seq: &[Ordinal], r: u64) -> Result<SubsetColoring> {
    let n = r as usize + 1;
    if n > seq.len() {
        return Err(Error::LengthMismatch {
            left: seq.len(),
            right: n,
        });
    }
    let window = codes(l, d, seq, n)?;
    let index = SubsetIndex::new(n, d);
    let colors = LexSubsets::new(n, d + 1)
        .map(|xs| {
            let (u, v) = (&window[index.rank(&xs[..d])], &window[index.rank(&xs[1..])]);
            if code_leq(u, v).expect("equal lengths") {
                0
            } else {
                let i = u
                    .entries()
                    .iter()
                    .zip(v.entries())
                    .position(|(a, b)| a > b)
                    .unwrap();
                i as u32 + 1
            }
        })
        .collect();
    SubsetColoring::on_interval(d + 1, (2 * d) as u32 + l as u32 + 1, 0, r, colors)
}

/// `max { C(y)_j : y an increasing d-tuple in [0, x] }`, 0 when there is none.
pub fn derive_bound_fn(c: &AdjacentColoring, x: u64) -> Result<u64> {
    if x > c.n {
        return Err(Error::OutOfDomain(x));
    }
    let index = c.index();
    Ok(LexSubsets::new(x as usize + 1, c.d)
        .flat_map(|s| c.values[index.rank(&s)].iter().copied())
        .max()
        .unwrap_or(0))
}

/// Least `R ≤ r_max` such that every coloring of the `d`-subsets of `[m, R]`
/// into colors `0..=c` has a homogeneous `H = {h_1 < h_2 < …}` with
/// `|H| ≥ f(h_anchor)`.
pub fn saph_search(
    d: usize,
    c: u32,
    anchor: usize,
    m: u64,
    f: &EvalFn,
    r_max: u64,
    cfg: &SearchConfig,
) -> Result<Option<u64>> {
    if anchor == 0 {
        return Err(Error::Invalid("the anchor index k counts from 1".into()));
    }
    let goal = SaphGoal { anchor, f };
    for r in m..=r_max {
        let points: Vec<u64> = (m..=r).collect();
        match search_bad_coloring(&points, d, c + 1, &goal, cfg)? {
            SearchVerdict::AllGood => return Ok(Some(r)),
            SearchVerdict::BadColoring { .. } => {}
            SearchVerdict::NotFound { budget } => {
                return Err(Error::BudgetExceeded { limit: budget })
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn ar_search_examples() {
        let constant = AdjacentColoring::from_fn(2, 3, 5, |_| vec![4, 4, 4]).unwrap();
        assert_eq!(ar_search(&constant), Some(vec![0, 1, 2]));
        let dip = AdjacentColoring::from_fn(1, 1, 6, |x| vec![5u64.saturating_sub(x[0])]).unwrap();
        assert_eq!(ar_search(&dip), Some(vec![5, 6]));
        let down = AdjacentColoring::from_fn(1, 1, 6, |x| vec![10 - x[0]]).unwrap();
        assert_eq!(ar_search(&down), None);
    }

    #[test]
    fn ordinal_coloring_examples() {
        let seq = vec![o("w^2+1"); 6];
        let c = ordinal_coloring(1, 2, &seq).unwrap();
        assert_eq!(c.r(), 4);
        assert_eq!(ar_search(&c), Some(vec![0, 1, 2]));
        let desc = [
            o("w^(w+1)"),
            o("w^w*2"),
            o("w^3"),
            o("w^2*2+w"),
            o("w^2+5"),
            o("7"),
        ];
        assert_eq!(ar_search(&ordinal_coloring(1, 2, &desc).unwrap()), None);
        assert!(ordinal_coloring(0, 2, &[o("w^w"), o("1")]).is_err());
    }

    #[test]
    fn lower_bound_examples() {
        let seq = [o("3"), o("2"), o("1")];
        let c = lower_bound_coloring(0, 1, &seq, 2).unwrap();
        assert_eq!(c.colors(), &[1, 1, 1]);
        assert_eq!(c.k(), 3);
        let flat = lower_bound_coloring(1, 2, &vec![o("w+2"); 5], 4).unwrap();
        assert!(flat.colors().iter().all(|&x| x == 0));
        assert!(lower_bound_coloring(0, 1, &seq, 3).is_err());
    }

    #[test]
    fn bound_fn_examples() {
        let constant = AdjacentColoring::from_fn(2, 2, 4, |_| vec![3, 3]).unwrap();
        assert_eq!(derive_bound_fn(&constant, 0).unwrap(), 0);
        assert_eq!(derive_bound_fn(&constant, 1).unwrap(), 3);
        let id = AdjacentColoring::from_fn(1, 1, 9, |x| vec![x[0]]).unwrap();
        assert_eq!(derive_bound_fn(&id, 7).unwrap(), 7);
        assert!(derive_bound_fn(&id, 10).is_err());
    }

    #[test]
    fn saph_examples() {
        let cfg = SearchConfig::default();
        assert_eq!(
            saph_search(1, 1, 1, 2, &EvalFn::identity(), 20, &cfg).unwrap(),
            Some(5)
        );
        assert_eq!(
            saph_search(1, 0, 1, 0, &EvalFn::constant(1), 5, &cfg).unwrap(),
            Some(0)
        );
    }

    #[test]
    fn json_shape() {
        let c = AdjacentColoring::from_fn(1, 2, 2, |x| vec![x[0], 1]).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(text, r#"{"d":1,"r":2,"N":2,"values":[[0,1],[1,1],[2,1]]}"#);
        assert_eq!(serde_json::from_str::<AdjacentColoring>(&text).unwrap(), c);
        assert!(serde_json::from_str::<AdjacentColoring>(
            r#"{"d":1,"r":2,"N":2,"values":[[0,1]]}"#
        )
        .is_err());
    }
}
