//! Finite colorings of `d`-subsets and the witness engines built on them.
//!
//! Subsets are increasing tuples, enumerated lexicographically. A coloring's
//! color table follows that order, which makes every witness reproducible
//! byte-for-byte.

mod search;
mod size;
mod tree;

pub use search::{
    check_ks_instance, find_good_set, frt_holds_at, min_frt_witness, search_bad_coloring, Goal,
    KsGoal, SaphGoal, SearchConfig, SearchVerdict, StrictSize, DEFAULT_SEARCH_BUDGET,
};
pub use size::{counterexample_size_fn, eval_size_fn, SizeFunction, SizeTable};
pub use tree::{build_compactness_tree, CompactnessTree, TreeLevel};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fundamental::FiniteSet;
use crate::subsets::{LexSubsets, SubsetIndex};

/// A coloring of the `d`-element subsets of a finite ground set into `k` colors.
///
/// The ground set is usually an interval `[a, R]`, but the Ketonen–Solovay
/// instance check colors subsets of an arbitrary finite set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetColoring {
    d: usize,
    k: u32,
    points: Vec<u64>,
    colors: Vec<u32>,
}

impl SubsetColoring {
    pub fn new(d: usize, k: u32, points: Vec<u64>, colors: Vec<u32>) -> Result<Self> {
        if d == 0 {
            return Err(Error::Invalid("subset size d must be positive".into()));
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid(
                "ground set must be strictly increasing".into(),
            ));
        }
        let expected = SubsetIndex::new(points.len(), d).count();
        if colors.len() != expected {
            return Err(Error::LengthMismatch {
                left: colors.len(),
                right: expected,
            });
        }
        if let Some(&c) = colors.iter().find(|&&c| c >= k) {
            return Err(Error::Invalid(format!(
                "color {c} out of range for k = {k}"
            )));
        }
        Ok(SubsetColoring {
            d,
            k,
            points,
            colors,
        })
    }

    /// A coloring of the `d`-subsets of `[a, r]`.
    pub fn on_interval(d: usize, k: u32, a: u64, r: u64, colors: Vec<u32>) -> Result<Self> {
        if r < a {
            return Err(Error::Invalid(format!("empty interval [{a}, {r}]")));
        }
        SubsetColoring::new(d, k, (a..=r).collect(), colors)
    }

    /// Builds the coloring `c(x)` by evaluating a closure on every subset.
    pub fn from_fn(
        d: usize,
        k: u32,
        points: Vec<u64>,
        mut c: impl FnMut(&[u64]) -> u32,
    ) -> Result<Self> {
        let mut buf = vec![0; d];
        let colors = LexSubsets::new(points.len(), d)
            .map(|s| {
                for (b, &i) in buf.iter_mut().zip(&s) {
                    *b = points[i];
                }
                c(&buf)
            })
            .collect();
        SubsetColoring::new(d, k, points, colors)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn points(&self) -> &[u64] {
        &self.points
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    /// `(a, R)` when the ground set is a nonempty interval.
    pub fn interval(&self) -> Option<(u64, u64)> {
        let (&a, &r) = (self.points.first()?, self.points.last()?);
        (r - a + 1 == self.points.len() as u64).then_some((a, r))
    }

    fn index_of(&self, x: u64) -> Result<usize> {
        self.points
            .binary_search(&x)
            .map_err(|_| Error::OutOfDomain(x))
    }

    /// Color of a `d`-subset given in increasing order.
    pub fn color(&self, subset: &[u64]) -> Result<u32> {
        if subset.len() != self.d {
            return Err(Error::Arity {
                expected: self.d,
                got: subset.len(),
            });
        }
        let idx = subset
            .iter()
            .map(|&x| self.index_of(x))
            .collect::<Result<Vec<_>>>()?;
        if idx.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid("subset must be strictly increasing".into()));
        }
        Ok(self.colors[SubsetIndex::new(self.points.len(), self.d).rank(&idx)])
    }

    /// The coloring restricted to the first `n` ground points.
    pub fn restrict_to_prefix(&self, n: usize) -> SubsetColoring {
        let n = n.min(self.points.len());
        let index = SubsetIndex::new(self.points.len(), self.d);
        let colors = LexSubsets::new(n, self.d)
            .map(|s| self.colors[index.rank(&s)])
            .collect();
        SubsetColoring {
            d: self.d,
            k: self.k,
            points: self.points[..n].to_vec(),
            colors,
        }
    }
}

/// True iff every `d`-subset of `h` receives the same color. Sets with at
/// most `d` elements are homogeneous.
pub fn is_homogeneous(c: &SubsetColoring, h: &FiniteSet) -> Result<bool> {
    let idx = h
        .as_slice()
        .iter()
        .map(|&x| c.index_of(x))
        .collect::<Result<Vec<_>>>()?;
    if idx.len() <= c.d {
        return Ok(true);
    }
    let index = SubsetIndex::new(c.points.len(), c.d);
    let mut first = None;
    let mut buf = vec![0; c.d];
    for s in LexSubsets::new(idx.len(), c.d) {
        for (b, &i) in buf.iter_mut().zip(&s) {
            *b = idx[i];
        }
        let color = c.colors[index.rank(&buf)];
        if *first.get_or_insert(color) != color {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Serialize, Deserialize)]
struct ColoringRepr {
    d: usize,
    k: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a: Option<u64>,
    #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
    r: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    points: Option<Vec<u64>>,
    colors: Vec<u32>,
}

impl Serialize for SubsetColoring {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (a, r, points) = match self.interval() {
            Some((a, r)) => (Some(a), Some(r), None),
            None => (None, None, Some(self.points.clone())),
        };
        ColoringRepr {
            d: self.d,
            k: self.k,
            a,
            r,
            points,
            colors: self.colors.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SubsetColoring {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = ColoringRepr::deserialize(d)?;
        let points = match (repr.points, repr.a, repr.r) {
            (Some(p), None, None) => p,
            (None, Some(a), Some(r)) if a <= r => (a..=r).collect(),
            _ => {
                return Err(D::Error::custom(
                    "expected either a and R with a <= R, or points",
                ))
            }
        };
        SubsetColoring::new(repr.d, repr.k, points, repr.colors).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn homogeneity_examples() {
        let c = SubsetColoring::on_interval(2, 2, 0, 2, vec![0, 1, 0]).unwrap();
        assert!(is_homogeneous(&c, &FiniteSet::new(vec![1]).unwrap()).unwrap());
        assert!(!is_homogeneous(&c, &FiniteSet::new(vec![0, 1, 2]).unwrap()).unwrap());
        assert!(is_homogeneous(&c, &FiniteSet::empty()).unwrap());
        let constant = SubsetColoring::on_interval(3, 4, 2, 7, vec![3; 20]).unwrap();
        assert!(is_homogeneous(&constant, &FiniteSet::new(vec![2, 3, 5, 6, 7]).unwrap()).unwrap());
        assert_eq!(
            is_homogeneous(&c, &FiniteSet::new(vec![0, 9]).unwrap()),
            Err(Error::OutOfDomain(9))
        );
    }

    #[test]
    fn validation() {
        assert!(SubsetColoring::on_interval(2, 2, 0, 2, vec![0, 1]).is_err());
        assert!(SubsetColoring::on_interval(2, 2, 0, 2, vec![0, 1, 2]).is_err());
        assert!(SubsetColoring::on_interval(2, 2, 3, 2, vec![]).is_err());
        assert!(SubsetColoring::new(0, 2, vec![1], vec![0]).is_err());
    }

    #[test]
    fn color_lookup_and_restriction() {
        let c =
            SubsetColoring::from_fn(2, 5, (1..=4).collect(), |s| (s[0] + s[1]) as u32 % 5).unwrap();
        assert_eq!(c.color(&[2, 4]).unwrap(), 1);
        assert!(c.color(&[4, 2]).is_err());
        let r = c.restrict_to_prefix(3);
        assert_eq!(r.points(), &[1, 2, 3]);
        assert_eq!(r.colors(), &[3, 4, 0]);
    }

    #[test]
    fn json_shapes() {
        let c = SubsetColoring::on_interval(2, 2, 0, 2, vec![0, 1, 0]).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(text, r#"{"d":2,"k":2,"a":0,"R":2,"colors":[0,1,0]}"#);
        assert_eq!(serde_json::from_str::<SubsetColoring>(&text).unwrap(), c);
        let sparse = SubsetColoring::new(2, 2, vec![3, 5, 9], vec![0, 0, 1]).unwrap();
        let text = serde_json::to_string(&sparse).unwrap();
        assert_eq!(text, r#"{"d":2,"k":2,"points":[3,5,9],"colors":[0,0,1]}"#);
        assert!(serde_json::from_str::<SubsetColoring>(
            r#"{"d":2,"k":2,"a":0,"R":2,"colors":[0]}"#
        )
        .is_err());
    }
}
