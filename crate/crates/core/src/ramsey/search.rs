//! Backtracking search for bad colorings.
//!
//! A coloring is *bad* for a goal when no homogeneous set satisfies the goal.
//! The search assigns colors to `d`-subsets in lexicographic order. A set `H`
//! is fully colored exactly when its top `d` elements (its lexicographically
//! last `d`-subset) are, so after each assignment only sets ending in the new
//! subset need checking. Colors are tried in restricted-growth order (a new
//! color only after all smaller ones are used); every goal here ignores color
//! names, so the lexicographically first bad coloring survives this cut.
//!
//! The tree is split at a fixed depth into prefixes which are explored either
//! sequentially or on the rayon pool. Budget accounting is defined over that
//! split (all prefix nodes first, then subtrees in order), so both modes
//! return identical verdicts, witnesses and budget failures.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{is_homogeneous, SizeFunction, SubsetColoring};
use crate::error::{Error, Result};
use crate::evalfn::EvalFn;
use crate::fundamental::FiniteSet;
use crate::subsets::{LexSubsets, SubsetIndex};

pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

/// Number of prefixes the search tree is split into before fanning out.
const SPLIT_TARGET: usize = 256;

/// Largest ground set [`find_good_set`] will scan exhaustively.
const MAX_SCAN_POINTS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of color assignments tried.
    pub budget: u64,
    pub parallel: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: DEFAULT_SEARCH_BUDGET,
            parallel: true,
        }
    }
}

impl SearchConfig {
    pub fn sequential() -> Self {
        SearchConfig {
            parallel: false,
            ..SearchConfig::default()
        }
    }
}

/// What a homogeneous set must satisfy to count as a witness.
pub trait Goal: Sync {
    /// `h` is nonempty and increasing.
    fn is_good(&self, h: &[u64]) -> Result<bool>;
}

/// `|H| > F(H)`.
pub struct StrictSize<'a>(pub &'a SizeFunction);

impl Goal for StrictSize<'_> {
    fn is_good(&self, h: &[u64]) -> Result<bool> {
        self.0.is_large(h)
    }
}

/// `|H| ≥ min H`.
pub struct KsGoal;

impl Goal for KsGoal {
    fn is_good(&self, h: &[u64]) -> Result<bool> {
        Ok(h.len() as u64 >= h[0])
    }
}

/// `|H| ≥ f(h_anchor)` with `h_1` the least element.
pub struct SaphGoal<'a> {
    pub anchor: usize,
    pub f: &'a EvalFn,
}

impl Goal for SaphGoal<'_> {
    fn is_good(&self, h: &[u64]) -> Result<bool> {
        match h.get(self.anchor.wrapping_sub(1)) {
            Some(&x) => Ok(h.len() as u64 >= self.f.eval(x)?),
            None => Ok(false),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SearchVerdict {
    AllGood,
    BadColoring { witness: SubsetColoring },
    NotFound { budget: u64 },
}

enum Flow {
    Found(Vec<u32>, u64),
    Exhausted(u64),
    OverBudget,
    Aborted,
}

struct Engine<'a> {
    points: &'a [u64],
    d: usize,
    k: u32,
    subs: Vec<Vec<usize>>,
    index: SubsetIndex,
    goal: &'a dyn Goal,
}

#[derive(Clone)]
struct Prefix {
    colors: Vec<u32>,
    used: u32,
}

impl Engine<'_> {
    fn values(&self, idx: &[usize]) -> Vec<u64> {
        idx.iter().map(|&i| self.points[i]).collect()
    }

    /// Does the newest assignment complete a good homogeneous set?
    fn completes_good_set(&self, colors: &[u32]) -> Result<bool> {
        let p = colors.len() - 1;
        let mut cur = self.subs[p].clone();
        self.extend_down(colors, &mut cur, colors[p])
    }

    fn extend_down(&self, colors: &[u32], cur: &mut Vec<usize>, c: u32) -> Result<bool> {
        for t in (0..cur[0]).rev() {
            if !self.joins(colors, t, cur, c) {
                continue;
            }
            cur.insert(0, t);
            let good = self.goal.is_good(&self.values(cur))? || self.extend_down(colors, cur, c)?;
            cur.remove(0);
            if good {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Every `d`-subset `{t} ∪ Y` with `Y ⊆ cur` has color `c`.
    fn joins(&self, colors: &[u32], t: usize, cur: &[usize], c: u32) -> bool {
        let mut buf = vec![t; self.d];
        LexSubsets::new(cur.len(), self.d - 1).all(|ys| {
            for (b, &y) in buf[1..].iter_mut().zip(&ys) {
                *b = cur[y];
            }
            colors[self.index.rank(&buf)] == c
        })
    }

    fn children(&self, prefix: &Prefix) -> impl Iterator<Item = u32> {
        0..=prefix.used.min(self.k - 1)
    }

    fn dfs(
        &self,
        prefix: &mut Prefix,
        spent: &mut u64,
        cap: u64,
        job: usize,
        winner: &AtomicUsize,
    ) -> Result<Flow> {
        if prefix.colors.len() == self.subs.len() {
            return Ok(Flow::Found(prefix.colors.clone(), *spent));
        }
        if *spent & 0x3ff == 0 && winner.load(Ordering::Relaxed) < job {
            return Ok(Flow::Aborted);
        }
        let used = prefix.used;
        for c in self.children(prefix) {
            *spent += 1;
            if *spent > cap {
                return Ok(Flow::OverBudget);
            }
            prefix.colors.push(c);
            prefix.used = used.max(c + 1);
            if !self.completes_good_set(&prefix.colors)? {
                match self.dfs(prefix, spent, cap, job, winner)? {
                    Flow::Exhausted(_) => {}
                    other => return Ok(other),
                }
            }
            prefix.colors.pop();
            prefix.used = used;
        }
        Ok(Flow::Exhausted(*spent))
    }

    /// Expands prefixes breadth-first, in lexicographic order, until there
    /// are enough of them or the colorings are complete.
    fn split(&self, budget: u64) -> Result<Option<(Vec<Prefix>, u64)>> {
        let mut level = vec![Prefix {
            colors: Vec::new(),
            used: 0,
        }];
        let mut spent = 0u64;
        while !level.is_empty()
            && level.len() < SPLIT_TARGET
            && level[0].colors.len() < self.subs.len()
        {
            let mut next = Vec::new();
            for p in &level {
                for c in self.children(p) {
                    spent += 1;
                    if spent > budget {
                        return Ok(None);
                    }
                    let mut child = p.clone();
                    child.colors.push(c);
                    child.used = child.used.max(c + 1);
                    if !self.completes_good_set(&child.colors)? {
                        next.push(child);
                    }
                }
            }
            level = next;
        }
        Ok(Some((level, spent)))
    }

    fn run(&self, cfg: &SearchConfig) -> Result<SearchVerdict> {
        let Some((prefixes, phase1)) = self.split(cfg.budget)? else {
            return Ok(SearchVerdict::NotFound { budget: cfg.budget });
        };
        let cap = cfg.budget - phase1;
        let winner = AtomicUsize::new(usize::MAX);
        let explore = |(job, p): (usize, &Prefix)| -> Result<Flow> {
            if winner.load(Ordering::Relaxed) < job {
                return Ok(Flow::Aborted);
            }
            let mut p = p.clone();
            let mut spent = 0;
            let flow = self.dfs(&mut p, &mut spent, cap, job, &winner)?;
            if matches!(flow, Flow::Found(..) | Flow::OverBudget) {
                winner.fetch_min(job, Ordering::Relaxed);
            }
            Ok(flow)
        };
        let mut cumulative = phase1;
        let mut settle = |flow: Flow| -> Option<SearchVerdict> {
            match flow {
                Flow::Found(colors, at) if cumulative + at <= cfg.budget => {
                    Some(SearchVerdict::BadColoring {
                        witness: SubsetColoring {
                            d: self.d,
                            k: self.k,
                            points: self.points.to_vec(),
                            colors,
                        },
                    })
                }
                Flow::Exhausted(spent) if cumulative + spent <= cfg.budget => {
                    cumulative += spent;
                    None
                }
                Flow::Aborted => unreachable!("aborted jobs lie past the deciding one"),
                _ => Some(SearchVerdict::NotFound { budget: cfg.budget }),
            }
        };
        if cfg.parallel {
            let flows: Vec<Result<Flow>> = prefixes.par_iter().enumerate().map(explore).collect();
            for flow in flows {
                if let Some(v) = settle(flow?) {
                    return Ok(v);
                }
            }
        } else {
            for job in prefixes.iter().enumerate() {
                if let Some(v) = settle(explore(job)?) {
                    return Ok(v);
                }
            }
        }
        Ok(SearchVerdict::AllGood)
    }
}

/// Searches the colorings of `d`-subsets of `points` into `k` colors for the
/// lexicographically first one admitting no good homogeneous set.
pub fn search_bad_coloring(
    points: &[u64],
    d: usize,
    k: u32,
    goal: &dyn Goal,
    cfg: &SearchConfig,
) -> Result<SearchVerdict> {
    if d == 0 || k == 0 {
        return Err(Error::Invalid("d and k must be positive".into()));
    }
    if points.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Invalid(
            "ground set must be strictly increasing".into(),
        ));
    }
    let n = points.len();
    // Sets of at most d elements are homogeneous under every coloring.
    for size in 1..=d.min(n) {
        for s in LexSubsets::new(n, size) {
            let h: Vec<u64> = s.iter().map(|&i| points[i]).collect();
            if goal.is_good(&h)? {
                return Ok(SearchVerdict::AllGood);
            }
        }
    }
    let index = SubsetIndex::new(n, d);
    let engine = Engine {
        points,
        d,
        k,
        subs: index.iter().collect(),
        index,
        goal,
    };
    engine.run(cfg)
}

/// FRT at a fixed `R`: does every `k`-coloring of `[a, R]^d` have a
/// homogeneous `H` with `|H| > F(H)`?
pub fn frt_holds_at(
    f: &SizeFunction,
    d: usize,
    k: u32,
    a: u64,
    r: u64,
    cfg: &SearchConfig,
) -> Result<SearchVerdict> {
    if r < a {
        return Err(Error::Invalid(format!("empty interval [{a}, {r}]")));
    }
    let points: Vec<u64> = (a..=r).collect();
    search_bad_coloring(&points, d, k, &StrictSize(f), cfg)
}

/// Least `R ≤ r_max` at which [`frt_holds_at`] is `AllGood`.
pub fn min_frt_witness(
    f: &SizeFunction,
    d: usize,
    k: u32,
    a: u64,
    r_max: u64,
    cfg: &SearchConfig,
) -> Result<Option<u64>> {
    for r in a..=r_max {
        match frt_holds_at(f, d, k, a, r, cfg)? {
            SearchVerdict::AllGood => return Ok(Some(r)),
            SearchVerdict::BadColoring { .. } => {}
            SearchVerdict::NotFound { budget } => {
                return Err(Error::BudgetExceeded { limit: budget })
            }
        }
    }
    Ok(None)
}

/// Does every `c`-coloring of the `d`-subsets of `set` have a homogeneous
/// `X` with `|X| ≥ min X`? The empty set passes vacuously.
pub fn check_ks_instance(
    set: &FiniteSet,
    d: usize,
    c: u32,
    cfg: &SearchConfig,
) -> Result<SearchVerdict> {
    if set.is_empty() {
        return Ok(SearchVerdict::AllGood);
    }
    search_bad_coloring(set.as_slice(), d, c, &KsGoal, cfg)
}

/// Exhaustive scan of every subset of the coloring's ground set for a good
/// homogeneous set. Used to re-verify bad-coloring witnesses.
pub fn find_good_set(c: &SubsetColoring, goal: &dyn Goal) -> Result<Option<FiniteSet>> {
    let points = c.points();
    if points.len() > MAX_SCAN_POINTS {
        return Err(Error::BudgetExceeded {
            limit: 1 << MAX_SCAN_POINTS,
        });
    }
    for mask in 1u32..(1 << points.len()) {
        let h: Vec<u64> = (0..points.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| points[i])
            .collect();
        let h = FiniteSet::new(h)?;
        if is_homogeneous(c, &h)? && goal.is_good(h.as_slice())? {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bad(v: SearchVerdict) -> SubsetColoring {
        match v {
            SearchVerdict::BadColoring { witness } => witness,
            other => panic!("expected a bad coloring, got {other:?}"),
        }
    }

    #[test]
    fn frt_examples() {
        let cfg = SearchConfig::default();
        let cf2 = SizeFunction::Cf(2);
        assert_eq!(
            frt_holds_at(&cf2, 2, 2, 0, 5, &cfg).unwrap(),
            SearchVerdict::AllGood
        );
        let w = bad(frt_holds_at(&cf2, 2, 2, 0, 4, &cfg).unwrap());
        assert_eq!(find_good_set(&w, &StrictSize(&cf2)).unwrap(), None);
        assert_eq!(
            frt_holds_at(&SizeFunction::Cf(1), 1, 2, 0, 2, &cfg).unwrap(),
            SearchVerdict::AllGood
        );
    }

    #[test]
    fn min_witness_examples() {
        let cfg = SearchConfig::default();
        assert_eq!(
            min_frt_witness(&SizeFunction::Cf(2), 2, 2, 0, 10, &cfg).unwrap(),
            Some(5)
        );
        assert_eq!(
            min_frt_witness(&SizeFunction::Cf(1), 1, 2, 0, 10, &cfg).unwrap(),
            Some(2)
        );
        let ph = SizeFunction::Ph(EvalFn::identity());
        assert_eq!(min_frt_witness(&ph, 1, 2, 3, 20, &cfg).unwrap(), Some(9));
        assert_eq!(
            min_frt_witness(&SizeFunction::Cf(2), 2, 2, 0, 4, &cfg).unwrap(),
            None
        );
    }

    #[test]
    fn budget_is_reported_not_conflated() {
        let cfg = SearchConfig {
            budget: 50,
            parallel: false,
        };
        assert_eq!(
            frt_holds_at(&SizeFunction::Cf(2), 2, 2, 0, 5, &cfg).unwrap(),
            SearchVerdict::NotFound { budget: 50 }
        );
        assert_eq!(
            min_frt_witness(&SizeFunction::Cf(2), 2, 2, 0, 10, &cfg),
            Err(Error::BudgetExceeded { limit: 50 })
        );
    }

    #[test]
    fn parallel_matches_sequential() {
        let f = SizeFunction::Cf(3);
        for budget in [10, 100, 1_000, 10_000, DEFAULT_SEARCH_BUDGET] {
            let seq = SearchConfig {
                budget,
                parallel: false,
            };
            let par = SearchConfig {
                budget,
                parallel: true,
            };
            for r in 3..=8 {
                assert_eq!(
                    frt_holds_at(&f, 2, 2, 0, r, &seq).unwrap(),
                    frt_holds_at(&f, 2, 2, 0, r, &par).unwrap(),
                    "budget {budget}, R {r}"
                );
            }
        }
    }

    #[test]
    fn ks_examples() {
        let cfg = SearchConfig::default();
        let s = |v: &[u64]| FiniteSet::new(v.to_vec()).unwrap();
        assert_eq!(
            check_ks_instance(&s(&[2, 3, 4]), 2, 2, &cfg).unwrap(),
            SearchVerdict::AllGood
        );
        let w = bad(check_ks_instance(&s(&[3, 4, 5]), 2, 2, &cfg).unwrap());
        assert_eq!(w.colors(), &[0, 0, 1]);
        assert_eq!(
            check_ks_instance(&FiniteSet::empty(), 2, 2, &cfg).unwrap(),
            SearchVerdict::AllGood
        );
    }

    #[test]
    fn empty_coloring_can_be_bad() {
        // No 2-subsets on one point, and {5} is not large for cf:1.
        let w =
            bad(frt_holds_at(&SizeFunction::Cf(1), 2, 2, 5, 5, &SearchConfig::default()).unwrap());
        assert!(w.colors().is_empty());
    }

    #[test]
    fn verdict_json() {
        let v = frt_holds_at(&SizeFunction::Cf(1), 1, 2, 0, 1, &SearchConfig::default()).unwrap();
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"verdict":"BAD_COLORING","witness":{"d":1,"k":2,"a":0,"R":1,"colors":[0,1]}}"#
        );
        assert_eq!(
            serde_json::to_string(&SearchVerdict::AllGood).unwrap(),
            r#"{"verdict":"ALL_GOOD"}"#
        );
    }
}
