//! The tree of bad colorings ordered by restriction.
//!
//! Level `R` holds every coloring of the `d`-subsets of `[0, R]` into `k`
//! colors that admits no large homogeneous set. The parent of a node is its
//! restriction to `[0, R−1]`, which is bad again, so an empty level stays
//! empty forever and the tree is infinite exactly when no `R` works.

use serde::Serialize;

use super::{SizeFunction, SubsetColoring};
use crate::error::{Error, Result};
use crate::subsets::{LexSubsets, SubsetIndex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeLevel {
    pub r: u64,
    /// Color tables, sorted lexicographically.
    pub nodes: Vec<Vec<u32>>,
    /// Index of each node's parent in the previous level.
    pub parents: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactnessTree {
    pub d: usize,
    pub k: u32,
    pub levels: Vec<TreeLevel>,
}

#[derive(Serialize)]
pub struct LevelSummary {
    #[serde(rename = "R")]
    pub r: u64,
    pub count: usize,
    /// Color tables from level 0 up to the lexicographically first node.
    pub chain: Vec<Vec<u32>>,
}

impl CompactnessTree {
    pub fn counts(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.nodes.len()).collect()
    }

    pub fn node(&self, r: u64, i: usize) -> SubsetColoring {
        let level = &self.levels[r as usize];
        SubsetColoring::on_interval(self.d, self.k, 0, r, level.nodes[i].clone())
            .expect("tree nodes are valid colorings")
    }

    /// The chain of restrictions ending at node `i` of level `r`, root first.
    pub fn chain(&self, r: u64, mut i: usize) -> Vec<SubsetColoring> {
        let mut out = Vec::new();
        for level in (0..=r).rev() {
            out.push(self.node(level, i));
            i = self.levels[level as usize].parents[i];
        }
        out.reverse();
        out
    }

    pub fn summary(&self) -> Vec<LevelSummary> {
        self.levels
            .iter()
            .map(|l| LevelSummary {
                r: l.r,
                count: l.nodes.len(),
                chain: if l.nodes.is_empty() {
                    Vec::new()
                } else {
                    self.chain(l.r, 0)
                        .into_iter()
                        .map(|c| c.colors().to_vec())
                        .collect()
                },
            })
            .collect()
    }
}

/// Builds levels `0..=r_max`. `budget` caps the number of candidate
/// colorings examined.
pub fn build_compactness_tree(
    f: &SizeFunction,
    d: usize,
    k: u32,
    r_max: u64,
    budget: u64,
) -> Result<CompactnessTree> {
    if d == 0 || k == 0 {
        return Err(Error::Invalid("d and k must be positive".into()));
    }
    let mut levels: Vec<TreeLevel> = Vec::new();
    let mut spent = 0u64;
    let mut prev: Vec<Vec<u32>> = vec![Vec::new()];
    for r in 0..=r_max {
        let n = r as usize + 1;
        let index = SubsetIndex::new(n, d);
        let parent_index = SubsetIndex::new(n - 1, d);
        // For each subset of [0, r] in lex order: Some(parent rank) or None if it contains r.
        let layout: Vec<Option<usize>> = index
            .iter()
            .map(|s| (s[d - 1] != n - 1).then(|| parent_index.rank(&s)))
            .collect();
        let fresh = layout.iter().filter(|x| x.is_none()).count();
        let mut nodes: Vec<(Vec<u32>, usize)> = Vec::new();
        for (pi, parent) in prev.iter().enumerate() {
            let mut assignment = vec![0u32; fresh];
            loop {
                spent += 1;
                if spent > budget {
                    return Err(Error::BudgetExceeded { limit: budget });
                }
                let mut next = assignment.iter();
                let colors: Vec<u32> = layout
                    .iter()
                    .map(|slot| match slot {
                        Some(i) => parent[*i],
                        None => *next.next().unwrap(),
                    })
                    .collect();
                if !good_set_through_top(&colors, &index, n, f)? {
                    nodes.push((colors, pi));
                }
                if !odometer(&mut assignment, k) {
                    break;
                }
            }
        }
        nodes.sort();
        prev = nodes.iter().map(|(c, _)| c.clone()).collect();
        levels.push(TreeLevel {
            r,
            parents: nodes.iter().map(|(_, p)| *p).collect(),
            nodes: prev.clone(),
        });
    }
    Ok(CompactnessTree { d, k, levels })
}

fn odometer(digits: &mut [u32], base: u32) -> bool {
    for x in digits.iter_mut().rev() {
        if *x + 1 < base {
            *x += 1;
            return true;
        }
        *x = 0;
    }
    false
}

/// Is there a large homogeneous set containing the top point `n − 1`?
fn good_set_through_top(
    colors: &[u32],
    index: &SubsetIndex,
    n: usize,
    f: &SizeFunction,
) -> Result<bool> {
    let mut cur = vec![n - 1];
    let color = (index.dim() == 1).then(|| colors[index.rank(&cur)]);
    extend(colors, index, &mut cur, color, f)
}

fn extend(
    colors: &[u32],
    index: &SubsetIndex,
    cur: &mut Vec<usize>,
    color: Option<u32>,
    f: &SizeFunction,
) -> Result<bool> {
    let as_values = |cur: &[usize]| cur.iter().map(|&i| i as u64).collect::<Vec<_>>();
    if f.is_large(&as_values(cur))? {
        return Ok(true);
    }
    let d = index.dim();
    for t in (0..cur[0]).rev() {
        let mut c = color;
        let mut ok = true;
        if cur.len() + 1 >= d {
            let mut buf = vec![t; d];
            for ys in LexSubsets::new(cur.len(), d - 1) {
                for (b, &y) in buf[1..].iter_mut().zip(&ys) {
                    *b = cur[y];
                }
                let here = colors[index.rank(&buf)];
                if *c.get_or_insert(here) != here {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            cur.insert(0, t);
            let found = extend(colors, index, cur, c, f)?;
            cur.remove(0);
            if found {
                return Ok(true);
            }
        }
    }
    Ok(false)
}
