//! Lexicographic enumeration and ranking of `d`-element subsets of
//! `{0, …, n−1}`, represented as increasing index tuples.

pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

/// Rank table for `d`-subsets of `n` points in lexicographic order.
#[derive(Debug, Clone)]
pub struct SubsetIndex {
    n: usize,
    d: usize,
    // binom[m][j] = C(m, j) for m ≤ n, j ≤ d + 1
    binom: Vec<Vec<usize>>,
}

impl SubsetIndex {
    pub fn new(n: usize, d: usize) -> Self {
        let mut binom = vec![vec![0usize; d + 2]; n + 1];
        for m in 0..=n {
            binom[m][0] = 1;
            for j in 1..=d + 1 {
                binom[m][j] = if m == 0 {
                    0
                } else {
                    binom[m - 1][j - 1].saturating_add(binom[m - 1][j])
                };
            }
        }
        SubsetIndex { n, d, binom }
    }

    pub fn points(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn count(&self) -> usize {
        self.binom[self.n][self.d]
    }

    /// Position of the increasing tuple `xs` in lexicographic order.
    pub fn rank(&self, xs: &[usize]) -> usize {
        debug_assert_eq!(xs.len(), self.d);
        let n = self.n;
        let mut rank = 0;
        let mut next_free = 0;
        for (i, &x) in xs.iter().enumerate() {
            let m = self.d - i;
            // Subsets whose i-th element lies in [next_free, x).
            rank += self.binom[n - next_free][m] - self.binom[n - x][m];
            next_free = x + 1;
        }
        rank
    }

    pub fn iter(&self) -> LexSubsets {
        LexSubsets::new(self.n, self.d)
    }
}

/// Iterator over increasing `d`-tuples from `{0, …, n−1}` in lexicographic order.
#[derive(Debug, Clone)]
pub struct LexSubsets {
    n: usize,
    cur: Vec<usize>,
    done: bool,
}

impl LexSubsets {
    pub fn new(n: usize, d: usize) -> Self {
        LexSubsets {
            n,
            cur: (0..d).collect(),
            done: d > n,
        }
    }
}

impl Iterator for LexSubsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        self.done = !advance(&mut self.cur, self.n);
        Some(out)
    }
}

/// Steps `cur` to its lexicographic successor; false when it was the last.
pub fn advance(cur: &mut [usize], n: usize) -> bool {
    let d = cur.len();
    let Some(i) = (0..d).rev().find(|&i| cur[i] < n - d + i) else {
        return false;
    };
    cur[i] += 1;
    for j in i + 1..d {
        cur[j] = cur[j - 1] + 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 2), Some(15));
        assert_eq!(binomial(3, 5), Some(0));
        assert_eq!(binomial(0, 0), Some(1));
        assert_eq!(binomial(200, 100), None);
    }

    #[test]
    fn lex_order_and_rank_agree() {
        for n in 0..8 {
            for d in 0..5 {
                let idx = SubsetIndex::new(n, d);
                let all: Vec<_> = idx.iter().collect();
                assert_eq!(all.len(), idx.count(), "n={n} d={d}");
                for (i, s) in all.iter().enumerate() {
                    assert_eq!(idx.rank(s), i);
                }
                assert!(all.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn small_listing() {
        let all: Vec<_> = LexSubsets::new(4, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }
}
