use std::fmt::Write;

use crate::error::{Error, Result};

/// A finite poset stored as its full order relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    leq: Vec<Vec<bool>>,
    lower_covers: Vec<Vec<usize>>,
}

impl FinitePoset {
    pub fn from_leq(leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = leq.len();
        if leq.iter().any(|r| r.len() != n) {
            return Err(Error::Invariant("order relation is not square".into()));
        }
        for a in 0..n {
            if !leq[a][a] {
                return Err(Error::Invariant(format!("{a} ≰ {a}")));
            }
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(Error::Invariant(format!("{a} and {b} violate antisymmetry")));
                }
                if leq[a][b] && (0..n).any(|c| leq[b][c] && !leq[a][c]) {
                    return Err(Error::Invariant(format!("transitivity fails above {a} ≤ {b}")));
                }
            }
        }
        let lower_covers = (0..n)
            .map(|q| {
                (0..n)
                    .filter(|&p| p != q && leq[p][q])
                    .filter(|&p| !(0..n).any(|z| z != p && z != q && leq[p][z] && leq[z][q]))
                    .collect()
            })
            .collect();
        Ok(FinitePoset { leq, lower_covers })
    }

    /// Poset generated by cover pairs `(a, b)` meaning `a ⋖ b`.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(Error::Invariant(format!("cover ({a}, {b}) out of range")));
            }
            leq[a][b] = true;
        }
        // Warshall closure
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Self::from_leq(leq)
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_covers(n, &[]).expect("antichain is a poset")
    }

    pub fn chain(n: usize) -> Self {
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_covers(n, &covers).expect("chain is a poset")
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    /// Elements covered by `q`.
    pub fn lower_covers(&self, q: usize) -> &[usize] {
        &self.lower_covers[q]
    }

    pub fn covers(&self, a: usize, b: usize) -> bool {
        self.lower_covers[b].contains(&a)
    }

    /// All cover pairs `(a, b)` with `a ⋖ b`, sorted.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = (0..self.len())
            .flat_map(|b| self.lower_covers[b].iter().map(move |&a| (a, b)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Induced subposet on `elements` (in the given order).
    pub fn restrict(&self, elements: &[usize]) -> FinitePoset {
        let leq = elements
            .iter()
            .map(|&a| elements.iter().map(|&b| self.leq[a][b]).collect())
            .collect();
        FinitePoset::from_leq(leq).expect("subposet of a poset")
    }

    /// Elements strictly below `p`.
    pub fn strictly_below(&self, p: usize) -> Vec<usize> {
        (0..self.len()).filter(|&q| self.lt(q, p)).collect()
    }

    /// Elements strictly between `p` and `q`.
    pub fn open_interval(&self, p: usize, q: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&z| self.lt(p, z) && self.lt(z, q))
            .collect()
    }

    /// Length of the longest chain from `a` to `b`, `None` unless `a ≤ b`.
    pub fn interval_length(&self, a: usize, b: usize) -> Option<usize> {
        if !self.leq[a][b] {
            return None;
        }
        let mut memo = vec![None; self.len()];
        Some(self.longest_down(b, a, &mut memo))
    }

    fn longest_down(&self, top: usize, floor: usize, memo: &mut Vec<Option<usize>>) -> usize {
        if top == floor {
            return 0;
        }
        if let Some(v) = memo[top] {
            return v;
        }
        let best = self.lower_covers[top]
            .iter()
            .filter(|&&c| self.leq[floor][c])
            .map(|&c| 1 + self.longest_down(c, floor, memo))
            .max()
            .unwrap_or(0);
        memo[top] = Some(best);
        best
    }

    /// Rank function if the poset is graded: minimal elements have rank 0
    /// and every cover raises rank by exactly one.
    pub fn ranks(&self) -> Option<Vec<usize>> {
        let n = self.len();
        let mut rank = vec![usize::MAX; n];
        let mut order: Vec<usize> = (0..n).collect();
        // linear extension: fewer elements below first
        order.sort_by_key(|&q| (0..n).filter(|&p| self.leq[p][q]).count());
        for &q in &order {
            let covers = &self.lower_covers[q];
            if covers.is_empty() {
                rank[q] = 0;
                continue;
            }
            let r = rank[covers[0]] + 1;
            if covers.iter().any(|&c| rank[c] + 1 != r) {
                return None;
            }
            rank[q] = r;
        }
        Some(rank)
    }

    pub fn is_graded(&self) -> bool {
        self.ranks().is_some()
    }

    /// Dump format: `n`, then one `a b` line per cover `a ⋖ b`.
    pub fn to_dump(&self) -> String {
        let mut out = format!("{}\n", self.len());
        for (a, b) in self.cover_pairs() {
            writeln!(out, "{a} {b}").unwrap();
        }
        out
    }

    pub fn parse_dump(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let bad = |msg: &str| Error::Invariant(format!("poset dump: {msg}"));
        let n: usize = lines
            .next()
            .ok_or_else(|| bad("missing node count"))?
            .parse()
            .map_err(|_| bad("node count is not an integer"))?;
        let mut covers = Vec::new();
        for line in lines {
            let parts: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| bad("cover entry is not an integer")))
                .collect::<Result<_>>()?;
            let [a, b] = parts[..] else {
                return Err(bad("cover lines hold two indices"));
            };
            covers.push((a, b));
        }
        Self::from_covers(n, &covers)
    }
}
