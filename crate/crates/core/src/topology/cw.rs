use std::collections::{BTreeMap, VecDeque};

use super::{order_complex, reduced_betti, ChainComplex, FinitePoset};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::Matrix;

/// Necessary-condition test for being the face poset of a regular CW
/// complex: graded, and every `Δ(P_{<p})` has the homology and Euler
/// characteristic of a sphere of dimension `rank(p) - 1` over F_2 and F_3.
pub fn is_cw_poset(poset: &FinitePoset) -> bool {
    let Some(ranks) = poset.ranks() else {
        return false;
    };
    let fields = [PrimeField::new(2).unwrap(), PrimeField::new(3).unwrap()];
    (0..poset.len()).filter(|&p| ranks[p] >= 1).all(|p| {
        let d = ranks[p] as isize - 1;
        let below = order_complex(&poset.restrict(&poset.strictly_below(p)));
        let expected_euler = if d % 2 == 0 { 1 } else { -1 };
        below.reduced_euler_characteristic() == expected_euler
            && fields.iter().all(|f| reduced_betti(&below, f).is_sphere(d))
    })
}

/// Signs `ε(q, p) = ±1` on the covers `p ⋖ q` of a CW poset with
/// `Σ_z ε(q,z)ε(z,p) = 0` across every rank-2 interval `[p, q]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceNumbers {
    ranks: Vec<usize>,
    signs: BTreeMap<(usize, usize), i8>,
}

impl IncidenceNumbers {
    /// `ε(upper, lower)`, `None` unless `lower ⋖ upper`.
    pub fn get(&self, upper: usize, lower: usize) -> Option<i8> {
        self.signs.get(&(upper, lower)).copied()
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Cells grouped by rank, ascending index within a rank.
    pub fn cells_by_rank(&self) -> Vec<Vec<usize>> {
        let top = self.ranks.iter().copied().max().map_or(0, |r| r + 1);
        let mut out = vec![Vec::new(); top];
        for (p, &r) in self.ranks.iter().enumerate() {
            out[r].push(p);
        }
        out
    }

    /// `(upper, lower, sign)` for every cover.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, i8)> + '_ {
        self.signs.iter().map(|(&(q, p), &s)| (q, p, s))
    }
}

pub fn incidence_numbers(poset: &FinitePoset) -> Result<IncidenceNumbers> {
    let ranks = poset.ranks().ok_or(Error::NotGraded)?;
    let n = poset.len();
    for q in 0..n {
        for p in 0..n {
            if poset.lt(p, q) && ranks[q] == ranks[p] + 2 {
                let mid = poset.open_interval(p, q).len();
                if mid != 2 {
                    return Err(Error::DiamondViolation(p, q, mid));
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&q| (ranks[q], q));
    let mut signs: BTreeMap<(usize, usize), i8> = BTreeMap::new();
    for &q in &order {
        let facets = poset.lower_covers(q);
        match ranks[q] {
            0 => {}
            1 => {
                if facets.len() != 2 {
                    return Err(Error::NotCw);
                }
                let (lo, hi) = (facets[0].min(facets[1]), facets[0].max(facets[1]));
                signs.insert((q, lo), 1);
                signs.insert((q, hi), -1);
            }
            _ => {
                // facets f1, f2 sharing a facet g: ε(q,f2) = -ε(q,f1)ε(f1,g)ε(f2,g)
                let mut links: Vec<Vec<(usize, i8)>> = vec![Vec::new(); facets.len()];
                for (i, &f1) in facets.iter().enumerate() {
                    for (j, &f2) in facets.iter().enumerate().skip(i + 1) {
                        for &g in poset.lower_covers(f1) {
                            if poset.covers(g, f2) {
                                let rel = -signs[&(f1, g)] * signs[&(f2, g)];
                                links[i].push((j, rel));
                                links[j].push((i, rel));
                            }
                        }
                    }
                }
                let mut value: Vec<i8> = vec![0; facets.len()];
                for start in 0..facets.len() {
                    if value[start] != 0 {
                        continue;
                    }
                    value[start] = 1;
                    let mut queue = VecDeque::from([start]);
                    while let Some(i) = queue.pop_front() {
                        for &(j, rel) in &links[i] {
                            let want = value[i] * rel;
                            if value[j] == 0 {
                                value[j] = want;
                                queue.push_back(j);
                            } else if value[j] != want {
                                return Err(Error::NoConsistentSigns(q));
                            }
                        }
                    }
                }
                for (i, &f) in facets.iter().enumerate() {
                    signs.insert((q, f), value[i]);
                }
            }
        }
    }
    Ok(IncidenceNumbers { ranks, signs })
}

/// Cellular chain complex (not augmented): degree `d` has one basis
/// vector per rank-`d` cell, ordered by poset index.
pub fn cellular_chain_complex(poset: &FinitePoset, f: &PrimeField) -> Result<ChainComplex> {
    let eps = incidence_numbers(poset)?;
    let cells = eps.cells_by_rank();
    let mut boundaries = Vec::new();
    for d in 1..cells.len() {
        let mut m = Matrix::zeros(cells[d - 1].len(), cells[d].len());
        for (j, &q) in cells[d].iter().enumerate() {
            for (i, &p) in cells[d - 1].iter().enumerate() {
                if let Some(s) = eps.get(q, p) {
                    m.set(i, j, f.from_i64(s as i64));
                }
            }
        }
        boundaries.push(m);
    }
    let dims = cells.iter().map(Vec::len).collect();
    ChainComplex::new(*f, dims, boundaries).map_err(|_| Error::NoConsistentSigns(usize::MAX))
}
