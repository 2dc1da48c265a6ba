use std::collections::HashMap;

use super::{Bitset, FiniteMonoid};
use crate::error::{Error, Result};
use crate::topology::FinitePoset;

/// Λ(B): idempotent-generated principal left ideals ordered by inclusion.
///
/// Nodes are numbered by their representative `e_X`, the lowest-index
/// idempotent generating the ideal.
#[derive(Debug, Clone)]
pub struct SupportLattice {
    representative: Vec<usize>,
    members: Vec<Vec<usize>>,
    leq: Vec<Vec<bool>>,
    meet: Vec<Vec<usize>>,
    sigma: Vec<usize>,
    poset: FinitePoset,
}

impl SupportLattice {
    pub(super) fn compute(m: &FiniteMonoid) -> Result<Self> {
        if !m.check_axioms().right_semicentral {
            return Err(Error::NotRightSemicentral);
        }
        let mut by_ideal: HashMap<Bitset, Vec<usize>> = HashMap::new();
        for &e in m.idempotents() {
            by_ideal.entry(m.left_ideal(e)).or_default().push(e);
        }
        let mut groups: Vec<(Bitset, Vec<usize>)> = by_ideal.into_iter().collect();
        groups.sort_by_key(|(_, es)| es[0]);
        let mut node_of_idempotent = vec![usize::MAX; m.size()];
        for (x, (_, es)) in groups.iter().enumerate() {
            for &e in es {
                node_of_idempotent[e] = x;
            }
        }
        let n = groups.len();
        let leq: Vec<Vec<bool>> = groups
            .iter()
            .map(|(a, _)| groups.iter().map(|(b, _)| a.is_subset(b)).collect())
            .collect();
        let representative: Vec<usize> = groups.iter().map(|(_, es)| es[0]).collect();
        let meet = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| node_of_idempotent[m.mul(representative[x], representative[y])])
                    .collect()
            })
            .collect();
        let sigma = m
            .elements()
            .map(|x| node_of_idempotent[m.omega_power(x)])
            .collect();
        let poset = FinitePoset::from_leq(leq.clone())?;
        Ok(SupportLattice {
            representative,
            members: groups.into_iter().map(|(_, es)| es).collect(),
            leq,
            meet,
            sigma,
            poset,
        })
    }

    pub fn len(&self) -> usize {
        self.representative.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representative.is_empty()
    }

    pub fn nodes(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    /// The chosen idempotent `e_X`.
    pub fn representative(&self, x: usize) -> usize {
        self.representative[x]
    }

    /// All idempotents `e` with `Be = X`.
    pub fn idempotents_of(&self, x: usize) -> &[usize] {
        &self.members[x]
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x][y]
    }

    /// `σ(m) = M m^ω`.
    pub fn sigma(&self, m: usize) -> usize {
        self.sigma[m]
    }

    pub fn top(&self) -> usize {
        (0..self.len())
            .find(|&x| (0..self.len()).all(|y| self.leq[y][x]))
            .expect("the identity generates the maximum")
    }

    pub fn bottom(&self) -> usize {
        (0..self.len())
            .find(|&x| (0..self.len()).all(|y| self.leq[x][y]))
            .expect("finite meet-semilattice has a minimum")
    }

    pub fn check_node(&self, x: usize) -> Result<()> {
        if x < self.len() {
            Ok(())
        } else {
            Err(Error::NoSuchNode(x))
        }
    }

    pub fn as_poset(&self) -> &FinitePoset {
        &self.poset
    }

    /// Length of the longest chain in `[x, y]`, or `None` if `x ≰ y`.
    pub fn rank_between(&self, x: usize, y: usize) -> Option<usize> {
        self.poset.interval_length(x, y)
    }

    /// Length of the longest chain in the lattice.
    pub fn height(&self) -> usize {
        self.rank_between(self.bottom(), self.top()).unwrap_or(0)
    }
}

/// `M_{≥X}` together with its embedding into `M`.
#[derive(Debug, Clone)]
pub struct Contraction {
    pub monoid: FiniteMonoid,
    /// `embedding[i]` is the index in the ambient monoid.
    pub embedding: Vec<usize>,
}

impl Contraction {
    pub(super) fn compute(m: &FiniteMonoid, node: usize) -> Result<Self> {
        let lattice = m.support_lattice()?;
        lattice.check_node(node)?;
        let embedding: Vec<usize> = m
            .elements()
            .filter(|&x| lattice.leq(node, lattice.sigma(x)))
            .collect();
        let monoid = m.submonoid(&embedding)?;
        Ok(Contraction { monoid, embedding })
    }
}
