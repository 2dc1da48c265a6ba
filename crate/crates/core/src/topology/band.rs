use super::FinitePoset;
use crate::error::{Error, Result};
use crate::monoid::FiniteMonoid;

/// A set of idempotents under the natural order `e ≤ e'` iff `e'e = e`.
#[derive(Debug, Clone)]
pub struct BandSubposet {
    /// Monoid element index of each poset element.
    pub elements: Vec<usize>,
    pub poset: FinitePoset,
}

impl BandSubposet {
    fn from_idempotents(m: &FiniteMonoid, elements: Vec<usize>) -> Result<Self> {
        let leq = elements
            .iter()
            .map(|&e| elements.iter().map(|&f| m.mul(f, e) == e).collect())
            .collect();
        let poset = FinitePoset::from_leq(leq)?;
        Ok(BandSubposet { elements, poset })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Poset index of a monoid element, if present.
    pub fn index_of(&self, e: usize) -> Option<usize> {
        self.elements.iter().position(|&x| x == e)
    }

    /// Whether every `g ∈ G_f` fixes every element under `e ↦ g e g†`.
    pub fn conjugation_trivial(&self, m: &FiniteMonoid, f: usize) -> Result<bool> {
        let group = m.maximal_subgroup(f)?;
        for &g in &group.members {
            for &e in &self.elements {
                if m.conjugate_idempotent(g, e)? != e {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `B_{≥X}`: idempotents with support above node `x`.
pub fn band_subposet(m: &FiniteMonoid, x: usize) -> Result<BandSubposet> {
    let lattice = m.support_lattice()?;
    lattice.check_node(x)?;
    let elements = m
        .idempotents()
        .iter()
        .copied()
        .filter(|&e| lattice.leq(x, lattice.sigma(e)))
        .collect();
    BandSubposet::from_idempotents(m, elements)
}

/// `∂fB_{≥X}`: idempotents `e ≠ f` with `fe = e` and support above `x`.
pub fn boundary_subposet(m: &FiniteMonoid, f: usize, x: usize) -> Result<BandSubposet> {
    if !m.check_axioms().regular_left_duo() {
        return Err(Error::NotRegularLeftDuo);
    }
    if !m.is_idempotent(f) {
        return Err(Error::NotIdempotent(f));
    }
    let lattice = m.support_lattice()?;
    lattice.check_node(x)?;
    if !lattice.leq(x, lattice.sigma(f)) {
        return Err(Error::ApexMismatch);
    }
    let elements = m
        .idempotents()
        .iter()
        .copied()
        .filter(|&e| e != f && m.mul(f, e) == e && lattice.leq(x, lattice.sigma(e)))
        .collect();
    BandSubposet::from_idempotents(m, elements)
}
