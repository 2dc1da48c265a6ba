//! Finite monoids given by a dense multiplication table.
//!
//! Everything here is computed by exhaustive search over the table: axiom
//! predicates, ω-powers, inverses in maximal subgroups, Green's relations
//! and the support lattice of a right semicentral monoid.

mod green;
mod lattice;
mod table_io;

pub use green::GreenStructure;
pub use lattice::{Contraction, SupportLattice};

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest table whose associativity is checked on every triple.
pub const EXHAUSTIVE_LIMIT: usize = 512;
/// Triples sampled for tables above [`EXHAUSTIVE_LIMIT`].
const SAMPLED_TRIPLES: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub right_semicentral: bool,
    pub left_duo: bool,
    pub regular: bool,
    pub lrb_of_groups: bool,
    /// Every element is idempotent.
    pub band: bool,
}

impl AxiomReport {
    pub fn regular_left_duo(&self) -> bool {
        self.regular && self.left_duo
    }

    /// A left regular band: an idempotent left duo monoid.
    pub fn left_regular_band(&self) -> bool {
        self.band && self.left_duo
    }
}

#[derive(Debug, Clone)]
pub struct FiniteMonoid {
    size: usize,
    table: Vec<u16>,
    identity: usize,
    omega: Vec<u16>,
    idempotents: Vec<usize>,
    axioms: OnceLock<AxiomReport>,
    lattice: OnceLock<std::result::Result<SupportLattice, Error>>,
}

impl FiniteMonoid {
    /// Builds a monoid from a row-major table (`table[a*size + b] = ab`),
    /// checking associativity on every triple. Tables larger than
    /// [`EXHAUSTIVE_LIMIT`] are refused; use [`FiniteMonoid::new_trusted`].
    pub fn new(size: usize, table: Vec<u16>, identity: usize) -> Result<Self> {
        if size > EXHAUSTIVE_LIMIT {
            return Err(Error::UntrustedSize(size, EXHAUSTIVE_LIMIT));
        }
        Self::new_trusted(size, table, identity)
    }

    /// Like [`FiniteMonoid::new`] but accepts large tables, checking
    /// associativity on a fixed-seed random sample above the limit.
    pub fn new_trusted(size: usize, table: Vec<u16>, identity: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::MalformedTable("empty monoid".into()));
        }
        if size > u16::MAX as usize + 1 {
            return Err(Error::SizeLimit(format!("{size} elements exceed 16-bit indices")));
        }
        if table.len() != size * size {
            return Err(Error::MalformedTable(format!(
                "expected {} entries, found {}",
                size * size,
                table.len()
            )));
        }
        if let Some(bad) = table.iter().find(|&&v| v as usize >= size) {
            return Err(Error::MalformedTable(format!("entry {bad} out of range")));
        }
        if identity >= size {
            return Err(Error::BadIdentity(identity));
        }
        let t = |a: usize, b: usize| table[a * size + b] as usize;
        if (0..size).any(|m| t(identity, m) != m || t(m, identity) != m) {
            return Err(Error::BadIdentity(identity));
        }
        let assoc = |a: usize, b: usize, c: usize| t(t(a, b), c) == t(a, t(b, c));
        if size <= EXHAUSTIVE_LIMIT {
            for a in 0..size {
                for b in 0..size {
                    let ab = t(a, b);
                    for c in 0..size {
                        if t(ab, c) != t(a, t(b, c)) {
                            return Err(Error::NotAssociative(a, b, c));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..SAMPLED_TRIPLES {
                let (a, b, c) = (
                    rng.random_range(0..size),
                    rng.random_range(0..size),
                    rng.random_range(0..size),
                );
                if !assoc(a, b, c) {
                    return Err(Error::NotAssociative(a, b, c));
                }
            }
        }
        let omega: Vec<u16> = (0..size).map(|m| omega_by_cycle(&table, size, m) as u16).collect();
        let idempotents = (0..size).filter(|&m| t(m, m) == m).collect();
        Ok(FiniteMonoid {
            size,
            table,
            identity,
            omega,
            idempotents,
            axioms: OnceLock::new(),
            lattice: OnceLock::new(),
        })
    }

    /// Cyclic group Z/n written additively, element `k` is the residue `k`.
    pub fn cyclic_group(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("order 0".into()));
        }
        let table = (0..n * n).map(|i| ((i / n + i % n) % n) as u16).collect();
        Self::new(n, table, 0)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b] as usize
    }

    pub fn table(&self) -> &[u16] {
        &self.table
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    pub fn is_idempotent(&self, e: usize) -> bool {
        self.mul(e, e) == e
    }

    /// The unique idempotent positive power of `m`.
    #[inline]
    pub fn omega_power(&self, m: usize) -> usize {
        self.omega[m] as usize
    }

    /// Bitset of the principal left ideal `Mm`.
    pub(crate) fn left_ideal(&self, m: usize) -> Bitset {
        let mut b = Bitset::new(self.size);
        for x in 0..self.size {
            b.set(self.mul(x, m));
        }
        b
    }

    /// Bitset of the principal right ideal `mM`.
    pub(crate) fn right_ideal(&self, m: usize) -> Bitset {
        let mut b = Bitset::new(self.size);
        for x in 0..self.size {
            b.set(self.mul(m, x));
        }
        b
    }

    pub fn check_axioms(&self) -> AxiomReport {
        *self.axioms.get_or_init(|| self.compute_axioms())
    }

    fn compute_axioms(&self) -> AxiomReport {
        let all = self.elements();
        let right_semicentral = self.idempotents.iter().all(|&e| {
            all.clone().all(|m| {
                let em = self.mul(e, m);
                self.mul(em, e) == em
            })
        });
        let left_duo = all.clone().all(|m| self.right_ideal(m).is_subset(&self.left_ideal(m)));
        let regular = all
            .clone()
            .all(|m| all.clone().any(|a| self.mul(self.mul(m, a), m) == m));
        let omega_multiplicative = all.clone().all(|m| {
            all.clone().all(|n| {
                self.omega_power(self.mul(m, n)) == self.mul(self.omega_power(m), self.omega_power(n))
            })
        });
        AxiomReport {
            right_semicentral,
            left_duo,
            regular,
            lrb_of_groups: regular && left_duo && omega_multiplicative,
            band: self.idempotents.len() == self.size,
        }
    }

    fn require_regular_left_duo(&self) -> Result<()> {
        if self.check_axioms().regular_left_duo() {
            Ok(())
        } else {
            Err(Error::NotRegularLeftDuo)
        }
    }

    fn require_idempotent(&self, e: usize) -> Result<()> {
        if e < self.size && self.is_idempotent(e) {
            Ok(())
        } else {
            Err(Error::NotIdempotent(e))
        }
    }

    /// Inverse of `m` inside the maximal subgroup at `m^ω`.
    pub fn dagger(&self, m: usize) -> Result<usize> {
        self.require_regular_left_duo()?;
        let e = self.omega_power(m);
        self.elements()
            .find(|&x| {
                self.mul(e, x) == x
                    && self.mul(x, e) == x
                    && self.mul(m, x) == e
                    && self.mul(x, m) == e
            })
            .ok_or_else(|| Error::Invariant(format!("element {m} has no inverse at its ω-power")))
    }

    /// The action `e ↦ m e m†` of `M` on its band of idempotents.
    pub fn conjugate_idempotent(&self, m: usize, e: usize) -> Result<usize> {
        self.require_regular_left_duo()?;
        self.require_idempotent(e)?;
        let d = self.dagger(m)?;
        Ok(self.mul(self.mul(m, e), d))
    }

    /// Group of units of `eMe`.
    pub fn maximal_subgroup(&self, e: usize) -> Result<MaximalSubgroup> {
        self.require_idempotent(e)?;
        let mut local: Vec<usize> = self
            .elements()
            .map(|m| self.mul(self.mul(e, m), e))
            .collect();
        local.sort_unstable();
        local.dedup();
        let mut members = Vec::new();
        let mut inverse = Vec::new();
        for &x in &local {
            if let Some(&y) = local
                .iter()
                .find(|&&y| self.mul(x, y) == e && self.mul(y, x) == e)
            {
                members.push(x);
                inverse.push(y);
            }
        }
        let mut position = vec![usize::MAX; self.size];
        for (i, &x) in members.iter().enumerate() {
            position[x] = i;
        }
        let inverse = inverse.iter().map(|&y| position[y]).collect();
        Ok(MaximalSubgroup {
            idempotent: e,
            members,
            inverse,
            position,
        })
    }

    /// A generating set chosen greedily in index order: each element not
    /// yet in the generated submonoid becomes a generator.
    pub fn generators(&self) -> Vec<usize> {
        let mut inside = vec![false; self.size];
        inside[self.identity] = true;
        let mut reached = vec![self.identity];
        let mut gens = Vec::new();
        for m in self.elements() {
            if inside[m] {
                continue;
            }
            gens.push(m);
            // close under right multiplication by the generators
            let mut frontier = reached.clone();
            while let Some(x) = frontier.pop() {
                for &g in &gens {
                    let y = self.mul(x, g);
                    if !inside[y] {
                        inside[y] = true;
                        reached.push(y);
                        frontier.push(y);
                    }
                }
            }
        }
        gens
    }

    pub fn green(&self) -> GreenStructure {
        GreenStructure::compute(self)
    }

    /// Support lattice Λ(B); requires a right semicentral monoid.
    pub fn support_lattice(&self) -> Result<&SupportLattice> {
        self.lattice
            .get_or_init(|| SupportLattice::compute(self))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// The contraction `M_{≥X} = {m : σ(m) ≥ X}` as a submonoid.
    pub fn contraction(&self, node: usize) -> Result<Contraction> {
        Contraction::compute(self, node)
    }

    /// Submonoid on `elements` (which must contain the identity and be
    /// closed under the product), with the induced table.
    pub fn submonoid(&self, elements: &[usize]) -> Result<FiniteMonoid> {
        let mut position = vec![usize::MAX; self.size];
        for (i, &m) in elements.iter().enumerate() {
            position[m] = i;
        }
        let n = elements.len();
        let mut table = Vec::with_capacity(n * n);
        for &a in elements {
            for &b in elements {
                let pos = position[self.mul(a, b)];
                if pos == usize::MAX {
                    return Err(Error::MalformedTable("subset is not closed under the product".into()));
                }
                table.push(pos as u16);
            }
        }
        let identity = position[self.identity];
        if identity == usize::MAX {
            return Err(Error::MalformedTable("subset misses the identity".into()));
        }
        FiniteMonoid::new_trusted(n, table, identity)
    }
}

fn omega_by_cycle(table: &[u16], size: usize, m: usize) -> usize {
    // seen[x] = k such that m^k = x
    let mut seen = vec![0usize; size];
    let mut powers = vec![m];
    let mut x = m;
    let mut k = 1;
    seen[x] = k;
    let (index, period) = loop {
        x = table[x * size + m] as usize;
        k += 1;
        if seen[x] != 0 {
            break (seen[x], k - seen[x]);
        }
        seen[x] = k;
        powers.push(x);
    };
    // unique multiple of the period in [index, index + period)
    let target = index.div_ceil(period) * period;
    powers[target - 1]
}

/// `G_e`: the group of units of `eMe`.
#[derive(Debug, Clone)]
pub struct MaximalSubgroup {
    pub idempotent: usize,
    /// Element indices, ascending.
    pub members: Vec<usize>,
    /// `inverse[i]` is the position of the inverse of `members[i]`.
    pub inverse: Vec<usize>,
    position: Vec<usize>,
}

impl MaximalSubgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn position(&self, m: usize) -> Option<usize> {
        self.position.get(m).copied().filter(|&p| p != usize::MAX)
    }

    pub fn contains(&self, m: usize) -> bool {
        self.position(m).is_some()
    }

    pub fn is_abelian(&self, host: &FiniteMonoid) -> bool {
        self.members.iter().all(|&a| {
            self.members
                .iter()
                .all(|&b| host.mul(a, b) == host.mul(b, a))
        })
    }

    /// The retraction `m ↦ e m`.
    pub fn retract(&self, host: &FiniteMonoid, m: usize) -> usize {
        host.mul(self.idempotent, m)
    }
}

/// Fixed-width bitset over element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Bitset {
            words: vec![0; len.div_ceil(64)],
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn union_with(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn is_subset(&self, other: &Bitset) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }
}
