//! Simple modules, band idempotents `η_X` and the complete set of
//! primitive idempotents `γ_{X,χ}` of `KM` for a regular left duo monoid
//! with abelian maximal subgroups over a splitting prime field.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monoid::{FiniteMonoid, MaximalSubgroup, SupportLattice};
use crate::topology::FinitePoset;

/// Dense element of the monoid algebra `F_p M`, one coefficient per
/// monoid element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    coeffs: Vec<u32>,
}

impl AlgebraElement {
    pub fn zero(size: usize) -> Self {
        AlgebraElement {
            coeffs: vec![0; size],
        }
    }

    pub fn basis(size: usize, m: usize) -> Self {
        let mut a = Self::zero(size);
        a.coeffs[m] = 1;
        a
    }

    pub fn from_coefficients(coeffs: Vec<u32>) -> Self {
        AlgebraElement { coeffs }
    }

    pub fn coefficients(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn into_coefficients(self) -> Vec<u32> {
        self.coeffs
    }

    pub fn coeff(&self, m: usize) -> u32 {
        self.coeffs[m]
    }

    /// Nonzero `(element, coefficient)` pairs, ascending.
    pub fn support(&self) -> Vec<(usize, u32)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c != 0)
            .map(|(m, &c)| (m, c))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, f: &PrimeField, other: &Self) -> Self {
        AlgebraElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, f: &PrimeField, other: &Self) -> Self {
        AlgebraElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, f: &PrimeField, c: u32) -> Self {
        AlgebraElement {
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// Product in `F_p M` through the multiplication table.
    pub fn mul(&self, f: &PrimeField, m: &FiniteMonoid, other: &Self) -> Self {
        let mut out = vec![0u64; self.coeffs.len()];
        let p = f.p() as u64;
        let right = other.support();
        let left = self.support();
        // below 2^16 every product is under 2^32, so a slot absorbs more
        // than |M|^2 terms before it can overflow
        let lazy = p < 1 << 16 && (left.len() as u64) * (right.len() as u64) < 1 << 31;
        for (a, ca) in left {
            let row = &m.table()[a * m.size()..(a + 1) * m.size()];
            for &(b, cb) in &right {
                let slot = &mut out[row[b] as usize];
                if lazy {
                    *slot += ca as u64 * cb as u64;
                } else {
                    *slot = (*slot + ca as u64 * cb as u64) % p;
                }
            }
        }
        AlgebraElement {
            coeffs: out.into_iter().map(|c| (c % p) as u32).collect(),
        }
    }

    /// `Σ c_m λ(m)` for a function `λ` on monoid elements.
    pub fn evaluate(&self, f: &PrimeField, lambda: &[u32]) -> u32 {
        self.support()
            .into_iter()
            .fold(0, |acc, (m, c)| f.mul_add(acc, c, lambda[m]))
    }
}

/// `(X, χ)`: lattice node `X` and the index of a character of `G_{e_X}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SimpleLabel {
    pub apex: usize,
    pub character: usize,
}

/// `η_X = e_X − Σ_{Y<X} e_X η_Y`, computed along the linear extension of
/// Λ(B) by rank then node index. Indexed by node.
pub fn eta_idempotents(m: &FiniteMonoid, f: &PrimeField) -> Result<Vec<AlgebraElement>> {
    let lattice = m.support_lattice()?;
    let order = linear_extension(lattice);
    let n = m.size();
    let mut eta: Vec<Option<AlgebraElement>> = vec![None; lattice.len()];
    for &x in &order {
        let ex = AlgebraElement::basis(n, lattice.representative(x));
        let mut value = ex.clone();
        for &y in &order {
            if y != x && lattice.leq(y, x) {
                let prev = eta[y].as_ref().expect("lower nodes come first");
                value = value.sub(f, &ex.mul(f, m, prev));
            }
        }
        eta[x] = Some(value);
    }
    Ok(eta.into_iter().map(Option::unwrap).collect())
}

/// Rank of each node above the bottom of Λ(B).
pub fn node_ranks(lattice: &SupportLattice) -> Vec<usize> {
    let bottom = lattice.bottom();
    lattice
        .nodes()
        .map(|x| lattice.rank_between(bottom, x).expect("bottom is below every node"))
        .collect()
}

fn linear_extension(lattice: &SupportLattice) -> Vec<usize> {
    let ranks = node_ranks(lattice);
    let mut order: Vec<usize> = lattice.nodes().collect();
    order.sort_by_key(|&x| (ranks[x], x));
    order
}

/// `θ = |G|⁻¹ Σ_g χ(g)⁻¹ g` for a character given by its values on the
/// members of `G` (in member order).
pub fn character_idempotent(
    m: &FiniteMonoid,
    group: &MaximalSubgroup,
    values: &[u32],
    f: &PrimeField,
) -> Result<AlgebraElement> {
    let order = group.order();
    if order.is_multiple_of(f.p() as usize) {
        return Err(Error::BadCharacteristic { p: f.p(), order });
    }
    let scale = f.inv(f.from_usize(order));
    let mut out = AlgebraElement::zero(m.size());
    for (i, &g) in group.members.iter().enumerate() {
        out.coeffs[g] = f.mul(scale, f.inv(values[i]));
    }
    Ok(out)
}

/// All homomorphisms `G → F_p^×` as value vectors over the members of `G`,
/// sorted lexicographically (the trivial character first).
pub fn group_characters(
    m: &FiniteMonoid,
    group: &MaximalSubgroup,
    f: &PrimeField,
) -> Result<Vec<Vec<u32>>> {
    let e = group.idempotent;
    if !group.is_abelian(m) {
        return Err(Error::NonAbelianFiber(e));
    }
    let order = group.order();
    if order.is_multiple_of(f.p() as usize) {
        return Err(Error::BadCharacteristic { p: f.p(), order });
    }
    let pos = |x: usize| group.position(x).expect("closed under the product");
    // characters of the subgroup H generated so far, as partial value maps
    let mut in_h = vec![false; order];
    in_h[pos(e)] = true;
    let mut h_members = vec![pos(e)];
    let mut chars: Vec<Vec<u32>> = vec![{
        let mut v = vec![0; order];
        v[pos(e)] = 1;
        v
    }];
    for gi in 0..order {
        if in_h[gi] {
            continue;
        }
        let g = group.members[gi];
        // smallest d with g^d ∈ H
        let mut powers = vec![e];
        let mut x = g;
        while !in_h[pos(x)] {
            powers.push(x);
            x = m.mul(x, g);
        }
        let d = powers.len() as u64;
        let gd = pos(x);
        let mut next = Vec::with_capacity(chars.len() * d as usize);
        for chi in &chars {
            let target = chi[gd];
            let roots: Vec<u32> = (1..f.p()).filter(|&c| f.pow(c, d) == target).collect();
            for c in roots {
                let mut v = chi.clone();
                for &h in &h_members {
                    for (j, &gj) in powers.iter().enumerate().skip(1) {
                        let hg = pos(m.mul(group.members[h], gj));
                        v[hg] = f.mul(chi[h], f.pow(c, j as u64));
                    }
                }
                next.push(v);
            }
        }
        let mut new_members = h_members.clone();
        for &h in &h_members {
            for &gj in powers.iter().skip(1) {
                let hg = pos(m.mul(group.members[h], gj));
                if !in_h[hg] {
                    in_h[hg] = true;
                    new_members.push(hg);
                }
            }
        }
        h_members = new_members;
        chars = next;
    }
    if chars.len() != order {
        return Err(Error::NonSplitBasic);
    }
    chars.sort();
    Ok(chars)
}

/// Character-level data of `F_p M`: simple labels, their order, simple
/// functionals, and the idempotents `η_X`, `θ_{X,χ}`, `γ_{X,χ}`.
#[derive(Debug, Clone)]
pub struct RepTheory<'a> {
    monoid: &'a FiniteMonoid,
    field: PrimeField,
    lattice: &'a SupportLattice,
    node_ranks: Vec<usize>,
    subgroups: Vec<MaximalSubgroup>,
    characters: Vec<Vec<Vec<u32>>>,
    labels: Vec<SimpleLabel>,
    first_label: Vec<usize>,
    lambda: Vec<Vec<u32>>,
    eta: Vec<AlgebraElement>,
    theta: Vec<AlgebraElement>,
    gamma: Vec<AlgebraElement>,
    gamma_simplified: Vec<AlgebraElement>,
    label_poset: FinitePoset,
}

impl<'a> RepTheory<'a> {
    pub fn new(monoid: &'a FiniteMonoid, field: PrimeField) -> Result<Self> {
        let axioms = monoid.check_axioms();
        if !axioms.regular_left_duo() {
            return Err(Error::NotRegularLeftDuo);
        }
        let lattice = monoid.support_lattice()?;
        let f = field;
        let subgroups: Vec<MaximalSubgroup> = lattice
            .nodes()
            .map(|x| monoid.maximal_subgroup(lattice.representative(x)))
            .collect::<Result<_>>()?;
        let characters: Vec<Vec<Vec<u32>>> = subgroups
            .iter()
            .map(|g| group_characters(monoid, g, &f))
            .collect::<Result<_>>()?;
        let mut labels = Vec::new();
        let mut first_label = Vec::new();
        for x in lattice.nodes() {
            first_label.push(labels.len());
            labels.extend((0..characters[x].len()).map(|c| SimpleLabel {
                apex: x,
                character: c,
            }));
        }
        let lambda: Vec<Vec<u32>> = labels
            .iter()
            .map(|l| {
                let x = l.apex;
                let ex = lattice.representative(x);
                monoid
                    .elements()
                    .map(|m| {
                        if !lattice.leq(x, lattice.sigma(m)) {
                            return Ok(0);
                        }
                        let g = monoid.mul(ex, m);
                        let p = subgroups[x].position(g).ok_or_else(|| {
                            Error::Invariant(format!("e_X·{m} is not a unit of e_X M e_X"))
                        })?;
                        Ok(characters[x][l.character][p])
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<_>>()?;
        let eta = eta_idempotents(monoid, &f)?;
        let theta: Vec<AlgebraElement> = labels
            .iter()
            .map(|l| {
                character_idempotent(monoid, &subgroups[l.apex], &characters[l.apex][l.character], &f)
            })
            .collect::<Result<_>>()?;
        let (gamma, gamma_simplified): (Vec<_>, Vec<_>) = labels
            .par_iter()
            .zip(theta.par_iter())
            .map(|(l, th)| {
                let et = eta[l.apex].mul(&f, monoid, th);
                (et.mul(&f, monoid, &eta[l.apex]), et)
            })
            .unzip();
        if axioms.lrb_of_groups && gamma != gamma_simplified {
            return Err(Error::Invariant("η θ η and η θ differ".into()));
        }
        let node_ranks = node_ranks(lattice);
        let n = labels.len();
        let leq = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let (la, lb) = (labels[a], labels[b]);
                        let (x, y) = (la.apex, lb.apex);
                        if !lattice.leq(x, y) {
                            return false;
                        }
                        let ex = lattice.representative(x);
                        subgroups[y].members.iter().enumerate().all(|(i, &g)| {
                            let r = subgroups[x]
                                .position(monoid.mul(ex, g))
                                .expect("retraction lands in G_X");
                            characters[y][lb.character][i] == characters[x][la.character][r]
                        })
                    })
                    .collect()
            })
            .collect();
        let label_poset = FinitePoset::from_leq(leq)?;
        Ok(RepTheory {
            monoid,
            field,
            lattice,
            node_ranks,
            subgroups,
            characters,
            labels,
            first_label,
            lambda,
            eta,
            theta,
            gamma,
            gamma_simplified,
            label_poset,
        })
    }

    pub fn monoid(&self) -> &'a FiniteMonoid {
        self.monoid
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn lattice(&self) -> &'a SupportLattice {
        self.lattice
    }

    /// Rank of a node above the bottom of Λ(B).
    pub fn node_rank(&self, x: usize) -> usize {
        self.node_ranks[x]
    }

    pub fn subgroup(&self, x: usize) -> &MaximalSubgroup {
        &self.subgroups[x]
    }

    /// Character values of `G_{e_X}`, per character, in member order.
    pub fn characters(&self, x: usize) -> &[Vec<u32>] {
        &self.characters[x]
    }

    pub fn labels(&self) -> &[SimpleLabel] {
        &self.labels
    }

    pub fn label_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label_index(&self, label: SimpleLabel) -> Option<usize> {
        let i = self.first_label.get(label.apex)? + label.character;
        (self.labels.get(i) == Some(&label)).then_some(i)
    }

    /// `λ_L(m)` for every monoid element `m`.
    pub fn simple_values(&self, label: usize) -> &[u32] {
        &self.lambda[label]
    }

    pub fn eta(&self, x: usize) -> &AlgebraElement {
        &self.eta[x]
    }

    pub fn etas(&self) -> &[AlgebraElement] {
        &self.eta
    }

    pub fn theta(&self, label: usize) -> &AlgebraElement {
        &self.theta[label]
    }

    /// `γ_L = η_X θ_L η_X`.
    pub fn gamma(&self, label: usize) -> &AlgebraElement {
        &self.gamma[label]
    }

    pub fn gammas(&self) -> &[AlgebraElement] {
        &self.gamma
    }

    /// `η_X θ_L`.
    pub fn gamma_simplified(&self, label: usize) -> &AlgebraElement {
        &self.gamma_simplified[label]
    }

    /// The order on labels, indexed like [`RepTheory::labels`].
    pub fn label_poset(&self) -> &FinitePoset {
        &self.label_poset
    }

    /// `rk[X, Y]` for the apexes of two labels.
    pub fn rank_distance(&self, a: usize, b: usize) -> Option<usize> {
        self.lattice
            .rank_between(self.labels[a].apex, self.labels[b].apex)
    }

    pub fn format_label(&self, label: usize) -> String {
        let l = self.labels[label];
        format!("{}|{}", l.apex, l.character)
    }

    pub fn one(&self) -> AlgebraElement {
        AlgebraElement::basis(self.monoid.size(), self.monoid.identity())
    }

    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        a.mul(&self.field, self.monoid, b)
    }
}

/// `(label, γ_L)` pairs; fails with `NotApplicable` when the monoid or
/// prime is outside the supported setting.
pub fn gamma_idempotents(m: &FiniteMonoid, f: PrimeField) -> Result<Vec<(SimpleLabel, AlgebraElement)>> {
    let rep = RepTheory::new(m, f).map_err(|e| Error::NotApplicable(e.to_string()))?;
    Ok(rep.labels.iter().copied().zip(rep.gamma.iter().cloned()).collect())
}

/// `λ_L(m) = χ(e_X m)` if `σ(m) ≥ X`, else 0.
pub fn simple_rep(m: &FiniteMonoid, label: SimpleLabel, f: PrimeField) -> Result<Vec<u32>> {
    let rep = RepTheory::new(m, f)?;
    let i = rep
        .label_index(label)
        .ok_or_else(|| Error::Invariant(format!("no simple label {label:?}")))?;
    Ok(rep.lambda[i].clone())
}

/// Labels with their order `(X,χ) ≤ (Y,θ)` iff `X ≤ Y` and `θ = χ∘ρ_X`.
pub fn label_poset(m: &FiniteMonoid, f: PrimeField) -> Result<(Vec<SimpleLabel>, FinitePoset)> {
    let rep = RepTheory::new(m, f)?;
    Ok((rep.labels, rep.label_poset))
}
