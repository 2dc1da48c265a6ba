//! Ordered set partitions under the Tits product, Hsiao's monoid of
//! ordered G-partitions for finite abelian G, and the character theory of
//! G over a prime field containing enough roots of unity.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{is_prime, PrimeField};
use crate::monoid::FiniteMonoid;

/// Largest `n` accepted by [`build_sigma_n`].
pub const SIGMA_MAX_N: usize = 6;
/// Largest element count accepted by [`build_hsiao`].
pub const HSIAO_MAX_SIZE: usize = 5000;
/// Primes are searched below this bound.
pub const PRIME_SEARCH_CAP: u64 = 1 << 31;

/// An ordered partition of `{1, …, n}` into nonempty blocks, each block
/// sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderedSetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl OrderedSetPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        let mut out = Vec::with_capacity(blocks.len());
        for mut b in blocks {
            if b.is_empty() {
                return Err(Error::Invariant("empty block".into()));
            }
            b.sort_unstable();
            for &x in &b {
                if x == 0 || x > n || seen[x] {
                    return Err(Error::Invariant(format!(
                        "blocks must partition 1..={n} (offending point {x})"
                    )));
                }
                seen[x] = true;
            }
            out.push(b);
        }
        if seen[1..].iter().any(|s| !s) {
            return Err(Error::Invariant(format!("blocks do not cover 1..={n}")));
        }
        Ok(OrderedSetPartition { n, blocks: out })
    }

    /// From a block-assignment vector: point `i + 1` lies in block `a[i]`.
    /// The image of `a` must be an initial segment of the naturals.
    pub fn from_assignment(a: &[usize]) -> Result<Self> {
        let k = a.iter().max().map_or(0, |&m| m + 1);
        let mut blocks = vec![Vec::new(); k];
        for (i, &b) in a.iter().enumerate() {
            blocks[b].push(i + 1);
        }
        Self::new(a.len(), blocks)
    }

    /// The one-block partition.
    pub fn identity(n: usize) -> Self {
        OrderedSetPartition {
            n,
            blocks: if n == 0 { vec![] } else { vec![(1..=n).collect()] },
        }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn assignment(&self) -> Vec<usize> {
        let mut a = vec![0; self.n];
        for (j, b) in self.blocks.iter().enumerate() {
            for &x in b {
                a[x - 1] = j;
            }
        }
        a
    }

    /// Underlying set partition, blocks sorted by least element.
    pub fn set_partition(&self) -> Vec<Vec<usize>> {
        let mut s = self.blocks.clone();
        s.sort();
        s
    }

    /// `(P_1∩Q_1, …, P_1∩Q_s, …, P_r∩Q_s)` with empty intersections omitted.
    pub fn tits_product(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::GroundSetMismatch(self.n, other.n));
        }
        let mut blocks = Vec::new();
        for p in &self.blocks {
            for q in &other.blocks {
                let meet: Vec<usize> = p.iter().copied().filter(|x| q.contains(x)).collect();
                if !meet.is_empty() {
                    blocks.push(meet);
                }
            }
        }
        Ok(OrderedSetPartition { n: self.n, blocks })
    }
}

impl fmt::Display for OrderedSetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            let inner: Vec<String> = b.iter().map(ToString::to_string).collect();
            write!(f, "{{{}}}", inner.join(","))?;
        }
        write!(f, ")")
    }
}

/// Tits product on block-assignment vectors.
fn tits_assignment(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut keys: Vec<(usize, usize)> = a.iter().copied().zip(b.iter().copied()).collect();
    let pairs = keys.clone();
    keys.sort_unstable();
    keys.dedup();
    pairs
        .iter()
        .map(|k| keys.binary_search(k).unwrap())
        .collect()
}

/// All ordered set partitions of `{1..n}`, in lexicographic order of their
/// block-assignment vectors (so the one-block partition comes first).
pub fn ordered_set_partitions(n: usize) -> Vec<OrderedSetPartition> {
    let mut out = Vec::new();
    let mut a = vec![0usize; n];
    loop {
        let k = a.iter().max().map_or(0, |&m| m + 1);
        let mut used = vec![false; k];
        for &b in &a {
            used[b] = true;
        }
        if used.iter().all(|&u| u) {
            out.push(OrderedSetPartition::from_assignment(&a).expect("surjective assignment"));
        }
        // odometer over {0..n-1}^n, last position fastest
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if a[i] + 1 < n {
                a[i] += 1;
                for x in a.iter_mut().skip(i + 1) {
                    *x = 0;
                }
                break;
            }
        }
    }
}

/// Finite abelian group `Z/m_1 × … × Z/m_k` with `m_1 | m_2 | … | m_k`,
/// every `m_i ≥ 2`. Elements are residue tuples indexed in lexicographic
/// order; index 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        FiniteAbelianGroup { factors: vec![] }
    }

    pub fn cyclic(m: u64) -> Result<Self> {
        Self::from_invariant_factors(vec![m])
    }

    /// Factors equal to 1 are dropped; the rest must form a divisibility
    /// chain.
    pub fn from_invariant_factors(factors: Vec<u64>) -> Result<Self> {
        if factors.contains(&0) {
            return Err(Error::InvalidGroup("invariant factor 0".into()));
        }
        let factors: Vec<u64> = factors.into_iter().filter(|&m| m > 1).collect();
        for w in factors.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(Error::InvalidGroup(format!(
                    "invariant factors must divide each other in order ({} does not divide {})",
                    w[0], w[1]
                )));
            }
        }
        let order = factors.iter().try_fold(1u64, |acc, &m| acc.checked_mul(m));
        match order {
            Some(o) if o <= u16::MAX as u64 => Ok(FiniteAbelianGroup { factors }),
            _ => Err(Error::InvalidGroup("group too large".into())),
        }
    }

    /// Parses `"2"`, `"2x2"`, `"2x4"`, `"1"`.
    pub fn parse(text: &str) -> Result<Self> {
        let factors = text
            .trim()
            .split(['x', 'X', '*'])
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidGroup(format!("cannot parse {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_invariant_factors(factors)
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product::<u64>() as usize
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn element(&self, index: usize) -> Vec<u64> {
        let mut rest = index as u64;
        let mut out = vec![0; self.factors.len()];
        for (i, &m) in self.factors.iter().enumerate().rev() {
            out[i] = rest % m;
            rest /= m;
        }
        out
    }

    pub fn index(&self, residues: &[u64]) -> usize {
        residues
            .iter()
            .zip(&self.factors)
            .fold(0u64, |acc, (&r, &m)| acc * m + r % m) as usize
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.element(a), self.element(b));
        let sum: Vec<u64> = x
            .iter()
            .zip(&y)
            .zip(&self.factors)
            .map(|((&u, &v), &m)| (u + v) % m)
            .collect();
        self.index(&sum)
    }

    pub fn neg(&self, a: usize) -> usize {
        let x = self.element(a);
        let out: Vec<u64> = x
            .iter()
            .zip(&self.factors)
            .map(|(&u, &m)| (m - u) % m)
            .collect();
        self.index(&out)
    }

    /// Addition table, `table[a * order + b]`.
    pub fn table(&self) -> Vec<usize> {
        let n = self.order();
        (0..n * n).map(|i| self.add(i / n, i % n)).collect()
    }

    pub fn format_element(&self, index: usize) -> String {
        let e = self.element(index);
        if e.is_empty() {
            return "0".into();
        }
        e.iter().map(ToString::to_string).collect::<Vec<_>>().join(".")
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Smallest prime `p ≥ min` with `p ≡ 1 (mod exponent(G))` and `p ∤ |G|`.
pub fn splitting_prime(group: &FiniteAbelianGroup, min: u64) -> Result<u32> {
    let exponent = group.exponent();
    let order = group.order() as u64;
    let mut p = min.max(2);
    while p < PRIME_SEARCH_CAP {
        if (p - 1).is_multiple_of(exponent) && !order.is_multiple_of(p) && is_prime(p) {
            return Ok(p as u32);
        }
        p += 1;
    }
    Err(Error::SearchExhausted(PRIME_SEARCH_CAP))
}

/// Primitive `m`-th roots of unity `ζ_i = ω^{(p-1)/m_i}` in F_p, one per
/// invariant factor, with `ω` the least primitive root.
pub fn character_roots(group: &FiniteAbelianGroup, field: &PrimeField) -> Result<Vec<u32>> {
    let p = field.p();
    if !(p as u64 - 1).is_multiple_of(group.exponent()) {
        return Err(Error::BadPrime {
            p,
            exponent: group.exponent(),
        });
    }
    group
        .invariant_factors()
        .iter()
        .map(|&m| field.root_of_unity(m))
        .collect()
}

/// A homomorphism `G → F_p^×`, `χ_k(g) = Π ζ_i^{k_i g_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Character {
    exponents: Vec<u64>,
    values: Vec<u32>,
}

impl Character {
    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// Values indexed by group element.
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn value(&self, g: usize) -> u32 {
        self.values[g]
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&k| k == 0)
    }
}

/// All `|G|` characters, ordered lexicographically by exponent tuple; the
/// trivial character comes first.
pub fn dual_group(group: &FiniteAbelianGroup, field: &PrimeField) -> Result<Vec<Character>> {
    let roots = character_roots(group, field)?;
    let n = group.order();
    Ok((0..n)
        .map(|k| {
            let exponents = group.element(k);
            let values = (0..n)
                .map(|g| {
                    let residues = group.element(g);
                    (0..roots.len()).fold(1, |acc, i| {
                        field.mul(acc, field.pow(roots[i], exponents[i] * residues[i]))
                    })
                })
                .collect();
            Character { exponents, values }
        })
        .collect())
}

/// Exponent tuple of the character of `G` with the given values on the
/// standard generators, or `None` if some value is not a power of the
/// matching root.
pub fn character_exponents(
    group: &FiniteAbelianGroup,
    roots: &[u32],
    field: &PrimeField,
    generator_values: &[u32],
) -> Option<Vec<u64>> {
    group
        .invariant_factors()
        .iter()
        .zip(roots)
        .zip(generator_values)
        .map(|((&m, &z), &v)| (0..m).find(|&k| field.pow(z, k) == v))
        .collect()
}

/// Hsiao's monoid `Σ_n^G` of ordered G-partitions `(π, g)` with `g`
/// constant on the blocks of `π`, together with its element encoding.
///
/// Elements are ordered lexicographically by (block-assignment vector of
/// `π`, per-point label vector).
#[derive(Debug, Clone)]
pub struct HsiaoMonoid {
    n: usize,
    group: FiniteAbelianGroup,
    partitions: Vec<OrderedSetPartition>,
    // (partition index, label of each point)
    elements: Vec<(usize, Vec<usize>)>,
    monoid: FiniteMonoid,
}

/// `Σ_π |G|^{#blocks(π)}` without building anything.
pub fn hsiao_size(n: usize, group: &FiniteAbelianGroup) -> u128 {
    // ordered set partitions of n into k blocks: k! S(n, k)
    let mut stirling = vec![vec![0u128; n + 1]; n + 1];
    stirling[0][0] = 1;
    for i in 1..=n {
        for k in 1..=i {
            stirling[i][k] = k as u128 * stirling[i - 1][k] + stirling[i - 1][k - 1];
        }
    }
    let g = group.order() as u128;
    let mut total = 0u128;
    let mut fact = 1u128;
    for k in 1..=n {
        fact *= k as u128;
        total = total.saturating_add(fact * stirling[n][k] * g.saturating_pow(k as u32));
    }
    if n == 0 {
        1
    } else {
        total
    }
}

pub fn build_hsiao(n: usize, group: &FiniteAbelianGroup) -> Result<HsiaoMonoid> {
    if n == 0 {
        return Err(Error::SizeLimit("n must be at least 1".into()));
    }
    let size = hsiao_size(n, group);
    if n > SIGMA_MAX_N || size > HSIAO_MAX_SIZE as u128 {
        return Err(Error::SizeLimit(format!(
            "Σ_{n}^G with |G| = {} has {size} elements (limit {HSIAO_MAX_SIZE}, n ≤ {SIGMA_MAX_N})",
            group.order()
        )));
    }
    let partitions = ordered_set_partitions(n);
    let assignments: Vec<Vec<usize>> = partitions.iter().map(|p| p.assignment()).collect();
    let part_index: HashMap<&[usize], usize> = assignments
        .iter()
        .enumerate()
        .map(|(i, a)| (a.as_slice(), i))
        .collect();
    let s = partitions.len();
    let part_table: Vec<usize> = (0..s * s)
        .into_par_iter()
        .map(|i| part_index[tits_assignment(&assignments[i / s], &assignments[i % s]).as_slice()])
        .collect();

    let order = group.order();
    let mut elements = Vec::with_capacity(size as usize);
    for (pi, p) in partitions.iter().enumerate() {
        let k = p.block_count();
        let a = &assignments[pi];
        let mut labels: Vec<Vec<usize>> = (0..order.pow(k as u32))
            .map(|mut code| {
                let mut block_labels = vec![0; k];
                for b in block_labels.iter_mut() {
                    *b = code % order;
                    code /= order;
                }
                a.iter().map(|&blk| block_labels[blk]).collect()
            })
            .collect();
        labels.sort();
        elements.extend(labels.into_iter().map(|l| (pi, l)));
    }
    let index: HashMap<(usize, &[usize]), usize> = elements
        .iter()
        .enumerate()
        .map(|(i, (p, l))| ((*p, l.as_slice()), i))
        .collect();
    let gtable = group.table();
    let size = elements.len();
    let table: Vec<u16> = (0..size * size)
        .into_par_iter()
        .map(|i| {
            let (pa, la) = &elements[i / size];
            let (pb, lb) = &elements[i % size];
            let pc = part_table[pa * s + pb];
            let lc: Vec<usize> = la.iter().zip(lb).map(|(&x, &y)| gtable[x * order + y]).collect();
            index[&(pc, lc.as_slice())] as u16
        })
        .collect();
    let identity = index[&(0, vec![0; n].as_slice())];
    let monoid = FiniteMonoid::new_trusted(size, table, identity)?;
    Ok(HsiaoMonoid {
        n,
        group: group.clone(),
        partitions,
        elements,
        monoid,
    })
}

/// `Σ_n` as a monoid; element `i` is `ordered_set_partitions(n)[i]`.
pub fn build_sigma_n(n: usize) -> Result<FiniteMonoid> {
    if n == 0 || n > SIGMA_MAX_N {
        return Err(Error::SizeLimit(format!("Σ_n needs 1 ≤ n ≤ {SIGMA_MAX_N}, got {n}")));
    }
    Ok(build_hsiao(n, &FiniteAbelianGroup::trivial())?.into_monoid())
}

impl HsiaoMonoid {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    pub fn into_monoid(self) -> FiniteMonoid {
        self.monoid
    }

    pub fn partitions(&self) -> &[OrderedSetPartition] {
        &self.partitions
    }

    pub fn partition_of(&self, m: usize) -> &OrderedSetPartition {
        &self.partitions[self.elements[m].0]
    }

    /// Label (group element index) of every point `1..=n`.
    pub fn labels_of(&self, m: usize) -> &[usize] {
        &self.elements[m].1
    }

    /// Label of each block, in block order.
    pub fn block_labels(&self, m: usize) -> Vec<usize> {
        let labels = self.labels_of(m);
        self.partition_of(m)
            .blocks()
            .iter()
            .map(|b| labels[b[0] - 1])
            .collect()
    }

    /// Element with the given partition and per-block labels.
    pub fn find(&self, partition: &OrderedSetPartition, block_labels: &[usize]) -> Option<usize> {
        let pi = self.partitions.iter().position(|p| p == partition)?;
        if block_labels.len() != partition.block_count() {
            return None;
        }
        let mut labels = vec![0; self.n];
        for (b, &g) in partition.blocks().iter().zip(block_labels) {
            for &x in b {
                labels[x - 1] = g;
            }
        }
        self.elements
            .iter()
            .position(|(p, l)| *p == pi && *l == labels)
    }

    pub fn format_element(&self, m: usize) -> String {
        let p = self.partition_of(m);
        if self.group.is_trivial() {
            return p.to_string();
        }
        let labels: Vec<String> = self
            .block_labels(m)
            .iter()
            .map(|&g| self.group.format_element(g))
            .collect();
        format!("{p}[{}]", labels.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn osp(n: usize, blocks: &[&[usize]]) -> OrderedSetPartition {
        OrderedSetPartition::new(n, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn tits_product_examples() {
        let p = osp(3, &[&[1], &[2, 3]]);
        let q = osp(3, &[&[3], &[1, 2]]);
        assert_eq!(p.tits_product(&q).unwrap(), osp(3, &[&[1], &[3], &[2]]));
        assert_eq!(OrderedSetPartition::identity(3).tits_product(&q).unwrap(), q);
        assert_eq!(q.tits_product(&q).unwrap(), q);
        assert_eq!(
            p.tits_product(&OrderedSetPartition::identity(2)),
            Err(Error::GroundSetMismatch(3, 2))
        );
    }

    #[test]
    fn encoding_order() {
        let ps = ordered_set_partitions(2);
        assert_eq!(ps[0], OrderedSetPartition::identity(2));
        assert_eq!(ps[1], osp(2, &[&[1], &[2]]));
        assert_eq!(ps[2], osp(2, &[&[2], &[1]]));
    }

    #[test]
    fn sizes() {
        let fubini = [1usize, 1, 3, 13, 75, 541, 4683];
        for n in 1..=5 {
            assert_eq!(ordered_set_partitions(n).len(), fubini[n]);
        }
        let z2 = FiniteAbelianGroup::cyclic(2).unwrap();
        assert_eq!(build_hsiao(2, &z2).unwrap().monoid().size(), 10);
        assert_eq!(hsiao_size(3, &z2), 74);
        assert_eq!(hsiao_size(4, &z2), 730);
        assert!(matches!(build_sigma_n(7), Err(Error::SizeLimit(_))));
    }

    #[test]
    fn groups() {
        assert!(FiniteAbelianGroup::parse("4x2").is_err());
        let g = FiniteAbelianGroup::parse("2x4").unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.exponent(), 4);
        for a in 0..8 {
            assert_eq!(g.add(a, g.neg(a)), 0);
        }
        assert!(FiniteAbelianGroup::parse("1").unwrap().is_trivial());
    }

    #[test]
    fn primes() {
        let t = FiniteAbelianGroup::trivial();
        assert_eq!(splitting_prime(&t, 2).unwrap(), 2);
        assert_eq!(splitting_prime(&FiniteAbelianGroup::cyclic(2).unwrap(), 2).unwrap(), 3);
        assert_eq!(splitting_prime(&FiniteAbelianGroup::cyclic(3).unwrap(), 2).unwrap(), 7);
        assert_eq!(splitting_prime(&FiniteAbelianGroup::parse("2x2").unwrap(), 2).unwrap(), 3);
        assert_eq!(splitting_prime(&FiniteAbelianGroup::cyclic(4).unwrap(), 2).unwrap(), 5);
    }

    #[test]
    fn dual_of_z2_over_f3() {
        let f = PrimeField::new(3).unwrap();
        let chars = dual_group(&FiniteAbelianGroup::cyclic(2).unwrap(), &f).unwrap();
        assert_eq!(chars.len(), 2);
        assert_eq!(chars[0].values(), &[1, 1]);
        assert_eq!(chars[1].values(), &[1, 2]);
        assert!(matches!(
            dual_group(&FiniteAbelianGroup::cyclic(3).unwrap(), &f),
            Err(Error::BadPrime { p: 3, exponent: 3 })
        ));
    }
}
