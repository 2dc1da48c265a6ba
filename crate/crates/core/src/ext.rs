//! Ext between simple modules from the topology of the band, the closed
//! form for Hsiao's monoid, quivers with relations, and Koszul
//! diagnostics.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hsiao::{character_exponents, character_roots, HsiaoMonoid};
use crate::rep::RepTheory;
use crate::topology::{
    band_subposet, boundary_subposet, is_cw_poset, order_complex, reduced_betti, FinitePoset,
    ReducedBetti,
};

/// Topological Ext computations for one monoid and prime; reduced Betti
/// numbers of `Δ(∂e_Y B_{≥X})` are computed once per pair `X < Y`.
#[derive(Debug, Clone)]
pub struct ExtCalculator<'r, 'a> {
    rep: &'r RepTheory<'a>,
    betti: HashMap<(usize, usize), ReducedBetti>,
}

impl<'r, 'a> ExtCalculator<'r, 'a> {
    pub fn new(rep: &'r RepTheory<'a>) -> Result<Self> {
        let m = rep.monoid();
        if !m.check_axioms().lrb_of_groups {
            return Err(Error::NotApplicable(
                "topological Ext needs a left regular band of groups".into(),
            ));
        }
        let lattice = rep.lattice();
        let pairs: Vec<(usize, usize)> = lattice
            .nodes()
            .flat_map(|x| lattice.nodes().map(move |y| (x, y)))
            .filter(|&(x, y)| x != y && lattice.leq(x, y))
            .collect();
        let field = *rep.field();
        let betti = pairs
            .par_iter()
            .map(|&(x, y)| {
                let sub = boundary_subposet(m, lattice.representative(y), x)?;
                Ok(((x, y), reduced_betti(&order_complex(&sub.poset), &field)))
            })
            .collect::<Result<HashMap<_, _>>>()?;
        Ok(ExtCalculator { rep, betti })
    }

    pub fn rep(&self) -> &'r RepTheory<'a> {
        self.rep
    }

    /// Reduced Betti numbers of `Δ(∂e_Y B_{≥X})` for nodes `X < Y`.
    pub fn boundary_betti(&self, x: usize, y: usize) -> Option<&ReducedBetti> {
        self.betti.get(&(x, y))
    }

    /// `dim Ext^q(V, W)` for label indices `v`, `w`.
    pub fn ext_dim(&self, v: usize, w: usize, q: usize) -> usize {
        let labels = self.rep.labels();
        let (x, y) = (labels[v].apex, labels[w].apex);
        let lattice = self.rep.lattice();
        if !lattice.leq(x, y) {
            return 0;
        }
        if x == y {
            return usize::from(q == 0 && v == w);
        }
        // Hom_{G_Y}(V, W) is 1-dimensional exactly when W = V∘ρ_X on G_Y
        if !self.rep.label_poset().leq(v, w) {
            return 0;
        }
        self.betti[&(x, y)].get(q as isize - 1)
    }

    pub fn table(&self, max_degree: usize) -> ExtTable {
        let n = self.rep.label_count();
        let entries = (0..n * n)
            .into_par_iter()
            .flat_map_iter(|i| (0..=max_degree).map(move |q| self.ext_dim(i / n, i % n, q)))
            .collect();
        ExtTable {
            labels: n,
            max_degree,
            entries,
        }
    }
}

/// `dim Ext^q(V, W)` through the topology of `∂e_Y B_{≥X}`.
pub fn ext_dim_topological(rep: &RepTheory<'_>, v: usize, w: usize, q: usize) -> Result<usize> {
    Ok(ExtCalculator::new(rep)?.ext_dim(v, w, q))
}

/// `dim Ext^q(V, W)` for all labels and `q ≤ max_degree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtTable {
    labels: usize,
    max_degree: usize,
    entries: Vec<usize>,
}

impl ExtTable {
    pub fn from_fn(labels: usize, max_degree: usize, f: impl Fn(usize, usize, usize) -> usize) -> Self {
        let mut entries = Vec::with_capacity(labels * labels * (max_degree + 1));
        for v in 0..labels {
            for w in 0..labels {
                for q in 0..=max_degree {
                    entries.push(f(v, w, q));
                }
            }
        }
        ExtTable {
            labels,
            max_degree,
            entries,
        }
    }

    pub fn label_count(&self) -> usize {
        self.labels
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn get(&self, v: usize, w: usize, q: usize) -> usize {
        if q > self.max_degree {
            return 0;
        }
        self.entries[(v * self.labels + w) * (self.max_degree + 1) + q]
    }

    /// Sum of all entries.
    pub fn total(&self) -> usize {
        self.entries.iter().sum()
    }

    /// Nonzero `(v, w, q, dim)` entries.
    pub fn nonzero(&self) -> Vec<(usize, usize, usize, usize)> {
        let mut out = Vec::new();
        for v in 0..self.labels {
            for w in 0..self.labels {
                for q in 0..=self.max_degree {
                    let d = self.get(v, w, q);
                    if d != 0 {
                        out.push((v, w, q, d));
                    }
                }
            }
        }
        out
    }

    /// Triples `(v, w, q)` where the two tables differ.
    pub fn mismatches(&self, other: &ExtTable) -> Vec<(usize, usize, usize)> {
        let degree = self.max_degree.max(other.max_degree);
        let mut out = Vec::new();
        for v in 0..self.labels.max(other.labels) {
            for w in 0..self.labels.max(other.labels) {
                for q in 0..=degree {
                    let a = (v < self.labels && w < self.labels).then(|| self.get(v, w, q));
                    let b = (v < other.labels && w < other.labels).then(|| other.get(v, w, q));
                    if a != b {
                        out.push((v, w, q));
                    }
                }
            }
        }
        out
    }
}

/// A label of Hsiao's monoid as `(X, f)`: a set partition `X` (blocks
/// sorted) and a character of `G` per block, as an exponent tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HsiaoLabel {
    pub blocks: Vec<Vec<usize>>,
    pub characters: Vec<Vec<u64>>,
}

/// Converts every simple label of `h` into its `(X, f)` form.
pub fn hsiao_labels(h: &HsiaoMonoid, rep: &RepTheory<'_>) -> Result<Vec<HsiaoLabel>> {
    let group = h.group();
    let field = rep.field();
    let roots = character_roots(group, field)?;
    let lattice = rep.lattice();
    rep.labels()
        .iter()
        .map(|l| {
            let e = lattice.representative(l.apex);
            let pi = h.partition_of(e);
            let sub = rep.subgroup(l.apex);
            let values = &rep.characters(l.apex)[l.character];
            let mut per_block: Vec<(Vec<usize>, Vec<u64>)> = Vec::new();
            for (b, block) in pi.blocks().iter().enumerate() {
                let generator_values: Vec<u32> = (0..group.invariant_factors().len())
                    .map(|i| {
                        let mut unit = vec![0; group.invariant_factors().len()];
                        unit[i] = 1;
                        let mut labels = vec![0; pi.block_count()];
                        labels[b] = group.index(&unit);
                        let g = h.find(pi, &labels).expect("labelled partition exists");
                        values[sub.position(g).expect("block unit lies in G_X")]
                    })
                    .collect();
                let exps = character_exponents(group, &roots, field, &generator_values)
                    .ok_or_else(|| Error::Invariant("character value is not a root power".into()))?;
                per_block.push((block.clone(), exps));
            }
            per_block.sort();
            let (blocks, characters) = per_block.into_iter().unzip();
            Ok(HsiaoLabel { blocks, characters })
        })
        .collect()
}

/// The closed form: `1` iff `X` refines `Y`, `q = |X| − |Y|` and
/// `h(P) = Π_{Q ⊆ P} f(Q)` for every block `P` of `Y`.
pub fn ext_dim_hsiao(h: &HsiaoMonoid, v: &HsiaoLabel, w: &HsiaoLabel, q: usize) -> usize {
    let factors = h.group().invariant_factors();
    if v.blocks.len() < w.blocks.len() || q != v.blocks.len() - w.blocks.len() {
        return 0;
    }
    for (p, hp) in w.blocks.iter().zip(&w.characters) {
        let mut product = vec![0u64; factors.len()];
        for (qb, fq) in v.blocks.iter().zip(&v.characters) {
            if qb.iter().all(|x| p.contains(x)) {
                for (i, m) in factors.iter().enumerate() {
                    product[i] = (product[i] + fq[i]) % m;
                }
            } else if qb.iter().any(|x| p.contains(x)) {
                return 0;
            }
        }
        if &product != hp {
            return 0;
        }
    }
    1
}

/// `ψ(X, f) = Π_B f(B)`, the component witness.
pub fn hsiao_component_character(h: &HsiaoMonoid, label: &HsiaoLabel) -> Vec<u64> {
    let factors = h.group().invariant_factors();
    let mut out = vec![0u64; factors.len()];
    for f in &label.characters {
        for (i, m) in factors.iter().enumerate() {
            out[i] = (out[i] + f[i]) % m;
        }
    }
    out
}

/// A sum of length-2 paths `target ← middle ← source` with coefficient 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub source: usize,
    pub target: usize,
    pub middles: Vec<usize>,
}

/// Quiver on simple labels; arrows point from source to target label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Quiver {
    pub vertices: usize,
    /// `(source, target, multiplicity)`, sorted.
    pub arrows: Vec<(usize, usize, usize)>,
    pub relations: Vec<Relation>,
}

impl Quiver {
    pub fn arrow_count(&self) -> usize {
        self.arrows.iter().map(|a| a.2).sum()
    }

    pub fn multiplicity(&self, source: usize, target: usize) -> usize {
        self.arrows
            .iter()
            .find(|a| a.0 == source && a.1 == target)
            .map_or(0, |a| a.2)
    }

    /// Graphviz rendering; vertices in the given order with the given names.
    pub fn to_dot(&self, order: &[usize], names: &[String]) -> String {
        let mut out = String::from("digraph quiver {\n");
        for &v in order {
            writeln!(out, "  v{v} [label=\"{}\"];", names[v]).unwrap();
        }
        for &(s, t, k) in &self.arrows {
            for _ in 0..k {
                writeln!(out, "  v{s} -> v{t};").unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Arrows from Ext¹: multiplicity `dim Ext¹(V, W)`; relations from the
/// rank-2 intervals of the label poset.
pub fn build_quiver(calc: &ExtCalculator<'_, '_>) -> Result<Quiver> {
    let n = calc.rep().label_count();
    let arrows = (0..n)
        .flat_map(|v| (0..n).map(move |w| (v, w)))
        .filter_map(|(v, w)| {
            let k = calc.ext_dim(v, w, 1);
            (k > 0).then_some((v, w, k))
        })
        .collect();
    Ok(Quiver {
        vertices: n,
        arrows,
        relations: quiver_relations(calc.rep().label_poset())?,
    })
}

/// Hasse diagram of a poset, edges oriented upward, without relations.
pub fn hasse_quiver(poset: &FinitePoset) -> Quiver {
    Quiver {
        vertices: poset.len(),
        arrows: poset.cover_pairs().into_iter().map(|(a, b)| (a, b, 1)).collect(),
        relations: Vec::new(),
    }
}

/// One relation `Σ_{p<z<q} (q ← z ← p)` per rank-2 interval `[p, q]`.
pub fn quiver_relations(poset: &FinitePoset) -> Result<Vec<Relation>> {
    let ranks = poset.ranks().ok_or(Error::NotGraded)?;
    let mut out = Vec::new();
    for p in 0..poset.len() {
        for q in 0..poset.len() {
            if poset.lt(p, q) && ranks[q] == ranks[p] + 2 {
                out.push(Relation {
                    source: p,
                    target: q,
                    middles: poset.open_interval(p, q),
                });
            }
        }
    }
    Ok(out)
}

/// Weakly connected components of the underlying graph.
pub fn component_count(q: &Quiver) -> usize {
    let mut parent: Vec<usize> = (0..q.vertices).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for &(s, t, _) in &q.arrows {
        let (a, b) = (find(&mut parent, s), find(&mut parent, t));
        parent[a] = b;
    }
    (0..q.vertices).filter(|&v| find(&mut parent, v) == v).count()
}

/// Checks that `ψ` is constant along arrows and hits every character of
/// `G`, so that components map onto `Ĝ`; returns the components per value.
pub fn hsiao_component_witness(
    h: &HsiaoMonoid,
    labels: &[HsiaoLabel],
    q: &Quiver,
) -> Result<BTreeMap<Vec<u64>, usize>> {
    let psi: Vec<Vec<u64>> = labels.iter().map(|l| hsiao_component_character(h, l)).collect();
    for &(s, t, _) in &q.arrows {
        if psi[s] != psi[t] {
            return Err(Error::Invariant(format!("ψ changes along the arrow {s} → {t}")));
        }
    }
    let mut components: BTreeMap<Vec<u64>, Vec<usize>> = BTreeMap::new();
    for (v, value) in psi.iter().enumerate() {
        components.entry(value.clone()).or_default().push(v);
    }
    if components.len() != h.group().order() {
        return Err(Error::Invariant("ψ misses some character of G".into()));
    }
    Ok(components
        .into_iter()
        .map(|(value, vs)| {
            let sub = Quiver {
                vertices: vs.len(),
                arrows: q
                    .arrows
                    .iter()
                    .filter(|a| vs.contains(&a.0))
                    .map(|&(s, t, k)| {
                        let pos = |x| vs.iter().position(|&y| y == x).unwrap();
                        (pos(s), pos(t), k)
                    })
                    .collect(),
                relations: Vec::new(),
            };
            (value, component_count(&sub))
        })
        .collect())
}

/// Whether every contraction `B_{≥X}` passes [`is_cw_poset`].
pub fn is_cw_instance(rep: &RepTheory<'_>) -> Result<bool> {
    let m = rep.monoid();
    let results = rep
        .lattice()
        .nodes()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|x| Ok(is_cw_poset(&band_subposet(m, x)?.poset)))
        .collect::<Result<Vec<bool>>>()?;
    Ok(results.into_iter().all(|b| b))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KoszulReport {
    /// Ext^q(V, W) ≠ 0 exactly when V ≤ W and q is their rank distance.
    pub concentrated: bool,
    pub ext_algebra_dim: usize,
    pub interval_count: usize,
    pub dims_equal: bool,
    /// Triples violating concentration.
    pub violations: Vec<(usize, usize, usize)>,
}

pub fn koszul_diagnostics(rep: &RepTheory<'_>, table: &ExtTable) -> KoszulReport {
    let poset = rep.label_poset();
    let n = rep.label_count();
    let mut violations = Vec::new();
    for v in 0..n {
        for w in 0..n {
            let expected_degree = if poset.leq(v, w) {
                rep.rank_distance(v, w)
            } else {
                None
            };
            for q in 0..=table.max_degree() {
                let nonzero = table.get(v, w, q) != 0;
                if nonzero != (expected_degree == Some(q)) {
                    violations.push((v, w, q));
                }
            }
        }
    }
    let ext_algebra_dim = table.total();
    let interval_count = (0..n)
        .map(|v| (0..n).filter(|&w| poset.leq(v, w)).count())
        .sum();
    KoszulReport {
        concentrated: violations.is_empty(),
        ext_algebra_dim,
        interval_count,
        dims_equal: ext_algebra_dim == interval_count,
        violations,
    }
}
