//! End-to-end acceptance checks. Every comparison is an exact integer or
//! field equality; each criterion also has a wall-clock bound.

mod common;

use std::io::Write;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use common::{auto_field, hsiao};
use duorep::ext::{
    build_quiver, component_count, ext_dim_hsiao, hasse_quiver, hsiao_labels, is_cw_instance,
    koszul_diagnostics, quiver_relations, ExtCalculator, ExtTable,
};
use duorep::hsiao::{build_sigma_n, HsiaoMonoid};
use duorep::oracle::{
    minimal_cellular_resolution, minimal_resolution, order_complex_resolution,
    presentation_dimension_check, Oracle,
};
use duorep::rep::{AlgebraElement, RepTheory};
use duorep::topology::{
    band_subposet, boundary_subposet, incidence_numbers, order_complex, reduced_betti, FinitePoset,
};
use duorep::{FiniteMonoid, PrimeField};
use rayon::prelude::*;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `(n, group)` for every Hsiao instance with `n ≤ 3` and `|G| ≤ 4`.
const HSIAO_INSTANCES: &[(usize, &str)] = &[
    (1, "1"),
    (2, "1"),
    (3, "1"),
    (1, "2"),
    (2, "2"),
    (3, "2"),
    (1, "3"),
    (2, "3"),
    (3, "3"),
    (1, "4"),
    (2, "4"),
    (3, "4"),
    (1, "2x2"),
    (2, "2x2"),
    (3, "2x2"),
];

/// The instances on which the oracle is compared with the closed forms.
const ORACLE_INSTANCES: &[(usize, &str)] = &[(2, "2"), (3, "2"), (2, "3"), (3, "1")];

fn instances() -> &'static [HsiaoMonoid] {
    static CELL: OnceLock<Vec<HsiaoMonoid>> = OnceLock::new();
    CELL.get_or_init(|| HSIAO_INSTANCES.iter().map(|&(n, g)| hsiao(n, g)).collect())
}

fn instance(n: usize, g: &str) -> &'static HsiaoMonoid {
    let i = HSIAO_INSTANCES.iter().position(|&(m, h)| m == n && h == g).unwrap();
    &instances()[i]
}

fn name(h: &HsiaoMonoid) -> String {
    format!("Σ_{}^{}", h.n(), h.group())
}

fn criterion_axioms() -> Outcome {
    let sigma: Vec<FiniteMonoid> = (1..=4).map(|n| build_sigma_n(n).unwrap()).collect();
    let sizes: Vec<usize> = sigma.iter().map(FiniteMonoid::size).collect();
    ensure(sizes == [1, 3, 13, 75], || format!("Σ_n sizes {sizes:?}"))?;
    for (n, m) in sigma.iter().enumerate() {
        let r = m.check_axioms();
        ensure(r.lrb_of_groups && r.right_semicentral && r.band, || {
            format!("Σ_{} fails the axioms: {r:?}", n + 1)
        })?;
    }
    let hs = instances();
    for h in hs {
        let r = h.monoid().check_axioms();
        ensure(r.lrb_of_groups && r.right_semicentral && r.regular && r.left_duo, || {
            format!("{} fails the axioms: {r:?}", name(h))
        })?;
    }
    let s32 = instance(3, "2").monoid().size();
    ensure(s32 == 74, || format!("Σ_3^Z2 has {s32} elements"))?;
    Ok(format!("{} Hsiao instances, sizes Σ_3 = 13, Σ_4 = 75, Σ_3^Z2 = 74", hs.len()))
}

fn criterion_idempotents() -> Outcome {
    let mut labels = 0;
    for h in instances() {
        let rep = RepTheory::new(h.monoid(), auto_field(h)).map_err(|e| e.to_string())?;
        let f = *rep.field();
        let gammas = rep.gammas();
        ensure(gammas.len() == rep.label_count(), || format!("{}: count", name(h)))?;
        let total = gammas
            .iter()
            .fold(AlgebraElement::zero(h.monoid().size()), |acc, g| acc.add(&f, g));
        ensure(total == rep.one(), || format!("{}: Σγ ≠ 1", name(h)))?;
        let bad = (0..gammas.len()).into_par_iter().find_any(|&a| {
            (0..gammas.len()).any(|b| {
                let ab = rep.mul(&gammas[a], &gammas[b]);
                if a == b {
                    ab != gammas[a]
                } else {
                    !ab.is_zero()
                }
            })
        });
        ensure(bad.is_none(), || format!("{}: orthogonality fails at {bad:?}", name(h)))?;
        let oracle = Oracle::new(&rep).map_err(|e| e.to_string())?;
        let prim = (0..gammas.len())
            .into_par_iter()
            .find_any(|&l| oracle.primitivity_dimension(l) != 1);
        ensure(prim.is_none(), || format!("{}: γ_{prim:?} not primitive", name(h)))?;
        labels += gammas.len();
    }
    Ok(format!("{labels} idempotents over {} instances", instances().len()))
}

/// Ext table read off the tops of minimal resolutions, `q ≤ max_degree`.
fn oracle_table(oracle: &Oracle<'_, '_>, max_degree: usize) -> Result<ExtTable, String> {
    let rep = oracle.rep();
    let n = rep.label_count();
    let tops: Vec<Vec<Vec<usize>>> = (0..n)
        .into_par_iter()
        .map(|v| {
            let res = minimal_resolution(oracle, &oracle.simple(v), max_degree + 1)
                .map_err(|e| e.to_string())?;
            let tops = res.tops(oracle);
            for w in 0..n {
                let cohomology = res.ext_dims(oracle, w);
                let from_tops: Vec<usize> = tops.iter().map(|t| t[w]).collect();
                if cohomology != from_tops {
                    return Err(format!("Hom cohomology and tops differ for ({v}, {w})"));
                }
            }
            Ok(tops)
        })
        .collect::<Result<_, String>>()?;
    Ok(ExtTable::from_fn(n, max_degree, |v, w, q| {
        tops[v].get(q).map_or(0, |t| t[w])
    }))
}

fn criterion_ext() -> Outcome {
    let mut triples = 0;
    for &(n, g) in ORACLE_INSTANCES {
        let h = instance(n, g);
        let rep = RepTheory::new(h.monoid(), auto_field(h)).map_err(|e| e.to_string())?;
        let rank = rep.lattice().height();
        let topological = ExtCalculator::new(&rep).map_err(|e| e.to_string())?.table(rank);
        let labels = hsiao_labels(h, &rep).map_err(|e| e.to_string())?;
        let closed = ExtTable::from_fn(labels.len(), rank, |v, w, q| {
            ext_dim_hsiao(h, &labels[v], &labels[w], q)
        });
        let oracle = Oracle::new(&rep).map_err(|e| e.to_string())?;
        let computed = oracle_table(&oracle, rank)?;
        let a = topological.mismatches(&closed);
        ensure(a.is_empty(), || format!("{}: topological vs closed form at {a:?}", name(h)))?;
        let b = topological.mismatches(&computed);
        ensure(b.is_empty(), || format!("{}: topological vs oracle at {b:?}", name(h)))?;
        let count = labels.len() * labels.len() * (rank + 1);
        if (n, g) == (2, "2") {
            ensure(count == 72, || format!("Σ_2^Z2 has {count} triples"))?;
        }
        triples += count;
    }
    Ok(format!("{triples} triples agree on all three paths"))
}

fn criterion_concentration() -> Outcome {
    let mut checked = 0;
    let mut s32 = None;
    for h in instances() {
        let rep = RepTheory::new(h.monoid(), auto_field(h)).map_err(|e| e.to_string())?;
        if !is_cw_instance(&rep).map_err(|e| e.to_string())? {
            return Err(format!("{} is not recognised as CW", name(h)));
        }
        let rank = rep.lattice().height();
        let table = ExtCalculator::new(&rep).map_err(|e| e.to_string())?.table(rank + 1);
        let k = koszul_diagnostics(&rep, &table);
        ensure(k.concentrated, || format!("{}: violations {:?}", name(h), k.violations))?;
        ensure(k.dims_equal, || {
            format!("{}: {} ≠ {}", name(h), k.ext_algebra_dim, k.interval_count)
        })?;
        if (h.n(), h.group().to_string().as_str()) == (3, "2") {
            s32 = Some((k.ext_algebra_dim, k.interval_count));
        }
        checked += 1;
    }
    for &(n, g) in ORACLE_INSTANCES {
        let h = instance(n, g);
        let rep = RepTheory::new(h.monoid(), auto_field(h)).map_err(|e| e.to_string())?;
        let oracle = Oracle::new(&rep).map_err(|e| e.to_string())?;
        let table = oracle_table(&oracle, rep.lattice().height() + 1)?;
        let k = koszul_diagnostics(&rep, &table);
        ensure(k.concentrated && k.dims_equal, || {
            format!("{}: oracle table not concentrated: {:?}", name(h), k.violations)
        })?;
    }
    ensure(s32 == Some((66, 66)), || format!("Σ_3^Z2 gives {s32:?}"))?;
    Ok(format!("{checked} instances concentrated, 66 = 66 on Σ_3^Z2"))
}

fn criterion_quiver() -> Outcome {
    let mut arrows = 0;
    for h in instances() {
        let rep = RepTheory::new(h.monoid(), auto_field(h)).map_err(|e| e.to_string())?;
        let calc = ExtCalculator::new(&rep).map_err(|e| e.to_string())?;
        let q = build_quiver(&calc).map_err(|e| e.to_string())?;
        let hasse = hasse_quiver(rep.label_poset());
        ensure(q.arrows == hasse.arrows, || format!("{}: arrows ≠ Hasse covers", name(h)))?;
        let comps = component_count(&q);
        ensure(comps == h.group().order(), || {
            format!("{}: {comps} components, |G| = {}", name(h), h.group().order())
        })?;
        arrows += q.arrow_count();
    }
    let mut intervals = 0;
    for &(n, g) in ORACLE_INSTANCES {
        let h = instance(n, g);
        let rep = RepTheory::new(h.monoid(), auto_field(h)).map_err(|e| e.to_string())?;
        let poset = rep.label_poset();
        let oracle = Oracle::new(&rep).map_err(|e| e.to_string())?;
        let table = oracle_table(&oracle, 2)?;
        let hasse = hasse_quiver(poset);
        let label_count = rep.label_count();
        for v in 0..label_count {
            for w in 0..label_count {
                let cover = poset.covers(v, w);
                ensure(table.get(v, w, 1) == usize::from(cover), || {
                    format!("{}: oracle Ext¹({v}, {w}) vs cover", name(h))
                })?;
                ensure(hasse.multiplicity(v, w) == usize::from(cover), || "hasse".into())?;
            }
        }
        let relations = quiver_relations(poset).map_err(|e| e.to_string())?;
        for v in 0..label_count {
            for w in 0..label_count {
                let rank_two = poset.leq(v, w) && rep.rank_distance(v, w) == Some(2);
                let count = relations
                    .iter()
                    .filter(|r| r.source == v && r.target == w)
                    .count();
                let ext2 = table.get(v, w, 2);
                if rank_two {
                    ensure(ext2 == 1 && count == 1, || {
                        format!("{}: [{v}, {w}] has Ext² {ext2}, {count} relations", name(h))
                    })?;
                    intervals += 1;
                } else {
                    ensure(count == 0, || format!("{}: stray relation", name(h)))?;
                }
            }
        }
    }
    Ok(format!("{arrows} arrows, {intervals} rank-2 intervals with Ext² = 1 = relations"))
}

fn criterion_presentation() -> Outcome {
    let mut seen = Vec::new();
    for (n, g, size) in [(2, "2", 10), (3, "2", 74)] {
        let h = instance(n, g);
        let rep = RepTheory::new(h.monoid(), auto_field(h)).map_err(|e| e.to_string())?;
        let oracle = Oracle::new(&rep).map_err(|e| e.to_string())?;
        let r = presentation_dimension_check(&oracle).map_err(|e| e.to_string())?;
        ensure(r.quotient_dim == size && r.monoid_size == size && r.dims_equal, || {
            format!("{}: dim KQ/I = {}, |M| = {}", name(h), r.quotient_dim, r.monoid_size)
        })?;
        ensure(r.cartan_equal, || format!("{}: Cartan matrices differ", name(h)))?;
        seen.push(format!("{} = {}", r.quotient_dim, r.monoid_size));
    }
    Ok(format!("{}; Cartan matrices equal", seen.join(", ")))
}

fn criterion_resolutions() -> Outcome {
    let mut resolutions = 0;
    let mut bottom_ranks = None;
    for (n, g) in [(3, "1"), (3, "2")] {
        let h = instance(n, g);
        let rep = RepTheory::new(h.monoid(), auto_field(h)).map_err(|e| e.to_string())?;
        let f = *rep.field();
        let oracle = Oracle::new(&rep).map_err(|e| e.to_string())?;
        let calc = ExtCalculator::new(&rep).map_err(|e| e.to_string())?;
        let label_count = rep.label_count();
        let results: Vec<Result<Vec<usize>, String>> = (0..label_count)
            .into_par_iter()
            .map(|v| {
                // order_complex_resolution verifies equivariance, exactness
                // and projectivity of every term itself
                let oc = order_complex_resolution(&oracle, v).map_err(|e| e.to_string())?;
                if !(oc.is_exact(&f) && oc.is_equivariant(&f)) {
                    return Err(format!("order complex resolution of {v} fails"));
                }
                let cell = minimal_cellular_resolution(&oracle, v).map_err(|e| e.to_string())?;
                if !cell.coboundaries_vanish(&oracle) {
                    return Err(format!("cellular resolution of {v} is not minimal"));
                }
                // C_q ≅ ⊕_W (KMγ_W)^{Ext^q(V, W)}: tops and dimensions
                let ranks = cell.ranks();
                for (q, (top, &r)) in cell.tops(&oracle).iter().zip(&ranks).enumerate() {
                    let mut dim = 0;
                    for (w, &t) in top.iter().enumerate() {
                        let ext = calc.ext_dim(v, w, q);
                        if t != ext {
                            return Err(format!("label {v}: top {t} of C_{q} at {w}, Ext = {ext}"));
                        }
                        dim += ext * oracle.projective(w).module.dim();
                    }
                    if r != dim {
                        return Err(format!("label {v}: dim C_{q} = {r}, expected {dim}"));
                    }
                }
                for w in 0..label_count {
                    let dims = cell.ext_dims(&oracle, w);
                    for q in 0..=rep.lattice().height() {
                        let d = dims.get(q).copied().unwrap_or(0);
                        if d != calc.ext_dim(v, w, q) {
                            return Err(format!("Hom dims differ at ({v}, {w}, {q})"));
                        }
                    }
                }
                Ok(ranks)
            })
            .collect();
        for (v, r) in results.into_iter().enumerate() {
            let ranks = r.map_err(|e| format!("{}: {e}", name(h)))?;
            if n == 3 && g == "1" && rep.labels()[v].apex == rep.lattice().bottom() {
                bottom_ranks = Some(ranks);
            }
            resolutions += 2;
        }
    }
    ensure(bottom_ranks == Some(vec![6, 6, 1]), || {
        format!("Σ_3 bottom cellular ranks {bottom_ranks:?}")
    })?;
    Ok(format!("{resolutions} resolutions, Σ_3 bottom ranks (6, 6, 1)"))
}

/// `∂_{d-1} ∂_d = 0` over the integers for the signs on a face poset.
fn boundary_squared_vanishes(poset: &FinitePoset) -> Result<bool, String> {
    let eps = incidence_numbers(poset).map_err(|e| e.to_string())?;
    let ranks = eps.ranks();
    for q in 0..poset.len() {
        for p in 0..poset.len() {
            if poset.lt(p, q) && ranks[q] == ranks[p] + 2 {
                let s: i64 = poset
                    .lower_covers(q)
                    .iter()
                    .filter_map(|&z| {
                        Some(eps.get(q, z)? as i64 * eps.get(z, p)? as i64)
                    })
                    .sum();
                if s != 0 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn criterion_topology() -> Outcome {
    let mut pairs = 0;
    let mut assignments = 0;
    let fields = [PrimeField::new(2).unwrap(), PrimeField::new(3).unwrap()];
    for n in 1..=4 {
        let s = build_sigma_n(n).map_err(|e| e.to_string())?;
        let lat = s.support_lattice().map_err(|e| e.to_string())?;
        let work: Vec<(usize, usize)> = lat
            .nodes()
            .flat_map(|x| lat.nodes().map(move |y| (x, y)))
            .filter(|&(x, y)| x != y && lat.leq(x, y))
            .collect();
        let bad = work
            .par_iter()
            .map(|&(x, y)| {
                let d = lat.rank_between(x, y).unwrap() as isize - 1;
                let b = boundary_subposet(&s, lat.representative(y), x).map_err(|e| e.to_string())?;
                let complex = order_complex(&b.poset);
                Ok(fields
                    .iter()
                    .all(|f| reduced_betti(&complex, f).is_sphere(d))
                    .then_some(())
                    .ok_or(format!("Σ_{n}: {x} < {y} is not a {d}-sphere")))
            })
            .collect::<Result<Vec<Result<(), String>>, String>>()?;
        bad.into_iter().collect::<Result<Vec<()>, String>>()?;
        pairs += work.len();
        for x in lat.nodes() {
            let band = band_subposet(&s, x).map_err(|e| e.to_string())?;
            ensure(boundary_squared_vanishes(&band.poset)?, || {
                format!("Σ_{n}: ∂² ≠ 0 on B_≥{x}")
            })?;
            assignments += 1;
        }
    }
    Ok(format!("{pairs} pairs X < Y are spheres, ∂² = 0 on {assignments} assignments"))
}

struct Criterion {
    number: usize,
    title: &'static str,
    bound: Duration,
    run: fn() -> Outcome,
}

#[test]
fn acceptance() {
    let criteria = [
        Criterion { number: 1, title: "axiom suite", bound: Duration::from_secs(5), run: criterion_axioms },
        Criterion { number: 2, title: "idempotent suite", bound: Duration::from_secs(30), run: criterion_idempotents },
        Criterion { number: 3, title: "Ext oracle equivalence", bound: Duration::from_secs(300), run: criterion_ext },
        Criterion { number: 4, title: "degree concentration", bound: Duration::from_secs(300), run: criterion_concentration },
        Criterion { number: 5, title: "quiver and relations", bound: Duration::from_secs(300), run: criterion_quiver },
        Criterion { number: 6, title: "presentation dimensions", bound: Duration::from_secs(60), run: criterion_presentation },
        Criterion { number: 7, title: "resolution suite", bound: Duration::from_secs(120), run: criterion_resolutions },
        Criterion { number: 8, title: "topology suite", bound: Duration::from_secs(120), run: criterion_topology },
    ];
    let mut failures = Vec::new();
    // written past the test harness capture so the summary lands in the log
    let mut out = std::io::stdout();
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let line = match outcome {
            Ok(detail) if elapsed <= c.bound => format!(
                "criterion {} ({}): PASS in {:.2?} (bound {:?}): {detail}",
                c.number, c.title, elapsed, c.bound
            ),
            Ok(detail) => format!(
                "criterion {} ({}): FAIL, took {:.2?} over the bound {:?}: {detail}",
                c.number, c.title, elapsed, c.bound
            ),
            Err(e) => format!("criterion {} ({}): FAIL: {e}", c.number, c.title),
        };
        writeln!(out, "{line}").unwrap();
        if line.contains(": FAIL") {
            failures.push(line);
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}
