//! One function per subcommand; each returns the JSON document to print.

use duorep::ext::{
    build_quiver, component_count, ext_dim_hsiao, hasse_quiver, hsiao_labels, is_cw_instance,
    koszul_diagnostics, quiver_relations, ExtCalculator, ExtTable, HsiaoLabel, Quiver,
};
use duorep::oracle::{
    minimal_cellular_resolution, minimal_resolution, order_complex_resolution,
    presentation_dimension_check, Oracle, Resolution,
};
use duorep::rep::{AlgebraElement, RepTheory};
use duorep::topology::{boundary_subposet, order_complex, reduced_betti, FinitePoset};
use duorep::{Error, FiniteMonoid, PrimeField};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::source::Instance;

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Level {
    Fast,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Complex {
    Cellular,
    Order,
}

fn header(instance: &Instance, f: &PrimeField) -> Value {
    json!({ "schema": 1, "instance": instance.describe(), "prime": f.p() })
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(a), Value::Object(b)) = (&mut base, extra) {
        a.extend(b);
    }
    base
}

fn support(a: &AlgebraElement) -> Value {
    json!(a.support())
}

fn nested(table: &ExtTable) -> Value {
    let n = table.label_count();
    json!((0..n)
        .map(|v| {
            (0..n)
                .map(|w| (0..=table.max_degree()).map(|q| table.get(v, w, q)).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>())
}

fn hsiao_label_list(instance: &Instance, rep: &RepTheory<'_>) -> Result<Option<Vec<HsiaoLabel>>> {
    instance.hsiao().map(|h| hsiao_labels(h, rep)).transpose().map_err(Into::into)
}

fn labels_json(instance: &Instance, rep: &RepTheory<'_>) -> Result<Value> {
    let hsiao = hsiao_label_list(instance, rep)?;
    Ok(json!(rep
        .labels()
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let mut entry = json!({
                "index": i,
                "name": rep.format_label(i),
                "apex": l.apex,
                "character": l.character,
                "rank": rep.node_rank(l.apex),
            });
            if let Some(hl) = &hsiao {
                entry["blocks"] = json!(hl[i].blocks);
                entry["block_characters"] = json!(hl[i].characters);
            }
            entry
        })
        .collect::<Vec<_>>()))
}

/// Accepts a label index or its `apex|character` name.
pub fn parse_label(rep: &RepTheory<'_>, text: &str) -> Result<usize> {
    let n = rep.label_count();
    let found = match text.parse::<usize>() {
        Ok(i) if i < n => Some(i),
        Ok(_) => None,
        Err(_) => (0..n).find(|&i| rep.format_label(i) == text.trim()),
    };
    found.ok_or_else(|| CliError::Usage(format!("no simple label {text:?} among {n} labels")))
}

fn selected_labels(rep: &RepTheory<'_>, label: Option<&str>) -> Result<Vec<usize>> {
    match label {
        Some(text) => Ok(vec![parse_label(rep, text)?]),
        None => Ok((0..rep.label_count()).collect()),
    }
}

pub fn gen(monoid: &FiniteMonoid, as_json: bool) -> String {
    if !as_json {
        return monoid.to_table_string();
    }
    let n = monoid.size();
    let rows: Vec<&[u16]> = monoid.table().chunks(n).collect();
    render(&json!({
        "schema": 1,
        "size": n,
        "identity": monoid.identity(),
        "table": rows,
    }))
}

pub fn render(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialise");
    s.push('\n');
    s
}

pub fn axioms(instance: &Instance) -> Value {
    let m = instance.monoid();
    let r = m.check_axioms();
    json!({
        "schema": 1,
        "instance": instance.describe(),
        "right_semicentral": r.right_semicentral,
        "left_duo": r.left_duo,
        "regular": r.regular,
        "lrb_of_groups": r.lrb_of_groups,
        "band": r.band,
        "regular_left_duo": r.regular_left_duo(),
        "left_regular_band": r.left_regular_band(),
        "idempotents": m.idempotents().len(),
    })
}

pub fn lattice(instance: &Instance) -> Result<Value> {
    let m = instance.monoid();
    let lat = m.support_lattice()?;
    let bottom = lat.bottom();
    let nodes: Vec<Value> = lat
        .nodes()
        .map(|x| {
            let e = lat.representative(x);
            json!({
                "node": x,
                "representative": e,
                "element": instance.element_name(e),
                "rank": lat.rank_between(bottom, x),
                "idempotents": lat.idempotents_of(x),
                "subgroup_order": m.maximal_subgroup(e).map(|g| g.order()).unwrap_or(0),
            })
        })
        .collect();
    let sigma: Vec<usize> = m.elements().map(|a| lat.sigma(a)).collect();
    Ok(json!({
        "schema": 1,
        "instance": instance.describe(),
        "nodes": nodes,
        "covers": lat.as_poset().cover_pairs(),
        "top": lat.top(),
        "bottom": bottom,
        "height": lat.height(),
        "sigma": sigma,
    }))
}

pub fn idempotents(instance: &Instance, f: PrimeField, level: Level) -> Result<Value> {
    let m = instance.monoid();
    let rep = RepTheory::new(m, f)?;
    let lat = rep.lattice();
    let eta: Vec<Value> = lat
        .nodes()
        .map(|x| json!({ "node": x, "support": support(rep.eta(x)) }))
        .collect();
    let gamma: Vec<Value> = (0..rep.label_count())
        .map(|l| json!({ "label": l, "name": rep.format_label(l), "support": support(rep.gamma(l)) }))
        .collect();
    let sum = rep
        .gammas()
        .iter()
        .fold(AlgebraElement::zero(m.size()), |acc, g| acc.add(&f, g));
    let mut checks = json!({
        "count_matches_labels": rep.gammas().len() == rep.label_count(),
        "sum_is_one": sum == rep.one(),
        "orthogonal": orthogonal(&rep),
        "primitive": Value::Null,
    });
    if level == Level::Full {
        let oracle = Oracle::new(&rep)?;
        let primitive = (0..rep.label_count())
            .into_par_iter()
            .all(|l| oracle.primitivity_dimension(l) == 1);
        checks["primitive"] = json!(primitive);
    }
    Ok(merge(
        header(instance, &f),
        json!({
            "elements": m.elements().map(|a| instance.element_name(a)).collect::<Vec<_>>(),
            "labels": labels_json(instance, &rep)?,
            "eta": eta,
            "gamma": gamma,
            "checks": checks,
        }),
    ))
}

fn orthogonal(rep: &RepTheory<'_>) -> bool {
    let g = rep.gammas();
    (0..g.len()).into_par_iter().all(|a| {
        (0..g.len()).all(|b| {
            let ab = rep.mul(&g[a], &g[b]);
            if a == b {
                ab == g[a]
            } else {
                ab.is_zero()
            }
        })
    })
}

fn betti_entry(poset: &FinitePoset, f: &PrimeField) -> Value {
    let complex = order_complex(poset);
    let b = reduced_betti(&complex, f);
    json!({
        "vertices": poset.len(),
        "face_counts": complex.face_counts(),
        "betti": b.values(),
    })
}

pub fn betti_poset(text: &str, f: PrimeField) -> Result<Value> {
    let poset = FinitePoset::parse_dump(text)?;
    Ok(merge(
        json!({ "schema": 1, "prime": f.p(), "from_degree": -1 }),
        betti_entry(&poset, &f),
    ))
}

/// `β̃` of `Δ(∂e_Y B_{≥X})` for every pair `X < Y` of lattice nodes.
pub fn betti_monoid(instance: &Instance, f: PrimeField) -> Result<Value> {
    let m = instance.monoid();
    let lat = m.support_lattice()?;
    let pairs: Vec<(usize, usize)> = lat
        .nodes()
        .flat_map(|x| lat.nodes().map(move |y| (x, y)))
        .filter(|&(x, y)| x != y && lat.leq(x, y))
        .collect();
    let entries = pairs
        .par_iter()
        .map(|&(x, y)| {
            let b = boundary_subposet(m, lat.representative(y), x)?;
            let entry = betti_entry(&b.poset, &f);
            Ok(merge(
                json!({ "x": x, "y": y, "rank": lat.rank_between(x, y) }),
                entry,
            ))
        })
        .collect::<std::result::Result<Vec<Value>, Error>>()?;
    Ok(merge(
        header(instance, &f),
        json!({ "from_degree": -1, "pairs": entries }),
    ))
}

/// Ext table from the tops of minimal resolutions, checked against the
/// cohomology of `Hom(P_•, S_W)`.
fn oracle_table(oracle: &Oracle<'_, '_>, max_degree: usize) -> Result<(ExtTable, bool)> {
    let n = oracle.rep().label_count();
    let per_label = (0..n)
        .into_par_iter()
        .map(|v| {
            let res = minimal_resolution(oracle, &oracle.simple(v), max_degree + 1)?;
            let tops = res.tops(oracle);
            let agree = (0..n).all(|w| {
                let from_tops: Vec<usize> = tops.iter().map(|t| t[w]).collect();
                res.ext_dims(oracle, w) == from_tops
            });
            Ok((tops, agree))
        })
        .collect::<std::result::Result<Vec<_>, Error>>()?;
    let hom_agrees = per_label.iter().all(|(_, a)| *a);
    let table = ExtTable::from_fn(n, max_degree, |v, w, q| {
        per_label[v].0.get(q).map_or(0, |t| t[w])
    });
    Ok((table, hom_agrees))
}

fn closed_form_table(instance: &Instance, rep: &RepTheory<'_>, max_degree: usize) -> Result<Option<ExtTable>> {
    let (Some(h), Some(labels)) = (instance.hsiao(), hsiao_label_list(instance, rep)?) else {
        return Ok(None);
    };
    Ok(Some(ExtTable::from_fn(labels.len(), max_degree, |v, w, q| {
        ext_dim_hsiao(h, &labels[v], &labels[w], q)
    })))
}

fn mismatch_json(
    triples: &[(usize, usize, usize)],
    tables: &[(&str, &ExtTable)],
) -> Vec<Value> {
    triples
        .iter()
        .map(|&(v, w, q)| {
            let mut entry = json!({ "v": v, "w": w, "q": q });
            for (name, t) in tables {
                entry[*name] = json!(t.get(v, w, q));
            }
            entry
        })
        .collect()
}

fn all_mismatches(tables: &[(&str, &ExtTable)]) -> Vec<(usize, usize, usize)> {
    let mut out: Vec<(usize, usize, usize)> = tables
        .iter()
        .skip(1)
        .flat_map(|(_, t)| tables[0].1.mismatches(t))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub fn ext(instance: &Instance, f: PrimeField, max_degree: Option<usize>) -> Result<Value> {
    let rep = RepTheory::new(instance.monoid(), f)?;
    let max_degree = max_degree.unwrap_or_else(|| rep.lattice().height());
    let topological = ExtCalculator::new(&rep)?.table(max_degree);
    let oracle = Oracle::new(&rep)?;
    let (computed, hom_agrees) = oracle_table(&oracle, max_degree)?;
    let closed = closed_form_table(instance, &rep, max_degree)?;
    let mut tables = vec![("topological", &topological), ("oracle", &computed)];
    if let Some(c) = &closed {
        tables.push(("closed_form", c));
    }
    let mismatches = all_mismatches(&tables);
    Ok(merge(
        header(instance, &f),
        json!({
            "labels": labels_json(instance, &rep)?,
            "max_degree": max_degree,
            "paths": tables.iter().map(|(n, _)| *n).collect::<Vec<_>>(),
            "table": nested(&topological),
            "nonzero": topological.nonzero(),
            "agree": mismatches.is_empty() && hom_agrees,
            "oracle_hom_agrees": hom_agrees,
            "mismatches": mismatch_json(&mismatches, &tables),
        }),
    ))
}

pub struct QuiverOutput {
    pub json: Value,
    pub dot: String,
}

pub fn quiver(instance: &Instance, f: PrimeField) -> Result<QuiverOutput> {
    let rep = RepTheory::new(instance.monoid(), f)?;
    let calc = ExtCalculator::new(&rep)?;
    let q: Quiver = build_quiver(&calc)?;
    let n = rep.label_count();
    let names: Vec<String> = (0..n).map(|l| rep.format_label(l)).collect();
    let order: Vec<usize> = (0..n).collect();
    let dot = q.to_dot(&order, &names);
    let json = merge(
        header(instance, &f),
        json!({
            "labels": labels_json(instance, &rep)?,
            "vertices": q.vertices,
            "arrows": q.arrows,
            "arrow_count": q.arrow_count(),
            "relations": q.relations,
            "components": component_count(&q),
        }),
    );
    Ok(QuiverOutput { json, dot })
}

pub fn relations_sidecar(quiver: &Value) -> Value {
    json!({ "schema": 1, "relations": quiver["relations"] })
}

pub fn koszul(instance: &Instance, f: PrimeField, report: bool) -> Result<Value> {
    let rep = RepTheory::new(instance.monoid(), f)?;
    let cw = is_cw_instance(&rep)?;
    let height = rep.lattice().height();
    let table = ExtCalculator::new(&rep)?.table(height + 1);
    let k = koszul_diagnostics(&rep, &table);
    let mut out = merge(
        header(instance, &f),
        json!({
            "cw": cw,
            "max_degree": height + 1,
            "concentrated": k.concentrated,
            "ext_algebra_dim": k.ext_algebra_dim,
            "interval_count": k.interval_count,
            "dims_equal": k.dims_equal,
        }),
    );
    if report {
        out["violations"] = json!(k.violations);
        out["nonzero"] = json!(table.nonzero());
        out["labels"] = labels_json(instance, &rep)?;
    }
    Ok(out)
}

fn resolution_json(oracle: &Oracle<'_, '_>, label: usize, res: &Resolution) -> Value {
    let f = oracle.field();
    json!({
        "label": label,
        "name": oracle.rep().format_label(label),
        "length": res.length(),
        "ranks": res.ranks(),
        "tops": res.tops(oracle),
        "exact": res.is_exact(f),
        "equivariant": res.is_equivariant(f),
        "minimal": res.coboundaries_vanish(oracle),
    })
}

pub fn resolve(instance: &Instance, f: PrimeField, label: Option<&str>, complex: Complex) -> Result<Value> {
    let rep = RepTheory::new(instance.monoid(), f)?;
    let oracle = Oracle::new(&rep)?;
    let selected = selected_labels(&rep, label)?;
    let entries = selected
        .par_iter()
        .map(|&v| {
            let res = match complex {
                Complex::Cellular => minimal_cellular_resolution(&oracle, v)?,
                Complex::Order => order_complex_resolution(&oracle, v)?,
            };
            Ok(resolution_json(&oracle, v, &res))
        })
        .collect::<std::result::Result<Vec<Value>, Error>>()?;
    let complex = match complex {
        Complex::Cellular => "cellular",
        Complex::Order => "order",
    };
    Ok(merge(
        header(instance, &f),
        json!({ "complex": complex, "resolutions": entries }),
    ))
}

pub fn oracle_ext(instance: &Instance, f: PrimeField, max_degree: Option<usize>) -> Result<Value> {
    let rep = RepTheory::new(instance.monoid(), f)?;
    let max_degree = max_degree.unwrap_or_else(|| rep.lattice().height());
    let oracle = Oracle::new(&rep)?;
    let rad = oracle.radical()?;
    let (table, hom_agrees) = oracle_table(&oracle, max_degree)?;
    Ok(merge(
        header(instance, &f),
        json!({
            "labels": labels_json(instance, &rep)?,
            "radical_dim": rad.dim(),
            "max_degree": max_degree,
            "table": nested(&table),
            "nonzero": table.nonzero(),
            "hom_agrees": hom_agrees,
        }),
    ))
}

pub fn oracle_resolve(
    instance: &Instance,
    f: PrimeField,
    label: Option<&str>,
    max_length: Option<usize>,
) -> Result<Value> {
    let rep = RepTheory::new(instance.monoid(), f)?;
    let oracle = Oracle::new(&rep)?;
    let max_length = max_length.unwrap_or(rep.lattice().height() + 1);
    let selected = selected_labels(&rep, label)?;
    let entries = selected
        .par_iter()
        .map(|&v| {
            let res = minimal_resolution(&oracle, &oracle.simple(v), max_length)?;
            Ok(resolution_json(&oracle, v, &res))
        })
        .collect::<std::result::Result<Vec<Value>, Error>>()?;
    Ok(merge(header(instance, &f), json!({ "resolutions": entries })))
}

/// Named pass/fail results; `None` means the check does not apply.
struct Checks(Vec<(&'static str, Option<bool>)>);

impl Checks {
    fn set(&mut self, name: &'static str, value: Option<bool>) {
        self.0.push((name, value));
    }

    fn ok(&self) -> bool {
        self.0.iter().all(|(_, v)| *v != Some(false))
    }

    fn get(&self, name: &str) -> Option<bool> {
        self.0.iter().find(|(n, _)| *n == name).and_then(|(_, v)| *v)
    }

    fn to_json(&self) -> Value {
        Value::Object(self.0.iter().map(|(n, v)| (n.to_string(), json!(v))).collect())
    }
}

pub struct CrosscheckOutput {
    pub json: Value,
    pub ok: bool,
}

pub fn crosscheck(instance: &Instance, f: PrimeField, level: Level) -> Result<CrosscheckOutput> {
    let m = instance.monoid();
    let axioms = m.check_axioms();
    let rep = RepTheory::new(m, f)?;
    let n = rep.label_count();
    let height = rep.lattice().height();
    let poset = rep.label_poset();
    let mut checks = Checks(Vec::new());

    checks.set("regular_left_duo", Some(axioms.regular_left_duo()));
    let sum = rep
        .gammas()
        .iter()
        .fold(AlgebraElement::zero(m.size()), |acc, g| acc.add(&f, g));
    checks.set("gamma_sum_is_one", Some(sum == rep.one()));
    checks.set("gamma_orthogonal", Some(orthogonal(&rep)));

    let oracle = Oracle::new(&rep)?;
    let rad = oracle.radical()?;
    let calc = ExtCalculator::new(&rep)?;
    let topological = calc.table(height + 1);
    let (computed, hom_agrees) = oracle_table(&oracle, height + 1)?;
    let closed = closed_form_table(instance, &rep, height + 1)?;
    let mut tables = vec![("topological", &topological), ("oracle", &computed)];
    if let Some(c) = &closed {
        tables.push(("closed_form", c));
    }
    let mut mismatches = all_mismatches(&tables);
    let ext1_agree = (0..n).into_par_iter().all(|v| {
        let (r1, r2) = oracle.radical_layers(&rad, v);
        (0..n).all(|w| oracle.ext1_from_layers(&r1, &r2, w) == topological.get(v, w, 1))
    });
    if !ext1_agree {
        for v in 0..n {
            for w in 0..n {
                if oracle.ext1(&rad, v, w) != topological.get(v, w, 1) {
                    mismatches.push((v, w, 1));
                }
            }
        }
        mismatches.sort_unstable();
        mismatches.dedup();
    }
    checks.set("ext_agree", Some(mismatches.is_empty() && hom_agrees));
    checks.set("oracle_hom_agrees", Some(hom_agrees));
    checks.set("ext1_radical_layers_agree", Some(ext1_agree));

    let cw = is_cw_instance(&rep)?;
    let k = koszul_diagnostics(&rep, &topological);
    let k_oracle = koszul_diagnostics(&rep, &computed);
    checks.set(
        "koszul_concentrated",
        cw.then_some(k.concentrated && k.dims_equal && k_oracle.concentrated && k_oracle.dims_equal),
    );

    let quiver = build_quiver(&calc)?;
    checks.set("quiver_is_hasse", cw.then(|| quiver.arrows == hasse_quiver(poset).arrows));
    let relations_match = if cw {
        let relations = quiver_relations(poset)?;
        Some((0..n).all(|v| {
            (0..n).all(|w| {
                let count = relations.iter().filter(|r| r.source == v && r.target == w).count();
                if poset.leq(v, w) && rep.rank_distance(v, w) == Some(2) {
                    count == 1 && computed.get(v, w, 2) == 1
                } else {
                    count == 0
                }
            })
        }))
    } else {
        None
    };
    checks.set("relations_match_ext2", relations_match);
    checks.set(
        "components_equal_group_order",
        instance.hsiao().map(|h| component_count(&quiver) == h.group().order()),
    );

    let presentation = if cw {
        match presentation_dimension_check(&oracle) {
            Ok(r) => Some(r),
            Err(Error::NotApplicable(_) | Error::NotGraded) => None,
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };
    checks.set("presentation_dims_equal", presentation.as_ref().map(|r| r.dims_equal));
    checks.set("presentation_cartan_equal", presentation.as_ref().map(|r| r.cartan_equal));

    if level == Level::Full {
        let prim = (0..n)
            .into_par_iter()
            .all(|l| oracle.primitivity_dimension(l) == 1);
        checks.set("gamma_primitive", Some(prim));
        let r = oracle.check_radical(&rad, height + 2);
        checks.set(
            "radical",
            Some(r.codim_matches_labels && r.two_sided_ideal && r.nilpotency_index.is_some()),
        );
        let projectives = (0..n).into_par_iter().all(|l| {
            let p = &oracle.projective(l).module;
            let top = oracle.top(p);
            p.check_action(&f, m).is_ok() && top[l] == 1 && top.iter().sum::<usize>() == 1
        });
        checks.set("projective_covers", Some(projectives));
        let sizes: usize = (0..n).map(|l| oracle.projective(l).module.dim()).sum();
        checks.set("projectives_sum_to_algebra", Some(sizes == m.size()));
        let resolutions = if cw {
            Some(
                (0..n)
                    .into_par_iter()
                    .map(|v| resolutions_agree(&oracle, &topological, v))
                    .collect::<std::result::Result<Vec<bool>, Error>>()?
                    .into_iter()
                    .all(|b| b),
            )
        } else {
            None
        };
        checks.set("resolutions_agree", resolutions);
        let spheres = if cw { Some(boundary_spheres(m, &f)?) } else { None };
        checks.set("boundary_spheres", spheres);
    }

    let ok = checks.ok();
    let json = merge(
        header(instance, &f),
        json!({
            "level": match level { Level::Fast => "fast", Level::Full => "full" },
            "labels": n,
            "cw": cw,
            "ext_agree": checks.get("ext_agree"),
            "koszul_concentrated": checks.get("koszul_concentrated"),
            "presentation_dims_equal": checks.get("presentation_dims_equal"),
            "checks": checks.to_json(),
            "ext_algebra_dim": k.ext_algebra_dim,
            "interval_count": k.interval_count,
            "presentation": presentation.map(|r| json!({
                "quotient_dim": r.quotient_dim,
                "monoid_size": r.monoid_size,
                "relation_count": r.relation_count,
            })),
            "mismatches": mismatch_json(&mismatches, &tables),
            "ok": ok,
        }),
    );
    Ok(CrosscheckOutput { json, ok })
}

/// Order-complex and cellular resolutions of `S_V`: both exact, the
/// cellular one minimal with `C_q ≅ ⊕_W (KMγ_W)^{Ext^q(V,W)}`.
fn resolutions_agree(
    oracle: &Oracle<'_, '_>,
    table: &ExtTable,
    v: usize,
) -> std::result::Result<bool, Error> {
    let f = oracle.field();
    let n = oracle.rep().label_count();
    let oc = order_complex_resolution(oracle, v)?;
    if !(oc.is_exact(f) && oc.is_equivariant(f)) {
        return Ok(false);
    }
    let cell = minimal_cellular_resolution(oracle, v)?;
    if !(cell.is_exact(f) && cell.coboundaries_vanish(oracle)) {
        return Ok(false);
    }
    let ranks = cell.ranks();
    for (q, top) in cell.tops(oracle).iter().enumerate() {
        let mut dim = 0;
        for (w, &t) in top.iter().enumerate() {
            if t != table.get(v, w, q) {
                return Ok(false);
            }
            dim += t * oracle.projective(w).module.dim();
        }
        if ranks[q] != dim {
            return Ok(false);
        }
    }
    Ok((0..n).all(|w| {
        let a = cell.ext_dims(oracle, w);
        let b = oc.ext_dims(oracle, w);
        (0..=table.max_degree()).all(|q| {
            let t = table.get(v, w, q);
            a.get(q).copied().unwrap_or(0) == t && b.get(q).copied().unwrap_or(0) == t
        })
    }))
}

/// Every `Δ(∂e_Y B_{≥X})` has the homology of a `(rk[X,Y] − 1)`-sphere.
fn boundary_spheres(m: &FiniteMonoid, f: &PrimeField) -> std::result::Result<bool, Error> {
    let lat = m.support_lattice()?;
    let pairs: Vec<(usize, usize)> = lat
        .nodes()
        .flat_map(|x| lat.nodes().map(move |y| (x, y)))
        .filter(|&(x, y)| x != y && lat.leq(x, y))
        .collect();
    let results = pairs
        .par_iter()
        .map(|&(x, y)| {
            let d = lat.rank_between(x, y).unwrap_or(0) as isize - 1;
            let b = boundary_subposet(m, lat.representative(y), x)?;
            Ok(reduced_betti(&order_complex(&b.poset), f).is_sphere(d))
        })
        .collect::<std::result::Result<Vec<bool>, Error>>()?;
    Ok(results.into_iter().all(|b| b))
}
