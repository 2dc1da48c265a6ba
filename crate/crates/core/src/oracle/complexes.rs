use std::collections::HashMap;

use rayon::prelude::*;

use super::resolution::is_projective;
use super::{Module, Oracle, Resolution};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::topology::{band_subposet, incidence_numbers, is_cw_poset};

/// Chains of a poset grouped by length, each listed bottom to top.
fn chains_by_length(poset: &crate::topology::FinitePoset) -> Vec<Vec<Vec<usize>>> {
    let n = poset.len();
    let mut layers: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut current: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for c in &current {
            let last = *c.last().unwrap();
            for v in 0..n {
                if poset.lt(last, v) {
                    let mut d = c.clone();
                    d.push(v);
                    next.push(d);
                }
            }
        }
        current.sort();
        layers.push(current);
        current = next;
    }
    layers
}

/// `C_•(Δ(B_{≥X})) ⊗ V → V` for the simple `V` with label `label` and
/// apex `X`; `m` acts on vertices by `e ↦ m e m†` and on `V` by `λ_V`.
/// The result is checked to be an exact complex of projective modules.
pub fn order_complex_resolution(oracle: &Oracle<'_, '_>, label: usize) -> Result<Resolution> {
    let rep = oracle.rep();
    let f = *oracle.field();
    let monoid = rep.monoid();
    let x = rep.labels()[label].apex;
    let band = band_subposet(monoid, x)?;
    let chains = chains_by_length(&band.poset);
    let lambda = rep.simple_values(label);
    // vertex action: m ↦ (poset index ↦ poset index)
    let vertex_action: Vec<Option<Vec<usize>>> = monoid
        .elements()
        .map(|m| {
            if lambda[m] == 0 {
                return Ok(None);
            }
            band.elements
                .iter()
                .map(|&e| {
                    let image = monoid.conjugate_idempotent(m, e)?;
                    band.index_of(image).ok_or(Error::ApexMismatch)
                })
                .collect::<Result<Vec<_>>>()
                .map(Some)
        })
        .collect::<Result<_>>()?;
    let index: Vec<HashMap<&[usize], usize>> = chains
        .iter()
        .map(|layer| layer.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect())
        .collect();
    let modules: Vec<Module> = chains
        .iter()
        .enumerate()
        .map(|(q, layer)| {
            let action = monoid
                .elements()
                .map(|m| {
                    let mut a = Matrix::zeros(layer.len(), layer.len());
                    if let Some(act) = &vertex_action[m] {
                        for (j, c) in layer.iter().enumerate() {
                            let image: Vec<usize> = c.iter().map(|&v| act[v]).collect();
                            if image.windows(2).any(|w| w[0] == w[1]) {
                                continue;
                            }
                            let i = *index[q].get(image.as_slice()).ok_or_else(|| {
                                Error::Invariant("action does not preserve chains".into())
                            })?;
                            a.set(i, j, lambda[m]);
                        }
                    }
                    Ok(a)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Module::new(layer.len(), action))
        })
        .collect::<Result<_>>()?;
    let maps: Vec<Matrix> = (1..chains.len())
        .map(|q| {
            let mut d = Matrix::zeros(chains[q - 1].len(), chains[q].len());
            for (j, c) in chains[q].iter().enumerate() {
                for skip in 0..c.len() {
                    let face: Vec<usize> = c
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &v)| v)
                        .collect();
                    let sign = if skip % 2 == 0 { 1 } else { f.neg(1) };
                    d.set(index[q - 1][face.as_slice()], j, sign);
                }
            }
            d
        })
        .collect();
    let mut augmentation = Matrix::zeros(1, chains[0].len());
    for j in 0..chains[0].len() {
        augmentation.set(0, j, 1);
    }
    let res = Resolution {
        modules,
        maps,
        augmentation,
        target: oracle.simple(label),
        summands: None,
    };
    if !res.is_equivariant(&f) {
        return Err(Error::Invariant("order complex maps are not equivariant".into()));
    }
    if !res.is_exact(&f) {
        return Err(Error::Invariant("order complex resolution is not exact".into()));
    }
    let projective = res
        .modules
        .par_iter()
        .map(|p| is_projective(oracle, p))
        .collect::<Result<Vec<bool>>>()?;
    if let Some(q) = projective.iter().position(|&b| !b) {
        return Err(Error::Invariant(format!("chain module C_{q} is not projective")));
    }
    Ok(res)
}

/// Cellular chains of `B_{≥X}` tensored with the simple `V` of apex `X`:
/// `m` sends the cell of `e` to `±` the cell of `m e m†` when that cell
/// has the same rank and to 0 otherwise, scaled by `λ_V(m)`. Signs are
/// forced by `∂(m·e) = m·∂e`. Checked exact, equivariant and minimal.
pub fn minimal_cellular_resolution(oracle: &Oracle<'_, '_>, label: usize) -> Result<Resolution> {
    let rep = oracle.rep();
    let f = *oracle.field();
    let monoid = rep.monoid();
    let x = rep.labels()[label].apex;
    let band = band_subposet(monoid, x)?;
    if !is_cw_poset(&band.poset) {
        return Err(Error::NotCw);
    }
    let eps = incidence_numbers(&band.poset)?;
    let cells = eps.cells_by_rank();
    let ranks = eps.ranks();
    let mut position = vec![0usize; band.len()];
    for layer in &cells {
        for (i, &c) in layer.iter().enumerate() {
            position[c] = i;
        }
    }
    let lambda = rep.simple_values(label);
    // signed image of each cell under each element, None when collapsed
    let images: Vec<Vec<Option<(usize, i8)>>> = monoid
        .elements()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&m| {
            let mut out: Vec<Option<(usize, i8)>> = vec![None; band.len()];
            if lambda[m] == 0 {
                return Ok(out);
            }
            for layer in &cells {
                for &c in layer {
                    let t = monoid.conjugate_idempotent(m, band.elements[c])?;
                    let t = band.index_of(t).ok_or(Error::ApexMismatch)?;
                    if ranks[t] != ranks[c] {
                        continue;
                    }
                    if ranks[c] == 0 {
                        out[c] = Some((t, 1));
                        continue;
                    }
                    let mut sign: Option<i8> = None;
                    for &facet in band.poset.lower_covers(c) {
                        let (tf, sf) = out[facet].ok_or_else(|| {
                            Error::MinimalityViolation("a facet collapses under a rank-preserving action".into())
                        })?;
                        let e_t = eps.get(t, tf).ok_or_else(|| {
                            Error::MinimalityViolation("image facet is not a facet of the image".into())
                        })?;
                        let s = eps.get(c, facet).unwrap() * sf * e_t;
                        match sign {
                            None => sign = Some(s),
                            Some(prev) if prev != s => {
                                return Err(Error::MinimalityViolation(format!(
                                    "no consistent sign for element {m} on cell {c}"
                                )))
                            }
                            _ => {}
                        }
                    }
                    out[c] = Some((t, sign.expect("positive-rank cells have facets")));
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let modules: Vec<Module> = cells
        .iter()
        .map(|layer| {
            let action = monoid
                .elements()
                .map(|m| {
                    let mut a = Matrix::zeros(layer.len(), layer.len());
                    for (j, &c) in layer.iter().enumerate() {
                        if let Some((t, s)) = images[m][c] {
                            a.set(position[t], j, f.mul(f.from_i64(s as i64), lambda[m]));
                        }
                    }
                    a
                })
                .collect();
            Module::new(layer.len(), action)
        })
        .collect();
    let maps: Vec<Matrix> = (1..cells.len())
        .map(|d| {
            let mut m = Matrix::zeros(cells[d - 1].len(), cells[d].len());
            for (j, &q) in cells[d].iter().enumerate() {
                for &p in band.poset.lower_covers(q) {
                    m.set(position[p], j, f.from_i64(eps.get(q, p).unwrap() as i64));
                }
            }
            m
        })
        .collect();
    let mut augmentation = Matrix::zeros(1, cells[0].len());
    for j in 0..cells[0].len() {
        augmentation.set(0, j, 1);
    }
    let res = Resolution {
        modules,
        maps,
        augmentation,
        target: oracle.simple(label),
        summands: None,
    };
    if !res.is_equivariant(&f) {
        return Err(Error::MinimalityViolation("cellular maps are not equivariant".into()));
    }
    if !res.is_exact(&f) {
        return Err(Error::MinimalityViolation("cellular complex is not exact".into()));
    }
    if !res.coboundaries_vanish(oracle) {
        return Err(Error::MinimalityViolation("a coboundary into a simple is nonzero".into()));
    }
    Ok(res)
}
