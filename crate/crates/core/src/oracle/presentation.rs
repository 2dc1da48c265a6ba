use rayon::prelude::*;
use serde::Serialize;

use super::Oracle;
use crate::error::{Error, Result};
use crate::ext::quiver_relations;
use crate::linalg::Matrix;
use crate::topology::FinitePoset;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PresentationReport {
    /// `dim KQ/I`, summed over all vertex pairs and degrees.
    pub quotient_dim: usize,
    pub monoid_size: usize,
    pub dims_equal: bool,
    /// `dim ε_b (KQ/I) ε_a` for paths `a → b`, indexed `[a][b]`.
    pub quotient_cartan: Vec<Vec<usize>>,
    /// `dim γ_b KM γ_a`, indexed `[a][b]`.
    pub algebra_cartan: Vec<Vec<usize>>,
    pub cartan_equal: bool,
    pub relation_count: usize,
}

/// Saturated chains from `a` to `b`, i.e. paths in the Hasse quiver.
fn saturated_chains(poset: &FinitePoset, a: usize, b: usize) -> Vec<Vec<usize>> {
    if a == b {
        return vec![vec![a]];
    }
    let mut out = Vec::new();
    for &c in poset.lower_covers(b) {
        if poset.leq(a, c) {
            for mut chain in saturated_chains(poset, a, c) {
                chain.push(b);
                out.push(chain);
            }
        }
    }
    out
}

/// `dim ε_b (KQ/I) ε_a` for the Hasse quiver of a graded poset with the
/// relations `Σ_{p<z<q} (q ← z ← p)` over all rank-2 intervals. The ideal
/// in degree `k` is spanned by the paths with one length-2 subpath
/// replaced by its relation.
fn quotient_dim(poset: &FinitePoset, a: usize, b: usize, f: &crate::field::PrimeField) -> usize {
    if !poset.leq(a, b) {
        return 0;
    }
    let paths = saturated_chains(poset, a, b);
    let k = paths[0].len() - 1;
    if k < 2 {
        return paths.len();
    }
    let index = |c: &[usize]| paths.iter().position(|p| p == c);
    let mut rows = Vec::new();
    for path in &paths {
        for i in 1..k {
            let mut row = vec![0u32; paths.len()];
            for z in poset.open_interval(path[i - 1], path[i + 1]) {
                let mut variant = path.clone();
                variant[i] = z;
                if let Some(j) = index(&variant) {
                    row[j] = 1;
                }
            }
            rows.push(row);
        }
    }
    paths.len() - Matrix::from_rows(paths.len(), &rows).rank(f)
}

/// Compares `KQ(P(M))/I` with `KM`: total dimension and the Cartan
/// matrices `dim γ_b KM γ_a` against `dim ε_b (KQ/I) ε_a`.
pub fn presentation_dimension_check(oracle: &Oracle<'_, '_>) -> Result<PresentationReport> {
    let rep = oracle.rep();
    let f = *oracle.field();
    let poset = rep.label_poset();
    if !poset.is_graded() {
        return Err(Error::NotGraded);
    }
    let relation_count = quiver_relations(poset)?.len();
    let n = rep.label_count();
    let quotient_cartan: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map(|a| (0..n).map(|b| quotient_dim(poset, a, b, &f)).collect())
        .collect();
    let by_gamma = oracle.cartan();
    let algebra_cartan: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).map(|b| by_gamma[b][a]).collect())
        .collect();
    let quotient_dim: usize = quotient_cartan.iter().flatten().sum();
    let monoid_size = rep.monoid().size();
    Ok(PresentationReport {
        quotient_dim,
        monoid_size,
        dims_equal: quotient_dim == monoid_size,
        cartan_equal: quotient_cartan == algebra_cartan,
        quotient_cartan,
        algebra_cartan,
        relation_count,
    })
}
