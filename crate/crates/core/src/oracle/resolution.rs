use super::{Module, Oracle};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::{Matrix, Subspace};

/// A projective resolution `… → P_1 → P_0 → N → 0`.
#[derive(Debug, Clone)]
pub struct Resolution {
    pub modules: Vec<Module>,
    /// `maps[q - 1]` is `d_q: P_q → P_{q-1}`.
    pub maps: Vec<Matrix>,
    pub augmentation: Matrix,
    pub target: Module,
    /// Labels of the indecomposable summands `KMγ_L` of each `P_q`, when
    /// the terms were built as sums of them.
    pub summands: Option<Vec<Vec<usize>>>,
}

impl Resolution {
    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(Module::dim).collect()
    }

    pub fn length(&self) -> usize {
        self.modules.len().saturating_sub(1)
    }

    /// Every map commutes with every monoid element.
    pub fn is_equivariant(&self, f: &PrimeField) -> bool {
        let Some(p0) = self.modules.first() else {
            return self.target.dim() == 0;
        };
        p0.is_equivariant(f, &self.target, &self.augmentation)
            && self
                .maps
                .iter()
                .enumerate()
                .all(|(i, d)| self.modules[i + 1].is_equivariant(f, &self.modules[i], d))
    }

    /// `P_• → N → 0` is exact, checked by ranks and vanishing composites.
    pub fn is_exact(&self, f: &PrimeField) -> bool {
        if self.modules.is_empty() {
            return self.target.dim() == 0;
        }
        let eps_rank = self.augmentation.rank(f);
        if eps_rank != self.target.dim() {
            return false;
        }
        // rank of the map leaving P_q
        let mut outgoing = eps_rank;
        let mut previous = &self.augmentation;
        for (q, d) in self.maps.iter().enumerate() {
            if !previous.mul(f, d).is_zero() {
                return false;
            }
            let r = d.rank(f);
            if r + outgoing != self.modules[q].dim() {
                return false;
            }
            outgoing = r;
            previous = d;
        }
        outgoing == self.modules[self.modules.len() - 1].dim()
    }

    /// `dim Ext^q(N, S_L)` from the cohomology of `Hom(P_•, S_L)`.
    pub fn ext_dims(&self, oracle: &Oracle<'_, '_>, label: usize) -> Vec<usize> {
        let f = oracle.field();
        let homs: Vec<Vec<Vec<u32>>> = self
            .modules
            .iter()
            .map(|p| oracle.hom_to_simple(p, label))
            .collect();
        // rank of δ_q: Hom(P_{q-1}, S) → Hom(P_q, S), φ ↦ φ d_q
        let delta_ranks: Vec<usize> = self
            .maps
            .iter()
            .enumerate()
            .map(|(i, d)| coboundary(f, &homs[i], d).rank(f))
            .collect();
        (0..self.modules.len())
            .map(|q| {
                let into = if q == 0 { 0 } else { delta_ranks[q - 1] };
                let out = delta_ranks.get(q).copied().unwrap_or(0);
                homs[q].len() - into - out
            })
            .collect()
    }

    /// Every coboundary `Hom(P_{q-1}, S) → Hom(P_q, S)` vanishes for every
    /// simple `S`.
    pub fn coboundaries_vanish(&self, oracle: &Oracle<'_, '_>) -> bool {
        let f = oracle.field();
        (0..oracle.rep().label_count()).all(|l| {
            self.maps.iter().enumerate().all(|(i, d)| {
                let homs = oracle.hom_to_simple(&self.modules[i], l);
                coboundary(f, &homs, d).is_zero()
            })
        })
    }

    /// Top multiplicities of every term, `[q][label]`.
    pub fn tops(&self, oracle: &Oracle<'_, '_>) -> Vec<Vec<usize>> {
        self.modules.iter().map(|p| oracle.top(p)).collect()
    }
}

fn coboundary(f: &PrimeField, homs: &[Vec<u32>], d: &Matrix) -> Matrix {
    if homs.is_empty() {
        return Matrix::zeros(0, d.cols());
    }
    let phi = Matrix::from_rows(d.rows(), homs);
    phi.mul(f, d)
}

/// Projective cover `⊕ KMγ_{L_i} → N` built from the top of `N`.
pub(super) struct Cover {
    pub module: Module,
    pub map: Matrix,
    pub summands: Vec<usize>,
}

pub(super) fn projective_cover(oracle: &Oracle<'_, '_>, n: &Module) -> Result<Cover> {
    let f = *oracle.field();
    let rep = oracle.rep();
    let monoid = rep.monoid();
    let rad = oracle.module_radical(n);
    let mut summands = Vec::new();
    let mut generators: Vec<Vec<u32>> = Vec::new();
    let mut span = rad.clone();
    for l in 0..rep.label_count() {
        let want = oracle.hom_to_simple(n, l).len();
        if want == 0 {
            continue;
        }
        let g = n.action_of(&f, rep.gamma(l));
        let mut found = 0;
        for j in 0..g.cols() {
            if found == want {
                break;
            }
            let c = g.column(j);
            if span.insert(&f, &c) {
                summands.push(l);
                generators.push(c);
                found += 1;
            }
        }
        if found != want {
            return Err(Error::Invariant(format!(
                "top of multiplicity {want} at label {l} but only {found} generators found"
            )));
        }
    }
    if span.dim() != n.dim() {
        return Err(Error::Invariant("top generators do not span N modulo rad N".into()));
    }
    let parts: Vec<&Module> = summands.iter().map(|&l| &oracle.projective(l).module).collect();
    let module = Module::direct_sum(&parts, monoid.size());
    let mut columns = Vec::with_capacity(module.dim());
    for (&l, gen) in summands.iter().zip(&generators) {
        // images of the generator under every monoid element
        let orbit: Vec<Vec<u32>> = monoid.elements().map(|m| n.action(m).apply(&f, gen)).collect();
        for b in &oracle.projective(l).basis {
            let mut image = vec![0u32; n.dim()];
            for (m, &c) in b.iter().enumerate() {
                if c != 0 {
                    for (slot, &v) in image.iter_mut().zip(&orbit[m]) {
                        *slot = f.mul_add(*slot, c, v);
                    }
                }
            }
            columns.push(image);
        }
    }
    let map = Matrix::from_columns(n.dim(), &columns);
    if map.rank(&f) != n.dim() {
        return Err(Error::Invariant("projective cover is not surjective".into()));
    }
    Ok(Cover {
        module,
        map,
        summands,
    })
}

/// Whether `N` is projective: its projective cover is an isomorphism.
pub(super) fn is_projective(oracle: &Oracle<'_, '_>, n: &Module) -> Result<bool> {
    Ok(projective_cover(oracle, n)?.module.dim() == n.dim())
}

/// Minimal projective resolution of `target` by iterated projective
/// covers, stopping at the first zero syzygy.
pub fn minimal_resolution(
    oracle: &Oracle<'_, '_>,
    target: &Module,
    max_len: usize,
) -> Result<Resolution> {
    let f = *oracle.field();
    let mut modules = Vec::new();
    let mut maps = Vec::new();
    let mut summands: Vec<Vec<usize>> = Vec::new();
    let mut augmentation = Matrix::zeros(target.dim(), 0);
    let mut current = target.clone();
    // inclusion of the current syzygy into the previous term
    let mut inclusion: Option<Matrix> = None;
    let mut q = 0;
    while current.dim() > 0 {
        if q > max_len {
            return Err(Error::LengthExceeded(max_len));
        }
        let cover = projective_cover(oracle, &current)?;
        let kernel = cover.map.nullspace(&f);
        match &inclusion {
            None => augmentation = cover.map.clone(),
            Some(inc) => {
                let d = inc.mul(&f, &cover.map);
                let rad_prev = radical_of_projective(oracle, &summands[q - 1]);
                for j in 0..d.cols() {
                    if !rad_prev.contains(&f, &d.column(j)) {
                        return Err(Error::MinimalityViolation(format!(
                            "d_{q} leaves the radical of P_{}",
                            q - 1
                        )));
                    }
                }
                maps.push(d);
            }
        }
        let (syzygy, inc) = cover.module.submodule(&f, &kernel)?;
        modules.push(cover.module);
        summands.push(cover.summands);
        current = syzygy;
        inclusion = Some(inc);
        q += 1;
    }
    Ok(Resolution {
        modules,
        maps,
        augmentation,
        target: target.clone(),
        summands: Some(summands),
    })
}

/// `rad P` for `P = ⊕ KMγ_{L_i}`: the summand-wise intersection with
/// `rad KM`, read through the simple functionals.
fn radical_of_projective(oracle: &Oracle<'_, '_>, summands: &[usize]) -> Subspace {
    let f = *oracle.field();
    let rep = oracle.rep();
    let dims: Vec<usize> = summands.iter().map(|&l| oracle.projective(l).basis.len()).collect();
    let total: usize = dims.iter().sum();
    // functionals: for each summand and label, x ↦ λ_L(Σ x_j b_j)
    let mut rows = Vec::new();
    let mut offset = 0;
    for (&l, &d) in summands.iter().zip(&dims) {
        let basis = &oracle.projective(l).basis;
        for k in 0..rep.label_count() {
            let lambda = rep.simple_values(k);
            let mut row = vec![0u32; total];
            for (j, b) in basis.iter().enumerate() {
                row[offset + j] = b
                    .iter()
                    .zip(lambda)
                    .fold(0, |acc, (&c, &v)| f.mul_add(acc, c, v));
            }
            rows.push(row);
        }
        offset += d;
    }
    let kernel = Matrix::from_rows(total, &rows).nullspace(&f);
    Subspace::spanned_by(&f, total, kernel.iter())
}
