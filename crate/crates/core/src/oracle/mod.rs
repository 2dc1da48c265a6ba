//! Linear-algebra ground truth over F_p: modules given by action
//! matrices, the radical of `KM`, projective covers and resolutions.

mod complexes;
mod presentation;
mod resolution;

pub use complexes::{minimal_cellular_resolution, order_complex_resolution};
pub use presentation::{presentation_dimension_check, PresentationReport};
pub use resolution::{minimal_resolution, Resolution};

use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::{Matrix, Subspace};
use crate::monoid::FiniteMonoid;
use crate::rep::{AlgebraElement, RepTheory};

/// Left `KM`-module: one `dim × dim` matrix per monoid element, acting on
/// column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Module {
    dim: usize,
    action: Vec<Matrix>,
}

impl Module {
    pub fn new(dim: usize, action: Vec<Matrix>) -> Self {
        Module { dim, action }
    }

    pub fn zero(monoid_size: usize) -> Self {
        Module {
            dim: 0,
            action: vec![Matrix::zeros(0, 0); monoid_size],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, m: usize) -> &Matrix {
        &self.action[m]
    }

    /// Matrix of `Σ a_m m`.
    pub fn action_of(&self, f: &PrimeField, a: &AlgebraElement) -> Matrix {
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (m, c) in a.support() {
            out = out.add(f, &self.action[m].scale(f, c));
        }
        out
    }

    /// Checks that the identity acts trivially and `A_{mn} = A_m A_n`,
    /// on all pairs for small modules and on `(generator, m)` otherwise.
    pub fn check_action(&self, f: &PrimeField, monoid: &FiniteMonoid) -> Result<()> {
        if self.action.len() != monoid.size() {
            return Err(Error::Invariant("one action matrix per element".into()));
        }
        if self.action[monoid.identity()] != Matrix::identity(self.dim) {
            return Err(Error::Invariant("identity acts nontrivially".into()));
        }
        let left: Vec<usize> = if self.dim <= 200 {
            monoid.elements().collect()
        } else {
            monoid.generators()
        };
        let bad = left.par_iter().find_any(|&&a| {
            monoid
                .elements()
                .any(|b| self.action[a].mul(f, &self.action[b]) != self.action[monoid.mul(a, b)])
        });
        match bad {
            Some(a) => Err(Error::Invariant(format!("action is not multiplicative at {a}"))),
            None => Ok(()),
        }
    }

    /// Submodule spanned by `vectors`, in the reduced echelon basis of
    /// their span; returns the module and its inclusion matrix.
    pub fn submodule(&self, f: &PrimeField, vectors: &[Vec<u32>]) -> Result<(Module, Matrix)> {
        let sub = Subspace::spanned_by(f, self.dim, vectors.iter());
        let basis = sub.basis().to_vec();
        let action = self
            .action
            .par_iter()
            .map(|a| {
                let cols = basis
                    .iter()
                    .map(|b| {
                        sub.coords(f, &a.apply(f, b)).ok_or_else(|| {
                            Error::Invariant("subspace is not a submodule".into())
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Matrix::from_columns(basis.len(), &cols))
            })
            .collect::<Result<Vec<_>>>()?;
        let inclusion = Matrix::from_columns(self.dim, &basis);
        Ok((Module::new(basis.len(), action), inclusion))
    }

    /// Whether `map: self → other` commutes with every element.
    pub fn is_equivariant(&self, f: &PrimeField, other: &Module, map: &Matrix) -> bool {
        (0..self.action.len())
            .into_par_iter()
            .all(|m| map.mul(f, &self.action[m]) == other.action[m].mul(f, map))
    }

    pub fn direct_sum(parts: &[&Module], monoid_size: usize) -> Module {
        let dim = parts.iter().map(|p| p.dim).sum();
        let action = (0..monoid_size)
            .map(|m| {
                let mut a = Matrix::zeros(dim, dim);
                let mut off = 0;
                for p in parts {
                    let b = &p.action[m];
                    for i in 0..p.dim {
                        for j in 0..p.dim {
                            a.set(off + i, off + j, b.get(i, j));
                        }
                    }
                    off += p.dim;
                }
                a
            })
            .collect();
        Module { dim, action }
    }
}

/// The radical of `KM` as the joint kernel of the simple functionals.
#[derive(Debug, Clone)]
pub struct Radical {
    pub basis: Vec<Vec<u32>>,
}

impl Radical {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Facts about `rad KM` checked by explicit products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalReport {
    pub dim: usize,
    pub codim_matches_labels: bool,
    pub two_sided_ideal: bool,
    /// Smallest `k` with `rad^k = 0`, if reached within the bound.
    pub nilpotency_index: Option<usize>,
}

/// Oracle computations for one monoid and prime.
pub struct Oracle<'r, 'a> {
    rep: &'r RepTheory<'a>,
    generators: Vec<usize>,
    projectives: Vec<OnceLock<Projective>>,
}

/// `KMγ_L` with a basis of algebra elements.
#[derive(Debug, Clone)]
pub struct Projective {
    pub label: usize,
    pub basis: Vec<Vec<u32>>,
    pub module: Module,
}

impl<'r, 'a> Oracle<'r, 'a> {
    pub fn new(rep: &'r RepTheory<'a>) -> Result<Self> {
        Ok(Oracle {
            rep,
            generators: rep.monoid().generators(),
            projectives: (0..rep.label_count()).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn rep(&self) -> &'r RepTheory<'a> {
        self.rep
    }

    pub fn field(&self) -> &PrimeField {
        self.rep.field()
    }

    /// `KMγ_L`, built on first use.
    pub fn projective(&self, label: usize) -> &Projective {
        self.projectives[label].get_or_init(|| {
            let f = *self.field();
            let monoid = self.rep.monoid();
            let gamma = self.rep.gamma(label);
            let vectors = monoid.elements().map(|m| {
                AlgebraElement::basis(monoid.size(), m)
                    .mul(&f, monoid, gamma)
                    .into_coefficients()
            });
            let (module, basis) = left_ideal_module(&f, monoid, vectors);
            Projective {
                label,
                basis,
                module,
            }
        })
    }

    /// The one-dimensional simple module `S_L`.
    pub fn simple(&self, label: usize) -> Module {
        let values = self.rep.simple_values(label);
        Module::new(
            1,
            values
                .iter()
                .map(|&v| Matrix::from_rows(1, &[vec![v]]))
                .collect(),
        )
    }

    /// Basis of `Hom(N, S_L)` as row vectors `φ` with `φ A_m = λ_L(m) φ`.
    pub fn hom_to_simple(&self, n: &Module, label: usize) -> Vec<Vec<u32>> {
        let f = self.field();
        let d = n.dim();
        if d == 0 {
            return Vec::new();
        }
        let lambda = self.rep.simple_values(label);
        let mut rows = Vec::with_capacity(self.generators.len() * d);
        for &g in &self.generators {
            let a = n.action(g);
            // column j of (A_g − λ I) gives the equation Σ_i φ_i (A_g − λI)_{ij} = 0
            for j in 0..d {
                rows.push(
                    (0..d)
                        .map(|i| {
                            let v = a.get(i, j);
                            if i == j {
                                f.sub(v, lambda[g])
                            } else {
                                v
                            }
                        })
                        .collect(),
                );
            }
        }
        Matrix::from_rows(d, &rows).nullspace(f)
    }

    /// Multiplicity of each simple in the top `N / rad N`.
    pub fn top(&self, n: &Module) -> Vec<usize> {
        (0..self.rep.label_count())
            .map(|l| self.hom_to_simple(n, l).len())
            .collect()
    }

    /// `rad N`, the joint kernel of all maps to simples.
    pub fn module_radical(&self, n: &Module) -> Subspace {
        let f = self.field();
        let rows: Vec<Vec<u32>> = (0..self.rep.label_count())
            .flat_map(|l| self.hom_to_simple(n, l))
            .collect();
        if rows.is_empty() {
            let mut s = Subspace::new(n.dim());
            for i in 0..n.dim() {
                let mut v = vec![0; n.dim()];
                v[i] = 1;
                s.insert(f, &v);
            }
            return s;
        }
        let kernel = Matrix::from_rows(n.dim(), &rows).nullspace(f);
        Subspace::spanned_by(f, n.dim(), kernel.iter())
    }

    /// `rad KM`: elements killed by every simple functional.
    pub fn radical(&self) -> Result<Radical> {
        let f = self.field();
        let size = self.rep.monoid().size();
        let rows: Vec<Vec<u32>> = (0..self.rep.label_count())
            .map(|l| self.rep.simple_values(l).to_vec())
            .collect();
        let basis = Matrix::from_rows(size, &rows).nullspace(f);
        if basis.len() + self.rep.label_count() != size {
            return Err(Error::NonSplitBasic);
        }
        Ok(Radical { basis })
    }

    fn in_radical(&self, v: &[u32]) -> bool {
        let f = self.field();
        let a = AlgebraElement::from_coefficients(v.to_vec());
        (0..self.rep.label_count()).all(|l| a.evaluate(f, self.rep.simple_values(l)) == 0)
    }

    /// Codimension, ideal closure under all generators on both sides, and
    /// nilpotency up to `max_power`.
    pub fn check_radical(&self, rad: &Radical, max_power: usize) -> RadicalReport {
        let f = *self.field();
        let monoid = self.rep.monoid();
        let size = monoid.size();
        let elems: Vec<AlgebraElement> = rad
            .basis
            .iter()
            .map(|v| AlgebraElement::from_coefficients(v.clone()))
            .collect();
        let two_sided_ideal = self.generators.par_iter().all(|&g| {
            let gm = AlgebraElement::basis(size, g);
            elems.iter().all(|r| {
                self.in_radical(gm.mul(&f, monoid, r).coefficients())
                    && self.in_radical(r.mul(&f, monoid, &gm).coefficients())
            })
        });
        let mut power = rad.basis.clone();
        let mut nilpotency_index = None;
        for k in 1..=max_power {
            if power.is_empty() {
                nilpotency_index = Some(k);
                break;
            }
            if k == max_power {
                break;
            }
            let products: Vec<Vec<u32>> = elems
                .par_iter()
                .flat_map_iter(|r| {
                    power.iter().map(move |x| {
                        r.mul(&f, monoid, &AlgebraElement::from_coefficients(x.clone()))
                            .into_coefficients()
                    })
                })
                .collect();
            power = Subspace::spanned_by(&f, size, products.iter()).basis().to_vec();
        }
        if rad.basis.is_empty() {
            nilpotency_index = Some(1);
        }
        RadicalReport {
            dim: rad.dim(),
            codim_matches_labels: rad.dim() + self.rep.label_count() == size,
            two_sided_ideal,
            nilpotency_index,
        }
    }

    /// `dim γ_W (rad/rad²) γ_V`.
    pub fn ext1(&self, rad: &Radical, v: usize, w: usize) -> usize {
        let (r1, r2) = self.radical_layers(rad, v);
        self.ext1_from_layers(&r1, &r2, w)
    }

    /// `rad γ_V` and `rad² γ_V` as subspaces of `KM`.
    pub fn radical_layers(&self, rad: &Radical, v: usize) -> (Subspace, Subspace) {
        let f = *self.field();
        let monoid = self.rep.monoid();
        let size = monoid.size();
        let gamma = self.rep.gamma(v);
        let elems: Vec<AlgebraElement> = rad
            .basis
            .iter()
            .map(|x| AlgebraElement::from_coefficients(x.clone()))
            .collect();
        let layer1: Vec<Vec<u32>> = elems
            .par_iter()
            .map(|r| r.mul(&f, monoid, gamma).into_coefficients())
            .collect();
        let r1 = Subspace::spanned_by(&f, size, layer1.iter());
        let layer2: Vec<Vec<u32>> = elems
            .par_iter()
            .flat_map_iter(|r| {
                r1.basis().iter().map(move |x| {
                    r.mul(&f, monoid, &AlgebraElement::from_coefficients(x.clone()))
                        .into_coefficients()
                })
            })
            .collect();
        let r2 = Subspace::spanned_by(&f, size, layer2.iter());
        (r1, r2)
    }

    pub fn ext1_from_layers(&self, r1: &Subspace, r2: &Subspace, w: usize) -> usize {
        let f = *self.field();
        let monoid = self.rep.monoid();
        let size = monoid.size();
        let gamma = self.rep.gamma(w);
        let project = |s: &Subspace| {
            let images: Vec<Vec<u32>> = s
                .basis()
                .iter()
                .map(|x| {
                    gamma
                        .mul(&f, monoid, &AlgebraElement::from_coefficients(x.clone()))
                        .into_coefficients()
                })
                .collect();
            Subspace::spanned_by(&f, size, images.iter()).dim()
        };
        project(r1) - project(r2)
    }

    /// `dim γ_a KM γ_b` for all label pairs, indexed `[a][b]`.
    pub fn cartan(&self) -> Vec<Vec<usize>> {
        let f = *self.field();
        let monoid = self.rep.monoid();
        let size = monoid.size();
        let n = self.rep.label_count();
        (0..n)
            .into_par_iter()
            .map(|a| {
                let gamma = self.rep.gamma(a);
                (0..n)
                    .map(|b| {
                        let images: Vec<Vec<u32>> = self
                            .projective(b)
                            .basis
                            .iter()
                            .map(|x| {
                                gamma
                                    .mul(&f, monoid, &AlgebraElement::from_coefficients(x.clone()))
                                    .into_coefficients()
                            })
                            .collect();
                        Subspace::spanned_by(&f, size, images.iter()).dim()
                    })
                    .collect()
            })
            .collect()
    }

    /// `dim γ_L (KM/rad) γ_L`, via the simple functionals on `γ_L b` for a
    /// basis `b` of the left ideal `KMγ_L`.
    pub fn primitivity_dimension(&self, label: usize) -> usize {
        let f = *self.field();
        let monoid = self.rep.monoid();
        let size = monoid.size();
        let gamma = self.rep.gamma(label);
        let n = self.rep.label_count();
        let mut ideal = Subspace::new(size);
        for m in monoid.elements() {
            let mg = AlgebraElement::basis(size, m).mul(&f, monoid, gamma);
            ideal.insert(&f, mg.coefficients());
        }
        let rows: Vec<Vec<u32>> = ideal
            .basis()
            .par_iter()
            .map(|b| {
                let x = gamma.mul(&f, monoid, &AlgebraElement::from_coefficients(b.clone()));
                (0..n)
                    .map(|l| x.evaluate(&f, self.rep.simple_values(l)))
                    .collect()
            })
            .collect();
        Matrix::from_rows(n, &rows).rank(&f)
    }
}

/// The left ideal of `KM` spanned by `vectors` (assumed closed under left
/// multiplication), with its reduced echelon basis.
pub fn left_ideal_module(
    f: &PrimeField,
    monoid: &FiniteMonoid,
    vectors: impl IntoIterator<Item = Vec<u32>>,
) -> (Module, Vec<Vec<u32>>) {
    let mut span = Subspace::new(monoid.size());
    for v in vectors {
        span.insert(f, &v);
    }
    let basis = span.basis().to_vec();
    let action = monoid
        .elements()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&m| {
            let cols: Vec<Vec<u32>> = basis
                .iter()
                .map(|b| {
                    let mut image = vec![0u32; monoid.size()];
                    for (x, &c) in b.iter().enumerate() {
                        if c != 0 {
                            let slot = &mut image[monoid.mul(m, x)];
                            *slot = f.add(*slot, c);
                        }
                    }
                    span.coords(f, &image).expect("left ideal is closed")
                })
                .collect();
            Matrix::from_columns(basis.len(), &cols)
        })
        .collect();
    (Module::new(basis.len(), action), basis)
}

/// `rad KM` for the monoid and prime of `rep`.
pub fn radical(rep: &RepTheory<'_>) -> Result<Radical> {
    Oracle::new(rep)?.radical()
}

/// `dim Ext¹(V, W) = dim γ_W (rad/rad²) γ_V`.
pub fn ext1_oracle(rep: &RepTheory<'_>, v: usize, w: usize) -> Result<usize> {
    let oracle = Oracle::new(rep)?;
    let rad = oracle.radical()?;
    Ok(oracle.ext1(&rad, v, w))
}
