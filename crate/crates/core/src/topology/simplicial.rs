use std::collections::{BTreeSet, HashMap};

use super::{ChainComplex, FinitePoset};
use crate::field::PrimeField;
use crate::linalg::Matrix;

/// Abstract simplicial complex; faces are sorted vertex lists graded by
/// dimension (`faces[d]` holds the d-simplices, sorted).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: usize,
    faces: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    /// Closes `facets` under taking nonempty subsets.
    pub fn from_facets(vertices: usize, facets: &[Vec<usize>]) -> Self {
        let mut layers: Vec<BTreeSet<Vec<usize>>> = Vec::new();
        for facet in facets {
            let mut f = facet.clone();
            f.sort_unstable();
            f.dedup();
            assert!(f.iter().all(|&v| v < vertices), "facet vertex out of range");
            let k = f.len();
            assert!(k <= 24, "facet too large to enumerate subsets");
            for mask in 1u32..(1 << k) {
                let face: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                let d = face.len() - 1;
                if layers.len() <= d {
                    layers.resize_with(d + 1, BTreeSet::new);
                }
                layers[d].insert(face);
            }
        }
        SimplicialComplex {
            vertices,
            faces: layers.into_iter().map(|s| s.into_iter().collect()).collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    /// Dimension, `-1` for the empty complex.
    pub fn dim(&self) -> isize {
        self.faces.len() as isize - 1
    }

    pub fn faces(&self, d: usize) -> &[Vec<usize>] {
        self.faces.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn face_counts(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    /// `Σ_{q≥-1} (-1)^q f_q` with `f_{-1} = 1`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        let mut chi = -1i64;
        for (d, layer) in self.faces.iter().enumerate() {
            let sign = if d % 2 == 0 { 1 } else { -1 };
            chi += sign * layer.len() as i64;
        }
        chi
    }

    /// Augmented simplicial chain complex; degree `k` of the result is
    /// simplicial degree `k - 1`, so degree 0 is the copy of F_p.
    pub fn augmented_chain_complex(&self, f: &PrimeField) -> ChainComplex {
        let mut dims = vec![1];
        dims.extend(self.face_counts());
        let mut boundaries = Vec::new();
        if !self.faces.is_empty() {
            // augmentation
            let mut eps = Matrix::zeros(1, self.faces[0].len());
            for j in 0..self.faces[0].len() {
                eps.set(0, j, 1);
            }
            boundaries.push(eps);
        }
        for d in 1..self.faces.len() {
            let index: HashMap<&[usize], usize> = self.faces[d - 1]
                .iter()
                .enumerate()
                .map(|(i, s)| (s.as_slice(), i))
                .collect();
            let mut m = Matrix::zeros(self.faces[d - 1].len(), self.faces[d].len());
            for (j, simplex) in self.faces[d].iter().enumerate() {
                for skip in 0..simplex.len() {
                    let face: Vec<usize> = simplex
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &v)| v)
                        .collect();
                    let row = index[face.as_slice()];
                    let sign = if skip % 2 == 0 { 1 } else { f.neg(1) };
                    m.set(row, j, sign);
                }
            }
            boundaries.push(m);
        }
        ChainComplex::new(*f, dims, boundaries).expect("simplicial boundary squares to zero")
    }
}

/// Δ(P): simplices are the chains of `P`, vertex set `P`.
pub fn order_complex(poset: &FinitePoset) -> SimplicialComplex {
    let n = poset.len();
    let mut layers: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn extend(
        poset: &FinitePoset,
        stack: &mut Vec<usize>,
        layers: &mut Vec<Vec<Vec<usize>>>,
    ) {
        let d = stack.len() - 1;
        if layers.len() <= d {
            layers.resize_with(d + 1, Vec::new);
        }
        let mut face = stack.clone();
        face.sort_unstable();
        layers[d].push(face);
        let last = *stack.last().unwrap();
        for next in 0..poset.len() {
            if poset.lt(last, next) {
                stack.push(next);
                extend(poset, stack, layers);
                stack.pop();
            }
        }
    }
    for v in 0..n {
        stack.push(v);
        extend(poset, &mut stack, &mut layers);
        stack.pop();
    }
    for layer in layers.iter_mut() {
        layer.sort();
    }
    SimplicialComplex {
        vertices: n,
        faces: layers,
    }
}

/// Reduced Betti numbers `β̃_q` for `q = -1, 0, …, dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedBetti {
    values: Vec<usize>,
}

impl ReducedBetti {
    pub fn get(&self, q: isize) -> usize {
        usize::try_from(q + 1)
            .ok()
            .and_then(|i| self.values.get(i).copied())
            .unwrap_or(0)
    }

    /// Values starting at degree -1.
    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 1 { b as i64 } else { -(b as i64) })
            .sum()
    }

    /// Homology of a `d`-sphere: only `β̃_d = 1`.
    pub fn is_sphere(&self, d: isize) -> bool {
        self.values
            .iter()
            .enumerate()
            .all(|(i, &b)| b == usize::from(i as isize - 1 == d))
            && self.get(d) == 1
    }
}

pub fn reduced_betti(complex: &SimplicialComplex, f: &PrimeField) -> ReducedBetti {
    ReducedBetti {
        values: complex.augmented_chain_complex(f).homology(),
    }
}
