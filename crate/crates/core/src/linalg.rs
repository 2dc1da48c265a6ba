//! Dense matrices and subspaces over F_p.

use crate::field::PrimeField;

/// Row-major dense matrix with entries in `0..p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, f: &PrimeField, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let p = f.p() as u64;
        let mut out = Matrix::zeros(self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for (j, slot) in acc.iter_mut().enumerate() {
                    *slot = (*slot + a * other.get(k, j) as u64) % p;
                }
            }
            for (j, &v) in acc.iter().enumerate() {
                out.set(i, j, v as u32);
            }
        }
        out
    }

    pub fn apply(&self, f: &PrimeField, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0u32, |acc, (&a, &b)| f.mul_add(acc, a, b))
            })
            .collect()
    }

    pub fn scale(&self, f: &PrimeField, c: u32) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| f.mul(v, c)).collect(),
        }
    }

    pub fn add(&self, f: &PrimeField, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self, f: &PrimeField) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c));
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                let neg = f.neg(factor);
                for j in c..m.cols {
                    let v = f.mul_add(m.get(i, j), neg, m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, f: &PrimeField) -> usize {
        // forward elimination only
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c));
            for i in r + 1..m.rows {
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                let k = f.neg(f.mul(factor, inv));
                for j in c..m.cols {
                    let v = f.mul_add(m.get(i, j), k, m.get(r, j));
                    m.set(i, j, v);
                }
            }
            r += 1;
        }
        r
    }

    /// Basis of the right kernel `{x : Ax = 0}`.
    pub fn nullspace(&self, f: &PrimeField) -> Vec<Vec<u32>> {
        let (r, pivots) = self.rref(f);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        basis
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// A subspace of F_p^n held as a fully reduced echelon basis.
///
/// Coordinates of a member against [`Subspace::basis`] are read off the
/// pivot positions.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn spanned_by<'a, I>(f: &PrimeField, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = &'a Vec<u32>>,
    {
        let mut s = Subspace::new(ambient);
        for v in vectors {
            s.insert(f, v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Residual of `v` after clearing every pivot position.
    pub fn reduce(&self, f: &PrimeField, v: &[u32]) -> Vec<u32> {
        let mut w = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let k = w[c];
            if k == 0 {
                continue;
            }
            let neg = f.neg(k);
            for (x, &r) in w.iter_mut().zip(row) {
                if r != 0 {
                    *x = f.mul_add(*x, neg, r);
                }
            }
        }
        w
    }

    pub fn contains(&self, f: &PrimeField, v: &[u32]) -> bool {
        self.reduce(f, v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, f: &PrimeField, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut w = self.reduce(f, v);
        let Some(c) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(w[c]);
        w.iter_mut().for_each(|x| *x = f.mul(*x, inv));
        for row in self.rows.iter_mut() {
            let k = row[c];
            if k == 0 {
                continue;
            }
            let neg = f.neg(k);
            for (x, &r) in row.iter_mut().zip(&w) {
                if r != 0 {
                    *x = f.mul_add(*x, neg, r);
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(c);
        true
    }

    /// Coordinates against [`Subspace::basis`], or `None` if `v` is outside.
    pub fn coords(&self, f: &PrimeField, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(f, v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c]).collect())
    }
}
