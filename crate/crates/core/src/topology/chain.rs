use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::Matrix;

/// Graded F_p chain complex; `boundary(d)` maps degree `d` to `d - 1`.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    field: PrimeField,
    dims: Vec<usize>,
    // boundaries[d - 1] = ∂_d
    boundaries: Vec<Matrix>,
}

impl ChainComplex {
    pub fn new(field: PrimeField, dims: Vec<usize>, boundaries: Vec<Matrix>) -> Result<Self> {
        if boundaries.len() + 1 != dims.len().max(1) {
            return Err(Error::Invariant("one boundary per positive degree".into()));
        }
        for (i, b) in boundaries.iter().enumerate() {
            let d = i + 1;
            if b.rows() != dims[d - 1] || b.cols() != dims[d] {
                return Err(Error::Invariant(format!("∂_{d} has the wrong shape")));
            }
        }
        for pair in boundaries.windows(2) {
            if !pair[0].mul(&field, &pair[1]).is_zero() {
                return Err(Error::Invariant("∂∘∂ ≠ 0".into()));
            }
        }
        Ok(ChainComplex {
            field,
            dims,
            boundaries,
        })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn boundary(&self, d: usize) -> Option<&Matrix> {
        d.checked_sub(1).and_then(|i| self.boundaries.get(i))
    }

    /// `dim H_d` for every degree.
    pub fn homology(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self
            .boundaries
            .iter()
            .map(|b| b.rank(&self.field))
            .collect();
        (0..self.dims.len())
            .map(|d| {
                let outgoing = if d == 0 { 0 } else { ranks[d - 1] };
                let incoming = ranks.get(d).copied().unwrap_or(0);
                self.dims[d] - outgoing - incoming
            })
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }
}
