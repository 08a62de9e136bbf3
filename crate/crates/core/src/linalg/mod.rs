//! Exact rational matrices with tensor-factor structure.
//!
//! Two storage forms exist: [`RMatrix`] is dense row-major and is used for
//! small matrices (LP data, reduced states); [`SparseRMatrix`] keeps only
//! non-zero entries per row and is used for operators on `(C^d)^{⊗4}`, where
//! permutation operators and Young projectors have at most 24 non-zeros per
//! row. Conversion between the two is explicit.
//!
//! Tensor indices follow the Kronecker convention: the first factor is the
//! most significant digit of the flat index.

mod dense;
mod sparse;

pub use dense::RMatrix;
pub use sparse::SparseRMatrix;

use crate::error::{ensure, Result};

/// Mixed-radix index arithmetic for a list of tensor factor dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Layout {
    dims: Vec<usize>,
    strides: Vec<usize>,
}

impl Layout {
    pub(crate) fn new(dims: &[usize]) -> Self {
        let mut strides = vec![1; dims.len()];
        for i in (0..dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * dims[i + 1];
        }
        Self {
            dims: dims.to_vec(),
            strides,
        }
    }

    pub(crate) fn digit(&self, index: usize, factor: usize) -> usize {
        (index / self.strides[factor]) % self.dims[factor]
    }

    /// Exchanges the digits of `row` and `col` at every factor in `flip`.
    pub(crate) fn swap_digits(&self, row: usize, col: usize, flip: &[usize]) -> (usize, usize) {
        let (mut r, mut c) = (row, col);
        for &f in flip {
            let (dr, dc) = (self.digit(row, f), self.digit(col, f));
            let s = self.strides[f];
            r = r - dr * s + dc * s;
            c = c - dc * s + dr * s;
        }
        (r, c)
    }

    /// Splits a flat index into (index over `keep` factors, index over the rest),
    /// each in the sub-layout's own Kronecker order.
    pub(crate) fn split(&self, index: usize, keep: &[usize]) -> (usize, usize) {
        let mut kept = 0;
        let mut rest = 0;
        for f in 0..self.dims.len() {
            let digit = self.digit(index, f);
            if keep.contains(&f) {
                kept = kept * self.dims[f] + digit;
            } else {
                rest = rest * self.dims[f] + digit;
            }
        }
        (kept, rest)
    }
}

pub(crate) fn check_factor_set(dims: &[usize], set: &[usize], what: &str) -> Result<Vec<usize>> {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    ensure!(
        sorted.iter().all(|&f| f < dims.len()),
        Structural,
        "{what} factor index out of range for {} factors: {:?}",
        dims.len(),
        set
    );
    Ok(sorted)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_digits_and_split() {
        let layout = Layout::new(&[2, 3, 4]);
        let idx = 4 * 3 + 4 + 3; // digits (1, 1, 3)
        assert_eq!(layout.digit(idx, 0), 1);
        assert_eq!(layout.digit(idx, 1), 1);
        assert_eq!(layout.digit(idx, 2), 3);
        assert_eq!(layout.split(idx, &[0, 2]), (4 + 3, 1));
    }

    #[test]
    fn swap_digits_is_involution() {
        let layout = Layout::new(&[3, 3]);
        for r in 0..9 {
            for c in 0..9 {
                let (r2, c2) = layout.swap_digits(r, c, &[1]);
                assert_eq!(layout.swap_digits(r2, c2, &[1]), (r, c));
            }
        }
    }
}
