use num::{One, Zero};

use super::{check_factor_set, Layout, RMatrix};
use crate::error::{ensure, Error, Result};
use crate::rational::Rational;

/// Row-compressed exact matrix: each row holds its non-zero `(col, value)`
/// pairs sorted by column. Zeros are never stored, so structural equality
/// is exact equality.
#[derive(Clone, Debug)]
pub struct SparseRMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, Rational)>>,
    factor_dims: Option<Vec<usize>>,
}

/// Accumulates one output row; keeps a touched list to avoid clearing the
/// whole scratch buffer between rows.
struct RowAccumulator {
    values: Vec<Option<Rational>>,
    touched: Vec<usize>,
}

impl RowAccumulator {
    fn new(cols: usize) -> Self {
        Self {
            values: vec![None; cols],
            touched: Vec::new(),
        }
    }

    fn add(&mut self, col: usize, value: Rational) {
        match &mut self.values[col] {
            Some(v) => *v += value,
            slot @ None => {
                *slot = Some(value);
                self.touched.push(col);
            }
        }
    }

    fn drain(&mut self) -> Vec<(usize, Rational)> {
        self.touched.sort_unstable();
        let mut row = Vec::with_capacity(self.touched.len());
        for &c in &self.touched {
            if let Some(v) = self.values[c].take() {
                if !v.is_zero() {
                    row.push((c, v));
                }
            }
        }
        self.touched.clear();
        row
    }
}

impl SparseRMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Vec::new(); rows],
            factor_dims: None,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            data: (0..n).map(|i| vec![(i, Rational::one())]).collect(),
            factor_dims: Some(vec![n]),
        }
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Result<Self> {
        let mut buckets: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            ensure!(r < rows && c < cols, Structural, "entry ({r},{c}) outside {rows}x{cols}");
            buckets[r].push((c, v));
        }
        let mut acc = RowAccumulator::new(cols);
        let data = buckets
            .into_iter()
            .map(|bucket| {
                for (c, v) in bucket {
                    acc.add(c, v);
                }
                acc.drain()
            })
            .collect();
        Ok(Self {
            rows,
            cols,
            data,
            factor_dims: None,
        })
    }

    /// Permutation matrix with a one at `(image[i], i)` for every column `i`.
    pub fn permutation(image: &[usize]) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &r in image {
            ensure!(r < n && !seen[r], Structural, "not a permutation of 0..{n}");
            seen[r] = true;
        }
        let mut data = vec![Vec::new(); n];
        for (c, &r) in image.iter().enumerate() {
            data[r].push((c, Rational::one()));
        }
        Ok(Self {
            rows: n,
            cols: n,
            data,
            factor_dims: None,
        })
    }

    pub fn with_factor_dims(mut self, dims: Vec<usize>) -> Result<Self> {
        ensure!(self.rows == self.cols, Structural, "factor structure needs a square matrix");
        ensure!(
            dims.iter().product::<usize>() == self.rows && dims.iter().all(|&d| d > 0),
            Structural,
            "factor dims {dims:?} do not multiply to {}",
            self.rows
        );
        self.factor_dims = Some(dims);
        Ok(self)
    }

    pub fn from_dense(m: &RMatrix) -> Self {
        let data = (0..m.rows())
            .map(|r| {
                m.row(r)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, v.clone()))
                    .collect()
            })
            .collect();
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data,
            factor_dims: m.factor_dims().map(<[usize]>::to_vec),
        }
    }

    pub fn to_dense(&self) -> RMatrix {
        let mut out = RMatrix::zeros(self.rows, self.cols);
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                out.set(r, *c, v.clone());
            }
        }
        match &self.factor_dims {
            Some(dims) => out.with_factor_dims(dims.clone()).expect("dims validated on construction"),
            None => out,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn factor_dims(&self) -> Option<&[usize]> {
        self.factor_dims.as_deref()
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn row(&self, r: usize) -> &[(usize, Rational)] {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        match self.data[r].binary_search_by_key(&c, |(col, _)| *col) {
            Ok(i) => self.data[r][i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn mul(&self, other: &SparseRMatrix) -> Result<SparseRMatrix> {
        ensure!(
            self.cols == other.rows,
            Structural,
            "cannot multiply {}x{} by {}x{}",
            self.rows,
            self.cols,
            other.rows,
            other.cols
        );
        let mut acc = RowAccumulator::new(other.cols);
        let data = self
            .data
            .iter()
            .map(|row| {
                for (k, a) in row {
                    for (j, b) in &other.data[*k] {
                        acc.add(*j, a * b);
                    }
                }
                acc.drain()
            })
            .collect();
        Ok(SparseRMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
            factor_dims: self.factor_dims.clone().filter(|_| self.rows == other.cols),
        })
    }

    fn combine(&self, other: &SparseRMatrix, sign: &Rational) -> Result<SparseRMatrix> {
        ensure!(
            self.rows == other.rows && self.cols == other.cols,
            Structural,
            "shape mismatch {}x{} vs {}x{}",
            self.rows,
            self.cols,
            other.rows,
            other.cols
        );
        let mut acc = RowAccumulator::new(self.cols);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                for (c, v) in a {
                    acc.add(*c, v.clone());
                }
                for (c, v) in b {
                    acc.add(*c, v * sign);
                }
                acc.drain()
            })
            .collect();
        Ok(SparseRMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
            factor_dims: self.factor_dims.clone().or_else(|| other.factor_dims.clone()),
        })
    }

    pub fn add(&self, other: &SparseRMatrix) -> Result<SparseRMatrix> {
        self.combine(other, &Rational::one())
    }

    pub fn sub(&self, other: &SparseRMatrix) -> Result<SparseRMatrix> {
        self.combine(other, &-Rational::one())
    }

    pub fn scale(&self, factor: &Rational) -> SparseRMatrix {
        if factor.is_zero() {
            let mut z = SparseRMatrix::zeros(self.rows, self.cols);
            z.factor_dims = self.factor_dims.clone();
            return z;
        }
        SparseRMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|row| row.iter().map(|(c, v)| (*c, v * factor)).collect())
                .collect(),
            factor_dims: self.factor_dims.clone(),
        }
    }

    pub fn transpose(&self) -> SparseRMatrix {
        let mut data = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                data[*c].push((r, v.clone()));
            }
        }
        SparseRMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
            factor_dims: self.factor_dims.clone(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }

    pub fn trace(&self) -> Result<Rational> {
        ensure!(self.rows == self.cols, Structural, "trace of non-square matrix");
        Ok((0..self.rows).map(|i| self.get(i, i)).sum())
    }

    /// `tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &SparseRMatrix) -> Result<Rational> {
        ensure!(
            self.cols == other.rows && self.rows == other.cols,
            Structural,
            "trace of product needs {}x{} against {}x{}",
            self.rows,
            self.cols,
            self.cols,
            self.rows
        );
        let mut total = Rational::zero();
        for (i, row) in self.data.iter().enumerate() {
            for (k, a) in row {
                let b = other.get(*k, i);
                if !b.is_zero() {
                    total += a * b;
                }
            }
        }
        Ok(total)
    }

    pub fn tensor_product(&self, other: &SparseRMatrix) -> SparseRMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut data = Vec::with_capacity(rows);
        for ra in &self.data {
            for rb in &other.data {
                let mut row = Vec::with_capacity(ra.len() * rb.len());
                for (ca, a) in ra {
                    for (cb, b) in rb {
                        row.push((ca * other.cols + cb, a * b));
                    }
                }
                data.push(row);
            }
        }
        let factor_dims = (rows == cols && self.rows == self.cols).then(|| {
            let left = self.factor_dims.clone().unwrap_or_else(|| vec![self.rows]);
            let right = other.factor_dims.clone().unwrap_or_else(|| vec![other.rows]);
            left.into_iter().chain(right).collect()
        });
        SparseRMatrix {
            rows,
            cols,
            data,
            factor_dims,
        }
    }

    fn layout(&self, op: &str) -> Result<(Layout, &[usize])> {
        let dims = self
            .factor_dims
            .as_deref()
            .ok_or_else(|| Error::Structural(format!("{op} needs factor dimensions")))?;
        Ok((Layout::new(dims), dims))
    }

    pub fn partial_transpose(&self, flip: &[usize]) -> Result<SparseRMatrix> {
        let (layout, dims) = self.layout("partial transpose")?;
        let flip = check_factor_set(dims, flip, "partial transpose")?;
        let triplets = self.data.iter().enumerate().flat_map(|(r, row)| {
            let layout = &layout;
            let flip = &flip;
            row.iter().map(move |(c, v)| {
                let (r2, c2) = layout.swap_digits(r, *c, flip);
                (r2, c2, v.clone())
            })
        });
        let out = SparseRMatrix::from_triplets(self.rows, self.cols, triplets)?;
        Ok(SparseRMatrix {
            factor_dims: self.factor_dims.clone(),
            ..out
        })
    }

    /// Traces out every factor not in `keep`; the (small) result is dense.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<RMatrix> {
        let (layout, dims) = self.layout("partial trace")?;
        let keep = check_factor_set(dims, keep, "partial trace")?;
        let kept_dims: Vec<usize> = keep.iter().map(|&f| dims[f]).collect();
        let size: usize = kept_dims.iter().product();
        let mut out = RMatrix::zeros(size, size);
        for (r, row) in self.data.iter().enumerate() {
            let (rk, rt) = layout.split(r, &keep);
            for (c, v) in row {
                let (ck, ct) = layout.split(*c, &keep);
                if rt == ct {
                    let cur = out.get(rk, ck) + v;
                    out.set(rk, ck, cur);
                }
            }
        }
        out.with_factor_dims(if kept_dims.is_empty() { vec![1] } else { kept_dims })
    }
}

impl PartialEq for SparseRMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Eq for SparseRMatrix {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn dense(rows: &[&[i64]]) -> RMatrix {
        RMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn dense_round_trip_and_products_agree() {
        let a = dense(&[&[1, 0, 2], &[0, 0, -1], &[3, 1, 0]]);
        let b = dense(&[&[0, 4, 0], &[1, 0, 0], &[0, -2, 5]]);
        let (sa, sb) = (SparseRMatrix::from_dense(&a), SparseRMatrix::from_dense(&b));
        assert_eq!(sa.to_dense(), a);
        assert_eq!(sa.mul(&sb).unwrap().to_dense(), a.mul(&b).unwrap());
        assert_eq!(sa.add(&sb).unwrap().to_dense(), a.add(&b).unwrap());
        assert_eq!(sa.sub(&sa).unwrap().nnz(), 0);
        assert_eq!(
            sa.trace_product(&sb).unwrap(),
            a.mul(&b).unwrap().trace().unwrap()
        );
        assert_eq!(sa.tensor_product(&sb).to_dense(), a.tensor_product(&b));
    }

    #[test]
    fn permutation_matrix_moves_basis_vectors() {
        let p = SparseRMatrix::permutation(&[2, 0, 1]).unwrap();
        // column 0 maps to row 2
        assert_eq!(p.get(2, 0), int(1));
        assert_eq!(p.mul(&p.transpose()).unwrap(), SparseRMatrix::identity(3));
        assert!(SparseRMatrix::permutation(&[0, 0, 1]).is_err());
    }

    #[test]
    fn partial_ops_match_dense() {
        let x = dense(&[&[1, 2], &[3, 4]]);
        let y = dense(&[&[0, 1], &[-5, 2]]);
        let xy = x.tensor_product(&y);
        let s = SparseRMatrix::from_dense(&xy);
        assert_eq!(
            s.partial_transpose(&[1]).unwrap().to_dense(),
            xy.partial_transpose(&[1]).unwrap()
        );
        assert_eq!(s.partial_trace(&[1]).unwrap(), xy.partial_trace(&[1]).unwrap());
        assert_eq!(s.scale(&ratio(1, 2)).to_dense(), xy.scale(&ratio(1, 2)));
    }

    #[test]
    fn missing_factor_dims_is_structural() {
        let s = SparseRMatrix::zeros(4, 4);
        assert!(matches!(s.partial_trace(&[0]), Err(Error::Structural(_))));
        assert!(matches!(s.partial_transpose(&[0]), Err(Error::Structural(_))));
    }
}
