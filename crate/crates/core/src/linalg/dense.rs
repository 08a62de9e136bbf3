use std::fmt;

use num::{One, Zero};

use super::{check_factor_set, Layout};
use crate::error::{ensure, Error, Result};
use crate::rational::{int, Rational};

/// Dense row-major matrix of exact rationals.
///
/// `factor_dims`, when set, records the tensor structure of a square
/// operator; its product equals `rows` (and `cols`).
#[derive(Clone)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
    factor_dims: Option<Vec<usize>>,
}

impl RMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        ensure!(rows > 0 && cols > 0, Structural, "empty matrix {rows}x{cols}");
        ensure!(
            entries.len() == rows * cols,
            Structural,
            "{rows}x{cols} matrix needs {} entries, got {}",
            rows * cols,
            entries.len()
        );
        Ok(Self {
            rows,
            cols,
            entries,
            factor_dims: None,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
            factor_dims: None,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m.factor_dims = Some(vec![n]);
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        ensure!(
            rows.iter().all(|row| row.len() == c),
            Structural,
            "ragged rows"
        );
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| int(v)).collect())
                .collect(),
        )
    }

    pub fn scalar(value: Rational) -> Self {
        Self {
            rows: 1,
            cols: 1,
            entries: vec![value],
            factor_dims: None,
        }
    }

    /// Attaches tensor-factor dimensions. The matrix must be square with
    /// `rows == Π dims`.
    pub fn with_factor_dims(mut self, dims: Vec<usize>) -> Result<Self> {
        ensure!(
            self.rows == self.cols,
            Structural,
            "factor structure needs a square matrix, got {}x{}",
            self.rows,
            self.cols
        );
        ensure!(
            !dims.is_empty() && dims.iter().all(|&d| d > 0),
            Structural,
            "factor dimensions must be positive: {dims:?}"
        );
        ensure!(
            dims.iter().product::<usize>() == self.rows,
            Structural,
            "factor dims {dims:?} do not multiply to {}",
            self.rows
        );
        self.factor_dims = Some(dims);
        Ok(self)
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

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Kronecker product; factor dimensions are concatenated.
    pub fn tensor_product(&self, other: &RMatrix) -> RMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut entries = Vec::with_capacity(rows * cols);
        for ra in 0..self.rows {
            for rb in 0..other.rows {
                for ca in 0..self.cols {
                    let a = self.get(ra, ca);
                    for cb in 0..other.cols {
                        entries.push(a * other.get(rb, cb));
                    }
                }
            }
        }
        let factor_dims = if rows == cols && self.is_square() {
            let left = self.factor_dims.clone().unwrap_or_else(|| vec![self.rows]);
            let right = other.factor_dims.clone().unwrap_or_else(|| vec![other.rows]);
            // A 1x1 factor carries no tensor structure.
            let dims: Vec<usize> = left.into_iter().chain(right).filter(|&d| d > 1).collect();
            Some(if dims.is_empty() { vec![1] } else { dims })
        } else {
            None
        };
        RMatrix {
            rows,
            cols,
            entries,
            factor_dims,
        }
    }

    /// `self^{⊗n}` for `n ≥ 1`.
    pub fn tensor_power(&self, n: usize) -> RMatrix {
        assert!(n >= 1, "tensor power needs n >= 1");
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.tensor_product(self);
        }
        acc
    }

    pub fn mul(&self, other: &RMatrix) -> Result<RMatrix> {
        ensure!(
            self.cols == other.rows,
            Structural,
            "cannot multiply {}x{} by {}x{}",
            self.rows,
            self.cols,
            other.rows,
            other.cols
        );
        let mut out = RMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out.factor_dims = self.factor_dims.clone().filter(|_| out.is_square());
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        ensure!(
            v.len() == self.cols,
            Structural,
            "vector length {} does not match {} columns",
            v.len(),
            self.cols
        );
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    fn zip_with(&self, other: &RMatrix, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<RMatrix> {
        ensure!(
            self.rows == other.rows && self.cols == other.cols,
            Structural,
            "shape mismatch {}x{} vs {}x{}",
            self.rows,
            self.cols,
            other.rows,
            other.cols
        );
        Ok(RMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
            factor_dims: self.factor_dims.clone(),
        })
    }

    pub fn add(&self, other: &RMatrix) -> Result<RMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &RMatrix) -> Result<RMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, factor: &Rational) -> RMatrix {
        RMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * factor).collect(),
            factor_dims: self.factor_dims.clone(),
        }
    }

    pub fn transpose(&self) -> RMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        RMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
            factor_dims: self.factor_dims.clone(),
        }
    }

    pub fn trace(&self) -> Result<Rational> {
        ensure!(
            self.is_square(),
            Structural,
            "trace of non-square {}x{} matrix",
            self.rows,
            self.cols
        );
        Ok((0..self.rows).map(|i| self.get(i, i).clone()).sum())
    }

    fn layout(&self, op: &str) -> Result<Layout> {
        let dims = self
            .factor_dims
            .as_ref()
            .ok_or_else(|| Error::Structural(format!("{op} needs factor dimensions")))?;
        Ok(Layout::new(dims))
    }

    /// Traces out every factor not listed in `keep`.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<RMatrix> {
        let layout = self.layout("partial trace")?;
        let dims = self.factor_dims.as_ref().expect("checked by layout");
        let keep = check_factor_set(dims, keep, "partial trace")?;
        let kept_dims: Vec<usize> = keep.iter().map(|&f| dims[f]).collect();
        let kept_size: usize = kept_dims.iter().product();
        let mut out = RMatrix::zeros(kept_size, kept_size);
        for r in 0..self.rows {
            let (rk, rt) = layout.split(r, &keep);
            for c in 0..self.cols {
                let e = self.get(r, c);
                if e.is_zero() {
                    continue;
                }
                let (ck, ct) = layout.split(c, &keep);
                if rt == ct {
                    out.entries[rk * kept_size + ck] += e;
                }
            }
        }
        out.factor_dims = Some(if kept_dims.is_empty() { vec![1] } else { kept_dims });
        Ok(out)
    }

    /// Transposes the indices of the factors listed in `flip`.
    pub fn partial_transpose(&self, flip: &[usize]) -> Result<RMatrix> {
        let layout = self.layout("partial transpose")?;
        let flip = check_factor_set(self.factor_dims.as_deref().unwrap_or(&[]), flip, "partial transpose")?;
        let mut out = RMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let (r2, c2) = layout.swap_digits(r, c, &flip);
                out.entries[r2 * self.cols + c2] = self.get(r, c).clone();
            }
        }
        out.factor_dims = self.factor_dims.clone();
        Ok(out)
    }
}

impl PartialEq for RMatrix {
    /// Exact entrywise equality of equally shaped matrices; factor metadata
    /// is not compared.
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}

impl Eq for RMatrix {}

impl fmt::Debug for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RMatrix {}x{} {:?}", self.rows, self.cols, self.factor_dims)?;
        for r in 0..self.rows.min(16) {
            let row: Vec<String> = self.row(r).iter().take(16).map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
