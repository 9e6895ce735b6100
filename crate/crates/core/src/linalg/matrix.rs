use std::fmt::Write as _;
use std::io::{BufRead, Write};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::LinalgError;

/// Dense row-major integer matrix.
///
/// Entries are machine integers; every arithmetic helper is checked and reports
/// [`LinalgError::Overflow`] instead of wrapping. The elimination routines that
/// can blow entries up work on their own arbitrary-precision copies.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Self::zeros(k, k);
        for i in 0..k {
            m.data[i * k + i] = 1;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// `rows * cols`, the size measure used by strategy selection.
    pub fn entry_count(&self) -> usize {
        self.rows * self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [i64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn data(&self) -> &[i64] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == (i == j) as i64))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|&&x| x != 0).count()
    }

    pub fn max_abs(&self) -> u64 {
        self.data.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Product, skipping zero entries of the left factor and of each right row.
    pub fn checked_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::Dimension(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let sparse_rhs: Vec<Vec<(usize, i64)>> = (0..rhs.rows)
            .map(|l| {
                rhs.row(l)
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(j, &v)| (j, v))
                    .collect()
            })
            .collect();
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let target = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for (l, &x) in self.row(i).iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for &(j, y) in &sparse_rhs[l] {
                    let prod = x.checked_mul(y).ok_or(LinalgError::Overflow("matrix product"))?;
                    target[j] = target[j]
                        .checked_add(prod)
                        .ok_or(LinalgError::Overflow("matrix product"))?;
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, rhs: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        self.zip_with(rhs, i64::checked_add)
    }

    pub fn checked_sub(&self, rhs: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        self.zip_with(rhs, i64::checked_sub)
    }

    /// Adds `block` into `self` with its top-left corner at `(row, col)`.
    pub fn add_block(&mut self, row: usize, col: usize, block: &IntMatrix) -> Result<(), LinalgError> {
        if row + block.rows > self.rows || col + block.cols > self.cols {
            return Err(LinalgError::Dimension(format!(
                "{}x{} block at ({row},{col}) in {}x{}",
                block.rows, block.cols, self.rows, self.cols
            )));
        }
        for i in 0..block.rows {
            let target = &mut self.data[(row + i) * self.cols + col..][..block.cols];
            for (t, &b) in target.iter_mut().zip(block.row(i)) {
                *t = t.checked_add(b).ok_or(LinalgError::Overflow("block add"))?;
            }
        }
        Ok(())
    }

    fn zip_with(
        &self,
        rhs: &IntMatrix,
        op: fn(i64, i64) -> Option<i64>,
    ) -> Result<IntMatrix, LinalgError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(LinalgError::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| op(a, b).ok_or(LinalgError::Overflow("entrywise op")))
            .collect::<Result<_, _>>()?;
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// `M - I` for square `M`.
    pub fn minus_identity(&self) -> Result<IntMatrix, LinalgError> {
        self.checked_sub(&IntMatrix::identity(self.rows))
    }

    /// Vertical concatenation; all blocks need the same column count.
    pub fn vstack(blocks: &[IntMatrix]) -> Result<IntMatrix, LinalgError> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        if blocks.iter().any(|b| b.cols != cols) {
            return Err(LinalgError::Dimension("vstack column mismatch".into()));
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        let data = blocks.iter().flat_map(|b| b.data.iter().copied()).collect();
        Ok(IntMatrix { rows, cols, data })
    }

    /// Horizontal concatenation; all blocks need the same row count.
    pub fn hstack(blocks: &[IntMatrix]) -> Result<IntMatrix, LinalgError> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        if blocks.iter().any(|b| b.rows != rows) {
            return Err(LinalgError::Dimension("hstack row mismatch".into()));
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = IntMatrix::zeros(rows, cols);
        for i in 0..rows {
            let mut offset = 0;
            for b in blocks {
                out.data[i * cols + offset..i * cols + offset + b.cols].copy_from_slice(b.row(i));
                offset += b.cols;
            }
        }
        Ok(out)
    }

    /// Matrix-vector product in exact 128-bit arithmetic.
    pub fn mul_vec_i128(&self, v: &[i128]) -> Result<Vec<i128>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::Dimension("vector length".into()));
        }
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).try_fold(0i128, |acc, (&a, &x)| {
                    (a as i128)
                        .checked_mul(x)
                        .and_then(|p| acc.checked_add(p))
                        .ok_or(LinalgError::Overflow("matrix-vector product"))
                })
            })
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| self.row(i).iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(if n == 0 { BigInt::one() } else { sign * &a[n - 1][n - 1] })
    }

    /// True iff square with determinant ±1.
    pub fn is_unimodular(&self) -> bool {
        self.determinant().map(|d| d.abs().is_one()).unwrap_or(false)
    }

    /// Dense text form: a `rows cols` header, then one line per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    /// Sparse triplet form: a `rows cols nnz` header, then `r c value` lines
    /// (0-based indices, row-major order).
    pub fn to_triplet_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.rows, self.cols, self.nnz());
        for i in 0..self.rows {
            for (j, &v) in self.row(i).iter().enumerate() {
                if v != 0 {
                    let _ = writeln!(s, "{i} {j} {v}");
                }
            }
        }
        s
    }

    pub fn write_text<W: Write>(&self, mut w: W, sparse: bool) -> Result<(), LinalgError> {
        let text = if sparse { self.to_triplet_text() } else { self.to_text() };
        w.write_all(text.as_bytes())?;
        Ok(())
    }

    /// Parses either text form; a two-number header means dense, three means
    /// triplets.
    pub fn from_text(text: &str) -> Result<IntMatrix, LinalgError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| LinalgError::Format("empty input".into()))?;
        let head = parse_numbers(header)?;
        match head.as_slice() {
            [rows, cols] => {
                let (rows, cols) = (to_dim(*rows)?, to_dim(*cols)?);
                let mut data = Vec::with_capacity(rows * cols);
                for line in lines {
                    let nums = parse_numbers(line)?;
                    if nums.len() != cols {
                        return Err(LinalgError::Format(format!(
                            "row has {} entries, expected {cols}",
                            nums.len()
                        )));
                    }
                    data.extend(nums);
                }
                IntMatrix::from_vec(rows, cols, data)
                    .map_err(|_| LinalgError::Format("wrong number of rows".into()))
            }
            [rows, cols, nnz] => {
                let (rows, cols, nnz) = (to_dim(*rows)?, to_dim(*cols)?, to_dim(*nnz)?);
                let mut m = IntMatrix::zeros(rows, cols);
                let mut seen = 0;
                for line in lines {
                    match parse_numbers(line)?.as_slice() {
                        [r, c, v] => {
                            let (r, c) = (to_dim(*r)?, to_dim(*c)?);
                            if r >= rows || c >= cols {
                                return Err(LinalgError::Format(format!("index ({r},{c}) out of range")));
                            }
                            m.set(r, c, *v);
                            seen += 1;
                        }
                        _ => return Err(LinalgError::Format(format!("bad triplet line {line:?}"))),
                    }
                }
                if seen != nnz {
                    return Err(LinalgError::Format(format!("header says {nnz} entries, found {seen}")));
                }
                Ok(m)
            }
            _ => Err(LinalgError::Format(format!("bad header {header:?}"))),
        }
    }

    pub fn read_text<R: BufRead>(mut r: R) -> Result<IntMatrix, LinalgError> {
        let mut s = String::new();
        r.read_to_string(&mut s)?;
        Self::from_text(&s)
    }
}

fn parse_numbers(line: &str) -> Result<Vec<i64>, LinalgError> {
    line.split_whitespace()
        .map(|t| t.parse::<i64>().map_err(|_| LinalgError::Format(format!("bad integer {t:?}"))))
        .collect()
}

fn to_dim(x: i64) -> Result<usize, LinalgError> {
    usize::try_from(x).map_err(|_| LinalgError::Format(format!("negative dimension {x}")))
}
