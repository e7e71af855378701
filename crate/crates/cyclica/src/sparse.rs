//! Sparse matrices over exact rationals.
//!
//! Entries are kept per-row, sorted by column, with no explicit zeros, so the
//! row-major entry stream is deterministic and reports are reproducible
//! byte-for-byte. Elimination is plain rational Gaussian elimination with
//! sparsity-aware pivoting (fewest nonzeros first); every result is exact.

use crate::scalar::Scalar;
use num::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("image escapes codomain: {context}")]
    ImageEscapesCodomain { context: String },
}

/// Sparse matrix acting on column vectors: `rows × cols`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseRow>,
}

/// One matrix row: `(column, value)` pairs sorted by column, values nonzero.
pub type SparseRow = Vec<(usize, Scalar)>;

/// `dst += factor * src`, merging sorted rows and dropping zeros.
pub fn row_axpy(dst: &SparseRow, src: &SparseRow, factor: &Scalar) -> SparseRow {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        let take_dst = j >= src.len() || (i < dst.len() && dst[i].0 < src[j].0);
        let take_src = i >= dst.len() || (j < src.len() && src[j].0 < dst[i].0);
        if take_dst {
            out.push(dst[i].clone());
            i += 1;
        } else if take_src {
            let v = factor * &src[j].1;
            if !v.is_zero() {
                out.push((src[j].0, v));
            }
            j += 1;
        } else {
            let v = &dst[i].1 + factor * &src[j].1;
            if !v.is_zero() {
                out.push((dst[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn row_lookup(row: &SparseRow, col: usize) -> Option<&Scalar> {
    row.binary_search_by_key(&col, |e| e.0)
        .ok()
        .map(|i| &row[i].1)
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: n,
            data: (0..n).map(|i| vec![(i, Scalar::one())]).collect(),
        }
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed and
    /// zeros dropped, so the result is always in normal form.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let mut per_row: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            assert!(
                r < rows && c < cols,
                "triplet ({r},{c}) out of range {rows}x{cols}"
            );
            if !v.is_zero() {
                per_row[r].push((c, v));
            }
        }
        let data = per_row
            .into_iter()
            .map(|mut row| {
                row.sort_by_key(|e| e.0);
                let mut out: SparseRow = Vec::with_capacity(row.len());
                for (c, v) in row {
                    match out.last_mut() {
                        Some((lc, lv)) if *lc == c => *lv += v,
                        _ => out.push((c, v)),
                    }
                }
                out.retain(|(_, v)| !v.is_zero());
                out
            })
            .collect();
        SparseMatrix { rows, cols, data }
    }

    /// Builds from per-row entry lists; entries within a row may be unsorted
    /// and may repeat (they are merged), zeros are dropped.
    pub fn from_rows(cols: usize, rows: Vec<SparseRow>) -> Self {
        let nrows = rows.len();
        let data = rows
            .into_iter()
            .map(|mut row| {
                row.sort_by_key(|e| e.0);
                let mut out: SparseRow = Vec::with_capacity(row.len());
                for (c, v) in row {
                    debug_assert!(c < cols);
                    match out.last_mut() {
                        Some((lc, lv)) if *lc == c => *lv += v,
                        _ => out.push((c, v)),
                    }
                }
                out.retain(|(_, v)| !v.is_zero());
                out
            })
            .collect();
        SparseMatrix {
            rows: nrows,
            cols,
            data,
        }
    }

    /// Convenience constructor from dense integer rows (tests, registry data).
    pub fn from_int_rows(rows: Vec<Vec<i64>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        SparseMatrix::from_triplets(
            nrows,
            ncols,
            rows.into_iter().enumerate().flat_map(|(r, row)| {
                assert_eq!(row.len(), ncols, "ragged rows");
                row.into_iter()
                    .enumerate()
                    .map(move |(c, v)| (r, c, crate::scalar::int(v)))
            }),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &SparseRow {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        row_lookup(&self.data[r], c)
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    /// Row-major entry stream, deterministic.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut per_row: Vec<SparseRow> = vec![Vec::new(); self.cols];
        for (r, c, v) in self.entries() {
            per_row[c].push((r, v.clone()));
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            data: per_row,
        }
    }

    pub fn scale(&self, factor: &Scalar) -> SparseMatrix {
        if factor.is_zero() {
            return SparseMatrix::zero(self.rows, self.cols);
        }
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|row| row.iter().map(|(c, v)| (*c, factor * v)).collect())
                .collect(),
        }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in add"
        );
        let one = Scalar::one();
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| row_axpy(a, b, &one))
                .collect(),
        }
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        let minus_one = -Scalar::one();
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in sub"
        );
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| row_axpy(a, b, &minus_one))
                .collect(),
        }
    }

    /// `self * other` (composition: apply `other` first when both act on
    /// column vectors).
    pub fn matmul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matmul");
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: SparseRow = Vec::new();
                for (k, v) in row {
                    acc = row_axpy(&acc, &other.data[*k], v);
                }
                acc
            })
            .collect();
        SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    /// Applies the matrix to a sparse column vector.
    pub fn apply(&self, vec: &SparseRow) -> SparseRow {
        self.transpose_apply_rows(vec)
    }

    fn transpose_apply_rows(&self, vec: &SparseRow) -> SparseRow {
        // y[r] = Σ_c m[r][c] v[c]; iterate rows, dot with vec
        let mut out = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut acc = Scalar::zero();
            let (mut i, mut j) = (0, 0);
            while i < row.len() && j < vec.len() {
                use std::cmp::Ordering::*;
                match row[i].0.cmp(&vec[j].0) {
                    Less => i += 1,
                    Greater => j += 1,
                    Equal => {
                        acc += &row[i].1 * &vec[j].1;
                        i += 1;
                        j += 1;
                    }
                }
            }
            if !acc.is_zero() {
                out.push((r, acc));
            }
        }
        out
    }

    /// Stacks matrices vertically; all must share the column count.
    pub fn vstack(parts: &[&SparseMatrix]) -> SparseMatrix {
        assert!(!parts.is_empty());
        let cols = parts[0].cols;
        let mut data = Vec::new();
        for p in parts {
            assert_eq!(p.cols, cols, "column mismatch in vstack");
            data.extend(p.data.iter().cloned());
        }
        SparseMatrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    /// Incremental forward elimination: reduces each row against the pivots
    /// found so far; a surviving row becomes the pivot of its leading column
    /// (normalized to 1). Returns pivots keyed by column.
    fn forward_eliminate(&self) -> Vec<Option<SparseRow>> {
        let mut pivot_of_col: Vec<Option<SparseRow>> = vec![None; self.cols];
        for row in &self.data {
            let mut row = row.clone();
            while let Some(&(lead, _)) = row.first() {
                match &pivot_of_col[lead] {
                    Some(pivot) => {
                        let factor = -row[0].1.clone();
                        row = row_axpy(&row, pivot, &factor);
                    }
                    None => {
                        let inv = row[0].1.clone().recip();
                        if !inv.is_one() {
                            for e in row.iter_mut() {
                                e.1 *= &inv;
                            }
                        }
                        pivot_of_col[lead] = Some(row);
                        break;
                    }
                }
            }
        }
        pivot_of_col
    }

    /// Exact rank over the rationals (forward elimination only).
    pub fn rank(&self) -> usize {
        self.forward_eliminate()
            .iter()
            .filter(|p| p.is_some())
            .count()
    }

    /// Solves `self · X = rhs` exactly, returning `None` when inconsistent.
    /// When the system is underdetermined the free variables are set to zero.
    pub fn solve_columns(&self, rhs: &SparseMatrix) -> Option<SparseMatrix> {
        assert_eq!(self.rows, rhs.rows, "shape mismatch in solve_columns");
        let augmented = SparseMatrix {
            rows: self.rows,
            cols: self.cols + rhs.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| {
                    let mut row = a.clone();
                    row.extend(b.iter().map(|(c, v)| (c + self.cols, v.clone())));
                    row
                })
                .collect(),
        };
        let (rows, pivots) = augmented.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None; // a pivot in the right-hand block means inconsistency
        }
        let mut triplets = Vec::new();
        for (i, &p) in pivots.iter().enumerate() {
            for (c, v) in &rows[i] {
                if *c >= self.cols {
                    triplets.push((p, c - self.cols, v.clone()));
                }
            }
        }
        Some(SparseMatrix::from_triplets(self.cols, rhs.cols, triplets))
    }

    /// Reduced row echelon form: returns `(rref rows, pivot columns)`. Pivot
    /// entries are 1 with zeros above and below, rows ordered by pivot column,
    /// zero rows dropped. RREF is unique for a given row space, so the output
    /// is the canonical representative.
    pub fn rref(&self) -> (Vec<SparseRow>, Vec<usize>) {
        let mut pivot_of_col = self.forward_eliminate();
        let pivot_cols: Vec<usize> = (0..self.cols)
            .filter(|&c| pivot_of_col[c].is_some())
            .collect();
        // back-substitute in reverse pivot order: each row is reduced against
        // the already-fully-reduced later pivot rows in one pass
        for idx in (0..pivot_cols.len()).rev() {
            let col = pivot_cols[idx];
            let mut row = pivot_of_col[col].take().expect("pivot present");
            loop {
                let offending = row
                    .iter()
                    .find(|(c, _)| *c > col && pivot_of_col[*c].is_some())
                    .map(|(c, v)| (*c, v.clone()));
                let Some((c, v)) = offending else { break };
                let pivot = pivot_of_col[c].as_ref().expect("pivot present");
                row = row_axpy(&row, pivot, &-v);
            }
            pivot_of_col[col] = Some(row);
        }
        let rows: Vec<SparseRow> = pivot_cols
            .iter()
            .map(|&c| pivot_of_col[c].take().expect("pivot present"))
            .collect();
        (rows, pivot_cols)
    }
}
