//! Dense exact linear algebra over the ground field.
//!
//! Every routine eliminates with the same fixed pivot rule (first nonzero entry, scanning rows
//! top to bottom, columns left to right), so solutions and certificates are reproducible.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::scalar::{GroundField, Scalar};

/// A matrix between two labelled bases. Column `j` is the image of source generator `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMatrix {
    field: GroundField,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    entries: Vec<Vec<Scalar>>,
}

impl BlockMatrix {
    pub fn zeros(field: GroundField, row_labels: Vec<String>, col_labels: Vec<String>) -> Self {
        let entries = vec![vec![field.zero(); col_labels.len()]; row_labels.len()];
        BlockMatrix {
            field,
            row_labels,
            col_labels,
            entries,
        }
    }

    pub fn from_rows(
        field: GroundField,
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        entries: Vec<Vec<Scalar>>,
    ) -> Result<Self> {
        if entries.len() != row_labels.len() || entries.iter().any(|r| r.len() != col_labels.len()) {
            return Err(Error::DimensionMismatch(format!(
                "expected {}x{} entries",
                row_labels.len(),
                col_labels.len()
            )));
        }
        Ok(BlockMatrix {
            field,
            row_labels,
            col_labels,
            entries,
        })
    }

    /// Unlabelled matrix, handy for tests.
    pub fn from_grid(field: GroundField, entries: Vec<Vec<Scalar>>) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        Self::from_rows(
            field,
            (0..rows).map(|i| format!("r{i}")).collect(),
            (0..cols).map(|j| format!("c{j}")).collect(),
            entries,
        )
    }

    /// Matrix whose column `j` holds the coordinates of `images[j]` against `rows`.
    pub fn from_images<K: Ord>(
        field: GroundField,
        rows: &[K],
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        images: &[LinComb<K>],
    ) -> Result<Self> {
        let mut m = Self::zeros(field, row_labels, col_labels);
        if m.nrows() != rows.len() || m.ncols() != images.len() {
            return Err(Error::DimensionMismatch("labels do not match the bases".into()));
        }
        for (j, image) in images.iter().enumerate() {
            for (i, c) in coordinates(field, rows, image)?.into_iter().enumerate() {
                m.entries[i][j] = c;
            }
        }
        Ok(m)
    }

    pub fn identity(field: GroundField, n: usize) -> Self {
        let mut m = Self::from_grid(field, vec![vec![field.zero(); n]; n]).expect("square");
        for i in 0..n {
            m.entries[i][i] = field.one();
        }
        m
    }

    pub fn field(&self) -> GroundField {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i][j] = v;
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Scalar::is_zero)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.ncols() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.ncols()
            )));
        }
        Ok(self
            .entries
            .iter()
            .map(|row| dot(self.field, row, v))
            .collect())
    }

    /// `yᵀ M` for a row vector `y`.
    pub fn left_mul(&self, y: &[Scalar]) -> Result<Vec<Scalar>> {
        if y.len() != self.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "row vector of length {} against {} rows",
                y.len(),
                self.nrows()
            )));
        }
        let mut out = vec![self.field.zero(); self.ncols()];
        for (yi, row) in y.iter().zip(&self.entries) {
            if yi.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(row) {
                *o = &*o + &(yi * a);
            }
        }
        Ok(out)
    }

    /// `self ∘ rhs`
    pub fn compose(&self, rhs: &BlockMatrix) -> Result<BlockMatrix> {
        if self.ncols() != rhs.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {}x{} with {}x{}",
                self.nrows(),
                self.ncols(),
                rhs.nrows(),
                rhs.ncols()
            )));
        }
        let mut out = BlockMatrix::zeros(self.field, self.row_labels.clone(), rhs.col_labels.clone());
        for i in 0..self.nrows() {
            for j in 0..rhs.ncols() {
                let mut acc = self.field.zero();
                for k in 0..self.ncols() {
                    let a = &self.entries[i][k];
                    if !a.is_zero() {
                        acc = acc + a * &rhs.entries[k][j];
                    }
                }
                out.entries[i][j] = acc;
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.entries.clone();
        row_reduce(&mut rows, self.ncols(), None).len()
    }

    /// Basis of the right null space, one vector per free column, in column order.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let n = self.ncols();
        let mut rows = self.entries.clone();
        let pivots = row_reduce(&mut rows, n, None);
        let mut is_pivot = vec![None; n];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        let mut basis = Vec::new();
        for free in (0..n).filter(|&c| is_pivot[c].is_none()) {
            let mut v = vec![self.field.zero(); n];
            v[free] = self.field.one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -&rows[r][free];
            }
            basis.push(v);
        }
        basis
    }
}

fn dot(field: GroundField, a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .filter(|(x, _)| !x.is_zero())
        .fold(field.zero(), |acc, (x, y)| acc + x * y)
}

/// Reduces `rows` to reduced row echelon form on the first `pivot_cols` columns, applying the
/// same operations to `transform` when given. Returns the pivot column of each leading row.
fn row_reduce(
    rows: &mut [Vec<Scalar>],
    pivot_cols: usize,
    mut transform: Option<&mut Vec<Vec<Scalar>>>,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        if let Some(t) = transform.as_deref_mut() {
            t.swap(r, p);
        }
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        scale_row(&mut rows[r], &inv);
        if let Some(t) = transform.as_deref_mut() {
            scale_row(&mut t[r], &inv);
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let factor = rows[i][c].clone();
            let (src, dst) = pick(rows, r, i);
            axpy(dst, src, &factor);
            if let Some(t) = transform.as_deref_mut() {
                let (src, dst) = pick(t, r, i);
                axpy(dst, src, &factor);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn pick(rows: &mut [Vec<Scalar>], src: usize, dst: usize) -> (&Vec<Scalar>, &mut Vec<Scalar>) {
    if src < dst {
        let (a, b) = rows.split_at_mut(dst);
        (&a[src], &mut b[0])
    } else {
        let (a, b) = rows.split_at_mut(src);
        (&b[0], &mut a[dst])
    }
}

fn scale_row(row: &mut [Scalar], c: &Scalar) {
    for x in row.iter_mut() {
        if !x.is_zero() {
            *x = &*x * c;
        }
    }
}

/// `dst -= factor * src`
fn axpy(dst: &mut [Scalar], src: &[Scalar], factor: &Scalar) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = &*d - &(factor * s);
        }
    }
}

/// Coordinates of `v` against the basis `rows`; fails if `v` leaves its span.
pub fn coordinates<K: Ord>(field: GroundField, rows: &[K], v: &LinComb<K>) -> Result<Vec<Scalar>> {
    let index: BTreeMap<&K, usize> = rows.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut out = vec![field.zero(); rows.len()];
    for (k, c) in v {
        let Some(&i) = index.get(k) else {
            return Err(Error::DimensionMismatch("vector has a term outside the basis".into()));
        };
        out[i] = c.clone();
    }
    Ok(out)
}

/// Proof that `M x = v` has no solution: a row vector `y` with `yᵀM = 0` and `yᵀv ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InconsistencyCertificate {
    /// `[M | v]` after elimination.
    pub reduced_augmented: Vec<Vec<Scalar>>,
    pub left_null: Vec<Scalar>,
    pub rank: usize,
    pub augmented_rank: usize,
}

impl InconsistencyCertificate {
    pub fn verify(&self, m: &BlockMatrix, v: &[Scalar]) -> bool {
        let Ok(ym) = m.left_mul(&self.left_null) else {
            return false;
        };
        if v.len() != self.left_null.len() {
            return false;
        }
        ym.iter().all(Scalar::is_zero) && !dot(m.field(), &self.left_null, v).is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    /// The solution obtained with all free variables set to zero.
    Solved(Vec<Scalar>),
    Inconsistent(InconsistencyCertificate),
}

impl SolveOutcome {
    pub fn solution(&self) -> Option<&[Scalar]> {
        match self {
            SolveOutcome::Solved(x) => Some(x),
            SolveOutcome::Inconsistent(_) => None,
        }
    }
}

pub fn linear_solve(m: &BlockMatrix, v: &[Scalar]) -> Result<SolveOutcome> {
    if v.len() != m.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "target of length {} against {} rows",
            v.len(),
            m.nrows()
        )));
    }
    let field = m.field();
    let n = m.ncols();
    let mut rows: Vec<Vec<Scalar>> = m
        .entries
        .iter()
        .zip(v)
        .map(|(row, vi)| {
            let mut r = row.clone();
            r.push(vi.clone());
            r
        })
        .collect();
    let mut transform = BlockMatrix::identity(field, m.nrows()).entries;
    let pivots = row_reduce(&mut rows, n, Some(&mut transform));
    let rank = pivots.len();
    if let Some(bad) = (rank..rows.len()).find(|&i| !rows[i][n].is_zero()) {
        return Ok(SolveOutcome::Inconsistent(InconsistencyCertificate {
            left_null: transform[bad].clone(),
            reduced_augmented: rows,
            rank,
            augmented_rank: rank + 1,
        }));
    }
    let mut x = vec![field.zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = rows[r][n].clone();
    }
    Ok(SolveOutcome::Solved(x))
}

/// `dim ker(current) − rank(next)` for consecutive differential blocks
/// `next: C_{n+1} → C_n` and `current: C_n → C_{n−1}`.
pub fn homology_dim(next: &BlockMatrix, current: &BlockMatrix) -> Result<usize> {
    if next.nrows() != current.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "incoming block has {} rows but outgoing block has {} columns",
            next.nrows(),
            current.ncols()
        )));
    }
    if !current.compose(next)?.is_zero() {
        return Err(Error::CompositionNonzero);
    }
    Ok(current.ncols() - current.rank() - next.rank())
}
