//! Dense exact linear algebra over a [`Field`]: reduced row echelon form,
//! rank, kernels, and canonical subspace algebra.
//!
//! Matrices are stored row-major. Subspaces are kept in reduced row echelon
//! form with no zero rows, so subspace equality is structural equality.

use thiserror::Error;

use crate::field::Field;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    entries: Vec<F::Elem>,
}

/// Result of reduced row echelon elimination.
#[derive(Debug, Clone)]
pub struct Rref<F: Field> {
    pub matrix: Matrix<F>,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, entries: Vec<F::Elem>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        Self { field, rows, cols, entries }
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let entries = vec![field.zero(); rows * cols];
        Self { field, rows, cols, entries }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            let one = m.field.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>, cols: usize) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            entries.extend(r);
        }
        Self { field, rows: n, cols, entries }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.field.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Vertical concatenation; both operands must have the same column count.
    pub fn stack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "stack requires equal widths");
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Self {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let f = &self.field;
        let mut out = Self::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = f.mul(a, other.get(k, j));
                    let cur = f.add(out.get(i, j), &prod);
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols, "vector length must equal column count");
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for j in 0..self.cols {
                    acc = f.add(&acc, &f.mul(self.get(i, j), &v[j]));
                }
                acc
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form by Gaussian elimination with first-nonzero
    /// pivoting; exact fields need no pivot-magnitude strategy.
    pub fn rref(&self) -> Rref<F> {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut rank = 0usize;
        for col in 0..m.cols {
            let Some(pivot) = (rank..m.rows).find(|&i| !f.is_zero(m.get(i, col))) else {
                continue;
            };
            m.swap_rows(rank, pivot);
            let pinv = f.inv(m.get(rank, col)).expect("pivot is nonzero");
            for j in col..m.cols {
                let v = f.mul(m.get(rank, j), &pinv);
                m.set(rank, j, v);
            }
            for i in 0..m.rows {
                if i == rank || f.is_zero(m.get(i, col)) {
                    continue;
                }
                let factor = m.get(i, col).clone();
                for j in col..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(rank, j)));
                    m.set(i, j, v);
                }
            }
            pivot_cols.push(col);
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        Rref { matrix: m, rank, pivot_cols }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Kernel of the linear map `v -> m*v`, as a canonical subspace of the
    /// column-coordinate space.
    pub fn kernel_basis(&self) -> Subspace<F> {
        let f = self.field.clone();
        let rr = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &rr.pivot_cols {
            is_pivot[c] = true;
        }
        let mut rows = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (i, &pc) in rr.pivot_cols.iter().enumerate() {
                v[pc] = f.neg(rr.matrix.get(i, free));
            }
            rows.push(v);
        }
        let cols = self.cols;
        Subspace::from_spanning_rows(Matrix::from_rows(f, rows, cols))
    }

    /// Determinant by forward elimination, tracking row swaps and pivots.
    pub fn det(&self) -> F::Elem {
        assert_eq!(self.rows, self.cols, "determinant needs a square matrix");
        let f = self.field.clone();
        let n = self.rows;
        let mut m = self.clone();
        let mut acc = f.one();
        let mut negate = false;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&i| !f.is_zero(m.get(i, col))) else {
                return f.zero();
            };
            if pivot != col {
                m.swap_rows(col, pivot);
                negate = !negate;
            }
            let p = m.get(col, col).clone();
            acc = f.mul(&acc, &p);
            let pinv = f.inv(&p).expect("pivot is nonzero");
            for i in col + 1..n {
                if f.is_zero(m.get(i, col)) {
                    continue;
                }
                let factor = f.mul(m.get(i, col), &pinv);
                for j in col..n {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(col, j)));
                    m.set(i, j, v);
                }
            }
        }
        if negate {
            f.neg(&acc)
        } else {
            acc
        }
    }
}

/// A linear subspace of coordinate space, stored as an RREF basis with no
/// zero rows. Two subspaces are equal iff their stored bases are identical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace<F: Field> {
    ambient_dim: usize,
    basis: Matrix<F>,
    pivot_cols: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: F, ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Matrix::zeros(field, 0, ambient_dim),
            pivot_cols: Vec::new(),
        }
    }

    pub fn full(field: F, ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Matrix::identity(field, ambient_dim),
            pivot_cols: (0..ambient_dim).collect(),
        }
    }

    /// Canonical subspace spanned by the rows of `m`.
    pub fn from_spanning_rows(m: Matrix<F>) -> Self {
        let rr = m.rref();
        let rank = rr.rank;
        let cols = m.cols();
        let rows: Vec<Vec<F::Elem>> = (0..rank).map(|i| rr.matrix.row(i).to_vec()).collect();
        Self {
            ambient_dim: cols,
            basis: Matrix::from_rows(m.field().clone(), rows, cols),
            pivot_cols: rr.pivot_cols,
        }
    }

    pub fn field(&self) -> &F {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<F::Elem>> {
        self.basis.row_vecs()
    }

    fn check_ambient(&self, other: &Self) -> Result<(), LinalgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_ambient(other)?;
        Ok(Self::from_spanning_rows(self.basis.stack(&other.basis)))
    }

    /// Intersection via the double annihilator: the vectors orthogonal to
    /// both annihilators span exactly the common subspace.
    pub fn intersect(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_ambient(other)?;
        let ann_a = self.basis.kernel_basis();
        let ann_b = other.basis.kernel_basis();
        let stacked = ann_a.basis.stack(&ann_b.basis);
        Ok(stacked.kernel_basis())
    }

    /// Remainder of `v` after eliminating all pivot coordinates against the
    /// basis; the zero vector iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.ambient_dim, "vector/ambient mismatch");
        let f = self.field().clone();
        let mut w = v.to_vec();
        for (i, &pc) in self.pivot_cols.iter().enumerate() {
            if f.is_zero(&w[pc]) {
                continue;
            }
            let c = w[pc].clone();
            for j in pc..self.ambient_dim {
                let t = f.mul(&c, self.basis.get(i, j));
                w[j] = f.sub(&w[j], &t);
            }
        }
        w
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let f = self.field();
        self.reduce(v).iter().all(|x| f.is_zero(x))
    }

    pub fn contains_subspace(&self, other: &Self) -> Result<bool, LinalgError> {
        self.check_ambient(other)?;
        Ok((0..other.dim()).all(|i| self.contains(other.basis.row(i))))
    }
}
