//! Dense exact matrices, reduced row echelon form and subspace arithmetic.
//!
//! Pivoting always takes the first nonzero entry, so every routine here is
//! deterministic. Subspaces are stored as the nonzero rows of the RREF of
//! their generators, hence equal subspaces have identical representations.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldScalar};

pub type Vector = Vec<FieldScalar>;

/// A dense `rows x cols` matrix over one field, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldDescriptor,
    data: Vec<FieldScalar>,
}

/// Output of [`Matrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivot_cols: Vec<usize>,
    pub rank: usize,
}

impl Matrix {
    pub fn zeros(field: FieldDescriptor, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldDescriptor, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must share one length and
    /// every entry must belong to `field`.
    pub fn from_rows(field: FieldDescriptor, rows: Vec<Vector>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::ShapeMismatch {
                    left: (nrows, cols),
                    right: (1, row.len()),
                });
            }
            if row.iter().any(|x| x.field() != field) {
                return Err(Error::FieldMismatch);
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: nrows,
            cols,
            field,
            data,
        })
    }

    /// Row-major integer entries, reduced into `field`.
    ///
    /// # Panics
    ///
    /// If `entries.len() != rows * cols`.
    pub fn from_i64(field: FieldDescriptor, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        Matrix {
            rows,
            cols,
            field,
            data: entries.iter().map(|&v| field.from_i64(v)).collect(),
        }
    }

    /// Assembles a matrix whose columns are `columns`, each of length `rows`.
    pub fn from_columns(field: FieldDescriptor, rows: usize, columns: &[Vector]) -> Self {
        let cols = columns.len();
        let mut m = Self::zeros(field, rows, cols);
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length does not match row count");
            for (i, x) in c.iter().enumerate() {
                m.data[i * cols + j] = x.clone();
            }
        }
        m
    }

    /// The `n x n` nilpotent Jordan block with ones on the subdiagonal.
    pub fn jordan_block(field: FieldDescriptor, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 1..n {
            m.data[i * n + i - 1] = field.one();
        }
        m
    }

    /// Diagonal matrix from integer entries.
    pub fn diag_i64(field: FieldDescriptor, diag: &[i64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(field, n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * n + i] = field.from_i64(d);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn entries(&self) -> &[FieldScalar] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldScalar {
        &self.data[i * self.cols + j]
    }

    /// # Panics
    ///
    /// If `value` belongs to a different field or the index is out of range.
    pub fn set(&mut self, i: usize, j: usize, value: FieldScalar) {
        assert_eq!(value.field(), self.field, "entry from a different field");
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[FieldScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldScalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(self.with_data(data))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(self.with_data(data))
    }

    /// Multiplies every entry by `c`.
    pub fn scale(&self, c: &FieldScalar) -> Result<Matrix> {
        if c.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        let data = self.data.iter().map(|a| a * c).collect();
        Ok(self.with_data(data))
    }

    fn with_data(&self, data: Vec<FieldScalar>) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data,
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[FieldScalar]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch {
                left: self.shape(),
                right: (v.len(), 1),
            });
        }
        let mut out = vec![self.field.zero(); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for (a, x) in self.row(i).iter().zip(v) {
                if !a.is_zero() && !x.is_zero() {
                    *o = &*o + &(a * x);
                }
            }
        }
        Ok(out)
    }

    /// Product of a nonempty or empty chain; an empty chain is `I_n`.
    pub fn product<'a, I>(field: FieldDescriptor, n: usize, factors: I) -> Result<Matrix>
    where
        I: IntoIterator<Item = &'a Matrix>,
    {
        factors
            .into_iter()
            .try_fold(Matrix::identity(field, n), |acc, f| acc.mul(f))
    }

    pub fn pow(&self, k: u32) -> Result<Matrix> {
        let n = self.require_square()?;
        let mut acc = Matrix::identity(self.field, n);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn is_idempotent(&self) -> bool {
        self.is_square() && self.mul(self).is_ok_and(|sq| &sq == self)
    }

    pub fn is_square_zero(&self) -> bool {
        self.is_square() && self.mul(self).is_ok_and(|sq| sq.is_zero())
    }

    pub fn is_nilpotent(&self) -> bool {
        self.is_square() && self.pow(self.rows as u32).is_ok_and(|p| p.is_zero())
    }

    /// Reduced row echelon form. Pivots are the first nonzero entry found
    /// scanning columns left to right and rows top to bottom.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inverse().expect("pivot is nonzero");
            m.scale_row(row, &inv);
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let f = m.get(r, col).clone();
                    m.sub_row_multiple(r, row, &f);
                }
            }
            pivot_cols.push(col);
            row += 1;
        }
        Rref {
            reduced: m,
            rank: pivot_cols.len(),
            pivot_cols,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn scale_row(&mut self, r: usize, c: &FieldScalar) {
        for x in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *x = &*x * c;
        }
    }

    // row[target] -= f * row[source]
    fn sub_row_multiple(&mut self, target: usize, source: usize, f: &FieldScalar) {
        for j in 0..self.cols {
            let s = &self.data[source * self.cols + j];
            if s.is_zero() {
                continue;
            }
            let delta = f * s;
            let t = &mut self.data[target * self.cols + j];
            *t = &*t - &delta;
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Standard kernel basis: one vector per free column, in column order,
    /// with a 1 in that free position and back-substituted pivot entries.
    pub fn kernel_vectors(&self) -> Vec<Vector> {
        let Rref {
            reduced,
            pivot_cols,
            ..
        } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivot_cols {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&j| !is_pivot[j])
            .map(|free| {
                let mut v = vec![self.field.zero(); self.cols];
                v[free] = self.field.one();
                for (r, &p) in pivot_cols.iter().enumerate() {
                    v[p] = -reduced.get(r, free);
                }
                v
            })
            .collect()
    }

    pub fn nullspace_basis(&self) -> SubspaceBasis {
        SubspaceBasis::span(self.field, self.cols, &self.kernel_vectors())
    }

    /// The pivot columns of `self`, which form a basis of its range.
    pub fn pivot_columns(&self) -> Vec<Vector> {
        self.rref().pivot_cols.iter().map(|&j| self.column(j)).collect()
    }

    pub fn colspace_basis(&self) -> SubspaceBasis {
        SubspaceBasis::span(self.field, self.rows, &self.pivot_columns())
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.require_square()?;
        let aug = self.hstack(&Matrix::identity(self.field, n))?;
        let Rref {
            reduced,
            rank,
            pivot_cols,
        } = aug.rref();
        if n > 0 && (rank < n || pivot_cols[n - 1] != n - 1) {
            return Err(Error::SingularMatrix);
        }
        Ok(reduced.submatrix(0, n, n, n))
    }

    /// `S * M * S^{-1}`.
    pub fn conjugate(s: &Matrix, m: &Matrix) -> Result<Matrix> {
        let inv = s.inverse()?;
        s.mul(m)?.mul(&inv)
    }

    /// Block diagonal sum. The empty list gives the 0x0 matrix.
    pub fn block_diag(field: FieldDescriptor, parts: &[Matrix]) -> Result<Matrix> {
        if parts.iter().any(|p| p.field != field) {
            return Err(Error::FieldMismatch);
        }
        let rows = parts.iter().map(Matrix::rows).sum();
        let cols = parts.iter().map(Matrix::cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            for i in 0..p.rows {
                for j in 0..p.cols {
                    out.data[(r0 + i) * cols + c0 + j] = p.get(i, j).clone();
                }
            }
            r0 += p.rows;
            c0 += p.cols;
        }
        Ok(out)
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(Matrix {
            rows: self.rows,
            cols,
            field: self.field,
            data,
        })
    }

    /// # Panics
    ///
    /// If the window exceeds the matrix.
    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "window out of range");
        let mut data = Vec::with_capacity(rows * cols);
        for i in r0..r0 + rows {
            data.extend_from_slice(&self.row(i)[c0..c0 + cols]);
        }
        Matrix {
            rows,
            cols,
            field: self.field,
            data,
        }
    }

    /// The linear map sending `domain[i]` to `images[i]`, where `domain` is a
    /// basis of the whole space.
    pub fn from_basis_images(
        field: FieldDescriptor,
        n: usize,
        domain: &[Vector],
        images: &[Vector],
    ) -> Result<Matrix> {
        if domain.len() != n || images.len() != n {
            return Err(Error::BadParameters(alloc::format!(
                "need {n} basis vectors and images, got {} and {}",
                domain.len(),
                images.len()
            )));
        }
        let basis = Matrix::from_columns(field, n, domain);
        let targets = Matrix::from_columns(field, n, images);
        targets.mul(&basis.inverse()?)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}]{}x{} [", self.field, self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "]")
    }
}

pub fn unit_vector(field: FieldDescriptor, n: usize, i: usize) -> Vector {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

/// Incrementally maintained echelon form, for independence tests while
/// extending partial bases.
#[derive(Debug, Clone)]
pub(crate) struct Echelon {
    rows: Vec<(usize, Vector)>,
}

impl Echelon {
    pub(crate) fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    pub(crate) fn with(vectors: &[Vector]) -> Self {
        let mut e = Self::new();
        for v in vectors {
            e.insert(v);
        }
        e
    }

    pub(crate) fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[FieldScalar]) -> Vector {
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            if !w[*p].is_zero() {
                let f = w[*p].clone();
                for (x, r) in w.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x = &*x - &(&f * r);
                    }
                }
            }
        }
        w
    }

    pub(crate) fn contains(&self, v: &[FieldScalar]) -> bool {
        self.reduce(v).iter().all(FieldScalar::is_zero)
    }

    /// Adds `v` if it is independent of the current span; reports whether it was.
    pub(crate) fn insert(&mut self, v: &[FieldScalar]) -> bool {
        let w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inverse().expect("nonzero pivot");
        let w: Vector = w.iter().map(|x| x * &inv).collect();
        self.rows.push((p, w));
        true
    }
}

/// Extends `partial` with vectors from `candidates`, in order, skipping any
/// that are dependent. Stops once `target_dim` total vectors are reached.
pub(crate) fn extend_independent<'a, I>(
    partial: &[Vector],
    candidates: I,
    target_dim: usize,
) -> Vec<Vector>
where
    I: IntoIterator<Item = &'a Vector>,
{
    let mut ech = Echelon::with(partial);
    let mut added = Vec::new();
    for c in candidates {
        if ech.dim() >= target_dim {
            break;
        }
        if ech.insert(c) {
            added.push(c.clone());
        }
    }
    added
}

/// Extends `partial` to a basis of the whole space by standard basis vectors
/// in ascending index order. Returns only the added vectors.
pub(crate) fn complete_with_units(
    field: FieldDescriptor,
    n: usize,
    partial: &[Vector],
) -> Vec<Vector> {
    let units: Vec<Vector> = (0..n).map(|i| unit_vector(field, n, i)).collect();
    extend_independent(partial, &units, n)
}

/// A subspace of `field^ambient_dim`, represented canonically by the nonzero
/// rows of the RREF of any generating set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubspaceBasis {
    field: FieldDescriptor,
    ambient_dim: usize,
    vectors: Vec<Vector>,
}

impl SubspaceBasis {
    pub fn span(field: FieldDescriptor, ambient_dim: usize, generators: &[Vector]) -> Self {
        if generators.is_empty() {
            return Self::zero(field, ambient_dim);
        }
        let rows = Matrix::from_rows(field, generators.to_vec())
            .expect("generators share the ambient dimension and field");
        let Rref { reduced, rank, .. } = rows.rref();
        SubspaceBasis {
            field,
            ambient_dim,
            vectors: (0..rank).map(|i| reduced.row(i).to_vec()).collect(),
        }
    }

    pub fn zero(field: FieldDescriptor, ambient_dim: usize) -> Self {
        SubspaceBasis {
            field,
            ambient_dim,
            vectors: Vec::new(),
        }
    }

    pub fn whole(field: FieldDescriptor, ambient_dim: usize) -> Self {
        let units: Vec<Vector> = (0..ambient_dim)
            .map(|i| unit_vector(field, ambient_dim, i))
            .collect();
        Self::span(field, ambient_dim, &units)
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn contains(&self, v: &[FieldScalar]) -> bool {
        v.len() == self.ambient_dim && Echelon::with(&self.vectors).contains(v)
    }

    fn check_ambient(&self, other: &SubspaceBasis) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch {
                left: self.ambient_dim,
                right: other.ambient_dim,
            });
        }
        Ok(())
    }

    /// `U ∩ V`, from the kernel of the generator matrix `[U | -V]`.
    pub fn intersect(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        self.check_ambient(other)?;
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Ok(Self::zero(self.field, self.ambient_dim));
        }
        let neg_other: Vec<Vector> = other
            .vectors
            .iter()
            .map(|v| v.iter().map(|x| -x).collect())
            .collect();
        let u = Matrix::from_columns(self.field, self.ambient_dim, &self.vectors);
        let w = Matrix::from_columns(self.field, self.ambient_dim, &neg_other);
        let gens = u.hstack(&w)?;
        let common: Vec<Vector> = gens
            .kernel_vectors()
            .iter()
            .map(|sol| u.mul_vec(&sol[..a]).expect("conformable"))
            .collect();
        Ok(Self::span(self.field, self.ambient_dim, &common))
    }

    pub fn sum(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        self.check_ambient(other)?;
        let mut gens = self.vectors.clone();
        gens.extend(other.vectors.iter().cloned());
        Ok(Self::span(self.field, self.ambient_dim, &gens))
    }

    pub fn sum_dim(&self, other: &SubspaceBasis) -> Result<usize> {
        Ok(self.sum(other)?.dim())
    }

    pub fn is_subspace_of(&self, other: &SubspaceBasis) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.field == other.field
            && self.vectors.iter().all(|v| other.contains(v))
    }
}

impl fmt::Debug for SubspaceBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, v) in self.vectors.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "(")?;
            for (j, x) in v.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "}} in dim {}", self.ambient_dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldDescriptor {
        FieldDescriptor::rationals()
    }

    fn gf(p: u64) -> FieldDescriptor {
        FieldDescriptor::prime(p).unwrap()
    }

    fn e(f: FieldDescriptor, n: usize, i: usize) -> Vector {
        unit_vector(f, n, i)
    }

    #[test]
    fn rref_examples() {
        let i3 = Matrix::identity(q(), 3);
        let r = i3.rref();
        assert_eq!(r.reduced, i3);
        assert_eq!(r.pivot_cols, [0, 1, 2]);
        assert_eq!(r.rank, 3);

        let r = Matrix::from_i64(q(), 2, 2, &[1, 2, 2, 4]).rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivot_cols, [0]);
        assert_eq!(r.reduced, Matrix::from_i64(q(), 2, 2, &[1, 2, 0, 0]));

        assert_eq!(Matrix::from_i64(gf(2), 2, 2, &[1, 1, 1, 1]).rank(), 1);
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(Matrix::identity(q(), 3).nullspace_basis().dim(), 0);
        assert_eq!(Matrix::zeros(q(), 2, 2).nullspace_basis().dim(), 2);
        let j2 = Matrix::jordan_block(q(), 2);
        assert_eq!(j2, Matrix::from_i64(q(), 2, 2, &[0, 0, 1, 0]));
        assert_eq!(j2.nullspace_basis().vectors(), [e(q(), 2, 1)]);
        assert_eq!(j2.kernel_vectors(), [e(q(), 2, 1)]);
    }

    #[test]
    fn kernel_vectors_back_substitution_form() {
        // x + 2y + 3z = 0 has free columns 1 and 2.
        let m = Matrix::from_i64(q(), 1, 3, &[1, 2, 3]);
        let f = q();
        let expected = [
            [f.from_i64(-2), f.one(), f.zero()].to_vec(),
            [f.from_i64(-3), f.zero(), f.one()].to_vec(),
        ];
        assert_eq!(m.kernel_vectors(), expected);
        for v in m.kernel_vectors() {
            assert!(m.mul_vec(&v).unwrap().iter().all(FieldScalar::is_zero));
        }
    }

    #[test]
    fn colspace_examples() {
        let f = q();
        assert_eq!(
            Matrix::identity(f, 3).colspace_basis().vectors(),
            [e(f, 3, 0), e(f, 3, 1), e(f, 3, 2)]
        );
        assert_eq!(Matrix::zeros(f, 3, 3).colspace_basis().dim(), 0);
        assert_eq!(
            Matrix::jordan_block(f, 2).colspace_basis().vectors(),
            [e(f, 2, 1)]
        );
    }

    #[test]
    fn intersection_examples() {
        let f = q();
        let u = SubspaceBasis::span(f, 3, &[e(f, 3, 0), e(f, 3, 1)]);
        assert_eq!(u.intersect(&u).unwrap(), u);
        let a = SubspaceBasis::span(f, 3, &[e(f, 3, 0)]);
        let b = SubspaceBasis::span(f, 3, &[e(f, 3, 1)]);
        assert_eq!(a.intersect(&b).unwrap().dim(), 0);
        let v = SubspaceBasis::span(f, 3, &[e(f, 3, 1), e(f, 3, 2)]);
        assert_eq!(u.intersect(&v).unwrap().vectors(), [e(f, 3, 1)]);
        let w = SubspaceBasis::span(f, 2, &[e(f, 2, 1)]);
        assert_eq!(
            u.intersect(&w),
            Err(Error::AmbientMismatch { left: 3, right: 2 })
        );
        assert!(u.sum_dim(&w).is_err());
    }

    #[test]
    fn sum_dim_examples() {
        let f = q();
        let a = SubspaceBasis::span(f, 2, &[e(f, 2, 0)]);
        let b = SubspaceBasis::span(f, 2, &[e(f, 2, 1)]);
        assert_eq!(a.sum_dim(&b).unwrap(), 2);
        assert_eq!(a.sum_dim(&a).unwrap(), 1);
        let g = Matrix::block_diag(f, &[Matrix::jordan_block(f, 2), Matrix::zeros(f, 1, 1)])
            .unwrap();
        let r = g.colspace_basis();
        let n = g.nullspace_basis();
        assert_eq!(r.vectors(), [e(f, 3, 1)]);
        assert_eq!(n.vectors(), [e(f, 3, 1), e(f, 3, 2)]);
        assert_eq!(r.sum_dim(&n).unwrap(), 2);
    }

    #[test]
    fn equal_subspaces_share_representation() {
        let f = q();
        let a = SubspaceBasis::span(f, 2, &[[f.one(), f.one()].to_vec(), e(f, 2, 0)]);
        let b = SubspaceBasis::span(f, 2, &[e(f, 2, 1), [f.from_i64(3), f.from_i64(-2)].to_vec()]);
        assert_eq!(a, b);
        assert_eq!(a, SubspaceBasis::whole(f, 2));
    }

    #[test]
    fn products_and_similarity() {
        let f = q();
        let m = Matrix::from_i64(f, 2, 2, &[1, 2, 3, 4]);
        assert_eq!(Matrix::conjugate(&Matrix::identity(f, 2), &m).unwrap(), m);
        let j2 = Matrix::jordan_block(f, 2);
        assert_eq!(Matrix::block_diag(f, core::slice::from_ref(&j2)).unwrap(), j2);
        let e = Matrix::from_i64(f, 2, 2, &[0, 0, 1, 1]);
        let fm = Matrix::from_i64(f, 2, 2, &[1, 0, 0, 0]);
        assert_eq!(e.mul(&fm).unwrap(), j2);
        assert_eq!(Matrix::block_diag(f, &[]).unwrap().shape(), (0, 0));
    }

    #[test]
    fn inverse_and_errors() {
        let f = q();
        let m = Matrix::from_i64(f, 2, 2, &[2, 1, 7, 4]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert_eq!(Matrix::from_i64(f, 2, 2, &[1, 2, 2, 4]).inverse(), Err(Error::SingularMatrix));
        assert_eq!(
            Matrix::zeros(f, 2, 3).inverse(),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        );
        assert!(matches!(
            Matrix::zeros(f, 2, 3).mul(&Matrix::zeros(f, 2, 3)),
            Err(Error::ShapeMismatch { .. })
        ));
        assert_eq!(
            Matrix::zeros(f, 2, 2).mul(&Matrix::zeros(gf(3), 2, 2)),
            Err(Error::FieldMismatch)
        );
        assert!(Matrix::identity(f, 0).inverse().unwrap().shape() == (0, 0));
    }

    #[test]
    fn empty_matrices() {
        let f = gf(5);
        let z = Matrix::zeros(f, 0, 0);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.nullity(), 0);
        assert!(z.is_idempotent() && z.is_square_zero() && z.is_nilpotent());
        let tall = Matrix::zeros(f, 3, 0);
        assert_eq!(tall.colspace_basis().dim(), 0);
        assert_eq!(tall.nullspace_basis().ambient_dim(), 0);
    }

    #[test]
    fn basis_images_and_completion() {
        let f = q();
        let domain = [[f.one(), f.one()].to_vec(), e(f, 2, 1)];
        let images = [e(f, 2, 1), [f.zero(), f.zero()].to_vec()];
        let z = Matrix::from_basis_images(f, 2, &domain, &images).unwrap();
        assert_eq!(z.mul_vec(&domain[0]).unwrap(), images[0]);
        assert!(z.mul_vec(&domain[1]).unwrap().iter().all(FieldScalar::is_zero));
        let added = complete_with_units(f, 3, &[[f.one(), f.one(), f.zero()].to_vec()]);
        assert_eq!(added, [e(f, 3, 0), e(f, 3, 2)]);
    }
}
