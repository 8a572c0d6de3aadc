//! Dense vectors and matrices over a [`FieldSpec`], with deterministic row reduction.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector(pub Vec<Scalar>);

impl Vector {
    pub fn zeros(field: FieldSpec, n: usize) -> Self {
        Vector(vec![field.zero(); n])
    }

    pub fn basis(field: FieldSpec, n: usize, i: usize) -> Self {
        let mut v = Self::zeros(field, n);
        v.0[i] = field.one();
        v
    }

    pub fn from_i64(field: FieldSpec, values: &[i64]) -> Self {
        Vector(values.iter().map(|&v| field.from_i64(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        Vector(self.0.iter().map(|x| x * c).collect())
    }

    /// `self += c·other`.
    pub fn axpy(&mut self, c: &Scalar, other: &Vector) {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            a.add_product(c, b);
        }
    }

    /// Indices of nonzero coordinates.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.0.iter().enumerate().filter(|(_, v)| !v.is_zero())
    }

    /// Concatenation `(self, other)`.
    pub fn concat(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn slice(&self, start: usize, end: usize) -> Vector {
        Vector(self.0[start..end].to_vec())
    }
}

impl std::ops::Index<usize> for Vector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl AddAssign<&Vector> for Vector {
    fn add_assign(&mut self, rhs: &Vector) {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl SubAssign<&Vector> for Vector {
    fn sub_assign(&mut self, rhs: &Vector) {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a -= b;
        }
    }
}

impl Add for Vector {
    type Output = Vector;
    fn add(mut self, rhs: Vector) -> Vector {
        self += &rhs;
        self
    }
}

impl Sub for Vector {
    type Output = Vector;
    fn sub(mut self, rhs: Vector) -> Vector {
        self -= &rhs;
        self
    }
}

impl Neg for Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.into_iter().map(|x| -x).collect())
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if let Some(bad) = data.iter().find(|x| x.field() != field) {
            return Err(Error::FieldMismatch(field, bad.field()));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.data[i * c + j] = field.from_i64(v);
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vector]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for i in 0..rows {
                m.data[i * columns.len() + j] = col.0[i].clone();
            }
        }
        m
    }

    pub fn from_rows(field: FieldSpec, cols: usize, rows: &[Vector]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "row length mismatch");
            data.extend(row.0.iter().cloned());
        }
        Matrix { field, rows: rows.len(), cols, data }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "field mismatch");
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vector {
        Vector(self.data[r * self.cols..(r + 1) * self.cols].to_vec())
    }

    pub fn column(&self, c: usize) -> Vector {
        Vector((0..self.rows).map(|r| self.get(r, c).clone()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.field, self.rows)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    /// `self · v`; panics on a length mismatch.
    pub fn apply(&self, v: &Vector) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        let mut out = Vector::zeros(self.field, self.rows);
        for (c, x) in v.support() {
            for r in 0..self.rows {
                let m = &self.data[r * self.cols + c];
                if !m.is_zero() {
                    out.0[r].add_product(m, x);
                }
            }
        }
        out
    }

    /// Matrix product; panics on a shape mismatch.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.data[r * other.cols + c].add_product(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix sum shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix difference shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        let data = self.data.iter().map(|a| -a).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * c).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(&self.data[r * self.cols..(r + 1) * self.cols]);
            data.extend_from_slice(&other.data[r * other.cols..(r + 1) * other.cols]);
        }
        Matrix { field: self.field, rows: self.rows, cols, data }
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Sub-block of rows `r0..r1`, columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        let mut m = Self::zeros(self.field, r1 - r0, c1 - c0);
        for r in r0..r1 {
            for c in c0..c1 {
                m.data[(r - r0) * (c1 - c0) + (c - c0)] = self.get(r, c).clone();
            }
        }
        m
    }

    /// Reduced row echelon form. The pivot in each column is the first remaining
    /// row with a nonzero entry there.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
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
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.data[row * m.cols + c] = v;
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                let neg = -&factor;
                for c in col..m.cols {
                    let pivot_entry = m.data[row * m.cols + c].clone();
                    if !pivot_entry.is_zero() {
                        m.data[r * m.cols + c].add_product(&neg, &pivot_entry);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { rank: pivots.len(), pivots, matrix: m }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{v : self·v = 0}`, one vector per free column in increasing order.
    pub fn nullspace(&self) -> Vec<Vector> {
        let Rref { matrix: r, pivots, .. } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = Vector::zeros(self.field, self.cols);
                v.0[f] = self.field.one();
                for (i, &p) in pivots.iter().enumerate() {
                    v.0[p] = -r.get(i, f);
                }
                v
            })
            .collect()
    }

    /// Some `x` with `self·x = b` (free variables zero), or `None` when inconsistent.
    pub fn solve(&self, b: &Vector) -> Result<Option<Vector>> {
        if b.len() != self.rows {
            return Err(Error::Shape(format!("right-hand side of length {} for {} rows", b.len(), self.rows)));
        }
        let augmented = self.hstack(&Matrix::from_columns(self.field, self.rows, std::slice::from_ref(b)));
        let Rref { matrix: r, pivots, .. } = augmented.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = Vector::zeros(self.field, self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            x.0[p] = r.get(i, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let Rref { matrix: r, rank, .. } = self.hstack(&Matrix::identity(self.field, n)).rref();
        if n > 0 && (rank < n || !r.block(0, n, 0, n).is_identity()) {
            return None;
        }
        Some(r.block(0, n, n, 2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Canonical basis (nonzero rows of the rref) of the row space.
    pub fn row_space_basis(&self) -> Vec<Vector> {
        let Rref { matrix, rank, .. } = self.rref();
        (0..rank).map(|r| matrix.row(r)).collect()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

/// A subspace stored by its canonical rref basis, so equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn span(field: FieldSpec, ambient: usize, vectors: &[Vector]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::Shape(format!("vector of length {} in a space of dimension {ambient}", v.len())));
        }
        let basis =
            if vectors.is_empty() { Vec::new() } else { Matrix::from_rows(field, ambient, vectors).row_space_basis() };
        Ok(Subspace { field, ambient, basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn contains(&self, v: &Vector) -> bool {
        if v.is_zero() {
            return true;
        }
        if self.basis.is_empty() {
            return false;
        }
        let mut rows = self.basis.clone();
        rows.push(v.clone());
        Matrix::from_rows(self.field, self.ambient, &rows).rank() == self.basis.len()
    }
}
