//! Dense exact linear algebra over [`Scalar`].
//!
//! Vectors are plain `Vec<Scalar>`. Subspaces are kept as row bases in reduced
//! row echelon form, so two equal subspaces have identical bases.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Arc<FieldSpec>,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        f.write_str("]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, field: &Arc<FieldSpec>) -> Self {
        Matrix {
            rows,
            cols,
            field: Arc::clone(field),
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(n: usize, field: &Arc<FieldSpec>) -> Self {
        let mut m = Self::zeros(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn diagonal(entries: Vec<Scalar>, field: &Arc<FieldSpec>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n, field);
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, field: &Arc<FieldSpec>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            field: Arc::clone(field),
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Scalar>], rows: usize, field: &Arc<FieldSpec>) -> Self {
        let mut m = Self::zeros(rows, cols.len(), field);
        for (j, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), rows, "column length");
            for (i, x) in v.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// The submatrix on the given row and column indices.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Self::zeros(rows.len(), cols.len(), &self.field);
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                let v = self.get(r, c);
                if !v.is_zero() {
                    m.set(i, j, v.clone());
                }
            }
        }
        m
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zeros(self.cols, self.rows, &self.field);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    fn same_shape(&self, other: &Matrix, what: &str) -> Result<()> {
        if self.rows == other.rows && self.cols == other.cols {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )))
        }
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other, "add")?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            field: Arc::clone(&self.field),
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other, "sub")?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            field: Arc::clone(&self.field),
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, k: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: Arc::clone(&self.field),
            data: self.data.iter().map(|a| a * k).collect(),
        }
    }

    /// `self - u*I`.
    pub fn shift(&self, u: &Scalar) -> Matrix {
        assert!(self.is_square(), "shift needs a square matrix");
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = m.get(i, i) - u;
            m.set(i, i, v);
        }
        m
    }

    /// Product; zero entries of the left factor are skipped.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "mul: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols, &self.field);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("pow needs a square matrix".into()));
        }
        let mut acc = Self::identity(self.rows, &self.field);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "apply: vector length");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    /// Kronecker product, left factor major.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols, &self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows = self.to_rows();
        let pivots = rref_rows(&mut rows, self.cols);
        rows.resize_with(self.rows, || vec![self.field.zero(); self.cols]);
        let m = Matrix {
            rows: self.rows,
            cols: self.cols,
            field: Arc::clone(&self.field),
            data: rows.into_iter().flatten().collect(),
        };
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_rows();
        rref_rows(&mut rows, self.cols).len()
    }

    pub fn kernel_basis(&self) -> SubspaceBasis {
        let mut rows = self.to_rows();
        let pivots = rref_rows(&mut rows, self.cols);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let vectors = (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -&rows[i][f];
                }
                v
            })
            .collect();
        SubspaceBasis::from_vectors(self.cols, vectors, &self.field)
    }

    /// Column space.
    pub fn image_basis(&self) -> SubspaceBasis {
        SubspaceBasis::from_vectors(self.rows, self.transpose().to_rows(), &self.field)
    }

    /// The matrix of `self` on the invariant subspace `b`, in the coordinates
    /// of `b`'s basis: column `j` holds the coordinates of `self * b_j`.
    pub fn restrict(&self, b: &SubspaceBasis) -> Result<Matrix> {
        if !self.is_square() || b.ambient_dim() != self.rows {
            return Err(Error::DimensionMismatch("restrict".into()));
        }
        let coords = b
            .vectors()
            .iter()
            .map(|v| b.coordinates(&self.apply(v)).ok_or(Error::NotInvariant))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(&coords, b.dim(), &self.field))
    }
}

/// Gauss-Jordan elimination in place; rows are truncated to the rank.
/// Pivot choice is the first nonzero entry scanning down the column.
fn rref_rows(rows: &mut Vec<Vec<Scalar>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r][c..].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = std::mem::take(&mut rows[r]);
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in c..ncols {
                if !pivot_row[j].is_zero() {
                    row[j] = &row[j] - &(&f * &pivot_row[j]);
                }
            }
        }
        rows[r] = pivot_row;
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// A subspace of `k^n`, stored as an RREF row basis.
#[derive(Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    field: Arc<FieldSpec>,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl fmt::Debug for SubspaceBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubspaceBasis(dim {} in {})", self.dim(), self.ambient_dim)
    }
}

impl SubspaceBasis {
    pub fn from_vectors(ambient_dim: usize, mut vectors: Vec<Vec<Scalar>>, field: &Arc<FieldSpec>) -> Self {
        assert!(vectors.iter().all(|v| v.len() == ambient_dim), "vector length");
        let pivots = rref_rows(&mut vectors, ambient_dim);
        SubspaceBasis {
            ambient_dim,
            field: Arc::clone(field),
            basis: vectors,
            pivots,
        }
    }

    pub fn zero(ambient_dim: usize, field: &Arc<FieldSpec>) -> Self {
        Self::from_vectors(ambient_dim, Vec::new(), field)
    }

    pub fn full(ambient_dim: usize, field: &Arc<FieldSpec>) -> Self {
        Matrix::identity(ambient_dim, field).image_basis()
    }

    /// Span of the given standard basis vectors.
    pub fn coordinate(ambient_dim: usize, indices: &[usize], field: &Arc<FieldSpec>) -> Self {
        let vectors = indices
            .iter()
            .map(|&i| {
                let mut v = vec![field.zero(); ambient_dim];
                v[i] = field.one();
                v
            })
            .collect();
        Self::from_vectors(ambient_dim, vectors, field)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vectors(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates in this basis, or `None` if `v` is outside the span.
    /// With an RREF basis they are simply the entries at the pivot columns.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = vec![self.field.zero(); self.ambient_dim];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (slot, x) in rebuilt.iter_mut().zip(b) {
                if !x.is_zero() {
                    *slot = &*slot + &(c * x);
                }
            }
        }
        (rebuilt.as_slice() == v).then_some(coords)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn sum(&self, other: &SubspaceBasis) -> SubspaceBasis {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Self::from_vectors(self.ambient_dim, vs, &self.field)
    }

    pub fn intersection(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch("intersection".into()));
        }
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Self::zero(self.ambient_dim, &self.field));
        }
        // Solve sum a_i u_i - sum b_j w_j = 0 and map (a, b) to sum a_i u_i.
        let mut cols: Vec<Vec<Scalar>> = self.basis.clone();
        cols.extend(other.basis.iter().map(|w| w.iter().map(|x| -x).collect()));
        let m = Matrix::from_columns(&cols, self.ambient_dim, &self.field);
        let k = self.dim();
        let vectors = m
            .kernel_basis()
            .vectors()
            .iter()
            .map(|sol| self.combine(&sol[..k]))
            .collect();
        Ok(Self::from_vectors(self.ambient_dim, vectors, &self.field))
    }

    /// `sum coeffs[i] * basis[i]`.
    pub fn combine(&self, coeffs: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.ambient_dim];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (slot, x) in out.iter_mut().zip(b) {
                if !x.is_zero() {
                    *slot = &*slot + &(c * x);
                }
            }
        }
        out
    }

    /// `M(U)`.
    pub fn image_under(&self, m: &Matrix) -> SubspaceBasis {
        let vs = self.basis.iter().map(|v| m.apply(v)).collect();
        Self::from_vectors(m.rows(), vs, &self.field)
    }

    pub fn is_invariant(&self, m: &Matrix) -> bool {
        self.basis.iter().all(|v| self.contains(&m.apply(v)))
    }
}

/// Fitting decomposition `k^n = ker(M^N) + im(M^N)`.
pub fn fitting_split(m: &Matrix) -> Result<(SubspaceBasis, SubspaceBasis)> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("fitting_split needs a square matrix".into()));
    }
    let mut p = m.clone();
    let mut r = p.rank();
    loop {
        if r == 0 || r == m.rows() {
            break;
        }
        let next = p.mul(m)?;
        let rn = next.rank();
        if rn == r {
            break;
        }
        p = next;
        r = rn;
    }
    if r == m.rows() {
        return Ok((SubspaceBasis::zero(m.rows(), m.field()), SubspaceBasis::full(m.rows(), m.field())));
    }
    Ok((p.kernel_basis(), p.image_basis()))
}

/// `d_k = dim ker (M - uI)^k` for `k = 1..=n`.
pub fn generalized_eigen_profile(m: &Matrix, u: &Scalar) -> Result<Vec<usize>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("eigen profile needs a square matrix".into()));
    }
    let n = m.rows();
    let shifted = m.shift(u);
    let mut out = Vec::with_capacity(n);
    let mut p = shifted.clone();
    for k in 1..=n {
        let d = n - p.rank();
        if out.last() == Some(&d) {
            out.resize(n, d);
            break;
        }
        out.push(d);
        if k < n && d < n {
            p = p.mul(&shifted)?;
        } else {
            out.resize(n, d);
            break;
        }
    }
    Ok(out)
}

/// Jordan block sizes (descending) from a profile `d_1, d_2, ...`:
/// the number of blocks of size at least `k` is `d_k - d_{k-1}`.
pub fn jordan_blocks_from_profile(profile: &[usize]) -> Vec<usize> {
    let d = |k: usize| -> usize {
        match k {
            0 => 0,
            _ => profile.get(k - 1).or(profile.last()).copied().unwrap_or(0),
        }
    };
    let at_least = |k: usize| d(k) - d(k - 1);
    let mut blocks = Vec::new();
    for k in (1..=profile.len()).rev() {
        let exactly = at_least(k) - at_least(k + 1);
        blocks.extend(std::iter::repeat(k).take(exactly));
    }
    blocks
}

/// The Jordan block `J_n(u)`: `u` on the diagonal, ones on the superdiagonal.
pub fn jordan_block(n: usize, u: &Scalar) -> Matrix {
    let f = u.field();
    let mut m = Matrix::diagonal(vec![u.clone(); n], f);
    for i in 0..n.saturating_sub(1) {
        m.set(i, i + 1, f.one());
    }
    m
}

/// Block-diagonal matrix.
pub fn block_diagonal(blocks: &[Matrix], field: &Arc<FieldSpec>) -> Matrix {
    let n: usize = blocks.iter().map(Matrix::rows).sum();
    let mut m = Matrix::zeros(n, n, field);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                m.set(off + i, off + j, b.get(i, j).clone());
            }
        }
        off += b.rows();
    }
    m
}
