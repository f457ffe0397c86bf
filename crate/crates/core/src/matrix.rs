//! Dense exact matrices.
//!
//! A [`Matrix`] is a row-major array of [`Scalar`]s tagged with its [`Field`].
//! Size-0 matrices are ordinary values. Gaussian elimination always takes
//! the first nonzero entry of a column as pivot.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// A column vector.
pub type Vector = Vec<Scalar>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with the row operations that produced it:
/// `transform * input == reduced`.
#[derive(Clone, Debug)]
pub struct RowReduction {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
    pub transform: Matrix,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            field,
            data,
        }
    }

    /// Builds a matrix from row-major integer entries mapped into `field`.
    pub fn from_i64(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(
            entries.len(),
            rows * cols,
            "entry count does not match shape"
        );
        Matrix::from_fn(field, rows, cols, |i, j| {
            field.from_i64(entries[i * cols + j])
        })
    }

    /// Builds a matrix from rows of scalars; every row must have the same
    /// length and every entry must belong to `field`.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n_rows = rows.len();
        let mut data = Vec::with_capacity(n_rows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for s in row {
                if !field.contains(&s) {
                    return Err(Error::FieldMismatch {
                        left: field.to_string(),
                        right: s.field().to_string(),
                    });
                }
                data.push(s);
            }
        }
        Ok(Matrix {
            rows: n_rows,
            cols,
            field,
            data,
        })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vector]) -> Self {
        for c in columns {
            assert_eq!(c.len(), rows, "column length does not match row count");
        }
        Matrix::from_fn(field, rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = &self[(i, j)];
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| {
            self[(j, i)].clone()
        })
    }

    /// Copy of the `rows x cols` block whose top-left corner is `(r0, c0)`.
    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        assert!(
            r0 + rows <= self.rows && c0 + cols <= self.cols,
            "block out of range"
        );
        Matrix::from_fn(self.field, rows, cols, |i, j| {
            self[(r0 + i, c0 + j)].clone()
        })
    }

    /// Overwrites the block starting at `(r0, c0)` with `block`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            data: self.data.iter().map(|x| x * s).collect(),
            ..self.clone()
        }
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: other.field.to_string(),
            });
        }
        Ok(())
    }

    /// Exact product `self * other`.
    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let zero = self.field.zero();
        let mut out = vec![zero.clone(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k * other.cols + j];
                    if b.is_zero() {
                        continue;
                    }
                    let slot = &mut out[i * other.cols + j];
                    *slot = &*slot + &(a * b);
                }
            }
        }
        Ok(Matrix {
            rows: self.rows,
            cols: other.cols,
            field: self.field,
            data: out,
        })
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(
            v.len(),
            self.cols,
            "vector length does not match column count"
        );
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// `self^k` for square matrices; `self^0 = I`.
    pub fn pow(&self, k: usize) -> Matrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = Matrix::identity(self.field, self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn is_idempotent(&self) -> bool {
        self.is_square() && &(self * self) == self
    }

    /// Gauss-Jordan elimination with row-operation tracking.
    pub fn row_reduce(&self) -> RowReduction {
        self.reduce(true)
    }

    fn reduce(&self, track: bool) -> RowReduction {
        let mut a = self.clone();
        let mut t = if track {
            Matrix::identity(self.field, self.rows)
        } else {
            Matrix::zeros(self.field, 0, 0)
        };
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                a.swap_rows(p, r);
                if track {
                    t.swap_rows(p, r);
                }
            }
            let inv = a[(r, c)].inverse().expect("pivot is nonzero");
            a.scale_row(r, &inv);
            if track {
                t.scale_row(r, &inv);
            }
            for i in 0..a.rows {
                if i != r && !a[(i, c)].is_zero() {
                    let f = -&a[(i, c)];
                    a.add_row_multiple(i, r, &f);
                    if track {
                        t.add_row_multiple(i, r, &f);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        RowReduction {
            reduced: a,
            pivots,
            transform: t,
        }
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, s: &Scalar) {
        for j in 0..self.cols {
            let x = &self.data[i * self.cols + j];
            self.data[i * self.cols + j] = x * s;
        }
    }

    /// Row `target += factor * row source`.
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, factor: &Scalar) {
        for j in 0..self.cols {
            let s = &self.data[source * self.cols + j];
            if s.is_zero() {
                continue;
            }
            let v = &self.data[target * self.cols + j] + &(s * factor);
            self.data[target * self.cols + j] = v;
        }
    }

    pub fn rank(&self) -> usize {
        self.reduce(false).pivots.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let red = self.row_reduce();
        if red.pivots.len() < self.rows {
            return Err(Error::SingularMatrix);
        }
        Ok(red.transform)
    }

    /// Basis of the null space. Each vector is scaled so that its first
    /// nonzero entry is 1; the zero matrix yields the standard basis.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let red = self.reduce(false);
        let mut is_pivot = vec![false; self.cols];
        for &p in &red.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (row, &pc) in red.pivots.iter().enumerate() {
                v[pc] = -&red.reduced[(row, free)];
            }
            let lead = v
                .iter()
                .find(|x| !x.is_zero())
                .and_then(Scalar::inverse)
                .expect("kernel vector is nonzero");
            basis.push(v.iter().map(|x| x * &lead).collect());
        }
        basis
    }

    /// Reduced basis of the column space: the nonzero rows of the reduced
    /// row echelon form of the transpose.
    pub fn image_basis(&self) -> Vec<Vector> {
        let red = self.transpose().reduce(false);
        (0..red.pivots.len())
            .map(|i| red.reduced.row(i).to_vec())
            .collect()
    }

    pub fn kernel_and_image(&self) -> (Vec<Vector>, Vec<Vector>) {
        (self.kernel_basis(), self.image_basis())
    }

    /// One solution `x` of `self * x = rhs` (free variables set to zero).
    pub fn solve(&self, rhs: &[Scalar]) -> Option<Vector> {
        assert_eq!(rhs.len(), self.rows);
        let aug = Matrix::from_fn(self.field, self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                rhs[i].clone()
            }
        });
        let red = aug.reduce(false);
        if red.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &pc) in red.pivots.iter().enumerate() {
            x[pc] = red.reduced[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Parses the matrix text format: a `<rows> <cols>` header followed by
    /// one whitespace-separated line per row. Blank lines are ignored.
    pub fn parse(text: &str, field: Field) -> Result<Matrix> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse(format!("invalid header `{header}`")))?;
        let [rows, cols] = dims[..] else {
            return Err(Error::Parse(format!(
                "header must be `<rows> <cols>`, got `{header}`"
            )));
        };
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing row {}", i + 1)))?;
            let row: Vec<&str> = line.split_whitespace().collect();
            if row.len() != cols {
                return Err(Error::Parse(format!(
                    "row {} has {} entries, expected {cols}",
                    i + 1,
                    row.len()
                )));
            }
            for tok in row {
                data.push(field.parse_scalar(tok)?);
            }
        }
        if let Some(extra) = lines.next() {
            return Err(Error::Parse(format!("trailing content `{extra}`")));
        }
        Ok(Matrix {
            rows,
            cols,
            field,
            data,
        })
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of range"
        );
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of range"
        );
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    /// Panics on shape or field mismatch; use [`Matrix::checked_mul`] for
    /// untrusted operands.
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols && self.field == rhs.field);
        Matrix {
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
            ..self.clone()
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols && self.field == rhs.field);
        Matrix {
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
            ..self.clone()
        }
    }
}

impl fmt::Display for Matrix {
    /// Writes the matrix text format accepted by [`Matrix::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Exact product with shape and field checks.
pub fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.checked_mul(b)
}

/// `Diag(blocks...)`. Size-0 blocks contribute nothing.
pub fn block_diag(field: Field, blocks: &[&Matrix]) -> Result<Matrix> {
    for b in blocks {
        if b.field != field {
            return Err(Error::FieldMismatch {
                left: field.to_string(),
                right: b.field.to_string(),
            });
        }
        if !b.is_square() {
            return Err(Error::NotSquare {
                rows: b.rows,
                cols: b.cols,
            });
        }
    }
    let n = blocks.iter().map(|b| b.rows).sum();
    let mut m = Matrix::zeros(field, n, n);
    let mut at = 0;
    for b in blocks {
        m.set_block(at, at, b);
        at += b.rows;
    }
    Ok(m)
}

/// The `d x d` anti-diagonal permutation matrix; it is its own inverse.
pub fn reversal_matrix(field: Field, d: usize) -> Matrix {
    Matrix::from_fn(field, d, d, |i, j| {
        if i + j + 1 == d {
            field.one()
        } else {
            field.zero()
        }
    })
}

/// `r * a * r^{-1}`.
pub fn conjugate(a: &Matrix, r: &Matrix) -> Result<Matrix> {
    a.check_field(r)?;
    if !a.is_square() || !r.is_square() || a.rows != r.rows {
        return Err(Error::DimensionMismatch(format!(
            "cannot conjugate {}x{} by {}x{}",
            a.rows, a.cols, r.rows, r.cols
        )));
    }
    let r_inv = r.inverse()?;
    Ok(&(r * a) * &r_inv)
}

/// The nilpotent upper shift `J_k` (ones on the superdiagonal).
pub fn jordan_block(field: Field, k: usize) -> Matrix {
    Matrix::from_fn(field, k, k, |i, j| {
        if j == i + 1 {
            field.one()
        } else {
            field.zero()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;
    const GF2: Field = Field::Prime(2);

    fn m(field: Field, n: usize, e: &[i64]) -> Matrix {
        Matrix::from_i64(field, n, e.len() / n, e)
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(
            &Matrix::identity(Q, 2) * &Matrix::identity(Q, 2),
            Matrix::identity(Q, 2)
        );
        let a = m(GF2, 2, &[0, 1, 0, 0]);
        let b = m(GF2, 2, &[0, 0, 1, 0]);
        assert_eq!(&a * &b, m(GF2, 2, &[1, 0, 0, 0]));
        let half = Matrix::from_fn(Q, 2, 2, |i, j| match (i, j) {
            (0, 0) => Q.from_ratio(1, 2),
            (1, 1) => Q.from_i64(2),
            _ => Q.zero(),
        });
        let two = Matrix::from_fn(Q, 2, 2, |i, j| match (i, j) {
            (0, 0) => Q.from_i64(2),
            (1, 1) => Q.from_ratio(1, 2),
            _ => Q.zero(),
        });
        assert!((&half * &two).is_identity());
    }

    #[test]
    fn multiplication_errors() {
        let a = Matrix::zeros(Q, 2, 3);
        assert!(matches!(mat_mul(&a, &a), Err(Error::DimensionMismatch(_))));
        let b = Matrix::zeros(GF2, 3, 2);
        assert!(matches!(mat_mul(&a, &b), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::zeros(Q, 3, 3).rank(), 0);
        assert_eq!(m(GF2, 2, &[1, 1, 1, 1]).rank(), 1);
        assert_eq!(jordan_block(Q, 3).rank(), 2);
        assert_eq!(Matrix::zeros(Q, 0, 0).rank(), 0);
    }

    #[test]
    fn inverse_examples() {
        for n in 0..4 {
            assert_eq!(
                Matrix::identity(Q, n).inverse().unwrap(),
                Matrix::identity(Q, n)
            );
        }
        let swap = m(Q, 2, &[0, 1, 1, 0]);
        assert_eq!(swap.inverse().unwrap(), swap);
        let d = m(Q, 2, &[2, 0, 0, 1]);
        let expected = Matrix::from_fn(Q, 2, 2, |i, j| match (i, j) {
            (0, 0) => Q.from_ratio(1, 2),
            (1, 1) => Q.one(),
            _ => Q.zero(),
        });
        assert_eq!(d.inverse().unwrap(), expected);
        assert_eq!(jordan_block(Q, 2).inverse(), Err(Error::SingularMatrix));
    }

    #[test]
    fn kernel_and_image_examples() {
        let e = |i: usize| -> Vector { (0..2).map(|k| Q.from_i64((k == i) as i64)).collect() };
        let (k, im) = Matrix::identity(Q, 2).kernel_and_image();
        assert!(k.is_empty());
        assert_eq!(im, vec![e(0), e(1)]);
        let (k, im) = jordan_block(Q, 2).kernel_and_image();
        assert_eq!(k, vec![e(0)]);
        assert_eq!(im, vec![e(0)]);
        let (k, im) = Matrix::zeros(Q, 2, 2).kernel_and_image();
        assert_eq!(k, vec![e(0), e(1)]);
        assert!(im.is_empty());
    }

    #[test]
    fn kernel_vectors_normalized() {
        let a = m(Q, 2, &[1, 1, 0, 0]);
        assert_eq!(a.kernel_basis(), vec![vec![Q.one(), Q.from_i64(-1)]]);
        let a = m(Q, 2, &[5, 0, 0, 0]);
        assert_eq!(a.image_basis(), vec![vec![Q.one(), Q.zero()]]);
    }

    #[test]
    fn block_diag_examples() {
        let one = m(Q, 1, &[1]);
        let zero = m(Q, 1, &[0]);
        assert_eq!(
            block_diag(Q, &[&one, &zero]).unwrap(),
            m(Q, 2, &[1, 0, 0, 0])
        );
        let empty = Matrix::zeros(Q, 0, 0);
        let j2 = jordan_block(Q, 2);
        assert_eq!(block_diag(Q, &[&empty, &j2]).unwrap(), j2);
        let two = m(Q, 1, &[2]);
        assert_eq!(
            block_diag(Q, &[&two, &j2]).unwrap(),
            m(Q, 3, &[2, 0, 0, 0, 0, 1, 0, 0, 0])
        );
        assert!(block_diag(Q, &[&m(GF2, 1, &[1])]).is_err());
    }

    #[test]
    fn reversal_examples() {
        assert_eq!(reversal_matrix(Q, 2), m(Q, 2, &[0, 1, 1, 0]));
        assert_eq!(reversal_matrix(Q, 1), m(Q, 1, &[1]));
        assert_eq!(reversal_matrix(Q, 3), m(Q, 3, &[0, 0, 1, 0, 1, 0, 1, 0, 0]));
        for d in 1..7 {
            let k = reversal_matrix(GF2, d);
            assert!((&k * &k).is_identity());
        }
    }

    #[test]
    fn conjugate_examples() {
        let j2 = jordan_block(Q, 2);
        let k2 = reversal_matrix(Q, 2);
        assert_eq!(conjugate(&j2, &k2).unwrap(), j2.transpose());
        assert_eq!(conjugate(&j2, &Matrix::identity(Q, 2)).unwrap(), j2);
        let e = m(Q, 2, &[1, 0, 0, 0]);
        let r = m(Q, 2, &[1, 1, 0, 1]);
        assert_eq!(conjugate(&e, &r).unwrap(), m(Q, 2, &[1, -1, 0, 0]));
        assert_eq!(conjugate(&e, &j2), Err(Error::SingularMatrix));
    }

    #[test]
    fn text_format() {
        let a = Matrix::parse("2 2\n1/2 -3\n0 4\n", Q).unwrap();
        assert_eq!(a[(0, 0)], Q.from_ratio(1, 2));
        assert_eq!(Matrix::parse(&a.to_string(), Q).unwrap(), a);
        assert!(Matrix::parse("2 2\n1 2\n", Q).is_err());
        assert!(Matrix::parse("2 2\n1 2\n3\n", Q).is_err());
        assert!(Matrix::parse("2 2\n1 2\n3 4\n5 6\n", Q).is_err());
        assert!(Matrix::parse("2\n", Q).is_err());
        assert!(Matrix::parse("1 1\n2\n", GF2).is_err());
        assert_eq!(Matrix::parse("0 0\n", Q).unwrap(), Matrix::zeros(Q, 0, 0));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(Q, 2, &[1, 1, 0, 0]);
        let x = a.solve(&[Q.from_i64(3), Q.zero()]).unwrap();
        assert_eq!(a.apply(&x), vec![Q.from_i64(3), Q.zero()]);
        assert!(a.solve(&[Q.zero(), Q.one()]).is_none());
    }
}
