//! Factorizations into idempotents for matrices of the shape `Diag(Q, 0_1)`.
//!
//! An invertible `Q` is written as a product of rank-one updates
//! `I + x yᵀ` (transvections and one final dilation), and each update is
//! realized by the identity
//!
//! ```text
//! [[I, x], [0, 0]] · [[I, 0], [yᵀ, 0]] = Diag(I + x yᵀ, 0)
//! ```
//!
//! whose two factors are idempotents of corank one.

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::scalar::{Field, Scalar};

/// A rank-one update of the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elementary {
    /// `I + λ e_i e_jᵀ`, `i != j`.
    Transvection {
        row: usize,
        col: usize,
        lambda: Scalar,
    },
    /// `I + (μ - 1) e_i e_iᵀ`, `μ != 0`.
    Dilation { index: usize, mu: Scalar },
}

impl Elementary {
    pub fn to_matrix(&self, field: Field, size: usize) -> Matrix {
        let (x, y) = self.rank_one_update(field, size);
        let mut m = Matrix::identity(field, size);
        for i in 0..size {
            for j in 0..size {
                if !x[i].is_zero() && !y[j].is_zero() {
                    m[(i, j)] = &m[(i, j)] + &(&x[i] * &y[j]);
                }
            }
        }
        m
    }

    /// `(x, y)` with `self = I + x yᵀ`.
    pub fn rank_one_update(&self, field: Field, size: usize) -> (Vector, Vector) {
        let mut x = vec![field.zero(); size];
        let mut y = vec![field.zero(); size];
        match self {
            Elementary::Transvection { row, col, lambda } => {
                x[*row] = lambda.clone();
                y[*col] = field.one();
            }
            Elementary::Dilation { index, mu } => {
                x[*index] = mu - &field.one();
                y[*index] = field.one();
            }
        }
        (x, y)
    }

    fn inverse(&self) -> Elementary {
        match self {
            Elementary::Transvection { row, col, lambda } => Elementary::Transvection {
                row: *row,
                col: *col,
                lambda: -lambda,
            },
            Elementary::Dilation { index, mu } => Elementary::Dilation {
                index: *index,
                mu: mu.inverse().expect("dilation factor is nonzero"),
            },
        }
    }
}

/// Writes an invertible `q` as an ordered product `T_1 ⋯ T_s` of
/// transvections and at most one dilation (at position `(p, p)`).
///
/// Columns are cleared left to right with transvections only. A pivot other
/// than 1 is set to 1 by adding a multiple of the row below it (made nonzero
/// in that column first if needed), then the rest of the column is
/// eliminated. At most `p + 1` transvections per column. The determinant
/// ends up in the bottom-right entry and becomes the dilation. The identity
/// gives the empty sequence.
pub fn gl_elementary_decomposition(q: &Matrix) -> Result<Vec<Elementary>> {
    if !q.is_square() {
        return Err(Error::NotSquare {
            rows: q.rows(),
            cols: q.cols(),
        });
    }
    let field = q.field();
    let p = q.rows();
    let mut a = q.clone();
    // row operations applied so far, in order: ops[k] ⋯ ops[0] · q = a
    let mut ops: Vec<Elementary> = Vec::new();
    let mut add_row = |a: &mut Matrix, target: usize, source: usize, lambda: Scalar| {
        if lambda.is_zero() {
            return;
        }
        a.add_row_multiple(target, source, &lambda);
        ops.push(Elementary::Transvection {
            row: target,
            col: source,
            lambda,
        });
    };

    for j in 0..p {
        if j + 1 < p && !a[(j, j)].is_one() {
            if a[(j + 1, j)].is_zero() {
                let Some(src) = (j..p).find(|&i| i != j + 1 && !a[(i, j)].is_zero()) else {
                    return Err(Error::SingularMatrix);
                };
                add_row(&mut a, j + 1, src, field.one());
            }
            let below = a[(j + 1, j)].inverse().expect("nonzero");
            let lambda = &(&field.one() - &a[(j, j)]) * &below;
            add_row(&mut a, j, j + 1, lambda);
        } else if a[(j, j)].is_zero() {
            return Err(Error::SingularMatrix);
        }
        for i in 0..p {
            if i != j && !a[(i, j)].is_zero() {
                let f = -&(&a[(i, j)] * &a[(j, j)].inverse().expect("nonzero pivot"));
                add_row(&mut a, i, j, f);
            }
        }
    }
    // a is now Diag(1, …, 1, det)
    let mut factors: Vec<Elementary> = ops.iter().map(Elementary::inverse).collect();
    if p > 0 && !a[(p - 1, p - 1)].is_one() {
        factors.push(Elementary::Dilation {
            index: p - 1,
            mu: a[(p - 1, p - 1)].clone(),
        });
    }
    Ok(factors)
}

/// `F_1 = [[I_{m-1}, x], [0, 0]]` and `F_2 = [[I_{m-1}, 0], [yᵀ, 0]]`;
/// both idempotent of rank `m - 1` with `F_1 F_2 = Diag(I + x yᵀ, 0)`.
pub fn idempotent_pair(field: Field, x: &[Scalar], y: &[Scalar]) -> (Matrix, Matrix) {
    assert_eq!(x.len(), y.len(), "update vectors must have equal length");
    let k = x.len();
    let mut f1 = Matrix::identity(field, k + 1);
    let mut f2 = Matrix::identity(field, k + 1);
    f1[(k, k)] = field.zero();
    f2[(k, k)] = field.zero();
    for i in 0..k {
        f1[(i, k)] = x[i].clone();
        f2[(k, i)] = y[i].clone();
    }
    (f1, f2)
}

/// Idempotents `E_1, …, E_N` of size `p + 1` and rank `p` with
/// `E_1 ⋯ E_N = Diag(q, 0_1)`.
pub fn factor_q0_into_idempotents(q: &Matrix) -> Result<Vec<Matrix>> {
    let field = q.field();
    let p = q.rows();
    let elementary = gl_elementary_decomposition(q)?;
    if elementary.is_empty() {
        let mut e = Matrix::identity(field, p + 1);
        e[(p, p)] = field.zero();
        return Ok(vec![e]);
    }
    let mut out = Vec::with_capacity(2 * elementary.len());
    for t in &elementary {
        let (x, y) = t.rank_one_update(field, p);
        let (f1, f2) = idempotent_pair(field, &x, &y);
        out.push(f1);
        out.push(f2);
    }
    Ok(out)
}

/// Invertible `R` with `R e1 R^{-1} = e2`, built as `B_2 B_1^{-1}` where
/// `B_i` lists an image basis and then a kernel basis of `e_i`.
pub fn idempotent_conjugator(e1: &Matrix, e2: &Matrix) -> Result<Matrix> {
    if e1.field() != e2.field() {
        return Err(Error::FieldMismatch {
            left: e1.field().to_string(),
            right: e2.field().to_string(),
        });
    }
    if !e1.is_idempotent() || !e2.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    if e1.rows() != e2.rows() {
        return Err(Error::DimensionMismatch(format!(
            "idempotents of sizes {} and {}",
            e1.rows(),
            e2.rows()
        )));
    }
    let (r1, r2) = (e1.rank(), e2.rank());
    if r1 != r2 {
        return Err(Error::RankMismatch {
            expected: r1,
            found: r2,
        });
    }
    let basis = |e: &Matrix| {
        let (ker, im) = e.kernel_and_image();
        let cols: Vec<Vector> = im.into_iter().chain(ker).collect();
        Matrix::from_columns(e.field(), e.rows(), &cols)
    };
    Ok(&basis(e2) * &basis(e1).inverse()?)
}
