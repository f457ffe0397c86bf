//! Canonical forms with explicit changes of basis.
//!
//! Every result carries a conjugator `T` such that `T^{-1} · input · T` is
//! exactly the claimed canonical matrix. All choices scan the standard basis
//! in index order, so outputs are deterministic.

use crate::basis::IncrementalBasis;
use crate::error::{Error, Result};
use crate::matrix::{block_diag, jordan_block, Matrix, Vector};
use crate::poly::{
    companion, coprime_lcm_split, krylov_matrix, vector_minimal_polynomial, MonicPoly, Poly,
};
use crate::scalar::Field;

/// `T^{-1} A T = Diag(Q, J_{i_1}, …, J_{i_N})` with `Q` invertible and
/// `i_1 >= … >= i_N >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FittingData {
    pub conjugator: Matrix,
    pub invertible_block: Matrix,
    pub nilpotent_block_sizes: Vec<usize>,
}

impl FittingData {
    /// `Diag(Q, J_{i_1}, …, J_{i_N})`.
    pub fn canonical_matrix(&self) -> Matrix {
        let field = self.conjugator.field();
        let jordans: Vec<Matrix> = self
            .nilpotent_block_sizes
            .iter()
            .map(|&k| jordan_block(field, k))
            .collect();
        let mut blocks = vec![&self.invertible_block];
        blocks.extend(jordans.iter());
        block_diag(field, &blocks).expect("square blocks over one field")
    }
}

/// `T^{-1} A T = Diag(C(P_1), …, C(P_m))` with `P_1 | P_2 | … | P_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RcfData {
    pub conjugator: Matrix,
    pub invariant_factors: Vec<MonicPoly>,
}

impl RcfData {
    pub fn canonical_matrix(&self) -> Matrix {
        let field = self.conjugator.field();
        let blocks: Vec<Matrix> = self
            .invariant_factors
            .iter()
            .map(|p| companion(p).expect("invariant factors have positive degree"))
            .collect();
        let refs: Vec<&Matrix> = blocks.iter().collect();
        block_diag(field, &refs).expect("square blocks over one field")
    }
}

/// `T^{-1} M T = Diag(N, 0)` with `N` invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemisimpleZeroSplit {
    pub conjugator: Matrix,
    pub invertible_part: Matrix,
}

impl SemisimpleZeroSplit {
    pub fn canonical_matrix(&self) -> Matrix {
        let n = self.conjugator.rows();
        let mut m = Matrix::zeros(self.conjugator.field(), n, n);
        m.set_block(0, 0, &self.invertible_part);
        m
    }
}

fn require_square(a: &Matrix) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        })
    }
}

fn columns_matrix(field: Field, rows: usize, parts: &[&[Vector]]) -> Matrix {
    let cols: Vec<Vector> = parts.iter().flat_map(|p| p.iter().cloned()).collect();
    Matrix::from_columns(field, rows, &cols)
}

/// Fitting decomposition `K^n = Im(A^n) ⊕ Ker(A^n)`, with the nilpotent
/// part brought to Jordan form.
pub fn fitting_decompose(a: &Matrix) -> Result<FittingData> {
    require_square(a)?;
    let field = a.field();
    let n = a.rows();
    let stable = a.pow(n);
    let (ker, im) = stable.kernel_and_image();
    let q = im.len();
    let basis = columns_matrix(field, n, &[&im, &ker]);
    let split = &(&basis.inverse()? * a) * &basis;
    let invertible_block = split.submatrix(0, 0, q, q);
    let nilpotent = split.submatrix(q, q, n - q, n - q);
    let (jordan_basis, sizes) = nilpotent_jordan(&nilpotent)?;
    let lift = block_diag(field, &[&Matrix::identity(field, q), &jordan_basis])?;
    Ok(FittingData {
        conjugator: &basis * &lift,
        invertible_block,
        nilpotent_block_sizes: sizes,
    })
}

/// Jordan form of a nilpotent matrix from Jordan chains.
///
/// Chain tops are picked level by level down the filtration
/// `Ker a ⊆ Ker a^2 ⊆ …`; a chain with top `v` of length `k` contributes the
/// columns `a^{k-1} v, …, a v, v`. Block sizes come out descending.
pub fn nilpotent_jordan(a: &Matrix) -> Result<(Matrix, Vec<usize>)> {
    require_square(a)?;
    let field = a.field();
    let n = a.rows();
    let mut powers = vec![Matrix::identity(field, n)];
    while !powers.last().expect("nonempty").is_zero() {
        if powers.len() > n {
            return Err(Error::NotNilpotent);
        }
        let next = powers.last().expect("nonempty") * a;
        powers.push(next);
    }
    let index = powers.len() - 1;
    let kernels: Vec<Vec<Vector>> = powers.iter().map(Matrix::kernel_basis).collect();

    let mut chains: Vec<(Vector, usize)> = Vec::new();
    let mut carried: Vec<Vector> = Vec::new();
    for level in (1..=index).rev() {
        let mut span = IncrementalBasis::new(field);
        for v in kernels[level - 1].iter().chain(&carried) {
            if span.insert(v).is_err() {
                return Err(Error::Internal(
                    "Jordan chain vectors are dependent modulo the lower kernel".into(),
                ));
            }
        }
        let mut tops = Vec::new();
        for v in &kernels[level] {
            if span.insert(v).is_ok() {
                tops.push(v.clone());
            }
        }
        for t in &tops {
            chains.push((t.clone(), level));
        }
        carried = carried.iter().chain(&tops).map(|v| a.apply(v)).collect();
    }

    let mut columns = Vec::with_capacity(n);
    for (top, len) in &chains {
        let mut chain = Vec::with_capacity(*len);
        let mut cur = top.clone();
        for _ in 0..*len {
            let next = a.apply(&cur);
            chain.push(std::mem::replace(&mut cur, next));
        }
        chain.reverse();
        columns.extend(chain);
    }
    let sizes = chains.iter().map(|&(_, len)| len).collect();
    Ok((Matrix::from_columns(field, n, &columns), sizes))
}

/// A vector whose minimal polynomial equals the minimal polynomial of `a`,
/// assembled from standard basis vectors by coprime lcm splitting.
fn maximal_order_vector(a: &Matrix) -> Vector {
    let field = a.field();
    let n = a.rows();
    let unit = |i: usize| -> Vector {
        (0..n)
            .map(|k| if k == i { field.one() } else { field.zero() })
            .collect()
    };
    let mut v = unit(0);
    let mut order = vector_minimal_polynomial(a, &v).to_poly();
    for i in 1..n {
        if order.degree() == Some(n) {
            break;
        }
        let w = unit(i);
        let g = vector_minimal_polynomial(a, &w).to_poly();
        if g.divides(&order) {
            continue;
        }
        let (f1, g1) = coprime_lcm_split(&order, &g);
        let vf = order.div_rem(&f1).0.apply(a, &v);
        let wg = g.div_rem(&g1).0.apply(a, &w);
        v = vf.iter().zip(&wg).map(|(x, y)| x + y).collect();
        order = f1.mul(&g1);
    }
    v
}

/// Rational canonical form by repeated extraction of a maximal cyclic
/// subspace and an invariant complement.
///
/// With `v` of maximal order `μ` (degree `d`) and a functional `φ` dual to
/// the Krylov basis (`φ(a^k v) = δ_{k,d-1}`), the subspace
/// `{x : φ(a^k x) = 0, k < d}` is an `a`-invariant complement of the cyclic
/// subspace of `v`; the procedure recurses on it.
pub fn rcf(a: &Matrix) -> Result<RcfData> {
    require_square(a)?;
    let (conjugator, invariant_factors) = rcf_inner(a);
    Ok(RcfData {
        conjugator,
        invariant_factors,
    })
}

fn rcf_inner(a: &Matrix) -> (Matrix, Vec<MonicPoly>) {
    let field = a.field();
    let n = a.rows();
    if n == 0 {
        return (Matrix::identity(field, 0), Vec::new());
    }
    let v = maximal_order_vector(a);
    let mu = vector_minimal_polynomial(a, &v);
    let d = mu.degree();
    let cyclic = krylov_matrix(a, &v, d);
    if d == n {
        return (cyclic, vec![mu]);
    }

    let mut target = vec![field.zero(); d];
    target[d - 1] = field.one();
    let phi = cyclic
        .transpose()
        .solve(&target)
        .expect("Krylov columns are independent");
    let at = a.transpose();
    let mut functionals = Vec::with_capacity(d);
    let mut cur = phi;
    for _ in 0..d {
        let next = at.apply(&cur);
        functionals.push(std::mem::replace(&mut cur, next));
    }
    let constraints = Matrix::from_columns(field, n, &functionals).transpose();
    let complement = constraints.kernel_basis();
    debug_assert_eq!(complement.len(), n - d);

    let basis = columns_matrix(field, n, &[&cyclic.columns(), &complement]);
    let split = &(&basis.inverse().expect("complementary subspaces") * a) * &basis;
    let rest = split.submatrix(d, d, n - d, n - d);
    let (rest_basis, mut factors) = rcf_inner(&rest);

    let complement_m = Matrix::from_columns(field, n, &complement);
    let lifted = &complement_m * &rest_basis;
    let conjugator = columns_matrix(field, n, &[&lifted.columns(), &cyclic.columns()]);
    factors.push(mu);
    (conjugator, factors)
}

/// Invariant factors `P_1 | … | P_m` of a square matrix.
pub fn invariant_factors(a: &Matrix) -> Result<Vec<MonicPoly>> {
    Ok(rcf(a)?.invariant_factors)
}

/// Whether 0 is a semisimple eigenvalue, i.e. `Ker m ∩ Im m = 0`.
pub fn semisimple_at_zero(m: &Matrix) -> bool {
    m.is_square() && m.rank() == (m * m).rank()
}

/// For `m` with `Ker m ⊕ Im m = K^n`: conjugator columns are the image
/// basis followed by the kernel basis.
pub fn split_semisimple_zero(m: &Matrix) -> Result<SemisimpleZeroSplit> {
    require_square(m)?;
    let n = m.rows();
    let (ker, im) = m.kernel_and_image();
    let p = im.len();
    let basis = columns_matrix(m.field(), n, &[&im, &ker]);
    let inv = basis.inverse().map_err(|_| Error::NotSemisimpleAtZero)?;
    let split = &(&inv * m) * &basis;
    Ok(SemisimpleZeroSplit {
        conjugator: basis,
        invertible_part: split.submatrix(0, 0, p, p),
    })
}

/// Similarity test: equal size, equal field and identical invariant factors.
pub fn invariant_factors_equal(a: &Matrix, b: &Matrix) -> Result<bool> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch {
            left: a.field().to_string(),
            right: b.field().to_string(),
        });
    }
    require_square(a)?;
    require_square(b)?;
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "cannot compare {0}x{0} with {1}x{1}",
            a.rows(),
            b.rows()
        )));
    }
    Ok(invariant_factors(a)? == invariant_factors(b)?)
}

/// `Π P_i`, which equals the characteristic polynomial.
pub fn product_of_factors(field: Field, factors: &[MonicPoly]) -> Poly {
    factors
        .iter()
        .fold(Poly::one(field), |acc, p| acc.mul(&p.to_poly()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{conjugate, reversal_matrix};

    const Q: Field = Field::Rationals;
    const GF2: Field = Field::Prime(2);

    fn m(field: Field, n: usize, e: &[i64]) -> Matrix {
        Matrix::from_i64(field, n, n, e)
    }

    fn replay(conj: &Matrix, a: &Matrix) -> Matrix {
        &(&conj.inverse().unwrap() * a) * conj
    }

    fn mp(f: Field, c: &[i64]) -> MonicPoly {
        MonicPoly::from_ascending_i64(f, c)
    }

    #[test]
    fn fitting_examples() {
        let j2 = jordan_block(GF2, 2);
        let fd = fitting_decompose(&j2).unwrap();
        assert!(fd.conjugator.is_identity());
        assert_eq!(fd.invertible_block.rows(), 0);
        assert_eq!(fd.nilpotent_block_sizes, vec![2]);

        let a = m(Q, 3, &[1, 0, 0, 0, 0, 1, 0, 0, 0]);
        let fd = fitting_decompose(&a).unwrap();
        assert!(fd.conjugator.is_identity());
        assert_eq!(fd.invertible_block, m(Q, 1, &[1]));
        assert_eq!(fd.nilpotent_block_sizes, vec![2]);

        let a = m(Q, 2, &[1, 1, 0, 0]);
        let fd = fitting_decompose(&a).unwrap();
        assert_eq!(fd.conjugator, m(Q, 2, &[1, 1, 0, -1]));
        assert_eq!(fd.invertible_block, m(Q, 1, &[1]));
        assert_eq!(fd.nilpotent_block_sizes, vec![1]);
        assert_eq!(replay(&fd.conjugator, &a), m(Q, 2, &[1, 0, 0, 0]));
    }

    #[test]
    fn fitting_extremes() {
        let inv = m(Q, 2, &[2, 1, 1, 1]);
        let fd = fitting_decompose(&inv).unwrap();
        assert!(fd.nilpotent_block_sizes.is_empty());
        assert_eq!(replay(&fd.conjugator, &inv), fd.canonical_matrix());
        let empty = Matrix::zeros(Q, 0, 0);
        let fd = fitting_decompose(&empty).unwrap();
        assert_eq!(fd.canonical_matrix(), empty);
    }

    #[test]
    fn nilpotent_jordan_examples() {
        let (t, sizes) = nilpotent_jordan(&Matrix::zeros(Q, 2, 2)).unwrap();
        assert_eq!(sizes, vec![1, 1]);
        assert!(t.is_identity());

        let a = m(GF2, 2, &[1, 1, 1, 1]);
        let (t, sizes) = nilpotent_jordan(&a).unwrap();
        assert_eq!(sizes, vec![2]);
        assert_eq!(replay(&t, &a), jordan_block(GF2, 2));

        let (t, sizes) = nilpotent_jordan(&jordan_block(Q, 3)).unwrap();
        assert!(t.is_identity());
        assert_eq!(sizes, vec![3]);

        assert_eq!(
            nilpotent_jordan(&Matrix::identity(Q, 2)),
            Err(Error::NotNilpotent)
        );
    }

    #[test]
    fn nilpotent_jordan_mixed_blocks() {
        // Diag(J3, J1, J2) conjugated by a dense unimodular matrix
        let j = block_diag(
            Q,
            &[
                &jordan_block(Q, 3),
                &jordan_block(Q, 1),
                &jordan_block(Q, 2),
            ],
        )
        .unwrap();
        let r = m(
            Q,
            6,
            &[
                1, 2, 0, 1, 0, 0, 0, 1, 1, 0, 2, 0, 1, 0, 1, 0, 0, 3, 0, 0, 0, 1, 1, 0, 2, 1, 0, 0,
                1, 1, 0, 0, 1, 0, 0, 1,
            ],
        );
        let a = conjugate(&j, &r).unwrap();
        let (t, sizes) = nilpotent_jordan(&a).unwrap();
        assert_eq!(sizes, vec![3, 2, 1]);
        let expected = block_diag(
            Q,
            &[
                &jordan_block(Q, 3),
                &jordan_block(Q, 2),
                &jordan_block(Q, 1),
            ],
        )
        .unwrap();
        assert_eq!(replay(&t, &a), expected);
    }

    #[test]
    fn rcf_examples() {
        let r = rcf(&Matrix::identity(Q, 2)).unwrap();
        assert_eq!(r.invariant_factors, vec![mp(Q, &[-1, 1]), mp(Q, &[-1, 1])]);

        let a = m(Q, 2, &[0, 1, 1, 0]);
        let r = rcf(&a).unwrap();
        assert_eq!(r.invariant_factors, vec![mp(Q, &[-1, 0, 1])]);
        assert_eq!(replay(&r.conjugator, &a), r.canonical_matrix());

        let c1 = companion(&mp(Q, &[-2, 1])).unwrap();
        let c2 = companion(&mp(Q, &[0, -2, 1])).unwrap();
        let a = block_diag(Q, &[&c1, &c2]).unwrap();
        let r = rcf(&a).unwrap();
        assert_eq!(
            r.invariant_factors,
            vec![mp(Q, &[-2, 1]), mp(Q, &[0, -2, 1])]
        );
        assert_eq!(replay(&r.conjugator, &a), r.canonical_matrix());
    }

    #[test]
    fn rcf_needs_combined_vector() {
        // no standard basis vector is cyclic: e1 has order t, e2 has order t-1
        let a = m(Q, 2, &[0, 0, 0, 1]);
        let r = rcf(&a).unwrap();
        assert_eq!(r.invariant_factors, vec![mp(Q, &[0, -1, 1])]);
        assert_eq!(replay(&r.conjugator, &a), r.canonical_matrix());
    }

    #[test]
    fn split_examples() {
        let s = split_semisimple_zero(&m(Q, 2, &[5, 0, 0, 0])).unwrap();
        assert!(s.conjugator.is_identity());
        assert_eq!(s.invertible_part, m(Q, 1, &[5]));

        let a = m(Q, 2, &[1, 1, 0, 0]);
        let s = split_semisimple_zero(&a).unwrap();
        assert_eq!(s.conjugator, m(Q, 2, &[1, 1, 0, -1]));
        assert_eq!(s.invertible_part, m(Q, 1, &[1]));

        assert_eq!(
            split_semisimple_zero(&jordan_block(Q, 2)),
            Err(Error::NotSemisimpleAtZero)
        );
    }

    #[test]
    fn similarity_test_examples() {
        let j2 = jordan_block(Q, 2);
        assert!(invariant_factors_equal(&j2, &j2.transpose()).unwrap());
        assert!(
            !invariant_factors_equal(&Matrix::identity(Q, 2), &m(Q, 2, &[1, 0, 0, 0])).unwrap()
        );
        let a = m(Q, 3, &[1, 2, 0, 0, 1, -1, 3, 0, 0]);
        let r = m(Q, 3, &[2, 1, 0, 1, 1, 0, 0, 3, 1]);
        assert!(invariant_factors_equal(&a, &conjugate(&a, &r).unwrap()).unwrap());
        assert!(invariant_factors_equal(&a, &Matrix::identity(Q, 2)).is_err());
        assert!(invariant_factors_equal(&a, &Matrix::identity(GF2, 3)).is_err());
    }

    #[test]
    fn reversal_transposes_jordan_blocks() {
        for k in 1..8 {
            let j = jordan_block(Q, k);
            assert_eq!(
                conjugate(&j, &reversal_matrix(Q, k)).unwrap(),
                j.transpose()
            );
        }
    }

    #[test]
    fn non_unit_factor_iff_small_eigenspace() {
        // a factor different from t-1 exists iff dim Ker(N - I) < size
        let cases = [
            m(Q, 2, &[1, 0, 0, 1]),
            m(Q, 2, &[1, 1, 0, 1]),
            m(Q, 3, &[1, 0, 0, 0, 1, 0, 0, 0, 2]),
            m(Q, 3, &[2, 0, 0, 0, 2, 0, 0, 0, 2]),
            m(GF2, 2, &[1, 0, 0, 1]),
            m(GF2, 2, &[0, 1, 1, 0]),
        ];
        for n_mat in cases {
            let p = n_mat.rows();
            let eigenspace = (&n_mat - &Matrix::identity(n_mat.field(), p))
                .kernel_basis()
                .len();
            let any_other = invariant_factors(&n_mat)
                .unwrap()
                .iter()
                .any(|f| !f.is_t_minus_one());
            assert_eq!(any_other, eigenspace < p);
        }
    }
}
