//! Constructive factorization of any matrix of rank at most `rank A` into
//! conjugates of a singular matrix `A`.
//!
//! The construction runs in five stages, each producing a
//! [`SimilarityCertificate`] over the base `A`:
//!
//! 1. a rank-`p` target `B` with `Ker B ⊕ Im B = K^n`, as the product of
//!    `A` (in Fitting/Jordan form) with its block-wise transpose;
//! 2. a rank-`p` idempotent `E*`, by repeatedly multiplying the current
//!    target with a conjugate of itself until `rk(M - I)` bottoms out;
//! 3. any rank-`p` matrix with semisimple eigenvalue 0, from idempotent
//!    factorizations of `Diag(Q, 0_1)` and conjugated copies of `E*`;
//! 4. any rank-`p` matrix, split as `Diag(P, C_k…) · Diag(I, C'_k…)` where
//!    both factors have semisimple eigenvalue 0;
//! 5. any matrix of rank `r < p`, as a product of `p - r + 1` rank-`p`
//!    matrices.

use crate::canonical::{fitting_decompose, rcf, semisimple_at_zero, split_semisimple_zero};
use crate::certificate::{concat, conjugate_certificate, SimilarityCertificate};
use crate::error::{Error, Result};
use crate::idempotent::{factor_q0_into_idempotents, idempotent_conjugator};
use crate::matrix::{block_diag, reversal_matrix, Matrix};
use crate::poly::{companion, krylov_matrix, times_t, MonicPoly};
use crate::scalar::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepId {
    S1,
    S2,
    S3,
    S4,
    S5,
}

/// One stage of a factorization run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepEntry {
    pub step: StepId,
    pub certificate_len: usize,
    /// `rk(M - I)` before each descent iteration and after the last one
    /// (only recorded for stage 2).
    pub rank_sequence: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StepTrace {
    pub entries: Vec<StepEntry>,
}

impl StepTrace {
    fn push(&mut self, step: StepId, cert: &SimilarityCertificate) {
        self.entries.push(StepEntry {
            step,
            certificate_len: cert.factor_count(),
            rank_sequence: Vec::new(),
        });
    }

    /// The `rk(M - I)` sequence of the idempotent descent, if it ran.
    pub fn step2_ranks(&self) -> Option<&[usize]> {
        self.entries
            .iter()
            .find(|e| e.step == StepId::S2)
            .map(|e| e.rank_sequence.as_slice())
    }

    /// Number of descent iterations performed by stage 2.
    pub fn step2_iterations(&self) -> Option<usize> {
        self.step2_ranks().map(|r| r.len().saturating_sub(1))
    }
}

fn transposing_conjugator(field: Field, q: usize, sizes: &[usize]) -> Matrix {
    let reversals: Vec<Matrix> = sizes.iter().map(|&k| reversal_matrix(field, k)).collect();
    let id = Matrix::identity(field, q);
    let mut blocks = vec![&id];
    blocks.extend(reversals.iter());
    block_diag(field, &blocks).expect("square blocks")
}

fn rank_minus_identity(m: &Matrix) -> usize {
    (m - &Matrix::identity(m.field(), m.rows())).rank()
}

/// Stage 1: two conjugates of `a` whose product has rank `rank a` and
/// semisimple eigenvalue 0.
///
/// With `T^{-1} a T = Diag(Q, J_{i_1}, …)` the certificate is
/// `[T^{-1}, W T^{-1}]` where `W = Diag(I, K_{i_1}, …)` transposes each
/// Jordan block; the target is `Diag(Q², I_{i_1-1}, 0, …)`.
pub fn step1(a: &Matrix) -> Result<SimilarityCertificate> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let p = a.rank();
    if p == 0 || p == n {
        return Err(Error::InvalidRank { rank: p, size: n });
    }
    let field = a.field();
    let fd = fitting_decompose(a)?;
    let t_inv = fd.conjugator.inverse()?;
    let w = transposing_conjugator(field, fd.invertible_block.rows(), &fd.nilpotent_block_sizes);
    let canon = fd.canonical_matrix();
    let transposed = &(&w * &canon) * &w;
    let target = &canon * &transposed;
    let second = &w * &t_inv;
    SimilarityCertificate::new(a.clone(), vec![t_inv, second], target)
}

/// Stage 2: descends from a rank-`p` target with semisimple eigenvalue 0 to
/// a rank-`p` idempotent. Returns the certificate and the strictly
/// decreasing sequence of `rk(M - I)` values.
///
/// Each iteration writes `M ~ Diag(Q, C(P), 0)` with `P` the last invariant
/// factor of the invertible part (which differs from `t - 1` as long as `M`
/// is not idempotent), rebases `Diag(C(P), 0_1)` to `C(t P)` and multiplies
/// `M` on the left by its conjugate under the reversal of that block, which
/// turns the block into an idempotent and squares `Q`.
pub fn step2(cert: &SimilarityCertificate) -> Result<(SimilarityCertificate, Vec<usize>)> {
    let field = cert.field;
    let n = cert.size();
    let p = cert.target.rank();
    if p == 0 || p >= n {
        return Err(Error::InvalidRank { rank: p, size: n });
    }
    if !semisimple_at_zero(&cert.target) {
        return Err(Error::NotSemisimpleAtZero);
    }
    let mut cert = cert.clone();
    let mut ranks = vec![rank_minus_identity(&cert.target)];
    loop {
        let split = split_semisimple_zero(&cert.target)?;
        let form = rcf(&split.invertible_part)?;
        let Some(chosen) = form
            .invariant_factors
            .last()
            .filter(|f| !f.is_t_minus_one())
        else {
            break;
        };
        if ranks.len() > p {
            return Err(Error::Internal(format!(
                "idempotent descent exceeded {p} iterations"
            )));
        }
        let d = chosen.degree();
        let rest = p - d;

        // Diag(C(P), 0_1) is cyclic with cyclic vector e_0 + e_d; its Krylov
        // basis conjugates it to C(t P).
        let shifted = block_diag(field, &[&companion(chosen)?, &Matrix::zeros(field, 1, 1)])?;
        let mut cyclic = vec![field.zero(); d + 1];
        cyclic[0] = field.one();
        cyclic[d] = field.one();
        let rebase = krylov_matrix(&shifted, &cyclic, d + 1);
        debug_assert_eq!(
            &(&rebase.inverse()? * &shifted) * &rebase,
            companion(&times_t(chosen))?
        );

        let id_rest = Matrix::identity(field, rest);
        let id_tail = Matrix::identity(field, n - p - 1);
        let change = &(&split.conjugator
            * &block_diag(field, &[&form.conjugator, &Matrix::identity(field, n - p)])?)
            * &block_diag(field, &[&id_rest, &rebase, &id_tail])?;
        let flip = block_diag(field, &[&id_rest, &reversal_matrix(field, d + 1), &id_tail])?;
        let lifted_flip = &(&change * &flip) * &change.inverse()?;

        let next = concat(&[conjugate_certificate(&cert, &lifted_flip)?, cert])?;
        let r = rank_minus_identity(&next.target);
        let last = *ranks.last().expect("nonempty");
        if r >= last {
            return Err(Error::Internal(format!(
                "rk(M - I) did not decrease: {last} -> {r}"
            )));
        }
        ranks.push(r);
        cert = next;
    }
    Ok((cert, ranks))
}

/// Stage 3: certificate for a rank-`p` matrix `b` with semisimple
/// eigenvalue 0, given a certificate whose target is a rank-`p` idempotent.
pub fn step3(b: &Matrix, e_star: &SimilarityCertificate) -> Result<SimilarityCertificate> {
    let idem = &e_star.target;
    if !idem.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    let field = e_star.field;
    let n = e_star.size();
    let p = idem.rank();
    let rb = b.rank();
    if rb != p {
        return Err(Error::RankMismatch {
            expected: p,
            found: rb,
        });
    }
    if p >= n {
        return Err(Error::InvalidRank { rank: p, size: n });
    }
    let split = split_semisimple_zero(b)?;
    let pad = Matrix::zeros(field, n - p - 1, n - p - 1);
    let mut pieces = Vec::new();
    for small in factor_q0_into_idempotents(&split.invertible_part)? {
        let padded = block_diag(field, &[&small, &pad])?;
        let r = idempotent_conjugator(idem, &padded)?;
        pieces.push(conjugate_certificate(e_star, &(&split.conjugator * &r))?);
    }
    concat(&pieces)
}

/// The pair `(C_k, C'_k) = (C(t^k - t), Diag(I_{k-1}, 0))`, whose product
/// is `J_kᵀ`. Requires `k >= 2`.
pub fn transposed_jordan_split(field: Field, k: usize) -> Result<(Matrix, Matrix)> {
    if k < 2 {
        return Err(Error::InvalidRank { rank: k, size: k });
    }
    let mut tail = vec![field.zero(); k];
    tail[1] = field.one();
    let left = companion(&MonicPoly::from_tail(field, tail))?;
    let mut right = Matrix::identity(field, k);
    right[(k - 1, k - 1)] = field.zero();
    Ok((left, right))
}

/// Stage 4: certificate for any rank-`p` matrix.
///
/// With `b ~ Diag(P, J_{i_1}ᵀ, …, J_{i_d}ᵀ, 0)` (all `i_j >= 2`) and the
/// identity `J_kᵀ = C(t^k - t) · Diag(I_{k-1}, 0)`, `b` is a product of two
/// rank-`p` matrices with semisimple eigenvalue 0, each handled by stage 3.
pub fn step4(b: &Matrix, e_star: &SimilarityCertificate) -> Result<SimilarityCertificate> {
    let field = e_star.field;
    let p = e_star.target.rank();
    let rb = b.rank();
    if rb != p {
        return Err(Error::RankMismatch {
            expected: p,
            found: rb,
        });
    }
    if semisimple_at_zero(b) {
        return step3(b, e_star);
    }
    let fd = fitting_decompose(b)?;
    let q = fd.invertible_block.rows();
    let sizes = &fd.nilpotent_block_sizes;
    let w = transposing_conjugator(field, q, sizes);
    let change = &fd.conjugator * &w;

    let mut left_blocks = vec![fd.invertible_block.clone()];
    let mut right_blocks = vec![Matrix::identity(field, q)];
    for &k in sizes {
        if k >= 2 {
            let (c, c_prime) = transposed_jordan_split(field, k)?;
            left_blocks.push(c);
            right_blocks.push(c_prime);
        } else {
            left_blocks.push(Matrix::zeros(field, 1, 1));
            right_blocks.push(Matrix::zeros(field, 1, 1));
        }
    }
    let x = block_diag(field, &left_blocks.iter().collect::<Vec<_>>())?;
    let y = block_diag(field, &right_blocks.iter().collect::<Vec<_>>())?;
    if &x * &y != &(&w * &fd.canonical_matrix()) * &w {
        return Err(Error::Internal(
            "transposed Jordan split does not multiply back".into(),
        ));
    }
    let joined = concat(&[step3(&x, e_star)?, step3(&y, e_star)?])?;
    conjugate_certificate(&joined, &change)
}

/// `D_k = Diag(I_{k-1}, 0, I_{p+1-k}, 0_{n-p-1})` for `1 <= k <= p + 1`.
pub fn rank_lowering_diagonal(field: Field, n: usize, p: usize, k: usize) -> Matrix {
    Matrix::from_fn(field, n, n, |i, j| {
        if i == j && i <= p && i + 1 != k {
            field.one()
        } else {
            field.zero()
        }
    })
}

/// Stage 5: certificate for a matrix of rank `r < p`.
///
/// Writes `b = Q · Diag(I_r, 0) · Q'` and
/// `Diag(I_r, 0) = D_{r+1} ⋯ D_{p+1}`, so that
/// `b = (Q D_{r+1}) D_{r+2} ⋯ D_p (D_{p+1} Q')` is a product of rank-`p`
/// matrices, each handled by stage 4.
pub fn step5(
    b: &Matrix,
    e_star: &SimilarityCertificate,
    p: usize,
) -> Result<SimilarityCertificate> {
    let field = e_star.field;
    let n = e_star.size();
    let r = b.rank();
    if r >= p {
        return Err(Error::RankMismatch {
            expected: p.saturating_sub(1),
            found: r,
        });
    }
    if p >= n {
        return Err(Error::InvalidRank { rank: p, size: n });
    }
    let red = b.row_reduce();
    let left = red.transform.inverse()?;
    let mut right = Matrix::zeros(field, n, n);
    for i in 0..r {
        for j in 0..n {
            right[(i, j)] = red.reduced[(i, j)].clone();
        }
    }
    let free = (0..n).filter(|c| !red.pivots.contains(c));
    for (i, c) in (r..n).zip(free) {
        right[(i, c)] = field.one();
    }

    let mut factors: Vec<Matrix> = (r + 1..=p + 1)
        .map(|k| rank_lowering_diagonal(field, n, p, k))
        .collect();
    let last = factors.len() - 1;
    factors[0] = &left * &factors[0];
    factors[last] = &factors[last] * &right;

    let check = factors
        .iter()
        .fold(Matrix::identity(field, n), |acc, f| &acc * f);
    if &check != b {
        return Err(Error::Internal(
            "rank-lowering factors do not multiply back".into(),
        ));
    }
    let pieces = factors
        .iter()
        .map(|f| step4(f, e_star))
        .collect::<Result<Vec<_>>>()?;
    concat(&pieces)
}

/// Upper bound on the certificate length emitted by [`factor`].
pub fn length_budget(p: usize, r: usize) -> u128 {
    let p = p as u128;
    let r = r as u128;
    (p - r + 2) * 2 * (2 * p * p + 2 * p + 1) * (1u128 << (p + 1))
}

/// Factors `m` into conjugates of the singular matrix `a`.
///
/// Requires `rank m <= rank a < n`. The rank-0 base is special-cased: its
/// similarity class is `{0}`, so `m = 0` and the certificate is `[I]`.
pub fn factor(a: &Matrix, m: &Matrix) -> Result<(SimilarityCertificate, StepTrace)> {
    if a.field() != m.field() {
        return Err(Error::FieldMismatch {
            left: a.field().to_string(),
            right: m.field().to_string(),
        });
    }
    for x in [a, m] {
        if !x.is_square() {
            return Err(Error::NotSquare {
                rows: x.rows(),
                cols: x.cols(),
            });
        }
    }
    if a.rows() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "base is {0}x{0}, target is {1}x{1}",
            a.rows(),
            m.rows()
        )));
    }
    let field = a.field();
    let n = a.rows();
    let p = a.rank();
    if p == n {
        return Err(Error::NotSingular);
    }
    let r = m.rank();
    if r > p {
        return Err(Error::RankTooHigh { base: p, target: r });
    }
    let mut trace = StepTrace::default();
    if p == 0 {
        let cert =
            SimilarityCertificate::new(a.clone(), vec![Matrix::identity(field, n)], m.clone())?;
        return Ok((cert, trace));
    }

    let first = step1(a)?;
    trace.push(StepId::S1, &first);
    let (e_star, ranks) = step2(&first)?;
    trace.push(StepId::S2, &e_star);
    trace.entries.last_mut().expect("pushed").rank_sequence = ranks;

    let (cert, step) = if r < p {
        (step5(m, &e_star, p)?, StepId::S5)
    } else if semisimple_at_zero(m) {
        (step3(m, &e_star)?, StepId::S3)
    } else {
        (step4(m, &e_star)?, StepId::S4)
    };
    trace.push(step, &cert);

    if cert.factor_count() as u128 > length_budget(p, r) {
        return Err(Error::Internal(format!(
            "certificate length {} exceeds budget {}",
            cert.factor_count(),
            length_budget(p, r)
        )));
    }
    Ok((cert, trace))
}
