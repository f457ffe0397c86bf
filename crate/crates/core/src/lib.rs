//! Exact linear algebra for factoring low-rank matrices into products of
//! conjugates of a fixed singular matrix.
//!
//! Given a singular `A` of rank `p` and any `M` of the same size with
//! `rank M <= p`, [`engine::factor`] builds a [`SimilarityCertificate`]: an
//! explicit list of invertible `R_i` with `M = Π R_i A R_i^{-1}`. The
//! certificate is replayed from scratch by [`certificate::verify`].
//! [`closure`] enumerates the same semigroups by brute force over small
//! prime fields as an independent check.

mod basis;
pub mod canonical;
pub mod certificate;
pub mod closure;
pub mod engine;
pub mod error;
pub mod idempotent;
pub mod matrix;
pub mod poly;
pub mod scalar;

pub use canonical::{
    fitting_decompose, invariant_factors, invariant_factors_equal, nilpotent_jordan, rcf,
    split_semisimple_zero, FittingData, RcfData, SemisimpleZeroSplit,
};
pub use certificate::{
    concat, conjugate_certificate, verify, SimilarityCertificate, VerificationReport,
};
pub use closure::{
    s_p_set, semigroup_closure, similarity_class, sweep, theorem_check, ClosureOptions,
    ClosureReport, SweepEntry,
};
pub use engine::{
    factor, rank_lowering_diagonal, transposed_jordan_split, StepEntry, StepId, StepTrace,
};
pub use error::{Error, Result};
pub use idempotent::{
    factor_q0_into_idempotents, gl_elementary_decomposition, idempotent_conjugator,
    idempotent_pair, Elementary,
};
pub use matrix::{block_diag, conjugate, jordan_block, mat_mul, reversal_matrix, Matrix, Vector};
pub use poly::{companion, eval_at_zero, minimal_polynomial, times_t, MonicPoly, Poly};
pub use scalar::{Field, Scalar};
