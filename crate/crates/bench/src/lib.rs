//! Fixed inputs shared by the benchmarks.

use simgroup_core::{Field, Matrix};

/// Rank-`p` matrix of size `n` with small entries: a fixed pseudo-random
/// `p × n` block followed by negated copies of its rows.
pub fn low_rank(field: Field, n: usize, p: usize) -> Matrix {
    let mut state: u64 = 0x2545_f491;
    let mut entries = vec![0i64; n * n];
    for i in 0..p {
        for j in 0..n {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            entries[i * n + j] = ((state >> 33) % 7) as i64 - 3;
        }
        entries[i * n + i] += 4;
    }
    for i in p..n {
        for j in 0..n {
            entries[i * n + j] = -entries[(i % p.max(1)) * n + j];
        }
    }
    Matrix::from_i64(field, n, n, &entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_rank_has_the_requested_rank() {
        for field in [Field::Rationals, Field::Prime(5)] {
            for n in 2..=6 {
                for p in 0..n {
                    assert_eq!(low_rank(field, n, p).rank(), p, "n={n} p={p} over {field}");
                }
            }
        }
    }
}
