//! Brute-force semigroup closures over small prime fields.
//!
//! This module keeps its own arithmetic: matrices are arrays of residues and
//! are interned as a single `u64` key (row-major, mixed radix `q`). It only
//! meets [`Matrix`] at the boundary, so its answers are independent of the
//! elimination and canonical-form code used by the constructive engine.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::canonical::invariant_factors;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::MonicPoly;
use crate::scalar::{primitive_root, Field};

/// Largest matrix size the oracle accepts.
pub const MAX_ORACLE_SIZE: usize = 4;

/// Default bound on `q^(n²)`, the number of matrices in the ambient space.
pub const DEFAULT_SPACE_CAP: u64 = 1 << 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosureOptions {
    /// Refuse ambient spaces with more than `cap` matrices.
    pub cap: u64,
    /// Expand BFS frontiers on the rayon pool.
    pub parallel: bool,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        ClosureOptions {
            cap: DEFAULT_SPACE_CAP,
            parallel: false,
        }
    }
}

/// Outcome of an exhaustive check of one similarity class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    #[serde(serialize_with = "as_display")]
    pub field: Field,
    pub n: usize,
    pub rank: usize,
    pub class_size: usize,
    pub closure_size: usize,
    pub s_p_size: usize,
    pub equal: bool,
    #[serde(serialize_with = "as_display_seq")]
    pub generator_canonical_form: Vec<MonicPoly>,
}

/// One similarity class visited by [`sweep`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepEntry {
    /// Member of the class with the smallest packed key.
    pub representative: Matrix,
    pub report: ClosureReport,
}

fn as_display<T: std::fmt::Display, S: Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn as_display_seq<T: std::fmt::Display, S: Serializer>(
    v: &[T],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

type Entries = [u64; MAX_ORACLE_SIZE * MAX_ORACLE_SIZE];

/// `n×n` matrices over `GF(q)` with packed keys.
#[derive(Clone, Copy, Debug)]
struct Space {
    field: Field,
    q: u64,
    n: usize,
    cardinality: u64,
}

impl Space {
    fn new(field: Field, n: usize, cap: u64) -> Result<Space> {
        let q = field.modulus().ok_or(Error::FieldNotFinite)?;
        if n == 0 || n > MAX_ORACLE_SIZE {
            return Err(Error::TooLarge(format!(
                "oracle supports sizes 1..={MAX_ORACLE_SIZE}, got {n}"
            )));
        }
        match q.checked_pow((n * n) as u32) {
            Some(c) if c <= cap => Ok(Space {
                field,
                q,
                n,
                cardinality: c,
            }),
            _ => Err(Error::TooLarge(format!(
                "{q}^{} matrices exceed the cap of {cap}",
                n * n
            ))),
        }
    }

    fn len(&self) -> usize {
        self.n * self.n
    }

    fn encode(&self, e: &Entries) -> u64 {
        e[..self.len()]
            .iter()
            .rev()
            .fold(0, |acc, &x| acc * self.q + x)
    }

    fn decode(&self, mut key: u64) -> Entries {
        let mut e = [0; MAX_ORACLE_SIZE * MAX_ORACLE_SIZE];
        for x in e.iter_mut().take(self.len()) {
            *x = key % self.q;
            key /= self.q;
        }
        e
    }

    fn mul_mod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.q as u128) as u64
    }

    fn inv_mod(&self, a: u64) -> u64 {
        let mut acc = 1;
        let mut base = a;
        let mut exp = self.q - 2;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_mod(acc, base);
            }
            base = self.mul_mod(base, base);
            exp >>= 1;
        }
        acc
    }

    fn mul(&self, a: &Entries, b: &Entries) -> Entries {
        let n = self.n;
        let mut c = [0; MAX_ORACLE_SIZE * MAX_ORACLE_SIZE];
        for i in 0..n {
            for j in 0..n {
                let mut s: u128 = 0;
                for k in 0..n {
                    s += a[i * n + k] as u128 * b[k * n + j] as u128;
                }
                c[i * n + j] = (s % self.q as u128) as u64;
            }
        }
        c
    }

    fn mul_keys(&self, a: u64, b: u64) -> u64 {
        self.encode(&self.mul(&self.decode(a), &self.decode(b)))
    }

    fn rank(&self, a: &Entries) -> usize {
        let n = self.n;
        let q = self.q;
        let mut m = *a;
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&r| m[r * n + col] != 0) else {
                continue;
            };
            for j in 0..n {
                m.swap(piv * n + j, rank * n + j);
            }
            let inv = self.inv_mod(m[rank * n + col]);
            for r in 0..n {
                if r == rank || m[r * n + col] == 0 {
                    continue;
                }
                let f = self.mul_mod(m[r * n + col], inv);
                for j in 0..n {
                    let sub = self.mul_mod(f, m[rank * n + j]);
                    m[r * n + j] = (m[r * n + j] + q - sub) % q;
                }
            }
            rank += 1;
        }
        rank
    }

    fn rank_key(&self, key: u64) -> usize {
        self.rank(&self.decode(key))
    }

    fn identity(&self) -> Entries {
        let mut e = [0; MAX_ORACLE_SIZE * MAX_ORACLE_SIZE];
        for i in 0..self.n {
            e[i * self.n + i] = 1;
        }
        e
    }

    /// Transvections `I + E_ij` and one dilation by a primitive root, each
    /// paired with its inverse.
    fn gl_generators(&self) -> Vec<(Entries, Entries)> {
        let n = self.n;
        let mut gens = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let mut t = self.identity();
                let mut t_inv = self.identity();
                t[i * n + j] = 1;
                t_inv[i * n + j] = self.q - 1;
                gens.push((t, t_inv));
            }
        }
        let g = primitive_root(self.q);
        if g != 1 {
            let mut d = self.identity();
            let mut d_inv = self.identity();
            d[0] = g;
            d_inv[0] = self.inv_mod(g);
            gens.push((d, d_inv));
        }
        gens
    }

    fn key_of(&self, m: &Matrix) -> Result<u64> {
        if m.field() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: m.field().to_string(),
            });
        }
        if m.rows() != self.n || m.cols() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "expected {0}x{0}, found {1}x{2}",
                self.n,
                m.rows(),
                m.cols()
            )));
        }
        let mut e = [0; MAX_ORACLE_SIZE * MAX_ORACLE_SIZE];
        for (x, s) in e.iter_mut().zip(m.entries()) {
            *x = s.residue().expect("prime field entry");
        }
        Ok(self.encode(&e))
    }

    fn matrix_of(&self, key: u64) -> Matrix {
        let e = self.decode(key);
        let n = self.n;
        Matrix::from_fn(self.field, n, n, |i, j| {
            self.field.from_i64(e[i * n + j] as i64)
        })
    }

    fn matrices_of(&self, keys: &HashSet<u64>) -> Vec<Matrix> {
        let mut sorted: Vec<u64> = keys.iter().copied().collect();
        sorted.sort_unstable();
        sorted.into_iter().map(|k| self.matrix_of(k)).collect()
    }
}

fn space_for(m: &Matrix, cap: u64) -> Result<Space> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Space::new(m.field(), m.rows(), cap)
}

/// Breadth-first fixpoint: starting from `seeds`, apply `step` to every new
/// element until nothing new appears. `check` runs on each new element and
/// may abort the search by returning `false`; the flag in the result records
/// whether that happened.
fn bfs<F, C>(
    seeds: &[u64],
    cap: u64,
    parallel: bool,
    step: F,
    mut check: C,
) -> Result<(HashSet<u64>, bool)>
where
    F: Fn(u64) -> Vec<u64> + Sync,
    C: FnMut(u64) -> bool,
{
    let mut seen: HashSet<u64> = HashSet::new();
    let mut frontier = Vec::new();
    for &s in seeds {
        if seen.insert(s) {
            if !check(s) {
                return Ok((seen, false));
            }
            frontier.push(s);
        }
    }
    while !frontier.is_empty() {
        let produced: Vec<u64> = if parallel {
            frontier.par_iter().flat_map_iter(|&x| step(x)).collect()
        } else {
            frontier.iter().flat_map(|&x| step(x)).collect()
        };
        let mut next = Vec::new();
        for y in produced {
            if seen.insert(y) {
                if seen.len() as u64 > cap {
                    return Err(Error::TooLarge(format!("closure exceeds {cap} elements")));
                }
                if !check(y) {
                    return Ok((seen, false));
                }
                next.push(y);
            }
        }
        frontier = next;
    }
    Ok((seen, true))
}

fn class_keys(space: &Space, a: u64, opts: &ClosureOptions) -> Result<HashSet<u64>> {
    let gens = space.gl_generators();
    let step = |x: u64| {
        let m = space.decode(x);
        gens.iter()
            .map(|(r, r_inv)| space.encode(&space.mul(&space.mul(r, &m), r_inv)))
            .collect()
    };
    Ok(bfs(&[a], opts.cap, opts.parallel, step, |_| true)?.0)
}

fn closure_keys(
    space: &Space,
    gens: &[u64],
    opts: &ClosureOptions,
    rank_bound: Option<usize>,
) -> Result<(HashSet<u64>, bool)> {
    let step = |x: u64| gens.iter().map(|&g| space.mul_keys(x, g)).collect();
    let check = |x: u64| rank_bound.is_none_or(|p| space.rank_key(x) <= p);
    bfs(gens, opts.cap, opts.parallel, step, check)
}

fn s_p_count(space: &Space, p: usize, parallel: bool) -> usize {
    if p >= space.n {
        return space.cardinality as usize;
    }
    if parallel {
        (0..space.cardinality)
            .into_par_iter()
            .filter(|&k| space.rank_key(k) <= p)
            .count()
    } else {
        (0..space.cardinality)
            .filter(|&k| space.rank_key(k) <= p)
            .count()
    }
}

/// The orbit `{R A R^{-1}}` under `GL_n(q)`, sorted by packed key.
pub fn similarity_class(a: &Matrix, opts: &ClosureOptions) -> Result<Vec<Matrix>> {
    let space = space_for(a, opts.cap)?;
    let key = space.key_of(a)?;
    Ok(space.matrices_of(&class_keys(&space, key, opts)?))
}

/// The semigroup generated by `generators` (products of length at least
/// one), sorted by packed key. `opts.cap` bounds both the ambient space and
/// the closure size.
pub fn semigroup_closure(generators: &[Matrix], opts: &ClosureOptions) -> Result<Vec<Matrix>> {
    let first = generators
        .first()
        .ok_or_else(|| Error::DimensionMismatch("generator set is empty".into()))?;
    let space = space_for(first, opts.cap)?;
    let keys = generators
        .iter()
        .map(|g| space.key_of(g))
        .collect::<Result<Vec<_>>>()?;
    Ok(space.matrices_of(&closure_keys(&space, &keys, opts, None)?.0))
}

/// Every `n×n` matrix over `field` of rank at most `p`, sorted by packed key.
pub fn s_p_set(field: Field, n: usize, p: usize, opts: &ClosureOptions) -> Result<Vec<Matrix>> {
    let space = Space::new(field, n, opts.cap)?;
    Ok((0..space.cardinality)
        .filter(|&k| space.rank_key(k) <= p)
        .map(|k| space.matrix_of(k))
        .collect())
}

/// Compares the semigroup generated by the class of a singular `a` with
/// `S_p`, `p = rank(a)`. The closure search stops at the first element of
/// rank above `p`, in which case `equal` is false and `closure_size` counts
/// only what was reached.
pub fn theorem_check(a: &Matrix, opts: &ClosureOptions) -> Result<ClosureReport> {
    let space = space_for(a, opts.cap)?;
    let key = space.key_of(a)?;
    check_class(&space, key, opts)
}

fn check_class(space: &Space, key: u64, opts: &ClosureOptions) -> Result<ClosureReport> {
    let p = space.rank_key(key);
    if p == space.n {
        return Err(Error::NotSingular);
    }
    let class = class_keys(space, key, opts)?;
    let mut gens: Vec<u64> = class.iter().copied().collect();
    gens.sort_unstable();
    let (closure, contained) = closure_keys(space, &gens, opts, Some(p))?;
    let s_p_size = s_p_count(space, p, opts.parallel);
    Ok(ClosureReport {
        field: space.field,
        n: space.n,
        rank: p,
        class_size: class.len(),
        closure_size: closure.len(),
        s_p_size,
        equal: contained && closure.len() == s_p_size,
        generator_canonical_form: invariant_factors(&space.matrix_of(key))?,
    })
}

/// Runs [`theorem_check`] on every singular similarity class of `n×n`
/// matrices over `field`, ordered by the smallest key in each class.
pub fn sweep(field: Field, n: usize, opts: &ClosureOptions) -> Result<Vec<SweepEntry>> {
    let space = Space::new(field, n, opts.cap)?;
    let mut visited: HashSet<u64> = HashSet::new();
    let mut out = Vec::new();
    for key in 0..space.cardinality {
        if visited.contains(&key) || space.rank_key(key) == n {
            continue;
        }
        let class = class_keys(&space, key, opts)?;
        visited.extend(class.iter().copied());
        out.push(SweepEntry {
            representative: space.matrix_of(key),
            report: check_class(&space, key, opts)?,
        });
    }
    Ok(out)
}
