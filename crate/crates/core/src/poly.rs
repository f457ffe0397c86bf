//! Polynomials over a field, companion matrices and minimal polynomials.
//!
//! Two representations coexist. [`Poly`] is a plain dense polynomial with
//! ascending coefficients, used for gcd/lcm/division. [`MonicPoly`] stores a
//! monic `t^p - Σ a_k t^k` by its coefficients `a_0 … a_{p-1}`, which are
//! exactly the last column of the companion matrix.

use std::fmt;

use crate::basis::IncrementalBasis;
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::scalar::{Field, Scalar};

/// Dense polynomial, `coeffs[k]` multiplies `t^k`. No trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: Field) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Poly::new(field, vec![field.one()])
    }

    /// The monomial `t^k`.
    pub fn monomial(field: Field, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = field.one();
        Poly { field, coeffs }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = self.field.zero();
        let coeffs = (0..n)
            .map(|k| {
                let a = self.coeffs.get(k).unwrap_or(&zero);
                let b = other.coeffs.get(k).unwrap_or(&zero);
                a + b
            })
            .collect();
        Poly::new(self.field, coeffs)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::new(self.field, coeffs)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let inv_lead = divisor
            .lead()
            .and_then(Scalar::inverse)
            .expect("nonzero lead");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); self.coeffs.len().saturating_sub(d)];
        while rem.len() > d {
            let top = rem.len() - 1;
            let c = rem[top].clone();
            if !c.is_zero() {
                let f = &c * &inv_lead;
                for (k, b) in divisor.coeffs.iter().enumerate() {
                    let idx = top - d + k;
                    rem[idx] = &rem[idx] - &(&f * b);
                }
                quot[top - d] = f;
            }
            rem.pop();
        }
        (Poly::new(self.field, quot), Poly::new(self.field, rem))
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.div_rem(self).1.is_zero()
    }

    /// Monic scalar multiple; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inverse().expect("nonzero lead");
                Poly::new(self.field, self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Monic least common multiple of two nonzero polynomials.
    pub fn lcm(&self, other: &Poly) -> Poly {
        let g = self.gcd(other);
        self.div_rem(&g).0.mul(other).monic()
    }

    /// `p(a)` by Horner's rule.
    pub fn eval_matrix(&self, a: &Matrix) -> Matrix {
        let n = a.rows();
        let mut acc = Matrix::zeros(self.field, n, n);
        for c in self.coeffs.iter().rev() {
            acc = &acc * a;
            for i in 0..n {
                acc[(i, i)] = &acc[(i, i)] + c;
            }
        }
        acc
    }

    /// `p(a) v` without forming `p(a)`.
    pub fn apply(&self, a: &Matrix, v: &[Scalar]) -> Vector {
        let mut acc = vec![self.field.zero(); v.len()];
        for c in self.coeffs.iter().rev() {
            acc = a.apply(&acc);
            for (x, y) in acc.iter_mut().zip(v) {
                *x = &*x + &(c * y);
            }
        }
        acc
    }
}

/// Monic polynomial `t^p - Σ_{k<p} a_k t^k`, stored as `a_0 … a_{p-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonicPoly {
    field: Field,
    tail: Vec<Scalar>,
}

impl MonicPoly {
    /// From the companion-column coefficients `a_0 … a_{p-1}`.
    pub fn from_tail(field: Field, tail: Vec<Scalar>) -> Self {
        MonicPoly { field, tail }
    }

    /// From a nonzero polynomial, normalized to be monic.
    pub fn from_poly(p: &Poly) -> Self {
        let m = p.monic();
        let d = m.degree().expect("zero polynomial is not monic");
        MonicPoly {
            field: p.field,
            tail: m.coeffs[..d].iter().map(|c| -c).collect(),
        }
    }

    /// Convenience constructor from ascending integer coefficients of a monic
    /// polynomial (the leading 1 included), e.g. `[-1, 0, 1]` for `t^2 - 1`.
    pub fn from_ascending_i64(field: Field, coeffs: &[i64]) -> Self {
        let p = Poly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect());
        assert!(
            p.lead().is_some_and(Scalar::is_one),
            "coefficients must describe a monic polynomial"
        );
        MonicPoly::from_poly(&p)
    }

    /// `t - c`.
    pub fn linear(field: Field, root: Scalar) -> Self {
        MonicPoly {
            field,
            tail: vec![root],
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.tail.len()
    }

    /// The companion-column coefficients `a_0 … a_{p-1}`.
    pub fn tail(&self) -> &[Scalar] {
        &self.tail
    }

    pub fn to_poly(&self) -> Poly {
        let mut coeffs: Vec<Scalar> = self.tail.iter().map(|c| -c).collect();
        coeffs.push(self.field.one());
        Poly::new(self.field, coeffs)
    }

    pub fn is_t_minus_one(&self) -> bool {
        self.tail.len() == 1 && self.tail[0].is_one()
    }
}

impl fmt::Display for MonicPoly {
    /// Standard monomial order, e.g. `t^3 - t`, `t^2 + t + 1`, `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.to_poly();
        let mut first = true;
        for (k, c) in p.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = c.signed_parts();
            let sign = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let coef = if mag == "1" && k > 0 {
                String::new()
            } else {
                mag
            };
            let mono = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            write!(f, "{sign}{coef}{mono}")?;
            first = false;
        }
        Ok(())
    }
}

/// Companion matrix: ones on the subdiagonal, last column `a_0 … a_{p-1}`.
pub fn companion(p: &MonicPoly) -> Result<Matrix> {
    let d = p.degree();
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    let f = p.field;
    Ok(Matrix::from_fn(f, d, d, |i, j| {
        if j == d - 1 {
            p.tail[i].clone()
        } else if i == j + 1 {
            f.one()
        } else {
            f.zero()
        }
    }))
}

/// `t · p(t)`.
pub fn times_t(p: &MonicPoly) -> MonicPoly {
    let mut tail = Vec::with_capacity(p.tail.len() + 1);
    tail.push(p.field.zero());
    tail.extend(p.tail.iter().cloned());
    MonicPoly {
        field: p.field,
        tail,
    }
}

/// `p(0)`.
pub fn eval_at_zero(p: &MonicPoly) -> Scalar {
    match p.tail.first() {
        Some(a0) => -a0,
        None => p.field.one(),
    }
}

/// Krylov vectors `v, a v, …, a^{len-1} v` as matrix columns.
pub fn krylov_matrix(a: &Matrix, v: &[Scalar], len: usize) -> Matrix {
    let mut cols = Vec::with_capacity(len);
    let mut cur = v.to_vec();
    for _ in 0..len {
        let next = a.apply(&cur);
        cols.push(std::mem::replace(&mut cur, next));
    }
    Matrix::from_columns(a.field(), a.rows(), &cols)
}

/// Least-degree monic `p` with `p(a) v = 0`, found from the first linear
/// dependency in the Krylov sequence of `v`.
pub fn vector_minimal_polynomial(a: &Matrix, v: &[Scalar]) -> MonicPoly {
    let mut basis = IncrementalBasis::new(a.field());
    let mut cur = v.to_vec();
    loop {
        match basis.insert(&cur) {
            Ok(()) => cur = a.apply(&cur),
            Err(coeffs) => return MonicPoly::from_tail(a.field(), coeffs),
        }
    }
}

/// Minimal polynomial of a square matrix: least common multiple of the
/// minimal polynomials of the standard basis vectors, stopping as soon as
/// the accumulated polynomial annihilates `a`.
pub fn minimal_polynomial(a: &Matrix) -> MonicPoly {
    assert!(a.is_square(), "minimal polynomial of a non-square matrix");
    let f = a.field();
    let n = a.rows();
    let mut acc = Poly::one(f);
    for i in 0..n {
        let mut e = vec![f.zero(); n];
        e[i] = f.one();
        let mu = vector_minimal_polynomial(a, &e).to_poly();
        if !mu.divides(&acc) {
            acc = acc.lcm(&mu);
            if acc.eval_matrix(a).is_zero() {
                break;
            }
        }
    }
    MonicPoly::from_poly(&acc)
}

/// Splits `lcm(f, g)` into coprime factors `f1 | f`, `g1 | g` with
/// `f1 · g1 = lcm(f, g)`, without factoring either polynomial.
pub(crate) fn coprime_lcm_split(f: &Poly, g: &Poly) -> (Poly, Poly) {
    // primes where g has strictly larger multiplicity than f
    let excess = g.div_rem(&f.gcd(g)).0;
    let g1 = supported_part(g, &excess);
    let f_on_excess = supported_part(f, &excess);
    let f1 = f.div_rem(&f_on_excess).0.monic();
    (f1, g1)
}

/// Largest divisor of `x` whose irreducible factors all divide `y`.
fn supported_part(x: &Poly, y: &Poly) -> Poly {
    let field = x.field;
    let mut rest = x.clone();
    let mut part = Poly::one(field);
    loop {
        let g = rest.gcd(y);
        if g.degree() == Some(0) {
            return part;
        }
        part = part.mul(&g);
        rest = rest.div_rem(&g).0;
    }
}
