use crate::matrix::Vector;
use crate::scalar::{Field, Scalar};

/// Echelon basis grown one vector at a time. Each stored row remembers how
/// it was obtained from the accepted input vectors, so a dependent vector can
/// be expressed in terms of the earlier accepted ones.
pub(crate) struct IncrementalBasis {
    field: Field,
    rows: Vec<EchelonRow>,
}

struct EchelonRow {
    pivot: usize,
    reduced: Vector,
    combination: Vector,
}

impl IncrementalBasis {
    pub fn new(field: Field) -> Self {
        IncrementalBasis {
            field,
            rows: Vec::new(),
        }
    }

    #[cfg(test)]
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    /// Accepts `v` if it is independent of the current span. Otherwise
    /// returns the coefficients `c` with `v = Σ c_i · accepted_i`.
    pub fn insert(&mut self, v: &[Scalar]) -> Result<(), Vector> {
        let k = self.rows.len();
        let mut residual = v.to_vec();
        let mut coeffs = vec![self.field.zero(); k];
        for row in &self.rows {
            let c = residual[row.pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (r, x) in residual.iter_mut().zip(&row.reduced) {
                if !x.is_zero() {
                    *r = &*r - &(x * &c);
                }
            }
            for (acc, x) in coeffs.iter_mut().zip(&row.combination) {
                if !x.is_zero() {
                    *acc = &*acc + &(x * &c);
                }
            }
        }
        match residual.iter().position(|x| !x.is_zero()) {
            None => Err(coeffs),
            Some(pivot) => {
                let inv = residual[pivot].inverse().expect("nonzero pivot");
                let reduced = residual.iter().map(|x| x * &inv).collect();
                let mut combination: Vector = coeffs.iter().map(|x| -&(x * &inv)).collect();
                combination.push(inv);
                for row in &mut self.rows {
                    row.combination.push(self.field.zero());
                }
                self.rows.push(EchelonRow {
                    pivot,
                    reduced,
                    combination,
                });
                Ok(())
            }
        }
    }

    /// Whether `v` lies in the current span.
    #[cfg(test)]
    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut residual = v.to_vec();
        for row in &self.rows {
            let c = residual[row.pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (r, x) in residual.iter_mut().zip(&row.reduced) {
                if !x.is_zero() {
                    *r = &*r - &(x * &c);
                }
            }
        }
        residual.iter().all(Scalar::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dependent_vector_expressed_in_accepted_ones() {
        let q = Field::Rationals;
        let v = |e: &[i64]| -> Vector { e.iter().map(|&x| q.from_i64(x)).collect() };
        let mut b = IncrementalBasis::new(q);
        assert!(b.insert(&v(&[1, 2, 0])).is_ok());
        assert!(b.insert(&v(&[0, 1, 1])).is_ok());
        let c = b.insert(&v(&[2, 1, -3])).unwrap_err();
        assert_eq!(c, v(&[2, -3]));
        assert_eq!(b.len(), 2);
        assert!(b.contains(&v(&[1, 3, 1])));
        assert!(!b.contains(&v(&[0, 0, 1])));
    }
}
