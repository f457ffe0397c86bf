//! Factorization certificates and their verifier.
//!
//! A certificate stores the conjugators `R_1 … R_k` rather than the factors
//! themselves, so every factor `R_i A R_i^{-1}` is similar to `A` by
//! construction. The verifier still recomputes everything from the raw data.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canonical::invariant_factors;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Field;

/// Witness that `target = Π_{i=1..k} R_i · base · R_i^{-1}`, multiplied left
/// to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimilarityCertificate {
    pub field: Field,
    pub base: Matrix,
    pub conjugators: Vec<Matrix>,
    pub target: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub valid: bool,
    pub factor_count: usize,
    pub failure_reason: Option<String>,
    /// Conjugator index at which the first per-factor check failed.
    pub failing_index: Option<usize>,
}

impl VerificationReport {
    fn ok(factor_count: usize) -> Self {
        VerificationReport {
            valid: true,
            factor_count,
            failure_reason: None,
            failing_index: None,
        }
    }

    fn fail(factor_count: usize, index: Option<usize>, reason: impl Into<String>) -> Self {
        VerificationReport {
            valid: false,
            factor_count,
            failure_reason: Some(reason.into()),
            failing_index: index,
        }
    }
}

impl SimilarityCertificate {
    /// Builds a certificate after checking shapes and fields. The product
    /// identity itself is left to [`verify`].
    pub fn new(base: Matrix, conjugators: Vec<Matrix>, target: Matrix) -> Result<Self> {
        let field = base.field();
        let n = base.rows();
        if !base.is_square() {
            return Err(Error::NotSquare {
                rows: base.rows(),
                cols: base.cols(),
            });
        }
        if conjugators.is_empty() {
            return Err(Error::DimensionMismatch(
                "a certificate needs at least one conjugator".into(),
            ));
        }
        for m in conjugators.iter().chain(std::iter::once(&target)) {
            if m.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.to_string(),
                    right: m.field().to_string(),
                });
            }
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "expected {n}x{n}, found {}x{}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(SimilarityCertificate {
            field,
            base,
            conjugators,
            target,
        })
    }

    pub fn size(&self) -> usize {
        self.base.rows()
    }

    pub fn factor_count(&self) -> usize {
        self.conjugators.len()
    }

    /// The factors `R_i · base · R_i^{-1}` in order.
    pub fn factors(&self) -> Result<Vec<Matrix>> {
        self.conjugators
            .iter()
            .map(|r| Ok(&(r * &self.base) * &r.inverse()?))
            .collect()
    }

    /// Serializes to the certificate text document.
    pub fn to_text(&self) -> String {
        let doc = CertificateDocument {
            field: self.field.to_string(),
            n: self.size(),
            factor_count: self.factor_count(),
            base: self.base.to_string(),
            target: self.target.to_string(),
            conjugators: self.conjugators.iter().map(ToString::to_string).collect(),
        };
        toml::to_string(&doc).expect("certificate document serializes")
    }

    /// Parses the certificate text document. Structural problems (unknown
    /// field, malformed matrices, wrong sizes, empty conjugator list,
    /// inconsistent `factor_count`) are parse errors; the algebra is not
    /// checked here.
    pub fn from_text(text: &str) -> Result<Self> {
        let doc: CertificateDocument =
            toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let field: Field = doc.field.parse()?;
        let base = Matrix::parse(&doc.base, field)?;
        let target = Matrix::parse(&doc.target, field)?;
        let conjugators = doc
            .conjugators
            .iter()
            .map(|c| Matrix::parse(c, field))
            .collect::<Result<Vec<_>>>()?;
        if conjugators.is_empty() {
            return Err(Error::Parse("conjugator list is empty".into()));
        }
        if doc.factor_count != conjugators.len() {
            return Err(Error::Parse(format!(
                "factor_count is {} but {} conjugators are listed",
                doc.factor_count,
                conjugators.len()
            )));
        }
        if base.rows() != doc.n {
            return Err(Error::Parse(format!(
                "n is {} but base is {}x{}",
                doc.n,
                base.rows(),
                base.cols()
            )));
        }
        SimilarityCertificate::new(base, conjugators, target)
            .map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Serialize, Deserialize)]
struct CertificateDocument {
    field: String,
    n: usize,
    factor_count: usize,
    base: String,
    target: String,
    conjugators: Vec<String>,
}

/// Replays a certificate from scratch: every conjugator must be invertible,
/// every factor must have the invariant factors of `base`, and the ordered
/// product of the factors must equal `target` exactly.
pub fn verify(c: &SimilarityCertificate) -> VerificationReport {
    let k = c.conjugators.len();
    let n = c.base.rows();
    if !c.base.is_square() {
        return VerificationReport::fail(k, None, "base is not square");
    }
    if k == 0 {
        return VerificationReport::fail(k, None, "no conjugators");
    }
    if c.base.field() != c.field || c.target.field() != c.field {
        return VerificationReport::fail(k, None, "field mismatch");
    }
    if c.target.rows() != n || c.target.cols() != n {
        return VerificationReport::fail(k, None, "target has the wrong shape");
    }
    let base_factors = match invariant_factors(&c.base) {
        Ok(f) => f,
        Err(e) => return VerificationReport::fail(k, None, e.to_string()),
    };

    let formed: Vec<std::result::Result<Matrix, &str>> = c
        .conjugators
        .par_iter()
        .map(|r| {
            if r.field() != c.field || r.rows() != n || r.cols() != n {
                return Err("conjugator has the wrong shape or field");
            }
            let inv = r.inverse().map_err(|_| "conjugator is singular")?;
            Ok(&(r * &c.base) * &inv)
        })
        .collect();

    // Certificates built from repeated sub-certificates repeat factors, so
    // each distinct factor is checked once.
    let distinct: Vec<&Matrix> = formed
        .iter()
        .filter_map(|f| f.as_ref().ok())
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    let dissimilar: HashSet<Matrix> = distinct
        .into_par_iter()
        .filter(|f| !matches!(invariant_factors(f), Ok(ref g) if *g == base_factors))
        .cloned()
        .collect();

    let mut factors = Vec::with_capacity(k);
    for (i, item) in formed.into_iter().enumerate() {
        let reason = match item {
            Ok(ref f) if dissimilar.contains(f) => "factor is not similar to the base",
            Ok(f) => {
                factors.push(f);
                continue;
            }
            Err(reason) => reason,
        };
        return VerificationReport::fail(k, Some(i), format!("factor {i}: {reason}"));
    }
    let product = factors
        .into_par_iter()
        .reduce_with(|a, b| &a * &b)
        .expect("at least one factor");
    if product != c.target {
        return VerificationReport::fail(k, None, "product of factors differs from target");
    }
    VerificationReport::ok(k)
}

/// Conjugates the whole certificate by `u`: `R_i ↦ u R_i` and
/// `target ↦ u · target · u^{-1}`.
pub fn conjugate_certificate(
    c: &SimilarityCertificate,
    u: &Matrix,
) -> Result<SimilarityCertificate> {
    if u.field() != c.field {
        return Err(Error::FieldMismatch {
            left: c.field.to_string(),
            right: u.field().to_string(),
        });
    }
    if u.rows() != c.size() || u.cols() != c.size() {
        return Err(Error::DimensionMismatch(format!(
            "conjugator is {}x{}, certificate size is {}",
            u.rows(),
            u.cols(),
            c.size()
        )));
    }
    let u_inv = u.inverse()?;
    Ok(SimilarityCertificate {
        field: c.field,
        base: c.base.clone(),
        conjugators: c.conjugators.iter().map(|r| u * r).collect(),
        target: &(u * &c.target) * &u_inv,
    })
}

/// Concatenates certificates over the same base; the target is the product
/// of the targets in order.
pub fn concat(cs: &[SimilarityCertificate]) -> Result<SimilarityCertificate> {
    let first = cs
        .first()
        .ok_or_else(|| Error::DimensionMismatch("nothing to concatenate".into()))?;
    let mut conjugators = Vec::new();
    let mut target: Option<Matrix> = None;
    for c in cs {
        if c.field != first.field {
            return Err(Error::FieldMismatch {
                left: first.field.to_string(),
                right: c.field.to_string(),
            });
        }
        if c.base != first.base {
            return Err(Error::DimensionMismatch(
                "certificates have different bases".into(),
            ));
        }
        conjugators.extend(c.conjugators.iter().cloned());
        target = Some(match target {
            None => c.target.clone(),
            Some(t) => &t * &c.target,
        });
    }
    Ok(SimilarityCertificate {
        field: first.field,
        base: first.base.clone(),
        conjugators,
        target: target.expect("nonempty"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{jordan_block, reversal_matrix};

    const GF2: Field = Field::Prime(2);
    const Q: Field = Field::Rationals;

    fn j2_cert() -> SimilarityCertificate {
        SimilarityCertificate::new(
            jordan_block(GF2, 2),
            vec![Matrix::identity(GF2, 2), reversal_matrix(GF2, 2)],
            Matrix::from_i64(GF2, 2, 2, &[1, 0, 0, 0]),
        )
        .unwrap()
    }

    #[test]
    fn verify_examples() {
        let r = verify(&j2_cert());
        assert!(r.valid, "{:?}", r.failure_reason);
        assert_eq!(r.factor_count, 2);

        let a = Matrix::from_i64(Q, 2, 2, &[1, 2, 0, 0]);
        let c = SimilarityCertificate::new(a.clone(), vec![Matrix::identity(Q, 2)], a).unwrap();
        assert!(verify(&c).valid);

        let c = SimilarityCertificate::new(
            jordan_block(GF2, 2),
            vec![Matrix::identity(GF2, 2)],
            Matrix::identity(GF2, 2),
        )
        .unwrap();
        let r = verify(&c);
        assert!(!r.valid);
        assert_eq!(r.failing_index, None);
    }

    #[test]
    fn singular_conjugator_reported_with_index() {
        let mut c = j2_cert();
        c.conjugators[1] = Matrix::zeros(GF2, 2, 2);
        let r = verify(&c);
        assert!(!r.valid);
        assert_eq!(r.failing_index, Some(1));
    }

    #[test]
    fn conjugation_examples() {
        let c = j2_cert();
        let same = conjugate_certificate(&c, &Matrix::identity(GF2, 2)).unwrap();
        assert_eq!(same, c);
        let k = reversal_matrix(GF2, 2);
        let swapped = conjugate_certificate(&c, &k).unwrap();
        assert_eq!(swapped.target, Matrix::from_i64(GF2, 2, 2, &[0, 0, 0, 1]));
        assert!(verify(&swapped).valid);
        assert_eq!(
            conjugate_certificate(&c, &Matrix::zeros(GF2, 2, 2)),
            Err(Error::SingularMatrix)
        );
    }

    #[test]
    fn concat_examples() {
        let c = j2_cert();
        assert_eq!(concat(std::slice::from_ref(&c)).unwrap(), c);
        let cc = concat(&[c.clone(), c.clone()]).unwrap();
        assert_eq!(cc.target, &c.target * &c.target);
        assert_eq!(cc.factor_count(), 4);
        assert!(verify(&cc).valid);
        let other = SimilarityCertificate::new(
            Matrix::zeros(GF2, 2, 2),
            vec![Matrix::identity(GF2, 2)],
            Matrix::zeros(GF2, 2, 2),
        )
        .unwrap();
        assert!(concat(&[c, other]).is_err());
        assert!(concat(&[]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let c = j2_cert();
        let text = c.to_text();
        assert!(text.contains("factor_count = 2"));
        assert_eq!(SimilarityCertificate::from_text(&text).unwrap(), c);

        let q = SimilarityCertificate::new(
            Matrix::parse("2 2\n1/2 0\n0 0\n", Q).unwrap(),
            vec![Matrix::parse("2 2\n1 -3/4\n0 1\n", Q).unwrap()],
            Matrix::parse("2 2\n1/2 3/8\n0 0\n", Q).unwrap(),
        )
        .unwrap();
        assert_eq!(SimilarityCertificate::from_text(&q.to_text()).unwrap(), q);
        assert!(verify(&q).valid);
    }

    #[test]
    fn malformed_documents_rejected() {
        let text = j2_cert().to_text();
        let empty = text
            .replace("factor_count = 2", "factor_count = 0")
            .split("conjugators")
            .next()
            .unwrap()
            .to_string()
            + "conjugators = []\n";
        assert!(matches!(
            SimilarityCertificate::from_text(&empty),
            Err(Error::Parse(_))
        ));
        let miscounted = text.replace("factor_count = 2", "factor_count = 3");
        assert!(SimilarityCertificate::from_text(&miscounted).is_err());
        let bad_field = text.replace("gf:2", "gf:4");
        assert!(SimilarityCertificate::from_text(&bad_field).is_err());
        assert!(SimilarityCertificate::from_text("not a certificate").is_err());
    }
}
