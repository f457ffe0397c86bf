use proptest::prelude::*;

use simgroup_core::{
    block_diag, conjugate_certificate, factor, fitting_decompose, idempotent_pair,
    invariant_factors, rcf, similarity_class, split_semisimple_zero, verify, ClosureOptions, Field,
    Matrix, Poly, SimilarityCertificate,
};

const Q: Field = Field::Rationals;
const GF5: Field = Field::Prime(5);

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Q), Just(GF5)]
}

fn square(max_n: usize) -> impl Strategy<Value = Matrix> {
    (field(), 1..=max_n).prop_flat_map(|(f, n)| {
        prop::collection::vec(-3i64..=3, n * n).prop_map(move |e| Matrix::from_i64(f, n, n, &e))
    })
}

/// Two square matrices of one size and field.
fn square_pair(max_n: usize) -> impl Strategy<Value = (Matrix, Matrix)> {
    (field(), 1..=max_n).prop_flat_map(|(f, n)| {
        (
            prop::collection::vec(-3i64..=3, n * n),
            prop::collection::vec(-3i64..=3, n * n),
        )
            .prop_map(move |(a, b)| (Matrix::from_i64(f, n, n, &a), Matrix::from_i64(f, n, n, &b)))
    })
}

fn conjugated(a: &Matrix, u: &Matrix) -> Option<Matrix> {
    Some(&(u * a) * &u.inverse().ok()?)
}

fn poly(f: Field, c: &[i64]) -> Poly {
    Poly::new(f, c.iter().map(|&x| f.from_i64(x)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_plus_nullity(a in square(6)) {
        prop_assert_eq!(a.rank() + a.kernel_basis().len(), a.cols());
        prop_assert_eq!(a.image_basis().len(), a.rank());
        for v in a.kernel_basis() {
            prop_assert!(a.apply(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn rank_is_submultiplicative((a, b) in square_pair(5)) {
        let ab = &a * &b;
        prop_assert!(ab.rank() <= a.rank().min(b.rank()));
    }

    #[test]
    fn inverse_is_two_sided(a in square(5)) {
        if let Ok(inv) = a.inverse() {
            prop_assert!((&a * &inv).is_identity());
            prop_assert!((&inv * &a).is_identity());
        } else {
            prop_assert!(a.rank() < a.rows());
        }
    }

    #[test]
    fn matrix_text_round_trips(a in square(4)) {
        prop_assert_eq!(Matrix::parse(&a.to_string(), a.field()).unwrap(), a);
    }

    #[test]
    fn rcf_replays_and_is_a_similarity_invariant((a, u) in square_pair(5)) {
        let form = rcf(&a).unwrap();
        let t = &form.conjugator;
        prop_assert_eq!(&(&t.inverse().unwrap() * &a) * t, form.canonical_matrix());
        for w in form.invariant_factors.windows(2) {
            prop_assert!(w[0].to_poly().divides(&w[1].to_poly()));
        }
        if let Some(b) = conjugated(&a, &u) {
            prop_assert_eq!(invariant_factors(&b).unwrap(), form.invariant_factors);
        }
    }

    #[test]
    fn non_unit_factor_iff_small_eigenspace(a in square(5)) {
        let n = a.rows();
        let fixed = (&a - &Matrix::identity(a.field(), n)).kernel_basis().len();
        let other = invariant_factors(&a).unwrap().iter().any(|f| !f.is_t_minus_one());
        prop_assert_eq!(other, fixed < n);
    }

    #[test]
    fn fitting_replays((a, u) in square_pair(5)) {
        let fd = fitting_decompose(&a).unwrap();
        let t = &fd.conjugator;
        prop_assert_eq!(&(&t.inverse().unwrap() * &a) * t, fd.canonical_matrix());
        prop_assert!(fd.invertible_block.is_invertible());
        if let Some(b) = conjugated(&a, &u) {
            prop_assert_eq!(fitting_decompose(&b).unwrap().nilpotent_block_sizes, fd.nilpotent_block_sizes);
        }
    }

    #[test]
    fn semisimple_split_replays(a in square(5)) {
        if let Ok(split) = split_semisimple_zero(&a) {
            let t = &split.conjugator;
            prop_assert_eq!(&(&t.inverse().unwrap() * &a) * t, split.canonical_matrix());
            prop_assert_eq!(split.invertible_part.rows(), a.rank());
        } else {
            prop_assert!((&a * &a).rank() < a.rank());
        }
    }

    #[test]
    fn idempotent_pair_multiplies_to_rank_one_update(
        f in field(),
        xy in (1usize..6).prop_flat_map(|k| (
            prop::collection::vec(-3i64..=3, k),
            prop::collection::vec(-3i64..=3, k),
        )),
    ) {
        let (x, y) = xy;
        let k = x.len();
        let xs: Vec<_> = x.iter().map(|&v| f.from_i64(v)).collect();
        let ys: Vec<_> = y.iter().map(|&v| f.from_i64(v)).collect();
        let (f1, f2) = idempotent_pair(f, &xs, &ys);
        prop_assert!(f1.is_idempotent() && f2.is_idempotent());
        prop_assert_eq!(f1.rank(), k);
        prop_assert_eq!(f2.rank(), k);
        let update = Matrix::from_fn(f, k, k, |i, j| {
            let d = if i == j { f.one() } else { f.zero() };
            &d + &(&xs[i] * &ys[j])
        });
        let want = block_diag(f, &[&update, &Matrix::zeros(f, 1, 1)]).unwrap();
        prop_assert_eq!(&f1 * &f2, want);
    }

    #[test]
    fn poly_division_and_gcd(
        f in field(),
        a in prop::collection::vec(-3i64..=3, 1..6),
        b in prop::collection::vec(-3i64..=3, 1..5),
    ) {
        let (pa, pb) = (poly(f, &a), poly(f, &b));
        prop_assume!(!pb.is_zero());
        let (q, r) = pa.div_rem(&pb);
        prop_assert_eq!(q.mul(&pb).add(&r), pa.clone());
        prop_assert!(r.is_zero() || r.degree() < pb.degree());
        let g = pa.gcd(&pb);
        prop_assert!(g.divides(&pa) && g.divides(&pb));
        if !pa.is_zero() {
            let l = pa.lcm(&pb);
            prop_assert!(pa.divides(&l) && pb.divides(&l));
        }
    }
}

/// A singular matrix over GF(5) together with a target of no larger rank,
/// both derived from raw entries by zeroing rows.
fn factor_input() -> impl Strategy<Value = (Matrix, Matrix, Matrix)> {
    (2usize..=4).prop_flat_map(|n| {
        (
            prop::collection::vec(0i64..5, n * n),
            prop::collection::vec(0i64..5, n * n),
            prop::collection::vec(0i64..5, n * n),
            1..n,
        )
            .prop_map(move |(a, m, u, p)| {
                let mut a = Matrix::from_i64(GF5, n, n, &a);
                for i in p..n {
                    for j in 0..n {
                        a[(i, j)] = GF5.zero();
                    }
                }
                let mut m = Matrix::from_i64(GF5, n, n, &m);
                for i in a.rank()..n {
                    for j in 0..n {
                        m[(i, j)] = GF5.zero();
                    }
                }
                (a, m, Matrix::from_i64(GF5, n, n, &u))
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn factor_is_sound_and_conjugation_equivariant((a, m, u) in factor_input()) {
        prop_assume!(a.rank() >= 1);
        let (cert, trace) = factor(&a, &m).unwrap();
        prop_assert!(verify(&cert).valid);
        prop_assert!(cert.target.rank() <= cert.base.rank());
        let ranks = trace.step2_ranks().unwrap();
        prop_assert!(ranks.windows(2).all(|w| w[0] > w[1]));
        prop_assert_eq!(*ranks.last().unwrap(), a.rows() - a.rank());
        if u.is_invertible() {
            let moved = conjugate_certificate(&cert, &u).unwrap();
            prop_assert!(verify(&moved).valid);
            prop_assert_eq!(moved.target, conjugated(&m, &u).unwrap());
        }
    }

    #[test]
    fn certificate_text_round_trips((a, m, _u) in factor_input()) {
        prop_assume!(a.rank() >= 1);
        let (cert, _) = factor(&a, &m).unwrap();
        let back = SimilarityCertificate::from_text(&cert.to_text()).unwrap();
        prop_assert_eq!(back, cert);
    }

    #[test]
    fn similarity_class_shares_invariant_factors(e in prop::collection::vec(0i64..3, 4)) {
        let gf3 = Field::Prime(3);
        let a = Matrix::from_i64(gf3, 2, 2, &e);
        let class = similarity_class(&a, &ClosureOptions::default()).unwrap();
        prop_assert!(class.contains(&a));
        let want = invariant_factors(&a).unwrap();
        for b in &class {
            prop_assert_eq!(invariant_factors(b).unwrap(), want.clone());
        }
        // |GL_2(3)| = 48 is a multiple of every orbit size.
        prop_assert_eq!(48 % class.len(), 0);
    }
}
