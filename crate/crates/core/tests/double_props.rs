use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use riordan_core::compress::{
    build_compressed, compress_matrix, compress_matrix_to, compressed_recurrence_check,
    compressed_seqchar, hat_spec,
};
use riordan_core::double::{
    build_dar, build_double, dar_apply, dar_inverse, dar_mul, dar_production, dar_seqchar,
    dar_seqchar_oracle, double_inverse, double_mul, w_forms, DarSpec,
};
use riordan_core::riordan::shift_violation;
use riordan_core::sample::random_dar_spec;
use riordan_core::series::subst_sqrt_even;
use riordan_core::{Matrix, Series};

const T: usize = 12;

fn spec() -> impl Strategy<Value = DarSpec> {
    any::<u64>().prop_map(|seed| random_dar_spec(&mut ChaCha8Rng::seed_from_u64(seed), T))
}

fn checkerboard(m: &Matrix) -> bool {
    (0..m.rows())
        .all(|i| (0..m.cols()).all(|k| (i + k) % 2 == 0 || m.get(i, k) == &Default::default()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn group_laws(a in spec(), b in spec(), c in spec()) {
        let left = dar_mul(&dar_mul(&a, &b).unwrap(), &c).unwrap();
        let right = dar_mul(&a, &dar_mul(&b, &c).unwrap()).unwrap();
        prop_assert!(left.agrees_with(&right));
        let id = DarSpec::identity(T);
        prop_assert!(dar_mul(&a, &id).unwrap().agrees_with(&a));
        prop_assert!(dar_mul(&id, &a).unwrap().agrees_with(&a));
        let inv = dar_inverse(&a).unwrap();
        prop_assert!(dar_mul(&a, &inv).unwrap().agrees_with(&id));
        prop_assert!(dar_mul(&inv, &a).unwrap().agrees_with(&id));
    }

    #[test]
    fn products_match_matrices(a in spec(), b in spec()) {
        let (ma, mb) = (build_dar(&a, 10).unwrap(), build_dar(&b, 10).unwrap());
        prop_assert!(checkerboard(&ma));
        let ab = dar_mul(&a, &b).unwrap();
        prop_assert_eq!(ma.mul(&mb).unwrap(), build_dar(&ab, 10).unwrap());
        let (da, db) = (a.double_part(), b.double_part());
        let m = build_double(&da, 10).unwrap();
        prop_assert!(checkerboard(&m));
        prop_assert_eq!(m.mul(&build_double(&db, 10).unwrap()).unwrap(), build_double(&double_mul(&da, &db).unwrap(), 10).unwrap());
        let inv = double_inverse(&da).unwrap();
        prop_assert_eq!(m.mul(&build_double(&inv, 10).unwrap()).unwrap(), Matrix::identity(11));
    }

    #[test]
    fn apply_matches_columns(a in spec(), b in spec()) {
        let m = build_dar(&a, 10).unwrap();
        for u in [&b.b, &b.f1] {
            let image = dar_apply(&a, u).unwrap();
            for i in 0..=10 {
                let dot: riordan_core::Rational = (0..=10).map(|j| m.get(i, j) * u.coeff(j)).sum();
                prop_assert_eq!(&dot, image.coeff(i));
            }
        }
    }

    #[test]
    fn sequences_resubstitute(a in spec()) {
        let bundle = dar_seqchar(&a).unwrap();
        let s = a.s();
        let t2 = Series::monomial(riordan_core::rational::int(1), 2, T);
        let lhs = &t2 * &subst_sqrt_even(&bundle.a, &s).unwrap();
        prop_assert!(lhs.agrees_with(&s));
        let tz = &t2 * &subst_sqrt_even(&bundle.z1, &s).unwrap();
        let g = &a.g * &(&Series::one(T) - &tz);
        prop_assert!(g.agrees_with(&Series::constant(a.g.coeff(0).clone(), T)));
        let (direct, production) = w_forms(&a).unwrap();
        prop_assert_eq!(direct, production);
    }

    #[test]
    fn closed_forms_match_oracle(a in spec()) {
        let closed = dar_seqchar(&a).unwrap();
        let oracle = dar_seqchar_oracle(&build_dar(&a, T).unwrap()).unwrap();
        prop_assert!(oracle.certified() >= 4);
        prop_assert!(closed.agrees_with(&oracle));
    }

    #[test]
    fn production_shift_by_two(a in spec()) {
        let p = dar_production(&a, 10).unwrap();
        let d = build_dar(&a, 10).unwrap();
        prop_assert_eq!(shift_violation(&d, &p, 2).unwrap(), None);
        prop_assert!(shift_violation(&d, &p, 1).unwrap().is_some());
    }

    #[test]
    fn compression_routes(a in spec()) {
        let hs = hat_spec(&a).unwrap();
        let via_matrix = compress_matrix_to(&build_dar(&a, T).unwrap(), 6).unwrap();
        prop_assert_eq!(&via_matrix, &build_compressed(&hs, 6).unwrap());
        prop_assert_eq!(compress_matrix(&build_dar(&a, T).unwrap()).unwrap(), via_matrix.clone());
        let bundle = compressed_seqchar(&hs).unwrap();
        prop_assert!(bundle.agrees_with(&dar_seqchar(&a).unwrap()));
        prop_assert!(hs.unhat().unwrap().agrees_with(&a));
        let report = compressed_recurrence_check(&via_matrix, &bundle);
        prop_assert!(report.passed(), "{:?}", report.violation);
    }
}
