use num_traits::ToPrimitive;
use proptest::prelude::*;
use riordan_core::rational::{int, rat};
use riordan_core::series::{qbar, subst_sqrt_even, twisted_odd_subst};
use riordan_core::{Parity, Rational, Series};

const N: usize = 16;

fn small() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| rat(p, q))
}

fn series(trunc: usize) -> impl Strategy<Value = Series> {
    proptest::collection::vec(small(), trunc + 1).prop_map(Series::from_coeffs)
}

/// Series with zero constant term and nonzero linear term.
fn order_one(trunc: usize) -> impl Strategy<Value = Series> {
    (
        prop_oneof![Just(int(1)), Just(int(-1)), Just(int(2)), Just(rat(1, 2))],
        series(trunc),
    )
        .prop_map(move |(lead, s)| {
            let mut c = s.coeffs().to_vec();
            c[0] = int(0);
            c[1] = lead;
            Series::from_coeffs(c)
        })
}

fn unit(trunc: usize) -> impl Strategy<Value = Series> {
    (
        prop_oneof![Just(int(1)), Just(int(-2)), Just(rat(1, 3))],
        series(trunc),
    )
        .prop_map(|(lead, s)| {
            let mut c = s.coeffs().to_vec();
            c[0] = lead;
            Series::from_coeffs(c)
        })
}

fn even_part(s: &Series) -> Series {
    let c = s
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, x)| if i % 2 == 0 { x.clone() } else { int(0) })
        .collect();
    Series::new(c, Parity::Even).unwrap()
}

fn odd_part(s: &Series) -> Series {
    let c = s
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, x)| if i % 2 == 1 { x.clone() } else { int(0) })
        .collect();
    Series::new(c, Parity::Odd).unwrap()
}

fn floats(s: &Series) -> Vec<f64> {
    s.coeffs().iter().map(|x| x.to_f64().unwrap()).collect()
}

fn f_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len().min(b.len());
    (0..n)
        .map(|k| (0..=k).map(|i| a[i] * b[k - i]).sum())
        .collect()
}

fn f_recip(a: &[f64]) -> Vec<f64> {
    let mut out = vec![1.0 / a[0]];
    for k in 1..a.len() {
        let s: f64 = (1..=k).map(|i| a[i] * out[k - i]).sum();
        out.push(-s / a[0]);
    }
    out
}

fn f_compose(outer: &[f64], inner: &[f64]) -> Vec<f64> {
    let n = outer.len().min(inner.len());
    let mut acc = vec![0.0; n];
    let mut power = vec![0.0; n];
    power[0] = 1.0;
    for c in outer.iter().take(n) {
        for (a, p) in acc.iter_mut().zip(&power) {
            *a += c * p;
        }
        power = f_mul(&power, &inner[..n]);
    }
    acc
}

fn close(exact: &Series, approx: &[f64]) -> bool {
    floats(exact)
        .iter()
        .zip(approx)
        .all(|(x, y)| (x - y).abs() <= 1e-6 * (1.0 + y.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in series(N), b in series(N), c in series(N)) {
        let same = |x: &Series, y: &Series| x.agrees_with(y) && x.trunc() >= N && y.trunc() >= N;
        prop_assert!(same(&(&(&a * &b) * &c), &(&a * &(&b * &c))));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert!(same(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c))));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Series::one(N), a.clone());
    }

    #[test]
    fn division_inverts_multiplication(a in series(N), u in unit(N)) {
        let q = (&a * &u).div(&u).unwrap();
        prop_assert!(q.agrees_with(&a));
        prop_assert!((&u * &u.recip().unwrap()).agrees_with(&Series::one(N)));
    }

    #[test]
    fn compose_is_associative(a in series(8), b in order_one(8), c in order_one(8)) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn comp_inverse_is_involutive(f in order_one(10)) {
        let inv = f.comp_inverse().unwrap();
        prop_assert!(f.compose(&inv).unwrap().agrees_with(&Series::t(10)));
        prop_assert!(inv.comp_inverse().unwrap().agrees_with(&f));
    }

    #[test]
    fn float_shadow(a in series(10), u in unit(10), f in order_one(10)) {
        prop_assert!(close(&(&a * &u), &f_mul(&floats(&a), &floats(&u))));
        prop_assert!(close(&u.recip().unwrap(), &f_recip(&floats(&u))));
        prop_assert!(close(&a.compose(&f).unwrap(), &f_compose(&floats(&a), &floats(&f))));
    }

    #[test]
    fn sqrt_substitution_of_square(a in series(N)) {
        let e = even_part(&a);
        let t2 = Series::monomial(int(1), 2, N);
        prop_assert!(subst_sqrt_even(&e, &t2).unwrap().agrees_with(&e));
    }

    #[test]
    fn twisted_pair_multiplies_back(x in order_one(N), y in order_one(N)) {
        let (f1, f2) = (odd_part(&x), odd_part(&y));
        let s = &f1 * &f2;
        let t = Series::t(N);
        let lhs = &twisted_odd_subst(&t, &f1, &s).unwrap() * &twisted_odd_subst(&t, &f2, &s).unwrap();
        prop_assert!(lhs.agrees_with(&s));
    }

    #[test]
    fn hat_round_trip(a in series(N)) {
        let e = even_part(&a);
        prop_assert_eq!(e.hat().unwrap().unhat(Parity::Even).unwrap(), e.clone());
        let o = odd_part(&a);
        prop_assert!(o.hat().unwrap().unhat(Parity::Odd).unwrap().agrees_with(&o));
    }

    #[test]
    fn qbar_identities(x in order_one(12), y in order_one(12)) {
        let (f1, f2) = (odd_part(&x), odd_part(&y));
        let qb = qbar(&f1, &f2).unwrap();
        let s = (&f1 * &f2).with_parity(Parity::Even).unwrap();
        let lhs = subst_sqrt_even(&s, &qb.q).unwrap();
        prop_assert!(lhs.agrees_with(&Series::monomial(int(1), 2, lhs.trunc())));
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn no_truncation_leakage(a in series(2 * N), u in unit(2 * N), f in order_one(2 * N)) {
        let short = |s: &Series| s.truncate(N);
        let (a_s, u_s, f_s) = (short(&a), short(&u), short(&f));
        prop_assert!((&a * &u).truncate(N).agrees_with(&(&a_s * &u_s)));
        prop_assert!(a.div(&u).unwrap().truncate(N).agrees_with(&a_s.div(&u_s).unwrap()));
        prop_assert!(a.compose(&f).unwrap().truncate(N).agrees_with(&a_s.compose(&f_s).unwrap()));
        prop_assert!(f.comp_inverse().unwrap().truncate(N).agrees_with(&f_s.comp_inverse().unwrap()));
        let long = (&a * &u).truncate(N);
        prop_assert_eq!(long.trunc(), (&a_s * &u_s).trunc());
    }
}

#[test]
fn division_needs_order() {
    let t = Series::t(6);
    assert!(Series::one(6).div(&t).is_err());
    assert!(Series::one(6).div(&Series::zero(6)).is_err());
    assert_eq!(t.div(&t).unwrap().coeff(0), &int(1));
}
