mod support;

use num_bigint::BigInt;
use num_rational::Rational64;
use proptest::prelude::*;
use support::*;
use wittsum::charsum::{CycloRat, CyclotomicInt};
use wittsum::lfunction::{extract_polynomial, ordq, LSeries};

fn cyclo() -> impl Strategy<Value = (u64, usize, Vec<i64>)> {
    (prop_oneof![Just(2u64), Just(3), Just(5)], 1usize..=2).prop_flat_map(|(p, m)| {
        let len = ((p - 1) * p.pow(m as u32 - 1)) as usize;
        (Just(p), Just(m), prop::collection::vec(-30i64..=30, len))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ordq_is_multiplicative(((p, m, x), y) in cyclo().prop_flat_map(|(p, m, x)| {
        let len = x.len();
        (Just((p, m, x)), prop::collection::vec(-30i64..=30, len))
    }), a in 1u32..=3) {
        let (u, v) = (ci(p, m, &x), ci(p, m, &y));
        let prod = &u * &v;
        match (ordq(&u, a), ordq(&v, a)) {
            (Some(ou), Some(ov)) => prop_assert_eq!(ordq(&prod, a), Some(ou + ov)),
            _ => prop_assert!(prod.is_zero()),
        }
    }

    #[test]
    fn power_sums_round_trip((p, m, x) in cyclo(), k in 1usize..=6) {
        let sums: Vec<CyclotomicInt> = (0..k)
            .map(|i| {
                let rot: Vec<i64> = x.iter().cycle().skip(i).take(x.len()).map(|&c| c - i as i64).collect();
                ci(p, m, &rot)
            })
            .collect();
        let series = LSeries::from_sums(&sums).unwrap();
        let back: Vec<CycloRat> = series.power_sums();
        let want: Vec<CycloRat> = sums.into_iter().map(CycloRat::from).collect();
        prop_assert_eq!(back, want);
    }

    #[test]
    fn polynomial_from_roots_is_recovered(roots in prop::collection::vec(-4i64..=4, 1..5), extra in 1usize..4) {
        // L = Π (1 − α t) with integer α, so S_k = −Σ α^k
        let k = roots.len() + extra;
        let sums: Vec<CyclotomicInt> = (1..=k as u32)
            .map(|e| CyclotomicInt::from_int(3, 1, -roots.iter().map(|&a| BigInt::from(a).pow(e)).sum::<BigInt>()))
            .collect();
        let series = LSeries::from_sums(&sums).unwrap();
        let poly = extract_polynomial(&series, roots.len(), extra).unwrap();
        let mut want = vec![BigInt::from(1)];
        for &a in &roots {
            let mut next = vec![BigInt::from(0); want.len() + 1];
            for (i, c) in want.iter().enumerate() {
                next[i] += c;
                next[i + 1] -= c * a;
            }
            want = next;
        }
        let got: Vec<BigInt> = poly.coeffs.iter().map(|c| c.as_integer().cloned().unwrap()).collect();
        prop_assert_eq!(got, want);
    }
}

#[test]
fn ordq_of_p_is_one_over_a() {
    for p in [2u64, 3, 5] {
        for m in 1..=3 {
            for a in 1..=4 {
                assert_eq!(ordq(&CyclotomicInt::from_int(p, m, p), a), Some(Rational64::new(1, a as i64)));
            }
        }
    }
}

#[test]
fn ordq_of_one_minus_zeta() {
    // ord_p(1 − ζ_{p^m}) = 1/φ(p^m)
    for (p, m) in [(2u64, 2usize), (3, 1), (3, 2), (5, 1)] {
        let one_minus = &CyclotomicInt::one(p, m) - &CyclotomicInt::zeta_pow(p, m, 1);
        let phi = ((p - 1) * p.pow(m as u32 - 1)) as i64;
        assert_eq!(ordq(&one_minus, 1), Some(r(1, phi)));
    }
}

#[test]
fn kloosterman_polygon_is_twist_invariant() {
    assert_eq!(twist_invariance(&kloosterman()).unwrap(), 2);
}

#[test]
fn order_four_polygon_is_twist_invariant() {
    assert_eq!(twist_invariance(&order_four()).unwrap(), 2);
}

#[test]
fn twisted_sums_are_conjugates() {
    let job = order_four();
    let plain = run_cmd(&job, wittsum::cli::Command::Verify);
    let mut tj = job.clone();
    tj.twist = Some(3);
    let twisted = run_cmd(&tj, wittsum::cli::Command::Verify);
    let (a, b) = (plain.sums.unwrap().values, twisted.sums.unwrap().values);
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.value.galois(3), y.value);
        assert_eq!(x.profile, y.profile);
    }
}
