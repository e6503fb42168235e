mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

use extcong::arith::primes_up_to;
use extcong::ec::{FrobeniusData, RationalCurve};
use extcong::milne::{ext_order_ff, ext_order_nonisogenous_ec, is_rational_square, sha_exponent_bound, WeilPolynomial};
use extcong::poly::IntPoly;

use common::count_points_naive;

fn hasse_width(q: u64) -> i64 {
    (4.0 * q as f64).sqrt().floor() as i64
}

fn quadratic(q: u64, a: i64) -> IntPoly {
    IntPoly::from_i64_descending(&[1, -a, q as i64])
}

fn weil(q: u64, a: i64) -> WeilPolynomial {
    WeilPolynomial::new(BigInt::from(q), quadratic(q, a)).unwrap()
}

fn order(fa: &WeilPolynomial, fb: &WeilPolynomial) -> BigRational {
    ext_order_ff(fa, fb, &BigInt::one()).unwrap().value
}

#[test]
fn exhaustive_identity_up_to_50() {
    for p in primes_up_to(50) {
        let w = hasse_width(p);
        for a in -w..=w {
            for b in (-w..=w).filter(|&b| b != a) {
                let want = BigInt::from((a - b) * (a - b));
                assert_eq!(order(&weil(p, a), &weil(p, b)), BigRational::from_integer(want), "p={p} a={a} b={b}");
            }
        }
    }
}

#[test]
fn spec_values() {
    let r = ext_order_ff(&weil(5, -3), &weil(5, -2), &BigInt::one()).unwrap();
    assert_eq!(r.value, BigRational::one());
    assert!(r.sign_ambiguous);
    let same = ext_order_ff(&weil(5, -3), &weil(5, -3), &BigInt::one()).unwrap();
    assert_eq!(same.value, BigRational::from_integer(BigInt::from(11)));
    assert_eq!(same.excluded_pairs, 2);
    assert!(WeilPolynomial::from_i64(2, &[1, 3, 2]).is_err());
}

#[test]
fn curve_counts_feed_the_specialization() {
    let a = RationalCurve::from_ints([0, 0, 0, 1, 1]).unwrap();
    let b = RationalCurve::from_ints([0, 0, 0, -1, 0]).unwrap();
    for p in [5, 7, 13, 17, 19, 23] {
        let (fa, fb) = (a.ap(p).unwrap(), b.ap(p).unwrap());
        let diff = count_points_naive([0, 0, 0, 1, 1], p) as i64 - count_points_naive([0, 0, 0, -1, 0], p) as i64;
        assert_eq!(sha_exponent_bound(&fa, &fb).unwrap(), BigInt::from(diff.abs()));
        assert_eq!(ext_order_nonisogenous_ec(&fa, &fb).unwrap(), BigInt::from(diff * diff));
        let general = order(&WeilPolynomial::from_frobenius(&fa), &WeilPolynomial::from_frobenius(&fb));
        if diff != 0 {
            assert_eq!(general, BigRational::from_integer(BigInt::from(diff * diff)));
        }
    }
    let fd = FrobeniusData::from_trace(5, 1, BigInt::from(-3)).unwrap();
    assert_eq!(ext_order_nonisogenous_ec(&fd, &fd).unwrap(), BigInt::from(0));
}

fn trace_pair() -> impl Strategy<Value = (u64, i64, i64)> {
    prop::sample::select(primes_up_to(997)).prop_flat_map(|p| {
        let w = hasse_width(p);
        (Just(p), -w..=w, -w..=w)
    })
}

/// Two distinct traces at the same prime, for a square-free product.
fn quartic() -> impl Strategy<Value = (u64, [i64; 4])> {
    prop::sample::select(primes_up_to(61)).prop_flat_map(|p| {
        let w = hasse_width(p);
        (Just(p), prop::array::uniform4(-w..=w))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_identity((p, a, b) in trace_pair()) {
        prop_assume!(a != b);
        let want = BigRational::from_integer(BigInt::from((a - b) * (a - b)));
        prop_assert_eq!(order(&weil(p, a), &weil(p, b)), want);
    }

    #[test]
    fn symmetric_product_is_square((p, a, b) in trace_pair()) {
        let (fa, fb) = (weil(p, a), weil(p, b));
        prop_assert!(is_rational_square(&(order(&fa, &fb) * order(&fb, &fa))));
    }

    #[test]
    fn excluded_pairs_track_common_factors((p, t) in quartic()) {
        prop_assume!(t[0] != t[1] && t[2] != t[3]);
        let fa = WeilPolynomial::new(BigInt::from(p), quadratic(p, t[0]).mul(&quadratic(p, t[1]))).unwrap();
        let fb = WeilPolynomial::new(BigInt::from(p), quadratic(p, t[2]).mul(&quadratic(p, t[3]))).unwrap();
        let shared = t[..2].iter().filter(|x| t[2..].contains(x)).count();
        let r = ext_order_ff(&fa, &fb, &BigInt::one()).unwrap();
        prop_assert_eq!(r.excluded_pairs, 2 * shared);
        prop_assert_eq!(r.excluded_pairs == 0, fa.poly().gcd_monic(fb.poly()).degree() == 0);
    }
}
