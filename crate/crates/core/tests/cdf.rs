mod common;

use cantor_cdf::cdf::{classify, eval, eval_in, eval_stream, piecewise_points};
use cantor_cdf::numbers::to_expansion;
use cantor_cdf::{Classification, DigitStream, DigitVector, Limits, Rational};
use common::{grid_values, random_rational, rat, reference_eval, rng, vectors_up_to};
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

fn v(text: &str) -> DigitVector {
    text.parse().unwrap()
}

#[test]
fn reference_agrees_on_known_values() {
    let cantor = v("3:101");
    assert_eq!(reference_eval(&cantor, &rat(1, 4)), rat(1, 3));
    assert_eq!(reference_eval(&cantor, &rat(3, 4)), rat(2, 3));
    assert_eq!(reference_eval(&cantor, &rat(1, 2)), rat(1, 2));
    assert_eq!(reference_eval(&v("4:1101"), &rat(3, 8)), rat(5, 9));
    assert_eq!(reference_eval(&v("4:1101"), &rat(5, 8)), rat(2, 3));
}

#[test]
fn eval_matches_orbit_solution() {
    let mut r = rng(11);
    for vector in vectors_up_to(7) {
        for _ in 0..15 {
            let x = random_rational(&mut r, 400);
            assert_eq!(
                eval(&vector, &x),
                reference_eval(&vector, &x),
                "{vector} at {x}"
            );
        }
    }
}

#[test]
fn eval_matches_power_tables() {
    for vector in vectors_up_to(6) {
        let n = vector.base() as i64;
        for level in 1..=3u32 {
            let table = grid_values(&vector, level);
            let den = n.pow(level);
            for (k, expected) in table.iter().enumerate() {
                assert_eq!(eval(&vector, &rat(k as i64, den)), *expected);
            }
            let corners = piecewise_points(&vector, level, &Limits::default()).unwrap();
            let ys: Vec<Rational> = corners.into_iter().map(|(_, y)| y).collect();
            assert_eq!(ys, table);
        }
    }
}

#[test]
fn float_evaluation_tracks_exact_value() {
    let mut r = rng(5);
    for vector in vectors_up_to(6).iter().step_by(4) {
        for _ in 0..20 {
            let x = random_rational(&mut r, 1000);
            let exact = eval(vector, &x).to_f64().unwrap();
            let approx: f64 = eval_in(vector, &x);
            assert!(
                (exact - approx).abs() < 1e-12,
                "{vector} at {x}: {exact} vs {approx}"
            );
        }
    }
}

#[test]
fn stream_enclosures_shrink_onto_value() {
    let cantor = v("3:101");
    // x = 1/4 read in base 5
    let x = rat(1, 4);
    let mut s = DigitStream::from_rational(&x, 5).unwrap();
    let mut last = Rational::one();
    for depth in [2, 4, 8, 16, 32] {
        let e = eval_stream(&cantor, &mut s, depth);
        assert!(e.contains(&rat(1, 3)));
        assert!(e.width() <= last);
        last = e.width();
    }
    assert!(last < rat(1, 1_000_000));
}

#[test]
fn classification_of_rationals() {
    let cantor = v("3:101");
    assert_eq!(
        classify(&cantor, &rat(1, 4)),
        Classification::RationalValue(rat(1, 3))
    );
    assert_eq!(
        classify(&cantor, &Rational::zero()),
        Classification::RationalValue(Rational::zero())
    );
    let e = to_expansion(&rat(1, 4), 3).unwrap();
    assert_eq!(e.to_string(), "3:(02)");
}

proptest! {
    #[test]
    fn eval_is_monotone_and_bounded(
        mask in 0u32..(1 << 7),
        p in 0i64..=500, q in 1i64..=500, r in 0i64..=500,
    ) {
        let bits: Vec<bool> = (0..7).map(|i| mask >> i & 1 == 1).collect();
        prop_assume!((2..7).contains(&mask.count_ones()));
        let vector = DigitVector::from_bools(bits).unwrap();
        let (lo, hi) = (rat(p.min(r), q.max(p).max(r)), rat(p.max(r), q.max(p).max(r)));
        let (a, b) = (eval(&vector, &lo), eval(&vector, &hi));
        prop_assert!(a <= b);
        prop_assert!(!a.is_negative() && b <= Rational::one());
        prop_assert_eq!(b, reference_eval(&vector, &hi));
    }
}
