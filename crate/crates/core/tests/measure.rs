mod common;

use cantor_cdf::measure::{
    character_bound, digit_frequency, intersection_rate, normality, weyl_sum, weyl_sum_rational,
    MuSampler,
};
use cantor_cdf::{DigitSet, DigitStream, DigitVector};
use common::rat;

fn cantor() -> DigitVector {
    "3:101".parse().unwrap()
}

#[test]
fn samples_are_reproducible_and_in_the_set() {
    let s = MuSampler::new(cantor(), 42);
    let a = s.sample(20, 50);
    let b = s.sample(20, 50);
    for (mut x, mut y) in a.into_iter().zip(b) {
        let px = x.prefix(50).to_vec();
        assert_eq!(px, y.prefix(50));
        assert!(px.iter().all(|&d| d == 0 || d == 2));
    }
}

#[test]
fn frequency_of_a_known_expansion() {
    // 1/3 in base 2 is 0.(01)
    let mut x = DigitStream::from_rational(&rat(1, 3), 2).unwrap();
    let r = digit_frequency(&mut x, 2, 100).unwrap();
    assert_eq!(r.counts, vec![50, 50]);
    assert_eq!(r.max_deviation, 0.0);
}

#[test]
fn normality_is_seeded() {
    let a = normality(&cantor(), 5, 64, 30, 1).unwrap();
    let b = normality(&cantor(), 5, 64, 30, 1).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.total, 64 * 30);
}

#[test]
fn intersection_with_itself_is_full() {
    let rate = intersection_rate(&cantor(), &cantor(), 50, 40, 3).unwrap();
    assert_eq!(rate, 1.0);
}

#[test]
fn weyl_sums_of_rationals() {
    // 1/3 · 2^n mod 1 alternates 1/3, 2/3 and e(1/3) + e(2/3) = -1
    let s: f64 = weyl_sum_rational(&rat(1, 3), 2, 1, 2);
    assert!((s - 1.0).abs() < 1e-12);
    let s: f64 = weyl_sum_rational(&rat(0, 1), 2, 1, 10);
    assert!((s - 10.0).abs() < 1e-12);
}

#[test]
fn weyl_sum_needs_enough_digits() {
    let mut x = MuSampler::new(cantor(), 0).stream(0);
    assert!(weyl_sum::<f64>(&mut x, 2, 1, 100, 5).is_err());
    assert!(weyl_sum::<f64>(&mut x, 2, 1, 100, 200).is_ok());
}

#[test]
fn character_bound_at_the_extremes() {
    let d = DigitSet::new(3, vec![0, 2]).unwrap();
    let b = character_bound::<f64>(&d, 3, 1);
    // t = N^j makes every phase an integer
    assert!((b.left - 1.0).abs() < 1e-12);
    assert!(b.holds(1e-12));
}
