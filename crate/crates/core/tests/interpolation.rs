mod common;

use cantor_cdf::interpolation::{
    interpolate, interpolate_at_scale, interpolate_bracketing, max_error, Abscissa,
};
use cantor_cdf::{DigitStream, Error, Rational};
use common::{rat, reference_eval};
use num_traits::Signed;
use proptest::prelude::*;

#[test]
fn interpolant_hits_data() {
    let data = vec![(rat(1, 4), rat(1, 3)), (rat(1, 2), rat(2, 3))];
    let v = interpolate(&data).unwrap();
    for (x, y) in &data {
        assert_eq!(reference_eval(&v, x), *y);
    }
    assert_eq!(max_error(&data).unwrap(), rat(1, 3));
}

#[test]
fn rejects_non_monotone_data() {
    let data = vec![(rat(1, 4), rat(2, 3)), (rat(1, 2), rat(1, 3))];
    assert!(matches!(interpolate(&data), Err(Error::InvalidData(_))));
    let data = vec![(rat(1, 2), rat(1, 3)), (rat(1, 4), rat(2, 3))];
    assert!(interpolate(&data).is_err());
}

#[test]
fn bracketing_pins_irrational_abscissae() {
    // x ≈ 0.4142… in base 10, with F(x) = 1/2
    let sqrt2_frac = "4142135623730950488016887242096980785696";
    let digits: Vec<u32> = sqrt2_frac
        .chars()
        .map(|c| c.to_digit(10).unwrap())
        .collect();
    let stream = DigitStream::from_fn(10, move |i| digits[(i - 1) % digits.len()]).unwrap();
    let mut points = vec![
        (Abscissa::Exact(rat(1, 5)), rat(1, 4)),
        (Abscissa::Stream(stream), rat(1, 2)),
    ];
    let (v, data) = interpolate_bracketing(&mut points, 6).unwrap();
    assert_eq!(data.len(), 3);
    for (x, y) in &data {
        assert_eq!(reference_eval(&v, x), *y);
    }
    // a single digit cannot separate the bracket from 1/5
    let digits: Vec<u32> = vec![2, 0, 1];
    let close = DigitStream::from_fn(10, move |i| digits[(i - 1) % 3]).unwrap();
    let mut points = vec![
        (Abscissa::Exact(rat(1, 5)), rat(1, 4)),
        (Abscissa::Stream(close), rat(1, 2)),
    ];
    assert!(matches!(
        interpolate_bracketing(&mut points, 1),
        Err(Error::InsufficientPrecision(_))
    ));
}

fn dataset() -> impl Strategy<Value = Vec<(Rational, Rational)>> {
    (1usize..=4)
        .prop_flat_map(|k| {
            (
                prop::collection::btree_set((1i64..30, 31i64..=31), k),
                prop::collection::vec(1i64..=19, k),
            )
        })
        .prop_map(|(xs, mut ys)| {
            ys.sort();
            xs.into_iter()
                .zip(ys)
                .map(|((p, q), y)| (rat(p, q), rat(y, 20)))
                .collect()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn two_interpolants_stay_within_max_error(data in dataset(), t in 0i64..=97) {
        let v = interpolate(&data).unwrap();
        let w = interpolate_at_scale(&data, 2 * v.base()).unwrap();
        for (x, y) in &data {
            prop_assert_eq!(&reference_eval(&v, x), y);
            prop_assert_eq!(&reference_eval(&w, x), y);
        }
        let x = rat(t, 97);
        let gap = (reference_eval(&v, &x) - reference_eval(&w, &x)).abs();
        prop_assert!(gap <= max_error(&data).unwrap());
    }
}
