//! Digit vectors whose CDF passes through prescribed monotone data.
//!
//! Write the data over common denominators, `x_i = a_i/N` and `y_i = c_i/C`,
//! with `N` large enough that every x-gap exceeds the matching y-gap:
//! `a_{i+1} - a_i >= c_{i+1} - c_i + 1` (with `a_0 = c_0 = 0`, `a_{k+1} = N`,
//! `c_{k+1} = C`). Keeping the first `c_{i+1} - c_i` digits of each block
//! `[a_i, a_{i+1})` gives `g(a_i) = c_i` and weight `C`, so `F(x_i) = y_i`.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cdf::eval;
use crate::{DigitStream, DigitVector, Error, Limits, Rational, Result};

/// An x-coordinate: exact, or known only through a digit stream.
#[derive(Debug, Clone)]
pub enum Abscissa {
    Exact(Rational),
    Stream(DigitStream),
}

/// Data on a common scale: `x_i = a[i]/n`, `y_i = c[i]/weight`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub n: usize,
    pub weight: usize,
    pub a: Vec<usize>,
    pub c: Vec<usize>,
}

fn check_data(points: &[(Rational, Rational)]) -> Result<()> {
    if points.is_empty() {
        return Err(Error::InvalidData("no data points to interpolate".into()));
    }
    let one = Rational::one();
    for (x, y) in points {
        if !x.is_positive() || *x >= one || !y.is_positive() || *y >= one {
            return Err(Error::InvalidData(format!(
                "point ({x}, {y}) is not strictly inside the unit square"
            )));
        }
    }
    for w in points.windows(2) {
        if w[1].0 <= w[0].0 {
            return Err(Error::InvalidData(format!(
                "x-values {} and {} are not strictly increasing",
                w[0].0, w[1].0
            )));
        }
        if w[1].1 < w[0].1 {
            return Err(Error::InvalidData(format!(
                "y-values {} and {} decrease",
                w[0].1, w[1].1
            )));
        }
    }
    Ok(())
}

fn lcm_of(dens: impl Iterator<Item = BigInt>) -> BigInt {
    dens.fold(BigInt::one(), |acc, d| acc.lcm(&d))
}

/// Numerators of the data on denominator `n`; `None` if some `x_i·n` is not
/// an integer.
fn scale_to(points: &[(Rational, Rational)], n: usize, weight: usize) -> Option<Normalized> {
    let to_int = |r: Rational, den: usize| {
        let scaled = r * Rational::from_integer(BigInt::from(den));
        scaled
            .is_integer()
            .then(|| scaled.to_integer().to_usize())
            .flatten()
    };
    let mut a = Vec::with_capacity(points.len());
    let mut c = Vec::with_capacity(points.len());
    for (x, y) in points {
        a.push(to_int(x.clone(), n)?);
        c.push(to_int(y.clone(), weight)?);
    }
    Some(Normalized { n, weight, a, c })
}

impl Normalized {
    /// Whether every x-gap exceeds its y-gap, boundary gaps included.
    pub fn gaps_ok(&self) -> bool {
        let a: Vec<usize> = std::iter::once(0)
            .chain(self.a.iter().copied())
            .chain(std::iter::once(self.n))
            .collect();
        let c: Vec<usize> = std::iter::once(0)
            .chain(self.c.iter().copied())
            .chain(std::iter::once(self.weight))
            .collect();
        (0..a.len() - 1).all(|i| a[i + 1] >= a[i] && a[i + 1] - a[i] > c[i + 1] - c[i])
    }

    /// The block vector: `c_{i+1} - c_i` ones starting at each `a_i`.
    pub fn to_vector(&self) -> Result<DigitVector> {
        let mut bits = vec![false; self.n];
        let starts = std::iter::once(0).chain(self.a.iter().copied());
        let ends = self.c.iter().copied().chain(std::iter::once(self.weight));
        let mut prev_c = 0;
        for (start, c_next) in starts.zip(ends) {
            for bit in &mut bits[start..start + (c_next - prev_c)] {
                *bit = true;
            }
            prev_c = c_next;
        }
        DigitVector::from_bools(bits)
    }
}

/// Smallest common scale `N` (a multiple of the x-denominators' lcm) and the
/// y-denominator lcm `C` satisfying all gap constraints.
pub fn normalize(points: &[(Rational, Rational)]) -> Result<Normalized> {
    normalize_with(points, &Limits::default())
}

pub fn normalize_with(points: &[(Rational, Rational)], limits: &Limits) -> Result<Normalized> {
    check_data(points)?;
    let x_lcm = lcm_of(points.iter().map(|(x, _)| x.denom().clone()));
    let y_lcm = lcm_of(points.iter().map(|(_, y)| y.denom().clone()));
    let too_big = |what| Error::ResourceLimit {
        what,
        needed: u128::MAX,
        cap: limits.max_bits,
    };
    let weight = y_lcm
        .to_usize()
        .ok_or_else(|| too_big("interpolant weight"))?;
    let base = x_lcm
        .to_usize()
        .ok_or_else(|| too_big("interpolant length"))?;
    // t = weight + 1 always works: every x-gap is then at least weight + 1
    for t in 1..=weight + 1 {
        let n = base
            .checked_mul(t)
            .ok_or_else(|| too_big("interpolant length"))?;
        limits.check("interpolant length", n as u128)?;
        let scaled = scale_to(points, n, weight).expect("denominators divide the common scale");
        if scaled.gaps_ok() {
            return Ok(scaled);
        }
    }
    unreachable!("a scale of (C + 1)·lcm always satisfies the gap constraints")
}

/// A digit vector whose CDF passes through every data point.
pub fn interpolate(points: &[(Rational, Rational)]) -> Result<DigitVector> {
    normalize(points)?.to_vector()
}

/// The block interpolant on an explicit scale `n`, which must be a multiple
/// of the x-denominators with room for every gap.
pub fn interpolate_at_scale(points: &[(Rational, Rational)], n: usize) -> Result<DigitVector> {
    check_data(points)?;
    let y_lcm = lcm_of(points.iter().map(|(_, y)| y.denom().clone()));
    let weight = y_lcm
        .to_usize()
        .ok_or_else(|| Error::InvalidData("y-denominators too large".into()))?;
    let scaled = scale_to(points, n, weight)
        .ok_or_else(|| Error::InvalidData(format!("x-values are not multiples of 1/{n}")))?;
    if !scaled.gaps_ok() {
        return Err(Error::InvalidData(format!(
            "scale {n} leaves a gap too small"
        )));
    }
    scaled.to_vector()
}

/// Interpolant through data whose x-values may be digit streams.
///
/// A stream `x` in base `M` is replaced by the pair `lo - M^-p` and
/// `lo + M^-p` around its truncation `lo` at `p = precision` digits, both
/// carrying the y-value of `x`; monotonicity then pins `F(x)`. Exact points
/// pass through unchanged. Returns the vector and the rational data used.
pub fn interpolate_bracketing(
    points: &mut [(Abscissa, Rational)],
    precision: usize,
) -> Result<(DigitVector, Vec<(Rational, Rational)>)> {
    if precision == 0 {
        return Err(Error::InsufficientPrecision(
            "precision must be positive".into(),
        ));
    }
    let mut data = Vec::new();
    let mut any_stream = false;
    for (x, y) in points.iter_mut() {
        match x {
            Abscissa::Exact(r) => data.push((r.clone(), y.clone())),
            Abscissa::Stream(s) => {
                any_stream = true;
                let (lo, hi) = s.interval(precision);
                let unit = &hi - &lo;
                data.push((&lo - &unit, y.clone()));
                data.push((hi, y.clone()));
            }
        }
    }
    if any_stream {
        let one = Rational::one();
        let separated = data.first().is_some_and(|(x, _)| x.is_positive())
            && data.last().is_some_and(|(x, _)| *x < one)
            && data.windows(2).all(|w| w[0].0 < w[1].0);
        if !separated {
            return Err(Error::InsufficientPrecision(format!(
                "{precision} digits do not separate the points from each other and from 0 and 1"
            )));
        }
    }
    let v = interpolate(&data)?;
    debug_assert!(data.iter().all(|(x, y)| eval(&v, x) == *y));
    Ok((v, data))
}

/// Largest y-gap between consecutive samples, with `(0,0)` and `(1,1)`
/// appended: a bound on how far any two CDFs through the data can differ.
pub fn max_error(samples: &[(Rational, Rational)]) -> Result<Rational> {
    let one = Rational::one();
    let mut ys = vec![Rational::zero()];
    let mut last_x = Rational::zero();
    for (i, (x, y)) in samples.iter().enumerate() {
        if x.is_negative() || *x > one || (i > 0 && *x <= last_x) {
            return Err(Error::InvalidData(format!(
                "x-value {x} out of order or range"
            )));
        }
        last_x = x.clone();
        ys.push(y.clone());
    }
    ys.push(one);
    let mut worst = Rational::zero();
    for w in ys.windows(2) {
        if w[1] < w[0] || w[0].is_negative() || w[1] > Rational::one() {
            return Err(Error::InvalidData(
                "y-values must be non-decreasing in [0, 1]".into(),
            ));
        }
        worst = worst.max(&w[1] - &w[0]);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rat;

    fn p(pairs: &[(i64, i64, i64, i64)]) -> Vec<(Rational, Rational)> {
        pairs
            .iter()
            .map(|&(a, b, c, d)| (rat(a, b), rat(c, d)))
            .collect()
    }

    #[test]
    fn normalize_examples() {
        let n = normalize(&p(&[(1, 3, 1, 2)])).unwrap();
        assert_eq!(
            (n.n, n.weight, n.a.clone(), n.c.clone()),
            (6, 2, vec![2], vec![1])
        );
        let n = normalize(&p(&[(1, 2, 1, 2)])).unwrap();
        assert_eq!(
            (n.n, n.weight, n.a.clone(), n.c.clone()),
            (4, 2, vec![2], vec![1])
        );
        let n = normalize(&p(&[(1, 4, 1, 3), (1, 2, 2, 3)])).unwrap();
        assert_eq!(
            (n.n, n.weight, n.a.clone(), n.c.clone()),
            (8, 3, vec![2, 4], vec![1, 2])
        );
        assert!(normalize(&p(&[(1, 2, 2, 3), (3, 4, 1, 3)])).is_err());
        assert!(normalize(&p(&[(1, 2, 1, 3), (1, 2, 2, 3)])).is_err());
        assert!(normalize(&p(&[(1, 1, 1, 3)])).is_err());
        assert!(normalize(&p(&[(1, 3, 0, 1)])).is_err());
    }

    #[test]
    fn interpolate_examples() {
        let v = interpolate(&p(&[(1, 3, 1, 2)])).unwrap();
        assert_eq!(v.to_string(), "6:101000");
        assert_eq!(eval(&v, &rat(1, 3)), rat(1, 2));
        let v = interpolate(&p(&[(1, 4, 1, 3), (1, 2, 2, 3)])).unwrap();
        assert_eq!(v.to_string(), "8:10101000");
        assert_eq!(eval(&v, &rat(1, 4)), rat(1, 3));
        assert_eq!(eval(&v, &rat(1, 2)), rat(2, 3));
        assert!(matches!(interpolate(&[]), Err(Error::InvalidData(_))));
    }

    #[test]
    fn doubled_scale_gives_another_interpolant() {
        let data = p(&[(1, 4, 1, 3), (1, 2, 2, 3)]);
        let v = interpolate(&data).unwrap();
        let w = interpolate_at_scale(&data, 2 * v.base()).unwrap();
        assert_ne!(v, w);
        for (x, y) in &data {
            assert_eq!(eval(&w, x), *y);
        }
        assert!(interpolate_at_scale(&data, 4).is_err());
        assert!(interpolate_at_scale(&data, 6).is_err());
    }

    #[test]
    fn bracketing_examples() {
        // digits of 1/√2 = 0.70710678…
        let digits = [7, 0, 7, 1, 0, 6, 7, 8, 1, 1, 8, 6, 5, 4, 7, 5];
        let root_half = DigitStream::from_fn(10, move |i| digits[(i - 1) % digits.len()]).unwrap();
        let mut pts = vec![(Abscissa::Stream(root_half), rat(1, 2))];
        let (v, data) = interpolate_bracketing(&mut pts, 4).unwrap();
        assert_eq!(data[0].0, rat(7070, 10_000));
        assert_eq!(data[1].0, rat(7072, 10_000));
        assert_eq!(eval(&v, &rat(7070, 10_000)), rat(1, 2));
        assert_eq!(eval(&v, &rat(7072, 10_000)), rat(1, 2));
        assert_eq!(eval(&v, &rat(7071, 10_000)), rat(1, 2));

        let a = DigitStream::from_fn(10, |i| if i <= 4 { [3, 3, 3, 3][i - 1] } else { 0 }).unwrap();
        let b = DigitStream::from_fn(10, |i| if i <= 4 { [3, 3, 3, 3][i - 1] } else { 9 }).unwrap();
        let mut close = vec![
            (Abscissa::Stream(a), rat(1, 3)),
            (Abscissa::Stream(b), rat(2, 3)),
        ];
        assert!(matches!(
            interpolate_bracketing(&mut close, 4),
            Err(Error::InsufficientPrecision(_))
        ));

        let data = p(&[(1, 4, 1, 3), (1, 2, 2, 3)]);
        let mut exact: Vec<(Abscissa, Rational)> = data
            .iter()
            .map(|(x, y)| (Abscissa::Exact(x.clone()), y.clone()))
            .collect();
        let (v, used) = interpolate_bracketing(&mut exact, 3).unwrap();
        assert_eq!(v, interpolate(&data).unwrap());
        assert_eq!(used, data);
    }

    #[test]
    fn max_error_examples() {
        assert_eq!(
            max_error(&p(&[(1, 4, 1, 3), (3, 4, 2, 3)])).unwrap(),
            rat(1, 3)
        );
        assert_eq!(max_error(&p(&[(1, 2, 1, 2)])).unwrap(), rat(1, 2));
        let k = 9;
        let even: Vec<(Rational, Rational)> =
            (1..=k).map(|i| (rat(i, k + 1), rat(i, k + 1))).collect();
        assert_eq!(max_error(&even).unwrap(), rat(1, k + 1));
        assert!(max_error(&p(&[(1, 2, 2, 3), (3, 4, 1, 3)])).is_err());
    }
}
