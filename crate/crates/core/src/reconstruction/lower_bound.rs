use num_bigint::BigInt;

use crate::{DigitVector, Error, Rational, Result};

/// Two different scale-`n` vectors whose CDFs agree at every given point.
///
/// Finds `i` such that no point lies in `(i/n, (i+2)/n)` and `j ∉ {i, i+1}`
/// such that no point lies in `(j/n, (j+1)/n)`. Keeping `{i+1, j}` or
/// `{i, j}` gives CDFs that differ only strictly inside `(i/n, (i+2)/n)`.
/// With fewer than `⌊n/2⌋` points both gaps always exist.
pub fn indistinguishable_pair(n: usize, points: &[Rational]) -> Result<(DigitVector, DigitVector)> {
    if n < 4 {
        return Err(Error::OutOfRange(format!("scale factor {n} < 4")));
    }
    let at = |k: usize| Rational::new(BigInt::from(k), BigInt::from(n));
    let empty = |lo: &Rational, hi: &Rational| !points.iter().any(|p| lo < p && p < hi);
    for i in 0..n - 1 {
        if !empty(&at(i), &at(i + 2)) {
            continue;
        }
        let Some(j) = (0..n).find(|&j| j != i && j != i + 1 && empty(&at(j), &at(j + 1))) else {
            continue;
        };
        let mut b = vec![false; n];
        b[i + 1] = true;
        b[j] = true;
        let mut c = vec![false; n];
        c[i] = true;
        c[j] = true;
        return Ok((DigitVector::from_bools(b)?, DigitVector::from_bools(c)?));
    }
    Err(Error::NoGapFound)
}
