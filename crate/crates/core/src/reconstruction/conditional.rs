use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::CdfOracle;
use crate::{DigitVector, Error, Rational, Result};

/// Smallest positive `ℓ` with `2^{ℓ+1} > n - 1`.
pub fn sample_depth(n: usize) -> u32 {
    let mut l = 1;
    while (1u128 << (l + 1)) <= (n as u128).saturating_sub(1) {
        l += 1;
    }
    l
}

/// `x_m = 2m/N^{ℓ+1} + Σ_{k=1}^{ℓ} (2m-1)/N^k`, whose base-`N` digits are
/// `2m-1` repeated `ℓ` times followed by `2m`.
///
/// `F(x_m)` is `ψ^{ℓ+1}(1)` for `ψ(t) = (g(2m-1) + b_{2m-1}·t)/‖B‖`, which
/// depends only on `g(2m-2)`, `b_{2m-2}`, `b_{2m-1}` and `‖B‖`.
pub fn sample_point(n: usize, l: u32, m: usize) -> Rational {
    let n = BigInt::from(n);
    let mut num = BigInt::zero();
    for _ in 0..l {
        num = num * &n + BigInt::from(2 * m - 1);
    }
    num = num * &n + BigInt::from(2 * m);
    Rational::new(num, n.pow(l + 1))
}

/// The four possible values of `F(x_m)` for `(b_{2m-2}, b_{2m-1})` equal to
/// `(0,0)`, `(1,0)`, `(0,1)`, `(1,1)`, given `g = g(2m-2)` and weight `w`.
fn pair_values(g: usize, w: usize, l: u32) -> [(Rational, (bool, bool)); 4] {
    let r = |n: usize| Rational::from_integer(BigInt::from(n));
    let w_r = r(w);
    let top = (0..=l).fold(Rational::one(), |acc, _| acc / &w_r);
    let mut geometric = Rational::zero();
    let mut power = Rational::one();
    for _ in 0..l {
        power /= &w_r;
        geometric += &power;
    }
    [
        (r(g) / &w_r, (false, false)),
        (r(g + 1) / &w_r, (true, false)),
        (r(g + 1) * &top + r(g) * &geometric, (false, true)),
        (r(g + 2) * &top + r(g + 1) * &geometric, (true, true)),
    ]
}

fn unclassifiable(y: &Rational, x: &Rational) -> Error {
    Error::UnclassifiableSample(format!("sample {y} at {x} matches no digit pattern"))
}

/// Recovers a scale-`n` vector with at most `⌊n/2⌋` adaptive queries.
///
/// The first phase walks digit pairs from the left until a sample is nonzero,
/// which also reveals `‖B‖`. The second phase walks pairs from the right by
/// sampling the reversed CDF `1 - F(1 - x)`. A pair is settled without a query
/// once the remaining weight is zero, and the middle digit of an odd scale is
/// fixed by the weight count.
pub fn conditional_reconstruct(oracle: &mut CdfOracle, n: usize) -> Result<DigitVector> {
    if n < 3 {
        return Err(Error::OutOfRange(format!("scale factor {n} < 3")));
    }
    let l = sample_depth(n);
    let half = n / 2;
    let mut bits = vec![false; n];

    let mut first = None;
    for m in 1..=half {
        let x = sample_point(n, l, m);
        let y = oracle.query(&x)?;
        if y.is_zero() {
            continue;
        }
        let hits: Vec<(usize, (bool, bool))> = (2..n)
            .flat_map(|w| {
                pair_values(0, w, l)
                    .into_iter()
                    .skip(1)
                    .filter(|(value, _)| *value == y)
                    .map(move |(_, pair)| (w, pair))
            })
            .collect();
        let [(w, (b0, b1))] = hits[..] else {
            return Err(unclassifiable(&y, &x));
        };
        bits[2 * m - 2] = b0;
        bits[2 * m - 1] = b1;
        first = Some((m, w));
        break;
    }
    let (m, weight) = first
        .ok_or_else(|| Error::InconsistentSamples("every left-hand sample vanished".into()))?;
    let front = bits.iter().filter(|&&b| b).count();

    let mut back = 0;
    for j in 1..=half - m {
        let remaining = weight
            .checked_sub(front + back)
            .ok_or_else(|| Error::InconsistentSamples("digit count exceeds weight".into()))?;
        if remaining == 0 {
            continue;
        }
        let x = sample_point(n, l, j);
        let y = oracle.query_reversed(&x)?;
        let hits: Vec<(bool, bool)> = pair_values(back, weight, l)
            .into_iter()
            .filter(|(value, _)| *value == y)
            .map(|(_, pair)| pair)
            .collect();
        let [(c0, c1)] = hits[..] else {
            return Err(unclassifiable(&y, &x));
        };
        bits[n - 1 - (2 * j - 2)] = c0;
        bits[n - 1 - (2 * j - 1)] = c1;
        back += c0 as usize + c1 as usize;
    }

    if n % 2 == 1 {
        // left pairs end at 2m - 1 and right pairs begin at 2m + 1
        let middle = 2 * m;
        match weight.checked_sub(front + back) {
            Some(0) => bits[middle] = false,
            Some(1) => bits[middle] = true,
            _ => {
                return Err(Error::InconsistentSamples(format!(
                    "weight {weight} leaves no valid middle digit"
                )))
            }
        }
    }
    let v = DigitVector::from_bools(bits)
        .map_err(|e| Error::InconsistentSamples(format!("recovered digits are invalid: {e}")))?;
    if v.weight() != weight {
        return Err(Error::InconsistentSamples(format!(
            "recovered weight {} differs from sampled weight {weight}",
            v.weight()
        )));
    }
    Ok(v)
}
