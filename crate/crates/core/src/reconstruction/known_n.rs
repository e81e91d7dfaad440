use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::CdfOracle;
use crate::{DigitVector, Error, Rational, Result};

/// Recovers a vector of known scale `n` from `F(k/n)`, `k = 1, …, n-1`.
///
/// Kept digits are exactly the steps with `F((k+1)/n) > F(k/n)`, and every
/// such step must equal `1/‖B‖`.
pub fn reconstruct_known_n(oracle: &mut CdfOracle, n: usize) -> Result<DigitVector> {
    if n < 3 {
        return Err(Error::OutOfRange(format!("scale factor {n} < 3")));
    }
    let mut values = vec![Rational::zero()];
    for k in 1..n {
        values.push(oracle.query(&Rational::new(BigInt::from(k), BigInt::from(n)))?);
    }
    values.push(Rational::one());
    let steps: Vec<Rational> = values.windows(2).map(|w| &w[1] - &w[0]).collect();
    if let Some(k) = steps.iter().position(|d| d.is_negative()) {
        return Err(Error::InconsistentSamples(format!(
            "samples decrease between {k}/{n} and {}/{n}",
            k + 1
        )));
    }
    let weight = steps.iter().filter(|d| !d.is_zero()).count();
    if weight < 2 || weight > n - 1 {
        return Err(Error::InconsistentSamples(format!(
            "{weight} nonzero steps cannot come from a scale-{n} vector"
        )));
    }
    let unit = Rational::new(BigInt::one(), BigInt::from(weight));
    if let Some(d) = steps.iter().find(|d| !d.is_zero() && **d != unit) {
        return Err(Error::InconsistentSamples(format!(
            "step {d} differs from 1/{weight}"
        )));
    }
    DigitVector::from_bools(steps.iter().map(|d| !d.is_zero()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digits::all_vectors;

    #[test]
    fn examples() {
        let mut o = CdfOracle::hidden("3:101".parse().unwrap());
        assert_eq!(reconstruct_known_n(&mut o, 3).unwrap().to_string(), "3:101");
        assert_eq!(o.queries(), 2);
        let mut o = CdfOracle::hidden("4:1101".parse().unwrap());
        assert_eq!(
            reconstruct_known_n(&mut o, 4).unwrap().to_string(),
            "4:1101"
        );
        let mut o = CdfOracle::hidden("3:101".parse().unwrap());
        assert!(matches!(
            reconstruct_known_n(&mut o, 4),
            Err(Error::InconsistentSamples(_))
        ));
    }

    #[test]
    fn round_trips_small_scales() {
        for n in 3..=7 {
            for v in all_vectors(n) {
                let mut o = CdfOracle::hidden(v.clone());
                assert_eq!(reconstruct_known_n(&mut o, n).unwrap(), v);
                assert_eq!(o.queries(), n - 1);
            }
        }
    }

    #[test]
    fn squares_answer_as_their_lift() {
        // F is the same for B and B⊗B, so asking at scale 9 recovers the lift
        let v: DigitVector = "3:110".parse().unwrap();
        let mut o = CdfOracle::hidden(v.clone());
        assert_eq!(reconstruct_known_n(&mut o, 9).unwrap(), v.power(2).unwrap());
    }
}
