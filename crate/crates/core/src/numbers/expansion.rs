use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::{Error, Rational, Result};

/// Eventually periodic base-`N` digit sequence `0.pre(per)(per)…`.
///
/// Canonical expansions (as produced by [`to_expansion`]) have a primitive
/// period that is not all `N-1` and a minimal preperiod. Non-canonical forms
/// are representable too; [`alternate_expansion`] returns trailing-`(N-1)`
/// forms of base-adic rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PeriodicExpansion {
    base: u32,
    preperiod: Vec<u32>,
    period: Vec<u32>,
}

impl PeriodicExpansion {
    pub fn new(base: u32, preperiod: Vec<u32>, period: Vec<u32>) -> Result<Self> {
        if base < 2 {
            return Err(Error::OutOfRange(format!("base {base} < 2")));
        }
        if period.is_empty() {
            return Err(Error::InvalidData("period must be nonempty".into()));
        }
        if let Some(d) = preperiod.iter().chain(&period).find(|&&d| d >= base) {
            return Err(Error::InvalidData(format!(
                "digit {d} not below base {base}"
            )));
        }
        Ok(PeriodicExpansion {
            base,
            preperiod,
            period,
        })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn preperiod(&self) -> &[u32] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u32] {
        &self.period
    }

    /// Digit at 1-based position `i` (coefficient of `N^-i`).
    pub fn digit(&self, i: usize) -> u32 {
        assert!(i >= 1, "digit positions start at 1");
        let s = self.preperiod.len();
        if i <= s {
            self.preperiod[i - 1]
        } else {
            self.period[(i - s - 1) % self.period.len()]
        }
    }

    /// All digits that ever occur.
    pub fn digits(&self) -> impl Iterator<Item = u32> + '_ {
        self.preperiod.iter().chain(&self.period).copied()
    }

    pub fn value(&self) -> Rational {
        from_expansion(self)
    }

    pub fn is_canonical(&self) -> bool {
        match to_expansion(&self.value(), self.base) {
            Ok(canon) => canon == *self,
            Err(_) => false,
        }
    }
}

fn write_digits(f: &mut fmt::Formatter<'_>, base: u32, digits: &[u32]) -> fmt::Result {
    if base <= 10 {
        for d in digits {
            write!(f, "{d}")?;
        }
        Ok(())
    } else {
        let parts: Vec<String> = digits.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Text form `base:pre(per)`, e.g. `3:(02)` or `3:1(0)`. Bases above ten
/// separate digits with commas: `12:3,11(0)`.
impl fmt::Display for PeriodicExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.base)?;
        write_digits(f, self.base, &self.preperiod)?;
        write!(f, "(")?;
        write_digits(f, self.base, &self.period)?;
        write!(f, ")")
    }
}

fn parse_digits(base: u32, text: &str) -> Result<Vec<u32>> {
    let t = text.trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    let bad = || Error::Parse(format!("bad digit list {text:?}"));
    if base <= 10 && !t.contains(',') {
        t.chars().map(|c| c.to_digit(10).ok_or_else(bad)).collect()
    } else {
        t.split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| bad()))
            .collect()
    }
}

impl FromStr for PeriodicExpansion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("{s:?} is not of the form base:pre(per)"));
        let (base, rest) = s.trim().split_once(':').ok_or_else(bad)?;
        let base: u32 = base.trim().parse().map_err(|_| bad())?;
        let open = rest.find('(').ok_or_else(bad)?;
        let close = rest.rfind(')').ok_or_else(bad)?;
        if close + 1 != rest.len() || close < open {
            return Err(bad());
        }
        let pre = parse_digits(base, &rest[..open])?;
        let per = parse_digits(base, &rest[open + 1..close])?;
        PeriodicExpansion::new(base, pre, per)
    }
}

/// Number of leading digits before the period of `p/den` in base `base`, for
/// `p/den` in lowest terms: the least `s` with the `base`-smooth part of `den`
/// dividing `base^s`.
pub(crate) fn preperiod_len(den: &BigUint, base: &BigUint) -> usize {
    let mut rest = den.clone();
    let mut s = 0;
    loop {
        let g = rest.gcd(base);
        if g.is_one() {
            return s;
        }
        rest /= g;
        s += 1;
    }
}

/// Lazy long division of `rem/den` in base `base`, for `0 <= rem < den`.
#[derive(Debug, Clone)]
pub(crate) struct LongDivision {
    rem: BigUint,
    den: BigUint,
    base: BigUint,
}

impl LongDivision {
    pub(crate) fn new(rem: BigUint, den: BigUint, base: u32) -> Self {
        debug_assert!(rem < den);
        LongDivision {
            rem,
            den,
            base: BigUint::from(base),
        }
    }

    pub(crate) fn remainder(&self) -> &BigUint {
        &self.rem
    }

    pub(crate) fn next_digit(&mut self) -> u32 {
        let scaled = &self.rem * &self.base;
        let (d, r) = scaled.div_rem(&self.den);
        self.rem = r;
        u32::try_from(d).expect("digit below base")
    }
}

/// Splits a rational in `[0, 1)` into `(numerator, denominator)` as naturals.
pub(crate) fn unit_parts(x: &Rational) -> (BigUint, BigUint) {
    let num = x.numer().to_biguint().expect("nonnegative");
    let den = x.denom().to_biguint().expect("positive");
    (num, den)
}

/// Canonical base-`base` expansion of `x ∈ [0, 1)`; base-adic rationals get
/// the trailing-zero form.
pub fn to_expansion(x: &Rational, base: u32) -> Result<PeriodicExpansion> {
    if base < 2 {
        return Err(Error::OutOfRange(format!("base {base} < 2")));
    }
    if x.is_negative() || *x >= Rational::one() {
        return Err(Error::OutOfRange(format!("{x} is not in [0, 1)")));
    }
    let (num, den) = unit_parts(x);
    let s = preperiod_len(&den, &BigUint::from(base));
    let mut div = LongDivision::new(num, den, base);
    let preperiod: Vec<u32> = (0..s).map(|_| div.next_digit()).collect();
    let start = div.remainder().clone();
    let mut period = vec![div.next_digit()];
    while *div.remainder() != start {
        period.push(div.next_digit());
    }
    Ok(PeriodicExpansion {
        base,
        preperiod,
        period,
    })
}

/// The trailing-`(N-1)` expansion of a base-adic `x ∈ (0, 1]`, or `None`
/// when `x` has a single expansion.
pub fn alternate_expansion(x: &Rational, base: u32) -> Option<PeriodicExpansion> {
    if base < 2 || !x.is_positive() || *x > Rational::one() {
        return None;
    }
    let top = base - 1;
    if x.is_one() {
        return Some(PeriodicExpansion {
            base,
            preperiod: vec![],
            period: vec![top],
        });
    }
    let canon = to_expansion(x, base).ok()?;
    if canon.period != [0] {
        return None;
    }
    let mut preperiod = canon.preperiod;
    let last = preperiod.last_mut()?;
    *last -= 1;
    Some(PeriodicExpansion {
        base,
        preperiod,
        period: vec![top],
    })
}

fn digits_as_integer(base: &BigUint, digits: &[u32]) -> BigUint {
    digits
        .iter()
        .fold(BigUint::zero(), |acc, &d| acc * base + BigUint::from(d))
}

/// Exact value of an expansion (any form, canonical or not).
pub fn from_expansion(e: &PeriodicExpansion) -> Rational {
    let base = BigUint::from(e.base);
    let pre = digits_as_integer(&base, &e.preperiod);
    let per = digits_as_integer(&base, &e.period);
    let cycle = base.pow(e.period.len() as u32) - 1u32;
    let shift = base.pow(e.preperiod.len() as u32);
    let num = pre * &cycle + per;
    let den = shift * cycle;
    Rational::new(BigInt::from(num), BigInt::from(den))
}
