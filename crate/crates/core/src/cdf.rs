//! Exact evaluation of the Cantor CDF `F_B`.
//!
//! For `x = Σ n_i N^{-i}` in `(0, 1)`,
//!
//! ```text
//! F_B(x) = Σ_i (Π_{k<i} b_{n_k}) · g(n_i) / ‖B‖^i
//! ```
//!
//! The product vanishes after the first digit outside `D`, so the sum is
//! finite unless every digit of the (eventually periodic) expansion is kept,
//! in which case the periodic tail closes as a geometric series. Either way
//! the value is rational. `F = 0` on `x <= 0` and `F = 1` on `x >= 1`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::numbers::expansion::{preperiod_len, unit_parts, LongDivision};
use crate::numbers::stream::source_budget;
use crate::numbers::{alternate_expansion, to_expansion};
use crate::{DigitStream, DigitVector, Limits, Rational, Result, Scalar};

/// Default number of digits inspected before calling a stream irrational.
pub const DEFAULT_DEPTH: usize = 64;

/// Closed interval `[lo, hi]` known to contain a value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Scalar> Enclosure<T> {
    pub fn new(lo: T, hi: T) -> Self {
        assert!(lo <= hi, "enclosure endpoints out of order");
        Enclosure { lo, hi }
    }

    pub fn width(&self) -> T {
        self.hi.clone() - self.lo.clone()
    }

    pub fn contains(&self, x: &T) -> bool {
        self.lo <= *x && *x <= self.hi
    }
}

/// What can be said about `F_B(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    /// `x` is rational and `F_B(x)` is this value.
    RationalValue(Rational),
    /// The first `depth` base-`N` digits all lie in `D`; for a non-periodic
    /// stream `F_B(x)` is irrational.
    IrrationalAtDepth(usize),
    /// The base-`N` digit at this 1-based position lies outside `D`, so `x`
    /// is not in the Cantor set and `F_B(x)` is rational.
    NotMemberAt(usize),
}

/// `g`-values of the digits contributing to the series, split into a finite
/// head and an optional periodic tail repeated forever.
struct Series {
    head: Vec<usize>,
    tail: Option<Vec<usize>>,
}

/// Reads the base-`N` digits of `x ∈ (0, 1)` until the first dropped digit or
/// until a full period has been kept.
fn series(v: &DigitVector, x: &Rational) -> Series {
    let g = v.g_table();
    let (num, den) = unit_parts(x);
    let s = preperiod_len(&den, &BigUint::from(v.base()));
    let mut div = LongDivision::new(num, den, v.base() as u32);
    let mut head = Vec::new();
    for _ in 0..s {
        let d = div.next_digit() as usize;
        head.push(g[d]);
        if !v.bit(d) {
            return Series { head, tail: None };
        }
    }
    let start = div.remainder().clone();
    let mut period = Vec::new();
    loop {
        let d = div.next_digit() as usize;
        period.push(g[d]);
        if !v.bit(d) {
            head.extend(period);
            return Series { head, tail: None };
        }
        if *div.remainder() == start {
            return Series {
                head,
                tail: Some(period),
            };
        }
    }
}

fn clamp(x: &Rational) -> Option<Rational> {
    if !x.is_positive() {
        Some(Rational::zero())
    } else if *x >= Rational::one() {
        Some(Rational::one())
    } else {
        None
    }
}

/// Exact `F_B(x)`.
pub fn eval(v: &DigitVector, x: &Rational) -> Rational {
    if let Some(edge) = clamp(x) {
        return edge;
    }
    let w = BigUint::from(v.weight());
    let horner = |gs: &[usize]| {
        gs.iter()
            .fold(BigUint::zero(), |acc, &gv| acc * &w + BigUint::from(gv))
    };
    let Series { head, tail } = series(v, x);
    let scale = w.pow(head.len() as u32);
    let (num, den) = match tail {
        None => (horner(&head), scale),
        Some(period) => {
            let cycle = w.pow(period.len() as u32) - 1u32;
            (horner(&head) * &cycle + horner(&period), scale * cycle)
        }
    };
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `F_B(x)` accumulated in any [`Scalar`]; exact for [`Rational`],
/// rounded for floats.
pub fn eval_in<T: Scalar>(v: &DigitVector, x: &Rational) -> T {
    let from = |n: usize| T::from_usize(n).expect("small integers are representable");
    if let Some(edge) = clamp(x) {
        return if edge.is_zero() { T::zero() } else { T::one() };
    }
    let w = from(v.weight());
    // Σ_i g_i W^-i + start·W^-len, from the innermost term outwards
    let horner = |gs: &[usize], start: T| {
        gs.iter()
            .rev()
            .fold(start, |acc, &gv| (acc + from(gv)) / w.clone())
    };
    let Series { head, tail } = series(v, x);
    let tail_value = match tail {
        None => T::zero(),
        Some(period) => {
            let shrink = (0..period.len()).fold(T::one(), |acc, _| acc / w.clone());
            horner(&period, T::zero()) / (T::one() - shrink)
        }
    };
    horner(&head, tail_value)
}

/// Evaluates many points in parallel; results keep the input order.
pub fn eval_many(v: &DigitVector, xs: &[Rational]) -> Vec<Rational> {
    xs.par_iter().map(|x| eval(v, x)).collect()
}

/// Bounds `F_B` over the stream's current prefix interval `[lo, lo + M^-depth]`,
/// where `M` is the stream's own base.
pub fn eval_stream(v: &DigitVector, x: &mut DigitStream, depth: usize) -> Enclosure<Rational> {
    assert!(depth >= 1, "enclosure depth must be positive");
    let (lo, hi) = x.interval(depth);
    Enclosure::new(eval(v, &lo), eval(v, &hi))
}

/// Staircase corners `(k/N^n, F_B(k/N^n))` for `k = 0, …, N^n`.
pub fn piecewise_points(
    v: &DigitVector,
    n: u32,
    limits: &Limits,
) -> Result<Vec<(Rational, Rational)>> {
    let lifted = v.power_with(n, limits)?;
    let xden = BigInt::from(lifted.base());
    let yden = BigInt::from(lifted.weight());
    Ok(lifted
        .g_table()
        .iter()
        .enumerate()
        .map(|(k, &gk)| {
            (
                Rational::new(BigInt::from(k), xden.clone()),
                Rational::new(BigInt::from(gk), yden.clone()),
            )
        })
        .collect())
}

/// True iff some base-`N` expansion of `x ∈ [0, 1]` has all digits in `D`.
pub fn member_rational(v: &DigitVector, x: &Rational) -> Result<bool> {
    if x.is_negative() || *x > Rational::one() {
        return Err(crate::Error::OutOfRange(format!("{x} is not in [0, 1]")));
    }
    let n = v.base();
    let kept = |e: &crate::PeriodicExpansion| e.digits().all(|d| v.bit(d as usize));
    if x.is_one() {
        return Ok(v.bit(n - 1));
    }
    let canon = to_expansion(x, n as u32)?;
    Ok(kept(&canon) || alternate_expansion(x, n as u32).is_some_and(|e| kept(&e)))
}

/// Classification of a rational point: always its exact value.
pub fn classify(v: &DigitVector, x: &Rational) -> Classification {
    Classification::RationalValue(eval(v, x))
}

/// Scans the stream's base-`N` digits up to `depth` for one outside `D`.
///
/// Streams in another base are converted exactly; a conversion that cannot
/// settle a digit within its source budget is reported as an error.
pub fn classify_stream(
    v: &DigitVector,
    x: &mut DigitStream,
    depth: usize,
) -> Result<Classification> {
    assert!(depth >= 1, "classification depth must be positive");
    let n = v.base() as u32;
    let budget = source_budget(x.base(), n, depth);
    let mut conv = x.convert(n, budget);
    for t in 1..=depth {
        let d = conv.next_digit()?;
        if !v.bit(d as usize) {
            return Ok(Classification::NotMemberAt(t));
        }
    }
    Ok(Classification::IrrationalAtDepth(depth))
}

/// Checks `F(x) = Σ_n (b_n/‖B‖)·F(Nx - n)` exactly.
pub fn check_invariance(v: &DigitVector, x: &Rational) -> bool {
    let n = Rational::from_integer(BigInt::from(v.base()));
    let w = Rational::from_integer(BigInt::from(v.weight()));
    let nx = x * &n;
    let rhs = (0..v.base())
        .filter(|&k| v.bit(k))
        .map(|k| eval(v, &(&nx - Rational::from_integer(BigInt::from(k)))))
        .fold(Rational::zero(), |acc, y| acc + y)
        / w;
    eval(v, x) == rhs
}

/// `F_{B̌}(x)`, computed as `1 - F_B(1 - x)` and checked against direct
/// evaluation of the reversed vector.
pub fn reverse_value(v: &DigitVector, x: &Rational) -> Rational {
    let one = Rational::one();
    let via_identity = &one - eval(v, &(&one - x));
    let direct = eval(&v.reverse(), x);
    assert_eq!(
        via_identity, direct,
        "reversal identity failed for {v} at {x}"
    );
    via_identity
}
