use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::expansion::{to_expansion, PeriodicExpansion};
use crate::{Error, Rational, Result};

/// Where a [`DigitStream`] gets its digits from.
#[derive(Clone)]
pub enum DigitSource {
    /// Uniform draws from `allowed`, reproducible from the seed.
    Seeded {
        seed: u64,
        allowed: Vec<u32>,
        rng: ChaCha8Rng,
    },
    /// Digits of an eventually periodic expansion.
    Expansion(PeriodicExpansion),
    /// Digit at 1-based position `i`.
    Function(Arc<dyn Fn(usize) -> u32 + Send + Sync>),
}

impl fmt::Debug for DigitSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DigitSource::Seeded { seed, allowed, .. } => f
                .debug_struct("Seeded")
                .field("seed", seed)
                .field("allowed", allowed)
                .finish(),
            DigitSource::Expansion(e) => f.debug_tuple("Expansion").field(&e.to_string()).finish(),
            DigitSource::Function(_) => f.write_str("Function(..)"),
        }
    }
}

/// A lazily generated base-`M` digit sequence `0.d_1 d_2 d_3 …`.
///
/// Used as a stand-in for irrational points: a seeded stream over a digit
/// subset is non-periodic with overwhelming probability. Fetched digits are
/// cached, so a stream is read through `&mut self`.
#[derive(Debug, Clone)]
pub struct DigitStream {
    base: u32,
    source: DigitSource,
    prefix: Vec<u32>,
}

impl DigitStream {
    /// Stream of i.i.d. digits drawn uniformly from `allowed`.
    pub fn seeded(base: u32, allowed: &[u32], seed: u64) -> Result<Self> {
        check_base(base)?;
        if allowed.is_empty() {
            return Err(Error::InvalidData(
                "stream needs at least one allowed digit".into(),
            ));
        }
        if let Some(d) = allowed.iter().find(|&&d| d >= base) {
            return Err(Error::InvalidData(format!(
                "digit {d} not below base {base}"
            )));
        }
        Ok(DigitStream {
            base,
            source: DigitSource::Seeded {
                seed,
                allowed: allowed.to_vec(),
                rng: ChaCha8Rng::seed_from_u64(seed),
            },
            prefix: Vec::new(),
        })
    }

    pub fn from_expansion(e: PeriodicExpansion) -> Self {
        DigitStream {
            base: e.base(),
            source: DigitSource::Expansion(e),
            prefix: Vec::new(),
        }
    }

    /// Canonical base-`base` digits of a rational in `[0, 1)`.
    pub fn from_rational(x: &Rational, base: u32) -> Result<Self> {
        Ok(Self::from_expansion(to_expansion(x, base)?))
    }

    /// Programmatic stream; `f(i)` is the digit at 1-based position `i` and
    /// must be below `base`.
    pub fn from_fn(base: u32, f: impl Fn(usize) -> u32 + Send + Sync + 'static) -> Result<Self> {
        check_base(base)?;
        Ok(DigitStream {
            base,
            source: DigitSource::Function(Arc::new(f)),
            prefix: Vec::new(),
        })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn source(&self) -> &DigitSource {
        &self.source
    }

    /// Digits fetched so far.
    pub fn fetched(&self) -> &[u32] {
        &self.prefix
    }

    fn fetch_to(&mut self, len: usize) {
        while self.prefix.len() < len {
            let i = self.prefix.len() + 1;
            let d = match &mut self.source {
                DigitSource::Seeded { allowed, rng, .. } => {
                    allowed[rng.random_range(0..allowed.len())]
                }
                DigitSource::Expansion(e) => e.digit(i),
                DigitSource::Function(f) => {
                    let d = f(i);
                    assert!(
                        d < self.base,
                        "stream function produced digit {d} in base {}",
                        self.base
                    );
                    d
                }
            };
            self.prefix.push(d);
        }
    }

    /// Digit at 1-based position `i`.
    pub fn digit(&mut self, i: usize) -> u32 {
        assert!(i >= 1, "digit positions start at 1");
        self.fetch_to(i);
        self.prefix[i - 1]
    }

    /// First `len` digits.
    pub fn prefix(&mut self, len: usize) -> &[u32] {
        self.fetch_to(len);
        &self.prefix[..len]
    }

    /// `A` with the first `len` digits equal to `A / base^len`.
    pub fn prefix_numerator(&mut self, len: usize) -> BigUint {
        let base = BigUint::from(self.base);
        self.prefix(len)
            .iter()
            .fold(BigUint::zero(), |acc, &d| acc * &base + BigUint::from(d))
    }

    /// Closed interval `[lo, lo + base^-len]` containing the stream's value.
    pub fn interval(&mut self, len: usize) -> (Rational, Rational) {
        let num = BigInt::from(self.prefix_numerator(len));
        let den = BigInt::from(BigUint::from(self.base).pow(len as u32));
        let lo = Rational::new(num.clone(), den.clone());
        let hi = Rational::new(num + 1, den);
        (lo, hi)
    }

    /// True when digits `depth+1 ..= 2*depth` repeat with some period
    /// `p <= depth / 2`, i.e. the prefix looks eventually periodic.
    pub fn looks_periodic(&mut self, depth: usize) -> bool {
        let window = self.prefix(2 * depth).to_vec();
        (1..=depth / 2).any(|p| (depth..2 * depth - p).all(|i| window[i] == window[i + p]))
    }

    /// Exact base conversion reading at most `max_source_digits` of this stream.
    pub fn convert(&mut self, target: u32, max_source_digits: usize) -> BaseConverter<'_> {
        BaseConverter::new(self, target, max_source_digits)
    }

    /// First `count` base-`target` digits, with a source budget sized from the
    /// ratio of digit lengths.
    pub fn digits_in_base(&mut self, target: u32, count: usize) -> Result<Vec<u32>> {
        let budget = source_budget(self.base, target, count);
        let mut conv = self.convert(target, budget);
        (0..count).map(|_| conv.next_digit()).collect()
    }
}

fn check_base(base: u32) -> Result<()> {
    if base < 2 {
        Err(Error::OutOfRange(format!("base {base} < 2")))
    } else {
        Ok(())
    }
}

/// Source digits sufficient, with generous slack, to pin `count` target digits.
pub(crate) fn source_budget(source: u32, target: u32, count: usize) -> usize {
    let ratio = (target as f64).ln() / (source as f64).ln();
    (count as f64 * ratio).ceil() as usize + 256
}

/// Emits base-`M` digits of a stream, each one valid for every point of the
/// stream's current prefix interval.
///
/// With `x ∈ [A/N^t, (A+1)/N^t]` and emitted digits `e/M^k`, the state keeps
/// `y = (x - e/M^k)·M^k` bracketed by `[r/N^t, (r + M^k)/N^t]`. A digit `d` is
/// emitted once `d <= M·y_lo` and `M·y_hi <= d + 1`; otherwise another source
/// digit is read.
pub struct BaseConverter<'a> {
    stream: &'a mut DigitStream,
    target: BigUint,
    target_base: u32,
    source_base: BigUint,
    read: usize,
    max_read: usize,
    r: BigUint,
    den: BigUint,
    width: BigUint,
    emitted: usize,
}

impl<'a> BaseConverter<'a> {
    fn new(stream: &'a mut DigitStream, target: u32, max_read: usize) -> Self {
        let source_base = BigUint::from(stream.base());
        BaseConverter {
            stream,
            target: BigUint::from(target),
            target_base: target,
            source_base,
            read: 0,
            max_read,
            r: BigUint::zero(),
            den: BigUint::one(),
            width: BigUint::one(),
            emitted: 0,
        }
    }

    /// Source digits consumed so far.
    pub fn source_digits_read(&self) -> usize {
        self.read
    }

    pub fn next_digit(&mut self) -> Result<u32> {
        if self.target_base == self.stream.base() {
            if self.emitted >= self.max_read {
                return Err(self.exhausted());
            }
            self.emitted += 1;
            self.read = self.emitted;
            return Ok(self.stream.digit(self.emitted));
        }
        loop {
            let lo = &self.r * &self.target;
            let d = &lo / &self.den;
            let hi = (&self.r + &self.width) * &self.target;
            if hi <= (&d + 1u32) * &self.den {
                self.r = lo - &d * &self.den;
                self.width *= &self.target;
                self.emitted += 1;
                return Ok(u32::try_from(d).expect("digit below target base"));
            }
            if self.read >= self.max_read {
                return Err(self.exhausted());
            }
            self.read += 1;
            let s = self.stream.digit(self.read);
            self.r = &self.r * &self.source_base + &self.width * BigUint::from(s);
            self.den *= &self.source_base;
        }
    }

    fn exhausted(&self) -> Error {
        Error::InsufficientPrefix(format!(
            "base-{} digit {} undetermined after {} base-{} digits",
            self.target_base,
            self.emitted + 1,
            self.read,
            self.stream.base()
        ))
    }
}
