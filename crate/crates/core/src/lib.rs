//! Exact arithmetic for the cumulative distribution functions of Cantor sets.
//!
//! A Cantor set with scale factor `N` and digit set `D ⊂ {0, …, N-1}` is the
//! attractor of the maps `x ↦ (x + d) / N`, `d ∈ D`. Its natural probability
//! measure has a continuous, singular CDF (a devil's staircase). This crate
//! evaluates that CDF exactly at rational points, builds digit vectors that
//! interpolate monotone data, and reconstructs the digit vector of an unknown
//! CDF from samples:
//!
//! * [`digits`]: digit vectors, Kronecker products, canonical roots and
//!   CDF equivalence.
//! * [`numbers`]: eventually periodic expansions, lazy digit streams and
//!   multiplicative dependence of integers.
//! * [`cdf`]: exact evaluation, enclosures on streams, staircase corner
//!   points, membership and rationality classification.
//! * [`interpolation`]: digit vectors through prescribed data.
//! * [`reconstruction`]: known-scale, conditional and bounded-scale
//!   identification procedures plus brute-force uniqueness oracles.
//! * [`measure`]: Monte Carlo checks on the invariant measure.
//!
//! Every value on the exact path is a [`Rational`]. The evaluation core is
//! generic over a [`Scalar`] so the same code also yields `f64`/`f32`
//! approximations for plotting; floating point is otherwise confined to the
//! diagnostics in [`measure`].

pub mod cdf;
pub mod digits;
pub mod error;
pub mod interpolation;
pub mod measure;
pub mod numbers;
pub mod reconstruction;
pub mod verify;

use num_traits::{FromPrimitive, Num};

pub use cdf::{Classification, Enclosure};
pub use digits::{DigitSet, DigitVector, EquivalenceWitness};
pub use error::{Error, Result};
pub use numbers::{DigitStream, PeriodicExpansion};
pub use reconstruction::CdfOracle;

/// Arbitrary-precision exact fraction; the value type for `x` and `F(x)`.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision signed integer.
pub type Integer = num_bigint::BigInt;
/// Floating-point type used by the statistical diagnostics.
pub type Real = f64;
/// Enclosure with exact rational endpoints.
pub type ExactEnclosure = Enclosure<Rational>;

/// Number type the CDF evaluator can accumulate into.
///
/// Implemented for [`Rational`] (exact) and for `f32`/`f64` (approximate).
pub trait Scalar: Num + FromPrimitive + Clone + PartialOrd {}

impl<T: Num + FromPrimitive + Clone + PartialOrd> Scalar for T {}

/// Default cap on the length of digit vectors produced by powers and lifts.
pub const DEFAULT_MAX_BITS: usize = 1_000_000;

/// Environment variable overriding [`DEFAULT_MAX_BITS`].
pub const MAX_BITS_ENV: &str = "CANTOR_CDF_MAX_BITS";

/// Resource bounds shared by operations whose output can blow up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_bits: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_bits: DEFAULT_MAX_BITS,
        }
    }
}

impl Limits {
    pub fn new(max_bits: usize) -> Self {
        Limits { max_bits }
    }

    /// Reads [`MAX_BITS_ENV`], falling back to the default when unset.
    pub fn from_env() -> Result<Self> {
        match std::env::var(MAX_BITS_ENV) {
            Ok(raw) => raw
                .trim()
                .parse::<usize>()
                .map(Limits::new)
                .map_err(|_| Error::Parse(format!("{MAX_BITS_ENV}={raw:?} is not a count"))),
            Err(_) => Ok(Limits::default()),
        }
    }

    pub(crate) fn check(&self, what: &'static str, needed: u128) -> Result<()> {
        if needed > self.max_bits as u128 {
            Err(Error::ResourceLimit {
                what,
                needed,
                cap: self.max_bits,
            })
        } else {
            Ok(())
        }
    }
}
