//! Exact number machinery: rationals, periodic expansions, digit streams and
//! multiplicative dependence.

mod dependence;
pub(crate) mod expansion;
mod rational;
pub(crate) mod stream;

pub use dependence::{common_power, multiplicatively_dependent, prime_factors};
pub use expansion::{alternate_expansion, from_expansion, to_expansion, PeriodicExpansion};
pub use rational::{format_decimal, format_rational, parse_rational, rat};
pub use stream::{BaseConverter, DigitSource, DigitStream};
