//! Identifying a digit vector from samples of its CDF.
//!
//! * [`reconstruct_known_n`]: `N - 1` samples at `k/N` when the scale is known.
//! * [`conditional_reconstruct`]: at most `⌊N/2⌋` adaptively chosen samples.
//! * [`indistinguishable_pair`]: two different vectors agreeing on any fixed
//!   set of fewer than `⌊N/2⌋` points.
//! * [`reconstruct_bounded_k`]: unknown scale `N <= K`, using irrational probe
//!   streams to find digit sets and a rational grid to settle the rest.
//! * [`bruteforce_distinguishing_set`] and [`verify_uniqueness`]: exhaustive
//!   oracles over every vector of scale at most `K`.

mod bounded_k;
mod conditional;
mod known_n;
mod lower_bound;
mod oracle;
mod uniqueness;

pub use bounded_k::{
    build_uniqueness_set, infer_digit_set, probe_seed, reconstruct_bounded_k, s2_points, Probe,
    UniquenessSet,
};
pub use conditional::{conditional_reconstruct, sample_depth, sample_point};
pub use known_n::reconstruct_known_n;
pub use lower_bound::indistinguishable_pair;
pub use oracle::{CdfOracle, OracleMode, QueryRecord};
pub use uniqueness::{
    bruteforce_distinguishing_set, depfix_check, depfix_disagreement, verify_uniqueness,
    HypothesisClass,
};
