use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::CdfOracle;
use crate::cdf::{eval, Classification, DEFAULT_DEPTH};
use crate::{DigitSet, DigitStream, DigitVector, Error, Rational, Result};

/// An irrational stand-in: a non-periodic base-`M` stream using two digits.
#[derive(Debug, Clone)]
pub struct Probe {
    pub base: u32,
    pub digits: (u32, u32),
    pub seed: u64,
    pub stream: DigitStream,
}

impl Probe {
    pub fn label(&self) -> String {
        format!("{}:{{{},{}}}", self.base, self.digits.0, self.digits.1)
    }
}

/// Sample points sufficient to identify any CDF of scale at most `k`.
#[derive(Debug, Clone)]
pub struct UniquenessSet {
    pub k: usize,
    pub rational_points: Vec<Rational>,
    pub probes: Vec<Probe>,
}

impl UniquenessSet {
    pub fn probes_for(&mut self, base: u32) -> impl Iterator<Item = &mut Probe> {
        self.probes.iter_mut().filter(move |p| p.base == base)
    }
}

/// `{m/M² : 2 <= M <= k, 1 <= m < M²}` in increasing order, without repeats.
pub fn s2_points(k: usize) -> Vec<Rational> {
    let mut set = BTreeSet::new();
    for big_m in 2..=k {
        let sq = big_m * big_m;
        for m in 1..sq {
            set.insert(Rational::new(BigInt::from(m), BigInt::from(sq)));
        }
    }
    set.into_iter().collect()
}

/// Seed for the probe over `{a, b}` in base `base`, `attempt` counting
/// rejected draws. Mixes the inputs with the SplitMix64 finalizer.
pub fn probe_seed(seed: u64, base: u32, a: u32, b: u32, attempt: u32) -> u64 {
    let mut z = seed
        ^ (base as u64).rotate_left(48)
        ^ (a as u64).rotate_left(32)
        ^ (b as u64).rotate_left(16)
        ^ attempt as u64;
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One probe per `(M, {a, b})` with `3 <= M <= k`, plus the rational grid.
///
/// A draw whose first `2·64` digits look periodic is redrawn with the next
/// attempt number.
pub fn build_uniqueness_set(k: usize, seed: u64) -> Result<UniquenessSet> {
    if k < 3 {
        return Err(Error::OutOfRange(format!("bound K = {k} < 3")));
    }
    let mut probes = Vec::new();
    for base in 3..=k as u32 {
        for a in 0..base {
            for b in a + 1..base {
                let mut attempt = 0;
                let (probe_seed, stream) = loop {
                    let s = probe_seed(seed, base, a, b, attempt);
                    let mut stream = DigitStream::seeded(base, &[a, b], s)?;
                    if !stream.looks_periodic(DEFAULT_DEPTH) {
                        break (s, stream);
                    }
                    attempt += 1;
                };
                probes.push(Probe {
                    base,
                    digits: (a, b),
                    seed: probe_seed,
                    stream,
                });
            }
        }
    }
    Ok(UniquenessSet {
        k,
        rational_points: s2_points(k),
        probes,
    })
}

/// Union of the probe digit pairs whose CDF value the oracle reports as
/// irrational. Only probes of base `n` are asked.
///
/// Empty when no probe survives, which rules out scale `n`.
pub fn infer_digit_set(
    oracle: &mut CdfOracle,
    n: u32,
    probes: &mut [Probe],
    depth: usize,
) -> Result<DigitSet> {
    let mut digits = BTreeSet::new();
    for probe in probes.iter_mut().filter(|p| p.base == n) {
        let label = probe.label();
        let verdict = oracle.query_stream(&mut probe.stream, &label, depth)?;
        if matches!(verdict, Classification::IrrationalAtDepth(_)) {
            digits.insert(probe.digits.0 as usize);
            digits.insert(probe.digits.1 as usize);
        }
    }
    DigitSet::new(n as usize, digits.into_iter().collect())
}

/// Identifies a CDF of unknown scale at most `k`, returning its canonical root.
///
/// Every base `3..=k` is tried with its probes; bases whose inferred digit set
/// is not a valid vector drop out. The survivors are checked against exact
/// samples on [`s2_points`], queried once.
pub fn reconstruct_bounded_k(
    oracle: &mut CdfOracle,
    k: usize,
    depth: usize,
    seed: u64,
) -> Result<DigitVector> {
    let mut set = build_uniqueness_set(k, seed)?;
    let mut candidates = Vec::new();
    for base in 3..=k as u32 {
        let digits = infer_digit_set(oracle, base, &mut set.probes, depth)?;
        if let Ok(v) = digits.to_vector() {
            candidates.push(v);
        }
    }
    if candidates.is_empty() {
        return Err(Error::NoCandidate(format!(
            "no base up to {k} produced a valid digit set at depth {depth}"
        )));
    }
    let mut samples = Vec::with_capacity(set.rational_points.len());
    for x in &set.rational_points {
        samples.push((x.clone(), oracle.query(x)?));
    }
    let survivors: Vec<DigitVector> = candidates
        .into_iter()
        .filter(|v| samples.iter().all(|(x, y)| eval(v, x) == *y))
        .collect();
    let Some(first) = survivors.first() else {
        return Err(Error::NoCandidate(
            "no inferred digit set matches the rational samples".into(),
        ));
    };
    for other in &survivors[1..] {
        if !first.equivalent(other)? {
            return Err(Error::Ambiguous(format!("{first} and {other} both fit")));
        }
    }
    Ok(first.canonical_root())
}
