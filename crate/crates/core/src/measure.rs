//! Monte Carlo diagnostics for the invariant measure `μ_B`.
//!
//! A point drawn from `μ_B` is a base-`N` expansion with i.i.d. digits uniform
//! on `D`. Everything here is statistical and uses floating point only for the
//! final statistics: digit conversions and fractional parts are exact.

use num_bigint::BigUint;
use num_integer::Integer as _;
use num_traits::{Float, FloatConst, ToPrimitive};
use rayon::prelude::*;

use crate::cdf::{classify_stream, eval_in, Classification};
use crate::numbers::rat;
use crate::{DigitSet, DigitStream, DigitVector, Error, Rational, Result};

/// Draws points from `μ_B`; sample `i` is seeded with `seed + i`.
#[derive(Debug, Clone)]
pub struct MuSampler {
    pub vector: DigitVector,
    pub seed: u64,
}

impl MuSampler {
    pub fn new(vector: DigitVector, seed: u64) -> Self {
        MuSampler { vector, seed }
    }

    /// The `i`-th sample as a lazy stream.
    pub fn stream(&self, i: u64) -> DigitStream {
        let allowed: Vec<u32> = self
            .vector
            .digit_set()
            .digits()
            .iter()
            .map(|&d| d as u32)
            .collect();
        DigitStream::seeded(
            self.vector.base() as u32,
            &allowed,
            self.seed.wrapping_add(i),
        )
        .expect("digit set of a valid vector is a valid alphabet")
    }

    /// `count` samples with their first `depth` digits already drawn.
    pub fn sample(&self, count: usize, depth: usize) -> Vec<DigitStream> {
        (0..count as u64)
            .map(|i| {
                let mut s = self.stream(i);
                s.prefix(depth);
                s
            })
            .collect()
    }
}

/// Digit counts of the first `total` base-`base` digits of a point.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyReport {
    pub base: u32,
    pub counts: Vec<usize>,
    pub total: usize,
    /// `max_d |counts[d]/total - 1/base|`.
    pub max_deviation: f64,
}

impl FrequencyReport {
    pub fn from_counts(base: u32, counts: Vec<usize>) -> Self {
        let total: usize = counts.iter().sum();
        let uniform = 1.0 / base as f64;
        let max_deviation = counts
            .iter()
            .map(|&c| (c as f64 / total.max(1) as f64 - uniform).abs())
            .fold(0.0, f64::max);
        FrequencyReport {
            base,
            counts,
            total,
            max_deviation,
        }
    }

    pub fn frequency(&self, digit: u32) -> f64 {
        self.counts[digit as usize] as f64 / self.total.max(1) as f64
    }

    /// Sums reports in the same base.
    pub fn merge(reports: &[FrequencyReport]) -> Option<FrequencyReport> {
        let first = reports.first()?;
        let mut counts = vec![0; first.counts.len()];
        for r in reports {
            assert_eq!(r.base, first.base, "merging reports of different bases");
            for (acc, c) in counts.iter_mut().zip(&r.counts) {
                *acc += c;
            }
        }
        Some(Self::from_counts(first.base, counts))
    }
}

/// Counts the first `count` base-`target` digits of `x`, each one certified
/// for the whole prefix interval.
pub fn digit_frequency(x: &mut DigitStream, target: u32, count: usize) -> Result<FrequencyReport> {
    if target < 2 {
        return Err(Error::OutOfRange(format!("target base {target} < 2")));
    }
    let digits = x.digits_in_base(target, count)?;
    let mut counts = vec![0; target as usize];
    for d in digits {
        counts[d as usize] += 1;
    }
    Ok(FrequencyReport::from_counts(target, counts))
}

/// Aggregate base-`target` digit counts over `samples` draws from `μ_B`,
/// computed in parallel; the result does not depend on scheduling.
pub fn normality(
    v: &DigitVector,
    target: u32,
    digits: usize,
    samples: usize,
    seed: u64,
) -> Result<FrequencyReport> {
    let sampler = MuSampler::new(v.clone(), seed);
    let reports = (0..samples as u64)
        .into_par_iter()
        .map(|i| digit_frequency(&mut sampler.stream(i), target, digits))
        .collect::<Result<Vec<_>>>()?;
    FrequencyReport::merge(&reports)
        .ok_or_else(|| Error::InvalidData("normality needs at least one sample".into()))
}

/// `r / den ∈ [0, 1)` as a float, rounded through 64 fractional bits.
fn unit_fraction<F: Float>(r: &BigUint, den: &BigUint) -> F {
    let scaled: BigUint = (r << 64u32) / den;
    let q = scaled.to_u64().expect("quotient below 2^64");
    F::from(q).expect("u64 converts") / F::from(2f64.powi(64)).expect("2^64 converts")
}

fn weyl_from_fractions<F: Float + FloatConst>(
    mut r: BigUint,
    den: &BigUint,
    m: u32,
    l: usize,
) -> F {
    let tau = F::TAU();
    let mut re = F::zero();
    let mut im = F::zero();
    let m = BigUint::from(m);
    for _ in 0..l {
        let phase = tau * unit_fraction::<F>(&r, den);
        re = re + phase.cos();
        im = im + phase.sin();
        r = (r * &m) % den;
    }
    re.hypot(im)
}

/// `|Σ_{n<L} e(h·M^n·x)|` for rational `x`, from exact fractional parts.
pub fn weyl_sum_rational<F: Float + FloatConst>(x: &Rational, m: u32, h: u64, l: usize) -> F {
    let num = x.numer().mod_floor(x.denom());
    let den = x.denom().magnitude().clone();
    let r = (num.magnitude() * BigUint::from(h)) % &den;
    weyl_from_fractions(r, &den, m, l)
}

/// Smallest stream depth at which `h·M^{L-1}` times the prefix width stays
/// below `10^-3`, so that every fractional part is pinned to that accuracy.
pub fn weyl_depth(stream_base: u32, m: u32, h: u64, l: usize) -> usize {
    let need = (h as f64).ln() + (l.saturating_sub(1)) as f64 * (m as f64).ln() + 1000f64.ln();
    (need / (stream_base as f64).ln()).floor() as usize + 1
}

/// `|Σ_{n<L} e(h·M^n·x)|` at the left end of the stream's depth-`depth`
/// prefix interval.
pub fn weyl_sum<F: Float + FloatConst>(
    x: &mut DigitStream,
    m: u32,
    h: u64,
    l: usize,
    depth: usize,
) -> Result<F> {
    let needed = weyl_depth(x.base(), m, h, l);
    if depth < needed {
        return Err(Error::InsufficientPrefix(format!(
            "depth {depth} leaves h·M^(L-1)·N^-depth >= 1e-3; need {needed} digits"
        )));
    }
    let den = BigUint::from(x.base()).pow(depth as u32);
    let r = (x.prefix_numerator(depth) * BigUint::from(h)) % &den;
    Ok(weyl_from_fractions(r, &den, m, l))
}

/// Median of `|Σ|/L` over `samples` draws from `μ_B`.
pub fn weyl_median_ratio(
    v: &DigitVector,
    m: u32,
    h: u64,
    l: usize,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    let sampler = MuSampler::new(v.clone(), seed);
    let depth = weyl_depth(v.base() as u32, m, h, l);
    let mut ratios = (0..samples as u64)
        .into_par_iter()
        .map(|i| weyl_sum::<f64>(&mut sampler.stream(i), m, h, l, depth).map(|s| s / l as f64))
        .collect::<Result<Vec<f64>>>()?;
    if ratios.is_empty() {
        return Err(Error::InvalidData("median of no samples".into()));
    }
    ratios.sort_by(f64::total_cmp);
    let mid = ratios.len() / 2;
    Ok(if ratios.len() % 2 == 1 {
        ratios[mid]
    } else {
        (ratios[mid - 1] + ratios[mid]) / 2.0
    })
}

/// Both sides of `|1/d Σ_k e(t·ε_k/N^j)| <= |cos(π t |ε_a - ε_b| / N^j)|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharacterBound<F> {
    pub left: F,
    pub right: F,
    /// The pair `(ε_a, ε_b)` maximizing `|e(tε_a/N^j) + e(tε_b/N^j)|`.
    pub pair: (usize, usize),
}

impl<F: Float> CharacterBound<F> {
    pub fn holds(&self, slack: F) -> bool {
        self.left <= self.right + slack
    }
}

/// Evaluates both sides of the character-sum bound. Phases are reduced
/// exactly modulo `N^j` before conversion to floating point.
pub fn character_bound<F: Float + FloatConst>(d: &DigitSet, t: u64, j: u32) -> CharacterBound<F> {
    assert!(d.len() >= 2, "the bound needs at least two digits");
    let modulus = (d.base() as u128).pow(j);
    let angle = |e: u128| {
        let frac = F::from((t as u128 * e) % modulus).unwrap() / F::from(modulus).unwrap();
        F::TAU() * frac
    };
    let (re, im) = d
        .digits()
        .iter()
        .map(|&e| angle(e as u128))
        .fold((F::zero(), F::zero()), |(re, im), a| {
            (re + a.cos(), im + a.sin())
        });
    let left = re.hypot(im) / F::from(d.len()).unwrap();

    let mut best = (F::neg_infinity(), (0, 0));
    for (i, &a) in d.digits().iter().enumerate() {
        for &b in &d.digits()[i + 1..] {
            let (pa, pb) = (angle(a as u128), angle(b as u128));
            let size = (pa.cos() + pb.cos()).hypot(pa.sin() + pb.sin());
            if size > best.0 {
                best = (size, (a, b));
            }
        }
    }
    let (a, b) = best.1;
    // cos(π y) has period 2 in y
    let diff = (t as u128 * (b - a) as u128) % (2 * modulus);
    let right = (F::PI() * F::from(diff).unwrap() / F::from(modulus).unwrap())
        .cos()
        .abs();
    CharacterBound {
        left,
        right,
        pair: (a, b),
    }
}

/// True iff the character-sum bound holds with `1e-12` slack.
pub fn character_bound_check(d: &DigitSet, t: u64, j: u32) -> bool {
    character_bound::<f64>(d, t, j).holds(1e-12)
}

/// Fraction of `count` draws from `μ_a` whose base-`N_b` digits stay in
/// `D_b` for `depth` digits, i.e. whose membership in `C_b` is not refuted.
pub fn intersection_rate(
    a: &DigitVector,
    b: &DigitVector,
    count: usize,
    depth: usize,
    seed: u64,
) -> Result<f64> {
    if count == 0 {
        return Err(Error::InvalidData("intersection rate needs samples".into()));
    }
    let sampler = MuSampler::new(a.clone(), seed);
    let verdicts = (0..count as u64)
        .into_par_iter()
        .map(|i| classify_stream(b, &mut sampler.stream(i), depth))
        .collect::<Result<Vec<_>>>()?;
    let hits = verdicts
        .iter()
        .filter(|c| matches!(c, Classification::IrrationalAtDepth(_)))
        .count();
    Ok(hits as f64 / count as f64)
}

/// Largest gap between the empirical CDF of `samples` draws from `μ_B`
/// (read at `depth` digits) and `F_B` at `k/probes`, `k = 1, …, probes-1`.
pub fn empirical_cdf_distance(
    v: &DigitVector,
    samples: usize,
    depth: usize,
    probes: usize,
    seed: u64,
) -> f64 {
    let sampler = MuSampler::new(v.clone(), seed);
    let points: Vec<Rational> = (0..samples as u64)
        .into_par_iter()
        .map(|i| sampler.stream(i).interval(depth).0)
        .collect();
    (1..probes)
        .map(|k| {
            let x = rat(k as i64, probes as i64);
            let below = points.iter().filter(|p| **p <= x).count();
            let empirical = below as f64 / samples.max(1) as f64;
            (empirical - eval_in::<f64>(v, &x)).abs()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::PeriodicExpansion;

    fn v(text: &str) -> DigitVector {
        text.parse().unwrap()
    }

    #[test]
    fn sampler_is_deterministic_and_in_set() {
        let s = MuSampler::new(v("3:101"), 7);
        let mut a = s.sample(3, 10);
        let mut b = s.sample(3, 10);
        let mut total = 0;
        for (x, y) in a.iter_mut().zip(b.iter_mut()) {
            assert_eq!(x.prefix(10), y.prefix(10));
            assert!(x.prefix(10).iter().all(|&d| d == 0 || d == 2));
            total += x.prefix(10).len();
        }
        assert_eq!(total, 30);
        let mut long = s.stream(0);
        let zeros = long.prefix(100_000).iter().filter(|&&d| d == 0).count();
        assert!((zeros as f64 / 1e5 - 0.5).abs() < 0.01);
    }

    #[test]
    fn frequency_examples() {
        let e = PeriodicExpansion::new(2, vec![], vec![0, 1]).unwrap();
        let mut x = DigitStream::from_expansion(e);
        let r = digit_frequency(&mut x, 2, 100).unwrap();
        assert_eq!(r.counts, vec![50, 50]);
        assert_eq!(r.max_deviation, 0.0);

        let mut x = MuSampler::new(v("3:101"), 3).stream(0);
        let r = digit_frequency(&mut x, 2, 512).unwrap();
        assert!(r.max_deviation < 0.1);
        let r = digit_frequency(&mut x, 3, 512).unwrap();
        assert_eq!(r.counts[1], 0);
        assert_eq!(r.counts.iter().sum::<usize>(), 512);

        let mut half = DigitStream::from_rational(&rat(1, 2), 3).unwrap();
        assert!(matches!(
            digit_frequency(&mut half, 2, 4),
            Err(Error::InsufficientPrefix(_))
        ));
    }

    #[test]
    fn weyl_examples() {
        let zero: f64 = weyl_sum_rational(&rat(0, 1), 3, 5, 17);
        assert!((zero - 17.0).abs() < 1e-12);
        let half: f64 = weyl_sum_rational(&rat(1, 2), 2, 1, 3);
        assert!((half - 1.0).abs() < 1e-12);
        let coarse: f32 = weyl_sum_rational(&rat(1, 2), 2, 1, 3);
        assert!((coarse - 1.0).abs() < 1e-6);

        let mut zs = DigitStream::from_fn(3, |_| 0).unwrap();
        let s: f64 = weyl_sum(&mut zs, 2, 1, 64, 60).unwrap();
        assert!((s - 64.0).abs() < 1e-9);
        assert!(matches!(
            weyl_sum::<f64>(&mut zs, 2, 1, 64, 10),
            Err(Error::InsufficientPrefix(_))
        ));

        // a stream agreeing with 1/4 to many digits behaves like 1/4
        let mut q = DigitStream::from_rational(&rat(1, 4), 3).unwrap();
        let depth = weyl_depth(3, 2, 1, 8);
        let s: f64 = weyl_sum(&mut q, 2, 1, 8, depth).unwrap();
        let exact: f64 = weyl_sum_rational(&rat(1, 4), 2, 1, 8);
        assert!((s - exact).abs() < 0.06);
    }

    #[test]
    fn character_bound_examples() {
        let d = DigitSet::new(3, vec![0, 2]).unwrap();
        let b = character_bound::<f64>(&d, 1, 1);
        assert!((b.left - b.right).abs() < 1e-12);
        assert_eq!(b.pair, (0, 2));
        assert!(character_bound_check(
            &DigitSet::new(4, vec![0, 1, 3]).unwrap(),
            1,
            1
        ));
        let b32 = character_bound::<f32>(&DigitSet::new(4, vec![0, 1, 3]).unwrap(), 3, 2);
        assert!(b32.holds(1e-6));
    }

    #[test]
    fn intersection_examples() {
        let c = v("3:101");
        assert_eq!(intersection_rate(&c, &c, 50, 40, 1).unwrap(), 1.0);
        let r = intersection_rate(&c, &v("4:1001"), 200, 100, 1).unwrap();
        assert!(r <= 1.0 / 200.0);
        let shallow = intersection_rate(&c, &v("4:1001"), 200, 2, 1).unwrap();
        let deep = intersection_rate(&c, &v("4:1001"), 200, 6, 1).unwrap();
        assert!(deep <= shallow);
    }

    #[test]
    fn sampler_matches_cdf() {
        let d = empirical_cdf_distance(&v("3:101"), 2000, 20, 10, 5);
        assert!(d < 0.05, "{d}");
    }

    #[test]
    fn normality_aggregate_is_reproducible() {
        let a = normality(&v("3:101"), 2, 64, 40, 9).unwrap();
        let b = normality(&v("3:101"), 2, 64, 40, 9).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.total, 64 * 40);
    }
}
