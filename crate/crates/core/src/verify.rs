//! Executable property suites, one per module, for the `verify` command.
//!
//! Each check returns a [`Check`] with a pass flag and a short detail line;
//! all randomness is seeded so a suite always runs the same cases.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cdf::{check_invariance, eval};
use crate::digits::all_vectors;
use crate::interpolation::{interpolate, interpolate_at_scale, max_error};
use crate::measure::{
    character_bound_check, empirical_cdf_distance, intersection_rate, normality, weyl_median_ratio,
};
use crate::numbers::rat;
use crate::reconstruction::{
    conditional_reconstruct, depfix_check, indistinguishable_pair, reconstruct_bounded_k,
    reconstruct_known_n, CdfOracle,
};
use crate::{DigitSet, DigitVector, Error, Rational, Result};

const SEED: u64 = 0x5EED;

type CheckFn = fn() -> Result<String, String>;

/// Outcome of one property check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub suite: Suite,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Algebra,
    Cdf,
    Interpolation,
    Reconstruction,
    Measure,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Algebra,
        Suite::Cdf,
        Suite::Interpolation,
        Suite::Reconstruction,
        Suite::Measure,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Cdf => "cdf",
            Suite::Interpolation => "interpolation",
            Suite::Reconstruction => "reconstruction",
            Suite::Measure => "measure",
        }
    }

    pub fn run(self) -> Vec<Check> {
        let checks: Vec<(&'static str, CheckFn)> = match self {
            Suite::Algebra => vec![
                ("kronecker associativity and weight", algebra_kronecker),
                ("reverse involution", algebra_reverse),
                ("canonical roots of powers", algebra_roots),
                ("equivalence via grid (bases 3, 9)", algebra_grid),
            ],
            Suite::Cdf => vec![
                ("fixed points g(k)/W (N <= 8)", cdf_fixed_points),
                ("invariance, power and reversal (N <= 8)", cdf_identities),
                ("monotonicity", cdf_monotone),
                ("interval masses (N <= 6, n <= 3)", cdf_pullback),
            ],
            Suite::Interpolation => vec![("random monotone datasets", interpolation_random)],
            Suite::Reconstruction => vec![
                ("known scale (N <= 10)", recon_known),
                ("conditional (N <= 12)", recon_conditional),
                ("lower-bound pairs (N in 4..10)", recon_lower_bound),
                ("bounded K = 5", recon_bounded),
            ],
            Suite::Measure => vec![
                ("normality base 2", measure_normality),
                ("intersection emptiness", measure_intersection),
                ("character-sum bound", measure_character),
                ("Weyl-sum trend", measure_weyl),
                ("sampler vs CDF", measure_ks),
            ],
        };
        checks
            .into_iter()
            .map(|(name, f)| {
                let (passed, detail) = match f() {
                    Ok(d) => (true, d),
                    Err(d) => (false, d),
                };
                Check {
                    suite: self,
                    name,
                    passed,
                    detail,
                }
            })
            .collect()
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pool(max_base: usize) -> Vec<DigitVector> {
    (3..=max_base).flat_map(all_vectors).collect()
}

fn random_rational(rng: &mut ChaCha8Rng, max_den: i64) -> Rational {
    let q = rng.random_range(1..=max_den);
    rat(rng.random_range(0..=q), q)
}

fn algebra_kronecker() -> Result<String, String> {
    let vs = pool(5);
    let mut count = 0;
    for a in &vs {
        for b in &vs {
            let ab = a.kronecker(b);
            ensure(ab.weight() == a.weight() * b.weight(), || {
                format!("{a} ⊗ {b}")
            })?;
            for c in vs.iter().step_by(7) {
                ensure(ab.kronecker(c) == a.kronecker(&b.kronecker(c)), || {
                    format!("associativity fails at {a}, {b}, {c}")
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} triples"))
}

fn algebra_reverse() -> Result<String, String> {
    let vs = pool(10);
    for v in &vs {
        ensure(v.reverse().reverse() == *v, || v.to_string())?;
    }
    Ok(format!("{} vectors", vs.len()))
}

fn algebra_roots() -> Result<String, String> {
    let vs = pool(5);
    for v in &vs {
        for k in 1..=3 {
            let p = v.power(k).map_err(|e| e.to_string())?;
            let r = p.canonical_root();
            ensure(r.canonical_root() == r && r.base() <= v.base(), || {
                format!("root of {v}^{k}")
            })?;
        }
    }
    Ok(format!("{} vectors, powers 1..=3", vs.len()))
}

fn algebra_grid() -> Result<String, String> {
    let threes: Vec<DigitVector> = all_vectors(3).collect();
    let nines: Vec<DigitVector> = all_vectors(9).collect();
    let bad: Vec<String> = threes
        .par_iter()
        .flat_map_iter(|a| {
            nines.iter().filter_map(move |b| {
                let grid = depfix_check(a, b).ok()?;
                let same = a.equivalent(b).ok()?;
                (grid != same).then(|| format!("{a} vs {b}"))
            })
        })
        .collect();
    ensure(bad.is_empty(), || bad.join(", "))?;
    Ok(format!("{} pairs", threes.len() * nines.len()))
}

fn cdf_fixed_points() -> Result<String, String> {
    let vs = pool(8);
    for v in &vs {
        let n = v.base() as i64;
        for k in 0..=n {
            let expected = rat(v.g_table()[k as usize] as i64, v.weight() as i64);
            ensure(eval(v, &rat(k, n)) == expected, || {
                format!("{v} at {k}/{n}")
            })?;
        }
    }
    Ok(format!("{} vectors", vs.len()))
}

fn cdf_identities() -> Result<String, String> {
    let vs = pool(8);
    let failures: Vec<String> = vs
        .par_iter()
        .enumerate()
        .filter_map(|(i, v)| {
            let mut rng = ChaCha8Rng::seed_from_u64(SEED + i as u64);
            let square = v.power(2).ok()?;
            let rev = v.reverse();
            for _ in 0..20 {
                let x = random_rational(&mut rng, 10_000);
                let fx = eval(v, &x);
                if !check_invariance(v, &x)
                    || eval(&square, &x) != fx
                    || eval(&rev, &x) + eval(v, &(Rational::one() - &x)) != Rational::one()
                {
                    return Some(format!("{v} at {x}"));
                }
            }
            None
        })
        .collect();
    ensure(failures.is_empty(), || failures.join(", "))?;
    Ok(format!("{} vectors × 20 points", vs.len()))
}

fn cdf_monotone() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for v in pool(6).iter().step_by(3) {
        for _ in 0..100 {
            let (x, y) = (
                random_rational(&mut rng, 500),
                random_rational(&mut rng, 500),
            );
            let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
            ensure(eval(v, &lo) <= eval(v, &hi), || {
                format!("{v} on [{lo}, {hi}]")
            })?;
        }
    }
    Ok("ok".into())
}

fn cdf_pullback() -> Result<String, String> {
    let mut intervals = 0;
    for v in pool(6) {
        for n in 1..=3u32 {
            let lifted = v.power(n).map_err(|e| e.to_string())?;
            let den = lifted.base() as i64;
            let mass = Rational::new(BigInt::one(), BigInt::from(v.weight()).pow(n));
            for k in (0..lifted.base()).filter(|&k| lifted.bit(k)) {
                let k = k as i64;
                let d = eval(&v, &rat(k + 1, den)) - eval(&v, &rat(k, den));
                ensure(d == mass, || format!("{v} on [{k}/{den}, {}/{den}]", k + 1))?;
                intervals += 1;
            }
        }
    }
    Ok(format!("{intervals} intervals"))
}

/// Random monotone data with up to five points and denominators up to 12.
pub fn random_dataset(rng: &mut ChaCha8Rng) -> Vec<(Rational, Rational)> {
    let k = rng.random_range(1..=5);
    let mut xs: Vec<Rational> = Vec::new();
    while xs.len() < k {
        let q = rng.random_range(2..=12);
        let x = rat(rng.random_range(1..q), q);
        if !xs.contains(&x) {
            xs.push(x);
        }
    }
    xs.sort();
    let mut ys: Vec<Rational> = (0..k)
        .map(|_| {
            let q = rng.random_range(2..=12);
            rat(rng.random_range(1..q), q)
        })
        .collect();
    ys.sort();
    xs.into_iter().zip(ys).collect()
}

fn interpolation_random() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..500 {
        let data = random_dataset(&mut rng);
        let v = interpolate(&data).map_err(|e| e.to_string())?;
        let w = interpolate_at_scale(&data, 2 * v.base()).map_err(|e| e.to_string())?;
        ensure(v != w, || format!("no second interpolant for {data:?}"))?;
        for (x, y) in &data {
            ensure(eval(&v, x) == *y && eval(&w, x) == *y, || {
                format!("miss at {x}")
            })?;
        }
        let bound = max_error(&data).map_err(|e| e.to_string())?;
        for _ in 0..20 {
            let x = random_rational(&mut rng, 1000);
            let gap = eval(&v, &x) - eval(&w, &x);
            let gap = if gap < Rational::from_integer(0.into()) {
                -gap
            } else {
                gap
            };
            ensure(gap <= bound, || format!("error bound fails at {x}"))?;
        }
    }
    Ok("500 datasets".into())
}

fn recon_known() -> Result<String, String> {
    let vs = pool(10);
    for v in &vs {
        let mut o = CdfOracle::hidden(v.clone());
        let got = reconstruct_known_n(&mut o, v.base()).map_err(|e| e.to_string())?;
        ensure(got == *v && o.queries() == v.base() - 1, || v.to_string())?;
    }
    Ok(format!("{} vectors", vs.len()))
}

fn recon_conditional() -> Result<String, String> {
    let vs = pool(12);
    let failures: Vec<String> = vs
        .par_iter()
        .filter_map(|v| {
            let mut o = CdfOracle::hidden(v.clone());
            match conditional_reconstruct(&mut o, v.base()) {
                Ok(got) if got == *v && o.queries() <= v.base() / 2 => None,
                Ok(got) => Some(format!("{v} -> {got} in {} queries", o.queries())),
                Err(e) => Some(format!("{v}: {e}")),
            }
        })
        .collect();
    ensure(failures.is_empty(), || failures.join(", "))?;
    Ok(format!("{} vectors", vs.len()))
}

fn recon_lower_bound() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for n in 4..=10usize {
        for _ in 0..50 {
            let size = rng.random_range(0..n / 2);
            let pts: Vec<Rational> = (0..size).map(|_| random_rational(&mut rng, 60)).collect();
            let (b, c) = indistinguishable_pair(n, &pts).map_err(|e| e.to_string())?;
            ensure(b != c, || format!("identical pair for N = {n}"))?;
            for x in &pts {
                ensure(eval(&b, x) == eval(&c, x), || {
                    format!("{b}, {c} differ at {x}")
                })?;
            }
        }
    }
    Ok("7 scales × 50 point sets".into())
}

fn recon_bounded() -> Result<String, String> {
    let vs = pool(5);
    let failures: Vec<String> = vs
        .par_iter()
        .filter_map(|v| {
            let mut o = CdfOracle::hidden(v.clone());
            match reconstruct_bounded_k(&mut o, 5, 64, SEED) {
                Ok(got) if got == v.canonical_root() => None,
                Ok(got) => Some(format!("{v} -> {got}")),
                Err(e) => Some(format!("{v}: {e}")),
            }
        })
        .collect();
    ensure(failures.is_empty(), || failures.join(", "))?;
    Ok(format!("{} vectors", vs.len()))
}

fn cantor() -> DigitVector {
    "3:101".parse().expect("literal vector")
}

fn measure_normality() -> Result<String, String> {
    let r = normality(&cantor(), 2, 512, 2000, SEED).map_err(|e| e.to_string())?;
    let f = r.frequency(1);
    ensure((0.49..=0.51).contains(&f), || format!("frequency {f:.4}"))?;
    Ok(format!("digit-1 frequency {f:.4}"))
}

fn measure_intersection() -> Result<String, String> {
    let b: DigitVector = "4:1001".parse().expect("literal vector");
    let rate = intersection_rate(&cantor(), &b, 1000, 100, SEED).map_err(|e| e.to_string())?;
    ensure(rate <= 0.001, || format!("rate {rate}"))?;
    Ok(format!("rate {rate}"))
}

fn measure_character() -> Result<String, String> {
    let mut cases = 0;
    for n in 2..=6usize {
        for mask in 0u32..(1 << n) {
            let digits: Vec<usize> = (0..n).filter(|&d| mask >> d & 1 == 1).collect();
            if digits.len() < 2 {
                continue;
            }
            let d = DigitSet::new(n, digits).map_err(|e| e.to_string())?;
            for t in 1..=50 {
                for j in 1..=4 {
                    ensure(character_bound_check(&d, t, j), || {
                        format!("{d} t={t} j={j}")
                    })?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} cases"))
}

fn measure_weyl() -> Result<String, String> {
    let short = weyl_median_ratio(&cantor(), 2, 1, 64, 50, SEED).map_err(|e| e.to_string())?;
    let long = weyl_median_ratio(&cantor(), 2, 1, 4096, 50, SEED).map_err(|e| e.to_string())?;
    ensure(long < short, || {
        format!("median {long:.4} at L=4096 vs {short:.4} at L=64")
    })?;
    Ok(format!("median |Σ|/L: {short:.4} at 64, {long:.4} at 4096"))
}

fn measure_ks() -> Result<String, String> {
    let d = empirical_cdf_distance(&cantor(), 10_000, 20, 10, SEED);
    ensure(d <= 0.03, || format!("distance {d:.4}"))?;
    Ok(format!("distance {d:.4}"))
}

/// Runs every check of the given suites in order.
pub fn run_suites(suites: &[Suite]) -> Vec<Check> {
    suites.iter().flat_map(|s| s.run()).collect()
}
