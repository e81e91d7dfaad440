//! Reference computations shared by the integration tests.
//!
//! These deliberately avoid the library's evaluator: values come either from
//! the self-similarity equation solved along the orbit of `x ↦ Nx mod 1`, or
//! from the cumulative digit table of an explicitly built Kronecker power.
#![allow(dead_code)]

use std::collections::HashMap;

use cantor_cdf::{DigitVector, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// All vectors of base `n` with weight in `2..=n-1`, enumerated by bit mask.
pub fn vectors_of_base(n: usize) -> Vec<DigitVector> {
    (0u64..1 << n)
        .filter(|m| (2..n as u32).contains(&m.count_ones()))
        .map(|m| DigitVector::from_bools((0..n).map(|i| m >> i & 1 == 1).collect()).unwrap())
        .collect()
}

pub fn vectors_up_to(n: usize) -> Vec<DigitVector> {
    (3..=n).flat_map(vectors_of_base).collect()
}

/// `F(x)` from `F(x) = (g(d) + b_d F(Nx - d)) / W`, `d = ⌊Nx⌋`.
///
/// Walking the orbit keeps `F(x) = A + B·F(x_i)`; when the orbit returns to
/// an earlier point the two affine forms pin the value.
pub fn reference_eval(v: &DigitVector, x: &Rational) -> Rational {
    if *x <= Rational::zero() {
        return Rational::zero();
    }
    if *x >= Rational::one() {
        return Rational::one();
    }
    let n = BigInt::from(v.base());
    let w = Rational::from_integer(BigInt::from(v.weight()));
    let bits = v.bits();
    let mut prefix = vec![0i64; bits.len() + 1];
    for (i, &b) in bits.iter().enumerate() {
        prefix[i + 1] = prefix[i] + i64::from(b);
    }
    let mut seen: HashMap<Rational, (Rational, Rational)> = HashMap::new();
    let (mut a, mut b) = (Rational::zero(), Rational::one());
    let mut xi = x.clone();
    loop {
        if let Some((a0, b0)) = seen.get(&xi) {
            // a0 + b0·F(xi) = a + b·F(xi)
            let f = (&a - a0) / (b0 - &b);
            return a0 + b0 * f;
        }
        seen.insert(xi.clone(), (a.clone(), b.clone()));
        let scaled = &xi * Rational::from_integer(n.clone());
        let (d, _) = scaled.numer().div_mod_floor(scaled.denom());
        let di: usize = (&d).try_into().unwrap();
        a += &b * Rational::from_integer(BigInt::from(prefix[di])) / &w;
        if !bits[di] {
            return a;
        }
        b /= &w;
        xi = scaled - Rational::from_integer(d);
    }
}

/// `F(k/N^n) = g_{B^{⊗n}}(k) / W^n` with the power built digit by digit:
/// entry `i` of `B^{⊗n}` is the product of `b` over the base-`N` digits of `i`.
pub fn grid_values(v: &DigitVector, n: u32) -> Vec<Rational> {
    let base = v.base();
    let len = base.pow(n);
    let den = BigInt::from(v.weight()).pow(n);
    let mut out = Vec::with_capacity(len + 1);
    let mut g = 0i64;
    out.push(Rational::zero());
    for i in 0..len {
        let mut rest = i;
        let mut on = true;
        for _ in 0..n {
            on &= v.bit(rest % base);
            rest /= base;
        }
        g += i64::from(on);
        out.push(Rational::new(BigInt::from(g), den.clone()));
    }
    out
}

pub fn random_rational(rng: &mut ChaCha8Rng, max_den: i64) -> Rational {
    let q = rng.random_range(1..=max_den);
    rat(rng.random_range(0..=q), q)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
