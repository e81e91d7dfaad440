//! Digit vectors and their algebra.
//!
//! A [`DigitVector`] `B = (b_0, …, b_{N-1})` marks which of the `N` equal
//! subintervals survive each construction step. Its weight `‖B‖` is the number
//! of kept digits and its cumulative digit function is `g(k) = Σ_{j<k} b_j`.
//! Kronecker powers describe the same Cantor set at a coarser scale, so
//! `F_B = F_{B⊗B}`; [`DigitVector::canonical_root`] picks the shortest
//! representative of such a family.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer as _;
use serde::{Deserialize, Serialize};

use crate::numbers::common_power;
use crate::{Error, Limits, Result};

/// Validated, non-degenerate digit vector with cached weight and `g` table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DigitVector {
    bits: Vec<bool>,
    weight: usize,
    g: Vec<usize>,
}

/// Kept digits `D ⊂ {0, …, N-1}` in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DigitSet {
    base: usize,
    digits: Vec<usize>,
}

/// How two vectors were compared: both lifted to a common scale `J^L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub common_base: usize,
    pub left_power: u32,
    pub right_power: u32,
    /// The common lift, present only when the lifts coincide.
    pub lifted_vector: Option<DigitVector>,
}

impl EquivalenceWitness {
    pub fn is_equivalent(&self) -> bool {
        self.lifted_vector.is_some()
    }
}

impl DigitVector {
    /// Validates `bits` (entries 0 or 1) as a digit vector of scale `base`.
    pub fn validate(base: usize, bits: &[u8]) -> Result<Self> {
        if bits.len() != base {
            return Err(Error::LengthMismatch {
                expected: base,
                actual: bits.len(),
            });
        }
        if let Some(&b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidData(format!("bit value {b} is not 0 or 1")));
        }
        Self::from_bools(bits.iter().map(|&b| b == 1).collect())
    }

    /// Builds a vector from its bits; the scale is the length.
    pub fn from_bools(bits: Vec<bool>) -> Result<Self> {
        let base = bits.len();
        let mut g = Vec::with_capacity(base + 1);
        g.push(0);
        for &b in &bits {
            g.push(g.last().unwrap() + b as usize);
        }
        let weight = g[base];
        if base < 3 || weight < 2 || weight > base - 1 {
            return Err(Error::DegenerateVector { base, weight });
        }
        Ok(DigitVector { bits, weight, g })
    }

    /// Inverts the `g`-table extraction: `b_k = g(k+1) - g(k)`.
    pub fn from_cumulative(g: &[i64]) -> Result<Self> {
        let fail = |msg: String| Err(Error::InvalidCumulative(msg));
        if g.len() < 2 {
            return fail("need at least g(0) and g(1)".into());
        }
        if g[0] != 0 {
            return fail(format!("g(0) = {} instead of 0", g[0]));
        }
        let n = g.len() - 1;
        let total = g[n];
        if total < 2 || total > n as i64 - 1 {
            return fail(format!("g({n}) = {total} outside 2..={}", n as i64 - 1));
        }
        let mut bits = Vec::with_capacity(n);
        for k in 0..n {
            match g[k + 1] - g[k] {
                0 => bits.push(false),
                1 => bits.push(true),
                step => return fail(format!("step g({}) - g({k}) = {step}", k + 1)),
            }
        }
        Self::from_bools(bits)
    }

    /// Scale factor `N`.
    pub fn base(&self) -> usize {
        self.bits.len()
    }

    /// `‖B‖`, the number of kept digits.
    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn bit(&self, k: usize) -> bool {
        self.bits[k]
    }

    /// `g(0), …, g(N)`.
    pub fn g_table(&self) -> &[usize] {
        &self.g
    }

    /// `g(k) = Σ_{j<k} b_j` for `0 <= k <= N`.
    pub fn cumulative_digit(&self, k: usize) -> Result<usize> {
        self.g.get(k).copied().ok_or(Error::IndexOutOfRange {
            index: k,
            max: self.base(),
        })
    }

    pub fn digit_set(&self) -> DigitSet {
        DigitSet {
            base: self.base(),
            digits: (0..self.base()).filter(|&k| self.bits[k]).collect(),
        }
    }

    /// `(self ⊗ other)(n + m·N_other) = self_m · other_n`.
    pub fn kronecker(&self, other: &DigitVector) -> DigitVector {
        let bits: Vec<bool> = self
            .bits
            .iter()
            .flat_map(|&b| other.bits.iter().map(move |&c| b && c))
            .collect();
        Self::from_bools(bits).expect("Kronecker product of valid vectors is valid")
    }

    pub fn power(&self, n: u32) -> Result<DigitVector> {
        self.power_with(n, &Limits::default())
    }

    /// `n`-fold Kronecker power, refusing results longer than the cap.
    pub fn power_with(&self, n: u32, limits: &Limits) -> Result<DigitVector> {
        if n == 0 {
            return Err(Error::OutOfRange("Kronecker power needs n >= 1".into()));
        }
        let len = (self.base() as u128).checked_pow(n).unwrap_or(u128::MAX);
        limits.check("Kronecker power", len)?;
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.kronecker(self);
        }
        Ok(acc)
    }

    /// `B̌(n) = B(N - 1 - n)`.
    pub fn reverse(&self) -> DigitVector {
        let bits: Vec<bool> = self.bits.iter().rev().copied().collect();
        Self::from_bools(bits).expect("reversal preserves validity")
    }

    /// Shortest `R` with `self = R^{⊗k}`; `self` when no proper root exists.
    pub fn canonical_root(&self) -> DigitVector {
        let n = self.base();
        let max_k = usize::BITS - n.leading_zeros();
        for k in (2..=max_k).rev() {
            let Some(j) = exact_root(n, k) else { continue };
            if j < 3 {
                continue;
            }
            // R^{⊗k} at index i·(1 + J + … + J^{k-1}) is b_i^k = b_i
            let stride: usize = (0..k).map(|e| j.pow(e)).sum();
            let bits: Vec<bool> = (0..j).map(|i| self.bits[i * stride]).collect();
            let Ok(root) = Self::from_bools(bits) else {
                continue;
            };
            if root.power(k).as_ref() == Ok(self) {
                return root;
            }
        }
        self.clone()
    }

    /// Compares `F_self` and `F_other` by lifting both to a common scale.
    ///
    /// Returns `None` when the scales are multiplicatively independent; equal
    /// CDFs force dependent scales, so such pairs are never equivalent.
    pub fn equivalence(
        &self,
        other: &DigitVector,
        limits: &Limits,
    ) -> Result<Option<EquivalenceWitness>> {
        let Some((j, p, q)) = common_power(self.base() as u64, other.base() as u64) else {
            return Ok(None);
        };
        let l = p.lcm(&q);
        let lifted_len = (j as u128).checked_pow(l).unwrap_or(u128::MAX);
        limits.check("equivalence lift", lifted_len)?;
        let left = self.power_with(l / p, limits)?;
        let right = other.power_with(l / q, limits)?;
        Ok(Some(EquivalenceWitness {
            common_base: j as usize,
            left_power: l / p,
            right_power: l / q,
            lifted_vector: (left == right).then_some(left),
        }))
    }

    /// True iff `F_self = F_other` as functions.
    pub fn equivalent(&self, other: &DigitVector) -> Result<bool> {
        Ok(self
            .equivalence(other, &Limits::default())?
            .is_some_and(|w| w.is_equivalent()))
    }

    /// JSON form `{"base":N,"bits":"…"}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&VectorJson {
            base: self.base(),
            bits: Some(self.bit_string()),
            digits: None,
        })
        .expect("plain struct serializes")
    }

    /// Accepts both `{"base":N,"bits":"…"}` and `{"base":N,"digits":[…]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: VectorJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("vector JSON: {e}")))?;
        match (raw.bits, raw.digits) {
            (Some(bits), None) => {
                let bits = parse_bit_string(&bits)?;
                Self::validate(raw.base, &bits)
            }
            (None, Some(digits)) => DigitSet::new(raw.base, digits)?.to_vector(),
            _ => Err(Error::Parse(
                "vector JSON needs exactly one of \"bits\" or \"digits\"".into(),
            )),
        }
    }

    fn bit_string(&self) -> String {
        self.bits
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }
}

/// Largest `j` with `j^k == n`, if `n` is a perfect `k`-th power.
fn exact_root(n: usize, k: u32) -> Option<usize> {
    let guess = (n as f64).powf(1.0 / k as f64).round() as usize;
    (guess.saturating_sub(1)..=guess + 1).find(|&j| j.checked_pow(k) == Some(n))
}

fn parse_bit_string(s: &str) -> Result<Vec<u8>> {
    s.trim()
        .chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::Parse(format!("bit string {s:?} contains {c:?}"))),
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VectorJson {
    base: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    bits: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    digits: Option<Vec<usize>>,
}

/// Text form `N:bits`, e.g. `3:101`.
impl fmt::Display for DigitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.base(), self.bit_string())
    }
}

impl FromStr for DigitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (base, bits) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("{s:?} is not of the form N:bits")))?;
        let base: usize = base
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad base in {s:?}")))?;
        Self::validate(base, &parse_bit_string(bits)?)
    }
}

impl DigitSet {
    /// Sorts and checks `digits` against `base`; duplicates are rejected.
    pub fn new(base: usize, mut digits: Vec<usize>) -> Result<Self> {
        digits.sort_unstable();
        if digits.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidData("repeated digit".into()));
        }
        if let Some(&d) = digits.last() {
            if d >= base {
                return Err(Error::InvalidData(format!(
                    "digit {d} not below base {base}"
                )));
            }
        }
        Ok(DigitSet { base, digits })
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn digits(&self) -> &[usize] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn contains(&self, d: usize) -> bool {
        self.digits.binary_search(&d).is_ok()
    }

    pub fn to_vector(&self) -> Result<DigitVector> {
        let mut bits = vec![false; self.base];
        for &d in &self.digits {
            bits[d] = true;
        }
        DigitVector::from_bools(bits)
    }

    /// `D_1 ⊗ D_2 = {c + b·N_2 : c ∈ D_2, b ∈ D_1}` at scale `N_1·N_2`.
    pub fn kronecker(&self, other: &DigitSet) -> DigitSet {
        let mut digits: Vec<usize> = self
            .digits
            .iter()
            .flat_map(|&b| other.digits.iter().map(move |&c| c + b * other.base))
            .collect();
        digits.sort_unstable();
        DigitSet {
            base: self.base * other.base,
            digits,
        }
    }
}

impl fmt::Display for DigitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.digits.iter().map(|d| d.to_string()).collect();
        write!(f, "{{{}}}@{}", parts.join(","), self.base)
    }
}

/// Every valid vector of scale `base`, in increasing bit-pattern order.
pub fn all_vectors(base: usize) -> impl Iterator<Item = DigitVector> {
    assert!(
        base < usize::BITS as usize,
        "enumeration limited to small bases"
    );
    (0u64..(1u64 << base)).filter_map(move |mask| {
        let bits = (0..base).map(|k| mask >> (base - 1 - k) & 1 == 1).collect();
        DigitVector::from_bools(bits).ok()
    })
}
