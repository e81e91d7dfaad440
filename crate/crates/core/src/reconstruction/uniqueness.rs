use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use rayon::prelude::*;

use super::s2_points;
use crate::cdf::eval;
use crate::digits::all_vectors;
use crate::numbers::common_power;
use crate::{DigitVector, Error, Limits, Rational, Result};

/// Every valid vector of scale `3..=k`, grouped by canonical root. Vectors in
/// one group have the same CDF; different groups have different CDFs.
#[derive(Debug, Clone)]
pub struct HypothesisClass {
    pub k: usize,
    pub groups: BTreeMap<DigitVector, Vec<DigitVector>>,
}

impl HypothesisClass {
    pub fn new(k: usize, limits: &Limits) -> Result<Self> {
        if k < 3 {
            return Err(Error::OutOfRange(format!("bound K = {k} < 3")));
        }
        let total: u128 = (3..=k as u32).map(|n| 1u128 << n.min(127)).sum();
        limits.check("hypothesis class enumeration", total)?;
        let mut groups: BTreeMap<DigitVector, Vec<DigitVector>> = BTreeMap::new();
        for n in 3..=k {
            for v in all_vectors(n) {
                groups.entry(v.canonical_root()).or_default().push(v);
            }
        }
        Ok(HypothesisClass { k, groups })
    }

    pub fn vector_count(&self) -> usize {
        self.groups.values().map(Vec::len).sum()
    }

    pub fn roots(&self) -> impl Iterator<Item = &DigitVector> {
        self.groups.keys()
    }

    /// `values[r][p] = F_r(points[p])` for every root `r`.
    fn value_table(&self, points: &[Rational]) -> Vec<Vec<Rational>> {
        let roots: Vec<&DigitVector> = self.roots().collect();
        roots
            .par_iter()
            .map(|r| points.iter().map(|x| eval(r, x)).collect())
            .collect()
    }
}

/// Number of pairs left in a common block.
fn unseparated(blocks: &[Vec<usize>]) -> usize {
    blocks.iter().map(|b| b.len() * (b.len() - 1) / 2).sum()
}

/// Splits every block by the value at column `p`.
fn refine(blocks: &[Vec<usize>], values: &[Vec<Rational>], p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for block in blocks {
        let mut split: HashMap<&Rational, Vec<usize>> = HashMap::new();
        for &r in block {
            split.entry(&values[r][p]).or_default().push(r);
        }
        let mut parts: Vec<Vec<usize>> = split.into_values().filter(|b| b.len() > 1).collect();
        parts.sort();
        out.extend(parts);
    }
    out
}

fn separates(values: &[Vec<Rational>], columns: &[usize]) -> bool {
    let mut seen = HashMap::new();
    values.iter().all(|row| {
        let key: Vec<&Rational> = columns.iter().map(|&p| &row[p]).collect();
        seen.insert(key, ()).is_none()
    })
}

/// A set of points separating every pair of different CDFs of scale at most
/// `k`, chosen greedily from `{m/M² : M <= k}` and then pruned so that no
/// point can be dropped.
pub fn bruteforce_distinguishing_set(k: usize, limits: &Limits) -> Result<Vec<Rational>> {
    let class = HypothesisClass::new(k, limits)?;
    let pool = s2_points(k);
    let values = class.value_table(&pool);
    let mut blocks = vec![(0..values.len()).collect::<Vec<usize>>()];
    let mut chosen = Vec::new();
    while unseparated(&blocks) > 0 {
        let (best, next) = (0..pool.len())
            .into_par_iter()
            .map(|p| (p, refine(&blocks, &values, p)))
            .min_by_key(|(p, b)| (unseparated(b), *p))
            .expect("pool is nonempty");
        if unseparated(&next) == unseparated(&blocks) {
            return Err(Error::InvalidData(format!(
                "the grid m/M², M <= {k}, does not separate every class"
            )));
        }
        chosen.push(best);
        blocks = next;
    }
    for i in (0..chosen.len()).rev() {
        let mut without = chosen.clone();
        without.remove(i);
        if separates(&values, &without) {
            chosen = without;
        }
    }
    chosen.sort_unstable();
    Ok(chosen.into_iter().map(|p| pool[p].clone()).collect())
}

/// True iff no two different CDFs of scale at most `k` agree on all `points`.
pub fn verify_uniqueness(k: usize, points: &[Rational], limits: &Limits) -> Result<bool> {
    let class = HypothesisClass::new(k, limits)?;
    let values = class.value_table(points);
    let columns: Vec<usize> = (0..points.len()).collect();
    Ok(separates(&values, &columns))
}

/// First `m/J^{p+q}` where the CDFs of vectors with scales `J^p` and `J^q`
/// differ, or `None` when they agree on the whole grid.
pub fn depfix_disagreement(a: &DigitVector, b: &DigitVector) -> Result<Option<Rational>> {
    let (j, p, q) = common_power(a.base() as u64, b.base() as u64)
        .ok_or(Error::NotDependent(a.base(), b.base()))?;
    let den = BigInt::from(j).pow(p + q);
    let mut m = BigInt::from(0);
    while m <= den {
        let x = Rational::new(m.clone(), den.clone());
        if eval(a, &x) != eval(b, &x) {
            return Ok(Some(x));
        }
        m += 1;
    }
    Ok(None)
}

/// Agreement of two CDFs with dependent scales on the grid `m/J^{p+q}`,
/// which decides equivalence.
pub fn depfix_check(a: &DigitVector, b: &DigitVector) -> Result<bool> {
    Ok(depfix_disagreement(a, b)?.is_none())
}
