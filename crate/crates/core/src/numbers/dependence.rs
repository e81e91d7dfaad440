use num_integer::Integer as _;

/// Prime factorization by trial division, as `(prime, exponent)` pairs in
/// increasing prime order. `prime_factors(1)` is empty.
pub fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// True iff `r^m = s^n` for integers `m, n` not both zero.
///
/// For `r, s >= 2` this holds exactly when the prime-exponent vectors of `r`
/// and `s` are parallel. When either argument is 1 the relation holds
/// trivially (`1^1 = s^0`).
pub fn multiplicatively_dependent(r: u64, s: u64) -> bool {
    assert!(
        r >= 1 && s >= 1,
        "dependence is defined for positive integers"
    );
    if r == 1 || s == 1 {
        return true;
    }
    common_power(r, s).is_some()
}

/// Minimal `J` with `r = J^p` and `s = J^q`, returned as `(J, p, q)`.
pub fn common_power(r: u64, s: u64) -> Option<(u64, u32, u32)> {
    assert!(r >= 2 && s >= 2, "common_power needs r, s >= 2");
    let fr = prime_factors(r);
    let fs = prime_factors(s);
    if fr.len() != fs.len() || fr.iter().zip(&fs).any(|(a, b)| a.0 != b.0) {
        return None;
    }
    let p = fr.iter().fold(0u32, |g, &(_, e)| g.gcd(&e));
    let q = fs.iter().fold(0u32, |g, &(_, e)| g.gcd(&e));
    if fr.iter().zip(&fs).any(|(a, b)| a.1 / p != b.1 / q) {
        return None;
    }
    let base = fr.iter().map(|&(prime, e)| prime.pow(e / p)).product();
    Some((base, p, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorizes() {
        assert_eq!(prime_factors(1), vec![]);
        assert_eq!(prime_factors(12), vec![(2, 2), (3, 1)]);
        assert_eq!(prime_factors(97), vec![(97, 1)]);
        assert_eq!(prime_factors(1024), vec![(2, 10)]);
    }

    #[test]
    fn dependence_examples() {
        assert!(multiplicatively_dependent(2, 8));
        assert!(!multiplicatively_dependent(6, 12));
        assert!(multiplicatively_dependent(1, 7));
        assert!(multiplicatively_dependent(7, 7));
        assert!(!multiplicatively_dependent(3, 4));
    }

    #[test]
    fn common_power_examples() {
        assert_eq!(common_power(3, 9), Some((3, 1, 2)));
        assert_eq!(common_power(4, 8), Some((2, 2, 3)));
        assert_eq!(common_power(3, 4), None);
        assert_eq!(common_power(36, 216), Some((6, 2, 3)));
        assert_eq!(common_power(12, 18), None);
    }

    /// Brute force over exponents up to 20; 64^20 = 2^120 fits in u128.
    fn brute_dependent(r: u64, s: u64) -> bool {
        if r == 1 || s == 1 {
            return true;
        }
        for m in 1..=20u32 {
            for n in 1..=20u32 {
                if (r as u128).pow(m) == (s as u128).pow(n) {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn agrees_with_exponent_search() {
        for r in 1..=64 {
            for s in 1..=64 {
                assert_eq!(
                    multiplicatively_dependent(r, s),
                    brute_dependent(r, s),
                    "{r} {s}"
                );
            }
        }
    }

    #[test]
    fn common_power_reconstructs_both() {
        for r in 2..=64u64 {
            for s in 2..=64u64 {
                if let Some((j, p, q)) = common_power(r, s) {
                    assert_eq!(j.pow(p), r);
                    assert_eq!(j.pow(q), s);
                    // J is not itself a perfect power
                    assert!(prime_factors(j).iter().fold(0, |g, &(_, e)| g.gcd(&e)) == 1);
                }
            }
        }
    }
}
