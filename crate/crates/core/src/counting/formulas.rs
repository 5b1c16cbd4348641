//! Closed and recursive counting formulas, evaluated exactly.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{is_prime, is_prime_power};

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn pow(base: u64, exp: usize) -> BigUint {
    num_traits::pow(big(base), exp)
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

/// `n! / (k_1! .. k_r!)` for parts summing to at most `n`; when the parts
/// fall short the remainder is treated as one more part.
pub fn multinomial(n: usize, parts: &[usize]) -> BigUint {
    let used: usize = parts.iter().sum();
    assert!(used <= n, "parts exceed n");
    let denom = parts
        .iter()
        .chain(std::iter::once(&(n - used)))
        .fold(BigUint::one(), |acc, &k| acc * factorial(k));
    factorial(n) / denom
}

/// Every `(k_1, .., k_r)` with sum `n` and `k_i >= minimums[i]`, in
/// lexicographic order.
pub fn compositions(n: usize, minimums: &[usize]) -> Vec<Vec<usize>> {
    fn go(left: usize, mins: &[usize], prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        match mins {
            [] => {
                if left == 0 {
                    out.push(prefix.clone());
                }
            }
            [last] => {
                if left >= *last {
                    prefix.push(left);
                    out.push(prefix.clone());
                    prefix.pop();
                }
            }
            [first, rest @ ..] => {
                let reserve: usize = rest.iter().sum();
                if left < first + reserve {
                    return;
                }
                for k in *first..=left - reserve {
                    prefix.push(k);
                    go(left - k, rest, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(n, minimums, &mut Vec::new(), &mut out);
    out
}

/// Number of solutions of `k_1 + .. + k_r = n` with `k_i >= s_i`:
/// `C(r + n - s - 1, r - 1)`, or 0 when `s > n`.
pub fn composition_count(n: usize, r: usize, minimums: &[usize]) -> Result<BigUint> {
    if r == 0 || minimums.len() != r {
        return Err(Error::domain(format!(
            "need r >= 1 minimums, got r = {r} with {} minimums",
            minimums.len()
        )));
    }
    let s: usize = minimums.iter().sum();
    if s > n {
        return Ok(BigUint::zero());
    }
    Ok(binomial(big((r + n - s - 1) as u64), big(r as u64 - 1)))
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::domain(format!("{p} is not prime")))
    }
}

fn require_arity(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::domain(format!("counting formulas need n >= 2, got {n}")));
    }
    Ok(())
}

/// Distinct unary functions `b Q_S(x) + a` (interval `S`, `a, b != 0`)
/// that are not of the form `c Q_S'(x)`: `(p-1)^2 (p-2)`.
pub fn count_last_layer_single(p: u64) -> Result<BigUint> {
    require_prime(p)?;
    Ok(pow(p - 1, 2) * big(p - 2))
}

/// Distinct functions `b prod_j Q_{S_j}(x_j) + a` over `k >= 2` variables
/// with interval sets and `a, b != 0`: `2^k (p-1)^(k+2)`.
pub fn count_offset_products(p: u64, k: usize) -> Result<BigUint> {
    require_prime(p)?;
    if k < 2 {
        return Err(Error::domain(format!("offset products need k >= 2, got {k}")));
    }
    Ok(pow(2, k) * pow(p - 1, k + 2))
}

/// Shared shape of the interval and general closed forms.
///
/// `single_last(r)` weighs the layer-`r` term with `k_r = 1`, summed over
/// `k_1 + .. + k_{r-1} = n-1`; `wide_last(r)` weighs the term with
/// `k_r >= 2`, summed over `k_1 + .. + k_r = n`. Returns the per-`r` sums.
fn closed_form_by_layers(
    n: usize,
    single_last: impl Fn(usize) -> BigUint,
    wide_last: impl Fn(usize) -> BigUint,
) -> BTreeMap<usize, BigUint> {
    let mut by_r = BTreeMap::new();
    for r in 2..=n {
        let inner: BigUint = compositions(n - 1, &vec![1; r - 1])
            .iter()
            .map(|k| multinomial(n, k))
            .sum();
        *by_r.entry(r).or_insert_with(BigUint::zero) += single_last(r) * inner;
    }
    for r in 1..n {
        let mut mins = vec![1; r];
        mins[r - 1] = 2;
        let inner: BigUint = compositions(n, &mins).iter().map(|k| multinomial(n, k)).sum();
        *by_r.entry(r).or_insert_with(BigUint::zero) += wide_last(r) * inner;
    }
    by_r
}

/// Number of interval NCFs in `n >= 2` variables over `F_p`, split by
/// layer number.
pub fn ncf_closed_by_layers(p: u64, n: usize) -> Result<BTreeMap<usize, BigUint>> {
    require_prime(p)?;
    require_arity(n)?;
    let lead_single = pow(2, n - 1) * big(p) * big(p - 2);
    let lead_wide = pow(2, n) * big(p);
    Ok(closed_form_by_layers(
        n,
        |r| &lead_single * pow(p - 1, n + r - 1),
        |r| &lead_wide * pow(p - 1, n + r),
    ))
}

/// Number of general (any proper subset) NCFs in `n >= 2` variables over
/// a field of order `q`, split by layer number.
pub fn ncf_general_by_layers(q: u64, n: usize) -> Result<BTreeMap<usize, BigUint>> {
    if !is_prime_power(q) {
        return Err(Error::domain(format!("{q} is not a prime power")));
    }
    require_arity(n)?;
    let half_subsets = pow(2, q as usize - 1) - 1u32;
    let subsets_n = num_traits::pow(half_subsets, n);
    let lead_single = pow(2, n - 1) * big(q) * big(q - 2) * &subsets_n;
    let lead_wide = pow(2, n) * big(q) * &subsets_n;
    Ok(closed_form_by_layers(
        n,
        |r| &lead_single * pow(q - 1, r - 1),
        |r| &lead_wide * pow(q - 1, r),
    ))
}

/// `a_n` from `a_2 = 4(p-1)^4` and, for `n >= 3`,
/// `a_n = sum_{r=2}^{n-1} C(n, r-1) 2^(r-1) (p-1)^r a_{n-r+1} + 2^(n-1) (p-1)^(n+1) (2 + n(p-2))`.
pub fn recursive_sequence(p: u64, n: usize) -> Result<BigUint> {
    require_prime(p)?;
    require_arity(n)?;
    let mut a: Vec<BigUint> = vec![BigUint::zero(); n + 1];
    a[2] = big(4) * pow(p - 1, 4);
    for m in 3..=n {
        let mut acc: BigUint = (2..m)
            .map(|r| {
                binomial(big(m as u64), big(r as u64 - 1)) * pow(2, r - 1) * pow(p - 1, r) * &a[m - r + 1]
            })
            .sum();
        acc += pow(2, m - 1) * pow(p - 1, m + 1) * (big(2) + big(m as u64) * big(p - 2));
        a[m] = acc;
    }
    Ok(a.swap_remove(n))
}

/// `N = 2^(n-1) (q-1) q^n (2^(q-1) - 1)^n`, exactly as stated for the
/// number of permutation classes.
pub fn classes_formula(q: u64, n: usize) -> Result<BigUint> {
    if !is_prime_power(q) {
        return Err(Error::domain(format!("{q} is not a prime power")));
    }
    require_arity(n)?;
    let half_subsets = pow(2, q as usize - 1) - 1u32;
    Ok(pow(2, n - 1) * big(q - 1) * pow(q, n) * num_traits::pow(half_subsets, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn total(m: BTreeMap<usize, BigUint>) -> BigUint {
        m.into_values().sum()
    }

    #[test]
    fn composition_count_examples() {
        assert_eq!(composition_count(4, 2, &[1, 2]).unwrap(), big(2));
        assert_eq!(compositions(4, &[1, 2]), vec![vec![1, 3], vec![2, 2]]);
        assert_eq!(composition_count(3, 3, &[1, 1, 1]).unwrap(), big(1));
        assert_eq!(composition_count(5, 1, &[1]).unwrap(), big(1));
        assert_eq!(composition_count(2, 2, &[2, 1]).unwrap(), big(0));
        assert!(composition_count(2, 2, &[1]).is_err());
    }

    #[test]
    fn composition_count_matches_listing() {
        for n in 0..9 {
            for mins in [vec![1], vec![1, 1], vec![0, 2], vec![1, 1, 2], vec![2, 0, 1, 1]] {
                let listed = compositions(n, &mins).len();
                assert_eq!(
                    composition_count(n, mins.len(), &mins).unwrap(),
                    big(listed as u64),
                    "n={n} mins={mins:?}"
                );
            }
        }
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial(4, &[2, 1, 1]), big(12));
        assert_eq!(multinomial(3, &[1, 1]), big(6));
        assert_eq!(multinomial(5, &[]), big(1));
    }

    #[test]
    fn lemma_formulas() {
        assert_eq!(count_last_layer_single(2).unwrap(), big(0));
        assert_eq!(count_last_layer_single(3).unwrap(), big(4));
        assert_eq!(count_offset_products(3, 2).unwrap(), big(64));
        assert_eq!(count_offset_products(2, 2).unwrap(), big(4));
        assert!(count_offset_products(3, 1).is_err());
        assert!(count_last_layer_single(4).is_err());
    }

    #[test]
    fn closed_form_values() {
        let v: Vec<BigUint> = [(3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (5, 4)]
            .iter()
            .map(|&(p, n)| total(ncf_closed_by_layers(p, n).unwrap()))
            .collect();
        // p=3, n=4 agrees with the recursion and with deduplicated enumeration
        let expect = [192u64, 5568, 219648, 5120, 547840, 78561280].map(big);
        assert_eq!(v, expect);
        assert!(ncf_closed_by_layers(3, 1).is_err());
        assert!(ncf_closed_by_layers(4, 2).is_err());
    }

    #[test]
    fn recursion_values() {
        assert_eq!(recursive_sequence(3, 2).unwrap(), big(64));
        assert_eq!(recursive_sequence(3, 3).unwrap() * 3u32, big(5568));
        assert_eq!(recursive_sequence(5, 4).unwrap() * 5u32, big(78561280));
    }

    #[test]
    fn general_and_class_values() {
        assert_eq!(total(ncf_general_by_layers(2, 2).unwrap()), big(8));
        assert_eq!(total(ncf_general_by_layers(3, 2).unwrap()), big(432));
        assert_eq!(classes_formula(2, 2).unwrap(), big(8));
        assert_eq!(classes_formula(3, 2).unwrap(), big(324));
        assert_eq!(classes_formula(2, 3).unwrap(), big(32));
        assert!(total(ncf_general_by_layers(4, 3).unwrap()) > BigUint::zero());
        assert!(ncf_general_by_layers(6, 2).is_err());
    }

    #[test]
    fn boolean_values_are_known_sequence() {
        let v: Vec<BigUint> = (2..=5).map(|n| total(ncf_closed_by_layers(2, n).unwrap())).collect();
        assert_eq!(v, [8u64, 64, 736, 10624].map(big));
    }
}
