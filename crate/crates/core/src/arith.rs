//! Exact integer helpers. Nothing here touches floating point.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// `n! / m!` for `m <= n`.
pub fn falling_ratio(n: usize, m: usize) -> BigUint {
    debug_assert!(m <= n);
    ((m + 1)..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

pub fn pow(base: usize, exp: usize) -> BigUint {
    num_traits::pow(BigUint::from(base), exp)
}

/// `2^e`.
pub fn pow2(exp: usize) -> BigUint {
    BigUint::one() << exp
}

/// Catalan numbers by `C_{m+1} = sum_i C_i C_{m-i}`.
pub fn catalan(n: usize) -> BigUint {
    let mut c = vec![BigUint::one()];
    for m in 0..n {
        let next = (0..=m).map(|i| &c[i] * &c[m - i]).sum();
        c.push(next);
    }
    c.swap_remove(n)
}

/// Bell numbers via the Bell triangle.
pub fn bell(n: usize) -> BigUint {
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().cloned().expect("row is non-empty"));
        for v in &row {
            let add = next.last().expect("next is non-empty") + v;
            next.push(add);
        }
        row = next;
    }
    row.swap_remove(0)
}

/// Number of involutions of `[n]`, evaluated with the sum
/// `sum_{k <= n/2} n! / (k! (n - 2k)! 2^k)`.
pub fn involutions(n: usize) -> BigUint {
    let nf = factorial(n);
    (0..=n / 2)
        .map(|k| &nf / (factorial(k) * factorial(n - 2 * k) * pow2(k)))
        .sum()
}

/// Derangements of `[n]`: `n! sum_{k=0}^{n} (-1)^k / k!`, computed as an
/// alternating sum of the integers `n!/k!`.
pub fn derangements(n: usize) -> BigUint {
    let mut acc = BigInt::zero();
    for k in 0..=n {
        let term = BigInt::from(falling_ratio(n, k));
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc.to_biguint().expect("derangement count is non-negative")
}

/// Permutations of `[n]` with at least one fixed point.
pub fn non_derangements(n: usize) -> BigUint {
    factorial(n) - derangements(n)
}

/// Serializes a big integer as its decimal string.
pub fn serialize_decimal<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}
