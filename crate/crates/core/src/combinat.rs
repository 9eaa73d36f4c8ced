//! Integer combinatorics shared across the algebras.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinatError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("the Moebius function is undefined at 0")]
    MoebiusZero,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Exact binomial coefficient, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `binomial(n, k) mod p`, computed as the product of binomials of base-`p` digits.
pub fn binomial_mod_p(n: u64, k: u64, p: u64) -> Result<u64, CombinatError> {
    if !is_prime(p) {
        return Err(CombinatError::NotPrime(p));
    }
    let (mut n, mut k) = (n, k);
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return Ok(0);
        }
        let digit = binomial(nd, kd) % BigInt::from(p);
        let digit: u64 = digit.try_into().expect("digit binomial fits");
        acc = acc * digit % p;
        n /= p;
        k /= p;
    }
    Ok(acc % p)
}

pub fn moebius(n: u64) -> Result<i8, CombinatError> {
    if n == 0 {
        return Err(CombinatError::MoebiusZero);
    }
    let mut n = n;
    let mut sign = 1i8;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return Ok(0);
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    Ok(sign)
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Number of aperiodic necklaces: `(1/n) sum_{d | n} mu(d) k^(n/d)`.
pub fn necklace_count(k: u64, n: u64) -> BigInt {
    assert!(n >= 1);
    let mut total = BigInt::zero();
    for d in divisors(n) {
        let mu = moebius(d).expect("d >= 1");
        total += BigInt::from(mu) * num_traits::pow(BigInt::from(k), (n / d) as usize);
    }
    total / n
}

/// Partitions of `n` as weakly decreasing part lists, in reverse lexicographic order.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `n` into distinct parts (strictly decreasing lists).
pub fn distinct_partitions(n: u32) -> Vec<Vec<u32>> {
    partitions(n)
        .into_iter()
        .filter(|p| p.windows(2).all(|w| w[0] > w[1]))
        .collect()
}
