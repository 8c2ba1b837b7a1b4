//! Small exact integer helpers: binomials, divisors, the Möbius function.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

/// `C(p, q)` over big integers; zero when `q < 0` or `q > p`.
pub fn binomial(p: i64, q: i64) -> BigUint {
    if q < 0 || p < 0 || q > p {
        return BigUint::zero();
    }
    let q = q.min(p - q) as u64;
    let p = p as u64;
    let mut acc = BigUint::one();
    for i in 0..q {
        acc *= p - i;
        acc /= i + 1;
    }
    acc
}

pub fn binomial_int(p: i64, q: i64) -> BigInt {
    BigInt::from(binomial(p, q))
}

/// Positive divisors of `m` in increasing order.
pub fn divisors(m: usize) -> Vec<usize> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

/// The classical Möbius function.
pub fn mobius(m: usize) -> i64 {
    assert!(m >= 1, "mobius is defined on positive integers");
    let mut rest = m;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            rest /= p;
            if rest.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if rest > 1 {
        sign = -sign;
    }
    sign
}

pub fn gcd(a: usize, b: usize) -> usize {
    num_integer::gcd(a, b)
}
