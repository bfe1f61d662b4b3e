//! Binomial coefficients with arbitrary integer upper index.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `binom(n, k) = n (n-1) ... (n-k+1) / k!` for any integer `n`; zero for `k < 0`.
pub fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if n >= 0 && k > n {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// `binom(n, k) mod 2`; Lucas for `n >= 0`, reflection `binom(k-n-1, k)` otherwise.
pub fn binom_mod2(n: i64, k: i64) -> bool {
    if k < 0 {
        return false;
    }
    if n < 0 {
        return binom_mod2(k - n - 1, k);
    }
    k & !n == 0 && k <= n
}
