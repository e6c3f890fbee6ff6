use num_bigint::BigUint;
use num_integer::Roots;
use num_traits::One;

/// Exact binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Nearest integer to `√m`, rounding halves up. Halves cannot occur for
/// integer `m`, since `(r + 1/2)^2` is never an integer.
pub fn nearest_sqrt(m: u64) -> u64 {
    let r = m.sqrt();
    r + u64::from(m - r * r > r)
}
