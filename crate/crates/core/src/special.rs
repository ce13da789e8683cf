//! Exact generalized binomials and associated Laguerre polynomials at the
//! origin.
//!
//! Every Laguerre factor in the closed-form moment sums is evaluated at zero,
//! where `L_n^(α)(0) = binom(n + α, n)` with the falling-factorial binomial.
//! This continues polynomially in `α` and vanishes for `-n <= α <= -1`.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

/// Falling-factorial binomial `x (x-1) ... (x-n+1) / n!`, exact for any
/// integer `x`.
pub fn generalized_binomial(x: i64, n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..n {
        // acc holds binom(x, i); the division is exact at every step
        acc *= BigInt::from(x) - BigInt::from(i);
        acc /= BigInt::from(i + 1);
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// `L_n^(alpha)(0)`.
pub fn laguerre_at_zero(n: u32, alpha: i64) -> BigInt {
    generalized_binomial(i64::from(n) + alpha, n)
}

/// Floating-point view of [`laguerre_at_zero`], used at the summation layer.
pub fn laguerre_at_zero_f64(n: u32, alpha: i64) -> f64 {
    laguerre_at_zero(n, alpha)
        .to_f64()
        .expect("Laguerre value representable as f64")
}

/// `n!` as f64.
pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(generalized_binomial(5, 2), big(10));
        for x in -7..7 {
            assert_eq!(generalized_binomial(x, 0), big(1));
        }
        // (-2)(-3)(-4)/3!
        let naive: i64 = (0..3).map(|i| -2 - i).product::<i64>() / 6;
        assert_eq!(naive, -4);
        assert_eq!(generalized_binomial(-2, 3), big(-4));
    }

    #[test]
    fn laguerre_examples() {
        for k in -5..5 {
            assert_eq!(laguerre_at_zero(0, k), big(1));
        }
        assert_eq!(laguerre_at_zero(2, 1), big(3));
        assert_eq!(laguerre_at_zero(2, -1), big(0));
    }

    #[test]
    fn forced_zero_for_small_negative_alpha() {
        for n in 1..10u32 {
            for alpha in -(n as i64)..0 {
                assert!(laguerre_at_zero(n, alpha).is_zero(), "n={n} alpha={alpha}");
            }
        }
    }

    #[test]
    fn matches_factorial_formula() {
        let fact = |k: i64| (1..=k).fold(big(1), |acc, i| acc * big(i));
        for x in 0..25i64 {
            for n in 0..=x {
                let expected = fact(x) / (fact(n) * fact(x - n));
                assert_eq!(generalized_binomial(x, n as u32), expected);
            }
        }
    }

    #[test]
    fn pascal_recurrence() {
        for x in -20..20i64 {
            for n in 1..12u32 {
                assert_eq!(
                    generalized_binomial(x, n),
                    generalized_binomial(x - 1, n) + generalized_binomial(x - 1, n - 1),
                    "x={x} n={n}"
                );
            }
        }
    }

    #[test]
    fn large_arguments_stay_exact() {
        let fact = |k: i64| (1..=k).fold(big(1), |acc, i| acc * big(i));
        let v = generalized_binomial(120, 60);
        assert_eq!(v, fact(120) / (fact(60) * fact(60)));
        assert!(v > BigInt::from(u64::MAX));
    }
}
