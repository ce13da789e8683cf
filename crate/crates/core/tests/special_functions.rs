use driven_jcm::special::{generalized_binomial, laguerre_at_zero, laguerre_at_zero_f64};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

/// `L_n^(alpha)(0)` from the three-term recurrence in exact rationals.
fn laguerre_recurrence(n: u32, alpha: i64) -> BigRational {
    let a = BigRational::from_integer(BigInt::from(alpha));
    let one = BigRational::from_integer(BigInt::from(1));
    let mut prev = one.clone();
    if n == 0 {
        return prev;
    }
    let mut cur = &one + &a;
    for k in 1..n {
        let k_r = BigRational::from_integer(BigInt::from(k));
        let two_k1 = BigRational::from_integer(BigInt::from(2 * k + 1));
        let next = ((&two_k1 + &a) * &cur - (&k_r + &a) * &prev) / (&k_r + &one);
        prev = cur;
        cur = next;
    }
    cur
}

#[test]
fn closed_form_matches_recurrence() {
    for n in 0..=8 {
        for alpha in -8..=8 {
            let exact = BigRational::from_integer(laguerre_at_zero(n, alpha));
            assert_eq!(exact, laguerre_recurrence(n, alpha), "n={n} alpha={alpha}");
        }
    }
}

#[test]
fn float_view_is_faithful() {
    for n in 0..=20 {
        for alpha in -20..=20i64 {
            let exact: f64 = laguerre_at_zero(n, alpha).to_string().parse().unwrap();
            assert_eq!(laguerre_at_zero_f64(n, alpha), exact);
        }
    }
}

proptest! {
    #[test]
    fn pascal_rule(x in -60i64..60, n in 1u32..40) {
        prop_assert_eq!(
            generalized_binomial(x, n),
            generalized_binomial(x - 1, n) + generalized_binomial(x - 1, n - 1)
        );
    }

    #[test]
    fn negation_identity(x in -40i64..40, n in 0u32..30) {
        // C(-x, n) = (-1)^n C(x + n - 1, n)
        let lhs = generalized_binomial(-x, n);
        let rhs = generalized_binomial(x + n as i64 - 1, n);
        prop_assert_eq!(lhs, if n % 2 == 0 { rhs } else { -rhs });
    }
}
