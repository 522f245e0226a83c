//! Integer combinatorics: factorials, binomial coefficients, and the
//! Pascal-type coefficient table that weights the powers of the difference
//! operator in the expansion of `g_n`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    // Each partial product is itself a binomial coefficient, so the division is exact.
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Coefficients `c(n, k)` for `1 <= n <= n_max`, `0 <= k <= n - 1`, filled
/// only by the recurrence
///
/// ```text
/// c(n+1, 0) = c(n+1, n) = 1
/// c(n+1, k) = c(n, k) + c(n, k-1)    1 <= k <= n-1
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffTable {
    n_max: u32,
    entries: BTreeMap<(u32, u32), BigInt>,
}

impl CoeffTable {
    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    /// `c(n, k)`, or `None` outside `1 <= n <= n_max`, `k <= n - 1`.
    pub fn get(&self, n: u32, k: u32) -> Option<&BigInt> {
        self.entries.get(&(n, k))
    }

    /// Row `n` as `[c(n,0), ..., c(n,n-1)]`.
    pub fn row(&self, n: u32) -> Vec<BigInt> {
        (0..n).filter_map(|k| self.get(n, k).cloned()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> {
        self.entries.iter().map(|(&key, v)| (key, v))
    }
}

/// Panics if `n_max == 0`.
pub fn coeff_table(n_max: u32) -> CoeffTable {
    assert!(n_max >= 1, "coeff_table requires n_max >= 1");
    let mut entries = BTreeMap::new();
    entries.insert((1, 0), BigInt::one());
    for n in 1..n_max {
        entries.insert((n + 1, 0), BigInt::one());
        for k in 1..n {
            let v = &entries[&(n, k)] + &entries[&(n, k - 1)];
            entries.insert((n + 1, k), v);
        }
        entries.insert((n + 1, n), BigInt::one());
    }
    CoeffTable { n_max, entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), big(1));
        assert_eq!(factorial(5), big(120));
        assert_eq!(
            factorial(20),
            "2432902008176640000".parse::<BigInt>().unwrap()
        );
        assert_eq!(factorial(20) / factorial(19), big(20));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(3, 2), big(3));
        for n in 0..10 {
            assert_eq!(binomial(n, 0), big(1));
        }
        assert_eq!(binomial(10, 5), big(252));
        assert_eq!(binomial(3, 7), big(0));
        assert_eq!(binomial(0, 0), big(1));
    }

    #[test]
    fn binomial_matches_table_at_ten_five() {
        let table = coeff_table(11);
        assert_eq!(table.get(11, 5), Some(&binomial(10, 5)));
    }

    #[test]
    fn table_rows() {
        assert_eq!(coeff_table(1).row(1), vec![big(1)]);
        assert_eq!(coeff_table(3).row(3), vec![big(1), big(2), big(1)]);
        let t5 = coeff_table(5);
        assert_eq!(t5.get(5, 2), Some(&big(6)));
        assert_eq!(t5.get(5, 2), Some(&binomial(4, 2)));
        assert_eq!(t5.get(5, 5), None);
        assert_eq!(t5.get(6, 0), None);
    }

    #[test]
    fn table_has_expected_shape() {
        let t = coeff_table(12);
        assert_eq!(t.iter().count(), (1..=12).sum::<usize>());
        for n in 1..=12 {
            assert_eq!(t.get(n, 0), Some(&big(1)));
            assert_eq!(t.get(n, n - 1), Some(&big(1)));
        }
    }

    proptest! {
        #[test]
        fn binomial_symmetry(n in 0u32..80, k in 0u32..80) {
            prop_assume!(k <= n);
            prop_assert_eq!(binomial(n, k), binomial(n, n - k));
        }

        #[test]
        fn pascal_rule(n in 1u32..80, k in 1u32..80) {
            prop_assert_eq!(binomial(n, k), binomial(n - 1, k) + binomial(n - 1, k - 1));
        }
    }
}
