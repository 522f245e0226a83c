//! The difference operator `L u(x) = u(x + 1/2) - u(x - 1/2)`, the window
//! integral `K u(x) = ∫_{x-1/2}^{x+1/2} u`, and integer combinations of
//! shifts such as the expansion of `L^k`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::binomial;
use crate::piecewise::{linear_combine, PiecewisePoly};
use crate::rational::Rational;

/// `L f`.
pub fn diff_l(f: &PiecewisePoly) -> PiecewisePoly {
    let half = Rational::half();
    let ahead = f.shift(&half);
    let behind = f.shift(&-&half);
    linear_combine(&[(Rational::one(), &ahead), (-Rational::one(), &behind)])
}

/// `K f`, computed as `F(x + 1/2) - F(x - 1/2)` with `F` the antiderivative.
pub fn window_k(f: &PiecewisePoly) -> Result<PiecewisePoly> {
    if !f.has_compact_support() {
        return Err(Error::UnboundedSupport);
    }
    let anti = f.antiderivative()?;
    Ok(diff_l(&anti))
}

/// `Σ c_i E^{h_i}` with integer weights, stored with strictly decreasing
/// shifts and no zero weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftCombination {
    terms: Vec<(BigInt, Rational)>,
}

impl ShiftCombination {
    /// Collects like shifts and drops zero weights.
    pub fn new(terms: impl IntoIterator<Item = (BigInt, Rational)>) -> Self {
        let mut terms: Vec<(BigInt, Rational)> = terms.into_iter().collect();
        terms.sort_by(|a, b| b.1.cmp(&a.1));
        let mut merged: Vec<(BigInt, Rational)> = Vec::with_capacity(terms.len());
        for (c, h) in terms {
            match merged.last_mut() {
                Some((acc, last)) if *last == h => *acc += c,
                _ => merged.push((c, h)),
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        ShiftCombination { terms: merged }
    }

    pub fn identity() -> Self {
        ShiftCombination::new([(BigInt::one(), Rational::zero())])
    }

    pub fn terms(&self) -> &[(BigInt, Rational)] {
        &self.terms
    }

    /// Operator product; shifts commute so this is a convolution of terms.
    pub fn compose(&self, other: &ShiftCombination) -> ShiftCombination {
        ShiftCombination::new(
            self.terms
                .iter()
                .flat_map(|(c1, h1)| other.terms.iter().map(move |(c2, h2)| (c1 * c2, h1 + h2))),
        )
    }

    /// Sum of absolute weights.
    pub fn weight_norm(&self) -> BigInt {
        self.terms.iter().map(|(c, _)| c.abs()).sum()
    }
}

/// `L^k = Σ_{r=0}^{k} (-1)^r C(k, r) E^{k/2 - r}`.
pub fn expand_l_power(k: u32) -> ShiftCombination {
    let terms = (0..=k)
        .map(|r| {
            let c = binomial(k, r);
            let c = if r % 2 == 1 { -c } else { c };
            (c, Rational::new(i64::from(k) - 2 * i64::from(r), 2))
        })
        .collect();
    ShiftCombination { terms }
}

/// `Σ c_i f(x + h_i)`.
pub fn apply_shift_combination(sc: &ShiftCombination, f: &PiecewisePoly) -> PiecewisePoly {
    let shifted: Vec<(Rational, PiecewisePoly)> = sc
        .terms
        .iter()
        .map(|(c, h)| (Rational::from(c.clone()), f.shift(h)))
        .collect();
    let terms: Vec<(Rational, &PiecewisePoly)> =
        shifted.iter().map(|(c, g)| (c.clone(), g)).collect();
    linear_combine(&terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::piecewise::{make_box, Side};

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn at(f: &PiecewisePoly, x: &str) -> Rational {
        f.eval(&q(x), Side::Interior).unwrap()
    }

    fn terms(sc: &ShiftCombination) -> Vec<(i64, String)> {
        sc.terms()
            .iter()
            .map(|(c, h)| (i64::try_from(c).unwrap(), h.to_string()))
            .collect()
    }

    #[test]
    fn diff_l_of_box() {
        let lb = diff_l(&make_box());
        assert_eq!(at(&lb, "-1/4"), q("1"));
        assert_eq!(at(&lb, "1/4"), q("-1"));
        assert!(lb.is_knot(&q("0")));
        assert!(diff_l(&PiecewisePoly::zero()).is_zero());
        assert_eq!(lb.definite_integral().unwrap(), q("0"));
    }

    #[test]
    fn window_k_of_box() {
        let kb = window_k(&make_box()).unwrap();
        assert_eq!(at(&kb, "0"), q("1"));
        assert_eq!(kb.eval(&q("1/2"), Side::Left).unwrap(), q("1/2"));
        assert_eq!(kb.eval(&q("1/2"), Side::Right).unwrap(), q("1/2"));
        assert_eq!(at(&kb, "2"), q("0"));
        assert!(kb.has_compact_support());
        assert_eq!(kb.knots(), &[q("-1"), q("0"), q("1")]);
    }

    #[test]
    fn l_power_expansions() {
        assert_eq!(terms(&expand_l_power(0)), vec![(1, "0".into())]);
        assert_eq!(
            terms(&expand_l_power(1)),
            vec![(1, "1/2".into()), (-1, "-1/2".into())]
        );
        assert_eq!(
            terms(&expand_l_power(2)),
            vec![(1, "1".into()), (-2, "0".into()), (1, "-1".into())]
        );
    }

    #[test]
    fn l_power_matches_repeated_composition() {
        let l = expand_l_power(1);
        let mut acc = ShiftCombination::identity();
        for k in 0..=10 {
            assert_eq!(expand_l_power(k), acc, "k = {k}");
            assert_eq!(acc.weight_norm(), BigInt::from(1u64 << k));
            acc = acc.compose(&l);
        }
    }

    #[test]
    fn apply_shift_combination_examples() {
        let b = make_box();
        assert!(apply_shift_combination(&expand_l_power(1), &b).equal_ae(&diff_l(&b)));
        assert!(apply_shift_combination(&expand_l_power(0), &b).equal_ae(&b));
        let l3 = diff_l(&diff_l(&diff_l(&b)));
        assert!(apply_shift_combination(&expand_l_power(3), &b).equal_ae(&l3));
    }

    #[test]
    fn window_k_rejects_unbounded_support() {
        let ramp = make_box().antiderivative().unwrap();
        assert!(matches!(window_k(&ramp), Err(Error::UnboundedSupport)));
        assert!(window_k(&ramp.reflect()).is_err());
        assert!(window_k(&PiecewisePoly::zero()).unwrap().is_zero());
    }
}
