//! Pointwise evaluation of the non-recursive formulas for `f_n` and `g_n`.
//!
//! Nothing here touches [`PiecewisePoly`](crate::PiecewisePoly); these
//! evaluators are the independent side of every equivalence check against
//! the recursive builders.
//!
//! ```text
//! f_n(x) = (n/2) Σ_{i=0}^{n} (-1)^{n-i} / (i!(n-i)!) · y^{n-2}|y|,   y = x - n/2 + i,  n >= 2
//! ```
//!
//! The `y^{n-2}` factor uses `0^0 = 1`, so at `n = 2` each term is `|y|`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial};
use crate::piecewise::Side;
use crate::rational::Rational;

/// A point value plus whether any unit-box term landed on `±1/2`, where the
/// box is discontinuous and takes the value `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointValue {
    pub value: Rational,
    pub knot_hit: bool,
}

/// Which argument the trailing unit-box sum of the `g_n` closed form uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum TailVariant {
    /// `g_1(x + (n-1)/2 - r)`, as carried through the derivation.
    Derived,
    /// `g_1(x - (n-1)/2 - r)`, as printed in the headline statement.
    Statement,
}

/// `χ_(-1/2,1/2)(x)`, with the open-interval value `0` at `±1/2`.
pub fn box_value(x: &Rational) -> PointValue {
    let half = Rational::half();
    let a = x.abs();
    PointValue {
        value: if a < half {
            Rational::one()
        } else {
            Rational::zero()
        },
        knot_hit: a == half,
    }
}

/// `y^e · |y|`, with `y^0 = 1` even at `y = 0`.
#[cfg(test)]
fn kinked_power(y: &Rational, e: u32) -> Rational {
    y.pow(e) * y.abs()
}

/// Weights `(m/2) (-1)^{m-t} / (t!(m-t)!)` for `t = 0..=m`.
#[cfg(test)]
fn f_weights(m: u32) -> Vec<Rational> {
    let half_m = Rational::new(m, 2);
    (0..=m)
        .map(|t| {
            let sign = if (m - t).is_multiple_of(2) { 1 } else { -1 };
            let denom: BigInt = factorial(t) * factorial(m - t);
            &half_m * Rational::new(sign, denom)
        })
        .collect()
}

/// Integer core of one closed-form `f_m` evaluation. With every argument
/// written over the common denominator `d`, `y_t = (first + t·d) / d`, and
///
/// ```text
/// Σ_t (m/2) (-1)^{m-t} / (t!(m-t)!) · y_t^{m-2}|y_t|
///     = m / (2 · m! · d^{m-1}) · Σ_t (-1)^{m-t} C(m,t) · N_t^{m-2}|N_t|
/// ```
///
/// This returns the integer sum on the right.
fn f_numerator_sum(m: u32, first: &BigInt, d: &BigInt) -> BigInt {
    let mut total = BigInt::zero();
    let mut numer = first.clone();
    for t in 0..=m {
        let term = binomial(m, t) * num_traits::pow(numer.clone(), (m - 2) as usize) * numer.abs();
        if (m - t).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
        numer += d;
    }
    total
}

/// `m / (2 · m! · d^{m-1})`.
fn f_scale(m: u32, d: &BigInt) -> Rational {
    let denom = BigInt::from(2) * factorial(m) * num_traits::pow(d.clone(), (m - 1) as usize);
    Rational::new(m, denom)
}

/// Common denominator `2q` for `x = p/q`, and the numerator of `x + h/2`
/// over it.
fn over_twice_denominator(x: &Rational, half_steps: i64) -> (BigInt, BigInt) {
    let d = x.denom() * 2;
    let numer = x.numer() * 2 + x.denom() * half_steps;
    (numer, d)
}

/// Closed form of `f_n` at `x`; requires `n >= 2`.
pub fn eval_f_closed(n: usize, x: &Rational) -> Result<Rational> {
    if n < 2 {
        return Err(Error::NTooSmall { n, min: 2 });
    }
    let m = n as u32;
    // y_0 = x - n/2
    let (first, d) = over_twice_denominator(x, -(n as i64));
    Ok(f_scale(m, &d) * Rational::from(f_numerator_sum(m, &first, &d)))
}

/// `f_m` at `y`: the closed form for `m >= 2`, the unit box for `m = 1`.
fn f_point(m: usize, y: &Rational) -> PointValue {
    if m == 1 {
        box_value(y)
    } else {
        PointValue {
            value: eval_f_closed(m, y).expect("m >= 2"),
            knot_hit: false,
        }
    }
}

/// `g_n(x) = Σ_{k=0}^{n-1} C(n-1,k) Σ_{r=0}^{k} (-1)^r C(k,r) f_{n-k}(x + k/2 - r)`,
/// each `f` taken from [`eval_f_closed`] or the unit box.
pub fn eval_g_combination(n: usize, x: &Rational) -> Result<PointValue> {
    if n < 1 {
        return Err(Error::NTooSmall { n, min: 1 });
    }
    let top = (n - 1) as u32;
    let mut value = Rational::zero();
    let mut knot_hit = false;
    for k in 0..=top {
        let outer = Rational::from(binomial(top, k));
        for r in 0..=k {
            let shift = Rational::new(i64::from(k) - 2 * i64::from(r), 2);
            let point = f_point(n - k as usize, &(x + shift));
            knot_hit |= point.knot_hit;
            let mut c = &outer * Rational::from(binomial(k, r));
            if r % 2 == 1 {
                c = -c;
            }
            value += c * point.value;
        }
    }
    Ok(PointValue { value, knot_hit })
}

/// Fully expanded closed form of `g_n` at `x`; requires `n >= 2`.
///
/// ```text
/// g_n(x) = Σ_{k=0}^{n-2} Σ_{r=0}^{k} Σ_{t=0}^{n-k} C(n-1,k) C(k,r) (-1)^r ((n-k)/2)
///              (-1)^{n-k-t} / (t!(n-k-t)!) · y^{n-k-2}|y|,   y = x + k - r - n/2 + t
///        + Σ_{r=0}^{n-1} (-1)^r C(n-1,r) g_1(x + (n-1)/2 - r)
/// ```
pub fn eval_g_closed(n: usize, x: &Rational) -> Result<Rational> {
    eval_g_closed_variant(n, x, TailVariant::Derived)
}

pub(crate) fn eval_g_closed_variant(n: usize, x: &Rational, tail: TailVariant) -> Result<Rational> {
    if n < 2 {
        return Err(Error::NTooSmall { n, min: 2 });
    }
    let nn = n as i64;
    let top = (n - 1) as u32;
    let mut total = Rational::zero();
    for k in 0..top {
        let m = n as u32 - k;
        // Σ_r (-1)^r C(k,r) · [inner t-sum], all sharing the scale of f_m.
        let mut signed = BigInt::zero();
        for r in 0..=k {
            // y at t = 0: x + k - r - n/2
            let (first, d) = over_twice_denominator(x, 2 * (i64::from(k) - i64::from(r)) - nn);
            let term = binomial(k, r) * f_numerator_sum(m, &first, &d);
            if r % 2 == 1 {
                signed -= term;
            } else {
                signed += term;
            }
        }
        let (_, d) = over_twice_denominator(x, 0);
        total += Rational::from(binomial(top, k)) * f_scale(m, &d) * Rational::from(signed);
    }
    let half_top = Rational::new(i64::from(top), 2);
    for r in 0..=top {
        let arg = match tail {
            TailVariant::Derived => x + &half_top - Rational::from(i64::from(r)),
            TailVariant::Statement => x - &half_top - Rational::from(i64::from(r)),
        };
        let mut c = Rational::from(binomial(top, r));
        if r % 2 == 1 {
            c = -c;
        }
        total += c * box_value(&arg).value;
    }
    Ok(total)
}

/// One-sided limit at `x` of a function that is a polynomial of degree at
/// most `degree` between consecutive points of the lattice `(1/2)·ℤ`.
///
/// The limit is recovered exactly by evaluating `f` at `degree + 1` points
/// strictly inside the neighbouring lattice cell and extrapolating the
/// interpolating polynomial to `x`. `Side::Interior` evaluates `f(x)`
/// directly.
pub fn lattice_one_sided_limit<F>(f: F, x: &Rational, side: Side, degree: usize) -> Result<Rational>
where
    F: Fn(&Rational) -> Result<Rational>,
{
    let direction = match side {
        Side::Interior => return f(x),
        Side::Left => -Rational::one(),
        Side::Right => Rational::one(),
    };
    let doubled = x * Rational::from(2);
    // Distance from x to the next lattice point in the chosen direction.
    let gap = if doubled.is_integer() {
        Rational::half()
    } else {
        let lower = Rational::new(doubled.floor(), 2);
        match side {
            Side::Left => x - &lower,
            _ => &lower + Rational::half() - x,
        }
    };
    let count = degree + 1;
    let step = &gap / Rational::from(count as i64 + 1);
    let nodes: Vec<Rational> = (1..=count)
        .map(|j| x + &direction * &step * Rational::from(j as i64))
        .collect();
    let values = nodes.iter().map(&f).collect::<Result<Vec<_>>>()?;
    Ok(lagrange_at(&nodes, &values, x))
}

fn lagrange_at(nodes: &[Rational], values: &[Rational], at: &Rational) -> Rational {
    nodes
        .iter()
        .zip(values)
        .enumerate()
        .map(|(i, (xi, yi))| {
            let basis = nodes
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(Rational::one(), |acc, (_, xj)| acc * (at - xj) / (xi - xj));
            basis * yi
        })
        .sum()
}
