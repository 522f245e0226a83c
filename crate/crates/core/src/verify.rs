//! Batch verification of every identity and equivalence this crate claims,
//! assembled into a serializable [`VerificationReport`].

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed_form::{
    eval_f_closed, eval_g_closed, eval_g_closed_variant, eval_g_combination, TailVariant,
};
use crate::exact::{binomial, coeff_table};
use crate::operators::{diff_l, window_k};
use crate::piecewise::{PiecewisePoly, Side};
use crate::polynomial::Polynomial;
use crate::rational::Rational;
use crate::sequences::{build_f, build_g, build_g_via_f};

/// Common denominator of sample points: `2·3·5·7`.
pub const SAMPLE_DENOMINATOR: i64 = 210;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub parameters: String,
    pub status: Status,
    pub witness: Option<String>,
}

impl Check {
    fn pass(name: &str, parameters: String) -> Self {
        Check {
            name: name.to_string(),
            parameters,
            status: Status::Pass,
            witness: None,
        }
    }

    fn from_outcome(name: &str, parameters: String, outcome: Result<(), String>) -> Self {
        match outcome {
            Ok(()) => Check::pass(name, parameters),
            Err(w) => Check {
                name: name.to_string(),
                parameters,
                status: Status::Fail,
                witness: Some(w),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub seed: u64,
    pub n_max: usize,
    pub samples_per_n: usize,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// `count` points `m / 210` drawn uniformly from `[lo, hi]`, skipping the
/// lattice `(1/2)·ℤ` where every sequence element has its knots. Sorted,
/// possibly with repeats.
pub fn grid_samples(
    seed: u64,
    stream: u64,
    lo: &Rational,
    hi: &Rational,
    count: usize,
) -> Vec<Rational> {
    let d = Rational::from(SAMPLE_DENOMINATOR);
    let lo_m = i64::try_from((lo * &d).floor()).expect("range fits i64");
    let hi_m = i64::try_from((hi * &d).floor()).expect("range fits i64");
    assert!(lo_m < hi_m, "sample range must be non-degenerate");
    let mut rng = rng_for(seed, stream);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let m = rng.random_range(lo_m..=hi_m);
        if m % (SAMPLE_DENOMINATOR / 2) != 0 {
            out.push(Rational::new(m, SAMPLE_DENOMINATOR));
        }
    }
    out.sort();
    out
}

/// Samples spanning `[-n/2 - 1, n/2 + 1]`.
pub fn samples_for_n(seed: u64, stream: u64, n: usize, count: usize) -> Vec<Rational> {
    let reach = Rational::new(n as i64 + 2, 2);
    grid_samples(seed, stream, &-&reach, &reach, count)
}

/// A compactly supported canonical piecewise polynomial with 2 to
/// `max_knots` knots, mixing lattice knots `k/2` and general rationals, and
/// small-integer coefficients of degree at most `max_degree`.
///
/// Panics if `max_knots < 2`.
pub fn random_test_function(seed: u64, max_knots: usize, max_degree: usize) -> PiecewisePoly {
    assert!(max_knots >= 2, "need at least two knots");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = rng.random_range(2..=max_knots);
    let mut knots = BTreeSet::new();
    while knots.len() < count {
        let knot = if rng.random_bool(0.5) {
            Rational::new(rng.random_range(-8i64..=8), 2)
        } else {
            let q = rng.random_range(1i64..=7);
            Rational::new(rng.random_range(-4 * q..=4 * q), q)
        };
        knots.insert(knot);
    }
    let mut pieces = vec![Polynomial::zero()];
    for _ in 1..count {
        let degree = rng.random_range(0..=max_degree);
        let coeffs = (0..=degree)
            .map(|_| Rational::from(rng.random_range(-5i64..=5)))
            .collect();
        pieces.push(Polynomial::new(coeffs));
    }
    pieces.push(Polynomial::zero());
    PiecewisePoly::new(knots.into_iter().collect(), pieces).expect("sorted distinct knots")
}

fn function_seed(seed: u64, i: usize) -> u64 {
    seed ^ (i as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// The shared pool of random functions used by the operator identity checks.
pub fn operator_test_functions(seed: u64, count: usize) -> Vec<PiecewisePoly> {
    (0..count)
        .map(|i| random_test_function(function_seed(seed, i), 6, 4))
        .collect()
}

/// `L K f = K L f` almost everywhere.
pub fn check_commutativity(f: &PiecewisePoly) -> Result<(), String> {
    let lk = diff_l(&window_k(f).map_err(|e| e.to_string())?);
    let kl = window_k(&diff_l(f)).map_err(|e| e.to_string())?;
    if lk.equal_ae(&kl) {
        Ok(())
    } else {
        Err(format!(
            "f = {}; LK f = {}; KL f = {}",
            f.to_json(),
            lk.to_json(),
            kl.to_json()
        ))
    }
}

/// `(K f)' = L f` almost everywhere.
pub fn check_derivative_identity(f: &PiecewisePoly) -> Result<(), String> {
    let dk = window_k(f).map_err(|e| e.to_string())?.derivative();
    let lf = diff_l(f);
    if dk.equal_ae(&lf) {
        Ok(())
    } else {
        Err(format!(
            "f = {}; (K f)' = {}; L f = {}",
            f.to_json(),
            dk.to_json(),
            lf.to_json()
        ))
    }
}

/// Knots in `(1/2)·ℤ ∩ [-n/2, n/2]`, compact support, piece degree `<= n - 1`.
pub fn check_structure(n: usize, f: &PiecewisePoly) -> Result<(), String> {
    let reach = Rational::new(n as i64, 2);
    if !f.has_compact_support() {
        return Err("outer pieces are not zero".into());
    }
    if let Some(k) = f
        .knots()
        .iter()
        .find(|k| !k.is_half_integer_multiple() || k.abs() > reach)
    {
        return Err(format!("knot {k} outside (1/2)Z ∩ [-{reach}, {reach}]"));
    }
    match f.max_degree() {
        Some(d) if d > n - 1 => Err(format!("piece degree {d} exceeds {}", n - 1)),
        _ => Ok(()),
    }
}

fn compare_pointwise<F>(
    n: usize,
    xs: &[Rational],
    recursion: &PiecewisePoly,
    other: F,
) -> Result<(), String>
where
    F: Fn(&Rational) -> Rational,
{
    for x in xs {
        let expected = recursion
            .eval(x, Side::Interior)
            .map_err(|e| format!("n={n} x={x}: {e}"))?;
        let got = other(x);
        if got != expected {
            return Err(format!("n={n} x={x} recursion={expected} closed={got}"));
        }
    }
    Ok(())
}

/// Exact witness for the sign of the trailing unit-box argument at
/// `n = 2, x = -1/4`.
pub fn discrepancy_witness() -> Check {
    let x = Rational::new(-1, 4);
    let recursion = build_g(2)
        .eval(&x, Side::Interior)
        .expect("-1/4 is not a knot");
    let derived = eval_g_closed_variant(2, &x, TailVariant::Derived).expect("n = 2");
    let statement = eval_g_closed_variant(2, &x, TailVariant::Statement).expect("n = 2");
    let ok = recursion == derived && statement != recursion;
    Check {
        name: "discrepancy_witness".into(),
        parameters: "n=2,x=-1/4".into(),
        status: if ok { Status::Pass } else { Status::Fail },
        witness: Some(format!(
            "x={x} recursion={recursion} derived_tail={derived} statement_tail={statement}"
        )),
    }
}

/// Runs every suite in a fixed order. Deterministic for a given argument
/// triple; suites over `n` run in parallel but are reported in order.
pub fn run_all(n_max: usize, samples_per_n: usize, seed: u64) -> VerificationReport {
    let mut checks = Vec::new();

    let table = coeff_table(n_max.max(1) as u32);
    let mismatch = table
        .iter()
        .find(|((n, k), v)| **v != binomial(n - 1, *k))
        .map(|((n, k), v)| format!("c({n},{k})={v} binomial={}", binomial(n - 1, k)));
    checks.push(Check::from_outcome(
        "coeff_table_vs_binomial",
        format!("n_max={n_max}"),
        mismatch.map_or(Ok(()), Err),
    ));

    let functions = operator_test_functions(seed, samples_per_n);
    let params = format!("functions={samples_per_n},max_knots=6,max_degree=4");
    let first_failure = |check: fn(&PiecewisePoly) -> Result<(), String>| {
        functions
            .par_iter()
            .map(check)
            .collect::<Vec<_>>()
            .into_iter()
            .find(Result::is_err)
            .unwrap_or(Ok(()))
    };
    checks.push(Check::from_outcome(
        "lk_commutativity",
        params.clone(),
        first_failure(check_commutativity),
    ));
    checks.push(Check::from_outcome(
        "derivative_identity",
        params,
        first_failure(check_derivative_identity),
    ));

    let per_n = |range: std::ops::RangeInclusive<usize>,
                 name: &'static str,
                 run: &(dyn Fn(usize) -> Result<(), String> + Sync)| {
        range
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|n| Check::from_outcome(name, format!("n={n},samples={samples_per_n}"), run(n)))
            .collect::<Vec<_>>()
    };

    checks.extend(per_n(2..=n_max, "f_closed_equivalence", &|n| {
        let xs = samples_for_n(seed, 1000 + n as u64, n, samples_per_n);
        compare_pointwise(n, &xs, &build_f(n), |x| {
            eval_f_closed(n, x).expect("n >= 2")
        })
    }));
    checks.extend(per_n(1..=n_max, "g_via_f_equal_ae", &|n| {
        let direct = build_g(n);
        let via_f = build_g_via_f(n);
        if direct.equal_ae(&via_f) {
            Ok(())
        } else {
            Err(format!(
                "n={n} recursion={} via_f={}",
                direct.to_json(),
                via_f.to_json()
            ))
        }
    }));
    checks.extend(per_n(1..=n_max, "g_combination_equivalence", &|n| {
        let xs = samples_for_n(seed, 2000 + n as u64, n, samples_per_n);
        compare_pointwise(n, &xs, &build_g(n), |x| {
            eval_g_combination(n, x).expect("n >= 1").value
        })
    }));
    checks.extend(per_n(2..=n_max, "g_closed_equivalence", &|n| {
        let xs = samples_for_n(seed, 3000 + n as u64, n, samples_per_n);
        compare_pointwise(n, &xs, &build_g(n), |x| {
            eval_g_closed(n, x).expect("n >= 2")
        })
    }));
    checks.extend(per_n(1..=n_max, "conservation", &|n| {
        let one = Rational::one();
        for (label, f) in [("f", build_f(n)), ("g", build_g(n))] {
            let total = f.definite_integral().map_err(|e| e.to_string())?;
            if total != one {
                return Err(format!("n={n} integral of {label}_n = {total}"));
            }
        }
        Ok(())
    }));
    checks.extend(per_n(1..=n_max, "structure_invariants", &|n| {
        check_structure(n, &build_f(n)).map_err(|e| format!("n={n} f: {e}"))?;
        check_structure(n, &build_g(n)).map_err(|e| format!("n={n} g: {e}"))
    }));
    checks.extend(per_n(1..=n_max, "f_symmetry", &|n| {
        if build_f(n).is_even() {
            Ok(())
        } else {
            Err(format!("n={n} f_n is not even"))
        }
    }));

    checks.push(discrepancy_witness());

    VerificationReport {
        checks,
        seed,
        n_max,
        samples_per_n,
    }
}
