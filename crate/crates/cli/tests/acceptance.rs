//! Acceptance suite. Every comparison is exact; runtime limits are wall-clock
//! bounds on each criterion. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use boxseq::verify::{
    check_commutativity, check_derivative_identity, check_structure, operator_test_functions,
    samples_for_n, Status,
};
use boxseq::{
    binomial, build_f, build_g, build_g_via_f, coeff_table, eval_f_closed, eval_g_closed, run_all,
    PiecewisePoly, Rational, SequenceCache, SequenceKind, Side,
};

const SEED: u64 = 42;

type Outcome = Result<String, String>;

fn within(limit: Duration, elapsed: Duration) -> Result<(), String> {
    if elapsed <= limit {
        Ok(())
    } else {
        Err(format!("took {:.2?}, limit {:?}", elapsed, limit))
    }
}

fn pointwise(
    n: usize,
    f: &PiecewisePoly,
    xs: &[Rational],
    closed: impl Fn(&Rational) -> Rational,
) -> Result<(), String> {
    for x in xs {
        let expected = f.eval(x, Side::Interior).map_err(|e| e.to_string())?;
        let got = closed(x);
        if got != expected {
            return Err(format!(
                "n={n} x={x}: recursion {expected}, closed form {got}"
            ));
        }
    }
    Ok(())
}

fn closed_form_f() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    for n in 2..=12 {
        let xs = samples_for_n(SEED, 10_000 + n as u64, n, 100);
        total += xs.len();
        pointwise(n, &build_f(n), &xs, |x| eval_f_closed(n, x).unwrap())?;
    }
    let elapsed = start.elapsed();
    within(Duration::from_secs(5), elapsed)?;
    Ok(format!("{total} samples over n=2..12 in {elapsed:.2?}"))
}

fn g_via_f() -> Outcome {
    let start = Instant::now();
    for n in 1..=12 {
        if !build_g(n).equal_ae(&build_g_via_f(n)) {
            return Err(format!("n={n}: recursion and binomial expansion differ"));
        }
    }
    let elapsed = start.elapsed();
    within(Duration::from_secs(10), elapsed)?;
    Ok(format!("n=1..12 piecewise-equal in {elapsed:.2?}"))
}

fn closed_form_g() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    for n in 2..=12 {
        let xs = samples_for_n(SEED, 20_000 + n as u64, n, 20 * (n + 1));
        total += xs.len();
        pointwise(n, &build_g(n), &xs, |x| eval_g_closed(n, x).unwrap())?;
    }
    let elapsed = start.elapsed();
    within(Duration::from_secs(20), elapsed)?;
    Ok(format!("{total} samples over n=2..12 in {elapsed:.2?}"))
}

fn discrepancy() -> Outcome {
    let x = Rational::new(-1, 4);
    let recursion = build_g(2)
        .eval(&x, Side::Interior)
        .map_err(|e| e.to_string())?;
    let closed = eval_g_closed(2, &x).map_err(|e| e.to_string())?;
    let seven_quarters = Rational::new(7, 4);
    if recursion != seven_quarters || closed != seven_quarters {
        return Err(format!("recursion {recursion}, closed form {closed}"));
    }
    let report = run_all(2, 1, 0);
    let check = report
        .checks
        .iter()
        .find(|c| c.name == "discrepancy_witness")
        .ok_or("no discrepancy_witness entry in report")?;
    let witness = check.witness.clone().unwrap_or_default();
    let expected = "x=-1/4 recursion=7/4 derived_tail=7/4 statement_tail=3/4";
    if check.status != Status::Pass || witness != expected {
        return Err(format!("report entry {:?}: {witness}", check.status));
    }
    Ok(witness)
}

fn operator_pool() -> Result<Vec<PiecewisePoly>, String> {
    let pool = operator_test_functions(SEED, 100);
    let lattice = |f: &PiecewisePoly| f.knots().iter().all(Rational::is_half_integer_multiple);
    if !pool.iter().any(lattice) || pool.iter().all(lattice) {
        return Err("test functions do not mix knot lattices".into());
    }
    if pool
        .iter()
        .any(|f| f.max_degree().unwrap_or(0) > 4 || !f.has_compact_support())
    {
        return Err("test function outside degree/support limits".into());
    }
    Ok(pool)
}

fn commutativity() -> Outcome {
    let pool = operator_pool()?;
    let start = Instant::now();
    for (i, f) in pool.iter().enumerate() {
        check_commutativity(f).map_err(|w| format!("function {i}: {w}"))?;
    }
    let elapsed = start.elapsed();
    within(Duration::from_secs(5), elapsed)?;
    Ok(format!("{} functions in {elapsed:.2?}", pool.len()))
}

fn derivative_identity() -> Outcome {
    let pool = operator_pool()?;
    for (i, f) in pool.iter().enumerate() {
        check_derivative_identity(f).map_err(|w| format!("function {i}: {w}"))?;
    }
    Ok(format!("{} functions", pool.len()))
}

fn coefficient_law() -> Outcome {
    let table = coeff_table(32);
    let mut count = 0;
    for n in 1..=32u32 {
        for k in 0..n {
            let entry = table.get(n, k).ok_or(format!("missing c({n},{k})"))?;
            if *entry != binomial(n - 1, k) {
                return Err(format!("c({n},{k}) = {entry}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} entries"))
}

fn conservation_at(n: usize, f: &PiecewisePoly, label: &str) -> Result<(), String> {
    let total = f.definite_integral().map_err(|e| e.to_string())?;
    if total != Rational::one() {
        return Err(format!("integral of {label}_{n} = {total}"));
    }
    Ok(())
}

fn conservation() -> Outcome {
    for n in 1..=16 {
        conservation_at(n, &build_f(n), "f")?;
        conservation_at(n, &build_g(n), "g")?;
    }
    Ok("n=1..16".into())
}

fn structure() -> Outcome {
    for n in 1..=16 {
        let f = build_f(n);
        check_structure(n, &f).map_err(|e| format!("f_{n}: {e}"))?;
        check_structure(n, &build_g(n)).map_err(|e| format!("g_{n}: {e}"))?;
        if !f.is_even() {
            return Err(format!("f_{n} is not even"));
        }
    }
    Ok("n=1..16".into())
}

fn scale() -> Outcome {
    let start = Instant::now();
    let mut cache = SequenceCache::new(SequenceKind::G);
    let g24 = cache.get(24).clone();
    let elapsed = start.elapsed();
    within(Duration::from_secs(60), elapsed)?;
    conservation_at(24, &g24, "g")?;
    check_structure(24, &g24).map_err(|e| format!("g_24: {e}"))?;
    Ok(format!(
        "g_24 from scratch in {elapsed:.2?}: {} knots, degree {}",
        g24.knots().len(),
        g24.max_degree().unwrap_or(0)
    ))
}

fn cli_round_trip() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for (kind, builder) in [("f", build_f as fn(usize) -> PiecewisePoly), ("g", build_g)] {
        for n in 1..=8 {
            let path = dir.path().join(format!("{kind}{n}.json"));
            let args = [
                "build",
                "--kind",
                kind,
                "--n",
                &n.to_string(),
                "--out",
                path.to_str().unwrap(),
            ];
            let (mut out, mut err) = (Vec::new(), Vec::new());
            let code = boxseq_cli::run(args, &mut out, &mut err);
            if code != 0 {
                return Err(format!(
                    "{kind}_{n}: exit {code}: {}",
                    String::from_utf8_lossy(&err)
                ));
            }
            let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
            let back = PiecewisePoly::from_json(&text).map_err(|e| e.to_string())?;
            if !back.equal_ae(&builder(n)) {
                return Err(format!("{kind}_{n} changed across the JSON round trip"));
            }
        }
    }
    Ok("n=1..8, kinds f and g".into())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("closed-form f equivalence", closed_form_f),
        ("binomial expansion equivalence (piecewise)", g_via_f),
        ("closed-form g equivalence", closed_form_g),
        ("tail-sign discrepancy witness", discrepancy),
        ("L/K commutativity", commutativity),
        ("derivative of K equals L", derivative_identity),
        ("coefficient table law", coefficient_law),
        ("conservation of integral", conservation),
        ("structure invariants", structure),
        ("scale: g_24", scale),
        ("CLI JSON round trip", cli_round_trip),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {:>2}: {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
