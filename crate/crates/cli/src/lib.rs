//! Command-line front end for the `boxseq` engine.
//!
//! Exit codes: 0 on success, 1 when `verify` finds a failing check, 2 on any
//! usage or input error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use boxseq::closed_form::lattice_one_sided_limit;
use boxseq::sequences::build;
use boxseq::{
    eval_f_closed, eval_g_closed, eval_g_combination, export_samples, population_profile, run_all,
    ExportFormat, ExportKind, PiecewisePoly, Rational, SequenceKind, Side,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "boxseq",
    version,
    about = "Exact iterated box-window sequences f_n and g_n"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build f_n or g_n and write its piecewise JSON.
    Build(BuildArgs),
    /// Evaluate f_n or g_n at one rational point.
    Eval(EvalArgs),
    /// Sample f_n, g_n or a population profile on an equally spaced grid.
    Export(ExportArgs),
    /// Run every identity and equivalence check and print the report.
    Verify(VerifyArgs),
    /// Build the population profile R^t f_t.
    Population(PopulationArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    F,
    G,
}

impl From<Kind> for SequenceKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::F => SequenceKind::F,
            Kind::G => SequenceKind::G,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ExportKindArg {
    F,
    G,
    Population,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SideArg {
    Left,
    Right,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Method {
    Recursion,
    ClosedForm,
    Combination,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Debug)]
struct RangeArg(Rational, Rational);

impl FromStr for RangeArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (lo, hi) = s
            .split_once(':')
            .ok_or_else(|| format!("expected <rational>:<rational>, got {s:?}"))?;
        let lo = lo.parse::<Rational>().map_err(|e| e.to_string())?;
        let hi = hi.parse::<Rational>().map_err(|e| e.to_string())?;
        Ok(RangeArg(lo, hi))
    }
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    n: usize,
    /// Output path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    x: Rational,
    /// Required when x may be a knot, i.e. x is a multiple of 1/2 with |x| <= n/2.
    #[arg(long, value_enum)]
    side: Option<SideArg>,
    #[arg(long, value_enum, default_value = "recursion")]
    method: Method,
}

#[derive(Args, Debug)]
struct ExportArgs {
    #[arg(long, value_enum)]
    kind: ExportKindArg,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long = "R", allow_hyphen_values = true)]
    growth: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    range: RangeArg,
    #[arg(long, default_value_t = 101)]
    count: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    #[arg(long)]
    decimal_digits: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = 12)]
    n_max: usize,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args, Debug)]
struct PopulationArgs {
    #[arg(long)]
    t: usize,
    #[arg(long = "R", allow_hyphen_values = true)]
    growth: Rational,
    /// Evaluate at this point instead of writing the piecewise JSON.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<Rational>,
    #[arg(long, value_enum)]
    side: Option<SideArg>,
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

impl From<boxseq::Error> for Failure {
    fn from(e: boxseq::Error) -> Self {
        usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        usage(e.to_string())
    }
}

/// Runs one command. `args` excludes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let argv = std::iter::once("boxseq".to_string()).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Build(a) => {
            require_positive("--n", a.n)?;
            let f = build(a.kind.into(), a.n);
            emit(out, a.out.as_ref(), &f.to_json())?;
        }
        Command::Eval(a) => {
            let value = eval_point(&a)?;
            writeln!(out, "{value}")?;
        }
        Command::Export(a) => {
            let n_or_t = match (a.n, a.t) {
                (Some(n), None) | (None, Some(n)) => n,
                (Some(_), Some(_)) => return Err(usage("pass only one of --n and --t")),
                (None, None) => return Err(usage("--n (or --t for population) is required")),
            };
            require_positive("--n/--t", n_or_t)?;
            let kind = match a.kind {
                ExportKindArg::F => ExportKind::F,
                ExportKindArg::G => ExportKind::G,
                ExportKindArg::Population => ExportKind::Population,
            };
            let format = match a.format {
                FormatArg::Csv => ExportFormat::Csv,
                FormatArg::Json => ExportFormat::Json,
            };
            let table = export_samples(
                kind,
                n_or_t,
                a.count,
                (&a.range.0, &a.range.1),
                a.growth.as_ref(),
                a.decimal_digits,
            )?;
            emit(out, a.out.as_ref(), table.render(format).trim_end())?;
        }
        Command::Verify(a) => {
            if a.n_max < 2 {
                return Err(usage("--n-max must be at least 2"));
            }
            require_positive("--samples", a.samples)?;
            let report = run_all(a.n_max, a.samples, a.seed);
            writeln!(out, "{}", report.to_json())?;
            if !report.all_pass() {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
        Command::Population(a) => {
            require_positive("--t", a.t)?;
            let profile = population_profile(a.t, &a.growth);
            match a.x {
                Some(x) => {
                    let side = knot_side(&profile, &x, a.side)?;
                    writeln!(out, "{}", profile.eval(&x, side)?)?;
                }
                None => emit(out, a.out.as_ref(), &profile.to_json())?,
            }
        }
    }
    Ok(EXIT_OK)
}

fn require_positive(flag: &str, v: usize) -> Result<(), Failure> {
    if v == 0 {
        Err(usage(format!("{flag} must be a positive integer")))
    } else {
        Ok(())
    }
}

fn emit(out: &mut dyn Write, path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, format!("{text}\n"))?,
        None => writeln!(out, "{text}")?,
    }
    Ok(())
}

fn to_side(side: SideArg) -> Side {
    match side {
        SideArg::Left => Side::Left,
        SideArg::Right => Side::Right,
    }
}

fn knot_side(f: &PiecewisePoly, x: &Rational, side: Option<SideArg>) -> Result<Side, Failure> {
    match (f.is_knot(x), side) {
        (true, None) => Err(usage(format!("x = {x} is a knot; pass --side left|right"))),
        (_, Some(s)) => Ok(to_side(s)),
        (false, None) => Ok(Side::Interior),
    }
}

fn eval_point(a: &EvalArgs) -> Result<Rational, Failure> {
    require_positive("--n", a.n)?;
    let x = &a.x;
    let reach = Rational::new(a.n as i64, 2);
    let on_lattice = x.is_half_integer_multiple() && x.abs() <= reach;
    let side = match (on_lattice, a.side) {
        (true, None) => {
            return Err(usage(format!(
                "x = {x} lies on the knot lattice of the {}_{} sequence element; pass --side left|right",
                if a.kind == Kind::F { "f" } else { "g" },
                a.n
            )))
        }
        (true, Some(s)) => to_side(s),
        (false, _) => Side::Interior,
    };
    let degree = a.n - 1;
    let n = a.n;
    let value = match (a.kind, a.method) {
        (kind, Method::Recursion) => build(kind.into(), n).eval(x, side)?,
        (Kind::F, Method::ClosedForm) => {
            lattice_one_sided_limit(|y| eval_f_closed(n, y), x, side, degree)?
        }
        (Kind::G, Method::ClosedForm) => {
            lattice_one_sided_limit(|y| eval_g_closed(n, y), x, side, degree)?
        }
        (Kind::G, Method::Combination) => lattice_one_sided_limit(
            |y| eval_g_combination(n, y).map(|p| p.value),
            x,
            side,
            degree,
        )?,
        (Kind::F, Method::Combination) => {
            return Err(usage("--method combination applies to --kind g only"))
        }
    };
    Ok(value)
}
