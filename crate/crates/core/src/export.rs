//! Sampled value tables for plotting.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::piecewise::{PiecewisePoly, Side};
use crate::rational::Rational;
use crate::sequences::{build_f, build_g, population_profile};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportKind {
    F,
    G,
    Population,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExportTable {
    pub rows: Vec<(Rational, Rational)>,
    pub decimal_digits: Option<u32>,
}

#[derive(Serialize)]
struct JsonRow {
    x: String,
    value: String,
}

#[derive(Serialize)]
struct JsonTable {
    decimal_digits: Option<u32>,
    rows: Vec<JsonRow>,
}

impl ExportTable {
    fn format(&self, r: &Rational) -> String {
        match self.decimal_digits {
            Some(d) => r.to_decimal_string(d),
            None => r.to_string(),
        }
    }

    /// Formatted `(x, value)` pairs, shared by both output formats.
    pub fn formatted_rows(&self) -> Vec<(String, String)> {
        self.rows
            .iter()
            .map(|(x, v)| (self.format(x), self.format(v)))
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,value\n");
        for (x, v) in self.formatted_rows() {
            out.push_str(&x);
            out.push(',');
            out.push_str(&v);
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let table = JsonTable {
            decimal_digits: self.decimal_digits,
            rows: self
                .formatted_rows()
                .into_iter()
                .map(|(x, value)| JsonRow { x, value })
                .collect(),
        };
        serde_json::to_string_pretty(&table).expect("table serializes")
    }

    pub fn render(&self, format: ExportFormat) -> String {
        match format {
            ExportFormat::Csv => self.to_csv(),
            ExportFormat::Json => self.to_json(),
        }
    }
}

/// `count` equally spaced points from `lo` to `hi` (both ends included when
/// `count >= 2`, the midpoint when `count == 1`). A point on a knot of `f`
/// moves right by half the grid step, halving again until it is clear.
pub fn sample_points(
    f: &PiecewisePoly,
    lo: &Rational,
    hi: &Rational,
    count: usize,
) -> Result<Vec<Rational>> {
    if lo >= hi || count == 0 {
        return Err(Error::EmptyRange {
            lo: lo.to_string(),
            hi: hi.to_string(),
        });
    }
    let width = hi - lo;
    let (start, step) = if count == 1 {
        (lo + &width * Rational::half(), width)
    } else {
        (lo.clone(), &width / Rational::from(count as i64 - 1))
    };
    let points = (0..count)
        .map(|i| {
            let mut x = &start + &step * Rational::from(i as i64);
            let mut nudge = &step * Rational::half();
            let base = x.clone();
            while f.is_knot(&x) {
                x = &base + &nudge;
                nudge = &nudge * Rational::half();
            }
            x
        })
        .collect();
    Ok(points)
}

/// Exact samples of `f_n`, `g_n` or the population profile `R^t f_t`.
pub fn export_samples(
    kind: ExportKind,
    n_or_t: usize,
    count: usize,
    range: (&Rational, &Rational),
    growth: Option<&Rational>,
    decimal_digits: Option<u32>,
) -> Result<ExportTable> {
    let f = match kind {
        ExportKind::F => build_f(n_or_t),
        ExportKind::G => build_g(n_or_t),
        ExportKind::Population => {
            let r = growth.ok_or(Error::MissingParameter("--R is required for population"))?;
            population_profile(n_or_t, r)
        }
    };
    let rows = sample_points(&f, range.0, range.1, count)?
        .into_iter()
        .map(|x| {
            let v = f
                .eval(&x, Side::Interior)
                .expect("sample points avoid knots");
            (x, v)
        })
        .collect();
    Ok(ExportTable {
        rows,
        decimal_digits,
    })
}
