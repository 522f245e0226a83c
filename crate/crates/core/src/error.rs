use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Error)]
pub enum Error {
    /// Interior evaluation requested at a knot where the one-sided values differ.
    #[error("knot-ambiguous: x = {x} is a knot with a jump; choose the left or right side")]
    KnotAmbiguous { x: Rational },

    #[error("unbounded-support: the function does not vanish on its outer pieces")]
    UnboundedSupport,

    #[error("n-too-small: n = {n} but the formula requires n >= {min}")]
    NTooSmall { n: usize, min: usize },

    #[error("empty-range: sampling range {lo}:{hi} is degenerate")]
    EmptyRange { lo: String, hi: String },

    #[error("invalid rational {0:?}: expected [-]digits[/digits] with a positive denominator")]
    ParseRational(String),

    #[error("invalid piecewise polynomial: {0}")]
    InvalidPiecewise(String),

    #[error("missing parameter: {0}")]
    MissingParameter(&'static str),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
