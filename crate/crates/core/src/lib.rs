//! Exact construction of two function sequences generated from the unit box
//! `χ_(-1/2, 1/2)`:
//!
//! * `f_{n+1}(x) = ∫_{x-1/2}^{x+1/2} f_n(s) ds` (centered cardinal B-splines), and
//! * `g_{n+1}(x) = g_n(x + 1/2) - g_n(x - 1/2) + ∫_{x-1/2}^{x+1/2} g_n(s) ds`.
//!
//! Every element is held as a piecewise polynomial over the rationals, so
//! the recursive constructions can be compared against their closed forms
//! and operator identities with no tolerance at all.

pub mod closed_form;
pub mod error;
pub mod exact;
pub mod export;
pub mod operators;
pub mod piecewise;
pub mod polynomial;
pub mod rational;
pub mod sequences;
pub mod verify;

pub use closed_form::{eval_f_closed, eval_g_closed, eval_g_combination, PointValue};
pub use error::{Error, Result};
pub use exact::{binomial, coeff_table, factorial, CoeffTable};
pub use export::{export_samples, ExportFormat, ExportKind, ExportTable};
pub use operators::{apply_shift_combination, diff_l, expand_l_power, window_k, ShiftCombination};
pub use piecewise::{linear_combine, make_box, PiecewisePoly, Side};
pub use polynomial::Polynomial;
pub use rational::Rational;
pub use sequences::{
    build_f, build_g, build_g_via_f, population_profile, SequenceCache, SequenceKind,
};
pub use verify::{random_test_function, run_all, VerificationReport};
