//! Shared inputs for the criterion benches.

use boxseq::verify::samples_for_n;
use boxseq::Rational;

/// Deterministic off-knot evaluation points for element `n`.
pub fn eval_points(n: usize, count: usize) -> Vec<Rational> {
    samples_for_n(0xB0C5, n as u64, n, count)
}
