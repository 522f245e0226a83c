//! The two sequences started from the unit box:
//!
//! ```text
//! f_1 = χ_(-1/2,1/2),  f_{n+1} = K f_n
//! g_1 = χ_(-1/2,1/2),  g_{n+1} = L g_n + K g_n
//! ```
//!
//! plus the expansion `g_n = Σ_k C(n-1, k) L^k f_{n-k}` and the box-kernel
//! population profile `N_t = R^t f_t`.
//!
//! Elements are memoized per process in one cache per sequence.

use std::sync::{Mutex, OnceLock};

use crate::exact::binomial;
use crate::operators::{apply_shift_combination, diff_l, expand_l_power, window_k};
use crate::piecewise::{linear_combine, make_box, PiecewisePoly};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceKind {
    F,
    G,
}

/// Elements `1..=len()` of one sequence, built lazily in order.
#[derive(Debug, Clone)]
pub struct SequenceCache {
    kind: SequenceKind,
    elements: Vec<PiecewisePoly>,
}

impl SequenceCache {
    pub fn new(kind: SequenceKind) -> Self {
        SequenceCache {
            kind,
            elements: vec![make_box()],
        }
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    /// Number of elements built so far.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Element `n` (1-based), extending the cache as needed.
    ///
    /// Panics if `n == 0`.
    pub fn get(&mut self, n: usize) -> &PiecewisePoly {
        assert!(n >= 1, "sequences are indexed from 1");
        while self.elements.len() < n {
            let last = &self.elements[self.elements.len() - 1];
            let next = step(self.kind, last);
            self.elements.push(next);
        }
        &self.elements[n - 1]
    }
}

fn step(kind: SequenceKind, prev: &PiecewisePoly) -> PiecewisePoly {
    let smoothed = window_k(prev).expect("sequence elements have compact support");
    match kind {
        SequenceKind::F => smoothed,
        SequenceKind::G => {
            let diff = diff_l(prev);
            linear_combine(&[(Rational::one(), &diff), (Rational::one(), &smoothed)])
        }
    }
}

fn global(kind: SequenceKind) -> &'static Mutex<SequenceCache> {
    static F: OnceLock<Mutex<SequenceCache>> = OnceLock::new();
    static G: OnceLock<Mutex<SequenceCache>> = OnceLock::new();
    let cell = match kind {
        SequenceKind::F => &F,
        SequenceKind::G => &G,
    };
    cell.get_or_init(|| Mutex::new(SequenceCache::new(kind)))
}

/// Element `n` of `kind` from the process-wide cache.
pub fn build(kind: SequenceKind, n: usize) -> PiecewisePoly {
    let mut cache = global(kind).lock().unwrap_or_else(|e| e.into_inner());
    cache.get(n).clone()
}

/// `f_n`. Panics if `n == 0`.
pub fn build_f(n: usize) -> PiecewisePoly {
    build(SequenceKind::F, n)
}

/// `g_n` by its recursion. Panics if `n == 0`.
pub fn build_g(n: usize) -> PiecewisePoly {
    build(SequenceKind::G, n)
}

/// `g_n = Σ_{k=0}^{n-1} C(n-1, k) L^k f_{n-k}`. Panics if `n == 0`.
pub fn build_g_via_f(n: usize) -> PiecewisePoly {
    assert!(n >= 1, "sequences are indexed from 1");
    let top = (n - 1) as u32;
    let parts: Vec<(Rational, PiecewisePoly)> = (0..=top)
        .map(|k| {
            let f = build_f(n - k as usize);
            let term = apply_shift_combination(&expand_l_power(k), &f);
            (Rational::from(binomial(top, k)), term)
        })
        .collect();
    let terms: Vec<(Rational, &PiecewisePoly)> =
        parts.iter().map(|(c, f)| (c.clone(), f)).collect();
    linear_combine(&terms)
}

/// `N_t = R^t f_t`: the box-kernel growth-dispersal profile after `t` steps
/// from a point release. Panics if `t == 0`.
pub fn population_profile(t: usize, growth: &Rational) -> PiecewisePoly {
    let f = build_f(t);
    linear_combine(&[(growth.pow(t as u32), &f)])
}
