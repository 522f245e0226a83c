//! Piecewise polynomials on the real line.
//!
//! A [`PiecewisePoly`] with `m` knots carries `m + 1` pieces: `pieces[0]`
//! lives on `(-inf, knots[0])`, `pieces[i]` on `(knots[i-1], knots[i])` and
//! `pieces[m]` on `(knots[m-1], inf)`. Values *at* knots are not part of the
//! data; two functions are the same when they agree off a finite set
//! ([`PiecewisePoly::equal_ae`]). One-sided values at a knot are available
//! through [`Side`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polynomial::Polynomial;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    /// Off-knot evaluation; rejected at a knot.
    Interior,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewisePoly {
    knots: Vec<Rational>,
    pieces: Vec<Polynomial>,
}

#[derive(Serialize, Deserialize)]
struct Wire {
    knots: Vec<Rational>,
    pieces: Vec<Polynomial>,
}

/// The unit box `χ_(-1/2, 1/2)`.
pub fn make_box() -> PiecewisePoly {
    PiecewisePoly {
        knots: vec![Rational::new(-1, 2), Rational::new(1, 2)],
        pieces: vec![
            Polynomial::zero(),
            Polynomial::constant(Rational::one()),
            Polynomial::zero(),
        ],
    }
}

/// `Σ c_i · f_i` over the merged knot set, canonicalized.
pub fn linear_combine(terms: &[(Rational, &PiecewisePoly)]) -> PiecewisePoly {
    let knots = merged_knots(terms.iter().map(|(_, f)| *f));
    let mut pieces = vec![Polynomial::zero(); knots.len() + 1];
    for (c, f) in terms {
        if c.is_zero() {
            continue;
        }
        for (interval, src) in piece_map(&knots, f).into_iter().enumerate() {
            pieces[interval].add_scaled(c, &f.pieces[src]);
        }
    }
    PiecewisePoly::from_parts(knots, pieces)
}

fn merged_knots<'a>(fs: impl Iterator<Item = &'a PiecewisePoly>) -> Vec<Rational> {
    let mut knots: Vec<Rational> = fs.flat_map(|f| f.knots.iter().cloned()).collect();
    knots.sort();
    knots.dedup();
    knots
}

/// For each interval of `refined` (a superset of `f`'s knots), the index of
/// the piece of `f` covering it.
fn piece_map(refined: &[Rational], f: &PiecewisePoly) -> Vec<usize> {
    let mut out = Vec::with_capacity(refined.len() + 1);
    let mut src = 0;
    out.push(0);
    for k in refined {
        if src < f.knots.len() && f.knots[src] == *k {
            src += 1;
        }
        out.push(src);
    }
    out
}

impl PiecewisePoly {
    /// Validates the shape and returns the canonical form.
    pub fn new(knots: Vec<Rational>, pieces: Vec<Polynomial>) -> Result<Self> {
        if pieces.len() != knots.len() + 1 {
            return Err(Error::InvalidPiecewise(format!(
                "{} knots need {} pieces, got {}",
                knots.len(),
                knots.len() + 1,
                pieces.len()
            )));
        }
        if let Some(w) = knots.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPiecewise(format!(
                "knots must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        Ok(PiecewisePoly::from_parts(knots, pieces))
    }

    fn from_parts(knots: Vec<Rational>, pieces: Vec<Polynomial>) -> Self {
        debug_assert_eq!(pieces.len(), knots.len() + 1);
        PiecewisePoly { knots, pieces }.canonicalize()
    }

    pub fn zero() -> Self {
        PiecewisePoly {
            knots: Vec::new(),
            pieces: vec![Polynomial::zero()],
        }
    }

    pub fn knots(&self) -> &[Rational] {
        &self.knots
    }

    pub fn pieces(&self) -> &[Polynomial] {
        &self.pieces
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.iter().all(Polynomial::is_zero)
    }

    pub fn has_compact_support(&self) -> bool {
        self.pieces[0].is_zero() && self.pieces[self.pieces.len() - 1].is_zero()
    }

    /// Highest piece degree; `None` for the zero function.
    pub fn max_degree(&self) -> Option<usize> {
        self.pieces.iter().filter_map(Polynomial::degree).max()
    }

    /// Merges adjacent identical pieces, dropping the knot between them.
    pub fn canonicalize(self) -> Self {
        let PiecewisePoly { knots, pieces } = self;
        let mut pieces = pieces.into_iter();
        let mut out_pieces = vec![pieces.next().expect("at least one piece")];
        let mut out_knots = Vec::with_capacity(knots.len());
        for (knot, piece) in knots.into_iter().zip(pieces) {
            if out_pieces.last() != Some(&piece) {
                out_knots.push(knot);
                out_pieces.push(piece);
            }
        }
        PiecewisePoly {
            knots: out_knots,
            pieces: out_pieces,
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.pieces.windows(2).all(|w| w[0] != w[1])
    }

    /// The same function with extra breakpoints inserted. The result is
    /// generally not canonical.
    pub fn refine(&self, extra: &[Rational]) -> Self {
        let mut all: Vec<&Rational> = self.knots.iter().chain(extra).collect();
        all.sort();
        all.dedup();
        let knots: Vec<Rational> = all.into_iter().cloned().collect();
        let pieces = piece_map(&knots, self)
            .into_iter()
            .map(|i| self.pieces[i].clone())
            .collect();
        PiecewisePoly { knots, pieces }
    }

    /// Index of the piece containing `x` when `x` is not a knot, or
    /// `Err(i)` when `x == knots[i]`.
    fn locate(&self, x: &Rational) -> std::result::Result<usize, usize> {
        match self.knots.binary_search(x) {
            Ok(i) => Err(i),
            Err(i) => Ok(i),
        }
    }

    pub fn is_knot(&self, x: &Rational) -> bool {
        self.knots.binary_search(x).is_ok()
    }

    /// Value at `x`. At a knot, `Left`/`Right` select the adjacent piece;
    /// `Interior` succeeds only where both one-sided values agree and fails
    /// with [`Error::KnotAmbiguous`] at a jump.
    pub fn eval(&self, x: &Rational, side: Side) -> Result<Rational> {
        let piece = match (self.locate(x), side) {
            (Ok(i), _) => i,
            (Err(i), Side::Left) => i,
            (Err(i), Side::Right) => i + 1,
            (Err(i), Side::Interior) => {
                let left = self.pieces[i].eval(x);
                if left != self.pieces[i + 1].eval(x) {
                    return Err(Error::KnotAmbiguous { x: x.clone() });
                }
                return Ok(left);
            }
        };
        Ok(self.pieces[piece].eval(x))
    }

    /// `x -> self(x + h)`.
    pub fn shift(&self, h: &Rational) -> Self {
        if h.is_zero() {
            return self.clone();
        }
        PiecewisePoly {
            knots: self.knots.iter().map(|k| k - h).collect(),
            pieces: self.pieces.iter().map(|p| p.shift(h)).collect(),
        }
    }

    /// `x -> self(-x)`.
    pub(crate) fn reflect(&self) -> Self {
        PiecewisePoly {
            knots: self.knots.iter().rev().map(|k| -k).collect(),
            pieces: self.pieces.iter().rev().map(Polynomial::reflect).collect(),
        }
    }

    /// True when `self(x) = self(-x)` almost everywhere.
    pub fn is_even(&self) -> bool {
        self.equal_ae(&self.reflect())
    }

    /// The continuous `F` with `F' = self` on every piece and `F = 0` left of
    /// the support.
    pub fn antiderivative(&self) -> Result<Self> {
        if !self.pieces[0].is_zero() {
            return Err(Error::UnboundedSupport);
        }
        let mut pieces = Vec::with_capacity(self.pieces.len());
        pieces.push(Polynomial::zero());
        for (knot, p) in self.knots.iter().zip(&self.pieces[1..]) {
            let left_value = pieces[pieces.len() - 1].eval(knot);
            let mut q = p.integral();
            let offset = left_value - q.eval(knot);
            q.add_scaled(&Rational::one(), &Polynomial::constant(offset));
            pieces.push(q);
        }
        Ok(PiecewisePoly::from_parts(self.knots.clone(), pieces))
    }

    /// Piecewise derivative; jumps contribute nothing.
    pub fn derivative(&self) -> Self {
        PiecewisePoly::from_parts(
            self.knots.clone(),
            self.pieces.iter().map(Polynomial::derivative).collect(),
        )
    }

    /// `∫_ℝ self`.
    pub fn definite_integral(&self) -> Result<Rational> {
        if !self.has_compact_support() {
            return Err(Error::UnboundedSupport);
        }
        let total = self
            .knots
            .windows(2)
            .zip(&self.pieces[1..])
            .map(|(w, p)| {
                let q = p.integral();
                q.eval(&w[1]) - q.eval(&w[0])
            })
            .sum();
        Ok(total)
    }

    /// Equality off the union of both knot sets.
    pub fn equal_ae(&self, other: &PiecewisePoly) -> bool {
        let knots = merged_knots([self, other].into_iter());
        let a = piece_map(&knots, self);
        let b = piece_map(&knots, other);
        a.into_iter()
            .zip(b)
            .all(|(i, j)| self.pieces[i] == other.pieces[j])
    }

    /// Exact JSON wire form, e.g.
    /// `{"knots": ["-1/2","1/2"], "pieces": [["0"],["1"],["0"]]}`.
    pub fn to_json(&self) -> String {
        fn list<T: ToString>(items: impl Iterator<Item = T>) -> String {
            let inner: Vec<String> = items.map(|s| format!("\"{}\"", s.to_string())).collect();
            format!("[{}]", inner.join(","))
        }
        let knots = list(self.knots.iter());
        let pieces: Vec<String> = self
            .pieces
            .iter()
            .map(|p| {
                if p.is_zero() {
                    "[\"0\"]".to_string()
                } else {
                    list(p.coeffs().iter())
                }
            })
            .collect();
        format!(
            "{{\"knots\": {}, \"pieces\": [{}]}}",
            knots,
            pieces.join(",")
        )
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let wire: Wire = serde_json::from_str(s)?;
        PiecewisePoly::new(wire.knots, wire.pieces)
    }
}

impl Serialize for PiecewisePoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        Wire {
            knots: self.knots.clone(),
            pieces: self.pieces.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PiecewisePoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = Wire::deserialize(deserializer)?;
        PiecewisePoly::new(wire.knots, wire.pieces).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn at(f: &PiecewisePoly, x: &str) -> Rational {
        f.eval(&q(x), Side::Interior).unwrap()
    }

    fn constant_on(lo: &str, hi: &str, c: i64) -> PiecewisePoly {
        PiecewisePoly::new(
            vec![q(lo), q(hi)],
            vec![
                Polynomial::zero(),
                Polynomial::constant(Rational::from(c)),
                Polynomial::zero(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn box_values() {
        let b = make_box();
        assert_eq!(at(&b, "0"), q("1"));
        assert_eq!(at(&b, "1/4"), q("1"));
        assert_eq!(at(&b, "2"), q("0"));
        for side in [Side::Left, Side::Right] {
            assert_eq!(b.eval(&q("0"), side).unwrap(), q("1"));
            assert_eq!(b.eval(&q("2"), side).unwrap(), q("0"));
        }
        assert_eq!(b.definite_integral().unwrap(), q("1"));
    }

    #[test]
    fn one_sided_at_knots() {
        let b = make_box();
        assert_eq!(b.eval(&q("1/2"), Side::Left).unwrap(), q("1"));
        assert_eq!(b.eval(&q("1/2"), Side::Right).unwrap(), q("0"));
        assert_eq!(b.eval(&q("-1/2"), Side::Left).unwrap(), q("0"));
        let err = b.eval(&q("1/2"), Side::Interior).unwrap_err();
        assert!(err.to_string().starts_with("knot-ambiguous"));
    }

    #[test]
    fn interior_at_a_continuous_knot() {
        let ramp = make_box().antiderivative().unwrap();
        assert!(ramp.is_knot(&q("1/2")));
        assert_eq!(ramp.eval(&q("1/2"), Side::Interior).unwrap(), q("1"));
    }

    #[test]
    fn linear_combine_examples() {
        let b = make_box();
        let zero = linear_combine(&[(q("1"), &b), (q("-1"), &b)]);
        assert!(zero.knots().is_empty());
        assert!(zero.is_zero());
        assert_eq!(at(&linear_combine(&[(q("2"), &b)]), "0"), q("2"));

        let left = b.shift(&q("1/2"));
        let right = b.shift(&q("-1/2"));
        let l_box = linear_combine(&[(q("1"), &left), (q("-1"), &right)]);
        let expected = linear_combine(&[
            (q("1"), &constant_on("-1", "0", 1)),
            (q("-1"), &constant_on("0", "1", 1)),
        ]);
        assert!(l_box.equal_ae(&expected));
        assert_eq!(l_box.knots(), &[q("-1"), q("0"), q("1")]);
    }

    #[test]
    fn shift_examples() {
        let b = make_box();
        assert_eq!(at(&b.shift(&q("1/2")), "-1/2"), q("1"));
        assert_eq!(b.shift(&q("0")), b);
        assert_eq!(b.shift(&q("1/2")).shift(&q("-1/2")), b);
        assert_eq!(b.shift(&q("1/2")).knots(), &[q("-1"), q("0")]);
    }

    #[test]
    fn antiderivative_of_box_is_a_ramp() {
        let ramp = make_box().antiderivative().unwrap();
        assert_eq!(ramp.eval(&q("1/2"), Side::Left).unwrap(), q("1"));
        assert_eq!(at(&ramp, "0"), q("1/2"));
        assert_eq!(at(&ramp, "-2"), q("0"));
        assert_eq!(at(&ramp, "7"), q("1"));
        assert!(PiecewisePoly::zero().antiderivative().unwrap().is_zero());
    }

    #[test]
    fn antiderivative_rejects_unbounded_support() {
        let f = PiecewisePoly::new(
            vec![q("0")],
            vec![Polynomial::constant(q("1")), Polynomial::zero()],
        )
        .unwrap();
        assert!(matches!(f.antiderivative(), Err(Error::UnboundedSupport)));
        assert!(matches!(
            f.definite_integral(),
            Err(Error::UnboundedSupport)
        ));
        let g = make_box().antiderivative().unwrap();
        assert!(matches!(
            g.definite_integral(),
            Err(Error::UnboundedSupport)
        ));
    }

    #[test]
    fn derivative_examples() {
        let b = make_box();
        assert!(b.derivative().is_zero());
        assert!(b.antiderivative().unwrap().derivative().equal_ae(&b));
        // hat function with slopes +1 / -1
        let hat = PiecewisePoly::new(
            vec![q("-1"), q("0"), q("1")],
            vec![
                Polynomial::zero(),
                Polynomial::new(vec![q("1"), q("1")]),
                Polynomial::new(vec![q("1"), q("-1")]),
                Polynomial::zero(),
            ],
        )
        .unwrap();
        let expected = linear_combine(&[
            (q("1"), &constant_on("-1", "0", 1)),
            (q("-1"), &constant_on("0", "1", 1)),
        ]);
        assert!(hat.derivative().equal_ae(&expected));
    }

    #[test]
    fn definite_integral_is_linear() {
        let b = make_box();
        assert_eq!(
            linear_combine(&[(q("3"), &b)]).definite_integral().unwrap(),
            q("3")
        );
    }

    #[test]
    fn equal_ae_examples() {
        let b = make_box();
        let refined = b.refine(&[q("0")]);
        assert!(!refined.is_canonical());
        assert_eq!(refined.knots().len(), 3);
        assert!(b.equal_ae(&refined));
        assert!(refined.equal_ae(&b));
        assert_eq!(refined.clone().canonicalize(), b);
        assert!(!b.equal_ae(&b.shift(&q("1/2"))));
    }

    #[test]
    fn new_validates_shape() {
        assert!(PiecewisePoly::new(vec![q("1"), q("0")], vec![Polynomial::zero(); 3]).is_err());
        assert!(PiecewisePoly::new(vec![q("0"), q("0")], vec![Polynomial::zero(); 3]).is_err());
        assert!(PiecewisePoly::new(vec![q("0")], vec![Polynomial::zero(); 3]).is_err());
        let merged = PiecewisePoly::new(vec![q("0"), q("1")], vec![Polynomial::zero(); 3]).unwrap();
        assert!(merged.knots().is_empty());
    }

    #[test]
    fn json_wire_form_is_exact() {
        let s = make_box().to_json();
        assert_eq!(
            s,
            r#"{"knots": ["-1/2","1/2"], "pieces": [["0"],["1"],["0"]]}"#
        );
        assert_eq!(PiecewisePoly::from_json(&s).unwrap(), make_box());
        let via_serde: PiecewisePoly = serde_json::from_str(&s).unwrap();
        assert_eq!(via_serde, make_box());
        assert!(PiecewisePoly::from_json(r#"{"knots": ["1"], "pieces": [["0"]]}"#).is_err());
    }

    #[test]
    fn reflect_box_is_even() {
        assert!(make_box().is_even());
        assert!(!make_box().shift(&q("1/3")).is_even());
    }
}
