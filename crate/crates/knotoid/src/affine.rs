//! The affine index polynomial of a knotoid diagram and the lower bounds it
//! yields for height and crossing number.
//!
//! Arc labels: the first arc gets 0; passing through a crossing the label
//! increments by +1 when the transverse strand crosses the travel direction
//! from right to left and by -1 otherwise. Under the sign convention of
//! [`crate::codec`] this reads: a `+` crossing contributes +1 at its first
//! visit and -1 at its second, a `-` crossing the opposite.
//!
//! Per crossing, with `a` the incoming label at the under-pass, `b` the
//! incoming label at the over-pass and `e` the crossing sign (sign of the
//! frame (over direction, under direction)), the weight is `W = a - b - e`
//! and the polynomial is `P(t) = sum_c e(c) * (t^W(c) - 1)`.
//!
//! The convention is validated empirically rather than against any external
//! normalization: the clasp knotoid `knotoid O1+ U2- U1+ O2-` must evaluate
//! to `t + t^-1 - 2` with maximum degree 1 (its flat height), the maximum
//! degree never exceeds the flat height on exhaustive sweeps, and the
//! polynomial is invariant under the Reidemeister rewrites of
//! [`crate::moves`]. A convention differing by `t <-> t^-1` would pass the
//! same checks; only the lower bounds below are relied upon.

use std::collections::BTreeMap;
use std::fmt;

use crate::codec::{visit_positions, Diagram, KnotoidDiagram, Sign};

/// Integer Laurent polynomial in one variable; zero coefficients are never
/// stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, exp: i32, coeff: i64) {
        let c = self.terms.entry(exp).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }
}

impl fmt::Display for LaurentPolynomial {
    /// Constant term first, then remaining terms by ascending exponent:
    /// `-2 + 1*t^-1 + 1*t^1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        if let Some(&c) = self.terms.get(&0) {
            parts.push(format!("{c}"));
        }
        for (&e, &c) in &self.terms {
            if e != 0 {
                parts.push(format!("{c}*t^{e}"));
            }
        }
        f.write_str(&parts.join(" + "))
    }
}

/// Per-crossing data entering the polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossingData {
    /// Incoming arc label at the under-pass.
    pub a: i64,
    /// Incoming arc label at the over-pass.
    pub b: i64,
    /// Crossing sign: chirality when the first visit is the over-pass,
    /// negated chirality otherwise.
    pub sign: i64,
    /// `a - b - sign`.
    pub weight: i64,
}

/// Arc labels along the strand, one per arc, starting at 0.
pub fn flat_labels(d: &KnotoidDiagram) -> Vec<i64> {
    let seq = d.seq();
    let mut labels = Vec::with_capacity(seq.len() + 1);
    labels.push(0);
    let mut seen = vec![false; d.crossings()];
    let mut cur = 0i64;
    for c in seq {
        let i = c.index();
        let first = !seen[i];
        seen[i] = true;
        let delta = match (d.chirality()[i], first) {
            (Sign::Plus, true) | (Sign::Minus, false) => 1,
            (Sign::Plus, false) | (Sign::Minus, true) => -1,
        };
        cur += delta;
        labels.push(cur);
    }
    debug_assert_eq!(cur, 0);
    labels
}

/// Labels, signs and weights per crossing.
pub fn crossing_data(d: &KnotoidDiagram) -> Vec<CrossingData> {
    let labels = flat_labels(d);
    let positions = visit_positions(d.seq(), d.crossings());
    positions
        .iter()
        .enumerate()
        .map(|(i, &(p1, p2))| {
            let first_over = d.first_visit_over(crate::codec::CrossingId::from_index(i));
            let (over_pos, under_pos) = if first_over { (p1, p2) } else { (p2, p1) };
            let chir = match d.chirality()[i] {
                Sign::Plus => 1,
                Sign::Minus => -1,
            };
            let sign = if first_over { chir } else { -chir };
            let a = labels[under_pos];
            let b = labels[over_pos];
            CrossingData { a, b, sign, weight: a - b - sign }
        })
        .collect()
}

/// `P(t) = sum over crossings of sign * (t^weight - 1)`.
pub fn affine_polynomial(d: &KnotoidDiagram) -> LaurentPolynomial {
    let mut p = LaurentPolynomial::zero();
    for cd in crossing_data(d) {
        p.add_term(cd.weight as i32, cd.sign);
        p.add_term(0, -cd.sign);
    }
    p
}

/// Maximum degree, clamped to zero so the bounds below are always defined.
pub fn d_max(p: &LaurentPolynomial) -> u32 {
    p.max_exponent().map_or(0, |e| e.max(0) as u32)
}

/// Lower bounds derived from the polynomial: the height of the underlying
/// flat diagram is at least `height_lb` and the crossing number at least
/// `crossing_lb`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffineBounds {
    pub height_lb: u32,
    pub crossing_lb: u32,
}

pub fn bounds(d: &KnotoidDiagram) -> AffineBounds {
    let m = d_max(&affine_polynomial(d));
    AffineBounds { height_lb: m, crossing_lb: 2 * m }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::parse_knotoid_code;
    use crate::planar::height;

    #[test]
    fn trivial_polynomial_is_zero() {
        let d = KnotoidDiagram::trivial();
        assert!(affine_polynomial(&d).is_zero());
        assert_eq!(bounds(&d), AffineBounds { height_lb: 0, crossing_lb: 0 });
    }

    #[test]
    fn kink_labels_and_zero_polynomial() {
        let d = parse_knotoid_code("knotoid O1+ U1+").unwrap();
        assert_eq!(flat_labels(&d), vec![0, 1, 0]);
        assert!(affine_polynomial(&d).is_zero());
    }

    #[test]
    fn clasp_polynomial() {
        let d = parse_knotoid_code("knotoid O1+ U2- U1+ O2-").unwrap();
        assert_eq!(flat_labels(&d), vec![0, 1, 0, -1, 0]);
        let p = affine_polynomial(&d);
        assert_eq!(p.coeff(1), 1);
        assert_eq!(p.coeff(-1), 1);
        assert_eq!(p.coeff(0), -2);
        assert_eq!(p.to_string(), "-2 + 1*t^-1 + 1*t^1");
        assert_eq!(d_max(&p), 1);
        let b = bounds(&d);
        assert_eq!(b, AffineBounds { height_lb: 1, crossing_lb: 2 });
        // Sharp on the clasp: flat height 1, crossing count 2.
        assert_eq!(height(&d.forget_over_under()).0, 1);
    }

    #[test]
    fn d_max_clamps_to_zero() {
        let mut p = LaurentPolynomial::zero();
        p.add_term(-3, 1);
        p.add_term(-1, 1);
        p.add_term(0, -2);
        assert_eq!(d_max(&p), 0);
        assert_eq!(d_max(&LaurentPolynomial::zero()), 0);
    }

    #[test]
    fn closed_labelling_is_consistent() {
        // The same increments around a closed diagram sum to zero per
        // crossing pair, so the rule is globally consistent.
        use crate::codec::parse_knot_code;
        let k = parse_knot_code("knot O1+ U2- O3+ U1+ O2- U3+").unwrap();
        let mut seen = vec![false; k.crossings()];
        let mut total = 0i64;
        for c in k.seq() {
            let i = c.index();
            let first = !seen[i];
            seen[i] = true;
            total += match (k.chirality()[i], first) {
                (Sign::Plus, true) | (Sign::Minus, false) => 1,
                _ => -1,
            };
        }
        assert_eq!(total, 0);
    }
}
