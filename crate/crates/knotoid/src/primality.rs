//! Primality of flat diagrams and connected-sum style reductions.
//!
//! An embedded circle meeting a diagram transversely in one point away from
//! crossings corresponds to a dual loop (an arc with the same face on both
//! sides, i.e. a cut edge); a circle meeting it in two points corresponds to
//! a closed dual walk of length two, i.e. an unordered pair of distinct arcs
//! with the same unordered pair of adjacent faces. A diagram is *prime* when
//! no such circle has crossings on both of its sides.
//!
//! Circles crossing the same arc twice are omitted: the sub-arc between the
//! two intersection points lies inside a single edge, so one side of the
//! circle meets the diagram in a crossing-free arc and the circle can never
//! disqualify primality.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::codec::{CodeError, CrossingId, Diagram, FlatDiagram, Sign};
use crate::planar::{self, ArcId, FaceId};

/// Shape of the separating circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    /// Crosses one arc once; the arc is a cut edge.
    OnePoint,
    /// Crosses two distinct arcs bounding the same face pair.
    TwoPoint,
}

/// A separating circle, with the crossings on each of its two sides.
///
/// For a one-point circle `side_a` holds the crossings between the beginning
/// endpoint and the cut, `side_b` the rest. For a two-point circle `side_a`
/// is the piece between the two cuts and `side_b` the outside (which carries
/// both endpoints).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimalityWitness {
    pub kind: WitnessKind,
    pub arcs: Vec<ArcId>,
    pub faces: Vec<FaceId>,
    pub side_a: Vec<CrossingId>,
    pub side_b: Vec<CrossingId>,
}

impl PrimalityWitness {
    /// Crossings on both sides: the circle contradicts primality.
    pub fn disqualifies(&self) -> bool {
        !self.side_a.is_empty() && !self.side_b.is_empty()
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PrimalityError {
    #[error("BAD_WITNESS: {0}")]
    BadWitness(String),
    #[error("internal reconstruction failure: {0}")]
    Internal(#[from] CodeError),
}

fn crossings_of(f: &FlatDiagram, range: std::ops::Range<usize>) -> Vec<CrossingId> {
    let set: BTreeSet<CrossingId> = f.seq()[range].iter().copied().collect();
    set.into_iter().collect()
}

/// All circles meeting the diagram transversely in exactly one point.
pub fn one_point_circles(f: &FlatDiagram) -> Vec<PrimalityWitness> {
    let map = planar::trace_faces(f);
    let dual = planar::build_dual(&map);
    let len = f.seq().len();
    let mut out = Vec::new();
    for arc in 0..f.num_arcs() {
        if !dual.is_loop(ArcId(arc as u32)) {
            continue;
        }
        let (face, _) = dual.arc_faces(ArcId(arc as u32));
        let side_a = crossings_of(f, 0..arc);
        let side_b = crossings_of(f, arc..len);
        debug_assert!(side_a.iter().all(|c| !side_b.contains(c)));
        out.push(PrimalityWitness {
            kind: WitnessKind::OnePoint,
            arcs: vec![ArcId(arc as u32)],
            faces: vec![face],
            side_a,
            side_b,
        });
    }
    out
}

/// All circles meeting the diagram transversely in exactly two points lying
/// in two distinct arcs.
pub fn two_point_circles(f: &FlatDiagram) -> Vec<PrimalityWitness> {
    let map = planar::trace_faces(f);
    let dual = planar::build_dual(&map);
    let len = f.seq().len();
    let num_arcs = f.num_arcs();
    let mut out = Vec::new();
    for a in 0..num_arcs {
        let (fa1, fa2) = dual.arc_faces(ArcId(a as u32));
        let pa = sorted_pair(fa1, fa2);
        for b in a + 1..num_arcs {
            let (fb1, fb2) = dual.arc_faces(ArcId(b as u32));
            if sorted_pair(fb1, fb2) != pa {
                continue;
            }
            if fa1 == fa2 && !chords_disjoint(&map, a, b, fa1) {
                // Both arcs are cut edges on the same face; an embedded
                // circle exists only when their passages along the face
                // boundary do not interleave.
                continue;
            }
            let side_a = crossings_of(f, a..b);
            let mut side_b = crossings_of(f, 0..a);
            side_b.extend(crossings_of(f, b..len));
            side_b.sort_unstable();
            side_b.dedup();
            if side_a.iter().any(|c| side_b.contains(c)) {
                // The would-be circle cannot avoid this crossing.
                continue;
            }
            let faces = if fa1 == fa2 { vec![fa1] } else { vec![pa.0, pa.1] };
            out.push(PrimalityWitness {
                kind: WitnessKind::TwoPoint,
                arcs: vec![ArcId(a as u32), ArcId(b as u32)],
                faces,
                side_a,
                side_b,
            });
        }
    }
    out
}

fn sorted_pair(a: FaceId, b: FaceId) -> (FaceId, FaceId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Do the two passages of arcs `a` and `b` along the boundary of `face`
/// avoid interleaving?
fn chords_disjoint(map: &planar::CombinatorialMap, a: usize, b: usize, face: FaceId) -> bool {
    let orbit = map.face_darts(face);
    let marks: Vec<u8> = orbit
        .iter()
        .map(|&d| {
            let arc = planar::arc_of(d);
            if arc == a {
                1
            } else if arc == b {
                2
            } else {
                0
            }
        })
        .filter(|&m| m != 0)
        .collect();
    // Four marks (two per arc); non-interleaved means the cyclic word is
    // 1122 or 2211 up to rotation.
    debug_assert_eq!(marks.len(), 4);
    (0..4).any(|r| {
        let w: Vec<u8> = (0..4).map(|i| marks[(r + i) % 4]).collect();
        w == [1, 1, 2, 2] || w == [2, 2, 1, 1]
    })
}

/// Decide primality; returns a disqualifying witness when not prime.
pub fn is_prime(f: &FlatDiagram) -> (bool, Option<PrimalityWitness>) {
    for w in one_point_circles(f) {
        if w.disqualifies() {
            return (false, Some(w));
        }
    }
    for w in two_point_circles(f) {
        if w.disqualifies() {
            return (false, Some(w));
        }
    }
    (true, None)
}

/// Contract the endpoint-free side of a two-point circle to a simple arc.
/// Height is preserved; the crossing count drops by the crossings inside.
pub fn contract_two_point_circle(
    f: &FlatDiagram,
    w: &PrimalityWitness,
) -> Result<FlatDiagram, PrimalityError> {
    if w.kind != WitnessKind::TwoPoint {
        return Err(PrimalityError::BadWitness("expected a two-point witness".into()));
    }
    let (a, b) = (w.arcs[0].index(), w.arcs[1].index());
    // The piece between the cuts carries no endpoint; the outside carries
    // both. A witness with endpoints on both sides cannot arise here.
    let keep: Vec<usize> = (0..f.seq().len()).filter(|&p| p < a || p >= b).collect();
    rebuild(f, &keep)
}

/// Split at a one-point circle into the two diagrams on its sides.
pub fn split_one_point_circle(
    f: &FlatDiagram,
    w: &PrimalityWitness,
) -> Result<(FlatDiagram, FlatDiagram), PrimalityError> {
    if w.kind != WitnessKind::OnePoint {
        return Err(PrimalityError::BadWitness("expected a one-point witness".into()));
    }
    if !w.disqualifies() {
        return Err(PrimalityError::BadWitness(
            "splitting requires crossings on both sides".into(),
        ));
    }
    let cut = w.arcs[0].index();
    let first: Vec<usize> = (0..cut).collect();
    let second: Vec<usize> = (cut..f.seq().len()).collect();
    Ok((rebuild(f, &first)?, rebuild(f, &second)?))
}

fn rebuild(f: &FlatDiagram, positions: &[usize]) -> Result<FlatDiagram, PrimalityError> {
    let labels: Vec<u32> = positions.iter().map(|&p| f.seq()[p].0).collect();
    let signs: Vec<Sign> = (1..=f.crossings())
        .map(|i| f.chirality()[i - 1])
        .collect();
    Ok(FlatDiagram::new(labels, signs)?)
}

/// One step of the reduction applied by [`prime_decompose`].
#[derive(Debug, Clone)]
pub struct ReductionStep {
    pub input: String,
    pub witness: PrimalityWitness,
    pub outputs: Vec<String>,
}

/// Repeatedly contract and split until every piece is prime. The sum of the
/// heights of the pieces equals the height of the input, and the total
/// crossing count never increases.
pub fn prime_decompose(f: &FlatDiagram) -> (Vec<FlatDiagram>, Vec<ReductionStep>) {
    let mut pieces = Vec::new();
    let mut trace = Vec::new();
    let mut stack = vec![f.clone()];
    while let Some(cur) = stack.pop() {
        let (prime, witness) = is_prime(&cur);
        if prime {
            pieces.push(cur);
            continue;
        }
        let w = witness.expect("non-prime diagram has a witness");
        match w.kind {
            WitnessKind::OnePoint => {
                let (f1, f2) = split_one_point_circle(&cur, &w)
                    .expect("disqualifying one-point witness splits");
                trace.push(ReductionStep {
                    input: cur.code(),
                    witness: w,
                    outputs: vec![f1.code(), f2.code()],
                });
                stack.push(f2);
                stack.push(f1);
            }
            WitnessKind::TwoPoint => {
                let next = contract_two_point_circle(&cur, &w)
                    .expect("two-point witness contracts");
                trace.push(ReductionStep {
                    input: cur.code(),
                    witness: w,
                    outputs: vec![next.code()],
                });
                stack.push(next);
            }
        }
    }
    pieces.reverse();
    (pieces, trace)
}
