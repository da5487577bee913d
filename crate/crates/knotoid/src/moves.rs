//! Reidemeister rewrites on diagram codes: kink insertion and deletion, and
//! pushing one arc across another through a shared face.
//!
//! Moves are local to arcs and never slide across the endpoints of an open
//! diagram. Every rewrite returns a fresh canonical diagram; insert followed
//! by the matching delete at the same site is the identity on codes.

use thiserror::Error;

use crate::codec::{
    canonicalize_open, knot_from_raw, CodeError, CrossingId, Diagram, FlatDiagram, KnotDiagram,
    KnotoidDiagram, Pass, RawVisit, Sign,
};
use crate::planar::{self, arc_of, ArcId};

/// On which side of the travel direction the kink loop bulges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoopSide {
    Left,
    Right,
}

/// Writhe contribution of an inserted kink.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Writhe {
    Positive,
    Negative,
}

/// Which of the two strands of a push-across passes over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OverStrand {
    /// The strand of `arc_a` (the pushed finger) goes over both crossings.
    First,
    /// The strand of `arc_b` goes over.
    Second,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum MoveError {
    #[error("PATTERN_NOT_FOUND: {0}")]
    PatternNotFound(String),
    #[error("NOT_ADJACENT: {0}")]
    NotAdjacent(String),
    #[error("arc index out of range")]
    ArcOutOfRange,
    #[error("rewrite produced an invalid code: {0}")]
    Internal(#[from] CodeError),
}

/// Visit-level raw form shared by all diagram kinds.
#[doc(hidden)]
#[derive(Debug, Clone)]
pub struct RawParts {
    pub labels: Vec<u32>,
    pub passes: Vec<Pass>,
    /// Per label (1-based), aligned with `labels`.
    pub signs: Vec<Sign>,
    pub closed: bool,
}

impl RawParts {
    fn visits(&self) -> Vec<RawVisit> {
        self.labels
            .iter()
            .zip(&self.passes)
            .map(|(&label, &pass)| RawVisit {
                label,
                sign: self.signs[label as usize - 1],
                pass,
            })
            .collect()
    }
}

/// Diagram kinds that support the rewrites in this module.
pub trait Movable: Diagram + Sized {
    /// Does this kind carry over/under data?
    #[doc(hidden)]
    const HAS_PASSES: bool;
    #[doc(hidden)]
    fn decompose(&self) -> RawParts;
    /// Rebuild canonically; returns the diagram and the map from raw visit
    /// positions to positions in the rebuilt diagram.
    #[doc(hidden)]
    fn recompose(parts: RawParts) -> Result<(Self, Vec<usize>), CodeError>;
}

fn decompose_open<D: Diagram>(d: &D, passes: Vec<Pass>) -> RawParts {
    RawParts {
        labels: d.seq().iter().map(|c| c.0).collect(),
        passes,
        signs: d.chirality().to_vec(),
        closed: d.is_closed(),
    }
}

impl Movable for FlatDiagram {
    const HAS_PASSES: bool = false;

    fn decompose(&self) -> RawParts {
        let passes = vec![Pass::Flat; self.seq().len()];
        decompose_open(self, passes)
    }

    fn recompose(parts: RawParts) -> Result<(Self, Vec<usize>), CodeError> {
        let raw = parts.visits();
        let (seq, chirality, _) = canonicalize_open(&raw, false)?;
        let d = FlatDiagram::from_canonical_unchecked(seq, chirality);
        ensure_spherical(&d)?;
        let map = (0..parts.labels.len()).collect();
        Ok((d, map))
    }
}

impl Movable for KnotoidDiagram {
    const HAS_PASSES: bool = true;

    fn decompose(&self) -> RawParts {
        let passes = self.visits().iter().map(|v| v.pass).collect();
        decompose_open(self, passes)
    }

    fn recompose(parts: RawParts) -> Result<(Self, Vec<usize>), CodeError> {
        let raw = parts.visits();
        let (seq, chirality, first_over) = canonicalize_open(&raw, true)?;
        let flat = FlatDiagram::from_canonical_unchecked(seq, chirality);
        ensure_spherical(&flat)?;
        let d = KnotoidDiagram::from_parts_unchecked(flat, first_over);
        let map = (0..parts.labels.len()).collect();
        Ok((d, map))
    }
}

impl Movable for KnotDiagram {
    const HAS_PASSES: bool = true;

    fn decompose(&self) -> RawParts {
        let passes = self.visits().iter().map(|v| v.pass).collect();
        RawParts {
            labels: self.seq().iter().map(|c| c.0).collect(),
            passes,
            signs: self.chirality().to_vec(),
            closed: true,
        }
    }

    fn recompose(parts: RawParts) -> Result<(Self, Vec<usize>), CodeError> {
        let raw = parts.visits();
        let d = knot_from_raw(&raw)?;
        ensure_spherical(&d)?;
        // Recover the rotation that canonicalization chose by matching the
        // relabelled raw list against the stored visit sequence.
        let len = raw.len();
        let r = rotation_offset(&raw, &d).ok_or_else(|| CodeError {
            kind: crate::codec::CodeErrorKind::Malformed,
            detail: "rotation recovery failed".into(),
        })?;
        let map = (0..len).map(|p| (p + len - r) % len).collect();
        Ok((d, map))
    }
}

fn rotation_offset(raw: &[RawVisit], d: &KnotDiagram) -> Option<usize> {
    let len = raw.len();
    (0..len).find(|&r| {
        let rotated = crate::codec::rotate_raw(raw, r);
        match canonicalize_open(&rotated, true) {
            Ok((seq, chirality, first_over)) => {
                seq == d.seq()
                    && chirality == d.chirality()
                    && (0..chirality.len())
                        .all(|i| first_over[i] == d.first_visit_over(CrossingId::from_index(i)))
            }
            Err(_) => false,
        }
    })
}

fn ensure_spherical<D: Diagram>(d: &D) -> Result<(), CodeError> {
    let map = planar::trace_faces(d);
    if map.is_spherical() {
        Ok(())
    } else {
        Err(CodeError {
            kind: crate::codec::CodeErrorKind::NotSpherical,
            detail: "rewrite left the sphere".into(),
        })
    }
}

/// Visit index at which an insertion lands on the given arc.
fn insertion_index(parts: &RawParts, arc: usize) -> usize {
    if parts.closed {
        arc + 1
    } else {
        arc
    }
}

fn num_arcs(parts: &RawParts) -> usize {
    if parts.closed {
        parts.labels.len()
    } else {
        parts.labels.len() + 1
    }
}

/// Insert a kink on the given arc. The loop side fixes the chirality (a
/// right-curling loop is `+`), the writhe fixes which pass comes first; the
/// writhe is ignored for flat diagrams.
pub fn r1_insert<D: Movable>(
    d: &D,
    arc: ArcId,
    side: LoopSide,
    writhe: Writhe,
) -> Result<(D, CrossingId), MoveError> {
    let mut parts = d.decompose();
    if arc.index() >= num_arcs(&parts) {
        return Err(MoveError::ArcOutOfRange);
    }
    let sign = match side {
        LoopSide::Right => Sign::Plus,
        LoopSide::Left => Sign::Minus,
    };
    let label = parts.signs.len() as u32 + 1;
    parts.signs.push(sign);
    let (pass1, pass2) = if !D::HAS_PASSES {
        (Pass::Flat, Pass::Flat)
    } else {
        let writhe_sign = match writhe {
            Writhe::Positive => Sign::Plus,
            Writhe::Negative => Sign::Minus,
        };
        if writhe_sign == sign {
            (Pass::Over, Pass::Under)
        } else {
            (Pass::Under, Pass::Over)
        }
    };
    let at = insertion_index(&parts, arc.index());
    parts.labels.splice(at..at, [label, label]);
    parts.passes.splice(at..at, [pass1, pass2]);
    let (out, pos_map) = D::recompose(parts)?;
    let c = out.seq()[pos_map[at]];
    Ok((out, c))
}

/// Crossings whose two visits are adjacent along the strand.
fn find_adjacent_pair<D: Diagram>(d: &D) -> Vec<CrossingId> {
    let seq = d.seq();
    let len = seq.len();
    let mut out = Vec::new();
    if len < 2 {
        return out;
    }
    let last = if d.is_closed() { len } else { len - 1 };
    for p in 0..last {
        let q = (p + 1) % len;
        if seq[p] == seq[q] {
            out.push(seq[p]);
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Delete the kink at the given crossing: its two visits must be adjacent
/// along the strand.
pub fn r1_delete<D: Movable>(d: &D, c: CrossingId) -> Result<D, MoveError> {
    let parts = d.decompose();
    let len = parts.labels.len();
    if c.index() >= parts.signs.len() {
        return Err(MoveError::PatternNotFound(format!("no crossing {c}")));
    }
    let label = c.0;
    let positions: Vec<usize> =
        (0..len).filter(|&p| parts.labels[p] == label).collect();
    let adjacent = positions.len() == 2
        && (positions[1] == positions[0] + 1
            || (parts.closed && positions[0] == 0 && positions[1] == len - 1));
    if !adjacent {
        return Err(MoveError::PatternNotFound(format!(
            "visits of crossing {c} are not adjacent"
        )));
    }
    let keep: Vec<usize> = (0..len).filter(|&p| parts.labels[p] != label).collect();
    let next = RawParts {
        labels: keep.iter().map(|&p| parts.labels[p]).collect(),
        passes: keep.iter().map(|&p| parts.passes[p]).collect(),
        signs: parts.signs.clone(),
        closed: parts.closed,
    };
    let (out, _) = D::recompose(next)?;
    Ok(out)
}

/// Push `arc_a` across a face shared with `arc_b`, creating two crossings
/// that bound a new bigon. For diagrams with pass data, `over` picks the
/// strand that goes over at both; it is ignored for flat diagrams.
pub fn r2_insert<D: Movable>(
    d: &D,
    arc_a: ArcId,
    arc_b: ArcId,
    over: OverStrand,
) -> Result<(D, (CrossingId, CrossingId)), MoveError> {
    let parts = d.decompose();
    let total_arcs = num_arcs(&parts);
    if arc_a.index() >= total_arcs || arc_b.index() >= total_arcs {
        return Err(MoveError::ArcOutOfRange);
    }
    if arc_a == arc_b {
        return Err(MoveError::NotAdjacent("arcs must be distinct".into()));
    }
    let map = planar::trace_faces(d);
    let (a1, a2) = map.arc_sides(arc_a);
    let (b1, b2) = map.arc_sides(arc_b);
    let mut shared: Vec<planar::FaceId> = [a1, a2]
        .into_iter()
        .filter(|f| *f == b1 || *f == b2)
        .collect();
    shared.sort();
    shared.dedup();
    let Some(&face) = shared.first() else {
        return Err(MoveError::NotAdjacent(format!(
            "{arc_a} and {arc_b} do not border a common face"
        )));
    };

    // Darts with the shared face on the right; forward dart when the arc has
    // the face on both sides.
    let pick = |arc: ArcId| {
        let f = planar::fwd(arc.index());
        if map.face_right_of(f) == face {
            f
        } else {
            planar::bwd(arc.index())
        }
    };
    let da = pick(arc_a);
    let db = pick(arc_b);
    let ra = da % 2 == 0;
    let rb = db % 2 == 0;

    let mut parts = parts;
    let n = parts.signs.len() as u32;
    let label_n = n + 1; // crossing on the rising leg of the finger
    let label_s = n + 2; // crossing on the returning leg

    let idx_a = insertion_index(&parts, arc_a.index());
    let idx_b = insertion_index(&parts, arc_b.index());
    let a_first = idx_a < idx_b;

    let sign_n = match (a_first, rb) {
        (true, true) => Sign::Minus,
        (true, false) => Sign::Plus,
        (false, true) => Sign::Plus,
        (false, false) => Sign::Minus,
    };
    parts.signs.push(sign_n);
    parts.signs.push(sign_n.flipped());

    let (pass_a, pass_b) = if !D::HAS_PASSES {
        (Pass::Flat, Pass::Flat)
    } else {
        match over {
            OverStrand::First => (Pass::Over, Pass::Under),
            OverStrand::Second => (Pass::Under, Pass::Over),
        }
    };

    let on_a = [label_n, label_s];
    let on_b = if ra == rb { [label_s, label_n] } else { [label_n, label_s] };

    // Insert at the higher index first so the lower one stays valid.
    let mut ins = [(idx_a, on_a, pass_a), (idx_b, on_b, pass_b)];
    ins.sort_by_key(|&(i, _, _)| std::cmp::Reverse(i));
    for (i, labels, pass) in ins {
        parts.labels.splice(i..i, labels);
        parts.passes.splice(i..i, [pass, pass]);
    }

    let (out, pos_map) = D::recompose(parts)?;
    // The pair inserted at the smaller index keeps its index; the other is
    // shifted by two.
    let raw_pos_n = if a_first { idx_a } else { idx_a + 2 };
    let raw_pos_s = raw_pos_n + 1;
    let cn = out.seq()[pos_map[raw_pos_n]];
    let cs = out.seq()[pos_map[raw_pos_s]];
    ensure_bigon(&out, cn, cs)?;
    Ok((out, (cn, cs)))
}

fn ensure_bigon<D: Diagram>(d: &D, a: CrossingId, b: CrossingId) -> Result<(), MoveError> {
    if bigon_arcs(d, a, b).is_some() {
        Ok(())
    } else {
        Err(MoveError::Internal(CodeError {
            kind: crate::codec::CodeErrorKind::Malformed,
            detail: "push-across produced no bigon".into(),
        }))
    }
}

/// The two arcs bounding a bigon face between crossings `a` and `b`, if the
/// visits pair up adjacently and such a face exists.
fn bigon_arcs<D: Diagram>(d: &D, a: CrossingId, b: CrossingId) -> Option<(ArcId, ArcId)> {
    let seq = d.seq();
    let len = seq.len();
    let closed = d.is_closed();
    let pair_limit = if closed { len } else { len.saturating_sub(1) };
    let mut pairs = Vec::new();
    for p in 0..pair_limit {
        let q = (p + 1) % len;
        let (x, y) = (seq[p], seq[q]);
        if (x == a && y == b) || (x == b && y == a) {
            pairs.push((p, q));
        }
    }
    // Two disjoint adjacent pairs.
    let disjoint: Vec<&(usize, usize)> = pairs.iter().collect();
    for (i, &&(p, q)) in disjoint.iter().enumerate() {
        for &&(r, s) in disjoint.iter().skip(i + 1) {
            if p == r || p == s || q == r || q == s {
                continue;
            }
            let arc_between = |x: usize| -> usize {
                // Arc between visit x and visit x + 1.
                if closed {
                    x
                } else {
                    x + 1
                }
            };
            let m1 = ArcId(arc_between(p) as u32);
            let m2 = ArcId(arc_between(r) as u32);
            let map = planar::trace_faces(d);
            let is_bigon = (0..map.num_faces()).any(|f| {
                let darts = map.face_darts(planar::FaceId(f as u32));
                darts.len() == 2 && {
                    let arcs: Vec<usize> = darts.iter().map(|&x| arc_of(x)).collect();
                    (arcs[0] == m1.index() && arcs[1] == m2.index())
                        || (arcs[0] == m2.index() && arcs[1] == m1.index())
                }
            });
            if is_bigon {
                return Some((m1, m2));
            }
        }
    }
    None
}

/// Remove the bigon between two crossings created by a push-across: each
/// strand visits the pair adjacently, a bigon face lies between them, and
/// for diagrams with pass data one strand is over at both crossings.
pub fn r2_delete<D: Movable>(d: &D, a: CrossingId, b: CrossingId) -> Result<D, MoveError> {
    let parts = d.decompose();
    if a == b
        || a.index() >= parts.signs.len()
        || b.index() >= parts.signs.len()
    {
        return Err(MoveError::PatternNotFound("bad crossing pair".into()));
    }
    if bigon_arcs(d, a, b).is_none() {
        return Err(MoveError::PatternNotFound(format!(
            "no deletable bigon between {a} and {b}"
        )));
    }
    // Pass condition: one strand over at both crossings.
    if D::HAS_PASSES {
        let len = parts.labels.len();
        let pair_limit = if parts.closed { len } else { len - 1 };
        let mut ok = false;
        for p in 0..pair_limit {
            let q = (p + 1) % len;
            let (x, y) = (parts.labels[p], parts.labels[q]);
            if ((x == a.0 && y == b.0) || (x == b.0 && y == a.0))
                && parts.passes[p] == parts.passes[q] {
                    ok = true;
                }
        }
        if !ok {
            return Err(MoveError::PatternNotFound(
                "bigon strands are not over/over and under/under".into(),
            ));
        }
    }
    let keep: Vec<usize> = (0..parts.labels.len())
        .filter(|&p| parts.labels[p] != a.0 && parts.labels[p] != b.0)
        .collect();
    let next = RawParts {
        labels: keep.iter().map(|&p| parts.labels[p]).collect(),
        passes: keep.iter().map(|&p| parts.passes[p]).collect(),
        signs: parts.signs.clone(),
        closed: parts.closed,
    };
    let (out, _) = D::recompose(next)?;
    Ok(out)
}

/// Deterministic Reidemeister fuzzer: applies `steps` random insertions
/// (and occasional deletions of matching sites) driven by a seeded xorshift
/// generator. Used by invariance sweeps.
pub fn scramble(d: &KnotoidDiagram, steps: usize, seed: u64) -> KnotoidDiagram {
    let mut rng = XorShift64::new(seed);
    let mut cur = d.clone();
    for _ in 0..steps {
        cur = scramble_step(&cur, &mut rng);
    }
    cur
}

fn scramble_step(d: &KnotoidDiagram, rng: &mut XorShift64) -> KnotoidDiagram {
    let arcs = d.num_arcs();
    match rng.next_below(4) {
        0 => {
            // Kink insertion.
            let arc = ArcId(rng.next_below(arcs as u64) as u32);
            let side = if rng.next_below(2) == 0 { LoopSide::Left } else { LoopSide::Right };
            let writhe = if rng.next_below(2) == 0 { Writhe::Positive } else { Writhe::Negative };
            r1_insert(d, arc, side, writhe).map(|(x, _)| x).unwrap_or_else(|_| d.clone())
        }
        1 => {
            // Push-across on a random arc pair sharing a face.
            let map = planar::trace_faces(d);
            let mut candidates = Vec::new();
            for a in 0..arcs {
                for b in 0..arcs {
                    if a == b {
                        continue;
                    }
                    let (x, y) = map.arc_sides(ArcId(a as u32));
                    let (u, v) = map.arc_sides(ArcId(b as u32));
                    if x == u || x == v || y == u || y == v {
                        candidates.push((a, b));
                    }
                }
            }
            if candidates.is_empty() {
                return d.clone();
            }
            let (a, b) = candidates[rng.next_below(candidates.len() as u64) as usize];
            let over = if rng.next_below(2) == 0 { OverStrand::First } else { OverStrand::Second };
            r2_insert(d, ArcId(a as u32), ArcId(b as u32), over)
                .map(|(x, _)| x)
                .unwrap_or_else(|_| d.clone())
        }
        2 => {
            // Kink deletion when a kink exists.
            let kinks = find_adjacent_pair(d);
            if kinks.is_empty() {
                return scramble_step_insert_fallback(d, rng);
            }
            let c = kinks[rng.next_below(kinks.len() as u64) as usize];
            r1_delete(d, c).unwrap_or_else(|_| d.clone())
        }
        _ => {
            // Bigon deletion when a deletable bigon exists.
            let map = planar::trace_faces(d);
            let mut pairs = Vec::new();
            for f in 0..map.num_faces() {
                let darts = map.face_darts(planar::FaceId(f as u32));
                if darts.len() != 2 {
                    continue;
                }
                let m1 = arc_of(darts[0]);
                let m2 = arc_of(darts[1]);
                if let (Some(a), Some(b)) = (crossing_before(d, m1), crossing_before(d, m2)) {
                    if a != b && r2_delete(d, a, b).is_ok() {
                        pairs.push((a, b));
                    }
                }
            }
            if pairs.is_empty() {
                return scramble_step_insert_fallback(d, rng);
            }
            let (a, b) = pairs[rng.next_below(pairs.len() as u64) as usize];
            r2_delete(d, a, b).unwrap_or_else(|_| d.clone())
        }
    }
}

fn scramble_step_insert_fallback(d: &KnotoidDiagram, rng: &mut XorShift64) -> KnotoidDiagram {
    let arc = ArcId(rng.next_below(d.num_arcs() as u64) as u32);
    r1_insert(d, arc, LoopSide::Left, Writhe::Positive)
        .map(|(x, _)| x)
        .unwrap_or_else(|_| d.clone())
}

fn crossing_before<D: Diagram>(d: &D, arc: usize) -> Option<CrossingId> {
    // The crossing at the tail of arc `arc` (open diagrams: arc k starts at
    // visit k - 1).
    if d.is_closed() {
        Some(d.seq()[arc])
    } else if arc == 0 {
        None
    } else {
        Some(d.seq()[arc - 1])
    }
}

struct XorShift64 {
    state: u64,
}

impl XorShift64 {
    fn new(seed: u64) -> Self {
        XorShift64 { state: seed.max(1) }
    }

    fn next(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.state = x;
        x
    }

    fn next_below(&mut self, n: u64) -> u64 {
        self.next() % n.max(1)
    }
}
