//! Text codes for flat knotoid, knotoid and knot diagrams.
//!
//! A code is a single ASCII line: a header (`flatknotoid`, `knotoid` or
//! `knot`) followed by whitespace-separated visit tokens. A flat token is
//! `c+` or `c-` where `c >= 1` is the crossing label; knotoid and knot tokens
//! carry a pass prefix, `Oc+` / `Uc-`. `#` starts a comment running to the
//! end of the line. Both occurrences of a label must carry the same sign:
//! the sign is an attribute of the crossing, not of the visit.
//!
//! Sign semantics: orient the strand from beginning to end. A crossing is
//! `+` when the frame (first-visit direction, second-visit direction) is
//! positively (counterclockwise) oriented; equivalently the counterclockwise
//! rotation of the four incident arc-ends is (first-in, second-in,
//! first-out, second-out). For `-` it is (first-in, second-out, first-out,
//! second-in).
//!
//! Every constructor canonicalizes: crossing labels are renumbered in first
//! occurrence order, and a closed diagram is stored in the rotation of its
//! cyclic visit list that minimizes the token sequence. Parsing therefore
//! composes with serialization to give canonical codes, and serialization of
//! a canonical code round-trips exactly.

use std::fmt;

use thiserror::Error;

use crate::planar;

/// Identifier of a crossing, `1..=n` in canonical labelling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CrossingId(pub u32);

impl CrossingId {
    /// Zero-based index, for table lookups.
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }

    pub(crate) fn from_index(i: usize) -> Self {
        CrossingId(i as u32 + 1)
    }
}

impl fmt::Display for CrossingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Chirality of a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn token(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Pass data of a single visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pass {
    Flat,
    Over,
    Under,
}

/// Which of the two visits to a crossing this one is, counted along the
/// strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Occurrence {
    First,
    Second,
}

/// One visit to a crossing along the strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Visit {
    pub crossing: CrossingId,
    pub pass: Pass,
    pub occurrence: Occurrence,
}

/// What went wrong while reading a code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeErrorKind {
    /// The line does not match the grammar.
    Malformed,
    /// Some label does not occur exactly twice (once over and once under for
    /// diagrams with pass data).
    LabelCount,
    /// The two occurrences of a label carry different signs.
    SignMismatch,
    /// The signed code admits no embedding in the sphere.
    NotSpherical,
}

impl fmt::Display for CodeErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CodeErrorKind::Malformed => "MALFORMED",
            CodeErrorKind::LabelCount => "LABEL_COUNT",
            CodeErrorKind::SignMismatch => "SIGN_MISMATCH",
            CodeErrorKind::NotSpherical => "NOT_SPHERICAL",
        };
        f.write_str(s)
    }
}

/// Parse failure, carrying exactly one kind and a human-readable detail.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("{kind}: {detail}")]
pub struct CodeError {
    pub kind: CodeErrorKind,
    pub detail: String,
}

impl CodeError {
    fn new(kind: CodeErrorKind, detail: impl Into<String>) -> Self {
        CodeError { kind, detail: detail.into() }
    }
}

/// Read access shared by all diagram kinds; enough to rebuild the spherical
/// embedding.
pub trait Diagram {
    /// Visit sequence as crossing ids, canonical labels.
    fn seq(&self) -> &[CrossingId];
    /// Chirality per crossing, indexed by `CrossingId::index`.
    fn chirality(&self) -> &[Sign];
    /// Closed curve (knot) or open strand (knotoid)?
    fn is_closed(&self) -> bool;

    fn crossings(&self) -> usize {
        self.chirality().len()
    }

    /// Number of arcs: `2n + 1` for an open diagram, `2n` for a closed one.
    fn num_arcs(&self) -> usize {
        if self.is_closed() {
            self.seq().len()
        } else {
            self.seq().len() + 1
        }
    }
}

/// Positions of the two visits of every crossing, indexed by crossing.
pub(crate) fn visit_positions(seq: &[CrossingId], n: usize) -> Vec<(usize, usize)> {
    let mut first = vec![usize::MAX; n];
    let mut out = vec![(usize::MAX, usize::MAX); n];
    for (p, c) in seq.iter().enumerate() {
        let i = c.index();
        if first[i] == usize::MAX {
            first[i] = p;
        } else {
            out[i] = (first[i], p);
        }
    }
    out
}

fn occurrences(seq: &[CrossingId]) -> Vec<Occurrence> {
    let mut seen = vec![false; seq.len()];
    seq.iter()
        .map(|c| {
            let i = c.index();
            if seen[i] {
                Occurrence::Second
            } else {
                seen[i] = true;
                Occurrence::First
            }
        })
        .collect()
}

/// A flat knotoid diagram: an open generic immersion of an interval in the
/// sphere, crossings without over/under data.
///
/// Arc `e_i` lies between consecutive visits; `e_0` and `e_{2n}` are the
/// outer edges adjacent to the endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlatDiagram {
    seq: Vec<CrossingId>,
    chirality: Vec<Sign>,
}

impl Diagram for FlatDiagram {
    fn seq(&self) -> &[CrossingId] {
        &self.seq
    }
    fn chirality(&self) -> &[Sign] {
        &self.chirality
    }
    fn is_closed(&self) -> bool {
        false
    }
}

impl FlatDiagram {
    /// The embedded arc: no crossings, one edge.
    pub fn trivial() -> Self {
        FlatDiagram { seq: Vec::new(), chirality: Vec::new() }
    }

    /// Build from raw labels and per-label signs (indexed by `label - 1`);
    /// relabels canonically and verifies sphericity.
    pub fn new(labels: Vec<u32>, signs: Vec<Sign>) -> Result<Self, CodeError> {
        if let Some(&bad) = labels.iter().find(|&&l| l == 0 || l as usize > signs.len()) {
            return Err(CodeError::new(
                CodeErrorKind::Malformed,
                format!("label {bad} has no sign entry"),
            ));
        }
        let raw: Vec<RawVisit> = labels
            .iter()
            .zip(signs_by_visit(&labels, &signs))
            .map(|(&label, sign)| RawVisit { label, sign, pass: Pass::Flat })
            .collect();
        let (seq, chirality, _) = canonicalize_open(&raw, false)?;
        let d = FlatDiagram { seq, chirality };
        check_spherical(&d)?;
        Ok(d)
    }

    /// Caller guarantees canonical labels and sphericity.
    pub(crate) fn from_canonical_unchecked(seq: Vec<CrossingId>, chirality: Vec<Sign>) -> Self {
        FlatDiagram { seq, chirality }
    }

    pub fn chirality_of(&self, c: CrossingId) -> Sign {
        self.chirality[c.index()]
    }

    pub fn visits(&self) -> Vec<Visit> {
        occurrences(&self.seq)
            .into_iter()
            .zip(&self.seq)
            .map(|(occurrence, &crossing)| Visit { crossing, pass: Pass::Flat, occurrence })
            .collect()
    }

    /// Serialized canonical code.
    pub fn code(&self) -> String {
        let mut s = String::from("flatknotoid");
        for (p, c) in self.seq.iter().enumerate() {
            let _ = p;
            s.push(' ');
            s.push_str(&c.0.to_string());
            s.push(self.chirality[c.index()].token());
        }
        s
    }
}

/// A knotoid diagram: a [`FlatDiagram`] together with over/under data.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KnotoidDiagram {
    flat: FlatDiagram,
    /// Per crossing: is the first visit the over-pass?
    first_over: Vec<bool>,
}

impl Diagram for KnotoidDiagram {
    fn seq(&self) -> &[CrossingId] {
        self.flat.seq()
    }
    fn chirality(&self) -> &[Sign] {
        self.flat.chirality()
    }
    fn is_closed(&self) -> bool {
        false
    }
}

impl KnotoidDiagram {
    pub fn trivial() -> Self {
        KnotoidDiagram { flat: FlatDiagram::trivial(), first_over: Vec::new() }
    }

    pub(crate) fn from_parts_unchecked(flat: FlatDiagram, first_over: Vec<bool>) -> Self {
        KnotoidDiagram { flat, first_over }
    }

    /// The flat projection: same visit sequence and chirality, pass data
    /// dropped.
    pub fn forget_over_under(&self) -> FlatDiagram {
        self.flat.clone()
    }

    pub fn chirality_of(&self, c: CrossingId) -> Sign {
        self.flat.chirality_of(c)
    }

    /// Is the first visit of `c` the over-pass?
    pub fn first_visit_over(&self, c: CrossingId) -> bool {
        self.first_over[c.index()]
    }

    pub fn visits(&self) -> Vec<Visit> {
        occurrences(self.seq())
            .into_iter()
            .zip(self.seq())
            .map(|(occurrence, &crossing)| {
                let over_first = self.first_over[crossing.index()];
                let over = match occurrence {
                    Occurrence::First => over_first,
                    Occurrence::Second => !over_first,
                };
                Visit {
                    crossing,
                    pass: if over { Pass::Over } else { Pass::Under },
                    occurrence,
                }
            })
            .collect()
    }

    pub fn code(&self) -> String {
        let mut s = String::from("knotoid");
        for v in self.visits() {
            s.push(' ');
            s.push(if v.pass == Pass::Over { 'O' } else { 'U' });
            s.push_str(&v.crossing.0.to_string());
            s.push(self.flat.chirality[v.crossing.index()].token());
        }
        s
    }
}

/// A knot diagram: a closed curve with over/under data, stored in the
/// rotation of its cyclic visit list that minimizes the token sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KnotDiagram {
    seq: Vec<CrossingId>,
    chirality: Vec<Sign>,
    first_over: Vec<bool>,
}

impl Diagram for KnotDiagram {
    fn seq(&self) -> &[CrossingId] {
        &self.seq
    }
    fn chirality(&self) -> &[Sign] {
        &self.chirality
    }
    fn is_closed(&self) -> bool {
        true
    }
}

impl KnotDiagram {
    pub fn chirality_of(&self, c: CrossingId) -> Sign {
        self.chirality[c.index()]
    }

    pub fn first_visit_over(&self, c: CrossingId) -> bool {
        self.first_over[c.index()]
    }

    pub fn visits(&self) -> Vec<Visit> {
        occurrences(&self.seq)
            .into_iter()
            .zip(&self.seq)
            .map(|(occurrence, &crossing)| {
                let over_first = self.first_over[crossing.index()];
                let over = match occurrence {
                    Occurrence::First => over_first,
                    Occurrence::Second => !over_first,
                };
                Visit {
                    crossing,
                    pass: if over { Pass::Over } else { Pass::Under },
                    occurrence,
                }
            })
            .collect()
    }

    pub fn code(&self) -> String {
        let mut s = String::from("knot");
        for v in self.visits() {
            s.push(' ');
            s.push(if v.pass == Pass::Over { 'O' } else { 'U' });
            s.push_str(&v.crossing.0.to_string());
            s.push(self.chirality[v.crossing.index()].token());
        }
        s
    }
}

/// Serialize any diagram back to its canonical code line.
pub fn serialize<D: Code>(d: &D) -> String {
    d.canonical_code()
}

/// Diagrams that have a canonical text code.
pub trait Code {
    fn canonical_code(&self) -> String;
}

impl Code for FlatDiagram {
    fn canonical_code(&self) -> String {
        self.code()
    }
}
impl Code for KnotoidDiagram {
    fn canonical_code(&self) -> String {
        self.code()
    }
}
impl Code for KnotDiagram {
    fn canonical_code(&self) -> String {
        self.code()
    }
}

// ---------------------------------------------------------------------------
// Raw tokens and canonicalization
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
pub(crate) struct RawVisit {
    pub label: u32,
    pub sign: Sign,
    pub pass: Pass,
}

fn signs_by_visit(labels: &[u32], signs: &[Sign]) -> Vec<Sign> {
    labels.iter().map(|&l| signs[l as usize - 1]).collect()
}

/// Relabelled visit sequence, per-crossing signs, and per-crossing
/// first-visit-over flags.
pub(crate) type CanonicalParts = (Vec<CrossingId>, Vec<Sign>, Vec<bool>);

/// First-occurrence relabelling of an open visit list. Checks label counts,
/// sign coherence and (when `with_pass`) the over-once/under-once rule.
pub(crate) fn canonicalize_open(
    raw: &[RawVisit],
    with_pass: bool,
) -> Result<CanonicalParts, CodeError> {
    use std::collections::HashMap;

    let mut rename: HashMap<u32, u32> = HashMap::new();
    let mut seq = Vec::with_capacity(raw.len());
    let mut chirality: Vec<Sign> = Vec::new();
    let mut first_over: Vec<bool> = Vec::new();
    let mut seen_passes: Vec<Vec<Pass>> = Vec::new();
    let mut counts: HashMap<u32, u32> = HashMap::new();

    for v in raw {
        *counts.entry(v.label).or_insert(0) += 1;
        let next = rename.len() as u32 + 1;
        let id = *rename.entry(v.label).or_insert(next);
        let idx = id as usize - 1;
        if idx == chirality.len() {
            chirality.push(v.sign);
            first_over.push(v.pass == Pass::Over);
            seen_passes.push(vec![v.pass]);
        } else {
            if chirality[idx] != v.sign {
                return Err(CodeError::new(
                    CodeErrorKind::SignMismatch,
                    format!("label {} occurs with both signs", v.label),
                ));
            }
            seen_passes[idx].push(v.pass);
        }
        seq.push(CrossingId(id));
    }

    for (&label, &count) in counts.iter() {
        if count != 2 {
            return Err(CodeError::new(
                CodeErrorKind::LabelCount,
                format!("label {label} appears {count} times, expected 2"),
            ));
        }
    }
    if with_pass {
        for (idx, passes) in seen_passes.iter().enumerate() {
            let overs = passes.iter().filter(|&&p| p == Pass::Over).count();
            if passes.len() == 2 && overs != 1 {
                let label = raw
                    .iter()
                    .find(|v| rename[&v.label] == idx as u32 + 1)
                    .map(|v| v.label)
                    .unwrap_or(0);
                return Err(CodeError::new(
                    CodeErrorKind::LabelCount,
                    format!("label {label} must occur once over and once under"),
                ));
            }
        }
    }
    Ok((seq, chirality, first_over))
}

fn check_spherical<D: Diagram>(d: &D) -> Result<(), CodeError> {
    let map = planar::trace_faces(d);
    if map.is_spherical() {
        Ok(())
    } else {
        Err(CodeError::new(
            CodeErrorKind::NotSpherical,
            format!(
                "face tracing yields {} faces, expected {}",
                map.num_faces(),
                map.expected_faces()
            ),
        ))
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

fn strip_comment(text: &str) -> &str {
    match text.find('#') {
        Some(i) => &text[..i],
        None => text,
    }
}

fn parse_token(tok: &str, with_pass: bool) -> Result<RawVisit, CodeError> {
    let malformed = || CodeError::new(CodeErrorKind::Malformed, format!("bad token `{tok}`"));
    let mut rest = tok;
    let pass = if with_pass {
        let c = rest.chars().next().ok_or_else(malformed)?;
        rest = &rest[c.len_utf8()..];
        match c {
            'O' => Pass::Over,
            'U' => Pass::Under,
            _ => return Err(malformed()),
        }
    } else {
        Pass::Flat
    };
    let sign = match rest.chars().last() {
        Some('+') => Sign::Plus,
        Some('-') => Sign::Minus,
        _ => return Err(malformed()),
    };
    let digits = &rest[..rest.len() - 1];
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(malformed());
    }
    let label: u32 = digits.parse().map_err(|_| malformed())?;
    if label == 0 {
        return Err(malformed());
    }
    Ok(RawVisit { label, sign, pass })
}

fn parse_line(text: &str, header: &str, with_pass: bool) -> Result<Vec<RawVisit>, CodeError> {
    if !text.is_ascii() {
        return Err(CodeError::new(CodeErrorKind::Malformed, "code must be ASCII"));
    }
    let mut toks = strip_comment(text).split_whitespace();
    match toks.next() {
        Some(h) if h == header => {}
        other => {
            return Err(CodeError::new(
                CodeErrorKind::Malformed,
                format!("expected header `{header}`, got `{}`", other.unwrap_or("")),
            ))
        }
    }
    toks.map(|t| parse_token(t, with_pass)).collect()
}

/// Parse a flat knotoid code, e.g. `flatknotoid 1+ 2- 1+ 2-`.
pub fn parse_flat_code(text: &str) -> Result<FlatDiagram, CodeError> {
    let raw = parse_line(text, "flatknotoid", false)?;
    let (seq, chirality, _) = canonicalize_open(&raw, false)?;
    let d = FlatDiagram { seq, chirality };
    check_spherical(&d)?;
    Ok(d)
}

/// Parse a knotoid code, e.g. `knotoid O1+ U2- U1+ O2-`.
pub fn parse_knotoid_code(text: &str) -> Result<KnotoidDiagram, CodeError> {
    let raw = parse_line(text, "knotoid", true)?;
    let (seq, chirality, first_over) = canonicalize_open(&raw, true)?;
    let d = KnotoidDiagram { flat: FlatDiagram { seq, chirality }, first_over };
    check_spherical(&d.flat)?;
    Ok(d)
}

/// Parse a knot code, e.g. `knot O1+ U2- O3+ U1+ O2- U3+`. The empty closed
/// code is rejected.
pub fn parse_knot_code(text: &str) -> Result<KnotDiagram, CodeError> {
    let raw = parse_line(text, "knot", true)?;
    if raw.is_empty() {
        return Err(CodeError::new(CodeErrorKind::Malformed, "empty closed diagram"));
    }
    let d = knot_from_raw(&raw)?;
    check_spherical(&d)?;
    Ok(d)
}

/// Rotate a closed raw visit list to start at position `r`, flipping the
/// sign of every crossing whose two visits straddle the new start: the sign
/// describes the frame (first-visit direction, second-visit direction), so
/// it is relative to the reading order, and swapping the visits of a
/// crossing negates it.
pub(crate) fn rotate_raw(raw: &[RawVisit], r: usize) -> Vec<RawVisit> {
    use std::collections::HashMap;
    let len = raw.len();
    let mut first_pos: HashMap<u32, usize> = HashMap::new();
    let mut straddled: Vec<u32> = Vec::new();
    for (p, v) in raw.iter().enumerate() {
        match first_pos.get(&v.label) {
            None => {
                first_pos.insert(v.label, p);
            }
            Some(&p1) => {
                if p1 < r && r <= p {
                    straddled.push(v.label);
                }
            }
        }
    }
    (0..len)
        .map(|i| {
            let mut v = raw[(r + i) % len];
            if straddled.contains(&v.label) {
                v.sign = v.sign.flipped();
            }
            v
        })
        .collect()
}

/// Canonicalize a closed raw visit list: minimal over all rotations of the
/// first-occurrence relabelled token sequence. Strand reversal and mirroring
/// are deliberately not quotiented.
pub(crate) fn knot_from_raw(raw: &[RawVisit]) -> Result<KnotDiagram, CodeError> {
    let len = raw.len();
    type Key = Vec<(Pass, u32, Sign)>;
    let mut best: Option<(Key, KnotDiagram)> = None;
    for r in 0..len {
        let rotated = rotate_raw(raw, r);
        let (seq, chirality, first_over) = canonicalize_open(&rotated, true)?;
        let d = KnotDiagram { seq, chirality, first_over };
        let key: Vec<(Pass, u32, Sign)> = d
            .visits()
            .iter()
            .map(|v| (v.pass, v.crossing.0, d.chirality[v.crossing.index()]))
            .collect();
        // Pass sorts Flat < Over < Under by declaration order; closed codes
        // never contain Flat so the order is O before U.
        let replace = match &best {
            None => true,
            Some((k, _)) => key_lt(&key, k),
        };
        if replace {
            best = Some((key, d));
        }
    }
    Ok(best.expect("non-empty closed code").1)
}

fn key_lt(a: &[(Pass, u32, Sign)], b: &[(Pass, u32, Sign)]) -> bool {
    let rank = |p: Pass| match p {
        Pass::Over => 0u8,
        Pass::Under => 1,
        Pass::Flat => 2,
    };
    for (x, y) in a.iter().zip(b) {
        let kx = (rank(x.0), x.1, x.2);
        let ky = (rank(y.0), y.1, y.2);
        if kx != ky {
            return kx < ky;
        }
    }
    false
}

/// Drop over/under data.
pub fn forget_over_under(d: &KnotoidDiagram) -> FlatDiagram {
    d.forget_over_under()
}

/// Canonical code of any diagram. Idempotent: parsing the result and
/// serializing again returns the same string.
pub fn canonical_code<D: Code>(d: &D) -> String {
    d.canonical_code()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_codes() {
        let d = parse_flat_code("flatknotoid").unwrap();
        assert_eq!(d.crossings(), 0);
        assert_eq!(d.num_arcs(), 1);
        assert_eq!(d.code(), "flatknotoid");
    }

    #[test]
    fn one_crossing_both_signs() {
        for code in ["flatknotoid 1+ 1+", "flatknotoid 1- 1-"] {
            let d = parse_flat_code(code).unwrap();
            assert_eq!(d.crossings(), 1);
            assert_eq!(d.code(), code);
        }
    }

    #[test]
    fn label_count_rejected() {
        let err = parse_flat_code("flatknotoid 1+ 2+ 1+").unwrap_err();
        assert_eq!(err.kind, CodeErrorKind::LabelCount);
        let err = parse_knotoid_code("knotoid O1+ O1+").unwrap_err();
        assert_eq!(err.kind, CodeErrorKind::LabelCount);
    }

    #[test]
    fn sign_mismatch_rejected() {
        let err = parse_knot_code("knot O1+ U1-").unwrap_err();
        assert_eq!(err.kind, CodeErrorKind::SignMismatch);
    }

    #[test]
    fn empty_knot_rejected() {
        let err = parse_knot_code("knot").unwrap_err();
        assert_eq!(err.kind, CodeErrorKind::Malformed);
    }

    #[test]
    fn comments_and_whitespace() {
        let d = parse_flat_code("flatknotoid 1+ 1+   # a kink").unwrap();
        assert_eq!(d.code(), "flatknotoid 1+ 1+");
    }

    #[test]
    fn clasp_realizable_signings() {
        // Of the four sign vectors on the sequence 1 2 1 2, face tracing
        // accepts exactly the two mixed ones.
        assert!(parse_flat_code("flatknotoid 1+ 2- 1+ 2-").is_ok());
        assert!(parse_flat_code("flatknotoid 1- 2+ 1- 2+").is_ok());
        for code in ["flatknotoid 1+ 2+ 1+ 2+", "flatknotoid 1- 2- 1- 2-"] {
            let err = parse_flat_code(code).unwrap_err();
            assert_eq!(err.kind, CodeErrorKind::NotSpherical);
        }
    }

    #[test]
    fn non_canonical_labels_relabelled() {
        let d = parse_flat_code("flatknotoid 2+ 1- 2+ 1-").unwrap();
        assert_eq!(d.code(), "flatknotoid 1+ 2- 1+ 2-");
    }

    #[test]
    fn forget_drops_passes() {
        let k = parse_knotoid_code("knotoid O1+ U1+").unwrap();
        assert_eq!(k.forget_over_under().code(), "flatknotoid 1+ 1+");
    }

    #[test]
    fn knotoid_flat_projection_must_be_spherical() {
        let err = parse_knotoid_code("knotoid O1+ O2+ U1+ U2+").unwrap_err();
        assert_eq!(err.kind, CodeErrorKind::NotSpherical);
        let k = parse_knotoid_code("knotoid O1+ U2- U1+ O2-").unwrap();
        assert_eq!(k.crossings(), 2);
    }

    #[test]
    fn knot_rotation_canonical() {
        // The same closed curve read from two different start points: the
        // crossing whose visits straddle the new start point changes sign.
        let a = parse_knot_code("knot O1- U2+ O3- U1- O2+ U3-").unwrap();
        let b = parse_knot_code("knot U2+ O3- U1+ O2+ U3- O1+").unwrap();
        assert_eq!(a.code(), b.code());
        assert_eq!(a, b);
    }

    #[test]
    fn every_rotation_reads_the_same_knot() {
        // Rotating the reading start around the closed curve must leave the
        // embedding (face count) and the canonical form unchanged.
        for code in [
            "knot O1- U2+ O3- U1- O2+ U3-",
            "knot O1+ U2- O3- U4+ O2- U1+ O4+ U3-",
        ] {
            let d = parse_knot_code(code).unwrap();
            let raw: Vec<RawVisit> = d
                .visits()
                .iter()
                .map(|v| RawVisit {
                    label: v.crossing.0,
                    sign: d.chirality()[v.crossing.index()],
                    pass: v.pass,
                })
                .collect();
            for r in 0..raw.len() {
                let rotated = rotate_raw(&raw, r);
                let (seq, chirality, _) = canonicalize_open(&rotated, true).unwrap();
                let view = KnotDiagram {
                    seq,
                    chirality,
                    first_over: vec![false; d.crossings()],
                };
                assert!(
                    crate::planar::trace_faces(&view).is_spherical(),
                    "{code} rotated by {r}"
                );
                let reparsed = knot_from_raw(&rotated).unwrap();
                assert_eq!(reparsed.code(), d.code(), "{code} rotated by {r}");
            }
        }
    }
}
