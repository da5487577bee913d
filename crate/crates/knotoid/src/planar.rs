//! Spherical embedding reconstruction: combinatorial maps, face tracing,
//! dual multigraphs, and exact height via shortest dual paths.
//!
//! Every arc `e_i` of a diagram carries two darts, `2i` (along the strand
//! orientation) and `2i + 1` (reversed). The rotation at a crossing is the
//! counterclockwise cyclic order of the four outgoing darts determined by
//! the crossing sign; endpoints are univalent. Faces are the orbits of
//! `d -> sigma(alpha(d))`; with a counterclockwise rotation system each
//! orbit traverses its face with the face on the right of every dart.
//!
//! A diagram code is spherical exactly when the orbit count matches Euler's
//! formula: `n + 1` faces for an open diagram with `n` crossings, `n + 2`
//! for a closed one.
//!
//! Height of a flat diagram is computed as the breadth-first distance in the
//! dual multigraph from the face at the beginning endpoint to the face at
//! the end. An embedded arc from beginning to end meeting the diagram
//! transversely induces a dual walk with one step per intersection, and
//! every simple dual path is realizable by such an arc, so the two minima
//! agree; the exhaustive-walk oracle in the test suite cross-checks this on
//! small diagrams.

use std::collections::VecDeque;
use std::fmt;

use crate::codec::{visit_positions, CrossingId, Diagram, FlatDiagram, Sign};

/// Arc index: `e_0` is the first outer edge of an open diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArcId(pub u32);

impl ArcId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// Face id: the position of the face orbit in first-discovery order from
/// dart 0, which makes ids stable across runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FaceId(pub u32);

impl FaceId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}", self.0)
    }
}

/// Vertex of the embedded graph: a crossing, or one of the two endpoints of
/// an open diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Vertex {
    Crossing(CrossingId),
    Begin,
    End,
}

/// The embedded 4-valent graph of a diagram: darts, rotation system and face
/// orbits.
#[derive(Debug, Clone)]
pub struct CombinatorialMap {
    n: usize,
    closed: bool,
    num_arcs: usize,
    tail: Vec<Vertex>,
    face_of: Vec<usize>,
    faces: Vec<Vec<usize>>,
    /// Outgoing darts per crossing in counterclockwise order.
    rotations: Vec<[usize; 4]>,
}

pub(crate) fn fwd(arc: usize) -> usize {
    2 * arc
}

pub(crate) fn bwd(arc: usize) -> usize {
    2 * arc + 1
}

pub(crate) fn alpha(dart: usize) -> usize {
    dart ^ 1
}

pub(crate) fn arc_of(dart: usize) -> usize {
    dart / 2
}

/// Reconstruct the embedding of a diagram. Never fails; callers decide what
/// to do when the face count violates Euler's formula.
pub fn trace_faces<D: Diagram + ?Sized>(d: &D) -> CombinatorialMap {
    let n = d.crossings();
    let seq = d.seq();
    let closed = d.is_closed();
    let num_arcs = d.num_arcs();
    let num_darts = 2 * num_arcs;

    // In/out arcs of the visit at position p.
    let in_arc = |p: usize| if closed { (p + seq.len() - 1) % seq.len() } else { p };
    let out_arc = |p: usize| if closed { p } else { p + 1 };

    let mut sigma = vec![usize::MAX; num_darts];
    let mut tail = vec![Vertex::Begin; num_darts];
    let mut rotations = vec![[0usize; 4]; n];

    let positions = visit_positions(seq, n);
    for (ci, &(p1, p2)) in positions.iter().enumerate() {
        let c = CrossingId::from_index(ci);
        let b1 = bwd(in_arc(p1));
        let f1 = fwd(out_arc(p1));
        let b2 = bwd(in_arc(p2));
        let f2 = fwd(out_arc(p2));
        let rot = match d.chirality()[ci] {
            Sign::Plus => [b1, b2, f1, f2],
            Sign::Minus => [b1, f2, f1, b2],
        };
        rotations[ci] = rot;
        for (k, &dart) in rot.iter().enumerate() {
            sigma[dart] = rot[(k + 1) % 4];
            tail[dart] = Vertex::Crossing(c);
        }
    }
    if !closed {
        let first = fwd(0);
        let last = bwd(num_arcs - 1);
        sigma[first] = first;
        tail[first] = Vertex::Begin;
        sigma[last] = last;
        tail[last] = Vertex::End;
    }
    debug_assert!(sigma.iter().all(|&s| s != usize::MAX));

    // Face orbits of d -> sigma(alpha(d)).
    let mut face_of = vec![usize::MAX; num_darts];
    let mut faces = Vec::new();
    for start in 0..num_darts {
        if face_of[start] != usize::MAX {
            continue;
        }
        let id = faces.len();
        let mut orbit = Vec::new();
        let mut d0 = start;
        loop {
            face_of[d0] = id;
            orbit.push(d0);
            d0 = sigma[alpha(d0)];
            if d0 == start {
                break;
            }
        }
        faces.push(orbit);
    }

    CombinatorialMap { n, closed, num_arcs, tail, face_of, faces, rotations }
}

impl CombinatorialMap {
    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    /// Face count demanded by Euler's formula on the sphere.
    pub fn expected_faces(&self) -> usize {
        if self.closed {
            self.n + 2
        } else {
            self.n + 1
        }
    }

    pub fn is_spherical(&self) -> bool {
        self.num_faces() == self.expected_faces()
    }

    pub fn crossings(&self) -> usize {
        self.n
    }

    pub fn num_arcs(&self) -> usize {
        self.num_arcs
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Face on the right of the dart's direction of travel.
    pub fn face_right_of(&self, dart: usize) -> FaceId {
        FaceId(self.face_of[dart] as u32)
    }

    /// Face on the left of the dart's direction of travel.
    pub fn face_left_of(&self, dart: usize) -> FaceId {
        FaceId(self.face_of[alpha(dart)] as u32)
    }

    pub fn tail(&self, dart: usize) -> Vertex {
        self.tail[dart]
    }

    pub fn head(&self, dart: usize) -> Vertex {
        self.tail[alpha(dart)]
    }

    /// The two endpoint vertices of an arc, tail first along the strand.
    pub fn arc_endpoints(&self, arc: ArcId) -> (Vertex, Vertex) {
        let a = arc.index();
        (self.tail(fwd(a)), self.head(fwd(a)))
    }

    /// The two faces adjacent to an arc: (right of forward dart, left of
    /// forward dart).
    pub fn arc_sides(&self, arc: ArcId) -> (FaceId, FaceId) {
        let a = arc.index();
        (self.face_right_of(fwd(a)), self.face_right_of(bwd(a)))
    }

    /// Face orbit as a cyclic dart list.
    pub fn face_darts(&self, f: FaceId) -> &[usize] {
        &self.faces[f.index()]
    }

    /// Counterclockwise outgoing darts at a crossing.
    pub fn rotation(&self, c: CrossingId) -> [usize; 4] {
        self.rotations[c.index()]
    }

    /// The four face corners around a crossing, one per outgoing dart.
    pub fn corners(&self, c: CrossingId) -> [FaceId; 4] {
        let rot = self.rotations[c.index()];
        [
            self.face_right_of(rot[0]),
            self.face_right_of(rot[1]),
            self.face_right_of(rot[2]),
            self.face_right_of(rot[3]),
        ]
    }

    /// The unique face incident to the beginning endpoint.
    pub fn begin_face(&self) -> FaceId {
        assert!(!self.closed);
        self.face_right_of(fwd(0))
    }

    /// The unique face incident to the end endpoint.
    pub fn end_face(&self) -> FaceId {
        assert!(!self.closed);
        self.face_right_of(bwd(self.num_arcs - 1))
    }
}

/// Dual multigraph: one node per face, one edge per arc; parallel edges and
/// loops allowed. A dual loop at a face marks a cut edge of the embedded
/// graph.
#[derive(Debug, Clone)]
pub struct DualGraph {
    num_faces: usize,
    sides: Vec<(usize, usize)>,
    adjacency: Vec<Vec<(usize, usize)>>,
}

/// Build the dual of a traced map.
pub fn build_dual(map: &CombinatorialMap) -> DualGraph {
    let num_faces = map.num_faces();
    let mut sides = Vec::with_capacity(map.num_arcs());
    let mut adjacency = vec![Vec::new(); num_faces];
    for arc in 0..map.num_arcs() {
        let (a, b) = map.arc_sides(ArcId(arc as u32));
        sides.push((a.index(), b.index()));
        adjacency[a.index()].push((b.index(), arc));
        if a != b {
            adjacency[b.index()].push((a.index(), arc));
        }
    }
    DualGraph { num_faces, sides, adjacency }
}

impl DualGraph {
    pub fn num_faces(&self) -> usize {
        self.num_faces
    }

    pub fn num_edges(&self) -> usize {
        self.sides.len()
    }

    /// The two faces an arc separates (equal for a dual loop).
    pub fn arc_faces(&self, arc: ArcId) -> (FaceId, FaceId) {
        let (a, b) = self.sides[arc.index()];
        (FaceId(a as u32), FaceId(b as u32))
    }

    pub fn is_loop(&self, arc: ArcId) -> bool {
        let (a, b) = self.sides[arc.index()];
        a == b
    }

    /// Sum of node degrees; always twice the arc count.
    pub fn degree_sum(&self) -> usize {
        self.adjacency.iter().map(|v| v.len()).sum::<usize>() + self.loops_count()
    }

    fn loops_count(&self) -> usize {
        self.sides.iter().filter(|(a, b)| a == b).count()
    }

    fn bfs(&self, from: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.num_faces];
        let mut queue = VecDeque::new();
        dist[from] = 0;
        queue.push_back(from);
        while let Some(f) = queue.pop_front() {
            for &(g, _) in &self.adjacency[f] {
                if dist[g] == u32::MAX {
                    dist[g] = dist[f] + 1;
                    queue.push_back(g);
                }
            }
        }
        dist
    }
}

/// An embedded arc from the beginning to the end of an open diagram,
/// recorded as the dual walk it induces: visited faces and crossed arcs,
/// with `crossed_arcs[i]` separating `faces[i]` from `faces[i + 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Shortcut {
    pub faces: Vec<FaceId>,
    pub crossed_arcs: Vec<ArcId>,
}

impl Shortcut {
    pub fn len(&self) -> usize {
        self.crossed_arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossed_arcs.is_empty()
    }
}

/// All minimal shortcuts of a diagram, in lexicographic order of their
/// crossed-arc lists, truncated at `cap`.
#[derive(Debug, Clone)]
pub struct ShortcutSet {
    pub shortcuts: Vec<Shortcut>,
    pub truncated: bool,
}

/// Exact height of a flat diagram together with the lexicographically least
/// minimal shortcut.
pub fn height(f: &FlatDiagram) -> (u32, Shortcut) {
    let map = trace_faces(f);
    let dual = build_dual(&map);
    height_in(&map, &dual)
}

pub(crate) fn height_in(map: &CombinatorialMap, dual: &DualGraph) -> (u32, Shortcut) {
    let begin = map.begin_face().index();
    let end = map.end_face().index();
    let dist_b = dual.bfs(begin);
    let dist_e = dual.bfs(end);
    let h = dist_b[end];
    debug_assert_ne!(h, u32::MAX, "dual graph of a connected diagram is connected");

    let mut faces = vec![FaceId(begin as u32)];
    let mut crossed = Vec::new();
    let mut cur = begin;
    for step in 0..h {
        let mut best: Option<(usize, usize)> = None;
        for &(g, arc) in &dual.adjacency[cur] {
            if dist_b[g] == step + 1 && dist_e[g] + step + 1 == h {
                match best {
                    Some((a, _)) if a <= arc => {}
                    _ => best = Some((arc, g)),
                }
            }
        }
        let (arc, g) = best.expect("a shortest path step exists");
        crossed.push(ArcId(arc as u32));
        faces.push(FaceId(g as u32));
        cur = g;
    }
    (h, Shortcut { faces, crossed_arcs: crossed })
}

/// Enumerate all minimal shortcuts, deterministically, up to `cap` of them.
pub fn enumerate_minimal_shortcuts(f: &FlatDiagram, cap: usize) -> ShortcutSet {
    let map = trace_faces(f);
    let dual = build_dual(&map);
    enumerate_minimal_in(&map, &dual, cap)
}

pub(crate) fn enumerate_minimal_in(
    map: &CombinatorialMap,
    dual: &DualGraph,
    cap: usize,
) -> ShortcutSet {
    let begin = map.begin_face().index();
    let end = map.end_face().index();
    let dist_b = dual.bfs(begin);
    let dist_e = dual.bfs(end);
    let h = dist_b[end];

    let mut out = ShortcutSet { shortcuts: Vec::new(), truncated: false };
    let mut faces = vec![FaceId(begin as u32)];
    let mut crossed = Vec::new();
    dfs_shortcuts(dual, begin, end, h, 0, &dist_b, &dist_e, &mut faces, &mut crossed, cap, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn dfs_shortcuts(
    dual: &DualGraph,
    cur: usize,
    end: usize,
    h: u32,
    step: u32,
    dist_b: &[u32],
    dist_e: &[u32],
    faces: &mut Vec<FaceId>,
    crossed: &mut Vec<ArcId>,
    cap: usize,
    out: &mut ShortcutSet,
) {
    if out.truncated {
        return;
    }
    if step == h {
        if cur == end {
            if out.shortcuts.len() == cap {
                out.truncated = true;
            } else {
                out.shortcuts
                    .push(Shortcut { faces: faces.clone(), crossed_arcs: crossed.clone() });
            }
        }
        return;
    }
    let mut next: Vec<(usize, usize)> = dual.adjacency[cur]
        .iter()
        .filter(|&&(g, _)| dist_b[g] == step + 1 && dist_e[g] + step + 1 == h)
        .map(|&(g, arc)| (arc, g))
        .collect();
    next.sort_unstable();
    for (arc, g) in next {
        crossed.push(ArcId(arc as u32));
        faces.push(FaceId(g as u32));
        dfs_shortcuts(dual, g, end, h, step + 1, dist_b, dist_e, faces, crossed, cap, out);
        crossed.pop();
        faces.pop();
    }
}

/// Minimal number of transversal intersections of a simple arc from inside
/// one face to inside another.
pub fn region_distance(f: &FlatDiagram, f1: FaceId, f2: FaceId) -> u32 {
    let map = trace_faces(f);
    let dual = build_dual(&map);
    region_distance_in(&dual, f1, f2)
}

pub(crate) fn region_distance_in(dual: &DualGraph, f1: FaceId, f2: FaceId) -> u32 {
    dual.bfs(f1.index())[f2.index()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::parse_flat_code;
    use crate::codec::parse_knot_code;

    fn flat(code: &str) -> FlatDiagram {
        parse_flat_code(code).unwrap()
    }

    #[test]
    fn face_counts() {
        assert_eq!(trace_faces(&flat("flatknotoid")).num_faces(), 1);
        assert_eq!(trace_faces(&flat("flatknotoid 1+ 1+")).num_faces(), 2);
        assert_eq!(trace_faces(&flat("flatknotoid 1+ 2- 1+ 2-")).num_faces(), 3);
        let trefoil = parse_knot_code("knot O1+ U2- O3+ U1+ O2- U3+").unwrap();
        assert_eq!(trace_faces(&trefoil).num_faces(), 5);
    }

    #[test]
    fn trivial_dual_is_single_loop() {
        let map = trace_faces(&flat("flatknotoid"));
        let dual = build_dual(&map);
        assert_eq!(dual.num_faces(), 1);
        assert_eq!(dual.num_edges(), 1);
        assert!(dual.is_loop(ArcId(0)));
    }

    #[test]
    fn kink_dual() {
        let map = trace_faces(&flat("flatknotoid 1+ 1+"));
        let dual = build_dual(&map);
        assert_eq!(dual.num_faces(), 2);
        assert_eq!(dual.num_edges(), 3);
        // Outer arcs are dual loops at the outer face; the kink arc joins
        // the two faces.
        assert!(dual.is_loop(ArcId(0)));
        assert!(!dual.is_loop(ArcId(1)));
        assert!(dual.is_loop(ArcId(2)));
        assert_eq!(dual.degree_sum(), 2 * dual.num_edges());
    }

    #[test]
    fn heights() {
        assert_eq!(height(&flat("flatknotoid")).0, 0);
        assert_eq!(height(&flat("flatknotoid 1+ 1+")).0, 0);
        let (h, sc) = height(&flat("flatknotoid 1+ 2- 1+ 2-"));
        assert_eq!(h, 1);
        assert_eq!(sc.crossed_arcs.len(), 1);
        assert_eq!(sc.faces.len(), 2);
    }

    #[test]
    fn minimal_shortcut_counts() {
        assert_eq!(enumerate_minimal_shortcuts(&flat("flatknotoid"), 100).shortcuts.len(), 1);
        assert_eq!(
            enumerate_minimal_shortcuts(&flat("flatknotoid 1+ 1+"), 100).shortcuts.len(),
            1
        );
        // For the clasp the minimal shortcuts are in bijection with arcs
        // separating the begin face from the end face.
        let f = flat("flatknotoid 1+ 2- 1+ 2-");
        let map = trace_faces(&f);
        let dual = build_dual(&map);
        let direct = (0..f.num_arcs())
            .filter(|&a| {
                let (x, y) = dual.arc_faces(ArcId(a as u32));
                (x == map.begin_face() && y == map.end_face())
                    || (y == map.begin_face() && x == map.end_face())
            })
            .count();
        assert_eq!(enumerate_minimal_shortcuts(&f, 100).shortcuts.len(), direct);
    }

    #[test]
    fn region_distances() {
        let f = flat("flatknotoid 1+ 2- 1+ 2-");
        let map = trace_faces(&f);
        assert_eq!(region_distance(&f, map.begin_face(), map.begin_face()), 0);
        assert_eq!(region_distance(&f, map.begin_face(), map.end_face()), height(&f).0);
    }

    /// Exhaustive walk oracle: the shortest dual walk found by blind
    /// iterative deepening over arc sequences, independent of BFS.
    pub(crate) fn oracle_height(f: &FlatDiagram) -> u32 {
        let map = trace_faces(f);
        let dual = build_dual(&map);
        let begin = map.begin_face().index();
        let end = map.end_face().index();
        for depth in 0..=(2 * f.num_arcs() as u32) {
            if walk_exists(&dual, begin, end, depth) {
                return depth;
            }
        }
        unreachable!("dual graph is connected");
    }

    fn walk_exists(dual: &DualGraph, cur: usize, end: usize, depth: u32) -> bool {
        if depth == 0 {
            return cur == end;
        }
        (0..dual.num_edges()).any(|arc| {
            let (a, b) = dual.sides[arc];
            let next = if cur == a {
                Some(b)
            } else if cur == b {
                Some(a)
            } else {
                None
            };
            next.is_some_and(|g| walk_exists(dual, g, end, depth - 1))
        })
    }

    #[test]
    fn bfs_height_matches_exhaustive_walks_small() {
        for n in 0..=4 {
            for f in crate::enumerate::generate_flat_codes(n) {
                assert_eq!(height(&f).0, oracle_height(&f), "{}", f.code());
            }
        }
    }

    #[test]
    fn minimal_shortcuts_visit_distinct_faces_and_arcs() {
        for n in 0..=4 {
            for f in crate::enumerate::generate_flat_codes(n) {
                let map = trace_faces(&f);
                let dual = build_dual(&map);
                for sc in enumerate_minimal_shortcuts(&f, 1000).shortcuts {
                    let mut faces = sc.faces.clone();
                    faces.sort();
                    faces.dedup();
                    assert_eq!(faces.len(), sc.faces.len(), "{}", f.code());
                    let mut arcs = sc.crossed_arcs.clone();
                    arcs.sort();
                    arcs.dedup();
                    assert_eq!(arcs.len(), sc.crossed_arcs.len(), "{}", f.code());
                    assert!(
                        sc.crossed_arcs.iter().all(|&a| !dual.is_loop(a)),
                        "{}",
                        f.code()
                    );
                }
            }
        }
    }
}
