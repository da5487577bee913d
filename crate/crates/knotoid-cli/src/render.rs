//! SVG rendering of diagrams: convex-boundary barycentric layout of the
//! combinatorial map, arcs as quadratic curves bent toward their face
//! barycenters, over-strand halos for knotted inputs, and an optional
//! minimal-shortcut overlay.
//!
//! Output is a self-contained SVG 1.1 document with a 1000x1000 viewBox and
//! inline styles; identical inputs render byte-identically.

use knotoid::codec::{Diagram, FlatDiagram, KnotDiagram, KnotoidDiagram, Pass};
use knotoid::planar::{self, ArcId, FaceId, Vertex};

const SIZE: f64 = 1000.0;
const MARGIN: f64 = 80.0;
const ROUNDS: usize = 300;

#[derive(Clone, Copy, Debug, Default)]
struct Point {
    x: f64,
    y: f64,
}

struct Layout {
    /// Crossing positions, then begin and end for open diagrams.
    vertices: Vec<Point>,
    map: planar::CombinatorialMap,
    n: usize,
}

fn vertex_index(v: Vertex, n: usize) -> usize {
    match v {
        Vertex::Crossing(c) => c.0 as usize - 1,
        Vertex::Begin => n,
        Vertex::End => n + 1,
    }
}

fn layout<D: Diagram>(d: &D, outer: FaceId) -> Layout {
    let map = planar::trace_faces(d);
    let n = d.crossings();
    let total = if d.is_closed() { n } else { n + 2 };

    // Pin the outer face's vertices on a circle, in boundary order, first
    // occurrence only.
    let mut boundary: Vec<usize> = Vec::new();
    for &dart in map.face_darts(outer) {
        let v = vertex_index(map.tail(dart), n);
        if !boundary.contains(&v) {
            boundary.push(v);
        }
    }
    let radius = SIZE / 2.0 - MARGIN;
    let mut pos = vec![Point { x: SIZE / 2.0, y: SIZE / 2.0 }; total];
    let m = boundary.len().max(1);
    for (i, &v) in boundary.iter().enumerate() {
        let angle = -std::f64::consts::FRAC_PI_2
            + 2.0 * std::f64::consts::PI * i as f64 / m as f64;
        pos[v] = Point {
            x: SIZE / 2.0 + radius * angle.cos(),
            y: SIZE / 2.0 + radius * angle.sin(),
        };
    }

    // Neighbour lists over arcs (multigraph).
    let mut neighbours: Vec<Vec<usize>> = vec![Vec::new(); total];
    for arc in 0..d.num_arcs() {
        let (tail, head) = map.arc_endpoints(ArcId(arc as u32));
        let t = vertex_index(tail, n);
        let h = vertex_index(head, n);
        neighbours[t].push(h);
        neighbours[h].push(t);
    }

    // Barycentric relaxation of the interior vertices.
    let pinned: Vec<bool> = (0..total).map(|v| boundary.contains(&v)).collect();
    for _ in 0..ROUNDS {
        for v in 0..total {
            if pinned[v] || neighbours[v].is_empty() {
                continue;
            }
            let (mut sx, mut sy, mut k) = (0.0, 0.0, 0.0);
            for &u in &neighbours[v] {
                sx += pos[u].x;
                sy += pos[u].y;
                k += 1.0;
            }
            pos[v] = Point { x: sx / k, y: sy / k };
        }
    }
    Layout { vertices: pos, map, n }
}

impl Layout {
    fn face_barycenter(&self, f: FaceId) -> Point {
        let mut sx = 0.0;
        let mut sy = 0.0;
        let mut k = 0.0;
        for &dart in self.map.face_darts(f) {
            let v = vertex_index(self.map.tail(dart), self.n);
            sx += self.vertices[v].x;
            sy += self.vertices[v].y;
            k += 1.0;
        }
        if k == 0.0 {
            Point { x: SIZE / 2.0, y: SIZE / 2.0 }
        } else {
            Point { x: sx / k, y: sy / k }
        }
    }

    fn arc_endpoints(&self, arc: usize) -> (Point, Point) {
        let (tail, head) = self.map.arc_endpoints(ArcId(arc as u32));
        let t = vertex_index(tail, self.n);
        let h = vertex_index(head, self.n);
        (self.vertices[t], self.vertices[h])
    }

    /// Control point: midpoint pulled toward the average of the two
    /// adjacent face barycenters, which separates parallel arcs and keeps
    /// loops visible.
    fn arc_control(&self, arc: usize) -> Point {
        let (p, q) = self.arc_endpoints(arc);
        let (fa, fb) = self.map.arc_sides(ArcId(arc as u32));
        let ba = self.face_barycenter(fa);
        let bb = self.face_barycenter(fb);
        let mid = Point { x: (p.x + q.x) / 2.0, y: (p.y + q.y) / 2.0 };
        let pull = Point { x: (ba.x + bb.x) / 2.0, y: (ba.y + bb.y) / 2.0 };
        let same_vertex = (p.x - q.x).abs() < 1e-9 && (p.y - q.y).abs() < 1e-9;
        let w = if same_vertex { 1.6 } else { 0.55 };
        Point { x: mid.x + (pull.x - mid.x) * w, y: mid.y + (pull.y - mid.y) * w }
    }

    fn arc_midpoint(&self, arc: usize) -> Point {
        let (p, q) = self.arc_endpoints(arc);
        let c = self.arc_control(arc);
        Point {
            x: (p.x + 2.0 * c.x + q.x) / 4.0,
            y: (p.y + 2.0 * c.y + q.y) / 4.0,
        }
    }

    fn arc_path(&self, arc: usize) -> String {
        let (p, q) = self.arc_endpoints(arc);
        let c = self.arc_control(arc);
        format!(
            "M {} {} Q {} {} {} {}",
            fmt(p.x),
            fmt(p.y),
            fmt(c.x),
            fmt(c.y),
            fmt(q.x),
            fmt(q.y)
        )
    }
}

fn fmt(x: f64) -> String {
    format!("{x:.2}")
}

fn doc(body: String) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 1000 1000\">\n\
         <rect width=\"1000\" height=\"1000\" fill=\"white\"/>\n{body}</svg>\n"
    )
}

fn stroke_path(d: &str, style: &str) -> String {
    format!("<path d=\"{d}\" fill=\"none\" {style}/>\n")
}

const STRAND: &str = "stroke=\"black\" stroke-width=\"3\" stroke-linecap=\"round\"";
const SHORTCUT_STYLE: &str =
    "stroke=\"#cc0000\" stroke-width=\"2.5\" stroke-dasharray=\"10 6\" stroke-linecap=\"round\"";

/// Render an open diagram (flat or knotoid); pass the knotoid to draw
/// over-strand breaks.
pub fn render_open(f: &FlatDiagram, knotted: Option<&KnotoidDiagram>, shortcut: bool) -> String {
    let map = planar::trace_faces(f);
    let lay = layout(f, map.begin_face());
    let mut body = String::new();
    for arc in 0..f.num_arcs() {
        body.push_str(&stroke_path(&lay.arc_path(arc), STRAND));
    }
    if let Some(k) = knotted {
        body.push_str(&over_strand_halos(&lay, k.visits().as_slice(), false));
    }
    if shortcut {
        let dual = planar::build_dual(&lay.map);
        let _ = dual;
        let (_, sc) = planar::height(f);
        body.push_str(&shortcut_overlay(&lay, &sc));
    }
    // Endpoints as filled dots.
    let b = lay.vertices[lay.n];
    let e = lay.vertices[lay.n + 1];
    for p in [b, e] {
        body.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"7\" fill=\"black\"/>\n",
            fmt(p.x),
            fmt(p.y)
        ));
    }
    doc(body)
}

/// Render a closed knot diagram with over-strand breaks.
pub fn render_knot(k: &KnotDiagram) -> String {
    let map = planar::trace_faces(k);
    let outer = (0..map.num_faces())
        .map(|f| FaceId(f as u32))
        .max_by_key(|&f| (map.face_darts(f).len(), std::cmp::Reverse(f.0)))
        .expect("a knot has faces");
    let lay = layout(k, outer);
    let mut body = String::new();
    for arc in 0..k.num_arcs() {
        body.push_str(&stroke_path(&lay.arc_path(arc), STRAND));
    }
    body.push_str(&over_strand_halos(&lay, k.visits().as_slice(), true));
    doc(body)
}

/// White halo at each crossing, then the over-visit's two incident arcs
/// redrawn on top.
fn over_strand_halos(
    lay: &Layout,
    visits: &[knotoid::codec::Visit],
    closed: bool,
) -> String {
    let mut out = String::new();
    let len = visits.len();
    for (pos, v) in visits.iter().enumerate() {
        if v.pass != Pass::Over {
            continue;
        }
        let c = lay.vertices[v.crossing.0 as usize - 1];
        let (in_arc, out_arc) = if closed {
            ((pos + len - 1) % len, pos)
        } else {
            (pos, pos + 1)
        };
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"11\" fill=\"white\"/>\n",
            fmt(c.x),
            fmt(c.y)
        ));
        out.push_str(&stroke_path(&lay.arc_path(in_arc), STRAND));
        out.push_str(&stroke_path(&lay.arc_path(out_arc), STRAND));
    }
    out
}

/// Dashed path through the begin endpoint, face barycenters and crossing
/// points of the canonical minimal shortcut.
fn shortcut_overlay(lay: &Layout, sc: &planar::Shortcut) -> String {
    let mut pts: Vec<Point> = vec![lay.vertices[lay.n]];
    for (i, face) in sc.faces.iter().enumerate() {
        pts.push(lay.face_barycenter(*face));
        if i < sc.crossed_arcs.len() {
            pts.push(lay.arc_midpoint(sc.crossed_arcs[i].index()));
        }
    }
    pts.push(lay.vertices[lay.n + 1]);
    let mut d = format!("M {} {}", fmt(pts[0].x), fmt(pts[0].y));
    for p in &pts[1..] {
        d.push_str(&format!(" L {} {}", fmt(p.x), fmt(p.y)));
    }
    stroke_path(&d, SHORTCUT_STYLE)
}
