use knotoid::bridge::{cut_bridge, longest_bridge, minimality_check};
use knotoid::codec::*;
use knotoid::moves::*;
use knotoid::planar::{self, ArcId};

fn main() {
    let d = parse_knot_code("knot O1+ U2- O3+ U1+ O2- U3+").unwrap();
    let over_pos = d.visits().iter().position(|v| v.pass == Pass::Over).unwrap();
    let incoming = ArcId(((over_pos + d.seq().len() - 1) % d.seq().len()) as u32);
    let map = planar::trace_faces(&d);
    let (x, y) = map.arc_sides(incoming);
    let partner = (0..d.num_arcs())
        .map(|a| ArcId(a as u32))
        .find(|&a| {
            if a == incoming { return false; }
            let (u, v) = map.arc_sides(a);
            u == x || u == y || v == x || v == y
        })
        .unwrap();
    let (d, _) = r2_insert(&d, partner, incoming, OverStrand::Second).unwrap();
    println!("after stack: {} k={} cr={}", d.code(), longest_bridge(&d).len, d.crossings());
    let b = longest_bridge(&d);
    let far_arc = ArcId(((b.start + b.len + 2) % d.seq().len()) as u32);
    let (d, _) = r1_insert(&d, far_arc, LoopSide::Right, Writhe::Positive).unwrap();
    println!("after kink: {} k={} cr={}", d.code(), longest_bridge(&d).len, d.crossings());
    let map = planar::trace_faces(&d);
    let b = longest_bridge(&d);
    let far = ArcId(((b.start + b.len + 2) % d.seq().len()) as u32);
    let (fx, fy) = map.arc_sides(far);
    let partner = (0..d.num_arcs())
        .map(|a| ArcId(a as u32))
        .find(|&a| {
            if a == far { return false; }
            let (u, v) = map.arc_sides(a);
            u == fx || u == fy || v == fx || v == fy
        })
        .unwrap();
    let (d, _) = r2_insert(&d, far, partner, OverStrand::First).unwrap();
    let r = minimality_check(&d);
    println!("final: {}", d.code());
    println!("cr={} k={} verdict={}", r.cr, r.k, r.verdict);
    let (f, sc) = cut_bridge(&d, &r.bridge);
    println!("cut: {} len(shortcut)={} h={}", f.code(), sc.crossed_arcs.len(), planar::height(&f).0);
}
