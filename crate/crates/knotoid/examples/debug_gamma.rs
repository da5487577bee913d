use knotoid::codec::*;
use knotoid::gamma;
use knotoid::planar;

fn main() {
    let code = std::env::args().nth(1).unwrap();
    let f = parse_flat_code(&code).unwrap();
    let map = planar::trace_faces(&f);
    let (h, sc) = planar::height(&f);
    println!("n={} arcs={} faces={}", f.crossings(), f.num_arcs(), map.num_faces());
    println!("h={} shortcut arcs={:?} faces={:?}", h, sc.crossed_arcs, sc.faces);
    for a in 0..f.num_arcs() {
        let (x, y) = map.arc_sides(planar::ArcId(a as u32));
        let (t, hd) = map.arc_endpoints(planar::ArcId(a as u32));
        println!("  arc e{a}: sides ({x}, {y}) endpoints {t:?} -> {hd:?}");
    }
    let r = gamma::classify(&f, &sc).unwrap();
    println!("types: {:?} counts: {:?}", r.crossing_type, r.counts);
    println!("border: {:?}", r.border);
    println!("gamma_edges: {:?} regions: {:?}", r.gamma_edges, r.gamma_regions);
    for (c, k, regs) in &r.exceptional {
        println!("exceptional {c}: {k:?} regions {:?} corners {:?}", regs, map.corners(*c));
    }
    println!("q = {}", r.q);
    for ch in &r.chains {
        println!(
            "chain side={:?} arcs={:?} endpoints=({}, {}) regular={} two_sided={} true={}",
            ch.side, ch.arcs, ch.endpoints.0, ch.endpoints.1, ch.passes_regular,
            ch.two_sided_count, ch.is_true_chain
        );
    }
    let audit = gamma::audit(&f, &r);
    println!("audit: {audit:?}");
}
