//! JSON report assembly. Reports are schema-stable: object keys come out
//! sorted, values are fully determined by the input, and the version string
//! is the only environment-dependent field (dropped with `--stable`).

use knotoid::gamma::{BorderSide, ChainSide, ExceptionalKind, GammaReport};
use knotoid::planar::Shortcut;
use knotoid::primality::{PrimalityWitness, WitnessKind};
use knotoid::{affine::LaurentPolynomial, codec::FlatDiagram};
use serde_json::{json, Value};

pub const SCHEMA: u32 = 1;

/// Wrap a command payload in the standard report envelope.
pub fn wrap(command: &str, input: &str, result: Value, stable: bool) -> String {
    let mut obj = serde_json::Map::new();
    obj.insert("schema".into(), json!(SCHEMA));
    if !stable {
        obj.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    }
    obj.insert("command".into(), json!(command));
    obj.insert("input".into(), json!(input));
    obj.insert("result".into(), result);
    Value::Object(obj).to_string()
}

pub fn shortcut_json(sc: &Shortcut) -> Value {
    json!({
        "faces": sc.faces.iter().map(|f| f.0).collect::<Vec<_>>(),
        "crossed_arcs": sc.crossed_arcs.iter().map(|a| a.0).collect::<Vec<_>>(),
    })
}

pub fn witness_json(w: &PrimalityWitness) -> Value {
    json!({
        "kind": match w.kind {
            WitnessKind::OnePoint => "ONE_POINT",
            WitnessKind::TwoPoint => "TWO_POINT",
        },
        "arcs": w.arcs.iter().map(|a| a.0).collect::<Vec<_>>(),
        "faces": w.faces.iter().map(|f| f.0).collect::<Vec<_>>(),
        "side_a": w.side_a.iter().map(|c| c.0).collect::<Vec<_>>(),
        "side_b": w.side_b.iter().map(|c| c.0).collect::<Vec<_>>(),
    })
}

pub fn witness_text(w: &PrimalityWitness) -> String {
    let kind = match w.kind {
        WitnessKind::OnePoint => "ONE_POINT",
        WitnessKind::TwoPoint => "TWO_POINT",
    };
    let arcs: Vec<String> = w.arcs.iter().map(|a| a.to_string()).collect();
    format!(
        "{} at {} (sides: {:?} | {:?})",
        kind,
        arcs.join(","),
        w.side_a.iter().map(|c| c.0).collect::<Vec<_>>(),
        w.side_b.iter().map(|c| c.0).collect::<Vec<_>>()
    )
}

pub fn polynomial_json(p: &LaurentPolynomial) -> Value {
    let mut obj = serde_json::Map::new();
    for (e, c) in p.terms() {
        obj.insert(e.to_string(), json!(c));
    }
    Value::Object(obj)
}

pub fn gamma_json(f: &FlatDiagram, r: &GammaReport, sc: &Shortcut) -> Value {
    use knotoid::codec::Diagram;
    let border: Vec<Value> = r
        .border
        .iter()
        .enumerate()
        .map(|(arc, side)| {
            json!({
                "arc": arc,
                "side": match side {
                    Some(BorderSide::Left) => "LEFT",
                    Some(BorderSide::Right) => "RIGHT",
                    None => "NONE",
                },
            })
        })
        .collect();
    let chains: Vec<Value> = r
        .chains
        .iter()
        .map(|c| {
            json!({
                "side": match c.side {
                    ChainSide::Left => "LEFT",
                    ChainSide::Right => "RIGHT",
                    ChainSide::Mixed => "MIXED",
                },
                "arcs": c.arcs.iter().map(|a| a.0).collect::<Vec<_>>(),
                "endpoints": [c.endpoints.0 .0, c.endpoints.1 .0],
                "passes_regular": c.passes_regular,
                "two_sided_count": c.two_sided_count,
                "is_true_chain": c.is_true_chain,
            })
        })
        .collect();
    let exceptional: Vec<Value> = r
        .exceptional
        .iter()
        .map(|(c, k, regions)| {
            json!({
                "crossing": c.0,
                "kind": match k {
                    ExceptionalKind::Regular => "REGULAR",
                    ExceptionalKind::OneSidedLeft => "ONE_SIDED_LEFT",
                    ExceptionalKind::OneSidedRight => "ONE_SIDED_RIGHT",
                    ExceptionalKind::TwoSided => "TWO_SIDED",
                },
                "regions": [regions[0].0, regions[1].0],
            })
        })
        .collect();
    json!({
        "height": r.height,
        "crossings": f.crossings(),
        "shortcut": shortcut_json(sc),
        "gamma_edges": r.gamma_edges.iter().map(|a| a.0).collect::<Vec<_>>(),
        "gamma_regions": r.gamma_regions.iter().map(|x| x.0).collect::<Vec<_>>(),
        "crossing_type": r.crossing_type,
        "counts": r.counts,
        "border": border,
        "chains": chains,
        "exceptional": exceptional,
        "q": r.q,
        "identity": (f.crossings() > 0).then(|| knotoid::gamma::check_counting_identity(r)),
        "no_type34": knotoid::gamma::check_no_type34(r),
    })
}
