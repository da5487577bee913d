mod render;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use knotoid::codec::{self, Diagram};
use knotoid::enumerate::{self, Shard};
use knotoid::{affine, bridge, gamma, planar, primality};

/// Exact computation on knotoid and flat knotoid diagrams.
#[derive(Parser)]
#[command(name = "knotoid", version, disable_version_flag = false)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct InputArgs {
    /// Diagram code, e.g. `flatknotoid 1+ 2- 1+ 2-`.
    code: Option<String>,
    /// Read codes from a file, one per line; `#` comments and blank lines
    /// are skipped.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Omit environment-dependent fields (the version string) from JSON.
    #[arg(long)]
    stable: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a code and report its canonical form.
    Validate(InputArgs),
    /// Exact height and the canonical minimal shortcut of a flat diagram.
    Height(InputArgs),
    /// Shortcut-relative classification: crossing types, border edges,
    /// chains.
    Gamma(InputArgs),
    /// Primality of a flat diagram, with a separating-circle witness when
    /// composite.
    Prime(InputArgs),
    /// Decompose a flat diagram into prime pieces.
    Decompose(InputArgs),
    /// Affine index polynomial of a knotoid diagram and its lower bounds.
    Affine(InputArgs),
    /// Longest bridge of a knot diagram and the `cr >= 3k` minimality test.
    Bridge(InputArgs),
    /// List all realizable flat codes with `n` crossings.
    Enumerate {
        n: u32,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        stable: bool,
    },
    /// Run the verification campaigns up to `--max-n` crossings.
    Verify {
        #[arg(long, default_value_t = 4)]
        max_n: u32,
        /// Process one slice `i/m` of the search space.
        #[arg(long, value_parser = parse_shard, default_value = "0/1")]
        shard: Shard,
        /// Worker threads for the sweep (0 = default pool).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        stable: bool,
    },
    /// Print the twist-family diagram with `2k` crossings and height `k`.
    Spiral {
        k: u32,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        stable: bool,
    },
    /// Render a diagram to SVG.
    Render {
        code: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        /// Output path.
        #[arg(long)]
        out: PathBuf,
        /// Overlay the canonical minimal shortcut as a dashed path.
        #[arg(long)]
        shortcut: bool,
    },
}

fn parse_shard(s: &str) -> Result<Shard, String> {
    Shard::parse(s).ok_or_else(|| format!("expected i/m with i < m, got `{s}`"))
}

/// Exit status: 0 success, 1 negative analysis verdict, 2 input error.
const EXIT_OK: u8 = 0;
const EXIT_VERDICT: u8 = 1;
const EXIT_INPUT: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(run(cli))
}

fn run(cli: Cli) -> u8 {
    match cli.command {
        Command::Validate(args) => for_each_input(&args, validate_one),
        Command::Height(args) => for_each_input(&args, height_one),
        Command::Gamma(args) => for_each_input(&args, gamma_one),
        Command::Prime(args) => for_each_input(&args, prime_one),
        Command::Decompose(args) => for_each_input(&args, decompose_one),
        Command::Affine(args) => for_each_input(&args, affine_one),
        Command::Bridge(args) => for_each_input(&args, bridge_one),
        Command::Enumerate { n, json, stable } => enumerate_cmd(n, json, stable),
        Command::Verify { max_n, shard, jobs, json, stable } => {
            verify_cmd(max_n, shard, jobs, json, stable)
        }
        Command::Spiral { k, json, stable } => spiral_cmd(k, json, stable),
        Command::Render { code, file, out, shortcut } => {
            render_cmd(code, file, out, shortcut)
        }
    }
}

fn read_inputs(args: &InputArgs) -> Result<Vec<String>, String> {
    match (&args.code, &args.file) {
        (Some(code), None) => Ok(vec![code.clone()]),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            Ok(text
                .lines()
                .map(|l| l.trim())
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(str::to_string)
                .collect())
        }
        (Some(_), Some(_)) => Err("give either a code or --file, not both".into()),
        (None, None) => Err("missing input: pass a code or --file".into()),
    }
}

fn for_each_input(args: &InputArgs, f: impl Fn(&str, &InputArgs) -> u8) -> u8 {
    let inputs = match read_inputs(args) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let mut status = EXIT_OK;
    for line in inputs {
        status = status.max(f(&line, args));
    }
    status
}

/// Any known header parses to some diagram kind.
enum AnyDiagram {
    Flat(codec::FlatDiagram),
    Knotoid(codec::KnotoidDiagram),
    Knot(codec::KnotDiagram),
}

fn parse_any(line: &str) -> Result<AnyDiagram, codec::CodeError> {
    let header = line.split_whitespace().next().unwrap_or("");
    match header {
        "flatknotoid" => codec::parse_flat_code(line).map(AnyDiagram::Flat),
        "knotoid" => codec::parse_knotoid_code(line).map(AnyDiagram::Knotoid),
        "knot" => codec::parse_knot_code(line).map(AnyDiagram::Knot),
        other => Err(codec::CodeError {
            kind: codec::CodeErrorKind::Malformed,
            detail: format!("unknown header `{other}`"),
        }),
    }
}

/// Flat projection used by the analysis commands that need an open flat
/// diagram.
fn parse_flat_input(line: &str) -> Result<codec::FlatDiagram, String> {
    match parse_any(line) {
        Ok(AnyDiagram::Flat(f)) => Ok(f),
        Ok(AnyDiagram::Knotoid(k)) => Ok(k.forget_over_under()),
        Ok(AnyDiagram::Knot(_)) => Err("expected an open diagram, got a knot".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn validate_one(line: &str, args: &InputArgs) -> u8 {
    match parse_any(line) {
        Ok(d) => {
            let canonical = match &d {
                AnyDiagram::Flat(f) => f.code(),
                AnyDiagram::Knotoid(k) => k.code(),
                AnyDiagram::Knot(k) => k.code(),
            };
            let crossings = match &d {
                AnyDiagram::Flat(f) => f.crossings(),
                AnyDiagram::Knotoid(k) => k.crossings(),
                AnyDiagram::Knot(k) => k.crossings(),
            };
            if args.json {
                let payload = serde_json::json!({
                    "valid": true,
                    "crossings": crossings,
                });
                println!("{}", report::wrap("validate", &canonical, payload, args.stable));
            } else {
                println!("valid: {canonical}");
            }
            EXIT_OK
        }
        Err(e) => {
            if args.json {
                let payload = serde_json::json!({
                    "valid": false,
                    "error": e.to_string(),
                });
                println!("{}", report::wrap("validate", line, payload, args.stable));
            } else {
                println!("invalid: {e}");
            }
            EXIT_INPUT
        }
    }
}

fn height_one(line: &str, args: &InputArgs) -> u8 {
    let f = match parse_flat_input(line) {
        Ok(f) => f,
        Err(e) => return input_error(&e),
    };
    let (h, sc) = planar::height(&f);
    if args.json {
        let payload = serde_json::json!({
            "height": h,
            "shortcut": report::shortcut_json(&sc),
        });
        println!("{}", report::wrap("height", &f.code(), payload, args.stable));
    } else {
        println!("h={h}");
    }
    EXIT_OK
}

fn gamma_one(line: &str, args: &InputArgs) -> u8 {
    let f = match parse_flat_input(line) {
        Ok(f) => f,
        Err(e) => return input_error(&e),
    };
    let (_, sc) = planar::height(&f);
    let r = match gamma::classify(&f, &sc) {
        Ok(r) => r,
        Err(e) => return input_error(&e.to_string()),
    };
    if args.json {
        let payload = report::gamma_json(&f, &r, &sc);
        println!("{}", report::wrap("gamma", &f.code(), payload, args.stable));
    } else {
        let [c0, c1, c2, c3, c4] = r.counts;
        let identity = if f.crossings() == 0 {
            "n/a".to_string()
        } else {
            gamma::check_counting_identity(&r).to_string()
        };
        println!(
            "h={} c0={} c1={} c2={} c3={} c4={} q={} identity={identity}",
            r.height, c0, c1, c2, c3, c4, r.q,
        );
    }
    EXIT_OK
}

fn prime_one(line: &str, args: &InputArgs) -> u8 {
    let f = match parse_flat_input(line) {
        Ok(f) => f,
        Err(e) => return input_error(&e),
    };
    let (prime, witness) = primality::is_prime(&f);
    if args.json {
        let payload = serde_json::json!({
            "prime": prime,
            "witness": witness.as_ref().map(report::witness_json),
        });
        println!("{}", report::wrap("prime", &f.code(), payload, args.stable));
    } else if prime {
        println!("prime");
    } else {
        let w = witness.as_ref().unwrap();
        println!("composite: {}", report::witness_text(w));
    }
    if prime {
        EXIT_OK
    } else {
        EXIT_VERDICT
    }
}

fn decompose_one(line: &str, args: &InputArgs) -> u8 {
    let f = match parse_flat_input(line) {
        Ok(f) => f,
        Err(e) => return input_error(&e),
    };
    let (pieces, trace) = primality::prime_decompose(&f);
    if args.json {
        let payload = serde_json::json!({
            "pieces": pieces.iter().map(|p| p.code()).collect::<Vec<_>>(),
            "steps": trace
                .iter()
                .map(|s| {
                    serde_json::json!({
                        "input": s.input,
                        "witness": report::witness_json(&s.witness),
                        "outputs": s.outputs,
                    })
                })
                .collect::<Vec<_>>(),
        });
        println!("{}", report::wrap("decompose", &f.code(), payload, args.stable));
    } else {
        for p in &pieces {
            println!("{}", p.code());
        }
    }
    EXIT_OK
}

fn affine_one(line: &str, args: &InputArgs) -> u8 {
    let k = match parse_any(line) {
        Ok(AnyDiagram::Knotoid(k)) => k,
        Ok(_) => return input_error("affine expects a knotoid code"),
        Err(e) => return input_error(&e.to_string()),
    };
    let p = affine::affine_polynomial(&k);
    let b = affine::bounds(&k);
    if args.json {
        let payload = serde_json::json!({
            "polynomial": report::polynomial_json(&p),
            "display": p.to_string(),
            "d_max": affine::d_max(&p),
            "height_lb": b.height_lb,
            "crossing_lb": b.crossing_lb,
        });
        println!("{}", report::wrap("affine", &k.code(), payload, args.stable));
    } else {
        println!("P = {p}");
        println!("d_max={} height_lb={} crossing_lb={}", affine::d_max(&p), b.height_lb, b.crossing_lb);
    }
    EXIT_OK
}

fn bridge_one(line: &str, args: &InputArgs) -> u8 {
    let k = match parse_any(line) {
        Ok(AnyDiagram::Knot(k)) => k,
        Ok(_) => return input_error("bridge expects a knot code"),
        Err(e) => return input_error(&e.to_string()),
    };
    let r = bridge::minimality_check(&k);
    if args.json {
        let payload = serde_json::json!({
            "verdict": r.verdict.to_string(),
            "k": r.k,
            "cr": r.cr,
            "bridge": {
                "kind": match r.bridge.kind {
                    bridge::BridgeKind::Over => "OVER",
                    bridge::BridgeKind::Under => "UNDER",
                },
                "start": r.bridge.start,
                "length": r.bridge.len,
            },
        });
        println!("{}", report::wrap("bridge", &k.code(), payload, args.stable));
    } else {
        println!("{} k={} cr={}", r.verdict, r.k, r.cr);
    }
    if r.verdict == bridge::Verdict::NotMinimal {
        EXIT_VERDICT
    } else {
        EXIT_OK
    }
}

fn enumerate_cmd(n: u32, json: bool, stable: bool) -> u8 {
    let codes: Vec<String> = enumerate::generate_flat_codes(n).map(|d| d.code()).collect();
    if json {
        let payload = serde_json::json!({
            "n": n,
            "count": codes.len(),
            "codes": codes,
        });
        println!("{}", report::wrap("enumerate", &format!("n={n}"), payload, stable));
    } else {
        for c in &codes {
            println!("{c}");
        }
    }
    EXIT_OK
}

fn verify_cmd(max_n: u32, shard: Shard, jobs: usize, json: bool, stable: bool) -> u8 {
    let run = || {
        let censuses = enumerate::verify_theorem_campaign_sharded(max_n, shard);
        let machinery = enumerate::verify_prime_machinery_campaign_sharded(max_n, shard);
        (censuses, machinery)
    };
    let (censuses, machinery) = with_jobs(jobs, run);
    let clean = censuses.iter().all(|c| c.violations.is_empty()) && machinery.all_passed();
    if json {
        let payload = serde_json::json!({
            "max_n": max_n,
            "shard": format!("{}/{}", shard.index, shard.count),
            "censuses": censuses,
            "machinery": machinery,
            "clean": clean,
        });
        println!("{}", report::wrap("verify", &format!("max_n={max_n}"), payload, stable));
    } else {
        for c in &censuses {
            let hist: Vec<String> =
                c.by_height.iter().map(|(h, k)| format!("h{h}:{k}")).collect();
            println!(
                "n={} total={} prime={} equality={} violations={} heights[{}]",
                c.n,
                c.total,
                c.prime,
                c.equality,
                c.violations.len(),
                hist.join(" ")
            );
        }
        println!(
            "machinery prime={} nonprime={} failures={} c0>=q-2 {}/{} q>=c2 {}/{}",
            machinery.prime_checked,
            machinery.nonprime_checked,
            machinery.failures.len(),
            machinery.c0_q_holds,
            machinery.c0_q_holds + machinery.c0_q_fails,
            machinery.q_c2_holds,
            machinery.q_c2_holds + machinery.q_c2_fails,
        );
    }
    if clean {
        EXIT_OK
    } else {
        EXIT_VERDICT
    }
}

fn with_jobs<R: Send>(jobs: usize, f: impl FnOnce() -> R + Send) -> R {
    knotoid::run_with_threads(jobs, f)
}

fn spiral_cmd(k: u32, json: bool, stable: bool) -> u8 {
    if k == 0 {
        eprintln!("error: k must be at least 1");
        return EXIT_INPUT;
    }
    let s = enumerate::spiral(k);
    let (h, _) = planar::height(&s);
    if json {
        let payload = serde_json::json!({
            "k": k,
            "code": s.code(),
            "crossings": s.crossings(),
            "height": h,
        });
        println!("{}", report::wrap("spiral", &format!("k={k}"), payload, stable));
    } else {
        println!("{}", s.code());
    }
    EXIT_OK
}

fn render_cmd(
    code: Option<String>,
    file: Option<PathBuf>,
    out: PathBuf,
    shortcut: bool,
) -> u8 {
    let args = InputArgs { code, file, json: false, stable: false };
    let inputs = match read_inputs(&args) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let Some(line) = inputs.first() else {
        eprintln!("error: no input code");
        return EXIT_INPUT;
    };
    let svg = match parse_any(line) {
        Ok(AnyDiagram::Flat(f)) => render::render_open(&f, None, shortcut),
        Ok(AnyDiagram::Knotoid(k)) => {
            render::render_open(&k.forget_over_under(), Some(&k), shortcut)
        }
        Ok(AnyDiagram::Knot(k)) => render::render_knot(&k),
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    if let Err(e) = std::fs::write(&out, svg) {
        eprintln!("error: cannot write {}: {e}", out.display());
        return EXIT_INPUT;
    }
    EXIT_OK
}

fn input_error(msg: &str) -> u8 {
    eprintln!("error: {msg}");
    EXIT_INPUT
}
