//! End-to-end tests against the built binary: output formats, exit codes,
//! JSON determinism across runs and shard configurations, SVG rendering.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotoid"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn height_prints_exact_line() {
    let out = run(&["height", "flatknotoid 1+ 1+"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "h=0\n");
    let out = run(&["height", "flatknotoid 1- 2+ 1- 2+"]);
    assert_eq!(stdout(&out), "h=1\n");
}

#[test]
fn validate_exit_codes() {
    assert_eq!(run(&["validate", "flatknotoid 1+ 1+"]).status.code(), Some(0));
    // Failed validation is the command's verdict.
    assert_eq!(run(&["validate", "flatknotoid 1+ 2+ 1+"]).status.code(), Some(2));
    // Usage errors are input errors.
    assert_eq!(run(&["height"]).status.code(), Some(2));
    assert_eq!(run(&["height", "knot O1+ U2- O3+ U1+ O2- U3+"]).status.code(), Some(2));
}

#[test]
fn bridge_verdicts_and_exit_codes() {
    let out = run(&["bridge", "knot O1+ U2- O3+ U1+ O2- U3+"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "INCONCLUSIVE k=1 cr=3\n");
    let out = run(&[
        "bridge",
        "knot O1+ O2- O3+ U3+ O4+ U5- O6+ U4+ O7+ U1+ U2- O8- O5- U6+ U8- U7+",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "NOT_MINIMAL k=3 cr=8\n");
}

#[test]
fn prime_and_decompose() {
    assert_eq!(run(&["prime", "flatknotoid 1+ 1+"]).status.code(), Some(0));
    let out = run(&["prime", "flatknotoid 1+ 1+ 2+ 2+"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("composite: ONE_POINT"));
    let out = run(&["decompose", "flatknotoid 1+ 1+ 2+ 2+"]);
    assert_eq!(stdout(&out), "flatknotoid 1+ 1+\nflatknotoid 1+ 1+\n");
}

#[test]
fn affine_polynomial_output() {
    let out = run(&["affine", "knotoid O1+ U2- U1+ O2-"]);
    let text = stdout(&out);
    assert!(text.contains("P = -2 + 1*t^-1 + 1*t^1"), "{text}");
    assert!(text.contains("d_max=1 height_lb=1 crossing_lb=2"), "{text}");
}

#[test]
fn file_input_processes_each_line() {
    let dir = std::env::temp_dir().join("knotoid-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("codes.txt");
    std::fs::write(&path, "# two inputs\nflatknotoid 1+ 1+\n\nflatknotoid 1- 2+ 1- 2+\n").unwrap();
    let out = run(&["height", "--file", path.to_str().unwrap()]);
    assert_eq!(stdout(&out), "h=0\nh=1\n");
}

#[test]
fn verify_json_identical_across_runs_and_shards() {
    let a = run(&["verify", "--max-n", "4", "--json", "--stable"]);
    let b = run(&["verify", "--max-n", "4", "--json", "--stable"]);
    assert_eq!(a.stdout, b.stdout, "repeated runs differ");

    // Shard runs merge to the same censuses as the full run.
    let full: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let full_censuses = &full["result"]["censuses"];
    let mut totals = [0u64; 5];
    for m in 0..2 {
        let shard = run(&["verify", "--max-n", "4", "--json", "--stable", "--shard", &format!("{m}/2")]);
        let v: serde_json::Value = serde_json::from_slice(&shard.stdout).unwrap();
        for (i, c) in v["result"]["censuses"].as_array().unwrap().iter().enumerate() {
            totals[i] += c["total"].as_u64().unwrap();
        }
    }
    for (i, c) in full_censuses.as_array().unwrap().iter().enumerate() {
        assert_eq!(totals[i], c["total"].as_u64().unwrap(), "n={i}");
    }
}

#[test]
fn verify_respects_jobs_flag() {
    let a = run(&["verify", "--max-n", "3", "--json", "--stable", "--jobs", "1"]);
    let b = run(&["verify", "--max-n", "3", "--json", "--stable", "--jobs", "2"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn stable_json_omits_version() {
    let with_version = stdout(&run(&["height", "flatknotoid 1+ 1+", "--json"]));
    assert!(with_version.contains("\"version\""));
    let stable = stdout(&run(&["height", "flatknotoid 1+ 1+", "--json", "--stable"]));
    assert!(!stable.contains("\"version\""));
    assert!(stable.contains("\"schema\":1"));
    assert!(stable.contains("\"height\":0"));
}

#[test]
fn gamma_json_schema() {
    let out = run(&["gamma", "flatknotoid 1- 2+ 1- 2+", "--json", "--stable"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let r = &v["result"];
    assert_eq!(r["height"], 1);
    assert_eq!(r["counts"].as_array().unwrap()[2], 2);
    assert_eq!(r["identity"], true);
    assert!(r["border"].is_array());
    assert!(r["chains"].is_array());
}

#[test]
fn enumerate_lists_canonical_codes() {
    let out = run(&["enumerate", "1"]);
    assert_eq!(stdout(&out), "flatknotoid 1+ 1+\nflatknotoid 1- 1-\n");
    let out = run(&["enumerate", "2", "--json", "--stable"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["count"], 10);
}

#[test]
fn spiral_emits_family_member() {
    let out = run(&["spiral", "2", "--json", "--stable"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["crossings"], 4);
    assert_eq!(v["result"]["height"], 2);
    assert_eq!(run(&["spiral", "0"]).status.code(), Some(2));
}

#[test]
fn render_writes_deterministic_svg() {
    let dir = std::env::temp_dir().join("knotoid-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let out_a = dir.join("kink-a.svg");
    let out_b = dir.join("kink-b.svg");
    for path in [&out_a, &out_b] {
        let out = run(&["render", "flatknotoid 1+ 1+", "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    let a = std::fs::read(&out_a).unwrap();
    let b = std::fs::read(&out_b).unwrap();
    assert_eq!(a, b, "render is deterministic");
    let svg = String::from_utf8(a).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("viewBox=\"0 0 1000 1000\""));
    // One curve per arc plus the two endpoint dots.
    assert_eq!(svg.matches("<path").count(), 3);
    assert_eq!(svg.matches("<circle").count(), 2);

    // Knotted rendering adds a white halo per crossing and redraws the two
    // over-strand arcs.
    let knotted = dir.join("clasp.svg");
    let out = run(&[
        "render",
        "knotoid O1+ U2- U1+ O2-",
        "--out",
        knotted.to_str().unwrap(),
        "--shortcut",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let svg = std::fs::read_to_string(&knotted).unwrap();
    assert!(svg.contains("fill=\"white\""));
    assert!(svg.contains("stroke-dasharray"));
}
