use serde_json::Value;
use zeckwin_cli::{run, EXIT_DOMAIN, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE};

fn exec(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("zeckwin").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn encode_sixteen() {
    assert_eq!(exec(&["encode", "16"]), (EXIT_OK, "100100\n".into()));
}

#[test]
fn window_of_eight() {
    assert_eq!(
        exec(&["window", "8", "--M", "5"]),
        (EXIT_OK, "00001\n".into())
    );
}

#[test]
fn decode_inverts_encode() {
    for n in (1..=10_000u64).step_by(7).chain([10_000]) {
        let (code, word) = exec(&["encode", &n.to_string()]);
        assert_eq!(code, EXIT_OK);
        let (code, back) = exec(&["decode", word.trim()]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(back.trim(), n.to_string());
    }
}

#[test]
fn exit_codes() {
    assert_eq!(exec(&["encode", "0"]).0, EXIT_DOMAIN);
    assert_eq!(exec(&["decode", "0110"]).0, EXIT_DOMAIN);
    assert_eq!(exec(&["mul", "3", "--q", "1"]).0, EXIT_DOMAIN);
    assert_eq!(exec(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(exec(&["encode", "5", "--format", "csv"]).0, EXIT_USAGE);
    assert_eq!(
        exec(&["orbit", "--M", "2", "--family", "101"]).0,
        EXIT_DOMAIN
    );
    assert_eq!(exec(&["--help"]).0, EXIT_OK);
}

#[test]
fn avoid_and_locality() {
    assert_eq!(exec(&["avoid", "00101", "--family", "101"]).1, "no\n");
    assert_eq!(exec(&["avoid", "1####", "--family", "101"]).1, "yes\n");
    let (code, out) = exec(&[
        "check-locality",
        "--q",
        "2",
        "--M",
        "1",
        "--n-cap",
        "10",
        "--d-max",
        "0",
    ]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "NotFound\n"));
}

#[test]
fn orbit_csv_table() {
    let (code, csv) = exec(&["orbit", "--n-max", "5", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "n,w_n,member");
    assert_eq!(lines[1], "0,1####,yes");
    assert_eq!(lines[3], "2,101##,no");
    assert_eq!(lines[5], "4,00100,yes");
    assert_eq!(lines.len(), 7);
}

#[test]
fn orbit_json_is_deterministic() {
    let args = ["orbit", "--n-max", "300", "--family", "101,11"];
    let (code, first) = exec(&args);
    assert_eq!(code, EXIT_OK);
    assert_eq!(exec(&args).1, first);
    let v: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["finiteness_verdict"], "undetermined");
    assert_eq!(v["M"], 5);
}

#[test]
fn theta_mode_reports_conflicts_as_domain_error() {
    let (code, _) = exec(&["orbit", "--mode", "theta", "--n-cap", "1000"]);
    assert_eq!(code, EXIT_DOMAIN);
}

#[test]
fn dot_exports() {
    let (code, dfa) = exec(&["export-dot", "dfa", "--family", "101"]);
    assert_eq!(code, EXIT_OK);
    assert!(dfa.contains("doublecircle"));
    let (code, theta) = exec(&[
        "export-dot",
        "theta",
        "--q",
        "2",
        "--M",
        "1",
        "--n-cap",
        "10",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(theta.starts_with("// conflicts:"));
    assert_eq!(
        exec(&[
            "export-dot",
            "theta",
            "--q",
            "2",
            "--M",
            "1",
            "--n-cap",
            "10"
        ])
        .1,
        theta
    );
    let (code, orbit) = exec(&[
        "export-dot",
        "orbit",
        "--n-max",
        "60",
        "--M",
        "2",
        "--family",
        "1",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(orbit.starts_with("digraph orbit {"));
    assert_eq!(
        exec(&[
            "export-dot",
            "orbit",
            "--n-max",
            "60",
            "--M",
            "2",
            "--family",
            "1"
        ])
        .1,
        orbit
    );
}

#[test]
fn theta_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = [
        "synthesize-theta",
        "--q",
        "3",
        "--M",
        "3",
        "--n-cap",
        "500",
        "--cache-dir",
        cache,
    ];
    let (code, fresh) = exec(&args);
    assert_eq!(code, EXIT_OK);
    assert!(zeckwin_cli::theta_cache_path(dir.path(), 3, 3, 500).exists());
    let (code, cached) = exec(&args);
    assert_eq!(code, EXIT_OK);
    assert_eq!(fresh, cached);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.txt");
    let (code, stdout) = exec(&["window", "16", "--M", "5", "--out", path.to_str().unwrap()]);
    assert_eq!((code, stdout.as_str()), (EXIT_OK, ""));
    assert_eq!(std::fs::read_to_string(path).unwrap(), "00100\n");
}

#[test]
fn verify_paper_reports_mismatches_as_data() {
    let (code, out) = exec(&["verify-paper", "example-3", "--n-cap", "2000"]);
    assert_eq!(code, EXIT_MISMATCH);
    let v: Value = serde_json::from_str(&out).unwrap();
    let claims = v["paper_claims"].as_array().unwrap();
    let row4 = claims.iter().find(|c| c["id"] == "table-window-4").unwrap();
    assert_eq!(row4["expected"], "10100");
    assert_eq!(row4["observed"], "00100");
    assert_eq!(row4["verdict"], "mismatch");
    assert!(claims
        .iter()
        .all(|c| c["expected"].is_string() && c["observed"].is_string()));
    assert_eq!(
        exec(&["verify-paper", "example-3", "--n-cap", "2000"]).1,
        out
    );
}
