use std::fs;
use std::process::Command;

use grlimit_cli::cache::{cache_key, Cache};
use serde_json::Value;

fn run(args: &[&str]) -> (u8, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("grlimit").chain(args.iter().copied());
    let code = grlimit_cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn a_series_rows() {
    let v = json(&["a-series", "--k", "2", "--n", "4", "--max-m", "2"]);
    let rows: Vec<&str> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["a_m"].as_str().unwrap())
        .collect();
    assert_eq!(rows, ["1", "48", "15120"]);
    assert_eq!(v["rows"][2]["m"], 2);
}

#[test]
fn limit_check_p1() {
    let (code, out, _) = run(&["limit-check", "--k", "1", "--n", "2", "--d", "2"]);
    assert_eq!(code, 0);
    assert!(
        out.starts_with(r#"{"degree_ok":true,"leading":"1/4","expected":"1/4""#),
        "{out}"
    );
}

#[test]
fn dwork_check_p1() {
    let v = json(&[
        "dwork-check",
        "--k",
        "1",
        "--n",
        "2",
        "--p",
        "3",
        "--s",
        "1",
        "--cutoff",
        "4",
    ]);
    assert_eq!(v["pass"], true);
    assert_eq!(v["first_failure_degree"], Value::Null);
    assert_eq!(v["truncations"]["current"]["coeffs"][1], "2");
    let v = json(&[
        "dwork-check",
        "--k",
        "1",
        "--n",
        "3",
        "--p",
        "3",
        "--s",
        "1",
        "--cutoff",
        "6",
        "--levels",
        "2",
    ]);
    assert_eq!(v["factorization"]["pass"], true);
    assert_eq!(v["factorization"]["tail_trivial"], true);
}

#[test]
fn constant_term_engines() {
    let v = json(&["constant-term", "--k", "2", "--n", "4", "--d", "8"]);
    assert_eq!(v["coeff"], "15120");
    assert_eq!(v["engines"]["direct"], "15120");
    assert_eq!(v["agree"], true);
    let v = json(&[
        "constant-term",
        "--k",
        "1",
        "--n",
        "3",
        "--d",
        "4",
        "--engine",
        "direct",
    ]);
    assert_eq!(v["coeff"], "0");
    assert_eq!(v["m"], Value::Null);
    let v = json(&[
        "constant-term",
        "--k",
        "1",
        "--n",
        "2",
        "--d",
        "2",
        "--terms",
    ]);
    assert_eq!(v["power"]["arity"], 3);
    assert_eq!(v["power"]["terms"][0]["exp"], serde_json::json!([0, 1, -1]));
}

#[test]
fn vertex_values() {
    let v = json(&[
        "vertex", "--k", "1", "--n", "2", "--d", "1", "--omega", "1/2",
    ]);
    assert_eq!(v["value"], "1/4");
    assert_eq!(v["omega"], "1/2");
    let v = json(&[
        "vertex", "--k", "1", "--n", "2", "--d", "1", "--omega", "-3/2", "--u", "1/3,-2/5",
    ]);
    // (ω)(ω + u2 - u1) / (1 + u2 - u1)
    assert_eq!(v["value"], "201/16");
    assert_eq!(v["u"], serde_json::json!(["1/3", "-2/5"]));
}

#[test]
fn phi_series_coefficients() {
    let v = json(&["phi-series", "--k", "2", "--n", "4", "--max-d", "1"]);
    assert_eq!(
        v["coefficients"][1]["coeffs"],
        serde_json::json!(["0", "0", "2", "-2", "2"])
    );
    assert_eq!(v["coefficients"][1]["degree"], 4);
}

#[test]
fn polytope_and_graph() {
    let v = json(&["polytope-check", "--k", "2", "--n", "4"]);
    assert_eq!(v["pass"], true);
    assert_eq!(v["dim"], 4);
    assert!(v["facets"]
        .as_array()
        .unwrap()
        .iter()
        .all(|f| f["rhs"] == 1));
    assert_eq!(v["interior_points"], serde_json::json!([[0, 0, 0, 0]]));

    let g = json(&["graph", "--k", "2", "--n", "5"]);
    let vertices = g["vertices"].as_array().unwrap();
    assert_eq!(vertices.len(), 8);
    assert_eq!(vertices[6], serde_json::json!({"type": "z1"}));
    assert_eq!(vertices[7], serde_json::json!({"type": "z2"}));
    assert_eq!(
        vertices[0],
        serde_json::json!({"type": "box", "col": 1, "row": 1, "weight": 2})
    );
    assert_eq!(g["edges"].as_array().unwrap().len(), 2 * 2 * 3 - 5 + 2);
}

#[test]
fn csv_and_pretty() {
    let (code, out, _) = run(&[
        "a-series", "--k", "1", "--n", "2", "--max-m", "3", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    let mut r = csv::Reader::from_reader(out.as_bytes());
    assert_eq!(r.headers().unwrap(), vec!["m", "a_m"]);
    let rows: Vec<Vec<String>> = r
        .records()
        .map(|x| x.unwrap().iter().map(String::from).collect())
        .collect();
    assert_eq!(rows, [["0", "1"], ["1", "2"], ["2", "6"], ["3", "20"]]);

    let (code, out, _) = run(&[
        "phi-series",
        "--k",
        "1",
        "--n",
        "2",
        "--max-d",
        "1",
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, "d,power,coeff\n0,0,1\n1,0,0\n1,1,0\n1,2,1\n");

    let (code, out, _) = run(&[
        "limit-check",
        "--k",
        "1",
        "--n",
        "3",
        "--d",
        "1",
        "--format",
        "pretty",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("leading: 1\n"), "{out}");
}

#[test]
fn exit_code_matrix() {
    for k in 0..4u32 {
        for n in 0..7u32 {
            let (code, _, err) = run(&[
                "a-series",
                "--k",
                &k.to_string(),
                "--n",
                &n.to_string(),
                "--max-m",
                "1",
            ]);
            let valid = k >= 1 && n >= 2 * k;
            assert_eq!(code, if valid { 0 } else { 2 }, "k={k} n={n}: {err}");
            if !valid {
                assert!(err.contains("invalid shape"), "{err}");
            }
        }
    }
    let usage: &[&[&str]] = &[
        &[
            "a-series", "--k", "1", "--n", "2", "--max-m", "1", "--bogus",
        ],
        &["frobnicate"],
        &[],
        &["a-series", "--k", "1", "--n", "2"],
        &[
            "vertex", "--k", "1", "--n", "2", "--d", "1", "--omega", "1/0",
        ],
        &["vertex", "--k", "1", "--n", "2", "--d", "1", "--omega", "x"],
        &[
            "vertex", "--k", "1", "--n", "2", "--d", "9", "--omega", "1/3",
        ],
        &[
            "vertex", "--k", "1", "--n", "2", "--d", "1", "--omega", "1/3", "--u", "1",
        ],
        &["phi-series", "--k", "1", "--n", "2", "--max-d", "9"],
        &["phi-series", "--k", "2", "--n", "5", "--max-d", "1"],
        &["constant-term", "--k", "1", "--n", "2", "--d", "14"],
        &[
            "dwork-check",
            "--k",
            "1",
            "--n",
            "2",
            "--p",
            "4",
            "--s",
            "1",
            "--cutoff",
            "4",
        ],
        &[
            "dwork-check",
            "--k",
            "1",
            "--n",
            "2",
            "--p",
            "3",
            "--s",
            "0",
            "--cutoff",
            "4",
        ],
        &[
            "dwork-check",
            "--k",
            "1",
            "--n",
            "2",
            "--p",
            "65537",
            "--s",
            "2",
            "--cutoff",
            "4",
        ],
        &["polytope-check", "--k", "3", "--n", "6"],
        &[
            "a-series",
            "--k",
            "1",
            "--n",
            "2",
            "--max-m",
            "1",
            "--power-budget",
            "0",
        ],
        &[
            "a-series", "--k", "1", "--n", "2", "--max-m", "1", "--format", "xml",
        ],
        &["a-series", "--k", "1", "--n", "2", "--max-m", "100"],
    ];
    for args in usage {
        let (code, _, err) = run(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify-all"));
    let ok: &[&[&str]] = &[
        &[
            "phi-series",
            "--k",
            "1",
            "--n",
            "2",
            "--max-d",
            "9",
            "--phi-max-depth",
            "18",
        ],
        &[
            "constant-term",
            "--k",
            "1",
            "--n",
            "2",
            "--d",
            "14",
            "--power-budget",
            "14",
        ],
        &[
            "vertex", "--k", "1", "--n", "2", "--d", "1", "--omega", "1/3", "--u", "0,1/2",
        ],
    ];
    for args in ok {
        assert_eq!(run(args).0, 0, "{args:?}");
    }
}

#[test]
fn deterministic_output() {
    let cmds: &[&[&str]] = &[
        &["a-series", "--k", "2", "--n", "5", "--max-m", "3"],
        &["phi-series", "--k", "1", "--n", "3", "--max-d", "2"],
        &["polytope-check", "--k", "2", "--n", "5"],
        &["verify-all", "--only", "2,5,11", "--seed", "7"],
    ];
    for args in cmds {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.0, 0, "{args:?}");
        assert_eq!(a.1, b.1, "{args:?}");
    }
}

#[test]
fn verify_all_subset() {
    let v = json(&["verify-all", "--only", "2,3,9,10"]);
    let ids: Vec<u64> = v["criteria"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_u64().unwrap())
        .collect();
    assert_eq!(ids, [2, 3, 9, 10]);
    assert_eq!(v["pass"], true);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = [
        "a-series",
        "--k",
        "2",
        "--n",
        "4",
        "--max-m",
        "3",
        "--cache-dir",
        d,
    ];
    let (code, first, _) = run(&args);
    assert_eq!(code, 0);

    let key = cache_key(
        "a-series",
        &[("k", "2".into()), ("n", "4".into()), ("max_m", "3".into())],
    );
    let cache = Cache::new(dir.path());
    let path = cache.path_for(&key);
    assert!(path.exists());
    let name = path.file_name().unwrap().to_str().unwrap();
    assert_eq!(name.len(), 64 + ".json".len());
    let entry = cache.get(&key).unwrap();
    assert_eq!(entry.key, key);
    assert!(entry.created_at > 0);

    // hits reproduce the uncached bytes, with and without verification
    assert_eq!(run(&args).1, first);
    let mut verify = args.to_vec();
    verify.push("--verify-cache");
    assert_eq!(run(&verify), (0, first.clone(), String::new()));
    let (_, uncached, _) = run(&["a-series", "--k", "2", "--n", "4", "--max-m", "3"]);
    assert_eq!(uncached, first);

    // a tampered entry is served as-is, but verification catches it
    let mut tampered = entry.clone();
    tampered.value["rows"][1]["a_m"] = "49".into();
    fs::write(&path, serde_json::to_string(&tampered).unwrap()).unwrap();
    assert!(run(&args).1.contains("\"49\""));
    let (code, _, err) = run(&verify);
    assert_eq!(code, 1);
    assert!(err.contains("differs"), "{err}");

    // unreadable entries are ignored and replaced
    fs::write(&path, "not json").unwrap();
    assert_eq!(run(&args).1, first);
    assert_eq!(cache.get(&key).unwrap().value, entry.value);
}

#[test]
fn no_cache_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("c");
    let d = d.to_str().unwrap();
    assert_eq!(
        run(&[
            "phi-series",
            "--k",
            "1",
            "--n",
            "2",
            "--max-d",
            "2",
            "--cache-dir",
            d,
            "--no-cache"
        ])
        .0,
        0
    );
    assert!(!dir.path().join("c").exists());
    assert_eq!(
        run(&[
            "phi-series",
            "--k",
            "1",
            "--n",
            "2",
            "--max-d",
            "2",
            "--cache-dir",
            d
        ])
        .0,
        0
    );
    assert_eq!(fs::read_dir(dir.path().join("c")).unwrap().count(), 1);
}

#[test]
fn binary_uses_env_cache_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_grlimit"))
        .args(["a-series", "--k", "1", "--n", "3", "--max-m", "2"])
        .env("GRLIMIT_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        r#"{"k":1,"n":3,"rows":[{"m":0,"a_m":"1"},{"m":1,"a_m":"6"},{"m":2,"a_m":"90"}]}"#
    );
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);

    let bad = Command::new(env!("CARGO_BIN_EXE_grlimit"))
        .args(["a-series", "--k", "2"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
