use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use wrank::io::MatroidFile;

fn corpus(stem: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/corpus")
        .join(format!("{stem}.json"))
}

fn wrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wrank"))
        .args(args)
        .env_remove("WRANK_BINARY_CAP_BITS")
        .env_remove("WRANK_ZK_CAP_ASSIGNMENTS")
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let out = wrank(args);
    let stdout = String::from_utf8(out.stdout).expect("UTF-8 output");
    assert!(
        stdout.ends_with('\n'),
        "output not newline-terminated: {stdout:?}"
    );
    let value = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{e}: {stdout}"));
    (out.status.code().expect("exit code"), value)
}

fn path(stem: &str) -> String {
    corpus(stem).to_string_lossy().into_owned()
}

fn scratch(name: &str, contents: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn uniform_one_one_entropy_vector() {
    let (code, v) = run_json(&["entropy-vector", &path("u1_1")]);
    assert_eq!(code, 0);
    assert_eq!(v["algebraic"], serde_json::json!({"0x1": "1"}));
    assert_eq!(v["phi"], serde_json::json!({"0x1": "1"}));
}

#[test]
fn triangle_entropy_vector() {
    let (_, v) = run_json(&["entropy-vector", &path("triangle")]);
    for (key, expected) in [
        ("0x1", "1"),
        ("0x2", "1"),
        ("0x4", "1"),
        ("0x3", "2"),
        ("0x5", "2"),
        ("0x6", "2"),
        ("0x7", "2"),
    ] {
        assert_eq!(v["algebraic"][key], expected, "{key}");
        assert_eq!(v["phi"][key], expected, "{key}");
    }
    let (_, v) = run_json(&["entropy-vector", &path("figure2a")]);
    assert_eq!(v["algebraic"]["0x7"], "4");
    let keys: Vec<&String> = v["algebraic"].as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort_by_key(|k| u32::from_str_radix(&k[2..], 16).unwrap());
    assert_eq!(keys, sorted);
}

#[test]
fn rank_examples() {
    let (code, v) = run_json(&["rank", &path("triangle")]);
    assert_eq!(code, 0);
    assert_eq!(v["rank"], 2);
    assert_eq!(v["weighted_rank"], "2");

    let (_, v) = run_json(&["rank", &path("figure2a")]);
    assert_eq!(v["weighted_rank"], "4");

    let (_, v) = run_json(&["rank", &path("fano")]);
    assert_eq!(v["rank"], 3);

    let (_, v) = run_json(&["rank", &path("triangle_w123"), "--subset", "1,2"]);
    assert_eq!(v["subset"], "0x3");
    assert_eq!(v["weighted_rank"], "3");
    let (_, v) = run_json(&["rank", &path("triangle_w123"), "--subset", "0x6"]);
    assert_eq!(v["weighted_rank"], "5");
}

#[test]
fn verify_examples() {
    let (code, v) = run_json(&["verify", &path("fano"), "--claim", "entropic"]);
    assert_eq!((code, &v["pass"]), (0, &Value::Bool(true)));

    let (code, v) = run_json(&["verify", &path("triangle_w123"), "--claim", "vertex"]);
    assert_eq!((code, &v["pass"]), (0, &Value::Bool(true)));
    assert_eq!(v["details"]["tight_rank"], 7);

    let (code, v) = run_json(&["verify", &path("triangle"), "--claim", "zk", "--k", "3"]);
    assert_eq!(code, 0);
    let full = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["subset"] == "0x7")
        .unwrap();
    assert_eq!(full["algebraic"], "2*log2(3)");

    let (code, _) = run_json(&["verify", &path("k4"), "--claim", "submodular"]);
    assert_eq!(code, 0);
}

#[test]
fn circuits_of_fano() {
    let (_, v) = run_json(&["circuits", &path("fano")]);
    assert_eq!(v["count"], 14);
    let sizes: Vec<usize> = v["circuits"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["elements"].as_array().unwrap().len())
        .collect();
    assert_eq!(sizes.iter().filter(|&&s| s == 3).count(), 7);
    assert_eq!(sizes.iter().filter(|&&s| s == 4).count(), 7);
}

#[test]
fn figure2_values() {
    let (code, v) = run_json(&["figure2"]);
    assert_eq!(code, 0);
    let exact: Vec<&str> = v["figures"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["algebraic"].as_str().unwrap())
        .collect();
    assert_eq!(exact, ["4", "5", "2"]);
    assert!(v["note"].as_str().unwrap().contains("not preserved"));
}

#[test]
fn false_claim_exits_one() {
    // element 2 is a loop but carries weight 1, so phi leaves the polytope
    let file = scratch(
        "loop.json",
        r#"{"type": "binary", "columns": ["1", "0"], "weights": [1, 1]}"#,
    );
    let (code, v) = run_json(&["verify", &file, "--claim", "vertex"]);
    assert_eq!(code, 1);
    assert_eq!(v["pass"], false);
    assert!(v["first_failure"].is_string());
}

#[test]
fn usage_and_parse_errors_exit_two() {
    let bad = scratch(
        "bad.json",
        "{\"type\": \"binary\",\n \"columns\": [\"10\", \"1\"]}",
    );
    let out = wrank(&["rank", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("columns[1]"));

    let broken = scratch("broken.json", "{\"type\": \"binary\",\n \"columns\": [");
    let out = wrank(&["rank", &broken]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));

    let (triangle, fano, u24) = (path("triangle"), path("fano"), path("u2_4"));
    for args in [
        vec!["rank", &triangle, "--subset", "0x8"],
        vec!["verify", &triangle, "--claim", "zk"],
        vec!["verify", &fano, "--claim", "zk", "--k", "2"],
        vec!["verify", &u24, "--claim", "entropic"],
        vec!["verify", &triangle, "--claim", "nonsense"],
        vec!["rank", "/nonexistent.json"],
        vec!["figure2", "--tolerance", "0"],
    ] {
        assert_eq!(wrank(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn cap_exceeded_downgrades_to_algebraic() {
    let out = Command::new(env!("CARGO_BIN_EXE_wrank"))
        .args(["verify", &path("figure2b"), "--claim", "entropic"])
        .env("WRANK_BINARY_CAP_BITS", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["warnings"][0]
        .as_str()
        .unwrap()
        .contains("algebraic only"));

    let out = Command::new(env!("CARGO_BIN_EXE_wrank"))
        .args([
            "entropy-vector",
            &path("figure2b"),
            "--method",
            "bruteforce",
        ])
        .env("WRANK_BINARY_CAP_BITS", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn corpus_round_trips() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/corpus");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
        let parsed = MatroidFile::from_json(&text).unwrap();
        let again = MatroidFile::from_json(&parsed.to_json()).unwrap();
        assert_eq!(parsed, again);
        let (m, w) = parsed.parts().unwrap();
        let rebuilt = MatroidFile::from_parts(parsed.name.clone(), &m, &w);
        assert_eq!(rebuilt.parts().unwrap(), (m, w));
        seen += 1;
    }
    assert!(seen >= 13);
}

#[test]
fn output_is_deterministic() {
    let (w123, k4, fig2c) = (path("triangle_w123"), path("k4"), path("figure2c"));
    let runs = [
        vec!["verify", &w123, "--claim", "vertex", "--seed", "9"],
        vec!["verify", &k4, "--claim", "entropic"],
        vec!["entropy-vector", &fig2c],
        vec!["figure2", "--output", "text"],
    ];
    for args in runs {
        let first = wrank(&args).stdout;
        let second = wrank(&args).stdout;
        assert_eq!(first, second, "{args:?}");
    }
}
