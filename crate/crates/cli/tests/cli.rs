use std::path::PathBuf;
use std::process::Command;

use rcm_cli::{run, Outcome};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn rcm(args: &[&str]) -> Outcome {
    let mut argv = vec!["rcm".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    run(argv)
}

fn scratch(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("rcm-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

/// Signed integer tokens in order of appearance.
fn numbers(s: &str) -> Vec<i64> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i].is_ascii_digit() {
            let start = if i > 0 && bytes[i - 1] == b'-' { i - 1 } else { i };
            let mut end = i;
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
            }
            out.push(s[start..end].parse().unwrap());
            i = end;
        } else {
            i += 1;
        }
    }
    out
}

#[test]
fn rcm_verdict_for_ideal_in_x() {
    let out = rcm(&["rcm", &fixture("ex35.mod")]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout.trim_end(), "RCM w.r.t. Q: yes, rdim 2; w.r.t. P: no");
}

#[test]
fn json_fixture_matches_text_fixture() {
    let a = rcm(&["analyze", "--format", "json", &fixture("ex35.mod")]);
    let b = rcm(&["analyze", "--format", "json", &fixture("ex35.json")]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn component_resolution_rejects_hypersurface() {
    let out = rcm(&["thm22", "--q", "1", "--j", "-2", &fixture("hypersurface.mod")]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("not relative Cohen-Macaulay"), "{}", out.stderr);
}

#[test]
fn oracle_agrees_on_nilpotent_example() {
    let out = rcm(&["oracle-check", &fixture("ex36_3.mod")]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.starts_with("0 mismatches"), "{}", out.stdout);
}

#[test]
fn text_and_json_carry_the_same_numbers() {
    let ex35 = fixture("ex35.mod");
    let ex36 = fixture("ex36_2.mod");
    let cases: Vec<Vec<&str>> = vec![
        vec!["analyze", &ex35],
        vec!["analyze", &ex36],
        vec!["rcm", &ex35],
        vec!["rcm", &ex36],
        vec!["resolve", &ex35],
        vec!["lc", "--i", "2", "--j-min", "-6", "--j-max", "-1", &ex35],
        vec!["thm22", "--q", "2", "--j", "-4", &ex35],
        vec!["oracle-check", "--k-window", "-1:3", "--j-window", "-6:2", &ex35],
        vec!["descent", &ex35],
        vec!["maximal", &ex35],
    ];
    for args in cases {
        let text = rcm(&args);
        let mut json_args = args.clone();
        json_args.extend(["--format", "json"]);
        let json = rcm(&json_args);
        assert_eq!(text.code, 0, "{args:?}: {}", text.stderr);
        assert_eq!(json.code, 0, "{args:?}: {}", json.stderr);
        serde_json::from_str::<serde_json::Value>(&json.stdout).unwrap();
        assert_eq!(numbers(&text.stdout), numbers(&json.stdout), "{args:?}");
    }
}

#[test]
fn exit_code_matrix() {
    let ex35 = fixture("ex35.mod");
    let hyper = fixture("hypersurface.mod");
    let mixed = scratch("mixed.mod", "ring p=32003 m=1 n=1\ntwist 0 0\nrelation x1 + y1\n");
    let garbage = scratch("garbage.mod", "ring p=32003 m=1 n=1\ntwist 0 0\nrelation x1 +* y1\n");
    let bad_prime = scratch("prime.mod", "ring p=32004 m=1 n=1\ntwist 0 0\n");
    let zero = scratch("zero.mod", "ring p=32003 m=1 n=1\ntwist 0 0\nrelation 1\n");
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["analyze", &ex35], 0),
        (vec!["rcm", &hyper], 0),
        (vec!["resolve", &hyper], 0),
        (vec!["lc", "--i", "1", "--j-min", "-3", "--j-max", "0", &hyper], 0),
        (vec!["corpus", "gen", "ex35"], 0),
        (vec!["corpus", "list"], 0),
        (vec!["thm22", "--q", "1", "--j", "-2", &hyper], 1),
        (vec!["thm22", "--q", "1", "--j", "-2", &ex35], 1),
        (vec!["descent", &hyper], 1),
        (vec!["analyze", &zero], 1),
        (vec!["analyze", "/nonexistent/module.mod"], 2),
        (vec!["analyze", &mixed], 2),
        (vec!["analyze", &garbage], 2),
        (vec!["analyze", &bad_prime], 2),
        (vec!["analyze", "--field", "4", &ex35], 2),
        (vec!["lc", "--i", "1", "--j-min", "2", "--j-max", "0", &ex35], 2),
        (vec!["oracle-check", "--k-window", "5", &ex35], 2),
        (vec!["corpus", "gen", "no_such_entry"], 2),
        (vec!["frobnicate"], 2),
        (vec!["--help"], 0),
    ];
    for (args, want) in cases {
        let out = rcm(&args);
        assert_eq!(out.code, want, "{args:?}: {}{}", out.stdout, out.stderr);
    }
}

#[test]
fn parse_errors_report_position() {
    let garbage = scratch("position.mod", "ring p=32003 m=1 n=1\ntwist 0 0\nrelation x1 + z\n");
    let out = rcm(&["analyze", &garbage]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 3, column 15"), "{}", out.stderr);
}

#[test]
fn corpus_entries_round_trip_through_files() {
    let list = rcm(&["corpus", "list"]);
    for name in list.stdout.lines() {
        let mut resolutions = Vec::new();
        for fmt in ["text", "json"] {
            let generated = rcm(&["corpus", "gen", name, "--format", fmt]);
            assert_eq!(generated.code, 0, "{name}: {}", generated.stderr);
            let path = scratch(&format!("{name}.{fmt}"), &generated.stdout);
            let res = rcm(&["resolve", "--format", "json", &path]);
            assert_eq!(res.code, 0, "{name}: {}", res.stderr);
            resolutions.push(res.stdout);
        }
        assert_eq!(resolutions[0], resolutions[1], "{name}");
    }
}

#[test]
fn field_override_changes_characteristic() {
    let out = rcm(&["corpus", "gen", "ex35", "--field", "101"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("ring p=101 m=2 n=2"), "{}", out.stdout);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_rcm");
    let ok = Command::new(bin).args(["rcm", &fixture("ex35.mod")]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout).trim_end(), "RCM w.r.t. Q: yes, rdim 2; w.r.t. P: no");
    let rejected =
        Command::new(bin).args(["thm22", "--q", "1", "--j", "-2", &fixture("hypersurface.mod")]).output().unwrap();
    assert_eq!(rejected.status.code(), Some(1));
    let missing = Command::new(bin).args(["analyze", "/nonexistent.mod"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
}
