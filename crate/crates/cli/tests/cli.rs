//! Golden tests: every case in `cases.txt` is `name|exit code|args[|stdin file]`,
//! and its stdout must match `golden/<name>.out` byte for byte.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_normrig"));
    cmd.args(args).current_dir(dir());
    match stdin {
        Some(file) => cmd.stdin(fs::File::open(dir().join(file)).unwrap()),
        None => cmd.stdin(Stdio::null()),
    };
    cmd.output().unwrap()
}

struct Case {
    name: String,
    code: i32,
    args: Vec<String>,
    stdin: Option<String>,
}

fn cases() -> Vec<Case> {
    fs::read_to_string(dir().join("cases.txt"))
        .unwrap()
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split('|').collect();
            Case {
                name: f[0].to_string(),
                code: f[1].parse().unwrap(),
                args: f[2].split_whitespace().map(String::from).collect(),
                stdin: f.get(3).map(|s| s.to_string()),
            }
        })
        .collect()
}

#[test]
fn golden_outputs() {
    let cases = cases();
    assert!(cases.len() >= 20);
    for case in &cases {
        let args: Vec<&str> = case.args.iter().map(String::as_str).collect();
        let out = run(&args, case.stdin.as_deref());
        assert_eq!(out.status.code(), Some(case.code), "{}: {}", case.name, String::from_utf8_lossy(&out.stderr));
        let want = fs::read_to_string(dir().join("golden").join(format!("{}.out", case.name))).unwrap();
        assert_eq!(String::from_utf8(out.stdout).unwrap(), want, "{}", case.name);
        if case.code != 0 {
            assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "), "{}", case.name);
        }
    }
}

#[test]
fn outputs_are_stable_across_runs() {
    for args in [
        &["experiment", "--model", "gnp", "--n", "7,9", "--samples", "50", "--seed", "9"][..],
        &["random", "--model", "m22", "--steps", "12", "--seed", "9"][..],
        &["certify", "--p", "3.5", "--seed", "4", "data/b1.edges"][..],
    ] {
        assert_eq!(run(args, None).stdout, run(args, None).stdout);
    }
}

#[test]
fn reduce_then_build_reproduces_the_input() {
    for seed in 0..8 {
        let graph = run(&["random", "--model", "m22", "--steps", "8", "--seed", &seed.to_string()], None);
        let path = std::env::temp_dir().join(format!("normrig-cli-{}-{seed}.edges", std::process::id()));
        fs::write(&path, &graph.stdout).unwrap();
        let script = run(&["reduce", path.to_str().unwrap()], None);
        assert!(script.status.success());
        fs::write(&path, &script.stdout).unwrap();
        let rebuilt = run(&["build", path.to_str().unwrap()], None);
        fs::remove_file(&path).unwrap();
        let parse = |o: &Output| normrig::io::parse_edge_list(std::str::from_utf8(&o.stdout).unwrap()).unwrap();
        assert!(normrig::is_isomorphic(&parse(&graph), &parse(&rebuilt)));
    }
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [&["check", "--bogus"][..], &["frobnicate"][..], &["rank", "--mode", "sideways"][..], &[][..]] {
        assert_eq!(run(args, None).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn documented_examples() {
    let check = run(&["check", "data/b1.edges"], None);
    assert!(String::from_utf8(check.stdout).unwrap().contains("globally_rigid_analytic: true\n"));
    let reduce = String::from_utf8(run(&["reduce", "data/b2.edges"], None).stdout).unwrap();
    let moves: Vec<&str> = reduce.lines().filter(|l| !l.starts_with('#') && !l.starts_with("base")).collect();
    assert_eq!(moves.len(), 1);
    assert!(reduce.contains("base B1\n"));
    let rank = run(&["rank", "--p", "4", "--mode", "exact", "--seed", "7", "data/k33.edges"], None);
    assert!(String::from_utf8(rank.stdout).unwrap().starts_with("rank: 9\n"));
}
