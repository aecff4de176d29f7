use std::path::PathBuf;
use std::process::Command;

use pairweight_cli::{parse_code_file, run, Report, EXIT_FAULT, EXIT_INPUT, EXIT_OK};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn pw(args: &[&str]) -> pairweight_cli::Outcome {
    run(std::iter::once("pairweight").chain(args.iter().copied()))
}

fn temp_file(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("pairweight-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

const CODES: [&str; 9] = [
    "pair_not_hamming.code",
    "hamming_not_pair.code",
    "mpds_ternary.code",
    "full_support.code",
    "split_pairs.code",
    "equiweight_n21.code",
    "iso_source.code",
    "iso_target_kept.code",
    "iso_target_broken.code",
];

fn every_invocation() -> Vec<Vec<String>> {
    let mut all = Vec::new();
    for f in CODES {
        for cmd in ["weights", "hierarchy", "equiweight", "mpds", "ldp"] {
            if cmd == "ldp" && f == "equiweight_n21.code" {
                continue; // past the subset enumeration guard
            }
            all.push(vec![cmd.to_string(), fixture(f)]);
        }
        all.push(vec!["equiweight".into(), fixture(f), "--verify".into()]);
    }
    for f in ["iso_kept.iso", "iso_broken.iso"] {
        all.push(vec!["iso".into(), fixture(f), "--verify".into()]);
    }
    all.push(["equiweight", &fixture("iso_source.code"), "--r", "2", "--verify"].map(String::from).to_vec());
    all.push(["tmatrix", "--q", "2", "--k", "3"].map(String::from).to_vec());
    all.push(["tmatrix", "--q", "3", "--k", "3", "--check"].map(String::from).to_vec());
    all.push(["random", "--q", "4", "--n", "6", "--k", "3", "--seed", "9"].map(String::from).to_vec());
    all.push(["bench", "--q", "5", "--n", "6", "--k", "3"].map(String::from).to_vec());
    all
}

#[test]
fn json_reports_round_trip() {
    for args in every_invocation() {
        let mut full = vec!["--json"];
        full.extend(args.iter().map(String::as_str));
        let out = pw(&full);
        assert_eq!(out.code, EXIT_OK, "{args:?}: {}", out.stderr);
        let parsed: Report = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        assert_eq!(parsed.to_json(), out.stdout, "{args:?}");
    }
}

#[test]
fn text_reports_are_deterministic() {
    for args in every_invocation() {
        if args[0] == "bench" {
            continue; // timings
        }
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = pw(&a);
        assert_eq!(first.code, EXIT_OK, "{args:?}: {}", first.stderr);
        assert_eq!(first, pw(&a), "{args:?}");
    }
}

#[test]
fn fixture_verdicts() {
    let out = pw(&["equiweight", &fixture("equiweight_n21.code")]);
    assert!(out.stdout.contains("pair equiweight: YES (line-sums), weight 14"), "{}", out.stdout);
    let out = pw(&["iso", &fixture("iso_broken.iso")]);
    assert!(out.stdout.contains("preserves pair weights: NO"), "{}", out.stdout);
    assert!(out.stdout.contains("witness: line #"), "{}", out.stdout);
    let out = pw(&["mpds", &fixture("mpds_ternary.code")]);
    assert!(out.stdout.contains("MPDS: YES"), "{}", out.stdout);
    let out = pw(&["ldp", &fixture("full_support.code")]);
    assert!(out.stdout.contains("{3, 3}"), "{}", out.stdout);
}

#[test]
fn rationals_are_fractions() {
    let out = pw(&["--json", "equiweight", &fixture("hamming_not_pair.code")]);
    assert!(out.stdout.contains("\"value\": \"1/2\""), "{}", out.stdout);
    assert!(!out.stdout.contains("0.5"));
}

#[test]
fn undecided_case_settled_by_verify() {
    // [10, 4] binary code: necessary sums constant, plane sums not
    let text = "q 2\nn 10\nk 4\n\
                0 0 0 1 0 1 0 1 1 1\n\
                1 0 1 0 0 1 0 0 1 0\n\
                0 1 0 1 0 0 1 0 1 0\n\
                1 1 0 1 1 1 0 0 0 1\n";
    let file = temp_file("undecided.code", text);
    let out = pw(&["--json", "equiweight", &file, "--r", "2"]);
    let Report::Equiweight { pair, .. } = serde_json::from_str(&out.stdout).unwrap() else { panic!() };
    assert_eq!(pair.answer, pairweight::Answer::Indeterminate);
    let out = pw(&["--json", "equiweight", &file, "--r", "2", "--verify"]);
    assert_eq!(out.code, EXIT_OK);
    let Report::Equiweight { pair, oracle, .. } = serde_json::from_str(&out.stdout).unwrap() else { panic!() };
    assert_eq!((pair.answer, pair.decided_by), (pairweight::Answer::No, pairweight::Rule::BruteForce));
    assert!(oracle.unwrap().agrees);
    assert!(out.stdout.contains("\"decided_by\": \"brute-force\""));
}

#[test]
fn input_errors_exit_2() {
    let bad_entry = temp_file("bad_entry.code", "q 3\nn 2\nk 1\n5 1\n");
    let out = pw(&["weights", &bad_entry]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("line 4"), "{}", out.stderr);
    let rank = temp_file("rank.code", "q 2\nn 3\nk 2\n1 1 0\n1 1 0\n");
    let out = pw(&["hierarchy", &rank]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("line 4"), "{}", out.stderr);
    assert_eq!(pw(&["weights", "/no/such/file.code"]).code, EXIT_INPUT);
    assert_eq!(pw(&["frobnicate"]).code, EXIT_INPUT);
    assert_eq!(pw(&["weights", &fixture("split_pairs.code"), "--bogus"]).code, EXIT_INPUT);
    assert_eq!(pw(&["equiweight", &fixture("split_pairs.code"), "--r", "2"]).code, EXIT_INPUT);
    assert_eq!(pw(&["iso", &fixture("split_pairs.code")]).code, EXIT_INPUT);
    assert_eq!(pw(&["random", "--q", "6", "--n", "4", "--k", "2"]).code, EXIT_INPUT);
    assert_eq!(pw(&["--help"]).code, EXIT_OK);
    let guarded = pw(&["ldp", &fixture("equiweight_n21.code")]);
    assert_eq!(guarded.code, EXIT_INPUT);
    assert!(guarded.stderr.contains("limit"), "{}", guarded.stderr);
}

#[test]
fn random_output_is_a_code_file() {
    let a = pw(&["random", "--q", "3", "--n", "7", "--k", "3", "--seed", "11"]);
    assert_eq!(a, pw(&["random", "--q", "3", "--n", "7", "--k", "3", "--seed", "11"]));
    let code = parse_code_file(&a.stdout).unwrap();
    assert_eq!((code.n(), code.k()), (7, 3));
    assert_ne!(a, pw(&["random", "--q", "3", "--n", "7", "--k", "3", "--seed", "12"]));
}

#[test]
fn bench_csv() {
    let out = pw(&["bench", "--q", "3", "--n", "6", "--k", "2", "--no-scan"]);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines[0], "q,n,k,criterion_work,bruteforce_work,criterion_ns,bruteforce_ns");
    let fields: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(&fields[..3], &["3", "6", "2"]);
    assert_eq!(fields[4], "9");
    assert_eq!(fields[6], "");
    let out = pw(&["bench", &fixture("equiweight_n21.code"), "--sequential"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.lines().nth(1).unwrap().starts_with("2,21,3,"));
}

#[test]
fn tmatrix_rows() {
    let out = pw(&["tmatrix", "--q", "2", "--k", "3"]);
    let rows: Vec<&str> = out.stdout.lines().skip(1).collect();
    assert_eq!(rows.len(), 7);
    assert!(rows.iter().all(|r| r.split_whitespace().next().unwrap().matches('1').count() == 3));
    let out = pw(&["tmatrix", "--q", "2", "--k", "4", "--check"]);
    assert!(!out.stdout.contains("FAIL") && out.stdout.contains("PASS"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_pairweight");
    let ok = Command::new(bin).args(["iso", &fixture("iso_kept.iso"), "--verify"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("preserves pair weights: YES"));
    let bad = Command::new(bin).args(["ldp"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_INPUT));
    assert_ne!(EXIT_FAULT, EXIT_INPUT);
}
