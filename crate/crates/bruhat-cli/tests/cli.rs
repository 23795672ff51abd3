//! End-to-end tests of the `bruhat` binary: stdout payloads, stderr routing,
//! and the exit-code contract (0 ok, 1 selftest failure, 2 usage, 3 not an
//! interval, 4 resource cap).

use std::path::PathBuf;
use std::process::{Command, Output};

use bruhat::Permutation;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bruhat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("bruhat-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn count_interval_prints_the_exact_size() {
    let out = run(&["count-interval", "1,3,2", "3,2,1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "3\n");
    assert_eq!(stderr(&out), "");
}

#[test]
fn count_interval_accepts_every_strategy() {
    for strategy in ["auto", "brute", "width-dp", "decomposition"] {
        let out = run(&["count-interval", "1,3,2", "3,2,1", "--strategy", strategy]);
        assert_eq!(code(&out), 0, "{strategy}: {}", stderr(&out));
        assert_eq!(stdout(&out), "3\n", "{strategy}");
    }
}

#[test]
fn count_le_counts_from_the_identity() {
    let out = run(&["count-le", "--perm", "3,1,2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "3\n");
}

#[test]
fn incomparable_endpoints_exit_3_via_stderr() {
    let out = run(&["count-interval", "2,1,3", "1,3,2"]);
    assert_eq!(code(&out), 3);
    assert_eq!(stdout(&out), "");
    assert!(!stderr(&out).is_empty());
}

#[test]
fn malformed_permutations_exit_2() {
    for bad in ["2,2,1", "banana", "0,1", "1,2,4"] {
        let out = run(&["width", bad]);
        assert_eq!(code(&out), 2, "{bad}");
        assert_eq!(stdout(&out), "", "{bad}");
        assert!(!stderr(&out).is_empty(), "{bad}");
    }
}

#[test]
fn unknown_flags_and_subcommands_exit_2() {
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["width", "1,2", "--bogus"])), 2);
    assert_eq!(code(&run(&[])), 2);
}

#[test]
fn help_exits_0() {
    let out = run(&["--help"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("count-interval"));
}

#[test]
fn brute_force_cap_exits_4() {
    let big = (1..=15).rev().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
    let out = run(&["count-le", "--perm", &big, "--strategy", "brute"]);
    assert_eq!(code(&out), 4);
    assert_eq!(stdout(&out), "");
    assert!(stderr(&out).contains("cap"));
}

#[test]
fn state_budget_exhaustion_exits_4() {
    let reversal = (1..=30).rev().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
    let out = run(&[
        "count-le", "--perm", &reversal, "--strategy", "width-dp", "--budget", "1000",
    ]);
    assert_eq!(code(&out), 4);
    assert!(stderr(&out).contains("budget"));
}

#[test]
fn perm_and_poset_flags_are_mutually_exclusive_and_one_is_required() {
    let path = temp_file("tiny.poset", "2\n1 2\n");
    let both = run(&["count-le", "--perm", "1,2", "--poset", path.to_str().unwrap()]);
    assert_eq!(code(&both), 2);
    let neither = run(&["count-le"]);
    assert_eq!(code(&neither), 2);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn poset_files_are_counted_by_brute_force() {
    let contents = "# five elements, the poset of 2 4 1 3 5\n5\n1 3\n2 3\n2 4\n3 5\n4 5\n";
    let path = temp_file("fig.poset", contents);
    let file = path.to_str().unwrap();

    let auto = run(&["count-le", "--poset", file]);
    assert_eq!(code(&auto), 0, "{}", stderr(&auto));
    assert_eq!(stdout(&auto), "5\n");

    let oracle = run(&["oracle", "count-le", "--poset", file]);
    assert_eq!(stdout(&oracle), "5\n");

    // only brute force reads posets: other strategies need a permutation
    let dp = run(&["count-le", "--poset", file, "--strategy", "decomposition"]);
    assert_eq!(code(&dp), 2);
    assert!(!stderr(&dp).is_empty());

    std::fs::remove_file(path).unwrap();
}

#[test]
fn cyclic_poset_files_exit_2() {
    let path = temp_file("cycle.poset", "3\n1 2\n2 3\n3 1\n");
    let out = run(&["count-le", "--poset", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(!stderr(&out).is_empty());
    std::fs::remove_file(path).unwrap();
}

#[test]
fn missing_poset_file_exits_2() {
    let out = run(&["count-le", "--poset", "/nonexistent/no.poset"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn width_and_intrinsic_width() {
    let w = run(&["width", "2,4,1,3,5"]);
    assert_eq!((code(&w), stdout(&w)), (0, "2\n".into()));
    let iw = run(&["iwidth", "2,4,1,3,5"]);
    assert_eq!((code(&iw), stdout(&iw)), (0, "2\n".into()));
    let sep = run(&["iwidth", "2,3,1,4,8,9,7,6,5"]);
    assert_eq!((code(&sep), stdout(&sep)), (0, "1\n".into()));
}

#[test]
fn covers_lists_each_cover_once() {
    let out = run(&["covers", "1,2,3"]);
    assert_eq!(code(&out), 0);
    let body = stdout(&out);
    let mut lines: Vec<&str> = body.lines().collect();
    lines.sort_unstable();
    assert_eq!(lines, vec!["1 3 2", "2 1 3"]);
}

#[test]
fn decompose_renders_text_and_json() {
    let text = run(&["decompose", "2,3,1,4,8,9,7,6,5"]);
    assert_eq!(code(&text), 0);
    let body = stdout(&text);
    assert!(body.starts_with("series (span 9)\n"), "{body}");
    assert!(body.contains("parallel (span 5)"), "{body}");

    let json = run(&["decompose", "2,3,1,4,8,9,7,6,5", "--json"]);
    assert_eq!(code(&json), 0);
    let tree: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(tree["kind"], "series");
    assert_eq!(tree["span"], 9);
    assert_eq!(tree["children"].as_array().unwrap().len(), 3);
    assert_eq!(tree["children"][2]["kind"], "parallel");
    assert_eq!(tree["children"][2]["children"].as_array().unwrap().len(), 4);

    let simple = run(&["decompose", "2,4,1,3", "--json"]);
    let tree: serde_json::Value = serde_json::from_str(&stdout(&simple)).unwrap();
    assert_eq!(tree["kind"], "indecomposable");
    assert_eq!(tree["skeleton"], serde_json::json!([2, 4, 1, 3]));
}

#[test]
fn oracle_commands_match_the_fast_paths() {
    let count = run(&["oracle", "count-le", "--perm", "3,1,2"]);
    assert_eq!(stdout(&count), "3\n");

    let interval = run(&["oracle", "count-interval", "1,3,2", "3,2,1"]);
    assert_eq!(stdout(&interval), "3\n");

    let incomparable = run(&["oracle", "count-interval", "2,1,3", "1,3,2"]);
    assert_eq!(code(&incomparable), 3);

    let width = run(&["oracle", "width", "2,4,1,3,5"]);
    assert_eq!(stdout(&width), "2\n");

    let extensions = run(&["oracle", "extensions", "3,1,2"]);
    let listing = stdout(&extensions);
    let mut lines: Vec<&str> = listing.lines().collect();
    lines.sort_unstable();
    assert_eq!(lines, vec!["1 2 3", "1 3 2", "3 1 2"]);
}

#[test]
fn gen_is_deterministic_per_seed_and_index() {
    let a = run(&["gen", "--n", "8", "--seed", "42"]);
    let b = run(&["gen", "--n", "8", "--seed", "42"]);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
    let word: Permutation = stdout(&a).trim().parse().unwrap();
    assert_eq!(word.size(), 8);

    let shifted = run(&["gen", "--n", "8", "--seed", "42", "--index", "1"]);
    assert_ne!(stdout(&shifted), stdout(&a));

    let missing_seed = run(&["gen", "--n", "8"]);
    assert_eq!(code(&missing_seed), 2);
}

#[test]
fn experiment_width_writes_deterministic_csv() {
    let args = ["experiment", "width", "--n", "50", "--samples", "20", "--seed", "3"];
    let first = run(&args);
    assert_eq!(code(&first), 0, "{}", stderr(&first));
    let body = stdout(&first);
    let lines: Vec<&str> = body.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(
        lines[0],
        "n,samples,seed,mean_lds,mean_ratio,stddev,alpha,tail_fraction,mean_log2_states,mean_runtime_s"
    );
    assert!(lines[1].starts_with("50,20,3,"), "{}", lines[1]);
    assert!(lines[1].ends_with(",,,,"), "width rows carry no tail or cost columns");
    assert_eq!(body, stdout(&run(&args)), "same seed, same bytes");
}

#[test]
fn experiment_out_flag_writes_the_file_instead_of_stdout() {
    let path = std::env::temp_dir().join(format!("bruhat-cli-{}-row.csv", std::process::id()));
    let out = run(&[
        "experiment", "width", "--n", "30", "--samples", "10", "--seed", "9",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(stdout(&out), "");
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("n,samples,seed,"));
    assert!(written.lines().nth(1).unwrap().starts_with("30,10,9,"));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn experiment_concentration_row_carries_alpha_and_tail() {
    let out = run(&[
        "experiment", "concentration", "--n", "100", "--samples", "50",
        "--alpha", "0.45", "--seed", "5",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let body = stdout(&out);
    let row = body.lines().nth(1).unwrap();
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(fields.len(), 10);
    assert_eq!(fields[6], "0.450000");
    assert!(!fields[7].is_empty(), "tail fraction present");
    assert!(fields[8].is_empty() && fields[9].is_empty(), "no cost columns");

    let bad_alpha = run(&[
        "experiment", "concentration", "--n", "100", "--samples", "50",
        "--alpha", "0.2", "--seed", "5",
    ]);
    assert_eq!(code(&bad_alpha), 2);
}

#[test]
fn experiment_scaling_row_carries_cost_columns() {
    let out = run(&[
        "experiment", "scaling", "--n", "10", "--n", "14", "--samples", "5", "--seed", "3",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let body = stdout(&out);
    let rows: Vec<&str> = body.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    for row in rows {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 10);
        assert!(fields[6].is_empty() && fields[7].is_empty(), "no tail columns");
        assert!(!fields[8].is_empty(), "mean_log2_states present");
        assert!(!fields[9].is_empty(), "mean_runtime_s present");
    }
}

#[test]
fn experiment_rejects_zero_samples() {
    let out = run(&["experiment", "width", "--n", "10", "--samples", "0", "--seed", "1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn selftest_passes_and_reports_every_check() {
    let out = run(&["selftest"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let body = stdout(&out);
    assert!(body.contains("checks passed"), "{body}");
    assert!(!body.contains("FAIL"), "{body}");
}
