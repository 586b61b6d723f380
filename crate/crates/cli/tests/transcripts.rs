//! Golden transcripts of the `lucky` binary.

use std::process::{Command, Output};

use lucky_core::oracle::Census;
use lucky_core::VectorOutcome;

fn lucky(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lucky"))
        .args(args)
        .env_remove("LUCKY_BRUTE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = lucky(args);
    assert!(
        out.status.success(),
        "{args:?} exited with {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    lucky(args).status.code().expect("exit code")
}

#[test]
fn street_example() {
    assert_eq!(stdout(&["simulate", "--u", "2,2,3,3", "--prefs", "1,3,3,1"]), "X {1,4} {2,3} | lucky: 2,3\n");
    assert_eq!(
        stdout(&["simulate", "--u", "2,2,3,3", "--prefs", "1,3,3,1", "--format", "json"]),
        "{\"lucky\":[2,3],\"outcome\":[null,[1,4],[2,3]],\"prefs\":[1,3,3,1],\"u\":[2,2,3,3]}\n"
    );
}

#[test]
fn trivial_and_failing_streets() {
    assert_eq!(stdout(&["simulate", "--u", "1", "--prefs", "1"]), "{1} | lucky: 1\n");
    let out = lucky(&["simulate", "--u", "1,2", "--prefs", "2,2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("car 2"));
    assert_eq!(stdout(&["simulate", "--n", "4", "--prefs", "1,3,4,1"]), "1423 | lucky: 1,2,3\n");
    assert_eq!(stdout(&["simulate", "--n", "3", "--prefs", "1,3"]), "1X2 | lucky: 1,2\n");
}

#[test]
fn classical_fixed_lucky_set_counts() {
    assert_eq!(stdout(&["count", "outcomes-fixed-I", "--n", "5", "--I", "1,4"]), "4\n");
    assert_eq!(stdout(&["count", "outcomes-fixed-I", "--n", "5", "--I", "1,2,3"]), "54\n");
    assert_eq!(stdout(&["count", "outcomes-mn-k", "--m", "2", "--n", "3", "--k", "2"]), "6\n");
}

#[test]
fn lucky_set_reductions() {
    assert_eq!(stdout(&["reduce", "--I", "1,4,5", "--remove", "1,3"]), "2,3\n");
    assert_eq!(stdout(&["reduce", "--I", "1,4,5", "--remove", "4"]), "1,4\n");
    assert_eq!(stdout(&["reduce", "--I", "1,4,5", "--remove", "2,3"]), "1,2,3\n");
}

#[test]
fn lucky_set_reductions_feed_the_gap_families() {
    // c3 on {1,2,4} sums c2 and c1 terms over the reduced sets
    // {1,3}, {1,3}, {1,2,3} and {1,2}, {1,2}.
    assert_eq!(stdout(&["count", "c3", "--n", "4", "--I", "1,2,4"]), "14\n");
    assert_eq!(stdout(&["count", "c2", "--n", "3", "--I", "1,3"]), "3\n");
    assert_eq!(stdout(&["count", "c1", "--n", "2", "--I", "1"]), "2\n");
    assert_eq!(
        stdout(&["count", "c1", "--n", "2", "--I", "1", "--format", "json"]),
        "{\"formula\":\"c1\",\"inputs\":{\"I\":[1],\"n\":2},\"value\":\"2\"}\n"
    );
}

fn lucky_spot_outcomes(u: &str, key: &str) -> Vec<String> {
    let census: serde_json::Value =
        serde_json::from_str(&stdout(&["brute", "--u", u, "--lucky-spots"])).unwrap();
    let mut listed: Vec<String> = census[key]
        .as_array()
        .unwrap()
        .iter()
        .map(|o| serde_json::from_value::<VectorOutcome>(o.clone()).unwrap().to_string())
        .collect();
    listed.sort();
    listed
}

#[test]
fn twelve_outcomes_by_lucky_spots() {
    assert_eq!(stdout(&["count", "outcomes-lucky-spots", "--u", "1,2,4,5", "--L", "1,5"]), "12\n");
    let mut expected = [
        "{1} {2} X {3} {4}", "{1} {4} X {2} {3}", "{2} {3} X {1} {4}", "{2} {3} X {4} {1}",
        "{1} {2} X {4} {3}", "{1} {3} X {4} {2}", "{2} {4} X {1} {3}", "{2} {4} X {3} {1}",
        "{1} {3} X {2} {4}", "{1} {4} X {3} {2}", "{3} {4} X {1} {2}", "{3} {4} X {2} {1}",
    ];
    expected.sort();
    assert_eq!(lucky_spot_outcomes("1,2,4,5", "[1,5]"), expected);

    assert_eq!(stdout(&["count", "outcomes-lucky-spots", "--u", "2,2,3,5", "--L", "3,5"]), "12\n");
    let mut expected = [
        "X {1,2} {3} X {4}", "X {1,4} {2} X {3}", "X {2,3} {1} X {4}", "X {2,3} {4} X {1}",
        "X {1,2} {4} X {3}", "X {1,3} {4} X {2}", "X {2,4} {1} X {3}", "X {2,4} {3} X {1}",
        "X {1,3} {2} X {4}", "X {1,4} {3} X {2}", "X {3,4} {1} X {2}", "X {3,4} {2} X {1}",
    ];
    expected.sort();
    assert_eq!(lucky_spot_outcomes("2,2,3,5", "[3,5]"), expected);
}

#[test]
fn two_preference_lists_share_an_outcome() {
    for prefs in ["2,1,1,3,1", "2,1,1,3,2"] {
        assert_eq!(
            stdout(&["simulate", "--u", "1,1,3,3,3", "--prefs", prefs]),
            "{2,3} X {1,4,5} | lucky: 2,3,4\n"
        );
    }
    assert_eq!(stdout(&["count", "upf-fixed-I", "--u", "1,1,3,3,3", "--I", "2,3,4"]), "6\n");
    assert_eq!(stdout(&["count", "upf-k", "--u", "1,1,3", "--k", "2"]), "4\n");
    assert_eq!(stdout(&["count", "upf-const-jump", "--n", "3", "--i", "1", "--j", "3", "--k", "3"]), "3\n");
}

#[test]
fn verify_reports() {
    assert_eq!(
        stdout(&["verify", "upf-k", "--u", "1,1,3"]),
        "PASS upf-k u=1,1,3 k=0: 0\nPASS upf-k u=1,1,3 k=1: 0\nPASS upf-k u=1,1,3 k=2: 4\n\
         PASS upf-k u=1,1,3 k=3: 3\nupf-k: 4 instances, 4 passed, 0 failed\n"
    );
    let report = stdout(&["verify", "outcomes-fixed-I", "--n-max", "5", "--quiet"]);
    assert_eq!(report, "outcomes-fixed-I: 62 instances, 62 passed, 0 failed\n");
    let report = stdout(&["verify", "outcomes-mn-k", "--m", "4", "--n", "6"]);
    assert!(report.ends_with(
        "binomial C(m-j-1,d): 5/5 match; C(m-j,d): 2/5 match\noutcomes-mn-k: 5 instances, 5 passed, 0 failed\n"
    ));
}

#[test]
fn cap_is_checked_before_enumeration() {
    let out = Command::new(env!("CARGO_BIN_EXE_lucky"))
        .args(["verify", "upf-fixed-I", "--u", "1,1,3,3,3"])
        .env("LUCKY_BRUTE_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds the cap of 100"));
    assert_eq!(code(&["--cap", "26", "brute", "--n", "3"]), 2);
    assert_eq!(code(&["--cap", "27", "brute", "--n", "3"]), 0);
}

#[test]
fn parse_errors_exit_2() {
    assert_eq!(code(&["count", "c1", "--n", "2", "--I", "2,1"]), 2);
    assert_eq!(code(&["simulate", "--u", "3,1", "--prefs", "1,1"]), 2);
    assert_eq!(code(&["simulate", "--u", "1,2", "--prefs", "1"]), 2);
    assert_eq!(code(&["count", "upf-k", "--u", "1,1,3"]), 2);
    assert_eq!(code(&["count", "c1", "--n", "2", "--I", "1", "--k", "1"]), 2);
    assert_eq!(code(&["count", "no-such-formula"]), 2);
    assert_eq!(code(&["table", "--formula", "c1", "--n", "x..3", "--I", "1"]), 2);
    assert_eq!(code(&["table", "--formula", "c1", "--n", "1..3"]), 2);
}

#[test]
fn tables() {
    assert_eq!(
        stdout(&["table", "--formula", "upf-const-jump", "--i", "1", "--j", "3", "--n", "1..3", "--k", "all"]),
        "n,i,j,k,value\n1,1,3,0,2\n1,1,3,1,1\n2,1,3,0,0\n2,1,3,1,3\n2,1,3,2,2\n\
         3,1,3,0,0\n3,1,3,1,0\n3,1,3,2,4\n3,1,3,3,3\n"
    );
    let csv = stdout(&["table", "--formula", "c1", "--n", "1..6", "--I-prefix-k", "1..3"]);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,I,value"));
    for line in lines {
        let mut r = csv::ReaderBuilder::new().has_headers(false).from_reader(line.as_bytes());
        let rec = r.records().next().unwrap().unwrap();
        let n: u64 = rec[0].parse().unwrap();
        let k = rec[1].split(',').count() as u64;
        let expected = (1..=k).product::<u64>() * (k + 1).pow((n - k) as u32);
        assert_eq!(rec[2].parse::<u64>().unwrap(), expected, "{line}");
    }
    assert_eq!(stdout(&["table", "--formula", "c1", "--n", "4..1", "--I", "1"]), "n,I,value\n");
    let with_oracle = stdout(&["table", "--formula", "upf-k", "--u", "1,1,3", "--k", "all", "--oracle"]);
    assert_eq!(with_oracle, "u,k,value,oracle,match\n\"1,1,3\",0,0,0,true\n\"1,1,3\",1,0,0,true\n\"1,1,3\",2,4,4,true\n\"1,1,3\",3,3,3,true\n");
}

#[test]
fn json_round_trips() {
    let json = stdout(&["brute", "--u", "1,1,3,3,3"]);
    let census: Census<VectorOutcome> = serde_json::from_str(&json).unwrap();
    assert_eq!(census.total, 131);
    assert_eq!(census.to_json() + "\n", json);

    let table = stdout(&["table", "--formula", "c2", "--n", "1..3", "--I", "1", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&table).unwrap();
    assert_eq!(serde_json::to_string(&value).unwrap() + "\n", table);
    assert_eq!(value["columns"], serde_json::json!(["n", "I", "value"]));
}

#[test]
fn census_is_independent_of_workers() {
    let one = stdout(&["--workers", "1", "brute", "--m", "3", "--n", "5"]);
    let eight = stdout(&["--workers", "8", "brute", "--m", "3", "--n", "5"]);
    assert_eq!(one, eight);
}
