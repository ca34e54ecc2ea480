use std::process::{Command, Output};

use foatic::dynamics::Dump;

fn foatic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_foatic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = foatic(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn table_one_text() {
    let text = stdout(&[
        "tables", "--action", "R,I", "--form", "conj", "--max-n", "6",
    ]);
    let orbits = text
        .lines()
        .find(|l| l.starts_with("# of orbits:"))
        .unwrap();
    let cells: Vec<&str> = orbits.split('|').skip(1).map(str::trim).collect();
    assert_eq!(cells, ["1", "1", "2", "5", "19", "84"]);
    let id = text
        .lines()
        .find(|l| l.starts_with("Size of id's orbit:"))
        .unwrap();
    assert!(id.ends_with("32"));
}

#[test]
fn csv_and_json_tables_agree() {
    let csv = stdout(&[
        "tables", "--action", "C,rot", "--min-n", "3", "--max-n", "6", "--format", "csv",
    ]);
    let json = stdout(&[
        "tables", "--action", "C,rot", "--min-n", "3", "--max-n", "6", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let rows = v["rows"].as_array().unwrap();
    let lines: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), lines.len());
    for (row, line) in rows.iter().zip(lines) {
        let fields: Vec<&str> = line.rsplitn(8, ',').collect();
        assert_eq!(fields[5], row["num_orbits"].to_string());
        assert_eq!(fields[4], row["lcm_sizes"].as_str().unwrap());
    }
    assert_eq!(rows[3]["lcm_sizes"], "347760");
}

#[test]
fn orbit_dump_of_table_one_at_five() {
    let text = stdout(&["orbits", "--action", "R,I", "--form", "conj", "--n", "5"]);
    assert_eq!(text.matches("orbit size=").count(), 19);
    let dump: Dump = text.parse().unwrap();
    dump.verify().unwrap();
}

#[test]
fn dump_round_trip_and_verification() {
    for action in ["C,I", "C,rot", "R,rot", "D,C"] {
        let text = stdout(&["orbits", "--action", action, "--n", "4"]);
        let dump: Dump = text.parse().unwrap();
        dump.verify().unwrap();
        let tampered = text.replacen("\n1234\n", "\n1243\n", 1);
        if tampered != text {
            let bad: Result<Dump, _> = tampered.parse();
            assert!(bad.map(|d| d.verify().is_err()).unwrap_or(true));
        }
    }
}

#[test]
fn good_only_dumps_all_four() {
    let text = stdout(&["orbits", "--good-only", "--n", "3"]);
    assert_eq!(text.matches("action=").count(), 4);
    let out = foatic(&["orbits", "--action", "C,C", "--good-only", "--n", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn fix_scan_survivors() {
    let text = stdout(&["scan", "--stats", "fix", "--max-n", "6"]);
    assert!(
        text.contains("survivors for fix: 4 of 25: C,rot C,I R,rot R,I"),
        "{text}"
    );
}

#[test]
fn scan_json_matches_text() {
    let json = stdout(&[
        "scan",
        "--stats",
        "fix,samecycle@1",
        "--max-n",
        "5",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let survivors: Vec<String> = v["survivors"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|s| s["stat"] == "fix")
        .map(|s| s["action"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(survivors, ["C,rot", "C,I", "R,rot", "R,I"]);
    assert!(v["cells"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["form"] == "bar"));
}

#[test]
fn output_does_not_depend_on_workers() {
    for args in [
        vec!["orbits", "--action", "C,rot", "--n", "6"],
        vec![
            "tables", "--action", "R,rot", "--max-n", "7", "--format", "json",
        ],
        vec!["scan", "--stats", "fixdiff", "--max-n", "5"],
    ] {
        let mut one = args.clone();
        one.extend(["--workers", "1"]);
        let mut four = args.clone();
        four.extend(["--workers", "4"]);
        assert_eq!(stdout(&one), stdout(&four), "{args:?}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(
        foatic(&["tables", "--action", "X,I"]).status.code(),
        Some(1)
    );
    assert_eq!(foatic(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        foatic(&["tables", "--action", "R,I", "--max-n", "13"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(foatic(&["--help"]).status.code(), Some(0));
    assert_eq!(foatic(&["verify", "--max-n", "4"]).status.code(), Some(0));
    assert_eq!(
        foatic(&["conjectures", "--max-n", "5"]).status.code(),
        Some(0)
    );
}
