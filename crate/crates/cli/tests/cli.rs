use std::fs;
use std::process::{Command, Output};

fn reppow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reppow")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn classify_prints_label_and_f() {
    let o = reppow(&["classify", "2", "2", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "admissible F=-7/5\n");
    assert_eq!(stdout(&reppow(&["classify", "2", "5", "1"])), "inadmissible F=3/10\n");
    assert_eq!(reppow(&["classify", "2", "1", "1"]).status.code(), Some(2));
    assert_eq!(reppow(&["classify", "two"]).status.code(), Some(2));
}

#[test]
fn search_outputs_csv_and_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let cp = dir.path().join("cp.jsonl");
    let cp = cp.to_str().unwrap();
    let args = ["search", "--q", "2", "--n", "3", "--l", "1", "--b-lo", "2", "--b-hi", "500", "--checkpoint", cp, "--chunk-size", "64"];
    let first = reppow(&args);
    assert_eq!(first.status.code(), Some(0));
    let text = stdout(&first);
    assert!(text.starts_with("q,n,l,b,y,c,w\n2,3,1,18,49,7,\"(7)\"\n"));
    assert_eq!(text.lines().count(), 26);
    let saved = fs::read_to_string(cp).unwrap();
    assert!(saved.contains("{\"range\":[\"2\",\"500\"]}"));

    let again = reppow(&args);
    assert_eq!(stdout(&again), text);
    assert_eq!(fs::read_to_string(cp).unwrap(), saved);
}

#[test]
fn search_jsonl_format() {
    let o = reppow(&["search", "--q", "4", "--n", "2", "--l", "3", "--b-lo", "2", "--b-hi", "30", "--format", "jsonl", "--workers", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(str::to_owned).collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].contains("\"w\":\"(9,13,4)@19\""));
    assert!(lines[1].contains("\"y\":\"78\""));
}

#[test]
fn corrupt_checkpoint_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let cp = dir.path().join("cp.jsonl");
    fs::write(&cp, "{\"triple\":[\"2\",\"3\",\"1\"]}\n{\"range\":oops}\n").unwrap();
    let o = reppow(&["search", "--q", "2", "--n", "3", "--l", "1", "--b-lo", "2", "--b-hi", "50", "--checkpoint", cp.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(fs::read_to_string(&cp).unwrap(), "{\"triple\":[\"2\",\"3\",\"1\"]}\n{\"range\":oops}\n");

    let other = reppow(&["search", "--q", "2", "--n", "3", "--l", "2", "--b-lo", "2", "--b-hi", "50", "--checkpoint", cp.to_str().unwrap()]);
    assert_eq!(other.status.code(), Some(3));
}

#[test]
fn bad_ranges_are_usage_errors() {
    assert_eq!(reppow(&["search", "--q", "2", "--n", "3", "--l", "1", "--b-lo", "9", "--b-hi", "3"]).status.code(), Some(2));
    assert_eq!(reppow(&["search", "--q", "2"]).status.code(), Some(2));
    assert_eq!(reppow(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_reports_failures() {
    let o = reppow(&["verify", "--all-bundled", "--quiet"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("table_231: 25/25 rows pass"));

    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.csv");
    fs::write(&good, "# name: two rows\nq,n,l,b,y,c,w\n2,3,1,18,49,7,\"(7)\"\n2,3,1,22,39,3,\"(3)\"\n").unwrap();
    assert_eq!(reppow(&["verify", "--corpus", good.to_str().unwrap()]).status.code(), Some(0));

    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "q,n,l,b,y,c,w\n2,3,1,18,49,8,\"(8)\"\n2,3,1,22,39,3,\"(3)\"\n").unwrap();
    let o = reppow(&["verify", "--corpus", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("line 2: FAIL"), "{text}");
    assert!(text.contains("power equation"), "{text}");
    assert!(text.contains("1/2 rows pass"), "{text}");

    let malformed = dir.path().join("malformed.csv");
    fs::write(&malformed, "q,n,l,b,y,c,w\n2,3,1,18,x,7,\"(7)\"\n").unwrap();
    let o = reppow(&["verify", "--corpus", malformed.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    assert_eq!(reppow(&["verify"]).status.code(), Some(2));
    assert_eq!(reppow(&["verify", "--bundled", "nope"]).status.code(), Some(2));
}

#[test]
fn generate_families() {
    let o = reppow(&["generate", "--triple", "4,2,2", "--count", "1"]);
    assert_eq!(stdout(&o), "q,n,l,b,y,c,w\n4,2,2,239,78,648,\"(2,170)\"\n");
    let o = reppow(&["generate", "--triple", "2,2,1", "--base", "2", "--count", "2"]);
    let ys: Vec<String> = stdout(&o).lines().skip(1).map(|l| l.split(',').nth(4).unwrap().to_owned()).collect();
    assert_eq!(ys, vec!["820", "858993460"]);
    let o = reppow(&["generate", "--system", "bijective", "--base", "10", "--count", "2"]);
    assert_eq!(stdout(&o), "q,n,b,y,w\n2,2,10,101,\"(10,1)\"\n2,2,10,1001,\"(9,10,1)\"\n");
    let o = reppow(&["generate", "--system", "fibonacci", "--count", "1", "--pattern", "2"]);
    assert_eq!(stdout(&o), "q,n,y,w\n2,2,98210,100100000000100100000010\n");
    assert_eq!(reppow(&["generate", "--triple", "2,4,2"]).status.code(), Some(2));
    assert_eq!(reppow(&["generate", "--count", "1"]).status.code(), Some(2));
}

#[test]
fn factor_and_repr() {
    let o = reppow(&["factor", "--b", "18", "--n", "3", "--l", "1"]);
    assert_eq!(stdout(&o), "r = 343\nPhi_3(b) = 343 = 7^3\nr = 7^3\n");
    let o = reppow(&["repr", "--x", "2401", "--base", "18"]);
    assert_eq!(stdout(&o), "(7,7,7)\n");
    let o = reppow(&["repr", "--x", "2401", "--system", "zeckendorf"]);
    assert_eq!(stdout(&o), "1010010010100100\n");
    assert_eq!(reppow(&["repr", "--x", "5", "--base", "1"]).status.code(), Some(2));
    assert_eq!(reppow(&["repr", "--x", "5"]).status.code(), Some(2));
}
