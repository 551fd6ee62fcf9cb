use maxdim_cli::cache::cache_key;
use maxdim_cli::report::decode_report;
use std::path::Path;
use std::process::{Command, Output};

fn maxdim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxdim"))
        .args(args)
        .env_remove("MAXDIM_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn wreath_invariants() {
    let o = maxdim(&["invariants", "family: wreathCyclic 3", "--m", "--i"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("m=2") && out.contains("i=3"), "{out}");
    assert!(!out.contains("maxdim="));
}

#[test]
fn usage_errors_exit_three() {
    let o = maxdim(&["info", "family: cyclic 0"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("parse error at line 1"));
    assert_eq!(maxdim(&["info", "family: klein 4"]).status.code(), Some(3));
    assert_eq!(maxdim(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(maxdim(&["verify", "no_such_check"]).status.code(), Some(3));
    assert_eq!(maxdim(&["verify", "psl2_square", "7"]).status.code(), Some(3));
    assert_eq!(maxdim(&["verify", "wreath", "5"]).status.code(), Some(3));
    assert_eq!(maxdim(&["maximals", "family: cyclic 4", "--goursat"]).status.code(), Some(3));
    assert_eq!(maxdim(&["--help"]).status.code(), Some(0));
}

#[test]
fn cap_exceeded_exits_two() {
    let o = maxdim(&["invariants", "family: symmetric 5", "--budget", "3", "--no-cache"]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    assert!(stdout(&o).contains("capExceeded"));
    let o = maxdim(&["info", "family: symmetric 5\ncap: 50"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn failing_check_exits_one() {
    let o = maxdim(&["verify", "normal_split", "family: cyclic 6", "5"]);
    assert_eq!(o.status.code(), Some(1));
    let o = maxdim(&["verify", "additivity", "family: cyclic 2", "gen: (1 2 3)(4 5)"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn psl2_square_five() {
    let o = maxdim(&["verify", "psl2_square", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("MaxDim(G×G) = 6, 2·MaxDim(G) = 2·3"));
}

#[test]
fn spec_files_and_generators() {
    let dir = tempfile::tempdir().unwrap();
    let module = dir.path().join("neg.module");
    std::fs::write(&module, "p: 3\ntop: [family: cyclic 2]\nmatrix: 2 0 / 0 2\n").unwrap();
    let spec = dir.path().join("g.spec");
    std::fs::write(&spec, format!("family: semidirect {}\n", module.display())).unwrap();
    let o = maxdim(&["info", &format!("@{}", spec.display())]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("order=18"));
    let o = maxdim(&["info", "gen: (1 2)\ngen: (1 2 3)"]);
    assert!(stdout(&o).contains("order=6"));
}

fn json(dir: &Path, name: &str, args: &[&str]) -> Vec<u8> {
    let path = dir.join(name);
    let mut all = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    all.extend(["--json", &p]);
    let o = maxdim(&all);
    assert!(o.status.code().is_some());
    std::fs::read(&path).unwrap()
}

#[test]
fn cache_hits_and_faults() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let c = cache.to_str().unwrap();
    let args = ["invariants", "family: dihedral 6", "--cache-dir", c];
    let first = maxdim(&args);
    assert!(!stderr(&first).contains("served from cache"));
    let second = maxdim(&args);
    assert!(stderr(&second).contains("served from cache"));
    assert_eq!(stdout(&first), stdout(&second));

    let entries: Vec<_> = std::fs::read_dir(&cache).unwrap().collect();
    assert_eq!(entries.len(), 1);
    let entry = entries[0].as_ref().unwrap().path();
    std::fs::write(&entry, b"\x00garbage").unwrap();
    let third = maxdim(&args);
    assert_eq!(third.status.code(), Some(0));
    assert!(stderr(&third).contains("corrupted"));
    assert_eq!(stdout(&first), stdout(&third));
    let fourth = maxdim(&args);
    assert!(stderr(&fourth).contains("served from cache"));

    let off = maxdim(&["invariants", "family: dihedral 6", "--cache-dir", c, "--no-cache"]);
    assert!(!stderr(&off).contains("served from cache"));
    assert_eq!(stdout(&first), stdout(&off));

    let key = cache_key("family: dihedral 6|m,i,maxdim", 10_000_000);
    assert!(cache.join(format!("{key}.json")).exists());
}

#[test]
fn unwritable_cache_is_not_fatal() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, b"x").unwrap();
    let o = maxdim(&["invariants", "family: cyclic 6", "--cache-dir", blocker.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning"));
}

#[test]
fn reports_are_deterministic_and_replayable() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify", "sandwich", "family: alternating 4", "--no-cache"];
    let a = json(dir.path(), "a.json", &args);
    let b = json(dir.path(), "b.json", &args);
    assert_eq!(a, b);
    let report = decode_report(&a).unwrap();
    assert_eq!(report.inputs[0].spec, "family: alternating 4");
    assert_eq!(report.results[0].numbers["maxdim"], 2);
    assert!(!report.command.iter().any(|x| x == "--json"));
    let o = maxdim(&["replay", dir.path().join("a.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let mut tampered = report.clone();
    tampered.results[0].numbers.insert("maxdim".into(), 7);
    let path = dir.path().join("t.json");
    std::fs::write(&path, maxdim_cli::encode_report(&tampered)).unwrap();
    assert_eq!(maxdim(&["replay", path.to_str().unwrap()]).status.code(), Some(1));
    std::fs::write(&path, b"{}").unwrap();
    assert_eq!(maxdim(&["replay", path.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn timings_only_on_request() {
    let dir = tempfile::tempdir().unwrap();
    let plain = json(dir.path(), "p.json", &["verify", "dickson", "5"]);
    assert!(!String::from_utf8(plain).unwrap().contains("timings"));
    let timed = json(dir.path(), "t.json", &["verify", "dickson", "5", "--timings"]);
    let r = decode_report(&timed).unwrap();
    assert_eq!(r.timings.len(), 1);
}

#[test]
fn constructions() {
    let o = maxdim(&["construct", "psl2", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("discrepancy"));
    let o = maxdim(&["construct", "semidirect", "--s", "family: cyclic 2", "--p", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("maxdim_materialized=3"));
    let alias = maxdim(&["construct", "prop44", "--s", "family: cyclic 2", "--p", "3"]);
    assert_eq!(stdout(&alias), stdout(&o));
    let o = maxdim(&["construct", "psl2", "17"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn sweeps_run_the_frattini_guard_first() {
    let o = maxdim(&["sweep", "--max-order", "12", "--check", "derived_nilpotent"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o)
        .lines()
        .filter(|l| !l.starts_with(' '))
        .map(|l| l.split_whitespace().next().unwrap().to_string())
        .collect();
    assert!(lines.len() >= 2);
    for pair in lines.chunks(2) {
        assert_eq!(pair[0], "frattini");
        assert_eq!(pair[1], "derived_nilpotent");
    }
    assert_eq!(maxdim(&["sweep", "--max-order", "12", "--check", "collins"]).status.code(), Some(3));
}
