use std::fs;
use std::io::Write;
use std::process::{Command, Output, Stdio};

const QLP: &str = env!("CARGO_BIN_EXE_qlp");

fn qlp(args: &[&str]) -> Output {
    Command::new(QLP).args(args).output().unwrap()
}

fn qlp_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(QLP)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(qlp(&["bogus"]).status.code(), Some(2));
    assert_eq!(qlp(&["feasible", "--length", "7"]).status.code(), Some(2));
    assert_eq!(qlp(&["feasible", "--length", "6", "--nope"]).status.code(), Some(2));
    assert_eq!(qlp(&["brute", "--length", "10"]).status.code(), Some(2));
    assert_eq!(qlp(&["norms", "--length", "6", "--seq", "++x+++"]).status.code(), Some(2));
    assert_eq!(qlp(&["norms", "--length", "6", "--seq", "++++"]).status.code(), Some(2));
    assert_eq!(qlp_stdin(&["verify"], b"++ +\n").status.code(), Some(2));
    assert_eq!(qlp(&["--help"]).status.code(), Some(0));
}

#[test]
fn infeasible_half_point_exits_1() {
    let o = qlp(&["search", "--length", "6", "--psd-half", "12"]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("12 is not the sum of two squares"), "{err}");
    assert!(err.contains("(4,10)"));
}

#[test]
fn feasible_listing() {
    let out = stdout(&qlp(&["feasible", "--length", "28"]));
    assert!(out.starts_with("half: (0,58),(32,26)\nquarter: (0,58),(8,50),(32,26),(40,18)\n"));
    let out = stdout(&qlp(&["feasible", "--length", "34"]));
    assert!(out.starts_with("half: (20,50),(36,34),(52,18),(68,2)\n"));
    assert!(out.contains("alpha0=-3i alpha1=3i beta0=-1-2i"), "{out}");
}

#[test]
fn bundled_pairs_verify() {
    let text = fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/paper_pairs.txt")).unwrap();
    let o = qlp_stdin(&["verify", "-"], text.as_bytes());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("6 of 6 pair(s) verified"));
    for v in ["164204096", "315341888", "340963904", "20892992", "120847168", "510607168", "288564032", "36675136"] {
        assert!(out.contains(&format!("value={v} ")), "missing {v}");
    }
    assert!(out.contains("psd s=7: A=8 B=50 sum=58"));
}

#[test]
fn corrupted_pair_fails_with_lags() {
    let text = fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/paper_pairs.txt")).unwrap();
    let line = text.lines().find(|l| !l.starts_with('#') && !l.is_empty()).unwrap();
    let mut chars: Vec<char> = line.chars().collect();
    chars[0] = if chars[0] == '+' { '-' } else { '+' };
    let o = qlp_stdin(&["verify"], chars.into_iter().collect::<String>().as_bytes());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
    assert!(stdout(&o).contains(" lag"));
}

#[test]
fn jp30_pipes_into_verify() {
    let o = qlp(&["jp30"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("# qlp l=30 psd_half="));
    let v = qlp_stdin(&["verify"], &o.stdout);
    assert_eq!(v.status.code(), Some(0));
}

#[test]
fn brute_is_deterministic() {
    let a = qlp(&["brute", "--length", "2"]);
    let b = qlp(&["brute", "--length", "2"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("# qlp l=2 psd_half="));
    assert_eq!(qlp_stdin(&["verify"], &a.stdout).status.code(), Some(0));
}

#[test]
fn search_output_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pairs.txt");
    let report = dir.path().join("report.txt");
    let o = qlp(&[
        "search", "--length", "6", "--psd-half", "4", "--limit", "0",
        "--out", out.to_str().unwrap(), "--report", report.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("A.t1="));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("# qlp l=6 psd_half=4,10\n"));
    assert!(text.lines().count() > 1);
    assert_eq!(qlp(&["verify", out.to_str().unwrap()]).status.code(), Some(0));

    let stats = qlp(&["stats", "--report", report.to_str().unwrap()]);
    assert!(stats.status.success());
    assert!(stdout(&stats).contains("matched pairs"));

    let again = qlp(&["search", "--length", "6", "--psd-half", "4", "--limit", "0"]);
    assert_eq!(again.stdout, text.as_bytes());
}

#[test]
fn checkpointed_search_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let cp = dir.path().join("run.json");
    let args = ["search", "--length", "10", "--psd-half", "4", "--checkpoint", cp.to_str().unwrap()];
    let first = qlp(&args);
    assert!(first.status.success(), "{}", stderr(&first));
    assert!(cp.exists());
    let second = qlp(&args);
    assert_eq!(first.stdout, second.stdout);
    let mut other = args.to_vec();
    other.push("--no-t3");
    assert_eq!(qlp(&other).status.code(), Some(3));
}

#[test]
fn norms_of_all_ones() {
    let o = qlp(&["norms", "--length", "8", "--seq", "++++++++"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.lines().filter(|l| l.contains(" own ")).all(|l| l.contains("value=0 ")));
    assert!(out.contains("admissible n=8: p = 1 mod 4 or p in {2}"));
}
