use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/corpus").join(name)
}

fn swapl(args: &[&str], file: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swapl")).args(args).arg(corpus(file)).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn run_prints_program_output() {
    let o = swapl(&["run"], "pow.sl");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1024\n");
    assert!(o.stderr.is_empty());
}

#[test]
fn switch_runs_silently() {
    let o = swapl(&["run"], "switch.sl");
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
}

#[test]
fn stats_line_and_no_reuse() {
    let plain = swapl(&["run"], "nested.sl");
    let on = swapl(&["run", "--stats"], "nested.sl");
    let off = swapl(&["run", "--no-reuse", "--stats"], "nested.sl");
    let on = stdout(&on);
    let off = stdout(&off);
    let (on_out, on_stats) = on.rsplit_once("allocations=").unwrap();
    let (off_out, off_stats) = off.rsplit_once("allocations=").unwrap();
    assert_eq!(on_out, stdout(&plain));
    assert_eq!(off_out, on_out);
    assert!(on_stats.contains("copies=0 "), "{on_stats}");
    assert!(off_stats.trim_end().ends_with("in_place=0"), "{off_stats}");
}

#[test]
fn json_stats() {
    let o = swapl(&["run", "--json"], "nested_naive.sl");
    let last = stdout(&o).lines().last().unwrap().to_string();
    let v: serde_json::Value = serde_json::from_str(&last).unwrap();
    assert_eq!(v["copies"], 1);
    assert!(v["allocations"].is_u64() && v["in_place"].is_u64());
}

#[test]
fn ir_dump_of_pow() {
    let o = swapl(&["ir"], "pow.sl");
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let pow = text.split("\n\n").next().unwrap();
    let headers = pow.lines().filter(|l| l.starts_with("  block")).count();
    assert_eq!(headers, 4, "{pow}");
    assert_eq!(text, std::fs::read_to_string(corpus("expected/pow.ir")).unwrap());
}

#[test]
fn ast_and_core() {
    let surface = stdout(&swapl(&["ast"], "nested.sl"));
    let core = stdout(&swapl(&["ast", "--core"], "nested.sl"));
    assert!(surface.contains("append(&foo.xs, 3)"), "{surface}");
    assert!(core.contains("extract(&foo, \"xs\")"), "{core}");
}

#[test]
fn grad_prints_value_and_derivative() {
    let o = swapl(&["grad", "--fn", "pow", "--wrt", "0", "--at", "2,5"], "calculus.sl");
    assert_eq!(stdout(&o), "value=32 deriv=80.0\n");
    let o = swapl(&["grad", "--fn", "square", "--wrt", "0", "--at", "-1.5"], "calculus.sl");
    assert_eq!(stdout(&o), "value=2.25 deriv=-3.0\n");
}

#[test]
fn missing_file_is_reported_with_its_path() {
    let o = Command::new(env!("CARGO_BIN_EXE_swapl")).args(["run", "no/such/file.sl"]).output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("no/such/file.sl"));
}

#[test]
fn usage_errors_exit_with_two() {
    let o = Command::new(env!("CARGO_BIN_EXE_swapl")).args(["run"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = swapl(&["ir", "--stats"], "pow.sl");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--stats"));
    let o = swapl(&["grad", "--fn", "pow", "--wrt", "0", "--at", "two"], "calculus.sl");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn program_errors_exit_with_one() {
    let dir = std::env::temp_dir().join(format!("swapl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.sl");
    std::fs::write(&bad, "print(\"before\")\nxs = []\nx = pop(&xs)\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_swapl")).arg("run").arg(&bad).output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "before\n");
    assert!(stderr(&o).contains("index -1 out of bounds"), "{}", stderr(&o));
    std::fs::write(&bad, "x = (1 +\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_swapl")).arg("run").arg(&bad).output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("bad.sl"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn step_limit() {
    let o = swapl(&["run", "--max-steps", "50"], "primes.sl");
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("step budget of 50 exceeded"));
}

#[test]
fn trace_goes_to_stderr() {
    let o = swapl(&["run", "--trace"], "pow.sl");
    assert_eq!(stdout(&o), "1024\n");
    assert!(stderr(&o).contains("pow block3"), "{}", stderr(&o));
}

#[test]
fn output_is_deterministic() {
    for args in [&["run", "--stats"][..], &["ir"], &["ast", "--core"]] {
        let a = swapl(args, "deep_nesting.sl");
        let b = swapl(args, "deep_nesting.sl");
        assert_eq!(a.stdout, b.stdout);
    }
}
