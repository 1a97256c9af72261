use swapl::frontend::parse_source;
use swapl::oracle;
use swapl::runtime::{live_cells, run_program, EvalConfig, EvalError, ReuseStats, Value};
use swapl::{compile, runtime};

fn config(reuse: bool) -> EvalConfig {
    EvalConfig { reuse_enabled: reuse, ..EvalConfig::default() }
}

/// Runs `src` through the oracle and the compiled pipeline with reuse on and
/// off and checks that every run agrees. Returns the output and the stats
/// with reuse on.
fn agree(src: &str) -> (String, ReuseStats) {
    let expected = oracle::run(&parse_source(src).unwrap()).unwrap().output;
    let ir = compile(src).unwrap();
    let before = live_cells();
    let on = run_program(&ir, config(true)).unwrap();
    let off = run_program(&ir, config(false)).unwrap();
    assert_eq!(on.output, expected, "reuse on");
    assert_eq!(off.output, expected, "reuse off");
    drop(off);
    let stats = on.stats;
    drop(on);
    assert_eq!(live_cells(), before, "cells leaked");
    (expected, stats)
}

fn run_err(src: &str) -> EvalError {
    runtime::run_program(&compile(src).unwrap(), EvalConfig::default()).unwrap_err().kind
}

#[test]
fn pow_and_switch() {
    let (out, _) = agree(include_str!("../corpus/pow.sl"));
    assert_eq!(out, "1024\n");
    let src = "fn switch(&x, &y) {\n  [x, y] = [y, x]\n  return\n}\na = 1\nb = 2\nswitch(&a, &b)\nprint(a, b)";
    assert_eq!(agree(src).0, "2 1\n");
}

#[test]
fn call_returns_swapped_finals() {
    let ir = compile("fn switch(&x, &y) {\n  [x, y] = [y, x]\n  return\n}").unwrap();
    let out = runtime::call(&ir, "switch", vec![Value::Int(1), Value::Int(2)], EvalConfig::default()).unwrap();
    assert!(matches!(out.result, Value::Unit));
    assert!(matches!(out.swapped[..], [Value::Int(2), Value::Int(1)]));
}

#[test]
fn aliases_stay_independent() {
    let (out, stats) = agree("a = [1, 2]\nb = a\nappend(&a, 3)\nprint(b, a)");
    assert_eq!(out, "[1, 2] [1, 2, 3]\n");
    assert_eq!(stats.copies, 1);
}

#[test]
fn unique_append_is_in_place() {
    let (out, stats) = agree("xs = []\ni = 0\nwhile i < 50 {\n  append(&xs, i)\n  i += 1\n}\nprint(len(xs))");
    assert_eq!(out, "50\n");
    assert_eq!(stats.copies, 0);
    assert_eq!(stats.in_place, 50);
}

#[test]
fn nested_update_reuses_both_levels() {
    let (out, stats) = agree("foo = {xs: [1], n: \"k\"}\nappend(&foo.xs, 2)\nfoo.n = \"z\"\nprint(foo)");
    assert_eq!(out, "{xs: [1, 2], n: \"z\"}\n");
    assert_eq!(stats.copies, 0);
}

#[test]
fn naive_nested_update_copies_once() {
    let (_, stats) = agree("foo = {xs: [1]}\nxs = foo.xs\nappend(&xs, 2)\nfoo.xs = xs\nprint(foo)");
    assert_eq!(stats.copies, 1);
}

#[test]
fn closures_capture_by_value() {
    let src = "fs = []\ni = 0\nwhile i < 3 {\n  append(&fs, fn() { return i })\n  i += 1\n}\nprint(fs[0](), fs[1](), fs[2]())";
    assert_eq!(agree(src).0, "0 1 2\n");
}

#[test]
fn control_flow() {
    let src = "fn find(xs, t) {\n  i = 0\n  while i < len(xs) {\n    if xs[i] == t {\n      return i\n    }\n    i += 1\n  }\n  return -1\n}\nn = 0\ns = 0\nwhile true {\n  n += 1\n  if n > 10 {\n    break\n  }\n  if n == 3 or n == 5 {\n    continue\n  }\n  s += n\n}\nprint(s, find([4, 5, 6], 6), find([1], 9))";
    assert_eq!(agree(src).0, "47 2 -1\n");
}

#[test]
fn recursion_and_strings() {
    let src = "fn fib(n) {\n  if n < 2 {\n    return n\n  }\n  return fib(n - 1) + fib(n - 2)\n}\nprint(\"fib\", fib(15), str([1, \"a\"]) + \"!\")";
    assert_eq!(agree(src).0, "fib 610 [1, \"a\"]!\n");
}

#[test]
fn pop_and_destructure() {
    let src = "xs = [1, 2, 3]\nx = pop(&xs)\n[a, b] = xs\nt = (a, b)\nprint(x, a, b, t, len(t))";
    assert_eq!(agree(src).0, "3 1 2 (1, 2) 2\n");
}

#[test]
fn errors_match_oracle() {
    for src in [
        "xs = []\npop(&xs)",
        "x = [1][3]",
        "x = 1 / 0",
        "r = {a: 1}\nx = r.b",
        "if 1 {\n  print(1)\n}",
        "[a, b] = [1]",
        "x = 1 + \"a\"",
        "fn f(&x) { return }\nfn main() {\n  g = f\n  y = 1\n  g(y)\n}",
        "fn f(n) {\n  return f(n + 1)\n}\nprint(f(0))",
    ] {
        let expected = oracle::run(&parse_source(src).unwrap()).unwrap_err();
        assert_eq!(run_err(src), expected, "{src}");
    }
}

#[test]
fn step_budget() {
    let ir = compile("while true {\n  x = 1\n}").unwrap();
    let err = run_program(&ir, EvalConfig { max_steps: Some(100), ..EvalConfig::default() }).unwrap_err();
    assert_eq!(err.kind, EvalError::StepBudgetExceeded(100));
}

#[test]
fn no_leaks_after_errors() {
    let before = live_cells();
    let _ = run_err("xs = [[1], [2]]\nys = xs\nappend(&xs[0], 5)\nx = ys[9]");
    assert_eq!(live_cells(), before);
}

#[test]
fn extracted_component_is_unique() {
    let ir = compile("fn f() {\n  r = {xs: [1], n: 2}\n  x = extract(&r, \"xs\")\n  return x\n}").unwrap();
    let out = runtime::call(&ir, "f", vec![], EvalConfig::default()).unwrap();
    assert_eq!(out.result.render(), "[1]");
    assert_eq!(out.result.cell_count(), Some(1));
}

#[test]
fn shared_value_is_copied_once_then_updated_in_place() {
    let (out, stats) = agree("a = [1]\nb = a\nappend(&a, 2)\nappend(&a, 3)\na[0] = 9\nprint(a, b)");
    assert_eq!(out, "[9, 2, 3] [1]\n");
    assert_eq!((stats.copies, stats.in_place), (1, 2));
}
