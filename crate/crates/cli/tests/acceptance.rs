//! One line per acceptance criterion. Exits non-zero if any fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::SeedableRng;

use swapl::frontend::parse_source;
use swapl::runtime::{self, live_cells, run_program, EvalConfig, ReuseStats, Value};
use swapl::ssa::{print_ir, Op, Terminator};
use swapl::transforms::{derivative_name, forward_diff, gradient};
use swapl::{compile, oracle};

/// Builds the arguments of a function from the point being sampled.
type Args = fn(f64) -> Vec<Value>;
type Criterion = fn() -> Check;

type Check = Result<String, String>;

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/corpus")
}

fn corpus() -> Vec<(String, String)> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "sl"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| (p.file_stem().unwrap().to_string_lossy().into_owned(), std::fs::read_to_string(&p).unwrap()))
        .collect()
}

fn source(name: &str) -> String {
    std::fs::read_to_string(corpus_dir().join(format!("{name}.sl"))).unwrap()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn run(src: &str, reuse: bool) -> Result<(String, ReuseStats), String> {
    let ir = compile(src).map_err(|e| e.to_string())?;
    let out = run_program(&ir, EvalConfig { reuse_enabled: reuse, ..EvalConfig::default() }).map_err(|e| e.to_string())?;
    Ok((out.output, out.stats))
}

fn num(v: &Value) -> f64 {
    match v {
        Value::Int(n) => *n as f64,
        Value::Float(x) => *x,
        _ => f64::NAN,
    }
}

fn paper_examples() -> Check {
    let start = Instant::now();
    let (out, _) = run(&source("pow"), true)?;
    ensure(out == "1024\n", format!("pow.sl printed {out:?}"))?;
    let ir = compile(&source("pow")).map_err(|e| e.to_string())?;
    let r = runtime::call(&ir, "pow", vec![Value::Int(2), Value::Int(10)], EvalConfig::default()).map_err(|e| e.to_string())?;
    ensure(matches!(r.result, Value::Int(1024)), format!("pow(2, 10) = {}", r.result.render()))?;
    let (out, _) = run(&source("switch"), true)?;
    ensure(out.is_empty(), format!("switch.sl reported {out:?}"))?;
    let ir = compile(&source("switch")).map_err(|e| e.to_string())?;
    let r = runtime::call(&ir, "switch", vec![Value::Int(1), Value::Int(2)], EvalConfig::default()).map_err(|e| e.to_string())?;
    ensure(
        matches!(r.swapped[..], [Value::Int(2), Value::Int(1)]),
        format!("switch(1, 2) left {:?}", r.swapped.iter().map(Value::render).collect::<Vec<_>>()),
    )?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(1), format!("took {t:?}"))?;
    Ok(format!("pow(2, 10) = 1024, switch(1, 2) -> (2, 1), {t:.1?}"))
}

fn pow_ir_structure() -> Check {
    let ir = compile(&source("pow")).map_err(|e| e.to_string())?;
    let golden = std::fs::read_to_string(corpus_dir().join("expected/pow.ir")).unwrap();
    ensure(print_ir(&ir) == golden, "dump differs from corpus/expected/pow.ir")?;
    let f = ir.function("pow").unwrap();
    let names = |i: usize| f.blocks[i].params.iter().map(|p| f.value_name(*p).unwrap_or("?")).collect::<Vec<_>>();
    ensure(f.blocks.len() == 4, format!("{} blocks", f.blocks.len()))?;
    ensure(names(1) == ["n", "r"], format!("header takes {:?}", names(1)))?;
    let prims: Vec<&str> = f.blocks[2]
        .instrs
        .iter()
        .filter_map(|i| if let Op::Prim(p, _) = &i.op { Some(p.name()) } else { None })
        .collect();
    ensure(prims.contains(&"sub") && prims.contains(&"mul"), format!("body computes {prims:?}"))?;
    let exit = &f.blocks[3];
    let returns_r = matches!(exit.terminator, Terminator::Return { value, .. } if exit.params == [value])
        && names(3) == ["r"];
    ensure(returns_r, "exit block does not return r")?;
    Ok("entry, header(n, r), body with mul and sub, exit returning r; golden file matches".into())
}

fn aliasing_property() -> Check {
    let mut rng = StdRng::seed_from_u64(2024);
    let n = 1000;
    for _ in 0..n {
        let src = common::aliasing_program(&mut rng);
        for reuse in [true, false] {
            let (out, _) = run(&src, reuse)?;
            ensure(out.starts_with("true\n"), format!("alias changed (reuse={reuse}):\n{src}"))?;
        }
    }
    Ok(format!("{n} programs, b unchanged with reuse on and off"))
}

fn reuse_equivalence() -> Check {
    let programs = corpus();
    ensure(programs.len() >= 30, format!("only {} corpus programs", programs.len()))?;
    let bin = env!("CARGO_BIN_EXE_swapl");
    for (name, _) in &programs {
        let path = corpus_dir().join(format!("{name}.sl"));
        let a = Command::new(bin).arg("run").arg(&path).output().map_err(|e| e.to_string())?;
        let b = Command::new(bin).args(["run", "--no-reuse"]).arg(&path).output().map_err(|e| e.to_string())?;
        ensure(a.status.success() && b.status.success(), format!("{name} failed"))?;
        ensure(a.stdout == b.stdout, format!("{name}: output differs under --no-reuse"))?;
    }
    Ok(format!("{} corpus programs byte-identical under --no-reuse", programs.len()))
}

fn nested_update_counters() -> Check {
    let (_, sugared) = run(&source("nested"), true)?;
    ensure(sugared.copies == 0 && sugared.in_place >= 2, format!("sugared: {sugared}"))?;
    let (_, naive) = run(&source("nested_naive"), true)?;
    ensure(naive.copies == 1, format!("naive: {naive}"))?;
    Ok(format!("sugared copies={} in_place={}; naive copies={}", sugared.copies, sugared.in_place, naive.copies))
}

fn timed_append(n: usize) -> Result<(Duration, ReuseStats), String> {
    let src = format!("xs = []\ni = 0\nwhile i < {n} {{\n  append(&xs, i)\n  i += 1\n}}\nprint(len(xs))");
    let ir = compile(&src).map_err(|e| e.to_string())?;
    let mut best = Duration::MAX;
    let mut stats = ReuseStats::default();
    for _ in 0..3 {
        let start = Instant::now();
        let out = run_program(&ir, EvalConfig::default()).map_err(|e| e.to_string())?;
        best = best.min(start.elapsed());
        ensure(out.output == format!("{n}\n"), "wrong length")?;
        stats = out.stats;
    }
    Ok((best, stats))
}

fn append_complexity() -> Check {
    let start = Instant::now();
    let (t1, s1) = timed_append(100_000)?;
    let (t2, s2) = timed_append(200_000)?;
    ensure(s1.copies == 0 && s2.copies == 0, format!("copies {} and {}", s1.copies, s2.copies))?;
    let ratio = t2.as_secs_f64() / t1.as_secs_f64();
    ensure(ratio < 4.0, format!("200k/100k time ratio {ratio:.2}"))?;
    let n = 2000;
    let src = format!(
        "xs = []\ntotal = 0\ni = 0\nwhile i < {n} {{\n  b = xs\n  append(&xs, i)\n  total += len(b)\n  i += 1\n}}\nprint(total)"
    );
    let (_, aliased) = run(&src, true)?;
    ensure(aliased.copies == n as u64, format!("aliased loop: {aliased}"))?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(10), format!("took {t:?}"))?;
    Ok(format!("copies=0, time ratio {ratio:.2}; aliased loop copies={n}; {t:.1?}"))
}

fn closure_capture() -> Check {
    let (out, _) = run(&source("closures"), true)?;
    ensure(out == "0 1 2\n", format!("printed {out:?}"))?;
    Ok("closures return 0 1 2".into())
}

fn gradient_checks() -> Check {
    let ir = compile(&source("calculus")).map_err(|e| e.to_string())?;
    let (_, d) = gradient(&ir, "pow", 0, vec![Value::Float(2.0), Value::Int(5)]).map_err(|e| e.to_string())?;
    ensure((num(&d) - 80.0).abs() <= 80.0 * f64::EPSILON * 4.0, format!("d/dx pow(x, 5) at 2 = {}", d.render()))?;
    let derived = forward_diff(&ir, "pow", 0).map_err(|e| e.to_string())?;
    let header = &derived.function(&derivative_name("pow")).unwrap().blocks[1];
    ensure(header.params.len() == 2 * ir.function("pow").unwrap().blocks[1].params.len(), "header not doubled")?;
    let cases: [(&str, Args); 4] = [
        ("pow", |x| vec![Value::Float(x), Value::Int(5)]),
        ("square", |x| vec![Value::Float(x)]),
        ("ratio", |x| vec![Value::Float(x)]),
        ("accumulate", |x| vec![Value::Float(x)]),
    ];
    let h = 1e-6;
    let mut worst: f64 = 0.0;
    for (name, args) in cases {
        let f = |x: f64| -> Result<f64, String> {
            let r = runtime::call(&ir, name, args(x), EvalConfig::default()).map_err(|e| e.to_string())?;
            Ok(num(&r.result))
        };
        for k in 0..20 {
            let x = 0.25 + 0.15 * k as f64;
            let (_, d) = gradient(&ir, name, 0, args(x)).map_err(|e| e.to_string())?;
            let d = num(&d);
            let fd = (f(x + h)? - f(x - h)?) / (2.0 * h);
            let err = (d - fd).abs() / d.abs().max(1.0);
            worst = worst.max(err);
            ensure(err <= 1e-6, format!("{name} at {x}: {d} vs {fd}"))?;
        }
    }
    Ok(format!("4 functions x 20 points, worst relative error {worst:.1e}; d/dx pow(x, 5) at 2 = 80"))
}

fn oracle_agreement() -> Check {
    let programs = corpus();
    for (name, src) in &programs {
        let expected = oracle::run(&parse_source(src).map_err(|e| e.to_string())?).map_err(|e| format!("{name}: {e}"))?;
        let (out, _) = run(src, true)?;
        ensure(out == expected.output, format!("{name}: pipeline and oracle differ"))?;
    }
    Ok(format!("{} corpus programs agree", programs.len()))
}

fn leak_check() -> Check {
    let programs = corpus();
    for (name, src) in &programs {
        let ir = compile(src).map_err(|e| e.to_string())?;
        let start = live_cells();
        drop(run_program(&ir, EvalConfig::default()).map_err(|e| e.to_string())?);
        ensure(live_cells() == start, format!("{name}: {} cells alive at exit", live_cells() - start))?;
    }
    ensure(live_cells() == 0, format!("{} cells alive overall", live_cells()))?;
    Ok(format!("{} corpus programs, zero live cells at exit", programs.len()))
}

fn main() {
    let criteria: [(&str, Criterion); 10] = [
        ("paper examples run", paper_examples),
        ("pow IR structure", pow_ir_structure),
        ("aliasing property", aliasing_property),
        ("reuse on/off equivalence", reuse_equivalence),
        ("nested update counters", nested_update_counters),
        ("append complexity", append_complexity),
        ("closure capture by value", closure_capture),
        ("gradient checks", gradient_checks),
        ("oracle equivalence", oracle_agreement),
        ("leak check", leak_check),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
