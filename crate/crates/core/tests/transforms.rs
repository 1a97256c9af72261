use swapl::compile;
use swapl::runtime::{self, EvalConfig, Value};
use swapl::ssa::{print_function, validate_ir, Terminator};
use swapl::transforms::{derivative_name, forward_diff, gradient, purity_gate, TransformError};

/// Builds the arguments of a function from the point being sampled.
type Args = fn(f64) -> Vec<Value>;

const CALCULUS: &str = include_str!("../corpus/calculus.sl");

fn float(v: &Value) -> f64 {
    match v {
        Value::Int(n) => *n as f64,
        Value::Float(x) => *x,
        other => panic!("not a number: {}", other.render()),
    }
}

fn eval(ir: &swapl::ssa::IrProgram, name: &str, args: Vec<Value>) -> f64 {
    float(&runtime::call(ir, name, args, EvalConfig::default()).unwrap().result)
}

#[test]
fn pow_derivative_at_two() {
    let ir = compile(CALCULUS).unwrap();
    let (v, d) = gradient(&ir, "pow", 0, vec![Value::Float(2.0), Value::Int(5)]).unwrap();
    assert_eq!(float(&v), 32.0);
    assert_eq!(float(&d), 80.0);
    let (v, d) = gradient(&ir, "pow", 0, vec![Value::Int(2), Value::Int(5)]).unwrap();
    assert!(matches!(v, Value::Int(32)));
    assert_eq!(float(&d), 80.0);
}

#[test]
fn simple_derivatives() {
    let ir = compile(CALCULUS).unwrap();
    assert_eq!(float(&gradient(&ir, "square", 0, vec![Value::Float(3.0)]).unwrap().1), 6.0);
    let d = float(&gradient(&ir, "ratio", 0, vec![Value::Float(1.0)]).unwrap().1);
    assert!((d - 0.25).abs() < 1e-15);
    let ir = compile("fn k(x) {\n  return 7\n}").unwrap();
    assert_eq!(float(&gradient(&ir, "k", 0, vec![Value::Float(3.0)]).unwrap().1), 0.0);
}

#[test]
fn calls_get_jvp_variants() {
    let ir = compile(CALCULUS).unwrap();
    // poly = 3x^3 - x^2 + x/(1+x); at 2: 36 - 4 + 1/9
    let (_, d) = gradient(&ir, "poly", 0, vec![Value::Float(2.0)]).unwrap();
    assert!((float(&d) - (32.0 + 1.0 / 9.0)).abs() < 1e-12);
    let derived = forward_diff(&ir, "poly", 0).unwrap();
    assert!(derived.function("pow##jvp.10").is_some());
    assert!(derived.function("square##jvp.1").is_some());
}

#[test]
fn primal_is_preserved() {
    let ir = compile(CALCULUS).unwrap();
    for x in [0.3, 1.5, 2.25, -0.7] {
        let (v, _) = gradient(&ir, "accumulate", 0, vec![Value::Float(x)]).unwrap();
        assert_eq!(float(&v).to_bits(), eval(&ir, "accumulate", vec![Value::Float(x)]).to_bits());
    }
}

#[test]
fn loop_header_carries_tangents() {
    let ir = compile(CALCULUS).unwrap();
    let derived = forward_diff(&ir, "pow", 0).unwrap();
    let f = ir.function("pow").unwrap();
    let d = derived.function(&derivative_name("pow")).unwrap();
    assert_eq!(d.blocks.len(), f.blocks.len());
    for (a, b) in f.blocks.iter().zip(&d.blocks) {
        let targets = |t: &Terminator| t.edges().iter().map(|e| e.target).collect::<Vec<_>>();
        assert_eq!(targets(&a.terminator), targets(&b.terminator));
    }
    let header = &f.blocks[1];
    assert_eq!(header.params.len(), 2, "{}", print_function(f));
    assert_eq!(d.blocks[1].params.len(), 2 * header.params.len(), "{}", print_function(d));
    assert!(purity_gate(&derived).is_empty());
    assert!(validate_ir(&derived).is_empty());
}

#[test]
fn refuses_aggregates() {
    let ir = compile("fn f(x) {\n  xs = [x]\n  return xs[0]\n}").unwrap();
    assert!(matches!(forward_diff(&ir, "f", 0), Err(TransformError::NonDifferentiableOp { .. })));
    assert!(matches!(forward_diff(&ir, "g", 0), Err(TransformError::UnknownFunction(_))));
    assert!(matches!(forward_diff(&ir, "f", 3), Err(TransformError::BadParameter { .. })));
}

#[test]
fn gate_flags_broken_ir() {
    let mut ir = compile(CALCULUS).unwrap();
    assert!(purity_gate(&ir).is_empty());
    let f = ir.functions.get_mut("pow").unwrap();
    if let Terminator::Jump(e) = &mut f.blocks[0].terminator {
        e.args.pop();
    }
    assert!(!purity_gate(&ir).is_empty());
    assert!(matches!(forward_diff(&ir, "square", 0), Err(TransformError::Rejected(_))));
}

#[test]
fn gradients_match_central_differences() {
    let ir = compile(CALCULUS).unwrap();
    let cases: [(&str, Args); 4] = [
        ("pow", |x| vec![Value::Float(x), Value::Int(5)]),
        ("square", |x| vec![Value::Float(x)]),
        ("ratio", |x| vec![Value::Float(x)]),
        ("accumulate", |x| vec![Value::Float(x)]),
    ];
    let h = 1e-6;
    for (name, args) in cases {
        for k in 0..20 {
            let x = 0.25 + 0.15 * k as f64;
            let (_, d) = gradient(&ir, name, 0, args(x)).unwrap();
            let d = float(&d);
            let fd = (eval(&ir, name, args(x + h)) - eval(&ir, name, args(x - h))) / (2.0 * h);
            assert!((d - fd).abs() <= 1e-6 * d.abs().max(1.0), "{name} at {x}: {d} vs {fd}");
        }
    }
}
