use swapl::desugar::desugar;
use swapl::frontend::parse_source;
use swapl::ssa::*;

fn lower(src: &str) -> IrProgram {
    let p = parse_source(src).unwrap();
    lower_program(&desugar(&p).unwrap()).unwrap()
}

#[test]
fn pow_matches_golden_dump() {
    let ir = lower(include_str!("../corpus/pow.sl"));
    assert_eq!(validate_ir(&ir), vec![]);
    assert_eq!(print_ir(&ir), include_str!("../corpus/expected/pow.ir"));
}

#[test]
fn pow_has_four_blocks_with_loop_header() {
    let ir = lower(include_str!("../corpus/pow.sl"));
    let f = ir.function("pow").unwrap();
    assert_eq!(f.blocks.len(), 4);
    let names = |b: &Block| b.params.iter().map(|p| f.value_name(*p).unwrap().to_string()).collect::<Vec<_>>();
    assert_eq!(names(&f.blocks[0]), ["x", "n"]);
    assert_eq!(names(&f.blocks[1]), ["n", "r"]);
    assert_eq!(names(&f.blocks[3]), ["r"]);
    let ops: Vec<_> = f.blocks[2]
        .instrs
        .iter()
        .filter_map(|i| match &i.op {
            Op::Prim(p, _) => Some(p.name()),
            _ => None,
        })
        .collect();
    assert_eq!(ops, ["mul", "sub"]);
    assert!(matches!(f.blocks[3].terminator, Terminator::Return { value, .. } if value == f.blocks[3].params[0]));
}

#[test]
fn straight_line_code_has_one_block() {
    let ir = lower("fn f(a, b) {\n  c = a + b\n  c = c * 2\n  return c\n}");
    let f = ir.function("f").unwrap();
    assert_eq!(f.blocks.len(), 1);
    assert!(validate_ir(&ir).is_empty());
}

#[test]
fn swap_calls_define_new_values() {
    let ir = lower("fn f(&xs) {\n  append(&xs, 1)\n  append(&xs, 2)\n}");
    let f = ir.function("f").unwrap();
    let dests: Vec<_> = f.blocks[0]
        .instrs
        .iter()
        .filter_map(|i| match &i.op {
            Op::Call { swap_dests, .. } => Some(swap_dests.clone()),
            _ => None,
        })
        .collect();
    assert_eq!(dests.len(), 2);
    assert_ne!(dests[0], dests[1]);
    let Terminator::Return { finals, .. } = &f.blocks[0].terminator else { panic!() };
    assert_eq!(finals, &dests[1]);
}

#[test]
fn closures_are_lifted() {
    let ir = lower("fn main() {\n  k = 2\n  f = fn(x) { return x + k }\n  print(f(1))\n}");
    let lifted = ir.function("main$closure0").unwrap();
    assert_eq!(lifted.params.len(), 2);
    assert!(validate_ir(&ir).is_empty());
}

#[test]
fn validator_reports_broken_ir() {
    let mut ir = lower(include_str!("../corpus/pow.sl"));
    let f = ir.functions.get_mut("pow").unwrap();
    if let Terminator::Jump(e) = &mut f.blocks[0].terminator {
        e.args.pop();
    }
    assert!(matches!(validate_ir(&ir)[..], [Diagnostic::EdgeArity { .. }]));

    let mut ir = lower(include_str!("../corpus/pow.sl"));
    let f = ir.functions.get_mut("pow").unwrap();
    let dup = f.blocks[2].instrs[0].dest;
    f.blocks[2].instrs[1].dest = dup;
    assert!(validate_ir(&ir).iter().any(|d| matches!(d, Diagnostic::MultipleAssignment { .. })));

    let mut ir = lower(include_str!("../corpus/pow.sl"));
    let f = ir.functions.get_mut("pow").unwrap();
    let late = f.blocks[2].instrs[0].dest;
    f.blocks[1].instrs[0].op = Op::Prim(PrimOp::Neg, vec![late]);
    assert!(validate_ir(&ir).iter().any(|d| matches!(d, Diagnostic::UseBeforeDef { .. })));

    let mut ir = lower(include_str!("../corpus/pow.sl"));
    ir.functions.get_mut("main").unwrap().blocks[0].instrs[2].op =
        Op::Call { callee: Callee::Function("nope".into()), args: vec![], swapped: vec![], swap_dests: vec![] };
    assert!(validate_ir(&ir).iter().any(|d| matches!(d, Diagnostic::UnknownFunction { .. })));
}

#[test]
fn dumps_are_deterministic() {
    let src = include_str!("../corpus/deep_nesting.sl");
    assert_eq!(print_ir(&lower(src)), print_ir(&lower(src)));
}
