//! Text dump of block-form programs.

use std::fmt::Write;

use super::ir::*;
use crate::frontend::write_quoted;

pub fn print_ir(program: &IrProgram) -> String {
    let mut out = String::new();
    for (i, f) in program.functions.values().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        print_function_into(&mut out, f);
    }
    out
}

pub fn print_function(f: &IrFunction) -> String {
    let mut out = String::new();
    print_function_into(&mut out, f);
    out
}

fn named(f: &IrFunction, v: ValueId) -> String {
    match f.value_name(v) {
        Some(n) => format!("{v} {n}"),
        None => v.to_string(),
    }
}

fn list(values: &[ValueId]) -> String {
    values.iter().map(ValueId::to_string).collect::<Vec<_>>().join(", ")
}

fn edge(e: &Edge) -> String {
    format!("{}({})", e.target, list(&e.args))
}

fn print_function_into(out: &mut String, f: &IrFunction) {
    let params: Vec<String> = f
        .params
        .iter()
        .map(|p| format!("{}{}", if p.swapped { "&" } else { "" }, named(f, p.value)))
        .collect();
    let _ = writeln!(out, "fn {}({}) {{", f.name, params.join(", "));
    for b in &f.blocks {
        let params: Vec<String> = b.params.iter().map(|p| named(f, *p)).collect();
        let _ = writeln!(out, "  {}({}):", b.id, params.join(", "));
        for i in &b.instrs {
            let _ = writeln!(out, "    {}", instr(i));
        }
        let term = match &b.terminator {
            Terminator::Jump(e) => format!("jump {}", edge(e)),
            Terminator::Branch { cond, then_edge, else_edge } => {
                format!("branch {cond}, {}, {}", edge(then_edge), edge(else_edge))
            }
            Terminator::Return { value, finals } if finals.is_empty() => format!("return {value}"),
            Terminator::Return { value, finals } => format!("return {value} [{}]", list(finals)),
        };
        let _ = writeln!(out, "    {term}");
    }
    out.push_str("}\n");
}

fn instr(i: &Instr) -> String {
    let rhs = match &i.op {
        Op::Const(c) => {
            let mut s = String::from("const ");
            match c {
                Const::Unit => s.push_str("()"),
                Const::Bool(b) => s.push_str(&b.to_string()),
                Const::Int(n) => s.push_str(&n.to_string()),
                Const::Float(x) => s.push_str(&format!("{x:?}")),
                Const::Str(t) => write_quoted(&mut s, t),
            }
            s
        }
        Op::Prim(op, args) => format!("{} {}", op.name(), list(args)),
        Op::Call { callee, args, swapped, .. } => {
            let callee = match callee {
                Callee::Builtin(b) => b.name().to_string(),
                Callee::Function(name) => format!("@{name}"),
                Callee::Value(v) => v.to_string(),
            };
            let args: Vec<String> = args
                .iter()
                .zip(swapped)
                .map(|(a, s)| format!("{}{a}", if *s { "&" } else { "" }))
                .collect();
            format!("call {callee}({})", args.join(", "))
        }
        Op::MakeArray(args) => format!("array [{}]", list(args)),
        Op::MakeTuple(args) => format!("tuple ({})", list(args)),
        Op::MakeRecord(fields) => {
            let fields: Vec<String> = fields.iter().map(|(k, v)| format!("{k}: {v}")).collect();
            format!("record {{{}}}", fields.join(", "))
        }
        Op::MakeClosure { func, captured } => format!("closure @{func}[{}]", list(captured)),
    };
    let dests = i.defs();
    format!("{} = {rhs}", list(&dests))
}
