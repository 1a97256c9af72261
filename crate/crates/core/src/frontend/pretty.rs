//! Source-form printer. Output re-parses to a structurally equal tree.

use std::fmt::Write;

use super::ast::*;

const INDENT: &str = "    ";
const ATOM: u8 = UNARY_PRECEDENCE + 1;

pub fn pretty_print(program: &Program) -> String {
    let mut out = String::new();
    for (i, f) in program.functions.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str("fn ");
        out.push_str(&f.name);
        params(&mut out, &f.params);
        out.push(' ');
        block(&mut out, &f.body, 0);
        out.push('\n');
    }
    out
}

pub fn print_expr(expr: &Expr) -> String {
    let mut out = String::new();
    write_expr(&mut out, expr, 0);
    out
}

fn params(out: &mut String, params: &[Param]) {
    out.push('(');
    for (i, p) in params.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        if p.swapped {
            out.push('&');
        }
        out.push_str(&p.name);
    }
    out.push(')');
}

fn pad(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str(INDENT);
    }
}

fn block(out: &mut String, stmts: &Block, depth: usize) {
    out.push_str("{\n");
    for s in stmts {
        pad(out, depth + 1);
        stmt(out, s, depth + 1);
        out.push('\n');
    }
    pad(out, depth);
    out.push('}');
}

fn stmt(out: &mut String, s: &Stmt, depth: usize) {
    match &s.kind {
        StmtKind::Assign { target, value } => {
            write_expr(out, &target.to_expr(), depth);
            out.push_str(" = ");
            write_expr(out, value, depth);
        }
        StmtKind::Destructure { names, value } => {
            let _ = write!(out, "[{}] = ", names.join(", "));
            write_expr(out, value, depth);
        }
        StmtKind::CompoundAssign { target, op, value } => {
            write_expr(out, &target.to_expr(), depth);
            let _ = write!(out, " {}= ", op.symbol());
            write_expr(out, value, depth);
        }
        StmtKind::Call(call) => write_call(out, call, depth),
        StmtKind::While { cond, body } => {
            out.push_str("while ");
            write_expr(out, cond, depth);
            out.push(' ');
            block(out, body, depth);
        }
        StmtKind::If { cond, then_block, else_block } => {
            out.push_str("if ");
            write_expr(out, cond, depth);
            out.push(' ');
            block(out, then_block, depth);
            match else_block.as_deref() {
                None => {}
                Some([only]) if matches!(only.kind, StmtKind::If { .. }) => {
                    out.push_str(" else ");
                    stmt(out, only, depth);
                }
                Some(b) => {
                    out.push_str(" else ");
                    block(out, &b.to_vec(), depth);
                }
            }
        }
        StmtKind::Return(None) => out.push_str("return"),
        StmtKind::Return(Some(e)) => {
            out.push_str("return ");
            write_expr(out, e, depth);
        }
        StmtKind::Break => out.push_str("break"),
        StmtKind::Continue => out.push_str("continue"),
    }
}

fn precedence(e: &Expr) -> u8 {
    match &e.kind {
        ExprKind::Binary(op, _, _) => op.precedence(),
        ExprKind::Unary(..) => UNARY_PRECEDENCE,
        _ => ATOM,
    }
}

fn is_negative_literal(e: &Expr) -> bool {
    match e.kind {
        ExprKind::Lit(Literal::Int(n)) => n < 0,
        ExprKind::Lit(Literal::Float(x)) => x.is_sign_negative(),
        _ => false,
    }
}

fn child(out: &mut String, e: &Expr, min: u8, depth: usize) {
    if precedence(e) < min {
        out.push('(');
        write_expr(out, e, depth);
        out.push(')');
    } else {
        write_expr(out, e, depth);
    }
}

fn postfix_base(out: &mut String, e: &Expr, depth: usize) {
    if precedence(e) < ATOM || is_negative_literal(e) {
        out.push('(');
        write_expr(out, e, depth);
        out.push(')');
    } else {
        write_expr(out, e, depth);
    }
}

pub(crate) fn write_literal(out: &mut String, lit: &Literal) {
    match lit {
        Literal::Int(n) => {
            let _ = write!(out, "{n}");
        }
        Literal::Float(x) => {
            let _ = write!(out, "{x:?}");
        }
        Literal::Bool(b) => {
            let _ = write!(out, "{b}");
        }
        Literal::Str(s) => write_quoted(out, s),
        Literal::Unit => out.push_str("()"),
    }
}

pub(crate) fn write_quoted(out: &mut String, s: &str) {
    out.push('"');
    for c in s.chars() {
        match c {
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c => out.push(c),
        }
    }
    out.push('"');
}

fn comma_list(out: &mut String, items: &[Expr], depth: usize) {
    for (i, e) in items.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write_expr(out, e, depth);
    }
}

fn write_call(out: &mut String, call: &Call, depth: usize) {
    postfix_base(out, &call.callee, depth);
    out.push('(');
    for (i, arg) in call.args.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        match arg {
            Arg::Plain(e) => write_expr(out, e, depth),
            Arg::Swap(path) => {
                out.push('&');
                write_expr(out, &path.to_expr(), depth);
            }
        }
    }
    out.push(')');
}

fn write_expr(out: &mut String, e: &Expr, depth: usize) {
    match &e.kind {
        ExprKind::Lit(lit) => write_literal(out, lit),
        ExprKind::Var(name) => out.push_str(name),
        ExprKind::Index(base, index) => {
            postfix_base(out, base, depth);
            out.push('[');
            write_expr(out, index, depth);
            out.push(']');
        }
        ExprKind::Field(base, name) => {
            postfix_base(out, base, depth);
            out.push('.');
            out.push_str(name);
        }
        ExprKind::Call(call) => write_call(out, call, depth),
        ExprKind::Binary(op, lhs, rhs) => {
            let p = op.precedence();
            child(out, lhs, p, depth);
            let _ = write!(out, " {} ", op.symbol());
            child(out, rhs, p + 1, depth);
        }
        ExprKind::Unary(op, operand) => {
            out.push_str(op.symbol());
            if *op == UnOp::Not {
                out.push(' ');
            }
            child(out, operand, UNARY_PRECEDENCE, depth);
        }
        ExprKind::Array(items) => {
            out.push('[');
            comma_list(out, items, depth);
            out.push(']');
        }
        ExprKind::Tuple(items) => {
            out.push('(');
            comma_list(out, items, depth);
            if items.len() == 1 {
                out.push(',');
            }
            out.push(')');
        }
        ExprKind::Record(fields) => {
            out.push('{');
            for (i, (k, v)) in fields.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(k);
                out.push_str(": ");
                write_expr(out, v, depth);
            }
            out.push('}');
        }
        ExprKind::Closure(c) => {
            out.push_str("fn");
            params(out, &c.params);
            out.push(' ');
            block(out, &c.body, depth);
        }
    }
}
