//! Name-collection walks over statement blocks.

use indexmap::IndexSet;

use super::ast::*;

/// Names written anywhere in `block`: assignment roots, destructured names,
/// compound-assignment roots and swap-argument roots. Closure bodies are not
/// entered; their writes affect only the closure's own copy.
pub fn assigned_vars(block: &Block) -> IndexSet<String> {
    let mut out = IndexSet::new();
    for stmt in block {
        assigned_in_stmt(stmt, &mut out);
    }
    out
}

fn assigned_in_stmt(stmt: &Stmt, out: &mut IndexSet<String>) {
    match &stmt.kind {
        StmtKind::Assign { target, value } | StmtKind::CompoundAssign { target, value, .. } => {
            for acc in &target.accessors {
                if let Accessor::Index(e) = acc {
                    swap_roots_in_expr(e, out);
                }
            }
            swap_roots_in_expr(value, out);
            out.insert(target.root.clone());
        }
        StmtKind::Destructure { names, value } => {
            swap_roots_in_expr(value, out);
            out.extend(names.iter().cloned());
        }
        StmtKind::Call(call) => swap_roots_in_call(call, out),
        StmtKind::While { cond, body } => {
            swap_roots_in_expr(cond, out);
            out.extend(assigned_vars(body));
        }
        StmtKind::If { cond, then_block, else_block } => {
            swap_roots_in_expr(cond, out);
            out.extend(assigned_vars(then_block));
            if let Some(b) = else_block {
                out.extend(assigned_vars(b));
            }
        }
        StmtKind::Return(Some(e)) => swap_roots_in_expr(e, out),
        StmtKind::Return(None) | StmtKind::Break | StmtKind::Continue => {}
    }
}

fn swap_roots_in_call(call: &Call, out: &mut IndexSet<String>) {
    swap_roots_in_expr(&call.callee, out);
    for arg in &call.args {
        match arg {
            Arg::Plain(e) => swap_roots_in_expr(e, out),
            Arg::Swap(path) => {
                for acc in &path.accessors {
                    if let Accessor::Index(e) = acc {
                        swap_roots_in_expr(e, out);
                    }
                }
                out.insert(path.root.clone());
            }
        }
    }
}

fn swap_roots_in_expr(expr: &Expr, out: &mut IndexSet<String>) {
    match &expr.kind {
        ExprKind::Lit(_) | ExprKind::Var(_) | ExprKind::Closure(_) => {}
        ExprKind::Index(a, b) | ExprKind::Binary(_, a, b) => {
            swap_roots_in_expr(a, out);
            swap_roots_in_expr(b, out);
        }
        ExprKind::Field(a, _) | ExprKind::Unary(_, a) => swap_roots_in_expr(a, out),
        ExprKind::Call(call) => swap_roots_in_call(call, out),
        ExprKind::Array(items) | ExprKind::Tuple(items) => {
            items.iter().for_each(|e| swap_roots_in_expr(e, out))
        }
        ExprKind::Record(fields) => fields.iter().for_each(|(_, e)| swap_roots_in_expr(e, out)),
    }
}

/// Names that become locals by plain assignment or destructuring.
pub fn declared_vars(block: &Block) -> IndexSet<String> {
    let mut out = IndexSet::new();
    declared_in_block(block, &mut out);
    out
}

fn declared_in_block(block: &Block, out: &mut IndexSet<String>) {
    for stmt in block {
        match &stmt.kind {
            StmtKind::Assign { target, .. } if target.is_plain() => {
                out.insert(target.root.clone());
            }
            StmtKind::Destructure { names, .. } => out.extend(names.iter().cloned()),
            StmtKind::While { body, .. } => declared_in_block(body, out),
            StmtKind::If { then_block, else_block, .. } => {
                declared_in_block(then_block, out);
                if let Some(b) = else_block {
                    declared_in_block(b, out);
                }
            }
            _ => {}
        }
    }
}

/// Every name mentioned in `block`, including inside nested closures, in
/// order of first mention.
pub fn referenced_vars(block: &Block) -> IndexSet<String> {
    let mut out = IndexSet::new();
    for stmt in block {
        refs_in_stmt(stmt, &mut out);
    }
    out
}

fn refs_in_path(path: &Path, out: &mut IndexSet<String>) {
    out.insert(path.root.clone());
    for acc in &path.accessors {
        if let Accessor::Index(e) = acc {
            refs_in_expr(e, out);
        }
    }
}

fn refs_in_stmt(stmt: &Stmt, out: &mut IndexSet<String>) {
    match &stmt.kind {
        StmtKind::Assign { target, value } | StmtKind::CompoundAssign { target, value, .. } => {
            refs_in_path(target, out);
            refs_in_expr(value, out);
        }
        StmtKind::Destructure { names, value } => {
            refs_in_expr(value, out);
            out.extend(names.iter().cloned());
        }
        StmtKind::Call(call) => refs_in_call(call, out),
        StmtKind::While { cond, body } => {
            refs_in_expr(cond, out);
            body.iter().for_each(|s| refs_in_stmt(s, out));
        }
        StmtKind::If { cond, then_block, else_block } => {
            refs_in_expr(cond, out);
            then_block.iter().for_each(|s| refs_in_stmt(s, out));
            if let Some(b) = else_block {
                b.iter().for_each(|s| refs_in_stmt(s, out));
            }
        }
        StmtKind::Return(Some(e)) => refs_in_expr(e, out),
        StmtKind::Return(None) | StmtKind::Break | StmtKind::Continue => {}
    }
}

fn refs_in_call(call: &Call, out: &mut IndexSet<String>) {
    refs_in_expr(&call.callee, out);
    for arg in &call.args {
        match arg {
            Arg::Plain(e) => refs_in_expr(e, out),
            Arg::Swap(path) => refs_in_path(path, out),
        }
    }
}

fn refs_in_expr(expr: &Expr, out: &mut IndexSet<String>) {
    match &expr.kind {
        ExprKind::Lit(_) => {}
        ExprKind::Var(name) => {
            out.insert(name.clone());
        }
        ExprKind::Index(a, b) | ExprKind::Binary(_, a, b) => {
            refs_in_expr(a, out);
            refs_in_expr(b, out);
        }
        ExprKind::Field(a, _) | ExprKind::Unary(_, a) => refs_in_expr(a, out),
        ExprKind::Call(call) => refs_in_call(call, out),
        ExprKind::Array(items) | ExprKind::Tuple(items) => items.iter().for_each(|e| refs_in_expr(e, out)),
        ExprKind::Record(fields) => fields.iter().for_each(|(_, e)| refs_in_expr(e, out)),
        ExprKind::Closure(c) => c.body.iter().for_each(|s| refs_in_stmt(s, out)),
    }
}

/// Free names of a closure literal: referenced in its body but not its own
/// parameters.
pub fn closure_free_vars(closure: &Closure) -> IndexSet<String> {
    let mut refs = referenced_vars(&closure.body);
    refs.retain(|n| !closure.params.iter().any(|p| &p.name == n));
    refs
}

/// Number of `return` statements outside nested closures.
pub fn count_returns(block: &Block) -> usize {
    block
        .iter()
        .map(|stmt| match &stmt.kind {
            StmtKind::Return(_) => 1,
            StmtKind::While { body, .. } => count_returns(body),
            StmtKind::If { then_block, else_block, .. } => {
                count_returns(then_block) + else_block.as_ref().map_or(0, count_returns)
            }
            _ => 0,
        })
        .sum()
}
